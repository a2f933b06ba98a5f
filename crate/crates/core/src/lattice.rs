//! Arithmetic of trees on the collapse lattice of one master splitting.
//!
//! Every tree here is a collapse of the master GBS tree, recorded by the set
//! of edge orbits it keeps. Trees are never rebuilt as graphs of groups:
//! lengths are read off the master's cyclically reduced crossing sequences.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::gbs::sample::WordLayers;
use crate::gbs::{britton_reduce, GbsError, GenWord, GroupWord, LabeledGraph};

/// A validated GBS graph whose edges index the lattice's edge orbits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterSplitting {
    graph: LabeledGraph,
}

/// The collapse of the master keeping exactly the edge orbits in `kept`.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CollapseTree {
    pub kept: BTreeSet<usize>,
}

impl CollapseTree {
    pub fn new<I: IntoIterator<Item = usize>>(kept: I) -> Self {
        CollapseTree {
            kept: kept.into_iter().collect(),
        }
    }

    pub fn trivial() -> Self {
        CollapseTree::default()
    }

    pub fn is_trivial(&self) -> bool {
        self.kept.is_empty()
    }

    /// One-edge splittings `{e}` for each kept orbit.
    pub fn prime_factors(&self) -> BTreeSet<CollapseTree> {
        self.kept.iter().map(|&e| CollapseTree::new([e])).collect()
    }

    /// `self` refines `other` when every prime factor of `other` is one of `self`.
    pub fn refines(&self, other: &CollapseTree) -> bool {
        other.kept.is_subset(&self.kept)
    }

    pub fn gcd(&self, other: &CollapseTree) -> CollapseTree {
        CollapseTree {
            kept: self.kept.intersection(&other.kept).copied().collect(),
        }
    }

    pub fn lcm(&self, other: &CollapseTree) -> CollapseTree {
        CollapseTree {
            kept: self.kept.union(&other.kept).copied().collect(),
        }
    }
}

impl MasterSplitting {
    pub fn new(graph: LabeledGraph) -> Self {
        MasterSplitting { graph }
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn orbit_count(&self) -> usize {
        self.graph.edges().len()
    }

    /// The master tree itself.
    pub fn full(&self) -> CollapseTree {
        CollapseTree::new(0..self.orbit_count())
    }

    /// Every collapse, ordered by bitmask of kept orbits.
    pub fn all_collapses(&self) -> Vec<CollapseTree> {
        let n = self.orbit_count();
        assert!(n < 20, "lattice enumeration is exponential in the orbit count");
        (0u32..(1 << n))
            .map(|mask| CollapseTree::new((0..n).filter(|i| mask & (1 << i) != 0)))
            .collect()
    }

    pub fn collapse_by_names<S: AsRef<str>>(&self, names: &[S]) -> Result<CollapseTree, GbsError> {
        names
            .iter()
            .map(|n| {
                self.graph
                    .edge_index(n.as_ref())
                    .ok_or_else(|| GbsError::UnknownEdge(n.as_ref().to_string()))
            })
            .collect::<Result<BTreeSet<_>, _>>()
            .map(|kept| CollapseTree { kept })
    }

    pub fn format_collapse(&self, k: &CollapseTree) -> String {
        let names: Vec<&str> = k.kept.iter().map(|&e| self.graph.edge(e).name.as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    /// Master crossing sequence of `w` (one period of its axis).
    pub fn crossing_sequence(&self, w: &GroupWord) -> Result<Vec<usize>, GbsError> {
        Ok(britton_reduce(&self.graph, w)?.crossing_sequence())
    }

    /// Translation length of `w` in the collapse `k`.
    pub fn length_in_collapse(&self, k: &CollapseTree, w: &GroupWord) -> Result<u64, GbsError> {
        let seq = self.crossing_sequence(w)?;
        Ok(seq.iter().filter(|e| k.kept.contains(e)).count() as u64)
    }

    /// Checks `ℓ_{lcm} + ℓ_{gcd} = ℓ_1 + ℓ_2` on every word.
    pub fn verify_modularity(&self, k1: &CollapseTree, k2: &CollapseTree, words: &[GroupWord]) -> Result<bool, GbsError> {
        let lcm = k1.lcm(k2);
        let gcd = k1.gcd(k2);
        for w in words {
            let seq = self.crossing_sequence(w)?;
            let count = |k: &CollapseTree| seq.iter().filter(|e| k.kept.contains(e)).count();
            if count(&lcm) + count(&gcd) != count(k1) + count(k2) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// For each pair of distinct prime factors of `k`, the first generator
    /// word of length `≤ max_len` on which their length functions differ.
    pub fn squarefree_witnesses(&self, k: &CollapseTree, max_len: usize) -> Result<SquarefreeReport, GbsError> {
        let factors: Vec<usize> = k.kept.iter().copied().collect();
        let mut pending: BTreeSet<(usize, usize)> = BTreeSet::new();
        for (i, &a) in factors.iter().enumerate() {
            for &b in &factors[i + 1..] {
                pending.insert((a, b));
            }
        }
        let mut witnesses = BTreeMap::new();
        let mut layers = WordLayers::new(&self.graph);
        for _ in 0..max_len {
            if pending.is_empty() {
                break;
            }
            for w in layers.next_layer() {
                let seq = self.crossing_sequence(&self.graph.expand(&w)?)?;
                let count = |e: usize| seq.iter().filter(|&&x| x == e).count();
                let hits: Vec<(usize, usize)> = pending
                    .iter()
                    .copied()
                    .filter(|&(a, b)| count(a) != count(b))
                    .collect();
                for pair in hits {
                    pending.remove(&pair);
                    witnesses.insert(pair, w.clone());
                }
                if pending.is_empty() {
                    break;
                }
            }
        }
        Ok(SquarefreeReport {
            witnesses,
            unwitnessed: pending.into_iter().collect(),
        })
    }

    /// Whether `w` is elliptic in the lcm of `ks`, after checking that this
    /// agrees with `w` being elliptic in every member.
    pub fn elliptic_in_lcm(&self, w: &GroupWord, ks: &[CollapseTree]) -> Result<bool, GbsError> {
        let lcm = ks
            .iter()
            .fold(CollapseTree::trivial(), |acc, k| acc.lcm(k));
        let in_lcm = self.length_in_collapse(&lcm, w)? == 0;
        let mut in_each = true;
        for k in ks {
            in_each &= self.length_in_collapse(k, w)? == 0;
        }
        if in_lcm != in_each {
            return Err(GbsError::IdentityViolation(format!(
                "elliptic in lcm: {in_lcm}, elliptic in every factor: {in_each}"
            )));
        }
        Ok(in_lcm)
    }
}

/// Outcome of the bounded squarefree search. Pairs left in `unwitnessed`
/// are unverified within the budget, not counterexamples.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SquarefreeReport {
    pub witnesses: BTreeMap<(usize, usize), GenWord>,
    pub unwitnessed: Vec<(usize, usize)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbs::Edge;

    // e = 0, f = 1, e' = 2
    fn m3() -> MasterSplitting {
        MasterSplitting::new(
            LabeledGraph::new(
                vec!["u".into(), "v".into()],
                vec![
                    Edge { name: "e".into(), origin: 0, terminus: 0, origin_label: 2, terminus_label: 3 },
                    Edge { name: "f".into(), origin: 0, terminus: 1, origin_label: 2, terminus_label: 2 },
                    Edge { name: "e'".into(), origin: 1, terminus: 1, origin_label: 2, terminus_label: 3 },
                ],
                None,
                None,
            )
            .unwrap(),
        )
    }

    fn k(edges: &[usize]) -> CollapseTree {
        CollapseTree::new(edges.iter().copied())
    }

    #[test]
    fn prime_factor_examples() {
        assert_eq!(k(&[0, 1]).prime_factors(), [k(&[0]), k(&[1])].into());
        assert!(CollapseTree::trivial().prime_factors().is_empty());
        assert_eq!(m3().full().prime_factors().len(), 3);
    }

    #[test]
    fn refinement_examples() {
        assert!(k(&[0, 1, 2]).refines(&k(&[1])));
        assert!(!k(&[0]).refines(&k(&[1])));
        assert!(k(&[0, 2]).refines(&k(&[0, 2])));
    }

    #[test]
    fn gcd_lcm_examples() {
        assert_eq!(k(&[0, 1]).gcd(&k(&[1, 2])), k(&[1]));
        assert_eq!(k(&[0, 1]).gcd(&CollapseTree::trivial()), CollapseTree::trivial());
        assert_eq!(k(&[0, 1]).gcd(&k(&[0, 1])), k(&[0, 1]));
        assert_eq!(k(&[0]).lcm(&k(&[2])), k(&[0, 2]));
        assert_eq!(k(&[0, 1]).lcm(&CollapseTree::trivial()), k(&[0, 1]));
        assert_eq!(k(&[0, 1]).lcm(&k(&[1, 2])), k(&[0, 1, 2]));
    }

    #[test]
    fn lengths_in_collapses() {
        let m = m3();
        let w = m.graph().word("t[e] t[e']").unwrap();
        assert_eq!(m.crossing_sequence(&w).unwrap(), vec![0, 1, 2, 1]);
        assert_eq!(m.length_in_collapse(&k(&[1]), &w).unwrap(), 2);
        assert_eq!(m.length_in_collapse(&k(&[0]), &w).unwrap(), 1);
        let a = m.graph().word("a[u]").unwrap();
        assert_eq!(m.length_in_collapse(&m.full(), &a).unwrap(), 0);
    }

    #[test]
    fn modularity_examples() {
        let m = m3();
        let w = m.graph().word("t[e] t[e']").unwrap();
        assert!(m.verify_modularity(&k(&[0, 1]), &k(&[1, 2]), &[w.clone()]).unwrap());
        assert!(m.verify_modularity(&k(&[0]), &k(&[2]), &[w.clone()]).unwrap());
        assert!(m.verify_modularity(&k(&[0, 1]), &k(&[0, 1]), &[w]).unwrap());
    }

    #[test]
    fn squarefree_examples() {
        let m = m3();
        let r = m.squarefree_witnesses(&m.full(), 2).unwrap();
        assert!(r.unwitnessed.is_empty());
        assert_eq!(m.graph().format_word(&r.witnesses[&(0, 1)]), "t[e]");
        assert!(m.squarefree_witnesses(&k(&[1]), 4).unwrap().witnesses.is_empty());
        let none = m.squarefree_witnesses(&m.full(), 0).unwrap();
        assert_eq!(none.unwitnessed.len(), 3);
    }

    #[test]
    fn elliptic_in_lcm_examples() {
        let m = m3();
        let a = m.graph().word("a[u]").unwrap();
        assert!(m.elliptic_in_lcm(&a, &[k(&[0]), k(&[1])]).unwrap());
        let te = m.graph().word("t[e]").unwrap();
        assert!(!m.elliptic_in_lcm(&te, &[k(&[0]), k(&[1])]).unwrap());
        assert!(m.elliptic_in_lcm(&te, &[k(&[1]), k(&[2])]).unwrap());
    }
}
