use std::fmt::Write as _;

use super::graph::{Crossing, LabeledGraph};
use super::GbsError;

/// One letter of a loop word in the graph of groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Item {
    /// `a_v^n`, a power of the generator of the vertex group at `v`.
    Pow(usize, i64),
    Cross(Crossing),
}

/// An alternating path `a^{p_0} c_1 a^{p_1} … c_k a^{p_k}` of vertex-group
/// powers and edge crossings. Public constructors only build closed paths,
/// which represent elements of the fundamental group based at `start`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupWord {
    start: usize,
    powers: Vec<i64>,
    crossings: Vec<Crossing>,
}

impl GroupWord {
    pub fn identity(base: usize) -> Self {
        GroupWord {
            start: base,
            powers: vec![0],
            crossings: Vec::new(),
        }
    }

    /// Builds a word from items, merging consecutive powers. Fails unless
    /// every item sits at the vertex where the previous one ends and the path
    /// returns to `base`.
    pub fn from_items(graph: &LabeledGraph, base: usize, items: &[Item]) -> Result<Self, GbsError> {
        let w = GroupWord::path_from_items(graph, base, items)?;
        if w.end(graph) != base {
            return Err(GbsError::InvalidPath("path does not return to the base vertex".into()));
        }
        Ok(w)
    }

    pub(crate) fn path_from_items(graph: &LabeledGraph, start: usize, items: &[Item]) -> Result<Self, GbsError> {
        if start >= graph.vertex_count() {
            return Err(GbsError::InvalidPath(format!("no vertex #{start}")));
        }
        let mut w = GroupWord::identity(start);
        let mut at = start;
        for item in items {
            match *item {
                Item::Pow(v, n) => {
                    if v != at {
                        return Err(GbsError::InvalidPath(format!(
                            "power at {} while the path is at {}",
                            graph.vertex_name(v),
                            graph.vertex_name(at)
                        )));
                    }
                    let last = w.powers.last_mut().expect("powers never empty");
                    *last = last.checked_add(n).ok_or(GbsError::Overflow)?;
                }
                Item::Cross(c) => {
                    if c.edge >= graph.edges().len() {
                        return Err(GbsError::InvalidPath(format!("no edge #{}", c.edge)));
                    }
                    if graph.source(c) != at {
                        return Err(GbsError::InvalidPath(format!(
                            "crossing of {} does not start at {}",
                            graph.edge(c.edge).name,
                            graph.vertex_name(at)
                        )));
                    }
                    w.crossings.push(c);
                    w.powers.push(0);
                    at = graph.target(c);
                }
            }
        }
        Ok(w)
    }

    pub(crate) fn from_parts(start: usize, powers: Vec<i64>, crossings: Vec<Crossing>) -> Self {
        debug_assert_eq!(powers.len(), crossings.len() + 1);
        GroupWord { start, powers, crossings }
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn end(&self, graph: &LabeledGraph) -> usize {
        self.crossings.last().map_or(self.start, |&c| graph.target(c))
    }

    pub fn powers(&self) -> &[i64] {
        &self.powers
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.crossings.is_empty() && self.powers[0] == 0
    }

    /// Vertex where power `i` lives.
    pub fn vertex_at(&self, graph: &LabeledGraph, i: usize) -> usize {
        if i == 0 {
            self.start
        } else {
            graph.target(self.crossings[i - 1])
        }
    }

    pub fn items(&self, graph: &LabeledGraph) -> Vec<Item> {
        let mut out = Vec::new();
        for (i, &p) in self.powers.iter().enumerate() {
            if p != 0 {
                out.push(Item::Pow(self.vertex_at(graph, i), p));
            }
            if let Some(&c) = self.crossings.get(i) {
                out.push(Item::Cross(c));
            }
        }
        out
    }

    pub fn inverse(&self, graph: &LabeledGraph) -> Self {
        GroupWord {
            start: self.end(graph),
            powers: self.powers.iter().rev().map(|p| -p).collect(),
            crossings: self.crossings.iter().rev().map(|c| c.reversed()).collect(),
        }
    }

    /// Path concatenation; `other` must start where `self` ends.
    pub fn concat(&self, graph: &LabeledGraph, other: &GroupWord) -> Result<Self, GbsError> {
        if self.end(graph) != other.start {
            return Err(GbsError::InvalidPath("concatenated paths do not meet".into()));
        }
        let mut powers = self.powers.clone();
        let last = powers.last_mut().expect("powers never empty");
        *last = last.checked_add(other.powers[0]).ok_or(GbsError::Overflow)?;
        powers.extend_from_slice(&other.powers[1..]);
        let mut crossings = self.crossings.clone();
        crossings.extend_from_slice(&other.crossings);
        Ok(GroupWord {
            start: self.start,
            powers,
            crossings,
        })
    }

    /// `self^n` for a closed word; negative `n` inverts.
    pub fn pow(&self, graph: &LabeledGraph, n: i64) -> Result<Self, GbsError> {
        let unit = if n < 0 { self.inverse(graph) } else { self.clone() };
        let mut acc = GroupWord::identity(self.start);
        for _ in 0..n.unsigned_abs() {
            acc = acc.concat(graph, &unit)?;
        }
        Ok(acc)
    }

    /// `u w u⁻¹`.
    pub fn conjugate_by(&self, graph: &LabeledGraph, u: &GroupWord) -> Result<Self, GbsError> {
        u.concat(graph, self)?.concat(graph, &u.inverse(graph))
    }

    /// `[self, other] = self other self⁻¹ other⁻¹`.
    pub fn commutator(&self, graph: &LabeledGraph, other: &GroupWord) -> Result<Self, GbsError> {
        self.concat(graph, other)?
            .concat(graph, &self.inverse(graph))?
            .concat(graph, &other.inverse(graph))
    }

    /// Surface rendering as a path, e.g. `a[v]^2 x[e] x[f]^-1`.
    pub fn display(&self, graph: &LabeledGraph) -> String {
        let mut out = String::new();
        for item in self.items(graph) {
            if !out.is_empty() {
                out.push(' ');
            }
            match item {
                Item::Pow(v, n) => {
                    let _ = write!(out, "a[{}]", graph.vertex_name(v));
                    if n != 1 {
                        let _ = write!(out, "^{n}");
                    }
                }
                Item::Cross(c) => {
                    let _ = write!(out, "x[{}]", graph.edge(c.edge).name);
                    if !c.forward {
                        out.push_str("^-1");
                    }
                }
            }
        }
        if out.is_empty() {
            out.push('1');
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Generator {
    /// `a[v]`, the vertex-group generator conjugated into the base vertex
    /// along the spanning tree.
    Vertex(usize),
    /// `t[e]`, the loop through edge `e` closed up along the spanning tree
    /// (trivial when `e` is a tree edge).
    Edge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub generator: Generator,
    pub exponent: i64,
}

/// A word in the presentation generators `a[v]`, `t[e]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GenWord(pub Vec<Letter>);

impl GenWord {
    pub fn len(&self) -> usize {
        self.0.iter().map(|l| l.exponent.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> GenWord {
        GenWord(
            self.0
                .iter()
                .rev()
                .map(|l| Letter {
                    generator: l.generator,
                    exponent: -l.exponent,
                })
                .collect(),
        )
    }

    pub fn concat(&self, other: &GenWord) -> GenWord {
        GenWord(self.0.iter().chain(&other.0).copied().collect())
    }
}

impl LabeledGraph {
    /// Expands presentation generators into a closed path at the base vertex.
    pub fn expand(&self, word: &GenWord) -> Result<GroupWord, GbsError> {
        let mut items = Vec::new();
        for letter in &word.0 {
            match letter.generator {
                Generator::Vertex(v) => {
                    if v >= self.vertex_count() {
                        return Err(GbsError::InvalidPath(format!("no vertex #{v}")));
                    }
                    let path = self.tree_path(v);
                    items.extend(path.iter().map(|&c| Item::Cross(c)));
                    items.push(Item::Pow(v, letter.exponent));
                    items.extend(path.iter().rev().map(|&c| Item::Cross(c.reversed())));
                }
                Generator::Edge(e) => {
                    if e >= self.edges().len() {
                        return Err(GbsError::InvalidPath(format!("no edge #{e}")));
                    }
                    let forward = Crossing::new(e, letter.exponent > 0);
                    let from = self.tree_path(self.source(forward));
                    let to = self.tree_path(self.target(forward));
                    for _ in 0..letter.exponent.unsigned_abs() {
                        items.extend(from.iter().map(|&c| Item::Cross(c)));
                        items.push(Item::Cross(forward));
                        items.extend(to.iter().rev().map(|&c| Item::Cross(c.reversed())));
                    }
                }
            }
        }
        GroupWord::from_items(self, self.base(), &items)
    }

    /// Parses the surface syntax `a[v]^n t[e] t[e]^-1`; `1` is the identity.
    pub fn parse_word(&self, text: &str) -> Result<GenWord, GbsError> {
        let err = |msg: &str| GbsError::WordSyntax(format!("{msg} in `{}`", text.trim()));
        let mut letters = Vec::new();
        let cleaned = text.replace(['·', '*'], " ");
        for token in cleaned.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (kind, rest) = token.split_at(1);
            let rest = rest.strip_prefix('[').ok_or_else(|| err("expected `[`"))?;
            let close = rest.find(']').ok_or_else(|| err("expected `]`"))?;
            let name = &rest[..close];
            let tail = &rest[close + 1..];
            let exponent: i64 = if tail.is_empty() {
                1
            } else {
                tail.strip_prefix('^')
                    .ok_or_else(|| err("expected `^`"))?
                    .parse()
                    .map_err(|_| err("bad exponent"))?
            };
            let generator = match kind {
                "a" => Generator::Vertex(
                    self.vertex_index(name)
                        .ok_or_else(|| GbsError::UnknownVertex(name.to_string()))?,
                ),
                "t" => Generator::Edge(
                    self.edge_index(name)
                        .ok_or_else(|| GbsError::UnknownEdge(name.to_string()))?,
                ),
                _ => return Err(err("expected `a[..]` or `t[..]`")),
            };
            if exponent != 0 {
                letters.push(Letter { generator, exponent });
            }
        }
        Ok(GenWord(letters))
    }

    pub fn format_word(&self, word: &GenWord) -> String {
        if word.0.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = word
            .0
            .iter()
            .map(|l| {
                let head = match l.generator {
                    Generator::Vertex(v) => format!("a[{}]", self.vertex_name(v)),
                    Generator::Edge(e) => format!("t[{}]", self.edge(e).name),
                };
                if l.exponent == 1 {
                    head
                } else {
                    format!("{head}^{}", l.exponent)
                }
            })
            .collect();
        parts.join(" ")
    }

    /// Parses and expands in one step.
    pub fn word(&self, text: &str) -> Result<GroupWord, GbsError> {
        self.expand(&self.parse_word(text)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbs::graph::Edge;

    fn m3() -> LabeledGraph {
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
        .unwrap()
    }

    #[test]
    fn expansion_follows_the_tree() {
        let g = m3();
        let w = g.word("t[e] t[e']").unwrap();
        let seq: Vec<(usize, bool)> = w.crossings().iter().map(|c| (c.edge, c.forward)).collect();
        assert_eq!(seq, vec![(0, true), (1, true), (2, true), (1, false)]);
        assert!(g.word("t[f]").unwrap().crossings().len() == 2);
    }

    #[test]
    fn path_must_be_consistent() {
        let g = m3();
        let bad = GroupWord::from_items(&g, 0, &[Item::Pow(1, 1)]);
        assert!(matches!(bad, Err(GbsError::InvalidPath(_))));
        let open = GroupWord::from_items(&g, 0, &[Item::Cross(Crossing::new(1, true))]);
        assert!(matches!(open, Err(GbsError::InvalidPath(_))));
    }

    #[test]
    fn surface_syntax_round_trip() {
        let g = m3();
        for text in ["t[e] a[u]^2 t[e]^-1", "a[v]^-3 t[e']", "1"] {
            let w = g.parse_word(text).unwrap();
            assert_eq!(g.format_word(&w), text);
        }
        assert!(matches!(g.parse_word("b[u]"), Err(GbsError::WordSyntax(_))));
        assert!(matches!(g.parse_word("a[z]"), Err(GbsError::UnknownVertex(_))));
    }

    #[test]
    fn inverse_and_items() {
        let g = m3();
        let w = g.word("a[v] t[e]").unwrap();
        let inv = w.inverse(&g);
        let prod = w.concat(&g, &inv).unwrap();
        assert_eq!(prod.crossing_count(), 2 * w.crossing_count());
        let rebuilt = GroupWord::from_items(&g, 0, &w.items(&g)).unwrap();
        assert_eq!(rebuilt, w);
    }
}
