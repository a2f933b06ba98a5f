//! Displacement computations on an explicit model of the Bass-Serre tree.
//!
//! A vertex of the tree is stored as its geodesic from the base lift: a
//! sequence of `(coset representative, crossing)` steps where each
//! representative lies in `0..|outgoing label|`. Group elements act letter by
//! letter on this encoding, so nothing here goes through Britton reduction
//! of the acting word.

use serde::Serialize;

use super::graph::{Crossing, LabeledGraph};
use super::word::{GroupWord, Item};
use super::GbsError;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct TreeVertex {
    // starting vertex of the geodesic (the base, except mid-action)
    start: usize,
    steps: Vec<(i128, Crossing)>,
}

impl TreeVertex {
    fn root(v: usize) -> Self {
        TreeVertex {
            start: v,
            steps: Vec::new(),
        }
    }

    fn end(&self, graph: &LabeledGraph) -> usize {
        self.steps.last().map_or(self.start, |&(_, c)| graph.target(c))
    }

    fn distance(&self, other: &TreeVertex) -> usize {
        let common = self
            .steps
            .iter()
            .zip(&other.steps)
            .take_while(|(a, b)| a == b)
            .count();
        self.steps.len() + other.steps.len() - 2 * common
    }
}

// a_start^n · x, carrying quotients down the geodesic
fn act_power(graph: &LabeledGraph, x: &mut TreeVertex, n: i128) -> Result<(), GbsError> {
    let mut carry = n;
    for step in x.steps.iter_mut() {
        if carry == 0 {
            return Ok(());
        }
        let modulus = i128::from(graph.outgoing_label(step.1));
        let total = step.0.checked_add(carry).ok_or(GbsError::Overflow)?;
        let rep = total.rem_euclid(modulus);
        let quotient = (total - rep) / modulus;
        step.0 = rep;
        carry = quotient
            .checked_mul(i128::from(graph.incoming_label(step.1)))
            .ok_or(GbsError::Overflow)?;
    }
    // whatever is left fixes the endpoint
    Ok(())
}

// c · x, where c arrives at x.start
fn act_crossing(graph: &LabeledGraph, x: &mut TreeVertex, c: Crossing) {
    debug_assert_eq!(graph.target(c), x.start);
    x.start = graph.source(c);
    if let Some(&(0, first)) = x.steps.first() {
        if first == c.reversed() {
            x.steps.remove(0);
            return;
        }
    }
    x.steps.insert(0, (0, c));
}

fn act(graph: &LabeledGraph, word: &GroupWord, x: &TreeVertex) -> Result<TreeVertex, GbsError> {
    let mut y = x.clone();
    for item in word.items(graph).iter().rev() {
        match *item {
            Item::Pow(_, n) => act_power(graph, &mut y, i128::from(n))?,
            Item::Cross(c) => act_crossing(graph, &mut y, c),
        }
    }
    Ok(y)
}

fn children(graph: &LabeledGraph, x: &TreeVertex) -> Vec<TreeVertex> {
    let here = x.end(graph);
    let parent_edge = x.steps.last().map(|&(_, c)| c.reversed());
    let mut out = Vec::new();
    for c in graph.departures(here) {
        for r in 0..i128::from(graph.outgoing_label(c).unsigned_abs()) {
            if r == 0 && Some(c) == parent_edge {
                continue;
            }
            let mut y = x.clone();
            y.steps.push((r, c));
            out.push(y);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleResult {
    /// min over explored vertices of `max(d(x, w²x) − d(x, wx), 0)`.
    pub length: u64,
    /// min over explored vertices of `d(x, wx)`.
    pub min_displacement: u64,
    /// `⌈d(x₀, w x₀)/2⌉` for the base lift `x₀`.
    pub reach: u64,
    pub radius: u64,
    pub explored: usize,
    /// `radius ≥ reach + length`.
    pub valid: bool,
}

/// Translation length of `word` read off the radius-`radius` ball around
/// the base lift.
///
/// Subtrees are skipped once the displacement `d(x, wx)` increases along the
/// geodesic from the base: displacement is convex along geodesics, so no
/// minimizer lies beyond such a step.
pub fn ball_displacement(graph: &LabeledGraph, word: &GroupWord, radius: u64) -> Result<OracleResult, GbsError> {
    if word.end(graph) != word.start() || word.start() != graph.base() {
        return Err(GbsError::InvalidPath("oracle words must be closed at the base vertex".into()));
    }
    let square = word.concat(graph, word)?;
    let root = TreeVertex::root(graph.base());
    let eval = |x: &TreeVertex| -> Result<(u64, u64), GbsError> {
        let d1 = x.distance(&act(graph, word, x)?) as u64;
        let d2 = x.distance(&act(graph, &square, x)?) as u64;
        Ok((d1, d2.saturating_sub(d1)))
    };

    let (d0, l0) = eval(&root)?;
    let reach = d0.div_ceil(2);
    let mut best_len = l0;
    let mut best_disp = d0;
    let mut explored = 1;
    let mut frontier = vec![(root, d0)];
    'search: for _depth in 0..radius {
        let mut next = Vec::new();
        for (x, dx) in &frontier {
            if *dx == 0 {
                // a fixed point: nothing smaller exists
                break 'search;
            }
            for y in children(graph, x) {
                let (dy, ly) = eval(&y)?;
                explored += 1;
                best_len = best_len.min(ly);
                best_disp = best_disp.min(dy);
                if dy <= *dx {
                    next.push((y, dy));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }

    Ok(OracleResult {
        length: best_len,
        min_displacement: best_disp,
        reach,
        radius,
        explored,
        valid: radius >= reach + best_len,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn stable_letter_translates_by_one() {
        let g = LabeledGraph::baumslag_solitar(1, 2).unwrap();
        let r = ball_displacement(&g, &g.word("t[e]").unwrap(), 4).unwrap();
        assert_eq!(r.length, 1);
        assert_eq!(r.min_displacement, 1);
        assert!(r.valid);
    }

    #[test]
    fn vertex_generator_fixes_base() {
        let g = LabeledGraph::baumslag_solitar(1, 2).unwrap();
        let r = ball_displacement(&g, &g.word("a[v]").unwrap(), 2).unwrap();
        assert_eq!((r.length, r.min_displacement), (0, 0));
    }

    #[test]
    fn conjugated_elliptic_has_fixed_point_off_base() {
        let g = LabeledGraph::baumslag_solitar(2, 3).unwrap();
        let w = g.word("t[e] a[v] t[e]^-1").unwrap();
        let r = ball_displacement(&g, &w, 4).unwrap();
        assert_eq!(r.min_displacement, 0);
        assert_eq!(r.length, 0);
        assert_eq!(r.reach, 1);
    }

    #[test]
    fn action_respects_relation() {
        // t a^2 t⁻¹ = a^3 in BS(2,3): both act identically on nearby vertices
        let g = LabeledGraph::baumslag_solitar(2, 3).unwrap();
        let lhs = g.word("t[e] a[v]^2 t[e]^-1").unwrap();
        let rhs = g.word("a[v]^3").unwrap();
        let mut layer = vec![TreeVertex::root(0)];
        for _ in 0..3 {
            let mut next = Vec::new();
            for x in &layer {
                assert_eq!(act(&g, &lhs, x).unwrap(), act(&g, &rhs, x).unwrap());
                next.extend(children(&g, x));
            }
            layer = next;
        }
    }
}
