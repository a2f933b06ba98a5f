use serde::Serialize;

use super::graph::{Edge, LabeledGraph};
use super::word::{GroupWord, Item};
use super::GbsError;

/// No non-loop edge has a ±1 label, i.e. no edge group equals an endpoint
/// vertex group across distinct vertex orbits.
pub fn is_reduced(graph: &LabeledGraph) -> bool {
    graph
        .edges()
        .iter()
        .all(|e| e.is_loop() || (e.origin_label.abs() >= 2 && e.terminus_label.abs() >= 2))
}

/// One elementary collapse: `edge` is contracted, vertex `absorbed` is
/// merged into `survivor`, and `a_absorbed = a_survivor^factor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Collapse {
    pub edge: usize,
    pub absorbed: usize,
    pub survivor: usize,
    pub factor: i64,
}

/// The reduced graph together with the collapses leading to it; indices in
/// each step refer to the graph before that step.
#[derive(Debug, Clone)]
pub struct Reduction {
    pub graph: LabeledGraph,
    pub steps: Vec<(LabeledGraph, Collapse)>,
}

fn find_collapse(graph: &LabeledGraph) -> Option<Collapse> {
    graph.edges().iter().enumerate().find_map(|(i, e)| {
        if e.is_loop() {
            return None;
        }
        if e.origin_label.abs() == 1 {
            Some(Collapse {
                edge: i,
                absorbed: e.origin,
                survivor: e.terminus,
                factor: e.origin_label * e.terminus_label,
            })
        } else if e.terminus_label.abs() == 1 {
            Some(Collapse {
                edge: i,
                absorbed: e.terminus,
                survivor: e.origin,
                factor: e.origin_label * e.terminus_label,
            })
        } else {
            None
        }
    })
}

fn apply(graph: &LabeledGraph, c: &Collapse) -> Result<LabeledGraph, GbsError> {
    let renumber = |v: usize| -> usize {
        let v = if v == c.absorbed { c.survivor } else { v };
        if v > c.absorbed {
            v - 1
        } else {
            v
        }
    };
    let vertices: Vec<String> = graph
        .vertex_names()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != c.absorbed)
        .map(|(_, n)| n.clone())
        .collect();
    let mut edges = Vec::new();
    for (i, e) in graph.edges().iter().enumerate() {
        if i == c.edge {
            continue;
        }
        let mut origin_label = e.origin_label;
        let mut terminus_label = e.terminus_label;
        if e.origin == c.absorbed {
            origin_label = origin_label.checked_mul(c.factor).ok_or(GbsError::Overflow)?;
        }
        if e.terminus == c.absorbed {
            terminus_label = terminus_label.checked_mul(c.factor).ok_or(GbsError::Overflow)?;
        }
        edges.push(Edge {
            name: e.name.clone(),
            origin: renumber(e.origin),
            terminus: renumber(e.terminus),
            origin_label,
            terminus_label,
        });
    }
    LabeledGraph::new(vertices, edges, Some(renumber(graph.base())), None)
}

impl Collapse {
    /// Image of a path word of the graph before the collapse.
    pub fn map_word(&self, before: &LabeledGraph, after: &LabeledGraph, w: &GroupWord) -> Result<GroupWord, GbsError> {
        let renumber = |v: usize| -> usize {
            let v = if v == self.absorbed { self.survivor } else { v };
            if v > self.absorbed {
                v - 1
            } else {
                v
            }
        };
        let mut items = Vec::new();
        for item in w.items(before) {
            match item {
                Item::Pow(v, n) => {
                    let n = if v == self.absorbed {
                        n.checked_mul(self.factor).ok_or(GbsError::Overflow)?
                    } else {
                        n
                    };
                    items.push(Item::Pow(renumber(v), n));
                }
                Item::Cross(c) if c.edge == self.edge => {}
                Item::Cross(mut c) => {
                    if c.edge > self.edge {
                        c.edge -= 1;
                    }
                    items.push(Item::Cross(c));
                }
            }
        }
        GroupWord::from_items(after, renumber(w.start()), &items)
    }
}

impl Reduction {
    /// Pushes a loop word of the original graph through every collapse.
    pub fn map_word(&self, w: &GroupWord) -> Result<GroupWord, GbsError> {
        let mut cur = w.clone();
        for (i, (before, c)) in self.steps.iter().enumerate() {
            let after = self.steps.get(i + 1).map_or(&self.graph, |(g, _)| g);
            cur = c.map_word(before, after, &cur)?;
        }
        Ok(cur)
    }
}

/// Collapses non-loop edges carrying a ±1 label until the graph is reduced;
/// labels at the absorbed vertex are multiplied by the collapse factor.
pub fn reduce(graph: &LabeledGraph) -> Result<Reduction, GbsError> {
    let mut cur = graph.clone();
    let mut steps = Vec::new();
    while let Some(c) = find_collapse(&cur) {
        let next = apply(&cur, &c)?;
        steps.push((cur, c));
        cur = next;
    }
    Ok(Reduction { graph: cur, steps })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Elementary {
    Z,
    Z2,
    Klein,
    /// `BS(1, n)`, `|n| ≥ 2`.
    Bs1n(i64),
    Generic,
    Unknown,
}

impl std::fmt::Display for Elementary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Elementary::Z => f.write_str("Z"),
            Elementary::Z2 => f.write_str("Z^2"),
            Elementary::Klein => f.write_str("Klein bottle group"),
            Elementary::Bs1n(n) => write!(f, "BS(1,{n})"),
            Elementary::Generic => f.write_str("generic"),
            Elementary::Unknown => f.write_str("unknown"),
        }
    }
}

fn table(graph: &LabeledGraph) -> Elementary {
    let edges = graph.edges();
    match edges {
        [] => Elementary::Z,
        [e] if e.is_loop() => {
            let (p, q) = (e.origin_label, e.terminus_label);
            match (p.abs(), q.abs()) {
                (1, 1) if p * q == 1 => Elementary::Z2,
                (1, 1) => Elementary::Klein,
                (1, n) | (n, 1) => Elementary::Bs1n(n * (p * q).signum()),
                _ => Elementary::Generic,
            }
        }
        [e] => {
            if e.origin_label.abs() == 2 && e.terminus_label.abs() == 2 {
                Elementary::Klein
            } else {
                Elementary::Generic
            }
        }
        _ => Elementary::Generic,
    }
}

/// Reduces, then reads the verdict off the table of one-edge graphs.
///
/// The table is cross-checked against the Bass-Serre tree being a line
/// (every lift of valence at most 2), which happens exactly for `Z`, `Z²`
/// and the Klein bottle group; a disagreement yields `Unknown`.
pub fn classify_elementary(graph: &LabeledGraph) -> Result<Elementary, GbsError> {
    let reduced = reduce(graph)?.graph;
    let verdict = table(&reduced);
    let line = (0..reduced.vertex_count()).all(|v| reduced.tree_valence(v) <= 2);
    let agrees = match verdict {
        Elementary::Z | Elementary::Z2 | Elementary::Klein => line,
        _ => !line,
    };
    Ok(if agrees { verdict } else { Elementary::Unknown })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gbs::{is_elliptic, modular_homomorphism};

    #[test]
    fn reducedness_examples() {
        assert!(is_reduced(&LabeledGraph::single_loop(2, 4).unwrap()));
        assert!(!is_reduced(&LabeledGraph::segment(1, 3).unwrap()));
        assert!(is_reduced(&LabeledGraph::segment(2, 2).unwrap()));
        assert!(is_reduced(&LabeledGraph::single_loop(1, 1).unwrap()));
    }

    #[test]
    fn segment_with_unit_label_collapses_to_z() {
        let r = reduce(&LabeledGraph::segment(1, 3).unwrap()).unwrap();
        assert_eq!(r.graph.vertex_count(), 1);
        assert!(r.graph.edges().is_empty());
    }

    #[test]
    fn reduced_graph_is_untouched() {
        let g = LabeledGraph::single_loop(2, 4).unwrap();
        let r = reduce(&g).unwrap();
        assert_eq!(r.graph, g);
        assert!(r.steps.is_empty());
    }

    fn segment_with_loop(loop_at: usize) -> LabeledGraph {
        LabeledGraph::new(
            vec!["u".into(), "v".into()],
            vec![
                Edge { name: "f".into(), origin: 0, terminus: 1, origin_label: 1, terminus_label: 2 },
                Edge { name: "e".into(), origin: loop_at, terminus: loop_at, origin_label: 2, terminus_label: 3 },
            ],
            None,
            None,
        )
        .unwrap()
    }

    #[test]
    fn loop_labels_rescaled_when_absorbed() {
        // a_u = a_v^2, so the loop relation on a_u^3 ~ a_u^2 becomes a_v^6 ~ a_v^4
        let r = reduce(&segment_with_loop(0)).unwrap();
        assert_eq!(r.graph.vertex_count(), 1);
        assert_eq!(r.graph.vertex_name(0), "v");
        let e = &r.graph.edges()[0];
        assert_eq!((e.origin_label, e.terminus_label), (4, 6));

        let r = reduce(&segment_with_loop(1)).unwrap();
        let e = &r.graph.edges()[0];
        assert_eq!((e.origin_label, e.terminus_label), (2, 3));
    }

    #[test]
    fn collapse_preserves_ellipticity_and_modular_map() {
        for at in [0, 1] {
            let g = segment_with_loop(at);
            let r = reduce(&g).unwrap();
            for text in ["t[e]", "a[u] t[e] a[v]", "t[e]^2 a[u]^-1 t[e]^-1", "a[u]^3", "t[e] a[v] t[e]^-1"] {
                let w = g.word(text).unwrap();
                let image = r.map_word(&w).unwrap();
                assert_eq!(
                    is_elliptic(&g, &w).unwrap(),
                    is_elliptic(&r.graph, &image).unwrap(),
                    "{text}"
                );
                assert_eq!(
                    modular_homomorphism(&g, &w).unwrap(),
                    modular_homomorphism(&r.graph, &image).unwrap(),
                    "{text}"
                );
            }
        }
    }

    #[test]
    fn classification_examples() {
        let cases = [
            (LabeledGraph::single_loop(1, 1).unwrap(), Elementary::Z2),
            (LabeledGraph::single_loop(1, -1).unwrap(), Elementary::Klein),
            (LabeledGraph::segment(2, 2).unwrap(), Elementary::Klein),
            (LabeledGraph::segment(-2, 2).unwrap(), Elementary::Klein),
            (LabeledGraph::single_loop(2, 3).unwrap(), Elementary::Generic),
            (LabeledGraph::single_loop(1, 6).unwrap(), Elementary::Bs1n(6)),
            (LabeledGraph::single_loop(-1, 4).unwrap(), Elementary::Bs1n(-4)),
            (LabeledGraph::segment(1, 3).unwrap(), Elementary::Z),
            (LabeledGraph::segment(2, 3).unwrap(), Elementary::Generic),
        ];
        for (g, expected) in cases {
            assert_eq!(classify_elementary(&g).unwrap(), expected);
        }
    }
}
