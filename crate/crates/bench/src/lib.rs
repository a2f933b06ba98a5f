//! Workloads shared by the benchmarks.

use splitkit::gbs::{sample, Edge, GroupWord, LabeledGraph};

/// The two-vertex master: a (2,3) loop at each vertex, joined by a (2,2) edge.
pub fn m3() -> LabeledGraph {
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
    .expect("valid graph")
}

/// Seeded words of length at most `max_len`, expanded to paths.
pub fn words(graph: &LabeledGraph, count: usize, max_len: usize) -> Vec<GroupWord> {
    sample::random_words(graph, 7, count, max_len)
        .iter()
        .map(|w| graph.expand(w).expect("generator words expand"))
        .collect()
}
