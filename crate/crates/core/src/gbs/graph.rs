use std::collections::VecDeque;

use super::GbsError;

/// Traversal of one edge, `forward` meaning origin to terminus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Crossing {
    pub edge: usize,
    pub forward: bool,
}

impl Crossing {
    pub fn new(edge: usize, forward: bool) -> Self {
        Crossing { edge, forward }
    }

    pub fn reversed(self) -> Self {
        Crossing {
            edge: self.edge,
            forward: !self.forward,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub origin: usize,
    pub terminus: usize,
    /// λ, the label at the origin end.
    pub origin_label: i64,
    /// μ, the label at the terminus end.
    pub terminus_label: i64,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.origin == self.terminus
    }
}

/// A GBS graph of groups: every vertex and edge group is infinite cyclic and
/// each edge carries the index data of its two end inclusions.
///
/// Edge relation convention: `x_e a_{t(e)}^{μ(e)} x_e⁻¹ = a_{o(e)}^{λ(e)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    base: usize,
    tree: Vec<usize>,
    // path from the base vertex to each vertex inside the spanning tree
    tree_paths: Vec<Vec<Crossing>>,
}

impl LabeledGraph {
    /// Validates connectivity and labels and fixes the spanning tree.
    ///
    /// When `tree` is `None` a breadth-first spanning tree from the base
    /// vertex is chosen, scanning edges in declaration order.
    pub fn new(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        base: Option<usize>,
        tree: Option<Vec<usize>>,
    ) -> Result<Self, GbsError> {
        if vertices.is_empty() {
            return Err(GbsError::Empty);
        }
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].contains(v) {
                return Err(GbsError::Duplicate(v.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|f| f.name == e.name) {
                return Err(GbsError::Duplicate(e.name.clone()));
            }
            if e.origin >= vertices.len() || e.terminus >= vertices.len() {
                return Err(GbsError::UnknownVertex(e.name.clone()));
            }
            if e.origin_label == 0 || e.terminus_label == 0 {
                return Err(GbsError::ZeroLabel(e.name.clone()));
            }
        }
        let base = base.unwrap_or(0);
        if base >= vertices.len() {
            return Err(GbsError::UnknownVertex(format!("#{base}")));
        }
        let mut graph = LabeledGraph {
            vertices,
            edges,
            base,
            tree: Vec::new(),
            tree_paths: Vec::new(),
        };
        let tree = match tree {
            Some(t) => t,
            None => graph.bfs_tree()?,
        };
        graph.install_tree(tree)?;
        Ok(graph)
    }

    fn bfs_tree(&self) -> Result<Vec<usize>, GbsError> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        seen[self.base] = true;
        let mut queue = VecDeque::from([self.base]);
        let mut tree = Vec::new();
        while let Some(v) = queue.pop_front() {
            for (i, e) in self.edges.iter().enumerate() {
                let other = if e.origin == v {
                    e.terminus
                } else if e.terminus == v {
                    e.origin
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    tree.push(i);
                    queue.push_back(other);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            tree.sort_unstable();
            Ok(tree)
        } else {
            Err(GbsError::Disconnected)
        }
    }

    fn install_tree(&mut self, mut tree: Vec<usize>) -> Result<(), GbsError> {
        tree.sort_unstable();
        tree.dedup();
        let n = self.vertices.len();
        if tree.len() + 1 != n || tree.iter().any(|&e| e >= self.edges.len()) {
            return Err(GbsError::BadSpanningTree);
        }
        let mut paths: Vec<Option<Vec<Crossing>>> = vec![None; n];
        paths[self.base] = Some(Vec::new());
        let mut queue = VecDeque::from([self.base]);
        while let Some(v) = queue.pop_front() {
            let here = paths[v].clone().unwrap_or_default();
            for &i in &tree {
                let e = &self.edges[i];
                let step = if e.origin == v && paths[e.terminus].is_none() {
                    Some((e.terminus, Crossing::new(i, true)))
                } else if e.terminus == v && paths[e.origin].is_none() {
                    Some((e.origin, Crossing::new(i, false)))
                } else {
                    None
                };
                if let Some((w, c)) = step {
                    let mut p = here.clone();
                    p.push(c);
                    paths[w] = Some(p);
                    queue.push_back(w);
                }
            }
        }
        // a loop in the tree or a disconnected tree leaves a vertex unreached
        let paths: Option<Vec<Vec<Crossing>>> = paths.into_iter().collect();
        match paths {
            Some(p) if tree.iter().all(|&i| !self.edges[i].is_loop()) => {
                self.tree = tree;
                self.tree_paths = p;
                Ok(())
            }
            _ => Err(GbsError::BadSpanningTree),
        }
    }

    /// One vertex with a single loop; labels (λ, μ) at origin and terminus.
    pub fn single_loop(origin_label: i64, terminus_label: i64) -> Result<Self, GbsError> {
        LabeledGraph::new(
            vec!["v".into()],
            vec![Edge {
                name: "e".into(),
                origin: 0,
                terminus: 0,
                origin_label,
                terminus_label,
            }],
            None,
            None,
        )
    }

    /// Two vertices `u`, `v` joined by one edge `e` with labels (λ, μ).
    pub fn segment(origin_label: i64, terminus_label: i64) -> Result<Self, GbsError> {
        LabeledGraph::new(
            vec!["u".into(), "v".into()],
            vec![Edge {
                name: "e".into(),
                origin: 0,
                terminus: 1,
                origin_label,
                terminus_label,
            }],
            None,
            None,
        )
    }

    /// `BS(m, n) = ⟨a, t | t a^m t⁻¹ = a^n⟩`, with `t = t[e]` and `a = a[v]`.
    pub fn baumslag_solitar(m: i64, n: i64) -> Result<Self, GbsError> {
        LabeledGraph::single_loop(n, m)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, i: usize) -> &Edge {
        &self.edges[i]
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn spanning_tree(&self) -> &[usize] {
        &self.tree
    }

    pub fn in_tree(&self, edge: usize) -> bool {
        self.tree.binary_search(&edge).is_ok()
    }

    /// Crossings leading from the base vertex to `v` inside the spanning tree.
    pub fn tree_path(&self, v: usize) -> &[Crossing] {
        &self.tree_paths[v]
    }

    pub fn source(&self, c: Crossing) -> usize {
        let e = &self.edges[c.edge];
        if c.forward {
            e.origin
        } else {
            e.terminus
        }
    }

    pub fn target(&self, c: Crossing) -> usize {
        let e = &self.edges[c.edge];
        if c.forward {
            e.terminus
        } else {
            e.origin
        }
    }

    /// Label at the end the crossing departs from.
    pub fn outgoing_label(&self, c: Crossing) -> i64 {
        let e = &self.edges[c.edge];
        if c.forward {
            e.origin_label
        } else {
            e.terminus_label
        }
    }

    /// Label at the end the crossing arrives at.
    pub fn incoming_label(&self, c: Crossing) -> i64 {
        self.outgoing_label(c.reversed())
    }

    /// Every crossing departing from `v`, loops contributing both directions.
    pub fn departures(&self, v: usize) -> Vec<Crossing> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.origin == v {
                out.push(Crossing::new(i, true));
            }
            if e.terminus == v {
                out.push(Crossing::new(i, false));
            }
        }
        out
    }

    /// Labels of all edge ends incident to `v` (a loop contributes two).
    pub fn incident_labels(&self, v: usize) -> Vec<i64> {
        self.departures(v).into_iter().map(|c| self.outgoing_label(c)).collect()
    }

    /// Valence of a lift of `v` in the Bass-Serre tree.
    pub fn tree_valence(&self, v: usize) -> u64 {
        self.incident_labels(v).iter().map(|l| l.unsigned_abs()).sum()
    }
}
