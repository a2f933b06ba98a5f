//! Quotients of trees of cylinders computed from finite local data.
//!
//! The input is the quotient graph `Γ = T/G` of a splitting (the skeleton)
//! with, at each vertex orbit, a partition of the incident edge ends into
//! local classes: two ends in one class lie in a common cylinder at every
//! lift of the vertex. This presumes orbit-homogeneity, which the atlas
//! cannot prove and which is listed in the hypothesis manifest instead.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CylinderError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("duplicate name `{0}`")]
    Duplicate(String),
    #[error("skeleton graph is disconnected")]
    Disconnected,
    #[error("edge end {0} belongs to no local class")]
    UnclassedEnd(String),
    #[error("edge end {0} is classed twice")]
    DuplicateEnd(String),
    #[error("edge end {end} is not incident to vertex `{vertex}`")]
    ForeignEnd { end: String, vertex: String },
    #[error("missing flag: {0}")]
    MissingFlag(String),
    #[error("conflicting stabilizer labels for one cylinder: `{0}` and `{1}`")]
    ConflictingLabel(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonVertex {
    pub name: String,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SkeletonEdge {
    pub name: String,
    pub label: String,
    pub origin: usize,
    pub terminus: usize,
}

/// The finite quotient graph `Γ` with symbolic vertex and edge group labels.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SkeletonGraph {
    vertices: Vec<SkeletonVertex>,
    edges: Vec<SkeletonEdge>,
}

impl SkeletonGraph {
    pub fn new(vertices: Vec<SkeletonVertex>, edges: Vec<SkeletonEdge>) -> Result<Self, CylinderError> {
        for (i, v) in vertices.iter().enumerate() {
            if vertices[..i].iter().any(|w| w.name == v.name) {
                return Err(CylinderError::Duplicate(v.name.clone()));
            }
        }
        for (i, e) in edges.iter().enumerate() {
            if edges[..i].iter().any(|f| f.name == e.name) {
                return Err(CylinderError::Duplicate(e.name.clone()));
            }
            if e.origin >= vertices.len() || e.terminus >= vertices.len() {
                return Err(CylinderError::UnknownVertex(e.name.clone()));
            }
        }
        let g = SkeletonGraph { vertices, edges };
        if !g.vertices.is_empty() {
            let mut uf = UnionFind::new(g.vertices.len());
            for e in &g.edges {
                uf.union(e.origin, e.terminus);
            }
            if (0..g.vertices.len()).any(|v| uf.find(v) != uf.find(0)) {
                return Err(CylinderError::Disconnected);
            }
        }
        Ok(g)
    }

    pub fn vertices(&self) -> &[SkeletonVertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[SkeletonEdge] {
        &self.edges
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    /// The vertex orbit an edge end is attached to.
    pub fn end_vertex(&self, end: EndRef) -> usize {
        let e = &self.edges[end.edge];
        match end.side {
            Side::Origin => e.origin,
            Side::Terminus => e.terminus,
        }
    }

    /// All edge ends at `v`; a loop contributes two.
    pub fn ends_at(&self, v: usize) -> Vec<EndRef> {
        let mut out = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if e.origin == v {
                out.push(EndRef { edge: i, side: Side::Origin });
            }
            if e.terminus == v {
                out.push(EndRef { edge: i, side: Side::Terminus });
            }
        }
        out
    }

    pub fn format_end(&self, end: EndRef) -> String {
        format!("{}.{}", self.edges[end.edge].name, end.side)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Side {
    Origin,
    Terminus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Origin => "o",
            Side::Terminus => "t",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EndRef {
    pub edge: usize,
    pub side: Side,
}

/// A set of edge ends at one vertex orbit lying in a common cylinder.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocalClass {
    pub vertex: usize,
    pub ends: Vec<EndRef>,
    /// Whether one lift of the vertex meets at least two cylinders through
    /// edges of this class.
    pub plural: Option<bool>,
    /// Whether the stabilizer of the quotient edge this class produces lies
    /// in the admissible family `A`.
    pub in_a: Option<bool>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CylinderAtlas {
    pub classes: Vec<LocalClass>,
    /// Stabilizer labels keyed by an edge of the cylinder they describe.
    pub stabilizers: BTreeMap<usize, String>,
}

/// Checks that the atlas classes every end exactly once and flags every
/// class; returns the assumptions the atlas asserts but cannot witness.
pub fn validate_atlas(s: &SkeletonGraph, a: &CylinderAtlas) -> Result<Vec<String>, CylinderError> {
    let mut seen: BTreeMap<EndRef, usize> = BTreeMap::new();
    for (i, class) in a.classes.iter().enumerate() {
        if class.vertex >= s.vertices.len() {
            return Err(CylinderError::UnknownVertex(format!("#{}", class.vertex)));
        }
        for &end in &class.ends {
            if end.edge >= s.edges.len() {
                return Err(CylinderError::UnknownEdge(format!("#{}", end.edge)));
            }
            if s.end_vertex(end) != class.vertex {
                return Err(CylinderError::ForeignEnd {
                    end: s.format_end(end),
                    vertex: s.vertices[class.vertex].name.clone(),
                });
            }
            if seen.insert(end, i).is_some() {
                return Err(CylinderError::DuplicateEnd(s.format_end(end)));
            }
        }
        if class.plural.is_none() {
            return Err(CylinderError::MissingFlag(format!(
                "plural for a class at `{}`",
                s.vertices[class.vertex].name
            )));
        }
    }
    for v in 0..s.vertices.len() {
        if let Some(end) = s.ends_at(v).into_iter().find(|e| !seen.contains_key(e)) {
            return Err(CylinderError::UnclassedEnd(s.format_end(end)));
        }
    }
    for &e in a.stabilizers.keys() {
        if e >= s.edges.len() {
            return Err(CylinderError::UnknownEdge(format!("#{e}")));
        }
    }
    let orbits = cylinder_orbits(s, a);
    cylinder_labels(s, a, &orbits)?;

    if s.edges.is_empty() {
        return Ok(Vec::new());
    }
    let mut manifest = vec![
        "orbit-homogeneity: whether two edges at a common lift are co-cylindrical depends only on their orbits, the shared vertex orbit and the local classes".to_string(),
        "the equivalence on edges is invariant under conjugation".to_string(),
        "betweenness axiom: an edge between two equivalent edges is equivalent to them".to_string(),
    ];
    for class in &a.classes {
        let ends: Vec<String> = class.ends.iter().map(|&e| s.format_end(e)).collect();
        manifest.push(format!(
            "at `{}`, class [{}] is {}",
            s.vertices[class.vertex].name,
            ends.join(" "),
            if class.plural == Some(true) {
                "met by at least two cylinders at one lift"
            } else {
                "met by exactly one cylinder at each lift"
            }
        ));
    }
    for (&e, label) in &a.stabilizers {
        manifest.push(format!("the cylinder through `{}` has stabilizer {label}", s.edges[e].name));
    }
    Ok(manifest)
}

/// Partition of edge orbits into cylinder orbits, each sorted, ordered by
/// least member.
pub fn cylinder_orbits(s: &SkeletonGraph, a: &CylinderAtlas) -> Vec<Vec<usize>> {
    let mut uf = UnionFind::new(s.edges.len());
    for class in &a.classes {
        for pair in class.ends.windows(2) {
            uf.union(pair[0].edge, pair[1].edge);
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for e in 0..s.edges.len() {
        groups.entry(uf.find(e)).or_default().push(e);
    }
    let mut out: Vec<Vec<usize>> = groups.into_values().collect();
    out.sort();
    out
}

// Supplied label, or the group label of the cylinder's first edge.
fn cylinder_labels(s: &SkeletonGraph, a: &CylinderAtlas, orbits: &[Vec<usize>]) -> Result<Vec<String>, CylinderError> {
    orbits
        .iter()
        .map(|orbit| {
            let mut label: Option<&String> = None;
            for e in orbit {
                if let Some(l) = a.stabilizers.get(e) {
                    match label {
                        Some(prev) if prev != l => {
                            return Err(CylinderError::ConflictingLabel(prev.clone(), l.clone()))
                        }
                        _ => label = Some(l),
                    }
                }
            }
            Ok(label.cloned().unwrap_or_else(|| s.edges[orbit[0]].label.clone()))
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum NodeKind {
    /// A vertex orbit of the original tree.
    V0,
    /// A cylinder orbit.
    V1,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientNode {
    pub name: String,
    pub kind: NodeKind,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientEdge {
    pub ends: (usize, usize),
    /// Index of the local class this edge comes from.
    pub class: usize,
    pub in_a: Option<bool>,
}

/// `T_c/G` (or a collapse of it).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct QuotientGraph {
    pub nodes: Vec<QuotientNode>,
    pub edges: Vec<QuotientEdge>,
}

impl QuotientGraph {
    pub fn is_bipartite(&self) -> bool {
        self.edges
            .iter()
            .all(|e| self.nodes[e.ends.0].kind != self.nodes[e.ends.1].kind)
    }

    pub fn is_connected(&self) -> bool {
        if self.nodes.is_empty() {
            return true;
        }
        let mut uf = UnionFind::new(self.nodes.len());
        for e in &self.edges {
            uf.union(e.ends.0, e.ends.1);
        }
        (0..self.nodes.len()).all(|v| uf.find(v) == uf.find(0))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|e| usize::from(e.ends.0 == v) + usize::from(e.ends.1 == v))
            .sum()
    }

    /// Isomorphism preserving node kinds and labels, ignoring names and edge
    /// orientation. Backtracking; meant for small graphs.
    pub fn is_isomorphic(&self, other: &QuotientGraph) -> bool {
        if self.nodes.len() != other.nodes.len() || self.edges.len() != other.edges.len() {
            return false;
        }
        let key = |g: &QuotientGraph, v: usize| (g.nodes[v].kind, g.nodes[v].label.clone(), g.degree(v));
        let mut map = vec![usize::MAX; self.nodes.len()];
        let mut used = vec![false; other.nodes.len()];
        self.extend_iso(other, 0, &mut map, &mut used, &key)
    }

    fn extend_iso<K: Fn(&QuotientGraph, usize) -> (NodeKind, String, usize)>(
        &self,
        other: &QuotientGraph,
        v: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        key: &K,
    ) -> bool {
        if v == self.nodes.len() {
            return edge_multiset(self, |x| map[x]) == edge_multiset(other, |x| x);
        }
        for w in 0..other.nodes.len() {
            if used[w] || key(self, v) != key(other, w) {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if self.extend_iso(other, v + 1, map, used, key) {
                return true;
            }
            used[w] = false;
        }
        map[v] = usize::MAX;
        false
    }
}

fn edge_multiset(g: &QuotientGraph, f: impl Fn(usize) -> usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = g
        .edges
        .iter()
        .map(|e| {
            let (a, b) = (f(e.ends.0), f(e.ends.1));
            (a.min(b), a.max(b))
        })
        .collect();
    out.sort_unstable();
    out
}

/// Computes `T_c/G`: one V0 node per vertex orbit meeting at least two
/// cylinders, one V1 node per cylinder orbit, one edge per (V0 node, local
/// class). Other vertex orbits are absorbed into their only cylinder.
pub fn tree_of_cylinders_quotient(s: &SkeletonGraph, a: &CylinderAtlas) -> Result<QuotientGraph, CylinderError> {
    validate_atlas(s, a)?;
    let orbits = cylinder_orbits(s, a);
    let labels = cylinder_labels(s, a, &orbits)?;
    let mut cylinder_of = vec![0; s.edges.len()];
    for (c, orbit) in orbits.iter().enumerate() {
        for &e in orbit {
            cylinder_of[e] = c;
        }
    }

    let mut q = QuotientGraph::default();
    let mut v0_node = vec![None; s.vertices.len()];
    for (v, vertex) in s.vertices.iter().enumerate() {
        let classes: Vec<&LocalClass> = a.classes.iter().filter(|c| c.vertex == v && !c.ends.is_empty()).collect();
        if classes.len() >= 2 || classes.iter().any(|c| c.plural == Some(true)) {
            v0_node[v] = Some(q.nodes.len());
            q.nodes.push(QuotientNode {
                name: vertex.name.clone(),
                kind: NodeKind::V0,
                label: vertex.label.clone(),
            });
        }
    }
    let first = q.nodes.len();
    for (orbit, label) in orbits.iter().zip(labels) {
        let names: Vec<&str> = orbit.iter().map(|&e| s.edges[e].name.as_str()).collect();
        q.nodes.push(QuotientNode {
            name: format!("[{}]", names.join(" ")),
            kind: NodeKind::V1,
            label,
        });
    }
    for (i, class) in a.classes.iter().enumerate() {
        if let (Some(node), Some(end)) = (v0_node[class.vertex], class.ends.first()) {
            q.edges.push(QuotientEdge {
                ends: (node, first + cylinder_of[end.edge]),
                class: i,
                in_a: class.in_a,
            });
        }
    }
    Ok(q)
}

/// Contracts every edge flagged outside `A`. A node produced by merging
/// contains a cylinder and is kept as V1, so the result need not be
/// bipartite when a surviving edge joins two merged nodes.
pub fn collapse_non_a(q: &QuotientGraph) -> Result<QuotientGraph, CylinderError> {
    let mut uf = UnionFind::new(q.nodes.len());
    for e in &q.edges {
        match e.in_a {
            None => {
                return Err(CylinderError::MissingFlag(format!(
                    "in_a for the edge {} -- {}",
                    q.nodes[e.ends.0].name, q.nodes[e.ends.1].name
                )))
            }
            Some(false) => uf.union(e.ends.0, e.ends.1),
            Some(true) => {}
        }
    }
    let mut members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for v in 0..q.nodes.len() {
        members.entry(uf.find(v)).or_default().push(v);
    }
    let mut groups: Vec<Vec<usize>> = members.into_values().collect();
    groups.sort();
    let mut index = vec![0; q.nodes.len()];
    let mut nodes = Vec::new();
    for (i, group) in groups.iter().enumerate() {
        for &v in group {
            index[v] = i;
        }
        let node = if let [v] = group[..] {
            q.nodes[v].clone()
        } else {
            // merged: named and labeled after its cylinders
            let cyl: Vec<&QuotientNode> = group
                .iter()
                .map(|&v| &q.nodes[v])
                .filter(|n| n.kind == NodeKind::V1)
                .collect();
            QuotientNode {
                name: cyl.iter().map(|n| n.name.as_str()).collect::<Vec<_>>().join("+"),
                kind: NodeKind::V1,
                label: cyl.iter().map(|n| n.label.as_str()).collect::<Vec<_>>().join("+"),
            }
        };
        nodes.push(node);
    }
    let edges = q
        .edges
        .iter()
        .filter(|e| e.in_a == Some(true))
        .map(|e| QuotientEdge {
            ends: (index[e.ends.0], index[e.ends.1]),
            class: e.class,
            in_a: e.in_a,
        })
        .collect();
    Ok(QuotientGraph { nodes, edges })
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // smaller root wins so results do not depend on call order
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Worked inputs: the 4-cycle of surface vertices around a `Z²` cylinder,
/// and the star of three punctured tori glued along one curve.
pub mod examples {
    use super::*;

    fn vertex(name: &str, label: &str) -> SkeletonVertex {
        SkeletonVertex { name: name.into(), label: label.into() }
    }

    fn edge(name: &str, label: &str, origin: usize, terminus: usize) -> SkeletonEdge {
        SkeletonEdge { name: name.into(), label: label.into(), origin, terminus }
    }

    fn class(vertex: usize, ends: &[(usize, Side)], plural: bool) -> LocalClass {
        LocalClass {
            vertex,
            ends: ends.iter().map(|&(edge, side)| EndRef { edge, side }).collect(),
            plural: Some(plural),
            in_a: Some(true),
        }
    }

    pub fn four_cycle() -> (SkeletonGraph, CylinderAtlas) {
        let s = SkeletonGraph::new(
            (1..=4).map(|i| vertex(&format!("v{i}"), "surface")).collect(),
            (0..4).map(|i| edge(&format!("e{}", i + 1), "Z", i, (i + 1) % 4)).collect(),
        )
        .expect("valid skeleton");
        let classes = (0..4)
            .map(|v| class(v, &[((v + 3) % 4, Side::Terminus), (v, Side::Origin)], true))
            .map(|mut c| {
                c.ends.sort();
                c
            })
            .collect();
        (s, CylinderAtlas { classes, stabilizers: BTreeMap::from([(0, "Z^2".to_string())]) })
    }

    pub fn three_punctured_tori() -> (SkeletonGraph, CylinderAtlas) {
        let s = SkeletonGraph::new(
            vec![
                vertex("c", "Z"),
                vertex("s1", "punctured-torus"),
                vertex("s2", "punctured-torus"),
                vertex("s3", "punctured-torus"),
            ],
            (1..=3).map(|i| edge(&format!("e{i}"), "Z", 0, i)).collect(),
        )
        .expect("valid skeleton");
        let mut classes = vec![class(0, &[(0, Side::Origin), (1, Side::Origin), (2, Side::Origin)], false)];
        classes.extend((1..=3).map(|i| class(i, &[(i - 1, Side::Terminus)], true)));
        (s, CylinderAtlas { classes, stabilizers: BTreeMap::from([(0, "Z".to_string())]) })
    }

    /// `K_{1,n}`: one V1 center with the given label and `n` V0 leaves.
    pub fn star(center: &str, leaves: &[&str]) -> QuotientGraph {
        let mut nodes: Vec<QuotientNode> = leaves
            .iter()
            .map(|l| QuotientNode { name: String::new(), kind: NodeKind::V0, label: l.to_string() })
            .collect();
        nodes.push(QuotientNode { name: String::new(), kind: NodeKind::V1, label: center.into() });
        let edges = (0..leaves.len())
            .map(|i| QuotientEdge { ends: (i, leaves.len()), class: i, in_a: Some(true) })
            .collect();
        QuotientGraph { nodes, edges }
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn single_edge() -> (SkeletonGraph, CylinderAtlas) {
        let s = SkeletonGraph::new(
            vec![
                SkeletonVertex { name: "u".into(), label: "A".into() },
                SkeletonVertex { name: "v".into(), label: "B".into() },
            ],
            vec![SkeletonEdge { name: "e".into(), label: "Z".into(), origin: 0, terminus: 1 }],
        )
        .unwrap();
        let classes = vec![
            LocalClass { vertex: 0, ends: vec![EndRef { edge: 0, side: Side::Origin }], plural: Some(false), in_a: None },
            LocalClass { vertex: 1, ends: vec![EndRef { edge: 0, side: Side::Terminus }], plural: Some(false), in_a: None },
        ];
        (s, CylinderAtlas { classes, stabilizers: BTreeMap::new() })
    }

    #[test]
    fn validation_examples() {
        let (s, a) = four_cycle();
        assert!(!validate_atlas(&s, &a).unwrap().is_empty());

        let mut missing = a.clone();
        missing.classes[0].ends.pop();
        assert!(matches!(validate_atlas(&s, &missing), Err(CylinderError::UnclassedEnd(_))));

        let mut unflagged = a;
        unflagged.classes[2].plural = None;
        assert!(matches!(validate_atlas(&s, &unflagged), Err(CylinderError::MissingFlag(_))));

        let empty = validate_atlas(&SkeletonGraph::default(), &CylinderAtlas::default()).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn duplicate_and_foreign_ends_rejected() {
        let (s, mut a) = single_edge();
        a.classes[1].ends.push(EndRef { edge: 0, side: Side::Origin });
        assert!(matches!(validate_atlas(&s, &a), Err(CylinderError::ForeignEnd { .. })));
        let (s, mut a) = single_edge();
        a.classes.push(a.classes[0].clone());
        assert!(matches!(validate_atlas(&s, &a), Err(CylinderError::DuplicateEnd(_))));
    }

    #[test]
    fn orbit_examples() {
        let (s, a) = four_cycle();
        assert_eq!(cylinder_orbits(&s, &a), vec![vec![0, 1, 2, 3]]);
        let (s, a) = three_punctured_tori();
        assert_eq!(cylinder_orbits(&s, &a), vec![vec![0, 1, 2]]);

        let mut singletons = a;
        let c = singletons.classes.remove(0);
        for end in c.ends {
            singletons.classes.push(LocalClass { vertex: 0, ends: vec![end], plural: Some(false), in_a: Some(true) });
        }
        assert_eq!(cylinder_orbits(&s, &singletons), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn four_cycle_gives_star_around_z2() {
        let (s, a) = four_cycle();
        let q = tree_of_cylinders_quotient(&s, &a).unwrap();
        assert!(q.is_isomorphic(&star("Z^2", &["surface"; 4])));
        assert!(q.is_bipartite() && q.is_connected());
    }

    #[test]
    fn three_punctured_tori_equal_their_tree_of_cylinders() {
        let (s, a) = three_punctured_tori();
        let q = tree_of_cylinders_quotient(&s, &a).unwrap();
        assert!(q.is_isomorphic(&star("Z", &["punctured-torus"; 3])));
        assert!(!q.is_isomorphic(&star("Z^2", &["punctured-torus"; 3])));
    }

    #[test]
    fn single_edge_is_a_point() {
        let (s, a) = single_edge();
        let q = tree_of_cylinders_quotient(&s, &a).unwrap();
        assert_eq!(q.nodes.len(), 1);
        assert_eq!(q.nodes[0].kind, NodeKind::V1);
        assert!(q.edges.is_empty());
    }

    #[test]
    fn conflicting_labels_rejected() {
        let (s, mut a) = four_cycle();
        a.stabilizers.insert(2, "Z".into());
        assert!(matches!(
            tree_of_cylinders_quotient(&s, &a),
            Err(CylinderError::ConflictingLabel(_, _))
        ));
    }

    #[test]
    fn collapse_examples() {
        let (s, a) = four_cycle();
        let q = tree_of_cylinders_quotient(&s, &a).unwrap();
        assert_eq!(collapse_non_a(&q).unwrap(), q);

        let mut one = q.clone();
        one.edges[0].in_a = Some(false);
        let c = collapse_non_a(&one).unwrap();
        assert_eq!((c.nodes.len(), c.edges.len()), (4, 3));
        assert!(c.is_isomorphic(&star("Z^2", &["surface"; 3])));

        let mut all = q.clone();
        all.edges.iter_mut().for_each(|e| e.in_a = Some(false));
        let c = collapse_non_a(&all).unwrap();
        assert_eq!((c.nodes.len(), c.edges.len()), (1, 0));

        let mut unflagged = q;
        unflagged.edges[1].in_a = None;
        assert!(matches!(collapse_non_a(&unflagged), Err(CylinderError::MissingFlag(_))));
    }
}
