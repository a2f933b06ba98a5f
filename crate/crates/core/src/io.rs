//! Line-oriented text format, DOT export and JSON reports.
//!
//! A document is an optional `name = ...` line, `#` comment lines, and at
//! most one section:
//!
//! ```text
//! # pair of pants
//! name = pants
//! [orbifold]
//! orientable = true
//! genus = 0
//! circle = plain
//! circle = plain
//! circle = plain
//! ```
//!
//! `[gbs]` and `[master]` sections hold `vertices = u, v`,
//! `edge e: u(2) -- v(3)`, optional `base = u` and `tree = f`, and named
//! words `word w = t[e] a[u]^2`; a master also lists collapses as
//! `kept K = e, f`. An `[atlas]` section holds `vertex v = label`,
//! `edge e: u -- v = label`, `class v: e.o f.t plural=true in_a=true` and
//! `cylinder e = Z^2`.
//!
//! Serialization is canonical: comments first, then the name, then the
//! section in the order above.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::Rational64;
use serde::Serialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::cylinders::{
    validate_atlas, CylinderAtlas, CylinderError, EndRef, LocalClass, NodeKind, QuotientGraph, Side,
    SkeletonEdge, SkeletonGraph, SkeletonVertex,
};
use crate::gbs::{Edge, GbsError, GenWord, LabeledGraph};
use crate::lattice::CollapseTree;
use crate::orbifold::{BoundaryCircle, Orbifold2, OrbifoldError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Orbifold(#[from] OrbifoldError),
    #[error(transparent)]
    Gbs(#[from] GbsError),
    #[error(transparent)]
    Cylinder(#[from] CylinderError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GbsSpec {
    pub graph: LabeledGraph,
    pub words: Vec<(String, GenWord)>,
}

impl GbsSpec {
    pub fn word(&self, name: &str) -> Option<&GenWord> {
        self.words.iter().find(|(n, _)| n == name).map(|(_, w)| w)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MasterSpec {
    pub gbs: GbsSpec,
    pub kept: Vec<(String, CollapseTree)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AtlasSpec {
    pub skeleton: SkeletonGraph,
    pub atlas: CylinderAtlas,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Body {
    Orbifold(Orbifold2),
    Gbs(GbsSpec),
    Master(MasterSpec),
    Atlas(AtlasSpec),
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Document {
    pub name: Option<String>,
    pub comments: Vec<String>,
    pub body: Option<Body>,
}

// ---------------------------------------------------------------- parsing

struct Line<'a> {
    number: usize,
    raw: &'a str,
}

impl<'a> Line<'a> {
    fn error(&self, at: &str, message: impl Into<String>) -> IoError {
        // `at` is a subslice of `raw` when possible
        let offset = (at.as_ptr() as usize)
            .checked_sub(self.raw.as_ptr() as usize)
            .filter(|&o| o <= self.raw.len())
            .unwrap_or(0);
        IoError::Syntax {
            line: self.number,
            column: offset + 1,
            message: message.into(),
        }
    }

    fn text(&self) -> &'a str {
        self.raw.trim()
    }

    /// `key = value` with the value trimmed.
    fn assignment(&self) -> Result<(&'a str, &'a str), IoError> {
        let t = self.text();
        let (k, v) = t.split_once('=').ok_or_else(|| self.error(t, "expected `key = value`"))?;
        Ok((k.trim(), v.trim()))
    }
}

fn check_name<'a>(line: &Line<'a>, name: &'a str) -> Result<&'a str, IoError> {
    if !name.is_empty() && name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
        Ok(name)
    } else {
        Err(line.error(name, format!("invalid name `{name}`")))
    }
}

fn name_list<'a>(line: &Line<'a>, value: &'a str) -> Result<Vec<&'a str>, IoError> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| check_name(line, s))
        .collect()
}

fn parse_bool(line: &Line, value: &str) -> Result<bool, IoError> {
    match value {
        "true" => Ok(true),
        "false" => Ok(false),
        _ => Err(line.error(value, format!("expected `true` or `false`, found `{value}`"))),
    }
}

fn parse_number<T: std::str::FromStr>(line: &Line, value: &str) -> Result<T, IoError> {
    value
        .trim()
        .parse()
        .map_err(|_| line.error(value, format!("expected a number, found `{value}`")))
}

pub fn parse(text: &str) -> Result<Document, IoError> {
    let mut doc = Document::default();
    let mut section: Option<(&str, Line)> = None;
    let mut body_lines: Vec<Line> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = Line { number: i + 1, raw };
        let t = line.text();
        if t.is_empty() {
            continue;
        }
        if let Some(c) = t.strip_prefix('#') {
            doc.comments.push(c.trim().to_string());
            continue;
        }
        if t.starts_with('[') {
            let name = t
                .strip_prefix('[')
                .and_then(|s| s.strip_suffix(']'))
                .ok_or_else(|| line.error(t, "malformed section header"))?
                .trim();
            if section.is_some() {
                return Err(line.error(t, "a document holds at most one section"));
            }
            if !matches!(name, "orbifold" | "gbs" | "master" | "atlas") {
                return Err(line.error(t, format!("unknown section `{name}`")));
            }
            section = Some((name, line));
            continue;
        }
        if section.is_none() {
            let (k, v) = line.assignment()?;
            if k != "name" {
                return Err(line.error(t, format!("unexpected `{k}` outside a section")));
            }
            if doc.name.is_some() {
                return Err(line.error(t, "duplicate name"));
            }
            doc.name = Some(v.to_string());
            continue;
        }
        body_lines.push(line);
    }
    doc.body = match section {
        None => None,
        Some(("orbifold", _)) => Some(Body::Orbifold(parse_orbifold(&body_lines)?)),
        Some(("gbs", _)) => Some(Body::Gbs(parse_gbs(&body_lines, false)?.0)),
        Some(("master", _)) => {
            let (gbs, kept) = parse_gbs(&body_lines, true)?;
            Some(Body::Master(MasterSpec { gbs, kept }))
        }
        Some((_, _)) => Some(Body::Atlas(parse_atlas(&body_lines)?)),
    };
    Ok(doc)
}

fn parse_orbifold(lines: &[Line]) -> Result<Orbifold2, IoError> {
    let mut o = Orbifold2::closed(true, 0);
    for line in lines {
        let (k, v) = line.assignment()?;
        match k {
            "orientable" => o.orientable = parse_bool(line, v)?,
            "genus" => o.genus = parse_number(line, v)?,
            "cone" | "cones" => {
                for q in v.split(',').filter(|s| !s.trim().is_empty()) {
                    o.cone_points.push(parse_number(line, q)?);
                }
            }
            "circle" => o.circles.push(
                v.parse::<BoundaryCircle>()
                    .map_err(|e| line.error(v, e.to_string()))?,
            ),
            _ => return Err(line.error(line.text(), format!("unknown key `{k}`"))),
        }
    }
    Ok(o.validate()?)
}

// `u(2)` -> ("u", 2)
fn labeled_end<'a>(line: &Line<'a>, s: &'a str) -> Result<(&'a str, i64), IoError> {
    let s = s.trim();
    let open = s.find('(').ok_or_else(|| line.error(s, "expected `vertex(label)`"))?;
    let inner = s[open + 1..]
        .strip_suffix(')')
        .ok_or_else(|| line.error(s, "expected `)`"))?;
    Ok((check_name(line, s[..open].trim())?, parse_number(line, inner)?))
}

fn parse_gbs(lines: &[Line], master: bool) -> Result<(GbsSpec, Vec<(String, CollapseTree)>), IoError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<Edge> = Vec::new();
    let mut base: Option<(&Line, &str)> = None;
    let mut tree: Option<(&Line, Vec<&str>)> = None;
    let mut words: Vec<(&Line, &str, &str)> = Vec::new();
    let mut kept: Vec<(&Line, &str, Vec<&str>)> = Vec::new();

    let mut vertex = |name: &str| -> usize {
        match vertices.iter().position(|v| v == name) {
            Some(i) => i,
            None => {
                vertices.push(name.to_string());
                vertices.len() - 1
            }
        }
    };

    for line in lines {
        let t = line.text();
        let (keyword, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match keyword {
            "edge" => {
                let (name, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| line.error(rest, "expected `edge name: u(p) -- v(q)`"))?;
                let name = check_name(line, name.trim())?;
                let (a, b) = ends
                    .split_once("--")
                    .ok_or_else(|| line.error(ends, "expected `--`"))?;
                let (u, p) = labeled_end(line, a)?;
                let (v, q) = labeled_end(line, b)?;
                let (origin, terminus) = (vertex(u), vertex(v));
                edges.push(Edge {
                    name: name.to_string(),
                    origin,
                    terminus,
                    origin_label: p,
                    terminus_label: q,
                });
            }
            "word" => {
                let (k, v) = line.assignment()?;
                let name = k.strip_prefix("word").unwrap_or(k).trim();
                words.push((line, check_name(line, name)?, v));
            }
            "kept" if master => {
                let (k, v) = line.assignment()?;
                let name = k.strip_prefix("kept").unwrap_or(k).trim();
                kept.push((line, check_name(line, name)?, name_list(line, v)?));
            }
            _ => {
                let (k, v) = line.assignment()?;
                match k {
                    "vertices" => {
                        for n in name_list(line, v)? {
                            vertex(n);
                        }
                    }
                    "base" => base = Some((line, check_name(line, v)?)),
                    "tree" => tree = Some((line, name_list(line, v)?)),
                    _ => return Err(line.error(t, format!("unknown key `{k}`"))),
                }
            }
        }
    }

    let base = match base {
        Some((line, b)) => Some(
            vertices
                .iter()
                .position(|v| v == b)
                .ok_or_else(|| line.error(b, format!("unknown vertex `{b}`")))?,
        ),
        None => None,
    };
    let tree = match tree {
        Some((line, names)) => Some(
            names
                .iter()
                .map(|n| {
                    edges
                        .iter()
                        .position(|e| e.name == *n)
                        .ok_or_else(|| line.error(n, format!("unknown edge `{n}`")))
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
        None => None,
    };
    let graph = LabeledGraph::new(vertices, edges, base, tree)?;
    let words = words
        .into_iter()
        .map(|(_, name, text)| Ok((name.to_string(), graph.parse_word(text)?)))
        .collect::<Result<Vec<_>, IoError>>()?;
    let kept = kept
        .into_iter()
        .map(|(line, name, edges)| {
            let ks = edges
                .iter()
                .map(|e| {
                    graph
                        .edge_index(e)
                        .ok_or_else(|| line.error(e, format!("unknown edge `{e}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok((name.to_string(), CollapseTree::new(ks)))
        })
        .collect::<Result<Vec<_>, IoError>>()?;
    Ok((GbsSpec { graph, words }, kept))
}

fn parse_atlas(lines: &[Line]) -> Result<AtlasSpec, IoError> {
    let mut vertices: Vec<SkeletonVertex> = Vec::new();
    let mut raw_edges: Vec<(&Line, &str, &str, &str, &str)> = Vec::new();
    let mut raw_classes: Vec<(&Line, &str, &str)> = Vec::new();
    let mut raw_cylinders: Vec<(&Line, &str, &str)> = Vec::new();
    for line in lines {
        let t = line.text();
        let (keyword, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        match keyword {
            "vertex" => {
                let (k, v) = line.assignment()?;
                let name = check_name(line, k.strip_prefix("vertex").unwrap_or(k).trim())?;
                vertices.push(SkeletonVertex { name: name.into(), label: v.into() });
            }
            "edge" => {
                let (head, label) = rest
                    .rsplit_once('=')
                    .ok_or_else(|| line.error(rest, "expected `edge name: u -- v = label`"))?;
                let (name, ends) = head
                    .split_once(':')
                    .ok_or_else(|| line.error(head, "expected `:`"))?;
                let (u, v) = ends
                    .split_once("--")
                    .ok_or_else(|| line.error(ends, "expected `--`"))?;
                raw_edges.push((
                    line,
                    check_name(line, name.trim())?,
                    check_name(line, u.trim())?,
                    check_name(line, v.trim())?,
                    label.trim(),
                ));
            }
            "class" => {
                let (v, spec) = rest
                    .split_once(':')
                    .ok_or_else(|| line.error(rest, "expected `class v: e.o f.t ...`"))?;
                raw_classes.push((line, check_name(line, v.trim())?, spec));
            }
            "cylinder" => {
                let (k, v) = line.assignment()?;
                let e = check_name(line, k.strip_prefix("cylinder").unwrap_or(k).trim())?;
                raw_cylinders.push((line, e, v));
            }
            _ => return Err(line.error(t, format!("unknown key `{keyword}`"))),
        }
    }
    let find_vertex = |line: &Line, n: &str| {
        vertices
            .iter()
            .position(|v| v.name == n)
            .ok_or_else(|| line.error(n, format!("unknown vertex `{n}`")))
    };
    let mut edges = Vec::new();
    for &(line, name, u, v, label) in &raw_edges {
        edges.push(SkeletonEdge {
            name: name.into(),
            label: label.into(),
            origin: find_vertex(line, u)?,
            terminus: find_vertex(line, v)?,
        });
    }
    let find_edge = |line: &Line, n: &str| {
        edges
            .iter()
            .position(|e| e.name == n)
            .ok_or_else(|| line.error(n, format!("unknown edge `{n}`")))
    };
    let mut atlas = CylinderAtlas::default();
    for &(line, v, spec) in &raw_classes {
        let mut class = LocalClass {
            vertex: find_vertex(line, v)?,
            ends: Vec::new(),
            plural: None,
            in_a: None,
        };
        for token in spec.split_whitespace() {
            if let Some((k, val)) = token.split_once('=') {
                match k {
                    "plural" => class.plural = Some(parse_bool(line, val)?),
                    "in_a" => class.in_a = Some(parse_bool(line, val)?),
                    _ => return Err(line.error(token, format!("unknown flag `{k}`"))),
                }
            } else {
                let (e, side) = token
                    .rsplit_once('.')
                    .ok_or_else(|| line.error(token, "expected an edge end `e.o` or `e.t`"))?;
                let side = match side {
                    "o" => Side::Origin,
                    "t" => Side::Terminus,
                    _ => return Err(line.error(token, "edge end side must be `o` or `t`")),
                };
                class.ends.push(EndRef { edge: find_edge(line, e)?, side });
            }
        }
        atlas.classes.push(class);
    }
    for &(line, e, label) in &raw_cylinders {
        let idx = find_edge(line, e)?;
        if atlas.stabilizers.insert(idx, label.to_string()).is_some() {
            return Err(line.error(e, format!("duplicate cylinder label for `{e}`")));
        }
    }
    let skeleton = SkeletonGraph::new(vertices, edges)?;
    validate_atlas(&skeleton, &atlas)?;
    Ok(AtlasSpec { skeleton, atlas })
}

// ---------------------------------------------------------- serialization

pub fn serialize(doc: &Document) -> String {
    let mut out = String::new();
    for c in &doc.comments {
        if c.is_empty() {
            out.push_str("#\n");
        } else {
            let _ = writeln!(out, "# {c}");
        }
    }
    if let Some(name) = &doc.name {
        let _ = writeln!(out, "name = {name}");
    }
    match &doc.body {
        None => {}
        Some(Body::Orbifold(o)) => write_orbifold(&mut out, o),
        Some(Body::Gbs(g)) => {
            out.push_str("[gbs]\n");
            write_gbs(&mut out, g);
        }
        Some(Body::Master(m)) => {
            out.push_str("[master]\n");
            write_gbs(&mut out, &m.gbs);
            for (name, k) in &m.kept {
                let edges: Vec<&str> = k.kept.iter().map(|&e| m.gbs.graph.edge(e).name.as_str()).collect();
                let line = format!("kept {name} = {}", edges.join(", "));
                let _ = writeln!(out, "{}", line.trim_end());
            }
        }
        Some(Body::Atlas(a)) => write_atlas(&mut out, a),
    }
    out
}

fn write_orbifold(out: &mut String, o: &Orbifold2) {
    out.push_str("[orbifold]\n");
    let _ = writeln!(out, "orientable = {}", o.orientable);
    let _ = writeln!(out, "genus = {}", o.genus);
    if !o.cone_points.is_empty() {
        let cones: Vec<String> = o.cone_points.iter().map(u32::to_string).collect();
        let _ = writeln!(out, "cone = {}", cones.join(","));
    }
    for c in &o.circles {
        let _ = writeln!(out, "circle = {c}");
    }
}

fn write_gbs(out: &mut String, spec: &GbsSpec) {
    let g = &spec.graph;
    let _ = writeln!(out, "vertices = {}", g.vertex_names().join(", "));
    for e in g.edges() {
        let _ = writeln!(
            out,
            "edge {}: {}({}) -- {}({})",
            e.name,
            g.vertex_name(e.origin),
            e.origin_label,
            g.vertex_name(e.terminus),
            e.terminus_label
        );
    }
    if g.base() != 0 {
        let _ = writeln!(out, "base = {}", g.vertex_name(g.base()));
    }
    let default_tree = LabeledGraph::new(g.vertex_names().to_vec(), g.edges().to_vec(), Some(g.base()), None)
        .map(|d| d.spanning_tree().to_vec())
        .ok();
    if default_tree.as_deref() != Some(g.spanning_tree()) {
        let names: Vec<&str> = g.spanning_tree().iter().map(|&e| g.edge(e).name.as_str()).collect();
        let _ = writeln!(out, "tree = {}", names.join(", "));
    }
    for (name, w) in &spec.words {
        let _ = writeln!(out, "word {name} = {}", g.format_word(w));
    }
}

fn write_atlas(out: &mut String, a: &AtlasSpec) {
    let s = &a.skeleton;
    out.push_str("[atlas]\n");
    for v in s.vertices() {
        let _ = writeln!(out, "vertex {} = {}", v.name, v.label);
    }
    for e in s.edges() {
        let _ = writeln!(
            out,
            "edge {}: {} -- {} = {}",
            e.name,
            s.vertices()[e.origin].name,
            s.vertices()[e.terminus].name,
            e.label
        );
    }
    for c in &a.atlas.classes {
        let _ = write!(out, "class {}:", s.vertices()[c.vertex].name);
        for &end in &c.ends {
            let _ = write!(out, " {}", s.format_end(end));
        }
        if let Some(p) = c.plural {
            let _ = write!(out, " plural={p}");
        }
        if let Some(f) = c.in_a {
            let _ = write!(out, " in_a={f}");
        }
        out.push('\n');
    }
    for (&e, label) in &a.atlas.stabilizers {
        let _ = writeln!(out, "cylinder {} = {label}", s.edges()[e].name);
    }
}

// -------------------------------------------------------------------- DOT

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn dot_gbs(g: &LabeledGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in g.vertex_names() {
        let _ = writeln!(out, "  {} [shape=circle];", quote(v));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(g.vertex_name(e.origin)),
            quote(g.vertex_name(e.terminus)),
            quote(&format!("{},{}", e.origin_label, e.terminus_label))
        );
    }
    out.push_str("}\n");
    out
}

pub fn dot_skeleton(s: &SkeletonGraph) -> String {
    let mut out = String::from("digraph G {\n");
    for v in s.vertices() {
        let _ = writeln!(
            out,
            "  {} [shape=ellipse, label={}];",
            quote(&v.name),
            quote(&format!("{}: {}", v.name, v.label))
        );
    }
    for e in s.edges() {
        let _ = writeln!(
            out,
            "  {} -> {} [label={}];",
            quote(&s.vertices()[e.origin].name),
            quote(&s.vertices()[e.terminus].name),
            quote(&format!("{}: {}", e.name, e.label))
        );
    }
    out.push_str("}\n");
    out
}

/// V0 nodes are ellipses, V1 (cylinder) nodes are boxes.
pub fn dot_quotient(q: &QuotientGraph) -> String {
    let mut out = String::from("digraph Tc {\n");
    for (i, n) in q.nodes.iter().enumerate() {
        let shape = match n.kind {
            NodeKind::V0 => "ellipse",
            NodeKind::V1 => "box",
        };
        let _ = writeln!(
            out,
            "  n{i} [shape={shape}, label={}];",
            quote(&format!("{}: {}", n.name, n.label))
        );
    }
    for e in &q.edges {
        let _ = writeln!(out, "  n{} -> n{} [dir=none];", e.ends.0, e.ends.1);
    }
    out.push_str("}\n");
    out
}

// ----------------------------------------------------------------- reports

/// `p/q` in lowest terms, or `p` when integral.
pub fn rational_string(r: Rational64) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    /// The operation that produced the verdict.
    pub op: String,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Provenance {
    pub input_sha256: Option<String>,
    pub tool_version: String,
    pub seed: Option<u64>,
}

/// Machine-readable result of one command. Numeric values sit at the top
/// level of the JSON object next to `verdicts`, `hypotheses` and
/// `provenance`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(flatten)]
    pub values: BTreeMap<String, serde_json::Value>,
    pub verdicts: Vec<Verdict>,
    pub hypotheses: Vec<String>,
    pub provenance: Provenance,
}

impl Report {
    pub fn new(command: &str, input: Option<&[u8]>, seed: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            values: BTreeMap::new(),
            verdicts: Vec::new(),
            hypotheses: Vec::new(),
            provenance: Provenance {
                input_sha256: input.map(sha256_hex),
                tool_version: env!("CARGO_PKG_VERSION").to_string(),
                seed,
            },
        }
    }

    pub fn value(&mut self, key: &str, v: impl Into<serde_json::Value>) -> &mut Self {
        self.values.insert(key.to_string(), v.into());
        self
    }

    pub fn verdict(&mut self, op: &str, verdict: impl Into<String>) -> &mut Self {
        self.verdicts.push(Verdict { op: op.to_string(), verdict: verdict.into() });
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.values {
            match v {
                serde_json::Value::String(s) if s.contains('\n') => {
                    let _ = writeln!(out, "{k}:\n{s}");
                }
                serde_json::Value::String(s) => {
                    let _ = writeln!(out, "{k}: {s}");
                }
                serde_json::Value::Array(items) if items.iter().any(|i| i.is_object() || i.is_array()) => {
                    let _ = writeln!(out, "{k}:");
                    for item in items {
                        let _ = writeln!(out, "  - {item}");
                    }
                }
                _ => {
                    let _ = writeln!(out, "{k}: {v}");
                }
            }
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "[{}] {}", v.op, v.verdict);
        }
        if !self.hypotheses.is_empty() {
            out.push_str("hypotheses:\n");
            for h in &self.hypotheses {
                let _ = writeln!(out, "  - {h}");
            }
        }
        out
    }
}
