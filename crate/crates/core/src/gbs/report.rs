use serde::Serialize;

use super::graph::LabeledGraph;
use super::reduce::{classify_elementary, reduce, Elementary};
use super::GbsError;

pub const RIGID_CONCLUSION: &str = "rigid; unique reduced JSJ tree; T_co = T_J";

/// Divisibility data at one vertex of the reduced graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexDivisibility {
    pub vertex: String,
    /// Absolute labels of incident edge ends (a loop contributes two).
    pub labels: Vec<u64>,
    /// A pair `(p, q)` of labels at distinct ends with `p | q`.
    pub dividing_pair: Option<(u64, u64)>,
}

/// What is known about the compatibility JSJ deformation space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Compatibility {
    /// `D_co` is trivial.
    Trivial,
    /// `D_co` is the JSJ deformation space.
    EqualsJsj,
    /// Unique reduced JSJ tree and `T_co = T_J`.
    Rigid,
    Undetermined,
}

impl std::fmt::Display for Compatibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Compatibility::Trivial => "D_co trivial",
            Compatibility::EqualsJsj => "D_co = JSJ space",
            Compatibility::Rigid => "rigid; T_co = T_J",
            Compatibility::Undetermined => "undetermined",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct JsjReport {
    pub elementary: Elementary,
    pub reduced_edges: Vec<String>,
    pub jsj_trivial: bool,
    pub divisibility: Vec<VertexDivisibility>,
    /// No label divides another at the same vertex of the reduced graph.
    pub criterion_holds: bool,
    pub compatibility: Compatibility,
    pub conclusions: Vec<String>,
    pub notes: Vec<String>,
}

fn is_prime_power(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).expect("n >= 2 has a divisor");
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

fn divisibility(graph: &LabeledGraph, v: usize) -> VertexDivisibility {
    let labels: Vec<u64> = graph.incident_labels(v).iter().map(|l| l.unsigned_abs()).collect();
    let mut dividing_pair = None;
    'outer: for (i, &p) in labels.iter().enumerate() {
        for (j, &q) in labels.iter().enumerate() {
            if i != j && q % p == 0 {
                dividing_pair = Some((p, q));
                break 'outer;
            }
        }
    }
    VertexDivisibility {
        vertex: graph.vertex_name(v).to_string(),
        labels,
        dividing_pair,
    }
}

/// JSJ and compatibility-JSJ diagnostics for a GBS graph.
pub fn jsj_report(graph: &LabeledGraph) -> Result<JsjReport, GbsError> {
    let elementary = classify_elementary(graph)?;
    let reduced = reduce(graph)?.graph;
    let reduced_edges = reduced
        .edges()
        .iter()
        .map(|e| {
            format!(
                "{}: {}({}) -- {}({})",
                e.name,
                reduced.vertex_name(e.origin),
                e.origin_label,
                reduced.vertex_name(e.terminus),
                e.terminus_label
            )
        })
        .collect();
    let divisibility: Vec<VertexDivisibility> =
        (0..reduced.vertex_count()).map(|v| divisibility(&reduced, v)).collect();
    let criterion_holds = divisibility.iter().all(|d| d.dividing_pair.is_none());

    let mut conclusions = Vec::new();
    let mut notes = Vec::new();
    let (jsj_trivial, compatibility) = match elementary {
        Elementary::Z => {
            conclusions.push("G = Z; JSJ deformation space trivial".to_string());
            (true, Compatibility::Undetermined)
        }
        Elementary::Z2 | Elementary::Klein => {
            conclusions.push(format!("G = {elementary}; trivial JSJ deformation space; G is flexible"));
            (true, Compatibility::Undetermined)
        }
        Elementary::Bs1n(n) => {
            conclusions.push(format!(
                "G = BS(1,{n}); JSJ deformation space non-trivial, it contains the given tree"
            ));
            if is_prime_power(n.unsigned_abs()) {
                conclusions.push(format!("|{n}| is a prime power: D_co = JSJ space (not irreducible)"));
                (false, Compatibility::EqualsJsj)
            } else {
                conclusions.push(format!("|{n}| is not a prime power: D_co trivial"));
                (false, Compatibility::Trivial)
            }
        }
        Elementary::Generic | Elementary::Unknown => {
            conclusions.push(
                "the deformation space of the given tree is the JSJ deformation space".to_string(),
            );
            if reduced.edges().len() >= 2 {
                notes.push(
                    "non-elementarity certified by a reduced lift of valence >= 3".to_string(),
                );
            }
            if criterion_holds {
                conclusions.push(RIGID_CONCLUSION.to_string());
                (false, Compatibility::Rigid)
            } else {
                conclusions.push(
                    "some label divides another at the same vertex: D_co not determined by the divisibility criterion"
                        .to_string(),
                );
                (false, Compatibility::Undetermined)
            }
        }
    };

    if let [e] = reduced.edges() {
        let (p, q) = (e.origin_label.unsigned_abs(), e.terminus_label.unsigned_abs());
        if e.is_loop() && p >= 2 && q >= 2 && (p % q == 0 || q % p == 0) {
            notes.push(format!(
                "BS({q},{p}): one label divides the other; Out(BS(2,4)) is not finitely generated"
            ));
        }
    }

    Ok(JsjReport {
        elementary,
        reduced_edges,
        jsj_trivial,
        divisibility,
        criterion_holds,
        compatibility,
        conclusions,
        notes,
    })
}
