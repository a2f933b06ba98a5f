//! Generalized Baumslag-Solitar graphs of groups.
//!
//! Loop words are Britton-reduced against the edge relations
//! `x_e a_{t(e)}^{μ(e)} x_e⁻¹ = a_{o(e)}^{λ(e)}`; the translation length on
//! the Bass-Serre tree is the number of crossings of the cyclically reduced
//! word. [`oracle`] recomputes it from an explicit model of the tree.

mod graph;
mod normal_form;
pub mod oracle;
mod reduce;
mod report;
pub mod sample;
mod word;

use num_rational::Rational64;
use serde::Serialize;
use thiserror::Error;

pub use graph::{Crossing, Edge, LabeledGraph};
pub use normal_form::{britton_reduce, is_britton_reduced, is_cyclically_reduced, NormalForm};
pub use oracle::{ball_displacement, OracleResult};
pub use reduce::{classify_elementary, is_reduced, reduce, Collapse, Elementary, Reduction};
pub use report::{jsj_report, Compatibility, JsjReport, VertexDivisibility};
pub use word::{GenWord, Generator, GroupWord, Item, Letter};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GbsError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge {0} has a zero label")]
    ZeroLabel(String),
    #[error("duplicate name {0}")]
    Duplicate(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("spanning tree does not span the graph")]
    BadSpanningTree,
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("word syntax: {0}")]
    WordSyntax(String),
    #[error("element is not hyperbolic")]
    NotHyperbolic,
    #[error("integer overflow while rewriting")]
    Overflow,
    #[error("identity violation: {0}")]
    IdentityViolation(String),
}

pub fn translation_length(graph: &LabeledGraph, word: &GroupWord) -> Result<u64, GbsError> {
    Ok(britton_reduce(graph, word)?.translation_length())
}

pub fn is_elliptic(graph: &LabeledGraph, word: &GroupWord) -> Result<bool, GbsError> {
    Ok(translation_length(graph, word)? == 0)
}

/// How the axes of two hyperbolic elements sit relative to each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxisRelation {
    Meet,
    Disjoint { distance: u64 },
}

/// Decides whether the axes of `w1` and `w2` meet from the four lengths
/// `ℓ(w1), ℓ(w2), ℓ(w1 w2), ℓ(w1⁻¹ w2)`.
///
/// Disjoint axes force `ℓ(w1w2) = ℓ(w1⁻¹w2) = ℓ(w1) + ℓ(w2) + 2d`; meeting
/// axes force `max(ℓ(w1w2), ℓ(w1⁻¹w2)) = ℓ(w1) + ℓ(w2)`. Anything else is
/// reported as an [`GbsError::IdentityViolation`].
pub fn axis_gap(graph: &LabeledGraph, w1: &GroupWord, w2: &GroupWord) -> Result<AxisRelation, GbsError> {
    let l1 = translation_length(graph, w1)?;
    let l2 = translation_length(graph, w2)?;
    if l1 == 0 || l2 == 0 {
        return Err(GbsError::NotHyperbolic);
    }
    let prod = translation_length(graph, &w1.concat(graph, w2)?)?;
    let twisted = translation_length(graph, &w1.inverse(graph).concat(graph, w2)?)?;
    let sum = l1 + l2;
    if prod == twisted && prod > sum && (prod - sum) % 2 == 0 {
        Ok(AxisRelation::Disjoint {
            distance: (prod - sum) / 2,
        })
    } else if prod.max(twisted) == sum {
        Ok(AxisRelation::Meet)
    } else {
        Err(GbsError::IdentityViolation(format!(
            "axis lengths: l(g)={l1}, l(h)={l2}, l(gh)={prod}, l(g^-1 h)={twisted}"
        )))
    }
}

/// Looks for hyperbolic `w1`, `w2` with hyperbolic commutator among
/// generator words with `|w1| + |w2| ≤ max_len`. `None` only means that
/// nothing was found within the budget.
pub fn irreducibility_witness(graph: &LabeledGraph, max_len: usize) -> Result<Option<(GenWord, GenWord)>, GbsError> {
    if max_len < 2 {
        return Ok(None);
    }
    // hyperbolic[k]: hyperbolic words of length k, built one layer at a time
    let mut hyperbolic: Vec<Vec<(GenWord, GroupWord)>> = vec![Vec::new()];
    let mut layers = sample::WordLayers::new(graph);
    for total in 2..=max_len {
        let layer: Vec<(GenWord, GroupWord)> = layers
            .next_layer()
            .into_iter()
            .map(|w| graph.expand(&w).map(|p| (w, p)))
            .collect::<Result<_, _>>()?;
        let mut keep = Vec::new();
        for (w, p) in layer {
            if !is_elliptic(graph, &p)? {
                keep.push((w, p));
            }
        }
        hyperbolic.push(keep);
        for len1 in 1..total {
            let len2 = total - len1;
            for (g1, p1) in &hyperbolic[len1] {
                for (g2, p2) in &hyperbolic[len2] {
                    if g1 == g2 {
                        continue;
                    }
                    if !is_elliptic(graph, &p1.commutator(graph, p2)?)? {
                        return Ok(Some((g1.clone(), g2.clone())));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The modular map to the nonzero rationals: each forward crossing of `e`
/// contributes `λ(e)/μ(e)`, each backward one the reciprocal.
pub fn modular_homomorphism(graph: &LabeledGraph, word: &GroupWord) -> Result<Rational64, GbsError> {
    if word.end(graph) != word.start() {
        return Err(GbsError::InvalidPath("word is not a closed path".into()));
    }
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for &c in word.crossings() {
        num = num
            .checked_mul(i128::from(graph.outgoing_label(c)))
            .ok_or(GbsError::Overflow)?;
        den = den
            .checked_mul(i128::from(graph.incoming_label(c)))
            .ok_or(GbsError::Overflow)?;
        let g = num_integer::gcd(num, den);
        num /= g;
        den /= g;
    }
    let num = i64::try_from(num).map_err(|_| GbsError::Overflow)?;
    let den = i64::try_from(den).map_err(|_| GbsError::Overflow)?;
    Ok(Rational64::new(num, den))
}
