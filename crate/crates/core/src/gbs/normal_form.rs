use std::collections::VecDeque;

use super::graph::{Crossing, LabeledGraph};
use super::word::GroupWord;
use super::GbsError;

/// Britton normal forms of a loop word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalForm {
    /// The word with every pinch removed, still based at the original vertex.
    pub reduced: GroupWord,
    /// A conjugate of `reduced` with no pinch across the wrap either.
    pub cyclic: GroupWord,
}

impl NormalForm {
    /// Edges crossed along one period of the axis; empty when elliptic.
    pub fn crossing_sequence(&self) -> Vec<usize> {
        self.cyclic.crossings().iter().map(|c| c.edge).collect()
    }

    pub fn translation_length(&self) -> u64 {
        self.cyclic.crossing_count() as u64
    }
}

fn pinchable(graph: &LabeledGraph, first: Crossing, power: i64, second: Crossing) -> bool {
    second == first.reversed() && power % graph.incoming_label(first) == 0
}

// a^p crossing a^k crossing⁻¹ with k a multiple of the incoming label
fn pinch_value(graph: &LabeledGraph, c: Crossing, power: i64) -> Result<i64, GbsError> {
    (power / graph.incoming_label(c))
        .checked_mul(graph.outgoing_label(c))
        .ok_or(GbsError::Overflow)
}

/// Removes every subword `c a^{kμ} c⁻¹` (and its mirror) from a path.
pub(crate) fn reduce_path(graph: &LabeledGraph, word: &GroupWord) -> Result<GroupWord, GbsError> {
    let mut powers: Vec<i64> = vec![word.powers()[0]];
    let mut crossings: Vec<Crossing> = Vec::with_capacity(word.crossing_count());
    for (i, &c) in word.crossings().iter().enumerate() {
        let next_power = word.powers()[i + 1];
        if let Some(&top) = crossings.last() {
            let p = *powers.last().expect("powers never empty");
            if pinchable(graph, top, p, c) {
                crossings.pop();
                powers.pop();
                let merged = pinch_value(graph, top, p)?;
                let last = powers.last_mut().expect("powers never empty");
                *last = last
                    .checked_add(merged)
                    .and_then(|x| x.checked_add(next_power))
                    .ok_or(GbsError::Overflow)?;
                continue;
            }
        }
        crossings.push(c);
        powers.push(next_power);
    }
    Ok(GroupWord::from_parts(word.start(), powers, crossings))
}

pub fn is_britton_reduced(graph: &LabeledGraph, word: &GroupWord) -> bool {
    let c = word.crossings();
    (1..c.len()).all(|i| !pinchable(graph, c[i - 1], word.powers()[i], c[i]))
}

pub fn is_cyclically_reduced(graph: &LabeledGraph, word: &GroupWord) -> bool {
    let c = word.crossings();
    let k = c.len();
    if !is_britton_reduced(graph, word) {
        return false;
    }
    if k < 2 {
        return true;
    }
    let wrap = word.powers()[k] + word.powers()[0];
    !pinchable(graph, c[k - 1], wrap, c[0])
}

/// Britton reduction followed by cyclic reduction.
pub fn britton_reduce(graph: &LabeledGraph, word: &GroupWord) -> Result<NormalForm, GbsError> {
    if word.end(graph) != word.start() {
        return Err(GbsError::InvalidPath("word is not a closed path".into()));
    }
    let reduced = reduce_path(graph, word)?;
    let k = reduced.crossing_count();
    if k == 0 {
        return Ok(NormalForm {
            cyclic: reduced.clone(),
            reduced,
        });
    }

    // cyclic word as (crossing, power after it); the last power absorbs p_0
    let p = reduced.powers();
    let mut ring: VecDeque<(Crossing, i64)> = reduced
        .crossings()
        .iter()
        .enumerate()
        .map(|(i, &c)| (c, p[i + 1]))
        .collect();
    let back = ring.back_mut().expect("k > 0");
    back.1 = back.1.checked_add(p[0]).ok_or(GbsError::Overflow)?;

    let mut elliptic_power = None;
    while ring.len() >= 2 {
        let (last, wrap) = *ring.back().expect("len >= 2");
        let (first, after_first) = *ring.front().expect("len >= 2");
        if !pinchable(graph, last, wrap, first) {
            break;
        }
        let merged = pinch_value(graph, last, wrap)?;
        ring.pop_back();
        ring.pop_front();
        match ring.back_mut() {
            Some(prev) => {
                prev.1 = prev
                    .1
                    .checked_add(merged)
                    .and_then(|x| x.checked_add(after_first))
                    .ok_or(GbsError::Overflow)?;
            }
            None => {
                elliptic_power = Some((graph.source(last), merged.checked_add(after_first).ok_or(GbsError::Overflow)?));
            }
        }
    }

    let cyclic = match elliptic_power {
        Some((v, n)) => GroupWord::from_parts(v, vec![n], Vec::new()),
        None => {
            // base the cyclic word where its first crossing departs
            let start = graph.source(ring[0].0);
            let (crossings, mut powers): (Vec<Crossing>, Vec<i64>) = ring.into_iter().unzip();
            let wrap = powers.pop().expect("nonempty");
            let mut all = vec![wrap];
            all.extend(powers);
            all.push(0);
            GroupWord::from_parts(start, all, crossings)
        }
    };
    Ok(NormalForm { reduced, cyclic })
}
