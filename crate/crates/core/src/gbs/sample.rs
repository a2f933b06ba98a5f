//! Word enumeration and seeded random sampling over the generators
//! `a[v]` (every vertex) and `t[e]` (edges outside the spanning tree).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::graph::LabeledGraph;
use super::word::{GenWord, Generator, Letter};

pub fn alphabet(graph: &LabeledGraph) -> Vec<Generator> {
    let mut gens: Vec<Generator> = (0..graph.vertex_count()).map(Generator::Vertex).collect();
    gens.extend(
        (0..graph.edges().len())
            .filter(|&e| !graph.in_tree(e))
            .map(Generator::Edge),
    );
    gens
}

fn letters(graph: &LabeledGraph) -> Vec<Letter> {
    alphabet(graph)
        .into_iter()
        .flat_map(|g| {
            [1, -1].map(|exponent| Letter {
                generator: g,
                exponent,
            })
        })
        .collect()
}

fn cancels(a: &Letter, b: &Letter) -> bool {
    a.generator == b.generator && a.exponent == -b.exponent
}

/// Freely reduced words grouped by length, produced one length at a time.
pub struct WordLayers {
    letters: Vec<Letter>,
    current: Vec<GenWord>,
}

impl WordLayers {
    pub fn new(graph: &LabeledGraph) -> Self {
        WordLayers {
            letters: letters(graph),
            current: vec![GenWord::default()],
        }
    }

    /// All reduced words one letter longer than the previous layer.
    pub fn next_layer(&mut self) -> Vec<GenWord> {
        let mut next = Vec::new();
        for w in &self.current {
            for l in &self.letters {
                if w.0.last().is_some_and(|last| cancels(last, l)) {
                    continue;
                }
                let mut v = w.clone();
                v.0.push(*l);
                next.push(v);
            }
        }
        self.current = next.clone();
        next
    }
}

/// All freely reduced words of length `1..=max_len`, shortest first, in a
/// fixed order.
pub fn words_up_to(graph: &LabeledGraph, max_len: usize) -> Vec<GenWord> {
    let mut layers = WordLayers::new(graph);
    (0..max_len).flat_map(|_| layers.next_layer()).collect()
}

/// A freely reduced word whose length is uniform in `1..=max_len`.
pub fn random_word<R: Rng + ?Sized>(graph: &LabeledGraph, rng: &mut R, max_len: usize) -> GenWord {
    let letters = letters(graph);
    let len = rng.gen_range(1..=max_len.max(1));
    let mut w = GenWord::default();
    while w.0.len() < len {
        let l = letters[rng.gen_range(0..letters.len())];
        if w.0.last().is_some_and(|last| cancels(last, &l)) {
            continue;
        }
        w.0.push(l);
    }
    w
}

/// The generator behind every seeded run; fixed so that seeds reproduce
/// across platforms.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `count` random words drawn from one seeded stream.
pub fn random_words(graph: &LabeledGraph, seed: u64, count: usize, max_len: usize) -> Vec<GenWord> {
    let mut rng = seeded(seed);
    (0..count).map(|_| random_word(graph, &mut rng, max_len)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_reduced_words() {
        let g = LabeledGraph::baumslag_solitar(2, 3).unwrap();
        // 4 letters: 4 + 4*3 + 4*9
        assert_eq!(words_up_to(&g, 3).len(), 52);
        assert!(words_up_to(&g, 0).is_empty());
    }

    #[test]
    fn sampling_is_seeded() {
        let g = LabeledGraph::baumslag_solitar(2, 3).unwrap();
        let a = random_words(&g, 7, 20, 8);
        assert_eq!(a, random_words(&g, 7, 20, 8));
        assert_ne!(a, random_words(&g, 8, 20, 8));
        assert!(a.iter().all(|w| (1..=8).contains(&w.len())));
    }
}
