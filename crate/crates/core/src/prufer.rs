//! Prüfer codes: the bijection between labeled trees on `n` vertices and
//! sequences in `[0, n)^(n-2)`, plus uniform sampling and exhaustive
//! enumeration built on it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::tree::{GraphError, Tree, Vertex};

/// Decodes a sequence of length `n - 2` into the labeled tree on `n` vertices.
pub fn prufer_decode(seq: &[Vertex]) -> Result<Tree, GraphError> {
    let n = seq.len() + 2;
    let edges = decode_edges(seq)?;
    Tree::from_edge_list(n, &edges)
}

fn decode_edges(seq: &[Vertex]) -> Result<Vec<(Vertex, Vertex)>, GraphError> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        if x >= n {
            return Err(GraphError::VertexOutOfRange { vertex: x, n });
        }
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Ok(edges)
}

/// Encodes a tree on `n >= 2` vertices.
pub fn prufer_encode(t: &Tree) -> Result<Vec<Vertex>, GraphError> {
    let n = t.n();
    if n < 2 {
        return Err(GraphError::TooSmall { n, min: 2 });
    }
    let parent = t.parents_from(n - 1);
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut seq = Vec::with_capacity(n - 2);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let next = parent[leaf];
        seq.push(next);
        degree[next] -= 1;
        if degree[next] == 1 && next < ptr {
            leaf = next;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(seq)
}

/// A uniformly random labeled tree on `n` vertices, reproducible from `seed`.
pub fn random_tree(n: usize, seed: u64) -> Tree {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_tree_with(n, &mut rng)
}

pub fn random_tree_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Tree {
    assert!(n >= 1, "a tree needs at least one vertex");
    match n {
        1 => Tree::single_vertex(),
        _ => {
            let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
            prufer_decode(&seq).expect("random sequence is in range")
        }
    }
}

/// Every labeled tree on `n` vertices, in lexicographic order of Prüfer codes
/// (`n^(n-2)` trees).
pub struct LabeledTrees {
    n: usize,
    seq: Vec<Vertex>,
    done: bool,
}

impl LabeledTrees {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "a tree needs at least one vertex");
        LabeledTrees {
            n,
            seq: vec![0; n.saturating_sub(2)],
            done: false,
        }
    }

    /// Number of trees this iterator yields.
    pub fn count_total(n: usize) -> u64 {
        if n <= 2 {
            1
        } else {
            (n as u64).pow(n as u32 - 2)
        }
    }
}

impl Iterator for LabeledTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.done {
            return None;
        }
        let tree = match self.n {
            1 => Tree::single_vertex(),
            _ => prufer_decode(&self.seq).expect("sequence in range"),
        };
        // Odometer increment, last position fastest.
        self.done = true;
        for slot in self.seq.iter_mut().rev() {
            *slot += 1;
            if *slot < self.n {
                self.done = false;
                break;
            }
            *slot = 0;
        }
        Some(tree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decode_small_cases() {
        assert_eq!(prufer_decode(&[]).unwrap().edges(), vec![(0, 1)]);
        let star = prufer_decode(&[1, 1, 1]).unwrap();
        assert_eq!(star.n(), 5);
        assert_eq!(star.degree(1), 4);
        assert!(matches!(
            prufer_decode(&[0, 7]),
            Err(GraphError::VertexOutOfRange { vertex: 7, n: 4 })
        ));
    }

    #[test]
    fn exhaustive_round_trip_length_four() {
        let mut count = 0;
        for (i, t) in LabeledTrees::new(6).enumerate() {
            let seq = prufer_encode(&t).unwrap();
            let idx = seq.iter().fold(0, |acc, &x| acc * 6 + x);
            assert_eq!(idx, i);
            assert_eq!(prufer_decode(&seq).unwrap(), t);
            count += 1;
        }
        assert_eq!(count, 6usize.pow(4));
    }

    #[test]
    fn round_trip_all_sizes_up_to_eight() {
        for n in 2..=8 {
            let mut total = 0u64;
            for t in LabeledTrees::new(n) {
                assert_eq!(prufer_decode(&prufer_encode(&t).unwrap()).unwrap(), t);
                total += 1;
            }
            assert_eq!(total, LabeledTrees::count_total(n));
        }
    }

    #[test]
    fn encode_rejects_single_vertex() {
        assert!(prufer_encode(&Tree::single_vertex()).is_err());
    }

    #[test]
    fn random_tree_small_sizes() {
        assert_eq!(random_tree(1, 3).n(), 1);
        for seed in 0..20 {
            let t = random_tree(3, seed);
            assert_eq!(t.max_degree(), 2);
        }
    }

    #[test]
    fn random_tree_is_uniform_on_five_vertices() {
        // 125 labeled trees; every count within 5 sigma of the uniform mean.
        let samples = 100_000u64;
        let cells = 125u64;
        let mut counts = vec![0u64; cells as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..samples {
            let t = random_tree_with(5, &mut rng);
            let idx = prufer_encode(&t)
                .unwrap()
                .iter()
                .fold(0, |acc, &x| acc * 5 + x);
            counts[idx] += 1;
        }
        let p = 1.0 / cells as f64;
        let mean = samples as f64 * p;
        let sigma = (samples as f64 * p * (1.0 - p)).sqrt();
        for &c in &counts {
            assert!(
                (c as f64 - mean).abs() <= 5.0 * sigma,
                "count {c} vs mean {mean}"
            );
        }
    }

    #[test]
    fn random_tree_is_uniform_on_eight_vertices() {
        // 8^6 labeled trees against 10^5 samples: the expected count per tree
        // is below one, so test the Pearson statistic, whose mean k - 1 and
        // variance 2(k - 1)(1 - 1/N) are exact under the uniform multinomial.
        let samples = 100_000u64;
        let cells = 8u64.pow(6);
        let mut counts = vec![0u32; cells as usize];
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..samples {
            let t = random_tree_with(8, &mut rng);
            let idx = prufer_encode(&t)
                .unwrap()
                .iter()
                .fold(0, |acc, &x| acc * 8 + x);
            counts[idx] += 1;
        }
        let expected = samples as f64 / cells as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| (c as f64 - expected).powi(2) / expected)
            .sum();
        let df = (cells - 1) as f64;
        let sigma = (2.0 * df * (1.0 - 1.0 / samples as f64)).sqrt();
        assert!(
            (chi2 - df).abs() <= 5.0 * sigma,
            "chi2 {chi2}, df {df}, sigma {sigma}"
        );
    }

    proptest! {
        #[test]
        fn random_tree_reproducible(n in 1usize..60, seed in any::<u64>()) {
            prop_assert_eq!(random_tree(n, seed), random_tree(n, seed));
        }

        #[test]
        fn decode_encode_identity(seq in proptest::collection::vec(0usize..12, 10)) {
            let t = prufer_decode(&seq).unwrap();
            prop_assert_eq!(prufer_encode(&t).unwrap(), seq);
        }
    }
}
