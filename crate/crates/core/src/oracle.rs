//! Ground-truth enumeration: Steiner distances of arbitrary vertex sets,
//! Steiner k-eccentricities by exhaustive search, the Steiner-Wiener index,
//! and a three-terminal Steiner oracle for small general graphs.
//!
//! Everything here is deliberately slow and literal. The fast per-vertex
//! algorithm in [`crate::fast`] is checked against these routines.

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;
use crate::rational::Rational;
use crate::tree::{GraphError, Tree, Vertex};

/// Largest general graph accepted by the three-terminal oracle.
pub const GRAPH_ORACLE_MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("terminal set is empty")]
    EmptyTerminals,
    #[error("k = {k} out of range for n = {n} (need 2 <= k <= n)")]
    KOutOfRange { k: usize, n: usize },
    #[error("enumeration needs {needed} subsets, cap is {cap}")]
    SubsetCapExceeded { needed: u128, cap: u64 },
    #[error("graph has {n} vertices, oracle cap is {cap}")]
    GraphTooLarge { n: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Explicit enumeration budget. Exceeding it is an error, never a silent
/// truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationLimits {
    pub max_subsets: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        EnumerationLimits {
            max_subsets: 2_000_000_000,
        }
    }
}

impl EnumerationLimits {
    fn check(&self, needed: u128) -> Result<(), OracleError> {
        if needed > self.max_subsets as u128 {
            Err(OracleError::SubsetCapExceeded {
                needed,
                cap: self.max_subsets,
            })
        } else {
            Ok(())
        }
    }
}

/// The unique minimal subtree of the host spanning a terminal set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerSubtree<'t> {
    pub host: &'t Tree,
    /// Sorted, deduplicated.
    pub terminals: Vec<Vertex>,
    /// Sorted vertex set of the subtree.
    pub vertices: Vec<Vertex>,
}

impl SteinerSubtree<'_> {
    /// Number of edges, i.e. the Steiner distance of the terminals.
    pub fn size(&self) -> usize {
        self.vertices.len() - 1
    }
}

/// Per-vertex Steiner k-eccentricities with their exact average.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EccReport {
    pub k: usize,
    pub per_vertex: Vec<usize>,
    pub sum: u64,
    pub average: Rational,
}

impl EccReport {
    pub fn from_per_vertex(k: usize, per_vertex: Vec<usize>) -> Self {
        let sum: u64 = per_vertex.iter().map(|&e| e as u64).sum();
        let average = Rational::new(sum as i64, per_vertex.len() as i64);
        EccReport {
            k,
            per_vertex,
            sum,
            average,
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Advances `idx` to the next k-combination of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn normalized_terminals(t: &Tree, terminals: &[Vertex]) -> Result<Vec<Vertex>, OracleError> {
    if terminals.is_empty() {
        return Err(OracleError::EmptyTerminals);
    }
    for &v in terminals {
        t.check_vertex(v)?;
    }
    let mut s = terminals.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Leaf-pruning evaluator for repeated Steiner distance queries on one tree.
///
/// Each query copies the degree array and strips non-terminal leaves until
/// every remaining leaf is a terminal: `O(n)` per query, no allocation.
pub struct LeafPruner<'t> {
    tree: &'t Tree,
    base_degree: Vec<usize>,
    leaves: Vec<Vertex>,
    degree: Vec<usize>,
    terminal: Vec<u32>,
    removed: Vec<u32>,
    stamp: u32,
    stack: Vec<Vertex>,
}

impl<'t> LeafPruner<'t> {
    pub fn new(tree: &'t Tree) -> Self {
        let n = tree.n();
        LeafPruner {
            tree,
            base_degree: (0..n).map(|v| tree.degree(v)).collect(),
            leaves: tree.leaves(),
            degree: vec![0; n],
            terminal: vec![0; n],
            removed: vec![0; n],
            stamp: 0,
            stack: Vec::with_capacity(n),
        }
    }

    /// Steiner distance of a non-empty set of valid, distinct terminals.
    pub fn distance(&mut self, terminals: &[Vertex]) -> usize {
        debug_assert!(!terminals.is_empty());
        if terminals.len() == 1 {
            return 0;
        }
        self.prune(terminals)
    }

    /// Runs the pruning and reports the surviving vertices in ascending order.
    pub fn subtree_vertices(&mut self, terminals: &[Vertex]) -> Vec<Vertex> {
        self.prune(terminals);
        let stamp = self.stamp;
        (0..self.tree.n())
            .filter(|&v| self.removed[v] != stamp)
            .collect()
    }

    fn mark_only(&mut self, terminals: &[Vertex]) {
        for &s in terminals {
            self.terminal[s] = self.stamp;
        }
    }

    fn prune(&mut self, terminals: &[Vertex]) -> usize {
        self.stamp = self.stamp.wrapping_add(1);
        if self.stamp == 0 {
            self.terminal.fill(0);
            self.removed.fill(0);
            self.stamp = 1;
        }
        let stamp = self.stamp;
        self.mark_only(terminals);
        self.degree.copy_from_slice(&self.base_degree);
        self.stack.clear();
        for &leaf in &self.leaves {
            if self.terminal[leaf] != stamp {
                self.stack.push(leaf);
            }
        }
        let mut removed = 0;
        while let Some(x) = self.stack.pop() {
            self.removed[x] = stamp;
            removed += 1;
            for &y in self.tree.neighbors(x) {
                if self.removed[y] != stamp {
                    self.degree[y] -= 1;
                    if self.degree[y] == 1 && self.terminal[y] != stamp {
                        self.stack.push(y);
                    }
                }
            }
        }
        self.tree.n() - removed - 1
    }
}

/// Steiner distance of `terminals` and the minimal subtree realizing it,
/// computed by pruning non-terminal leaves.
pub fn steiner_distance_tree<'t>(
    t: &'t Tree,
    terminals: &[Vertex],
) -> Result<(usize, SteinerSubtree<'t>), OracleError> {
    let terminals = normalized_terminals(t, terminals)?;
    let vertices = if terminals.len() == 1 {
        terminals.clone()
    } else {
        LeafPruner::new(t).subtree_vertices(&terminals)
    };
    let subtree = SteinerSubtree {
        host: t,
        terminals,
        vertices,
    };
    Ok((subtree.size(), subtree))
}

/// The same subtree built independently, as the union of the paths from the
/// smallest terminal to every other terminal.
pub fn steiner_subtree_union_of_paths<'t>(
    t: &'t Tree,
    terminals: &[Vertex],
) -> Result<SteinerSubtree<'t>, OracleError> {
    let terminals = normalized_terminals(t, terminals)?;
    let root = terminals[0];
    let parent = t.parents_from(root);
    let mut inside = vec![false; t.n()];
    inside[root] = true;
    for &s in &terminals[1..] {
        let mut x = s;
        while !inside[x] {
            inside[x] = true;
            x = parent[x];
        }
    }
    let vertices = (0..t.n()).filter(|&v| inside[v]).collect();
    Ok(SteinerSubtree {
        host: t,
        terminals,
        vertices,
    })
}

fn check_k(t: &Tree, k: usize) -> Result<(), OracleError> {
    if k < 2 || k > t.n() {
        Err(OracleError::KOutOfRange { k, n: t.n() })
    } else {
        Ok(())
    }
}

/// `ecc_k(v)` by enumerating every k-subset containing `v`. The witness is
/// the lexicographically smallest maximizing set (sorted ascending).
pub fn ecc_k_bruteforce(
    t: &Tree,
    v: Vertex,
    k: usize,
) -> Result<(usize, Vec<Vertex>), OracleError> {
    ecc_k_bruteforce_with_limits(t, v, k, EnumerationLimits::default())
}

pub fn ecc_k_bruteforce_with_limits(
    t: &Tree,
    v: Vertex,
    k: usize,
    limits: EnumerationLimits,
) -> Result<(usize, Vec<Vertex>), OracleError> {
    t.check_vertex(v)?;
    check_k(t, k)?;
    limits.check(binomial(t.n() - 1, k - 1))?;
    let mut pruner = LeafPruner::new(t);
    Ok(ecc_k_with(&mut pruner, t.n(), v, k))
}

fn ecc_k_with(pruner: &mut LeafPruner<'_>, n: usize, v: Vertex, k: usize) -> (usize, Vec<Vertex>) {
    // Combinations are drawn over the n - 1 vertices other than v.
    let others: Vec<Vertex> = (0..n).filter(|&x| x != v).collect();
    let mut idx: Vec<usize> = (0..k - 1).collect();
    let mut set = vec![0; k];
    let mut best = 0;
    let mut witness: Option<Vec<Vertex>> = None;
    loop {
        set[0] = v;
        for (slot, &i) in set[1..].iter_mut().zip(&idx) {
            *slot = others[i];
        }
        let d = pruner.distance(&set);
        if witness.is_none() || d > best {
            best = d;
            let mut w = set.clone();
            w.sort_unstable();
            witness = Some(w);
        } else if d == best {
            let mut w = set.clone();
            w.sort_unstable();
            if Some(&w) < witness.as_ref() {
                witness = Some(w);
            }
        }
        if !next_combination(&mut idx, n - 1) {
            break;
        }
    }
    (best, witness.unwrap())
}

/// Exhaustive average Steiner k-eccentricity. For `k = 3` this is the
/// `O(n^4)` enumeration: `O(n^2)` vertex pairs per vertex, each resolved by an
/// `O(n)` pruning pass.
pub fn aecc_k_bruteforce(t: &Tree, k: usize) -> Result<EccReport, OracleError> {
    aecc_k_bruteforce_with_limits(t, k, EnumerationLimits::default())
}

pub fn aecc_k_bruteforce_with_limits(
    t: &Tree,
    k: usize,
    limits: EnumerationLimits,
) -> Result<EccReport, OracleError> {
    check_k(t, k)?;
    limits.check(binomial(t.n() - 1, k - 1) * t.n() as u128)?;
    let mut pruner = LeafPruner::new(t);
    let per_vertex = (0..t.n())
        .map(|v| ecc_k_with(&mut pruner, t.n(), v, k).0)
        .collect();
    Ok(EccReport::from_per_vertex(k, per_vertex))
}

/// All-triples enumeration for `k = 3` with each Steiner distance read off
/// the pairwise distance matrix as `(d(a,b) + d(a,c) + d(b,c)) / 2`.
///
/// Still exhaustive over every triple containing each vertex, but `O(n^3)`,
/// which keeps oracle checks on trees with a few hundred vertices practical.
pub fn aecc3_bruteforce_pairwise(t: &Tree) -> Result<EccReport, OracleError> {
    check_k(t, 3)?;
    let n = t.n();
    let dist: Vec<Vec<u32>> = (0..n)
        .map(|v| t.distances_from(v).into_iter().map(|d| d as u32).collect())
        .collect();
    let mut per_vertex = vec![0usize; n];
    for v in 0..n {
        let dv = &dist[v];
        let mut best = 0u32;
        for a in 0..n {
            if a == v {
                continue;
            }
            let da = &dist[a];
            let base = dv[a];
            for b in a + 1..n {
                if b == v {
                    continue;
                }
                best = best.max(base + dv[b] + da[b]);
            }
        }
        per_vertex[v] = (best / 2) as usize;
    }
    Ok(EccReport::from_per_vertex(3, per_vertex))
}

/// Steiner k-Wiener index: the sum of `d(S)` over all k-subsets.
pub fn steiner_wiener(t: &Tree, k: usize) -> Result<u64, OracleError> {
    steiner_wiener_with_limits(t, k, EnumerationLimits::default())
}

pub fn steiner_wiener_with_limits(
    t: &Tree,
    k: usize,
    limits: EnumerationLimits,
) -> Result<u64, OracleError> {
    check_k(t, k)?;
    let n = t.n();
    limits.check(binomial(n, k))?;
    let mut pruner = LeafPruner::new(t);
    let mut idx: Vec<usize> = (0..k).collect();
    let mut total = 0u64;
    loop {
        total += pruner.distance(&idx) as u64;
        if !next_combination(&mut idx, n) {
            break;
        }
    }
    Ok(total)
}

fn check_graph(g: &Graph) -> Result<(), OracleError> {
    if g.n() > GRAPH_ORACLE_MAX_VERTICES {
        return Err(OracleError::GraphTooLarge {
            n: g.n(),
            cap: GRAPH_ORACLE_MAX_VERTICES,
        });
    }
    Ok(())
}

/// Three-terminal Steiner distance in an unweighted graph. An optimal tree
/// for three terminals is a spider with at most one branch vertex, so the
/// answer is `min_x d(a,x) + d(b,x) + d(c,x)`.
pub fn steiner3_distance_graph(
    g: &Graph,
    a: Vertex,
    b: Vertex,
    c: Vertex,
) -> Result<usize, OracleError> {
    check_graph(g)?;
    for v in [a, b, c] {
        g.check_vertex(v)?;
    }
    let (da, db, dc) = (
        g.distances_from(a),
        g.distances_from(b),
        g.distances_from(c),
    );
    Ok(spider_min(&da, &db, &dc))
}

fn spider_min(da: &[usize], db: &[usize], dc: &[usize]) -> usize {
    (0..da.len()).map(|x| da[x] + db[x] + dc[x]).min().unwrap()
}

/// Exact average Steiner 3-eccentricity of a small general graph.
pub fn aecc3_graph_bruteforce(g: &Graph) -> Result<EccReport, OracleError> {
    check_graph(g)?;
    let n = g.n();
    if n < 3 {
        return Err(OracleError::KOutOfRange { k: 3, n });
    }
    let dist = g.distance_matrix();
    let per_vertex = (0..n)
        .map(|v| {
            let mut best = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if a != v && b != v {
                        best = best.max(spider_min(&dist[v], &dist[a], &dist[b]));
                    }
                }
            }
            best
        })
        .collect();
    Ok(EccReport::from_per_vertex(3, per_vertex))
}
