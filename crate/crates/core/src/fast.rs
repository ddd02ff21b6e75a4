//! Quadratic-time Steiner 3-eccentricity of every vertex of a tree.
//!
//! For a vertex `v`, some 3-ecc set contains the far end `x` of a longest
//! path `P` starting at `v`, and the third terminal is any vertex farthest
//! from `P`. Which longest path is taken does not change the result. So
//!
//! ```text
//! ecc3(v) = ecc2(v) + max_s d(s, P)
//! ```
//!
//! Subtree heights computed once locate `P`, and two linear sweeps give the
//! distance from every vertex to `P`. That is `O(n)` per vertex and `O(n^2)`
//! overall.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::rational::Rational;
use crate::tree::{GraphError, NeighborOrder, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EccError {
    #[error("Steiner 3-eccentricity needs at least 3 vertices, tree has {n}")]
    TooSmall { n: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ecc3Result {
    pub per_vertex: Vec<usize>,
    /// `[v, x, y]`: `x` ends the chosen longest path from `v`, `y` is a
    /// farthest vertex from that path.
    pub witnesses: Vec<[Vertex; 3]>,
    pub sum: u64,
    pub average: Rational,
}

const NONE: u32 = u32::MAX;
const FAR: u32 = u32::MAX / 2;

/// Cache-friendly copy of a tree for the per-vertex sweeps. Vertices are
/// relabeled in breadth-first order from vertex 0, so parents precede
/// children and a sweep over labels is a sequential pass over memory.
/// Neighbor lists keep the original ascending order and ties are broken by
/// original ids, so results match a depth-first search on the tree itself.
struct Compact {
    offsets: Vec<u32>,
    neighbors: Vec<u32>,
    /// New label to original vertex.
    original: Vec<u32>,
    /// Original vertex to new label.
    label: Vec<u32>,
    /// Parent in the breadth-first tree; `NONE` for the root.
    parent: Vec<u32>,
    /// Height of the subtree below each vertex.
    down: Vec<u32>,
    /// For a non-root `x`, the farthest distance from `parent[x]` to a
    /// vertex outside the subtree of `x`.
    up: Vec<u32>,
}

impl Compact {
    fn new(t: &Tree) -> Self {
        let n = t.n();
        let mut original = Vec::with_capacity(n);
        let mut label = vec![NONE; n];
        let mut parent = vec![NONE; n];
        original.push(0u32);
        label[0] = 0;
        let mut head = 0;
        while head < original.len() {
            let x = original[head] as usize;
            for &y in t.neighbors(x) {
                if label[y] == NONE {
                    label[y] = original.len() as u32;
                    parent[original.len()] = head as u32;
                    original.push(y as u32);
                }
            }
            head += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        let mut neighbors = Vec::with_capacity(2 * (n - 1));
        offsets.push(0);
        for &x in &original {
            neighbors.extend(t.neighbors(x as usize).iter().map(|&y| label[y]));
            offsets.push(neighbors.len() as u32);
        }

        let mut down = vec![0u32; n];
        // Two largest `down[c] + 1` over the children `c` of each vertex.
        let mut top = vec![(0u32, 0u32); n];
        for x in (1..n).rev() {
            let (p, h) = (parent[x] as usize, down[x] + 1);
            down[p] = down[p].max(h);
            let (a, b) = top[p];
            top[p] = if h > a { (h, a) } else { (a, b.max(h)) };
        }
        let mut up = vec![0u32; n];
        for x in 1..n {
            let p = parent[x] as usize;
            let above = if p == 0 { 0 } else { up[p] + 1 };
            let (a, b) = top[p];
            let sibling = if down[x] + 1 == a { b } else { a };
            up[x] = above.max(sibling);
        }
        Compact {
            offsets,
            neighbors,
            original,
            label,
            parent,
            down,
            up,
        }
    }

    fn adjacent(&self, x: u32) -> &[u32] {
        &self.neighbors[self.offsets[x as usize] as usize..self.offsets[x as usize + 1] as usize]
    }

    /// Length of a longest path that starts at `from` and continues to the
    /// neighbor `to`.
    fn branch(&self, from: u32, to: u32) -> u32 {
        1 + if self.parent[to as usize] == from {
            self.down[to as usize]
        } else {
            self.up[from as usize]
        }
    }
}

struct Ecc3Scratch {
    dist: Vec<u32>,
    path: Vec<u32>,
}

impl Ecc3Scratch {
    fn new(n: usize) -> Self {
        Ecc3Scratch {
            dist: vec![FAR; n],
            path: Vec::with_capacity(n),
        }
    }
}

fn check_size(t: &Tree) -> Result<(), EccError> {
    if t.n() < 3 {
        Err(EccError::TooSmall { n: t.n() })
    } else {
        Ok(())
    }
}

/// Puts into `path` the longest path from `v` whose far end comes first in
/// a depth-first search visiting neighbors in `order`, and returns its
/// length. The search descends into the first neighbor whose branch still
/// reaches the full depth, which is where that search finds its first
/// deepest vertex.
fn longest_path(c: &Compact, v: u32, order: NeighborOrder, path: &mut Vec<u32>) -> u32 {
    let ecc2 = c.adjacent(v).iter().map(|&y| c.branch(v, y)).max().unwrap();
    path.clear();
    path.push(v);
    let (mut prev, mut cur) = (NONE, v);
    for left in (1..=ecc2).rev() {
        let reaches = |y: &&u32| **y != prev && c.branch(cur, **y) == left;
        let next = match order {
            NeighborOrder::Ascending => c.adjacent(cur).iter().find(reaches),
            NeighborOrder::Descending => c.adjacent(cur).iter().rev().find(reaches),
        };
        (prev, cur) = (cur, *next.unwrap());
        path.push(cur);
    }
    ecc2
}

/// Distances from every vertex to the path in `scratch.path`, by one sweep
/// from the leaves up and one from the root down. Returns the farthest
/// distance and the smallest original id attaining it.
fn path_eccentricity(c: &Compact, scratch: &mut Ecc3Scratch) -> (u32, u32) {
    let Ecc3Scratch { dist, path } = scratch;
    dist.fill(FAR);
    for &p in path.iter() {
        dist[p as usize] = 0;
    }
    for x in (1..dist.len()).rev() {
        let p = c.parent[x] as usize;
        dist[p] = dist[p].min(dist[x] + 1);
    }
    // Largest distance first, then smallest original id.
    let key = |x: usize, d: u32| (u64::from(d) << 32) | u64::from(!c.original[x]);
    let mut best = key(0, dist[0]);
    for x in 1..dist.len() {
        let d = dist[x].min(dist[c.parent[x] as usize] + 1);
        dist[x] = d;
        best = best.max(key(x, d));
    }
    ((best >> 32) as u32, !(best as u32))
}

fn ecc3_with(
    c: &Compact,
    v: Vertex,
    order: NeighborOrder,
    scratch: &mut Ecc3Scratch,
) -> (usize, [Vertex; 3]) {
    let ecc2 = longest_path(c, c.label[v], order, &mut scratch.path);
    let x = c.original[*scratch.path.last().unwrap() as usize];
    let (far, mut y) = path_eccentricity(c, scratch);
    if far == 0 {
        // The path covers the tree; any third vertex of it is a valid terminal.
        let path = &scratch.path;
        y = path[1..path.len() - 1]
            .iter()
            .map(|&p| c.original[p as usize])
            .min()
            .unwrap();
    }
    ((ecc2 + far) as usize, [v, x as usize, y as usize])
}

/// Steiner 3-eccentricity of `v` and a witness triple realizing it.
pub fn ecc3_fast(t: &Tree, v: Vertex) -> Result<(usize, [Vertex; 3]), EccError> {
    check_size(t)?;
    t.check_vertex(v)?;
    Ok(ecc3_with(
        &Compact::new(t),
        v,
        NeighborOrder::Ascending,
        &mut Ecc3Scratch::new(t.n()),
    ))
}

pub fn aecc3_fast(t: &Tree) -> Result<Ecc3Result, EccError> {
    aecc3_fast_ordered(t, NeighborOrder::Ascending)
}

/// As [`aecc3_fast`], with an explicit tie-breaking order for longest paths.
/// Per-vertex values do not depend on it; witnesses may.
pub fn aecc3_fast_ordered(t: &Tree, order: NeighborOrder) -> Result<Ecc3Result, EccError> {
    check_size(t)?;
    let c = Compact::new(t);
    let mut scratch = Ecc3Scratch::new(t.n());
    let pairs: Vec<_> = (0..t.n())
        .map(|v| ecc3_with(&c, v, order, &mut scratch))
        .collect();
    Ok(assemble(t.n(), pairs))
}

/// Parallel over vertices on the current rayon pool; output is identical to
/// [`aecc3_fast`].
pub fn aecc3_fast_par(t: &Tree) -> Result<Ecc3Result, EccError> {
    check_size(t)?;
    let c = Compact::new(t);
    let pairs: Vec<_> = (0..t.n())
        .into_par_iter()
        .map_init(
            || Ecc3Scratch::new(t.n()),
            |scratch, v| ecc3_with(&c, v, NeighborOrder::Ascending, scratch),
        )
        .collect();
    Ok(assemble(t.n(), pairs))
}

fn assemble(n: usize, pairs: Vec<(usize, [Vertex; 3])>) -> Ecc3Result {
    let (per_vertex, witnesses): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let sum: u64 = per_vertex.iter().map(|&e| e as u64).sum();
    Ecc3Result {
        per_vertex,
        witnesses,
        sum,
        average: Rational::new(sum as i64, n as i64),
    }
}

/// Just the exact average.
pub fn aecc3(t: &Tree) -> Result<Rational, EccError> {
    check_size(t)?;
    let c = Compact::new(t);
    let mut scratch = Ecc3Scratch::new(t.n());
    let sum: u64 = (0..t.n())
        .map(|v| ecc3_with(&c, v, NeighborOrder::Ascending, &mut scratch).0 as u64)
        .sum();
    Ok(Rational::new(sum as i64, t.n() as i64))
}
