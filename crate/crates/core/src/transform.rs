//! The π-transformation, its inverse, and the reductions built on them.
//!
//! A site is an edge `uw` together with a split of the `w` side of `T - uw`:
//!
//! ```text
//!   T0 ... u --- w --- p1 --- ... --- v0      (P, a pendent path)
//!                |
//!                T1                          (the other branches at w)
//! ```
//!
//! π moves every branch of `T1` from `w` to `u`. Provided the pendent path is
//! strictly shorter than the depth of `T0` below `u`, the average Steiner
//! 3-eccentricity does not increase. The inverse moves the same branches back
//! from `u` to `w`. The same [`PiSite`] value describes both directions:
//! [`apply_pi`] expects `T1` hanging at `w`, [`apply_pi_inverse`] expects it
//! hanging at `u`.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::fast::{aecc3, EccError};
use crate::rational::Rational;
use crate::tree::{GraphError, Tree, TreePath, Vertex};

/// Largest number of branches at `u` for which inverse sites are enumerated
/// (every non-empty subset of them is a candidate `T1`).
pub const MAX_INVERSE_BRANCHES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("invalid site: {0}")]
    InvalidSite(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("vertex {u} has {branches} branches, more than the enumeration limit {limit}")]
    TooManyBranches {
        u: Vertex,
        branches: usize,
        limit: usize,
    },
    #[error("reattach move changed the average from {before} to {after}")]
    ReattachChangedAverage { before: Rational, after: Rational },
    #[error("reduction did not finish within {0} steps")]
    StepLimit(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ecc(#[from] EccError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PiSite {
    pub u: Vertex,
    pub w: Vertex,
    /// Sorted; contains `u`.
    pub t0: Vec<Vertex>,
    /// Sorted and non-empty.
    pub t1: Vec<Vertex>,
    /// Pendent path starting at `w`; a single vertex when it has no edges.
    pub path: TreePath,
}

impl PiSite {
    /// Far end of the pendent path (`w` itself for a trivial path).
    pub fn v0(&self) -> Vertex {
        self.path.end()
    }

    /// Number of edges of the pendent path.
    pub fn path_length(&self) -> usize {
        self.path.length()
    }

    /// Checks the site against a tree in which `T1` hangs at `w`.
    pub fn validate_forward(&self, t: &Tree) -> Result<(), TransformError> {
        self.validate(t, self.w)
    }

    /// Checks the site against a tree in which `T1` hangs at `u`.
    pub fn validate_inverse(&self, t: &Tree) -> Result<(), TransformError> {
        self.validate(t, self.u)
    }

    fn validate(&self, t: &Tree, anchor: Vertex) -> Result<(), TransformError> {
        let n = t.n();
        let bad = |msg: String| Err(TransformError::InvalidSite(msg));
        t.check_vertex(self.u)?;
        t.check_vertex(self.w)?;
        if !t.neighbors(self.u).contains(&self.w) {
            return bad(format!("{} and {} are not adjacent", self.u, self.w));
        }
        if self.t1.is_empty() {
            return bad("T1 is empty".into());
        }
        // Partition check: every vertex in exactly one of T0, T1, V(P).
        let mut part = vec![0u8; n];
        for (label, set) in [
            (1u8, &self.t0[..]),
            (2, &self.t1[..]),
            (3, self.path.vertices()),
        ] {
            for &v in set {
                t.check_vertex(v)?;
                if part[v] != 0 {
                    return bad(format!("vertex {v} is listed twice"));
                }
                part[v] = label;
            }
        }
        if let Some(v) = part.iter().position(|&p| p == 0) {
            return bad(format!("vertex {v} is in no part"));
        }
        if part[self.u] != 1 {
            return bad("u is not in T0".into());
        }
        if self.path.start() != self.w {
            return bad("the pendent path does not start at w".into());
        }
        TreePath::new(t, self.path.vertices().to_vec())?;
        // Every edge crossing between parts is either uw, a path edge, or an
        // edge from the anchor into T1.
        for (a, b) in t.edges() {
            let (pa, pb) = (part[a], part[b]);
            if pa == pb {
                continue;
            }
            let crossing_ok = match (pa.min(pb), pa.max(pb)) {
                (1, 3) => (a, b) == (self.u, self.w) || (b, a) == (self.u, self.w),
                (1, 2) | (2, 3) => a == anchor || b == anchor,
                _ => false,
            };
            if !crossing_ok {
                return bad(format!("edge {a}-{b} crosses the decomposition"));
            }
        }
        // Pendent: the path's interior has no other neighbors and v0 is a leaf
        // once T1 is set aside.
        let m = self.path.length();
        for (i, &x) in self.path.vertices().iter().enumerate().skip(1) {
            let expected = if i == m { 1 } else { 2 };
            if t.degree(x) != expected {
                return bad(format!("path vertex {x} has degree {}", t.degree(x)));
            }
        }
        let depth = restricted_depth(t, self.u, &part, 1);
        if m >= depth {
            return bad(format!(
                "pendent path length {m} is not below the depth {depth} of T0 at u"
            ));
        }
        Ok(())
    }
}

/// Depth of the part labelled `label` below `root`, moving only inside it.
fn restricted_depth(t: &Tree, root: Vertex, part: &[u8], label: u8) -> usize {
    let mut dist = vec![usize::MAX; t.n()];
    dist[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut best = 0;
    while let Some(x) = queue.pop_front() {
        best = best.max(dist[x]);
        for &y in t.neighbors(x) {
            if part[y] == label && dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    best
}

/// Vertices reachable from `start` without visiting `blocked`, sorted.
fn component_avoiding(t: &Tree, start: Vertex, blocked: Vertex) -> Vec<Vertex> {
    let mut seen = vec![false; t.n()];
    seen[start] = true;
    seen[blocked] = true;
    let mut stack = vec![start];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        out.push(x);
        for &y in t.neighbors(x) {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Follows `from -> first -> ...` through degree-two vertices. Returns the
/// walk if it ends at a leaf.
fn pendent_walk(t: &Tree, from: Vertex, first: Vertex) -> Option<Vec<Vertex>> {
    let mut walk = vec![from, first];
    let (mut prev, mut cur) = (from, first);
    loop {
        match t.degree(cur) {
            1 => return Some(walk),
            2 => {
                let next = t
                    .neighbors(cur)
                    .iter()
                    .copied()
                    .find(|&y| y != prev)
                    .unwrap();
                walk.push(next);
                prev = cur;
                cur = next;
            }
            _ => return None,
        }
    }
}

fn max_depth_from(t: &Tree, root: Vertex, allowed: &[bool]) -> usize {
    let part: Vec<u8> = allowed.iter().map(|&a| a as u8).collect();
    restricted_depth(t, root, &part, 1)
}

fn mask_of(n: usize, sets: &[&[Vertex]]) -> Vec<bool> {
    let mut mask = vec![false; n];
    for set in sets {
        for &v in *set {
            mask[v] = true;
        }
    }
    mask
}

fn sorted(mut v: Vec<Vertex>) -> Vec<Vertex> {
    v.sort_unstable();
    v
}

/// Every forward site of `t`, ordered by `w`, then `u`, then the pendent
/// path (the trivial path first, then by the path's first vertex after `w`).
pub fn find_pi_sites(t: &Tree) -> Vec<PiSite> {
    let n = t.n();
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    for w in 0..n {
        for &u in t.neighbors(w) {
            let t0 = component_avoiding(t, u, w);
            let depth = max_depth_from(t, u, &mask_of(n, &[&t0]));
            let mut paths = vec![vec![w]];
            for &y in t.neighbors(w) {
                if y != u {
                    if let Some(walk) = pendent_walk(t, w, y) {
                        paths.push(walk);
                    }
                }
            }
            for p in paths {
                let m = p.len() - 1;
                if m >= depth || t0.len() + p.len() == n {
                    continue;
                }
                let taken = mask_of(n, &[&t0, &p]);
                let t1: Vec<Vertex> = (0..n).filter(|&v| !taken[v]).collect();
                out.push(PiSite {
                    u,
                    w,
                    t0: t0.clone(),
                    t1,
                    path: TreePath::from_vertices_unchecked(p),
                });
            }
        }
    }
    out
}

/// Every inverse site of `t`: `T1` is a non-empty union of branches at `u`,
/// the branch at `u` through `w` is a pendent path, and the rest of the tree
/// is `T0`, which must reach deeper than the path. Ordered by `u`, then `w`,
/// then the subset of branches as a binary counter.
pub fn find_pi_inverse_sites(t: &Tree) -> Result<Vec<PiSite>, TransformError> {
    let n = t.n();
    let mut out = Vec::new();
    if n < 3 {
        return Ok(out);
    }
    for u in 0..n {
        let deg = t.degree(u);
        if deg < 3 {
            // T0 needs a branch of its own besides the ones moved.
            continue;
        }
        if deg - 1 > MAX_INVERSE_BRANCHES {
            return Err(TransformError::TooManyBranches {
                u,
                branches: deg - 1,
                limit: MAX_INVERSE_BRANCHES,
            });
        }
        let branches: Vec<(Vertex, Vec<Vertex>, usize)> = t
            .neighbors(u)
            .iter()
            .map(|&y| {
                let comp = component_avoiding(t, y, u);
                let depth = 1 + max_depth_from(t, y, &mask_of(n, &[&comp]));
                (y, comp, depth)
            })
            .collect();
        for (wi, &(w, ref wcomp, _)) in branches.iter().enumerate() {
            let walk = match t.degree(w) {
                1 => vec![w],
                2 => {
                    let next = t.neighbors(w).iter().copied().find(|&y| y != u).unwrap();
                    match pendent_walk(t, w, next) {
                        Some(walk) => walk,
                        None => continue,
                    }
                }
                _ => continue,
            };
            debug_assert_eq!(walk.len(), wcomp.len());
            let m = walk.len() - 1;
            let others: Vec<usize> = (0..branches.len()).filter(|&i| i != wi).collect();
            let k = others.len();
            for mask in 1u32..(1u32 << k) - 1 {
                let chosen = |j: usize| mask >> j & 1 == 1;
                let t0_depth = (0..k)
                    .filter(|&j| !chosen(j))
                    .map(|j| branches[others[j]].2)
                    .max()
                    .unwrap();
                if t0_depth <= m {
                    continue;
                }
                let mut t0 = vec![u];
                let mut t1 = Vec::new();
                for (j, &bi) in others.iter().enumerate() {
                    let target = if chosen(j) { &mut t1 } else { &mut t0 };
                    target.extend_from_slice(&branches[bi].1);
                }
                out.push(PiSite {
                    u,
                    w,
                    t0: sorted(t0),
                    t1: sorted(t1),
                    path: TreePath::from_vertices_unchecked(walk.clone()),
                });
            }
        }
    }
    Ok(out)
}

fn rehang(t: &Tree, s: &PiSite, from: Vertex, to: Vertex) -> Result<Tree, TransformError> {
    let mut in_t1 = vec![false; t.n()];
    for &v in &s.t1 {
        in_t1[v] = true;
    }
    let edges: Vec<(Vertex, Vertex)> = t
        .edges()
        .into_iter()
        .map(|(a, b)| {
            if a == from && in_t1[b] {
                (to, b)
            } else if b == from && in_t1[a] {
                (a, to)
            } else {
                (a, b)
            }
        })
        .collect();
    Ok(Tree::from_edge_list(t.n(), &edges)?)
}

/// Re-attaches the neighbors of `w` inside `T1` to `u`.
pub fn apply_pi(t: &Tree, s: &PiSite) -> Result<Tree, TransformError> {
    s.validate_forward(t)?;
    rehang(t, s, s.w, s.u)
}

/// Re-attaches the neighbors of `u` inside `T1` to `w`.
pub fn apply_pi_inverse(t: &Tree, s: &PiSite) -> Result<Tree, TransformError> {
    s.validate_inverse(t)?;
    rehang(t, s, s.u, s.w)
}

/// The four quantities compared by the equality condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct EqualityTerms {
    /// Distance from a longest path `P0` starting at `u` inside `T0` to the
    /// farthest vertex of `T0`.
    pub ecc_t0_p0: usize,
    /// Length of the pendent path.
    pub path_length: usize,
    /// Depth of `T0` below `u`.
    pub ecc2_u_t0: usize,
    /// Depth of `T1` below `w`.
    pub ecc2_w_t1: usize,
}

impl EqualityTerms {
    pub fn holds(&self) -> bool {
        self.ecc_t0_p0 <= self.path_length
            && self.path_length < self.ecc2_u_t0
            && self.ecc2_w_t1 <= self.path_length
    }
}

/// Evaluates the equality terms for a forward site.
pub fn equality_terms(t: &Tree, s: &PiSite) -> Result<EqualityTerms, TransformError> {
    s.validate_forward(t)?;
    let (t0, map0) = t.induced_subtree(&s.t0)?;
    let u0 = map0.binary_search(&s.u).unwrap();
    let (ecc2_u_t0, p0) = t0.longest_path_from(u0)?;
    let (ecc_t0_p0, _) = t0.path_eccentricity(&p0)?;
    let mut side = s.t1.clone();
    side.push(s.w);
    let (t1, map1) = t.induced_subtree(&side)?;
    let w1 = map1.binary_search(&s.w).unwrap();
    let (ecc2_w_t1, _) = t1.longest_path_from(w1)?;
    Ok(EqualityTerms {
        ecc_t0_p0,
        path_length: s.path_length(),
        ecc2_u_t0,
        ecc2_w_t1,
    })
}

/// Whether π at this site leaves the average unchanged.
pub fn is_equality_case(t: &Tree, s: &PiSite) -> Result<bool, TransformError> {
    Ok(equality_terms(t, s)?.holds())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    ToStar,
    ToPath,
    ToBroom { root: Vertex },
    ToBalancedStarlike,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Pi,
    PiInverse,
    /// Moves pendent paths between two adjacent branching vertices, keeping
    /// the average unchanged.
    Reattach,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    /// Step `i` turns snapshot `i` into snapshot `i + 1`.
    pub index: usize,
    pub kind: MoveKind,
    pub site: Option<PiSite>,
    pub removed_edges: Vec<(Vertex, Vertex)>,
    pub added_edges: Vec<(Vertex, Vertex)>,
    pub before: Rational,
    pub after: Rational,
    /// Whether the average stayed the same.
    pub equality: bool,
    /// For π and π⁻¹ steps, whether the equality condition predicts that.
    pub predicted_equality: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransformTrace {
    pub strategy: Option<Strategy>,
    #[serde(skip)]
    pub snapshots: Vec<Tree>,
    pub steps: Vec<TraceStep>,
}

impl TransformTrace {
    pub fn new(start: Tree, strategy: Option<Strategy>) -> Self {
        TransformTrace {
            strategy,
            snapshots: vec![start],
            steps: Vec::new(),
        }
    }

    pub fn last(&self) -> &Tree {
        self.snapshots.last().unwrap()
    }

    /// Every π step is non-increasing, every π⁻¹ step non-decreasing, and
    /// every reattach step neutral.
    pub fn is_monotone(&self) -> bool {
        self.steps.iter().all(|s| match s.kind {
            MoveKind::Pi => s.after <= s.before,
            MoveKind::PiInverse => s.after >= s.before,
            MoveKind::Reattach => s.after == s.before,
        })
    }

    /// Appends a move from the current last snapshot to `next`.
    fn push(
        &mut self,
        kind: MoveKind,
        site: Option<PiSite>,
        next: Tree,
    ) -> Result<(), TransformError> {
        let prev = self.last();
        let before = aecc3(prev)?;
        let after = aecc3(&next)?;
        let predicted_equality = match (&site, kind) {
            (Some(s), MoveKind::Pi) => Some(is_equality_case(prev, s)?),
            (Some(s), MoveKind::PiInverse) => Some(is_equality_case(&next, s)?),
            _ => None,
        };
        let old_edges = prev.edges();
        let new_edges = next.edges();
        let removed_edges = old_edges
            .iter()
            .filter(|e| new_edges.binary_search(e).is_err())
            .copied()
            .collect();
        let added_edges = new_edges
            .iter()
            .filter(|e| old_edges.binary_search(e).is_err())
            .copied()
            .collect();
        self.steps.push(TraceStep {
            index: self.steps.len(),
            kind,
            site,
            removed_edges,
            added_edges,
            before,
            after,
            equality: before == after,
            predicted_equality,
        });
        self.snapshots.push(next);
        Ok(())
    }

    /// Applies π at `site` to the last snapshot and records the step.
    pub fn apply_pi(&mut self, site: PiSite) -> Result<(), TransformError> {
        let next = apply_pi(self.last(), &site)?;
        self.push(MoveKind::Pi, Some(site), next)
    }

    /// Applies π⁻¹ at `site` to the last snapshot and records the step.
    pub fn apply_pi_inverse(&mut self, site: PiSite) -> Result<(), TransformError> {
        let next = apply_pi_inverse(self.last(), &site)?;
        self.push(MoveKind::PiInverse, Some(site), next)
    }
}

/// Repeatedly applies π (toward a star or a balanced starlike tree) or π⁻¹
/// (toward a path or a broom) until the target shape is reached.
pub fn reduce(t: &Tree, strategy: Strategy) -> Result<(Tree, TransformTrace), TransformError> {
    let n = t.n();
    if n < 3 {
        return Err(TransformError::Precondition(format!(
            "reduction needs n >= 3, got {n}"
        )));
    }
    if let Strategy::ToBroom { root } = strategy {
        t.check_vertex(root)?;
        if t.degree(root) != t.max_degree() {
            return Err(TransformError::Precondition(format!(
                "root {root} has degree {} but the maximum degree is {}",
                t.degree(root),
                t.max_degree()
            )));
        }
    }
    let mut trace = TransformTrace::new(t.clone(), Some(strategy));
    let limit = n * n;
    for _ in 0..=limit {
        let cur = trace.last().clone();
        let done = match strategy {
            Strategy::ToStar => star_step(&cur, &mut trace)?,
            Strategy::ToPath => path_step(&cur, None, &mut trace)?,
            Strategy::ToBroom { root } => path_step(&cur, Some(root), &mut trace)?,
            Strategy::ToBalancedStarlike => starlike_step(&cur, &mut trace)?,
        };
        if done {
            let last = trace.last().clone();
            return Ok((last, trace));
        }
    }
    Err(TransformError::StepLimit(limit))
}

fn center_root(t: &Tree) -> Vertex {
    t.diameter_radius_center().center[0]
}

/// π with a trivial pendent path at the deepest possible `w`: `w` becomes a
/// leaf, so at most `n` steps are needed.
fn star_step(t: &Tree, trace: &mut TransformTrace) -> Result<bool, TransformError> {
    let depth = t.distances_from(center_root(t));
    let best = find_pi_sites(t)
        .into_iter()
        .filter(|s| s.path_length() == 0)
        .min_by_key(|s| (std::cmp::Reverse(depth[s.w]), s.w, s.u));
    match best {
        None => Ok(true),
        Some(site) => {
            trace.apply_pi(site)?;
            Ok(false)
        }
    }
}

struct Branch {
    head: Vertex,
    vertices: Vec<Vertex>,
    depth: usize,
    /// The branch as a pendent path starting at `head`, if it is one.
    pendent: Option<Vec<Vertex>>,
}

fn branches_at(t: &Tree, u: Vertex) -> Vec<Branch> {
    let n = t.n();
    t.neighbors(u)
        .iter()
        .map(|&y| {
            let vertices = component_avoiding(t, y, u);
            let depth = 1 + max_depth_from(t, y, &mask_of(n, &[&vertices]));
            let pendent = match t.degree(y) {
                1 => Some(vec![y]),
                2 => {
                    let next = t.neighbors(y).iter().copied().find(|&x| x != u).unwrap();
                    pendent_walk(t, y, next)
                }
                _ => None,
            };
            Branch {
                head: y,
                vertices,
                depth,
                pendent,
            }
        })
        .collect()
}

/// The inverse site at `u` that moves every branch except the shortest
/// eligible pendent one (`P`) and the deepest remaining one (`T0`) to the far
/// side of `P`'s first vertex. `eligible` filters candidate heads for `P`.
fn spread_site(t: &Tree, u: Vertex, eligible: impl Fn(&Branch) -> bool) -> Option<PiSite> {
    let branches = branches_at(t, u);
    let pi = branches
        .iter()
        .enumerate()
        .filter(|(_, b)| b.pendent.is_some() && eligible(b))
        .min_by_key(|(_, b)| (b.vertices.len(), b.head))?
        .0;
    let ti = branches
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pi)
        .min_by_key(|(_, b)| (std::cmp::Reverse(b.depth), b.head))?
        .0;
    let m = branches[pi].vertices.len() - 1;
    if branches[ti].depth <= m || branches.len() < 3 {
        return None;
    }
    let mut t0 = vec![u];
    t0.extend_from_slice(&branches[ti].vertices);
    let t1: Vec<Vertex> = branches
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != pi && i != ti)
        .flat_map(|(_, b)| b.vertices.iter().copied())
        .collect();
    Some(PiSite {
        u,
        w: branches[pi].head,
        t0: sorted(t0),
        t1: sorted(t1),
        path: TreePath::from_vertices_unchecked(branches[pi].pendent.clone().unwrap()),
    })
}

/// One π⁻¹ step toward a path (`root == None`) or toward the broom of the
/// same maximum degree (`root` is a vertex of maximum degree).
fn path_step(
    t: &Tree,
    root: Option<Vertex>,
    trace: &mut TransformTrace,
) -> Result<bool, TransformError> {
    let n = t.n();
    let branching: Vec<Vertex> = (0..n).filter(|&v| t.degree(v) >= 3).collect();
    let spread_phase = match root {
        None => !branching.is_empty(),
        Some(_) => branching.len() >= 2,
    };
    if spread_phase {
        // While more than one branching vertex remains, `root` keeps its
        // degree: it is never `u`, and never `w` since `w` heads a path.
        let base = root.unwrap_or_else(|| center_root(t));
        let depth = t.distances_from(base);
        let u = branching
            .iter()
            .copied()
            .filter(|&v| Some(v) != root)
            .min_by_key(|&v| (std::cmp::Reverse(depth[v]), v))
            .unwrap();
        // All branches of `u` away from `base` are pendent paths, since no
        // branching vertex lies deeper.
        let parent = t.parents_from(base)[u];
        let site = spread_site(t, u, |b| u == base || b.head != parent)
            .ok_or_else(|| TransformError::InvalidSite(format!("no spreading site at {u}")))?;
        trace.apply_pi_inverse(site)?;
        return Ok(false);
    }
    let Some(&hub) = branching.first() else {
        return Ok(true);
    };
    if root.is_none() {
        return Ok(true);
    }
    // A spider: lengthen the longest leg at the expense of a shorter one
    // until at most one leg has more than one edge. Each step moves the hub
    // one vertex along the shortened leg.
    let branches = branches_at(t, hub);
    let long_legs = branches.iter().filter(|b| b.vertices.len() >= 2).count();
    if long_legs <= 1 {
        return Ok(true);
    }
    let longest = branches
        .iter()
        .min_by_key(|b| (std::cmp::Reverse(b.vertices.len()), b.head))
        .unwrap()
        .head;
    let site = spread_site(t, hub, |b| b.vertices.len() >= 2 && b.head != longest)
        .ok_or_else(|| TransformError::InvalidSite(format!("no broom step at {hub}")))?;
    trace.apply_pi_inverse(site)?;
    Ok(false)
}

/// One step toward the balanced starlike tree with the same leaf count.
fn starlike_step(t: &Tree, trace: &mut TransformTrace) -> Result<bool, TransformError> {
    let n = t.n();
    let branching: Vec<Vertex> = (0..n).filter(|&v| t.degree(v) >= 3).collect();
    match branching.len() {
        0 => return Ok(true),
        1 => {
            let hub = branching[0];
            let legs = branches_at(t, hub);
            let shortest = legs
                .iter()
                .min_by_key(|b| (b.vertices.len(), b.head))
                .unwrap();
            let longest = legs
                .iter()
                .min_by_key(|b| (std::cmp::Reverse(b.vertices.len()), b.head))
                .unwrap();
            if longest.vertices.len() <= shortest.vertices.len() + 1 {
                return Ok(true);
            }
            let t1: Vec<Vertex> = legs
                .iter()
                .filter(|b| b.head != shortest.head && b.head != longest.head)
                .flat_map(|b| b.vertices.iter().copied())
                .collect();
            let mut path = vec![hub];
            path.extend(shortest.pendent.as_ref().unwrap());
            let site = PiSite {
                u: longest.head,
                w: hub,
                t0: longest.vertices.clone(),
                t1: sorted(t1),
                path: TreePath::from_vertices_unchecked(path),
            };
            trace.apply_pi(site)?;
            return Ok(false);
        }
        _ => {}
    }
    // Several branching vertices: fold the legs of an outer one into its
    // neighbor. An outer branching vertex has exactly one non-pendent branch.
    let depth = t.distances_from(center_root(t));
    let mut candidates = Vec::new();
    let mut stuck = None;
    for &w in &branching {
        let branches = branches_at(t, w);
        let inner: Vec<&Branch> = branches.iter().filter(|b| b.pendent.is_none()).collect();
        if inner.len() != 1 {
            continue;
        }
        let u = inner[0].head;
        let shortest = branches
            .iter()
            .filter(|b| b.pendent.is_some())
            .min_by_key(|b| (b.vertices.len(), b.head))
            .unwrap();
        let m = shortest.vertices.len();
        let mut path = vec![w];
        path.extend(shortest.pendent.as_ref().unwrap());
        let t1: Vec<Vertex> = branches
            .iter()
            .filter(|b| b.head != u && b.head != shortest.head)
            .flat_map(|b| b.vertices.iter().copied())
            .collect();
        let site = PiSite {
            u,
            w,
            t0: inner[0].vertices.clone(),
            t1: sorted(t1),
            path: TreePath::from_vertices_unchecked(path),
        };
        if m < inner[0].depth - 1 && site.validate_forward(t).is_ok() {
            candidates.push(site);
        } else if stuck.is_none() {
            stuck = Some((w, u));
        }
    }
    if let Some(site) = candidates
        .into_iter()
        .min_by_key(|s| (std::cmp::Reverse(depth[s.w]), s.w))
    {
        trace.apply_pi(site)?;
        return Ok(false);
    }
    // No π applies: two adjacent branching vertices whose legs all have the
    // same length. Moving all but one leg of `w` over to `u` yields a starlike
    // tree with the same average.
    let (w, u) =
        stuck.ok_or_else(|| TransformError::InvalidSite("no outer branching vertex".into()))?;
    let legs: Vec<Vertex> = t
        .neighbors(w)
        .iter()
        .copied()
        .filter(|&y| y != u)
        .skip(1)
        .collect();
    let edges: Vec<(Vertex, Vertex)> = t
        .edges()
        .into_iter()
        .map(|(a, b)| {
            if a == w && legs.contains(&b) {
                (u, b)
            } else if b == w && legs.contains(&a) {
                (a, u)
            } else {
                (a, b)
            }
        })
        .collect();
    let next = Tree::from_edge_list(n, &edges)?;
    trace.push(MoveKind::Reattach, None, next)?;
    let step = trace.steps.last().unwrap();
    if !step.equality {
        return Err(TransformError::ReattachChangedAverage {
            before: step.before,
            after: step.after,
        });
    }
    Ok(false)
}
