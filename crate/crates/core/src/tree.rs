//! Tree representation and the classical distance machinery.
//!
//! Vertices are dense `usize` ids in `0..n`. A [`Tree`] is validated on
//! construction and never mutated afterwards; every transformation builds a
//! new value.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

pub type Vertex = usize;

const NONE: usize = usize::MAX;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("needs at least {min} vertices, got {n}")]
    TooSmall { n: usize, min: usize },
    #[error("vertex {vertex} out of range (n = {n})")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("edge {0}-{1} closes a cycle")]
    Cycle(Vertex, Vertex),
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("not a path: {0}")]
    NotAPath(String),
}

/// Neighbor visiting order used when several longest paths tie.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NeighborOrder {
    #[default]
    Ascending,
    Descending,
}

/// Immutable tree on `n >= 1` vertices with sorted adjacency lists.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Tree {
    adj: Vec<Vec<Vertex>>,
}

/// A path of the host tree, stored as its vertex sequence.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
#[serde(transparent)]
pub struct TreePath {
    vertices: Vec<Vertex>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CenterInfo {
    pub diameter: usize,
    pub radius: usize,
    /// One vertex, or two adjacent vertices in ascending order.
    pub center: Vec<Vertex>,
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Shared validation for simple graphs. Returns sorted adjacency lists.
pub(crate) fn build_simple_adjacency(
    n: usize,
    edges: &[(Vertex, Vertex)],
) -> Result<Vec<Vec<Vertex>>, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        for x in [u, v] {
            if x >= n {
                return Err(GraphError::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    for (u, list) in adj.iter_mut().enumerate() {
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
        }
    }
    Ok(adj)
}

pub(crate) fn count_components(adj: &[Vec<Vertex>]) -> usize {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut components = 0;
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        components += 1;
        seen[s] = true;
        stack.push(s);
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    components
}

/// Reusable buffers for the linear-time traversals; keeps the per-vertex
/// loops of the quadratic algorithm allocation-free.
pub(crate) struct Traversal {
    parent: Vec<Vertex>,
    dist: Vec<usize>,
    stack: Vec<Vertex>,
    queue: Vec<Vertex>,
}

impl Traversal {
    pub(crate) fn new(n: usize) -> Self {
        Traversal {
            parent: vec![NONE; n],
            dist: vec![0; n],
            stack: Vec::with_capacity(n),
            queue: Vec::with_capacity(n),
        }
    }
}

impl Tree {
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Tree, GraphError> {
        let adj = build_simple_adjacency(n, edges)?;
        let mut sets = DisjointSets::new(n);
        for &(u, v) in edges {
            if !sets.union(u, v) {
                return Err(GraphError::Cycle(u.min(v), u.max(v)));
            }
        }
        if edges.len() != n - 1 {
            return Err(GraphError::Disconnected {
                components: n - edges.len(),
            });
        }
        Ok(Tree { adj })
    }

    pub fn single_vertex() -> Tree {
        Tree {
            adj: vec![Vec::new()],
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n() - 1
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn is_leaf(&self, v: Vertex) -> bool {
        self.adj[v].len() == 1
    }

    pub fn leaves(&self) -> Vec<Vertex> {
        (0..self.n()).filter(|&v| self.is_leaf(v)).collect()
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.n()).filter(|&v| self.is_leaf(v)).count()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<(), GraphError> {
        if v < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.n(),
            })
        }
    }

    /// Breadth-first distances from `v` to every vertex.
    pub fn distances_from(&self, v: Vertex) -> Vec<usize> {
        let mut dist = vec![NONE; self.n()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == NONE {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    pub fn distance(&self, u: Vertex, v: Vertex) -> Result<usize, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(u)[v])
    }

    /// The unique `u,v`-path.
    pub fn path_between(&self, u: Vertex, v: Vertex) -> Result<TreePath, GraphError> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let parent = self.parents_from(v);
        let mut vertices = vec![u];
        let mut x = u;
        while x != v {
            x = parent[x];
            vertices.push(x);
        }
        Ok(TreePath { vertices })
    }

    /// Parent pointers of the tree rooted at `root` (`parent[root] == root`).
    pub fn parents_from(&self, root: Vertex) -> Vec<Vertex> {
        let mut parent = vec![NONE; self.n()];
        parent[root] = root;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &self.adj[x] {
                if parent[y] == NONE {
                    parent[y] = x;
                    stack.push(y);
                }
            }
        }
        parent
    }

    /// Length of a longest path starting at `v` (the eccentricity of `v`)
    /// together with that path. Ties go to the first deepest vertex in
    /// depth-first preorder with ascending neighbor ids.
    pub fn longest_path_from(&self, v: Vertex) -> Result<(usize, TreePath), GraphError> {
        self.longest_path_from_ordered(v, NeighborOrder::Ascending)
    }

    pub fn longest_path_from_ordered(
        &self,
        v: Vertex,
        order: NeighborOrder,
    ) -> Result<(usize, TreePath), GraphError> {
        self.check_vertex(v)?;
        let mut scratch = Traversal::new(self.n());
        let mut vertices = Vec::new();
        let len = self.longest_path_into(v, order, &mut scratch, &mut vertices);
        Ok((len, TreePath { vertices }))
    }

    pub(crate) fn longest_path_into(
        &self,
        v: Vertex,
        order: NeighborOrder,
        scratch: &mut Traversal,
        path: &mut Vec<Vertex>,
    ) -> usize {
        let Traversal {
            parent,
            dist,
            stack,
            ..
        } = scratch;
        stack.clear();
        parent[v] = NONE;
        dist[v] = 0;
        stack.push(v);
        let mut best = v;
        while let Some(x) = stack.pop() {
            if dist[x] > dist[best] {
                best = x;
            }
            // Pushed in reverse so the preferred neighbor is popped first.
            let p = parent[x];
            let mut push = |y: Vertex| {
                if y != p {
                    parent[y] = x;
                    dist[y] = dist[x] + 1;
                    stack.push(y);
                }
            };
            match order {
                NeighborOrder::Ascending => self.adj[x].iter().rev().for_each(|&y| push(y)),
                NeighborOrder::Descending => self.adj[x].iter().for_each(|&y| push(y)),
            }
        }
        path.clear();
        let mut x = best;
        while x != NONE {
            path.push(x);
            x = parent[x];
        }
        path.reverse();
        dist[best]
    }

    /// `max_s d(s, p)` and the smallest-id vertex attaining it.
    pub fn path_eccentricity(&self, p: &TreePath) -> Result<(usize, Vertex), GraphError> {
        p.validate(self)?;
        let mut scratch = Traversal::new(self.n());
        Ok(self.set_eccentricity_into(&p.vertices, &mut scratch))
    }

    /// Multi-source sweep from `sources`; returns the farthest distance and
    /// the smallest-id vertex attaining it. Leaves per-vertex distances in
    /// the scratch buffer.
    pub(crate) fn set_eccentricity_into(
        &self,
        sources: &[Vertex],
        scratch: &mut Traversal,
    ) -> (usize, Vertex) {
        let Traversal { dist, queue, .. } = scratch;
        dist.fill(NONE);
        queue.clear();
        for &s in sources {
            dist[s] = 0;
            queue.push(s);
        }
        let mut head = 0;
        let (mut far, mut witness) = (0, NONE);
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            let d = dist[x];
            if d > far || (d == far && x < witness) {
                far = d;
                witness = x;
            }
            for &y in &self.adj[x] {
                if dist[y] == NONE {
                    dist[y] = d + 1;
                    queue.push(y);
                }
            }
        }
        (far, witness)
    }

    /// Eccentricity of every vertex, via the two ends of a diameter.
    pub fn eccentricities(&self) -> Vec<usize> {
        let from_zero = self.distances_from(0);
        let a = argmax(&from_zero);
        let from_a = self.distances_from(a);
        let b = argmax(&from_a);
        let from_b = self.distances_from(b);
        from_a
            .iter()
            .zip(&from_b)
            .map(|(&x, &y)| x.max(y))
            .collect()
    }

    pub fn diameter_radius_center(&self) -> CenterInfo {
        let ecc = self.eccentricities();
        let diameter = *ecc.iter().max().unwrap();
        let radius = *ecc.iter().min().unwrap();
        let center: Vec<Vertex> = (0..self.n()).filter(|&v| ecc[v] == radius).collect();
        debug_assert!(center.len() <= 2);
        CenterInfo {
            diameter,
            radius,
            center,
        }
    }

    pub fn diameter(&self) -> usize {
        self.diameter_radius_center().diameter
    }

    /// Vertices in breadth-first order from `root` plus parent pointers.
    fn bfs_order(&self, root: Vertex) -> (Vec<Vertex>, Vec<Vertex>) {
        let mut parent = vec![NONE; self.n()];
        let mut order = Vec::with_capacity(self.n());
        parent[root] = root;
        order.push(root);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                if parent[y] == NONE {
                    parent[y] = x;
                    order.push(y);
                }
            }
        }
        (order, parent)
    }

    /// Maximum matching size by greedy leaf matching from the bottom up.
    pub fn matching_number(&self) -> usize {
        let (order, parent) = self.bfs_order(0);
        let mut matched = vec![false; self.n()];
        let mut size = 0;
        for &x in order.iter().skip(1).rev() {
            let p = parent[x];
            if !matched[x] && !matched[p] {
                matched[x] = true;
                matched[p] = true;
                size += 1;
            }
        }
        size
    }

    /// Maximum independent set size by rooted dynamic programming.
    pub fn independence_number(&self) -> usize {
        let (order, parent) = self.bfs_order(0);
        let mut take = vec![1usize; self.n()];
        let mut skip = vec![0usize; self.n()];
        for &x in order.iter().skip(1).rev() {
            let p = parent[x];
            take[p] += skip[x];
            skip[p] += take[x].max(skip[x]);
        }
        let alpha = take[0].max(skip[0]);
        assert_eq!(
            alpha + self.matching_number(),
            self.n(),
            "König duality violated"
        );
        alpha
    }

    /// The subtree induced by `vertices` (which must be connected), relabelled
    /// to `0..k` in ascending id order. Returns the tree and the map from new
    /// ids to old ids.
    pub fn induced_subtree(&self, vertices: &[Vertex]) -> Result<(Tree, Vec<Vertex>), GraphError> {
        let mut old: Vec<Vertex> = vertices.to_vec();
        old.sort_unstable();
        old.dedup();
        let mut new_id = vec![NONE; self.n()];
        for (i, &v) in old.iter().enumerate() {
            self.check_vertex(v)?;
            new_id[v] = i;
        }
        let mut edges = Vec::new();
        for &v in &old {
            for &y in &self.adj[v] {
                if v < y && new_id[y] != NONE {
                    edges.push((new_id[v], new_id[y]));
                }
            }
        }
        Ok((Tree::from_edge_list(old.len(), &edges)?, old))
    }

    /// Canonical string of the unrooted tree; equal iff isomorphic.
    pub fn canonical_form(&self) -> String {
        let info = self.diameter_radius_center();
        info.center
            .iter()
            .map(|&c| self.rooted_code(c))
            .min()
            .unwrap()
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.n() == other.n()
            && self.max_degree() == other.max_degree()
            && self.canonical_form() == other.canonical_form()
    }

    fn rooted_code(&self, root: Vertex) -> String {
        let (order, parent) = self.bfs_order(root);
        let mut codes: Vec<Vec<String>> = vec![Vec::new(); self.n()];
        for &x in order.iter().rev() {
            let mut children = std::mem::take(&mut codes[x]);
            children.sort_unstable();
            let mut code =
                String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
            code.push('(');
            children.iter().for_each(|c| code.push_str(c));
            code.push(')');
            if x == root {
                return code;
            }
            codes[parent[x]].push(code);
        }
        unreachable!("root is visited last")
    }
}

fn argmax(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

impl TreePath {
    pub fn new(t: &Tree, vertices: Vec<Vertex>) -> Result<TreePath, GraphError> {
        let path = TreePath { vertices };
        path.validate(t)?;
        Ok(path)
    }

    pub(crate) fn from_vertices_unchecked(vertices: Vec<Vertex>) -> TreePath {
        TreePath { vertices }
    }

    fn validate(&self, t: &Tree) -> Result<(), GraphError> {
        if self.vertices.is_empty() {
            return Err(GraphError::NotAPath("no vertices".into()));
        }
        let mut seen = vec![false; t.n()];
        for &v in &self.vertices {
            t.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(GraphError::NotAPath(format!("vertex {v} repeats")));
            }
        }
        for pair in self.vertices.windows(2) {
            if t.adj[pair[0]].binary_search(&pair[1]).is_err() {
                return Err(GraphError::NotAPath(format!(
                    "{}-{} is not an edge",
                    pair[0], pair[1]
                )));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }
}
