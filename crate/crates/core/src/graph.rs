//! Small general graphs, used only by the three-terminal Steiner oracle.

use std::collections::VecDeque;

use crate::tree::{build_simple_adjacency, count_components, GraphError, Vertex};

/// A simple connected graph.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
}

impl Graph {
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph, GraphError> {
        let adj = build_simple_adjacency(n, edges)?;
        let components = count_components(&adj);
        if components > 1 {
            return Err(GraphError::Disconnected { components });
        }
        Ok(Graph { adj })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::new();
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

    pub fn distances_from(&self, v: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for &y in &self.adj[x] {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// All-pairs distance matrix by one breadth-first search per vertex.
    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.n()).map(|v| self.distances_from(v)).collect()
    }
}
