//! Directed social graph with per-edge activation probabilities.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::exact::Prob;

/// Identifier of a voter node; ids are contiguous in `0..node_count`.
pub type NodeId = u32;

/// A directed influence edge: when `source` activates, it gets one chance
/// to activate `target`, succeeding with probability `prob`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub source: NodeId,
    pub target: NodeId,
    pub prob: Prob,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    NodeOutOfRange { node: NodeId, node_count: u32 },
    SelfLoop { node: NodeId },
    DuplicateEdge { source: NodeId, target: NodeId },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphError::NodeOutOfRange { node, node_count } => {
                write!(f, "node id {node} out of range (node count {node_count})")
            }
            GraphError::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            GraphError::DuplicateEdge { source, target } => {
                write!(f, "duplicate edge ({source}, {target})")
            }
        }
    }
}

/// Immutable directed graph. Edge order is preserved as given, and the
/// out-adjacency of every node lists its successors in insertion order.
#[derive(Debug, Clone)]
pub struct Graph {
    node_count: u32,
    edges: Vec<Edge>,
    out_adj: Vec<Vec<(NodeId, Prob)>>,
}

impl Graph {
    /// Validates and indexes an edge list. Endpoints must be in range,
    /// self-loops and duplicate `(source, target)` pairs are rejected.
    pub fn new(node_count: u32, edges: Vec<Edge>) -> Result<Graph, GraphError> {
        let mut seen = BTreeSet::new();
        let mut out_adj: Vec<Vec<(NodeId, Prob)>> = alloc::vec![Vec::new(); node_count as usize];
        for e in &edges {
            for node in [e.source, e.target] {
                if node >= node_count {
                    return Err(GraphError::NodeOutOfRange { node, node_count });
                }
            }
            if e.source == e.target {
                return Err(GraphError::SelfLoop { node: e.source });
            }
            if !seen.insert((e.source, e.target)) {
                return Err(GraphError::DuplicateEdge {
                    source: e.source,
                    target: e.target,
                });
            }
            out_adj[e.source as usize].push((e.target, e.prob));
        }
        Ok(Graph {
            node_count,
            edges,
            out_adj,
        })
    }

    /// Graph with no edges.
    pub fn empty(node_count: u32) -> Graph {
        Graph::new(node_count, Vec::new()).expect("no edges to validate")
    }

    pub fn node_count(&self) -> u32 {
        self.node_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        0..self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Successors of `u` with edge probabilities, in insertion order.
    pub fn out_neighbors(&self, u: NodeId) -> Result<&[(NodeId, Prob)], GraphError> {
        self.out_adj
            .get(u as usize)
            .map(Vec::as_slice)
            .ok_or(GraphError::NodeOutOfRange {
                node: u,
                node_count: self.node_count,
            })
    }

    /// Number of edges with `0 < p < 1`.
    pub fn stochastic_edge_count(&self) -> usize {
        self.edges.iter().filter(|e| e.prob.is_stochastic()).count()
    }

    /// True when every edge has probability exactly 0 or 1.
    pub fn is_deterministic(&self) -> bool {
        self.stochastic_edge_count() == 0
    }

    pub fn contains_node(&self, u: NodeId) -> bool {
        u < self.node_count
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Prob {
        Prob::from_decimal_str(s).unwrap()
    }

    fn edge(u: NodeId, v: NodeId, prob: &str) -> Edge {
        Edge {
            source: u,
            target: v,
            prob: p(prob),
        }
    }

    #[test]
    fn path_adjacency() {
        let g = Graph::new(3, alloc::vec![edge(0, 1, "0.5"), edge(1, 2, "0.5")]).unwrap();
        assert_eq!(g.out_neighbors(0).unwrap(), &[(1, p("0.5"))]);
        assert_eq!(g.out_neighbors(2).unwrap(), &[]);
        assert!(g.out_neighbors(3).is_err());
    }

    #[test]
    fn star_center_has_three_spokes() {
        let g = Graph::new(
            4,
            alloc::vec![edge(0, 1, "1"), edge(0, 2, "1"), edge(0, 3, "1")],
        )
        .unwrap();
        assert_eq!(g.out_neighbors(0).unwrap().len(), 3);
    }

    #[test]
    fn out_degrees_sum_to_edge_count() {
        let g = Graph::new(
            4,
            alloc::vec![edge(0, 1, "0.5"), edge(0, 2, "1"), edge(2, 3, "0.25")],
        )
        .unwrap();
        let sum: usize = g.nodes().map(|u| g.out_neighbors(u).unwrap().len()).sum();
        assert_eq!(sum, g.edge_count());
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert_eq!(
            Graph::new(2, alloc::vec![edge(0, 2, "1")]),
            Err(GraphError::NodeOutOfRange {
                node: 2,
                node_count: 2
            })
        );
        assert_eq!(
            Graph::new(2, alloc::vec![edge(1, 1, "1")]),
            Err(GraphError::SelfLoop { node: 1 })
        );
        assert_eq!(
            Graph::new(2, alloc::vec![edge(0, 1, "0.5"), edge(0, 1, "0.7")]),
            Err(GraphError::DuplicateEdge {
                source: 0,
                target: 1
            })
        );
    }

    #[test]
    fn stochastic_edge_classification() {
        let g = Graph::new(
            3,
            alloc::vec![edge(0, 1, "1"), edge(0, 2, "0.5"), edge(1, 2, "0")],
        )
        .unwrap();
        assert_eq!(g.stochastic_edge_count(), 1);
        assert!(!g.is_deterministic());
        assert!(Graph::empty(5).is_deterministic());
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges == other.edges
    }
}

impl Eq for Graph {}
