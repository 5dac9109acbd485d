//! Burnside graphs and their strongly connected components.
//!
//! The Burnside graph of a matrix set has one node per row index and an
//! edge `(i, j)` whenever some matrix in the set has a nonzero entry at
//! position `(i, j)`, `i != j`. Self-loops are excluded. Nodes are
//! zero-based in the library; the JSON and DOT serializations are
//! one-based.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use serde::Serialize;
use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideGraph {
    node_count: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BurnsideGraph {
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= node_count {
                return Err(Error::GraphNodeOutOfRange(i));
            }
            if j >= node_count {
                return Err(Error::GraphNodeOutOfRange(j));
            }
            if i == j {
                return Err(Error::SelfLoop(i));
            }
            set.insert((i, j));
        }
        Ok(BurnsideGraph {
            node_count,
            edges: set,
        })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.edges.contains(&(from, to))
    }

    pub fn is_strongly_connected(&self) -> bool {
        scc(self).components.len() == 1
    }

    fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.node_count];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }

    /// 0/1 adjacency matrix with zero diagonal.
    pub fn adjacency_matrix(&self) -> Matrix {
        let mut m = Matrix::zeros(self.node_count, self.node_count);
        for &(i, j) in &self.edges {
            m.set(i, j, crate::scalar::Scalar::one());
        }
        m
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            nodes: self.node_count,
            edges: self.edges.iter().map(|&(i, j)| [i + 1, j + 1]).collect(),
        }
    }
}

/// Wire form of a graph, one-based, edges sorted.
#[derive(Serialize)]
pub struct GraphJson {
    pub nodes: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Builds the Burnside graph of a matrix set: the union over all matrices
/// of the off-diagonal nonzero positions.
pub fn build_graph(matrices: &[Matrix]) -> Result<BurnsideGraph> {
    let Some(first) = matrices.first() else {
        return Err(Error::EmptyMatrixSet);
    };
    if !first.is_square() {
        return Err(Error::NotSquare {
            rows: first.rows(),
            cols: first.cols(),
        });
    }
    let n = first.rows();
    let mut edges = BTreeSet::new();
    for m in matrices {
        if m.rows() != n || m.cols() != n {
            return Err(Error::SizeMismatch);
        }
        for i in 0..n {
            for j in 0..n {
                if i != j && !m.get(i, j).is_zero() {
                    edges.insert((i, j));
                }
            }
        }
    }
    Ok(BurnsideGraph {
        node_count: n,
        edges,
    })
}

/// A partition into strongly connected components together with the acyclic
/// condensation. Components are listed in a topological order of the
/// condensation (sources first), ties broken by smallest contained node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
    pub condensation_edges: BTreeSet<(usize, usize)>,
}

impl SccDecomposition {
    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }

    /// Concatenation of components: `perm[k]` is the original node placed
    /// at position `k` of the Burnside form.
    pub fn permutation(&self) -> Vec<usize> {
        self.components.iter().flatten().copied().collect()
    }

    pub fn to_json(&self) -> SccJson {
        SccJson {
            strongly_connected: self.is_strongly_connected(),
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|&v| v + 1).collect())
                .collect(),
            condensation_edges: self
                .condensation_edges
                .iter()
                .map(|&(i, j)| [i + 1, j + 1])
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct SccJson {
    pub strongly_connected: bool,
    pub components: Vec<Vec<usize>>,
    pub condensation_edges: Vec<[usize; 2]>,
}

struct TarjanState {
    index: usize,
    stack: Vec<usize>,
    on_stack: Vec<bool>,
    idx: Vec<Option<usize>>,
    low: Vec<usize>,
    comps: Vec<Vec<usize>>,
}

fn strongconnect(v: usize, adj: &[Vec<usize>], state: &mut TarjanState) {
    state.idx[v] = Some(state.index);
    state.low[v] = state.index;
    state.index += 1;
    state.stack.push(v);
    state.on_stack[v] = true;

    for &w in &adj[v] {
        if state.idx[w].is_none() {
            strongconnect(w, adj, state);
            state.low[v] = state.low[v].min(state.low[w]);
        } else if state.on_stack[w] {
            state.low[v] = state.low[v].min(state.idx[w].unwrap());
        }
    }

    if state.low[v] == state.idx[v].unwrap() {
        let mut comp = Vec::new();
        loop {
            let w = state.stack.pop().expect("stack underflow");
            state.on_stack[w] = false;
            comp.push(w);
            if w == v {
                break;
            }
        }
        comp.sort_unstable();
        state.comps.push(comp);
    }
}

/// Tarjan decomposition followed by a deterministic Kahn ordering of the
/// condensation.
pub fn scc(g: &BurnsideGraph) -> SccDecomposition {
    let n = g.node_count;
    let adj = g.adjacency();
    let mut state = TarjanState {
        index: 0,
        stack: Vec::new(),
        on_stack: vec![false; n],
        idx: vec![None; n],
        low: vec![0; n],
        comps: Vec::new(),
    };
    for v in 0..n {
        if state.idx[v].is_none() {
            strongconnect(v, &adj, &mut state);
        }
    }
    let comps = state.comps;

    let mut comp_of = vec![usize::MAX; n];
    for (cid, comp) in comps.iter().enumerate() {
        for &v in comp {
            comp_of[v] = cid;
        }
    }
    let mut cond_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(i, j) in &g.edges {
        if comp_of[i] != comp_of[j] {
            cond_edges.insert((comp_of[i], comp_of[j]));
        }
    }

    // Kahn ordering; among the ready components pick the one containing
    // the smallest node index.
    let mut indegree = vec![0usize; comps.len()];
    for &(_, to) in &cond_edges {
        indegree[to] += 1;
    }
    let mut heap: BinaryHeap<Reverse<(usize, usize)>> = BinaryHeap::new();
    for (cid, comp) in comps.iter().enumerate() {
        if indegree[cid] == 0 {
            heap.push(Reverse((comp[0], cid)));
        }
    }
    let mut order = Vec::with_capacity(comps.len());
    let mut position = vec![usize::MAX; comps.len()];
    while let Some(Reverse((_, cid))) = heap.pop() {
        position[cid] = order.len();
        order.push(cid);
        for &(from, to) in &cond_edges {
            if from == cid {
                indegree[to] -= 1;
                if indegree[to] == 0 {
                    heap.push(Reverse((comps[to][0], to)));
                }
            }
        }
    }
    debug_assert_eq!(order.len(), comps.len());

    SccDecomposition {
        components: order.iter().map(|&cid| comps[cid].clone()).collect(),
        condensation_edges: cond_edges
            .iter()
            .map(|&(from, to)| (position[from], position[to]))
            .collect(),
    }
}

/// The obstruction certificate: when the Burnside graph is not strongly
/// connected, the generated algebra cannot be full, and the permutation to
/// Burnside form exhibits a common invariant coordinate subspace spanned by
/// the first component's basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionVerdict {
    pub strongly_connected: bool,
    /// A component with no inbound edge (the first component in Burnside
    /// form); absent when strongly connected.
    pub invariant_basis_span: Option<Vec<usize>>,
    /// `permutation[k]` is the original node placed at position `k`.
    pub permutation: Vec<usize>,
    /// Set when every input is hermitian and the graph is not strongly
    /// connected: the permutation then block-diagonalizes the set.
    pub hermitian_block_diagonal: bool,
}

impl ObstructionVerdict {
    pub fn to_json(&self) -> ObstructionJson {
        ObstructionJson {
            strongly_connected: self.strongly_connected,
            invariant_basis_span: self
                .invariant_basis_span
                .as_ref()
                .map(|c| c.iter().map(|&v| v + 1).collect()),
            permutation: self.permutation.iter().map(|&v| v + 1).collect(),
            hermitian_block_diagonal: self.hermitian_block_diagonal,
        }
    }
}

#[derive(Serialize)]
pub struct ObstructionJson {
    pub strongly_connected: bool,
    pub invariant_basis_span: Option<Vec<usize>>,
    pub permutation: Vec<usize>,
    pub hermitian_block_diagonal: bool,
}

pub fn obstruction_verdict(matrices: &[Matrix]) -> Result<ObstructionVerdict> {
    let g = build_graph(matrices)?;
    let decomposition = scc(&g);
    let strongly_connected = decomposition.is_strongly_connected();
    let permutation = decomposition.permutation();
    let invariant_basis_span = if strongly_connected {
        None
    } else {
        // The first component in topological order has no inbound edge,
        // so the span of its basis vectors is invariant under every input.
        Some(decomposition.components[0].clone())
    };
    let hermitian_block_diagonal = !strongly_connected && matrices.iter().all(Matrix::is_hermitian);
    Ok(ObstructionVerdict {
        strongly_connected,
        invariant_basis_span,
        permutation,
        hermitian_block_diagonal,
    })
}

/// Deterministic DOT serialization: nodes `1..n`, then edges sorted
/// lexicographically, one per line.
pub fn to_dot(g: &BurnsideGraph) -> String {
    let mut out = String::from("digraph burnside {\n");
    for v in 1..=g.node_count {
        out.push_str(&format!("{v};\n"));
    }
    for (i, j) in g.edges() {
        out.push_str(&format!("{} -> {};\n", i + 1, j + 1));
    }
    out.push_str("}\n");
    out
}
