//! Graph and multipartite-graph data model: ingestion, degree
//! computations, and structural transforms.
//!
//! All graph values are immutable after construction; every operation here
//! is a pure function, so concurrent use needs no synchronization.

use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge [{0}, {1}]")]
    DuplicateEdge(usize, usize),
    #[error("edge endpoint {0} is not a declared vertex")]
    DanglingVertex(usize),
    #[error("edge [{0}, {1}] has both endpoints in class {2}")]
    EdgeInsideClass(usize, usize, usize),
    #[error("vertex {0} appears in more than one class")]
    RepeatedVertex(usize),
    #[error("need r >= 2 classes, got {0}")]
    TooFewClasses(usize),
    #[error("class {0} is empty")]
    EmptyClass(usize),
}

/// Dense bitset adjacency, one row of words per vertex. Row intersection is
/// the common-neighbourhood primitive that clique and copy enumeration
/// lean on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjacency {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl Adjacency {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        Adjacency {
            n,
            words,
            bits: vec![0; words * n],
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
        self.bits[v * self.words + u / 64] |= 1 << (u % 64);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Intersect `acc` in place with the neighbourhood of `v`.
    pub fn intersect_row(&self, v: usize, acc: &mut [u64]) {
        for (a, b) in acc.iter_mut().zip(self.row(v)) {
            *a &= b;
        }
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        iter_bits(self.row(v))
    }

    pub fn degree_in(&self, v: usize, set_mask: &[u64]) -> usize {
        self.row(v)
            .iter()
            .zip(set_mask)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }
}

/// Iterate set bit positions of a word slice.
pub fn iter_bits(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                None
            } else {
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            }
        })
    })
}

/// Bit mask over `n` vertices for a vertex subset.
pub fn mask_of(n: usize, verts: impl IntoIterator<Item = usize>) -> Vec<u64> {
    let mut m = vec![0u64; n.div_ceil(64)];
    for v in verts {
        m[v / 64] |= 1 << (v % 64);
    }
    m
}

/// A plain undirected graph on vertices `0..vertex_count`.
#[derive(Debug, Clone)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
    adj: Adjacency,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut adj = Adjacency::new(vertex_count);
        let mut canon = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if u >= vertex_count {
                return Err(GraphError::DanglingVertex(u));
            }
            if v >= vertex_count {
                return Err(GraphError::DanglingVertex(v));
            }
            if adj.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj.add_edge(u, v);
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        Ok(Graph {
            vertex_count,
            edges: canon,
            adj,
        })
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let doc: GraphDoc = serde_json::from_str(text)?;
        Graph::new(doc.n, &doc.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphDoc {
            n: self.vertex_count,
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self) -> &Adjacency {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.has_edge(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Cycle C_k on vertices 0..k.
    pub fn cycle(k: usize) -> Self {
        let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k)).collect();
        Graph::new(k, &edges).expect("cycle is a valid graph")
    }

    /// Complete graph K_k.
    pub fn complete(k: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..k {
            for v in u + 1..k {
                edges.push((u, v));
            }
        }
        Graph::new(k, &edges).expect("complete graph is valid")
    }

    /// Complete multipartite graph with the given class sizes, as a plain
    /// graph (classes laid out consecutively).
    pub fn complete_multipartite(sizes: &[usize]) -> Self {
        let n: usize = sizes.iter().sum();
        let mut class_of = Vec::with_capacity(n);
        for (c, &s) in sizes.iter().enumerate() {
            class_of.extend(std::iter::repeat(c).take(s));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if class_of[u] != class_of[v] {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, &edges).expect("complete multipartite graph is valid")
    }
}

/// An r-partite host graph with explicit vertex classes.
#[derive(Debug, Clone)]
pub struct MultipartiteGraph {
    r: usize,
    classes: Vec<Vec<usize>>,
    class_of: Vec<usize>,
    edges: Vec<(usize, usize)>,
    adj: Adjacency,
}

#[derive(Serialize, Deserialize)]
struct MultipartiteDoc {
    r: usize,
    classes: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl MultipartiteGraph {
    pub fn new(classes: Vec<Vec<usize>>, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let r = classes.len();
        if r < 2 {
            return Err(GraphError::TooFewClasses(r));
        }
        // Normalize arbitrary vertex labels to dense 0-based indices.
        let mut relabel: BTreeMap<usize, usize> = BTreeMap::new();
        for class in &classes {
            for &v in class {
                if relabel.insert(v, 0).is_some() {
                    return Err(GraphError::RepeatedVertex(v));
                }
            }
        }
        for (i, (_, slot)) in relabel.iter_mut().enumerate() {
            *slot = i;
        }
        let n = relabel.len();
        let classes: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| c.iter().map(|v| relabel[v]).collect())
            .collect();
        let mut class_of = vec![0usize; n];
        for (ci, class) in classes.iter().enumerate() {
            for &v in class {
                class_of[v] = ci;
            }
        }
        let mut adj = Adjacency::new(n);
        let mut canon = Vec::with_capacity(edges.len());
        for &(u0, v0) in edges {
            if u0 == v0 {
                return Err(GraphError::SelfLoop(u0));
            }
            let u = *relabel.get(&u0).ok_or(GraphError::DanglingVertex(u0))?;
            let v = *relabel.get(&v0).ok_or(GraphError::DanglingVertex(v0))?;
            if class_of[u] == class_of[v] {
                return Err(GraphError::EdgeInsideClass(u0, v0, class_of[u]));
            }
            if adj.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u0, v0));
            }
            adj.add_edge(u, v);
            canon.push((u.min(v), u.max(v)));
        }
        canon.sort_unstable();
        Ok(MultipartiteGraph {
            r,
            classes,
            class_of,
            edges: canon,
            adj,
        })
    }

    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let doc: MultipartiteDoc = serde_json::from_str(text)?;
        MultipartiteGraph::new(doc.classes, &doc.edges)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&MultipartiteDoc {
            r: self.r,
            classes: self.classes.clone(),
            edges: self.edges.clone(),
        })
        .expect("graph serialization cannot fail")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_of(&self, v: usize) -> usize {
        self.class_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn adj(&self) -> &Adjacency {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.has_edge(u, v)
    }

    /// True iff all classes have the same size.
    pub fn balanced(&self) -> bool {
        self.classes.iter().all(|c| c.len() == self.classes[0].len())
    }

    /// Forget the partition; same vertices and edges.
    pub fn as_plain(&self) -> Graph {
        Graph::new(self.vertex_count(), &self.edges).expect("already validated")
    }

    /// Complete r-partite graph on the given class sizes.
    pub fn complete(sizes: &[usize]) -> Self {
        let mut classes = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for &s in sizes {
            classes.push((next..next + s).collect::<Vec<_>>());
            next += s;
        }
        let mut edges = Vec::new();
        for (ci, class) in classes.iter().enumerate() {
            for other in classes.iter().skip(ci + 1) {
                for &u in class {
                    for &v in other {
                        edges.push((u, v));
                    }
                }
            }
        }
        MultipartiteGraph::new(classes, &edges).expect("complete multipartite is valid")
    }
}

/// delta*(G): the minimum over ordered class pairs (i, j), i != j, and
/// vertices v in V_i of the number of neighbours v has in V_j.
pub fn min_multipartite_degree(g: &MultipartiteGraph) -> Result<usize, GraphError> {
    for (ci, class) in g.classes().iter().enumerate() {
        if class.is_empty() {
            return Err(GraphError::EmptyClass(ci));
        }
    }
    let n = g.vertex_count();
    let masks: Vec<Vec<u64>> = g
        .classes()
        .iter()
        .map(|c| mask_of(n, c.iter().copied()))
        .collect();
    let mut best = usize::MAX;
    for (ci, class) in g.classes().iter().enumerate() {
        for &v in class {
            for (cj, m) in masks.iter().enumerate() {
                if cj != ci {
                    best = best.min(g.adj().degree_in(v, m));
                }
            }
        }
    }
    Ok(best)
}

/// m-fold blow-up: each vertex becomes m clones in the same class, each
/// edge the complete bipartite graph between clone sets.
pub fn blow_up(g: &MultipartiteGraph, m: usize) -> MultipartiteGraph {
    assert!(m >= 1, "blow-up factor must be positive");
    let clone = |v: usize, k: usize| v * m + k;
    let classes: Vec<Vec<usize>> = g
        .classes()
        .iter()
        .map(|c| {
            c.iter()
                .flat_map(|&v| (0..m).map(move |k| clone(v, k)))
                .collect()
        })
        .collect();
    let mut edges = Vec::with_capacity(g.edges().len() * m * m);
    for &(u, v) in g.edges() {
        for ku in 0..m {
            for kv in 0..m {
                edges.push((clone(u, ku), clone(v, kv)));
            }
        }
    }
    MultipartiteGraph::new(classes, &edges).expect("blow-up of a valid graph is valid")
}

/// Block structure attached to a Construction-style host: an r x r grid of
/// blocks where columns are the partition classes and rows are independent
/// sets; two vertices are adjacent iff they differ in both row and column.
#[derive(Debug, Clone)]
pub struct BlockStructure {
    r: usize,
    /// block_sizes[i][j] = n_ij, the size of the block in column i, row j.
    block_sizes: Vec<Vec<usize>>,
    /// vertex -> (column, row)
    membership: Vec<(usize, usize)>,
}

impl BlockStructure {
    pub fn new(block_sizes: Vec<Vec<usize>>, membership: Vec<(usize, usize)>) -> Self {
        BlockStructure {
            r: block_sizes.len(),
            block_sizes,
            membership,
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn block_sizes(&self) -> &[Vec<usize>] {
        &self.block_sizes
    }

    pub fn membership(&self) -> &[(usize, usize)] {
        &self.membership
    }

    pub fn row_of(&self, v: usize) -> usize {
        self.membership[v].1
    }

    /// |V^j| for each row j.
    pub fn row_sizes(&self) -> Vec<usize> {
        let mut rows = vec![0usize; self.r];
        for col in &self.block_sizes {
            for (j, &s) in col.iter().enumerate() {
                rows[j] += s;
            }
        }
        rows
    }
}
