//! Simple undirected graphs, cones, and spanning-tree counting/enumeration.
//!
//! Vertex indices are fixed at construction and double as the canonical
//! ordering used for every tie-break in the crate.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite simple undirected graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph from an edge list. Self-loops, repeated edges and
    /// out-of-range endpoints are rejected.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        let mut edge_count = 0;
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::InvalidVertex { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
            edge_count += 1;
        }
        for (u, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "repeated edge {{{}, {}}}",
                    u.min(w[0]),
                    u.max(w[0])
                )));
            }
        }
        Ok(Graph { adjacency, edge_count })
    }

    /// The graph with `n` vertices and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            edge_count: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::InvalidVertex { vertex: v, n: self.n() })
        }
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut components = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut component = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &w in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        component.push(w);
                        queue.push_back(w);
                    }
                }
            }
            component.sort_unstable();
            components.push(component);
        }
        components
    }

    /// True for graphs with exactly one component. The empty graph counts as
    /// connected.
    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced on `vertices`. The `i`-th smallest selected vertex
    /// becomes vertex `i`, so the relative order is preserved.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut selected: Vec<usize> = vertices.to_vec();
        selected.sort_unstable();
        selected.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in selected.iter().enumerate() {
            index[v] = i;
        }
        let mut adjacency = vec![Vec::new(); selected.len()];
        let mut edge_count = 0;
        for (i, &v) in selected.iter().enumerate() {
            for &w in self.neighbors(v) {
                if index[w] != usize::MAX {
                    adjacency[i].push(index[w]);
                    if index[w] > i {
                        edge_count += 1;
                    }
                }
            }
        }
        Graph { adjacency, edge_count }
    }

    /// Subgraph induced on every vertex not in `removed`.
    pub fn without_vertices(&self, removed: &[usize]) -> Graph {
        let mut keep = vec![true; self.n()];
        for &v in removed {
            keep[v] = false;
        }
        let kept: Vec<usize> = (0..self.n()).filter(|&v| keep[v]).collect();
        self.induced(&kept)
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let mut seen = vec![false; self.n()];
        if perm.len() != self.n()
            || perm
                .iter()
                .any(|&p| p >= self.n() || std::mem::replace(&mut seen[p], true))
        {
            return Err(Error::InvalidGraph(format!(
                "{perm:?} is not a permutation of 0..{}",
                self.n()
            )));
        }
        Graph::new(self.n(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }

    /// Adds an apex adjacent to every vertex; the apex gets index `n`.
    pub fn cone(&self) -> ConeGraph {
        let n = self.n();
        let mut adjacency = self.adjacency.clone();
        for list in adjacency.iter_mut() {
            list.push(n);
        }
        adjacency.push((0..n).collect());
        ConeGraph {
            base: self.clone(),
            full: Graph {
                adjacency,
                edge_count: self.edge_count + n,
            },
        }
    }
}

impl fmt::Display for Graph {
    /// Writes the edge-list text format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n(), self.edge_count())?;
        for (u, v) in self.edges() {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

/// A graph together with its cone: one extra apex vertex adjacent to all
/// base vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeGraph {
    base: Graph,
    full: Graph,
}

impl ConeGraph {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// The cone as an ordinary graph on `n + 1` vertices.
    pub fn graph(&self) -> &Graph {
        &self.full
    }

    pub fn apex(&self) -> usize {
        self.base.n()
    }

    /// The cone with the apex edge `{x, v}` deleted.
    pub fn without_apex_edge(&self, v: usize) -> Result<Graph> {
        self.base.check_vertex(v)?;
        let apex = self.apex();
        let mut adjacency = self.full.adjacency.clone();
        adjacency[v].retain(|&w| w != apex);
        adjacency[apex].retain(|&w| w != v);
        Ok(Graph {
            adjacency,
            edge_count: self.full.edge_count - 1,
        })
    }
}

/// An exact spanning-tree count.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeCount(pub BigUint);

impl TreeCount {
    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn into_inner(self) -> BigUint {
        self.0
    }
}

impl fmt::Display for TreeCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl From<u64> for TreeCount {
    fn from(value: u64) -> Self {
        TreeCount(BigUint::from(value))
    }
}

impl PartialEq<u64> for TreeCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

/// Number of spanning trees, as the determinant of the Laplacian with the
/// last row and column removed.
///
/// The graph on zero vertices and `K1` both count 1; disconnected graphs
/// count 0.
pub fn tree_count(g: &Graph) -> TreeCount {
    let n = g.n();
    if n <= 1 {
        return TreeCount(BigUint::one());
    }
    let size = n - 1;
    let mut m = vec![vec![BigInt::zero(); size]; size];
    for (u, row) in m.iter_mut().enumerate() {
        row[u] = BigInt::from(g.degree(u));
        for &w in g.neighbors(u) {
            if w < size {
                row[w] = BigInt::from(-1);
            }
        }
    }
    let det = bareiss_determinant(m);
    match det.sign() {
        Sign::Minus => unreachable!("reduced Laplacian minors are nonnegative"),
        _ => TreeCount(det.magnitude().clone()),
    }
}

/// Number of spanning trees of the cone with the apex edge at `v` removed.
pub fn tree_count_minus_edge(c: &ConeGraph, v: usize) -> Result<TreeCount> {
    Ok(tree_count(&c.without_apex_edge(v)?))
}

/// Fraction-free Gaussian elimination; every intermediate division is exact.
pub(crate) fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut previous = BigInt::one();
    for k in 0..size - 1 {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let value = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &previous;
                m[i][j] = value;
            }
        }
        previous = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// A spanning tree as a sorted list of `(u, v)` pairs with `u < v`.
///
/// For trees of a cone the apex is the largest index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpanningTree {
    edges: Vec<(usize, usize)>,
}

impl SpanningTree {
    /// Normalizes edge orientation and order. No structural checks.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut edges: Vec<(usize, usize)> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        edges.sort_unstable();
        SpanningTree { edges }
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&(u.min(v), u.max(v))).is_ok()
    }

    /// Checks that this is a spanning tree of `g`: `n - 1` edges of `g`
    /// with no cycle.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let n = g.n();
        if self.edges.len() + 1 != n.max(1) {
            return Err(Error::InvalidTree(format!(
                "expected {} edges, found {}",
                n.saturating_sub(1),
                self.edges.len()
            )));
        }
        let mut dsu = DisjointSets::new(n);
        for &(u, v) in &self.edges {
            if !g.has_edge(u, v) {
                return Err(Error::InvalidTree(format!("{{{u}, {v}}} is not an edge")));
            }
            if !dsu.union(u, v) {
                return Err(Error::InvalidTree(format!("edge {{{u}, {v}}} closes a cycle")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub(crate) struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    pub(crate) fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    /// Returns false if `u` and `v` were already joined.
    pub(crate) fn union(&mut self, u: usize, v: usize) -> bool {
        let (a, b) = (self.find(u), self.find(v));
        if a == b {
            return false;
        }
        self.parent[a.max(b)] = a.min(b);
        true
    }
}

/// Streams every spanning tree of a graph exactly once.
///
/// Backtracking over the edge list: each edge is either contracted (kept,
/// when it joins two components) or deleted (when the remaining edges still
/// connect the graph). Disconnected inputs yield nothing.
#[derive(Debug, Clone)]
pub struct SpanningTrees {
    n: usize,
    edges: Vec<(usize, usize)>,
    stack: Vec<Frame>,
}

#[derive(Debug, Clone)]
struct Frame {
    next_edge: usize,
    chosen: Vec<usize>,
    dsu: DisjointSets,
}

impl SpanningTrees {
    pub fn new(g: &Graph) -> Self {
        let n = g.n();
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let stack = if g.is_connected() {
            vec![Frame {
                next_edge: 0,
                chosen: Vec::new(),
                dsu: DisjointSets::new(n),
            }]
        } else {
            Vec::new()
        };
        SpanningTrees { n, edges, stack }
    }

    /// Whether the chosen edges plus all edges from `from` on connect the graph.
    fn still_connected(&self, frame: &Frame, from: usize) -> bool {
        let mut dsu = frame.dsu.clone();
        let mut components = self.n - frame.chosen.len();
        for &(u, v) in &self.edges[from..] {
            if dsu.union(u, v) {
                components -= 1;
                if components == 1 {
                    return true;
                }
            }
        }
        components <= 1
    }
}

impl Iterator for SpanningTrees {
    type Item = SpanningTree;

    fn next(&mut self) -> Option<SpanningTree> {
        while let Some(mut frame) = self.stack.pop() {
            if frame.chosen.len() + 1 >= self.n {
                return Some(SpanningTree::from_edges(frame.chosen.iter().map(|&e| self.edges[e])));
            }
            let e = frame.next_edge;
            if e == self.edges.len() {
                continue;
            }
            let (u, v) = self.edges[e];
            let skip = Frame {
                next_edge: e + 1,
                chosen: frame.chosen.clone(),
                dsu: frame.dsu.clone(),
            };
            if self.still_connected(&skip, e + 1) {
                self.stack.push(skip);
            }
            if frame.dsu.union(u, v) {
                frame.chosen.push(e);
                frame.next_edge = e + 1;
                self.stack.push(frame);
            }
        }
        None
    }
}

/// Every spanning tree of `g`; empty when `g` is disconnected.
pub fn enumerate_spanning_trees(g: &Graph) -> SpanningTrees {
    SpanningTrees::new(g)
}

/// Connected vertex sets of size `size` containing `root`, each sorted and
/// produced exactly once.
pub fn connected_sets_containing(g: &Graph, root: usize, size: usize) -> Result<Vec<Vec<usize>>> {
    g.check_vertex(root)?;
    check_order(g, size)?;
    let mut blocked = vec![false; g.n()];
    let mut out = Vec::new();
    grow_from(g, root, size, &mut blocked, &mut out);
    Ok(out)
}

/// All connected vertex sets of size `size`, each produced once (rooted at
/// its smallest vertex).
pub fn connected_sets(g: &Graph, size: usize) -> Result<Vec<Vec<usize>>> {
    check_order(g, size)?;
    let mut out = Vec::new();
    for root in 0..g.n() {
        let mut blocked: Vec<bool> = (0..g.n()).map(|w| w < root).collect();
        grow_from(g, root, size, &mut blocked, &mut out);
    }
    Ok(out)
}

fn check_order(g: &Graph, size: usize) -> Result<()> {
    if size == 0 || size > g.n() {
        return Err(Error::OutOfRange {
            what: "subtree order",
            value: size,
            min: 1,
            max: g.n(),
        });
    }
    Ok(())
}

fn grow_from(g: &Graph, root: usize, size: usize, blocked: &mut [bool], out: &mut Vec<Vec<usize>>) {
    blocked[root] = true;
    let extension: Vec<usize> = g.neighbors(root).iter().copied().filter(|&w| !blocked[w]).collect();
    let mut set = vec![root];
    grow(g, size, &mut set, extension, blocked, out);
    blocked[root] = false;
}

// `blocked` marks vertices already in the set or excluded on this branch.
fn grow(
    g: &Graph,
    size: usize,
    set: &mut Vec<usize>,
    mut extension: Vec<usize>,
    blocked: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if set.len() == size {
        let mut found = set.clone();
        found.sort_unstable();
        out.push(found);
        return;
    }
    let mut excluded = Vec::new();
    while let Some(w) = extension.pop() {
        let mut next = extension.clone();
        blocked[w] = true;
        for &u in g.neighbors(w) {
            if !blocked[u] && !next.contains(&u) {
                next.push(u);
            }
        }
        set.push(w);
        grow(g, size, set, next, blocked, out);
        set.pop();
        excluded.push(w);
    }
    for w in excluded {
        blocked[w] = false;
    }
}

/// A tree subgraph of some host graph, in host vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subtree {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// Every tree subgraph of `g` with `ell` vertices that contains `v`.
///
/// Trees sharing a vertex set but differing in edges are distinct items.
pub fn enumerate_rooted_subtrees(g: &Graph, v: usize, ell: usize) -> Result<impl Iterator<Item = Subtree> + '_> {
    let sets = connected_sets_containing(g, v, ell)?;
    Ok(sets.into_iter().flat_map(move |vertices| {
        let induced = g.induced(&vertices);
        SpanningTrees::new(&induced).map(move |tree| Subtree {
            edges: tree.edges().iter().map(|&(a, b)| (vertices[a], vertices[b])).collect(),
            vertices: vertices.clone(),
        })
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn k3_pendant() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (1, 2), (0, 3)]).unwrap()
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(Graph::new(2, [(0, 0)]), Err(Error::InvalidGraph(_))));
        assert!(matches!(Graph::new(2, [(0, 1), (1, 0)]), Err(Error::InvalidGraph(_))));
        assert_eq!(Graph::new(2, [(0, 2)]), Err(Error::InvalidVertex { vertex: 2, n: 2 }));
    }

    #[test]
    fn cone_shapes() {
        assert_eq!(complete(1).cone().graph(), &complete(2));
        assert_eq!(complete(2).cone().graph(), &complete(3));
        let c = k3_pendant().cone();
        assert_eq!(c.graph().n(), 5);
        assert_eq!(c.graph().edge_count(), 8);
        assert_eq!(c.graph().degree(c.apex()), 4);
        assert_eq!(c.graph().induced(&[0, 1, 2, 3]), k3_pendant());
    }

    #[test]
    fn tree_count_examples() {
        assert_eq!(tree_count(&complete(3)), 3);
        assert_eq!(tree_count(&k3_pendant().cone().graph().clone()), 40);
        assert_eq!(tree_count(&Graph::new(3, [(0, 1), (1, 2)]).unwrap()), 1);
        assert_eq!(tree_count(&Graph::empty(0)), 1);
        assert_eq!(tree_count(&Graph::empty(1)), 1);
        assert_eq!(tree_count(&Graph::empty(2)), 0);
        // Cayley
        assert_eq!(tree_count(&complete(8)), 8u64.pow(6));
    }

    #[test]
    fn apex_edge_removal() {
        let k1 = complete(1).cone();
        assert_eq!(tree_count_minus_edge(&k1, 0).unwrap(), 0);
        let k2 = complete(2).cone();
        assert_eq!(tree_count_minus_edge(&k2, 0).unwrap(), 1);
        let c = k3_pendant().cone();
        let total: BigUint = (0..4).map(|v| tree_count_minus_edge(&c, v).unwrap().into_inner()).sum();
        assert_eq!(total, BigUint::from(82u32));
        assert_eq!(
            tree_count_minus_edge(&c, 4),
            Err(Error::InvalidVertex { vertex: 4, n: 4 })
        );
    }

    #[test]
    fn spanning_tree_stream() {
        let k3: Vec<_> = enumerate_spanning_trees(&complete(3)).collect();
        assert_eq!(k3.len(), 3);
        assert!(k3.iter().all(|t| t.edges().len() == 2));
        let cycle = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        assert_eq!(enumerate_spanning_trees(&cycle).count(), 4);
        let cone = k3_pendant().cone();
        let trees: Vec<_> = enumerate_spanning_trees(cone.graph()).collect();
        assert_eq!(trees.len(), 40);
        for t in &trees {
            t.validate(cone.graph()).unwrap();
        }
        assert_eq!(enumerate_spanning_trees(&Graph::empty(2)).count(), 0);
        assert_eq!(enumerate_spanning_trees(&Graph::empty(1)).count(), 1);
    }

    #[test]
    fn rooted_subtrees() {
        let g = k3_pendant();
        for v in 0..4 {
            let singles: Vec<_> = enumerate_rooted_subtrees(&g, v, 1).unwrap().collect();
            assert_eq!(
                singles,
                vec![Subtree {
                    vertices: vec![v],
                    edges: vec![]
                }]
            );
        }
        assert_eq!(enumerate_rooted_subtrees(&complete(3), 0, 3).unwrap().count(), 3);
        assert!(enumerate_rooted_subtrees(&g, 0, 0).is_err());
        assert!(enumerate_rooted_subtrees(&g, 0, 5).is_err());
    }

    #[test]
    fn connected_sets_are_unique_and_connected() {
        let g = k3_pendant();
        // Sets of size 2 are the 4 edges; size 3 sets are {0,1,2},{0,1,3},{0,2,3}.
        assert_eq!(connected_sets(&g, 2).unwrap().len(), 4);
        let mut triples = connected_sets(&g, 3).unwrap();
        triples.sort();
        assert_eq!(triples, vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3]]);
        let mut at3 = connected_sets_containing(&g, 3, 3).unwrap();
        at3.sort();
        assert_eq!(at3, vec![vec![0, 1, 3], vec![0, 2, 3]]);
    }

    #[test]
    fn disconnected_cone_count_is_product() {
        // K2 + K1: cones are K3 (3 trees) and K2 (1 tree).
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(tree_count(&g), 0);
        assert_eq!(tree_count(g.cone().graph()), 3);
    }
}
