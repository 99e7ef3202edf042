//! Simple undirected graphs and the structural queries used throughout the
//! crate: connectivity, cycles, paths, minimal cuts, cut-vertices and edge
//! contraction.
//!
//! Node sets are represented as `u64` bit masks, which caps graphs at
//! [`MAX_NODES`] nodes. All enumerators are exhaustive and exponential in the
//! worst case; they are meant for graphs with roughly a dozen nodes.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported node count.
pub const MAX_NODES: usize = 64;

pub type NodeId = usize;

/// A set of nodes, bit `i` standing for node `i`.
pub type NodeMask = u64;

#[inline]
pub(crate) fn bit(n: NodeId) -> NodeMask {
    1u64 << n
}

/// Iterates the node ids contained in a mask, in ascending order.
pub fn mask_nodes(mut mask: NodeMask) -> impl Iterator<Item = NodeId> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let n = mask.trailing_zeros() as NodeId;
            mask &= mask - 1;
            Some(n)
        }
    })
}

pub fn nodes_to_mask<I: IntoIterator<Item = NodeId>>(nodes: I) -> NodeMask {
    nodes.into_iter().fold(0, |m, n| m | bit(n))
}

/// An unordered pair of distinct nodes, stored as `(min, max)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "(NodeId, NodeId)", into = "(NodeId, NodeId)")]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    /// Builds the edge `{a, b}` in either orientation.
    pub fn new(a: NodeId, b: NodeId) -> Result<Self> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => Ok(Edge { u: a, v: b }),
            std::cmp::Ordering::Greater => Ok(Edge { u: b, v: a }),
            std::cmp::Ordering::Equal => Err(Error::SelfLoop(a, b)),
        }
    }

    /// Panicking constructor for literals in fixtures and tests.
    pub fn of(a: NodeId, b: NodeId) -> Self {
        Self::new(a, b).expect("edge endpoints must differ")
    }

    pub fn u(&self) -> NodeId {
        self.u
    }

    pub fn v(&self) -> NodeId {
        self.v
    }

    pub fn contains(&self, n: NodeId) -> bool {
        self.u == n || self.v == n
    }

    pub fn mask(&self) -> NodeMask {
        bit(self.u) | bit(self.v)
    }

    /// True iff both endpoints lie in `mask`.
    pub fn inside(&self, mask: NodeMask) -> bool {
        self.mask() & !mask == 0
    }

    /// True iff exactly one endpoint lies in `mask`.
    pub fn crosses(&self, mask: NodeMask) -> bool {
        (mask & bit(self.u) != 0) != (mask & bit(self.v) != 0)
    }
}

impl TryFrom<(NodeId, NodeId)> for Edge {
    type Error = Error;

    fn try_from((a, b): (NodeId, NodeId)) -> Result<Self> {
        Edge::new(a, b)
    }
}

impl From<Edge> for (NodeId, NodeId) {
    fn from(e: Edge) -> Self {
        (e.u, e.v)
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.u, self.v)
    }
}

impl std::str::FromStr for Edge {
    type Err = Error;

    /// Parses `"u,v"` (also accepts `"u-v"`).
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.split([',', '-']).map(str::trim);
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => return Err(Error::Parse(format!("expected an edge \"u,v\", got {s:?}"))),
        };
        let parse = |t: &str| {
            t.parse::<NodeId>()
                .map_err(|_| Error::Parse(format!("bad node id {t:?} in edge {s:?}")))
        };
        Edge::new(parse(a)?, parse(b)?)
    }
}

/// A simple path given by its node sequence; `edges[i]` joins
/// `nodes[i]` and `nodes[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<Edge>,
}

impl Path {
    fn from_nodes(nodes: Vec<NodeId>) -> Self {
        let edges = nodes.windows(2).map(|w| Edge::of(w[0], w[1])).collect();
        Path { nodes, edges }
    }

    pub fn node_mask(&self) -> NodeMask {
        nodes_to_mask(self.nodes.iter().copied())
    }
}

/// A simple cycle: `nodes` in traversal order starting at the smallest node,
/// `edges` in canonical (sorted) order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cycle {
    pub nodes: Vec<NodeId>,
    pub edges: Vec<Edge>,
}

impl Cycle {
    fn from_nodes(nodes: Vec<NodeId>) -> Self {
        let k = nodes.len();
        let mut edges: Vec<Edge> = (0..k)
            .map(|i| Edge::of(nodes[i], nodes[(i + 1) % k]))
            .collect();
        edges.sort();
        Cycle { nodes, edges }
    }

    pub fn node_mask(&self) -> NodeMask {
        nodes_to_mask(self.nodes.iter().copied())
    }
}

/// Finite simple undirected graph with edges kept in canonical
/// (lexicographic) order.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<NodeMask>,
    index: Vec<Option<usize>>,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("node_count", &self.node_count)
            .field("edges", &self.edges)
            .finish()
    }
}

impl Graph {
    /// Builds a graph from endpoint pairs in any orientation. Rejects loops,
    /// duplicates and out-of-range endpoints, naming the offending pair.
    pub fn new<I>(node_count: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        if node_count > MAX_NODES {
            return Err(Error::TooManyNodes(node_count));
        }
        let mut adjacency = vec![0; node_count];
        let mut edges = Vec::new();
        for (a, b) in pairs {
            if a >= node_count || b >= node_count {
                return Err(Error::NodeOutOfRange(a, b, node_count));
            }
            let e = Edge::new(a, b)?;
            if adjacency[e.u] & bit(e.v) != 0 {
                return Err(Error::DuplicateEdge(e.u, e.v));
            }
            adjacency[e.u] |= bit(e.v);
            adjacency[e.v] |= bit(e.u);
            edges.push(e);
        }
        edges.sort();
        let mut index = vec![None; node_count * node_count];
        for (i, e) in edges.iter().enumerate() {
            index[e.u * node_count + e.v] = Some(i);
            index[e.v * node_count + e.u] = Some(i);
        }
        Ok(Graph {
            node_count,
            edges,
            adjacency,
            index,
        })
    }

    pub fn from_edges<'a, I: IntoIterator<Item = &'a Edge>>(
        node_count: usize,
        edges: I,
    ) -> Result<Self> {
        Self::new(node_count, edges.into_iter().map(|e| (e.u, e.v)))
    }

    pub fn empty(node_count: usize) -> Result<Self> {
        Self::new(node_count, std::iter::empty())
    }

    pub fn complete(n: usize) -> Result<Self> {
        Self::new(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))))
    }

    pub fn path(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i)))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::Parse(format!(
                "a cycle needs at least 3 nodes, got {n}"
            )));
        }
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n)))
    }

    /// `rows x cols` grid, node `r * cols + c`.
    pub fn grid(rows: usize, cols: usize) -> Result<Self> {
        let id = |r: usize, c: usize| r * cols + c;
        let mut pairs = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if c + 1 < cols {
                    pairs.push((id(r, c), id(r, c + 1)));
                }
                if r + 1 < rows {
                    pairs.push((id(r, c), id(r + 1, c)));
                }
            }
        }
        Self::new(rows * cols, pairs)
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn all_nodes(&self) -> NodeMask {
        if self.node_count == 64 {
            u64::MAX
        } else {
            (1u64 << self.node_count) - 1
        }
    }

    pub fn edge_index(&self, e: Edge) -> Option<usize> {
        if e.v >= self.node_count {
            return None;
        }
        self.index[e.u * self.node_count + e.v]
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        a < self.node_count && b < self.node_count && self.adjacency[a] & bit(b) != 0
    }

    pub fn contains_edge(&self, e: Edge) -> bool {
        self.has_edge(e.u, e.v)
    }

    pub fn neighbors(&self, n: NodeId) -> NodeMask {
        self.adjacency[n]
    }

    fn check_node(&self, n: NodeId) -> Result<()> {
        if n >= self.node_count {
            Err(Error::NodeOutOfRange(n, n, self.node_count))
        } else {
            Ok(())
        }
    }

    fn check_pair(&self, v: NodeId, w: NodeId) -> Result<()> {
        self.check_node(v)?;
        self.check_node(w)?;
        if v == w {
            return Err(Error::SameEndpoints(v));
        }
        Ok(())
    }

    /// Nodes reachable from `start` using only nodes in `allowed`.
    /// `start` itself must be allowed, otherwise the result is empty.
    pub fn reach_within(&self, start: NodeId, allowed: NodeMask) -> NodeMask {
        if allowed & bit(start) == 0 {
            return 0;
        }
        let mut seen = bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0;
            for n in mask_nodes(frontier) {
                next |= self.adjacency[n];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen
    }

    /// True iff the subgraph induced by `mask` is connected (the empty set
    /// counts as connected).
    pub fn is_connected_within(&self, mask: NodeMask) -> bool {
        if mask == 0 {
            return true;
        }
        self.reach_within(mask.trailing_zeros() as NodeId, mask) == mask
    }

    /// True iff every pair of nodes is joined by a path.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.all_nodes())
    }

    /// Node sets of the connected components of `(V, {edges with keep(i)})`,
    /// where `i` is the canonical edge index. Blocks are sorted by smallest
    /// member.
    pub fn components_by<F: Fn(usize) -> bool>(&self, keep: F) -> Vec<NodeMask> {
        let mut parent: Vec<NodeId> = (0..self.node_count).collect();
        fn find(parent: &mut [NodeId], mut x: NodeId) -> NodeId {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for (i, e) in self.edges.iter().enumerate() {
            if keep(i) {
                let (a, b) = (find(&mut parent, e.u), find(&mut parent, e.v));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut blocks: Vec<NodeMask> = Vec::new();
        let mut slot = vec![usize::MAX; self.node_count];
        for n in 0..self.node_count {
            let r = find(&mut parent, n);
            if slot[r] == usize::MAX {
                slot[r] = blocks.len();
                blocks.push(0);
            }
            blocks[slot[r]] |= bit(n);
        }
        blocks
    }

    /// Calls `visit` once for every connected subset of `allowed` that
    /// contains `root` (which must be in `allowed`).
    pub fn for_each_connected_subset<F: FnMut(NodeMask)>(
        &self,
        root: NodeId,
        allowed: NodeMask,
        visit: &mut F,
    ) {
        if allowed & bit(root) == 0 {
            return;
        }
        let start = bit(root);
        self.grow(
            start,
            self.adjacency[root] & allowed & !start,
            0,
            allowed,
            visit,
        );
    }

    // Each call reports `set`, then branches on the candidates in ascending
    // order; candidates tried in earlier branches are excluded from later
    // ones so every connected superset is produced exactly once.
    fn grow<F: FnMut(NodeMask)>(
        &self,
        set: NodeMask,
        cand: NodeMask,
        excl: NodeMask,
        allowed: NodeMask,
        visit: &mut F,
    ) {
        visit(set);
        let mut cand = cand;
        let mut excl = excl;
        while cand != 0 {
            let b = cand & cand.wrapping_neg();
            cand &= !b;
            let x = b.trailing_zeros() as NodeId;
            let next = set | b;
            let fresh = self.adjacency[x] & allowed & !next & !excl & !cand;
            self.grow(next, cand | fresh, excl, allowed, visit);
            excl |= b;
        }
    }

    /// All nonempty connected node subsets of the graph.
    pub fn connected_subsets(&self) -> Vec<NodeMask> {
        let mut out = Vec::new();
        let all = self.all_nodes();
        for r in 0..self.node_count {
            let allowed = all & !(bit(r) - 1);
            self.for_each_connected_subset(r, allowed, &mut |s| out.push(s));
        }
        out.sort_unstable();
        out
    }

    /// Calls `visit` with the blocks of every decomposition of the graph
    /// (partition of the nodes into connected blocks). Blocks are listed in
    /// order of their smallest member.
    pub fn for_each_decomposition<F: FnMut(&[NodeMask])>(&self, visit: &mut F) {
        let mut blocks = Vec::new();
        self.decompose_rest(self.all_nodes(), &mut blocks, visit);
    }

    fn decompose_rest<F: FnMut(&[NodeMask])>(
        &self,
        rest: NodeMask,
        blocks: &mut Vec<NodeMask>,
        visit: &mut F,
    ) {
        if rest == 0 {
            visit(blocks);
            return;
        }
        let root = rest.trailing_zeros() as NodeId;
        let mut options = Vec::new();
        self.for_each_connected_subset(root, rest, &mut |s| options.push(s));
        for s in options {
            blocks.push(s);
            self.decompose_rest(rest & !s, blocks, visit);
            blocks.pop();
        }
    }

    /// Edge sets of all chordless cycles, each exactly once, ordered by
    /// discovery (smallest node first, then lexicographic extension).
    pub fn enumerate_chordless_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for s in 0..self.node_count {
            let higher = !(bit(s) | (bit(s) - 1));
            for p1 in mask_nodes(self.adjacency[s] & higher) {
                let mut path = vec![s, p1];
                self.chordless_extend(&mut path, bit(s) | bit(p1), higher, &mut out);
            }
        }
        out
    }

    fn chordless_extend(
        &self,
        path: &mut Vec<NodeId>,
        on_path: NodeMask,
        higher: NodeMask,
        out: &mut Vec<Cycle>,
    ) {
        let s = path[0];
        let last = *path.last().unwrap();
        let inner = on_path & !bit(s) & !bit(last);
        for x in mask_nodes(self.adjacency[last] & higher & !on_path) {
            if self.adjacency[x] & inner != 0 {
                continue;
            }
            if self.adjacency[x] & bit(s) != 0 {
                if path[1] < x {
                    let mut nodes = path.clone();
                    nodes.push(x);
                    out.push(Cycle::from_nodes(nodes));
                }
                continue;
            }
            path.push(x);
            self.chordless_extend(path, on_path | bit(x), higher, out);
            path.pop();
        }
    }

    /// All simple cycles (with or without chords), each exactly once.
    pub fn enumerate_cycles(&self) -> Vec<Cycle> {
        let mut out = Vec::new();
        for s in 0..self.node_count {
            let higher = !(bit(s) | (bit(s) - 1));
            for p1 in mask_nodes(self.adjacency[s] & higher) {
                let mut path = vec![s, p1];
                self.cycle_extend(&mut path, bit(s) | bit(p1), higher, &mut out);
            }
        }
        out
    }

    fn cycle_extend(
        &self,
        path: &mut Vec<NodeId>,
        on_path: NodeMask,
        higher: NodeMask,
        out: &mut Vec<Cycle>,
    ) {
        let s = path[0];
        let last = *path.last().unwrap();
        for x in mask_nodes(self.adjacency[last] & higher & !on_path) {
            if self.adjacency[x] & bit(s) != 0 && path[1] < x {
                let mut nodes = path.clone();
                nodes.push(x);
                out.push(Cycle::from_nodes(nodes));
            }
            path.push(x);
            self.cycle_extend(path, on_path | bit(x), higher, out);
            path.pop();
        }
    }

    /// True iff no edge of this graph joins two nodes of `cycle` other than
    /// the cycle's own edges.
    pub fn is_chordless(&self, cycle_nodes: NodeMask, cycle_edges: &[Edge]) -> bool {
        let inside = self.edges.iter().filter(|e| e.inside(cycle_nodes)).count();
        inside == cycle_edges.len() && cycle_edges.iter().all(|e| self.contains_edge(*e))
    }

    /// All simple `v`–`w` paths in lexicographic order of node sequences.
    pub fn enumerate_vw_paths(&self, v: NodeId, w: NodeId) -> Result<Vec<Path>> {
        self.check_pair(v, w)?;
        let mut out = Vec::new();
        let mut stack = vec![v];
        self.paths_from(w, &mut stack, bit(v), &mut out);
        Ok(out)
    }

    fn paths_from(
        &self,
        target: NodeId,
        stack: &mut Vec<NodeId>,
        on_path: NodeMask,
        out: &mut Vec<Path>,
    ) {
        let last = *stack.last().unwrap();
        for x in mask_nodes(self.adjacency[last] & !on_path) {
            stack.push(x);
            if x == target {
                out.push(Path::from_nodes(stack.clone()));
            } else {
                self.paths_from(target, stack, on_path | bit(x), out);
            }
            stack.pop();
        }
    }

    /// All inclusion-minimal `v`–`w` cuts, as sorted edge lists in
    /// lexicographic order. A cut is the set of edges crossing a bipartition
    /// `(A, V \ A)` with `v ∈ A`, `w ∉ A` and both sides connected.
    pub fn enumerate_vw_cuts(&self, v: NodeId, w: NodeId) -> Result<Vec<Vec<Edge>>> {
        self.check_pair(v, w)?;
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let all = self.all_nodes();
        let mut sides = Vec::new();
        self.for_each_connected_subset(v, all & !bit(w), &mut |a| {
            if self.is_connected_within(all & !a) {
                sides.push(a);
            }
        });
        let mut cuts: Vec<Vec<Edge>> = sides.into_iter().map(|a| self.crossing_edges(a)).collect();
        cuts.sort();
        Ok(cuts)
    }

    /// Edges with exactly one endpoint in `side`, in canonical order.
    pub fn crossing_edges(&self, side: NodeMask) -> Vec<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| e.crosses(side))
            .collect()
    }

    /// Nodes lying on every `v`–`w` path, including `v` and `w`.
    pub fn cut_vertices(&self, v: NodeId, w: NodeId) -> Result<NodeMask> {
        self.check_pair(v, w)?;
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let all = self.all_nodes();
        let mut out = bit(v) | bit(w);
        for u in 0..self.node_count {
            if u != v && u != w && self.reach_within(v, all & !bit(u)) & bit(w) == 0 {
                out |= bit(u);
            }
        }
        Ok(out)
    }

    /// BFS distances from `source`; `None` for unreachable nodes.
    pub fn distances_from(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(n) = queue.pop_front() {
            let d = dist[n].unwrap();
            for m in mask_nodes(self.adjacency[n]) {
                if dist[m].is_none() {
                    dist[m] = Some(d + 1);
                    queue.push_back(m);
                }
            }
        }
        dist
    }

    pub fn distance(&self, a: NodeId, b: NodeId) -> Option<usize> {
        self.distances_from(a)[b]
    }

    /// The lexicographically smallest among the shortest `v`–`w` paths.
    pub fn shortest_path(&self, v: NodeId, w: NodeId) -> Option<Path> {
        let dist = self.distances_from(w);
        let mut d = dist[v]?;
        let mut nodes = vec![v];
        let mut cur = v;
        while d > 0 {
            cur = mask_nodes(self.adjacency[cur])
                .find(|&m| dist[m] == Some(d - 1))
                .expect("BFS layers are consistent");
            nodes.push(cur);
            d -= 1;
        }
        Some(Path::from_nodes(nodes))
    }

    /// Contracts `e`: its endpoints merge into the smaller id, higher ids
    /// shift down by one, parallel edges collapse and the loop disappears.
    /// Returns the contracted graph and the old-to-new node map.
    pub fn contract_edge(&self, e: Edge) -> Result<(Graph, Vec<NodeId>)> {
        if !self.contains_edge(e) {
            return Err(Error::EdgeNotFound(e));
        }
        let map = contraction_map(self.node_count, e);
        let g = self.relabel(&map, self.node_count - 1)?;
        Ok((g, map))
    }

    /// Image of the graph under a node map, dropping loops and duplicates.
    pub fn relabel(&self, map: &[NodeId], node_count: usize) -> Result<Graph> {
        let mut pairs: Vec<(NodeId, NodeId)> = self
            .edges
            .iter()
            .filter(|e| map[e.u] != map[e.v])
            .map(|e| {
                let (a, b) = (map[e.u], map[e.v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        Graph::new(node_count, pairs)
    }
}

/// Node map that merges the endpoints of `e` into `e.u()`.
pub fn contraction_map(node_count: usize, e: Edge) -> Vec<NodeId> {
    (0..node_count)
        .map(|n| match n.cmp(&e.v) {
            std::cmp::Ordering::Less => n,
            std::cmp::Ordering::Equal => e.u,
            std::cmp::Ordering::Greater => n - 1,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k(n: usize) -> Graph {
        Graph::complete(n).unwrap()
    }

    #[test]
    fn connectivity_basics() {
        assert!(Graph::path(3).unwrap().is_connected());
        assert!(!Graph::empty(2).unwrap().is_connected());
        assert!(Graph::new(3, [(0, 1), (1, 2)]).unwrap().is_connected());
        assert!(Graph::empty(0).unwrap().is_connected());
        assert!(Graph::empty(1).unwrap().is_connected());
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(3, [(1, 1)]), Err(Error::SelfLoop(1, 1)));
        assert_eq!(
            Graph::new(3, [(0, 1), (1, 0)]),
            Err(Error::DuplicateEdge(0, 1))
        );
        assert_eq!(Graph::new(3, [(0, 3)]), Err(Error::NodeOutOfRange(0, 3, 3)));
        assert!(matches!(Graph::empty(65), Err(Error::TooManyNodes(65))));
    }

    #[test]
    fn edges_are_canonical() {
        let g = Graph::new(3, [(2, 1), (1, 0), (2, 0)]).unwrap();
        assert_eq!(g.edges(), &[Edge::of(0, 1), Edge::of(0, 2), Edge::of(1, 2)]);
        assert_eq!(g.edge_index(Edge::of(1, 2)), Some(2));
    }

    #[test]
    fn chordless_cycles_small() {
        assert_eq!(k(3).enumerate_chordless_cycles().len(), 1);
        let c4 = Graph::cycle(4).unwrap();
        let cyc = c4.enumerate_chordless_cycles();
        assert_eq!(cyc.len(), 1);
        assert_eq!(cyc[0].edges.len(), 4);
        let k4 = k(4).enumerate_chordless_cycles();
        assert_eq!(k4.len(), 4);
        assert!(k4.iter().all(|c| c.edges.len() == 3));
        assert!(Graph::empty(1)
            .unwrap()
            .enumerate_chordless_cycles()
            .is_empty());
    }

    #[test]
    fn all_cycles_of_k4() {
        // 4 triangles + 3 Hamiltonian 4-cycles
        assert_eq!(k(4).enumerate_cycles().len(), 7);
    }

    #[test]
    fn vw_paths_small() {
        let p = Graph::path(3).unwrap();
        assert_eq!(p.enumerate_vw_paths(0, 2).unwrap().len(), 1);
        assert_eq!(k(3).enumerate_vw_paths(0, 1).unwrap().len(), 2);
        assert_eq!(k(4).enumerate_vw_paths(0, 3).unwrap().len(), 5);
        assert_eq!(p.enumerate_vw_paths(1, 1), Err(Error::SameEndpoints(1)));
    }

    #[test]
    fn vw_cuts_small() {
        let single = Graph::path(2).unwrap();
        assert_eq!(
            single.enumerate_vw_cuts(0, 1).unwrap(),
            vec![vec![Edge::of(0, 1)]]
        );
        // path v=0 - u=1 - w=2
        let p = Graph::path(3).unwrap();
        assert_eq!(
            p.enumerate_vw_cuts(0, 2).unwrap(),
            vec![vec![Edge::of(0, 1)], vec![Edge::of(1, 2)]]
        );
        // K3 with v=0, u=1, w=2
        assert_eq!(
            k(3).enumerate_vw_cuts(0, 2).unwrap(),
            vec![
                vec![Edge::of(0, 1), Edge::of(0, 2)],
                vec![Edge::of(0, 2), Edge::of(1, 2)]
            ]
        );
        assert_eq!(
            Graph::empty(2).unwrap().enumerate_vw_cuts(0, 1),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn cut_vertices_small() {
        let p = Graph::path(3).unwrap();
        assert_eq!(p.cut_vertices(0, 2).unwrap(), 0b111);
        assert_eq!(k(3).cut_vertices(0, 2).unwrap(), 0b101);
        assert_eq!(
            Graph::empty(2).unwrap().cut_vertices(0, 1),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn contraction() {
        let (g, map) = k(3).contract_edge(Edge::of(0, 2)).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert_eq!(map, vec![0, 1, 0]);

        let (g, _) = Graph::path(4)
            .unwrap()
            .contract_edge(Edge::of(1, 2))
            .unwrap();
        assert_eq!(g, Graph::path(3).unwrap());

        let (g, _) = k(4).contract_edge(Edge::of(1, 3)).unwrap();
        assert_eq!(g, k(3));

        assert_eq!(
            Graph::path(3)
                .unwrap()
                .contract_edge(Edge::of(0, 2))
                .map(|_| ()),
            Err(Error::EdgeNotFound(Edge::of(0, 2)))
        );
    }

    #[test]
    fn shortest_path_is_lexicographic() {
        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(c4.shortest_path(0, 2).unwrap().nodes, vec![0, 1, 2]);
        assert_eq!(c4.shortest_path(2, 0).unwrap().nodes, vec![2, 1, 0]);
    }

    #[test]
    fn decompositions_of_small_graphs() {
        let mut count = 0;
        Graph::cycle(4)
            .unwrap()
            .for_each_decomposition(&mut |_| count += 1);
        assert_eq!(count, 12);
        let mut count = 0;
        k(4).for_each_decomposition(&mut |_| count += 1);
        assert_eq!(count, 15);
    }

    #[test]
    fn edge_parsing() {
        assert_eq!("3,1".parse::<Edge>().unwrap(), Edge::of(1, 3));
        assert_eq!("0-2".parse::<Edge>().unwrap(), Edge::of(0, 2));
        assert!("1,1".parse::<Edge>().is_err());
        assert!("1,2,3".parse::<Edge>().is_err());
    }
}
