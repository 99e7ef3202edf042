//! Decompositions, multicuts and the correspondence between them.

use std::collections::{BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bit, mask_nodes, nodes_to_mask, Cycle, Edge, Graph, NodeId, NodeMask};

/// A partition of the nodes into blocks that each induce a connected
/// subgraph. Blocks are sorted internally and ordered by smallest member.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Decomposition {
    blocks: Vec<Vec<NodeId>>,
}

impl Decomposition {
    /// Validates that `blocks` partition the nodes of `g` into connected sets.
    pub fn new(g: &Graph, blocks: Vec<Vec<NodeId>>) -> Result<Self> {
        let mut seen: NodeMask = 0;
        let mut masks = Vec::with_capacity(blocks.len());
        for block in &blocks {
            if block.is_empty() {
                return Err(Error::InvalidDecomposition("empty block".into()));
            }
            let mut m = 0;
            for &n in block {
                if n >= g.node_count() {
                    return Err(Error::InvalidDecomposition(format!(
                        "node {n} out of range"
                    )));
                }
                if (seen | m) & bit(n) != 0 {
                    return Err(Error::InvalidDecomposition(format!(
                        "node {n} appears twice"
                    )));
                }
                m |= bit(n);
            }
            if !g.is_connected_within(m) {
                return Err(Error::InvalidDecomposition(format!(
                    "block {block:?} is not connected"
                )));
            }
            seen |= m;
            masks.push(m);
        }
        if seen != g.all_nodes() {
            return Err(Error::InvalidDecomposition(
                "blocks do not cover all nodes".into(),
            ));
        }
        Ok(Self::from_masks(&masks))
    }

    pub(crate) fn from_masks(masks: &[NodeMask]) -> Self {
        let mut blocks: Vec<Vec<NodeId>> = masks.iter().map(|&m| mask_nodes(m).collect()).collect();
        blocks.sort();
        Decomposition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<NodeId>] {
        &self.blocks
    }

    pub fn block_masks(&self) -> Vec<NodeMask> {
        self.blocks
            .iter()
            .map(|b| nodes_to_mask(b.iter().copied()))
            .collect()
    }

    /// Block index per node.
    pub fn labels(&self) -> Vec<usize> {
        let n = self.blocks.iter().map(Vec::len).sum();
        let mut out = vec![0; n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &v in b {
                out[v] = i;
            }
        }
        out
    }
}

/// A subset of a graph's edges.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeSubset {
    edges: BTreeSet<Edge>,
}

impl EdgeSubset {
    pub fn new<I: IntoIterator<Item = Edge>>(g: &Graph, edges: I) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(e) = edges.iter().find(|e| !g.contains_edge(**e)) {
            return Err(Error::EdgeNotFound(*e));
        }
        Ok(EdgeSubset { edges })
    }

    /// Members are the edges whose canonical index is set in `bits`.
    pub fn from_indicator(g: &Graph, bits: &[bool]) -> Result<Self> {
        if bits.len() != g.edge_count() {
            return Err(Error::LengthMismatch {
                expected: g.edge_count(),
                actual: bits.len(),
            });
        }
        let edges = g
            .edges()
            .iter()
            .zip(bits)
            .filter(|(_, &b)| b)
            .map(|(e, _)| *e)
            .collect();
        Ok(EdgeSubset { edges })
    }

    /// Parses a 01-string in canonical edge order.
    pub fn from_bitstring(g: &Graph, s: &str) -> Result<Self> {
        Self::from_indicator(g, &parse_bitstring(s)?)
    }

    pub fn indicator(&self, g: &Graph) -> Vec<bool> {
        g.edges().iter().map(|e| self.edges.contains(e)).collect()
    }

    pub fn to_bitstring(&self, g: &Graph) -> String {
        self.indicator(g)
            .into_iter()
            .map(|b| if b { '1' } else { '0' })
            .collect()
    }

    pub fn contains(&self, e: Edge) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges.iter().copied()
    }
}

pub(crate) fn parse_bitstring(s: &str) -> Result<Vec<bool>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::Parse(format!(
                "unexpected character {other:?} in 01-string"
            ))),
        })
        .collect()
}

/// Equivalence relation stored as a canonical representative (the smallest
/// member of the class) per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceRelation {
    rep: Vec<NodeId>,
}

impl EquivalenceRelation {
    pub fn related(&self, a: NodeId, b: NodeId) -> bool {
        self.rep[a] == self.rep[b]
    }

    pub fn representative(&self, n: NodeId) -> NodeId {
        self.rep[n]
    }

    pub fn classes(&self) -> Vec<Vec<NodeId>> {
        let mut out: Vec<Vec<NodeId>> = Vec::new();
        for (n, &r) in self.rep.iter().enumerate() {
            if r == n {
                out.push(vec![n]);
            } else {
                let slot = out
                    .iter_mut()
                    .find(|c| c[0] == r)
                    .expect("representative precedes members");
                slot.push(n);
            }
        }
        out
    }
}

/// The edges whose endpoints lie in distinct blocks.
pub fn decomposition_to_multicut(g: &Graph, pi: &Decomposition) -> EdgeSubset {
    let labels = pi.labels();
    let edges = g
        .edges()
        .iter()
        .copied()
        .filter(|e| labels[e.u()] != labels[e.v()])
        .collect();
    EdgeSubset { edges }
}

/// Components of `(V, E \ m)`. Fails with a witness when some edge of `m`
/// has both endpoints in one component.
pub fn multicut_to_decomposition(g: &Graph, m: &EdgeSubset) -> Result<Decomposition> {
    let blocks = g.components_by(|i| !m.contains(g.edges()[i]));
    for e in m.iter() {
        if blocks.iter().any(|&b| e.inside(b)) {
            let path = path_avoiding(g, m, e.u(), e.v()).unwrap_or_default();
            return Err(Error::NotAMulticut { edge: e, path });
        }
    }
    Ok(Decomposition::from_masks(&blocks))
}

fn path_avoiding(g: &Graph, m: &EdgeSubset, from: NodeId, to: NodeId) -> Option<Vec<NodeId>> {
    let mut prev = vec![usize::MAX; g.node_count()];
    prev[from] = from;
    let mut queue = VecDeque::from([from]);
    while let Some(n) = queue.pop_front() {
        if n == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for x in mask_nodes(g.neighbors(n)) {
            if prev[x] == usize::MAX && !m.contains(Edge::of(n, x)) {
                prev[x] = n;
                queue.push_back(x);
            }
        }
    }
    None
}

/// Component test: no cut edge has both endpoints in one component of
/// `(V, E \ m)`.
pub fn is_multicut(g: &Graph, m: &EdgeSubset) -> bool {
    let blocks = g.components_by(|i| !m.contains(g.edges()[i]));
    m.iter().all(|e| !blocks.iter().any(|&b| e.inside(b)))
}

/// Cycle test over the chordless cycles of `g`: every cycle meets `m` in a
/// number of edges other than one.
pub fn is_multicut_by_cycles(g: &Graph, m: &EdgeSubset) -> bool {
    satisfies_cycle_inequalities(&g.enumerate_chordless_cycles(), |e| m.contains(e))
}

/// `x_e <= sum_{e' in C \ e} x_e'` for every listed cycle and every edge.
pub fn satisfies_cycle_inequalities<F: Fn(Edge) -> bool>(cycles: &[Cycle], cut: F) -> bool {
    cycles
        .iter()
        .all(|c| c.edges.iter().filter(|e| cut(**e)).count() != 1)
}

/// All decompositions, generated block by block so that only connected
/// blocks are ever formed.
pub fn enumerate_decompositions(g: &Graph) -> Vec<Decomposition> {
    let mut out = Vec::new();
    g.for_each_decomposition(&mut |blocks| out.push(Decomposition::from_masks(blocks)));
    out
}

/// Restricted growth strings of length `n`: `a[0] = 0` and
/// `a[i] <= 1 + max(a[..i])`. Each encodes one set partition.
pub fn restricted_growth_strings(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, max: usize, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        let limit = if prefix.is_empty() { 0 } else { max + 1 };
        for b in 0..=limit {
            prefix.push(b);
            rec(prefix, max.max(b), n, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        out.push(Vec::new());
    } else {
        rec(&mut Vec::new(), 0, n, &mut out);
    }
    out
}

/// Decompositions via all set partitions filtered for connected blocks.
/// Bell-number cost; kept as an independent route to
/// [`enumerate_decompositions`].
pub fn enumerate_decompositions_rgs(g: &Graph) -> Vec<Decomposition> {
    restricted_growth_strings(g.node_count())
        .into_iter()
        .filter_map(|rgs| {
            let k = rgs.iter().max().map_or(0, |m| m + 1);
            let mut masks = vec![0u64; k];
            for (n, &b) in rgs.iter().enumerate() {
                masks[b] |= bit(n);
            }
            masks
                .iter()
                .all(|&m| g.is_connected_within(m))
                .then(|| Decomposition::from_masks(&masks))
        })
        .collect()
}

/// Every multicut of `g`, in the order of [`enumerate_decompositions`].
pub fn enumerate_multicuts(g: &Graph) -> Vec<EdgeSubset> {
    enumerate_decompositions(g)
        .iter()
        .map(|pi| decomposition_to_multicut(g, pi))
        .collect()
}

/// On a complete graph, nodes are related iff the edge between them is not
/// cut.
pub fn multicut_to_equivalence(g: &Graph, m: &EdgeSubset) -> Result<EquivalenceRelation> {
    let n = g.node_count();
    if g.edge_count() != n * n.saturating_sub(1) / 2 {
        return Err(Error::NotComplete);
    }
    multicut_to_decomposition(g, m)?;
    let rep = (0..n)
        .map(|a| (0..a).find(|&b| !m.contains(Edge::of(b, a))).unwrap_or(a))
        .collect();
    Ok(EquivalenceRelation { rep })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(g: &Graph, edges: &[(usize, usize)]) -> EdgeSubset {
        EdgeSubset::new(g, edges.iter().map(|&(a, b)| Edge::of(a, b))).unwrap()
    }

    #[test]
    fn one_block_and_singletons() {
        let g = Graph::complete(4).unwrap();
        let one = Decomposition::new(&g, vec![vec![0, 1, 2, 3]]).unwrap();
        assert!(decomposition_to_multicut(&g, &one).is_empty());
        let single = Decomposition::new(&g, (0..4).map(|i| vec![i]).collect()).unwrap();
        assert_eq!(decomposition_to_multicut(&g, &single).len(), 6);
    }

    #[test]
    fn grid_decomposition_cuts_seven_edges() {
        // 3x4 grid drawn with x = column, y = row; node id = 4 * y + x.
        let g = Graph::grid(3, 4).unwrap();
        let id = |x: usize, y: usize| 4 * y + x;
        let blocks = vec![
            vec![id(0, 0), id(1, 0), id(0, 1)],
            vec![id(0, 2), id(1, 2), id(1, 1), id(2, 1), id(2, 2)],
            vec![id(2, 0), id(3, 0), id(3, 1), id(3, 2)],
        ];
        let pi = Decomposition::new(&g, blocks).unwrap();
        let m = decomposition_to_multicut(&g, &pi);
        let expected: BTreeSet<Edge> = [
            ((0, 1), (0, 2)),
            ((0, 1), (1, 1)),
            ((1, 0), (1, 1)),
            ((1, 0), (2, 0)),
            ((2, 0), (2, 1)),
            ((2, 1), (3, 1)),
            ((2, 2), (3, 2)),
        ]
        .iter()
        .map(|&((ax, ay), (bx, by))| Edge::of(id(ax, ay), id(bx, by)))
        .collect();
        assert_eq!(m.edges, expected);
    }

    #[test]
    fn multicut_to_decomposition_on_triangle() {
        let g = Graph::complete(3).unwrap();
        let all = subset(&g, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            multicut_to_decomposition(&g, &all).unwrap().blocks().len(),
            3
        );
        let two = subset(&g, &[(0, 2), (1, 2)]);
        assert_eq!(
            multicut_to_decomposition(&g, &two).unwrap().blocks(),
            &[vec![0, 1], vec![2]]
        );
        let one = subset(&g, &[(0, 1)]);
        match multicut_to_decomposition(&g, &one) {
            Err(Error::NotAMulticut { edge, path }) => {
                assert_eq!(edge, Edge::of(0, 1));
                assert_eq!(path, vec![0, 2, 1]);
            }
            other => panic!("expected NotAMulticut, got {other:?}"),
        }
    }

    #[test]
    fn is_multicut_examples() {
        let k3 = Graph::complete(3).unwrap();
        assert!(is_multicut(&k3, &EdgeSubset::default()));
        assert!(!is_multicut(&k3, &subset(&k3, &[(1, 2)])));
        assert!(!is_multicut_by_cycles(&k3, &subset(&k3, &[(1, 2)])));
        let c4 = Graph::cycle(4).unwrap();
        // opposite edges 0-1 and 2-3
        let m = subset(&c4, &[(0, 1), (2, 3)]);
        assert!(is_multicut(&c4, &m));
        assert!(is_multicut_by_cycles(&c4, &m));
    }

    #[test]
    fn multicut_counts() {
        assert_eq!(enumerate_multicuts(&Graph::complete(3).unwrap()).len(), 5);
        assert_eq!(enumerate_multicuts(&Graph::path(3).unwrap()).len(), 4);
        assert_eq!(enumerate_multicuts(&Graph::cycle(4).unwrap()).len(), 12);
    }

    #[test]
    fn rgs_counts_are_bell_numbers() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for (n, &b) in bell.iter().enumerate() {
            assert_eq!(restricted_growth_strings(n).len(), b);
        }
    }

    #[test]
    fn equivalence_on_complete_graphs() {
        let k3 = Graph::complete(3).unwrap();
        let eq = multicut_to_equivalence(&k3, &EdgeSubset::default()).unwrap();
        assert_eq!(eq.classes(), vec![vec![0, 1, 2]]);
        let all = subset(&k3, &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(
            multicut_to_equivalence(&k3, &all).unwrap().classes().len(),
            3
        );

        let k4 = Graph::complete(4).unwrap();
        let iso = subset(&k4, &[(0, 1), (0, 2), (0, 3)]);
        let eq = multicut_to_equivalence(&k4, &iso).unwrap();
        assert_eq!(eq.classes(), vec![vec![0], vec![1, 2, 3]]);

        let p = Graph::path(3).unwrap();
        assert_eq!(
            multicut_to_equivalence(&p, &EdgeSubset::default()),
            Err(Error::NotComplete)
        );
        assert!(matches!(
            multicut_to_equivalence(&k3, &subset(&k3, &[(0, 1)])),
            Err(Error::NotAMulticut { .. })
        ));
    }

    #[test]
    fn bitstrings() {
        let k3 = Graph::complete(3).unwrap();
        let m = EdgeSubset::from_bitstring(&k3, "011").unwrap();
        assert_eq!(m.to_bitstring(&k3), "011");
        assert!(EdgeSubset::from_bitstring(&k3, "01").is_err());
        assert!(EdgeSubset::from_bitstring(&k3, "01x").is_err());
    }
}
