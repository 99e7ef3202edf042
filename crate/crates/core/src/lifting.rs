//! Lifting of multicuts from a base graph `G` to a supergraph `G'` on the
//! same nodes, the feasibility system describing lifted multicuts, and the
//! constructions behind the full-dimensionality of their polytope.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{bit, Edge, Graph, NodeMask, Path};
use crate::partitions::{self, parse_bitstring, Decomposition, EdgeSubset};
use crate::polytope::{self, LinearInequality};

/// Largest supported `|E'|`; labelings are packed into a `u128`.
pub const MAX_LIFTED_EDGES: usize = 128;

/// A 01-vector over the canonical edge order of `E'`.
///
/// Ordering is the integer value of the bit string read with the first
/// canonical edge as the most significant bit.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabeling {
    bits: u128,
    len: u8,
}

impl EdgeLabeling {
    pub fn zeros(len: usize) -> Self {
        assert!(
            len <= MAX_LIFTED_EDGES,
            "labeling longer than {MAX_LIFTED_EDGES}"
        );
        EdgeLabeling {
            bits: 0,
            len: len as u8,
        }
    }

    pub fn ones(len: usize) -> Self {
        let mut x = Self::zeros(len);
        x.bits = full_mask(len);
        x
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut x = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            x.set(i, b);
        }
        x
    }

    /// Parses a 01-string of exactly `len` characters.
    pub fn parse(s: &str, len: usize) -> Result<Self> {
        let bits = parse_bitstring(s)?;
        if bits.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                actual: bits.len(),
            });
        }
        Ok(Self::from_bools(&bits))
    }

    /// Labeling whose integer value is `value` (first edge most significant).
    pub fn from_value(value: u128, len: usize) -> Self {
        let mut x = Self::zeros(len);
        x.bits = value & full_mask(len);
        x
    }

    pub fn value(&self) -> u128 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    fn pos(&self, i: usize) -> u32 {
        debug_assert!(i < self.len());
        (self.len() - 1 - i) as u32
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.bits >> self.pos(i) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        let m = 1u128 << self.pos(i);
        if value {
            self.bits |= m;
        } else {
            self.bits &= !m;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len()).map(|i| self.get(i)).collect()
    }

    /// Indices (canonical order) of the entries equal to one.
    pub fn ones_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&i| self.get(i))
    }
}

fn full_mask(len: usize) -> u128 {
    if len == 128 {
        u128::MAX
    } else {
        (1u128 << len) - 1
    }
}

impl fmt::Display for EdgeLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for EdgeLabeling {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EdgeLabeling({self})")
    }
}

/// Base graph `G` and lifted graph `G'` with `E ⊆ E'`, `G` connected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedPair {
    base: Graph,
    lifted: Graph,
    in_base: Vec<bool>,
    lifted_only: Vec<usize>,
    base_to_lifted: Vec<usize>,
}

impl LiftedPair {
    pub fn new(base: Graph, lifted: Graph) -> Result<Self> {
        if base.node_count() != lifted.node_count() {
            return Err(Error::NodeCountMismatch(
                base.node_count(),
                lifted.node_count(),
            ));
        }
        if lifted.edge_count() > MAX_LIFTED_EDGES {
            return Err(Error::TooManyEdges(lifted.edge_count()));
        }
        let mut base_to_lifted = Vec::with_capacity(base.edge_count());
        for &e in base.edges() {
            base_to_lifted.push(lifted.edge_index(e).ok_or(Error::BaseEdgeNotLifted(e))?);
        }
        if !base.is_connected() {
            return Err(Error::Disconnected);
        }
        let in_base: Vec<bool> = lifted
            .edges()
            .iter()
            .map(|&e| base.contains_edge(e))
            .collect();
        let lifted_only = (0..lifted.edge_count()).filter(|&i| !in_base[i]).collect();
        Ok(LiftedPair {
            base,
            lifted,
            in_base,
            lifted_only,
            base_to_lifted,
        })
    }

    /// Pair with `E' = E`.
    pub fn plain(g: Graph) -> Result<Self> {
        Self::new(g.clone(), g)
    }

    /// Base graph from `base` pairs, lifted graph = base plus `extra` pairs.
    pub fn from_pairs(
        node_count: usize,
        base: &[(usize, usize)],
        extra: &[(usize, usize)],
    ) -> Result<Self> {
        let g = Graph::new(node_count, base.iter().copied())?;
        let h = Graph::new(node_count, base.iter().chain(extra).copied())?;
        Self::new(g, h)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn lifted(&self) -> &Graph {
        &self.lifted
    }

    pub fn node_count(&self) -> usize {
        self.base.node_count()
    }

    /// `|E'|`, the dimension of the labeling space.
    pub fn dim(&self) -> usize {
        self.lifted.edge_count()
    }

    pub fn edges(&self) -> &[Edge] {
        self.lifted.edges()
    }

    /// Canonical `E'` indices of the lifted-only edges `F = E' \ E`.
    pub fn lifted_only_indices(&self) -> &[usize] {
        &self.lifted_only
    }

    pub fn lifted_only_edges(&self) -> Vec<Edge> {
        self.lifted_only
            .iter()
            .map(|&i| self.lifted.edges()[i])
            .collect()
    }

    /// `E'` index of each base edge, in base canonical order.
    pub fn base_indices(&self) -> &[usize] {
        &self.base_to_lifted
    }

    pub fn is_base_index(&self, i: usize) -> bool {
        self.in_base[i]
    }

    pub fn index_of(&self, e: Edge) -> Option<usize> {
        self.lifted.edge_index(e)
    }

    pub fn is_lifted_only(&self, e: Edge) -> bool {
        self.lifted.contains_edge(e) && !self.base.contains_edge(e)
    }

    pub(crate) fn require_lifted_only(&self, e: Edge) -> Result<usize> {
        match self.index_of(e) {
            Some(i) if !self.in_base[i] => Ok(i),
            _ => Err(Error::NotLiftedEdge(e)),
        }
    }

    /// Labeling of `E'` induced by a node labeling: an edge is cut iff its
    /// endpoints carry different labels.
    pub fn labeling_from_blocks(&self, blocks: &[NodeMask]) -> EdgeLabeling {
        let mut x = EdgeLabeling::zeros(self.dim());
        for (i, e) in self.edges().iter().enumerate() {
            if !blocks.iter().any(|&b| e.inside(b)) {
                x.set(i, true);
            }
        }
        x
    }

    pub fn labeling_of(&self, pi: &Decomposition) -> EdgeLabeling {
        self.labeling_from_blocks(&pi.block_masks())
    }

    /// Components of `(V, {e in E : x_e = 0})`.
    pub fn base_components(&self, x: &EdgeLabeling) -> Vec<NodeMask> {
        self.base.components_by(|i| !x.get(self.base_to_lifted[i]))
    }

    pub fn restrict_to_base(&self, x: &EdgeLabeling) -> EdgeSubset {
        let bits: Vec<bool> = self.base_to_lifted.iter().map(|&i| x.get(i)).collect();
        EdgeSubset::from_indicator(&self.base, &bits).expect("length matches base")
    }
}

/// Lifts a multicut of `G` to the multicut of `G'` induced by the same
/// decomposition.
pub fn lift(pair: &LiftedPair, m: &EdgeSubset) -> Result<EdgeSubset> {
    let pi = partitions::multicut_to_decomposition(pair.base(), m)?;
    let x = pair.labeling_of(&pi);
    EdgeSubset::from_indicator(pair.lifted(), &x.to_bools())
}

/// Component semantics: `x` is lifted iff for every `uv ∈ E'`, `x_uv = 0`
/// exactly when `u` and `v` are joined by base edges labeled 0.
pub fn is_lifted_multicut(pair: &LiftedPair, x: &EdgeLabeling) -> bool {
    if x.len() != pair.dim() {
        return false;
    }
    let comps = pair.base_components(x);
    pair.labeling_from_blocks(&comps) == *x
}

/// Members of the cycle, path and cut families violated by `x`.
pub fn violated_inequalities(pair: &LiftedPair, x: &EdgeLabeling) -> Vec<LinearInequality> {
    polytope::lifted_multicut_inequalities(pair)
        .into_iter()
        .filter(|ineq| !ineq.integer_form().satisfied_by(x))
        .collect()
}

/// Inequality semantics: `x` satisfies every cycle, path and cut inequality.
pub fn is_lifted_multicut_by_inequalities(pair: &LiftedPair, x: &EdgeLabeling) -> bool {
    x.len() == pair.dim()
        && polytope::lifted_multicut_inequalities(pair)
            .iter()
            .all(|ineq| ineq.integer_form().satisfied_by(x))
}

/// Calls `visit` for every lifted multicut (generation order, unsorted).
pub fn for_each_lifted_multicut<F: FnMut(EdgeLabeling)>(pair: &LiftedPair, visit: &mut F) {
    pair.base()
        .for_each_decomposition(&mut |blocks| visit(pair.labeling_from_blocks(blocks)));
}

/// All of `X_GG'`, one labeling per decomposition of `G`, sorted.
pub fn enumerate_lifted_multicuts(pair: &LiftedPair) -> Vec<EdgeLabeling> {
    let mut out = Vec::new();
    for_each_lifted_multicut(pair, &mut |x| out.push(x));
    out.sort_unstable();
    out
}

/// Brute force: every `x ∈ {0,1}^E'` that passes the inequality check.
/// Exponential in `|E'|`; meant as an independent reference.
pub fn enumerate_lifted_multicuts_by_filter(pair: &LiftedPair) -> Vec<EdgeLabeling> {
    let ineqs: Vec<_> = polytope::lifted_multicut_inequalities(pair)
        .iter()
        .map(|q| q.integer_form().clone())
        .collect();
    let d = pair.dim();
    assert!(
        d < 32,
        "filter enumeration over 2^{d} labelings is not supported"
    );
    (0..1u128 << d)
        .map(|v| EdgeLabeling::from_value(v, d))
        .filter(|x| ineqs.iter().all(|q| q.satisfied_by(x)))
        .collect()
}

/// Level of each lifted-only edge in the hierarchy of `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelAssignment {
    levels: BTreeMap<Edge, usize>,
}

impl LevelAssignment {
    pub fn level(&self, f: Edge) -> Option<usize> {
        self.levels.get(&f).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Edge, usize)> + '_ {
        self.levels.iter().map(|(e, l)| (*e, *l))
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn max_level(&self) -> usize {
        self.levels.values().copied().max().unwrap_or(0)
    }
}

/// Lifted-only edges with both endpoints on `nodes`, other than `skip`.
fn lifted_chords(pair: &LiftedPair, nodes: NodeMask, skip: Edge) -> Vec<Edge> {
    pair.lifted_only_edges()
        .into_iter()
        .filter(|f| *f != skip && f.inside(nodes))
        .collect()
}

struct LevelData {
    levels: BTreeMap<Edge, usize>,
    paths: BTreeMap<Edge, Vec<(Path, Vec<Edge>)>>,
}

fn level_data(pair: &LiftedPair) -> LevelData {
    let mut paths = BTreeMap::new();
    for f in pair.lifted_only_edges() {
        let ps = pair
            .base()
            .enumerate_vw_paths(f.u(), f.v())
            .expect("lifted-only edges join distinct nodes");
        let annotated: Vec<(Path, Vec<Edge>)> = ps
            .into_iter()
            .map(|p| {
                let chords = lifted_chords(pair, p.node_mask(), f);
                (p, chords)
            })
            .collect();
        paths.insert(f, annotated);
    }
    let mut levels: BTreeMap<Edge, usize> = BTreeMap::new();
    let mut round = 1;
    while levels.len() < paths.len() {
        let fresh: Vec<Edge> = paths
            .iter()
            .filter(|(f, _)| !levels.contains_key(f))
            .filter(|(_, ps)| {
                ps.iter().any(|(_, chords)| {
                    chords
                        .iter()
                        .all(|c| levels.get(c).is_some_and(|&l| l < round))
                })
            })
            .map(|(f, _)| *f)
            .collect();
        assert!(
            !fresh.is_empty(),
            "level hierarchy stalled; base graph must be connected"
        );
        for f in fresh {
            levels.insert(f, round);
        }
        round += 1;
    }
    LevelData { levels, paths }
}

/// Computes `F_1, F_2, ...` by fixed-point iteration: `f = vw` enters `F_n`
/// once some `vw`-path in `G` has all its lifted-only chords (other than `f`)
/// in `F_{n-1}`.
pub fn compute_levels(pair: &LiftedPair) -> LevelAssignment {
    LevelAssignment {
        levels: level_data(pair).levels,
    }
}

/// A labeling with `x_f = 0` and `x_f' = 1` for every other lifted-only
/// `f'` of level at least `level(f)`.
///
/// The zero component is the node set of a `vw`-path that is induced in `G`
/// and whose lifted-only chords all have smaller level than `f`; among those
/// the shortest, then lexicographically smallest, path is used.
pub fn f_feasible_labeling(pair: &LiftedPair, f: Edge) -> Result<EdgeLabeling> {
    pair.require_lifted_only(f)?;
    let data = level_data(pair);
    Ok(f_feasible_from(pair, &data, f))
}

fn f_feasible_from(pair: &LiftedPair, data: &LevelData, f: Edge) -> EdgeLabeling {
    let level = data.levels[&f];
    let path = data.paths[&f]
        .iter()
        .filter(|(p, chords)| {
            is_induced(pair.base(), p) && chords.iter().all(|c| data.levels[c] < level)
        })
        .map(|(p, _)| p)
        .min_by(|a, b| {
            a.nodes
                .len()
                .cmp(&b.nodes.len())
                .then_with(|| a.nodes.cmp(&b.nodes))
        })
        .expect("a witnessing path can always be shortcut to an induced one");
    pair.labeling_from_blocks(&[path.node_mask()])
}

fn is_induced(g: &Graph, p: &Path) -> bool {
    let m = p.node_mask();
    g.edges().iter().filter(|e| e.inside(m)).count() == p.edges.len()
}

/// `|E'| + 1` lifted multicuts: the all-ones vector, one vector per base edge
/// with only that edge joined, and one `f`-feasible vector per lifted-only
/// edge in order of level. They are affinely independent.
pub fn dimension_witness(pair: &LiftedPair) -> Vec<EdgeLabeling> {
    let d = pair.dim();
    let mut out = vec![EdgeLabeling::ones(d)];
    for &i in pair.base_indices() {
        let mut x = EdgeLabeling::ones(d);
        x.set(i, false);
        out.push(x);
    }
    let data = level_data(pair);
    let mut fs: Vec<(usize, Edge)> = data.levels.iter().map(|(f, l)| (*l, *f)).collect();
    fs.sort();
    for (_, f) in fs {
        out.push(f_feasible_from(pair, &data, f));
    }
    out
}

/// Node mask of the zero component of `x` containing `n`.
pub fn zero_component(pair: &LiftedPair, x: &EdgeLabeling, n: usize) -> NodeMask {
    pair.base_components(x)
        .into_iter()
        .find(|&b| b & bit(n) != 0)
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Path e1 = {0,1}, e2 = {0,2}; lifted f = {1,2}.
    fn fig3() -> LiftedPair {
        LiftedPair::from_pairs(3, &[(0, 1), (0, 2)], &[(1, 2)]).unwrap()
    }

    /// Path v1..v4 = 0..3 with f1 = {0,2}, f2 = {1,3}, f3 = {0,3}.
    fn fig4a() -> LiftedPair {
        LiftedPair::from_pairs(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 2), (1, 3), (0, 3)]).unwrap()
    }

    fn lab(s: &str) -> EdgeLabeling {
        EdgeLabeling::parse(s, s.len()).unwrap()
    }

    #[test]
    fn labeling_order_and_io() {
        assert!(lab("011") < lab("100"));
        assert_eq!(lab("101").to_string(), "101");
        assert_eq!(lab("101").value(), 5);
        assert!(EdgeLabeling::parse("10", 3).is_err());
    }

    #[test]
    fn pair_validation() {
        let g = Graph::path(3).unwrap();
        let h = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            LiftedPair::new(g.clone(), h),
            Err(Error::BaseEdgeNotLifted(Edge::of(1, 2)))
        );
        let disc = Graph::new(3, [(0, 1)]).unwrap();
        assert_eq!(
            LiftedPair::new(disc.clone(), disc),
            Err(Error::Disconnected)
        );
        assert_eq!(
            LiftedPair::new(g, Graph::path(4).unwrap()),
            Err(Error::NodeCountMismatch(3, 4))
        );
    }

    #[test]
    fn lift_fig3() {
        let p = fig3();
        let g = p.base();
        let lifted = |bits: &str| {
            let m = EdgeSubset::from_bitstring(g, bits).unwrap();
            lift(&p, &m).unwrap().to_bitstring(p.lifted())
        };
        assert_eq!(lifted("00"), "000");
        assert_eq!(lifted("10"), "101");
        assert_eq!(lifted("11"), "111");
    }

    #[test]
    fn lift_rejects_non_multicut() {
        let p = LiftedPair::plain(Graph::complete(3).unwrap()).unwrap();
        let m = EdgeSubset::from_bitstring(p.base(), "100").unwrap();
        assert!(matches!(lift(&p, &m), Err(Error::NotAMulticut { .. })));
    }

    #[test]
    fn membership_fig3() {
        let p = fig3();
        assert!(!is_lifted_multicut(&p, &lab("001")));
        assert!(!is_lifted_multicut_by_inequalities(&p, &lab("001")));
        assert!(is_lifted_multicut(&p, &lab("011")));
        assert!(is_lifted_multicut(&p, &lab("111")));
        let viol = violated_inequalities(&p, &lab("001"));
        assert_eq!(viol.len(), 1);
        assert_eq!(viol[0].tag().unwrap().to_string(), "path(f=1,2;P=1-0-2)");
    }

    #[test]
    fn enumerate_fig3() {
        let xs: Vec<String> = enumerate_lifted_multicuts(&fig3())
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(xs, ["000", "011", "101", "111"]);
    }

    #[test]
    fn enumerate_c4_in_k4() {
        let p = LiftedPair::new(Graph::cycle(4).unwrap(), Graph::complete(4).unwrap()).unwrap();
        let xs = enumerate_lifted_multicuts(&p);
        assert_eq!(xs.len(), 12);
        assert_eq!(xs, enumerate_lifted_multicuts_by_filter(&p));
    }

    #[test]
    fn enumerate_single_edge() {
        let p = LiftedPair::plain(Graph::path(2).unwrap()).unwrap();
        let xs: Vec<String> = enumerate_lifted_multicuts(&p)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(xs, ["0", "1"]);
    }

    #[test]
    fn levels() {
        let l = compute_levels(&fig3());
        assert_eq!(l.level(Edge::of(1, 2)), Some(1));

        let l = compute_levels(&fig4a());
        assert_eq!(l.level(Edge::of(0, 2)), Some(1));
        assert_eq!(l.level(Edge::of(1, 3)), Some(1));
        assert_eq!(l.level(Edge::of(0, 3)), Some(2));

        // star with centre 0; lifted edges between leaves
        let star = LiftedPair::from_pairs(4, &[(0, 1), (0, 2), (0, 3)], &[(1, 2), (2, 3), (1, 3)])
            .unwrap();
        let l = compute_levels(&star);
        assert!(l.iter().all(|(_, lv)| lv == 1));
        assert_eq!(l.len(), 3);
    }

    #[test]
    fn f_feasible_examples() {
        let p = fig3();
        assert_eq!(
            f_feasible_labeling(&p, Edge::of(1, 2)).unwrap().to_string(),
            "000"
        );
        assert_eq!(
            f_feasible_labeling(&p, Edge::of(0, 1)),
            Err(Error::NotLiftedEdge(Edge::of(0, 1)))
        );

        // canonical order: 01 02 03 12 13 23 = e1 f1 f3 e2 f2 e3
        let p = fig4a();
        let x1 = f_feasible_labeling(&p, Edge::of(0, 2)).unwrap();
        assert_eq!(x1.to_string(), "001011");
        let x3 = f_feasible_labeling(&p, Edge::of(0, 3)).unwrap();
        assert_eq!(x3.to_string(), "000000");
        assert!(is_lifted_multicut(&p, &x1));
    }

    #[test]
    fn f_feasible_avoids_high_level_chords_on_shortest_path() {
        // Shortest 0-3 path 0-1-2-3 carries lifted chord {0,2}, whose
        // level is 1, while the longer path 0-4-5-6-3 has no lifted chord,
        // so f = {0,3} has level 1 as well. Zeroing the shortest path would
        // zero {0,2}, which has the same level as f.
        let p = LiftedPair::from_pairs(
            7,
            &[(0, 1), (1, 2), (2, 3), (0, 4), (4, 5), (5, 6), (6, 3)],
            &[(0, 2), (0, 3)],
        )
        .unwrap();
        let l = compute_levels(&p);
        assert_eq!(l.level(Edge::of(0, 3)), Some(1));
        assert_eq!(l.level(Edge::of(0, 2)), Some(1));
        let x = f_feasible_labeling(&p, Edge::of(0, 3)).unwrap();
        let i02 = p.index_of(Edge::of(0, 2)).unwrap();
        let i03 = p.index_of(Edge::of(0, 3)).unwrap();
        assert!(!x.get(i03));
        assert!(x.get(i02));
        assert!(is_lifted_multicut(&p, &x));
    }

    #[test]
    fn witness_sizes() {
        assert_eq!(dimension_witness(&fig3()).len(), 4);
        let p = LiftedPair::plain(Graph::path(2).unwrap()).unwrap();
        let w: Vec<String> = dimension_witness(&p)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(w, ["1", "0"]);
        let c4k4 = LiftedPair::new(Graph::cycle(4).unwrap(), Graph::complete(4).unwrap()).unwrap();
        let w = dimension_witness(&c4k4);
        assert_eq!(w.len(), 7);
        assert!(w.iter().all(|x| is_lifted_multicut(&c4k4, x)));
    }
}
