//! Combinatorial facet predicates for box, cycle, path and cut inequalities,
//! and the `(vw, C)`-connected components the cut conditions are phrased in.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, mask_nodes, Edge, Graph, NodeId, NodeMask};
use crate::lifting::{EdgeLabeling, LiftedPair};
use crate::polytope::{InequalityTag, LinearInequality};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Facet,
    NotFacet,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(facet: bool) -> Self {
        if facet {
            Verdict::Facet
        } else {
            Verdict::NotFacet
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Proper,
    Improper,
}

/// A connected node set of `G`, with its induced edges implied.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VwcComponent {
    pub nodes: NodeMask,
    pub kind: ComponentKind,
}

impl VwcComponent {
    pub fn node_list(&self) -> Vec<NodeId> {
        mask_nodes(self.nodes).collect()
    }

    pub fn edges(&self, g: &Graph) -> Vec<Edge> {
        g.edges()
            .iter()
            .copied()
            .filter(|e| e.inside(self.nodes))
            .collect()
    }
}

/// A lifted-only edge `f = vw` together with a minimal `vw`-cut `C` of `G`
/// and everything derived from the pair.
#[derive(Clone, Debug)]
pub struct VwCutContext {
    pair: LiftedPair,
    f: Edge,
    cut: Vec<Edge>,
    side_v: NodeMask,
    side_w: NodeMask,
    f_cross: Vec<Edge>,
    crossing_graph: Graph,
    components: Vec<VwcComponent>,
    v0_v: NodeMask,
    v0_w: NodeMask,
    v0_fallback: bool,
}

impl VwCutContext {
    pub fn new(pair: &LiftedPair, f: Edge, cut: Vec<Edge>) -> Result<Self> {
        pair.require_lifted_only(f)?;
        let g = pair.base();
        let (v, w) = (f.u(), f.v());
        let mut cut = cut;
        cut.sort();
        cut.dedup();
        for e in &cut {
            if !g.contains_edge(*e) {
                return Err(Error::EdgeNotFound(*e));
            }
        }
        let side_v = g
            .components_by(|i| !cut.contains(&g.edges()[i]))
            .into_iter()
            .find(|b| b & bit(v) != 0)
            .expect("v lies in some component");
        let side_w = g.all_nodes() & !side_v;
        let minimal = side_v & bit(w) == 0
            && g.is_connected_within(side_w)
            && g.crossing_edges(side_v) == cut;
        if !minimal {
            return Err(Error::NotAMinimalCut(v, w));
        }
        let f_cross: Vec<Edge> = pair
            .lifted_only_edges()
            .into_iter()
            .filter(|e| *e != f && e.crosses(side_v))
            .collect();
        let crossing_graph = Graph::from_edges(g.node_count(), f_cross.iter().chain(&cut))?;

        let mut components = Vec::new();
        let cut_masks: Vec<Edge> = cut.clone();
        for root in 0..g.node_count() {
            let allowed = g.all_nodes() & !(bit(root) - 1);
            g.for_each_connected_subset(root, allowed, &mut |s| {
                let kind = if s & side_v == s || s & side_w == s {
                    Some(ComponentKind::Improper)
                } else if s & bit(v) != 0
                    && s & bit(w) != 0
                    && cut_masks.iter().filter(|e| e.inside(s)).count() == 1
                {
                    Some(ComponentKind::Proper)
                } else {
                    None
                };
                if let Some(kind) = kind {
                    components.push(VwcComponent { nodes: s, kind });
                }
            });
        }
        components.sort_by_key(|c| (c.nodes.count_ones(), c.nodes.reverse_bits()));

        let proper = components
            .iter()
            .filter(|c| c.kind == ComponentKind::Proper);
        let meet = proper.fold(None, |acc: Option<NodeMask>, c| {
            Some(acc.map_or(c.nodes, |m| m & c.nodes))
        });
        let (v0_v, v0_w, v0_fallback) = match meet {
            Some(m) => (m & side_v, m & side_w, false),
            None => (side_v, side_w, true),
        };

        Ok(VwCutContext {
            pair: pair.clone(),
            f,
            cut,
            side_v,
            side_w,
            f_cross,
            crossing_graph,
            components,
            v0_v,
            v0_w,
            v0_fallback,
        })
    }

    pub fn pair(&self) -> &LiftedPair {
        &self.pair
    }

    pub fn f(&self) -> Edge {
        self.f
    }

    pub fn v(&self) -> NodeId {
        self.f.u()
    }

    pub fn w(&self) -> NodeId {
        self.f.v()
    }

    pub fn cut(&self) -> &[Edge] {
        &self.cut
    }

    pub fn side_v(&self) -> NodeMask {
        self.side_v
    }

    pub fn side_w(&self) -> NodeMask {
        self.side_w
    }

    pub fn f_cross(&self) -> &[Edge] {
        &self.f_cross
    }

    pub fn crossing_graph(&self) -> &Graph {
        &self.crossing_graph
    }

    /// Every `(vw, C)`-connected component, smallest first.
    pub fn components(&self) -> &[VwcComponent] {
        &self.components
    }

    pub fn proper_components(&self) -> impl Iterator<Item = &VwcComponent> + '_ {
        self.components
            .iter()
            .filter(|c| c.kind == ComponentKind::Proper)
    }

    pub fn v0_v(&self) -> NodeMask {
        self.v0_v
    }

    pub fn v0_w(&self) -> NodeMask {
        self.v0_w
    }

    /// True when no proper component exists and the V_0 sets default to the
    /// full sides.
    pub fn v0_is_fallback(&self) -> bool {
        self.v0_fallback
    }

    /// Kind of the connected node set `nodes`, if it is `(vw, C)`-connected.
    pub fn classify(&self, nodes: NodeMask) -> Option<ComponentKind> {
        if nodes == 0 || !self.pair.base().is_connected_within(nodes) {
            return None;
        }
        if nodes & self.side_v == nodes || nodes & self.side_w == nodes {
            return Some(ComponentKind::Improper);
        }
        let inner = self.cut.iter().filter(|e| e.inside(nodes)).count();
        (nodes & bit(self.v()) != 0 && nodes & bit(self.w()) != 0 && inner == 1)
            .then_some(ComponentKind::Proper)
    }

    /// The labeling that joins exactly the edges inside `nodes`.
    pub fn component_labeling(&self, nodes: NodeMask) -> EdgeLabeling {
        let mut blocks: Vec<NodeMask> = mask_nodes(self.pair.base().all_nodes() & !nodes)
            .map(bit)
            .collect();
        blocks.push(nodes);
        self.pair.labeling_from_blocks(&blocks)
    }

    /// The cut inequality `1 - x_vw <= sum_C (1 - x_e)`.
    pub fn inequality(&self) -> LinearInequality {
        let tag = InequalityTag::Cut {
            lifted: self.f,
            cut: self.cut.clone(),
        };
        LinearInequality::from_tag(&self.pair, &tag).expect("context holds a valid cut")
    }

    /// `f'` as (endpoint on v's side, endpoint on w's side).
    pub fn orient(&self, e: Edge) -> (NodeId, NodeId) {
        if self.side_v & bit(e.u()) != 0 {
            (e.u(), e.v())
        } else {
            (e.v(), e.u())
        }
    }

    fn f_cross_mask(&self, nodes: NodeMask) -> u128 {
        self.f_cross
            .iter()
            .enumerate()
            .filter(|(_, e)| e.inside(nodes))
            .fold(0, |m, (i, _)| m | 1 << i)
    }

    fn subset_edges(&self, mask: u128) -> Vec<Edge> {
        self.f_cross
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect()
    }
}

/// Condition C3 failure: `f'`, the subset `F` and the value `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct C3Witness {
    pub f_prime: Edge,
    pub subset: Vec<Edge>,
    pub k: usize,
}

/// Outcome of the five necessary cut conditions, with every violating object.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CutConditionReport {
    /// Cut edges contained in no `(vw, C)`-connected component.
    pub c1: Vec<Edge>,
    /// Subsets `F` of the crossing lifted edges.
    pub c2: Vec<Vec<Edge>>,
    pub c3: Vec<C3Witness>,
    /// Node sequences of paths in the crossing graph.
    pub c4: Vec<Vec<NodeId>>,
    /// Edge sets of cycles in the crossing graph.
    pub c5: Vec<Vec<Edge>>,
    /// Set when the V_0 sets fell back to the full sides.
    pub v0_fallback: bool,
}

impl CutConditionReport {
    pub fn holds(&self, condition: usize) -> bool {
        match condition {
            1 => self.c1.is_empty(),
            2 => self.c2.is_empty(),
            3 => self.c3.is_empty(),
            4 => self.c4.is_empty(),
            5 => self.c5.is_empty(),
            _ => panic!("conditions are numbered 1 to 5"),
        }
    }

    pub fn violated(&self) -> Vec<String> {
        (1..=5)
            .filter(|&c| !self.holds(c))
            .map(|c| format!("C{c}"))
            .collect()
    }

    pub fn all_hold(&self) -> bool {
        (1..=5).all(|c| self.holds(c))
    }
}

/// Evaluates C1 to C5 by exhaustive search over components, subsets of the
/// crossing lifted edges, and paths and cycles of the crossing graph.
pub fn check_cut_conditions(ctx: &VwCutContext) -> CutConditionReport {
    let mut report = CutConditionReport {
        v0_fallback: ctx.v0_fallback,
        ..Default::default()
    };
    let nf = ctx.f_cross.len();
    assert!(
        nf < 64,
        "too many crossing lifted edges for subset enumeration"
    );

    // F_{V*} per component, as a mask over f_cross.
    let fmasks: Vec<u128> = ctx
        .components
        .iter()
        .map(|c| ctx.f_cross_mask(c.nodes))
        .collect();

    // C1, plus the distinct F_{V*} masks seen by components holding each cut edge.
    let mut per_cut: Vec<Vec<u128>> = Vec::new();
    for e in &ctx.cut {
        let mut ms: Vec<u128> = ctx
            .components
            .iter()
            .zip(&fmasks)
            .filter(|(c, _)| e.inside(c.nodes))
            .map(|(_, m)| *m)
            .collect();
        if ms.is_empty() {
            report.c1.push(*e);
        }
        ms.sort_unstable();
        ms.dedup();
        per_cut.push(ms);
    }

    let mut distinct: Vec<u128> = fmasks.clone();
    distinct.sort_unstable();
    distinct.dedup();

    for sub in 1u128..1 << nf {
        let count = |m: u128| (m & sub).count_ones();
        let separates = per_cut
            .iter()
            .any(|ms| ms.iter().any(|&m| count(m) != count(ms[0])));
        if !separates {
            report.c2.push(ctx.subset_edges(sub));
        }
    }

    for fi in 0..nf {
        let fb = 1u128 << fi;
        let rest = ((1u128 << nf) - 1) & !fb;
        let mut sub = rest;
        let mut subsets = Vec::new();
        while sub != 0 {
            subsets.push(sub);
            sub = (sub - 1) & rest;
        }
        subsets.sort_unstable();
        for sub in subsets {
            let count = |m: u128| (m & sub).count_ones() as usize;
            let with: Vec<usize> = distinct
                .iter()
                .filter(|&&m| m & fb != 0)
                .map(|&m| count(m))
                .collect();
            let without: Vec<usize> = distinct
                .iter()
                .filter(|&&m| m & fb == 0)
                .map(|&m| count(m))
                .collect();
            let size = sub.count_ones() as usize;
            for k in 0..=size {
                let violated = with.is_empty()
                    || without.is_empty()
                    || (with.iter().all(|&a| a == k) && without.iter().all(|&b| b == 0));
                if violated {
                    report.c3.push(C3Witness {
                        f_prime: ctx.f_cross[fi],
                        subset: ctx.subset_edges(sub),
                        k,
                    });
                }
            }
        }
    }

    let proper: Vec<NodeMask> = ctx.proper_components().map(|c| c.nodes).collect();
    let cg = &ctx.crossing_graph;
    for v1 in mask_nodes(ctx.side_v) {
        for w1 in mask_nodes(ctx.side_w) {
            for p in cg.enumerate_vw_paths(v1, w1).expect("distinct sides") {
                // The lone edge of a one-edge cut restates the face equation.
                if ctx.cut.len() == 1 && p.edges == ctx.cut {
                    continue;
                }
                let on = p.node_mask();
                let (pv, pw) = (on & ctx.side_v, on & ctx.side_w);
                let ok = proper.iter().any(|&s| {
                    (s & bit(v1) == 0 || pw & !s != 0) && (s & bit(w1) == 0 || pv & !s != 0)
                });
                if !ok {
                    report.c4.push(p.nodes);
                }
            }
        }
    }

    for y in cg.enumerate_cycles() {
        let on = y.node_mask();
        let (yv, yw) = (on & ctx.side_v, on & ctx.side_w);
        if !proper.iter().any(|&s| yv & !s != 0 && yw & !s != 0) {
            report.c5.push(y.edges);
        }
    }
    report
}

/// Exact verdict for a cut consisting of one edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingleEdgeCutVerdict {
    pub facet: bool,
    pub v0_v: Vec<NodeId>,
    pub v0_w: Vec<NodeId>,
    /// Crossing lifted edges with both endpoints in the V_0 sets.
    pub violations_a: Vec<Edge>,
    /// Distinct crossing lifted edges sharing one endpoint whose other
    /// endpoints both lie in the opposite V_0 set.
    pub violations_b: Vec<(Edge, Edge)>,
}

pub fn check_single_edge_cut_facet(ctx: &VwCutContext) -> Result<SingleEdgeCutVerdict> {
    if ctx.cut.len() != 1 {
        return Err(Error::NotSingleEdgeCut(ctx.cut.len()));
    }
    let in_v0v = |n: NodeId| ctx.v0_v & bit(n) != 0;
    let in_v0w = |n: NodeId| ctx.v0_w & bit(n) != 0;
    let oriented: Vec<(Edge, NodeId, NodeId)> = ctx
        .f_cross
        .iter()
        .map(|&e| {
            let (a, b) = ctx.orient(e);
            (e, a, b)
        })
        .collect();
    let violations_a: Vec<Edge> = oriented
        .iter()
        .filter(|(_, a, b)| in_v0v(*a) && in_v0w(*b))
        .map(|t| t.0)
        .collect();
    let mut violations_b = Vec::new();
    for (i, &(e1, a1, b1)) in oriented.iter().enumerate() {
        for &(e2, a2, b2) in &oriented[i + 1..] {
            let shared_v = a1 == a2 && in_v0w(b1) && in_v0w(b2);
            let shared_w = b1 == b2 && in_v0v(a1) && in_v0v(a2);
            if shared_v || shared_w {
                violations_b.push((e1, e2));
            }
        }
    }
    Ok(SingleEdgeCutVerdict {
        facet: violations_a.is_empty() && violations_b.is_empty(),
        v0_v: mask_nodes(ctx.v0_v).collect(),
        v0_w: mask_nodes(ctx.v0_w).collect(),
        violations_a,
        violations_b,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxUpperVerdict {
    pub facet: bool,
    /// A lifted-only `f = vw` other than `e` whose `v`-`w`-cut-vertices
    /// include both endpoints of `e`.
    pub witness: Option<Edge>,
}

/// `x_e <= 1`. The lifted edge quantified over is required to differ from
/// `e`; for `e = f` the face always has full codimension one.
pub fn check_box_upper(pair: &LiftedPair, e: Edge) -> Result<BoxUpperVerdict> {
    pair.index_of(e).ok_or(Error::EdgeNotFound(e))?;
    let g = pair.base();
    let witness = pair
        .lifted_only_edges()
        .into_iter()
        .filter(|f| *f != e)
        .find(|f| {
            let cv = g.cut_vertices(f.u(), f.v()).expect("base is connected");
            e.inside(cv)
        });
    Ok(BoxUpperVerdict {
        facet: witness.is_none(),
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoxLowerVerdict {
    pub verdict: Verdict,
    pub lifted_only: bool,
    /// Third node of a triangle of `G'` through `e`.
    pub triangle: Option<NodeId>,
    /// Pair of `u`-`v`-cut-vertices other than `{u, v}` that are too close.
    pub close_cut_vertices: Option<(NodeId, NodeId)>,
    /// Triangle `(s, s', t)` with `{s, s'}` separating and `t` a cut vertex.
    pub separating_triangle: Option<(NodeId, NodeId, NodeId)>,
}

/// `0 <= x_e`. Exact for base edges; for lifted-only edges only the
/// necessary conditions are tested and a pass is inconclusive.
pub fn check_box_lower(pair: &LiftedPair, e: Edge) -> Result<BoxLowerVerdict> {
    pair.index_of(e).ok_or(Error::EdgeNotFound(e))?;
    let lifted = pair.lifted();
    let (u, v) = (e.u(), e.v());
    let triangle = mask_nodes(lifted.neighbors(u) & lifted.neighbors(v)).next();
    if !pair.is_lifted_only(e) {
        return Ok(BoxLowerVerdict {
            verdict: Verdict::from_bool(triangle.is_none()),
            lifted_only: false,
            triangle,
            close_cut_vertices: None,
            separating_triangle: None,
        });
    }
    let g = pair.base();
    let cv = g.cut_vertices(u, v)?;
    let cvs: Vec<NodeId> = mask_nodes(cv).collect();
    let mut close = None;
    'outer: for (i, &a) in cvs.iter().enumerate() {
        for &b in &cvs[i + 1..] {
            if (a, b) == (u, v) {
                continue;
            }
            let near_g = g.distance(a, b).is_some_and(|d| d < 3);
            if near_g || lifted.has_edge(a, b) {
                close = Some((a, b));
                break 'outer;
            }
        }
    }
    let all = g.all_nodes();
    let separating = |s: NodeId, t: NodeId| {
        s == u
            || s == v
            || t == u
            || t == v
            || g.reach_within(u, all & !bit(s) & !bit(t)) & bit(v) == 0
    };
    let mut sep_triangle = None;
    'tri: for a in 0..lifted.node_count() {
        for b in mask_nodes(lifted.neighbors(a) & !(bit(a) | (bit(a) - 1))) {
            for c in
                mask_nodes(lifted.neighbors(a) & lifted.neighbors(b) & !(bit(b) | (bit(b) - 1)))
            {
                for (s, s2, t) in [(b, c, a), (a, c, b), (a, b, c)] {
                    if cv & bit(t) != 0 && separating(s, s2) {
                        sep_triangle = Some((s, s2, t));
                        break 'tri;
                    }
                }
            }
        }
    }
    let failed = triangle.is_some() || close.is_some() || sep_triangle.is_some();
    Ok(BoxLowerVerdict {
        verdict: if failed {
            Verdict::NotFacet
        } else {
            Verdict::Inconclusive
        },
        lifted_only: true,
        triangle,
        close_cut_vertices: close,
        separating_triangle: sep_triangle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePathVerdict {
    pub facet: bool,
    /// Edges of `G'` joining non-consecutive nodes of the cycle.
    pub chords: Vec<Edge>,
}

/// Cycle inequalities are facets iff the cycle is chordless in `G'`; path
/// inequalities iff the path closed by `f` is.
pub fn check_cycle_path_facet(pair: &LiftedPair, tag: &InequalityTag) -> Result<CyclePathVerdict> {
    LinearInequality::from_tag(pair, tag)?;
    let (nodes, edges): (NodeMask, Vec<Edge>) = match tag {
        InequalityTag::Cycle { cycle, .. } => {
            (cycle.iter().fold(0, |m, e| m | e.mask()), cycle.clone())
        }
        InequalityTag::Path { lifted, path } => {
            let mut es: Vec<Edge> = path.windows(2).map(|w| Edge::of(w[0], w[1])).collect();
            es.push(*lifted);
            (path.iter().fold(0, |m, &n| m | bit(n)), es)
        }
        _ => return Err(Error::MalformedTag(tag.to_string())),
    };
    let chords: Vec<Edge> = pair
        .edges()
        .iter()
        .copied()
        .filter(|e| e.inside(nodes) && !edges.contains(e))
        .collect();
    Ok(CyclePathVerdict {
        facet: chords.is_empty(),
        chords,
    })
}

/// Contracts a base edge in both graphs.
pub fn contract_pair(pair: &LiftedPair, e: Edge) -> Result<LiftedPair> {
    let (base, map) = pair.base().contract_edge(e)?;
    let lifted = pair.lifted().relabel(&map, base.node_count())?;
    LiftedPair::new(base, lifted)
}

/// All minimal `vw`-cuts for a lifted-only `f = vw`, as contexts.
pub fn cut_contexts(pair: &LiftedPair, f: Edge) -> Result<Vec<VwCutContext>> {
    pair.require_lifted_only(f)?;
    pair.base()
        .enumerate_vw_cuts(f.u(), f.v())?
        .into_iter()
        .map(|c| VwCutContext::new(pair, f, c))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::FaceOracle;

    fn fig3() -> LiftedPair {
        LiftedPair::from_pairs(3, &[(0, 1), (0, 2)], &[(1, 2)]).unwrap()
    }

    #[test]
    fn context_rejects_non_cuts() {
        let p = fig3();
        let f = Edge::of(1, 2);
        assert!(VwCutContext::new(&p, f, vec![Edge::of(0, 1)]).is_ok());
        assert_eq!(
            VwCutContext::new(&p, f, vec![Edge::of(0, 1), Edge::of(0, 2)]).unwrap_err(),
            Error::NotAMinimalCut(1, 2)
        );
        assert!(matches!(
            VwCutContext::new(&p, Edge::of(0, 1), vec![Edge::of(0, 1)]),
            Err(Error::NotLiftedEdge(_))
        ));
    }

    #[test]
    fn components_on_a_path() {
        // v - u - w as 0 - 1 - 2 with f = {0,2}, C = {01}
        let p = LiftedPair::from_pairs(3, &[(0, 1), (1, 2)], &[(0, 2)]).unwrap();
        let ctx = VwCutContext::new(&p, Edge::of(0, 2), vec![Edge::of(0, 1)]).unwrap();
        let proper: Vec<NodeMask> = ctx.proper_components().map(|c| c.nodes).collect();
        assert_eq!(proper, vec![0b111]);
        let improper: Vec<NodeMask> = ctx
            .components()
            .iter()
            .filter(|c| c.kind == ComponentKind::Improper)
            .map(|c| c.nodes)
            .collect();
        assert_eq!(improper.len(), 4);
        assert!(improper.contains(&0b110) && improper.contains(&0b001));
        assert_eq!((ctx.v0_v(), ctx.v0_w()), (0b001, 0b110));
    }

    #[test]
    fn box_upper_fig3() {
        let p = fig3();
        assert!(check_box_upper(&p, Edge::of(1, 2)).unwrap().facet);
        // cut vertices of 1..2 are {0,1,2}, so both base edges are excluded
        let v = check_box_upper(&p, Edge::of(0, 1)).unwrap();
        assert_eq!((v.facet, v.witness), (false, Some(Edge::of(1, 2))));
        let oracle = FaceOracle::new(&p);
        for e in p.edges() {
            let q = LinearInequality::from_tag(&p, &InequalityTag::BoxUpper(*e)).unwrap();
            assert_eq!(
                oracle.is_facet(&q).unwrap(),
                check_box_upper(&p, *e).unwrap().facet
            );
        }
    }

    #[test]
    fn box_lower_fig3() {
        let p = fig3();
        assert_eq!(
            check_box_lower(&p, Edge::of(0, 1)).unwrap().verdict,
            Verdict::NotFacet
        );
        let f = check_box_lower(&p, Edge::of(1, 2)).unwrap();
        assert_eq!((f.verdict, f.triangle), (Verdict::NotFacet, Some(0)));
        let sq = LiftedPair::plain(Graph::cycle(4).unwrap()).unwrap();
        assert_eq!(
            check_box_lower(&sq, Edge::of(0, 1)).unwrap().verdict,
            Verdict::Facet
        );
    }

    #[test]
    fn cycle_path_examples() {
        let p = fig3();
        let tag = InequalityTag::Path {
            lifted: Edge::of(1, 2),
            path: vec![1, 0, 2],
        };
        assert!(check_cycle_path_facet(&p, &tag).unwrap().facet);
        let k4 = LiftedPair::plain(Graph::complete(4).unwrap()).unwrap();
        let tag = InequalityTag::Cycle {
            cycle: vec![
                Edge::of(0, 1),
                Edge::of(0, 3),
                Edge::of(1, 2),
                Edge::of(2, 3),
            ],
            edge: Edge::of(0, 1),
        };
        let v = check_cycle_path_facet(&k4, &tag).unwrap();
        assert_eq!(
            (v.facet, v.chords),
            (false, vec![Edge::of(0, 2), Edge::of(1, 3)])
        );
        let c4 = LiftedPair::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[(0, 2)]).unwrap();
        let tag = InequalityTag::Path {
            lifted: Edge::of(0, 2),
            path: vec![0, 1, 2],
        };
        assert!(check_cycle_path_facet(&c4, &tag).unwrap().facet);
        assert!(check_cycle_path_facet(&c4, &InequalityTag::BoxUpper(Edge::of(0, 1))).is_err());
    }

    #[test]
    fn single_edge_cut_on_four_path() {
        // v - a - b - w, C = {ab}, F = {vw}
        let p = LiftedPair::from_pairs(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 3)]).unwrap();
        let ctx = VwCutContext::new(&p, Edge::of(0, 3), vec![Edge::of(1, 2)]).unwrap();
        assert!(ctx.f_cross().is_empty());
        let v = check_single_edge_cut_facet(&ctx).unwrap();
        assert!(v.facet);
        assert!(FaceOracle::new(&p).is_facet(&ctx.inequality()).unwrap());
        assert!(check_cut_conditions(&ctx).all_hold());
    }

    #[test]
    fn single_edge_cut_with_v0_chord() {
        // 4-path plus f' = {1,2} would be a base edge; use a 5-path instead:
        // 0-1-2-3-4, f = {0,4}, C = {12}, f' = {1,3}: 1 and 3 lie in every
        // proper component.
        let p = LiftedPair::from_pairs(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], &[(0, 4), (1, 3)])
            .unwrap();
        let ctx = VwCutContext::new(&p, Edge::of(0, 4), vec![Edge::of(1, 2)]).unwrap();
        let v = check_single_edge_cut_facet(&ctx).unwrap();
        assert_eq!(v.violations_a, vec![Edge::of(1, 3)]);
        assert!(!v.facet);
        assert!(!FaceOracle::new(&p).is_facet(&ctx.inequality()).unwrap());
        let two = VwCutContext::new(&fig3(), Edge::of(1, 2), vec![Edge::of(0, 1)]).unwrap();
        assert!(check_single_edge_cut_facet(&two).is_ok());
    }

    #[test]
    fn contraction_of_fig3() {
        let c = contract_pair(&fig3(), Edge::of(0, 1)).unwrap();
        assert_eq!((c.node_count(), c.dim()), (2, 1));
        assert!(c.lifted_only_edges().is_empty());
    }
}
