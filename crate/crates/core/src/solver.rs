//! Minimum cost lifted multicut: enumeration, branch-and-bound, a greedy
//! merge heuristic, and separation for the cycle, path and cut families.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bit, mask_nodes, Edge, Graph, NodeId, NodeMask};
use crate::lifting::{self, EdgeLabeling, LiftedPair};
use crate::polytope::{InequalityTag, LinearInequality, Rational};

/// Node count above which [`solve_exact`] refuses to enumerate.
pub const DEFAULT_MAX_NODES: usize = 12;

/// Environment variable that replaces [`DEFAULT_MAX_NODES`].
pub const MAX_NODES_ENV: &str = "LMC_MAX_NODES";

pub fn node_limit_from_env() -> usize {
    std::env::var(MAX_NODES_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_NODES)
}

/// Integer cost per edge of `E'`, in canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CostFunction {
    costs: Vec<i64>,
}

impl CostFunction {
    pub fn new(pair: &LiftedPair, costs: &BTreeMap<Edge, i64>) -> Result<Self> {
        if let Some(e) = costs.keys().find(|e| pair.index_of(**e).is_none()) {
            return Err(Error::EdgeNotFound(*e));
        }
        let costs = pair
            .edges()
            .iter()
            .map(|e| costs.get(e).copied().ok_or(Error::MissingCost(*e)))
            .collect::<Result<_>>()?;
        Ok(CostFunction { costs })
    }

    pub fn from_vec(pair: &LiftedPair, costs: Vec<i64>) -> Result<Self> {
        if costs.len() != pair.dim() {
            return Err(Error::LengthMismatch {
                expected: pair.dim(),
                actual: costs.len(),
            });
        }
        Ok(CostFunction { costs })
    }

    pub fn costs(&self) -> &[i64] {
        &self.costs
    }

    pub fn objective(&self, x: &EdgeLabeling) -> i64 {
        x.ones_indices().map(|i| self.costs[i]).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Certificate {
    Optimal,
    Heuristic,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub labeling: EdgeLabeling,
    pub objective: i64,
    pub certificate: Certificate,
    pub stats: SolveStats,
}

/// Enumerates every decomposition of `G` under the environment's node
/// guard. Ties go to the smallest labeling.
pub fn solve_exact(pair: &LiftedPair, c: &CostFunction) -> Result<Solution> {
    solve_exact_with_limit(pair, c, Some(node_limit_from_env()))
}

/// As [`solve_exact`] with an explicit guard; `None` disables it.
pub fn solve_exact_with_limit(
    pair: &LiftedPair,
    c: &CostFunction,
    limit: Option<usize>,
) -> Result<Solution> {
    if let Some(limit) = limit {
        if pair.node_count() > limit {
            return Err(Error::InstanceTooLarge {
                nodes: pair.node_count(),
                limit,
            });
        }
    }
    check_costs(pair, c)?;
    let start = Instant::now();
    let mut best: Option<(i64, EdgeLabeling)> = None;
    let mut seen = 0u64;
    lifting::for_each_lifted_multicut(pair, &mut |x| {
        seen += 1;
        let obj = c.objective(&x);
        if best.as_ref().is_none_or(|(b, y)| (obj, x) < (*b, *y)) {
            best = Some((obj, x));
        }
    });
    let (objective, labeling) = best.expect("a connected graph has at least one decomposition");
    Ok(Solution {
        labeling,
        objective,
        certificate: Certificate::Optimal,
        stats: SolveStats {
            nodes_explored: seen,
            wall_time: start.elapsed(),
        },
    })
}

fn check_costs(pair: &LiftedPair, c: &CostFunction) -> Result<()> {
    if c.costs.len() != pair.dim() {
        return Err(Error::LengthMismatch {
            expected: pair.dim(),
            actual: c.costs.len(),
        });
    }
    Ok(())
}

#[derive(Clone)]
struct Partial {
    parent: Vec<NodeId>,
    /// Pairs of roots that must stay apart.
    apart: Vec<(NodeId, NodeId)>,
}

impl Partial {
    fn find(&self, mut n: NodeId) -> NodeId {
        while self.parent[n] != n {
            n = self.parent[n];
        }
        n
    }

    fn separated(&self, a: NodeId, b: NodeId) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.apart.iter().any(|&(p, q)| {
            let (rp, rq) = (self.find(p), self.find(q));
            (rp == ra && rq == rb) || (rp == rb && rq == ra)
        })
    }

    /// Joins the classes of `a` and `b`; false if that breaks a separation.
    fn join(&mut self, a: NodeId, b: NodeId) -> bool {
        if self.separated(a, b) {
            return false;
        }
        let (ra, rb) = (self.find(a), self.find(b));
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn blocks(&self, n: usize) -> Vec<NodeMask> {
        let mut by_root: BTreeMap<NodeId, NodeMask> = BTreeMap::new();
        for v in 0..n {
            *by_root.entry(self.find(v)).or_default() |= bit(v);
        }
        by_root.into_values().collect()
    }
}

struct Search<'a> {
    pair: &'a LiftedPair,
    c: &'a CostFunction,
    base_edges: Vec<(Edge, usize)>,
    lifted: Vec<(Edge, usize)>,
    best: (i64, EdgeLabeling),
    explored: u64,
}

impl Search<'_> {
    fn bound(&self, state: &Partial, depth: usize, labels: &[bool]) -> i64 {
        let mut b = 0;
        for (k, &(_, i)) in self.base_edges.iter().enumerate() {
            let ci = self.c.costs[i];
            if k < depth {
                if labels[k] {
                    b += ci;
                }
            } else {
                b += ci.min(0);
            }
        }
        for &(e, i) in &self.lifted {
            let ci = self.c.costs[i];
            if state.find(e.u()) == state.find(e.v()) {
                continue;
            }
            b += if state.separated(e.u(), e.v()) {
                ci
            } else {
                ci.min(0)
            };
        }
        b
    }

    fn dfs(&mut self, state: Partial, depth: usize, labels: &mut Vec<bool>) {
        self.explored += 1;
        if self.bound(&state, depth, labels) > self.best.0 {
            return;
        }
        if depth == self.base_edges.len() {
            let x = self
                .pair
                .labeling_from_blocks(&state.blocks(self.pair.node_count()));
            let obj = self.c.objective(&x);
            if (obj, x) < self.best {
                self.best = (obj, x);
            }
            return;
        }
        let (e, _) = self.base_edges[depth];
        let mut joined = state.clone();
        if joined.join(e.u(), e.v()) {
            labels.push(false);
            self.dfs(joined, depth + 1, labels);
            labels.pop();
        }
        if state.find(e.u()) != state.find(e.v()) {
            let mut split = state;
            split.apart.push((e.u(), e.v()));
            labels.push(true);
            self.dfs(split, depth + 1, labels);
            labels.pop();
        }
    }
}

/// Depth-first search over base-edge labels (0 first) with union-find
/// propagation. Lower bound: fixed cost plus every negative cost still open.
pub fn solve_branch_and_bound(pair: &LiftedPair, c: &CostFunction) -> Result<Solution> {
    check_costs(pair, c)?;
    let start = Instant::now();
    let base_edges: Vec<(Edge, usize)> = pair
        .base_indices()
        .iter()
        .map(|&i| (pair.edges()[i], i))
        .collect();
    let lifted: Vec<(Edge, usize)> = pair
        .lifted_only_indices()
        .iter()
        .map(|&i| (pair.edges()[i], i))
        .collect();
    let ones = EdgeLabeling::ones(pair.dim());
    let mut search = Search {
        pair,
        c,
        base_edges,
        lifted,
        best: (c.objective(&ones), ones),
        explored: 0,
    };
    let root = Partial {
        parent: (0..pair.node_count()).collect(),
        apart: Vec::new(),
    };
    search.dfs(root, 0, &mut Vec::new());
    Ok(Solution {
        labeling: search.best.1,
        objective: search.best.0,
        certificate: Certificate::Optimal,
        stats: SolveStats {
            nodes_explored: search.explored,
            wall_time: start.elapsed(),
        },
    })
}

/// Starts from singletons and repeatedly merges the two `G`-adjacent
/// blocks with the largest positive gain, the summed cost of the `E'` edges
/// between them. Ties go to the smallest pair of block minima.
pub fn solve_greedy(pair: &LiftedPair, c: &CostFunction) -> Result<Solution> {
    check_costs(pair, c)?;
    let start = Instant::now();
    let g = pair.base();
    let mut blocks: Vec<NodeMask> = (0..pair.node_count()).map(bit).collect();
    let mut rounds = 0u64;
    loop {
        rounds += 1;
        let mut best: Option<(i64, usize, usize)> = None;
        for i in 0..blocks.len() {
            for j in i + 1..blocks.len() {
                let (a, b) = (blocks[i], blocks[j]);
                let adjacent = g
                    .edges()
                    .iter()
                    .any(|e| e.crosses(a) && e.crosses(b) && e.inside(a | b));
                if !adjacent {
                    continue;
                }
                let gain: i64 = pair
                    .edges()
                    .iter()
                    .zip(&c.costs)
                    .filter(|(e, _)| e.inside(a | b) && e.crosses(a))
                    .map(|(_, ci)| *ci)
                    .sum();
                if gain > 0 && best.is_none_or(|(bg, _, _)| gain > bg) {
                    best = Some((gain, i, j));
                }
            }
        }
        let Some((_, i, j)) = best else { break };
        blocks[i] |= blocks[j];
        blocks.remove(j);
    }
    let labeling = pair.labeling_from_blocks(&blocks);
    Ok(Solution {
        objective: c.objective(&labeling),
        labeling,
        certificate: Certificate::Heuristic,
        stats: SolveStats {
            nodes_explored: rounds,
            wall_time: start.elapsed(),
        },
    })
}

/// A point of `[0, 1]^E'` in canonical edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalPoint {
    values: Vec<Rational>,
}

impl FractionalPoint {
    pub fn new(pair: &LiftedPair, values: Vec<Rational>) -> Result<Self> {
        if values.len() != pair.dim() {
            return Err(Error::LengthMismatch {
                expected: pair.dim(),
                actual: values.len(),
            });
        }
        if let Some(v) = values
            .iter()
            .find(|v| **v < Rational::zero() || **v > Rational::one())
        {
            return Err(Error::OutOfBox(v.to_string()));
        }
        Ok(FractionalPoint { values })
    }

    pub fn from_labeling(x: &EdgeLabeling) -> Self {
        let values = (0..x.len())
            .map(|i| {
                if x.get(i) {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect();
        FractionalPoint { values }
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Dijkstra on `g` from `s`, skipping edge `skip`; returns the path to `t`
/// and its length. Ties between equal distances go to the smaller node.
fn shortest_path(
    g: &Graph,
    weight: &dyn Fn(Edge) -> Rational,
    s: NodeId,
    t: NodeId,
    skip: Option<Edge>,
) -> Option<(Vec<NodeId>, Rational)> {
    let n = g.node_count();
    let mut dist: Vec<Option<Rational>> = vec![None; n];
    let mut prev = vec![usize::MAX; n];
    let mut done = vec![false; n];
    dist[s] = Some(Rational::zero());
    loop {
        let mut pick: Option<NodeId> = None;
        for v in 0..n {
            if done[v] {
                continue;
            }
            if let Some(d) = &dist[v] {
                if pick.is_none_or(|p| d < dist[p].as_ref().unwrap()) {
                    pick = Some(v);
                }
            }
        }
        let u = pick?;
        done[u] = true;
        if u == t {
            break;
        }
        let du = dist[u].clone().unwrap();
        for v in mask_nodes(g.neighbors(u)) {
            let e = Edge::of(u, v);
            if Some(e) == skip || done[v] {
                continue;
            }
            let nd = &du + weight(e);
            if dist[v].as_ref().is_none_or(|d| nd < *d) {
                dist[v] = Some(nd);
                prev[v] = u;
            }
        }
    }
    let mut path = vec![t];
    while *path.last().unwrap() != s {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    Some((path, dist[t].clone().unwrap()))
}

/// Minimum `s`-`t` cut of `g` under `cap`, by Edmonds-Karp; returns the
/// source side of an inclusion-minimal cut of least capacity.
fn min_cut_side(g: &Graph, cap: &dyn Fn(Edge) -> Rational, s: NodeId, t: NodeId) -> NodeMask {
    let n = g.node_count();
    // residual[u][v] for the arc u -> v
    let mut residual = vec![vec![Rational::zero(); n]; n];
    for &e in g.edges() {
        residual[e.u()][e.v()] = cap(e);
        residual[e.v()][e.u()] = cap(e);
    }
    let reach = |residual: &Vec<Vec<Rational>>| -> (NodeMask, Vec<usize>) {
        let mut prev = vec![usize::MAX; n];
        let mut seen = bit(s);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for v in mask_nodes(g.neighbors(u) & !seen) {
                if residual[u][v] > Rational::zero() {
                    seen |= bit(v);
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        (seen, prev)
    };
    loop {
        let (seen, prev) = reach(&residual);
        if seen & bit(t) == 0 {
            let sink_side = g.reach_within(t, g.all_nodes() & !seen);
            return g.all_nodes() & !sink_side;
        }
        let mut path = vec![t];
        while *path.last().unwrap() != s {
            path.push(prev[*path.last().unwrap()]);
        }
        let push = path
            .windows(2)
            .map(|w| residual[w[1]][w[0]].clone())
            .min()
            .expect("path has an arc");
        for w in path.windows(2) {
            let (u, v) = (w[1], w[0]);
            residual[u][v] -= &push;
            residual[v][u] += &push;
        }
    }
}

/// Most violated cycle, path and cut inequality at `x`, in that order, each
/// only if its violation is positive. Ties go to the first edge in
/// canonical order.
pub fn separate(pair: &LiftedPair, x: &FractionalPoint) -> Vec<LinearInequality> {
    let g = pair.base();
    let val = |e: Edge| x.values[pair.index_of(e).expect("edge of E'")].clone();
    let one_minus = |e: Edge| Rational::one() - val(e);
    let mut out = Vec::new();

    let mut best: Option<(Rational, InequalityTag)> = None;
    let consider =
        |best: &mut Option<(Rational, InequalityTag)>, viol: Rational, tag: InequalityTag| {
            if viol > Rational::zero() && best.as_ref().is_none_or(|(b, _)| viol > *b) {
                *best = Some((viol, tag));
            }
        };

    for &e in g.edges() {
        if let Some((path, len)) = shortest_path(g, &val, e.u(), e.v(), Some(e)) {
            let mut cycle: Vec<Edge> = path.windows(2).map(|w| Edge::of(w[0], w[1])).collect();
            cycle.push(e);
            cycle.sort();
            consider(
                &mut best,
                val(e) - len,
                InequalityTag::Cycle { cycle, edge: e },
            );
        }
    }
    out.extend(best.take().map(|(_, t)| t));

    let fs = pair.lifted_only_edges();
    for &f in &fs {
        let (path, len) = shortest_path(g, &val, f.u(), f.v(), None).expect("base is connected");
        consider(
            &mut best,
            val(f) - len,
            InequalityTag::Path { lifted: f, path },
        );
    }
    out.extend(best.take().map(|(_, t)| t));

    for &f in &fs {
        let side = min_cut_side(g, &one_minus, f.u(), f.v());
        let cut = g.crossing_edges(side);
        let cap: Rational = cut.iter().map(|&e| one_minus(e)).sum();
        consider(
            &mut best,
            one_minus(f) - cap,
            InequalityTag::Cut { lifted: f, cut },
        );
    }
    out.extend(best.take().map(|(_, t)| t));

    out.into_iter()
        .map(|t| {
            LinearInequality::from_tag(pair, &t).expect("separated objects belong to the pair")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::rational;

    fn fig3() -> LiftedPair {
        LiftedPair::from_pairs(3, &[(0, 1), (0, 2)], &[(1, 2)]).unwrap()
    }

    fn fig6_costs(p: &LiftedPair) -> CostFunction {
        CostFunction::from_vec(p, vec![-1, -1, 3]).unwrap()
    }

    #[test]
    fn fig6_lifted_and_plain() {
        let p = fig3();
        let s = solve_exact(&p, &fig6_costs(&p)).unwrap();
        assert_eq!(
            (s.labeling.to_string(), s.objective),
            ("000".to_string(), 0)
        );
        let k3 = LiftedPair::plain(crate::graph::Graph::complete(3).unwrap()).unwrap();
        let s = solve_exact(&k3, &fig6_costs(&k3)).unwrap();
        assert_eq!(
            (s.labeling.to_string(), s.objective),
            ("110".to_string(), -2)
        );
        let b = solve_branch_and_bound(&k3, &fig6_costs(&k3)).unwrap();
        assert_eq!((b.labeling, b.objective), (s.labeling, -2));
    }

    #[test]
    fn branch_and_bound_fig6() {
        let p = fig3();
        let b = solve_branch_and_bound(&p, &fig6_costs(&p)).unwrap();
        assert_eq!(
            (b.labeling.to_string(), b.objective),
            ("000".to_string(), 0)
        );
        let zero = CostFunction::from_vec(&p, vec![0; 3]).unwrap();
        assert_eq!(solve_branch_and_bound(&p, &zero).unwrap().objective, 0);
    }

    #[test]
    fn greedy_on_fig6_stops_at_singletons() {
        let p = fig3();
        let s = solve_greedy(&p, &fig6_costs(&p)).unwrap();
        assert_eq!(
            (s.labeling.to_string(), s.objective, s.certificate),
            ("111".to_string(), 1, Certificate::Heuristic)
        );
        let pos = CostFunction::from_vec(&p, vec![2, 1, 5]).unwrap();
        let s = solve_greedy(&p, &pos).unwrap();
        assert_eq!(
            (s.labeling.to_string(), s.objective),
            ("000".to_string(), 0)
        );
    }

    #[test]
    fn guard_and_missing_costs() {
        let big = LiftedPair::plain(crate::graph::Graph::path(13).unwrap()).unwrap();
        let c = CostFunction::from_vec(&big, vec![1; 12]).unwrap();
        assert!(matches!(
            solve_exact_with_limit(&big, &c, Some(12)),
            Err(Error::InstanceTooLarge { .. })
        ));
        assert_eq!(solve_exact_with_limit(&big, &c, None).unwrap().objective, 0);
        let p = fig3();
        let partial: BTreeMap<Edge, i64> = [(Edge::of(0, 1), 1)].into();
        assert_eq!(
            CostFunction::new(&p, &partial),
            Err(Error::MissingCost(Edge::of(0, 2)))
        );
    }

    #[test]
    fn separation_examples() {
        let p = fig3();
        let pt = |s: &str| FractionalPoint::from_labeling(&EdgeLabeling::parse(s, 3).unwrap());
        let v = separate(&p, &pt("001"));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].tag().unwrap().to_string(), "path(f=1,2;P=1-0-2)");
        assert_eq!(v[0].slack_violation(pt("001").values()), rational(1));
        let v = separate(&p, &pt("110"));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].tag().unwrap().to_string(), "cut(f=1,2;C=0,1)");
        for x in lifting::enumerate_lifted_multicuts(&p) {
            assert!(separate(&p, &FractionalPoint::from_labeling(&x)).is_empty());
        }
    }

    #[test]
    fn fractional_point_validation() {
        let p = fig3();
        let half = Rational::new(1.into(), 2.into());
        assert!(FractionalPoint::new(&p, vec![half.clone(), half.clone(), half]).is_ok());
        assert!(matches!(
            FractionalPoint::new(&p, vec![rational(2), rational(0), rational(0)]),
            Err(Error::OutOfBox(_))
        ));
        // x_f = 1, x_e1 = x_e2 = 1/3 violates the path inequality by 1/3
        let third = Rational::new(1.into(), 3.into());
        let x = FractionalPoint::new(&p, vec![third.clone(), third, rational(1)]).unwrap();
        let v = separate(&p, &x);
        assert_eq!(
            v[0].slack_violation(x.values()),
            Rational::new(1.into(), 3.into())
        );
    }
}
