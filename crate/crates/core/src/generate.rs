//! Seeded instance generators and the named fixtures used by tests and the
//! CLI.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::lifting::LiftedPair;
use crate::solver::CostFunction;

/// Resampling budget for connected random base graphs.
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Grid(usize, usize),
    Complete(usize),
    Random { n: usize, p: f64 },
}

/// A generator description such as `grid(2,3) lift=0.3 seed=4` or
/// `random n=5 p=0.6 lift=0.5 seed=7`.
#[derive(Clone, Debug, PartialEq)]
pub struct GenSpec {
    pub family: Family,
    pub lift: f64,
    pub seed: Option<u64>,
    pub extra: Vec<Edge>,
}

impl fmt::Display for GenSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.family {
            Family::Path(n) => write!(f, "path n={n}")?,
            Family::Cycle(n) => write!(f, "cycle n={n}")?,
            Family::Grid(r, c) => write!(f, "grid rows={r} cols={c}")?,
            Family::Complete(n) => write!(f, "complete n={n}")?,
            Family::Random { n, p } => write!(f, "random n={n} p={p}")?,
        }
        if self.lift > 0.0 {
            write!(f, " lift={}", self.lift)?;
        }
        if let Some(s) = self.seed {
            write!(f, " seed={s}")?;
        }
        if !self.extra.is_empty() {
            let es: Vec<String> = self
                .extra
                .iter()
                .map(|e| format!("{}-{}", e.u(), e.v()))
                .collect();
            write!(f, " extra={}", es.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for GenSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("generator spec {s:?}: {why}"));
        let s = s.trim();
        let name_end = s
            .find(|c: char| c == '(' || c.is_whitespace())
            .unwrap_or(s.len());
        let name = &s[..name_end];
        let mut rest = &s[name_end..];
        let mut positional: Vec<String> = Vec::new();
        if let Some(r) = rest.strip_prefix('(') {
            let close = r.find(')').ok_or_else(|| bad("unclosed parenthesis"))?;
            positional = r[..close]
                .split(',')
                .map(|t| t.trim().to_string())
                .filter(|t| !t.is_empty())
                .collect();
            rest = &r[close + 1..];
        }
        let mut keys: Vec<(String, String)> = Vec::new();
        for tok in rest.split_whitespace() {
            let (k, v) = tok
                .split_once('=')
                .ok_or_else(|| bad(&format!("expected key=value, got {tok:?}")))?;
            keys.push((k.to_string(), v.to_string()));
        }
        let get = |k: &str, pos: usize| -> Option<String> {
            keys.iter()
                .find(|(kk, _)| kk == k)
                .map(|(_, v)| v.clone())
                .or_else(|| positional.get(pos).cloned())
        };
        let int = |k: &str, pos: usize| -> Result<usize> {
            get(k, pos)
                .ok_or_else(|| bad(&format!("missing {k}")))?
                .parse()
                .map_err(|_| bad(&format!("bad {k}")))
        };
        let prob = |k: &str, pos: usize| -> Result<Option<f64>> {
            match get(k, pos) {
                None => Ok(None),
                Some(v) => {
                    let p: f64 = v.parse().map_err(|_| bad(&format!("bad {k}")))?;
                    if !(0.0..=1.0).contains(&p) {
                        return Err(bad(&format!("{k} must lie in [0, 1]")));
                    }
                    Ok(Some(p))
                }
            }
        };
        let (family, lift_pos, seed_pos) = match name {
            "path" => (Family::Path(int("n", 0)?), 1, 2),
            "cycle" => (Family::Cycle(int("n", 0)?), 1, 2),
            "complete" => (Family::Complete(int("n", 0)?), 1, 2),
            "grid" => (Family::Grid(int("rows", 0)?, int("cols", 1)?), 2, 3),
            "random" => {
                let p = prob("p", 1)?.ok_or_else(|| bad("missing p"))?;
                (Family::Random { n: int("n", 0)?, p }, 2, 3)
            }
            other => return Err(bad(&format!("unknown family {other:?}"))),
        };
        let lift = prob("lift", lift_pos)?.unwrap_or(0.0);
        let seed = match get("seed", seed_pos) {
            None => None,
            Some(v) => Some(v.parse().map_err(|_| bad("bad seed"))?),
        };
        let extra = match keys.iter().find(|(k, _)| k == "extra") {
            None => Vec::new(),
            Some((_, v)) => v
                .split(',')
                .map(|t| t.parse::<Edge>())
                .collect::<Result<_>>()?,
        };
        let known = ["n", "p", "rows", "cols", "lift", "seed", "extra"];
        if let Some((k, _)) = keys.iter().find(|(k, _)| !known.contains(&k.as_str())) {
            return Err(bad(&format!("unknown key {k:?}")));
        }
        Ok(GenSpec {
            family,
            lift,
            seed,
            extra,
        })
    }
}

impl GenSpec {
    /// Builds the pair. The spec's own seed wins over `default_seed`.
    pub fn generate(&self, default_seed: u64) -> Result<LiftedPair> {
        let seed = self.seed.unwrap_or(default_seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let base = match &self.family {
            Family::Path(n) => Graph::path(*n)?,
            Family::Cycle(n) => Graph::cycle(*n)?,
            Family::Grid(r, c) => Graph::grid(*r, *c)?,
            Family::Complete(n) => Graph::complete(*n)?,
            Family::Random { n, p } => random_connected(*n, *p, &mut rng)?,
        };
        let n = base.node_count();
        let mut extra: Vec<Edge> = self
            .extra
            .iter()
            .copied()
            .filter(|e| !base.contains_edge(*e))
            .collect();
        for e in &self.extra {
            if e.v() >= n {
                return Err(Error::NodeOutOfRange(e.u(), e.v(), n));
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let e = Edge::of(u, v);
                if !base.contains_edge(e) && rng.gen_bool(self.lift) && !extra.contains(&e) {
                    extra.push(e);
                }
            }
        }
        let lifted = Graph::from_edges(n, base.edges().iter().chain(&extra))?;
        LiftedPair::new(base, lifted)
    }
}

/// Erdős–Rényi graph, resampled until connected.
pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parse("random graphs need at least one node".into()));
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut pairs = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    pairs.push((u, v));
                }
            }
        }
        let g = Graph::new(n, pairs)?;
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::Parse(format!(
        "no connected sample for n={n}, p={p} after {MAX_ATTEMPTS} attempts"
    )))
}

/// Random pair with a connected base graph; every non-base pair becomes a
/// lifted edge with probability `lift`.
pub fn random_pair<R: Rng>(n: usize, p: f64, lift: f64, rng: &mut R) -> Result<LiftedPair> {
    let base = random_connected(n, p, rng)?;
    let mut extra = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !base.has_edge(u, v) && rng.gen_bool(lift) {
                extra.push(Edge::of(u, v));
            }
        }
    }
    let lifted = Graph::from_edges(n, base.edges().iter().chain(&extra))?;
    LiftedPair::new(base, lifted)
}

/// The `count` small random pairs used by the verification suites: up to
/// six nodes and at most `max_edges` edges in `E'`.
pub fn random_small_pairs(count: usize, max_edges: usize, seed: u64) -> Vec<LiftedPair> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let n = rng.gen_range(3..=6);
        let p = rng.gen_range(0.3..0.8);
        let lift = rng.gen_range(0.2..0.7);
        let pair = random_pair(n, p, lift, &mut rng).expect("small random pairs are valid");
        if pair.dim() <= max_edges && !pair.lifted_only_edges().is_empty() {
            out.push(pair);
        }
    }
    out
}

/// Uniform integer costs in `[lo, hi]` for every edge of `E'`.
pub fn random_costs<R: Rng>(pair: &LiftedPair, lo: i64, hi: i64, rng: &mut R) -> CostFunction {
    let costs = (0..pair.dim()).map(|_| rng.gen_range(lo..=hi)).collect();
    CostFunction::from_vec(pair, costs).expect("one cost per edge")
}

/// A lifted-only edge with a minimal cut from one of the cut-condition
/// figures, and the condition the figure violates.
#[derive(Clone, Debug)]
pub struct CutFixture {
    pub f: Edge,
    pub cut: Vec<Edge>,
    pub condition: usize,
    /// Names used in the figure for edges the witnesses refer to.
    pub names: Vec<(&'static str, Edge)>,
}

impl CutFixture {
    pub fn edge(&self, name: &str) -> Edge {
        self.names
            .iter()
            .find(|(n, _)| *n == name)
            .map(|(_, e)| *e)
            .expect("named edge")
    }
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub pair: LiftedPair,
    pub costs: Option<CostFunction>,
    pub cut: Option<CutFixture>,
}

pub const FIXTURE_NAMES: &[&str] = &[
    "fig2",
    "fig3",
    "fig4a",
    "fig4b",
    "fig6",
    "fig6-multicut",
    "c4-k4",
    "grid2x3-lift3",
    "fig7a",
    "fig7b",
    "fig7c",
    "fig7d",
    "fig7e",
    "fig7f",
    "fig7g",
    "fig7h",
    "fig7i",
    "fig7j",
    "fig7k",
];

fn pair(n: usize, base: &[(NodeId, NodeId)], lifted: &[(NodeId, NodeId)]) -> LiftedPair {
    LiftedPair::from_pairs(n, base, lifted).expect("fixture is well formed")
}

fn e(a: NodeId, b: NodeId) -> Edge {
    Edge::of(a, b)
}

fn cut_fixture(
    n: usize,
    base: &[(NodeId, NodeId)],
    lifted: &[(NodeId, NodeId)],
    f: (NodeId, NodeId),
    cut: &[(NodeId, NodeId)],
    condition: usize,
    names: Vec<(&'static str, Edge)>,
) -> (LiftedPair, Option<CutFixture>) {
    let mut cut: Vec<Edge> = cut.iter().map(|&(a, b)| e(a, b)).collect();
    cut.sort();
    (
        pair(n, base, lifted),
        Some(CutFixture {
            f: e(f.0, f.1),
            cut,
            condition,
            names,
        }),
    )
}

/// Looks up a named fixture. Node ids follow the figure's drawing order.
pub fn fixture(name: &str) -> Result<Fixture> {
    let fig3 = || pair(3, &[(0, 1), (0, 2)], &[(1, 2)]);
    let k3 = || LiftedPair::plain(Graph::complete(3).expect("K3")).expect("K3 pair");
    let (name, (pair, cut), costs): (
        &'static str,
        (LiftedPair, Option<CutFixture>),
        Option<Vec<i64>>,
    ) = match name {
        "fig2" => ("fig2", (k3(), None), None),
        "fig3" => ("fig3", (fig3(), None), None),
        "fig4a" => (
            "fig4a",
            (
                pair(4, &[(0, 1), (1, 2), (2, 3)], &[(0, 2), (1, 3), (0, 3)]),
                None,
            ),
            None,
        ),
        "fig4b" => (
            "fig4b",
            (
                pair(
                    6,
                    &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)],
                    &[(0, 2), (3, 5), (2, 5)],
                ),
                None,
            ),
            None,
        ),
        "fig6" => ("fig6", (fig3(), None), Some(vec![-1, -1, 3])),
        "fig6-multicut" => ("fig6-multicut", (k3(), None), Some(vec![-1, -1, 3])),
        "c4-k4" => (
            "c4-k4",
            (
                pair(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], &[(0, 2), (1, 3)]),
                None,
            ),
            None,
        ),
        "grid2x3-lift3" => (
            "grid2x3-lift3",
            (grid_with_lifted(2, 3, 3, 2024), None),
            None,
        ),
        // v=0 s=1 w=2 t=3; C1 fails for e = st
        "fig7a" => (
            "fig7a",
            cut_fixture(
                4,
                &[(0, 1), (1, 2), (1, 3), (2, 3)],
                &[(0, 2)],
                (0, 2),
                &[(1, 2), (1, 3)],
                1,
                vec![("e", e(1, 3))],
            ),
            None,
        ),
        // path 0-1-2-3, f' = rs = 13
        "fig7b" => (
            "fig7b",
            cut_fixture(
                4,
                &[(0, 1), (1, 2), (2, 3)],
                &[(1, 3), (0, 3)],
                (0, 3),
                &[(1, 2)],
                2,
                vec![("f'", e(1, 3))],
            ),
            None,
        ),
        // v=0 s=1 r=2 w=3
        "fig7c" => (
            "fig7c",
            cut_fixture(
                4,
                &[(0, 1), (0, 2), (1, 3), (2, 3)],
                &[(0, 3), (1, 2)],
                (0, 3),
                &[(0, 1), (2, 3)],
                2,
                vec![("rs", e(1, 2))],
            ),
            None,
        ),
        // v=0 b=1 c=2 w=3 t=4
        "fig7d" => (
            "fig7d",
            cut_fixture(
                5,
                &[(0, 1), (1, 2), (2, 4), (2, 3), (0, 4)],
                &[(0, 3), (1, 3)],
                (0, 3),
                &[(1, 2), (2, 4)],
                2,
                vec![("f'", e(1, 3))],
            ),
            None,
        ),
        // v=0, top row 1..6 (1 on the right), bottom row 7..12, w=13
        "fig7e" => (
            "fig7e",
            cut_fixture(
                14,
                &[
                    (0, 1),
                    (0, 6),
                    (13, 7),
                    (13, 12),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 6),
                    (7, 8),
                    (8, 9),
                    (9, 10),
                    (10, 11),
                    (11, 12),
                    (1, 7),
                    (1, 8),
                    (2, 7),
                    (3, 9),
                    (4, 10),
                    (5, 12),
                    (6, 11),
                    (6, 12),
                ],
                &[(0, 13), (3, 10), (4, 9)],
                (0, 13),
                &[
                    (1, 7),
                    (1, 8),
                    (2, 7),
                    (3, 9),
                    (4, 10),
                    (5, 12),
                    (6, 11),
                    (6, 12),
                ],
                2,
                vec![("f1", e(3, 10)), ("f2", e(4, 9))],
            ),
            None,
        ),
        // v=0, 1, w=2, 3
        "fig7f" => (
            "fig7f",
            cut_fixture(
                4,
                &[(0, 1), (1, 2), (2, 3)],
                &[(0, 3), (1, 3), (0, 2)],
                (0, 2),
                &[(1, 2)],
                3,
                vec![("f'", e(0, 3)), ("f''", e(1, 3))],
            ),
            None,
        ),
        // 0, v=1, 2, 3 (upper), 4 (lower), w=5
        "fig7g" => (
            "fig7g",
            cut_fixture(
                6,
                &[(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5)],
                &[(0, 5), (0, 3), (0, 4), (1, 5)],
                (1, 5),
                &[(2, 3), (2, 4)],
                3,
                vec![("f'", e(0, 5)), ("f1", e(0, 3)), ("f2", e(0, 4))],
            ),
            None,
        ),
        // v=0 v'=1 a=2 b=3 c=4 d=5 g=6 h=7 w'=8 w=9
        "fig7h" => (
            "fig7h",
            cut_fixture(
                10,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 8),
                    (1, 5),
                    (5, 6),
                    (6, 7),
                    (7, 8),
                    (8, 9),
                ],
                &[(2, 8), (2, 7), (1, 7), (0, 9)],
                (0, 9),
                &[(3, 4), (5, 6)],
                4,
                vec![("f1", e(1, 7)), ("f2", e(2, 7)), ("f3", e(2, 8))],
            ),
            None,
        ),
        // v=v'=0, 1, 2 down the left; 3, 4, w=w'=5 down the right
        "fig7i" => (
            "fig7i",
            cut_fixture(
                6,
                &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (2, 5)],
                &[(1, 3), (1, 5), (1, 4), (0, 5)],
                (0, 5),
                &[(0, 3), (2, 5)],
                4,
                vec![
                    ("e", e(0, 3)),
                    ("f1", e(1, 3)),
                    ("f2", e(1, 5)),
                    ("f'", e(1, 4)),
                ],
            ),
            None,
        ),
        // v=0 1 2 3 4 | 5 6 w=7 on top, 8 | 9 10 11 below
        "fig7j" => (
            "fig7j",
            cut_fixture(
                12,
                &[
                    (0, 1),
                    (1, 2),
                    (2, 3),
                    (3, 4),
                    (4, 5),
                    (5, 6),
                    (6, 7),
                    (1, 8),
                    (8, 9),
                    (9, 10),
                    (10, 11),
                    (11, 6),
                ],
                &[(2, 10), (2, 11), (3, 10), (3, 11), (0, 7)],
                (0, 7),
                &[(4, 5), (8, 9)],
                5,
                vec![
                    ("f1", e(3, 11)),
                    ("f2", e(2, 11)),
                    ("f3", e(2, 10)),
                    ("f4", e(3, 10)),
                ],
            ),
            None,
        ),
        // v=0, 1, 2 down the left; 3, 4, w=5 down the right
        "fig7k" => (
            "fig7k",
            cut_fixture(
                6,
                &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (2, 5)],
                &[(0, 4), (1, 3), (1, 4), (0, 5)],
                (0, 5),
                &[(0, 3), (2, 5)],
                5,
                vec![
                    ("e", e(0, 3)),
                    ("f1", e(1, 3)),
                    ("f2", e(1, 4)),
                    ("f3", e(0, 4)),
                ],
            ),
            None,
        ),
        other => return Err(Error::Parse(format!("unknown fixture {other:?}"))),
    };
    let costs = costs
        .map(|c| CostFunction::from_vec(&pair, c))
        .transpose()?;
    Ok(Fixture {
        name,
        pair,
        costs,
        cut,
    })
}

/// Grid base graph with `k` distinct lifted edges drawn uniformly from the
/// non-adjacent node pairs.
pub fn grid_with_lifted(rows: usize, cols: usize, k: usize, seed: u64) -> LiftedPair {
    let base = Graph::grid(rows, cols).expect("grid");
    let n = base.node_count();
    let mut candidates: Vec<Edge> = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if !base.has_edge(u, v) {
                candidates.push(Edge::of(u, v));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let chosen: Vec<Edge> =
        rand::seq::index::sample(&mut rng, candidates.len(), k.min(candidates.len()))
            .into_iter()
            .map(|i| candidates[i])
            .collect();
    let lifted = Graph::from_edges(n, base.edges().iter().chain(&chosen)).expect("grid lifting");
    LiftedPair::new(base, lifted).expect("grid pair")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_parsing() {
        let s: GenSpec = "random n=5 p=0.6 lift=0.5 seed=7".parse().unwrap();
        assert_eq!(s.family, Family::Random { n: 5, p: 0.6 });
        assert_eq!((s.lift, s.seed), (0.5, Some(7)));
        let s: GenSpec = "grid(3, 4)".parse().unwrap();
        assert_eq!(s.family, Family::Grid(3, 4));
        let s: GenSpec = "random(5, 0.6, 0.5, 7)".parse().unwrap();
        assert_eq!(s.seed, Some(7));
        assert!("blob(3)".parse::<GenSpec>().is_err());
        assert!("path n=3 lift=2".parse::<GenSpec>().is_err());
        assert!("path n=3 colour=red".parse::<GenSpec>().is_err());
        let again: GenSpec = s.to_string().parse().unwrap();
        assert_eq!(again, s);
    }

    #[test]
    fn deterministic_families() {
        let p = "path(3) extra=0-2"
            .parse::<GenSpec>()
            .unwrap()
            .generate(0)
            .unwrap();
        assert_eq!(
            (p.base().edge_count(), p.lifted_only_edges()),
            (2, vec![Edge::of(0, 2)])
        );
        let k3 = "complete(3)"
            .parse::<GenSpec>()
            .unwrap()
            .generate(0)
            .unwrap();
        assert!(k3.lifted_only_edges().is_empty());
        let g = "grid(3,4)".parse::<GenSpec>().unwrap().generate(0).unwrap();
        assert_eq!((g.node_count(), g.dim()), (12, 17));
    }

    #[test]
    fn random_is_seeded_and_connected() {
        let spec: GenSpec = "random n=6 p=0.3 lift=0.5 seed=11".parse().unwrap();
        let a = spec.generate(0).unwrap();
        let b = spec.generate(99).unwrap();
        assert_eq!(a.edges(), b.edges());
        assert!(a.base().is_connected());
        for p in random_small_pairs(20, 12, 5) {
            assert!(p.dim() <= 12 && p.node_count() <= 6);
        }
    }

    #[test]
    fn fixtures_load() {
        for name in FIXTURE_NAMES {
            let f = fixture(name).unwrap();
            assert_eq!(f.name, *name);
            if let Some(c) = &f.cut {
                crate::facets::VwCutContext::new(&f.pair, c.f, c.cut.clone()).unwrap();
            }
        }
        assert!(fixture("fig99").is_err());
    }
}
