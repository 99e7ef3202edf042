//! One line per acceptance criterion; exits non-zero if any fails.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lmc_core::facets::VwCutContext;
use lmc_core::generate::{self, fixture, random_costs, random_pair};
use lmc_core::lifting::{self, LiftedPair};
use lmc_core::partitions::{enumerate_multicuts, is_multicut, EdgeSubset};
use lmc_core::polytope::{self, FaceOracle, InequalityTag, LinearInequality, VectorSet};
use lmc_core::verify::{self, Suite, SuiteReport};
use lmc_core::{facets, solver, Graph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const RANDOM_PAIRS: usize = 50;
const SEED: u64 = 2024;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
        }
    }

    fn within(self, elapsed: Duration, limit: Duration) -> Self {
        if elapsed < limit {
            self
        } else {
            Outcome {
                pass: false,
                detail: format!("{}; took {elapsed:.1?}, limit {limit:?}", self.detail),
            }
        }
    }
}

fn shipped() -> Vec<(String, LiftedPair)> {
    verify::fixture_set(RANDOM_PAIRS, SEED)
}

fn from_suite(r: &SuiteReport) -> Outcome {
    let mut detail = format!(
        "{} instances, {} checks, {} disagreements",
        r.instances,
        r.checks,
        r.disagreements.len()
    );
    for d in r.disagreements.iter().take(3) {
        detail.push_str(&format!(
            "; {} {}: predicate {} oracle {}",
            d.instance, d.object, d.predicate, d.oracle
        ));
    }
    Outcome::new(r.passed() && r.checks > 0, detail)
}

fn figure_counts() -> Outcome {
    let start = Instant::now();
    let k3 = Graph::complete(3).unwrap();
    let k3_count = enumerate_multicuts(&k3).len();
    let fig3 = fixture("fig3").unwrap().pair;
    let lifted: BTreeSet<String> = lifting::enumerate_lifted_multicuts(&fig3)
        .iter()
        .map(|x| x.to_string())
        .collect();
    let expected: BTreeSet<String> = ["000", "011", "101", "111"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let all_multicuts = lifting::enumerate_lifted_multicuts(&fig3).iter().all(|x| {
        let m = EdgeSubset::from_bitstring(fig3.lifted(), &x.to_string()).unwrap();
        is_multicut(fig3.lifted(), &m)
    });
    let g_prime_count = enumerate_multicuts(fig3.lifted()).len();
    let pass = k3_count == 5 && lifted == expected && all_multicuts && lifted.len() < g_prime_count;
    Outcome::new(
        pass,
        format!("K3 {k3_count} multicuts, fig3 lifted {lifted:?} of {g_prime_count}"),
    )
    .within(start.elapsed(), Duration::from_secs(1))
}

fn full_dimension() -> Outcome {
    let start = Instant::now();
    let mut pairs: Vec<(String, LiftedPair)> = ["fig3", "c4-k4", "grid2x3-lift3"]
        .iter()
        .map(|n| (n.to_string(), fixture(n).unwrap().pair))
        .collect();
    for (i, p) in generate::random_small_pairs(RANDOM_PAIRS, 12, SEED)
        .into_iter()
        .enumerate()
    {
        pairs.push((format!("random#{i}"), p));
    }
    let r = verify::run_suite(Suite::Dimension, &pairs);
    from_suite(&r).within(start.elapsed(), Duration::from_secs(60))
}

fn feasibility_equivalence() -> Outcome {
    let start = Instant::now();
    let pairs: Vec<_> = shipped()
        .into_iter()
        .filter(|(_, p)| p.dim() <= 14)
        .collect();
    let r = verify::run_suite(Suite::Feasibility, &pairs);
    from_suite(&r).within(start.elapsed(), Duration::from_secs(120))
}

fn cycle_path_facets() -> Outcome {
    from_suite(&verify::run_suite(Suite::Cycles, &shipped()))
}

fn single_edge_cut_facets() -> Outcome {
    from_suite(&verify::run_suite(Suite::CutsSingle, &shipped()))
}

fn cut_condition_soundness() -> Outcome {
    let mut problems = Vec::new();
    for name in [
        "fig7a", "fig7b", "fig7c", "fig7d", "fig7e", "fig7f", "fig7g", "fig7h", "fig7i", "fig7j",
        "fig7k",
    ] {
        let fx = fixture(name).unwrap();
        let cut = fx.cut.clone().unwrap();
        let ctx = VwCutContext::new(&fx.pair, cut.f, cut.cut.clone()).unwrap();
        let report = facets::check_cut_conditions(&ctx);
        if FaceOracle::new(&fx.pair)
            .is_facet(&ctx.inequality())
            .unwrap()
        {
            problems.push(format!("{name} is a facet"));
        }
        if report.holds(cut.condition) {
            problems.push(format!("{name} C{} holds", cut.condition));
        }
    }
    let r = verify::run_suite(Suite::CutsNecessary, &shipped());
    let base = from_suite(&r);
    let pass = base.pass && problems.is_empty();
    Outcome::new(
        pass,
        format!("11 figures, {} problems; {}", problems.len(), base.detail),
    )
}

fn box_facets() -> Outcome {
    let r = verify::run_suite(Suite::Box, &shipped());
    let base = from_suite(&r);
    let mut contractions = 0;
    let mut mismatches = Vec::new();
    for (i, pair) in generate::random_small_pairs(20, 12, SEED + 1)
        .iter()
        .enumerate()
    {
        let oracle = FaceOracle::new(pair);
        for &e in pair
            .edges()
            .iter()
            .filter(|e| pair.base().contains_edge(**e))
        {
            let q = LinearInequality::from_tag(pair, &InequalityTag::BoxLower(e)).unwrap();
            let face = oracle.face_dimension(&q).unwrap();
            let contracted = facets::contract_pair(pair, e).unwrap();
            let xs = VectorSet::new(lifting::enumerate_lifted_multicuts(&contracted)).unwrap();
            let cd = polytope::affine_dimension(&xs);
            contractions += 1;
            if cd != face {
                mismatches.push(format!("#{i} {e}: face {face} contracted {cd}"));
            }
        }
    }
    let pass = base.pass && mismatches.is_empty() && contractions > 0;
    Outcome::new(
        pass,
        format!(
            "{}; {contractions} contractions, {} mismatches",
            base.detail,
            mismatches.len()
        ),
    )
}

fn solver_reproduction() -> Outcome {
    let mut problems = Vec::new();
    for (name, labeling, objective) in [("fig6", "000", 0), ("fig6-multicut", "110", -2)] {
        let fx = fixture(name).unwrap();
        let c = fx.costs.unwrap();
        let s = solver::solve_exact(&fx.pair, &c).unwrap();
        if s.labeling.to_string() != labeling || s.objective != objective {
            problems.push(format!("{name}: {} at {}", s.objective, s.labeling));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut greedy_gap = 0;
    for i in 0..100 {
        let n = rng.gen_range(2..=6);
        let p = rng.gen_range(0.3..0.8);
        let lift = rng.gen_range(0.2..0.7);
        let pair = random_pair(n, p, lift, &mut rng).unwrap();
        let c = random_costs(&pair, -5, 5, &mut rng);
        let exact = solver::solve_exact(&pair, &c).unwrap();
        let bnb = solver::solve_branch_and_bound(&pair, &c).unwrap();
        let greedy = solver::solve_greedy(&pair, &c).unwrap();
        if bnb.objective != exact.objective {
            problems.push(format!(
                "#{i}: bnb {} exact {}",
                bnb.objective, exact.objective
            ));
        }
        if greedy.objective < exact.objective {
            problems.push(format!(
                "#{i}: greedy {} beats exact {}",
                greedy.objective, exact.objective
            ));
        }
        greedy_gap += greedy.objective - exact.objective;
    }
    let mut detail = format!(
        "100 instances, {} problems, total greedy gap {greedy_gap}",
        problems.len()
    );
    for p in problems.iter().take(3) {
        detail.push_str("; ");
        detail.push_str(p);
    }
    Outcome::new(problems.is_empty(), detail)
}

fn cut_face_structure() -> Outcome {
    from_suite(&verify::run_suite(Suite::CutFaces, &shipped()))
}

fn separation_on_binary_points() -> Outcome {
    let pairs: Vec<_> = shipped()
        .into_iter()
        .filter(|(_, p)| p.dim() <= 12)
        .collect();
    let r = verify::run_suite(Suite::Separation, &pairs);
    let infeasible = pairs
        .iter()
        .map(|(_, p)| (1usize << p.dim()) - lifting::enumerate_lifted_multicuts(p).len())
        .sum::<usize>();
    let base = from_suite(&r);
    Outcome::new(
        base.pass,
        format!("{}; {infeasible} infeasible points", base.detail),
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("figure counts", figure_counts),
        ("full dimension", full_dimension),
        ("feasibility three ways", feasibility_equivalence),
        ("cycle and path facets", cycle_path_facets),
        ("single-edge cut facets", single_edge_cut_facets),
        ("cut condition soundness", cut_condition_soundness),
        ("box facets and contraction", box_facets),
        ("solver reproduction", solver_reproduction),
        ("cut face structure", cut_face_structure),
        ("separation on binary points", separation_on_binary_points),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|_| Outcome::new(false, "panicked"));
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "criterion {:>2} {status} {name} [{:.1?}]: {}",
            i + 1,
            start.elapsed(),
            outcome.detail
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
