//! Predicate-versus-oracle sweeps. Each suite runs a family of checks over
//! a list of pairs and records every disagreement.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::facets::{self, Verdict, VwCutContext};
use crate::generate::{self, fixture};
use crate::lifting::{self, EdgeLabeling, LiftedPair};
use crate::polytope::{self, FaceOracle, InequalityTag, LinearInequality, VectorSet};
use crate::solver::{self, FractionalPoint};

/// Exhaustive labeling scans are limited to `2^16` vectors.
pub const MAX_SCAN_EDGES: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Suite {
    Dimension,
    Feasibility,
    Cycles,
    CutsSingle,
    CutsNecessary,
    Box,
    CutFaces,
    Separation,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Dimension,
        Suite::Feasibility,
        Suite::Cycles,
        Suite::CutsSingle,
        Suite::CutsNecessary,
        Suite::Box,
        Suite::CutFaces,
        Suite::Separation,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Dimension => "dimension",
            Suite::Feasibility => "lemma8",
            Suite::Cycles => "cycles",
            Suite::CutsSingle => "cuts-single",
            Suite::CutsNecessary => "cuts-necessary",
            Suite::Box => "box",
            Suite::CutFaces => "cut-faces",
            Suite::Separation => "separation",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ALL.iter().map(Suite::name).collect();
                Error::Parse(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub instance: String,
    pub object: String,
    pub predicate: String,
    pub oracle: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub instances: usize,
    pub checks: usize,
    pub skipped: usize,
    pub counts: BTreeMap<String, usize>,
    pub disagreements: Vec<Disagreement>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.name().to_string(),
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }

    fn bump(&mut self, key: &str) {
        *self.counts.entry(key.to_string()).or_default() += 1;
    }

    fn check<F>(&mut self, ok: bool, instance: &str, detail: F)
    where
        F: FnOnce() -> (String, String, String),
    {
        self.checks += 1;
        if !ok {
            let (object, predicate, oracle) = detail();
            self.disagreements.push(Disagreement {
                instance: instance.to_string(),
                object,
                predicate,
                oracle,
            });
        }
    }
}

/// Named pairs of the fixture set: the figure fixtures without costs, then
/// `random` seeded pairs with at most six nodes and twelve edges.
pub fn fixture_set(random: usize, seed: u64) -> Vec<(String, LiftedPair)> {
    let mut out: Vec<(String, LiftedPair)> = generate::FIXTURE_NAMES
        .iter()
        .filter(|n| !matches!(**n, "fig6" | "fig6-multicut"))
        .map(|n| (n.to_string(), fixture(n).expect("known fixture").pair))
        .collect();
    for (i, p) in generate::random_small_pairs(random, 12, seed)
        .into_iter()
        .enumerate()
    {
        out.push((format!("random#{i}"), p));
    }
    out
}

pub fn run_suite(suite: Suite, pairs: &[(String, LiftedPair)]) -> SuiteReport {
    let mut report = SuiteReport::new(suite);
    for (name, pair) in pairs {
        report.instances += 1;
        match suite {
            Suite::Dimension => dimension(name, pair, &mut report),
            Suite::Feasibility => feasibility(name, pair, &mut report),
            Suite::Cycles => cycles(name, pair, &mut report),
            Suite::CutsSingle => cuts_single(name, pair, &mut report),
            Suite::CutsNecessary => cuts_necessary(name, pair, &mut report),
            Suite::Box => boxes(name, pair, &mut report),
            Suite::CutFaces => cut_faces(name, pair, &mut report),
            Suite::Separation => separation(name, pair, &mut report),
        }
    }
    report
}

fn detail(
    object: impl fmt::Display,
    predicate: impl fmt::Display,
    oracle: impl fmt::Display,
) -> (String, String, String) {
    (
        object.to_string(),
        predicate.to_string(),
        oracle.to_string(),
    )
}

fn facet_word(b: bool) -> &'static str {
    if b {
        "facet"
    } else {
        "not-facet"
    }
}

fn dimension(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let xs = VectorSet::new(lifting::enumerate_lifted_multicuts(pair)).expect("uniform length");
    let d = polytope::affine_dimension(&xs);
    r.check(d == pair.dim() as isize, name, || {
        detail("dim X", d, pair.dim())
    });
    let witness = lifting::dimension_witness(pair);
    let all_feasible = witness.iter().all(|x| lifting::is_lifted_multicut(pair, x));
    r.check(all_feasible, name, || {
        detail("witness feasibility", all_feasible, true)
    });
    let wd = polytope::affine_dimension(&VectorSet::new(witness.clone()).expect("uniform length"));
    let independent = wd == pair.dim() as isize && witness.len() == pair.dim() + 1;
    r.check(independent, name, || {
        detail("witness affine independence", wd, pair.dim())
    });
    r.bump("full_dimensional");
}

fn feasibility(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let d = pair.dim();
    if d > MAX_SCAN_EDGES {
        r.skipped += 1;
        return;
    }
    let members =
        VectorSet::new(lifting::enumerate_lifted_multicuts(pair)).expect("uniform length");
    let ineqs: Vec<_> = polytope::lifted_multicut_inequalities(pair)
        .iter()
        .map(|q| q.integer_form().clone())
        .collect();
    for v in 0..1u128 << d {
        let x = EdgeLabeling::from_value(v, d);
        let by_ineq = ineqs.iter().all(|q| q.satisfied_by(&x));
        let by_comp = lifting::is_lifted_multicut(pair, &x);
        let by_enum = members.contains(&x);
        r.check(by_ineq == by_comp && by_comp == by_enum, name, || {
            detail(
                x,
                format!("inequalities={by_ineq} components={by_comp}"),
                format!("enumeration={by_enum}"),
            )
        });
        if by_enum {
            r.bump("feasible");
        }
    }
}

fn cycles(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let oracle = FaceOracle::new(pair);
    let mut tags = Vec::new();
    for c in pair.base().enumerate_cycles() {
        tags.extend(c.edges.iter().map(|&e| InequalityTag::Cycle {
            cycle: c.edges.clone(),
            edge: e,
        }));
    }
    for f in pair.lifted_only_edges() {
        let paths = pair
            .base()
            .enumerate_vw_paths(f.u(), f.v())
            .expect("distinct endpoints");
        tags.extend(paths.into_iter().map(|p| InequalityTag::Path {
            lifted: f,
            path: p.nodes,
        }));
    }
    for tag in tags {
        let q = LinearInequality::from_tag(pair, &tag).expect("enumerated tag");
        let pred = facets::check_cycle_path_facet(pair, &tag)
            .expect("enumerated tag")
            .facet;
        let truth = oracle
            .is_facet(&q)
            .expect("cycle and path inequalities are valid");
        r.check(pred == truth, name, || {
            detail(&tag, facet_word(pred), facet_word(truth))
        });
        r.bump(if truth { "facets" } else { "non_facets" });
    }
}

fn cut_contexts(pair: &LiftedPair) -> Vec<VwCutContext> {
    pair.lifted_only_edges()
        .into_iter()
        .flat_map(|f| facets::cut_contexts(pair, f).expect("lifted-only edge"))
        .collect()
}

fn cuts_single(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let oracle = FaceOracle::new(pair);
    for ctx in cut_contexts(pair)
        .into_iter()
        .filter(|c| c.cut().len() == 1)
    {
        let q = ctx.inequality();
        let tag = q.tag().expect("tagged").clone();
        let truth = oracle.is_facet(&q).expect("cut inequalities are valid");
        let single = facets::check_single_edge_cut_facet(&ctx)
            .expect("one-edge cut")
            .facet;
        r.check(single == truth, name, || {
            detail(
                format!("{tag} [V_0 conditions]"),
                facet_word(single),
                facet_word(truth),
            )
        });
        let conds = facets::check_cut_conditions(&ctx).all_hold();
        r.check(conds == truth, name, || {
            detail(
                format!("{tag} [C1-C5]"),
                facet_word(conds),
                facet_word(truth),
            )
        });
        r.bump(if truth { "facets" } else { "non_facets" });
    }
}

fn cuts_necessary(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let oracle = FaceOracle::new(pair);
    for ctx in cut_contexts(pair) {
        let q = ctx.inequality();
        let tag = q.tag().expect("tagged").clone();
        let truth = oracle.is_facet(&q).expect("cut inequalities are valid");
        let report = facets::check_cut_conditions(&ctx);
        let failed = report.violated();
        r.check(failed.is_empty() || !truth, name, || {
            detail(
                &tag,
                format!("violated {}", failed.join(",")),
                facet_word(truth),
            )
        });
        r.bump("cut_inequalities");
        r.bump(if truth { "facets" } else { "non_facets" });
        if !failed.is_empty() {
            r.bump("conditions_failed");
        } else if !truth {
            r.bump("non_facets_passing_all_conditions");
        }
    }
}

fn boxes(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let oracle = FaceOracle::new(pair);
    for &e in pair.edges() {
        let upper =
            LinearInequality::from_tag(pair, &InequalityTag::BoxUpper(e)).expect("edge of E'");
        let truth = oracle.is_facet(&upper).expect("valid");
        let pred = facets::check_box_upper(pair, e).expect("edge of E'").facet;
        r.check(pred == truth, name, || {
            detail(
                format!("box_upper(e={e})"),
                facet_word(pred),
                facet_word(truth),
            )
        });

        let lower =
            LinearInequality::from_tag(pair, &InequalityTag::BoxLower(e)).expect("edge of E'");
        let face_dim = oracle.face_dimension(&lower).expect("valid");
        let truth = face_dim == pair.dim() as isize - 1;
        let v = facets::check_box_lower(pair, e).expect("edge of E'");
        match v.verdict {
            Verdict::Inconclusive => {
                r.checks += 1;
                r.bump(if truth {
                    "lower_lifted_inconclusive_facet"
                } else {
                    "lower_lifted_inconclusive_non_facet"
                });
            }
            Verdict::NotFacet if v.lifted_only => {
                r.check(!truth, name, || {
                    detail(format!("box_lower(e={e})"), "not-facet", facet_word(truth))
                });
                r.bump("lower_lifted_not_facet");
            }
            verdict => {
                let pred = verdict == Verdict::Facet;
                r.check(pred == truth, name, || {
                    detail(
                        format!("box_lower(e={e})"),
                        facet_word(pred),
                        facet_word(truth),
                    )
                });
            }
        }
        if !v.lifted_only {
            let contracted = facets::contract_pair(pair, e).expect("base edge");
            let xs = VectorSet::new(lifting::enumerate_lifted_multicuts(&contracted))
                .expect("uniform length");
            let cd = polytope::affine_dimension(&xs);
            r.check(cd == face_dim, name, || {
                detail(
                    format!("contract({e})"),
                    format!("face dim {face_dim}"),
                    format!("contracted dim {cd}"),
                )
            });
        }
    }
}

fn cut_faces(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let oracle = FaceOracle::new(pair);
    for ctx in cut_contexts(pair) {
        let q = ctx.inequality();
        let tag = q.tag().expect("tagged").clone();
        let face = oracle.face(&q).expect("valid");
        let fi = pair.index_of(ctx.f()).expect("edge of E'");
        for x in face.vectors() {
            let comps = pair.base_components(x);
            let kinds: Vec<_> = comps.iter().map(|&c| ctx.classify(c)).collect();
            let all_connected = kinds.iter().all(Option::is_some);
            let proper = kinds
                .iter()
                .filter(|k| **k == Some(facets::ComponentKind::Proper))
                .count();
            let ok = all_connected && proper <= 1 && (proper == 1) == !x.get(fi);
            r.check(ok, name, || {
                detail(
                    format!("{tag} at {x}"),
                    format!("proper={proper} classified={all_connected}"),
                    "decomposition",
                )
            });
        }
        for c in ctx.components() {
            let y = ctx.component_labeling(c.nodes);
            r.check(face.contains(&y), name, || {
                detail(
                    format!("{tag} component {:?}", c.node_list()),
                    "outside face",
                    "in face",
                )
            });
        }
        r.bump("cut_faces");
    }
}

fn separation(name: &str, pair: &LiftedPair, r: &mut SuiteReport) {
    let d = pair.dim();
    if d > MAX_SCAN_EDGES {
        r.skipped += 1;
        return;
    }
    for v in 0..1u128 << d {
        let x = EdgeLabeling::from_value(v, d);
        let feasible = lifting::is_lifted_multicut(pair, &x);
        let point = FractionalPoint::from_labeling(&x);
        let found = solver::separate(pair, &point);
        let all_violated = found
            .iter()
            .all(|q| q.slack_violation(point.values()) > polytope::rational(0));
        r.check(feasible == found.is_empty() && all_violated, name, || {
            detail(
                x,
                format!("{} separated", found.len()),
                if feasible { "feasible" } else { "infeasible" },
            )
        });
    }
}
