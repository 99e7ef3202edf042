//! JSON formats for graphs, pairs, instances, inequalities, points and
//! solutions.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::lifting::LiftedPair;
use crate::polytope::{parse_rational, InequalityTag, LinearInequality, Rational};
use crate::solver::{CostFunction, FractionalPoint, Solution};

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub nodes: usize,
    pub edges: Vec<(NodeId, NodeId)>,
}

impl GraphJson {
    pub fn from_graph(g: &Graph) -> Self {
        GraphJson {
            nodes: g.node_count(),
            edges: g.edges().iter().map(|e| (e.u(), e.v())).collect(),
        }
    }

    pub fn build(&self) -> Result<Graph> {
        Graph::new(self.nodes, self.edges.iter().copied())
    }
}

pub fn parse_graph(s: &str) -> Result<Graph> {
    serde_json::from_str::<GraphJson>(s)
        .map_err(parse_err)?
        .build()
}

/// A pair, optionally with costs keyed by `"u,v"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairJson {
    pub nodes: usize,
    pub base_edges: Vec<(NodeId, NodeId)>,
    pub lifted_edges: Vec<(NodeId, NodeId)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<BTreeMap<String, i64>>,
}

impl PairJson {
    pub fn from_pair(pair: &LiftedPair) -> Self {
        let pairs = |g: &Graph| g.edges().iter().map(|e| (e.u(), e.v())).collect();
        PairJson {
            nodes: pair.node_count(),
            base_edges: pairs(pair.base()),
            lifted_edges: pairs(pair.lifted()),
            costs: None,
        }
    }

    pub fn with_costs(mut self, pair: &LiftedPair, c: &CostFunction) -> Self {
        self.costs = Some(
            pair.edges()
                .iter()
                .zip(c.costs())
                .map(|(e, v)| (e.to_string(), *v))
                .collect(),
        );
        self
    }

    pub fn build(&self) -> Result<LiftedPair> {
        let base = Graph::new(self.nodes, self.base_edges.iter().copied())?;
        let lifted = Graph::new(self.nodes, self.lifted_edges.iter().copied())?;
        LiftedPair::new(base, lifted)
    }

    pub fn build_costs(&self, pair: &LiftedPair) -> Result<Option<CostFunction>> {
        let Some(raw) = &self.costs else {
            return Ok(None);
        };
        let mut costs = BTreeMap::new();
        for (k, v) in raw {
            costs.insert(k.parse::<Edge>()?, *v);
        }
        CostFunction::new(pair, &costs).map(Some)
    }
}

pub fn parse_pair(s: &str) -> Result<LiftedPair> {
    serde_json::from_str::<PairJson>(s)
        .map_err(parse_err)?
        .build()
}

/// A pair with a total cost function.
pub fn parse_instance(s: &str) -> Result<(LiftedPair, CostFunction)> {
    let raw: PairJson = serde_json::from_str(s).map_err(parse_err)?;
    let pair = raw.build()?;
    let costs = raw
        .build_costs(&pair)?
        .ok_or_else(|| Error::Parse("instance has no \"costs\" field".into()))?;
    Ok((pair, costs))
}

pub fn pair_to_json(pair: &LiftedPair) -> Value {
    serde_json::to_value(PairJson::from_pair(pair)).expect("plain data")
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct InequalityJson {
    #[serde(default)]
    coeffs: Option<BTreeMap<String, String>>,
    #[serde(default)]
    rhs: Option<String>,
    #[serde(default)]
    tag: Option<String>,
}

/// Reads `{"coeffs": {"u,v": "p/q"}, "rhs": "p/q", "tag": "..."}`. Missing
/// coefficients are zero. A tag alone determines the inequality; with
/// explicit coefficients the tag is attached as given.
pub fn parse_inequality(pair: &LiftedPair, s: &str) -> Result<LinearInequality> {
    let raw: InequalityJson = serde_json::from_str(s).map_err(parse_err)?;
    let tag = raw
        .tag
        .as_deref()
        .map(str::parse::<InequalityTag>)
        .transpose()?;
    let Some(coeff_map) = raw.coeffs else {
        let tag =
            tag.ok_or_else(|| Error::Parse("inequality needs \"coeffs\" or \"tag\"".into()))?;
        return LinearInequality::from_tag(pair, &tag);
    };
    let mut coeffs = vec![Rational::from_integer(0.into()); pair.dim()];
    for (k, v) in &coeff_map {
        let e: Edge = k.parse()?;
        let i = pair.index_of(e).ok_or(Error::EdgeNotFound(e))?;
        coeffs[i] = parse_rational(v)?;
    }
    let rhs = parse_rational(
        raw.rhs
            .as_deref()
            .ok_or_else(|| Error::Parse("inequality has no \"rhs\"".into()))?,
    )?;
    let ineq = LinearInequality::new(coeffs, rhs)?;
    Ok(match tag {
        Some(t) => ineq.with_tag(t),
        None => ineq,
    })
}

pub fn inequality_to_json(pair: &LiftedPair, ineq: &LinearInequality) -> Value {
    let coeffs: serde_json::Map<String, Value> = pair
        .edges()
        .iter()
        .zip(ineq.coeffs())
        .filter(|(_, c)| *c != &Rational::from_integer(0.into()))
        .map(|(e, c)| (e.to_string(), Value::String(c.to_string())))
        .collect();
    let mut v = json!({ "coeffs": coeffs, "rhs": ineq.rhs().to_string() });
    if let Some(t) = ineq.tag() {
        v["tag"] = Value::String(t.to_string());
    }
    v
}

/// Reads `{"u,v": "p/q", ...}` with every edge of `E'` present.
pub fn parse_point(pair: &LiftedPair, s: &str) -> Result<FractionalPoint> {
    let raw: BTreeMap<String, Value> = serde_json::from_str(s).map_err(parse_err)?;
    let mut values: Vec<Option<Rational>> = vec![None; pair.dim()];
    for (k, v) in raw {
        let e: Edge = k.parse()?;
        let i = pair.index_of(e).ok_or(Error::EdgeNotFound(e))?;
        let text = match v {
            Value::String(s) => s,
            Value::Number(n) if n.is_i64() => n.to_string(),
            other => {
                return Err(Error::Parse(format!(
                    "value for {k} must be \"p/q\", got {other}"
                )))
            }
        };
        values[i] = Some(parse_rational(&text)?);
    }
    let values = values
        .into_iter()
        .zip(pair.edges())
        .map(|(v, e)| v.ok_or_else(|| Error::Parse(format!("point has no value for edge {e}"))))
        .collect::<Result<_>>()?;
    FractionalPoint::new(pair, values)
}

pub fn solution_to_json(s: &Solution) -> Value {
    json!({
        "labeling": s.labeling.to_string(),
        "objective": s.objective,
        "certificate": s.certificate,
        "stats": {
            "nodes_explored": s.stats.nodes_explored,
            "wall_time_ms": s.stats.wall_time.as_secs_f64() * 1000.0,
        },
    })
}
