//! Exact linear algebra over 01-vectors: affine dimension, faces, validity
//! and the brute-force facet oracle, plus the inequality families that
//! describe lifted multicuts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{mask_nodes as nodes_to_list, nodes_to_mask, Edge, Graph, NodeId};
use crate::lifting::{self, EdgeLabeling, LiftedPair};

/// Arbitrary-precision rational, always normalized with positive denominator.
pub type Rational = BigRational;

pub fn rational(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

/// Which family an inequality belongs to and the object generating it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum InequalityTag {
    /// `x_e <= sum_{C \ e} x` for a cycle `C` of `G` (edges sorted).
    Cycle {
        cycle: Vec<Edge>,
        edge: Edge,
    },
    /// `x_f <= sum_P x` for a `vw`-path `P` of `G`, `f = vw` lifted-only.
    Path {
        lifted: Edge,
        path: Vec<NodeId>,
    },
    /// `1 - x_f <= sum_C (1 - x)` for a minimal `vw`-cut `C` of `G`.
    Cut {
        lifted: Edge,
        cut: Vec<Edge>,
    },
    BoxUpper(Edge),
    BoxLower(Edge),
}

impl InequalityTag {
    pub fn family(&self) -> &'static str {
        match self {
            InequalityTag::Cycle { .. } => "cycle",
            InequalityTag::Path { .. } => "path",
            InequalityTag::Cut { .. } => "cut",
            InequalityTag::BoxUpper(_) => "box_upper",
            InequalityTag::BoxLower(_) => "box_lower",
        }
    }
}

fn join_edges(edges: &[Edge]) -> String {
    edges
        .iter()
        .map(Edge::to_string)
        .collect::<Vec<_>>()
        .join("|")
}

impl fmt::Display for InequalityTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InequalityTag::Cycle { cycle, edge } => {
                write!(f, "cycle(e={edge};C={})", join_edges(cycle))
            }
            InequalityTag::Path { lifted, path } => {
                let p: Vec<String> = path.iter().map(|n| n.to_string()).collect();
                write!(f, "path(f={lifted};P={})", p.join("-"))
            }
            InequalityTag::Cut { lifted, cut } => {
                write!(f, "cut(f={lifted};C={})", join_edges(cut))
            }
            InequalityTag::BoxUpper(e) => write!(f, "box_upper(e={e})"),
            InequalityTag::BoxLower(e) => write!(f, "box_lower(e={e})"),
        }
    }
}

impl FromStr for InequalityTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedTag(s.to_string());
        let s = s.trim();
        let (name, rest) = s.split_once('(').ok_or_else(bad)?;
        let body = rest.strip_suffix(')').ok_or_else(bad)?;
        let mut fields = std::collections::BTreeMap::new();
        for part in body.split(';') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            fields.insert(k.trim(), v.trim());
        }
        let field = |k: &str| fields.get(k).copied().ok_or_else(bad);
        let edge = |k: &str| field(k)?.parse::<Edge>().map_err(|_| bad());
        let edges = |k: &str| -> Result<Vec<Edge>> {
            let mut es = field(k)?
                .split('|')
                .map(|t| t.parse::<Edge>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            es.sort();
            Ok(es)
        };
        let tag = match name.trim() {
            "cycle" => InequalityTag::Cycle {
                cycle: edges("C")?,
                edge: edge("e")?,
            },
            "path" => InequalityTag::Path {
                lifted: edge("f")?,
                path: field("P")?
                    .split('-')
                    .map(|t| t.trim().parse::<NodeId>().map_err(|_| bad()))
                    .collect::<Result<_>>()?,
            },
            "cut" => InequalityTag::Cut {
                lifted: edge("f")?,
                cut: edges("C")?,
            },
            "box_upper" => InequalityTag::BoxUpper(edge("e")?),
            "box_lower" => InequalityTag::BoxLower(edge("e")?),
            _ => return Err(bad()),
        };
        Ok(tag)
    }
}

/// Integer multiple of an inequality, for fast evaluation on 01-vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerInequality {
    pub terms: Vec<(usize, i128)>,
    pub rhs: i128,
    // One bit mask per distinct coefficient.
    groups: Vec<(i128, u128)>,
}

impl IntegerInequality {
    fn new(dim: usize, terms: Vec<(usize, i128)>, rhs: i128) -> Self {
        let mut groups: Vec<(i128, u128)> = Vec::new();
        for &(i, a) in &terms {
            let mut unit = EdgeLabeling::zeros(dim);
            unit.set(i, true);
            match groups.iter_mut().find(|g| g.0 == a) {
                Some(g) => g.1 |= unit.value(),
                None => groups.push((a, unit.value())),
            }
        }
        IntegerInequality { terms, rhs, groups }
    }

    #[inline]
    pub fn lhs(&self, x: &EdgeLabeling) -> i128 {
        let v = x.value();
        self.groups
            .iter()
            .map(|(a, m)| a * (v & m).count_ones() as i128)
            .sum()
    }

    #[inline]
    pub fn satisfied_by(&self, x: &EdgeLabeling) -> bool {
        self.lhs(x) <= self.rhs
    }

    #[inline]
    pub fn tight_at(&self, x: &EdgeLabeling) -> bool {
        self.lhs(x) == self.rhs
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_empty()
    }
}

/// `coeffs · x <= rhs` over the canonical order of `E'`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearInequality {
    coeffs: Vec<Rational>,
    rhs: Rational,
    tag: Option<InequalityTag>,
    scaled: IntegerInequality,
}

impl LinearInequality {
    /// An all-zero coefficient vector is accepted and describes the
    /// improper face.
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Result<Self> {
        let den_lcm = coeffs
            .iter()
            .chain(std::iter::once(&rhs))
            .fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
        let limit = BigInt::from(i64::MAX);
        let scale = |r: &Rational| -> Result<i128> {
            let v = r.numer() * (&den_lcm / r.denom());
            if v.abs() > limit {
                return Err(Error::Parse(format!("coefficient {r} is too large")));
            }
            Ok(v.to_i128().expect("bounded by i64"))
        };
        let mut terms = Vec::new();
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                terms.push((i, scale(c)?));
            }
        }
        let scaled = IntegerInequality::new(coeffs.len(), terms, scale(&rhs)?);
        Ok(LinearInequality {
            coeffs,
            rhs,
            tag: None,
            scaled,
        })
    }

    /// Integer coefficients given sparsely as `(index, value)`.
    pub fn from_sparse(dim: usize, terms: &[(usize, i64)], rhs: i64) -> Self {
        let mut coeffs = vec![Rational::zero(); dim];
        for &(i, a) in terms {
            coeffs[i] += rational(a);
        }
        Self::new(coeffs, rational(rhs)).expect("i64 coefficients always fit")
    }

    pub fn with_tag(mut self, tag: InequalityTag) -> Self {
        self.tag = Some(tag);
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn rhs(&self) -> &Rational {
        &self.rhs
    }

    pub fn tag(&self) -> Option<&InequalityTag> {
        self.tag.as_ref()
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn integer_form(&self) -> &IntegerInequality {
        &self.scaled
    }

    /// `coeffs · x - rhs` for a rational point.
    pub fn slack_violation(&self, x: &[Rational]) -> Rational {
        let lhs: Rational = self
            .coeffs
            .iter()
            .zip(x)
            .filter(|(a, _)| !a.is_zero())
            .map(|(a, v)| a * v)
            .sum();
        lhs - &self.rhs
    }

    /// Builds the inequality a tag describes, checking that the generating
    /// object belongs to the pair.
    pub fn from_tag(pair: &LiftedPair, tag: &InequalityTag) -> Result<Self> {
        let d = pair.dim();
        let idx = |e: Edge| pair.index_of(e).ok_or(Error::EdgeNotFound(e));
        let base = pair.base();
        let malformed = || Error::MalformedTag(tag.to_string());
        let ineq = match tag {
            InequalityTag::Cycle { cycle, edge } => {
                let nodes = nodes_to_mask(cycle.iter().flat_map(|e| [e.u(), e.v()]));
                let sorted = cycle.windows(2).all(|w| w[0] < w[1]);
                let two_regular = nodes_to_list(nodes)
                    .all(|n| cycle.iter().filter(|e| e.contains(n)).count() == 2);
                let is_cycle = cycle.len() >= 3
                    && sorted
                    && cycle.iter().all(|e| base.contains_edge(*e))
                    && cycle.contains(edge)
                    && two_regular
                    && Graph::from_edges(base.node_count(), cycle.iter())?
                        .reach_within(cycle[0].u(), nodes)
                        == nodes;
                if !is_cycle {
                    return Err(malformed());
                }
                let mut terms = vec![(idx(*edge)?, 1)];
                for e in cycle.iter().filter(|e| *e != edge) {
                    terms.push((idx(*e)?, -1));
                }
                Self::from_sparse(d, &terms, 0)
            }
            InequalityTag::Path { lifted, path } => {
                pair.require_lifted_only(*lifted)?;
                let ok = path.len() >= 2
                    && Edge::new(path[0], *path.last().unwrap()).ok() == Some(*lifted)
                    && path.windows(2).all(|w| base.has_edge(w[0], w[1]))
                    && nodes_to_mask(path.iter().copied()).count_ones() as usize == path.len();
                if !ok {
                    return Err(malformed());
                }
                let mut terms = vec![(idx(*lifted)?, 1)];
                for w in path.windows(2) {
                    terms.push((idx(Edge::of(w[0], w[1]))?, -1));
                }
                Self::from_sparse(d, &terms, 0)
            }
            InequalityTag::Cut { lifted, cut } => {
                pair.require_lifted_only(*lifted)?;
                let cuts = base.enumerate_vw_cuts(lifted.u(), lifted.v())?;
                if !cuts.contains(cut) {
                    return Err(Error::NotAMinimalCut(lifted.u(), lifted.v()));
                }
                let mut terms = vec![(idx(*lifted)?, -1)];
                for e in cut {
                    terms.push((idx(*e)?, 1));
                }
                Self::from_sparse(d, &terms, cut.len() as i64 - 1)
            }
            InequalityTag::BoxUpper(e) => Self::from_sparse(d, &[(idx(*e)?, 1)], 1),
            InequalityTag::BoxLower(e) => Self::from_sparse(d, &[(idx(*e)?, -1)], 0),
        };
        Ok(ineq.with_tag(tag.clone()))
    }
}

impl fmt::Display for LinearInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            first = false;
            let a = c.abs();
            if a.is_one() {
                write!(f, "x{i}")?;
            } else {
                write!(f, "{a}*x{i}")?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " <= {}", self.rhs)
    }
}

/// Cycle inequalities over chordless cycles of `G`, path inequalities over
/// all `vw`-paths and cut inequalities over all minimal `vw`-cuts, for every
/// lifted-only `vw`.
pub fn lifted_multicut_inequalities(pair: &LiftedPair) -> Vec<LinearInequality> {
    let mut out = Vec::new();
    let tag_ineq = |t: InequalityTag| LinearInequality::from_tag_unchecked(pair, t);
    for c in pair.base().enumerate_chordless_cycles() {
        for &e in &c.edges {
            out.push(tag_ineq(InequalityTag::Cycle {
                cycle: c.edges.clone(),
                edge: e,
            }));
        }
    }
    let fs = pair.lifted_only_edges();
    for &f in &fs {
        for p in pair
            .base()
            .enumerate_vw_paths(f.u(), f.v())
            .expect("distinct endpoints")
        {
            out.push(tag_ineq(InequalityTag::Path {
                lifted: f,
                path: p.nodes,
            }));
        }
    }
    for &f in &fs {
        for cut in pair
            .base()
            .enumerate_vw_cuts(f.u(), f.v())
            .expect("base is connected")
        {
            out.push(tag_ineq(InequalityTag::Cut { lifted: f, cut }));
        }
    }
    out
}

impl LinearInequality {
    // For tags produced by our own enumerators; skips the membership checks.
    fn from_tag_unchecked(pair: &LiftedPair, tag: InequalityTag) -> Self {
        let d = pair.dim();
        let idx = |e: Edge| pair.index_of(e).expect("generated edges belong to E'");
        let ineq = match &tag {
            InequalityTag::Cycle { cycle, edge } => {
                let mut terms = vec![(idx(*edge), 1)];
                terms.extend(cycle.iter().filter(|e| *e != edge).map(|e| (idx(*e), -1)));
                Self::from_sparse(d, &terms, 0)
            }
            InequalityTag::Path { lifted, path } => {
                let mut terms = vec![(idx(*lifted), 1)];
                terms.extend(path.windows(2).map(|w| (idx(Edge::of(w[0], w[1])), -1)));
                Self::from_sparse(d, &terms, 0)
            }
            InequalityTag::Cut { lifted, cut } => {
                let mut terms = vec![(idx(*lifted), -1)];
                terms.extend(cut.iter().map(|e| (idx(*e), 1)));
                Self::from_sparse(d, &terms, cut.len() as i64 - 1)
            }
            InequalityTag::BoxUpper(e) => Self::from_sparse(d, &[(idx(*e), 1)], 1),
            InequalityTag::BoxLower(e) => Self::from_sparse(d, &[(idx(*e), -1)], 0),
        };
        ineq.with_tag(tag)
    }
}

/// [`lifted_multicut_inequalities`] followed by `x_e <= 1` and `0 <= x_e`
/// for every `e ∈ E'`.
pub fn canonical_inequalities(pair: &LiftedPair) -> Vec<LinearInequality> {
    let mut out = lifted_multicut_inequalities(pair);
    for &e in pair.edges() {
        out.push(LinearInequality::from_tag_unchecked(
            pair,
            InequalityTag::BoxUpper(e),
        ));
    }
    for &e in pair.edges() {
        out.push(LinearInequality::from_tag_unchecked(
            pair,
            InequalityTag::BoxLower(e),
        ));
    }
    out
}

/// Sorted, deduplicated set of labelings of a common length.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VectorSet {
    vectors: Vec<EdgeLabeling>,
}

impl VectorSet {
    pub fn new(mut vectors: Vec<EdgeLabeling>) -> Result<Self> {
        if let Some(first) = vectors.first() {
            let len = first.len();
            if let Some(bad) = vectors.iter().find(|x| x.len() != len) {
                return Err(Error::LengthMismatch {
                    expected: len,
                    actual: bad.len(),
                });
            }
        }
        vectors.sort_unstable();
        vectors.dedup();
        Ok(VectorSet { vectors })
    }

    pub fn vectors(&self) -> &[EdgeLabeling] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, x: &EdgeLabeling) -> bool {
        self.vectors.binary_search(x).is_ok()
    }
}

/// Field operations the elimination needs; `None` signals overflow.
trait Field: Clone + PartialEq + Zero + One {
    fn from_small(v: i8) -> Self;
    fn mul_sub(&self, a: &Self, b: &Self) -> Option<Self>;
    fn div(&self, d: &Self) -> Option<Self>;
    fn to_small(&self) -> Option<Small>;
}

type Small = Ratio<i128>;

impl Field for Small {
    fn from_small(v: i8) -> Self {
        Ratio::from_integer(v as i128)
    }

    fn mul_sub(&self, a: &Self, b: &Self) -> Option<Self> {
        self.checked_sub(&a.checked_mul(b)?)
    }

    fn div(&self, d: &Self) -> Option<Self> {
        self.checked_div(d)
    }

    fn to_small(&self) -> Option<Small> {
        Some(*self)
    }
}

impl Field for Rational {
    fn from_small(v: i8) -> Self {
        rational(v as i64)
    }

    fn mul_sub(&self, a: &Self, b: &Self) -> Option<Self> {
        Some(self - a * b)
    }

    fn div(&self, d: &Self) -> Option<Self> {
        Some(self / d)
    }

    fn to_small(&self) -> Option<Small> {
        Some(Ratio::new_raw(
            self.numer().to_i128()?,
            self.denom().to_i128()?,
        ))
    }
}

/// Reduced row echelon basis grown one vector at a time.
#[derive(Clone, Debug)]
struct Rref<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

impl<T: Field> Rref<T> {
    fn new() -> Self {
        Rref {
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    /// Adds `v` if it is independent of the current rows. `Some(true)` when
    /// the rank grew, `None` on arithmetic overflow (state unchanged).
    fn insert(&mut self, v: &[i8]) -> Option<bool> {
        let mut r: Vec<T> = v.iter().map(|&a| T::from_small(a)).collect();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..r.len() {
                if !row[j].is_zero() {
                    r[j] = r[j].mul_sub(&c, &row[j])?;
                }
            }
        }
        let Some(p) = r.iter().position(|a| !a.is_zero()) else {
            return Some(false);
        };
        let lead = r[p].clone();
        for a in r.iter_mut() {
            if !a.is_zero() {
                *a = a.div(&lead)?;
            }
        }
        let mut updated = self.rows.clone();
        for row in updated.iter_mut() {
            let c = row[p].clone();
            if c.is_zero() {
                continue;
            }
            for j in 0..row.len() {
                if !r[j].is_zero() {
                    row[j] = row[j].mul_sub(&c, &r[j])?;
                }
            }
        }
        updated.push(r);
        self.rows = updated;
        self.pivots.push(p);
        Some(true)
    }

    /// Integer basis of the orthogonal complement of the row space, one
    /// vector per free column.
    fn complement(&self, d: usize) -> Option<Vec<Vec<i128>>> {
        let rows: Vec<Vec<Small>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(T::to_small).collect::<Option<_>>())
            .collect::<Option<_>>()?;
        let mut out = Vec::new();
        for j in (0..d).filter(|j| !self.pivots.contains(j)) {
            let mut scale: i128 = 1;
            for row in &rows {
                let den = *row[j].denom();
                scale = scale.checked_div(scale.gcd(&den))?.checked_mul(den)?;
            }
            let mut n = vec![0i128; d];
            n[j] = scale;
            for (row, &p) in rows.iter().zip(&self.pivots) {
                let a = row[j];
                n[p] = a.numer().checked_mul(&(scale / a.denom()))?.checked_neg()?;
            }
            out.push(n);
        }
        Some(out)
    }
}

/// Incremental exact affine hull of 01-vectors. Runs on `i128` rationals
/// and switches to arbitrary precision if an operation would overflow.
#[derive(Clone, Debug)]
pub struct AffineHull {
    origin: Option<EdgeLabeling>,
    accepted: Vec<Vec<i8>>,
    fast: Option<Rref<Small>>,
    exact: Option<Rref<Rational>>,
    // Normals of the current span; a direction orthogonal to all of them
    // is already in it. Rebuilt lazily after growth.
    normals: Option<Vec<Vec<i128>>>,
    stale: bool,
}

impl Default for AffineHull {
    fn default() -> Self {
        Self::new()
    }
}

impl AffineHull {
    pub fn new() -> Self {
        AffineHull {
            origin: None,
            accepted: Vec::new(),
            fast: Some(Rref::new()),
            exact: None,
            normals: None,
            stale: true,
        }
    }

    /// Affine dimension so far; -1 while empty.
    pub fn dimension(&self) -> isize {
        match self.origin {
            None => -1,
            Some(_) => self.accepted.len() as isize,
        }
    }

    /// Adds a point; returns true iff the dimension grew.
    pub fn insert(&mut self, x: &EdgeLabeling) -> bool {
        let Some(origin) = self.origin else {
            self.origin = Some(*x);
            return false;
        };
        assert_eq!(origin.len(), x.len(), "points must share a length");
        if origin == *x {
            return false;
        }
        let diff: Vec<i8> = (0..x.len())
            .map(|i| x.get(i) as i8 - origin.get(i) as i8)
            .collect();
        self.insert_direction(diff)
    }

    fn in_span(&mut self, diff: &[i8]) -> bool {
        if self.stale {
            let d = diff.len();
            self.normals = match (&self.fast, &self.exact) {
                (Some(f), _) => f.complement(d),
                (None, Some(e)) => e.complement(d),
                (None, None) => None,
            };
            self.stale = false;
        }
        let Some(normals) = &self.normals else {
            return false;
        };
        normals.iter().all(|n| {
            let mut acc: i128 = 0;
            for (a, &b) in n.iter().zip(diff) {
                if b != 0 && *a != 0 {
                    match if b > 0 {
                        acc.checked_add(*a)
                    } else {
                        acc.checked_sub(*a)
                    } {
                        Some(v) => acc = v,
                        None => return false,
                    }
                }
            }
            acc == 0
        })
    }

    fn insert_direction(&mut self, diff: Vec<i8>) -> bool {
        if self.in_span(&diff) {
            return false;
        }
        let grew = self.insert_slow(diff);
        if grew {
            self.stale = true;
        }
        grew
    }

    fn insert_slow(&mut self, diff: Vec<i8>) -> bool {
        if let Some(fast) = self.fast.as_mut() {
            match fast.insert(&diff) {
                Some(grew) => {
                    if grew {
                        self.accepted.push(diff);
                    }
                    return grew;
                }
                None => {
                    let mut exact = Rref::new();
                    for v in &self.accepted {
                        exact
                            .insert(v)
                            .expect("arbitrary precision never overflows");
                    }
                    self.fast = None;
                    self.exact = Some(exact);
                }
            }
        }
        let grew = self
            .exact
            .as_mut()
            .expect("one backend is active")
            .insert(&diff)
            .expect("arbitrary precision never overflows");
        if grew {
            self.accepted.push(diff);
        }
        grew
    }
}

/// Rank of a rational matrix by Gaussian elimination, pivoting on the
/// entry of largest magnitude in each column.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut m: Vec<Vec<Rational>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(piv) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .max_by(|&a, &b| m[a][c].abs().cmp(&m[b][c].abs()).then(b.cmp(&a)))
        else {
            continue;
        };
        m.swap(r, piv);
        let lead = m[r][c].clone();
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let factor = &m[i][c] / &lead;
            let (top, bottom) = m.split_at_mut(i);
            for (a, b) in bottom[0][c..].iter_mut().zip(&top[r][c..]) {
                *a -= &factor * b;
            }
        }
        r += 1;
    }
    r
}

/// Dimension of the affine hull; -1 for the empty set.
pub fn affine_dimension(vs: &VectorSet) -> isize {
    let mut hull = AffineHull::new();
    for x in vs.vectors() {
        hull.insert(x);
    }
    hull.dimension()
}

/// Affine dimension via [`rank`] of the difference matrix. Independent of
/// [`AffineHull`]; slower.
pub fn affine_dimension_by_rank(vs: &VectorSet) -> isize {
    let Some(origin) = vs.vectors().first() else {
        return -1;
    };
    let rows: Vec<Vec<Rational>> = vs.vectors()[1..]
        .iter()
        .map(|x| {
            (0..x.len())
                .map(|i| rational(x.get(i) as i64 - origin.get(i) as i64))
                .collect()
        })
        .collect();
    rank(&rows) as isize
}

/// Brute-force facet oracle: holds `X_GG'` in memory and answers validity,
/// face and facet queries for any number of inequalities.
pub struct FaceOracle {
    dim: usize,
    vertices: Vec<EdgeLabeling>,
}

impl FaceOracle {
    pub fn new(pair: &LiftedPair) -> Self {
        FaceOracle {
            dim: pair.dim(),
            vertices: lifting::enumerate_lifted_multicuts(pair),
        }
    }

    pub fn vertices(&self) -> &[EdgeLabeling] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// First vertex violating the inequality, if any.
    pub fn violator(&self, ineq: &LinearInequality) -> Option<EdgeLabeling> {
        let q = ineq.integer_form();
        self.vertices.iter().find(|x| !q.satisfied_by(x)).copied()
    }

    pub fn is_valid(&self, ineq: &LinearInequality) -> bool {
        self.violator(ineq).is_none()
    }

    fn check(&self, ineq: &LinearInequality) -> Result<()> {
        if ineq.dim() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                actual: ineq.dim(),
            });
        }
        match self.violator(ineq) {
            Some(x) => Err(Error::InvalidInequality {
                witness: x.to_string(),
            }),
            None => Ok(()),
        }
    }

    pub fn face(&self, ineq: &LinearInequality) -> Result<VectorSet> {
        self.check(ineq)?;
        let q = ineq.integer_form();
        Ok(VectorSet {
            vectors: self
                .vertices
                .iter()
                .filter(|x| q.tight_at(x))
                .copied()
                .collect(),
        })
    }

    /// Affine dimension of the face. Stops growing the hull once the
    /// largest possible value is reached but still checks validity.
    pub fn face_dimension(&self, ineq: &LinearInequality) -> Result<isize> {
        if ineq.dim() != self.dim {
            return Err(Error::LengthMismatch {
                expected: self.dim,
                actual: ineq.dim(),
            });
        }
        let q = ineq.integer_form();
        let cap = if q.is_trivial() {
            self.dim
        } else {
            self.dim - 1
        } as isize;
        let mut hull = AffineHull::new();
        for x in &self.vertices {
            let lhs = q.lhs(x);
            if lhs > q.rhs {
                return Err(Error::InvalidInequality {
                    witness: x.to_string(),
                });
            }
            if lhs == q.rhs && hull.dimension() < cap {
                hull.insert(x);
            }
        }
        Ok(hull.dimension())
    }

    pub fn is_facet(&self, ineq: &LinearInequality) -> Result<bool> {
        Ok(self.face_dimension(ineq)? == self.dim as isize - 1)
    }
}

/// True iff every lifted multicut satisfies the inequality.
pub fn is_valid(pair: &LiftedPair, ineq: &LinearInequality) -> bool {
    let q = ineq.integer_form();
    let mut ok = true;
    lifting::for_each_lifted_multicut(pair, &mut |x| ok &= q.satisfied_by(&x));
    ok
}

/// The lifted multicuts at which the inequality is tight.
pub fn face(pair: &LiftedPair, ineq: &LinearInequality) -> Result<VectorSet> {
    FaceOracle::new(pair).face(ineq)
}

/// Facet test by dimension: the face has affine dimension `|E'| - 1`.
pub fn is_facet(pair: &LiftedPair, ineq: &LinearInequality) -> Result<bool> {
    FaceOracle::new(pair).is_facet(ineq)
}
