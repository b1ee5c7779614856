//! Duality identities between a matroid and its minors and dual, and the
//! Tutte-polynomial identities around them, each as a checkable statement.
//!
//! Polynomial identities (`FINALTWO`, `CONVOLUTION`, `UNIFORM_SPLIT`) are
//! compared coefficient by coefficient. The rest involve
//! `zeta_q(z) = 1 / (1 - q^-z)` or rational substitutions and are compared
//! as exact rationals at sample points.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{rational_pow, BiPoly, IntPoly};
use crate::error::{Error, Result};
use crate::graphs::MultiGraph;
use crate::invariants::{
    chi_subset, chromatic_poly, chromatic_poly_vertex, flow_poly, rank_size_table, tutte,
    whitney_r, SUBSET_SUM_LIMIT,
};
use crate::matroids::{contract, dual, is_closed, is_uniform, restrict, Matroid, ENUMERATION_LIMIT};
use crate::subset::Subset;
use crate::targets::Target;

/// Vertex guard for sums over connected vertex partitions.
pub const PARTITION_VERTEX_LIMIT: usize = 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IdentityKind {
    Thm1One,
    Thm1Two,
    TwoZeta,
    FinalTwo,
    Matiyasevich,
    MatiyasevichInverse,
    Th2ConnectedPartitions,
    Convolution,
    Kung,
    UniformSplit,
    HyperbolaT,
    HyperbolaR,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 12] = [
        IdentityKind::Thm1One,
        IdentityKind::Thm1Two,
        IdentityKind::TwoZeta,
        IdentityKind::FinalTwo,
        IdentityKind::Matiyasevich,
        IdentityKind::MatiyasevichInverse,
        IdentityKind::Th2ConnectedPartitions,
        IdentityKind::Convolution,
        IdentityKind::Kung,
        IdentityKind::UniformSplit,
        IdentityKind::HyperbolaT,
        IdentityKind::HyperbolaR,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Thm1One => "THM1_ONE",
            IdentityKind::Thm1Two => "THM1_TWO",
            IdentityKind::TwoZeta => "TWOZETA",
            IdentityKind::FinalTwo => "FINALTWO",
            IdentityKind::Matiyasevich => "MATIYASEVICH",
            IdentityKind::MatiyasevichInverse => "MATIYASEVICH_INVERSE",
            IdentityKind::Th2ConnectedPartitions => "TH2_CONNECTED_PARTITIONS",
            IdentityKind::Convolution => "CONVOLUTION",
            IdentityKind::Kung => "KUNG",
            IdentityKind::UniformSplit => "UNIFORM_SPLIT",
            IdentityKind::HyperbolaT => "HYPERBOLA_T",
            IdentityKind::HyperbolaR => "HYPERBOLA_R",
        }
    }

    /// Whether the identity is checked as a polynomial equality rather than
    /// at sample points.
    pub fn is_exact(self) -> bool {
        matches!(
            self,
            IdentityKind::FinalTwo | IdentityKind::Convolution | IdentityKind::UniformSplit
        )
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let wanted = s.trim().to_ascii_uppercase().replace('-', "_");
        if wanted == "TH2" {
            return Ok(IdentityKind::Th2ConnectedPartitions);
        }
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == wanted)
            .ok_or_else(|| Error::Parse(format!("unknown identity kind {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub point: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub kind: String,
    pub target: String,
    pub mode: Mode,
    pub samples: Vec<String>,
    pub pass: bool,
    pub first_mismatch: Option<Mismatch>,
    /// Degree bound of the cleared univariate identity, when there is one.
    pub degree_bound: Option<usize>,
    /// True when the check is a proof: exact mode, or enough distinct
    /// sample points to pin down a polynomial of `degree_bound`.
    pub certified: bool,
}

/// Default sample points.
pub fn default_samples() -> Vec<BigRational> {
    [(2, 1), (3, 1), (5, 1), (7, 1), (1, 2)]
        .into_iter()
        .map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
        .collect()
}

/// `zeta_q(z) = 1 / (1 - q^-z)` at a nonzero integer `z`.
pub fn zeta_q(q: &BigRational, z: i32) -> Result<BigRational> {
    if q.is_zero() || q.is_one() {
        return Err(Error::bad_params(format!("zeta_q is undefined at q = {q}")));
    }
    if z == 0 || (q == &-BigRational::one() && z % 2 == 0) {
        return Err(Error::bad_params(format!("zeta_q has a pole at z = {z} for q = {q}")));
    }
    let one = BigRational::one();
    Ok((&one - rational_pow(q, -(z as i64))).recip())
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn sign(k: usize) -> BigRational {
    if k % 2 == 0 {
        rat(1)
    } else {
        rat(-1)
    }
}

fn pow(base: &BigRational, e: i64) -> BigRational {
    rational_pow(base, e)
}

fn check_ground(m: &dyn Matroid, limit: usize) -> Result<()> {
    let n = m.ground_size();
    if n > limit {
        return Err(Error::too_large("identity ground set", n as u64, limit as u64));
    }
    Ok(())
}

/// Evaluates `f` on every subset of the ground set, in parallel, and returns
/// the results indexed by bitmask.
fn per_subset<T: Send>(
    m: &dyn Matroid,
    f: impl Fn(Subset) -> Result<T> + Sync + Send,
) -> Result<Vec<T>> {
    (0..1u64 << m.ground_size())
        .into_par_iter()
        .map(|s| f(Subset(s)))
        .collect()
}

/// `chi_{M/A}` with `M/A` the contraction of `A`, ground set `E - A`.
fn chi_contract(m: &dyn Matroid, a: Subset) -> Result<IntPoly> {
    chi_subset(&contract(m, m.ground().difference(a)))
}

/// Right-hand side of the dual formula before dividing by `x^r(E)`,
/// with the weight of a term of size `|A|` supplied by the caller:
/// `(-1)^|E| sum_A weight(|A|) chi_{M/A}(x)`.
pub fn finaltwo_sum(m: &dyn Matroid, weight: &(dyn Fn(usize) -> IntPoly + Sync)) -> Result<IntPoly> {
    check_ground(m, SUBSET_SUM_LIMIT)?;
    let n = m.ground_size();
    let chis = per_subset(m, |a| chi_contract(m, a))?;
    let mut by_size: Vec<IntPoly> = vec![IntPoly::zero(); n + 1];
    for (s, chi) in chis.into_iter().enumerate() {
        let k = (s as u64).count_ones() as usize;
        by_size[k] = &by_size[k] + &chi;
    }
    let mut total = by_size
        .iter()
        .enumerate()
        .fold(IntPoly::zero(), |acc, (k, p)| &acc + &(&weight(k) * p));
    if n % 2 == 1 {
        total = -total;
    }
    Ok(total)
}

/// `chi_{M*}(x) = (-1)^|E| / x^r(E) * sum_A (1 - x)^|A| chi_{M/A}(x)`
pub fn chi_dual_via_finaltwo(m: &dyn Matroid) -> Result<IntPoly> {
    finaltwo_sum(m, &IntPoly::one_minus_x_pow)?.div_x_pow(m.full_rank())
}

/// `F_G(x) = (-1)^|E| / x^|V| * sum (1 - x)^|A| P_{G/H(A)}(x)` over vertex
/// partitions into connected blocks, `A` being the edges inside blocks.
pub fn flow_via_connected_partitions(g: &MultiGraph) -> Result<IntPoly> {
    let by_size = partition_terms(g)?;
    let mut total = by_size
        .iter()
        .fold(IntPoly::zero(), |acc, (&k, p)| &acc + &(&IntPoly::one_minus_x_pow(k) * p));
    if g.edge_count() % 2 == 1 {
        total = -total;
    }
    total.div_x_pow(g.vertex_count())
}

/// Quotient chromatic polynomials summed per number of inner edges.
fn partition_terms(g: &MultiGraph) -> Result<BTreeMap<usize, IntPoly>> {
    let n = g.vertex_count();
    if n > PARTITION_VERTEX_LIMIT {
        return Err(Error::too_large("vertex set", n as u64, PARTITION_VERTEX_LIMIT as u64));
    }
    let parts: Vec<_> = g.connected_partitions()?.collect();
    let terms = parts
        .par_iter()
        .map(|p| Ok((p.inner_edges.len(), chromatic_poly_vertex(&g.quotient(p.inner_edges))?)))
        .collect::<Result<Vec<_>>>()?;
    let mut by_size: BTreeMap<usize, IntPoly> = BTreeMap::new();
    for (k, poly) in terms {
        let slot = by_size.entry(k).or_insert_with(IntPoly::zero);
        *slot = &*slot + &poly;
    }
    Ok(by_size)
}

/// Whether `T(x, y) = T(x, 0) + T(0, y)` holds, regardless of whether the
/// matroid is uniform.
pub fn uniform_split_holds(m: &dyn Matroid) -> Result<bool> {
    let t = tutte(m)?;
    let split = &BiPoly::from_x(&t.at_y_zero()) + &BiPoly::from_y(&t.at_x_zero());
    Ok(split == t)
}

/// Checks one identity on one target.
pub fn verify_identity(
    kind: IdentityKind,
    target: &Target,
    samples: &[BigRational],
) -> Result<VerifyReport> {
    let defaults;
    let samples = if samples.is_empty() {
        defaults = default_samples();
        &defaults[..]
    } else {
        samples
    };
    let matroid = target.as_matroid();
    let m: &dyn Matroid = &*matroid;
    check_ground(m, ENUMERATION_LIMIT)?;
    let report = Report {
        kind,
        target: target.descriptor().to_string(),
    };
    match kind {
        IdentityKind::FinalTwo => verify_finaltwo_weighted(m, &IntPoly::one_minus_x_pow, report),
        IdentityKind::Convolution => {
            let lhs = tutte(m)?;
            let rhs = convolution_rhs(m)?;
            Ok(report.exact_bi(&lhs, &rhs))
        }
        IdentityKind::UniformSplit => {
            if m.ground_size() == 0 || !is_uniform(m)? {
                return Err(Error::bad_params(format!(
                    "{} applies to uniform matroids on a nonempty ground set; {} is not one",
                    kind,
                    target.descriptor()
                )));
            }
            let t = tutte(m)?;
            let split = &BiPoly::from_x(&t.at_y_zero()) + &BiPoly::from_y(&t.at_x_zero());
            Ok(report.exact_bi(&t, &split))
        }
        IdentityKind::Kung => verify_kung(m, samples, report),
        _ => verify_univariate(kind, target, m, samples, report),
    }
}

/// Runs the dual formula with a substitute weight; used to show that the
/// harness notices a broken identity.
pub fn verify_finaltwo_with_weight(
    target: &Target,
    weight: &(dyn Fn(usize) -> IntPoly + Sync),
) -> Result<VerifyReport> {
    let matroid = target.as_matroid();
    let report = Report {
        kind: IdentityKind::FinalTwo,
        target: target.descriptor().to_string(),
    };
    verify_finaltwo_weighted(&*matroid, weight, report)
}

fn verify_finaltwo_weighted(
    m: &dyn Matroid,
    weight: &(dyn Fn(usize) -> IntPoly + Sync),
    report: Report,
) -> Result<VerifyReport> {
    let expected = rank_size_table(m)?.chi_dual();
    let sum = finaltwo_sum(m, weight)?;
    match sum.div_x_pow(m.full_rank()) {
        Ok(lhs) => Ok(report.exact_uni(&expected, &lhs)),
        Err(e @ Error::NotDivisible { .. }) => Ok(report.finish(
            Mode::Exact,
            Vec::new(),
            Some(Mismatch {
                point: format!("division by x^{}", m.full_rank()),
                lhs: expected.to_string(),
                rhs: e.to_string(),
            }),
            None,
        )),
        Err(e) => Err(e),
    }
}

/// `sum_A T_{M|A}(0, y) T_{M/A}(x, 0)`
fn convolution_rhs(m: &dyn Matroid) -> Result<BiPoly> {
    let terms = per_subset(m, |a| {
        let left = tutte(&restrict(m, a))?.at_x_zero();
        let right = tutte(&contract(m, m.ground().difference(a)))?.at_y_zero();
        Ok(BiPoly::outer(&right, &left))
    })?;
    Ok(terms.iter().fold(BiPoly::zero(), |acc, t| &acc + t))
}

/// `R_M(l*xi, x*y) = sum_A l^(r(E)-r(A)) (-y)^(|A|-r(A)) R_{M|A}(-l, -x) R_{M/A}(xi, y)`,
/// with `(l, xi, x, y)` taken as cyclic windows of length four over the
/// samples.
fn verify_kung(m: &dyn Matroid, samples: &[BigRational], report: Report) -> Result<VerifyReport> {
    if let Some(zero) = samples.iter().find(|s| s.is_zero()) {
        return Err(Error::bad_params(format!("KUNG needs nonzero parameters, got {zero}")));
    }
    let r_full = m.full_rank();
    let whole = whitney_r(m)?;
    let pieces = per_subset(m, |a| {
        Ok((
            a,
            m.rank(a),
            whitney_r(&restrict(m, a))?,
            whitney_r(&contract(m, m.ground().difference(a)))?,
        ))
    })?;
    let k = samples.len();
    let mut mismatch = None;
    let mut points = Vec::new();
    for i in 0..k {
        let [l, xi, x, y] = [0, 1, 2, 3].map(|j| &samples[(i + j) % k]);
        let point = format!("(lambda={l}, xi={xi}, x={x}, y={y})");
        points.push(point.clone());
        if mismatch.is_some() {
            continue;
        }
        let lhs = whole.eval(&(l * xi), &(x * y));
        let neg_y = -y;
        let rhs = pieces
            .iter()
            .map(|(a, r, rest, con)| {
                pow(l, (r_full - r) as i64)
                    * pow(&neg_y, (a.len() - r) as i64)
                    * rest.eval(&-l, &-x)
                    * con.eval(xi, y)
            })
            .fold(BigRational::zero(), |acc, t| acc + t);
        if lhs != rhs {
            mismatch = Some(Mismatch {
                point,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }
    Ok(report.finish(Mode::Sampled, points, mismatch, None))
}

/// Per-point left and right sides of a univariate identity.
type Sides = Box<dyn Fn(&BigRational) -> (BigRational, BigRational) + Sync>;

fn verify_univariate(
    kind: IdentityKind,
    target: &Target,
    m: &dyn Matroid,
    samples: &[BigRational],
    report: Report,
) -> Result<VerifyReport> {
    let n = m.ground_size();
    let r = m.full_rank();
    for q in samples {
        let excluded = match kind {
            IdentityKind::HyperbolaT => q.is_one(),
            IdentityKind::HyperbolaR | IdentityKind::Th2ConnectedPartitions => q.is_zero(),
            _ => q.is_zero() || q.is_one(),
        };
        if excluded {
            return Err(Error::bad_params(format!("{kind} is undefined at sample point {q}")));
        }
    }
    let (sides, degree_bound): (Sides, usize) = match kind {
        IdentityKind::Thm1One => (thm1_one(m)?, 3 * n),
        IdentityKind::Thm1Two => (thm1_two(m)?, 3 * n),
        IdentityKind::TwoZeta => (two_zeta(m)?, 3 * n),
        IdentityKind::Matiyasevich => match target.as_graph() {
            Some(g) => (matiyasevich_graph(g)?, 3 * n),
            None => (matiyasevich_matroid(m)?, 3 * n),
        },
        IdentityKind::MatiyasevichInverse => match target.as_graph() {
            Some(g) => (matiyasevich_inverse_graph(g)?, 3 * n),
            None => (thm1_one(m)?, 3 * n),
        },
        IdentityKind::Th2ConnectedPartitions => match target.as_graph() {
            Some(g) => (th2_graph(g)?, n + g.vertex_count()),
            None => (th2_matroid(m)?, n + r),
        },
        IdentityKind::HyperbolaT => (hyperbola_t(m)?, 3 * n),
        IdentityKind::HyperbolaR => (hyperbola_r(m)?, 3 * n),
        IdentityKind::FinalTwo
        | IdentityKind::Convolution
        | IdentityKind::UniformSplit
        | IdentityKind::Kung => unreachable!("handled by the caller"),
    };
    let mut mismatch = None;
    for q in samples {
        let (lhs, rhs) = sides(q);
        if lhs != rhs {
            mismatch = Some(Mismatch {
                point: q.to_string(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
            break;
        }
    }
    let points = samples.iter().map(ToString::to_string).collect();
    Ok(report.finish(Mode::Sampled, points, mismatch, Some(degree_bound)))
}

/// Polynomials summed into buckets keyed by a small integer pair.
type Buckets = BTreeMap<(usize, usize), IntPoly>;

fn bucket(entries: Vec<((usize, usize), IntPoly)>) -> Buckets {
    let mut out = Buckets::new();
    for (key, p) in entries {
        let slot = out.entry(key).or_insert_with(IntPoly::zero);
        *slot = &*slot + &p;
    }
    out
}

fn zetas(q: &BigRational) -> (BigRational, BigRational) {
    (
        zeta_q(q, 1).expect("sample points are screened for poles"),
        zeta_q(q, -1).expect("sample points are screened for poles"),
    )
}

/// `chi_{M*}(q) zeta(-1)^|E| = sum_A (-1)^(|E|-|A|) chi_{M|A}(q) / q^r(A) zeta(1)^|A|`
fn thm1_one(m: &dyn Matroid) -> Result<Sides> {
    let n = m.ground_size();
    let chi_dual = rank_size_table(m)?.chi_dual();
    let terms = bucket(per_subset(m, |a| Ok(((a.len(), m.rank(a)), chi_subset(&restrict(m, a))?)))?);
    Ok(Box::new(move |q| {
        let (z1, zm1) = zetas(q);
        let lhs = chi_dual.eval_rational(q) * pow(&zm1, n as i64);
        let rhs = terms
            .iter()
            .map(|(&(k, rk), p)| {
                sign(n - k) * p.eval_rational(q) * pow(q, -(rk as i64)) * pow(&z1, k as i64)
            })
            .fold(BigRational::zero(), |acc, t| acc + t);
        (lhs, rhs)
    }))
}

/// `chi_{M*}(q) / q^r*(E) zeta(1)^|E| = sum_A zeta(-1)^(|E|-|A|) chi_{M/A}(q)`
fn thm1_two(m: &dyn Matroid) -> Result<Sides> {
    let n = m.ground_size();
    let dual_rank = n - m.full_rank();
    let chi_dual = rank_size_table(m)?.chi_dual();
    let terms = bucket(per_subset(m, |a| Ok(((a.len(), 0), chi_contract(m, a)?)))?);
    Ok(Box::new(move |q| {
        let (z1, zm1) = zetas(q);
        let lhs = chi_dual.eval_rational(q) * pow(q, -(dual_rank as i64)) * pow(&z1, n as i64);
        let rhs = terms
            .iter()
            .map(|(&(k, _), p)| pow(&zm1, (n - k) as i64) * p.eval_rational(q))
            .fold(BigRational::zero(), |acc, t| acc + t);
        (lhs, rhs)
    }))
}

/// `chi_M(q) / q^r(E) zeta(1)^|E| = sum_A zeta(-1)^|A| chi_{M*.A}(q)`, with
/// `M*.A` the contraction of the dual onto `A`.
fn two_zeta(m: &dyn Matroid) -> Result<Sides> {
    let d = dual(m);
    let terms = bucket(per_subset(m, |a| Ok(((a.len(), 0), chi_subset(&contract(&d, a))?)))?);
    zeta_sum_against_chi(m, terms)
}

/// The same sum with each term computed as the dual of a restriction.
fn matiyasevich_matroid(m: &dyn Matroid) -> Result<Sides> {
    let terms = bucket(per_subset(m, |a| Ok(((a.len(), 0), chi_subset(&dual(restrict(m, a)))?)))?);
    zeta_sum_against_chi(m, terms)
}

fn zeta_sum_against_chi(m: &dyn Matroid, terms: Buckets) -> Result<Sides> {
    let n = m.ground_size();
    let r = m.full_rank();
    let chi = rank_size_table(m)?.chi();
    Ok(Box::new(move |q| {
        let (z1, zm1) = zetas(q);
        let lhs = chi.eval_rational(q) * pow(q, -(r as i64)) * pow(&z1, n as i64);
        let rhs = terms
            .iter()
            .map(|(&(k, _), p)| pow(&zm1, k as i64) * p.eval_rational(q))
            .fold(BigRational::zero(), |acc, t| acc + t);
        (lhs, rhs)
    }))
}

/// `P_G(q) / q^|V| zeta(1)^|E| = sum_A zeta(-1)^|A| F_{H(A)}(q)`
fn matiyasevich_graph(g: &MultiGraph) -> Result<Sides> {
    let n = g.edge_count();
    let v = g.vertex_count();
    let chromatic = chromatic_poly(g)?;
    let subsets: Vec<Subset> = g.all_edges().subsets().collect();
    let terms = bucket(
        subsets
            .par_iter()
            .map(|&a| Ok(((a.len(), 0), flow_poly(&g.edge_subgraph(a))?)))
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(Box::new(move |q| {
        let (z1, zm1) = zetas(q);
        let lhs = chromatic.eval_rational(q) * pow(q, -(v as i64)) * pow(&z1, n as i64);
        let rhs = terms
            .iter()
            .map(|(&(k, _), p)| pow(&zm1, k as i64) * p.eval_rational(q))
            .fold(BigRational::zero(), |acc, t| acc + t);
        (lhs, rhs)
    }))
}

/// `F_G(q) zeta(-1)^|E| = sum_A (-1)^(|E|-|A|) P_{H(A)}(q) / q^|V(A)| zeta(1)^|A|`
fn matiyasevich_inverse_graph(g: &MultiGraph) -> Result<Sides> {
    let n = g.edge_count();
    let flow = flow_poly(g)?;
    let subsets: Vec<Subset> = g.all_edges().subsets().collect();
    let terms = bucket(
        subsets
            .par_iter()
            .map(|&a| {
                let h = g.edge_subgraph(a);
                Ok(((a.len(), h.vertex_count()), chromatic_poly_vertex(&h)?))
            })
            .collect::<Result<Vec<_>>>()?,
    );
    Ok(Box::new(move |q| {
        let (z1, zm1) = zetas(q);
        let lhs = flow.eval_rational(q) * pow(&zm1, n as i64);
        let rhs = terms
            .iter()
            .map(|(&(k, va), p)| {
                sign(n - k) * p.eval_rational(q) * pow(q, -(va as i64)) * pow(&z1, k as i64)
            })
            .fold(BigRational::zero(), |acc, t| acc + t);
        (lhs, rhs)
    }))
}

/// `F_G(q) = (-1)^|E| / q^|V| * sum (1 - q)^|A| P_{G/H(A)}(q)` over connected
/// vertex partitions.
fn th2_graph(g: &MultiGraph) -> Result<Sides> {
    let n = g.edge_count();
    let v = g.vertex_count();
    let flow = flow_poly(g)?;
    let terms = partition_terms(g)?;
    Ok(Box::new(move |q| {
        let one_minus_q = rat(1) - q;
        let rhs = terms
            .iter()
            .map(|(&k, p)| pow(&one_minus_q, k as i64) * p.eval_rational(q))
            .fold(BigRational::zero(), |acc, t| acc + t)
            * sign(n)
            * pow(q, -(v as i64));
        (flow.eval_rational(q), rhs)
    }))
}

/// Matroid form: the dual formula summed over flats only, since contracting
/// a non-flat leaves a loop.
fn th2_matroid(m: &dyn Matroid) -> Result<Sides> {
    let n = m.ground_size();
    let r = m.full_rank();
    let chi_dual = rank_size_table(m)?.chi_dual();
    let terms = bucket(
        per_subset(m, |a| {
            Ok(if is_closed(m, a) {
                Some(((a.len(), 0), chi_contract(m, a)?))
            } else {
                None
            })
        })?
        .into_iter()
        .flatten()
        .collect(),
    );
    Ok(Box::new(move |q| {
        let one_minus_q = rat(1) - q;
        let rhs = terms
            .iter()
            .map(|(&(k, _), p)| pow(&one_minus_q, k as i64) * p.eval_rational(q))
            .fold(BigRational::zero(), |acc, t| acc + t)
            * sign(n)
            * pow(q, -(r as i64));
        (chi_dual.eval_rational(q), rhs)
    }))
}

/// `T_M(x, 1 + 1/(x - 1)) = x^|E| (x - 1)^(r(E) - |E|)`
fn hyperbola_t(m: &dyn Matroid) -> Result<Sides> {
    let n = m.ground_size() as i64;
    let r = m.full_rank() as i64;
    let t = tutte(m)?;
    Ok(Box::new(move |x| {
        let xm1 = x - rat(1);
        let y = rat(1) + xm1.recip();
        (t.eval(x, &y), pow(x, n) * pow(&xm1, r - n))
    }))
}

/// `R_M(x, 1/x) = (x + 1)^|E| x^(r(E) - |E|)`
fn hyperbola_r(m: &dyn Matroid) -> Result<Sides> {
    let n = m.ground_size() as i64;
    let r = m.full_rank() as i64;
    let w = whitney_r(m)?;
    Ok(Box::new(move |x| {
        (w.eval(x, &x.recip()), pow(&(x + rat(1)), n) * pow(x, r - n))
    }))
}

struct Report {
    kind: IdentityKind,
    target: String,
}

impl Report {
    fn finish(
        self,
        mode: Mode,
        samples: Vec<String>,
        first_mismatch: Option<Mismatch>,
        degree_bound: Option<usize>,
    ) -> VerifyReport {
        let pass = first_mismatch.is_none();
        let certified = pass
            && match mode {
                Mode::Exact => true,
                Mode::Sampled => degree_bound.is_some_and(|d| {
                    let mut distinct = samples.clone();
                    distinct.sort();
                    distinct.dedup();
                    distinct.len() > d
                }),
            };
        VerifyReport {
            kind: self.kind.name().to_string(),
            target: self.target,
            mode,
            samples,
            pass,
            first_mismatch,
            degree_bound,
            certified,
        }
    }

    fn exact_uni(self, lhs: &IntPoly, rhs: &IntPoly) -> VerifyReport {
        let len = lhs.coeffs().len().max(rhs.coeffs().len());
        let mismatch = (0..len).find(|&i| lhs.coeff(i) != rhs.coeff(i)).map(|i| Mismatch {
            point: format!("x^{i}"),
            lhs: lhs.coeff(i).to_string(),
            rhs: rhs.coeff(i).to_string(),
        });
        self.finish(Mode::Exact, Vec::new(), mismatch, None)
    }

    fn exact_bi(self, lhs: &BiPoly, rhs: &BiPoly) -> VerifyReport {
        let diff = lhs - rhs;
        let mismatch = diff.terms().next().map(|(dx, dy, _)| Mismatch {
            point: format!("x^{dx} y^{dy}"),
            lhs: lhs.coeff(dx, dy).to_string(),
            rhs: rhs.coeff(dx, dy).to_string(),
        });
        self.finish(Mode::Exact, Vec::new(), mismatch, None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{complete_graph, path_graph};
    use crate::invariants::flow_poly;
    use crate::matroids::{make_graphic, make_pg, make_uniform};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_q(&q(2, 1), 1).unwrap(), q(2, 1));
        assert_eq!(zeta_q(&q(2, 1), -1).unwrap(), q(-1, 1));
        assert!(zeta_q(&q(1, 1), 1).is_err());
        assert!(zeta_q(&q(0, 1), -1).is_err());
    }

    #[test]
    fn finaltwo_examples() {
        let coloop = make_uniform(1, 1).unwrap();
        assert_eq!(chi_dual_via_finaltwo(&coloop).unwrap(), IntPoly::zero());
        let k3 = make_graphic(&complete_graph(3)).unwrap();
        assert_eq!(chi_dual_via_finaltwo(&k3).unwrap(), IntPoly::from_i64s(&[-1, 1]));
        let fano = make_pg(3, 2).unwrap();
        assert_eq!(
            chi_dual_via_finaltwo(&fano).unwrap(),
            IntPoly::from_i64s(&[13, -28, 21, -7, 1])
        );
    }

    #[test]
    fn connected_partition_examples() {
        assert_eq!(
            flow_via_connected_partitions(&complete_graph(3)).unwrap(),
            IntPoly::from_i64s(&[-1, 1])
        );
        assert_eq!(
            flow_via_connected_partitions(&complete_graph(4)).unwrap(),
            IntPoly::from_i64s(&[-6, 11, -6, 1])
        );
        assert_eq!(flow_via_connected_partitions(&path_graph(4)).unwrap(), IntPoly::zero());
        let g = complete_graph(5);
        assert_eq!(flow_via_connected_partitions(&g).unwrap(), flow_poly(&g).unwrap());
    }

    #[test]
    fn kind_names_round_trip() {
        for kind in IdentityKind::ALL {
            assert_eq!(kind.name().parse::<IdentityKind>().unwrap(), kind);
        }
        assert_eq!("finaltwo".parse::<IdentityKind>().unwrap(), IdentityKind::FinalTwo);
        assert_eq!("th2".parse::<IdentityKind>().unwrap(), IdentityKind::Th2ConnectedPartitions);
        assert!("nope".parse::<IdentityKind>().is_err());
    }

    #[test]
    fn spec_examples() {
        let u24 = Target::matroid(make_uniform(2, 4).unwrap(), "uniform:2,4");
        for kind in [IdentityKind::Convolution, IdentityKind::UniformSplit, IdentityKind::FinalTwo] {
            let r = verify_identity(kind, &u24, &[]).unwrap();
            assert!(r.pass && r.certified && r.mode == Mode::Exact, "{kind}");
        }
        let k3 = Target::graph(complete_graph(3), "K3");
        let kung = verify_identity(IdentityKind::Kung, &k3, &[q(2, 1), q(3, 1), q(1, 2), q(5, 1)]);
        assert!(kung.unwrap().pass);
        let u13 = Target::matroid(make_uniform(1, 3).unwrap(), "uniform:1,3");
        let r = verify_identity(IdentityKind::Thm1One, &u13, &[q(2, 1), q(3, 1), q(5, 1)]).unwrap();
        assert!(r.pass);
        assert_eq!(r.samples, vec!["2", "3", "5"]);
    }

    #[test]
    fn every_kind_on_k4() {
        let k4 = Target::graph(complete_graph(4), "K4");
        for kind in IdentityKind::ALL {
            if kind == IdentityKind::UniformSplit {
                assert!(matches!(verify_identity(kind, &k4, &[]), Err(Error::BadParams(_))));
                continue;
            }
            let r = verify_identity(kind, &k4, &[]).unwrap();
            assert!(r.pass, "{kind}: {:?}", r.first_mismatch);
        }
        assert!(!uniform_split_holds(&make_graphic(&complete_graph(4)).unwrap()).unwrap());
    }

    #[test]
    fn broken_weight_is_detected() {
        let k3 = Target::graph(complete_graph(3), "K3");
        let r = verify_finaltwo_with_weight(&k3, &|_| IntPoly::one()).unwrap();
        assert!(!r.pass);
        assert!(r.first_mismatch.is_some());
    }

    #[test]
    fn excluded_points_are_rejected() {
        let u = Target::matroid(make_uniform(1, 2).unwrap(), "u");
        assert!(verify_identity(IdentityKind::Thm1Two, &u, &[q(1, 1)]).is_err());
        assert!(verify_identity(IdentityKind::HyperbolaR, &u, &[q(0, 1)]).is_err());
        assert!(verify_identity(IdentityKind::Kung, &u, &[q(0, 1), q(2, 1)]).is_err());
        assert!(verify_identity(IdentityKind::HyperbolaT, &u, &[q(0, 1)]).unwrap().pass);
    }
}
