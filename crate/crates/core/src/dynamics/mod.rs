//! Zero-entropy pipeline on intersection models: reduce the action to a
//! unipotent iterate, take its nilpotent logarithm `L`, evaluate the
//! intersection numbers `w_λ = ∏ L^{λ_i}H`, and assemble `Δₙᵈ` and `plov`.

pub mod abelian;
pub mod linalg;
pub mod poly;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::incidence::{self, DistinguishedPartition};
use crate::partitions::{self, Partition, PartitionSet};
use crate::rational::{self, Rational};
use crate::symfun;

pub use abelian::{AbelianSurrogate, ModelSpec, RandomModelSpec};
pub use linalg::{IntMatrix, QMat};
pub use poly::{power_sum_polynomial, UnivariatePoly};

/// A `d`-dimensional model: a symmetric `d`-linear form on rank-`m` class
/// vectors, an ample class `H`, and the integer action `F = f^*`.
pub trait IntersectionModel: Sync {
    fn dim(&self) -> usize;
    fn class_rank(&self) -> usize;
    fn ample(&self) -> Vec<Rational>;
    fn action(&self) -> IntMatrix;
    fn intersect(&self, classes: &[&[Rational]]) -> Result<Rational>;
}

/// Least `m` with `F^m` unipotent, and `F^m`.
///
/// The characteristic polynomial must factor completely into cyclotomic
/// polynomials; `m` is the lcm of the orders that occur.
pub fn unipotent_power(f: &IntMatrix) -> Result<(u64, QMat)> {
    let n = f.len();
    if f.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("action must be square".into()));
    }
    let q = linalg::from_int(f);
    let mut rest = linalg::charpoly(&q);
    let mut order: u64 = 1;
    // φ(j) ≥ sqrt(j/2), so no cyclotomic factor of degree ≤ n has j > 2n².
    for j in 1..=(2 * n * n + 2) {
        if rest.degree() == Some(0) {
            break;
        }
        if poly::totient(j) > n {
            continue;
        }
        let phi = poly::cyclotomic(j);
        loop {
            let (quot, rem) = rest.div_rem(&phi);
            if !rem.is_zero() {
                break;
            }
            rest = quot;
            order = order.lcm(&(j as u64));
        }
    }
    if rest.degree() != Some(0) {
        return Err(Error::NotQuasiUnipotent(format!(
            "characteristic polynomial has the non-cyclotomic factor {rest}"
        )));
    }
    Ok((order, linalg::pow(&q, order)))
}

/// Smallest `j` with `N^j = 0`, if `N` is nilpotent.
pub fn nilpotency_index(n: &QMat) -> Option<usize> {
    let mut p = linalg::identity(n.len());
    for j in 0..=n.len() {
        if linalg::is_zero(&p) {
            return Some(j);
        }
        p = linalg::mul(&p, n);
    }
    None
}

/// `L = Σ_{i≥1} (−1)^{i+1}/i · (U − I)^i`.
pub fn nilpotent_log(u: &QMat) -> Result<QMat> {
    let size = u.len();
    let n = linalg::sub(u, &linalg::identity(size));
    let index = nilpotency_index(&n).ok_or(Error::NotUnipotent)?;
    let mut l = vec![vec![Rational::zero(); size]; size];
    let mut p = linalg::identity(size);
    for i in 1..index {
        p = linalg::mul(&p, &n);
        let c = Rational::new(if i % 2 == 1 { 1 } else { -1 }.into(), i.into());
        l = linalg::add(&l, &linalg::scale(&p, &c));
    }
    Ok(l)
}

/// `exp(L) = Σ L^i / i!` for nilpotent `L`.
pub fn nilpotent_exp(l: &QMat) -> Result<QMat> {
    let size = l.len();
    let index = nilpotency_index(l).ok_or(Error::NotUnipotent)?;
    let mut acc = linalg::identity(size);
    let mut p = linalg::identity(size);
    for i in 1..index {
        p = linalg::mul(&p, l);
        let c = Rational::new(One::one(), rational::factorial(i));
        acc = linalg::add(&acc, &linalg::scale(&p, &c));
    }
    Ok(acc)
}

/// The reduced action and everything derived from it.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub d: usize,
    /// `m` with `U = F^m` unipotent.
    pub iterate: u64,
    pub unipotent: QMat,
    pub log: QMat,
    /// `max{i : L^iH · H^{d−1} ≠ 0}`.
    pub k: usize,
    /// Nilpotency index of `U − I`, minus one.
    pub nilpotency_k: usize,
    pub warnings: Vec<String>,
    /// `L^i H` for `i = 0..=k`.
    pub lh: Vec<Vec<Rational>>,
}

pub fn analyze<M: IntersectionModel + ?Sized>(model: &M) -> Result<Analysis> {
    let d = model.dim();
    let h = model.ample();
    let hh: Vec<&[Rational]> = vec![&h; d];
    if !model.intersect(&hh)?.is_positive() {
        return Err(Error::ModelInconsistency("H^d is not positive".into()));
    }
    let (iterate, unipotent) = unipotent_power(&model.action())?;
    let log = nilpotent_log(&unipotent)?;
    let size = unipotent.len();
    let index = nilpotency_index(&linalg::sub(&unipotent, &linalg::identity(size)))
        .ok_or(Error::NotUnipotent)?;
    let nilpotency_k = index.saturating_sub(1);

    let mut powers = vec![h.clone()];
    for _ in 0..size {
        let next = linalg::mul_vec(&log, powers.last().unwrap());
        powers.push(next);
    }
    let mut k = 0;
    for (i, v) in powers.iter().enumerate() {
        let mut args: Vec<&[Rational]> = vec![&h; d];
        args[0] = v;
        if !model.intersect(&args)?.is_zero() {
            k = i;
        }
    }
    if k % 2 == 1 || k > 2 * d - 2 {
        return Err(Error::ModelInconsistency(format!(
            "degree growth exponent k = {k} must be even and at most 2d-2 = {}",
            2 * d - 2
        )));
    }
    let mut warnings = Vec::new();
    if k != nilpotency_k {
        warnings.push(format!(
            "k = {k} from intersections but nilpotency index of U - I gives {nilpotency_k}"
        ));
    }
    powers.truncate(k + 1);
    Ok(Analysis {
        d,
        iterate,
        unipotent,
        log,
        k,
        nilpotency_k,
        warnings,
        lh: powers,
    })
}

/// `k` for a model whose action is already unipotent.
pub fn degree_growth_exponent<M: IntersectionModel + ?Sized>(model: &M) -> Result<usize> {
    let a = analyze(model)?;
    if a.iterate != 1 {
        return Err(Error::NotUnipotent);
    }
    Ok(a.k)
}

/// `w_λ` over `P(k, d, n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WVector {
    pub index: PartitionSet,
    pub values: Vec<Rational>,
}

impl WVector {
    pub fn value_at(&self, lambda: &Partition) -> Option<&Rational> {
        self.index.index_of(lambda).map(|i| &self.values[i])
    }
}

pub fn w_value<M: IntersectionModel + ?Sized>(
    model: &M,
    analysis: &Analysis,
    lambda: &Partition,
) -> Result<Rational> {
    let args: Vec<&[Rational]> = lambda
        .parts()
        .iter()
        .map(|&p| analysis.lh.get(p as usize).map(Vec::as_slice))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::InvalidPartition(format!("{lambda} has a part above k")))?;
    model.intersect(&args)
}

pub fn w_vector<M: IntersectionModel + ?Sized>(
    model: &M,
    analysis: &Analysis,
    n: i64,
) -> Result<WVector> {
    let index = partitions::enumerate(analysis.k as u32, analysis.d as u32, n);
    let values = index
        .members()
        .par_iter()
        .map(|lambda| w_value(model, analysis, lambda))
        .collect::<Result<Vec<_>>>()?;
    Ok(WVector { index, values })
}

/// `w` for every `n = 0..=dk`, indexed by `n`.
pub fn all_w_vectors<M: IntersectionModel + ?Sized>(
    model: &M,
    analysis: &Analysis,
) -> Result<Vec<WVector>> {
    (0..=(analysis.d * analysis.k) as i64)
        .map(|n| w_vector(model, analysis, n))
        .collect()
}

/// `A_{k,d,n} · w`.
pub fn linear_system_residual(w: &WVector, k: u32) -> Result<Vec<Rational>> {
    let a = incidence::build_incidence(k, w.index.d, w.index.n);
    a.data.mul_vec(&w.values)
}

pub fn verify_linear_system<M: IntersectionModel + ?Sized>(
    model: &M,
    analysis: &Analysis,
    n: i64,
) -> Result<()> {
    let w = w_vector(model, analysis, n)?;
    let residual = linear_system_residual(&w, analysis.k as u32)?;
    if let Some(i) = residual.iter().position(|x| !x.is_zero()) {
        return Err(Error::ModelInconsistency(format!(
            "A_{{k,d,{n}}} w has a nonzero entry {} in row {}",
            rational::to_string(&residual[i]),
            i
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct DeltaPolynomial {
    pub poly: UnivariatePoly,
    pub plov: usize,
    /// `c_m = Σ_{λ ∈ P(k,d,m)} ∫m̂_λ · w_λ` for `m = 0..=dk`.
    #[serde(serialize_with = "incidence::serialize_rationals")]
    pub leading_terms: Vec<Rational>,
    #[serde(serialize_with = "incidence::serialize_rational")]
    pub top_coefficient: Rational,
}

/// `Δₙᵈ = Σ_λ d!/∏e_i! · ∏_i (S_i(n−1)/i!)^{e_i} · w_λ` over all
/// `λ ∈ P(k, d, ·)`.
pub fn delta_polynomial(analysis: &Analysis, ws: &[WVector]) -> Result<DeltaPolynomial> {
    let (d, k) = (analysis.d, analysis.k);
    let t: Vec<UnivariatePoly> = (0..=k)
        .map(|i| power_sum_polynomial(i).scale(&Rational::new(One::one(), rational::factorial(i))))
        .collect();
    let t_pows: Vec<Vec<UnivariatePoly>> = t
        .iter()
        .map(|ti| {
            let mut v = vec![UnivariatePoly::constant(Rational::one())];
            for _ in 0..d {
                let next = v.last().unwrap().mul(ti);
                v.push(next);
            }
            v
        })
        .collect();
    let d_fact = Rational::from_integer(rational::factorial(d));

    let mut total = UnivariatePoly::zero();
    let mut leading_terms = Vec::with_capacity(ws.len());
    for w in ws {
        let mut c_m = Rational::zero();
        for (lambda, value) in w.index.iter().zip(&w.values) {
            if value.is_zero() {
                continue;
            }
            let e = lambda.multiplicities(k as u32);
            let denom = e.iter().fold(num_bigint::BigInt::one(), |acc, &ei| {
                acc * rational::factorial(ei)
            });
            let mut term =
                UnivariatePoly::constant(&d_fact / Rational::from_integer(denom) * value);
            for (i, &ei) in e.iter().enumerate() {
                if ei > 0 {
                    term = term.mul(&t_pows[i][ei]);
                }
            }
            total = total.add(&term);
            c_m += symfun::integrate_unit_cube(lambda) * value;
        }
        leading_terms.push(c_m);
    }
    let plov = total
        .degree()
        .ok_or_else(|| Error::ModelInconsistency("volume polynomial vanishes".into()))?;
    Ok(DeltaPolynomial {
        top_coefficient: total.leading(),
        poly: total,
        plov,
        leading_terms,
    })
}

/// `κ(t)` from the `w` data: the unique positive `t` with `w_{κ(t)} > 0` and
/// `w_λ = 0` for every `λ ≻ κ(t)`.
pub fn find_distinguished_kappa(
    analysis: &Analysis,
    ws: &[WVector],
) -> Result<DistinguishedPartition> {
    let (d, k) = (analysis.d, analysis.k);
    if k < 2 {
        return Err(Error::ModelInconsistency(format!(
            "distinguished partition needs k = 2r >= 2, got k = {k}"
        )));
    }
    let r = k / 2;
    let nonzero: Vec<(&Partition, &Rational)> = ws
        .iter()
        .flat_map(|w| w.index.iter().zip(&w.values))
        .filter(|(_, v)| !v.is_zero())
        .collect();

    let mut found = Vec::new();
    for t in compositions(d, r + 1) {
        let dp = DistinguishedPartition::new(t)?;
        let positive = nonzero
            .iter()
            .any(|(l, v)| **l == dp.kappa && v.is_positive());
        let above_vanish = nonzero.iter().all(|(l, _)| **l <= dp.kappa);
        if positive && above_vanish {
            found.push(dp);
        }
    }
    let dp = match found.len() {
        1 => found.pop().unwrap(),
        0 => {
            return Err(Error::ModelInconsistency(
                "no t satisfies geometric vanishing and positivity".into(),
            ))
        }
        c => {
            return Err(Error::ModelInconsistency(format!(
                "{c} values of t satisfy geometric vanishing and positivity"
            )))
        }
    };
    let size = dp.size() as usize;
    let (r32, d32) = (r as u32, d as u32);
    if size < r * (r + 1) || size > r * d || dp.t[r] > (d32 - r32).div_ceil(2) {
        return Err(Error::ModelInconsistency(format!(
            "t = {:?} violates the boundedness constraints",
            dp.t
        )));
    }
    Ok(dp)
}

/// Positive compositions of `total` into `parts` pieces.
fn compositions(total: usize, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 {
            vec![Vec::new()]
        } else {
            Vec::new()
        };
    }
    let mut out = Vec::new();
    for first in 1..=total.saturating_sub(parts - 1) {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Open interval `(d(d−2) + 2·max{1, ⌊d/4⌋}, d²)` excluded by the gap
/// principle.
pub fn gap_interval(d: usize) -> (usize, usize) {
    (d * (d - 2) + 2 * (d / 4).max(1), d * d)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PrinciplesReport {
    pub parity: bool,
    pub gap: bool,
    pub upper_bound: bool,
    /// Reported only: `plov ≥ d + k(k+2)/4`.
    pub conjecture_lb: bool,
}

impl PrinciplesReport {
    pub fn asserted_pass(&self) -> bool {
        self.parity && self.gap && self.upper_bound
    }
}

pub fn check_principles(d: usize, k: usize, plov: usize) -> PrinciplesReport {
    let (lo, hi) = gap_interval(d.max(2));
    PrinciplesReport {
        parity: plov % 2 == d % 2,
        gap: !(lo < plov && plov < hi),
        upper_bound: 2 * plov <= (k + 2) * d,
        conjecture_lb: 4 * plov >= 4 * d + k * (k + 2),
    }
}

pub fn verify_principles(d: usize, k: usize, plov: usize) -> Result<PrinciplesReport> {
    let report = check_principles(d, k, plov);
    if !report.asserted_pass() {
        return Err(Error::VerificationFailure(format!(
            "principles fail for d={d}, k={k}, plov={plov}: {report:?}"
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct HilbertCheck {
    #[serde(serialize_with = "incidence::serialize_rational")]
    pub coefficient: Rational,
    #[serde(serialize_with = "incidence::serialize_rational")]
    pub expected: Rational,
    pub pass: bool,
}

/// Coefficient of `n^{d²}` against `w_{κ(1_d)} · ∏_{j=1}^{d−1} (j!)³/((2j)!(d+j)!)`.
pub fn hilbert_top_coefficient(
    analysis: &Analysis,
    ws: &[WVector],
    delta: &DeltaPolynomial,
) -> Result<HilbertCheck> {
    let d = analysis.d;
    if analysis.k != 2 * d - 2 {
        return Err(Error::InvalidArgument(format!(
            "Hilbert check needs k = 2d-2, got k = {}",
            analysis.k
        )));
    }
    let kappa = DistinguishedPartition::staircase(d as u32).kappa;
    let w = ws
        .get(kappa.size() as usize)
        .and_then(|w| w.value_at(&kappa))
        .cloned()
        .unwrap_or_else(Rational::zero);
    let expected = w * symfun::hilbert_product(d as u32);
    let coefficient = delta.poly.coeff(d * d);
    Ok(HilbertCheck {
        pass: coefficient == expected,
        coefficient,
        expected,
    })
}

pub fn hilbert_top_coefficient_check<M: IntersectionModel + ?Sized>(
    model: &M,
) -> Result<HilbertCheck> {
    let analysis = analyze(model)?;
    let ws = all_w_vectors(model, &analysis)?;
    let delta = delta_polynomial(&analysis, &ws)?;
    let check = hilbert_top_coefficient(&analysis, &ws, &delta)?;
    if !check.pass {
        return Err(Error::VerificationFailure(format!(
            "top coefficient {} differs from {}",
            rational::to_string(&check.coefficient),
            rational::to_string(&check.expected)
        )));
    }
    Ok(check)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ChecksJson {
    pub parity: bool,
    pub gap: bool,
    pub upper_bound: bool,
    /// `None` unless `k = 2d − 2`.
    pub hilbert: Option<bool>,
    pub conjecture_lb: bool,
}

/// The per-model report.
#[derive(Clone, Debug, Serialize)]
pub struct ModelReport {
    pub g: usize,
    pub d: usize,
    pub k: usize,
    pub jordan: Vec<usize>,
    pub plov: usize,
    pub kappa: Option<Partition>,
    pub t: Option<Vec<u32>>,
    #[serde(serialize_with = "incidence::serialize_rational")]
    pub top_coefficient: Rational,
    pub checks: ChecksJson,
    #[serde(skip)]
    pub delta: UnivariatePoly,
    #[serde(skip)]
    pub vanishing: VanishingReport,
    #[serde(skip)]
    pub warnings: Vec<String>,
}

impl ModelReport {
    /// Every asserted check, including vanishing and the linear system.
    pub fn pass(&self) -> bool {
        self.checks.parity
            && self.checks.gap
            && self.checks.upper_bound
            && self.checks.hilbert != Some(false)
            && self.vanishing.pass()
    }
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct VanishingReport {
    /// `A_{k,d,n} w = 0` for every `n`.
    pub linear_system: bool,
    /// `w_λ = 0` whenever `|λ| > dk/2`.
    pub combinatorial: bool,
    /// `w_λ = 0` for `λ ≻ κ(t)` and `w_{κ(t)} > 0`; `None` when `k = 0`.
    pub geometric: Option<bool>,
    /// Top coefficient agrees with `c_{plov−d}`.
    pub coefficient_formula: bool,
}

impl VanishingReport {
    pub fn pass(&self) -> bool {
        self.linear_system
            && self.combinatorial
            && self.geometric != Some(false)
            && self.coefficient_formula
    }
}

/// Full pipeline on an abelian surrogate.
pub fn model_report(model: &AbelianSurrogate) -> Result<ModelReport> {
    let analysis = analyze(model)?;
    let ws = all_w_vectors(model, &analysis)?;
    let (d, k) = (analysis.d, analysis.k);
    let delta = delta_polynomial(&analysis, &ws)?;

    let mut linear_system = true;
    for w in ws.iter().skip(1) {
        linear_system &= linear_system_residual(w, k as u32)?
            .iter()
            .all(Zero::is_zero);
    }
    let combinatorial = ws
        .iter()
        .filter(|w| 2 * w.index.n > (d * k) as i64)
        .all(|w| w.values.iter().all(Zero::is_zero));
    let dp = if k >= 2 {
        Some(find_distinguished_kappa(&analysis, &ws))
    } else {
        None
    };
    let coefficient_formula = delta.plov >= d
        && delta.leading_terms[delta.plov - d] == delta.top_coefficient
        && delta.leading_terms[delta.plov - d + 1..]
            .iter()
            .all(Zero::is_zero);
    let vanishing = VanishingReport {
        linear_system,
        combinatorial,
        geometric: dp.as_ref().map(Result::is_ok),
        coefficient_formula,
    };

    let principles = check_principles(d, k, delta.plov);
    let hilbert = if k == 2 * d - 2 {
        Some(hilbert_top_coefficient(&analysis, &ws, &delta)?.pass)
    } else {
        None
    };
    let dp = dp.and_then(Result::ok);
    Ok(ModelReport {
        g: model.g(),
        d,
        k,
        jordan: model.jordan_type()?,
        plov: delta.plov,
        kappa: dp.as_ref().map(|x| x.kappa.clone()),
        t: dp.map(|x| x.t),
        top_coefficient: delta.top_coefficient.clone(),
        checks: ChecksJson {
            parity: principles.parity,
            gap: principles.gap,
            upper_bound: principles.upper_bound,
            hilbert,
            conjecture_lb: principles.conjecture_lb,
        },
        delta: delta.poly,
        vanishing,
        warnings: analysis.warnings,
    })
}
