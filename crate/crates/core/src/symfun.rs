//! Normalized monomial symmetric functions
//! `m̂_λ = Σ_{α ∈ S_d·λ} z^α / α!`, coefficient vectors in that basis, the
//! total-derivative operator and Vandermonde-type polynomials.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multipoly::SparseMultiPoly;
use crate::partitions::{self, Partition, PartitionSet};
use crate::rational::{self, Rational};

/// `x = (x_λ)` over `P(k,d,n)`, standing for `F_x = Σ_λ x_λ m̂_λ`.
#[derive(Clone, Debug, PartialEq)]
pub struct CoeffVector {
    pub index: PartitionSet,
    pub values: Vec<Rational>,
}

#[derive(Serialize)]
struct Entry {
    partition: String,
    value: String,
}

impl CoeffVector {
    pub fn new(index: PartitionSet, values: Vec<Rational>) -> Result<Self> {
        if index.len() != values.len() {
            return Err(Error::LengthMismatch {
                left: index.len(),
                right: values.len(),
            });
        }
        Ok(Self { index, values })
    }

    pub fn zero(k: u32, d: u32, n: i64) -> Self {
        let index = partitions::enumerate(k, d, n);
        let values = vec![Rational::zero(); index.len()];
        Self { index, values }
    }

    pub fn unit(k: u32, d: u32, lambda: &Partition) -> Result<Self> {
        let mut v = Self::zero(k, d, i64::from(lambda.size()));
        let i = v.index.index_of(lambda).ok_or_else(|| {
            Error::InvalidPartition(format!("{lambda} is not in P({k},{d},{})", lambda.size()))
        })?;
        v.values[i] = Rational::one();
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn value_at(&self, lambda: &Partition) -> Option<Rational> {
        self.index.index_of(lambda).map(|i| self.values[i].clone())
    }

    /// `F_x` as an explicit polynomial.
    pub fn to_poly(&self) -> SparseMultiPoly {
        let mut f = SparseMultiPoly::zero(self.index.d as usize);
        for (lambda, x) in self.index.iter().zip(&self.values) {
            if x.is_zero() {
                continue;
            }
            for (exp, c) in mhat_poly(lambda).terms() {
                f.add_term(exp.clone(), c * x);
            }
        }
        f
    }

    /// Entries at `λ ⪯ κ`, in index order.
    pub fn truncate(&self, kappa: &Partition) -> Vec<Rational> {
        self.index
            .indices_not_above(kappa)
            .into_iter()
            .map(|i| self.values[i].clone())
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<Entry> = self
            .index
            .iter()
            .zip(&self.values)
            .map(|(p, v)| Entry {
                partition: p.to_string(),
                value: rational::to_string(v),
            })
            .collect();
        serde_json::to_value(entries).expect("plain strings serialize")
    }
}

/// Distinct rearrangements of `parts`, in lexicographically decreasing order.
pub fn distinct_permutations(parts: &[u32]) -> Vec<Vec<u32>> {
    let mut cur: Vec<u32> = parts.to_vec();
    cur.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = vec![cur.clone()];
    // Standard previous-permutation step on a multiset.
    while let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] > cur[i]) {
        let j = (i..cur.len()).rev().find(|&j| cur[j] < cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `m̂_λ` as a polynomial in `len(λ)` variables.
pub fn mhat_poly(lambda: &Partition) -> SparseMultiPoly {
    let d = lambda.len();
    let coeff = Rational::new(One::one(), lambda.factorial());
    let mut p = SparseMultiPoly::zero(d);
    for alpha in distinct_permutations(lambda.parts()) {
        p.add_term(alpha, coeff.clone());
    }
    p
}

/// Reads off `x_λ = [z^λ]p · λ!` after checking that `p` is symmetric,
/// homogeneous of degree `n` and has every variable degree at most `k`.
pub fn mhat_expand(p: &SparseMultiPoly, k: u32, d: u32, n: i64) -> Result<CoeffVector> {
    if p.arity() != d as usize {
        return Err(Error::ArityMismatch {
            left: p.arity(),
            right: d as usize,
        });
    }
    if !p.is_zero() {
        match p.homogeneous_degree() {
            Some(deg) if i64::from(deg) == n => {}
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "polynomial is not homogeneous of degree {n}"
                )))
            }
        }
        let max_part = p.max_variable_degree();
        if max_part > k {
            return Err(Error::WrongDegree {
                expected: k as usize,
                max_part: max_part as usize,
            });
        }
        if !p.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
    }
    let index = partitions::enumerate(k, d, n);
    let values = index
        .iter()
        .map(|lambda| p.coeff(lambda.parts()) * Rational::from_integer(lambda.factorial()))
        .collect();
    CoeffVector::new(index, values)
}

/// Expands `Σ_i ∂_{z_i} F_x` back in the `m̂` basis over `P(k,d,n−1)`, by
/// differentiating the explicit polynomial.
pub fn apply_derivation(x: &CoeffVector) -> Result<CoeffVector> {
    let (k, d, n) = (x.index.k, x.index.d, x.index.n);
    if n < 1 {
        return Err(Error::InvalidArgument(format!("need n >= 1, got {n}")));
    }
    mhat_expand(&x.to_poly().total_derivative(), k, d, n - 1)
}

fn vandermonde_square(m: usize) -> SparseMultiPoly {
    static CACHE: OnceLock<Mutex<HashMap<usize, SparseMultiPoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&m) {
        return p.clone();
    }
    let mut acc = SparseMultiPoly::one(m);
    for i in 0..m {
        for j in i + 1..m {
            let diff = SparseMultiPoly::variable(m, i)
                .sub(&SparseMultiPoly::variable(m, j))
                .expect("same arity");
            acc = acc.product(&diff.pow(2)).expect("same arity");
        }
    }
    cache.lock().unwrap().insert(m, acc.clone());
    acc
}

fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(m);
    fn rec(start: usize, n: usize, m: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for i in start..=n - (m - cur.len()) {
            cur.push(i);
            rec(i + 1, n, m, cur, out);
            cur.pop();
        }
    }
    if m <= n {
        rec(0, n, m, &mut cur, &mut out);
    }
    out
}

/// `V_{r,d}(z) = Σ_{|I| = r+1} ∏_{i<j ∈ I} (z_i − z_j)²`.
pub fn vandermonde_poly(r: u32, d: u32) -> Result<SparseMultiPoly> {
    if r < 1 || r >= d {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= r <= d-1, got r={r}, d={d}"
        )));
    }
    let block = vandermonde_square(r as usize + 1);
    let mut total = SparseMultiPoly::zero(d as usize);
    for subset in combinations(d as usize, r as usize + 1) {
        total = total.add(&block.embed(d as usize, &subset)?)?;
    }
    Ok(total)
}

/// `v_{r,d}` over `P(2r, d, r(r+1))`.
pub fn vandermonde_coeff_vector(r: u32, d: u32) -> Result<CoeffVector> {
    let p = vandermonde_poly(r, d)?;
    mhat_expand(&p, 2 * r, d, i64::from(r * (r + 1)))
}

/// `∫_{[0,1]^d} m̂_λ = d! / ∏_i e_i!·((i+1)!)^{e_i}`.
pub fn integrate_unit_cube(lambda: &Partition) -> Rational {
    let d = lambda.len();
    let mut den = num_bigint::BigInt::one();
    for (i, &e) in lambda.multiplicities(lambda.largest()).iter().enumerate() {
        den *= rational::factorial(e) * rational::factorial(i + 1).pow(e as u32);
    }
    Rational::new(rational::factorial(d), den)
}

/// `∏_{j=1}^{d−1} (j!)³ / ((2j)!·(d+j)!)`.
pub fn hilbert_product(d: u32) -> Rational {
    (1..d as usize).fold(Rational::one(), |acc, j| {
        acc * Rational::new(
            rational::factorial(j).pow(3),
            rational::factorial(2 * j) * rational::factorial(d as usize + j),
        )
    })
}

/// `Σ_λ ∫m̂_λ · (v_{d−1,d})_λ / ∏_{j=1}^{d−1} (2j)!`.
pub fn hilbert_integration_sum(d: u32) -> Result<Rational> {
    let v = vandermonde_coeff_vector(d - 1, d)?;
    let integral = v
        .index
        .iter()
        .zip(&v.values)
        .fold(Rational::zero(), |acc, (lambda, x)| {
            acc + integrate_unit_cube(lambda) * x
        });
    let norm = (1..d as usize).fold(num_bigint::BigInt::one(), |acc, j| {
        acc * rational::factorial(2 * j)
    });
    Ok(integral / Rational::from_integer(norm))
}
