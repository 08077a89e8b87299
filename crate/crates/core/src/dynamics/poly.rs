//! Dense univariate polynomials over ℚ, Bernoulli power sums and cyclotomic
//! polynomials.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::rational::{self, Rational};

/// `Σ c_i n^i`, stored lowest power first with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct UnivariatePoly {
    coeffs: Vec<Rational>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c·n^e`.
    pub fn monomial(e: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = c;
        Self::new(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rational::int(c)).collect())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(Self::constant(Rational::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(x + c)`.
    pub fn shift(&self, c: &Rational) -> Self {
        let lin = Self::new(vec![c.clone(), Rational::one()]);
        self.coeffs.iter().rev().fold(Self::zero(), |acc, a| {
            acc.mul(&lin).add(&Self::constant(a.clone()))
        })
    }

    /// Quotient and remainder; `divisor` must be nonzero.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("nonzero divisor");
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree().filter(|&s| s >= dd) else {
            return (Self::zero(), self.clone());
        };
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for i in (0..=sd - dd).rev() {
            let q = &rem[i + dd] / &lead;
            if q.is_zero() {
                continue;
            }
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * c;
            }
            quot[i] = q;
        }
        (Self::new(quot), Self::new(rem))
    }
}

impl fmt::Debug for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (i, a.is_one()) {
                (0, _) => write!(f, "{}", rational::to_string(&a))?,
                (_, true) => {}
                _ => write!(f, "{}*", rational::to_string(&a))?,
            }
            match i {
                0 => {}
                1 => write!(f, "n")?,
                _ => write!(f, "n^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for UnivariatePoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rational::to_string))
    }
}

/// Bernoulli numbers `B_0..=B_m` with `B_1 = −1/2`, from
/// `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
pub fn bernoulli_numbers(m: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = vec![Rational::one()];
    for n in 1..=m {
        let s = (0..n).fold(Rational::zero(), |acc, j| {
            acc + Rational::from_integer(rational::binomial(n + 1, j)) * &b[j]
        });
        b.push(-s / Rational::from_integer((n + 1).into()));
    }
    b
}

/// `B_m(x) = Σ_j C(m, j) B_j x^{m−j}`.
pub fn bernoulli_polynomial(m: usize) -> UnivariatePoly {
    let b = bernoulli_numbers(m);
    let mut coeffs = vec![Rational::zero(); m + 1];
    for (j, bj) in b.iter().enumerate() {
        coeffs[m - j] = Rational::from_integer(rational::binomial(m, j)) * bj;
    }
    UnivariatePoly::new(coeffs)
}

/// `S_i(n−1) = Σ_{m=0}^{n−1} m^i = (B_{i+1}(n) − B_{i+1}(0)) / (i+1)`.
pub fn power_sum_polynomial(i: usize) -> UnivariatePoly {
    static CACHE: OnceLock<Mutex<HashMap<usize, UnivariatePoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&i) {
        return p.clone();
    }
    let b = bernoulli_polynomial(i + 1);
    let p = b
        .sub(&UnivariatePoly::constant(b.coeff(0)))
        .scale(&Rational::new(One::one(), (i + 1).into()));
    cache.lock().unwrap().insert(i, p.clone());
    p
}

/// `Φ_n`, from `x^n − 1 = ∏_{e | n} Φ_e`.
pub fn cyclotomic(n: usize) -> UnivariatePoly {
    static CACHE: OnceLock<Mutex<HashMap<usize, UnivariatePoly>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = UnivariatePoly::monomial(n, Rational::one()).sub(&UnivariatePoly::from_i64(&[1]));
    for e in (1..n).filter(|e| n.is_multiple_of(*e)) {
        p = p.div_rem(&cyclotomic(e)).0;
    }
    cache.lock().unwrap().insert(n, p.clone());
    p
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    let (mut n, mut out, mut p) = (n, n, 2);
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    #[test]
    fn power_sums_match_direct_summation() {
        for i in 0..8usize {
            let p = power_sum_polynomial(i);
            assert_eq!(p.degree(), Some(i + 1));
            for n in 1..=10i64 {
                let direct: i64 = (0..n)
                    .map(|m| if i == 0 { 1 } else { m.pow(i as u32) })
                    .sum();
                assert_eq!(p.eval(&int(n)), int(direct), "i={i} n={n}");
            }
        }
        assert_eq!(power_sum_polynomial(0), UnivariatePoly::from_i64(&[0, 1]));
        assert_eq!(
            power_sum_polynomial(1),
            UnivariatePoly::new(vec![int(0), frac(-1, 2), frac(1, 2)])
        );
    }

    #[test]
    fn bernoulli() {
        let b = bernoulli_numbers(6);
        assert_eq!(b[1], frac(-1, 2));
        assert_eq!(b[2], frac(1, 6));
        assert_eq!(b[3], int(0));
        assert_eq!(b[4], frac(-1, 30));
        assert_eq!(b[6], frac(1, 42));
    }

    #[test]
    fn cyclotomics() {
        assert_eq!(cyclotomic(1), UnivariatePoly::from_i64(&[-1, 1]));
        assert_eq!(cyclotomic(4), UnivariatePoly::from_i64(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), UnivariatePoly::from_i64(&[1, -1, 1]));
        for n in 1..40 {
            assert_eq!(cyclotomic(n).degree(), Some(totient(n)));
        }
    }

    #[test]
    fn arithmetic() {
        let p = UnivariatePoly::from_i64(&[1, 1]);
        let sq = p.pow(2);
        assert_eq!(sq, UnivariatePoly::from_i64(&[1, 2, 1]));
        let (q, r) = sq.div_rem(&p);
        assert_eq!((q, r.is_zero()), (p.clone(), true));
        assert_eq!(UnivariatePoly::from_i64(&[0, 1]).shift(&int(1)), p);
        assert_eq!(
            format!("{}", UnivariatePoly::new(vec![int(-1), int(0), frac(3, 2)])),
            "3/2*n^2 - 1"
        );
        assert!(UnivariatePoly::from_i64(&[0, 0]).is_zero());
    }
}
