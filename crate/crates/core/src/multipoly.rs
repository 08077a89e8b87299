//! Sparse multivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

pub type Exponent = Vec<u32>;

/// A polynomial in a fixed number of variables `z_1, …, z_arity`, stored as a
/// map from exponent vectors to nonzero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMultiPoly {
    arity: usize,
    terms: BTreeMap<Exponent, Rational>,
}

impl SparseMultiPoly {
    pub fn zero(arity: usize) -> Self {
        Self {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut p = Self::zero(arity);
        p.add_term(vec![0; arity], c);
        p
    }

    /// `z_i` (zero-based index).
    pub fn variable(arity: usize, i: usize) -> Self {
        let mut exp = vec![0; arity];
        exp[i] = 1;
        Self::monomial(exp, Rational::one())
    }

    pub fn monomial(exp: Exponent, c: Rational) -> Self {
        let mut p = Self::zero(exp.len());
        p.add_term(exp, c);
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Rational {
        self.terms.get(exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, exp: Exponent, c: Rational) {
        debug_assert_eq!(exp.len(), self.arity);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Self) -> Result<()> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                left: self.arity,
                right: other.arity,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Self {
            arity: self.arity,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Exact product; distributes over all term pairs.
    pub fn product(&self, other: &Self) -> Result<Self> {
        self.check_arity(other)?;
        let mut out = Self::zero(self.arity);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.arity);
        for _ in 0..n {
            acc = acc.product(self).expect("same arity");
        }
        acc
    }

    /// Renames variables: variable `i` of `self` becomes variable `map[i]` of
    /// a polynomial in `arity` variables.
    pub fn embed(&self, arity: usize, map: &[usize]) -> Result<Self> {
        if map.len() != self.arity {
            return Err(Error::LengthMismatch {
                left: self.arity,
                right: map.len(),
            });
        }
        if map.iter().any(|&j| j >= arity) {
            return Err(Error::InvalidArgument(format!(
                "variable map {map:?} exceeds arity {arity}"
            )));
        }
        let mut out = Self::zero(arity);
        for (e, c) in &self.terms {
            let mut exp = vec![0; arity];
            for (i, &j) in map.iter().enumerate() {
                exp[j] += e[i];
            }
            out.add_term(exp, c.clone());
        }
        Ok(out)
    }

    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            let mut exp = e.clone();
            exp.swap(i, j);
            out.add_term(exp, c.clone());
        }
        out
    }

    /// Checks invariance under the adjacent transpositions, which generate
    /// the symmetric group.
    pub fn is_symmetric(&self) -> bool {
        (0..self.arity.saturating_sub(1)).all(|i| {
            self.terms.iter().all(|(e, c)| {
                let mut swapped = e.clone();
                swapped.swap(i, i + 1);
                self.terms.get(&swapped) == Some(c)
            })
        })
    }

    /// `Some(n)` if every term has total degree `n`; `None` for the zero
    /// polynomial or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_variable_degree(&self) -> u32 {
        self.terms
            .keys()
            .flat_map(|e| e.iter().copied())
            .max()
            .unwrap_or(0)
    }

    pub fn derivative(&self, i: usize) -> Self {
        let mut out = Self::zero(self.arity);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut exp = e.clone();
            exp[i] -= 1;
            out.add_term(exp, c * Rational::from_integer(e[i].into()));
        }
        out
    }

    /// `Σ_i ∂/∂z_i`, the derivative along `(1, …, 1)`.
    pub fn total_derivative(&self) -> Self {
        let mut out = Self::zero(self.arity);
        for i in 0..self.arity {
            for (e, c) in self.derivative(i).terms {
                out.add_term(e, c);
            }
        }
        out
    }

    /// `∫_{[0,1]^arity} p(z) dz`, term by term.
    pub fn integrate_unit_cube(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let denom = e
                .iter()
                .fold(num_bigint::BigInt::one(), |d, &a| d * (a + 1));
            acc + c / Rational::from_integer(denom)
        })
    }

    pub fn evaluate(&self, z: &[Rational]) -> Result<Rational> {
        if z.len() != self.arity {
            return Err(Error::LengthMismatch {
                left: self.arity,
                right: z.len(),
            });
        }
        Ok(self.terms.iter().fold(Rational::zero(), |acc, (e, c)| {
            let mono = e.iter().zip(z).fold(Rational::one(), |m, (&a, x)| {
                m * num_traits::pow(x.clone(), a as usize)
            });
            acc + c * mono
        }))
    }
}

/// Free-function form used by the Vandermonde expansion.
pub fn poly_product(p: &SparseMultiPoly, q: &SparseMultiPoly) -> Result<SparseMultiPoly> {
    p.product(q)
}

impl fmt::Debug for SparseMultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &a)| a > 0)
                    .map(|(i, &a)| {
                        if a == 1 {
                            format!("z{}", i + 1)
                        } else {
                            format!("z{}^{}", i + 1, a)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    rational::to_string(c)
                } else {
                    format!("{}*{}", rational::to_string(c), vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
