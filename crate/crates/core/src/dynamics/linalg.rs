//! Small dense matrices over ℚ and ℤ for the class-space computations.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::UnivariatePoly;
use crate::error::{Error, Result};
use crate::rational::Rational;

pub type QMat = Vec<Vec<Rational>>;
pub type IntMatrix = Vec<Vec<BigInt>>;

pub fn identity(n: usize) -> QMat {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

pub fn from_int(m: &IntMatrix) -> QMat {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| Rational::from_integer(x.clone()))
                .collect()
        })
        .collect()
}

pub fn int_from_i64(rows: &[Vec<i64>]) -> IntMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Integer entries of `m`, or `None` if some entry is fractional.
pub fn to_int(m: &QMat) -> Option<IntMatrix> {
    m.iter()
        .map(|r| {
            r.iter()
                .map(|x| x.is_integer().then(|| x.to_integer()))
                .collect()
        })
        .collect()
}

pub fn is_square(m: &[Vec<Rational>]) -> bool {
    m.iter().all(|r| r.len() == m.len())
}

pub fn mul(a: &QMat, b: &QMat) -> QMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Rational::zero(), |acc, t| {
                        if row[t].is_zero() {
                            acc
                        } else {
                            acc + &row[t] * &b[t][j]
                        }
                    })
                })
                .collect()
        })
        .collect()
}

pub fn mul_vec(a: &QMat, v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(Rational::zero(), |acc, (x, y)| acc + x * y)
        })
        .collect()
}

pub fn add(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn sub(a: &QMat, b: &QMat) -> QMat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x - y).collect())
        .collect()
}

pub fn scale(a: &QMat, c: &Rational) -> QMat {
    a.iter()
        .map(|r| r.iter().map(|x| x * c).collect())
        .collect()
}

pub fn transpose(a: &QMat) -> QMat {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| a.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn is_zero(a: &QMat) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

pub fn pow(a: &QMat, mut e: u64) -> QMat {
    let mut base = a.clone();
    let mut acc = identity(a.len());
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(&base, &base);
        }
    }
    acc
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det_int(mut m: IntMatrix) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

pub fn det(m: &QMat) -> Rational {
    let n = m.len();
    let mut a = m.clone();
    let mut acc = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            a.swap(k, p);
            acc = -acc;
        }
        let pivot_row = a[k].clone();
        acc *= &pivot_row[k];
        for row in a.iter_mut().skip(k + 1) {
            if row[k].is_zero() {
                continue;
            }
            let f = &row[k] / &pivot_row[k];
            for (x, y) in row[k..].iter_mut().zip(&pivot_row[k..]) {
                *x -= &f * y;
            }
        }
    }
    acc
}

pub fn inverse(m: &QMat) -> Result<QMat> {
    let n = m.len();
    if !is_square(m) {
        return Err(Error::DimensionMismatch(
            "inverse of a non-square matrix".into(),
        ));
    }
    let mut a: QMat = m
        .iter()
        .zip(identity(n))
        .map(|(r, e)| r.iter().cloned().chain(e).collect())
        .collect();
    for k in 0..n {
        let p = (k..n)
            .find(|&i| !a[i][k].is_zero())
            .ok_or_else(|| Error::InvalidArgument("singular matrix".into()))?;
        a.swap(k, p);
        let inv = Rational::one() / &a[k][k];
        for x in a[k].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[k].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == k || row[k].is_zero() {
                continue;
            }
            let f = row[k].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x -= &f * y;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// `det(xI − A)` by the Faddeev–LeVerrier recursion.
pub fn charpoly(a: &QMat) -> UnivariatePoly {
    let n = a.len();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![vec![Rational::zero(); n]; n];
    for k in 1..=n {
        let mut next = mul(a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        mk = next;
        let am = mul(a, &mk);
        let tr = (0..n).fold(Rational::zero(), |acc, i| acc + &am[i][i]);
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k));
    }
    UnivariatePoly::new(coeffs)
}
