//! The abelian surrogate `E^g`: divisor classes are symmetric `g×g` matrices,
//! `f^*S = AᵀSA`, `H = I`, and the intersection form is the polarized
//! determinant (coefficient of `t_1⋯t_g` in `det(Σ t_i S_i)`).

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::linalg::{self, IntMatrix, QMat};
use super::IntersectionModel;
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::partitions;
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct AbelianSurrogate {
    g: usize,
    a: IntMatrix,
    action: IntMatrix,
    /// `(i, j)` with `i ≤ j`, the coordinate order of a class.
    pairs: Vec<(usize, usize)>,
    bijections: Vec<Vec<usize>>,
}

impl AbelianSurrogate {
    pub fn new(a: IntMatrix) -> Result<Self> {
        let g = a.len();
        if g < 1 || a.iter().any(|r| r.len() != g) {
            return Err(Error::DimensionMismatch(format!(
                "A must be a nonempty square matrix, got {g} rows"
            )));
        }
        if !linalg::det_int(a.clone()).abs().is_one() {
            return Err(Error::InvalidArgument("A must have determinant ±1".into()));
        }
        let pairs: Vec<(usize, usize)> = (0..g).flat_map(|i| (i..g).map(move |j| (i, j))).collect();
        let mut model = Self {
            g,
            a,
            action: Vec::new(),
            pairs,
            bijections: permutations(g),
        };
        model.action = model.compute_action();
        Ok(model)
    }

    pub fn from_i64(a: &[Vec<i64>]) -> Result<Self> {
        Self::new(linalg::int_from_i64(a))
    }

    /// Block-diagonal Jordan matrix with eigenvalue 1 blocks of the given
    /// sizes.
    pub fn from_jordan(sizes: &[usize]) -> Result<Self> {
        Self::new(jordan_matrix(sizes, &vec![1; sizes.len()]))
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn a(&self) -> &IntMatrix {
        &self.a
    }

    pub fn a_i64(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        self.a
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64()).collect())
            .collect()
    }

    /// Symmetric matrix of a class given in pair coordinates.
    pub fn class_matrix(&self, v: &[Rational]) -> QMat {
        let mut s = vec![vec![Rational::zero(); self.g]; self.g];
        for (&(i, j), x) in self.pairs.iter().zip(v) {
            s[i][j] = x.clone();
            s[j][i] = x.clone();
        }
        s
    }

    pub fn class_coords(&self, s: &QMat) -> Vec<Rational> {
        self.pairs.iter().map(|&(i, j)| s[i][j].clone()).collect()
    }

    fn compute_action(&self) -> IntMatrix {
        let a = linalg::from_int(&self.a);
        let at = linalg::transpose(&a);
        let m = self.pairs.len();
        let mut f = vec![vec![BigInt::zero(); m]; m];
        for col in 0..m {
            let mut basis = vec![Rational::zero(); m];
            basis[col] = Rational::one();
            let image = linalg::mul(&at, &linalg::mul(&self.class_matrix(&basis), &a));
            for (row, x) in self.class_coords(&image).into_iter().enumerate() {
                f[row][col] = x.to_integer();
            }
        }
        f
    }

    /// Jordan block sizes of `A` (eigenvalues are roots of unity, so those
    /// of the unipotent power `A^m`), largest first.
    pub fn jordan_type(&self) -> Result<Vec<usize>> {
        let (_, u) = super::unipotent_power(&self.a)?;
        let n = linalg::sub(&u, &linalg::identity(self.g));
        let mut ranks = vec![self.g];
        let mut p = linalg::identity(self.g);
        while *ranks.last().unwrap() > 0 {
            p = linalg::mul(&p, &n);
            ranks.push(ExactMatrix::from_dense(&p)?.rank());
        }
        // at_least[j] = #blocks of size ≥ j+1
        let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
        let mut sizes = Vec::new();
        for (j, &c) in at_least.iter().enumerate() {
            let next = at_least.get(j + 1).copied().unwrap_or(0);
            sizes.extend(std::iter::repeat_n(j + 1, c - next));
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        Ok(sizes)
    }
}

impl IntersectionModel for AbelianSurrogate {
    fn dim(&self) -> usize {
        self.g
    }

    fn class_rank(&self) -> usize {
        self.pairs.len()
    }

    fn ample(&self) -> Vec<Rational> {
        self.pairs
            .iter()
            .map(|&(i, j)| {
                if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                }
            })
            .collect()
    }

    fn action(&self) -> IntMatrix {
        self.action.clone()
    }

    /// `Σ_φ det(M_φ)` over bijections `φ`, column `j` of `M_φ` taken from
    /// `S_{φ(j)}`.
    fn intersect(&self, classes: &[&[Rational]]) -> Result<Rational> {
        if classes.len() != self.g {
            return Err(Error::ArityMismatch {
                left: classes.len(),
                right: self.g,
            });
        }
        let m = self.pairs.len();
        let mut scale = BigInt::one();
        let mut mats: Vec<IntMatrix> = Vec::with_capacity(self.g);
        for v in classes {
            if v.len() != m {
                return Err(Error::LengthMismatch {
                    left: v.len(),
                    right: m,
                });
            }
            let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let s = self.class_matrix(v);
            mats.push(
                s.iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| (x * Rational::from_integer(den.clone())).to_integer())
                            .collect()
                    })
                    .collect(),
            );
            scale *= den;
        }
        let mut total = BigInt::zero();
        for phi in &self.bijections {
            let mut cols = vec![vec![BigInt::zero(); self.g]; self.g];
            for (j, &src) in phi.iter().enumerate() {
                for (i, row) in cols.iter_mut().enumerate() {
                    row[j] = mats[src][i][j].clone();
                }
            }
            total += linalg::det_int(cols);
        }
        Ok(Rational::new(total, scale))
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Block-diagonal Jordan matrix; block `b` has eigenvalue `signs[b]` (±1).
pub fn jordan_matrix(sizes: &[usize], signs: &[i64]) -> IntMatrix {
    let g: usize = sizes.iter().sum();
    let mut a = vec![vec![BigInt::zero(); g]; g];
    let mut start = 0;
    for (&s, &sign) in sizes.iter().zip(signs) {
        for i in start..start + s {
            a[i][i] = BigInt::from(sign);
            if i + 1 < start + s {
                a[i][i + 1] = BigInt::one();
            }
        }
        start += s;
    }
    a
}

/// `L·U` with unit diagonals and off-diagonal entries uniform in `[−2, 2]`.
pub fn random_unimodular<R: Rng>(g: usize, rng: &mut R) -> IntMatrix {
    let mut lower = linalg::identity(g);
    let mut upper = linalg::identity(g);
    for i in 0..g {
        for j in 0..i {
            lower[i][j] = Rational::from_integer(rng.gen_range(-2i64..=2).into());
            upper[j][i] = Rational::from_integer(rng.gen_range(-2i64..=2).into());
        }
    }
    linalg::to_int(&linalg::mul(&lower, &upper)).expect("integer product")
}

/// How a random surrogate was built.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomModelSpec {
    pub jordan: Vec<usize>,
    pub signs: Vec<i64>,
}

/// A random Jordan type of `g` (uniform over partitions of `g`), optional
/// random block signs, conjugated by a random unimodular matrix.
pub fn random_surrogate<R: Rng>(
    g: usize,
    with_signs: bool,
    rng: &mut R,
) -> Result<(AbelianSurrogate, RandomModelSpec)> {
    let types: Vec<Vec<usize>> = partitions::enumerate(g as u32, g as u32, g as i64)
        .iter()
        .map(|p| {
            p.parts()
                .iter()
                .filter(|&&x| x > 0)
                .map(|&x| x as usize)
                .collect()
        })
        .collect();
    let jordan = types.choose(rng).expect("g >= 1").clone();
    let signs: Vec<i64> = jordan
        .iter()
        .map(|_| {
            if with_signs && rng.gen_bool(0.5) {
                -1
            } else {
                1
            }
        })
        .collect();
    let j = linalg::from_int(&jordan_matrix(&jordan, &signs));
    let p = linalg::from_int(&random_unimodular(g, rng));
    let p_inv = linalg::inverse(&p)?;
    let a = linalg::to_int(&linalg::mul(&p, &linalg::mul(&j, &p_inv)))
        .ok_or_else(|| Error::InvalidArgument("unimodular inverse not integral".into()))?;
    Ok((AbelianSurrogate::new(a)?, RandomModelSpec { jordan, signs }))
}

/// `{"type":"abelian","g":…,"A":[[…]]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ModelSpec {
    Abelian {
        g: usize,
        #[serde(rename = "A")]
        a: Vec<Vec<i64>>,
    },
}

impl ModelSpec {
    pub fn build(&self) -> Result<AbelianSurrogate> {
        match self {
            ModelSpec::Abelian { g, a } => {
                if a.len() != *g {
                    return Err(Error::DimensionMismatch(format!(
                        "g = {g} but A has {} rows",
                        a.len()
                    )));
                }
                AbelianSurrogate::from_i64(a)
            }
        }
    }
}
