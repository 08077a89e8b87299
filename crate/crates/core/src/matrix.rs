//! Sparse exact matrices over the rationals.
//!
//! Rank and nullspace go through a single fraction-free elimination: every
//! row is cleared to a primitive integer row, and a row update
//! `r <- (p_c/g) r - (r_c/g) p` is followed by removal of the row content, so
//! no rational arithmetic happens during the forward pass.
//!
//! Columns are resolved right to left: on the incidence matrices, whose
//! columns are listed in decreasing lexicographic order, this keeps fill-in
//! and coefficient growth far lower than the natural order. For the current
//! column the pivot is, among the rows that still lead there, the one with
//! the smallest leading entry (a unit pivot needs no rescaling of the other
//! rows), then the fewest nonzeros, then the lowest index. The pivot
//! columns are therefore the rightmost-greedy pivot set, independently of
//! which row gets picked, and the nullspace basis is the one obtained by
//! setting one free coordinate to 1 and the others to 0.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rational::{primitive_integer_vector, Rational};
use crate::zint::Z;

/// A sparse row: `(column, value)` with strictly increasing columns and no
/// stored zeros.
pub type SparseRow<T> = Vec<(usize, T)>;

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow<Rational>>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let data = (0..n).map(|i| vec![(i, Rational::one())]).collect();
        Self {
            rows: n,
            cols: n,
            data,
        }
    }

    /// Builds a matrix from sparse rows. Entries may come in any order;
    /// duplicates are summed and zeros dropped.
    pub fn from_sparse_rows(
        rows: usize,
        cols: usize,
        entries: Vec<Vec<(usize, Rational)>>,
    ) -> Result<Self> {
        if entries.len() != rows {
            return Err(Error::DimensionMismatch(format!(
                "expected {rows} rows, got {}",
                entries.len()
            )));
        }
        let mut data = Vec::with_capacity(rows);
        for mut row in entries {
            row.sort_by_key(|(c, _)| *c);
            let mut clean: SparseRow<Rational> = Vec::with_capacity(row.len());
            for (c, v) in row {
                if c >= cols {
                    return Err(Error::DimensionMismatch(format!(
                        "column {c} out of range for {cols} columns"
                    )));
                }
                match clean.last_mut() {
                    Some((lc, lv)) if *lc == c => *lv += v,
                    _ => clean.push((c, v)),
                }
            }
            clean.retain(|(_, v)| !v.is_zero());
            data.push(clean);
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_dense(rows: &[Vec<Rational>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len());
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch("ragged dense rows".into()));
            }
            data.push(
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(c, v)| (c, v.clone()))
                    .collect(),
            );
        }
        Ok(Self {
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Dense integer constructor, mostly for tests and fixtures.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| Rational::from_integer(v.into()))
                    .collect()
            })
            .collect();
        Self::from_dense(&dense).expect("rectangular integer rows")
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, Rational)] {
        &self.data[i]
    }

    pub fn get(&self, r: usize, c: usize) -> Rational {
        match self.data[r].binary_search_by_key(&c, |(col, _)| *col) {
            Ok(pos) => self.data[r][pos].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        self.data
            .iter()
            .map(|row| {
                let mut out = vec![Rational::zero(); self.cols];
                for (c, v) in row {
                    out[*c] = v.clone();
                }
                out
            })
            .collect()
    }

    pub fn mul_vec(&self, x: &[Rational]) -> Result<Vec<Rational>> {
        if x.len() != self.cols {
            return Err(Error::LengthMismatch {
                left: self.cols,
                right: x.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (c, v)| acc + v * &x[*c])
            })
            .collect())
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<SparseRow<Rational>> = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Keeps the listed columns, in the listed order.
    pub fn select_columns(&self, keep: &[usize]) -> Self {
        let mut remap = vec![usize::MAX; self.cols];
        for (new, &old) in keep.iter().enumerate() {
            remap[old] = new;
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut out: SparseRow<Rational> = row
                    .iter()
                    .filter(|(c, _)| remap[*c] != usize::MAX)
                    .map(|(c, v)| (remap[*c], v.clone()))
                    .collect();
                out.sort_by_key(|(c, _)| *c);
                out
            })
            .collect();
        Self {
            rows: self.rows,
            cols: keep.len(),
            data,
        }
    }

    pub fn select_rows(&self, keep: &[usize]) -> Self {
        Self {
            rows: keep.len(),
            cols: self.cols,
            data: keep.iter().map(|&r| self.data[r].clone()).collect(),
        }
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        self.select_rows(rows).select_columns(cols)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    /// Places `[[a, 0], [b, c]]`.
    pub fn block_lower(a: &Self, b: &Self, c: &Self) -> Result<Self> {
        if b.rows != c.rows || b.cols != a.cols {
            return Err(Error::DimensionMismatch(format!(
                "blocks {}x{}, {}x{}, {}x{} do not compose",
                a.rows, a.cols, b.rows, b.cols, c.rows, c.cols
            )));
        }
        let cols = a.cols + c.cols;
        let mut data = a.data.clone();
        for (brow, crow) in b.data.iter().zip(&c.data) {
            let mut row = brow.clone();
            row.extend(crow.iter().map(|(j, v)| (j + a.cols, v.clone())));
            data.push(row);
        }
        Ok(Self {
            rows: a.rows + b.rows,
            cols,
            data,
        })
    }

    /// Side-by-side concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {} and {} rows",
                self.rows, other.rows
            )));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(l, r)| {
                let mut row = l.clone();
                row.extend(r.iter().map(|(j, v)| (j + self.cols, v.clone())));
                row
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: self.cols + other.cols,
            data,
        })
    }

    /// Matrix product.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = vec![Rational::zero(); other.cols];
                for (k, v) in row {
                    for (j, w) in &other.data[*k] {
                        acc[*j] += v * w;
                    }
                }
                acc.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect();
        Ok(Self {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn rank(&self) -> usize {
        Echelon::reduce(self).rank()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        Echelon::reduce(self).nullspace_basis()
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{}", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(crate::rational::to_string).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn matrix_rank(m: &ExactMatrix) -> usize {
    m.rank()
}

pub fn nullspace_basis(m: &ExactMatrix) -> Vec<Vec<Rational>> {
    m.nullspace_basis()
}

/// Row echelon form produced by the fraction-free forward pass.
///
/// Internally columns are stored mirrored (`c ↦ cols − 1 − c`) so that the
/// leading entry of a sparse row is the one processed first.
#[derive(Debug, Clone)]
pub struct Echelon {
    cols: usize,
    /// `(mirrored pivot column, primitive integer row)` in processing order.
    pivots: Vec<(usize, SparseRow<Z>)>,
}

const PAR_THRESHOLD: usize = 64;

impl Echelon {
    pub fn reduce(m: &ExactMatrix) -> Self {
        let cols = m.cols;
        let mut rows: Vec<SparseRow<Z>> = m
            .data
            .iter()
            .map(|r| {
                let mut row = integer_row(r);
                row.reverse();
                for e in &mut row {
                    e.0 = cols - 1 - e.0;
                }
                make_primitive(&mut row);
                row
            })
            .collect();
        let mut active = vec![true; rows.len()];
        let mut col_rows: Vec<Vec<u32>> = vec![Vec::new(); cols];
        for (i, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c].push(i as u32);
            }
        }

        let mut pivots = Vec::new();
        for col in 0..cols {
            let mut cand = std::mem::take(&mut col_rows[col]);
            cand.sort_unstable();
            cand.dedup();
            cand.retain(|&r| {
                let r = r as usize;
                active[r] && rows[r].first().is_some_and(|(c, _)| *c == col)
            });
            let Some(&pivot_idx) = cand.iter().min_by_key(|&&r| {
                let row = &rows[r as usize];
                (row[0].1.bits(), row.len(), r)
            }) else {
                continue;
            };
            let pivot_idx = pivot_idx as usize;
            active[pivot_idx] = false;
            let pivot = std::mem::take(&mut rows[pivot_idx]);

            let targets: Vec<usize> = cand
                .iter()
                .map(|&r| r as usize)
                .filter(|&r| r != pivot_idx)
                .collect();
            let updated: Vec<(usize, SparseRow<Z>)> = if targets.len() >= PAR_THRESHOLD {
                targets
                    .par_iter()
                    .map(|&r| (r, eliminate(&rows[r], &pivot)))
                    .collect()
            } else {
                targets
                    .iter()
                    .map(|&r| (r, eliminate(&rows[r], &pivot)))
                    .collect()
            };
            for (r, new_row) in updated {
                // Record fill-in; stale entries are filtered when their
                // column comes up.
                let old = &rows[r];
                let mut oi = 0;
                for (c, _) in &new_row {
                    while oi < old.len() && old[oi].0 < *c {
                        oi += 1;
                    }
                    if oi >= old.len() || old[oi].0 != *c {
                        col_rows[*c].push(r as u32);
                    }
                }
                rows[r] = new_row;
            }
            pivots.push((col, pivot));
        }
        Self { cols, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.pivots.iter().map(|(c, _)| self.cols - 1 - c).collect();
        out.sort_unstable();
        out
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for c in self.pivot_columns() {
            is_pivot[c] = true;
        }
        (0..self.cols).filter(|c| !is_pivot[*c]).collect()
    }

    /// One vector per free column `f`: `x_f = 1`, the other free coordinates
    /// zero, pivot coordinates by back substitution; then scaled to coprime
    /// integers with a positive leading entry.
    pub fn nullspace_basis(&self) -> Vec<Vec<Rational>> {
        let cols = self.cols;
        let free = self.free_columns();
        free.par_iter()
            .map(|&f| {
                let mut x = vec![Rational::zero(); cols];
                x[cols - 1 - f] = Rational::one();
                for (pc, row) in self.pivots.iter().rev() {
                    let mut acc = Rational::zero();
                    for (c, v) in &row[1..] {
                        if !x[*c].is_zero() {
                            acc += &x[*c] * Rational::from_integer(v.to_big());
                        }
                    }
                    if !acc.is_zero() {
                        x[*pc] = -acc / Rational::from_integer(row[0].1.to_big());
                    }
                }
                x.reverse();
                primitive_integer_vector(&x)
                    .into_iter()
                    .map(Rational::from_integer)
                    .collect()
            })
            .collect()
    }
}

fn integer_row(row: &[(usize, Rational)]) -> SparseRow<Z> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
    row.iter()
        .map(|(c, q)| (*c, Z::from_big(q.numer() * (&lcm / q.denom()))))
        .collect()
}

/// Divides out the content and makes the leading entry positive.
fn make_primitive(row: &mut SparseRow<Z>) {
    let Some((_, start)) = row.iter().min_by_key(|(_, v)| v.bits()) else {
        return;
    };
    let mut g = start.gcd(&Z::S(0));
    for (_, v) in row.iter() {
        if g.is_one() {
            break;
        }
        g = g.gcd(v);
    }
    let negate = row.first().is_some_and(|(_, v)| v.is_negative());
    if g.is_one() && !negate {
        return;
    }
    for (_, v) in row.iter_mut() {
        if !g.is_one() {
            *v = v.div_exact(&g);
        }
        if negate {
            *v = v.neg();
        }
    }
}

/// Cancels the leading entry of `row` (at the pivot's column) against
/// `pivot`, both integer rows sharing that leading column.
fn eliminate(row: &SparseRow<Z>, pivot: &SparseRow<Z>) -> SparseRow<Z> {
    let a = &pivot[0].1;
    let b = &row[0].1;
    let g = a.gcd(b);
    let fa = a.div_exact(&g);
    let fb = b.div_exact(&g);
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let ci = row.get(i).map_or(usize::MAX, |e| e.0);
        let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
        if ci < cj {
            out.push((ci, fa.mul(&row[i].1)));
            i += 1;
        } else if cj < ci {
            out.push((cj, fb.mul(&pivot[j].1).neg()));
            j += 1;
        } else {
            let v = fa.mul_sub(&row[i].1, &fb, &pivot[j].1);
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(&mut out);
    out
}
