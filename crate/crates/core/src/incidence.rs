//! Weighted incidence matrices `A_{k,d,n}` between `P(k,d,n−1)` (rows) and
//! `P(k,d,n)` (columns), their block structure, truncations and the
//! rank/nullity verifications built on them.

use std::fmt::Write as _;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::partitions::{self, Partition, PartitionSet};
use crate::rational::{self, Rational};
use crate::symfun;

#[derive(Clone, Debug)]
pub struct IncidenceMatrix {
    pub k: u32,
    pub d: u32,
    pub n: i64,
    pub rows: PartitionSet,
    pub cols: PartitionSet,
    pub data: ExactMatrix,
}

/// Builds `A_{k,d,n}`: entry `(μ, λ)` is `e_i(μ)` when `λ = μ(i)`.
///
/// Any integer `n` is accepted; out-of-range `n` gives the degenerate empty
/// shapes (`0×1` at `n = 0`, `1×0` at `n = dk+1`, `0×0` beyond).
pub fn build_incidence(k: u32, d: u32, n: i64) -> IncidenceMatrix {
    let rows = partitions::enumerate(k, d, n - 1);
    let cols = partitions::enumerate(k, d, n);
    let entries: Vec<Vec<(usize, Rational)>> = rows
        .iter()
        .map(|mu| {
            let mut row = Vec::new();
            let mut last = None;
            for &part in mu.parts() {
                if part >= k || last == Some(part) {
                    continue;
                }
                last = Some(part);
                let (lambda, weight) = mu
                    .bump(part, k)
                    .expect("part < k")
                    .expect("part occurs in mu");
                let col = cols.index_of(&lambda).expect("bump stays in P(k,d,n)");
                row.push((col, Rational::from_integer(weight.into())));
            }
            row
        })
        .collect();
    let data =
        ExactMatrix::from_sparse_rows(rows.len(), cols.len(), entries).expect("columns in range");
    IncidenceMatrix {
        k,
        d,
        n,
        rows,
        cols,
        data,
    }
}

impl IncidenceMatrix {
    pub fn shape(&self) -> (usize, usize) {
        (self.data.nrows(), self.data.ncols())
    }

    pub fn entry(&self, mu: &Partition, lambda: &Partition) -> Option<Rational> {
        Some(
            self.data
                .get(self.rows.index_of(mu)?, self.cols.index_of(lambda)?),
        )
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        self.data
            .to_dense()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|q| i64::try_from(q.to_integer()).expect("small integer entry"))
                    .collect()
            })
            .collect()
    }

    /// CSV with a `k,d,n,rows,cols` header line, the values line, then one
    /// line per row in decreasing-lex row order.
    pub fn to_csv(&self) -> String {
        csv_export(self.k, self.d, self.n, &self.data)
    }
}

pub fn csv_export(k: u32, d: u32, n: i64, m: &ExactMatrix) -> String {
    let mut out = String::from("k,d,n,rows,cols\n");
    let _ = writeln!(out, "{k},{d},{n},{},{}", m.nrows(), m.ncols());
    for i in 0..m.nrows() {
        let mut entries = m.row(i).iter().peekable();
        for j in 0..m.ncols() {
            if j > 0 {
                out.push(',');
            }
            match entries.next_if(|(c, _)| *c == j) {
                Some((_, v)) => out.push_str(&rational::to_string(v)),
                None => out.push('0'),
            }
        }
        out.push('\n');
    }
    out
}

/// A column truncation `A^{⪯κ}` together with the retained column labels.
#[derive(Clone, Debug)]
pub struct Truncated {
    pub kappa: Partition,
    pub data: ExactMatrix,
    pub columns: Vec<Partition>,
    /// Positions of the retained columns in the untruncated matrix.
    pub column_indices: Vec<usize>,
}

/// Keeps exactly the columns `λ ⪯ κ`.
pub fn truncate_columns(m: &IncidenceMatrix, kappa: &Partition) -> Result<Truncated> {
    if kappa.len() != m.d as usize {
        return Err(Error::LengthMismatch {
            left: m.d as usize,
            right: kappa.len(),
        });
    }
    if kappa.largest() > m.k {
        return Err(Error::InvalidPartition(format!(
            "kappa {kappa} has a part above k = {}",
            m.k
        )));
    }
    let keep = m.cols.indices_not_above(kappa);
    Ok(Truncated {
        kappa: kappa.clone(),
        data: m.data.select_columns(&keep),
        columns: keep.iter().map(|&i| m.cols.get(i).clone()).collect(),
        column_indices: keep,
    })
}

/// `κ(t) = ((2r)^{t_r}, …, 2^{t_1}, 0^{t_0})` for `t = (t_0, …, t_r)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistinguishedPartition {
    pub r: u32,
    pub t: Vec<u32>,
    pub kappa: Partition,
}

impl DistinguishedPartition {
    pub fn new(t: Vec<u32>) -> Result<Self> {
        if t.is_empty() || t.contains(&0) {
            return Err(Error::InvalidArgument(format!(
                "t must be a nonempty tuple of positive integers, got {t:?}"
            )));
        }
        let r = (t.len() - 1) as u32;
        let mut parts = Vec::new();
        for j in (0..t.len()).rev() {
            parts.extend(std::iter::repeat_n(2 * j as u32, t[j] as usize));
        }
        Ok(Self {
            r,
            t,
            kappa: Partition::new(parts)?,
        })
    }

    /// `1_d`: the even staircase `(2d−2, …, 2, 0)`.
    pub fn staircase(d: u32) -> Self {
        Self::new(vec![1; d as usize]).expect("d >= 1")
    }

    /// `t_{d−2,ℓ} = 1_{d−1} + e_{ℓ+1}`.
    pub fn submaximal(d: u32, ell: u32) -> Result<Self> {
        if d < 3 || ell > d - 2 {
            return Err(Error::InvalidArgument(format!(
                "need d >= 3 and 0 <= l <= d-2, got d={d}, l={ell}"
            )));
        }
        let mut t = vec![1; d as usize - 1];
        t[ell as usize] += 1;
        Self::new(t)
    }

    pub fn d(&self) -> u32 {
        self.t.iter().sum()
    }

    /// `|κ(t)| = Σ_j 2j·t_j`.
    pub fn size(&self) -> u32 {
        self.kappa.size()
    }

    /// `t⁻`: drop `t_r` if it is 1, otherwise decrement it.
    pub fn minus(&self) -> Result<Self> {
        let mut t = self.t.clone();
        if *t.last().unwrap() == 1 {
            t.pop();
        } else {
            *t.last_mut().unwrap() -= 1;
        }
        Self::new(t)
    }
}

#[derive(Clone, Debug)]
pub struct BlockForm {
    /// `A_{k,d−1,n−k}`, rows/columns identified through `ι_k`.
    pub top_left: IncidenceMatrix,
    /// `A_{k−1,d,n}`.
    pub bottom_right: IncidenceMatrix,
    pub bottom_left: ExactMatrix,
    /// `(top rows, left columns)` split point in `A_{k,d,n}`.
    pub split: (usize, usize),
    pub top_right_zero: bool,
    pub full: IncidenceMatrix,
}

/// Splits `A_{k,d,n}` along `P = ι_k(P(k,d−1,·−k)) ⊔ P(k−1,d,·)` on both
/// sides and checks the block lower-triangular shape. Since the `ι_k` part
/// holds the partitions with first part `k`, it is a prefix of the
/// decreasing-lex listing and no reordering is needed.
pub fn block_form(k: u32, d: u32, n: i64) -> Result<BlockForm> {
    if d < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "block form needs d >= 2 and k >= 1, got k={k}, d={d}"
        )));
    }
    let full = build_incidence(k, d, n);
    let top_left = build_incidence(k, d - 1, n - i64::from(k));
    let bottom_right = build_incidence(k - 1, d, n);
    let (r1, c1) = top_left.shape();
    let (rows, cols) = full.shape();

    let row_dec = partitions::decompose(k, d, n - 1)?;
    let col_dec = partitions::decompose(k, d, n)?;
    let labels_ok = row_dec.embedded.len() == r1
        && col_dec.embedded.len() == c1
        && full.rows.members()[..r1] == row_dec.embedded[..]
        && full.cols.members()[..c1] == col_dec.embedded[..]
        && full.rows.members()[r1..] == *row_dec.rest.members()
        && full.cols.members()[c1..] == *col_dec.rest.members()
        && top_left
            .rows
            .iter()
            .zip(&full.rows.members()[..r1])
            .all(|(a, b)| a.prepend(k).as_ref() == Ok(b))
        && top_left
            .cols
            .iter()
            .zip(&full.cols.members()[..c1])
            .all(|(a, b)| a.prepend(k).as_ref() == Ok(b));
    if !labels_ok {
        return Err(Error::StructuralFailure(format!(
            "row/column grouping of A_{{{k},{d},{n}}} does not follow the iota decomposition"
        )));
    }

    let top_rows: Vec<usize> = (0..r1).collect();
    let bottom_rows: Vec<usize> = (r1..rows).collect();
    let left_cols: Vec<usize> = (0..c1).collect();
    let right_cols: Vec<usize> = (c1..cols).collect();

    let top_right = full.data.submatrix(&top_rows, &right_cols);
    let top_right_zero = top_right.is_zero();
    if !top_right_zero {
        return Err(Error::StructuralFailure(format!(
            "top-right block of A_{{{k},{d},{n}}} has a nonzero entry"
        )));
    }
    if full.data.submatrix(&top_rows, &left_cols) != top_left.data {
        return Err(Error::StructuralFailure(format!(
            "top-left block of A_{{{k},{d},{n}}} differs from A_{{{k},{},{}}}",
            d - 1,
            n - i64::from(k)
        )));
    }
    if full.data.submatrix(&bottom_rows, &right_cols) != bottom_right.data {
        return Err(Error::StructuralFailure(format!(
            "bottom-right block of A_{{{k},{d},{n}}} differs from A_{{{},{d},{n}}}",
            k - 1
        )));
    }
    let bottom_left = full.data.submatrix(&bottom_rows, &left_cols);
    Ok(BlockForm {
        top_left,
        bottom_right,
        bottom_left,
        split: (r1, c1),
        top_right_zero,
        full,
    })
}

impl BlockForm {
    /// `[[A_{k,d−1,n−k}, 0], [*, A_{k−1,d,n}]]` reassembled.
    pub fn reassemble(&self) -> Result<ExactMatrix> {
        ExactMatrix::block_lower(
            &self.top_left.data,
            &self.bottom_left,
            &self.bottom_right.data,
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FullRankReport {
    pub k: u32,
    pub d: u32,
    pub n: i64,
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub expected: usize,
    pub pass: bool,
}

/// Exact rank of `A_{k,d,n}` against `min{p(k,d,n−1), p(k,d,n)}`.
pub fn full_rank_report(k: u32, d: u32, n: i64) -> FullRankReport {
    let a = build_incidence(k, d, n);
    let rank = a.data.rank();
    let expected = partitions::count(k, d, n - 1).min(partitions::count(k, d, n)) as usize;
    FullRankReport {
        k,
        d,
        n,
        rows: a.data.nrows(),
        cols: a.data.ncols(),
        rank,
        expected,
        pass: rank == expected,
    }
}

pub fn verify_full_rank(k: u32, d: u32, n: i64) -> Result<FullRankReport> {
    if n < 1 || n > i64::from(d) * i64::from(k) {
        return Err(Error::InvalidArgument(format!(
            "need 1 <= n <= dk, got k={k}, d={d}, n={n}"
        )));
    }
    let report = full_rank_report(k, d, n);
    if !report.pass {
        return Err(Error::VerificationFailure(format!(
            "rank(A_{{{k},{d},{n}}}) = {} but min(p(n-1), p(n)) = {}",
            report.rank, report.expected
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct BlockNullityReport {
    /// `nullity(M)` for the assembled `M = [[A, 0], [B, C]]`.
    pub lhs: usize,
    /// `dim{x ∈ ker A : Bx ∈ range C} + nullity(C)`.
    pub rhs: usize,
    pub compatible_kernel_dim: usize,
    pub nullity_a: usize,
    pub nullity_c: usize,
    pub c_full_row_rank: bool,
    pub c_full_column_rank: bool,
    pub pass: bool,
}

/// Evaluates both sides of the block nullity formula.
pub fn block_nullity_formula(
    a: &ExactMatrix,
    b: &ExactMatrix,
    c: &ExactMatrix,
) -> Result<BlockNullityReport> {
    let m = ExactMatrix::block_lower(a, b, c)?;
    let lhs = m.nullity();

    let kernel = a.nullspace_basis();
    let s = kernel.len();
    let rank_c = c.rank();
    let compatible = if s == 0 {
        0
    } else {
        // Columns of B·K, one per kernel basis vector of A.
        let bk_cols: Vec<Vec<Rational>> =
            kernel.iter().map(|x| b.mul_vec(x)).collect::<Result<_>>()?;
        let bk = ExactMatrix::from_dense(&bk_cols)?.transpose();
        let bk = if b.nrows() == 0 {
            ExactMatrix::zeros(0, s)
        } else {
            bk
        };
        // c ↦ BKc modulo range(C) has rank rank[C | BK] − rank C.
        s - (c.hstack(&bk)?.rank() - rank_c)
    };
    let nullity_c = c.ncols() - rank_c;
    let rhs = compatible + nullity_c;
    Ok(BlockNullityReport {
        lhs,
        rhs,
        compatible_kernel_dim: compatible,
        nullity_a: s,
        nullity_c,
        c_full_row_rank: rank_c == c.nrows(),
        c_full_column_rank: rank_c == c.ncols(),
        pass: lhs == rhs,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncatedNullity {
    pub d: u32,
    pub r: u32,
    pub t: Vec<u32>,
    pub kappa: Partition,
    pub e: i64,
    /// The degree `N = r(r+1) + e`.
    pub n: i64,
    pub rows: usize,
    pub cols: usize,
    pub nullity: usize,
}

/// Nullity of `A_{2r,d,N}^{⪯κ(t)}` with `N = r(r+1) + e`.
pub fn nullity_truncated(d: u32, r: u32, t: &[u32], e: i64) -> Result<TruncatedNullity> {
    let dp = DistinguishedPartition::new(t.to_vec())?;
    if dp.r != r || r < 1 {
        return Err(Error::InvalidArgument(format!(
            "t must have r+1 entries with r >= 1, got r={r}, t={t:?}"
        )));
    }
    if dp.d() != d {
        return Err(Error::InvalidArgument(format!(
            "t = {t:?} does not sum to d = {d}"
        )));
    }
    let n = i64::from(r * (r + 1)) + e;
    let a = build_incidence(2 * r, d, n);
    let tr = truncate_columns(&a, &dp.kappa)?;
    let nullity = tr.data.nullity();
    Ok(TruncatedNullity {
        d,
        r,
        t: t.to_vec(),
        kappa: dp.kappa,
        e,
        n,
        rows: tr.data.nrows(),
        cols: tr.data.ncols(),
        nullity,
    })
}

/// One cell of the submaximal table: `t = t_{d−2,0}`, `N = (d−1)(d−2) + e`.
pub fn table2_cell(d: u32, e: i64) -> Result<TruncatedNullity> {
    let dp = DistinguishedPartition::submaximal(d, 0)?;
    nullity_truncated(d, d - 2, &dp.t, e)
}

#[derive(Clone, Debug, Serialize)]
pub struct KernelReport {
    pub d: u32,
    pub kappa: Partition,
    pub columns: Vec<Partition>,
    pub nullity: usize,
    /// Primitive integer kernel generator (empty if the nullity is not 1).
    #[serde(serialize_with = "serialize_rationals")]
    pub kernel: Vec<Rational>,
    /// `v_{d−1,d}` restricted to the retained columns.
    #[serde(serialize_with = "serialize_rationals")]
    pub vandermonde: Vec<Rational>,
    #[serde(serialize_with = "serialize_rational")]
    pub kappa_entry: Rational,
    #[serde(serialize_with = "serialize_rational")]
    pub expected_kappa_entry: Rational,
    pub proportional: bool,
    pub pass: bool,
}

pub fn serialize_rationals<S: serde::Serializer>(
    v: &[Rational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::to_string))
}

pub fn serialize_rational<S: serde::Serializer>(
    v: &Rational,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational::to_string(v))
}

fn proportional(a: &[Rational], b: &[Rational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = a.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    if b[i].is_zero() {
        return false;
    }
    let ratio = &b[i] / &a[i];
    a.iter().zip(b).all(|(x, y)| x * &ratio == *y)
}

/// Nullity of `A_{2d−2,d,d(d−1)}^{⪯κ(1_d)}` and comparison of its kernel with
/// the truncated Vandermonde coefficient vector.
pub fn kernel_report(d: u32) -> Result<KernelReport> {
    if d < 2 {
        return Err(Error::InvalidArgument(format!("need d >= 2, got {d}")));
    }
    let kappa = DistinguishedPartition::staircase(d).kappa;
    let a = build_incidence(2 * d - 2, d, i64::from(d * (d - 1)));
    let tr = truncate_columns(&a, &kappa)?;
    let basis = tr.data.nullspace_basis();
    let nullity = basis.len();

    let v = symfun::vandermonde_coeff_vector(d - 1, d)?;
    let vandermonde: Vec<Rational> = tr
        .column_indices
        .iter()
        .map(|&i| v.values[i].clone())
        .collect();
    let kappa_entry = v.value_at(&kappa).unwrap_or_else(Rational::zero);
    let expected_kappa_entry = (1..d).fold(Rational::one(), |acc, j| {
        acc * Rational::from_integer(rational::factorial(2 * j as usize))
    });

    let kernel = if nullity == 1 {
        basis[0].clone()
    } else {
        Vec::new()
    };
    let is_prop = nullity == 1 && proportional(&kernel, &vandermonde);
    Ok(KernelReport {
        d,
        kappa,
        columns: tr.columns,
        nullity,
        kernel,
        vandermonde,
        pass: nullity == 1 && is_prop && kappa_entry == expected_kappa_entry,
        kappa_entry,
        expected_kappa_entry,
        proportional: is_prop,
    })
}

pub fn verify_kernel_dim_one(d: u32) -> Result<KernelReport> {
    let report = kernel_report(d)?;
    if !report.pass {
        return Err(Error::VerificationFailure(format!(
            "d = {d}: nullity {}, proportional {}, kappa entry {}",
            report.nullity,
            report.proportional,
            rational::to_string(&report.kappa_entry)
        )));
    }
    Ok(report)
}

#[derive(Clone, Debug, Serialize)]
pub struct TruncatedBlockReport {
    pub t: Vec<u32>,
    pub n: i64,
    /// Rows `(2r, μ')` with `μ'_1` above the middle block's part bound.
    pub zero_band_rows: usize,
    pub middle_rows: usize,
    pub left_cols: usize,
    pub pass: bool,
}

/// Checks the three-band block form of `A_{2r,d,n}^{⪯κ(t)}`: a zero top
/// band, the middle-left block `A_{k',d−1,n−2r}^{⪯κ(t⁻)}` (with `k' = 2r−2`
/// if `t_r = 1`, else `2r`), zero to its right, and `A_{2r−1,d,n}` bottom
/// right.
pub fn truncated_block_form(t: &[u32], n: i64) -> Result<TruncatedBlockReport> {
    let dp = DistinguishedPartition::new(t.to_vec())?;
    let (r, d) = (dp.r, dp.d());
    if r < 1 || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "need r >= 1 and d >= 2, t={t:?}"
        )));
    }
    let k = 2 * r;
    let inner_k = if *t.last().unwrap() == 1 { k - 2 } else { k };
    let minus = dp.minus()?;

    let full = build_incidence(k, d, n);
    let tr = truncate_columns(&full, &dp.kappa)?;
    let middle = build_incidence(inner_k, d - 1, n - i64::from(k));
    let middle_kappa = pad(&minus.kappa, (d - 1) as usize);
    let middle_tr = truncate_columns(&middle, &middle_kappa)?;
    let bottom = build_incidence(k - 1, d, n);

    let lead_rows = full.rows.iter().take_while(|m| m.largest() == k).count();
    let zero_band = full
        .rows
        .iter()
        .take_while(|m| m.largest() == k && m.parts()[1] > inner_k)
        .count();
    let left_cols = tr.columns.iter().take_while(|l| l.largest() == k).count();
    let (rows, cols) = (tr.data.nrows(), tr.data.ncols());

    let band: Vec<usize> = (0..zero_band).collect();
    let mid: Vec<usize> = (zero_band..lead_rows).collect();
    let low: Vec<usize> = (lead_rows..rows).collect();
    let left: Vec<usize> = (0..left_cols).collect();
    let right: Vec<usize> = (left_cols..cols).collect();
    let all: Vec<usize> = (0..cols).collect();

    let labels_ok = middle_tr.columns.len() == left_cols
        && middle_tr
            .columns
            .iter()
            .zip(&tr.columns)
            .all(|(a, b)| a.prepend(k).as_ref() == Ok(b))
        && middle.rows.len() == mid.len()
        && bottom.cols.members() == &tr.columns[left_cols..]
        && bottom.rows.len() == low.len();

    let pass = labels_ok
        && tr.data.submatrix(&band, &all).is_zero()
        && tr.data.submatrix(&mid, &right).is_zero()
        && tr.data.submatrix(&mid, &left) == middle_tr.data
        && tr.data.submatrix(&low, &right) == bottom.data;
    Ok(TruncatedBlockReport {
        t: t.to_vec(),
        n,
        zero_band_rows: zero_band,
        middle_rows: mid.len(),
        left_cols,
        pass,
    })
}

fn pad(p: &Partition, len: usize) -> Partition {
    let mut parts = p.parts().to_vec();
    parts.resize(len, 0);
    Partition::new(parts).expect("padding with zeros keeps order")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn a_5_3_6_matches_display() {
        let a = build_incidence(5, 3, 6);
        assert_eq!(
            a.to_i64_rows(),
            vec![
                vec![2, 0, 0, 0, 0, 0],
                vec![1, 1, 1, 0, 0, 0],
                vec![0, 1, 0, 1, 1, 0],
                vec![0, 0, 1, 0, 2, 0],
                vec![0, 0, 0, 0, 2, 1],
            ]
        );
    }

    #[test]
    fn a_2_2_2() {
        assert_eq!(build_incidence(2, 2, 2).to_i64_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn degenerate_shapes() {
        assert_eq!(build_incidence(3, 2, 0).shape(), (0, 1));
        assert_eq!(build_incidence(3, 2, 7).shape(), (1, 0));
        assert_eq!(build_incidence(3, 2, 9).shape(), (0, 0));
        assert_eq!(build_incidence(3, 2, -2).shape(), (0, 0));
    }

    #[test]
    fn truncation() {
        let a = build_incidence(6, 4, 12);
        let kappa: Partition = "6,4,2,0".parse().unwrap();
        let tr = truncate_columns(&a, &kappa).unwrap();
        assert_eq!((tr.data.nrows(), tr.data.ncols()), (16, 16));
        assert_eq!(tr.column_indices[0], 2);

        let top: Partition = "6,6,6,6".parse().unwrap();
        assert_eq!(truncate_columns(&a, &top).unwrap().data.ncols(), 18);
        let short: Partition = "6,4,2".parse().unwrap();
        assert!(truncate_columns(&a, &short).is_err());
        let big: Partition = "7,4,1,0".parse().unwrap();
        assert!(truncate_columns(&a, &big).is_err());

        let b = build_incidence(2, 2, 2);
        let tr = truncate_columns(&b, &"2,0".parse().unwrap()).unwrap();
        assert_eq!(tr.data, b.data);
    }

    #[test]
    fn distinguished_partitions() {
        assert_eq!(
            DistinguishedPartition::staircase(4).kappa.to_string(),
            "6,4,2,0"
        );
        let sub = DistinguishedPartition::submaximal(5, 0).unwrap();
        assert_eq!(sub.t, vec![2, 1, 1, 1]);
        assert_eq!(sub.kappa.to_string(), "6,4,2,0,0");
        let sub = DistinguishedPartition::submaximal(5, 2).unwrap();
        assert_eq!(sub.kappa.to_string(), "6,4,4,2,0");
        assert_eq!(sub.size(), 16);
        assert!(DistinguishedPartition::new(vec![1, 0]).is_err());
        let dp = DistinguishedPartition::new(vec![2, 1, 1]).unwrap();
        assert_eq!(dp.kappa.to_string(), "4,2,0,0");
        assert_eq!(dp.minus().unwrap().t, vec![2, 1]);
        let dp = DistinguishedPartition::new(vec![1, 2]).unwrap();
        assert_eq!(dp.minus().unwrap().t, vec![1, 1]);
    }

    #[test]
    fn block_form_degenerate() {
        let bf = block_form(5, 3, 4).unwrap();
        assert_eq!(bf.split.0, 0);
        assert_eq!(bf.reassemble().unwrap(), bf.full.data);
    }

    #[test]
    fn full_rank_small() {
        let r = verify_full_rank(5, 3, 6).unwrap();
        assert_eq!((r.rank, r.expected), (5, 5));
        let r = verify_full_rank(5, 3, 13).unwrap();
        assert_eq!(r.rank as u64, partitions::count(5, 3, 13));
        let r = verify_full_rank(1, 1, 1).unwrap();
        assert_eq!(r.rank, 1);
        assert!(verify_full_rank(1, 1, 2).is_err());
    }

    #[test]
    fn block_nullity_zero_blocks() {
        let z = ExactMatrix::from_i64_rows(&[vec![0]]);
        let r = block_nullity_formula(&z, &z, &z).unwrap();
        assert_eq!((r.lhs, r.rhs), (2, 2));
        assert!(r.pass);
    }

    #[test]
    fn block_nullity_shape_error() {
        let a = ExactMatrix::from_i64_rows(&[vec![1, 0]]);
        let b = ExactMatrix::from_i64_rows(&[vec![1]]);
        let c = ExactMatrix::from_i64_rows(&[vec![1]]);
        assert!(block_nullity_formula(&a, &b, &c).is_err());
    }

    #[test]
    fn truncated_nullity_validation() {
        assert!(nullity_truncated(4, 2, &[2, 1], 0).is_err());
        assert!(nullity_truncated(4, 2, &[1, 1, 1], 0).is_err());
        let cell = table2_cell(4, 0).unwrap();
        assert_eq!(cell.kappa.to_string(), "4,2,0,0");
        assert_eq!(cell.n, 6);
        assert_eq!(cell.nullity, 2);
    }

    #[test]
    fn kernel_d2() {
        let r = verify_kernel_dim_one(2).unwrap();
        assert_eq!(r.nullity, 1);
        assert_eq!(r.kernel, vec![int(1), int(-1)]);
    }

    #[test]
    fn csv_layout() {
        let csv = build_incidence(2, 2, 2).to_csv();
        assert_eq!(csv, "k,d,n,rows,cols\n2,2,2,1,2\n1,1\n");
    }
}
