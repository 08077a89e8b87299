//! Restricted partitions `P(k, d, n)`: weakly decreasing `d`-tuples of
//! integers in `[0, k]` summing to `n`.
//!
//! Partitions always carry exactly `d` parts, trailing zeros included, so the
//! derived `Ord` on the part vector is the lexicographic order used
//! throughout (`λ ≺ μ` iff the leftmost nonzero entry of `λ − μ` is
//! negative). Partition sets are listed in decreasing lexicographic order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::factorial;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!(
                "{parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self { parts })
    }

    /// `(0, …, 0)` with `d` parts.
    pub fn empty(d: usize) -> Self {
        Self { parts: vec![0; d] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Number of parts `d` (zeros included).
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn largest(&self) -> u32 {
        self.parts.first().copied().unwrap_or(0)
    }

    /// `e_i`: how many parts equal `i`.
    pub fn multiplicity(&self, i: u32) -> usize {
        self.parts.iter().filter(|&&p| p == i).count()
    }

    /// The multiplicity form `(e_0, e_1, …, e_k)` indexed by part value.
    pub fn multiplicities(&self, k: u32) -> Vec<usize> {
        let mut e = vec![0; k as usize + 1];
        for &p in &self.parts {
            e[p as usize] += 1;
        }
        e
    }

    /// `λ! = λ_1! ⋯ λ_d!`.
    pub fn factorial(&self) -> BigInt {
        self.parts
            .iter()
            .fold(BigInt::one(), |acc, &p| acc * factorial(p as usize))
    }

    pub fn lex_compare(&self, other: &Self) -> Result<Ordering> {
        if self.len() != other.len() {
            return Err(Error::LengthMismatch {
                left: self.len(),
                right: other.len(),
            });
        }
        Ok(self.parts.cmp(&other.parts))
    }

    /// `μ(i)`: one part equal to `i` replaced by `i + 1`, together with the
    /// weight `e_i`. `Ok(None)` when `μ` has no part equal to `i`.
    pub fn bump(&self, i: u32, k: u32) -> Result<Option<(Partition, u32)>> {
        if i >= k {
            return Err(Error::InvalidArgument(format!(
                "bump index {i} outside 0..{k}"
            )));
        }
        let Some(first) = self.parts.iter().position(|&p| p == i) else {
            return Ok(None);
        };
        let weight = self.multiplicity(i) as u32;
        let mut parts = self.parts.clone();
        // The part left of the first `i` is > i, so the result stays sorted.
        parts[first] = i + 1;
        Ok(Some((Partition { parts }, weight)))
    }

    /// `ι_k`: prepend a part equal to `k`.
    pub fn prepend(&self, k: u32) -> Result<Self> {
        let mut parts = Vec::with_capacity(self.len() + 1);
        parts.push(k);
        parts.extend_from_slice(&self.parts);
        Self::new(parts)
    }

    /// Drops the first part (inverse of [`Partition::prepend`]).
    pub fn tail(&self) -> Self {
        Self {
            parts: self.parts[1..].to_vec(),
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidPartition(format!("bad part {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `P(k, d, n)` in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSet {
    pub k: u32,
    pub d: u32,
    pub n: i64,
    members: Vec<Partition>,
}

impl PartitionSet {
    pub fn members(&self) -> &[Partition] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Partition> {
        self.members.iter()
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.members[i]
    }

    /// Position in the decreasing-lex listing.
    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.members.binary_search_by(|m| p.cmp(m)).ok()
    }

    /// Members `λ ⪯ κ`, as indices into this set.
    pub fn indices_not_above(&self, kappa: &Partition) -> Vec<usize> {
        (0..self.members.len())
            .filter(|&i| self.members[i] <= *kappa)
            .collect()
    }
}

impl<'a> IntoIterator for &'a PartitionSet {
    type Item = &'a Partition;
    type IntoIter = std::slice::Iter<'a, Partition>;

    fn into_iter(self) -> Self::IntoIter {
        self.members.iter()
    }
}

/// Lists `P(k, d, n)` by recursive descent on the first part, largest first,
/// which yields decreasing lexicographic order directly.
pub fn enumerate(k: u32, d: u32, n: i64) -> PartitionSet {
    let mut members = Vec::new();
    if n >= 0 && n <= i64::from(d) * i64::from(k) {
        let mut buf = Vec::with_capacity(d as usize);
        descend(k, d, n as u32, &mut buf, &mut members);
    }
    PartitionSet { k, d, n, members }
}

fn descend(max: u32, slots: u32, rest: u32, buf: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if slots == 0 {
        if rest == 0 {
            out.push(Partition { parts: buf.clone() });
        }
        return;
    }
    // first part must be at least ceil(rest / slots)
    let lo = rest.div_ceil(slots);
    let hi = max.min(rest);
    if lo > hi {
        return;
    }
    for first in (lo..=hi).rev() {
        buf.push(first);
        descend(first, slots - 1, rest - first, buf, out);
        buf.pop();
    }
}

type CountKey = (u32, u32, i64);

fn count_cache() -> &'static Mutex<HashMap<CountKey, u64>> {
    static CACHE: OnceLock<Mutex<HashMap<CountKey, u64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `p(k, d, n)` from the recurrence `p(k,d,n) = p(k,d−1,n) + p(k−1,d,n−d)`,
/// memoized across calls.
pub fn count(k: u32, d: u32, n: i64) -> u64 {
    if n < 0 || n > i64::from(d) * i64::from(k) {
        return 0;
    }
    if n == 0 {
        return 1;
    }
    if k == 0 || d == 0 {
        return 0;
    }
    if let Some(&v) = count_cache().lock().unwrap().get(&(k, d, n)) {
        return v;
    }
    let v = count(k, d - 1, n) + count(k - 1, d, n - i64::from(d));
    count_cache().lock().unwrap().insert((k, d, n), v);
    v
}

pub fn lex_compare(a: &Partition, b: &Partition) -> Result<Ordering> {
    a.lex_compare(b)
}

pub fn bump(mu: &Partition, i: u32, k: u32) -> Result<Option<(Partition, u32)>> {
    mu.bump(i, k)
}

/// `P(k,d,n) = ι_k(P(k,d−1,n−k)) ⊔ P(k−1,d,n)`.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `ι_k(P(k, d−1, n−k))`: the members whose first part is `k`.
    pub embedded: Vec<Partition>,
    /// `P(k−1, d, n)`.
    pub rest: PartitionSet,
}

pub fn decompose(k: u32, d: u32, n: i64) -> Result<Decomposition> {
    if d < 2 || k < 1 {
        return Err(Error::InvalidArgument(format!(
            "decomposition needs d >= 2 and k >= 1, got k={k}, d={d}"
        )));
    }
    let embedded = enumerate(k, d - 1, n - i64::from(k))
        .members
        .iter()
        .map(|nu| nu.prepend(k))
        .collect::<Result<Vec<_>>>()?;
    Ok(Decomposition {
        embedded,
        rest: enumerate(k - 1, d, n),
    })
}
