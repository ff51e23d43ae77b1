//! Exact integer truncated power series: the bracket truncation rule for
//! expected Hilbert series, the socle-degree formula s(n,d), and difference
//! sequences.
//!
//! Everything here is arbitrary-precision: desk-scale coefficients only leave
//! the 64-bit range beyond the tested grid, but correctness must not depend
//! on that.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series of {m} forms in {n} variables never goes non-positive; a cap is required")]
    Unbounded { n: u32, m: usize },
    #[error("zero series has no degree")]
    ZeroSeries,
}

fn bigint_zero() -> &'static BigInt {
    static ZERO: OnceLock<BigInt> = OnceLock::new();
    ZERO.get_or_init(BigInt::zero)
}

/// An integer sequence with finite support. Entries outside the stored range
/// read as zero, which is how all index arithmetic on difference sequences is
/// kept total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeq {
    values: Vec<BigInt>,
    offset: i64,
}

impl IntSeq {
    pub fn new(values: Vec<BigInt>, offset: i64) -> Self {
        IntSeq { values, offset }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        IntSeq {
            values: values.iter().map(|&v| BigInt::from(v)).collect(),
            offset: 0,
        }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Entry at absolute index `i`; zero outside the stored range.
    pub fn get(&self, i: i64) -> &BigInt {
        let k = i - self.offset;
        if k < 0 || k as usize >= self.values.len() {
            bigint_zero()
        } else {
            &self.values[k as usize]
        }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    /// Index of the last nonzero entry, if any.
    pub fn last_nonzero(&self) -> Option<i64> {
        self.values
            .iter()
            .rposition(|v| !v.is_zero())
            .map(|k| self.offset + k as i64)
    }
}

/// Coefficients of prod (1 - t^{d_i}) / (1 - t)^n up to degree `cap`,
/// as exact integers (negative entries are kept).
pub fn raw_product(n: u32, degrees: &[u32], cap: usize) -> IntSeq {
    assert!(n >= 1, "need at least one variable");
    let mut c = vec![BigInt::zero(); cap + 1];
    c[0] = BigInt::one();
    for &d in degrees {
        let d = d as usize;
        for j in (0..=cap).rev() {
            if j >= d {
                let prev = c[j - d].clone();
                c[j] -= prev;
            }
        }
    }
    // dividing by (1 - t)^n is n running prefix sums
    for _ in 0..n {
        for j in 1..=cap {
            let prev = c[j - 1].clone();
            c[j] += prev;
        }
    }
    IntSeq::new(c, 0)
}

/// A power series truncated by the bracket rule: cut before the first
/// non-positive coefficient.
///
/// Invariants: every stored coefficient is strictly positive; when
/// `truncated` is set, the next coefficient of the untruncated expansion is
/// <= 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<BigInt>,
    truncated: bool,
}

impl TruncatedSeries {
    /// Scan a raw coefficient list and truncate before the first
    /// non-positive entry.
    pub fn from_raw(raw: &[BigInt]) -> Self {
        match raw.iter().position(|v| !v.is_positive()) {
            Some(k) => TruncatedSeries {
                coeffs: raw[..k].to_vec(),
                truncated: true,
            },
            None => TruncatedSeries {
                coeffs: raw.to_vec(),
                truncated: false,
            },
        }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn coeffs_i64(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .map(|c| i64::try_from(c).expect("coefficient exceeds i64"))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest stored index, i.e. the degree of the series.
    pub fn degree(&self) -> Result<usize, SeriesError> {
        if self.coeffs.is_empty() {
            Err(SeriesError::ZeroSeries)
        } else {
            Ok(self.coeffs.len() - 1)
        }
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| match i {
                0 => c.to_string(),
                1 => format!("{c} t"),
                _ => format!("{c} t^{i}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Bracket truncation of prod (1 - t^{d_i}) / (1 - t)^n.
///
/// With no cap the expansion is scanned until its first non-positive
/// coefficient, which exists exactly when there are more forms than
/// variables; fewer forms with no cap is an error rather than a hang.
pub fn froberg_bracket(
    n: u32,
    degrees: &[u32],
    cap: Option<usize>,
) -> Result<TruncatedSeries, SeriesError> {
    assert!(n >= 1, "need at least one variable");
    match cap {
        Some(cap) => {
            let raw = raw_product(n, degrees, cap);
            Ok(TruncatedSeries::from_raw(raw.values()))
        }
        None => {
            if degrees.len() <= n as usize {
                return Err(SeriesError::Unbounded {
                    n,
                    m: degrees.len(),
                });
            }
            let mut cap = degrees.iter().map(|&d| d as usize).sum::<usize>().max(16);
            loop {
                let raw = raw_product(n, degrees, cap);
                let s = TruncatedSeries::from_raw(raw.values());
                if s.truncated {
                    return Ok(s);
                }
                cap *= 2;
            }
        }
    }
}

/// Bracket truncation of (1 - t^d) * S: the expected series after cutting by
/// one general form of degree d under a maximal-rank multiplication map.
pub fn series_quotient_by_form(s: &TruncatedSeries, d: u32) -> TruncatedSeries {
    let d = d as usize;
    let n = s.coeffs.len();
    let mut prod = vec![BigInt::zero(); n + d];
    for (j, c) in s.coeffs.iter().enumerate() {
        prod[j] += c;
        prod[j + d] -= c;
    }
    TruncatedSeries::from_raw(&prod)
}

/// Socle degree of the ring cut out by n+2 uniform d-th powers in n
/// variables: (n+1)(d-1)/2 for odd n, floor(n(n+2)(d-1) / (2(n+1))) for
/// even n.
pub fn s_formula(n: u32, d: u32) -> i64 {
    assert!(n >= 1 && d >= 1);
    let n = n as i64;
    let d = d as i64;
    if n % 2 == 1 {
        (n + 1) * (d - 1) / 2
    } else {
        n * (n + 2) * (d - 1) / (2 * (n + 1))
    }
}

/// Difference sequence a_0, a_1 - a_0, ..., a_n - a_{n-1}, -a_n, so that
/// (1 - t) * sum a_i t^i = sum delta_i t^i exactly.
pub fn delta_seq(a: &IntSeq) -> IntSeq {
    if a.is_empty() {
        return IntSeq::new(Vec::new(), a.offset());
    }
    let v = a.values();
    let mut out = Vec::with_capacity(v.len() + 1);
    out.push(v[0].clone());
    for i in 1..v.len() {
        out.push(&v[i] - &v[i - 1]);
    }
    out.push(-v[v.len() - 1].clone());
    IntSeq::new(out, a.offset())
}

/// Degree of a nonzero truncated series (index of its last coefficient).
pub fn series_degree(s: &TruncatedSeries) -> Result<usize, SeriesError> {
    s.degree()
}

/// Half-integers, stored doubled. The window analysis allows shifts in
/// (1/2)N, and all index arithmetic on them is done in doubled units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    doubled: i64,
}

impl HalfInt {
    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(v: i64) -> Self {
        HalfInt { doubled: 2 * v }
    }

    pub fn doubled(&self) -> i64 {
        self.doubled
    }

    pub fn is_integer(&self) -> bool {
        self.doubled % 2 == 0
    }

    /// Exact integer value; panics on a proper half-integer.
    pub fn to_int(&self) -> i64 {
        assert!(self.is_integer(), "{self} is not an integer");
        self.doubled / 2
    }

    pub fn floor(&self) -> i64 {
        self.doubled.div_euclid(2)
    }

    pub fn ceil(&self) -> i64 {
        (self.doubled + 1).div_euclid(2)
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + rhs.doubled)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - rhs.doubled)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}
