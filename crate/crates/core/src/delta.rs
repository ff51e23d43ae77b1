//! Difference-sequence analysis for expected Hilbert series degrees.
//!
//! The expected series for n+2 uniform d-th powers in n variables is the
//! bracket of (1-t)^2 (1+t+...+t^{d-1})^{n+2}, so its degree is controlled by
//! where the difference sequence of (1+t+...+t^{d-1})^N starts decreasing.
//! This module checks the window conditions that propagate such control from
//! N to N+1, computes the minimal shift s~(n,d) for which they hold, and
//! turns the comparison s~(n,d) < s(n,d) into failure evidence for the weak
//! Lefschetz property.

use crate::series::{delta_seq, s_formula, HalfInt, IntSeq};
use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DeltaError {
    #[error("no shift in (1/2)N satisfies the window conditions for N={n}, d={d}")]
    NoValidShift { n: u32, d: u32 },
}

/// Coefficients of (1 + t + ... + t^{d-1})^n, a symmetric unimodal sequence
/// of length n(d-1)+1.
pub fn power_sum_coeffs(n: u32, d: u32) -> IntSeq {
    assert!(d >= 1);
    let mut c = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![BigInt::from(0); c.len() + d as usize - 1];
        for (i, v) in c.iter().enumerate() {
            for j in 0..d as usize {
                next[i + j] += v;
            }
        }
        c = next;
    }
    IntSeq::new(c, 0)
}

/// Which window condition fails first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ViolationKind {
    /// n(d-1)/2 - s >= (d-1)/2 does not hold.
    Range,
    /// The difference sequence increases inside the central window; the
    /// index is the integer i with delta_i < delta_{i+1}.
    Monotone,
    /// The reflection dominance around s fails; the index is the doubled
    /// offset j with delta_{s-j} < delta_{s+j+1}.
    Dominance,
}

/// Outcome of checking the window conditions at one shift s.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WindowReport {
    pub n: u32,
    pub d: u32,
    pub s: HalfInt,
    pub range_ok: bool,
    pub monotone_ok: bool,
    pub dominance_ok: bool,
    pub first_violation: Option<(i64, ViolationKind)>,
}

impl WindowReport {
    pub fn all_ok(&self) -> bool {
        self.range_ok && self.monotone_ok && self.dominance_ok
    }
}

/// Check, for a = (1+t+...+t^{d-1})^n and D = delta(a), that
///   (range)     n(d-1)/2 - s >= (d-1)/2,
///   (monotone)  D_i >= D_{i+1} for s <= i <= n(d-1) - s,
///   (dominance) D_{s-j} >= D_{s+j+1} for 0 <= j <= s,
/// where i and the indices s-j, s+j+1 run over integers only (j keeps the
/// parity of s). All index arithmetic is in doubled units.
pub fn check_window_conditions(n: u32, d: u32, s: HalfInt) -> WindowReport {
    let a = power_sum_coeffs(n, d);
    check_window_conditions_with(n, d, s, &delta_seq(&a))
}

/// As `check_window_conditions`, reusing a precomputed difference sequence
/// (scans over many shifts share one).
pub fn check_window_conditions_with(n: u32, d: u32, s: HalfInt, diff: &IntSeq) -> WindowReport {
    let dbl_s = s.doubled();
    let len = (n as i64) * (d as i64 - 1); // degree of the power sum
    let mut report = WindowReport {
        n,
        d,
        s,
        range_ok: true,
        monotone_ok: true,
        dominance_ok: true,
        first_violation: None,
    };

    // range: n(d-1) - 2s >= d-1 in doubled units
    if dbl_s < 0 || 2 * len - 2 * dbl_s < 2 * (d as i64 - 1) {
        report.range_ok = false;
        report.first_violation = Some((dbl_s, ViolationKind::Range));
        return report;
    }

    // monotone window: integer i with 2i >= dbl_s and 2i <= 2*len - dbl_s
    let i_lo = (dbl_s + 1).div_euclid(2);
    let i_hi = (2 * len - dbl_s).div_euclid(2);
    for i in i_lo..=i_hi {
        if diff.get(i) < diff.get(i + 1) {
            report.monotone_ok = false;
            report.first_violation = Some((i, ViolationKind::Monotone));
            break;
        }
    }

    // dominance: doubled j with the parity of dbl_s, 0 <= j <= s
    for dbl_j in (dbl_s % 2..=dbl_s).step_by(2) {
        let lo = (dbl_s - dbl_j) / 2;
        let hi = (dbl_s + dbl_j + 2) / 2;
        if diff.get(lo) < diff.get(hi) {
            report.dominance_ok = false;
            if report.first_violation.is_none() {
                report.first_violation = Some((dbl_j, ViolationKind::Dominance));
            }
            break;
        }
    }
    report
}

/// Minimal integer shift satisfying the window conditions for the sequence
/// (1+t+...+t^{d-1})^{n+2}.
///
/// This is the quantity written s~(n,d): it bounds the degree of the
/// expected series for n+2 powers in n variables, and the family failure
/// test compares it against the actual socle degree s(n,d). Integrality is
/// required for that comparison; `stilde_raw` records the unrestricted
/// half-integer minimum separately.
pub fn stilde(n: u32, d: u32) -> Result<HalfInt, DeltaError> {
    stilde_scan(n, d, 2)
}

/// Minimal shift in (1/2)N satisfying the window conditions for
/// (1+t+...+t^{d-1})^{n+2}, with half-integers allowed.
pub fn stilde_raw(n: u32, d: u32) -> Result<HalfInt, DeltaError> {
    stilde_scan(n, d, 1)
}

fn stilde_scan(n: u32, d: u32, step: usize) -> Result<HalfInt, DeltaError> {
    let power = n + 2;
    let a = power_sum_coeffs(power, d);
    let diff = delta_seq(&a);
    let bound = (power as i64) * (d as i64 - 1); // doubled scan bound n(d-1)/2
    let mut dbl = 0i64;
    while dbl <= bound {
        let s = HalfInt::from_doubled(dbl);
        if check_window_conditions_with(power, d, s, &diff).all_ok() {
            return Ok(s);
        }
        dbl += step as i64;
    }
    Err(DeltaError::NoValidShift { n: power, d })
}

/// g(j) = C(j+2, 2) - 4 C(j+2-d, 2): the closed quadratic form of the upper
/// window of the difference sequence of (1+t+...+t^{d-1})^4.
pub fn quartic_delta_formula(d: u32, j: i64) -> i64 {
    assert!(d >= 2);
    // m(m-1)/2 as a polynomial, so the complete-the-square symmetry is exact
    let c2 = |m: i64| m * (m - 1) / 2;
    c2(j + 2) - 4 * c2(j + 2 - d as i64)
}

/// Upper bound for the smallest inflection point of the Hilbert function of
/// a complete intersection of n+2 uniform d-th powers:
/// floor(4(d-1)/3) + (n-2)(d-1)/2.
///
/// When the value is a proper half-integer the expected-series degree is
/// bounded by its ceiling (the monotone window starts at the next integer
/// index); integer values bound the degree directly.
pub fn inflection_bound(n: u32, d: u32) -> HalfInt {
    assert!(n >= 2 && d >= 1);
    let base = 4 * (d as i64 - 1) / 3;
    HalfInt::from_doubled(2 * base + (n as i64 - 2) * (d as i64 - 1))
}

/// Why a pair (n,d) fails the weak Lefschetz property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum EvidenceKind {
    /// s~(n0,d) < s(n0,d) at a base pair whose failure propagates upward in
    /// steps of two variables.
    DegreeGapFamily,
    /// Inverse-system span and specialized quotient dimension agree at the
    /// socle degree and differ from the bracket coefficient.
    SporadicCertificate,
    /// Established small-variable-count result, no computation needed.
    KnownResult,
    /// A computed multiplication-map rank profile.
    RankWitness,
}

/// Evidence that some ring fails (or a witness that it holds) the WLP.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureEvidence {
    pub kind: EvidenceKind,
    /// For `DegreeGapFamily`: the base pair (n0, d) with s~(n0,d) < s(n0,d),
    /// n0 the variable count of the reduced ring.
    pub base_pair: (u32, u32),
    pub detail: String,
}

/// Evidence that the ring of N+1 uniform d-th powers in N variables fails
/// the WLP via the degree-gap family argument.
///
/// Scans base pairs (n0, d) with n0 <= N-1 and n0 ≡ N-1 (mod 2); evidence at
/// a base propagates to N in steps of two variables. Returns the smallest
/// base that fires.
pub fn degree_gap_evidence(big_n: u32, d: u32) -> Option<FailureEvidence> {
    let mut memo = HashMap::new();
    degree_gap_evidence_memo(big_n, d, &mut memo)
}

/// As `degree_gap_evidence` with a caller-held memo of s~ values, so grid
/// drivers do not recompute the scan per cell.
pub fn degree_gap_evidence_memo(
    big_n: u32,
    d: u32,
    stilde_memo: &mut HashMap<(u32, u32), Option<HalfInt>>,
) -> Option<FailureEvidence> {
    if big_n < 4 {
        return None;
    }
    let mut n0 = if (big_n - 1) % 2 == 0 { 2 } else { 3 };
    while n0 <= big_n - 1 {
        let st = *stilde_memo
            .entry((n0, d))
            .or_insert_with(|| stilde(n0, d).ok());
        if let Some(st) = st {
            let socle = s_formula(n0, d);
            if st < HalfInt::from_int(socle) {
                return Some(FailureEvidence {
                    kind: EvidenceKind::DegreeGapFamily,
                    base_pair: (n0, d),
                    detail: format!(
                        "s~({n0},{d}) = {st} < s({n0},{d}) = {socle}; gap propagates to ({big_n},{d})"
                    ),
                });
            }
        }
        n0 += 2;
    }
    None
}

/// Outcome of the degree-gap sweep for one pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum AlmostVerdict {
    FailsByBound(FailureEvidence),
    PossibleException,
}

/// The coarse classification: either the degree-gap argument already shows
/// failure, or the pair is one of the finitely many possible exceptions.
pub fn almost_classification(big_n: u32, d: u32) -> AlmostVerdict {
    assert!(big_n >= 4 && d >= 2);
    match degree_gap_evidence(big_n, d) {
        Some(ev) => AlmostVerdict::FailsByBound(ev),
        None => AlmostVerdict::PossibleException,
    }
}

/// Sweep a full grid with shared memoization; returns the pairs marked
/// `PossibleException`.
pub fn almost_classification_grid(n_range: (u32, u32), d_range: (u32, u32)) -> Vec<(u32, u32)> {
    let mut memo = HashMap::new();
    let mut exceptions = Vec::new();
    for n in n_range.0..=n_range.1 {
        for d in d_range.0..=d_range.1 {
            if degree_gap_evidence_memo(n, d, &mut memo).is_none() {
                exceptions.push((n, d));
            }
        }
    }
    exceptions
}
