//! The classification driver: decides, pair by pair, whether the ring of
//! n+1 uniform d-th powers in n variables has the weak Lefschetz property,
//! and records the evidence chain behind each verdict.
//!
//! The chain is: established small cases, then the integer degree-gap
//! bound, then the six sporadic socle sandwiches, then a direct rank
//! profile for the remaining candidates. Holds verdicts from a maximal
//! profile and Fails verdicts from a closed sandwich both transfer to the
//! generic characteristic-zero ring by semicontinuity; Fails from the
//! degree-gap bound is integer arithmetic with no modular content at all.

use crate::cache::DimCache;
use crate::certificate::{find_case, sporadic_sandwich, SandwichOptions};
use crate::delta::{degree_gap_evidence_memo, EvidenceKind};
use crate::field::{PrimeField, Seed};
use crate::hilbert::{wlp_rank_profile, IdealSpec};
use crate::series::HalfInt;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::time::Instant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Holds,
    Fails,
    Undetermined,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub kind: EvidenceKind,
    pub base_pair: Option<(u32, u32)>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationRecord {
    pub n: u32,
    pub d: u32,
    pub verdict: Verdict,
    pub evidence: Vec<Evidence>,
    /// set when a modular verdict was not re-confirmed at two moduli and
    /// two specializations
    pub caveat: Option<String>,
    pub confirmed: bool,
    pub elapsed_ms: u128,
}

/// How much redundancy to spend on the sporadic sandwiches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConfirmLevel {
    /// one modulus, one orbit scale (a closed sandwich is already a
    /// characteristic-zero certificate)
    Fast,
    /// two moduli, two orbit scales each
    Full,
}

#[derive(Debug, Clone)]
pub struct ClassifyOptions {
    pub primes: Vec<PrimeField>,
    pub seed: Seed,
    pub confirm: ConfirmLevel,
    pub family_cap: usize,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions {
            primes: vec![PrimeField::default_0(), PrimeField::default_1()],
            seed: Seed(1),
            confirm: ConfirmLevel::Fast,
            family_cap: 200_000,
        }
    }
}

/// Classify one pair.
pub fn classify(n: u32, d: u32, opts: &ClassifyOptions, cache: Option<&DimCache>) -> ClassificationRecord {
    let mut memo = HashMap::new();
    classify_with_memo(n, d, opts, cache, &mut memo)
}

fn classify_with_memo(
    n: u32,
    d: u32,
    opts: &ClassifyOptions,
    cache: Option<&DimCache>,
    stilde_memo: &mut HashMap<(u32, u32), Option<HalfInt>>,
) -> ClassificationRecord {
    assert!(n >= 1 && d >= 1);
    let t0 = Instant::now();
    let field = opts.primes[0];

    // (a) established cases: every artinian quotient in up to three
    // variables has the property, as does d = 1
    if n <= 3 || d == 1 {
        let mut evidence = vec![Evidence {
            kind: EvidenceKind::KnownResult,
            base_pair: None,
            detail: if d == 1 {
                "linear forms: the quotient is a polynomial ring in fewer variables".into()
            } else {
                format!("quotients in {n} <= 3 variables always have the property")
            },
        }];
        // back the citation with a computed profile where it is cheap
        let mut confirmed = true;
        if d <= 12 {
            match IdealSpec::random(n, n + 1, d, opts.seed, &field)
                .map_err(|e| e.to_string())
                .and_then(|spec| wlp_rank_profile(&spec, &field, opts.seed).map_err(|e| e.to_string()))
            {
                Ok(profile) if profile.all_maximal() => evidence.push(Evidence {
                    kind: EvidenceKind::RankWitness,
                    base_pair: None,
                    detail: "maximal rank profile at a seeded specialization".into(),
                }),
                Ok(profile) => {
                    // cannot happen for n <= 3 unless the specialization is
                    // degenerate; keep the cited verdict but say so
                    evidence.push(Evidence {
                        kind: EvidenceKind::RankWitness,
                        base_pair: None,
                        detail: format!("profile deficient at {:?} (degenerate specialization)", profile.verdict),
                    });
                    confirmed = false;
                }
                Err(e) => {
                    evidence.push(Evidence {
                        kind: EvidenceKind::RankWitness,
                        base_pair: None,
                        detail: format!("profile unavailable: {e}"),
                    });
                    confirmed = false;
                }
            }
        }
        return ClassificationRecord {
            n,
            d,
            verdict: Verdict::Holds,
            evidence,
            caveat: None,
            confirmed,
            elapsed_ms: t0.elapsed().as_millis(),
        };
    }

    // (b) the degree-gap family bound: pure integer arithmetic
    if let Some(ev) = degree_gap_evidence_memo(n, d, stilde_memo) {
        return ClassificationRecord {
            n,
            d,
            verdict: Verdict::Fails,
            evidence: vec![Evidence {
                kind: ev.kind,
                base_pair: Some(ev.base_pair),
                detail: ev.detail,
            }],
            caveat: None,
            confirmed: true,
            elapsed_ms: t0.elapsed().as_millis(),
        };
    }

    // (c) sporadic certificate: the sandwich pins the socle value of the
    // reduced ring away from the expected series
    if let Some(case) = find_case(n - 1, n + 1, d) {
        let scales: &[u64] = match opts.confirm {
            ConfirmLevel::Fast => &[1],
            ConfirmLevel::Full => &[1, 2],
        };
        let mut evidence = Vec::new();
        let mut all_matched = true;
        let mut runs = 0usize;
        for field in &opts.primes {
            for &scale in scales {
                let opts_s = SandwichOptions {
                    family_cap: opts.family_cap,
                    dense_cross_check: false,
                    scale,
                    ..Default::default()
                };
                match sporadic_sandwich(case, field, cache, &opts_s) {
                    Ok(rep) => {
                        // the refutation needs the certified socle value to
                        // differ from the expected-series coefficient
                        all_matched &= rep.matched && rep.target as i64 != rep.bracket_coeff;
                        runs += 1;
                        evidence.push(Evidence {
                            kind: EvidenceKind::SporadicCertificate,
                            base_pair: Some((case.n, case.d)),
                            detail: format!(
                                "socle value {} of the {}-variable ring certified (span {} = quotient {}) and differs from the expected coefficient {} at degree {} (p = {}, scale {})",
                                rep.target, case.n, rep.span, rep.quotient, rep.bracket_coeff, rep.socle, field.modulus(), scale
                            ),
                        });
                    }
                    Err(e) => {
                        all_matched = false;
                        evidence.push(Evidence {
                            kind: EvidenceKind::SporadicCertificate,
                            base_pair: Some((case.n, case.d)),
                            detail: format!("sandwich failed at p = {}: {e}", field.modulus()),
                        });
                    }
                }
            }
        }
        let confirmed = all_matched && runs >= 4;
        let verdict = if all_matched && runs > 0 {
            Verdict::Fails
        } else {
            Verdict::Undetermined
        };
        let caveat = if verdict == Verdict::Fails && !confirmed {
            Some(format!(
                "sandwich closed in {runs} run(s); re-confirmation at 2 moduli x 2 scales not performed (a closed sandwich already certifies characteristic zero)"
            ))
        } else {
            None
        };
        return ClassificationRecord {
            n,
            d,
            verdict,
            evidence,
            caveat,
            confirmed,
            elapsed_ms: t0.elapsed().as_millis(),
        };
    }

    // (d) direct rank profile at seeded specializations
    let mut evidence = Vec::new();
    for (k, field) in opts.primes.iter().enumerate() {
        let spec = match IdealSpec::random(n, n + 1, d, Seed(opts.seed.0 ^ (k as u64) << 8), field) {
            Ok(s) => s,
            Err(e) => {
                evidence.push(Evidence {
                    kind: EvidenceKind::RankWitness,
                    base_pair: None,
                    detail: format!("specialization failed: {e}"),
                });
                continue;
            }
        };
        match wlp_rank_profile(&spec, field, opts.seed) {
            Ok(profile) if profile.all_maximal() => {
                evidence.push(Evidence {
                    kind: EvidenceKind::RankWitness,
                    base_pair: None,
                    detail: format!(
                        "maximal rank profile at a seeded specialization (p = {}); generic by semicontinuity",
                        field.modulus()
                    ),
                });
                return ClassificationRecord {
                    n,
                    d,
                    verdict: Verdict::Holds,
                    evidence,
                    caveat: None,
                    confirmed: true,
                    elapsed_ms: t0.elapsed().as_millis(),
                };
            }
            Ok(profile) => {
                evidence.push(Evidence {
                    kind: EvidenceKind::RankWitness,
                    base_pair: None,
                    detail: format!(
                        "profile deficient at degrees {:?} (p = {}): evidence of failure, not a proof",
                        profile.verdict,
                        field.modulus()
                    ),
                });
            }
            Err(e) => {
                evidence.push(Evidence {
                    kind: EvidenceKind::RankWitness,
                    base_pair: None,
                    detail: format!("profile unavailable: {e}"),
                });
            }
        }
    }

    // (e) nothing decided the pair
    ClassificationRecord {
        n,
        d,
        verdict: Verdict::Undetermined,
        evidence,
        caveat: Some("no deciding evidence on this pair".into()),
        confirmed: false,
        elapsed_ms: t0.elapsed().as_millis(),
    }
}

/// Classify the whole grid 1..=n_max x 1..=d_max with shared memoization.
pub fn classify_grid(
    n_max: u32,
    d_max: u32,
    opts: &ClassifyOptions,
    cache: Option<&DimCache>,
) -> Vec<ClassificationRecord> {
    let mut memo = HashMap::new();
    let mut out = Vec::new();
    for n in 1..=n_max {
        for d in 1..=d_max {
            out.push(classify_with_memo(n, d, opts, cache, &mut memo));
        }
    }
    out
}

/// The expected verdict from the established classification: holds exactly
/// for n <= 3, d = 1, and the four exceptional pairs.
pub fn expected_verdict(n: u32, d: u32) -> Verdict {
    if n <= 3 || d == 1 || matches!((n, d), (4, 2) | (5, 2) | (5, 3) | (7, 2)) {
        Verdict::Holds
    } else {
        Verdict::Fails
    }
}
