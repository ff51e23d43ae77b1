//! Acceptance suite: the nine end-to-end checks the project is judged by,
//! run in order with one pass/fail line per criterion. The heavy socle
//! sandwiches run first among the slow items and populate the dimension
//! cache that the final classification run then reuses.
//!
//! Run with `cargo test -p wlp-cli --test acceptance -- --nocapture`
//! to watch the per-criterion lines.

use std::path::PathBuf;
use std::process::Command;
use std::time::Instant;
use wlp_core::cache::DimCache;
use wlp_core::certificate::{find_case, sporadic_sandwich, SandwichOptions};
use wlp_core::classify::{expected_verdict, Verdict};
use wlp_core::delta::{almost_classification_grid, check_window_conditions, stilde};
use wlp_core::field::{PrimeField, Seed};
use wlp_core::hilbert::{
    generic_dim_estimate, hilbert_series_of, inverse_dim, quotient_dim, wlp_rank_profile,
    IdealSpec,
};
use wlp_core::monomial::monomial_count;
use wlp_core::poly::{contract, general_position_form, hankel_form, mixed_form, moment_form};
use wlp_core::series::{froberg_bracket, s_formula, series_degree, HalfInt};
use wlp_core::witness::degree_witness;

struct Outcome {
    name: &'static str,
    pass: bool,
    detail: String,
    secs: f64,
}

fn run_criterion(
    results: &mut Vec<Outcome>,
    name: &'static str,
    f: impl FnOnce() -> Result<String, String>,
) {
    let t0 = Instant::now();
    let (pass, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    let secs = t0.elapsed().as_secs_f64();
    println!(
        "criterion {name}: {} ({secs:.1}s) {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    results.push(Outcome {
        name,
        pass,
        detail,
        secs,
    });
}

fn cache_path() -> PathBuf {
    PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("wlp-acceptance-cache.jsonl")
}

fn fields() -> [PrimeField; 2] {
    [PrimeField::default_0(), PrimeField::default_1()]
}

#[test]
fn acceptance() {
    let mut results = Vec::new();
    let cache = DimCache::open(&cache_path()).expect("cache opens");

    run_criterion(&mut results, "1 (sporadic Hilbert series via CLI)", || {
        criterion_1()
    });
    run_criterion(&mut results, "3 (expected-series leading terms)", || {
        criterion_3()
    });
    run_criterion(&mut results, "5 (s and s~ table)", || criterion_5());
    run_criterion(&mut results, "6 (coarse classification sweep)", || {
        criterion_6()
    });
    run_criterion(&mut results, "4 (rank profiles of the holding pairs)", || {
        criterion_4()
    });
    run_criterion(&mut results, "8 (property suites)", || criterion_8());
    run_criterion(&mut results, "7 (socle degree grid)", || criterion_7());
    run_criterion(&mut results, "2 (socle sandwiches)", || criterion_2(&cache));
    run_criterion(&mut results, "9 (end-to-end classification)", || {
        criterion_9(&cache)
    });

    println!("--- acceptance summary ---");
    for r in &results {
        println!(
            "criterion {}: {} ({:.1}s)",
            r.name,
            if r.pass { "PASS" } else { "FAIL" },
            r.secs
        );
    }
    let failed: Vec<&Outcome> = results.iter().filter(|r| !r.pass).collect();
    assert!(
        failed.is_empty(),
        "failed criteria: {:?}",
        failed
            .iter()
            .map(|r| format!("{}: {}", r.name, r.detail))
            .collect::<Vec<_>>()
    );
}

fn criterion_1() -> Result<String, String> {
    let cases: [(u32, u32, u32, &[u64]); 3] = [
        (4, 6, 5, &[1, 4, 10, 20, 35, 50, 60, 60, 45, 14]),
        (6, 8, 3, &[1, 6, 21, 48, 78, 84, 43]),
        (8, 10, 2, &[1, 8, 26, 40, 16]),
    ];
    for (n, m, d, expect) in cases {
        let out = Command::new(env!("CARGO_BIN_EXE_wlp"))
            .args([
                "--format",
                "json",
                "hilbert",
                "--n",
                &n.to_string(),
                "--m",
                &m.to_string(),
                "--d",
                &d.to_string(),
            ])
            .output()
            .map_err(|e| format!("spawning the CLI: {e}"))?;
        if !out.status.success() {
            return Err(format!(
                "hilbert ({n},{m},{d}) exited with {:?}: {}",
                out.status.code(),
                String::from_utf8_lossy(&out.stderr)
            ));
        }
        let v: serde_json::Value = serde_json::from_slice(&out.stdout)
            .map_err(|e| format!("parsing CLI output: {e}"))?;
        let series: Vec<u64> = v["series"]
            .as_array()
            .ok_or("missing series")?
            .iter()
            .map(|x| x.as_u64().unwrap())
            .collect();
        if series != expect {
            return Err(format!("({n},{m},{d}): got {series:?}, expected {expect:?}"));
        }
        if v["agree_across_primes"] != serde_json::Value::Bool(true) {
            return Err(format!("({n},{m},{d}): moduli disagree"));
        }
        if v["primes"].as_array().map(|a| a.len()) != Some(2) {
            return Err("expected two moduli".into());
        }
    }
    Ok("three series exact at both moduli".into())
}

fn criterion_2(cache: &DimCache) -> Result<String, String> {
    let mut log = Vec::new();
    for (n, m, d, cross) in [
        (8u32, 10u32, 3u32, true),
        (10, 12, 2, true),
        (10, 12, 3, false), // dense elimination at 92378 columns is out of reach
    ] {
        let case = find_case(n, m, d).ok_or("case table")?;
        for field in fields() {
            let opts = SandwichOptions {
                dense_cross_check: cross,
                ..Default::default()
            };
            let rep =
                sporadic_sandwich(case, &field, Some(cache), &opts).map_err(|e| e.to_string())?;
            if !rep.matched {
                return Err(format!(
                    "({n},{m},{d}) p={}: span {} quotient {} dense {:?} target {}",
                    field.modulus(),
                    rep.span,
                    rep.quotient,
                    rep.dense_quotient,
                    rep.target
                ));
            }
            log.push(format!(
                "({n},{m},{d})@{}: span=quotient={}",
                field.modulus(),
                rep.target
            ));
        }
    }
    // the generic-dimension estimator sees the same value from a random
    // specialization
    let fs = fields();
    let est = generic_dim_estimate(8, 10, 3, 8, 1, &fs[..1], Seed(424242))
        .map_err(|e| e.to_string())?;
    if est.value != 171 {
        return Err(format!("generic estimate at (8,10,3,8): {}", est.value));
    }
    Ok(log.join("; ") + "; random-spec estimate 171")
}

fn criterion_3() -> Result<String, String> {
    let expect = [
        (4u32, 5u32, 9usize, 10i64),
        (6, 3, 6, 42),
        (8, 2, 4, 15),
        (8, 3, 8, 135),
        (10, 2, 5, 22),
        (10, 3, 10, 88),
    ];
    for (n, d, deg, lead) in expect {
        let s = froberg_bracket(n, &vec![d; n as usize + 2], None).map_err(|e| e.to_string())?;
        let got_deg = series_degree(&s).map_err(|e| e.to_string())?;
        let got_lead = s.coeffs_i64()[got_deg];
        if got_deg != deg || got_lead != lead {
            return Err(format!(
                "(n={n},d={d}): degree {got_deg} lead {got_lead}, expected {deg}/{lead}"
            ));
        }
    }
    Ok("six leading terms exact".into())
}

fn criterion_4() -> Result<String, String> {
    let field = fields()[0];
    for (n, d) in [(4u32, 2u32), (5, 2), (5, 3), (7, 2)] {
        let spec = IdealSpec::random(n, n + 1, d, Seed(1), &field).map_err(|e| e.to_string())?;
        let profile = wlp_rank_profile(&spec, &field, Seed(1)).map_err(|e| e.to_string())?;
        if !profile.all_maximal() {
            return Err(format!("({n},{d}): {:?}", profile.verdict));
        }
    }
    Ok("all four profiles maximal at a seeded specialization".into())
}

fn criterion_5() -> Result<String, String> {
    let table = [
        (5u32, 2u32, 3i64, 2i64),
        (6, 5, 13, 12),
        (12, 2, 6, 5),
        (12, 3, 12, 11),
    ];
    for (n, d, s, st) in table {
        if s_formula(n, d) != s {
            return Err(format!("s({n},{d}) != {s}"));
        }
        let got = stilde(n, d).map_err(|e| e.to_string())?;
        if got != HalfInt::from_int(st) {
            return Err(format!("s~({n},{d}) = {got}, expected {st}"));
        }
    }
    Ok("four (s, s~) pairs exact".into())
}

fn criterion_6() -> Result<String, String> {
    let got = almost_classification_grid((4, 13), (2, 40));
    let expect: Vec<(u32, u32)> = vec![
        (4, 2),
        (5, 2),
        (5, 3),
        (5, 5),
        (7, 2),
        (7, 3),
        (9, 2),
        (9, 3),
        (11, 2),
        (11, 3),
    ];
    if got != expect {
        return Err(format!("exceptions {got:?}"));
    }
    Ok("exactly the ten exceptional pairs over 4<=n<=13, 2<=d<=40".into())
}

fn criterion_7() -> Result<String, String> {
    let field = fields()[0];
    let mut witnesses = 0usize;
    let mut series_checked = 0usize;
    let mut degree_checked = 0usize;
    let mut theorem_only = Vec::new();
    for n in 1..=8u32 {
        for d in 1..=6u32 {
            let spec = IdealSpec::moment_default(n, n + 2, d, &field);
            // witness: generic socle value >= 1 (specializing a span of
            // parameter-polynomial forms can only lower its dimension)
            let (_, rep) = degree_witness(&spec, &field)
                .map_err(|e| format!("witness ({n},{d}): {e}"))?;
            if rep.degree as i64 != s_formula(n, d) || !rep.verified {
                return Err(format!("witness ({n},{d}): {rep:?}"));
            }
            witnesses += 1;

            let socle = s_formula(n, d) as u32;
            let next_cols = monomial_count(n, socle + 1);
            if next_cols <= 6500 {
                // full series at the default moment specialization
                let series = hilbert_series_of(&spec, &field, Seed(3))
                    .map_err(|e| format!("series ({n},{d}): {e}"))?;
                if series.len() as i64 - 1 != s_formula(n, d) {
                    return Err(format!(
                        "series degree ({n},{d}) = {}, expected {}",
                        series.len() - 1,
                        s_formula(n, d)
                    ));
                }
                let last = *series.last().unwrap();
                if n % 2 == 1 && last != 1 {
                    return Err(format!("odd socle value ({n},{d}) = {last}"));
                }
                if n % 2 == 0 && d == 2 && last != 1 << (n / 2) {
                    return Err(format!("even d=2 socle value ({n},{d}) = {last}"));
                }
                series_checked += 1;
            } else if next_cols / (n as u64 + 2) <= 4500 {
                // too wide for dense elimination, but the weight classes of
                // an orbit specialization are small: a zero dimension at
                // socle+1 certifies the generic degree upper bound, and the
                // witness above is the matching lower bound
                let orbit = IdealSpec::orbit(n, n + 2, d, 1, &field)
                    .expect("distinct orbit parameters");
                let above = quotient_dim(&orbit, socle + 1, &field, Seed(3));
                if above != 0 {
                    return Err(format!(
                        "({n},{d}): dimension {above} above the socle degree"
                    ));
                }
                degree_checked += 1;
            } else {
                // the remaining upper bounds ride on the established degree
                // theorem; the constructive lower half is still verified
                theorem_only.push((n, d));
            }
        }
    }
    Ok(format!(
        "{witnesses} witnesses verified; full series exact on {series_checked} cells; degree pinned by blocked elimination on {degree_checked} more; cited upper bound on {theorem_only:?}"
    ))
}

fn criterion_8() -> Result<String, String> {
    let field = fields()[0];
    // duality on the stated grid
    for n in 2..=6u32 {
        for m in [n + 1, n + 2] {
            for d in 2..=4u32 {
                let spec = IdealSpec::moment_default(n, m, d, &field);
                let socle_cap = s_formula(n, d) as u32 + 1;
                for j in 0..=socle_cap {
                    let q = quotient_dim(&spec, j, &field, Seed(2));
                    let i = inverse_dim(&spec, j, &field, Seed(2));
                    if q != i {
                        return Err(format!("duality ({n},{m},{d}) at degree {j}: {q} vs {i}"));
                    }
                }
            }
        }
    }
    // window-condition induction step
    for n in 4..=8u32 {
        for d in 2..=8u32 {
            let hi = (n as i64) * (d as i64 - 1);
            for dbl in 0..=hi {
                let s = HalfInt::from_doubled(dbl);
                if check_window_conditions(n, d, s).all_ok() {
                    let s2 = HalfInt::from_doubled(dbl + d as i64 - 1);
                    if !check_window_conditions(n + 1, d, s2).all_ok() {
                        return Err(format!("induction fails at n={n} d={d} s={s}"));
                    }
                }
            }
        }
    }
    // base case up to degree 100
    for d in 2..=100u32 {
        let s = HalfInt::from_int(4 * (d as i64 - 1) / 3);
        if !check_window_conditions(4, d, s).all_ok() {
            return Err(format!("base case fails at d={d}"));
        }
    }
    // annihilation of the three determinantal forms at >= 20 random
    // contractions each
    use rand::Rng;
    let mut rng = Seed(99).rng(field.modulus(), 0xacc);
    let h = hankel_form(5, &field).map_err(|e| e.to_string())?;
    for _ in 0..20 {
        let l = moment_form(5, rng.gen_range(0..field.modulus()), &field);
        if !contract(&l, 2, &h, &field).is_zero() {
            return Err("hankel annihilation".into());
        }
    }
    let alphas: Vec<u64> = (0..6).collect();
    let mf = mixed_form(9, 2, &alphas, &field).map_err(|e| e.to_string())?;
    for &a in &alphas {
        if !contract(&moment_form(9, a, &field), 1, &mf, &field).is_zero() {
            return Err("mixed linear annihilation".into());
        }
    }
    for _ in 0..20 {
        let l = moment_form(9, rng.gen_range(0..field.modulus()), &field);
        if !contract(&l, 2, &mf, &field).is_zero() {
            return Err("mixed square annihilation".into());
        }
    }
    let gp = general_position_form(5, &[2, 3, 5, 7, 11], &field).map_err(|e| e.to_string())?;
    for k in 0..5usize {
        let mut coeffs = vec![0u64; 5];
        coeffs[k] = 1;
        let l = wlp_core::poly::LinearForm::new(coeffs, &field);
        if !contract(&l, 2, &gp.form, &field).is_zero() {
            return Err("general-position square annihilation".into());
        }
    }
    // determinant vs vandermonde-sum path agreement for n = 3, 5
    for n in [3u32, 5] {
        for trial in 0..10u64 {
            let mut a: Vec<u64> = Vec::new();
            let mut r = Seed(trial).rng(field.modulus(), 0xd0a1);
            while a.len() < n as usize {
                let c = r.gen_range(0..field.modulus());
                if !a.contains(&c) {
                    a.push(c);
                }
            }
            let g = general_position_form(n, &a, &field).map_err(|e| e.to_string())?;
            if g.path_scalar == 0 {
                return Err("path scalar zero".into());
            }
        }
    }
    Ok("duality, induction, base case, annihilation, dual-path checks all exact".into())
}

fn criterion_9(cache: &DimCache) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_wlp"))
        .args([
            "--format",
            "json",
            "--cache",
            cache.path().to_str().unwrap(),
            "classify",
            "--n-max",
            "11",
            "--d-max",
            "6",
        ])
        .output()
        .map_err(|e| format!("spawning the CLI: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "classify exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    let records = wlp_core::report::parse_json(&String::from_utf8_lossy(&out.stdout))
        .map_err(|e| format!("parsing records: {e}"))?;
    if records.len() != 11 * 6 {
        return Err(format!("{} records, expected 66", records.len()));
    }
    let mut holds = 0usize;
    for rec in &records {
        if rec.verdict == Verdict::Undetermined {
            return Err(format!("({}, {}) undetermined", rec.n, rec.d));
        }
        if rec.verdict != expected_verdict(rec.n, rec.d) {
            return Err(format!(
                "({}, {}): {:?}, expected {:?}",
                rec.n,
                rec.d,
                rec.verdict,
                expected_verdict(rec.n, rec.d)
            ));
        }
        if rec.verdict == Verdict::Holds {
            holds += 1;
        }
    }
    Ok(format!(
        "66 verdicts match the established classification ({holds} hold), zero undetermined"
    ))
}
