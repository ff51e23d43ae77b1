//! Command-line driver for the weak Lefschetz property verifier.
//!
//! Subcommands: `series` (expected truncated series), `sdeg` (socle degree
//! and minimal shift tables), `hilbert` (specialized Hilbert series), `wlp`
//! (multiplication rank profile), `witness` (socle-degree witness),
//! `sporadic` (one of the six certified socle sandwiches) and `classify`
//! (the grid driver).
//!
//! Every global flag can also be set through an environment variable with
//! the `WLP_` prefix (`WLP_PRIME`, `WLP_SEED`, `WLP_SPEC`, `WLP_FORMAT`,
//! `WLP_CACHE`, `WLP_JOBS`).
//!
//! Exit codes: 0 success (and consistency with `--expect` when given),
//! 1 undetermined or mismatched verdicts, 2 internal verification failure.

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use wlp_core::cache::DimCache;
use wlp_core::certificate::{find_case, sporadic_sandwich, SandwichOptions, SPORADIC_CASES};
use wlp_core::classify::{classify_grid, ClassifyOptions, ConfirmLevel, Verdict};
use wlp_core::delta::{stilde, stilde_raw};
use wlp_core::field::{PrimeField, Seed, DEFAULT_PRIMES};
use wlp_core::hilbert::{hilbert_series_of, wlp_rank_profile, IdealSpec};
use wlp_core::report::{parse_json, render, ReportFormat};
use wlp_core::series::{froberg_bracket, s_formula};
use wlp_core::witness::degree_witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SpecKind {
    /// forms on the moment curve with parameters 0, 1, 2, ...
    Moment,
    /// seeded uniform random coefficients
    Random,
}

#[derive(Parser, Debug)]
#[command(
    name = "wlp",
    version,
    about = "Verifies the weak Lefschetz property for uniform powers of general linear forms"
)]
struct Cli {
    /// Prime modulus; repeat or comma-separate for several
    #[arg(long = "prime", global = true, env = "WLP_PRIME", value_delimiter = ',')]
    primes: Vec<u64>,

    /// Seed for every randomized choice
    #[arg(long, global = true, env = "WLP_SEED", default_value_t = 1)]
    seed: u64,

    /// Specialization family for hilbert/wlp
    #[arg(long, global = true, env = "WLP_SPEC", value_enum, default_value_t = SpecKind::Moment)]
    spec: SpecKind,

    /// Output format: json or markdown
    #[arg(long, global = true, env = "WLP_FORMAT", default_value = "markdown")]
    format: String,

    /// Append-only dimension cache file
    #[arg(long, global = true, env = "WLP_CACHE")]
    cache: Option<PathBuf>,

    /// Worker threads (default: all cores)
    #[arg(long, global = true, env = "WLP_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Expected (bracket-truncated) series for m forms of degree d in n variables
    Series {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
        /// compute the raw expansion up to this degree instead of truncating
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Socle degree s(n,d) and minimal shift tables
    Sdeg {
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[arg(long, default_value_t = 6)]
        d_max: u32,
    },
    /// Hilbert series of m d-th powers in n variables at a specialization
    Hilbert {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
    },
    /// Rank profile of multiplication by a general linear form (m = n+1)
    Wlp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// Socle-degree witness for n+2 powers (construction + verification)
    Witness {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        d: u32,
    },
    /// One of the six certified socle sandwiches
    Sporadic {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        d: u32,
        /// also compute the quotient at the default moment specialization
        #[arg(long)]
        cross_check: bool,
        /// confirm at two orbit scales per modulus
        #[arg(long)]
        full: bool,
    },
    /// Classify the grid 1..=n-max x 1..=d-max
    Classify {
        #[arg(long, default_value_t = 11)]
        n_max: u32,
        #[arg(long, default_value_t = 6)]
        d_max: u32,
        /// newline-delimited JSON records to compare verdicts against
        #[arg(long)]
        expect: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ConfirmArg::Fast)]
        confirm: ConfirmArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ConfirmArg {
    Fast,
    Full,
}

fn fields_from(primes: &[u64]) -> Result<Vec<PrimeField>> {
    let list = if primes.is_empty() {
        DEFAULT_PRIMES.to_vec()
    } else {
        primes.to_vec()
    };
    list.into_iter()
        .map(|p| PrimeField::new(p).map_err(|e| anyhow!("bad --prime {p}: {e}")))
        .collect()
}

fn main() -> ExitCode {
    // dying quietly on a closed pipe beats a panic from println!
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring worker threads")?;
    }
    let fields = fields_from(&cli.primes)?;
    let seed = Seed(cli.seed);
    let format: ReportFormat = cli.format.parse().map_err(|e: String| anyhow!(e))?;
    let cache = match &cli.cache {
        Some(path) => Some(DimCache::open(path).context("opening cache")?),
        None => None,
    };

    match cli.cmd {
        Cmd::Series { n, d, m, cap } => {
            let s = froberg_bracket(n, &vec![d; m as usize], cap)?;
            match format {
                ReportFormat::Json => {
                    println!(
                        "{}",
                        serde_json::json!({
                            "n": n, "d": d, "m": m,
                            "coefficients": s.coeffs_i64(),
                            "truncated": s.truncated(),
                        })
                    );
                }
                ReportFormat::Markdown => {
                    println!("expected series for {m} forms of degree {d} in {n} variables:");
                    println!("{s}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sdeg { n_max, d_max } => {
            if format == ReportFormat::Markdown {
                println!("| n | d | s(n,d) | s~(n,d) | s~ raw |");
                println!("|---|---|--------|---------|--------|");
            }
            for n in 1..=n_max {
                for d in 1..=d_max {
                    let s = s_formula(n, d);
                    let st = stilde(n, d).ok();
                    let raw = stilde_raw(n, d).ok();
                    match format {
                        ReportFormat::Markdown => {
                            let st_s = st.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                            let raw_s = raw.map(|v| v.to_string()).unwrap_or_else(|| "-".into());
                            println!("| {n} | {d} | {s} | {st_s} | {raw_s} |");
                        }
                        ReportFormat::Json => {
                            println!(
                                "{}",
                                serde_json::json!({
                                    "n": n, "d": d, "s": s,
                                    "stilde_doubled": st.map(|v| v.doubled()),
                                    "stilde_raw_doubled": raw.map(|v| v.doubled()),
                                })
                            );
                        }
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Hilbert { n, m, d } => {
            let mut series_by_prime = Vec::new();
            for field in &fields {
                let spec = build_spec(cli.spec, n, m, d, seed, field)?;
                let series = hilbert_series_of(&spec, field, seed)?;
                series_by_prime.push((field.modulus(), series));
            }
            let first = series_by_prime[0].1.clone();
            let agree = series_by_prime.iter().all(|(_, s)| *s == first);
            match format {
                ReportFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": n, "m": m, "d": d,
                        "series": first,
                        "primes": series_by_prime.iter().map(|(p, _)| *p).collect::<Vec<_>>(),
                        "agree_across_primes": agree,
                    })
                ),
                ReportFormat::Markdown => {
                    let terms: Vec<String> = first
                        .iter()
                        .enumerate()
                        .map(|(i, c)| match i {
                            0 => c.to_string(),
                            1 => format!("{c} t"),
                            _ => format!("{c} t^{i}"),
                        })
                        .collect();
                    println!("Hilbert series of {m} general {d}-th powers in {n} variables:");
                    println!("{}", terms.join(" + "));
                    println!(
                        "(computed mod {}; agreement across moduli: {agree})",
                        series_by_prime
                            .iter()
                            .map(|(p, _)| p.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                }
            }
            Ok(if agree {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Wlp { n, d } => {
            let field = fields[0];
            let spec = build_spec(cli.spec, n, n + 1, d, seed, &field)?;
            let profile = wlp_rank_profile(&spec, &field, seed)?;
            match format {
                ReportFormat::Json => println!("{}", serde_json::to_string(&profile)?),
                ReportFormat::Markdown => {
                    println!("| degree | dim A_i | dim A_(i+1) | rank | maximal |");
                    println!("|--------|---------|-------------|------|---------|");
                    for r in &profile.rows {
                        println!(
                            "| {} | {} | {} | {} | {} |",
                            r.degree, r.dim_from, r.dim_to, r.rank, r.maximal
                        );
                    }
                    println!(
                        "verdict: {}",
                        if profile.all_maximal() {
                            "all maximal (certifies the generic property)".to_string()
                        } else {
                            format!("{:?}", profile.verdict)
                        }
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Witness { n, d } => {
            let field = fields[0];
            let spec = IdealSpec::moment_default(n, n + 2, d, &field);
            let (form, rep) = degree_witness(&spec, &field)?;
            match format {
                ReportFormat::Json => println!(
                    "{}",
                    serde_json::json!({
                        "n": n, "d": d,
                        "degree": rep.degree,
                        "expected": s_formula(n, d),
                        "construction": rep.construction,
                        "terms": rep.terms,
                        "verified": rep.verified,
                        "fallback_used": rep.fallback_used,
                    })
                ),
                ReportFormat::Markdown => {
                    println!(
                        "witness of degree {} (= s({n},{d}) = {}), {} terms, construction {}, verified: {}",
                        rep.degree,
                        s_formula(n, d),
                        form.num_terms(),
                        rep.construction,
                        rep.verified
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Sporadic {
            n,
            m,
            d,
            cross_check,
            full,
        } => {
            let case = find_case(n, m, d).ok_or_else(|| {
                anyhow!(
                    "({n},{m},{d}) is not one of the six sporadic signatures: {:?}",
                    SPORADIC_CASES
                        .iter()
                        .map(|c| (c.n, c.m, c.d))
                        .collect::<Vec<_>>()
                )
            })?;
            let scales: Vec<u64> = if full { vec![1, 2] } else { vec![1] };
            let mut all_matched = true;
            for field in &fields {
                for &scale in &scales {
                    let opts = SandwichOptions {
                        dense_cross_check: cross_check,
                        scale,
                        ..Default::default()
                    };
                    match sporadic_sandwich(case, field, cache.as_ref(), &opts) {
                        Ok(rep) => {
                            all_matched &= rep.matched;
                            match format {
                                ReportFormat::Json => println!(
                                    "{}",
                                    serde_json::json!({
                                        "n": rep.n, "m": rep.m, "d": rep.d,
                                        "socle": rep.socle,
                                        "target": rep.target,
                                        "span": rep.span,
                                        "quotient": rep.quotient,
                                        "quotient_spec": rep.quotient_spec,
                                        "dense_quotient": rep.dense_quotient,
                                        "bracket_coeff": rep.bracket_coeff,
                                        "matched": rep.matched,
                                        "prime": field.modulus(),
                                        "elapsed_ms": rep.elapsed_ms,
                                    })
                                ),
                                ReportFormat::Markdown => println!(
                                    "p={} scale={scale}: socle degree {} span {} quotient {} (target {}, expected-series coefficient {}) matched={} [{} ms]",
                                    field.modulus(),
                                    rep.socle,
                                    rep.span,
                                    rep.quotient,
                                    rep.target,
                                    rep.bracket_coeff,
                                    rep.matched,
                                    rep.elapsed_ms
                                ),
                            }
                        }
                        Err(e) => {
                            eprintln!("p={}: {e}", field.modulus());
                            all_matched = false;
                        }
                    }
                }
            }
            Ok(if all_matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Cmd::Classify {
            n_max,
            d_max,
            expect,
            confirm,
        } => {
            let opts = ClassifyOptions {
                primes: fields.clone(),
                seed,
                confirm: match confirm {
                    ConfirmArg::Fast => ConfirmLevel::Fast,
                    ConfirmArg::Full => ConfirmLevel::Full,
                },
                family_cap: 200_000,
            };
            let records = classify_grid(n_max, d_max, &opts, cache.as_ref());
            print!("{}", render(&records, format));
            let undetermined = records
                .iter()
                .filter(|r| r.verdict == Verdict::Undetermined)
                .count();
            let mut mismatches = 0usize;
            if let Some(path) = expect {
                let text = std::fs::read_to_string(&path)
                    .with_context(|| format!("reading expectations {path:?}"))?;
                let expected = parse_json(&text).context("parsing expectations")?;
                for exp in &expected {
                    if let Some(got) = records.iter().find(|r| r.n == exp.n && r.d == exp.d) {
                        if got.verdict != exp.verdict {
                            eprintln!(
                                "mismatch at ({}, {}): got {:?}, expected {:?}",
                                exp.n, exp.d, got.verdict, exp.verdict
                            );
                            mismatches += 1;
                        }
                    }
                }
            }
            if undetermined > 0 {
                eprintln!("{undetermined} undetermined pair(s)");
                return Ok(ExitCode::from(1));
            }
            if mismatches > 0 {
                return Ok(ExitCode::from(1));
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn build_spec(
    kind: SpecKind,
    n: u32,
    m: u32,
    d: u32,
    seed: Seed,
    field: &PrimeField,
) -> Result<IdealSpec> {
    match kind {
        SpecKind::Moment => Ok(IdealSpec::moment_default(n, m, d, field)),
        SpecKind::Random => Ok(IdealSpec::random(n, m, d, seed, field)?),
    }
}
