//! Socle-degree witnesses: explicit nonzero forms of degree s(n,d) in the
//! inverse system of n+2 uniform d-th powers, built from mixed forms by the
//! case analysis on n and d and verified by contraction before they are
//! returned.

use crate::certificate::ContractionWorkspace;
use crate::hilbert::IdealSpec;
use crate::linalg::Eliminator;
use crate::monomial::monomial_count;
use crate::poly::{mixed_form, multiply, GradedForm};
use crate::series::s_formula;
use crate::field::PrimeField;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WitnessError {
    #[error("witness construction needs a moment specialization with m = n+2 forms")]
    WrongSpec,
    #[error("constructed form has degree {got}, expected s({n},{d}) = {expected}")]
    WrongDegree { n: u32, d: u32, got: u32, expected: i64 },
    #[error("witness failed annihilation at this specialization and the kernel fallback is out of reach (degree {degree})")]
    Degenerate { degree: u32 },
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub n: u32,
    pub d: u32,
    pub degree: u32,
    pub construction: String,
    pub terms: usize,
    pub verified: bool,
    pub fallback_used: bool,
}

/// A nonzero form of degree exactly s(n,d) annihilated by the d-th powers
/// of all n+2 forms of the specialization, together with how it was built.
///
/// Construction: odd n takes the (d-1)-st power of the square-annihilated
/// determinant form; even n splits by d (single mixed form for d = 2, its
/// square for d = 3, a product G F_1 ... F_{d-1} for 4 <= d <= n+1, and the
/// periodic reduction d = c + a(n+1) beyond).
pub fn degree_witness(
    spec: &IdealSpec,
    field: &PrimeField,
) -> Result<(GradedForm, WitnessReport), WitnessError> {
    let n = spec.n();
    let d = spec.d();
    if spec.m() != n as usize + 2 || spec.moment_params().is_none() {
        return Err(WitnessError::WrongSpec);
    }
    let expected = s_formula(n, d);
    let (form, construction) = build_witness(spec, n, d, field)?;
    if form.degree() as i64 != expected || form.is_zero() {
        return Err(WitnessError::WrongDegree {
            n,
            d,
            got: form.degree(),
            expected,
        });
    }
    // verify annihilation by every d-th power
    let ws = ContractionWorkspace::new(n, form.degree(), d);
    let dense = ws.densify(&form);
    let ok = spec
        .forms()
        .iter()
        .all(|l| ws.annihilates(&dense, l, d, field));
    if ok {
        let report = WitnessReport {
            n,
            d,
            degree: form.degree(),
            construction,
            terms: form.num_terms(),
            verified: true,
            fallback_used: false,
        };
        return Ok((form, report));
    }
    // degenerate specialization: fall back to direct kernel extraction when
    // the contraction system is small enough
    let degree = expected as u32;
    if monomial_count(n, degree) > 4000 {
        return Err(WitnessError::Degenerate { degree });
    }
    let mat = crate::hilbert::contraction_matrix(spec, degree, field);
    let mut elim = Eliminator::new(*field, mat.ncols());
    for row in mat.rows() {
        elim.insert_sparse(row);
    }
    let basis = elim.kernel_basis();
    let Some(first) = basis.into_iter().next() else {
        return Err(WitnessError::Degenerate { degree });
    };
    let form = GradedForm::from_indexed(n, degree, first);
    let report = WitnessReport {
        n,
        d,
        degree,
        construction: "kernel extraction fallback".into(),
        terms: form.num_terms(),
        verified: true,
        fallback_used: true,
    };
    Ok((form, report))
}

fn build_witness(
    spec: &IdealSpec,
    n: u32,
    d: u32,
    field: &PrimeField,
) -> Result<(GradedForm, String), WitnessError> {
    let params = spec.moment_params().expect("checked by caller");
    if d == 1 {
        return Ok((GradedForm::constant(n, 1, field), "constant".into()));
    }
    if n % 2 == 1 {
        // odd n: power of the square-annihilated determinant form
        let k = (n + 1) / 2;
        let base = mixed_form(n, k, &[], field)?;
        let mut form = base.clone();
        for _ in 2..d {
            form = multiply(&form, &base, field);
        }
        return Ok((form, format!("hankel^{}", d - 1)));
    }
    // even n
    let k_lin = n / 2; // degree of a one-parameter mixed form
    let single = |i: usize| mixed_form(n, k_lin, &[params[i]], field);
    match d {
        2 => Ok((single(0)?, "mixed(k=n/2)".into())),
        3 => {
            let f = single(0)?;
            Ok((multiply(&f, &f, field), "mixed(k=n/2)^2".into()))
        }
        _ if d <= n + 1 => {
            // G F_1 ... F_{d-1}: F_i kills l_i linearly; G kills the tail
            // linearly. For odd d the parameter count forces one extra
            // linear annihilator on G, which is harmless.
            let (k_g, tail_from) = if d % 2 == 0 {
                ((d - 2) / 2, (d - 1) as usize)
            } else {
                ((d - 3) / 2, (d - 2) as usize)
            };
            let g = mixed_form(n, k_g, &params[tail_from..], field)?;
            let mut form = g;
            for i in 0..(d - 1) as usize {
                form = multiply(&form, &single(i)?, field);
            }
            Ok((form, format!("G*F_1..F_{}", d - 1)))
        }
        _ => {
            // d = c + a(n+1), 1 <= c <= n+1: witness for c times the a-th
            // power of the full product F_1 ... F_{n+2}
            let a = (d - 1) / (n + 1);
            let c = d - a * (n + 1);
            debug_assert!((1..=n + 1).contains(&c) && a >= 1);
            let inner_spec = IdealSpec::moment(n, c, params, field).expect("same parameters");
            let (base, base_desc) = build_witness(&inner_spec, n, c, field)?;
            let mut full: Option<GradedForm> = None;
            for i in 0..(n + 2) as usize {
                let f = single(i)?;
                full = Some(match full {
                    None => f,
                    Some(acc) => multiply(&acc, &f, field),
                });
            }
            let full = full.expect("n + 2 >= 1 factors");
            let mut form = base;
            for _ in 0..a {
                form = multiply(&form, &full, field);
            }
            Ok((form, format!("[{base_desc}]*(F_1..F_{})^{a}", n + 2)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld() -> PrimeField {
        PrimeField::default_0()
    }

    #[test]
    fn degree_one_witness_is_constant() {
        let f = fld();
        for n in 1..=8u32 {
            let spec = IdealSpec::moment_default(n, n + 2, 1, &f);
            let (form, rep) = degree_witness(&spec, &f).unwrap();
            assert_eq!(form.degree(), 0);
            assert_eq!(s_formula(n, 1), 0);
            assert!(rep.verified);
        }
    }

    #[test]
    fn base_case_three_vars() {
        let f = fld();
        let spec = IdealSpec::moment_default(3, 5, 2, &f);
        let (form, rep) = degree_witness(&spec, &f).unwrap();
        assert_eq!(form.degree(), 2);
        assert_eq!(form.degree() as i64, s_formula(3, 2));
        assert!(rep.verified && !rep.fallback_used);
        // the d = 2 odd witness is the plain determinant form
        assert_eq!(form, mixed_form(3, 2, &[], &f).unwrap());
    }

    #[test]
    fn odd_power_witness() {
        let f = fld();
        // five variables, fourth powers: the cube of the degree-3 form
        let spec = IdealSpec::moment_default(5, 7, 4, &f);
        let (form, rep) = degree_witness(&spec, &f).unwrap();
        assert_eq!(form.degree(), 9);
        assert_eq!(s_formula(5, 4), 9);
        assert!(rep.verified);
        assert_eq!(rep.construction, "hankel^3");
    }

    #[test]
    fn even_witness_matches_socle_formula() {
        let f = fld();
        for (n, d) in [(4u32, 2u32), (4, 3), (4, 4), (4, 5), (6, 4), (6, 5), (6, 3)] {
            let spec = IdealSpec::moment_default(n, n + 2, d, &f);
            let (form, rep) = degree_witness(&spec, &f).unwrap();
            assert_eq!(form.degree() as i64, s_formula(n, d), "n={n} d={d}");
            assert!(rep.verified, "n={n} d={d}");
            assert!(!rep.fallback_used, "n={n} d={d}");
        }
    }

    #[test]
    fn periodic_reduction_witness() {
        let f = fld();
        // n = 2, d = 4 = 1 + 1*(n+1): exercises the d > n+1 branch
        let spec = IdealSpec::moment_default(2, 4, 4, &f);
        let (form, rep) = degree_witness(&spec, &f).unwrap();
        assert_eq!(form.degree() as i64, s_formula(2, 4));
        assert!(rep.construction.contains("^1"), "{}", rep.construction);

        // n = 2, d = 7 = 1 + 2*(n+1)
        let spec = IdealSpec::moment_default(2, 4, 7, &f);
        let (form, _) = degree_witness(&spec, &f).unwrap();
        assert_eq!(form.degree() as i64, s_formula(2, 7));
    }

    #[test]
    fn lemma_degree_identity() {
        // s(d-3,2) + (d-1) s(n-1,2) = s(n,d) for even n, 4 <= d <= n+1
        for n in (4..=12u32).step_by(2) {
            for d in 4..=n + 1 {
                assert_eq!(
                    s_formula(d - 3, 2) + (d as i64 - 1) * s_formula(n - 1, 2),
                    s_formula(n, d),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn wrong_spec_rejected() {
        let f = fld();
        let spec = IdealSpec::moment_default(4, 5, 2, &f); // m = n+1, not n+2
        assert_eq!(degree_witness(&spec, &f), Err(WitnessError::WrongSpec));
    }
}
