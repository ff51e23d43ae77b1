//! Certificate forms for the sporadic failures: products of mixed forms
//! prescribed by cover families, their verified annihilation, and the socle
//! sandwich that pins the generic Hilbert value between an inverse-system
//! span (lower bound) and a specialized quotient dimension (upper bound).
//!
//! Both bounds are exact mod-p statements that transfer to characteristic
//! zero: a span can only drop under specialization or reduction mod p, and
//! a quotient dimension can only grow, so when the two meet the generic
//! value is certified.

use crate::cache::{quotient_key, span_key, DimCache};
use crate::cover::{visit_complement_pairs, visit_cover_families, CoverFamily};
use crate::field::PrimeField;
use crate::hilbert::{quotient_dim_orbit, IdealSpec};
use crate::linalg::Eliminator;
use crate::monomial::{monomial_count, DegreeBasis};
use crate::poly::{mixed_form, multiply, GradedForm, LinearForm};
use crate::series::{froberg_bracket, s_formula};
use std::ops::ControlFlow;
use std::time::Instant;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CertError {
    #[error("certificate forms need moment-curve parameters")]
    NotMomentSpec,
    #[error("subset size {size} has no factor degree for n={n}: n+1-size must be even and positive")]
    Parity { size: usize, n: u32 },
    #[error("degenerate specialization: {0}")]
    Degenerate(String),
    #[error("a certificate form failed its annihilation check (family {family_index})")]
    VerificationFailure { family_index: usize },
    #[error("span target {target} not reached: achieved {achieved} after {families} families")]
    TargetNotReached {
        achieved: u64,
        target: u64,
        families: usize,
    },
    #[error(transparent)]
    Cover(#[from] crate::cover::CoverError),
    #[error(transparent)]
    Poly(#[from] crate::poly::PolyError),
}

/// Dense first-order contraction tables for one top degree: enough to apply
/// l^order for order <= depth without re-deriving monomial indices.
pub struct ContractionWorkspace {
    n: u32,
    top: u32,
    bases: Vec<DegreeBasis>, // degrees top, top-1, ..., top-depth
    tables: Vec<Vec<u32>>,   // divide table of bases[s], s < depth
}

impl ContractionWorkspace {
    pub fn new(n: u32, top: u32, depth: u32) -> Self {
        let depth = depth.min(top);
        let bases: Vec<DegreeBasis> = (0..=depth).map(|s| DegreeBasis::new(n, top - s)).collect();
        let tables: Vec<Vec<u32>> = bases[..depth as usize]
            .iter()
            .map(|b| b.divide_table())
            .collect();
        ContractionWorkspace { n, top, bases, tables }
    }

    pub fn top_degree(&self) -> u32 {
        self.top
    }

    pub fn top_len(&self) -> usize {
        self.bases[0].len()
    }

    /// Dense coefficient vector of a form of the top degree.
    pub fn densify(&self, form: &GradedForm) -> Vec<u64> {
        assert_eq!(form.degree(), self.top);
        let mut v = vec![0u64; self.bases[0].len()];
        for &(i, c) in form.terms() {
            v[i as usize] = c;
        }
        v
    }

    /// Does l^order annihilate the form with these top-degree coefficients?
    pub fn annihilates(
        &self,
        dense: &[u64],
        l: &LinearForm,
        order: u32,
        field: &PrimeField,
    ) -> bool {
        if order > self.top {
            return true; // derivatives of order beyond the degree vanish
        }
        assert!(order as usize <= self.tables.len());
        let n = self.n as usize;
        let mut cur = dense.to_vec();
        for s in 0..order as usize {
            let basis = &self.bases[s];
            let table = &self.tables[s];
            let mut next = vec![0u64; self.bases[s + 1].len()];
            for (vi, &c) in cur.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let e = &basis.exps[vi];
                for k in 0..n {
                    let lk = l.coeffs()[k];
                    if e[k] == 0 || lk == 0 {
                        continue;
                    }
                    let t = table[vi * n + k] as usize;
                    let term = field.mul(c, field.mul(lk, e[k] as u64));
                    next[t] = field.add(next[t], term);
                }
            }
            cur = next;
        }
        cur.iter().all(|&v| v == 0)
    }
}

/// Factor degree for a subset of the given size: a subset S prescribes the
/// unique degree-k form annihilated by the forms indexed by S and the
/// squares of everything on the curve, where |S| = n - 2k + 1.
pub fn factor_degree(n: u32, subset_size: usize) -> Result<u32, CertError> {
    let span = n as i64 + 1 - subset_size as i64;
    if span <= 0 || span % 2 != 0 {
        return Err(CertError::Parity {
            size: subset_size,
            n,
        });
    }
    Ok((span / 2) as u32)
}

/// Build the certificate form of a cover family without verifying it:
/// the product of the mixed forms of its subsets.
pub fn build_certificate(
    family: &CoverFamily,
    spec: &IdealSpec,
    field: &PrimeField,
) -> Result<GradedForm, CertError> {
    let params = spec.moment_params().ok_or(CertError::NotMomentSpec)?;
    let n = spec.n();
    let mut product: Option<GradedForm> = None;
    for subset in &family.subsets {
        let k = factor_degree(n, subset.len())?;
        let alphas: Vec<u64> = subset.iter().map(|&e| params[e as usize]).collect();
        let factor = mixed_form(n, k, &alphas, field)?;
        if factor.is_zero() {
            return Ok(GradedForm::zero(n, 0));
        }
        product = Some(match product {
            None => factor,
            Some(acc) => multiply(&acc, &factor, field),
        });
    }
    Ok(product.unwrap_or_else(|| GradedForm::constant(n, 1, field)))
}

/// The public certificate constructor: builds the product form and verifies
/// that every d-th power in the specialization annihilates it.
pub fn certificate_form(
    family: &CoverFamily,
    spec: &IdealSpec,
    field: &PrimeField,
) -> Result<GradedForm, CertError> {
    let form = build_certificate(family, spec, field)?;
    if form.is_zero() {
        return Err(CertError::Degenerate(format!(
            "certificate of {family:?} vanishes at this specialization"
        )));
    }
    let ws = ContractionWorkspace::new(spec.n(), form.degree(), spec.d());
    let dense = ws.densify(&form);
    for l in spec.forms() {
        if !ws.annihilates(&dense, l, spec.d(), field) {
            return Err(CertError::VerificationFailure { family_index: 0 });
        }
    }
    Ok(form)
}

/// How certificate families are enumerated for one sporadic case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyShape {
    /// Cover families with the listed subset sizes (each generator in
    /// exactly two subsets).
    Cover(&'static [u32]),
    /// Families {S, complement}, |S| = size (each generator in exactly one
    /// subset; used by the square cases).
    ComplementPairs(u32),
}

/// One of the six sporadic signatures together with its certified socle
/// value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SporadicCase {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub socle: u32,
    pub target: u64,
    pub shape: FamilyShape,
}

pub const SPORADIC_CASES: [SporadicCase; 6] = [
    SporadicCase { n: 4, m: 6, d: 5, socle: 9, target: 14, shape: FamilyShape::Cover(&[3, 3, 3, 1, 1, 1]) },
    SporadicCase { n: 6, m: 8, d: 3, socle: 6, target: 43, shape: FamilyShape::Cover(&[5, 5, 3, 3]) },
    SporadicCase { n: 8, m: 10, d: 2, socle: 4, target: 16, shape: FamilyShape::ComplementPairs(5) },
    SporadicCase { n: 8, m: 10, d: 3, socle: 8, target: 171, shape: FamilyShape::Cover(&[5, 5, 5, 5]) },
    SporadicCase { n: 10, m: 12, d: 2, socle: 5, target: 32, shape: FamilyShape::ComplementPairs(5) },
    SporadicCase { n: 10, m: 12, d: 3, socle: 10, target: 683, shape: FamilyShape::Cover(&[5, 5, 7, 7]) },
];

pub fn find_case(n: u32, m: u32, d: u32) -> Option<&'static SporadicCase> {
    SPORADIC_CASES.iter().find(|c| c.n == n && c.m == m && c.d == d)
}

/// Order in which certificate families are tried. The systematic order is
/// the canonical enumeration; the seeded order samples random families
/// first (deduplicated, still deterministic for a fixed seed) and falls
/// back to the systematic sweep, which matters because lexicographically
/// early families produce highly dependent certificates at the
/// arithmetic-progression specialization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyOrder {
    Systematic,
    Seeded(u64),
}

fn visit_shape(
    shape: FamilyShape,
    m: u32,
    order: FamilyOrder,
    visit: &mut dyn FnMut(&CoverFamily) -> ControlFlow<()>,
) -> Result<(), CertError> {
    let seed = match order {
        FamilyOrder::Systematic => {
            match shape {
                FamilyShape::Cover(sizes) => {
                    visit_cover_families(m, sizes, visit)?;
                }
                FamilyShape::ComplementPairs(size) => {
                    visit_complement_pairs(m, size, visit);
                }
            }
            return Ok(());
        }
        FamilyOrder::Seeded(s) => s,
    };

    use rand::seq::SliceRandom;
    let mut rng = crate::field::Seed(seed).rng(0xc0_4e8, 0xfa);
    let mut seen: std::collections::HashSet<Vec<Vec<u32>>> = std::collections::HashSet::new();
    let mut stopped = false;

    // sampling phase: random families, canonicalized and deduplicated
    let sample_budget = 60_000usize;
    let mut attempts = 0usize;
    while attempts < sample_budget && !stopped {
        attempts += 1;
        let fam = match shape {
            FamilyShape::Cover(sizes) => {
                // one slot per subset membership; a valid family is a pairing
                // of each element with two slots of distinct subsets
                let mut slots: Vec<u32> = Vec::with_capacity(2 * m as usize);
                for (i, &s) in sizes.iter().enumerate() {
                    slots.extend(std::iter::repeat(i as u32).take(s as usize));
                }
                slots.shuffle(&mut rng);
                let mut ok = true;
                let mut subsets: Vec<Vec<u32>> = vec![Vec::new(); sizes.len()];
                for e in 0..m {
                    let a = slots[2 * e as usize];
                    let b = slots[2 * e as usize + 1];
                    if a == b {
                        ok = false;
                        break;
                    }
                    subsets[a as usize].push(e);
                    subsets[b as usize].push(e);
                }
                if !ok {
                    continue;
                }
                canonicalize(m, sizes, subsets)
            }
            FamilyShape::ComplementPairs(size) => {
                let mut elems: Vec<u32> = (0..m).collect();
                elems.shuffle(&mut rng);
                let mut s: Vec<u32> = elems[..size as usize].to_vec();
                s.sort_unstable();
                if 2 * size == m && !s.contains(&0) {
                    s = (0..m).filter(|e| !s.contains(e)).collect();
                }
                let comp: Vec<u32> = (0..m).filter(|e| !s.contains(e)).collect();
                CoverFamily {
                    m,
                    subsets: vec![s, comp],
                }
            }
        };
        if seen.insert(fam.subsets.clone()) && visit(&fam).is_break() {
            stopped = true;
        }
    }
    if stopped {
        return Ok(());
    }
    // completeness phase: systematic sweep over whatever was not sampled
    match shape {
        FamilyShape::Cover(sizes) => {
            visit_cover_families(m, sizes, &mut |fam| {
                if seen.contains(&fam.subsets) {
                    ControlFlow::Continue(())
                } else {
                    visit(fam)
                }
            })?;
        }
        FamilyShape::ComplementPairs(size) => {
            visit_complement_pairs(m, size, &mut |fam| {
                if seen.contains(&fam.subsets) {
                    ControlFlow::Continue(())
                } else {
                    visit(fam)
                }
            });
        }
    }
    Ok(())
}

/// Canonical representative: subsets sorted internally, equal-size groups
/// sorted lexicographically (grouping by size value, matching the
/// deduplication convention of the systematic enumeration).
fn canonicalize(m: u32, sizes: &[u32], mut subsets: Vec<Vec<u32>>) -> CoverFamily {
    for s in subsets.iter_mut() {
        s.sort_unstable();
    }
    let mut order: Vec<usize> = (0..subsets.len()).collect();
    order.sort_by(|&a, &b| {
        sizes[a]
            .cmp(&sizes[b])
            .reverse()
            .then_with(|| subsets[a].cmp(&subsets[b]))
    });
    // keep the original size sequence, sorting only within equal sizes
    let mut by_size: std::collections::HashMap<u32, std::collections::VecDeque<Vec<u32>>> =
        std::collections::HashMap::new();
    for &i in &order {
        by_size
            .entry(sizes[i])
            .or_default()
            .push_back(subsets[i].clone());
    }
    let arranged: Vec<Vec<u32>> = sizes
        .iter()
        .map(|s| by_size.get_mut(s).unwrap().pop_front().unwrap())
        .collect();
    CoverFamily {
        m,
        subsets: arranged,
    }
}

/// Result of a span search over certificate forms in the socle degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanOutcome {
    pub achieved: u64,
    pub target: u64,
    pub reached: bool,
    /// forms that contributed a new direction (each one verified)
    pub forms_used: usize,
    pub families_seen: usize,
}

/// Span of the certificate forms of a case at the given moment
/// specialization, stopping as soon as the target is reached. Every form
/// retained in the span basis has its annihilation verified.
pub fn sporadic_span(
    case: &SporadicCase,
    spec: &IdealSpec,
    field: &PrimeField,
    early_stop: bool,
    family_cap: usize,
    order: FamilyOrder,
) -> Result<SpanOutcome, CertError> {
    assert_eq!(spec.n(), case.n);
    assert_eq!(spec.m() as u32, case.m);
    assert_eq!(spec.d(), case.d);
    let ws = ContractionWorkspace::new(case.n, case.socle, case.d);
    let mut elim = Eliminator::new(*field, ws.top_len());
    let mut forms_used = 0usize;
    let mut families_seen = 0usize;
    let mut failure: Option<CertError> = None;
    visit_shape(case.shape, case.m, order, &mut |family| {
        families_seen += 1;
        let form = match build_certificate(family, spec, field) {
            Ok(f) => f,
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        if form.is_zero() || form.degree() != case.socle {
            return ControlFlow::Continue(());
        }
        let dense = ws.densify(&form);
        if elim.insert_dense(dense.clone()) {
            for l in spec.forms() {
                if !ws.annihilates(&dense, l, case.d, field) {
                    failure = Some(CertError::VerificationFailure {
                        family_index: families_seen - 1,
                    });
                    return ControlFlow::Break(());
                }
            }
            forms_used += 1;
        }
        if early_stop && elim.rank() as u64 >= case.target {
            return ControlFlow::Break(());
        }
        if families_seen >= family_cap {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(SpanOutcome {
        achieved: elim.rank() as u64,
        target: case.target,
        reached: elim.rank() as u64 >= case.target,
        forms_used,
        families_seen,
    })
}

/// Per-weight-class span of certificate forms at an orbit specialization.
/// The class dimensions are certified kernel lower bounds for the blocked
/// quotient elimination; each retained class component is verified
/// individually.
pub struct OrbitSpanOutcome {
    pub class_dims: Vec<usize>,
    pub total: u64,
    pub reached: bool,
    pub families_seen: usize,
}

pub fn sporadic_span_orbit_classes(
    case: &SporadicCase,
    spec: &IdealSpec,
    field: &PrimeField,
    family_cap: usize,
    order: FamilyOrder,
) -> Result<OrbitSpanOutcome, CertError> {
    let m = case.m;
    let ws = ContractionWorkspace::new(case.n, case.socle, case.d);
    let basis = DegreeBasis::new(case.n, case.socle);
    let width = basis.len();
    let class_of: Vec<u8> = (0..width)
        .map(|v| (basis.weight_of(v as u32) % m) as u8)
        .collect();
    let mut local_of = vec![0u32; width];
    let mut class_cols = vec![0usize; m as usize];
    for v in 0..width {
        let c = class_of[v] as usize;
        local_of[v] = class_cols[c] as u32;
        class_cols[c] += 1;
    }
    let mut elims: Vec<Eliminator> = class_cols
        .iter()
        .map(|&w| Eliminator::new(*field, w))
        .collect();
    let mut families_seen = 0usize;
    let mut failure: Option<CertError> = None;
    visit_shape(case.shape, case.m, order, &mut |family| {
        families_seen += 1;
        let form = match build_certificate(family, spec, field) {
            Ok(f) => f,
            Err(e) => {
                failure = Some(e);
                return ControlFlow::Break(());
            }
        };
        if form.is_zero() || form.degree() != case.socle {
            return ControlFlow::Continue(());
        }
        // split into weight-class components
        let mut comp_local: Vec<Vec<u64>> = class_cols.iter().map(|&w| vec![0u64; w]).collect();
        let mut comp_full: Vec<Vec<u64>> = vec![Vec::new(); m as usize];
        for &(i, c) in form.terms() {
            let cls = class_of[i as usize] as usize;
            if comp_full[cls].is_empty() {
                comp_full[cls] = vec![0u64; width];
            }
            comp_local[cls][local_of[i as usize] as usize] = c;
            comp_full[cls][i as usize] = c;
        }
        for cls in 0..m as usize {
            if comp_full[cls].is_empty() {
                continue;
            }
            if elims[cls].insert_dense(std::mem::take(&mut comp_local[cls])) {
                // a new kernel direction for this class: verify it really is
                // annihilated (this also guards the class bookkeeping)
                for l in spec.forms() {
                    if !ws.annihilates(&comp_full[cls], l, case.d, field) {
                        failure = Some(CertError::VerificationFailure {
                            family_index: families_seen - 1,
                        });
                        return ControlFlow::Break(());
                    }
                }
            }
        }
        let total: usize = elims.iter().map(|e| e.rank()).sum();
        if total as u64 >= case.target || families_seen >= family_cap {
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let class_dims: Vec<usize> = elims.iter().map(|e| e.rank()).collect();
    let total: u64 = class_dims.iter().map(|&x| x as u64).sum();
    Ok(OrbitSpanOutcome {
        reached: total >= case.target,
        class_dims,
        total,
        families_seen,
    })
}

/// Span of the certificate forms at the paper-default moment specialization
/// (parameters 0, 1, ..., m-1), stopping at the case target. This is the
/// lower-bound half of the sandwich, exposed on its own.
pub fn sporadic_certificate(
    case: &SporadicCase,
    field: &PrimeField,
) -> Result<SpanOutcome, CertError> {
    let spec = IdealSpec::moment_default(case.n, case.m, case.d, field);
    let out = sporadic_span(case, &spec, field, true, 200_000, FamilyOrder::Seeded(7))?;
    if !out.reached {
        return Err(CertError::TargetNotReached {
            achieved: out.achieved,
            target: case.target,
            families: out.families_seen,
        });
    }
    Ok(out)
}

/// Options for the socle sandwich.
#[derive(Debug, Clone, Copy)]
pub struct SandwichOptions {
    /// hard cap on enumerated families before reporting target-not-reached
    pub family_cap: usize,
    /// seed for the randomized family order (deterministic per seed)
    pub order_seed: u64,
    /// also compute the quotient at the default moment specialization by
    /// dense elimination (feasible for all cases but the largest)
    pub dense_cross_check: bool,
    /// orbit scale parameter (second specializations use a different scale)
    pub scale: u64,
}

impl Default for SandwichOptions {
    fn default() -> Self {
        SandwichOptions {
            family_cap: 200_000,
            order_seed: 7,
            dense_cross_check: false,
            scale: 1,
        }
    }
}

/// Outcome of the socle sandwich for one sporadic case at one modulus.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub n: u32,
    pub m: u32,
    pub d: u32,
    pub socle: u32,
    pub target: u64,
    /// span of certificate forms at the default moment specialization
    pub span: u64,
    /// specialized quotient dimension at the orbit specialization
    pub quotient: u64,
    pub quotient_spec: String,
    /// quotient at the default moment specialization when cross-checked
    pub dense_quotient: Option<u64>,
    /// the coefficient the expected series would have in the socle degree
    pub bracket_coeff: i64,
    /// span == quotient == target: the generic socle value is certified
    pub matched: bool,
    pub elapsed_ms: u128,
}

/// Run the two-sided socle computation for a sporadic case: certificate
/// span at the paper's moment specialization (generic lower bound) and
/// quotient dimension at an orbit specialization (generic upper bound),
/// blocked by weight class with early stopping certified by the orbit span.
pub fn sporadic_sandwich(
    case: &SporadicCase,
    field: &PrimeField,
    cache: Option<&DimCache>,
    opts: &SandwichOptions,
) -> Result<SandwichReport, CertError> {
    let t0 = Instant::now();
    let p = field.modulus();
    let socle = case.socle;
    debug_assert_eq!(socle as i64, s_formula(case.n, case.d));

    let moment = IdealSpec::moment_default(case.n, case.m, case.d, field);
    let span = {
        let key = span_key(&moment, socle, p, case.target);
        let cached = cache.and_then(|c| c.get(&key));
        match cached {
            Some(v) => v,
            None => {
                let out = sporadic_span(case, &moment, field, true, opts.family_cap, FamilyOrder::Seeded(opts.order_seed))?;
                if !out.reached {
                    return Err(CertError::TargetNotReached {
                        achieved: out.achieved,
                        target: case.target,
                        families: out.families_seen,
                    });
                }
                if let Some(c) = cache {
                    c.put(key, out.achieved);
                }
                out.achieved
            }
        }
    };

    let orbit = IdealSpec::orbit(case.n, case.m, case.d, opts.scale, field)
        .expect("orbit parameters are distinct");
    let qkey = quotient_key(&orbit, socle, p);
    let quotient = match cache.and_then(|c| c.get(&qkey)) {
        Some(v) => v,
        None => {
            // per-class kernel certificates let each block stop as soon as
            // its rank is pinned
            let orbit_span = sporadic_span_orbit_classes(case, &orbit, field, opts.family_cap, FamilyOrder::Seeded(opts.order_seed))?;
            let (scale, omega) = orbit
                .orbit_structure(field)
                .expect("orbit spec has orbit structure");
            let cols = monomial_count(case.n, socle);
            let stop: Vec<usize> = {
                // columns per class
                let basis = DegreeBasis::new(case.n, socle);
                let mut class_cols = vec![0usize; case.m as usize];
                for v in 0..basis.len() {
                    class_cols[(basis.weight_of(v as u32) % case.m) as usize] += 1;
                }
                class_cols
                    .iter()
                    .zip(orbit_span.class_dims.iter())
                    .map(|(&c, &k)| c - k)
                    .collect()
            };
            let out = quotient_dim_orbit(&orbit, socle, scale, omega, field, Some(&stop));
            debug_assert!(out.dim <= cols);
            if let Some(c) = cache {
                c.put(qkey, out.dim);
            }
            out.dim
        }
    };

    let dense_quotient = if opts.dense_cross_check {
        let dkey = quotient_key(&moment, socle, p);
        let v = match cache.and_then(|c| c.get(&dkey)) {
            Some(v) => v,
            None => {
                let mat = crate::hilbert::power_row_matrix(&moment, socle, field);
                let cols = mat.ncols() as u64;
                // the verified span certifies cols - span kernel directions
                let stop = (cols - span) as usize;
                let r = crate::linalg::rank_with_early_stop(&mat, field, stop);
                let v = cols - r as u64;
                if let Some(c) = cache {
                    c.put(dkey, v);
                }
                v
            }
        };
        Some(v)
    } else {
        None
    };

    let bracket = froberg_bracket(case.n, &vec![case.d; case.m as usize], None)
        .expect("more forms than variables");
    let bracket_coeff = bracket
        .coeffs_i64()
        .get(socle as usize)
        .copied()
        .unwrap_or(0);

    let matched = span == case.target
        && quotient == case.target
        && dense_quotient.map(|v| v == case.target).unwrap_or(true);
    Ok(SandwichReport {
        n: case.n,
        m: case.m,
        d: case.d,
        socle,
        target: case.target,
        span,
        quotient,
        quotient_spec: orbit.digest(),
        dense_quotient,
        bracket_coeff,
        matched,
        elapsed_ms: t0.elapsed().as_millis(),
    })
}
