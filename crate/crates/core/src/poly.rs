//! Graded polynomials over a prime field in dual variables, the contraction
//! action of the polynomial ring on them, and the explicit determinantal
//! forms annihilated by powers of linear forms supported on the moment
//! curve.
//!
//! Contraction follows the true partial-derivative convention: x_i acts as
//! d/dX_i, so integer factors appear; the field moduli are large enough that
//! these never vanish at working degrees.

use crate::field::PrimeField;
use crate::monomial::{monomial_count, rank_grevlex, unrank_grevlex, ExpVec, MAX_VARS};
use fxhash::FxHashMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable counts differ: {0} vs {1}")]
    VariableMismatch(u32, u32),
    #[error("need an odd variable count, got {0}")]
    EvenVariables(u32),
    #[error("expected {expected} curve parameters, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("curve parameters must be pairwise distinct")]
    RepeatedParameter,
    #[error("the two determinant evaluation paths disagree beyond a global scalar")]
    PathMismatch,
    #[error("too many variables: {0} > {max}", max = MAX_VARS)]
    TooManyVariables(u32),
}

/// A linear form sum l_j x_j; coefficients reduced, not all zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<u64>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<u64>, field: &PrimeField) -> Self {
        let coeffs: Vec<u64> = coeffs.iter().map(|&c| c % field.modulus()).collect();
        assert!(
            coeffs.iter().any(|&c| c != 0),
            "a linear form must be nonzero"
        );
        LinearForm { coeffs }
    }

    pub fn n(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// True when the two forms are proportional.
    pub fn proportional_to(&self, other: &LinearForm, field: &PrimeField) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        // cross-ratio test on every coordinate pair
        for i in 0..self.coeffs.len() {
            for j in 0..self.coeffs.len() {
                let lhs = field.mul(self.coeffs[i], other.coeffs[j]);
                let rhs = field.mul(self.coeffs[j], other.coeffs[i]);
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }
}

/// The moment-curve form with parameter alpha: coefficients
/// (1, alpha, alpha^2, ..., alpha^{n-1}).
pub fn moment_form(n: u32, alpha: u64, field: &PrimeField) -> LinearForm {
    let coeffs = (0..n).map(|j| field.pow(alpha, j as u64)).collect();
    LinearForm::new(coeffs, field)
}

/// A homogeneous polynomial in the dual variables X_1..X_n, stored sparsely
/// as (grevlex index, coefficient) pairs sorted by index with no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedForm {
    n: u32,
    degree: u32,
    coeffs: Vec<(u32, u64)>,
}

impl GradedForm {
    pub fn zero(n: u32, degree: u32) -> Self {
        GradedForm {
            n,
            degree,
            coeffs: Vec::new(),
        }
    }

    /// The constant form c (degree zero).
    pub fn constant(n: u32, c: u64, field: &PrimeField) -> Self {
        Self::from_map(
            n,
            0,
            [([0u8; MAX_VARS], c)].into_iter().collect(),
            field,
        )
    }

    pub fn monomial(n: u32, e: ExpVec, c: u64, field: &PrimeField) -> Self {
        let degree: u32 = e[..n as usize].iter().map(|&x| x as u32).sum();
        let mut m = FxHashMap::default();
        m.insert(e, c);
        Self::from_map(n, degree, m, field)
    }

    pub fn from_map(
        n: u32,
        degree: u32,
        map: FxHashMap<ExpVec, u64>,
        field: &PrimeField,
    ) -> Self {
        let mut coeffs: Vec<(u32, u64)> = map
            .into_iter()
            .filter_map(|(e, c)| {
                let c = c % field.modulus();
                (c != 0).then(|| (rank_grevlex(n, degree, &e) as u32, c))
            })
            .collect();
        coeffs.sort_unstable_by_key(|&(i, _)| i);
        GradedForm { n, degree, coeffs }
    }

    pub fn from_indexed(n: u32, degree: u32, mut coeffs: Vec<(u32, u64)>) -> Self {
        coeffs.sort_unstable_by_key(|&(i, _)| i);
        coeffs.retain(|&(_, c)| c != 0);
        GradedForm { n, degree, coeffs }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> &[(u32, u64)] {
        &self.coeffs
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// Expanded (exponent vector, coefficient) view.
    pub fn expanded(&self) -> Vec<(ExpVec, u64)> {
        self.coeffs
            .iter()
            .map(|&(i, c)| (unrank_grevlex(self.n, self.degree, i as u64), c))
            .collect()
    }

    /// Sparse row over the grevlex basis of this degree.
    pub fn as_sparse_row(&self) -> Vec<(u32, u64)> {
        self.coeffs.clone()
    }

    pub fn scale(&self, c: u64, field: &PrimeField) -> GradedForm {
        let c = c % field.modulus();
        if c == 0 {
            return GradedForm::zero(self.n, self.degree);
        }
        GradedForm {
            n: self.n,
            degree: self.degree,
            coeffs: self
                .coeffs
                .iter()
                .map(|&(i, v)| (i, field.mul(v, c)))
                .collect(),
        }
    }

    /// True when the forms are equal up to one global nonzero scalar.
    pub fn proportional_to(&self, other: &GradedForm, field: &PrimeField) -> Option<u64> {
        if self.n != other.n || self.degree != other.degree {
            return None;
        }
        if self.is_zero() && other.is_zero() {
            return Some(1);
        }
        if self.coeffs.len() != other.coeffs.len() {
            return None;
        }
        let scalar = field.mul(other.coeffs[0].1, field.inv(self.coeffs[0].1));
        for (&(i, a), &(j, b)) in self.coeffs.iter().zip(other.coeffs.iter()) {
            if i != j || field.mul(a, scalar) != b {
                return None;
            }
        }
        Some(scalar)
    }
}

/// Product of homogeneous forms; degrees add.
pub fn multiply(f: &GradedForm, g: &GradedForm, field: &PrimeField) -> GradedForm {
    assert_eq!(f.n, g.n, "forms live in different rings");
    let n = f.n;
    let degree = f.degree + g.degree;
    let fe = f.expanded();
    let ge = g.expanded();
    let mut acc: FxHashMap<ExpVec, u64> =
        FxHashMap::with_capacity_and_hasher(fe.len().max(ge.len()) * 2, Default::default());
    for (ea, ca) in &fe {
        for (eb, cb) in &ge {
            let mut e: ExpVec = [0; MAX_VARS];
            for k in 0..n as usize {
                e[k] = ea[k] + eb[k];
            }
            let c = field.mul(*ca, *cb);
            let slot = acc.entry(e).or_insert(0);
            *slot = field.add(*slot, c);
        }
    }
    GradedForm::from_map(n, degree, acc, field)
}

/// One derivative along l: (sum l_k x_k) applied to F with x_k = d/dX_k.
fn contract_once(l: &LinearForm, f: &GradedForm, field: &PrimeField) -> GradedForm {
    if f.degree == 0 {
        return GradedForm::zero(f.n, 0);
    }
    let n = f.n;
    let deg = f.degree - 1;
    let mut acc: FxHashMap<ExpVec, u64> =
        FxHashMap::with_capacity_and_hasher(f.coeffs.len() * 2, Default::default());
    for (e, c) in f.expanded() {
        for k in 0..n as usize {
            let lk = l.coeffs()[k];
            if e[k] == 0 || lk == 0 {
                continue;
            }
            let mut e2 = e;
            e2[k] -= 1;
            let term = field.mul(c, field.mul(lk, e[k] as u64));
            let slot = acc.entry(e2).or_insert(0);
            *slot = field.add(*slot, term);
        }
    }
    GradedForm::from_map(n, deg, acc, field)
}

/// l^e acting on F by contraction. Degrees drop by e; over-contraction
/// returns the zero form of degree 0.
pub fn contract(l: &LinearForm, e: u32, f: &GradedForm, field: &PrimeField) -> GradedForm {
    assert_eq!(l.n(), f.n, "forms live in different rings");
    if e > f.degree {
        return GradedForm::zero(f.n, 0);
    }
    let mut cur = f.clone();
    for _ in 0..e {
        cur = contract_once(l, &cur, field);
    }
    cur
}

/// Coefficients of (sum l_j x_j)^d as (exponent vector, coefficient) pairs:
/// the multinomial expansion used to lay out power rows of Macaulay
/// matrices.
pub fn power_expansion(l: &LinearForm, d: u32, field: &PrimeField) -> Vec<(ExpVec, u64)> {
    let n = l.n();
    let count = monomial_count(n, d);
    let mut out = Vec::new();
    for idx in 0..count {
        let e = unrank_grevlex(n, d, idx);
        // multinomial d! / prod e_k!
        let mut c = field.factorial(d as u64);
        let mut ok = true;
        for k in 0..n as usize {
            if e[k] > 0 {
                c = field.mul(c, field.inv(field.factorial(e[k] as u64)));
                let lk = l.coeffs()[k];
                if lk == 0 {
                    ok = false;
                    break;
                }
                c = field.mul(c, field.pow(lk, e[k] as u64));
            }
        }
        if ok && c != 0 {
            out.push((e, c));
        }
    }
    out
}

/// Determinant of a small dense matrix by elimination.
fn small_det(mut m: Vec<Vec<u64>>, field: &PrimeField) -> u64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut det = 1u64;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&r| m[r][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = field.neg(det);
        }
        det = field.mul(det, m[c][c]);
        let inv = field.inv(m[c][c]);
        for r in c + 1..n {
            let factor = field.mul(m[r][c], inv);
            if factor == 0 {
                continue;
            }
            for j in c..n {
                let sub = field.mul(factor, m[c][j]);
                m[r][j] = field.sub(m[r][j], sub);
            }
        }
    }
    det
}

/// The Hankel determinant form: for odd n = 2k-1, the degree-k form
/// det [X_{i+j-1}]_{1<=i,j<=k}, expanded over permutations.
///
/// It is annihilated by the square of every moment-curve form, any
/// parameter.
pub fn hankel_form(n: u32, field: &PrimeField) -> Result<GradedForm, PolyError> {
    if n % 2 == 0 {
        return Err(PolyError::EvenVariables(n));
    }
    if n as usize > MAX_VARS {
        return Err(PolyError::TooManyVariables(n));
    }
    let k = (n + 1) / 2;
    let mut acc: FxHashMap<ExpVec, u64> = FxHashMap::default();
    let mut perm: Vec<u32> = (0..k).collect();
    permute_all(&mut perm, 0, &mut |perm, sign| {
        let mut e: ExpVec = [0; MAX_VARS];
        for (i, &j) in perm.iter().enumerate() {
            // entry (i, j) is X_{i+j+1} with 0-based i, j
            e[(i as u32 + j) as usize] += 1;
        }
        let slot = acc.entry(e).or_insert(0);
        let one = if sign { field.neg(1) } else { 1 };
        *slot = field.add(*slot, one);
    });
    Ok(GradedForm::from_map(n, k, acc, field))
}

fn permute_all(perm: &mut Vec<u32>, at: usize, visit: &mut impl FnMut(&[u32], bool)) {
    fn rec(perm: &mut Vec<u32>, at: usize, swaps: usize, visit: &mut impl FnMut(&[u32], bool)) {
        if at == perm.len() {
            visit(perm, swaps % 2 == 1);
            return;
        }
        for i in at..perm.len() {
            perm.swap(at, i);
            rec(perm, at + 1, swaps + usize::from(i != at), visit);
            perm.swap(at, i);
        }
    }
    rec(perm, at, 0, visit);
}

/// The unique degree-k form annihilated by the moment-curve forms with the
/// given parameters and by the squares of every moment-curve form:
/// the determinant of the (n-k+1) x (n-k+1) matrix whose first n-2k+1 rows
/// are the parameter Vandermonde rows (1, a, ..., a^{n-k}) and whose last k
/// rows are the shifted variable rows (X_t, ..., X_{t+n-k}).
///
/// A zero result signals degenerate parameters; callers decide whether that
/// is an error.
pub fn mixed_form(
    n: u32,
    k: u32,
    alphas: &[u64],
    field: &PrimeField,
) -> Result<GradedForm, PolyError> {
    if n as usize > MAX_VARS {
        return Err(PolyError::TooManyVariables(n));
    }
    assert!(k >= 1 && 2 * k <= n + 1, "need 0 < k <= (n+1)/2");
    let r = (n + 1 - 2 * k) as usize;
    if alphas.len() != r {
        return Err(PolyError::SizeMismatch {
            expected: r,
            got: alphas.len(),
        });
    }
    for i in 0..alphas.len() {
        for j in i + 1..alphas.len() {
            if alphas[i] % field.modulus() == alphas[j] % field.modulus() {
                return Err(PolyError::RepeatedParameter);
            }
        }
    }
    let width = (n - k + 1) as usize;
    let mut acc: FxHashMap<ExpVec, u64> = FxHashMap::default();
    let mut minor_memo: FxHashMap<u32, u64> = FxHashMap::default();
    let mut chosen: Vec<usize> = Vec::with_capacity(k as usize);
    mixed_rec(
        n,
        k,
        alphas,
        field,
        width,
        0,
        &mut chosen,
        &mut minor_memo,
        &mut acc,
    );
    Ok(GradedForm::from_map(n, k, acc, field))
}

#[allow(clippy::too_many_arguments)]
fn mixed_rec(
    n: u32,
    k: u32,
    alphas: &[u64],
    field: &PrimeField,
    width: usize,
    t: usize, // X rows assigned so far
    chosen: &mut Vec<usize>,
    minor_memo: &mut FxHashMap<u32, u64>,
    acc: &mut FxHashMap<ExpVec, u64>,
) {
    if t == k as usize {
        // complement columns in ascending order carry the parameter rows
        let used: u32 = chosen.iter().fold(0u32, |m, &c| m | (1 << c));
        let det = *minor_memo.entry(used).or_insert_with(|| {
            let comp: Vec<usize> = (0..width).filter(|c| used & (1 << c) == 0).collect();
            let mat: Vec<Vec<u64>> = alphas
                .iter()
                .map(|&a| comp.iter().map(|&c| field.pow(a, c as u64)).collect())
                .collect();
            small_det(mat, field)
        });
        if det == 0 {
            return;
        }
        // sign: parity of the column sequence (complement ascending, then
        // the X choices in row order)
        let comp: Vec<usize> = (0..width).filter(|c| used & (1 << c) == 0).collect();
        let mut seq: Vec<usize> = comp;
        seq.extend(chosen.iter().copied());
        let mut inv = 0usize;
        for i in 0..seq.len() {
            for j in i + 1..seq.len() {
                if seq[i] > seq[j] {
                    inv += 1;
                }
            }
        }
        let mut e: ExpVec = [0; MAX_VARS];
        for (row, &c) in chosen.iter().enumerate() {
            // X row row+1 (1-based) in column c holds X_{row+1+c}
            e[row + c] += 1;
        }
        let signed = if inv % 2 == 1 { field.neg(det) } else { det };
        let slot = acc.entry(e).or_insert(0);
        *slot = field.add(*slot, signed);
        return;
    }
    for c in 0..width {
        if chosen.contains(&c) {
            continue;
        }
        chosen.push(c);
        mixed_rec(n, k, alphas, field, width, t + 1, chosen, minor_memo, acc);
        chosen.pop();
    }
}

/// The general-position version of the square-annihilated form together
/// with the scalar relating its two evaluation paths.
#[derive(Debug, Clone)]
pub struct GeneralPositionForm {
    pub form: GradedForm,
    /// vandermonde-sum path = path_scalar * determinant path (observed).
    pub path_scalar: u64,
}

/// For odd n = 2k-1 and pairwise distinct parameters a, the unique
/// degree-k form annihilated by the squares of x_1, ..., x_n,
/// x_1 + ... + x_n and a_1 x_1 + ... + a_n x_n.
///
/// Evaluated twice: as the n x n determinant with rows
/// (X_i, a_i X_i, ..., a_i^{k-1} X_i, a_i, ..., a_i^{k-1}), and as the
/// signed sum over k-subsets of Vandermonde products. The two must agree up
/// to one global nonzero scalar, which is reported.
pub fn general_position_form(
    n: u32,
    a: &[u64],
    field: &PrimeField,
) -> Result<GeneralPositionForm, PolyError> {
    if n % 2 == 0 {
        return Err(PolyError::EvenVariables(n));
    }
    if n as usize > MAX_VARS {
        return Err(PolyError::TooManyVariables(n));
    }
    if a.len() != n as usize {
        return Err(PolyError::SizeMismatch {
            expected: n as usize,
            got: a.len(),
        });
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] % field.modulus() == a[j] % field.modulus() {
                return Err(PolyError::RepeatedParameter);
            }
        }
    }
    let k = (n + 1) / 2;
    let det_path = gp_determinant_path(n, k, a, field);
    let sum_path = gp_subset_path(n, k, a, field);
    let Some(path_scalar) = det_path.proportional_to(&sum_path, field) else {
        return Err(PolyError::PathMismatch);
    };
    if det_path.is_zero() {
        return Err(PolyError::RepeatedParameter);
    }
    Ok(GeneralPositionForm {
        form: det_path,
        path_scalar,
    })
}

/// Column-recursive determinant expansion. Terms are squarefree products of
/// k distinct X variables, tracked as row bitmasks; the scalar minors over
/// the last k-1 columns are memoized per used-row set.
fn gp_determinant_path(n: u32, k: u32, a: &[u64], field: &PrimeField) -> GradedForm {
    let n_us = n as usize;
    let k_us = k as usize;
    let mut acc: FxHashMap<u32, u64> = FxHashMap::default(); // X rowmask -> coeff
    let mut minor_memo: FxHashMap<u32, u64> = FxHashMap::default();
    let mut rows: Vec<usize> = Vec::with_capacity(k_us);

    fn rec(
        col: usize,
        k_us: usize,
        n_us: usize,
        a: &[u64],
        field: &PrimeField,
        rows: &mut Vec<usize>,
        used: u32,
        scalar: u64,
        acc: &mut FxHashMap<u32, u64>,
        minor_memo: &mut FxHashMap<u32, u64>,
    ) {
        if col == k_us {
            // remaining rows, ascending, against the scalar columns
            // a^1..a^{k-1}
            let det = *minor_memo.entry(used).or_insert_with(|| {
                let rest: Vec<usize> = (0..n_us).filter(|r| used & (1 << r) == 0).collect();
                let mat: Vec<Vec<u64>> = rest
                    .iter()
                    .map(|&r| (1..k_us).map(|j| field.pow(a[r], j as u64)).collect())
                    .collect();
                small_det(mat, field)
            });
            if det == 0 {
                return;
            }
            // cross inversions between chosen prefix rows and the ascending
            // remainder
            let mut inv = 0usize;
            for i in 0..rows.len() {
                for j in i + 1..rows.len() {
                    if rows[i] > rows[j] {
                        inv += 1;
                    }
                }
            }
            for r in 0..n_us {
                if used & (1 << r) == 0 {
                    inv += rows.iter().filter(|&&pr| pr > r).count();
                }
            }
            let mut term = field.mul(scalar, det);
            if inv % 2 == 1 {
                term = field.neg(term);
            }
            let slot = acc.entry(used).or_insert(0);
            *slot = field.add(*slot, term);
            return;
        }
        for r in 0..n_us {
            if used & (1 << r) != 0 {
                continue;
            }
            // entry (r, col) = a_r^col * X_{r+1}
            let entry = field.pow(a[r], col as u64);
            if entry == 0 {
                continue;
            }
            rows.push(r);
            rec(
                col + 1,
                k_us,
                n_us,
                a,
                field,
                rows,
                used | (1 << r),
                field.mul(scalar, entry),
                acc,
                minor_memo,
            );
            rows.pop();
        }
    }
    rec(
        0,
        k_us,
        n_us,
        a,
        field,
        &mut rows,
        0,
        1,
        &mut acc,
        &mut minor_memo,
    );

    let mut map: FxHashMap<ExpVec, u64> = FxHashMap::default();
    for (mask, c) in acc {
        let mut e: ExpVec = [0; MAX_VARS];
        for r in 0..n_us {
            if mask & (1 << r) != 0 {
                e[r] = 1;
            }
        }
        map.insert(e, c);
    }
    GradedForm::from_map(n, k, map, field)
}

/// Signed sum over k-subsets S: sgn(S | S^c) V(a_S) V(a_{S^c})
/// prod_{t in S^c} a_t prod_{s in S} X_s. This is the symmetric-group
/// expansion with the 1/(k!(k-1)!) prefactor absorbed: the permutations
/// within each block collapse onto their sorted representative.
fn gp_subset_path(n: u32, k: u32, a: &[u64], field: &PrimeField) -> GradedForm {
    let n_us = n as usize;
    let k_us = k as usize;
    let vandermonde = |rows: &[usize]| -> u64 {
        let mut v = 1u64;
        for i in 0..rows.len() {
            for j in i + 1..rows.len() {
                v = field.mul(v, field.sub(a[rows[j]], a[rows[i]]));
            }
        }
        v
    };
    let mut map: FxHashMap<ExpVec, u64> = FxHashMap::default();
    let mut subset: Vec<usize> = Vec::with_capacity(k_us);
    fn rec(
        start: usize,
        n_us: usize,
        k_us: usize,
        subset: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if subset.len() == k_us {
            visit(subset);
            return;
        }
        for r in start..n_us {
            subset.push(r);
            rec(r + 1, n_us, k_us, subset, visit);
            subset.pop();
        }
    }
    rec(0, n_us, k_us, &mut subset, &mut |s: &[usize]| {
        let comp: Vec<usize> = (0..n_us).filter(|r| !s.contains(r)).collect();
        let mut term = field.mul(vandermonde(s), vandermonde(&comp));
        for &t in &comp {
            term = field.mul(term, a[t]);
        }
        if term == 0 {
            return;
        }
        // sign of the row sequence (S ascending, then complement ascending)
        let mut inv = 0usize;
        for &t in &comp {
            inv += s.iter().filter(|&&x| x > t).count();
        }
        if inv % 2 == 1 {
            term = field.neg(term);
        }
        let mut e: ExpVec = [0; MAX_VARS];
        for &r in s {
            e[r] = 1;
        }
        let slot = map.entry(e).or_insert(0);
        *slot = field.add(*slot, term);
    });
    GradedForm::from_map(n, k, map, field)
}
