//! Graded reverse-lexicographic enumeration of monomials.
//!
//! Every matrix layout in the crate is indexed by the grevlex position of a
//! monomial inside its graded piece, fixed so runs are reproducible
//! bit-exactly: index 0 is the grevlex-largest monomial (x1^d) and indices
//! ascend as the order descends. Concretely, monomials are grouped by the
//! exponent of the last variable (ascending), recursing on the remaining
//! variables.

/// Hard cap on variable counts; exponent vectors are fixed-size arrays.
pub const MAX_VARS: usize = 16;

/// Exponent vector; only the first `n` entries of a context are meaningful.
pub type ExpVec = [u8; MAX_VARS];

/// Binomial coefficient as u64; panics if the exact value overflows.
pub fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial overflows u64")
}

/// Number of monomials of degree d in n variables: C(n-1+d, d).
pub fn monomial_count(n: u32, d: u32) -> u64 {
    binom((n - 1 + d) as u64, d as u64)
}

pub fn total_degree(e: &ExpVec, n: u32) -> u32 {
    e[..n as usize].iter().map(|&x| x as u32).sum()
}

/// Grevlex position of a degree-d monomial among all degree-d monomials in
/// n variables.
pub fn rank_grevlex(n: u32, d: u32, e: &ExpVec) -> u64 {
    debug_assert_eq!(total_degree(e, n), d);
    let mut idx = 0u64;
    let mut vars = n;
    let mut deg = d;
    while vars > 1 {
        let last = e[(vars - 1) as usize] as u32;
        for t in 0..last {
            idx += monomial_count(vars - 1, deg - t);
        }
        deg -= last;
        vars -= 1;
    }
    idx
}

/// Inverse of `rank_grevlex`.
pub fn unrank_grevlex(n: u32, d: u32, mut idx: u64) -> ExpVec {
    let mut e: ExpVec = [0; MAX_VARS];
    let mut vars = n;
    let mut deg = d;
    while vars > 1 {
        let mut t = 0u32;
        loop {
            let block = monomial_count(vars - 1, deg - t);
            if idx < block {
                break;
            }
            idx -= block;
            t += 1;
        }
        e[(vars - 1) as usize] = t as u8;
        deg -= t;
        vars -= 1;
    }
    e[0] = deg as u8;
    e
}

/// All degree-d monomials of an n-variable ring, listed in index order,
/// with the lookup tables the dense kernels need.
pub struct DegreeBasis {
    pub n: u32,
    pub d: u32,
    pub exps: Vec<ExpVec>,
}

impl DegreeBasis {
    pub fn new(n: u32, d: u32) -> Self {
        let count = monomial_count(n, d) as usize;
        let mut exps = Vec::with_capacity(count);
        let mut e: ExpVec = [0; MAX_VARS];
        gen_rec(n, d, &mut e, &mut exps);
        debug_assert_eq!(exps.len(), count);
        DegreeBasis { n, d, exps }
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn index_of(&self, e: &ExpVec) -> u32 {
        rank_grevlex(self.n, self.d, e) as u32
    }

    /// weight(x_j) = j - 1; the grading exploited by orbit specializations.
    pub fn weight_of(&self, idx: u32) -> u32 {
        let e = &self.exps[idx as usize];
        (0..self.n as usize).map(|j| j as u32 * e[j] as u32).sum()
    }

    /// table[v * n + k] = index of v / x_k in the degree-(d-1) basis, or
    /// u32::MAX when x_k does not divide v.
    pub fn divide_table(&self) -> Vec<u32> {
        let n = self.n as usize;
        let mut table = vec![u32::MAX; self.exps.len() * n];
        if self.d == 0 {
            return table;
        }
        for (vi, e) in self.exps.iter().enumerate() {
            for k in 0..n {
                if e[k] > 0 {
                    let mut low = *e;
                    low[k] -= 1;
                    table[vi * n + k] = rank_grevlex(self.n, self.d - 1, &low) as u32;
                }
            }
        }
        table
    }
}

fn gen_rec(vars: u32, deg: u32, e: &mut ExpVec, out: &mut Vec<ExpVec>) {
    if vars == 1 {
        e[0] = deg as u8;
        out.push(*e);
        e[0] = 0;
        return;
    }
    for t in 0..=deg {
        e[(vars - 1) as usize] = t as u8;
        gen_rec(vars - 1, deg - t, e, out);
    }
    e[(vars - 1) as usize] = 0;
}
