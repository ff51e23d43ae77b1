//! Enumeration of cover families: multisets of subsets of a generator index
//! set in which every generator appears in exactly two subsets. Certificate
//! forms are products over such families, one factor per subset.

use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("subset sizes sum to {total}, need exactly 2m = {expected}")]
    InfeasibleSizes { total: u32, expected: u32 },
}

/// A family of subsets of {0, ..., m-1} with prescribed sizes in which each
/// element appears exactly twice. Subsets are sorted; equal-size subsets
/// appear in non-decreasing lexicographic order, which is the deduplication
/// convention.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverFamily {
    pub m: u32,
    pub subsets: Vec<Vec<u32>>,
}

/// Visit every cover family for the given universe size and subset sizes in
/// a fixed deterministic order. The visitor may stop the enumeration early.
/// Returns true when the enumeration ran to completion.
pub fn visit_cover_families(
    m: u32,
    sizes: &[u32],
    visit: &mut dyn FnMut(&CoverFamily) -> ControlFlow<()>,
) -> Result<bool, CoverError> {
    let total: u32 = sizes.iter().sum();
    if total != 2 * m {
        return Err(CoverError::InfeasibleSizes {
            total,
            expected: 2 * m,
        });
    }
    let mut caps = vec![2u8; m as usize];
    let mut subsets: Vec<Vec<u32>> = Vec::with_capacity(sizes.len());
    let complete = fill_subsets(m, sizes, &mut caps, &mut subsets, visit)?;
    Ok(complete)
}

fn fill_subsets(
    m: u32,
    sizes: &[u32],
    caps: &mut [u8],
    subsets: &mut Vec<Vec<u32>>,
    visit: &mut dyn FnMut(&CoverFamily) -> ControlFlow<()>,
) -> Result<bool, CoverError> {
    let idx = subsets.len();
    if idx == sizes.len() {
        debug_assert!(caps.iter().all(|&c| c == 0));
        let fam = CoverFamily {
            m,
            subsets: subsets.clone(),
        };
        return Ok(visit(&fam).is_continue());
    }
    // remaining capacity must be spendable: no element may need more slots
    // than there are subsets left
    let remaining = (sizes.len() - idx) as u8;
    if caps.iter().any(|&c| c > remaining) {
        return Ok(true);
    }
    let size = sizes[idx] as usize;
    // lex lower bound from the previous subset of the same size
    let bound: Option<Vec<u32>> = (0..idx)
        .rev()
        .find(|&j| sizes[j] == sizes[idx])
        .map(|j| subsets[j].clone());
    let mut current: Vec<u32> = Vec::with_capacity(size);
    choose_elements(
        m,
        sizes,
        caps,
        subsets,
        &mut current,
        size,
        bound.as_deref(),
        true,
        visit,
    )
}

#[allow(clippy::too_many_arguments)]
fn choose_elements(
    m: u32,
    sizes: &[u32],
    caps: &mut [u8],
    subsets: &mut Vec<Vec<u32>>,
    current: &mut Vec<u32>,
    size: usize,
    bound: Option<&[u32]>,
    tight: bool,
    visit: &mut dyn FnMut(&CoverFamily) -> ControlFlow<()>,
) -> Result<bool, CoverError> {
    if current.len() == size {
        subsets.push(current.clone());
        let cont = fill_subsets(m, sizes, caps, subsets, visit)?;
        subsets.pop();
        return Ok(cont);
    }
    let pos = current.len();
    let mut lo = current.last().map(|&e| e + 1).unwrap_or(0);
    if tight {
        if let Some(b) = bound {
            lo = lo.max(b[pos]);
        }
    }
    for e in lo..m {
        if caps[e as usize] == 0 {
            continue;
        }
        let still_tight = tight && bound.map(|b| b[pos] == e).unwrap_or(false);
        caps[e as usize] -= 1;
        current.push(e);
        let cont = choose_elements(
            m, sizes, caps, subsets, current, size, bound, still_tight, visit,
        )?;
        current.pop();
        caps[e as usize] += 1;
        if !cont {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All cover families, eagerly collected (used for audits and small cases).
pub fn enumerate_cover_families(m: u32, sizes: &[u32]) -> Result<Vec<CoverFamily>, CoverError> {
    let mut out = Vec::new();
    visit_cover_families(m, sizes, &mut |fam| {
        out.push(fam.clone());
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// Visit the two-subset families {S, complement of S} for |S| = size: the
/// shape used by the square (d = 2) certificates, where every generator
/// lies in exactly one factor's annihilator set.
pub fn visit_complement_pairs(
    m: u32,
    size: u32,
    visit: &mut dyn FnMut(&CoverFamily) -> ControlFlow<()>,
) -> bool {
    // fix 0 in S when sizes are equal so each unordered pair appears once
    let dedupe_half = 2 * size == m;
    let mut subset: Vec<u32> = Vec::with_capacity(size as usize);
    fn rec(
        m: u32,
        size: u32,
        subset: &mut Vec<u32>,
        dedupe_half: bool,
        visit: &mut dyn FnMut(&CoverFamily) -> ControlFlow<()>,
    ) -> bool {
        if subset.len() == size as usize {
            let comp: Vec<u32> = (0..m).filter(|e| !subset.contains(e)).collect();
            let fam = CoverFamily {
                m,
                subsets: vec![subset.clone(), comp],
            };
            return visit(&fam).is_continue();
        }
        let lo = subset.last().map(|&e| e + 1).unwrap_or(0);
        for e in lo..m {
            if dedupe_half && subset.is_empty() && e > 0 {
                break;
            }
            subset.push(e);
            let cont = rec(m, size, subset, dedupe_half, visit);
            subset.pop();
            if !cont {
                return false;
            }
        }
        true
    }
    rec(m, size, &mut subset, dedupe_half, visit)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_families() {
        let fams = enumerate_cover_families(2, &[1, 1, 1, 1]).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(
            fams[0].subsets,
            vec![vec![0], vec![0], vec![1], vec![1]]
        );

        let fams = enumerate_cover_families(2, &[2, 2]).unwrap();
        assert_eq!(fams.len(), 1);
        assert_eq!(fams[0].subsets, vec![vec![0, 1], vec![0, 1]]);
    }

    #[test]
    fn infeasible_sizes_rejected() {
        assert_eq!(
            enumerate_cover_families(3, &[2, 2]),
            Err(CoverError::InfeasibleSizes {
                total: 4,
                expected: 6
            })
        );
    }

    #[test]
    fn exactly_twice_invariant_and_dedupe() {
        let fams = enumerate_cover_families(6, &[3, 3, 3, 1, 1, 1]).unwrap();
        assert!(!fams.is_empty());
        for fam in &fams {
            let mut counts = vec![0u32; 6];
            for s in &fam.subsets {
                assert!(s.windows(2).all(|w| w[0] < w[1]));
                for &e in s {
                    counts[e as usize] += 1;
                }
            }
            assert!(counts.iter().all(|&c| c == 2), "{fam:?}");
        }
        // equal-size groups are lex non-decreasing, so no two families are
        // reorderings of each other
        let mut seen = std::collections::HashSet::new();
        for fam in &fams {
            let mut canon = fam.subsets.clone();
            canon.sort();
            assert!(seen.insert(canon), "duplicate family {fam:?}");
        }
        // cross-check the count against a brute-force enumeration over
        // element-to-pair assignments
        let brute = brute_force_count(6, &[3, 3, 3, 1, 1, 1]);
        assert_eq!(fams.len(), brute);
    }

    /// Independent count: assign each element an unordered pair of subset
    /// slots, check size constraints, quotient by permutations of equal-size
    /// subsets via canonical sorted form.
    fn brute_force_count(m: u32, sizes: &[u32]) -> usize {
        let k = sizes.len();
        let pairs: Vec<(usize, usize)> = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .collect();
        let mut families = std::collections::HashSet::new();
        let mut assignment = vec![0usize; m as usize];
        loop {
            // check sizes
            let mut counts = vec![0u32; k];
            for (e, &pi) in assignment.iter().enumerate() {
                let (a, b) = pairs[pi];
                let _ = e;
                counts[a] += 1;
                counts[b] += 1;
            }
            if counts == sizes {
                let mut subsets: Vec<Vec<u32>> = vec![Vec::new(); k];
                for (e, &pi) in assignment.iter().enumerate() {
                    let (a, b) = pairs[pi];
                    subsets[a].push(e as u32);
                    subsets[b].push(e as u32);
                }
                // canonical: sort subsets within equal-size groups
                let mut canon = subsets.clone();
                canon.sort();
                families.insert(canon);
            }
            // odometer
            let mut pos = 0;
            loop {
                if pos == assignment.len() {
                    return families.len();
                }
                assignment[pos] += 1;
                if assignment[pos] == pairs.len() {
                    assignment[pos] = 0;
                    pos += 1;
                } else {
                    break;
                }
            }
        }
    }

    #[test]
    fn early_stop_works() {
        let mut seen = 0;
        let complete = visit_cover_families(6, &[3, 3, 3, 1, 1, 1], &mut |_| {
            seen += 1;
            if seen == 3 {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .unwrap();
        assert!(!complete);
        assert_eq!(seen, 3);
    }

    #[test]
    fn complement_pairs() {
        let mut fams = Vec::new();
        visit_complement_pairs(4, 2, &mut |f| {
            fams.push(f.clone());
            ControlFlow::Continue(())
        });
        // C(3,1) = 3 splits of {0..3} into two halves with 0 fixed in S
        assert_eq!(fams.len(), 3);
        for f in &fams {
            assert_eq!(f.subsets[0].len() + f.subsets[1].len(), 4);
        }
        let mut fams = Vec::new();
        visit_complement_pairs(12, 5, &mut |f| {
            fams.push(f.clone());
            ControlFlow::Continue(())
        });
        assert_eq!(fams.len(), 792); // C(12,5)
    }
}
