//! Renaud's family `B(n)`: `P(k)` minus `2^k - n` sets containing `k`,
//! deleted smallest first and balanced across `1..k-1` within a size.

use num_integer::binomial;

use crate::error::{Result, UcsError};
use crate::family::Family;
use crate::mask::SetMask;

/// Largest `k` for which `B(n)` is materialized.
pub const MATERIALIZE_MAX_K: u32 = 14;
/// Largest `k` for the closed form.
pub const BETA_MAX_K: u32 = 20;

/// Deletion schedule of `B(n)`.
///
/// Sets containing `k` of sizes `1..r` are all deleted, `v` of the
/// `C(k-1, r-1)` sets of size `r` are deleted, larger sets are kept.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaDecomposition {
    pub n: u64,
    pub k: u32,
    /// `2^k - n`.
    pub deleted: u64,
    /// Set size (including `k`) of the partially deleted level.
    pub r: u32,
    pub v: u64,
    /// `(size, count)` for each fully deleted level.
    pub full_levels: Vec<(u32, u64)>,
}

impl BetaDecomposition {
    pub fn new(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(UcsError::domain(format!("B(n) needs n >= 2, got {n}")));
        }
        let k = 64 - (n - 1).leading_zeros();
        if k > BETA_MAX_K {
            return Err(UcsError::Capacity { m: k, max: BETA_MAX_K });
        }
        let deleted = (1u64 << k) - n;
        let mut rest = deleted;
        let mut r = 1;
        let mut full_levels = Vec::new();
        while rest > 0 && rest >= level_capacity(k, r) {
            let c = level_capacity(k, r);
            full_levels.push((r, c));
            rest -= c;
            r += 1;
        }
        Ok(BetaDecomposition { n, k, deleted, r, v: rest, full_levels })
    }

    /// `2^{k-1} - Σ_{j=2}^{r-1} C(k-2, j-2) - ⌊(r-1) v / (k-1)⌋`.
    pub fn beta(&self) -> u64 {
        let k = self.k as u64;
        let top = 1u64 << (self.k - 1);
        if self.deleted == 0 {
            return top;
        }
        let full: u64 = (2..self.r as u64).map(|j| binomial(k - 2, j - 2)).sum();
        top - full - (self.r as u64 - 1) * self.v / (k - 1)
    }
}

/// Sets of size `size` containing `k` in `P(k)`.
fn level_capacity(k: u32, size: u32) -> u64 {
    binomial(k as u64 - 1, size as u64 - 1)
}

/// `β(n)` from the closed form, with its schedule.
pub fn beta(n: u64) -> Result<(u64, BetaDecomposition)> {
    let d = BetaDecomposition::new(n)?;
    Ok((d.beta(), d))
}

/// Materializes `B(n)` over `[k]`.
pub fn renaud_family(n: u64) -> Result<Family> {
    let d = BetaDecomposition::new(n)?;
    if d.k > MATERIALIZE_MAX_K {
        return Err(UcsError::Capacity { m: d.k, max: MATERIALIZE_MAX_K });
    }
    let k = d.k;
    let top = SetMask::singleton(k);
    let mut deleted = vec![false; 1usize << k];
    for x in 0..1u64 << (k - 1) {
        let size = x.count_ones() + 1;
        if size < d.r {
            deleted[(x | top.bits()) as usize] = true;
        }
    }
    if d.v > 0 {
        for s in balanced_selection(k - 1, d.r - 1, d.v as usize) {
            deleted[(s | top).bits() as usize] = true;
        }
    }
    let sets = (0..1u64 << k)
        .filter(|&x| !deleted[x as usize])
        .map(SetMask::from_bits);
    let f = Family::new(k, sets)?;
    debug_assert_eq!(f.len() as u64, n);
    Ok(f)
}

/// `count` distinct `size`-subsets of `[elements]` whose element degrees
/// differ by at most one, in ascending mask order.
///
/// Greedy pass: repeatedly take the smallest mask minimizing the resulting
/// maximum degree. Repair pass: while some degree exceeds another by two,
/// move the high element `a` out of a chosen set in favour of the low
/// element `b`. A chosen set with `a`, without `b`, whose swapped image is
/// unused always exists, since otherwise swapping would inject the
/// `a`-not-`b` sets into the `b`-not-`a` sets.
pub fn balanced_selection(elements: u32, size: u32, count: usize) -> Vec<SetMask> {
    assert!(size <= elements && elements < 32);
    let candidates = subsets_of_size(elements, size);
    assert!(count <= candidates.len(), "not enough {size}-subsets");
    let mut degree = vec![0u32; elements as usize];
    let mut chosen = vec![false; 1usize << elements];
    let mut current_max = 0;
    for _ in 0..count {
        let mut best: Option<(u32, u64)> = None;
        for &c in &candidates {
            if chosen[c as usize] {
                continue;
            }
            let mut after = current_max;
            let mut rest = c;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                after = after.max(degree[e] + 1);
                rest &= rest - 1;
            }
            if best.is_none_or(|(b, _)| after < b) {
                best = Some((after, c));
            }
        }
        let (after, c) = best.expect("candidate left");
        chosen[c as usize] = true;
        current_max = after;
        bump(&mut degree, c, 1);
    }

    loop {
        let (hi, &max) = degree.iter().enumerate().max_by_key(|&(i, d)| (*d, std::cmp::Reverse(i))).unwrap_or((0, &0));
        let (lo, &min) = degree.iter().enumerate().min_by_key(|&(i, d)| (*d, i)).unwrap_or((0, &0));
        if max <= min + 1 {
            break;
        }
        let (a, b) = (1u64 << hi, 1u64 << lo);
        let s = candidates
            .iter()
            .copied()
            .find(|&s| chosen[s as usize] && s & a != 0 && s & b == 0 && !chosen[(s ^ a ^ b) as usize])
            .expect("a swap exists whenever degrees differ by two");
        chosen[s as usize] = false;
        chosen[(s ^ a ^ b) as usize] = true;
        degree[hi] -= 1;
        degree[lo] += 1;
    }

    let mut out: Vec<u64> = candidates.into_iter().filter(|&c| chosen[c as usize]).collect();
    out.sort_unstable();
    out.into_iter().map(SetMask::from_bits).collect()
}

fn bump(degree: &mut [u32], mask: u64, by: u32) {
    let mut rest = mask;
    while rest != 0 {
        degree[rest.trailing_zeros() as usize] += by;
        rest &= rest - 1;
    }
}

/// All `size`-subsets of the low `elements` bits in ascending numeric order.
fn subsets_of_size(elements: u32, size: u32) -> Vec<u64> {
    if size == 0 {
        return vec![0];
    }
    let limit = 1u64 << elements;
    let mut out = Vec::new();
    let mut x = (1u64 << size) - 1;
    while x < limit {
        out.push(x);
        // Gosper's hack: next integer with the same popcount
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}
