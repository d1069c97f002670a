//! Brute-force φ(n): every `n`-subset of `P(m)` in increasing mask order.
//!
//! The only pruning is exact: a family is union-closed only if each union of
//! two chosen sets is eventually chosen, and since sets are chosen in
//! increasing order the next choice may not skip past the smallest missing
//! union.

use std::collections::BTreeSet;
use std::time::Instant;

use crate::error::{Result, UcsError};
use crate::family::Family;
use crate::mask::SetMask;

use super::{SearchResult, SearchStats};

/// Largest `n` and `m_max` the naive oracle accepts.
pub const NAIVE_MAX: u32 = 6;

struct Walk {
    n: usize,
    m: u32,
    limit: u64,
    chosen: Vec<u64>,
    best: Option<(u32, Vec<u64>)>,
    stats: SearchStats,
}

impl Walk {
    fn rec(&mut self, start: u64, pending: &BTreeSet<u64>) {
        self.stats.visited += 1;
        if self.chosen.len() == self.n {
            self.stats.leaves += 1;
            if pending.is_empty() {
                self.leaf();
            }
            return;
        }
        let slots = self.n - self.chosen.len();
        if pending.len() > slots {
            return;
        }
        let stop = pending.first().copied().unwrap_or(self.limit - 1);
        for x in start..=stop {
            let mut next = pending.clone();
            next.remove(&x);
            for &c in &self.chosen {
                let u = c | x;
                if u != x && u != c {
                    next.insert(u);
                }
            }
            self.chosen.push(x);
            self.rec(x + 1, &next);
            self.chosen.pop();
        }
    }

    fn leaf(&mut self) {
        if self.chosen.iter().all(|&x| x == 0) {
            return;
        }
        let family = Family::new(self.m, self.chosen.iter().map(|&b| SetMask::from_bits(b)))
            .expect("masks fit");
        debug_assert!(family.is_union_closed());
        let (_, top) = family.max_frequency().expect("non-empty member");
        self.stats.conjecture_checked += 1;
        if 2 * (top as usize) < family.len() {
            self.stats.conjecture_violations += 1;
        }
        if self.best.as_ref().is_none_or(|(b, _)| top < *b) {
            self.best = Some((top, self.chosen.clone()));
        }
    }
}

/// Exact φ(n) by full enumeration over `P(m_max)`. The witness is the first
/// optimal family met in increasing mask order.
pub fn phi_naive(n: usize, m_max: u32) -> Result<SearchResult> {
    if n == 0 || n > NAIVE_MAX as usize {
        return Err(UcsError::domain(format!("naive search needs 1 <= n <= {NAIVE_MAX}, got {n}")));
    }
    if m_max == 0 || m_max > NAIVE_MAX {
        return Err(UcsError::Capacity { m: m_max, max: NAIVE_MAX });
    }
    let started = Instant::now();
    let mut walk = Walk { n, m: m_max, limit: 1 << m_max, chosen: Vec::new(), best: None, stats: SearchStats::default() };
    walk.rec(0, &BTreeSet::new());
    let (phi, masks) = walk
        .best
        .ok_or_else(|| UcsError::domain(format!("no union-closed family of {n} sets over {m_max} elements")))?;
    let witness = Family::new(m_max, masks.into_iter().map(SetMask::from_bits))?;
    let m = witness.universe().max_element().unwrap_or(1);
    Ok(SearchResult {
        n,
        phi,
        witness: witness.with_universe(m)?,
        upper_bound: None,
        stats: walk.stats,
        duration: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_values() {
        assert_eq!(phi_naive(1, 1).unwrap().phi, 1);
        let two = phi_naive(2, 2).unwrap();
        assert_eq!(two.phi, 1);
        assert_eq!(two.witness.sets(), &[SetMask::EMPTY, SetMask::from_elements([1])]);
        assert_eq!(phi_naive(3, 3).unwrap().phi, 2);
    }

    #[test]
    fn witnesses_are_valid() {
        for n in 1..=5 {
            let r = phi_naive(n, n as u32).unwrap();
            assert_eq!(r.witness.len(), n);
            assert!(r.witness.is_union_closed());
            assert_eq!(r.witness.max_frequency().unwrap().1, r.phi);
            assert_eq!(r.stats.conjecture_violations, 0);
        }
    }

    #[test]
    fn rejects_large_inputs() {
        assert!(phi_naive(7, 6).is_err());
        assert!(phi_naive(3, 7).is_err());
        assert!(phi_naive(0, 3).is_err());
    }
}
