//! Up-sets and the block families `C_{s,k} = P(sk) ∪ up-set`, where the
//! up-set on `sk + 1` elements is generated by the `k` disjoint blocks of
//! size `s`, each joined with the top element `sk + 1`.

use std::collections::HashSet;
use std::ops::RangeInclusive;

use crate::error::{Result, UcsError};
use crate::family::Family;
use crate::mask::{Element, SetMask, MAX_UNIVERSE};

use super::renaud::{beta, renaud_family, MATERIALIZE_MAX_K};

/// Largest `sk + 1` for which `C_{s,k}` is materialized.
pub const BLOCK_MATERIALIZE_MAX_UNIVERSE: u32 = 24;

/// Every superset within `[m]` of some generator.
pub fn up_set(generators: &[SetMask], m: u32) -> Result<Family> {
    if m == 0 || m > MAX_UNIVERSE {
        return Err(UcsError::Capacity { m, max: MAX_UNIVERSE });
    }
    if generators.is_empty() {
        return Err(UcsError::domain("up_set needs at least one generator"));
    }
    if let Some(bad) = generators.iter().find(|g| !g.fits(m)) {
        return Err(UcsError::SetOutOfRange { set: bad.to_string(), m });
    }
    let full = SetMask::full(m);
    let free_max = generators.iter().map(|g| m - g.len()).max().unwrap_or(0);
    if free_max > 24 {
        return Err(UcsError::Capacity { m: free_max, max: 24 });
    }
    let mut out: Vec<u64> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    for &g in generators {
        let free = (full - g).bits();
        // walk every subset of the free positions
        let mut sub = free;
        loop {
            let s = g.bits() | sub;
            if seen.insert(s) {
                out.push(s);
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & free;
        }
    }
    Family::new(m, out.into_iter().map(SetMask::from_bits))
}

/// Block size `s` and block count `k` of `C_{s,k}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockUpsetParams {
    s: u32,
    k: u32,
}

impl BlockUpsetParams {
    /// `s, k >= 2`, not both 2, `sk + 1 <= 64`.
    pub fn new(s: u32, k: u32) -> Result<Self> {
        if s < 2 || k < 2 {
            return Err(UcsError::domain(format!("block parameters must be >= 2, got s={s}, k={k}")));
        }
        if s == 2 && k == 2 {
            return Err(UcsError::domain("s and k may not both equal 2"));
        }
        let m = s * k + 1;
        if m > MAX_UNIVERSE {
            return Err(UcsError::Capacity { m, max: MAX_UNIVERSE });
        }
        Ok(BlockUpsetParams { s, k })
    }

    /// Two blocks `{1..N}` and `{N+1..2N}`: the `C_{2,N}` family of the gap
    /// argument. `N = 2` is allowed here and gives a copy of `B(23)`.
    pub fn two_blocks(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(UcsError::domain(format!("two-block family needs N >= 2, got {n}")));
        }
        if 2 * n + 1 > MAX_UNIVERSE {
            return Err(UcsError::Capacity { m: 2 * n + 1, max: MAX_UNIVERSE });
        }
        Ok(BlockUpsetParams { s: n, k: 2 })
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn universe(&self) -> u32 {
        self.s * self.k + 1
    }

    pub fn top(&self) -> Element {
        self.s * self.k + 1
    }

    pub fn blocks(&self) -> Vec<SetMask> {
        (0..self.k)
            .map(|i| SetMask::from_elements(i * self.s + 1..=(i + 1) * self.s))
            .collect()
    }

    /// Blocks joined with the top element.
    pub fn generators(&self) -> Vec<SetMask> {
        self.blocks().into_iter().map(|b| b.with(self.top())).collect()
    }

    /// Levels `s + 2 ..= k(s - 1) + 1` where the up-set has holes.
    pub fn hole_levels(&self) -> RangeInclusive<u32> {
        self.s + 2..=self.k * (self.s - 1) + 1
    }

    /// `2^{sk} - (2^s - 1)^k`.
    pub fn upset_len(&self) -> u128 {
        (1u128 << (self.s * self.k)) - ((1u128 << self.s) - 1).pow(self.k)
    }

    /// Frequency within the up-set of each element of `[sk]`:
    /// `2^{sk-1} - (2^{s-1} - 1)(2^s - 1)^{k-1}`.
    pub fn upset_element_frequency(&self) -> u128 {
        (1u128 << (self.s * self.k - 1))
            - ((1u128 << (self.s - 1)) - 1) * ((1u128 << self.s) - 1).pow(self.k - 1)
    }

    /// `|C_{s,k}| = 2^{sk} + |up-set|`.
    pub fn family_len(&self) -> u128 {
        (1u128 << (self.s * self.k)) + self.upset_len()
    }
}

/// Materializes `C_{s,k}` over `[sk + 1]`.
pub fn block_upset_family(params: &BlockUpsetParams) -> Result<Family> {
    let m = params.universe();
    if m > BLOCK_MATERIALIZE_MAX_UNIVERSE {
        return Err(UcsError::Capacity { m, max: BLOCK_MATERIALIZE_MAX_UNIVERSE });
    }
    let lower = (0..1u64 << (m - 1)).map(SetMask::from_bits);
    let upper = up_set(&params.generators(), m)?;
    Family::new(m, lower.chain(upper.sets().iter().copied()))
}

/// Members containing `top`, counted per set size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelCount {
    pub size: u32,
    pub present: u64,
    pub possible: u64,
}

impl LevelCount {
    pub fn is_hole(&self) -> bool {
        self.present > 0 && self.present < self.possible
    }
}

/// Per-size counts of members containing `top`, sizes `1..=m`.
pub fn level_profile(f: &Family, top: Element) -> Vec<LevelCount> {
    let m = f.m();
    let mut present = vec![0u64; m as usize + 1];
    for s in f.sets().iter().filter(|s| s.contains(top)) {
        present[s.len() as usize] += 1;
    }
    (1..=m)
        .map(|size| LevelCount {
            size,
            present: present[size as usize],
            possible: num_integer::binomial(m as u64 - 1, size as u64 - 1),
        })
        .collect()
}

/// Result of comparing sorted size lists.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    /// Pointwise `<=` with at least one strict position.
    pub holds: bool,
    pub strict_positions: usize,
    /// First position where the left size exceeds the right one.
    pub first_violation: Option<usize>,
}

/// Whether a size-non-decreasing bijection from `c` onto `b` exists that
/// strictly grows at least one set.
pub fn size_multiset_dominance(c: &Family, b: &Family) -> Result<Dominance> {
    if c.len() != b.len() {
        return Err(UcsError::domain(format!(
            "families differ in size: {} vs {}",
            c.len(),
            b.len()
        )));
    }
    let sizes = |f: &Family| -> Vec<u32> {
        // canonical order is already size-sorted
        f.sets().iter().map(|s| s.len()).collect()
    };
    let (cs, bs) = (sizes(c), sizes(b));
    let first_violation = cs.iter().zip(&bs).position(|(x, y)| x > y);
    let strict_positions = cs.iter().zip(&bs).filter(|(x, y)| x < y).count();
    Ok(Dominance {
        holds: first_violation.is_none() && strict_positions > 0,
        strict_positions,
        first_violation,
    })
}

/// Max frequencies of the two-block family and of Renaud's family of the
/// same size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapReport {
    pub n: u32,
    pub sets: u64,
    pub c_maxfreq: u64,
    pub b_maxfreq: u64,
    /// Max frequency of the materialized `B(sets)`, when within the cap.
    pub b_materialized: Option<u64>,
    pub gap: u64,
}

impl GapReport {
    pub fn render(&self) -> String {
        format!(
            "N: {}\nsets: {}\nc_maxfreq: {}\nb_maxfreq: {}\nb_materialized: {}\ngap: {}\n",
            self.n,
            self.sets,
            self.c_maxfreq,
            self.b_maxfreq,
            self.b_materialized.map_or_else(|| "n/a".into(), |v| v.to_string()),
            self.gap
        )
    }
}

/// Compares the two-block family on `2N + 1` elements with `B(|C|)`.
pub fn gap_report(n: u32) -> Result<GapReport> {
    if !(2..=6).contains(&n) {
        return Err(UcsError::domain(format!("gap_report needs 2 <= N <= 6, got {n}")));
    }
    let params = BlockUpsetParams::two_blocks(n)?;
    let c = block_upset_family(&params)?;
    let sets = c.len() as u64;
    let c_maxfreq = c.max_frequency()?.1 as u64;
    let (b_maxfreq, decomposition) = beta(sets)?;
    let b_materialized = if decomposition.k <= MATERIALIZE_MAX_K {
        let b = renaud_family(sets)?;
        let v = b.max_frequency()?.1 as u64;
        if v != b_maxfreq {
            return Err(UcsError::domain(format!(
                "beta({sets}) closed form {b_maxfreq} disagrees with materialized {v}"
            )));
        }
        Some(v)
    } else {
        None
    };
    Ok(GapReport {
        n,
        sets,
        c_maxfreq,
        b_maxfreq,
        b_materialized,
        gap: b_maxfreq.saturating_sub(c_maxfreq),
    })
}
