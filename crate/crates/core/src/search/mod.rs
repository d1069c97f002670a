//! φ(n): the least possible maximum element frequency over union-closed
//! families of `n` sets with at least one non-empty member.
//!
//! [`phi_search`] tries caps `t = ⌈log2 n⌉, ...` in turn and asks whether
//! some family meets the cap; the first feasible cap is φ(n). Only
//! separating families need to be enumerated, since merging elements with
//! identical membership keeps the size and every frequency, and a separating
//! family on `m` elements has an element of frequency at least `m`, so the
//! universe at cap `t` has at most `t` elements.

mod engine;
mod naive;

use std::time::{Duration, Instant};

use crate::constructions::{beta, conway, renaud_family};
use crate::error::{Result, UcsError};
use crate::family::Family;
use crate::mask::SetMask;

use engine::{enumerate, min_canonical, Budget, Problem, ENGINE_MAX_UNIVERSE};
pub use naive::{phi_naive, NAIVE_MAX};

/// Largest `n` accepted by [`phi_search`].
pub const SEARCH_MAX_N: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: usize,
    /// Universe cap; `None` means `min(n, 16)`.
    pub m_max: Option<u32>,
    pub workers: usize,
    pub naive: bool,
    /// Node limit across the whole run; `None` for unlimited.
    pub node_budget: Option<u64>,
}

impl SearchConfig {
    pub fn new(n: usize) -> Self {
        SearchConfig { n, m_max: None, workers: 1, naive: false, node_budget: None }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn with_m_max(mut self, m_max: u32) -> Self {
        self.m_max = Some(m_max);
        self
    }

    pub fn with_naive(mut self, naive: bool) -> Self {
        self.naive = naive;
        self
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = Some(budget);
        self
    }

    fn effective_m_max(&self) -> u32 {
        self.m_max.unwrap_or((self.n as u32).min(ENGINE_MAX_UNIVERSE))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Search nodes entered.
    pub visited: u64,
    /// Nodes holding a candidate of the target size.
    pub leaves: u64,
    /// Level states skipped as isomorphic to an earlier one.
    pub isomorphs_skipped: u64,
    /// Visited families on which the conjecture was checked.
    pub conjecture_checked: u64,
    pub conjecture_violations: u64,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.visited += other.visited;
        self.leaves += other.leaves;
        self.isomorphs_skipped += other.isomorphs_skipped;
        self.conjecture_checked += other.conjecture_checked;
        self.conjecture_violations += other.conjecture_violations;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub n: usize,
    pub phi: u32,
    /// Canonical and lexicographically smallest for [`phi_search`]; the first
    /// optimum in mask order for [`phi_naive`].
    pub witness: Family,
    /// Seed bound `min(β(n), a(n))` used by [`phi_search`].
    pub upper_bound: Option<u32>,
    pub stats: SearchStats,
    pub duration: Duration,
}

/// Upper bound on φ(n) together with a family attaining it.
fn incumbent(n: usize) -> Result<(u32, Family)> {
    if n == 1 {
        return Ok((1, Family::new(1, [SetMask::singleton(1)])?));
    }
    let (b, _) = beta(n as u64)?;
    let a = conway(n)[n - 1];
    debug_assert!(b <= a);
    Ok((b.min(a) as u32, renaud_family(n as u64)?))
}

/// Exact φ(n) with a canonical minimum witness.
pub fn phi_search(config: &SearchConfig) -> Result<SearchResult> {
    let n = config.n;
    if config.naive {
        return phi_naive(n, config.m_max.unwrap_or(n.min(NAIVE_MAX as usize) as u32));
    }
    if n == 0 || n > SEARCH_MAX_N {
        return Err(UcsError::domain(format!("phi search needs 1 <= n <= {SEARCH_MAX_N}, got {n}")));
    }
    let m_max = config.effective_m_max();
    if m_max == 0 || m_max > ENGINE_MAX_UNIVERSE {
        return Err(UcsError::Capacity { m: m_max, max: ENGINE_MAX_UNIVERSE });
    }
    if config.workers == 0 {
        return Err(UcsError::domain("workers must be at least 1"));
    }

    let started = Instant::now();
    let (upper, seed) = incumbent(n)?;
    let budget = Budget::new(config.node_budget);
    let mut stats = SearchStats::default();
    let lower = (usize::BITS - (n - 1).leading_zeros()).max(1);

    for cap in lower..=upper {
        let mut run = |target: usize| -> Option<Vec<u64>> {
            let problem = Problem {
                target,
                cap,
                universe: cap.min(m_max).min(target as u32),
                workers: config.workers,
            };
            let out = enumerate(&problem, &budget);
            stats.absorb(&out.stats);
            out.best
        };
        // with the empty set, the rest is an empty-set-free family of n - 1
        let with_empty = if n >= 2 {
            run(n - 1).map(|mut masks| {
                masks.insert(0, 0);
                masks
            })
        } else {
            None
        };
        let without = run(n);
        if budget.is_exhausted() {
            return Err(UcsError::Budget {
                budget: config.node_budget.unwrap_or(0),
                incumbent: upper,
                witness: seed,
            });
        }
        if let Some(masks) = min_canonical(with_empty, without) {
            let m = masks.iter().fold(0u64, |acc, &x| acc | x).count_ones().max(1);
            let witness = Family::new(m, masks.into_iter().map(SetMask::from_bits))?;
            return Ok(SearchResult {
                n,
                phi: cap,
                witness,
                upper_bound: Some(upper),
                stats,
                duration: started.elapsed(),
            });
        }
    }
    // the universe cap may exclude every family up to the seed bound
    Err(UcsError::domain(format!(
        "no union-closed family of {n} sets with maximum frequency <= {upper} over {m_max} elements"
    )))
}

/// One row of [`verify_phi_table`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiRow {
    pub n: usize,
    pub phi: u32,
    pub a: u64,
    /// `None` at `n = 1`, where `β` is undefined.
    pub beta: Option<u64>,
    pub conjecture_violations: u64,
}

impl PhiRow {
    pub fn equals_a(&self) -> bool {
        self.phi as u64 == self.a
    }

    pub fn bounds_hold(&self) -> bool {
        self.phi as u64 <= self.a && self.beta.is_none_or(|b| self.phi as u64 <= b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiTable {
    pub rows: Vec<PhiRow>,
}

impl PhiTable {
    pub fn phis(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.phi).collect()
    }

    pub fn bounds_hold(&self) -> bool {
        self.rows.iter().all(PhiRow::bounds_hold)
    }

    /// `φ(n+1) - φ(n) ∈ {0, 1}` across the table.
    pub fn steps_hold(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].phi == w[0].phi || w[1].phi == w[0].phi + 1)
    }

    pub fn conjecture_violations(&self) -> u64 {
        self.rows.iter().map(|r| r.conjecture_violations).sum()
    }

    pub fn render(&self) -> String {
        let mut out = String::from("n phi a beta phi_eq_a\n");
        for r in &self.rows {
            let beta = r.beta.map_or("-".to_string(), |b| b.to_string());
            out.push_str(&format!("{} {} {} {} {}\n", r.n, r.phi, r.a, beta, r.equals_a()));
        }
        out
    }
}

/// Computes φ(1..=limit) alongside `a(n)` and `β(n)`; check the bounds with
/// [`PhiTable::bounds_hold`].
pub fn verify_phi_table(limit: usize, workers: usize) -> Result<PhiTable> {
    if limit == 0 || limit > SEARCH_MAX_N {
        return Err(UcsError::domain(format!("table limit must be in 1..={SEARCH_MAX_N}, got {limit}")));
    }
    let a = conway(limit);
    let mut rows = Vec::with_capacity(limit);
    for n in 1..=limit {
        let r = phi_search(&SearchConfig::new(n).with_workers(workers))?;
        let beta = if n >= 2 { Some(beta(n as u64)?.0) } else { None };
        rows.push(PhiRow { n, phi: r.phi, a: a[n - 1], beta, conjecture_violations: r.stats.conjecture_violations });
    }
    let table = PhiTable { rows };
    Ok(table)
}
