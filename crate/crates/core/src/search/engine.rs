//! Exhaustive enumeration of separating, empty-set-free union-closed
//! families with a fixed number of sets and a frequency cap.
//!
//! A union-closed family is the closure of its basis (union-irreducible
//! members). Basis sets are chosen level by level in increasing size; a set
//! of size `s` can only be produced by unions of strictly smaller sets, so a
//! candidate that is not yet in the closure when its level is reached stays
//! irreducible, and every family is generated exactly once. After a level is
//! finished the state is determined by the closure alone, so isomorphic
//! closures at the same level have isomorphic futures and all but the first
//! are skipped.

use std::collections::HashSet;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::canon::{canonical_masks, cmp_canonical};
use crate::mask::SetMask;

use super::SearchStats;

/// Largest universe the engine handles.
pub(crate) const ENGINE_MAX_UNIVERSE: u32 = 16;

pub(crate) struct Problem {
    /// Number of sets, none of them empty.
    pub target: usize,
    /// Frequency cap.
    pub cap: u32,
    /// Universe size.
    pub universe: u32,
    pub workers: usize,
}

pub(crate) struct Outcome {
    /// Canonical mask list of the smallest family found.
    pub best: Option<Vec<u64>>,
    pub stats: SearchStats,
}

pub(crate) struct Budget {
    pub limit: Option<u64>,
    pub used: AtomicU64,
    pub exhausted: AtomicBool,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Self {
        Budget { limit, used: AtomicU64::new(0), exhausted: AtomicBool::new(false) }
    }

    #[inline]
    fn tick(&self) -> bool {
        let Some(limit) = self.limit else { return true };
        if self.used.fetch_add(1, Ordering::Relaxed) >= limit {
            self.exhausted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }

    pub fn is_exhausted(&self) -> bool {
        self.exhausted.load(Ordering::Relaxed)
    }
}

/// Runs the enumeration. Branches below the split level are explored in
/// parallel; per-branch statistics and the minimum witness are combined in
/// branch order, so the outcome does not depend on `workers`.
pub(crate) fn enumerate(problem: &Problem, budget: &Budget) -> Outcome {
    assert!(problem.universe <= ENGINE_MAX_UNIVERSE);
    let levels = levels(problem.universe);
    let split = if problem.universe >= 3 { Some(2) } else { None };

    let mut root = Engine::new(problem, &levels, budget, split);
    root.dfs(1, 0);
    let frontier = std::mem::take(&mut root.frontier);
    let mut outcome = Outcome { best: root.best.take(), stats: root.stats };
    if frontier.is_empty() {
        return outcome;
    }

    let run_branch = |gens: &Vec<u64>| {
        let mut e = Engine::new(problem, &levels, budget, None);
        for &g in gens {
            assert!(e.apply(g), "frontier state replays");
        }
        e.dfs(3, 0);
        (e.best.take(), e.stats)
    };
    let results: Vec<(Option<Vec<u64>>, SearchStats)> = if problem.workers <= 1 {
        frontier.iter().map(run_branch).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(problem.workers)
            .build()
            .expect("thread pool");
        pool.install(|| frontier.par_iter().map(run_branch).collect())
    };
    for (best, stats) in results {
        outcome.stats.absorb(&stats);
        outcome.best = min_canonical(outcome.best, best);
    }
    outcome
}

pub(crate) fn min_canonical(a: Option<Vec<u64>>, b: Option<Vec<u64>>) -> Option<Vec<u64>> {
    match (a, b) {
        (Some(x), Some(y)) => Some(if cmp_canonical(&y, &x).is_lt() { y } else { x }),
        (x, None) => x,
        (None, y) => y,
    }
}

/// `levels[s]`: all masks over the universe with `s` elements, ascending.
fn levels(universe: u32) -> Vec<Vec<u64>> {
    let mut levels = vec![Vec::new(); universe as usize + 1];
    for x in 1..1u64 << universe {
        levels[x.count_ones() as usize].push(x);
    }
    levels
}

struct Engine<'a> {
    target: usize,
    cap: u32,
    universe: u32,
    levels: &'a [Vec<u64>],
    budget: &'a Budget,
    member: Vec<bool>,
    sets: Vec<u64>,
    freq: [u32; ENGINE_MAX_UNIVERSE as usize],
    gens: Vec<u64>,
    seen: Vec<HashSet<Vec<u64>>>,
    split: Option<u32>,
    frontier: Vec<Vec<u64>>,
    best: Option<Vec<u64>>,
    stats: SearchStats,
}

impl<'a> Engine<'a> {
    fn new(problem: &Problem, levels: &'a [Vec<u64>], budget: &'a Budget, split: Option<u32>) -> Self {
        Engine {
            target: problem.target,
            cap: problem.cap,
            universe: problem.universe,
            levels,
            budget,
            member: vec![false; 1usize << problem.universe],
            sets: Vec::with_capacity(problem.target + 1),
            freq: [0; ENGINE_MAX_UNIVERSE as usize],
            gens: Vec::new(),
            seen: vec![HashSet::new(); problem.universe as usize + 1],
            split,
            frontier: Vec::new(),
            best: None,
            stats: SearchStats::default(),
        }
    }

    fn push(&mut self, x: u64) {
        self.member[x as usize] = true;
        self.sets.push(x);
        let mut rest = x;
        while rest != 0 {
            self.freq[rest.trailing_zeros() as usize] += 1;
            rest &= rest - 1;
        }
    }

    fn undo(&mut self, mark: usize) {
        while self.sets.len() > mark {
            let x = self.sets.pop().expect("above mark");
            self.member[x as usize] = false;
            let mut rest = x;
            while rest != 0 {
                self.freq[rest.trailing_zeros() as usize] -= 1;
                rest &= rest - 1;
            }
        }
    }

    fn over_cap(&self, x: u64) -> bool {
        let mut rest = x;
        while rest != 0 {
            if self.freq[rest.trailing_zeros() as usize] > self.cap {
                return true;
            }
            rest &= rest - 1;
        }
        false
    }

    /// Adds `g` and every union of `g` with a member. Returns false (leaving
    /// partial state for the caller to undo) when the size or frequency cap
    /// is exceeded.
    fn apply(&mut self, g: u64) -> bool {
        let before = self.sets.len();
        self.push(g);
        if self.sets.len() > self.target || self.over_cap(g) {
            return false;
        }
        for i in 0..before {
            let u = self.sets[i] | g;
            if !self.member[u as usize] {
                self.push(u);
                if self.sets.len() > self.target || self.over_cap(u) {
                    return false;
                }
            }
        }
        true
    }

    fn check_conjecture(&mut self) {
        if self.sets.is_empty() {
            return;
        }
        let top = self.freq[..self.universe as usize].iter().copied().max().unwrap_or(0);
        self.stats.conjecture_checked += 1;
        if 2 * (top as usize) < self.sets.len() {
            self.stats.conjecture_violations += 1;
        }
    }

    fn separating(&self) -> bool {
        let mut cols: Vec<u64> = Vec::with_capacity(self.universe as usize);
        for e in 0..self.universe {
            let mut col = 0u64;
            for (i, &s) in self.sets.iter().enumerate() {
                if s >> e & 1 == 1 {
                    col |= 1 << i;
                }
            }
            if col != 0 {
                cols.push(col);
            }
        }
        cols.sort_unstable();
        cols.windows(2).all(|w| w[0] != w[1])
    }

    fn leaf(&mut self) {
        self.stats.leaves += 1;
        if !self.separating() {
            return;
        }
        let masks: Vec<SetMask> = self.sets.iter().map(|&b| SetMask::from_bits(b)).collect();
        let canon = canonical_masks(&masks);
        self.best = min_canonical(self.best.take(), Some(canon));
    }

    fn dfs(&mut self, level: u32, start: usize) {
        if !self.budget.tick() {
            return;
        }
        self.stats.visited += 1;
        self.check_conjecture();
        if self.sets.len() == self.target {
            self.leaf();
            return;
        }
        let levels = self.levels;
        for (idx, &g) in levels[level as usize].iter().enumerate().skip(start) {
            if self.member[g as usize] {
                continue;
            }
            let mark = self.sets.len();
            if self.apply(g) {
                self.gens.push(g);
                self.dfs(level, idx + 1);
                self.gens.pop();
            }
            self.undo(mark);
            if self.budget.is_exhausted() {
                return;
            }
        }
        if level >= self.universe {
            return;
        }
        let masks: Vec<SetMask> = self.sets.iter().map(|&b| SetMask::from_bits(b)).collect();
        if !self.seen[level as usize].insert(canonical_masks(&masks)) {
            self.stats.isomorphs_skipped += 1;
            return;
        }
        if self.split == Some(level) {
            self.frontier.push(self.gens.clone());
            return;
        }
        self.dfs(level + 1, 0);
    }
}
