//! The S sub-collection of a separating union-closed family and the
//! minimal-counterexample deductions built on it.
//!
//! With elements relabeled so that frequencies are non-decreasing, the sets
//! `A_i = ∪{A : i ∉ A}` for `i = 1..m-1`, together with `A_0 = U`, are
//! distinct members forming a staircase: `i ∉ A_i` and `{i+1..m} ⊆ A_i`.

use std::fmt;

use crate::error::{Result, UcsError};
use crate::family::{ConjectureVerdict, Family};
use crate::mask::{Element, SetMask};

/// Renames `U(f)` onto `1..=|U|` so frequencies are non-decreasing, ties kept
/// in original order. Returns the relabeled family and `perm` with
/// `perm[new - 1] = old`.
pub fn frequency_order_relabel(f: &Family) -> Result<(Family, Vec<Element>)> {
    if f.universe().is_empty() {
        return Err(UcsError::NoUniverse);
    }
    if !f.is_separating() {
        return Err(UcsError::domain(
            "frequency ordering needs a separating family; take the separating quotient first",
        ));
    }
    if !f.is_union_closed() {
        return Err(UcsError::domain("frequency ordering needs a union-closed family"));
    }
    let freq = f.frequencies();
    let mut perm: Vec<Element> = f.universe().elements().collect();
    perm.sort_by_key(|&e| (freq.get(e), e));
    let mut new_of = vec![0u32; f.m() as usize + 1];
    for (i, &old) in perm.iter().enumerate() {
        new_of[old as usize] = i as u32 + 1;
    }
    let relabeled = f.relabel(perm.len() as u32, |e| new_of[e as usize])?;
    Ok((relabeled, perm))
}

/// Entry of the 0/1/? staircase pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pattern {
    Zero,
    One,
    Unknown,
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pattern::Zero => "0",
            Pattern::One => "1",
            Pattern::Unknown => "?",
        })
    }
}

/// Rows `A_0..A_{m-1}` with per-element row counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct STable {
    m: u32,
    rows: Vec<SetMask>,
    s_frequency: Vec<u32>,
}

impl STable {
    pub fn m(&self) -> u32 {
        self.m
    }

    /// `rows()[i]` is `A_i`; `rows()[0]` is the universe.
    pub fn rows(&self) -> &[SetMask] {
        &self.rows
    }

    pub fn s_frequency(&self, e: Element) -> u32 {
        self.s_frequency[(e - 1) as usize]
    }

    /// In at least `m - 1` rows. Element `m` lies in all `m` rows.
    pub fn is_full(&self, e: Element) -> bool {
        self.s_frequency(e) + 1 >= self.m
    }

    /// The forced pattern: row `i >= 1` has 0 at `i`, 1 after it, `?` before.
    /// Row 0 is all ones.
    pub fn pattern(&self, row: usize, e: Element) -> Pattern {
        let i = row as u32;
        if row == 0 || e > i {
            Pattern::One
        } else if e == i {
            Pattern::Zero
        } else {
            Pattern::Unknown
        }
    }

    /// Rows listed from `A_{m-1}` down to `A_0`, pattern then actual
    /// membership, one row per line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for row in (0..self.rows.len()).rev() {
            let pat: String = (1..=self.m).map(|e| self.pattern(row, e).to_string()).collect();
            let actual: String = (1..=self.m)
                .map(|e| if self.rows[row].contains(e) { '1' } else { '0' })
                .collect();
            out.push_str(&format!("A_{row}: {pat} {actual}\n"));
        }
        out
    }

    /// Smallest full element in `1..m-1` dominating `i`, located by following
    /// the ascending chain `i -> j` (smallest `j > i` with `i ∉ A_j`) until a
    /// full row count is reached.
    pub fn lemma1_witness(&self, f: &Family, i: Element) -> Result<Element> {
        let m = self.m;
        if i == 0 || i > m {
            return Err(UcsError::ElementOutOfRange { element: i, m });
        }
        if i == m || self.is_full(i) {
            return Err(UcsError::NotApplicable(format!(
                "element {i} already lies in {} of {m} rows",
                self.s_frequency(i)
            )));
        }
        let mut cur = i;
        let mut steps = 0;
        let chain_end = loop {
            let next = (cur + 1..m)
                .find(|&j| !self.rows[j as usize].contains(cur))
                .expect("an element outside m-1 rows misses some A_j with j above it");
            if self.is_full(next) {
                break next;
            }
            cur = next;
            steps += 1;
            assert!(steps <= m, "ascending chain exceeded m steps");
        };
        debug_assert!(dominates_unchecked(f, chain_end, i));
        let best = (1..m)
            .find(|&k| self.is_full(k) && dominates_unchecked(f, k, i))
            .expect("chain end is a candidate");
        Ok(best)
    }

    /// Smallest element of maximal frequency in `sub` that is full in this
    /// table.
    pub fn corollary1_witness(&self, f: &Family, sub: &Family) -> Result<Element> {
        if sub.is_empty() {
            return Err(UcsError::domain("sub-collection is empty"));
        }
        if let Some(s) = sub.sets().iter().find(|&&s| !f.contains(s)) {
            return Err(UcsError::domain(format!("{s} is not a member of the family")));
        }
        let freq = crate::family::FrequencyTable::of(self.m, sub.sets());
        let (_, top) = freq.max();
        (1..=self.m)
            .find(|&e| freq.get(e) == top && self.is_full(e))
            .ok_or_else(|| UcsError::domain("no full element among maximal ones (table does not match family)"))
    }
}

fn check_frequency_ordered(f: &Family) -> Result<()> {
    let m = f.m();
    if f.universe() != SetMask::full(m) {
        return Err(UcsError::domain("S-table needs U(f) = [m]; relabel first"));
    }
    if !f.is_union_closed() {
        return Err(UcsError::domain("S-table needs a union-closed family"));
    }
    if !f.is_separating() {
        return Err(UcsError::domain("S-table needs a separating family"));
    }
    let freq = f.frequencies();
    if freq.counts().windows(2).any(|w| w[0] > w[1]) {
        return Err(UcsError::domain("S-table needs non-decreasing frequencies; relabel first"));
    }
    Ok(())
}

/// Builds the S sub-collection of a frequency-ordered family.
pub fn s_collection(f: &Family) -> Result<STable> {
    check_frequency_ordered(f)?;
    let m = f.m();
    let mut rows = vec![f.universe()];
    for i in 1..m {
        let mut avoiding = f.sets().iter().filter(|s| !s.contains(i)).peekable();
        if avoiding.peek().is_none() {
            return Err(UcsError::domain(format!("no member avoids element {i}")));
        }
        rows.push(avoiding.fold(SetMask::EMPTY, |acc, &s| acc | s));
    }
    for (i, &row) in rows.iter().enumerate().skip(1) {
        let i = i as u32;
        let above = SetMask::full(m) - SetMask::full(i);
        if row.contains(i) || !above.is_subset(row) {
            return Err(UcsError::domain(format!("staircase broken at row {i}")));
        }
    }
    let mut s_frequency = vec![0u32; m as usize];
    for row in &rows {
        for e in row.elements() {
            s_frequency[(e - 1) as usize] += 1;
        }
    }
    Ok(STable { m, rows, s_frequency })
}

/// Every member containing `c` also contains `b`.
pub fn dominates(f: &Family, b: Element, c: Element) -> Result<bool> {
    let u = f.universe();
    for e in [b, c] {
        if !u.contains(e) {
            return Err(UcsError::ElementOutOfRange { element: e, m: f.m() });
        }
    }
    Ok(dominates_unchecked(f, b, c))
}

fn dominates_unchecked(f: &Family, b: Element, c: Element) -> bool {
    f.sets().iter().all(|s| !s.contains(c) || s.contains(b))
}

/// [`STable::lemma1_witness`] on a frequency-ordered family.
pub fn lemma1_witness(f: &Family, i: Element) -> Result<Element> {
    s_collection(f)?.lemma1_witness(f, i)
}

/// [`STable::corollary1_witness`] on a frequency-ordered family.
pub fn corollary1_witness(f: &Family, sub: &Family) -> Result<Element> {
    s_collection(f)?.corollary1_witness(f, sub)
}

/// An element of `f` whose frequency is at least `|U(f)|`, read off the S
/// table: the top element of the frequency order lies in all `m` rows, and
/// the rows are distinct members. Returns `(element, frequency)` in `f`'s
/// own labels.
pub fn s_frequency_bound(f: &Family) -> Result<(Element, u32)> {
    let (ordered, perm) = frequency_order_relabel(f)?;
    let table = s_collection(&ordered)?;
    let m = table.m();
    let top = (1..=m)
        .max_by_key(|&e| (table.s_frequency(e), std::cmp::Reverse(e)))
        .expect("non-empty universe");
    let count = ordered.frequencies().get(top);
    assert!(count >= m, "S-table bound violated");
    Ok((perm[(top - 1) as usize], count))
}

/// Outcome of checking the minimal-counterexample deductions on one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditReport {
    pub union_closed: bool,
    pub separating: bool,
    pub conjecture_holds: bool,
    /// `|f|` odd. Only evaluated for counterexamples.
    pub parity_ok: Option<bool>,
    /// Max frequency equals `(|f| - 1) / 2`. Only evaluated for odd-size
    /// counterexamples.
    pub maxfreq_equals_n: Option<bool>,
    /// `|f| >= 4m - 1`. Only evaluated for counterexamples.
    pub size_bound_ok: Option<bool>,
    pub details: String,
}

impl AuditReport {
    /// `key: value` lines with stable keys.
    pub fn render(&self) -> String {
        fn opt(v: Option<bool>) -> String {
            v.map_or_else(|| "n/a".to_string(), |b| b.to_string())
        }
        format!(
            "union_closed: {}\nseparating: {}\nconjecture_holds: {}\nparity_ok: {}\nmaxfreq_equals_n: {}\nsize_bound_ok: {}\ndetails: {}\n",
            self.union_closed,
            self.separating,
            self.conjecture_holds,
            opt(self.parity_ok),
            opt(self.maxfreq_equals_n),
            opt(self.size_bound_ok),
            self.details
        )
    }
}

/// Checks the necessary conditions a minimal counterexample would satisfy.
/// Non-separating families are audited through their separating quotient.
pub fn minimal_counterexample_audit(f: &Family) -> Result<AuditReport> {
    if f.universe().is_empty() {
        return Err(UcsError::NoUniverse);
    }
    if !f.is_union_closed() {
        return Err(UcsError::domain("audit needs a union-closed family"));
    }
    let separating = f.is_separating();
    let (q, _) = f.separating_quotient();
    let verdict = ConjectureVerdict::of(&q);
    let m = q.universe().len() as usize;
    let size = q.len();
    let mut report = AuditReport {
        union_closed: true,
        separating,
        conjecture_holds: verdict.holds,
        parity_ok: None,
        maxfreq_equals_n: None,
        size_bound_ok: None,
        details: String::new(),
    };
    if verdict.holds {
        report.details = format!(
            "element {} lies in {} of {} sets; not a counterexample",
            verdict.max_element, verdict.max_count, size
        );
        return Ok(report);
    }
    let parity = size % 2 == 1;
    report.parity_ok = Some(parity);
    if parity {
        report.maxfreq_equals_n = Some(verdict.max_count as usize == (size - 1) / 2);
    }
    report.size_bound_ok = Some(size + 1 >= 4 * m);
    report.details = format!(
        "COUNTEREXAMPLE: max frequency {} of {} sets over {} elements",
        verdict.max_count, size, m
    );
    Ok(report)
}
