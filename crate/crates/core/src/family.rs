//! Finite set families over a bounded universe and their basic predicates.

use std::collections::{HashMap, HashSet};
use std::fmt;

use crate::error::{Result, UcsError};
use crate::mask::{Element, SetMask, MAX_UNIVERSE};

/// Universes up to this size may use a dense `2^m` membership bitmap.
const DENSE_MEMBERSHIP_MAX: u32 = 24;
/// Universes up to this size may use the subset-sum closure test.
const DENSE_CLOSURE_MAX: u32 = 20;

/// A set of distinct [`SetMask`]s over `[m]`, kept in canonical order
/// (cardinality, then numeric value).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Family {
    m: u32,
    sets: Vec<SetMask>,
}

fn check_universe(m: u32) -> Result<()> {
    if m == 0 || m > MAX_UNIVERSE {
        return Err(UcsError::Capacity { m, max: MAX_UNIVERSE });
    }
    Ok(())
}

impl Family {
    /// Builds a family, sorting into canonical order and dropping duplicates.
    pub fn new<I: IntoIterator<Item = SetMask>>(m: u32, sets: I) -> Result<Self> {
        check_universe(m)?;
        let mut sets: Vec<SetMask> = sets.into_iter().collect();
        if let Some(bad) = sets.iter().find(|s| !s.fits(m)) {
            return Err(UcsError::SetOutOfRange { set: bad.to_string(), m });
        }
        sets.sort_unstable();
        sets.dedup();
        Ok(Family { m, sets })
    }

    /// `P([m])`, all `2^m` subsets. Capped at `m <= 26`.
    pub fn power_set(m: u32) -> Result<Self> {
        if m > 26 {
            return Err(UcsError::Capacity { m, max: 26 });
        }
        check_universe(m)?;
        Family::new(m, (0..1u64 << m).map(SetMask::from_bits))
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn sets(&self) -> &[SetMask] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: SetMask) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Same sets, declared over a different universe size.
    pub fn with_universe(&self, m: u32) -> Result<Family> {
        Family::new(m, self.sets.iter().copied())
    }

    /// `U(f)`: the union of all members.
    pub fn universe(&self) -> SetMask {
        self.sets.iter().fold(SetMask::EMPTY, |acc, &s| acc | s)
    }

    pub fn frequencies(&self) -> FrequencyTable {
        FrequencyTable::of(self.m, &self.sets)
    }

    /// The largest frequency and the smallest element attaining it.
    pub fn max_frequency(&self) -> Result<(Element, u32)> {
        if self.universe().is_empty() {
            return Err(UcsError::NoUniverse);
        }
        Ok(self.frequencies().max())
    }

    /// Every pairwise union is a member.
    pub fn is_union_closed(&self) -> bool {
        let n = self.sets.len();
        if n <= 1 {
            return true;
        }
        if self.m <= DENSE_CLOSURE_MAX && n > 1024 {
            return self.is_union_closed_dense();
        }
        let member = Membership::new(self);
        for (i, &a) in self.sets.iter().enumerate() {
            for &b in &self.sets[..i] {
                let u = a | b;
                if u != a && u != b && !member.contains(u) {
                    return false;
                }
            }
        }
        true
    }

    /// Subset-OR transform: `g[x]` is the union of all members inside `x`.
    /// The family is closed iff every `x` with `g[x] == x` (and some member
    /// inside it) is itself a member.
    fn is_union_closed_dense(&self) -> bool {
        let size = 1usize << self.m;
        let mut below = vec![0u64; size];
        let mut has_member = vec![false; size];
        let mut member = vec![false; size];
        for &s in &self.sets {
            below[s.bits() as usize] = s.bits();
            has_member[s.bits() as usize] = true;
            member[s.bits() as usize] = true;
        }
        for bit in 0..self.m {
            let step = 1usize << bit;
            for x in 0..size {
                if x & step != 0 {
                    below[x] |= below[x ^ step];
                    has_member[x] |= has_member[x ^ step];
                }
            }
        }
        (0..size).all(|x| !has_member[x] || below[x] != x as u64 || member[x])
    }

    /// All distinct elements of `U(f)` have distinct membership columns.
    pub fn is_separating(&self) -> bool {
        let mut seen = HashSet::new();
        self.universe()
            .elements()
            .all(|e| seen.insert(self.column(e)))
    }

    /// Indicator of which members contain `e`, packed 64 members per word.
    fn column(&self, e: Element) -> Vec<u64> {
        let mut col = vec![0u64; self.sets.len().div_ceil(64)];
        for (i, s) in self.sets.iter().enumerate() {
            if s.contains(e) {
                col[i / 64] |= 1 << (i % 64);
            }
        }
        col
    }

    /// Merges elements with identical columns into their smallest
    /// representative. Elements outside `U(f)` map to `None`.
    pub fn separating_quotient(&self) -> (Family, ElementMap) {
        let mut reps: HashMap<Vec<u64>, Element> = HashMap::new();
        let mut map = vec![None; self.m as usize];
        for e in self.universe().elements() {
            let rep = *reps.entry(self.column(e)).or_insert(e);
            map[(e - 1) as usize] = Some(rep);
        }
        let kept: SetMask = map.iter().flatten().copied().collect();
        let quotient = Family {
            m: self.m,
            sets: self.sets.iter().map(|&s| s & kept).collect(),
        };
        // Distinct sets differ on a whole class, so they stay distinct and
        // keep their relative order only up to re-sorting.
        let quotient = Family::new(self.m, quotient.sets).expect("same universe");
        debug_assert_eq!(quotient.len(), self.len());
        (quotient, ElementMap(map))
    }

    /// Union-irreducible members. The empty set, when present, is one.
    pub fn basis_sets(&self) -> Result<Vec<SetMask>> {
        if !self.is_union_closed() {
            return Err(UcsError::domain("basis_sets requires a union-closed family"));
        }
        let mut basis = Vec::new();
        for (i, &s) in self.sets.iter().enumerate() {
            // Canonical order puts every proper subset before `s`.
            let below = self.sets[..i]
                .iter()
                .filter(|t| t.is_subset(s))
                .fold(SetMask::EMPTY, |acc, &t| acc | t);
            if s.is_empty() || below != s {
                basis.push(s);
            }
        }
        Ok(basis)
    }

    /// `f_a` (`contains = true`) or `f_ā` (`contains = false`).
    pub fn restrict(&self, a: Element, contains: bool) -> Result<Family> {
        if a == 0 || a > self.m {
            return Err(UcsError::ElementOutOfRange { element: a, m: self.m });
        }
        Ok(Family {
            m: self.m,
            sets: self
                .sets
                .iter()
                .copied()
                .filter(|s| s.contains(a) == contains)
                .collect(),
        })
    }

    /// Whether some element lies in at least half of the members.
    pub fn check_conjecture(&self) -> Result<ConjectureVerdict> {
        if self.universe().is_empty() {
            return Err(UcsError::NoUniverse);
        }
        if !self.is_union_closed() {
            return Err(UcsError::domain("conjecture check requires a union-closed family"));
        }
        Ok(ConjectureVerdict::of(self))
    }

    /// Renames elements through `map`, which must send `U(f)` into `[m]`.
    pub fn relabel(&self, m: u32, map: impl Fn(Element) -> Element) -> Result<Family> {
        Family::new(m, self.sets.iter().map(|s| s.map_elements(&map)))
    }

    /// Adds sets, keeping canonical order.
    pub fn extended<I: IntoIterator<Item = SetMask>>(&self, extra: I) -> Result<Family> {
        Family::new(self.m, self.sets.iter().copied().chain(extra))
    }
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Family(m={}, ", self.m)?;
        f.debug_list().entries(&self.sets).finish()?;
        f.write_str(")")
    }
}

/// The smallest union-closed family containing every generator.
pub fn close_under_union(generators: &[SetMask], m: u32) -> Result<Family> {
    check_universe(m)?;
    if let Some(bad) = generators.iter().find(|s| !s.fits(m)) {
        return Err(UcsError::SetOutOfRange { set: bad.to_string(), m });
    }
    if m <= 16 {
        return Ok(close_dense(generators, m));
    }
    let mut seen: HashSet<SetMask> = HashSet::new();
    let mut list: Vec<SetMask> = Vec::new();
    for &g in generators {
        if seen.insert(g) {
            list.push(g);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let a = list[i];
        for j in 0..i {
            let u = a | list[j];
            if seen.insert(u) {
                list.push(u);
            }
        }
        i += 1;
    }
    Family::new(m, list)
}

fn close_dense(generators: &[SetMask], m: u32) -> Family {
    let size = 1usize << m;
    let mut below = vec![0u64; size];
    let mut has = vec![false; size];
    for &g in generators {
        below[g.bits() as usize] = g.bits();
        has[g.bits() as usize] = true;
    }
    for bit in 0..m {
        let step = 1usize << bit;
        for x in 0..size {
            if x & step != 0 {
                below[x] |= below[x ^ step];
                has[x] |= has[x ^ step];
            }
        }
    }
    let sets = (0..size)
        .filter(|&x| has[x] && below[x] == x as u64)
        .map(|x| SetMask::from_bits(x as u64));
    Family::new(m, sets).expect("universe already checked")
}

/// Old element to class representative, as produced by
/// [`Family::separating_quotient`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementMap(Vec<Option<Element>>);

impl ElementMap {
    pub fn get(&self, e: Element) -> Option<Element> {
        self.0.get(e.checked_sub(1)? as usize).copied().flatten()
    }

    pub fn is_identity(&self) -> bool {
        self.0
            .iter()
            .enumerate()
            .all(|(i, r)| r.is_none_or(|r| r == i as u32 + 1))
    }

    /// `(element, representative)` pairs for elements of the universe.
    pub fn iter(&self) -> impl Iterator<Item = (Element, Element)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter_map(|(i, r)| r.map(|r| (i as u32 + 1, r)))
    }
}

enum Membership {
    Dense(Vec<u64>),
    Hashed(HashSet<u64>),
}

impl Membership {
    fn new(f: &Family) -> Self {
        if f.m <= DENSE_MEMBERSHIP_MAX && f.len() * 64 >= (1usize << f.m) / 64 {
            let mut words = vec![0u64; (1usize << f.m).div_ceil(64)];
            for s in &f.sets {
                let b = s.bits() as usize;
                words[b / 64] |= 1 << (b % 64);
            }
            Membership::Dense(words)
        } else {
            Membership::Hashed(f.sets.iter().map(|s| s.bits()).collect())
        }
    }

    #[inline]
    fn contains(&self, s: SetMask) -> bool {
        match self {
            Membership::Dense(words) => {
                let b = s.bits() as usize;
                words[b / 64] >> (b % 64) & 1 == 1
            }
            Membership::Hashed(set) => set.contains(&s.bits()),
        }
    }
}

/// Per-element occurrence counts; `get(e)` for `e` in `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    counts: Vec<u32>,
}

impl FrequencyTable {
    pub fn of(m: u32, sets: &[SetMask]) -> Self {
        let mut counts = vec![0u32; m as usize];
        for s in sets {
            for e in s.elements() {
                counts[(e - 1) as usize] += 1;
            }
        }
        FrequencyTable { counts }
    }

    pub fn get(&self, e: Element) -> u32 {
        self.counts[(e - 1) as usize]
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().map(|&c| c as u64).sum()
    }

    /// Maximum count with the smallest element attaining it; `(1, 0)` when
    /// every count is zero.
    pub fn max(&self) -> (Element, u32) {
        let mut best = (1, 0);
        for (i, &c) in self.counts.iter().enumerate() {
            if c > best.1 {
                best = (i as u32 + 1, c);
            }
        }
        best
    }

    pub fn iter(&self) -> impl Iterator<Item = (Element, u32)> + '_ {
        self.counts.iter().enumerate().map(|(i, &c)| (i as u32 + 1, c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConjectureVerdict {
    pub holds: bool,
    /// Smallest element in at least half of the members.
    pub witness: Option<Element>,
    pub max_element: Element,
    pub max_count: u32,
    pub sets: usize,
}

impl ConjectureVerdict {
    pub(crate) fn of(f: &Family) -> Self {
        let freq = f.frequencies();
        let n = f.len() as u64;
        let witness = freq.iter().find(|&(_, c)| 2 * c as u64 >= n).map(|(e, _)| e);
        let (max_element, max_count) = freq.max();
        ConjectureVerdict {
            holds: witness.is_some(),
            witness,
            max_element,
            max_count,
            sets: f.len(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(m: u32, sets: &[&[u32]]) -> Family {
        Family::new(m, sets.iter().map(|s| SetMask::from_elements(s.iter().copied()))).unwrap()
    }

    /// Closure by repeated pairwise unions until nothing changes.
    fn brute_closure(gens: &[SetMask]) -> Vec<SetMask> {
        let mut cur: Vec<SetMask> = gens.to_vec();
        loop {
            let mut next = cur.clone();
            for &a in &cur {
                for &b in &cur {
                    next.push(a | b);
                }
            }
            next.sort();
            next.dedup();
            if next.len() == cur.len() {
                return next;
            }
            cur = next;
        }
    }

    #[test]
    fn closure_examples() {
        let f = close_under_union(&fam(3, &[&[1, 2], &[3]]).sets, 3).unwrap();
        assert_eq!(f, fam(3, &[&[3], &[1, 2], &[1, 2, 3]]));
        let f = close_under_union(&[SetMask::singleton(1)], 1).unwrap();
        assert_eq!(f.sets(), &[SetMask::singleton(1)]);
    }

    #[test]
    fn closure_of_three_blocks() {
        let gens = [
            SetMask::from_elements([1, 2, 3, 4, 13]),
            SetMask::from_elements([5, 6, 7, 8, 13]),
            SetMask::from_elements([9, 10, 11, 12, 13]),
        ];
        let f = close_under_union(&gens, 13).unwrap();
        assert_eq!(f.sets(), brute_closure(&gens).as_slice());
        assert_eq!(f.len(), 7);
    }

    #[test]
    fn closure_sparse_path_matches_dense() {
        let gens: Vec<SetMask> = [0b1011u64, 0b10100, 0b1100000, 0b1, 0b100000000]
            .iter()
            .map(|&b| SetMask::from_bits(b << 12))
            .collect();
        let sparse = close_under_union(&gens, 30).unwrap();
        assert_eq!(sparse.sets(), brute_closure(&gens).as_slice());
    }

    #[test]
    fn capacity_errors() {
        assert!(matches!(close_under_union(&[], 0), Err(UcsError::Capacity { .. })));
        assert!(matches!(close_under_union(&[], 65), Err(UcsError::Capacity { .. })));
        assert!(matches!(
            close_under_union(&[SetMask::singleton(3)], 2),
            Err(UcsError::SetOutOfRange { .. })
        ));
    }

    #[test]
    fn union_closed_examples() {
        assert!(fam(2, &[&[1], &[2], &[1, 2]]).is_union_closed());
        assert!(!fam(2, &[&[1], &[2]]).is_union_closed());
        assert!(Family::new(3, []).unwrap().is_union_closed());
    }

    #[test]
    fn dense_closure_test_agrees_with_pairwise() {
        let p = Family::power_set(11).unwrap();
        assert!(p.len() > 1024);
        assert!(p.is_union_closed());
        let missing = SetMask::from_elements([1, 2]);
        let holed = Family::new(11, p.sets().iter().copied().filter(|&s| s != missing)).unwrap();
        assert!(!holed.is_union_closed());
    }

    #[test]
    fn universe_and_frequencies() {
        let f = fam(2, &[&[1], &[1, 2]]);
        assert_eq!(f.universe(), SetMask::from_elements([1, 2]));
        assert_eq!(Family::new(4, []).unwrap().universe(), SetMask::EMPTY);

        let f = fam(2, &[&[], &[1], &[1, 2]]);
        let t = f.frequencies();
        assert_eq!(t.counts(), &[2, 1]);
        assert_eq!(t.total(), 3);
        assert_eq!(f.max_frequency().unwrap(), (1, 2));
    }

    #[test]
    fn max_frequency_needs_a_universe() {
        assert_eq!(Family::new(3, []).unwrap().max_frequency(), Err(UcsError::NoUniverse));
        assert_eq!(fam(3, &[&[]]).max_frequency(), Err(UcsError::NoUniverse));
    }

    #[test]
    fn separation() {
        assert!(!fam(2, &[&[1, 2]]).is_separating());
        assert!(fam(2, &[&[1], &[1, 2]]).is_separating());
        assert!(fam(3, &[&[1, 3], &[2, 3], &[1, 2, 3]]).is_separating());
    }

    #[test]
    fn quotient_examples() {
        let (q, map) = fam(2, &[&[1, 2]]).separating_quotient();
        assert_eq!(q, fam(2, &[&[1]]));
        assert_eq!(map.get(1), Some(1));
        assert_eq!(map.get(2), Some(1));

        let f = fam(2, &[&[1], &[1, 2]]);
        let (q, map) = f.separating_quotient();
        assert_eq!(q, f);
        assert!(map.is_identity());

        let f = fam(3, &[&[1, 3], &[2, 3], &[1, 2, 3]]);
        assert_eq!(f.separating_quotient().0, f);
    }

    #[test]
    fn basis_examples() {
        let one = SetMask::singleton(1);
        let two = SetMask::singleton(2);
        assert_eq!(fam(2, &[&[1], &[2], &[1, 2]]).basis_sets().unwrap(), vec![one, two]);

        let p3 = Family::power_set(3).unwrap();
        let expected: Vec<SetMask> =
            [0u64, 1, 2, 4].iter().map(|&b| SetMask::from_bits(b)).collect();
        assert_eq!(p3.basis_sets().unwrap(), expected);

        let f = close_under_union(&fam(4, &[&[1, 2], &[3, 4]]).sets, 4).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.basis_sets().unwrap(), fam(4, &[&[1, 2], &[3, 4]]).sets);

        assert!(matches!(fam(2, &[&[1], &[2]]).basis_sets(), Err(UcsError::Domain(_))));
    }

    #[test]
    fn restrict_examples() {
        let p2 = Family::power_set(2).unwrap();
        assert_eq!(p2.restrict(2, true).unwrap(), fam(2, &[&[2], &[1, 2]]));
        assert_eq!(p2.restrict(2, false).unwrap(), fam(2, &[&[], &[1]]));
        assert!(matches!(p2.restrict(3, true), Err(UcsError::ElementOutOfRange { .. })));
        assert!(matches!(p2.restrict(0, true), Err(UcsError::ElementOutOfRange { .. })));
    }

    #[test]
    fn conjecture_examples() {
        let v = fam(1, &[&[1]]).check_conjecture().unwrap();
        assert!(v.holds);
        assert_eq!(v.witness, Some(1));
        assert!(matches!(fam(2, &[&[1], &[2]]).check_conjecture(), Err(UcsError::Domain(_))));
        assert_eq!(fam(2, &[&[]]).check_conjecture(), Err(UcsError::NoUniverse));
    }
}
