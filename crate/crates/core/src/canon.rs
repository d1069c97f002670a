//! Canonical labeling of families under element permutations.
//!
//! Elements are first split into cells by iterated color refinement (each
//! element's color is refined by the multiset of color-multisets of the sets
//! containing it). Cells are ordered by color, which is an isomorphism
//! invariant, and the canonical form is the minimum sorted mask list over
//! all permutations inside cells. It is a canonical representative, not in
//! general the minimum over every permutation.

use std::collections::BTreeMap;

use crate::family::Family;
use crate::mask::SetMask;

/// Canonical representative of the isomorphism class of `f`, relabeled onto
/// `1..=|U(f)|`. Two families are isomorphic iff their canonical forms are
/// equal.
pub fn canonical_form(f: &Family) -> Family {
    let masks = canonical_masks(f.sets());
    let m = masks.iter().fold(0u64, |a, &b| a | b).count_ones().max(1);
    Family::new(m, masks.into_iter().map(SetMask::from_bits)).expect("relabeled within universe")
}

pub fn is_isomorphic(a: &Family, b: &Family) -> bool {
    a.len() == b.len()
        && a.universe().len() == b.universe().len()
        && canonical_masks(a.sets()) == canonical_masks(b.sets())
}

/// Canonical sorted mask list (canonical set order) of the family given by
/// `sets`; the universe is compacted to the low bits.
pub fn canonical_masks(sets: &[SetMask]) -> Vec<u64> {
    let universe = sets.iter().fold(SetMask::EMPTY, |a, &b| a | b);
    let elems: Vec<u32> = universe.elements().collect();
    let u = elems.len();
    // compact to bits 0..u
    let compact: Vec<u64> = sets
        .iter()
        .map(|s| {
            let mut out = 0u64;
            for (i, &e) in elems.iter().enumerate() {
                if s.contains(e) {
                    out |= 1 << i;
                }
            }
            out
        })
        .collect();
    if u <= 1 {
        let mut v = compact;
        sort_canonical(&mut v);
        return v;
    }

    let colors = refine(&compact, u);
    let mut cells: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &c) in colors.iter().enumerate() {
        cells.entry(c).or_default().push(i);
    }
    let cells: Vec<Vec<usize>> = cells.into_values().collect();

    let mut search = PermSearch {
        sets: &compact,
        target: vec![0; u],
        best: None,
        scratch: Vec::with_capacity(compact.len()),
    };
    let mut base = 0;
    let mut offsets = Vec::with_capacity(cells.len());
    for c in &cells {
        offsets.push(base);
        base += c.len();
    }
    search.run(&cells, &offsets, 0, &mut vec![false; u], 0);
    search.best.expect("at least one permutation")
}

fn sort_canonical(v: &mut [u64]) {
    v.sort_unstable_by_key(|&b| (b.count_ones(), b));
}

/// Stable colors after iterated refinement; colors are ranks of sorted
/// signatures, so equal structure gives equal colors.
fn refine(sets: &[u64], u: usize) -> Vec<u32> {
    let mut colors: Vec<u32> = {
        let sigs: Vec<(u32, Vec<u32>)> = (0..u)
            .map(|e| {
                let mut sizes: Vec<u32> = sets
                    .iter()
                    .filter(|&&s| s >> e & 1 == 1)
                    .map(|s| s.count_ones())
                    .collect();
                sizes.sort_unstable();
                (sizes.len() as u32, sizes)
            })
            .collect();
        rank(&sigs)
    };
    let mut classes = count_classes(&colors);
    loop {
        let set_sig: Vec<Vec<u32>> = sets
            .iter()
            .map(|&s| {
                let mut v: Vec<u32> = (0..u).filter(|&e| s >> e & 1 == 1).map(|e| colors[e]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let sigs: Vec<(u32, Vec<Vec<u32>>)> = (0..u)
            .map(|e| {
                let mut v: Vec<Vec<u32>> = sets
                    .iter()
                    .zip(&set_sig)
                    .filter(|(&s, _)| s >> e & 1 == 1)
                    .map(|(_, sig)| sig.clone())
                    .collect();
                v.sort_unstable();
                (colors[e], v)
            })
            .collect();
        let next = rank(&sigs);
        let next_classes = count_classes(&next);
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn rank<T: Ord + Clone>(sigs: &[T]) -> Vec<u32> {
    let mut distinct: Vec<T> = sigs.to_vec();
    distinct.sort();
    distinct.dedup();
    sigs.iter()
        .map(|s| distinct.binary_search(s).expect("present") as u32)
        .collect()
}

fn count_classes(colors: &[u32]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

struct PermSearch<'a> {
    sets: &'a [u64],
    /// element index -> new bit position
    target: Vec<usize>,
    best: Option<Vec<u64>>,
    scratch: Vec<u64>,
}

impl PermSearch<'_> {
    fn run(
        &mut self,
        cells: &[Vec<usize>],
        offsets: &[usize],
        cell: usize,
        used: &mut Vec<bool>,
        filled: usize,
    ) {
        if cell == cells.len() {
            self.evaluate();
            return;
        }
        let members = &cells[cell];
        if filled == members.len() {
            self.run(cells, offsets, cell + 1, used, 0);
            return;
        }
        for &e in members {
            if used[e] {
                continue;
            }
            used[e] = true;
            self.target[e] = offsets[cell] + filled;
            self.run(cells, offsets, cell, used, filled + 1);
            used[e] = false;
        }
    }

    fn evaluate(&mut self) {
        self.scratch.clear();
        for &s in self.sets {
            let mut out = 0u64;
            let mut rest = s;
            while rest != 0 {
                let e = rest.trailing_zeros() as usize;
                out |= 1 << self.target[e];
                rest &= rest - 1;
            }
            self.scratch.push(out);
        }
        sort_canonical(&mut self.scratch);
        let better = match &self.best {
            None => true,
            Some(b) => cmp_canonical(&self.scratch, b).is_lt(),
        };
        if better {
            self.best = Some(self.scratch.clone());
        }
    }
}

/// Lexicographic order on canonical mask lists, comparing sets in canonical
/// set order.
pub(crate) fn cmp_canonical(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    let key = |x: &u64| (x.count_ones(), *x);
    a.iter().map(key).cmp(b.iter().map(key))
}
