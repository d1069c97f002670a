//! Padding a family with `p` fresh elements and `p` near-full sets so that
//! its set-to-universe ratio drops to at most `c`.

use num_rational::Ratio;

use crate::error::{Result, UcsError};
use crate::family::{ConjectureVerdict, Family};
use crate::mask::{Element, SetMask, MAX_UNIVERSE};

pub type Rational = Ratio<i64>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadParams {
    pub c: Rational,
    /// Sets in the input.
    pub n: usize,
    /// Universe of the separating quotient the padding was built on.
    pub m: u32,
    pub p: u32,
    /// The new elements `x_1..x_p`, labeled `m+1..=m+p`.
    pub added: Vec<Element>,
    /// `labels[i]` is the input element behind padded element `i + 1`, for
    /// `i < m`.
    pub labels: Vec<Element>,
}

impl PadParams {
    /// `(n + p) / (m + p)`.
    pub fn ratio(&self) -> Rational {
        Rational::new((self.n + self.p as usize) as i64, (self.m + self.p) as i64)
    }
}

/// `p = ⌈(n - cm)/(c - 1)⌉` when `n > cm`, else 0.
fn pad_count(n: usize, m: u32, c: Rational) -> u64 {
    let excess = Rational::from_integer(n as i64) - c * m as i64;
    if excess <= Rational::from_integer(0) {
        return 0;
    }
    (excess / (c - 1)).ceil().to_integer() as u64
}

/// Adds `x_1..x_p` to the universe and the sets `U \ {x_i}` (`i < p`) and
/// `U`, where `U` is the padded universe.
///
/// A non-separating input is padded through its separating quotient, with
/// class representatives renamed onto `1..=m`. When `n <= c·m` the input is
/// returned unchanged.
pub fn pad_family(f: &Family, c: Rational) -> Result<(Family, PadParams)> {
    if c <= Rational::from_integer(2) {
        return Err(UcsError::domain(format!("padding threshold must exceed 2, got {c}")));
    }
    if !f.is_union_closed() {
        return Err(UcsError::domain("padding needs a union-closed family"));
    }
    let (quotient, _) = f.separating_quotient();
    let labels: Vec<Element> = quotient.universe().elements().collect();
    let m = labels.len() as u32;
    let n = f.len();
    let p = pad_count(n, m, c);

    if p == 0 {
        let params = PadParams { c, n, m, p: 0, added: vec![], labels };
        return Ok((f.clone(), params));
    }
    if m as u64 + p > MAX_UNIVERSE as u64 {
        return Err(UcsError::Capacity { m: (m as u64 + p) as u32, max: MAX_UNIVERSE });
    }
    let p = p as u32;
    assert!((p as usize) < n, "pad count {p} must stay below the family size {n}");

    let mut new_of = vec![0u32; f.m() as usize + 1];
    for (i, &old) in labels.iter().enumerate() {
        new_of[old as usize] = i as u32 + 1;
    }
    let total = m + p;
    let base = quotient.relabel(total, |e| new_of[e as usize])?;
    let full = SetMask::full(total);
    let added: Vec<Element> = (m + 1..=total).collect();
    let extra = added[..added.len() - 1]
        .iter()
        .map(|&x| full.without(x))
        .chain(std::iter::once(full));
    let padded = base.extended(extra)?;
    debug_assert_eq!(padded.len(), n + p as usize);
    Ok((padded, PadParams { c, n, m, p, added, labels }))
}

/// What the padding argument guarantees for one family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonCheck {
    pub params: PadParams,
    pub padded_len: usize,
    /// Conjecture verdict on the padded family.
    pub padded_holds: bool,
    /// Most frequent element of the padded family, in input labels.
    pub element: Option<Element>,
    pub in_original_universe: bool,
    /// Its frequency in the input family.
    pub frequency: u32,
    /// `⌈(n - p)/2⌉`.
    pub floor_bound: u64,
    /// `(c - 2)/(2(c - 1)) · n`.
    pub epsilon_bound: Rational,
    pub holds: bool,
}

/// Pads `f`, checks the conjecture on the padded family directly, and
/// confirms the frequency bound `|x|_f > (c-2)/(2(c-1)) · |f|` that the
/// padding argument yields.
pub fn epsilon_bound_check(f: &Family, c: Rational) -> Result<EpsilonCheck> {
    if f.universe().is_empty() {
        return Err(UcsError::NoUniverse);
    }
    let (padded, params) = pad_family(f, c)?;
    let verdict = ConjectureVerdict::of(&padded);
    let n = f.len() as i64;
    let p = params.p as i64;
    let epsilon = (c - 2) / ((c - 1) * 2);
    let epsilon_bound = epsilon * n;
    let floor_bound = ((n - p).max(0) as u64).div_ceil(2);

    let x = verdict.max_element;
    let (element, in_original_universe) = if params.p == 0 {
        (Some(x), true)
    } else if x <= params.m {
        (Some(params.labels[(x - 1) as usize]), true)
    } else {
        (None, false)
    };
    let frequency = element.map_or(0, |e| f.frequencies().get(e));
    let beats_epsilon = Rational::from_integer(frequency as i64) > epsilon_bound;
    let holds = verdict.holds
        && in_original_universe
        && beats_epsilon
        && (params.p == 0 || frequency as u64 >= floor_bound);
    Ok(EpsilonCheck {
        padded_len: padded.len(),
        padded_holds: verdict.holds,
        element,
        in_original_universe,
        frequency,
        floor_bound,
        epsilon_bound,
        holds,
        params,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pad_power_set_three() {
        let f = Family::power_set(3).unwrap();
        let (g, params) = pad_family(&f, Rational::new(5, 2)).unwrap();
        assert_eq!(params.p, 1);
        assert_eq!(params.ratio(), Rational::new(9, 4));
        let expected = f.with_universe(4).unwrap().extended([SetMask::full(4)]).unwrap();
        assert_eq!(g, expected);
        assert!(g.is_union_closed());
        assert!(g.is_separating());
    }

    #[test]
    fn pad_power_set_four() {
        let f = Family::power_set(4).unwrap();
        let (g, params) = pad_family(&f, Rational::from_integer(3)).unwrap();
        assert_eq!(params.p, 2);
        assert_eq!(g.len(), 18);
        assert_eq!(g.universe().len(), 6);
        assert_eq!(params.ratio(), Rational::from_integer(3));
        assert!(g.is_union_closed() && g.is_separating());
    }

    #[test]
    fn small_families_are_untouched() {
        let f = Family::power_set(2).unwrap();
        let (g, params) = pad_family(&f, Rational::new(5, 2)).unwrap();
        assert_eq!(params.p, 0);
        assert_eq!(g, f);
    }

    #[test]
    fn threshold_must_exceed_two() {
        let f = Family::power_set(2).unwrap();
        assert!(pad_family(&f, Rational::from_integer(2)).is_err());
    }

    #[test]
    fn pad_count_boundary_is_exact() {
        // n - cm = 8 - 7.5 = 0.5, c - 1 = 1.5, p = ⌈1/3⌉
        assert_eq!(pad_count(8, 3, Rational::new(5, 2)), 1);
        // n = cm exactly
        assert_eq!(pad_count(15, 6, Rational::new(5, 2)), 0);
        // n - cm = 2, c - 1 = 2, quotient exactly 1
        assert_eq!(pad_count(8, 2, Rational::from_integer(3)), 1);
        // n - cm = 1, c - 1 = 4/3, quotient 3/4
        assert_eq!(pad_count(8, 3, Rational::new(7, 3)), 1);
    }

    #[test]
    fn epsilon_on_power_set_three() {
        let f = Family::power_set(3).unwrap();
        let e = epsilon_bound_check(&f, Rational::new(5, 2)).unwrap();
        assert!(e.holds);
        assert_eq!(e.epsilon_bound, Rational::new(4, 3));
        assert_eq!(e.frequency, 4);
        assert!(e.frequency as u64 >= e.floor_bound);
    }
}
