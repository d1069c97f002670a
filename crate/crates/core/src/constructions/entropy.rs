//! Binary entropy and the binomial estimate behind the unbounded gap.

use num_integer::binomial;

use crate::error::{Result, UcsError};

/// `H(p) = -p log2 p - (1-p) log2 (1-p)` for `0 < p < 1`.
pub fn binary_entropy(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(UcsError::domain(format!("entropy argument must lie in (0, 1), got {p}")));
    }
    let q = 1.0 - p;
    Ok(-p * p.log2() - q * q.log2())
}

/// Comparisons below this margin (in log2 units) are not trusted.
const LOG_MARGIN: f64 = 1e-9;

/// The chain `C(2N,k) >= 2^{2N H(k/2N)}/(2N+1) > 2^{1.4N}/(2N+1) > 2^{N+1}`
/// at `k = ⌈2N/5⌉`, link by link.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropyCheck {
    pub n: u32,
    pub k: u32,
    pub binomial: u128,
    pub entropy: f64,
    /// `log2 C(2N,k) + log2(2N+1) - 2N H(k/2N)`.
    pub entropy_margin: f64,
    /// `C(2N,k) >= 2^{2N H}/(2N+1)`, certain to `LOG_MARGIN`.
    pub binomial_ge_entropy_bound: bool,
    /// `H(k/2N) > 0.7`.
    pub entropy_above_07: bool,
    /// `2^{1.4N}/(2N+1) > 2^{N+1}`, i.e. `2^{2N} > (4N+2)^5`, exact.
    pub entropy_bound_exceeds_power: bool,
    /// `C(2N,k) > 2^{N+1}`, exact.
    pub binomial_exceeds_power: bool,
    pub chain_holds: bool,
}

/// Evaluates every link for one `N` in `1..=60`.
pub fn entropy_binomial_check(n: u32) -> Result<EntropyCheck> {
    if !(1..=60).contains(&n) {
        return Err(UcsError::domain(format!("entropy check supports 1 <= N <= 60, got {n}")));
    }
    let two_n = 2 * n;
    let k = (two_n).div_ceil(5);
    let c: u128 = binomial(two_n as u128, k as u128);
    let entropy = binary_entropy(k as f64 / two_n as f64)?;
    let entropy_margin = (c as f64).log2() + ((two_n + 1) as f64).log2() - two_n as f64 * entropy;
    let binomial_ge_entropy_bound = entropy_margin > LOG_MARGIN;
    let entropy_above_07 = entropy - 0.7 > LOG_MARGIN;
    let entropy_bound_exceeds_power = (1u128 << two_n) > ((4 * n + 2) as u128).pow(5);
    let binomial_exceeds_power = c > 1u128 << (n + 1);
    Ok(EntropyCheck {
        n,
        k,
        binomial: c,
        entropy,
        entropy_margin,
        binomial_ge_entropy_bound,
        entropy_above_07,
        entropy_bound_exceeds_power,
        binomial_exceeds_power,
        chain_holds: binomial_ge_entropy_bound
            && entropy_above_07
            && entropy_bound_exceeds_power
            && binomial_exceeds_power,
    })
}

/// Smallest `N0` such that the chain holds for every `N` in `N0..=max_n`.
pub fn entropy_threshold(max_n: u32) -> Result<Option<u32>> {
    let mut threshold = None;
    for n in (1..=max_n).rev() {
        if entropy_binomial_check(n)?.chain_holds {
            threshold = Some(n);
        } else {
            break;
        }
    }
    Ok(threshold)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        let h = binary_entropy(0.2).unwrap();
        assert!((h - 0.721_928_094_887_362_3).abs() < 1e-12);
        assert!(h > 0.7);
        for p in [0.01, 0.13, 0.3, 0.49] {
            assert!((binary_entropy(p).unwrap() - binary_entropy(1.0 - p).unwrap()).abs() < 1e-12);
        }
        for bad in [0.0, 1.0, -0.5, f64::NAN] {
            assert!(binary_entropy(bad).is_err());
        }
    }

    #[test]
    fn n_twenty() {
        let e = entropy_binomial_check(20).unwrap();
        assert_eq!(e.k, 8);
        assert_eq!(e.binomial, 76_904_685);
        assert!(e.binomial_exceeds_power);
        assert!(e.chain_holds);
    }

    #[test]
    fn n_one_records_failure() {
        let e = entropy_binomial_check(1).unwrap();
        assert!(!e.chain_holds);
        assert!(!e.binomial_exceeds_power);
    }

    #[test]
    fn sweep_threshold() {
        // 2^{0.4N} > 2(2N+1) first holds at N = 15 and never fails after
        assert_eq!(entropy_threshold(40).unwrap(), Some(15));
        for n in 1..=40 {
            let e = entropy_binomial_check(n).unwrap();
            assert!(e.binomial_ge_entropy_bound, "N={n}");
            assert!(e.entropy_above_07, "N={n}");
        }
    }
}
