/// `a(1..=limit)` of Conway's challenge sequence, `a(1) = a(2) = 1`,
/// `a(n) = a(a(n-1)) + a(n - a(n-1))`. Index `i` holds `a(i + 1)`.
pub fn conway(limit: usize) -> Vec<u64> {
    let mut a: Vec<u64> = Vec::with_capacity(limit);
    for n in 1..=limit {
        let v = if n <= 2 {
            1
        } else {
            let prev = a[n - 2] as usize;
            a[prev - 1] + a[n - prev - 1]
        };
        a.push(v);
    }
    a
}

/// First index where `2 a(n) >= n` or `a(n+1) - a(n) ∈ {0, 1}` fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConwayViolation {
    BelowHalf { n: usize, value: u64 },
    Step { n: usize, from: u64, to: u64 },
}

/// Sweeps both properties over `n <= limit`; `None` when neither fails.
pub fn conway_properties(limit: usize) -> Option<ConwayViolation> {
    let a = conway(limit);
    for (i, &v) in a.iter().enumerate() {
        let n = i + 1;
        if 2 * v < n as u64 {
            return Some(ConwayViolation::BelowHalf { n, value: v });
        }
        if let Some(&next) = a.get(i + 1) {
            if next != v && next != v + 1 {
                return Some(ConwayViolation::Step { n, from: v, to: next });
            }
        }
    }
    None
}
