//! One PASS/FAIL line per acceptance criterion. Exits non-zero if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ucs_core::constructions::{
    beta, block_upset_family, conway, conway_properties, gap_report, pad_family, renaud_family,
    size_multiset_dominance, up_set, BlockUpsetParams, Rational,
};
use ucs_core::structure::{
    corollary1_witness, dominates, frequency_order_relabel, lemma1_witness, s_collection, s_frequency_bound,
};
use ucs_core::{
    canonical_form, close_under_union, is_isomorphic, parse_family, phi_naive, phi_search, serialize_family,
    verify_phi_table, Family, SearchConfig, SetMask, UcsError,
};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn load(name: &str) -> Family {
    parse_family(&fs::read_to_string(golden(name)).unwrap()).unwrap()
}

fn random_closed(rng: &mut ChaCha8Rng, max_m: u32, max_gens: usize) -> Family {
    let m = rng.gen_range(1..=max_m);
    let count = rng.gen_range(1..=max_gens);
    let gens: Vec<SetMask> = (0..count).map(|_| SetMask::from_bits(rng.gen_range(1..1u64 << m))).collect();
    close_under_union(&gens, m).unwrap()
}

fn conway_anchors() -> Check {
    let a = conway(23);
    ensure!(a[0] == 1 && a[1] == 1 && a[22] == 14, "a(1), a(2), a(23) = {}, {}, {}", a[0], a[1], a[22]);
    let start = Instant::now();
    let verdict = conway_properties(1_000_000);
    let took = start.elapsed();
    ensure!(verdict.is_none(), "property violation {verdict:?}");
    ensure!(took < Duration::from_secs(1), "sweep took {took:?}");
    Ok(format!("a(1)=a(2)=1, a(23)=14; sweep to 10^6 clean in {took:.0?}"))
}

fn beta_anchors() -> Check {
    let (b23, _) = beta(23).map_err(|e| e.to_string())?;
    let (b56, _) = beta(56).map_err(|e| e.to_string())?;
    ensure!(b23 == 13 && b56 == 31, "beta(23)={b23}, beta(56)={b56}");
    let f = renaud_family(23).unwrap();
    ensure!(f.is_union_closed(), "B(23) not union-closed");
    ensure!(f.len() == 23 && f.universe().len() == 5, "B(23) has {} sets over {} elements", f.len(), f.universe().len());
    let (_, top) = f.max_frequency().unwrap();
    ensure!(top == 13, "B(23) max frequency {top}");
    let free = f.restrict(5, false).unwrap();
    ensure!(free == Family::power_set(4).unwrap().with_universe(5).unwrap(), "element-5-free part is not P(4)");
    let listed = Family::power_set(4)
        .unwrap()
        .with_universe(5)
        .unwrap()
        .extended(
            [&[1, 2, 3, 4, 5][..], &[1, 2, 3, 5], &[1, 2, 4, 5], &[1, 3, 4, 5], &[2, 3, 4, 5], &[1, 2, 5], &[3, 4, 5]]
                .iter()
                .map(|s| SetMask::from_elements(s.iter().copied())),
        )
        .unwrap();
    ensure!(is_isomorphic(&f, &listed), "B(23) differs from the listed family");
    Ok("beta(23)=13, beta(56)=31; B(23): 23 sets, 5 elements, max 13, contains P(4)".into())
}

fn beta_sweep() -> Check {
    let start = Instant::now();
    for n in 2..=1024u64 {
        let (b, _) = beta(n).unwrap();
        let (_, actual) = renaud_family(n).unwrap().max_frequency().unwrap();
        ensure!(actual as u64 == b, "n={n}: formula {b}, materialized {actual}");
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(30), "sweep took {took:?}");
    Ok(format!("beta(n) equals max frequency of B(n) for 2..=1024 in {took:.1?}"))
}

fn hand_family() -> Check {
    let literal = load("hand_56.ucs");
    let corrected = load("hand_56_corrected.ucs");
    ensure!(literal.len() == 56 && literal.is_union_closed(), "listing as printed is not a 56-set union-closed family");
    let (_, lit_max) = literal.max_frequency().unwrap();
    ensure!(corrected.len() == 56 && corrected.is_union_closed(), "corrected listing malformed");
    let (_, cor_max) = corrected.max_frequency().unwrap();
    let (b56, _) = beta(56).unwrap();
    ensure!(cor_max == 30 && cor_max < b56 as u32, "corrected listing max {cor_max}");
    ensure!(lit_max == 32, "listing as printed has max {lit_max}");
    Ok(format!(
        "parses, union-closed, 56 sets; as printed max frequency {lit_max} (stated value 30 not reproduced, element 2 is never removed); \
         with 16,136 read as 26,236 max frequency {cor_max} < beta(56)={b56}"
    ))
}

fn block_closed_forms() -> Check {
    for n in 2..=6u32 {
        let p = BlockUpsetParams::two_blocks(n).unwrap();
        let up = up_set(&p.generators(), p.universe()).unwrap();
        let expect_len = (1u64 << (n + 1)) - 1;
        ensure!(up.len() as u64 == expect_len, "N={n}: up-set size {}", up.len());
        let expect_freq = (1u64 << n) + (1u64 << (n - 1)) - 1;
        for e in 1..=2 * n {
            let got = up.frequencies().get(e) as u64;
            ensure!(got == expect_freq, "N={n}: element {e} up-set frequency {got}, expected {expect_freq}");
        }
    }
    let mut checked = 0;
    for s in 2..=11u32 {
        for k in 2..=11u32 {
            let Ok(p) = BlockUpsetParams::new(s, k) else { continue };
            if p.universe() > 24 {
                continue;
            }
            let f = block_upset_family(&p).unwrap();
            let freq = f.frequencies();
            ensure!((1..=s * k).all(|e| freq.get(e) == freq.get(1)), "({s},{k}) not symmetric");
            checked += 1;
        }
    }
    Ok(format!("up-set size and element frequency exact for N=2..6; symmetry on {checked} (s,k) pairs"))
}

fn gap_growth() -> Check {
    let gaps: Vec<u64> = (2..=6).map(|n| gap_report(n).unwrap().gap).collect();
    ensure!(gaps[1..4] == [1, 2, 4], "gaps at N=3,4,5: {:?}", &gaps[1..4]);
    ensure!(gaps.windows(2).all(|w| w[0] <= w[1]), "gaps not monotone: {gaps:?}");
    Ok(format!("gaps for N=2..6: {gaps:?}"))
}

fn dominance() -> Check {
    for (s, k) in [(2, 3), (2, 4), (3, 2), (4, 3)] {
        let c = block_upset_family(&BlockUpsetParams::new(s, k).unwrap()).unwrap();
        let b = renaud_family(c.len() as u64).unwrap();
        let d = size_multiset_dominance(&c, &b).unwrap();
        ensure!(d.holds, "({s},{k}) first violation at {:?}", d.first_violation);
    }
    Ok("sorted size lists of C_{s,k} dominate B(|C|) for (2,3),(2,4),(3,2),(4,3)".into())
}

fn padding() -> Check {
    let p3 = Family::power_set(3).unwrap();
    let (g, params) = pad_family(&p3, Rational::new(5, 2)).unwrap();
    ensure!(params.p == 1 && params.ratio() == Rational::new(9, 4), "P(3): p={}, ratio={}", params.p, params.ratio());
    ensure!(g.is_union_closed() && g.is_separating(), "padded P(3) not closed and separating");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut padded = 0;
    for _ in 0..200 {
        let f = random_closed(&mut rng, 6, 24);
        let c = Rational::from_integer(2) + Rational::new(rng.gen_range(1..=100), 50);
        let (g, params) = pad_family(&f, c).map_err(|e| e.to_string())?;
        ensure!(g.is_union_closed(), "not closed after padding");
        if params.p > 0 {
            padded += 1;
            ensure!(params.ratio() <= c && g.is_separating(), "ratio {} vs c {c}", params.ratio());
            let freq = g.frequencies();
            ensure!(params.added.iter().all(|&x| freq.get(x) <= params.p), "added element above p");
        }
    }
    Ok(format!("P(3), c=5/2: p=1, ratio 9/4; 200 random families ({padded} padded) satisfy all properties"))
}

fn s_machinery() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut lemma_calls = 0;
    for _ in 0..500 {
        let f = canonical_form(&random_closed(&mut rng, 8, 7).separating_quotient().0);
        let (g, _) = frequency_order_relabel(&f).map_err(|e| e.to_string())?;
        let t = s_collection(&g).map_err(|e| e.to_string())?;
        let m = g.m();
        for (i, &row) in t.rows().iter().enumerate() {
            ensure!(g.contains(row), "row {i} not a member");
            if i > 0 {
                let i = i as u32;
                ensure!(!row.contains(i) && (i + 1..=m).all(|j| row.contains(j)), "staircase broken");
            }
        }
        let (_, bound) = s_frequency_bound(&g).unwrap();
        ensure!(bound >= m, "bound {bound} < {m}");
        for i in 1..m {
            match lemma1_witness(&g, i) {
                Ok(k) => {
                    lemma_calls += 1;
                    ensure!(t.s_frequency(k) == m - 1 && dominates(&g, k, i).unwrap(), "lemma witness {k} for {i}");
                }
                Err(UcsError::NotApplicable(_)) => ensure!(t.s_frequency(i) + 1 >= m, "wrongly not applicable"),
                Err(e) => return Err(e.to_string()),
            }
        }
        let sub = g.restrict(m, false).unwrap();
        if !sub.universe().is_empty() {
            let x = corollary1_witness(&g, &sub).unwrap();
            ensure!(sub.frequencies().get(x) == sub.frequencies().max().1, "corollary witness not maximal");
            ensure!(t.s_frequency(x) + 1 >= m, "corollary witness not full");
        }
    }
    Ok(format!("500 random separating families, {lemma_calls} lemma witnesses, zero violations"))
}

fn phi_table() -> Check {
    for n in 1..=5 {
        let fast = phi_search(&SearchConfig::new(n)).unwrap().phi;
        let slow = phi_naive(n, n as u32).unwrap().phi;
        ensure!(fast == slow, "n={n}: search {fast}, naive {slow}");
    }
    let t = verify_phi_table(9, 4).map_err(|e| e.to_string())?;
    let a = conway(9);
    ensure!(t.rows.iter().all(|r| r.phi as u64 == a[r.n - 1]), "phi differs from a(n): {:?}", t.phis());
    ensure!(t.bounds_hold() && t.steps_hold(), "bounds or step property fail");
    ensure!(t.conjecture_violations() == 0, "{} visited families violate the conjecture", t.conjecture_violations());
    Ok(format!("phi(1..9) = {:?} = a(n); naive agrees to 5; steps ok; no visited family violates", t.phis()))
}

fn determinism() -> Check {
    let outputs: Vec<String> = ["1", "4", "8"]
        .iter()
        .map(|w| {
            let out = Command::new(env!("CARGO_BIN_EXE_ucs"))
                .args(["search", "phi", "-n", "7", "--workers", w])
                .output()
                .unwrap();
            String::from_utf8(out.stdout).unwrap()
        })
        .collect();
    ensure!(outputs.windows(2).all(|w| w[0] == w[1]), "outputs differ");
    let phi = outputs[0].lines().next().unwrap_or_default().trim_start_matches("# ").to_string();
    Ok(format!("search phi -n 7 identical for workers 1, 4, 8 ({phi})"))
}

fn format_round_trip() -> Check {
    let mut files = 0;
    for entry in fs::read_dir(golden("")).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "ucs") {
            let text = fs::read_to_string(&path).unwrap();
            let f = parse_family(&text).map_err(|e| format!("{}: {e}", path.display()))?;
            ensure!(serialize_family(&f) == text, "{} does not round-trip", path.display());
            files += 1;
        }
    }
    let mut malformed = 0;
    for entry in fs::read_dir(golden("malformed")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_str().unwrap().to_string();
        let expected = format!("UCS-{}", name[..4].to_uppercase());
        let err = parse_family(&fs::read_to_string(&path).unwrap()).err();
        ensure!(err.as_ref().map(|e| e.code()) == Some(expected.as_str()), "{name}: got {err:?}");
        malformed += 1;
    }
    Ok(format!("{files} golden files round-trip; {malformed} malformed inputs give their codes"))
}

fn main() {
    let criteria: [Criterion; 12] = [
        ("conway anchors", conway_anchors),
        ("beta anchors", beta_anchors),
        ("beta formula vs materialization", beta_sweep),
        ("hand family", hand_family),
        ("block closed forms", block_closed_forms),
        ("gap growth", gap_growth),
        ("dominance", dominance),
        ("padding", padding),
        ("S machinery", s_machinery),
        ("phi table", phi_table),
        ("determinism", determinism),
        ("format", format_round_trip),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
