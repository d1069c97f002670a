//! Subcommand bodies. Each returns the text for stdout and an exit code;
//! anything that should exit with status 2 comes back as a [`Failure`].
//!
//! When a family is printed to stdout, the report lines before it are `#`
//! comments, so the whole output is itself a family file.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use ucs_core::constructions::{
    beta, block_upset_family, conway, gap_report, level_profile, pad_family, renaud_family, BlockUpsetParams,
    Rational, MATERIALIZE_MAX_K,
};
use ucs_core::structure::{frequency_order_relabel, minimal_counterexample_audit, s_collection, s_frequency_bound};
use ucs_core::{parse_family, phi_search, serialize_family, verify_phi_table, Family, SearchConfig, UcsError};

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

pub struct Failure {
    pub message: String,
    /// Partial output printed before the diagnostic.
    pub stdout: String,
}

impl From<UcsError> for Failure {
    fn from(e: UcsError) -> Self {
        let message = match &e {
            UcsError::Format(f) => f.to_string(),
            other => format!("error: {other}"),
        };
        Failure { message, stdout: String::new() }
    }
}

fn failure(message: impl Into<String>) -> Failure {
    Failure { message: message.into(), stdout: String::new() }
}

type CmdResult = Result<Outcome, Failure>;

/// `NUM/DEN` or an integer.
pub fn parse_rational(text: &str) -> Result<Rational, String> {
    let parse = |s: &str| s.trim().parse::<i64>().map_err(|e| format!("bad number '{s}': {e}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let den = parse(den)?;
            if den == 0 {
                return Err("denominator is zero".into());
            }
            Ok(Rational::new(parse(num)?, den))
        }
        None => Ok(Rational::from_integer(parse(text)?)),
    }
}

fn read_family(path: &Path) -> Result<Family, Failure> {
    let text = fs::read_to_string(path).map_err(|e| failure(format!("cannot read {}: {e}", path.display())))?;
    parse_family(&text).map_err(|e| failure(format!("{}: {e}", path.display())))
}

fn write_family(path: &Path, f: &Family) -> Result<(), Failure> {
    fs::write(path, serialize_family(f)).map_err(|e| failure(format!("cannot write {}: {e}", path.display())))
}

/// The report as plain lines when the family goes to a file, otherwise as
/// comments followed by the family.
fn emit(report: &str, family: &Family, output: Option<&Path>) -> Result<String, Failure> {
    match output {
        Some(path) => {
            write_family(path, family)?;
            Ok(format!("{report}written: {}\n", path.display()))
        }
        None => {
            let mut out: String = report.lines().map(|l| format!("# {l}\n")).collect();
            out.push_str(&serialize_family(family));
            Ok(out)
        }
    }
}

pub fn gen_conway(n: usize) -> CmdResult {
    if n == 0 {
        return Err(failure("error: -n must be at least 1"));
    }
    let mut out = String::new();
    for v in conway(n) {
        let _ = writeln!(out, "{v}");
    }
    Ok(Outcome::ok(out))
}

fn decomposition_report(n: u64) -> Result<String, Failure> {
    let (b, d) = beta(n)?;
    let levels: Vec<String> = d.full_levels.iter().map(|(size, count)| format!("{size}:{count}")).collect();
    let mut out = String::new();
    let _ = writeln!(out, "n: {n}");
    let _ = writeln!(out, "beta: {b}");
    let _ = writeln!(out, "k: {}", d.k);
    let _ = writeln!(out, "deleted: {}", d.deleted);
    let _ = writeln!(out, "full_levels: {}", if levels.is_empty() { "-".to_string() } else { levels.join(" ") });
    let _ = writeln!(out, "r: {}", d.r);
    let _ = writeln!(out, "v: {}", d.v);
    Ok(out)
}

pub fn gen_renaud(n: u64, output: Option<&Path>) -> CmdResult {
    let f = renaud_family(n)?;
    let report = decomposition_report(n)?;
    Ok(Outcome::ok(emit(&report, &f, output)?))
}

pub fn gen_beta(n: u64) -> CmdResult {
    let (b, d) = beta(n)?;
    let mut out = decomposition_report(n)?;
    if d.k > MATERIALIZE_MAX_K {
        out.push_str("materialized_maxfreq: n/a\ncrosscheck: skipped\n");
        return Ok(Outcome::ok(out));
    }
    let (_, actual) = renaud_family(n)?.max_frequency()?;
    let agrees = actual as u64 == b;
    let _ = writeln!(out, "materialized_maxfreq: {actual}");
    let _ = writeln!(out, "crosscheck: {}", if agrees { "ok" } else { "mismatch" });
    Ok(Outcome { stdout: out, code: if agrees { 0 } else { 1 } })
}

pub fn gen_block_upset(s: u32, k: u32, output: Option<&Path>) -> CmdResult {
    let params = BlockUpsetParams::new(s, k)?;
    let f = block_upset_family(&params)?;
    let freq = f.frequencies();
    let (max_element, max_count) = freq.max();
    let holes = params.hole_levels();
    let observed: Vec<u32> = level_profile(&f, params.top())
        .iter()
        .filter(|l| l.is_hole())
        .map(|l| l.size)
        .collect();
    let mut report = String::new();
    let _ = writeln!(report, "s: {s}");
    let _ = writeln!(report, "k: {k}");
    let _ = writeln!(report, "universe: {}", params.universe());
    let _ = writeln!(report, "sets: {}", f.len());
    let _ = writeln!(report, "upset_sets: {}", params.upset_len());
    let _ = writeln!(report, "block_element_frequency: {}", freq.get(1));
    let _ = writeln!(report, "top_frequency: {}", freq.get(params.top()));
    let _ = writeln!(report, "max_frequency: {max_element} {max_count}");
    let _ = writeln!(report, "hole_levels: {}..={}", holes.start(), holes.end());
    let _ = writeln!(report, "observed_hole_levels: {}", span(&observed));
    Ok(Outcome::ok(emit(&report, &f, output)?))
}

fn span(levels: &[u32]) -> String {
    match (levels.first(), levels.last()) {
        (Some(a), Some(b)) => format!("{a}..={b}"),
        _ => "-".into(),
    }
}

pub fn gen_pad(c: Rational, input: &Path, output: Option<&Path>) -> CmdResult {
    let f = read_family(input)?;
    let (g, params) = pad_family(&f, c)?;
    let mut report = String::new();
    let _ = writeln!(report, "c: {c}");
    let _ = writeln!(report, "n: {}", params.n);
    let _ = writeln!(report, "m: {}", params.m);
    let _ = writeln!(report, "p: {}", params.p);
    let _ = writeln!(report, "ratio: {}", params.ratio());
    let _ = writeln!(report, "padded_sets: {}", g.len());
    Ok(Outcome::ok(emit(&report, &g, output)?))
}

pub fn analyze(path: &Path) -> CmdResult {
    let f = read_family(path)?;
    let closed = f.is_union_closed();
    let separating = f.is_separating();
    let mut out = String::new();
    let _ = writeln!(out, "n: {}", f.len());
    let _ = writeln!(out, "m: {}", f.m());
    let _ = writeln!(out, "universe_size: {}", f.universe().len());
    let _ = writeln!(out, "union_closed: {closed}");
    let _ = writeln!(out, "separating: {separating}");
    match f.basis_sets() {
        Ok(basis) => {
            let _ = writeln!(out, "basis_count: {}", basis.len());
        }
        Err(_) => out.push_str("basis_count: n/a\n"),
    }
    let Ok((max_element, max_count)) = f.max_frequency() else {
        out.push_str("max_freq: n/a\nconjecture: n/a\n");
        return Ok(Outcome::ok(out));
    };
    let _ = writeln!(out, "max_freq: {max_count}");
    let _ = writeln!(out, "max_element: {max_element}");
    if !closed {
        out.push_str("conjecture: n/a\n");
        return Ok(Outcome::ok(out));
    }
    let verdict = f.check_conjecture()?;
    let _ = writeln!(out, "conjecture: {}", if verdict.holds { "holds" } else { "violated" });
    let audit = minimal_counterexample_audit(&f)?;
    out.push_str(&audit.render());

    let (quotient, _) = f.separating_quotient();
    let quotient = ucs_core::canonical_form(&quotient);
    let (ordered, _) = frequency_order_relabel(&quotient)?;
    match s_collection(&ordered) {
        Ok(table) => {
            let m = table.m();
            let full: Vec<String> = (1..=m).filter(|&e| table.is_full(e)).map(|e| e.to_string()).collect();
            let _ = writeln!(out, "s_table_rows: {m}");
            let _ = writeln!(out, "s_table_full: {}", full.join(" "));
            let (_, bound) = s_frequency_bound(&ordered)?;
            let _ = writeln!(out, "s_frequency_bound: {bound}");
            for line in table.render().lines() {
                let _ = writeln!(out, "s_table: {line}");
            }
        }
        Err(e) => {
            let _ = writeln!(out, "s_table: n/a ({e})");
        }
    }
    Ok(Outcome::ok(out))
}

pub fn verify(path: &Path) -> CmdResult {
    let f = read_family(path)?;
    let mut out = String::new();
    let closed = f.is_union_closed();
    let _ = writeln!(out, "union_closed: {closed}");
    if !closed {
        out.push_str("conjecture_holds: n/a\n");
        return Ok(Outcome { stdout: out, code: 1 });
    }
    let v = f.check_conjecture().map_err(|e| Failure { stdout: out.clone(), ..Failure::from(e) })?;
    let _ = writeln!(out, "sets: {}", v.sets);
    let _ = writeln!(out, "max_element: {}", v.max_element);
    let _ = writeln!(out, "max_count: {}", v.max_count);
    let _ = writeln!(out, "conjecture_holds: {}", v.holds);
    Ok(Outcome { stdout: out, code: if v.holds { 0 } else { 1 } })
}

pub struct PhiRequest {
    pub n: usize,
    pub naive: bool,
    pub m_max: Option<u32>,
    pub workers: usize,
    pub budget: Option<u64>,
    pub output: Option<PathBuf>,
}

pub fn search_phi(req: &PhiRequest) -> CmdResult {
    let mut config = SearchConfig::new(req.n).with_workers(req.workers).with_naive(req.naive);
    if let Some(m) = req.m_max {
        config = config.with_m_max(m);
    }
    if let Some(b) = req.budget {
        config = config.with_node_budget(b);
    }
    let result = match phi_search(&config) {
        Ok(r) => r,
        Err(UcsError::Budget { budget, incumbent, witness }) => {
            let report = format!("phi_upper_bound={incumbent}\nmethod: seed\n");
            return Err(Failure {
                message: format!("error: search budget of {budget} nodes exhausted; upper bound {incumbent}"),
                stdout: emit(&report, &witness, req.output.as_deref())?,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let mut report = String::new();
    let _ = writeln!(report, "phi={}", result.phi);
    let _ = writeln!(report, "method: {}", if req.naive { "naive" } else { "search" });
    if let Some(u) = result.upper_bound {
        let _ = writeln!(report, "upper_bound: {u}");
    }
    let _ = writeln!(report, "visited: {}", result.stats.visited);
    let _ = writeln!(report, "conjecture_checked: {}", result.stats.conjecture_checked);
    let _ = writeln!(report, "conjecture_violations: {}", result.stats.conjecture_violations);
    let code = if result.stats.conjecture_violations == 0 { 0 } else { 1 };
    Ok(Outcome { stdout: emit(&report, &result.witness, req.output.as_deref())?, code })
}

pub fn search_table(limit: usize, workers: usize) -> CmdResult {
    if workers == 0 {
        return Err(failure("error: --workers must be at least 1"));
    }
    let table = verify_phi_table(limit, workers)?;
    let mut out = table.render();
    let _ = writeln!(out, "bounds_ok: {}", table.bounds_hold());
    let _ = writeln!(out, "steps_ok: {}", table.steps_hold());
    let _ = writeln!(out, "conjecture_violations: {}", table.conjecture_violations());
    let good = table.bounds_hold() && table.steps_hold() && table.conjecture_violations() == 0;
    Ok(Outcome { stdout: out, code: if good { 0 } else { 1 } })
}

pub fn compare_gap(n: u32) -> CmdResult {
    Ok(Outcome::ok(gap_report(n)?.render()))
}
