//! The `ucs 1` family text format.
//!
//! ```text
//! ucs 1
//! m=3
//! # comments start with '#'
//! -
//! 1
//! 1 2
//! ```
//!
//! Line 1 is the version header, line 2 declares the universe size
//! (`1..=64`), and every further line is one set: `-` for the empty set,
//! otherwise strictly increasing elements of `1..=m` separated by single
//! spaces. Comment lines are ignored anywhere. Output is always canonical:
//! sets in canonical family order, every line terminated by `\n`.

use std::collections::HashSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::family::Family;
use crate::mask::{SetMask, MAX_UNIVERSE};

pub const FORMAT_HEADER: &str = "ucs 1";

/// Parse failures. Every variant carries a stable code (`UCS-E00x`) and the
/// 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("UCS-E001 line {line}: bad header: {detail}")]
    BadHeader { line: usize, detail: String },
    #[error("UCS-E002 line {line}: universe size {m} outside 1..=64")]
    UniverseRange { line: usize, m: u64 },
    #[error("UCS-E003 line {line}: elements not strictly increasing")]
    NotIncreasing { line: usize },
    #[error("UCS-E004 line {line}: element {element} outside 1..={m}")]
    ElementRange { line: usize, element: u64, m: u32 },
    #[error("UCS-E005 line {line}: duplicate set (first seen on line {first})")]
    DuplicateSet { line: usize, first: usize },
    #[error("UCS-E006: family has no sets")]
    EmptyBody,
    #[error("UCS-E007 line {line}: malformed line: {detail}")]
    Malformed { line: usize, detail: String },
}

impl FormatError {
    pub fn code(&self) -> &'static str {
        match self {
            FormatError::BadHeader { .. } => "UCS-E001",
            FormatError::UniverseRange { .. } => "UCS-E002",
            FormatError::NotIncreasing { .. } => "UCS-E003",
            FormatError::ElementRange { .. } => "UCS-E004",
            FormatError::DuplicateSet { .. } => "UCS-E005",
            FormatError::EmptyBody => "UCS-E006",
            FormatError::Malformed { .. } => "UCS-E007",
        }
    }
}

fn parse_number(tok: &str) -> Option<u64> {
    let canonical = !tok.is_empty()
        && tok.bytes().all(|b| b.is_ascii_digit())
        && !(tok.len() > 1 && tok.starts_with('0'));
    if canonical {
        tok.parse().ok()
    } else {
        None
    }
}

/// Strict parse; the result is in canonical order whatever the input order.
pub fn parse_family(text: &str) -> Result<Family, FormatError> {
    let mut lines = text
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .peekable();
    let mut content = Vec::new();
    while let Some((no, line)) = lines.next() {
        if line.is_empty() && lines.peek().is_none() {
            break; // trailing line feed
        }
        if !line.is_ascii() {
            return Err(FormatError::Malformed { line: no, detail: "non-ASCII text".into() });
        }
        if line.starts_with('#') {
            continue;
        }
        content.push((no, line));
    }
    let mut content = content.into_iter();

    match content.next() {
        Some((_, FORMAT_HEADER)) => {}
        Some((no, other)) => {
            return Err(FormatError::BadHeader { line: no, detail: format!("expected '{FORMAT_HEADER}', found '{other}'") })
        }
        None => return Err(FormatError::BadHeader { line: 1, detail: "missing version line".into() }),
    }
    let m = match content.next() {
        Some((no, line)) => {
            let value = line
                .strip_prefix("m=")
                .and_then(parse_number)
                .ok_or_else(|| FormatError::BadHeader { line: no, detail: format!("expected 'm=<int>', found '{line}'") })?;
            if value == 0 || value > MAX_UNIVERSE as u64 {
                return Err(FormatError::UniverseRange { line: no, m: value });
            }
            value as u32
        }
        None => return Err(FormatError::BadHeader { line: 2, detail: "missing universe line".into() }),
    };

    let mut seen: HashSet<SetMask> = HashSet::new();
    let mut first_line = std::collections::HashMap::new();
    let mut sets = Vec::new();
    for (no, line) in content {
        let set = if line == "-" {
            SetMask::EMPTY
        } else {
            let mut set = SetMask::EMPTY;
            let mut prev = 0u64;
            for tok in line.split(' ') {
                let e = parse_number(tok).ok_or_else(|| FormatError::Malformed {
                    line: no,
                    detail: format!("bad element token '{tok}'"),
                })?;
                if e == 0 || e > m as u64 {
                    return Err(FormatError::ElementRange { line: no, element: e, m });
                }
                if e <= prev {
                    return Err(FormatError::NotIncreasing { line: no });
                }
                prev = e;
                set = set.with(e as u32);
            }
            set
        };
        if !seen.insert(set) {
            return Err(FormatError::DuplicateSet { line: no, first: first_line[&set] });
        }
        first_line.insert(set, no);
        sets.push(set);
    }
    if sets.is_empty() {
        return Err(FormatError::EmptyBody);
    }
    Ok(Family::new(m, sets).expect("validated above"))
}

/// Canonical text of `f`.
pub fn serialize_family(f: &Family) -> String {
    let mut out = String::with_capacity(16 + f.len() * 8);
    out.push_str(FORMAT_HEADER);
    out.push('\n');
    let _ = writeln!(out, "m={}", f.m());
    for s in f.sets() {
        if s.is_empty() {
            out.push('-');
        } else {
            for (i, e) in s.elements().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                let _ = write!(out, "{e}");
            }
        }
        out.push('\n');
    }
    out
}
