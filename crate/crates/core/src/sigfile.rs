//! The `.sig` text format.
//!
//! ```text
//! SIG v1
//! n 3
//! 1 1 2
//! 1 3 0
//! 2 2 2
//! 2 3 0
//! 3 1 0
//! 3 2 0
//! rows A B C
//! cols x y lam
//! ```
//!
//! Indices are 1-based. Positions not listed are `-inf`. `#` starts a comment.
//! The `rows`/`cols` lines are optional and must follow every triplet.

use thiserror::Error;

use crate::error::SigmaError;
use crate::sigma::{default_col_labels, default_row_labels, SignatureMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SigFileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Sigma(#[from] SigmaError),
}

fn syntax(line: usize, message: impl Into<String>) -> SigFileError {
    SigFileError::Syntax { line, message: message.into() }
}

/// Parses `.sig` text.
pub fn parse_sig(text: &str) -> Result<SignatureMatrix, SigFileError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(k, raw)| (k + 1, raw.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    match lines.next() {
        Some((_, "SIG v1")) => {}
        Some((line, _)) => return Err(syntax(line, "expected header \"SIG v1\"")),
        None => return Err(syntax(1, "expected header \"SIG v1\"")),
    }
    let n = match lines.next() {
        Some((line, l)) => {
            let mut words = l.split_whitespace();
            match (words.next(), words.next().map(str::parse::<usize>), words.next()) {
                (Some("n"), Some(Ok(n)), None) if n > 0 => n,
                _ => return Err(syntax(line, "expected \"n <N>\" with N >= 1")),
            }
        }
        None => return Err(syntax(1, "missing \"n <N>\" line")),
    };

    let mut triplets = Vec::new();
    let mut rows: Option<Vec<String>> = None;
    let mut cols: Option<Vec<String>> = None;
    for (line, l) in lines {
        let words: Vec<&str> = l.split_whitespace().collect();
        match words[0] {
            "rows" | "cols" => {
                let slot = if words[0] == "rows" { &mut rows } else { &mut cols };
                if slot.is_some() {
                    return Err(syntax(line, format!("repeated \"{}\" line", words[0])));
                }
                *slot = Some(words[1..].iter().map(|w| w.to_string()).collect());
            }
            _ => {
                if rows.is_some() || cols.is_some() {
                    return Err(syntax(line, "triplet after label lines"));
                }
                if words.len() != 3 {
                    return Err(syntax(line, "expected \"i j sigma\""));
                }
                let index = |w: &str| match w.parse::<usize>() {
                    Ok(k) if (1..=n).contains(&k) => Ok(k - 1),
                    _ => Err(syntax(line, format!("index {w:?} not in 1..={n}"))),
                };
                let i = index(words[0])?;
                let j = index(words[1])?;
                let s = words[2]
                    .parse::<i64>()
                    .map_err(|_| syntax(line, format!("bad entry {:?}", words[2])))?;
                triplets.push((i, j, s));
            }
        }
    }
    let m = SignatureMatrix::new(n, triplets)?;
    if rows.is_none() && cols.is_none() {
        return Ok(m);
    }
    let rows = rows.unwrap_or_else(|| default_row_labels(n));
    let cols = cols.unwrap_or_else(|| default_col_labels(n));
    Ok(m.with_labels(rows, cols)?)
}

/// Emits `.sig` text with triplets sorted by row then column.
pub fn write_sig(sigma: &SignatureMatrix) -> String {
    let n = sigma.n();
    let mut out = format!("SIG v1\nn {n}\n");
    for (i, j, s) in sigma.entries() {
        out.push_str(&format!("{} {} {s}\n", i + 1, j + 1));
    }
    if sigma.row_labels() != default_row_labels(n).as_slice() {
        out.push_str(&format!("rows {}\n", sigma.row_labels().join(" ")));
    }
    if sigma.col_labels() != default_col_labels(n).as_slice() {
        out.push_str(&format!("cols {}\n", sigma.col_labels().join(" ")));
    }
    out
}
