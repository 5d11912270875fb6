//! Plain-text set files.
//!
//! ```text
//! # comments start with '#'
//! !horizon 100
//! 2
//! 4
//! 6
//! ```
//!
//! One positive integer per line in strictly ascending order. The optional
//! `!horizon B` header must precede the first element; without it the
//! horizon is the largest element.

use thiserror::Error;

use crate::intset::IntSet;

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// One-based line number (0 when the problem is not tied to a line).
    pub line: usize,
    pub message: String,
    /// The input is well formed but exceeds the universe cap.
    pub over_cap: bool,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
        over_cap: false,
    }
}

fn over_cap(line: usize, value: u64, cap: u64) -> ParseError {
    ParseError {
        over_cap: true,
        ..err(line, format!("{value} exceeds the universe cap {cap}"))
    }
}

fn parse_positive(token: &str, line: usize) -> Result<u64, ParseError> {
    if token.starts_with('-') || token == "0" || token.trim_start_matches('0').is_empty() {
        return Err(err(line, format!("`{token}` is not a positive integer")));
    }
    token
        .parse::<u64>()
        .map_err(|_| err(line, format!("`{token}` is not a positive integer")))
}

/// Parses the set text format. Horizons above `b_max` are rejected.
pub fn parse_set(text: &str, b_max: u64) -> Result<IntSet, ParseError> {
    let mut horizon = None;
    let mut elements: Vec<u64> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if let Some(rest) = trimmed.strip_prefix("!horizon") {
            if !elements.is_empty() {
                return Err(err(line, "the horizon header must precede the elements"));
            }
            if horizon.is_some() {
                return Err(err(line, "duplicate horizon header"));
            }
            let b = parse_positive(rest.trim(), line)?;
            if b > b_max {
                return Err(over_cap(line, b, b_max));
            }
            horizon = Some(b);
            continue;
        }
        let value = parse_positive(trimmed, line)?;
        if let Some(&prev) = elements.last() {
            if value <= prev {
                return Err(err(
                    line,
                    format!("{value} does not exceed the previous element {prev}"),
                ));
            }
        }
        if let Some(b) = horizon {
            if value > b {
                return Err(err(line, format!("{value} lies beyond the horizon {b}")));
            }
        }
        if value > b_max {
            return Err(over_cap(line, value, b_max));
        }
        elements.push(value);
    }
    if elements.is_empty() {
        return Err(err(last_line, "the set has no elements"));
    }
    let horizon = horizon.unwrap_or(*elements.last().unwrap());
    IntSet::new(elements, horizon).map_err(|e| err(0, e.to_string()))
}

/// Comma-separated ascending integers, e.g. `2,4,6`. The horizon defaults
/// to the largest element.
pub fn parse_seed_list(list: &str, horizon: Option<u64>, b_max: u64) -> Result<IntSet, ParseError> {
    let mut elements: Vec<u64> = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let value = parse_positive(token, 0)?;
        if let Some(&prev) = elements.last() {
            if value <= prev {
                return Err(err(
                    0,
                    format!("seed list must ascend: {prev} then {value}"),
                ));
            }
        }
        if value > b_max {
            return Err(over_cap(0, value, b_max));
        }
        elements.push(value);
    }
    let Some(&last) = elements.last() else {
        return Err(err(0, "the seed list is empty"));
    };
    let horizon = horizon.unwrap_or(last);
    if horizon > b_max {
        return Err(over_cap(0, horizon, b_max));
    }
    IntSet::new(elements, horizon).map_err(|e| err(0, e.to_string()))
}

/// Renders a set in the text format, horizon header included.
pub fn write_set(set: &IntSet) -> String {
    let mut out = format!("!horizon {}\n", set.horizon());
    for e in set.iter() {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}
