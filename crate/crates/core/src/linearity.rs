//! Detecting eventual linearity on a bounded set: some `N` and `k` with
//! `n ∈ S ⟺ k | n` for every `n` in `(N, B]`.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::closure::reaches_top_quarter;
use crate::error::{Error, Result};
use crate::intset::IntSet;

pub const DEFAULT_MIN_WINDOW: u64 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityCertificate {
    pub k: u64,
    #[serde(rename = "N")]
    pub n: u64,
    pub horizon: u64,
    /// Multiples of `k` in `(N, horizon]`.
    pub window_count: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Linearity {
    Certificate(LinearityCertificate),
    /// No element in the top quarter of `[1, B]`: the set has stopped.
    Finite,
    /// No `(N, k)` fits inside the horizon.
    Unknown,
}

impl Linearity {
    pub fn certificate(&self) -> Option<&LinearityCertificate> {
        match self {
            Linearity::Certificate(c) => Some(c),
            _ => None,
        }
    }

    pub fn status(&self) -> &'static str {
        match self {
            Linearity::Certificate(_) => "certificate",
            Linearity::Finite => "finite",
            Linearity::Unknown => "unknown",
        }
    }
}

/// JSON shape shared by all three outcomes; `k`, `N`, and `window_count` are
/// null unless a certificate was found.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearityRecord {
    pub k: Option<u64>,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub horizon: u64,
    pub window_count: Option<u64>,
    pub status: String,
}

impl LinearityRecord {
    pub fn new(outcome: &Linearity, horizon: u64) -> Self {
        let cert = outcome.certificate();
        LinearityRecord {
            k: cert.map(|c| c.k),
            n: cert.map(|c| c.n),
            horizon,
            window_count: cert.map(|c| c.window_count),
            status: outcome.status().to_string(),
        }
    }
}

/// Finds the least `N` for which the tail `S ∩ (N, B]` is exactly the
/// multiples of its gcd, with at least `min_window` of them.
pub fn detect_linear(set: &IntSet, min_window: u64) -> Result<Linearity> {
    if min_window < 2 {
        return Err(Error::Parameter(format!(
            "min_window must be at least 2, got {min_window}"
        )));
    }
    if !reaches_top_quarter(set) {
        return Ok(Linearity::Finite);
    }
    let horizon = set.horizon();
    let elements = set.elements();

    // suffix_gcd[i] = gcd(elements[i..])
    let mut suffix_gcd = vec![0u64; elements.len() + 1];
    for i in (0..elements.len()).rev() {
        suffix_gcd[i] = suffix_gcd[i + 1].gcd(&elements[i]);
    }

    // Each tail elements[start..] is the tail for N in [prev, first). Within
    // that range the least usable N leaves no multiple of k below `first`.
    for start in 0..elements.len() {
        let prev = if start == 0 { 0 } else { elements[start - 1] };
        let k = suffix_gcd[start];
        let n = prev.max(elements[start] - k);
        let tail_len = (elements.len() - start) as u64;
        let window = horizon / k - n / k;
        if window == tail_len && window >= min_window {
            return Ok(Linearity::Certificate(LinearityCertificate {
                k,
                n,
                horizon,
                window_count: window,
            }));
        }
    }
    Ok(Linearity::Unknown)
}

/// Checks `n ∈ S ⟺ k | n` for every `n` in `(N, horizon]`.
pub fn verify_certificate(set: &IntSet, cert: &LinearityCertificate) -> bool {
    if cert.k == 0 || cert.horizon > set.horizon() || cert.n > cert.horizon {
        return false;
    }
    (cert.n + 1..=cert.horizon).all(|v| set.contains(v) == (v % cert.k == 0))
}
