//! Shrinking a period of the tail to the least one.
//!
//! While some large element `x` sits off the multiples of `k`, with
//! `x + s k` also present, the residue class of `x` fills in above
//! `x + s k`; so do the classes of `c x` for every `c`, and picking
//! `c r ≡ gcd(r, k) (mod k)` puts all large multiples of `gcd(r, k)` in the
//! set. Each step is checked against the set before `k` is replaced.

use num_integer::Integer;
use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intset::IntSet;

/// One gcd step: `x ≡ r (mod k)`, `x, x + s k ∈ A`, `c r ≡ k_next (mod k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PeriodStep {
    pub r: u64,
    pub x: u64,
    pub s: u64,
    pub c: u64,
    pub k_next: u64,
}

impl Serialize for PeriodStep {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(5))?;
        for v in [self.r, self.x, self.s, self.c, self.k_next] {
            seq.serialize_element(&v)?;
        }
        seq.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalPeriodTrace {
    pub k0: u64,
    pub steps: Vec<PeriodStep>,
    pub k_final: u64,
}

/// Largest multiple of `k` in `[0, bound]` that is missing from `set`
/// (0 when all are present).
fn multiples_threshold(set: &IntSet, k: u64) -> u64 {
    let bound = set.horizon();
    let mut v = bound / k * k;
    while v > 0 && set.contains(v) {
        v -= k;
    }
    v
}

/// `c` in `[1, k]` with `c r ≡ gcd(r, k) (mod k)`.
fn cofactor(r: u64, k: u64) -> u64 {
    let eg = (r as i128).extended_gcd(&(k as i128));
    let c = eg.x.rem_euclid(k as i128) as u64;
    if c == 0 {
        k
    } else {
        c
    }
}

/// Starting from `k0`, whose multiples fill `(n0, B]`, replaces `k` by
/// `gcd(x mod k, k)` for verified off-residue elements `x` until none is
/// left in `(n0, B - k * min_window]`.
pub fn part_two(set: &IntSet, k0: u64, n0: u64, min_window: u64) -> Result<MinimalPeriodTrace> {
    if k0 == 0 || min_window == 0 {
        return Err(Error::Parameter(
            "k0 and min_window must be positive".into(),
        ));
    }
    let bound = set.horizon();
    let mut threshold = multiples_threshold(set, k0);
    if threshold > n0 {
        return Err(Error::Precondition(format!(
            "{threshold} is a multiple of k0 = {k0} above N0 = {n0} missing from the set"
        )));
    }
    threshold = n0;

    let mut k = k0;
    let mut steps = Vec::new();
    'descent: loop {
        let upper = bound.saturating_sub(k * min_window);
        let start = set.elements().partition_point(|&e| e <= n0);
        for &x in &set.elements()[start..] {
            if x > upper {
                break;
            }
            if x % k == 0 {
                continue;
            }
            let Some(s) = (1..=(bound - x) / k).find(|&s| set.contains(x + s * k)) else {
                continue;
            };
            // the class of x is present above x + s k + threshold
            let above = x + s * k + threshold;
            let first = above + k - (above - x) % k;
            let class_len = if first > bound {
                0
            } else {
                (bound - first) / k + 1
            };
            let filled = (0..class_len).all(|j| set.contains(first + j * k));
            if class_len < min_window || !filled {
                continue;
            }
            let r = x % k;
            let g = r.gcd(&k);
            let next_threshold = multiples_threshold(set, g);
            if bound / g - next_threshold / g < min_window {
                continue;
            }
            let c = cofactor(r, k);
            debug_assert_eq!((c as u128 * r as u128) % k as u128, g as u128 % k as u128);
            steps.push(PeriodStep {
                r,
                x,
                s,
                c,
                k_next: g,
            });
            k = g;
            threshold = next_threshold.max(n0);
            continue 'descent;
        }
        break;
    }
    Ok(MinimalPeriodTrace {
        k0,
        steps,
        k_final: k,
    })
}
