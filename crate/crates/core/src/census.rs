//! Counting the sum / multisum families among subsets of `{1..B}`.
//!
//! Sets are bit masks (bit `i` is the value `i`) and every predicate is
//! truncated at `B`. Whether `m` is a sum or multisum of `S` depends only on
//! `S ∩ [1, m)`, so the pruned search decides `1, 2, ..., B` in order and
//! each value is either forced (in for the closed families, out for the
//! free ones) or free to branch on. The exhaustive scan checks every mask
//! and serves as the oracle.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EXHAUSTIVE_MAX_B: u32 = 24;
pub const DFS_MAX_B: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    MultisumSet,
    MultisumFree,
    SumFree,
    SumClosed,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::MultisumSet,
        Family::MultisumFree,
        Family::SumFree,
        Family::SumClosed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::MultisumSet => "multisum_set",
            Family::MultisumFree => "multisum_free",
            Family::SumFree => "sum_free",
            Family::SumClosed => "sum_closed",
        }
    }

    pub fn parse(name: &str) -> Option<Family> {
        Family::ALL.into_iter().find(|f| f.name() == name)
    }

    fn uses_multisums(self) -> bool {
        matches!(self, Family::MultisumSet | Family::MultisumFree)
    }

    fn is_closed(self) -> bool {
        matches!(self, Family::MultisumSet | Family::SumClosed)
    }

    /// Membership test for a mask given its pair planes and horizon mask.
    #[inline]
    fn accepts(self, set: u128, ge1: u128, ge2: u128, horizon: u128) -> bool {
        let reached = if self.uses_multisums() { ge2 } else { ge1 };
        if self.is_closed() {
            reached & horizon & !set == 0
        } else {
            reached & set == 0
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    DfsPruned,
}

impl Mode {
    pub fn parse(name: &str) -> Option<Mode> {
        match name {
            "exhaustive" => Some(Mode::Exhaustive),
            "dfs_pruned" => Some(Mode::DfsPruned),
            _ => None,
        }
    }

    pub fn cap(self) -> u32 {
        match self {
            Mode::Exhaustive => EXHAUSTIVE_MAX_B,
            Mode::DfsPruned => DFS_MAX_B,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub family: Family,
    #[serde(rename = "B")]
    pub b: u32,
    /// Nonempty members of the family.
    pub count: u64,
    pub max_size: usize,
    /// Maximum-size members in lexicographic order, truncated.
    pub witnesses: Vec<Vec<u64>>,
}

impl CensusRecord {
    pub const CSV_HEADER: &'static str = "family,B,count,max_size";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{}",
            self.family, self.b, self.count, self.max_size
        )
    }
}

/// Saturating pair planes of a mask; sums beyond bit 127 are dropped.
#[inline]
fn planes(set: u128) -> (u128, u128) {
    let (mut ge1, mut ge2) = (0u128, 0u128);
    let mut rest = set;
    while rest != 0 {
        let i = rest.trailing_zeros();
        rest &= rest - 1;
        let partners = set >> i << i;
        let shifted = if i >= 128 { 0 } else { partners << i };
        ge2 |= ge1 & shifted;
        ge1 |= shifted;
    }
    (ge1, ge2)
}

fn horizon_mask(b: u32) -> u128 {
    // bits 1..=b
    let upto = if b >= 127 {
        u128::MAX
    } else {
        (1u128 << (b + 1)) - 1
    };
    upto & !1
}

fn to_elements(set: u128) -> Vec<u64> {
    let mut out = Vec::with_capacity(set.count_ones() as usize);
    let mut rest = set;
    while rest != 0 {
        out.push(rest.trailing_zeros() as u64);
        rest &= rest - 1;
    }
    out
}

/// Running tally: count, largest size, and the lexicographically first
/// maximum-size members (at most `limit`).
#[derive(Clone, Debug, Default)]
struct Tally {
    count: u64,
    max_size: usize,
    extremes: Vec<Vec<u64>>,
}

impl Tally {
    fn record(&mut self, set: u128, limit: usize) {
        self.count += 1;
        let size = set.count_ones() as usize;
        if size > self.max_size {
            self.max_size = size;
            self.extremes.clear();
        }
        if size == self.max_size && limit > 0 {
            self.extremes.push(to_elements(set));
            if self.extremes.len() >= limit.max(16).saturating_mul(2) {
                self.trim(limit);
            }
        }
    }

    fn trim(&mut self, limit: usize) {
        self.extremes.sort_unstable();
        self.extremes.truncate(limit);
    }

    fn merge(mut self, mut other: Tally, limit: usize) -> Tally {
        self.count += other.count;
        if other.max_size > self.max_size {
            self.max_size = other.max_size;
            self.extremes = std::mem::take(&mut other.extremes);
        } else if other.max_size == self.max_size {
            self.extremes.append(&mut other.extremes);
        }
        self.trim(limit);
        self
    }
}

fn check(b: u32, mode: Mode) -> Result<()> {
    if b == 0 {
        return Err(Error::Parameter("B must be at least 1".into()));
    }
    if b > mode.cap() {
        return Err(Error::ResourceCap {
            bound: b as u64,
            cap: mode.cap() as u64,
        });
    }
    Ok(())
}

/// Counts the nonempty members of `family` among subsets of `{1..b}` and
/// keeps up to `witness_limit` maximum-size members.
pub fn enumerate(family: Family, b: u32, mode: Mode, witness_limit: usize) -> Result<CensusRecord> {
    check(b, mode)?;
    let mut tally = match mode {
        Mode::Exhaustive => exhaustive(family, b, witness_limit),
        Mode::DfsPruned => {
            let mut t = dfs(family, b, 1, 0, 0, 0, witness_limit);
            // the all-excluded branch is the empty set
            t.count -= 1;
            t
        }
    };
    tally.trim(witness_limit);
    Ok(CensusRecord {
        family,
        b,
        count: tally.count,
        max_size: tally.max_size,
        witnesses: tally.extremes,
    })
}

/// Every maximum-size member, lexicographically ordered.
pub fn density_extremes(family: Family, b: u32, mode: Mode) -> Result<Vec<Vec<u64>>> {
    Ok(enumerate(family, b, mode, usize::MAX)?.witnesses)
}

fn exhaustive(family: Family, b: u32, limit: usize) -> Tally {
    let horizon = horizon_mask(b);
    let total: u64 = 1 << b;
    let chunk = 1u64 << 12;
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut tally = Tally::default();
            let lo = (c * chunk).max(1);
            let hi = ((c + 1) * chunk).min(total);
            for raw in lo..hi {
                let set = (raw as u128) << 1;
                let (ge1, ge2) = planes(set);
                if family.accepts(set, ge1, ge2, horizon) {
                    tally.record(set, limit);
                }
            }
            tally.trim(limit);
            tally
        })
        .reduce(Tally::default, |a, z| a.merge(z, limit))
}

/// Depth at which the search stops forking onto the thread pool.
const PARALLEL_DEPTH: u32 = 10;

fn dfs(family: Family, b: u32, m: u32, set: u128, ge1: u128, ge2: u128, limit: usize) -> Tally {
    if m > b {
        let mut t = Tally::default();
        t.record(set, limit);
        if set == 0 {
            t.extremes.clear();
        }
        return t;
    }
    let reached = if family.uses_multisums() { ge2 } else { ge1 } >> m & 1 == 1;
    let include = || {
        let with = set | 1u128 << m;
        let shifted = if m >= 128 { 0 } else { with << m };
        dfs(
            family,
            b,
            m + 1,
            with,
            ge1 | shifted,
            ge2 | (ge1 & shifted),
            limit,
        )
    };
    let exclude = || dfs(family, b, m + 1, set, ge1, ge2, limit);
    match (reached, family.is_closed()) {
        (true, true) => include(),
        (true, false) => exclude(),
        (false, _) if m <= PARALLEL_DEPTH && b - m >= 8 => {
            let (with, without) = rayon::join(include, exclude);
            with.merge(without, limit)
        }
        (false, _) => {
            let with = include();
            with.merge(exclude(), limit)
        }
    }
}
