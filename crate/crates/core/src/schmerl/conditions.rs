use serde::Serialize;

use super::SequencePrefix;
use crate::bits::PairPlanes;

/// Outcome of checking both hypotheses on a finite prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub n: usize,
    #[serde(rename = "M")]
    pub m: usize,
    /// Indices `(n, M]` checked for C1, as `[n + 1, M]`.
    pub c1_checked_range: [usize; 2],
    /// Indices `m` whose term has fewer than two representations.
    pub c1_violations: Vec<usize>,
    /// C2 is decided for every value up to this one.
    pub c2_checked_max: u64,
    /// Values above `a_n` with two four-distinct representations that are
    /// missing from the prefix.
    pub c2_violations: Vec<u64>,
    pub passed: bool,
}

/// C1: every `a_m` with `m > n` is `a_i + a_j = a_r + a_s`, `i < r <= s < j`.
/// C2: every `a = a_i + a_j = a_r + a_s > a_n` with `i < r < s < j` is a term.
///
/// Values above `a_M` are never reported; both checks are exact below it
/// because representations only use smaller terms.
pub fn check_conditions(prefix: &SequencePrefix) -> ConditionReport {
    let set = prefix.to_set();
    let top = prefix.term(prefix.len());
    let len = top as usize + 1;
    let any = PairPlanes::of_pairs(set.members(), len, false);
    let strict = PairPlanes::of_pairs(set.members(), len, true);

    let c1_violations: Vec<usize> = (prefix.n() + 1..=prefix.len())
        .filter(|&m| !any.ge2.get(prefix.term(m) as usize))
        .collect();

    let a_n = prefix.a_n() as usize;
    let c2_violations: Vec<u64> = strict
        .ge2
        .ones()
        .filter(|&v| v > a_n && !set.contains(v as u64))
        .map(|v| v as u64)
        .collect();

    let passed = c1_violations.is_empty() && c2_violations.is_empty();
    ConditionReport {
        n: prefix.n(),
        m: prefix.len(),
        c1_checked_range: [prefix.n() + 1, prefix.len()],
        c1_violations,
        c2_checked_max: top,
        c2_violations,
        passed,
    }
}
