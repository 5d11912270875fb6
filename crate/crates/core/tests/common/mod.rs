//! Brute-force reference implementations. Nothing here shares code with the
//! library: representations are found by scanning pairs and quadruples.
#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::Rng;

/// The subset of `{1..b}` encoded by the bits of `mask` (bit 0 is 1).
pub fn subset(mask: u32) -> Vec<u64> {
    (0..32)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i as u64 + 1)
        .collect()
}

/// Values `m = a + b = c + d` with `{a, b} != {c, d}` (all from `s`), or with
/// `a, b, c, d` pairwise distinct when `strict`.
pub fn quad_multisums(s: &[u64], strict: bool) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i..] {
            for (k, &c) in s.iter().enumerate() {
                for &d in &s[k..] {
                    if a + b != c + d || (a, b) == (c, d) {
                        continue;
                    }
                    let distinct = [a, b, c, d].iter().collect::<BTreeSet<_>>().len() == 4;
                    if !strict || distinct {
                        out.insert(a + b);
                    }
                }
            }
        }
    }
    out
}

pub fn pair_sums(s: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::new();
    for (i, &a) in s.iter().enumerate() {
        for &b in &s[i..] {
            out.insert(a + b);
        }
    }
    out
}

/// Unordered representations `m = a + b`, `a <= b`.
pub fn reps(s: &[u64], m: u64) -> usize {
    let set: BTreeSet<u64> = s.iter().copied().collect();
    s.iter()
        .filter(|&&a| 2 * a <= m && set.contains(&(m - a)))
        .count()
}

/// Jacobi iteration: each round adds every value in `[1, bound]` with at
/// least `threshold` representations over the current set.
pub fn naive_closure(seed: &[u64], bound: u64, threshold: usize) -> (Vec<u64>, Vec<usize>) {
    let mut current: BTreeSet<u64> = seed.iter().copied().collect();
    let mut added = Vec::new();
    loop {
        let list: Vec<u64> = current.iter().copied().collect();
        let new: Vec<u64> = (1..=bound)
            .filter(|m| !current.contains(m) && reps(&list, *m) >= threshold)
            .collect();
        if new.is_empty() {
            return (current.into_iter().collect(), added);
        }
        added.push(new.len());
        current.extend(new);
    }
}

/// Membership of `s ⊆ {1..b}` in a family, decided from the quadruple and
/// pair oracles with everything truncated at `b`.
pub fn in_family(name: &str, s: &[u64], b: u64) -> bool {
    let set: BTreeSet<u64> = s.iter().copied().collect();
    let ms: BTreeSet<u64> = quad_multisums(s, false)
        .into_iter()
        .filter(|&m| m <= b)
        .collect();
    let sums: BTreeSet<u64> = pair_sums(s).into_iter().filter(|&m| m <= b).collect();
    match name {
        "multisum_set" => ms.is_subset(&set),
        "multisum_free" => ms.is_disjoint(&set),
        "sum_free" => sums.is_disjoint(&set),
        "sum_closed" => sums.is_subset(&set),
        _ => panic!("unknown family {name}"),
    }
}

/// Least `N` (scanning upward) for which `(N, b]` is exactly the multiples
/// of the gcd of the tail, with at least `min_window` of them.
pub fn naive_linear(s: &[u64], b: u64, min_window: u64) -> Option<(u64, u64)> {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    let set: BTreeSet<u64> = s.iter().copied().collect();
    for n in 0..b {
        let tail: Vec<u64> = set.range(n + 1..=b).copied().collect();
        if tail.is_empty() {
            return None;
        }
        let k = tail.iter().fold(0, |g, &x| gcd(g, x));
        let window = b / k - n / k;
        if window < min_window {
            continue;
        }
        if (n + 1..=b).all(|v| set.contains(&v) == (v % k == 0)) {
            return Some((k, n));
        }
    }
    None
}

/// A random subset of `{1..hi}` with `1..=max_len` elements.
pub fn random_seed(rng: &mut impl Rng, hi: u64, max_len: usize) -> Vec<u64> {
    let len = rng.gen_range(1..=max_len);
    let mut v: BTreeSet<u64> = BTreeSet::new();
    while v.len() < len.min(hi as usize) {
        v.insert(rng.gen_range(1..=hi));
    }
    v.into_iter().collect()
}

/// Nonempty member counts over subsets of `{1..B}`, `B = 1..=12`, for
/// multisum_set, multisum_free, sum_free, sum_closed (exhaustive oracle).
pub const FROZEN_COUNTS: [(&str, [u64; 12]); 4] = [
    (
        "multisum_set",
        [1, 3, 7, 14, 28, 51, 97, 167, 307, 512, 922, 1493],
    ),
    (
        "multisum_free",
        [1, 3, 7, 14, 29, 53, 104, 183, 347, 592, 1099, 1841],
    ),
    ("sum_free", [1, 2, 5, 8, 15, 23, 41, 60, 107, 150, 252, 368]),
    ("sum_closed", [1, 2, 4, 6, 11, 15, 26, 36, 57, 79, 130, 170]),
];

/// Largest member sizes for the same table.
pub const FROZEN_MAX_SIZES: [(&str, [usize; 12]); 4] = [
    ("multisum_set", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]),
    ("multisum_free", [1, 2, 3, 3, 4, 4, 5, 5, 6, 6, 7, 7]),
    ("sum_free", [1, 1, 2, 2, 3, 3, 4, 4, 5, 5, 6, 6]),
    ("sum_closed", [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]),
];

/// Prefixes `a_1 < ... < a_{6n-4}` passing C1 and C2 whose first `n` terms
/// lie in `[1, lim]`: C1 allows a term only with two representations over
/// earlier terms, and C2 forbids skipping a value with two four-distinct
/// ones.
pub fn valid_prefixes(n: usize, lim: u64) -> Vec<Vec<u64>> {
    fn counts(seq: &[u64], v: u64) -> (usize, usize) {
        let (mut r, mut strict) = (0, 0);
        for (i, &x) in seq.iter().enumerate() {
            if 2 * x > v {
                break;
            }
            if seq[i..].contains(&(v - x)) {
                r += 1;
                if 2 * x < v {
                    strict += 1;
                }
            }
        }
        (r, strict)
    }
    fn extend(seq: &mut Vec<u64>, m: usize, out: &mut Vec<Vec<u64>>) {
        if seq.len() == m {
            out.push(seq.clone());
            return;
        }
        let last = *seq.last().unwrap();
        for v in last + 1..=2 * last {
            let (r, strict) = counts(seq, v);
            if r >= 2 {
                seq.push(v);
                extend(seq, m, out);
                seq.pop();
            }
            if strict >= 2 {
                break;
            }
        }
    }
    fn starts(n: usize, lo: u64, lim: u64, seq: &mut Vec<u64>, m: usize, out: &mut Vec<Vec<u64>>) {
        if seq.len() == n {
            extend(seq, m, out);
            return;
        }
        for x in lo..=lim {
            seq.push(x);
            starts(n, x + 1, lim, seq, m, out);
            seq.pop();
        }
    }
    let mut out = Vec::new();
    starts(n, 1, lim, &mut Vec::new(), 6 * n - 4, &mut out);
    out
}

/// All inputs with the four intersection patterns over the given ranges.
pub fn lemma2_inputs(max_d: u64, max_x: u64) -> Vec<(u64, u64, u64, u64)> {
    let mut out = Vec::new();
    for d1 in 1..=max_d {
        for d2 in 1..=max_d {
            for x in 1..=max_x {
                let ys = [
                    (x + d1).checked_sub(d2),
                    Some(x + d1),
                    x.checked_sub(d2),
                    Some(x),
                ];
                for y in ys.into_iter().flatten().filter(|&y| y > 0) {
                    out.push((d1, d2, x, y));
                }
            }
        }
    }
    out
}
