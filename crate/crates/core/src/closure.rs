//! Least supersets of a seed closed under multisums (or sums) inside a bound.
//!
//! The engine keeps saturating pair planes and updates them incrementally:
//! inserting `e` adds the pairs `{e, x}` for every `x` already present. A
//! position only needs counting while it is undecided (neither a member nor
//! already at the closing threshold), so a one-bit-per-word summary of the
//! undecided positions lets an insertion skip settled words entirely.

use num_integer::Integer;
use serde::Serialize;

use crate::bits::{BitSet, PairPlanes};
use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::Limits;

const WORD: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    /// Close under values with two or more representations.
    Multisum,
    /// Close under every sum.
    Sum,
}

impl ClosureKind {
    fn threshold(self) -> u8 {
        match self {
            ClosureKind::Multisum => 2,
            ClosureKind::Sum => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    pub result: IntSet,
    pub rounds: usize,
    pub added_per_round: Vec<usize>,
    /// The last round added nothing: the result contains every value of
    /// `[1, B]` that the closing rule produces from it.
    pub saturated: bool,
}

impl ClosureResult {
    pub fn stats(&self) -> ClosureStats {
        ClosureStats {
            rounds: self.rounds,
            added_per_round: self.added_per_round.clone(),
            saturated: self.saturated,
        }
    }

    /// Whether the result has an element in the top quarter `(3B/4, B]`.
    pub fn reaches_top_quarter(&self) -> bool {
        reaches_top_quarter(&self.result)
    }
}

pub(crate) fn reaches_top_quarter(set: &IntSet) -> bool {
    4 * set.max() > 3 * set.horizon()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureStats {
    pub rounds: usize,
    pub added_per_round: Vec<usize>,
    pub saturated: bool,
}

/// Closure settings beyond the seed and bound.
#[derive(Clone, Copy, Debug, Default)]
pub struct ClosureOptions {
    pub limits: Limits,
    /// Stop after this many rounds even if the fixpoint is not reached.
    pub max_rounds: Option<usize>,
}

pub fn multisum_closure(seed: &IntSet, bound: u64) -> Result<ClosureResult> {
    closure(
        seed,
        bound,
        ClosureKind::Multisum,
        &ClosureOptions::default(),
    )
}

pub fn sum_closure(seed: &IntSet, bound: u64) -> Result<ClosureResult> {
    closure(seed, bound, ClosureKind::Sum, &ClosureOptions::default())
}

/// Rounds of "add every value in `[1, bound]` produced by the current set"
/// until nothing changes.
pub fn closure(
    seed: &IntSet,
    bound: u64,
    kind: ClosureKind,
    options: &ClosureOptions,
) -> Result<ClosureResult> {
    options.limits.check(bound)?;
    if seed.max() > bound {
        return Err(Error::BeyondHorizon {
            element: seed.max(),
            horizon: bound,
        });
    }

    // closure(g * S, B) = g * closure(S, B / g)
    let g = seed.iter().fold(0u64, |acc, e| acc.gcd(&e));
    let scaled_bound = (bound / g) as usize;
    let mut engine = Engine::new(scaled_bound, kind.threshold());
    for e in seed.iter() {
        engine.insert((e / g) as usize);
    }

    let mut added_per_round = Vec::new();
    let mut saturated = false;
    loop {
        let pending = engine.pending();
        if pending.is_empty() {
            saturated = true;
            break;
        }
        if options
            .max_rounds
            .is_some_and(|cap| added_per_round.len() >= cap)
        {
            break;
        }
        for &e in &pending {
            engine.insert(e);
        }
        added_per_round.push(pending.len());
    }

    let elements = engine.set.ones().map(|x| x as u64 * g).collect();
    Ok(ClosureResult {
        result: IntSet::new(elements, bound)?,
        rounds: added_per_round.len(),
        added_per_round,
        saturated,
    })
}

struct Engine {
    bound: usize,
    threshold: u8,
    set: BitSet,
    max: usize,
    planes: PairPlanes,
    /// Non-members that reached the threshold since the last round, with a
    /// summary bit per word of it.
    fresh: BitSet,
    fresh_words: BitSet,
    /// Bit per word of positions: set while the word holds an undecided position.
    open: BitSet,
}

/// Word-level view of the engine state touched by one insertion.
struct Sweep<'a> {
    src: &'a [u64],
    ge1: &'a mut [u64],
    ge2: &'a mut [u64],
    fresh: &'a mut [u64],
}

impl Sweep<'_> {
    /// Adds `bits` to word `w`; returns (fresh bits, settled?).
    #[inline(always)]
    fn apply<const GE1: bool>(&mut self, w: usize, bits: u64) -> (u64, bool) {
        let before = self.ge1[w];
        let was2 = self.ge2[w];
        let now1 = before | bits;
        let now2 = was2 | (before & bits);
        self.ge1[w] = now1;
        self.ge2[w] = now2;
        let (old, new) = if GE1 { (before, now1) } else { (was2, now2) };
        let member = self.src[w];
        let fresh = new & !old & !member;
        self.fresh[w] |= fresh;
        (fresh, member | new == u64::MAX)
    }
}

/// Word `i` of a word array shifted up by `r < 64` bits; `i >= 1`.
#[inline(always)]
fn shifted(src: &[u64], i: usize, r: u32) -> u64 {
    (src[i] << r) | ((src[i - 1] >> 1) >> (63 - r))
}

/// The 64 words `base..base + 64`, all open, with `base > q`.
#[inline(always)]
fn block_body<const GE1: bool>(sweep: &mut Sweep<'_>, base: usize, q: usize, r: u32) -> (u64, u64) {
    let (mut closed, mut touched) = (0u64, 0u64);
    for j in 0..WORD {
        let w = base + j;
        let bits = shifted(sweep.src, w - q, r);
        let (fresh, settled) = sweep.apply::<GE1>(w, bits);
        touched |= u64::from(fresh != 0) << j;
        closed |= u64::from(settled) << j;
    }
    (closed, touched)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "avx2")]
unsafe fn block_avx2<const GE1: bool>(
    sweep: &mut Sweep<'_>,
    base: usize,
    q: usize,
    r: u32,
) -> (u64, u64) {
    block_body::<GE1>(sweep, base, q, r)
}

fn block<const GE1: bool>(sweep: &mut Sweep<'_>, base: usize, q: usize, r: u32) -> (u64, u64) {
    #[cfg(target_arch = "x86_64")]
    if std::arch::is_x86_feature_detected!("avx2") {
        // SAFETY: the CPU supports AVX2, checked just above
        return unsafe { block_avx2::<GE1>(sweep, base, q, r) };
    }
    block_body::<GE1>(sweep, base, q, r)
}

impl Engine {
    fn new(bound: usize, threshold: u8) -> Self {
        let len = bound + 1;
        let nwords = len.div_ceil(WORD);
        let mut open = BitSet::new(nwords);
        for w in 0..nwords {
            open.insert(w);
        }
        // position 0 and the padding past the bound count as reached, so a
        // word is settled exactly when `members | reached` is full
        let mut planes = PairPlanes::new(nwords * WORD);
        for p in std::iter::once(0).chain(len..nwords * WORD) {
            planes.ge1.insert(p);
            planes.ge2.insert(p);
        }
        Engine {
            bound,
            threshold,
            set: BitSet::new(nwords * WORD),
            max: 0,
            planes,
            fresh: BitSet::new(nwords * WORD),
            fresh_words: BitSet::new(nwords),
            open,
        }
    }

    fn refresh(&mut self, w: usize) {
        let reached = if self.threshold == 1 {
            &self.planes.ge1
        } else {
            &self.planes.ge2
        };
        if self.set.words()[w] | reached.words()[w] == u64::MAX {
            self.open.words_mut()[w / WORD] &= !(1u64 << (w % WORD));
        }
    }

    fn insert(&mut self, e: usize) {
        if self.set.get(e) {
            return;
        }
        self.set.insert(e);
        self.max = self.max.max(e);
        self.refresh(e / WORD);
        if self.threshold == 1 {
            self.sweep::<true>(e);
        } else {
            self.sweep::<false>(e);
        }
    }

    /// Pairs `{e, x}` for members `x <= max`: positions `e + x`. Positions up
    /// to `e` receive nothing because the shifted source is empty there.
    fn sweep<const GE1: bool>(&mut self, e: usize) {
        let (lo, hi) = (e + 1, self.bound.min(e + self.max));
        if lo > hi {
            return;
        }
        let (wlo, whi) = (lo / WORD, hi / WORD);
        let (q, r) = (e / WORD, (e % WORD) as u32);
        let mut sweep = Sweep {
            src: self.set.words(),
            ge1: self.planes.ge1.words_mut(),
            ge2: self.planes.ge2.words_mut(),
            fresh: self.fresh.words_mut(),
        };
        let summary = self.open.words_mut();
        let fresh_words = self.fresh_words.words_mut();
        for sw in wlo / WORD..=whi / WORD {
            let mut open = summary[sw];
            if sw == wlo / WORD {
                open &= u64::MAX << (wlo % WORD);
            }
            if sw == whi / WORD && whi % WORD != WORD - 1 {
                open &= (1u64 << (whi % WORD + 1)) - 1;
            }
            let base = sw * WORD;
            let mut closed = 0u64;
            let mut touched = 0u64;
            if open == u64::MAX && base > q {
                (closed, touched) = block::<GE1>(&mut sweep, base, q, r);
            } else {
                while open != 0 {
                    let j = open.trailing_zeros() as usize;
                    open &= open - 1;
                    let w = base + j;
                    let i = w - q;
                    let bits = if i == 0 {
                        sweep.src[0] << r
                    } else {
                        shifted(sweep.src, i, r)
                    };
                    if bits == 0 {
                        continue;
                    }
                    let (fresh, settled) = sweep.apply::<GE1>(w, bits);
                    touched |= u64::from(fresh != 0) << j;
                    closed |= u64::from(settled) << j;
                }
            }
            summary[sw] &= !closed;
            fresh_words[sw] |= touched;
        }
    }

    /// Values at the threshold that are not yet members, ascending.
    fn pending(&mut self) -> Vec<usize> {
        let mut out = Vec::new();
        let fresh = self.fresh.words_mut();
        for (sw, summary) in self.fresh_words.words_mut().iter_mut().enumerate() {
            let mut words = std::mem::take(summary);
            while words != 0 {
                let w = sw * WORD + words.trailing_zeros() as usize;
                words &= words - 1;
                let mut bits = std::mem::take(&mut fresh[w]) & !self.set.words()[w];
                while bits != 0 {
                    out.push(w * WORD + bits.trailing_zeros() as usize);
                    bits &= bits - 1;
                }
            }
        }
        out
    }
}
