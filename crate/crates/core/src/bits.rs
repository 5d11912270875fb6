//! Dense bit arrays and saturating pair-count planes.
//!
//! Representation counts only ever matter up to two (one pair makes a sum,
//! two distinct pairs make a multisum), so the convolution `r(m)` is kept as
//! two bit planes: `ge1[m]` (at least one pair) and `ge2[m]` (at least two).
//! Adding a shifted copy of a membership array into the planes is a
//! saturating increment done 64 positions at a time.

const WORD: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BitSet {
    len: usize,
    words: Vec<u64>,
}

impl BitSet {
    /// An all-zero array addressing positions `0..len`.
    pub fn new(len: usize) -> Self {
        BitSet {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn words_mut(&mut self) -> &mut [u64] {
        &mut self.words
    }

    #[cfg(test)]
    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Set positions in ascending order.
    pub fn ones(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    /// Word `w` of this array shifted up by `shift` positions, i.e. bit `j`
    /// of the result is position `64 * w + j - shift` of `self` (zero when
    /// that position is negative or out of range).
    #[inline]
    pub fn shifted_word(&self, w: usize, shift: usize) -> u64 {
        let base = (w * WORD) as isize - shift as isize;
        if base <= -(WORD as isize) {
            return 0;
        }
        if base < 0 {
            let k = (-base) as usize;
            return self.words.first().map_or(0, |&x| x << k);
        }
        let base = base as usize;
        let (q, r) = (base / WORD, base % WORD);
        let lo = self.words.get(q).copied().unwrap_or(0);
        if r == 0 {
            return lo;
        }
        let hi = self.words.get(q + 1).copied().unwrap_or(0);
        (lo >> r) | (hi << (WORD - r))
    }
}

impl FromIterator<usize> for BitSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let items: Vec<usize> = iter.into_iter().collect();
        let len = items.iter().max().map_or(0, |m| m + 1);
        let mut out = BitSet::new(len);
        for i in items {
            out.insert(i);
        }
        out
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

/// Mask selecting bits `lo..=hi` of a word (both in `0..64`).
#[inline]
fn span_mask(lo: usize, hi: usize) -> u64 {
    let upper = if hi == WORD - 1 {
        u64::MAX
    } else {
        (1u64 << (hi + 1)) - 1
    };
    upper & !((1u64 << lo) - 1)
}

/// Saturating representation counts over positions `0..len`.
#[derive(Clone, Debug)]
pub struct PairPlanes {
    pub ge1: BitSet,
    pub ge2: BitSet,
}

impl PairPlanes {
    pub fn new(len: usize) -> Self {
        PairPlanes {
            ge1: BitSet::new(len),
            ge2: BitSet::new(len),
        }
    }

    /// Saturating `+1` at every position `p` in `lo..=hi` for which
    /// `src[p - shift]` is set.
    pub fn add_shifted(&mut self, src: &BitSet, shift: usize, lo: usize, hi: usize) {
        let hi = hi.min(self.ge1.len().saturating_sub(1));
        if lo > hi || self.ge1.is_empty() {
            return;
        }
        let (wlo, whi) = (lo / WORD, hi / WORD);
        let (g1, g2) = (self.ge1.words_mut(), self.ge2.words_mut());
        for w in wlo..=whi {
            let mut bits = src.shifted_word(w, shift);
            if w == wlo || w == whi {
                let a = if w == wlo { lo % WORD } else { 0 };
                let b = if w == whi { hi % WORD } else { WORD - 1 };
                bits &= span_mask(a, b);
            }
            if bits == 0 {
                continue;
            }
            g2[w] |= g1[w] & bits;
            g1[w] |= bits;
        }
    }

    /// Planes for unordered pairs `{s, t}` of `members` with `s + t < len`.
    /// With `strict`, only pairs `s < t` are counted.
    pub fn of_pairs(members: &BitSet, len: usize, strict: bool) -> Self {
        let mut planes = PairPlanes::new(len);
        for s in members.ones() {
            let lo = 2 * s + usize::from(strict);
            if lo >= len {
                break;
            }
            // positions p >= 2s (or > 2s) pair s with t = p - s >= s
            planes.add_shifted(members, s, lo, len - 1);
        }
        planes
    }
}
