//! Finite sets of positive integers with an explicit membership horizon, and
//! the sum / multisum predicates defined over them.
//!
//! Membership of a value is known exactly on `[1, B]` where `B` is the
//! horizon. Every predicate that asks "is this sum in the set?" is therefore
//! truncated to `[1, B]`: a witness pair for `m` consists of values strictly
//! smaller than `m`, so the truncated answers are exact on the horizon.

use serde::Serialize;

use crate::bits::{BitSet, PairPlanes};
use crate::error::{Error, Result};

/// A nonempty, strictly increasing set of positive integers known up to a
/// horizon.
#[derive(Clone, Debug, Serialize)]
pub struct IntSet {
    horizon: u64,
    elements: Vec<u64>,
    #[serde(skip)]
    members: BitSet,
}

impl PartialEq for IntSet {
    fn eq(&self, other: &Self) -> bool {
        self.horizon == other.horizon && self.elements == other.elements
    }
}

impl Eq for IntSet {}

impl IntSet {
    /// Builds a set from strictly increasing positive elements, all at most
    /// `horizon`.
    pub fn new(elements: Vec<u64>, horizon: u64) -> Result<Self> {
        let Some(&last) = elements.last() else {
            return Err(Error::EmptySet);
        };
        if elements[0] == 0 {
            return Err(Error::ZeroElement);
        }
        if let Some(w) = elements.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::NotAscending {
                prev: w[0],
                next: w[1],
            });
        }
        if last > horizon {
            return Err(Error::BeyondHorizon {
                element: last,
                horizon,
            });
        }
        let mut members = BitSet::new(horizon as usize + 1);
        for &e in &elements {
            members.insert(e as usize);
        }
        Ok(IntSet {
            horizon,
            elements,
            members,
        })
    }

    /// Horizon defaults to the largest element.
    pub fn from_elements(elements: Vec<u64>) -> Result<Self> {
        let horizon = elements.last().copied().unwrap_or(0);
        Self::new(elements, horizon)
    }

    /// Every value of `values` that lies in `[1, horizon]`, deduplicated.
    pub fn collect(values: impl IntoIterator<Item = u64>, horizon: u64) -> Result<Self> {
        let mut elements: Vec<u64> = values
            .into_iter()
            .filter(|&v| v >= 1 && v <= horizon)
            .collect();
        elements.sort_unstable();
        elements.dedup();
        Self::new(elements, horizon)
    }

    /// `{lo, lo + 1, ..., hi}` with horizon `horizon`.
    pub fn interval(lo: u64, hi: u64, horizon: u64) -> Result<Self> {
        Self::new((lo..=hi).collect(), horizon)
    }

    /// All multiples of `k` in `[1, horizon]`.
    pub fn multiples(k: u64, horizon: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::Parameter("modulus must be positive".into()));
        }
        Self::new((1..=horizon / k).map(|m| m * k).collect(), horizon)
    }

    #[inline]
    pub fn horizon(&self) -> u64 {
        self.horizon
    }

    #[inline]
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// Always false; kept for API symmetry with `len`.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn min(&self) -> u64 {
        self.elements[0]
    }

    #[inline]
    pub fn max(&self) -> u64 {
        self.elements[self.elements.len() - 1]
    }

    #[inline]
    pub fn contains(&self, value: u64) -> bool {
        value <= self.horizon && self.members.get(value as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.elements.iter().copied()
    }

    pub(crate) fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn is_subset_of(&self, other: &IntSet) -> bool {
        self.iter().all(|e| other.contains(e))
    }

    /// `self ∩ [1, bound]` with horizon `bound`. Fails when nothing remains.
    pub fn restrict(&self, bound: u64) -> Result<Self> {
        let end = self.elements.partition_point(|&e| e <= bound);
        Self::new(self.elements[..end].to_vec(), bound)
    }

    /// Same elements, different horizon.
    pub fn with_horizon(&self, horizon: u64) -> Result<Self> {
        Self::new(self.elements.clone(), horizon)
    }

    /// Exact representation counts over `[0, 2B]`.
    pub fn sum_profile(&self) -> SumProfile {
        let top = 2 * self.max() as usize;
        let mut counts = vec![0u32; top + 1];
        let mut strict = vec![0u32; top + 1];
        for (i, &s) in self.elements.iter().enumerate() {
            counts[2 * s as usize] += 1;
            for &t in &self.elements[i + 1..] {
                counts[(s + t) as usize] += 1;
                strict[(s + t) as usize] += 1;
            }
        }
        SumProfile {
            domain_max: 2 * self.horizon,
            counts,
            strict,
        }
    }

    fn planes(&self, len: usize, strict: bool) -> PairPlanes {
        PairPlanes::of_pairs(&self.members, len, strict)
    }

    fn sum_domain(&self) -> usize {
        2 * self.horizon as usize + 1
    }

    /// All sums `s + t` (`s = t` allowed), in `[2, 2B]`.
    pub fn sums(&self) -> Vec<u64> {
        collect_ones(&self.planes(self.sum_domain(), false).ge1)
    }

    /// Values with at least two unordered representations.
    pub fn multisums(&self) -> Vec<u64> {
        collect_ones(&self.planes(self.sum_domain(), false).ge2)
    }

    /// Values with at least two representations using four distinct summands.
    pub fn strict_multisums(&self) -> Vec<u64> {
        collect_ones(&self.planes(self.sum_domain(), true).ge2)
    }

    /// Values with exactly one representation.
    pub fn unisums(&self) -> Vec<u64> {
        let p = self.planes(self.sum_domain(), false);
        p.ge1
            .words()
            .iter()
            .zip(p.ge2.words())
            .enumerate()
            .flat_map(|(w, (&a, &b))| {
                let mut bits = a & !b;
                std::iter::from_fn(move || {
                    (bits != 0).then(|| {
                        let j = bits.trailing_zeros() as u64;
                        bits &= bits - 1;
                        w as u64 * 64 + j
                    })
                })
            })
            .collect()
    }

    pub fn classify(&self) -> Classification {
        let len = self.horizon as usize + 1;
        let planes = self.planes(len, false);
        let mem = self.members.words();
        let (g1, g2) = (planes.ge1.words(), planes.ge2.words());

        let mut sum_closed = true;
        let mut multisum_closed = true;
        let mut sum_free = true;
        let mut multisum_free = true;
        for w in 0..mem.len() {
            sum_closed &= g1[w] & !mem[w] == 0;
            multisum_closed &= g2[w] & !mem[w] == 0;
            sum_free &= g1[w] & mem[w] == 0;
            multisum_free &= g2[w] & mem[w] == 0;
        }
        let vacuous = g2.iter().all(|&w| w == 0);

        let last_plain = self
            .elements
            .iter()
            .rev()
            .find(|&&e| !planes.ge2.get(e as usize))
            .copied();
        let complete_from = match last_plain {
            None => Some(0),
            Some(t) if t < self.max() => Some(t),
            Some(_) => None,
        };

        Classification {
            is_sum_closed: sum_closed,
            is_multisum_closed: multisum_closed,
            is_vacuously_multisum: vacuous,
            is_sum_free: sum_free,
            is_multisum_free: multisum_free,
            complete_from,
        }
    }
}

fn collect_ones(bits: &BitSet) -> Vec<u64> {
    bits.ones().map(|m| m as u64).collect()
}

impl std::fmt::Display for IntSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

/// Representation counts: `r(m)` counts unordered pairs `{s, t}` with
/// `s <= t`, `r'(m)` only those with `s < t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumProfile {
    domain_max: u64,
    counts: Vec<u32>,
    strict: Vec<u32>,
}

impl SumProfile {
    pub fn domain_max(&self) -> u64 {
        self.domain_max
    }

    pub fn r(&self, m: u64) -> u32 {
        self.counts.get(m as usize).copied().unwrap_or(0)
    }

    pub fn r_strict(&self, m: u64) -> u32 {
        self.strict.get(m as usize).copied().unwrap_or(0)
    }

    /// `(m, r(m), r'(m))` for every `m` with `r(m) > 0`.
    pub fn nonzero(&self) -> impl Iterator<Item = (u64, u32, u32)> + '_ {
        self.counts
            .iter()
            .zip(&self.strict)
            .enumerate()
            .filter(|(_, (&r, _))| r > 0)
            .map(|(m, (&r, &rs))| (m as u64, r, rs))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub is_sum_closed: bool,
    pub is_multisum_closed: bool,
    pub is_vacuously_multisum: bool,
    pub is_sum_free: bool,
    pub is_multisum_free: bool,
    /// Least `T` such that every element above `T` is a multisum, when at
    /// least one element lies above it.
    pub complete_from: Option<u64>,
}

impl Classification {
    /// Short human-readable summary, e.g. `multisum set (non-vacuous)`.
    pub fn summary(&self) -> String {
        let mut parts = Vec::new();
        if self.is_multisum_closed {
            parts.push(if self.is_vacuously_multisum {
                "multisum set (vacuous)"
            } else {
                "multisum set (non-vacuous)"
            });
        } else {
            parts.push("not a multisum set");
        }
        if self.is_multisum_free {
            parts.push("multisum-free");
        }
        if self.is_sum_closed {
            parts.push("sum set");
        }
        if self.is_sum_free {
            parts.push("sum-free");
        }
        parts.join(", ")
    }
}
