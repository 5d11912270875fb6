//! The constructive route to eventual linearity.
//!
//! Given a prefix `a_1 < ... < a_M` and a parameter `n`, the engine checks
//! the two hypotheses on the prefix, finds a quintuple `d, a, b, a+d, b+d`
//! (directly, or through the collision argument and its four-case
//! resolution), confirms that every multiple of `k = a + b + d` is present,
//! and finally shrinks `k` by gcd steps to the least period of the tail.
//!
//! Every membership the argument relies on is checked against the concrete
//! set. A failed check is reported as an error naming the step, which means
//! the input does not satisfy the hypotheses.

mod conditions;
mod lemma1;
mod lemma2;
mod part_one;
mod part_two;

pub use conditions::{check_conditions, ConditionReport};
pub use lemma1::{lemma1_multiples, lemma1_search, DerivedValue, Lemma1Trace, Lemma1Witness};
pub use lemma2::{lemma2_resolve, Lemma2Case, Lemma2Input, Lemma2Resolution};
pub use part_one::{part_one, Alternative, Counting, PartOneTrace, Representation};
pub use part_two::{part_two, MinimalPeriodTrace, PeriodStep};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intset::IntSet;
use crate::linearity::DEFAULT_MIN_WINDOW;

/// `a_1 < a_2 < ... < a_M` together with the hypothesis parameter `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequencePrefix {
    terms: Vec<u64>,
    n: usize,
}

impl SequencePrefix {
    /// Requires `n >= 1` and at least `6n - 4` strictly increasing positive
    /// terms.
    pub fn new(terms: Vec<u64>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("n must be at least 1".into()));
        }
        if terms.first() == Some(&0) {
            return Err(Error::ZeroElement);
        }
        if let Some(w) = terms.windows(2).find(|w| w[0] >= w[1]) {
            return Err(Error::NotAscending {
                prev: w[0],
                next: w[1],
            });
        }
        let need = Self::required_len(n);
        if terms.len() < need {
            return Err(Error::Precondition(format!(
                "prefix has {} terms but n = {n} needs M >= 6n - 4 = {need}",
                terms.len()
            )));
        }
        Ok(SequencePrefix { terms, n })
    }

    /// The first `6n - 4` elements of `set`.
    pub fn from_set(set: &IntSet, n: usize) -> Result<Self> {
        let need = Self::required_len(n.max(1));
        let terms = set.elements().iter().take(need).copied().collect();
        Self::new(terms, n)
    }

    pub fn required_len(n: usize) -> usize {
        (6 * n).saturating_sub(4).max(1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `M`, the number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[u64] {
        &self.terms
    }

    /// `a_i`, one-based.
    pub fn term(&self, i: usize) -> u64 {
        self.terms[i - 1]
    }

    pub fn a_n(&self) -> u64 {
        self.term(self.n)
    }

    /// The terms as a set whose horizon is the last term.
    pub fn to_set(&self) -> IntSet {
        IntSet::from_elements(self.terms.clone()).expect("prefix terms are a valid set")
    }
}

/// Everything produced by one run of the constructive pipeline.
#[derive(Clone, Debug, Serialize)]
pub struct Extraction {
    #[serde(skip)]
    pub k: u64,
    pub conditions: ConditionReport,
    pub part_one: PartOneTrace,
    #[serde(skip)]
    pub lemma1: Lemma1Trace,
    pub part_two: MinimalPeriodTrace,
}

/// Runs condition checking, Part One, the Lemma 1 multiple check on `set`,
/// and the gcd descent. `set` must extend the prefix.
pub fn extract_modulus(prefix: &SequencePrefix, set: &IntSet) -> Result<Extraction> {
    extract_modulus_with(prefix, set, DEFAULT_MIN_WINDOW)
}

pub fn extract_modulus_with(
    prefix: &SequencePrefix,
    set: &IntSet,
    min_window: u64,
) -> Result<Extraction> {
    let head = set.elements().get(..prefix.len());
    if head != Some(prefix.terms()) {
        return Err(Error::Precondition(
            "the prefix is not an initial segment of the set".into(),
        ));
    }
    let conditions = check_conditions(prefix);
    if !conditions.passed {
        return Err(Error::ConditionsFailed(Box::new(conditions)));
    }
    let part_one = part_one(prefix)?;
    let lemma1 = lemma1_multiples(set, &part_one.witness, prefix.a_n())?;
    if let Some(failure) = &lemma1.failure {
        return Err(Error::ConditionViolation(format!(
            "multiple generation for k = {} failed: {} = {} + {} = {} + {} is not in the set",
            part_one.k,
            failure.value,
            failure.reps[0].0,
            failure.reps[0].1,
            failure.reps[1].0,
            failure.reps[1].1
        )));
    }
    let part_two = part_two(set, part_one.k, 0, min_window)?;
    Ok(Extraction {
        k: part_two.k_final,
        conditions,
        part_one,
        lemma1,
        part_two,
    })
}
