use serde::Serialize;

use crate::error::{Error, Result};
use crate::intset::IntSet;

/// `d, a, b` such that `d, a, b, a+d, b+d` are distinct members; every
/// multiple of `k = a + b + d` is then forced into the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Lemma1Witness {
    pub d: u64,
    pub a: u64,
    pub b: u64,
    pub k: u64,
}

impl Lemma1Witness {
    pub fn new(d: u64, a: u64, b: u64) -> Self {
        Lemma1Witness {
            d,
            a,
            b,
            k: a + b + d,
        }
    }

    pub fn quintuple(&self) -> [u64; 5] {
        [self.d, self.a, self.b, self.a + self.d, self.b + self.d]
    }

    /// Checks distinctness, membership of the quintuple, and `k > a_n`.
    pub fn verify(&self, set: &IntSet, a_n_value: u64) -> Result<()> {
        if self.k != self.a + self.b + self.d {
            return Err(Error::Witness(format!("k = {} is not a + b + d", self.k)));
        }
        let q = self.quintuple();
        const NAMES: [&str; 5] = ["d", "a", "b", "a+d", "b+d"];
        for i in 0..5 {
            if q[i] == 0 {
                return Err(Error::Witness(format!("{} is zero", NAMES[i])));
            }
            for j in i + 1..5 {
                if q[i] == q[j] {
                    return Err(Error::Witness(format!(
                        "{} = {} = {}",
                        NAMES[i], NAMES[j], q[i]
                    )));
                }
            }
            if !set.contains(q[i]) {
                return Err(Error::Witness(format!(
                    "{} = {} is not in the set",
                    NAMES[i], q[i]
                )));
            }
        }
        if self.k <= a_n_value {
            return Err(Error::Witness(format!(
                "k = {} does not exceed a_n = {a_n_value}",
                self.k
            )));
        }
        Ok(())
    }
}

/// All witnesses with `a < b` and `k > a_n_value`, in lexicographic
/// `(d, a, b)` order, stopping after `limit`.
pub fn lemma1_search(set: &IntSet, a_n_value: u64, limit: usize) -> Vec<Lemma1Witness> {
    let mut out = Vec::new();
    if limit == 0 {
        return out;
    }
    for d in set.iter() {
        for (i, a) in set.iter().enumerate() {
            if a == d || !set.contains(a + d) {
                continue;
            }
            for b in set.elements()[i + 1..].iter().copied() {
                if b == d || b == a + d || a == b + d || !set.contains(b + d) {
                    continue;
                }
                if a + b + d <= a_n_value {
                    continue;
                }
                out.push(Lemma1Witness::new(d, a, b));
                if out.len() == limit {
                    return out;
                }
            }
        }
    }
    out
}

/// A value the induction derives, with its two representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DerivedValue {
    /// Induction step `m` that produced the value (0 for `k` itself).
    pub step: u64,
    pub value: u64,
    pub reps: [(u64, u64); 2],
    pub present: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma1Trace {
    pub witness: Lemma1Witness,
    pub bound: u64,
    pub derived: Vec<DerivedValue>,
    /// Multiples of `k` confirmed present, ascending.
    pub confirmed_multiples: Vec<u64>,
    /// First derived value missing from the set, if any.
    pub failure: Option<DerivedValue>,
}

impl Lemma1Trace {
    pub fn succeeded(&self) -> bool {
        self.failure.is_none()
    }
}

/// Runs the induction `m k ∈ A ⇒ (m+1) k ∈ A` up to the horizon of `set`,
/// checking each derived value against the set. Each derived value has two
/// representations with four pairwise distinct summands, so it is a multisum
/// above `a_n` of values already present.
pub fn lemma1_multiples(set: &IntSet, w: &Lemma1Witness, a_n_value: u64) -> Result<Lemma1Trace> {
    w.verify(set, a_n_value)?;
    let Lemma1Witness { d, a, b, k } = *w;
    let bound = set.horizon();
    let mut trace = Lemma1Trace {
        witness: *w,
        bound,
        derived: Vec::new(),
        confirmed_multiples: Vec::new(),
        failure: None,
    };

    if k > bound {
        return Ok(trace);
    }
    if !record(&mut trace, set, 0, k, [(a + d, b), (b + d, a)])? {
        return Ok(trace);
    }
    trace.confirmed_multiples.push(k);

    let mut m = 1u64;
    while m * k + a.max(b) + d <= bound {
        let mk = m * k;
        let first = if m == 1 {
            // the general identity collapses to one pair at m = 1
            [(k, d), (a + d, b + d)]
        } else {
            [(mk - k + b + d, a + d), (mk - k + a + d, b + d)]
        };
        let steps = [
            (mk + d, first),
            (mk + a + d, [(mk + d, a), (mk, a + d)]),
            (mk + b + d, [(mk + d, b), (mk, b + d)]),
        ];
        for (value, reps) in steps {
            if !record(&mut trace, set, m, value, reps)? {
                return Ok(trace);
            }
        }
        let next = mk + k;
        if next > bound {
            break;
        }
        if !record(&mut trace, set, m, next, [(mk + a + d, b), (mk + b + d, a)])? {
            return Ok(trace);
        }
        trace.confirmed_multiples.push(next);
        m += 1;
    }
    Ok(trace)
}

/// Appends a derived value to the trace; false when it is missing.
fn record(
    trace: &mut Lemma1Trace,
    set: &IntSet,
    step: u64,
    value: u64,
    reps: [(u64, u64); 2],
) -> Result<bool> {
    let [(p, q), (u, v)] = reps;
    let four = [p, q, u, v];
    if (0..4).any(|i| (i + 1..4).any(|j| four[i] == four[j])) {
        return Err(Error::Witness(format!(
            "{value} = {p} + {q} = {u} + {v} does not use four distinct summands"
        )));
    }
    debug_assert!(p + q == value && u + v == value);
    let entry = DerivedValue {
        step,
        value,
        reps,
        present: set.contains(value),
    };
    trace.derived.push(entry);
    if !entry.present {
        trace.failure = Some(entry);
    }
    Ok(entry.present)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::multisum_closure;

    #[test]
    fn search_finds_small_witness() {
        let set = IntSet::from_elements(vec![2, 3, 5, 7, 8]).unwrap();
        let found = lemma1_search(&set, 0, 100);
        assert!(found.contains(&Lemma1Witness::new(5, 2, 3)));
        assert_eq!(Lemma1Witness::new(5, 2, 3).k, 10);
        for w in &found {
            w.verify(&set, 0).unwrap();
        }
    }

    #[test]
    fn search_over_multiples_of_g() {
        for g in [1u64, 3, 7] {
            let set = IntSet::multiples(g, 60 * g).unwrap();
            let found = lemma1_search(&set, 0, usize::MAX);
            let w = Lemma1Witness::new(3 * g, g, 2 * g);
            assert!(found.contains(&w));
            assert_eq!(w.k, 6 * g);
        }
    }

    #[test]
    fn search_needs_five_members() {
        let set = IntSet::from_elements(vec![7]).unwrap();
        assert!(lemma1_search(&set, 0, 10).is_empty());
    }

    #[test]
    fn search_respects_limit_and_order() {
        let set = IntSet::interval(1, 30, 30).unwrap();
        let found = lemma1_search(&set, 0, 5);
        assert_eq!(found.len(), 5);
        let keys: Vec<_> = found.iter().map(|w| (w.d, w.a, w.b)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert!(lemma1_search(&set, 1000, 5).is_empty());
    }

    #[test]
    fn verify_names_the_problem() {
        let set = IntSet::interval(1, 30, 30).unwrap();
        let err = Lemma1Witness::new(2, 2, 5).verify(&set, 0).unwrap_err();
        assert!(err.to_string().contains("d = a"), "{err}");
        let sparse = IntSet::from_elements(vec![2, 3, 5, 7]).unwrap();
        let err = Lemma1Witness::new(5, 2, 3).verify(&sparse, 0).unwrap_err();
        assert!(err.to_string().contains("b+d = 8"), "{err}");
        let err = Lemma1Witness::new(5, 2, 3).verify(&set, 10).unwrap_err();
        assert!(err.to_string().contains("a_n"), "{err}");
    }

    #[test]
    fn full_interval_confirms_all_multiples() {
        let b = 500;
        let set = IntSet::interval(1, b, b).unwrap();
        let trace = lemma1_multiples(&set, &Lemma1Witness::new(5, 2, 3), 0).unwrap();
        assert!(trace.succeeded());
        let expect: Vec<u64> = (1..=b / 10).map(|m| 10 * m).collect();
        assert_eq!(trace.confirmed_multiples, expect);
    }

    #[test]
    fn evens_confirm_multiples_of_twelve() {
        let set = IntSet::multiples(2, 600).unwrap();
        let trace = lemma1_multiples(&set, &Lemma1Witness::new(6, 2, 4), 0).unwrap();
        assert!(trace.succeeded());
        assert_eq!(trace.witness.k, 12);
        let expect: Vec<u64> = (1..=600 / 12).map(|m| 12 * m).collect();
        assert_eq!(trace.confirmed_multiples, expect);
    }

    #[test]
    fn closure_contains_generated_multiples() {
        let seed = IntSet::from_elements(vec![2, 3, 5, 7, 8]).unwrap();
        let closed = multisum_closure(&seed, 500).unwrap().result;
        let trace = lemma1_multiples(&closed, &Lemma1Witness::new(5, 2, 3), 0).unwrap();
        assert!(trace.succeeded());
        for m in trace.confirmed_multiples {
            assert!(closed.contains(m));
        }
    }

    #[test]
    fn missing_value_is_pinpointed() {
        // remove 20 = 2k from an otherwise full interval
        let set = IntSet::collect((1..=100).filter(|&v| v != 20), 100).unwrap();
        let trace = lemma1_multiples(&set, &Lemma1Witness::new(5, 2, 3), 0).unwrap();
        let failure = trace.failure.unwrap();
        assert_eq!(failure.value, 20);
        assert_eq!(failure.reps, [(17, 3), (18, 2)]);
        assert_eq!(trace.confirmed_multiples, vec![10]);
    }

    #[test]
    fn every_derived_value_has_four_distinct_summands() {
        let set = IntSet::interval(1, 400, 400).unwrap();
        let trace = lemma1_multiples(&set, &Lemma1Witness::new(4, 1, 9), 0).unwrap();
        assert!(trace.succeeded());
        for dv in &trace.derived {
            let [(p, q), (u, v)] = dv.reps;
            let mut s = vec![p, q, u, v];
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 4, "{dv:?}");
        }
    }
}
