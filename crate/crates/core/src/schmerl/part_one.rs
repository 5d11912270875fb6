//! Finding a Lemma 1 witness inside the first `M = 6n - 4` terms.
//!
//! Each `t ∈ J` has a nested representation `t = x + z = y + w`; its triple
//! `T_t = {x, y, z}` spends three incidences on members of `I`. A value lying
//! in three triples `T_r, T_s, T_t` either yields a witness directly or
//! equals half of one of `r, s, t`. In the second situation no value lies in
//! four triples, so counting incidences forces `|D| >= 3n - 2` and two of the
//! pairs `S_d` must meet, which is exactly the Lemma 2 setting.

use std::collections::BTreeMap;

use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::conditions::check_conditions;
use super::lemma1::Lemma1Witness;
use super::lemma2::{lemma2_resolve, Lemma2Input, Lemma2Resolution};
use super::SequencePrefix;
use crate::error::{Error, Result};
use crate::intset::IntSet;

/// `t = x + z = y + w` with `x < y <= w < z`, all in `I`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Representation {
    pub t: u64,
    pub x: u64,
    pub y: u64,
    pub w: u64,
    pub z: u64,
}

impl Representation {
    /// `T_t = {x, y, z}`.
    pub fn triple(&self) -> [u64; 3] {
        [self.x, self.y, self.z]
    }
}

/// The alternative (1)-(6) that holds for `d ∈ T_r ∩ T_s ∩ T_t`, `r < s < t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Alternative {
    pub d: u64,
    pub tag: u8,
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl Alternative {
    fn classify(d: u64, r: u64, s: u64, t: u64) -> Self {
        let tag = if r == 2 * d && t == s + d {
            1
        } else if s == 2 * d && t == r + d {
            2
        } else if t == 2 * d && s == r + d {
            3
        } else if r != 2 * d && s != 2 * d && s != r + d {
            4
        } else if r != 2 * d && t != 2 * d && t != r + d {
            5
        } else if s != 2 * d && t != 2 * d && t != s + d {
            6
        } else {
            0
        };
        Alternative { d, tag, r, s, t }
    }

    fn is_direct(&self) -> bool {
        matches!(self.tag, 4..=6)
    }

    /// The witness a direct alternative hands to Lemma 1.
    fn direct_witness(&self) -> Option<Lemma1Witness> {
        let Alternative { d, r, s, t, .. } = *self;
        match self.tag {
            4 => Some(Lemma1Witness::new(d, r - d, s - d)),
            5 => Some(Lemma1Witness::new(d, r - d, t - d)),
            6 => Some(Lemma1Witness::new(d, s - d, t - d)),
            _ => None,
        }
    }

    /// `x` with `{2d, x, x + d, x + 2d} ⊆ I ∪ {a_M}` for alternatives (1)-(3).
    fn base(&self) -> Option<u64> {
        match self.tag {
            1 => Some(self.s - self.d),
            2 | 3 => Some(self.r - self.d),
            _ => None,
        }
    }
}

/// The incidence count behind `3|D| + 2(|I| - |D|) >= 3|J|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counting {
    pub i_size: usize,
    pub j_size: usize,
    pub d_size: usize,
    /// Largest number of triples any single value lies in.
    pub max_membership: usize,
}

impl Counting {
    pub fn inequality_holds(&self) -> bool {
        3 * self.d_size + 2 * (self.i_size - self.d_size) >= 3 * self.j_size
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartOneTrace {
    /// `M = 6n - 4`.
    pub m: usize,
    pub n: usize,
    pub i_values: Vec<u64>,
    pub j_values: Vec<u64>,
    pub representations: Vec<Representation>,
    pub d_values: Vec<u64>,
    pub alternatives: Vec<Alternative>,
    /// `(d, x)` with `S_d = {x, x + d}`.
    pub s_pairs: Vec<(u64, u64)>,
    pub counting: Counting,
    pub direct_witness: Option<Lemma1Witness>,
    pub collision: Option<(u64, u64)>,
    pub lemma2: Option<Lemma2Resolution>,
    pub witness: Lemma1Witness,
    pub k: u64,
}

impl Serialize for PartOneTrace {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("PartOneTrace", 8)?;
        st.serialize_field("M", &self.m)?;
        let t: Vec<[u64; 5]> = self
            .representations
            .iter()
            .map(|r| [r.t, r.x, r.y, r.w, r.z])
            .collect();
        st.serialize_field("T", &t)?;
        st.serialize_field("D", &self.d_values)?;
        let alt: Vec<[u64; 5]> = self
            .alternatives
            .iter()
            .map(|a| [a.d, a.tag as u64, a.r, a.s, a.t])
            .collect();
        st.serialize_field("alt", &alt)?;
        let s: Vec<[u64; 2]> = self.s_pairs.iter().map(|&(d, x)| [d, x]).collect();
        st.serialize_field("S", &s)?;
        st.serialize_field("collision", &self.collision.map(|(a, b)| [a, b]))?;
        st.serialize_field("lemma2_case", &self.lemma2.map(|l| l.case))?;
        let w = self.witness;
        st.serialize_field("witness", &[w.d, w.a, w.b, w.k])?;
        st.end()
    }
}

/// Canonical nested representation: least `x`, then least `y`.
fn representation(t: u64, members: &IntSet, values: &[u64]) -> Option<Representation> {
    for (i, &x) in values.iter().enumerate() {
        if 2 * x >= t {
            break;
        }
        let z = t - x;
        if !members.contains(z) {
            continue;
        }
        for &y in &values[i + 1..] {
            let w = t - y;
            if y > w {
                break;
            }
            if members.contains(w) {
                return Some(Representation { t, x, y, w, z });
            }
        }
    }
    None
}

fn violation(msg: String) -> Error {
    Error::ConditionViolation(msg)
}

/// Runs the construction on the first `6n - 4` terms.
pub fn part_one(prefix: &SequencePrefix) -> Result<PartOneTrace> {
    let report = check_conditions(prefix);
    if !report.passed {
        return Err(Error::ConditionsFailed(Box::new(report)));
    }
    let n = prefix.n();
    let m = SequencePrefix::required_len(n);
    let terms = &prefix.terms()[..m];
    let a_n = prefix.a_n();
    let top = terms[m - 1];
    let i_values = terms[..m - 1].to_vec();
    let j_values = terms[n..].to_vec();
    // I ∪ {a_M}: the first M terms
    let ambient = IntSet::from_elements(terms.to_vec())?;
    let i_set = IntSet::new(i_values.clone(), top)?;

    let mut representations = Vec::with_capacity(j_values.len());
    for &t in &j_values {
        let rep = representation(t, &i_set, &i_values).ok_or_else(|| {
            violation(format!(
                "{t} has no nested representation x < y <= w < z in I"
            ))
        })?;
        representations.push(rep);
    }

    // value -> members t of J whose triple contains it, ascending
    let mut holders: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
    for rep in &representations {
        for v in rep.triple() {
            holders.entry(v).or_default().push(rep.t);
        }
    }
    let d_values: Vec<u64> = holders
        .iter()
        .filter(|(_, ts)| ts.len() >= 3)
        .map(|(&d, _)| d)
        .collect();
    let counting = Counting {
        i_size: i_values.len(),
        j_size: j_values.len(),
        d_size: d_values.len(),
        max_membership: holders.values().map(Vec::len).max().unwrap_or(0),
    };

    let mut trace = PartOneTrace {
        m,
        n,
        i_values,
        j_values,
        representations,
        d_values: d_values.clone(),
        alternatives: Vec::new(),
        s_pairs: Vec::new(),
        counting,
        direct_witness: None,
        collision: None,
        lemma2: None,
        witness: Lemma1Witness::new(0, 0, 0),
        k: 0,
    };

    for &d in &d_values {
        let ts = &holders[&d];
        let alt = choose_triple(d, ts);
        trace.alternatives.push(alt);
        if let Some(w) = alt.direct_witness() {
            w.verify(&ambient, a_n)
                .map_err(|e| violation(format!("alternative ({}) for d = {d}: {e}", alt.tag)))?;
            trace.direct_witness = Some(w);
            trace.witness = w;
            trace.k = w.k;
            return Ok(trace);
        }
        if alt.tag == 0 {
            return Err(violation(format!(
                "none of the six alternatives holds for d = {d} with ({}, {}, {})",
                alt.r, alt.s, alt.t
            )));
        }
    }

    // Every d now has 2d among its triple holders.
    if let Some((&d, ts)) = holders.iter().find(|(_, ts)| ts.len() >= 4) {
        return Err(violation(format!(
            "{d} lies in {} triples without yielding a direct witness",
            ts.len()
        )));
    }
    let need = 3 * n - 2;
    if counting.d_size < need || !counting.inequality_holds() {
        return Err(violation(format!(
            "|D| = {} but the incidence count requires at least {need}",
            counting.d_size
        )));
    }

    for alt in &trace.alternatives {
        let d = alt.d;
        let x = alt.base().expect("alternatives (1)-(3) only");
        let quad = [2 * d, x, x + d, x + 2 * d];
        if x == d || quad.iter().any(|&v| !ambient.contains(v)) || x + d >= top {
            return Err(violation(format!(
                "alternative ({}) for d = {d} does not give {{2d, x, x+d, x+2d}} in I ∪ {{a_M}} with x = {x}",
                alt.tag
            )));
        }
        trace.s_pairs.push((d, x));
    }

    let collision = first_collision(&trace.s_pairs).ok_or_else(|| {
        violation(format!(
            "no two of the {} pairs S_d meet although 2|D| > |I|",
            trace.s_pairs.len()
        ))
    })?;
    let ((d1, x1), (d2, x2)) = collision;
    for d in [d1, d2] {
        if !trace.j_values.contains(&(2 * d)) {
            return Err(violation(format!("2d = {} is not in J", 2 * d)));
        }
    }
    trace.collision = Some((d1, d2));

    let resolution = lemma2_resolve(&Lemma2Input::new(d1, d2, x1, x2), &ambient, a_n)?;
    trace.witness = resolution.witness;
    trace.k = resolution.witness.k;
    trace.lemma2 = Some(resolution);
    Ok(trace)
}

/// The three smallest holders, unless some other triple of holders gives a
/// direct alternative.
fn choose_triple(d: u64, ts: &[u64]) -> Alternative {
    let first = Alternative::classify(d, ts[0], ts[1], ts[2]);
    if first.is_direct() || ts.len() == 3 {
        return first;
    }
    for i in 0..ts.len() {
        for j in i + 1..ts.len() {
            for k in j + 1..ts.len() {
                let alt = Alternative::classify(d, ts[i], ts[j], ts[k]);
                if alt.is_direct() {
                    return alt;
                }
            }
        }
    }
    first
}

/// First `(d1, d2)`, `d1 < d2`, whose pairs `{x, x + d}` intersect.
fn first_collision(pairs: &[(u64, u64)]) -> Option<((u64, u64), (u64, u64))> {
    for (i, &(d1, x1)) in pairs.iter().enumerate() {
        for &(d2, x2) in &pairs[i + 1..] {
            let p = [x1, x1 + d1];
            if p.contains(&x2) || p.contains(&(x2 + d2)) {
                return Some(((d1, x1), (d2, x2)));
            }
        }
    }
    None
}
