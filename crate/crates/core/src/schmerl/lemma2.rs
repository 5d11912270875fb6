use serde::Serialize;

use super::lemma1::Lemma1Witness;
use crate::error::{Error, Result};
use crate::intset::IntSet;

/// Two "doubling" differences whose pairs `{x, x+d1}` and `{y, y+d2}` meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Input {
    pub d1: u64,
    pub d2: u64,
    pub x: u64,
    pub y: u64,
}

impl Lemma2Input {
    pub fn new(d1: u64, d2: u64, x: u64, y: u64) -> Self {
        Lemma2Input { d1, d2, x, y }
    }

    /// Checks every hypothesis against `set`.
    pub fn validate(&self, set: &IntSet, a_n_value: u64) -> Result<()> {
        let Lemma2Input { d1, d2, x, y } = *self;
        if x == d1 || d1 == d2 || d2 == y {
            return Err(Error::Precondition(format!(
                "need x != d1 != d2 != y, got (d1, d2, x, y) = ({d1}, {d2}, {x}, {y})"
            )));
        }
        let needed = [
            d1,
            2 * d1,
            x,
            x + d1,
            x + 2 * d1,
            d2,
            2 * d2,
            y,
            y + d2,
            y + 2 * d2,
        ];
        if let Some(v) = needed.iter().find(|&&v| !set.contains(v)) {
            return Err(Error::Precondition(format!(
                "{v} is required but not in the set"
            )));
        }
        if ![x, x + d1].iter().any(|v| *v == y || *v == y + d2) {
            return Err(Error::Precondition(format!(
                "{{{x}, {}}} and {{{y}, {}}} are disjoint",
                x + d1,
                y + d2
            )));
        }
        if d1 + d2 <= a_n_value {
            return Err(Error::Precondition(format!(
                "d1 + d2 = {} does not exceed a_n = {a_n_value}",
                d1 + d2
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Lemma2Case {
    /// `x + d1 = y + d2`
    #[serde(rename = "i")]
    I,
    /// `x + d1 = y`
    #[serde(rename = "ii")]
    Ii,
    /// `x = y + d2`
    #[serde(rename = "iii")]
    Iii,
    /// `x = y`
    #[serde(rename = "iv")]
    Iv,
}

impl Lemma2Case {
    pub fn label(self) -> &'static str {
        match self {
            Lemma2Case::I => "i",
            Lemma2Case::Ii => "ii",
            Lemma2Case::Iii => "iii",
            Lemma2Case::Iv => "iv",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Lemma2Resolution {
    pub case: Lemma2Case,
    /// The `b = 2 d2` sub-branch of cases (ii) and (iv) was taken.
    pub doubled: bool,
    /// The input had `d1 > d2` and was swapped before case selection.
    pub swapped: bool,
    pub witness: Lemma1Witness,
}

/// Turns a meeting pair of doublings into a Lemma 1 witness.
pub fn lemma2_resolve(inp: &Lemma2Input, set: &IntSet, a_n_value: u64) -> Result<Lemma2Resolution> {
    inp.validate(set, a_n_value)?;
    let swapped = inp.d1 > inp.d2;
    let Lemma2Input { d1, d2, x, y } = if swapped {
        Lemma2Input::new(inp.d2, inp.d1, inp.y, inp.x)
    } else {
        *inp
    };

    let (case, d, b, doubled) = if x + d1 == y + d2 {
        (Lemma2Case::I, x + d1, d2, false)
    } else if x + d1 == y {
        let doubled = d2 == x + 2 * d1;
        (
            Lemma2Case::Ii,
            y,
            if doubled { 2 * d2 } else { d2 },
            doubled,
        )
    } else if x == y + d2 {
        (Lemma2Case::Iii, x, d2, false)
    } else if x == y {
        let doubled = d2 == d1 + x;
        (
            Lemma2Case::Iv,
            x,
            if doubled { 2 * d2 } else { d2 },
            doubled,
        )
    } else {
        unreachable!("validate rejects disjoint pairs")
    };

    let witness = Lemma1Witness::new(d, d1, b);
    witness.verify(set, a_n_value).map_err(|e| {
        Error::Witness(format!(
            "case ({}) resolution {witness:?}: {e}",
            case.label()
        ))
    })?;
    Ok(Lemma2Resolution {
        case,
        doubled,
        swapped,
        witness,
    })
}
