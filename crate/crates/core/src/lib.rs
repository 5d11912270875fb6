//! Multisum sets of positive integers.
//!
//! A value `m` is a *multisum* of `S` when it has two different
//! representations `m = s + t = u + v` with summands from `S`; `S` is a
//! *multisum set* when it contains all of its multisums. This crate computes
//! representation profiles and the sum / multisum predicates on bounded
//! sets, closes seeds under multisums, certifies eventual linearity of the
//! result, runs the constructive argument that complete multisum sets are
//! eventually linear, and counts the related families over `{1..B}`.
//!
//! ```
//! use multisum::{IntSet, multisum_closure, detect_linear, Linearity};
//!
//! let seed = IntSet::from_elements(vec![2, 4, 6]).unwrap();
//! let closed = multisum_closure(&seed, 200).unwrap();
//! assert!(closed.saturated);
//! let Linearity::Certificate(cert) = detect_linear(&closed.result, 10).unwrap() else {
//!     panic!("evens are linear");
//! };
//! assert_eq!(cert.k, 2);
//! ```

mod bits;
pub mod census;
pub mod closure;
mod error;
pub mod format;
pub mod intset;
pub mod linearity;
pub mod schmerl;

pub use closure::{
    closure, multisum_closure, sum_closure, ClosureKind, ClosureOptions, ClosureResult,
    ClosureStats,
};
pub use error::{Error, Result};
pub use intset::{Classification, IntSet, SumProfile};
pub use linearity::{
    detect_linear, verify_certificate, Linearity, LinearityCertificate, LinearityRecord,
    DEFAULT_MIN_WINDOW,
};

/// Default largest bound any engine will allocate for.
pub const DEFAULT_B_MAX: u64 = 1 << 24;

/// Resource limits shared by the engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub b_max: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            b_max: DEFAULT_B_MAX,
        }
    }
}

impl Limits {
    pub fn check(&self, bound: u64) -> Result<()> {
        if bound > self.b_max {
            return Err(Error::ResourceCap {
                bound,
                cap: self.b_max,
            });
        }
        Ok(())
    }
}
