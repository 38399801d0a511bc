//! Exact arithmetic engine for finite-length modules over the pullback
//! `R = R1 ×_k R2` of two discrete valuation domains with common residue
//! field `k = F_p`, modelled as `k[x, y]/(xy)` localized at `(x, y)`.
//!
//! A finite-length module is a pair of commuting nilpotent matrices `X, Y`
//! (the actions of `p1 = x` and `p2 = y`) with `XY = YX = 0`. Everything in
//! this crate is computed exactly over `F_p`; the exhaustive oracles refuse
//! explicitly when a configured [`Budgets`] limit would be exceeded.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and report generation live in the `papm` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod budget;
pub mod claims;
pub mod decompose;
pub mod error;
pub mod field;
pub mod module;
pub mod oracle;
pub mod ring;
pub mod strings;
pub mod symbolic;

pub use budget::Budgets;
pub use error::Error;
pub use field::{Fp, Matrix, Subspace};
pub use module::FiniteModule;
pub use ring::{GeneralIdeal, RingElement, RingMode, RingSpec, SplitIdeal};

/// Outcome of a decidable predicate, with a counterexample when it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> Outcome<W> {
    pub fn holds() -> Self {
        Outcome { holds: true, witness: None }
    }

    pub fn fails(witness: W) -> Self {
        Outcome { holds: false, witness: Some(witness) }
    }
}
