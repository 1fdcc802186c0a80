//! Exact-arithmetic analysis of multistationarity in mass-action chemical
//! reaction networks.
//!
//! The crate decides whether a network admits multiple positive steady
//! states (MSS) by combining the Deficiency Zero and Deficiency One
//! Theorems, the Deficiency One Algorithm, a closed-form criterion for
//! fully open networks with a single non-flow reaction, and detection of
//! embedded one-reaction atoms of multistationarity. All structural
//! computation is carried out over arbitrary-precision rationals; numeric
//! steady-state witnesses are produced separately with stated tolerances.

pub mod classify;
pub mod defone;
pub mod dynamics;
pub mod feasibility;
pub mod linalg;
pub mod model;
pub mod parser;
pub mod poly;
pub mod report;
pub mod structure;
pub mod sweep;

pub use model::{Complex, Network, Reaction};

use num::BigRational;

/// Renders a rational as `p` or `p/q`, the form used in all serialized output.
pub fn rational_string(r: &BigRational) -> String {
    if r.denom() == &num::BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
