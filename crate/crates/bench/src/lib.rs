//! Fixtures shared by the benchmarks.

use welded_core::families::{hat_beta, tilde_beta, tilde_tau};
use welded_core::{CycRat, Laurent, Representation, Scalar};

pub fn symbolic_tilde_beta(n: usize) -> Representation<Laurent> {
    tilde_beta(n, &Laurent::var("t")).expect("valid strand count")
}

pub fn exact_hat_beta(n: usize, t: i64) -> Representation<CycRat> {
    hat_beta(n, &CycRat::from_i64(t)).expect("valid strand count")
}

pub fn exact_tilde_tau(n: usize, t: i64, q: i64) -> Representation<CycRat> {
    tilde_tau(n, &CycRat::from_i64(t), &CycRat::from_i64(q)).expect("valid strand count")
}
