//! Special functions backing the kernel and certificate modules: Gamma,
//! digamma, Pochhammer, the Gauss hypergeometric series, associated Legendre
//! functions of the first kind on (0, 1], Legendre functions of the second
//! kind of half-integer degree on (1, inf), Bessel J of integer order, and
//! AGM complete elliptic integrals (kept as an internal cross-check oracle).
//!
//! Everything is a pure function of its arguments; the module holds no state.

mod bessel;
mod elliptic;
pub(crate) mod gamma;
mod hyp2f1;
mod legendre;

pub use bessel::bessel_j;
pub use elliptic::{ellipe, ellipk};
pub use gamma::{digamma, gamma, ln_gamma, pochhammer};
pub use hyp2f1::{hyp2f1, hyp2f1_with_tail_bound, Hyp2F1Params};
pub use legendre::{
    legendre_p, legendre_q_half, legendre_q_half_em1, legendre_q_half_sequence, q_half_ladder,
    HalfIntegerDegree,
};
