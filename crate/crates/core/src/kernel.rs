//! Reduced kernels: relativistic energy e(p), normalization n(p), the angular
//! weights beta1/beta2, the full 2D kernel K(p, p'), and the partial-wave
//! channel kernels K_k(r, r').

use num_complex::Complex64;
use serde::Serialize;

use crate::specfun::q_half_ladder;
use crate::{Error, Result};

/// Radial momentum, natural units.  Strictly positive: the channel kernels
/// are singular at p = 0 and on the diagonal p = p'.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Momentum(f64);

impl Momentum {
    pub fn new(p: f64) -> Result<Self> {
        if p > 0.0 && p.is_finite() {
            Ok(Self(p))
        } else {
            Err(Error::Domain(format!("momentum must be positive and finite, got {p}")))
        }
    }
    pub fn get(self) -> f64 {
        self.0
    }
}

/// Angular-momentum channel index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Channel(i32);

impl Channel {
    pub fn new(k: i32) -> Self {
        Self(k)
    }
    pub fn index(self) -> i32 {
        self.0
    }
}

/// Cartesian momentum in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momentum2D {
    pub p1: f64,
    pub p2: f64,
}

impl Momentum2D {
    pub fn new(p1: f64, p2: f64) -> Result<Self> {
        if p1.is_finite() && p2.is_finite() {
            Ok(Self { p1, p2 })
        } else {
            Err(Error::Domain("momentum components must be finite".into()))
        }
    }
    pub fn norm(self) -> f64 {
        self.p1.hypot(self.p2)
    }
}

/// e(p) = sqrt(p^2 + 1); defined for p >= 0 (bound evaluation uses p = 0).
pub fn energy_raw(p: f64) -> f64 {
    (p * p + 1.0).sqrt()
}

/// Relativistic energy of a radial momentum.
pub fn energy(p: Momentum) -> f64 {
    energy_raw(p.get())
}

/// n(p) = sqrt(2 e(p) (e(p) + 1)).
pub fn normalization_raw(p: f64) -> f64 {
    let e = energy_raw(p);
    (2.0 * e * (e + 1.0)).sqrt()
}

/// (beta1, beta2) via the closed forms
/// beta1 = (1/2) sqrt(1 + 1/e) sqrt(1 + 1/e'),
/// beta2 = (1/2) sqrt(1 - 1/e) sqrt(1 - 1/e').
///
/// 1 - 1/e is evaluated as p^2/(e(e+1)), exact from e^2 - 1 = p^2; the naive
/// difference loses every digit for p << 1.
pub(crate) fn beta_weights_raw(p: f64, q: f64) -> (f64, f64) {
    let e = energy_raw(p);
    let ep = energy_raw(q);
    let b1 = 0.5 * ((e + 1.0) / e).sqrt() * ((ep + 1.0) / ep).sqrt();
    let b2 = 0.5 * (p / (e * (e + 1.0)).sqrt()) * (q / (ep * (ep + 1.0)).sqrt());
    debug_assert!({
        // quotient forms (e+1)(e'+1)/(n n') and p q/(n n') agree to 1e-12
        let n = normalization_raw(p) * normalization_raw(q);
        ((e + 1.0) * (ep + 1.0) / n - b1).abs() <= 1e-12 * b1.max(1e-30)
            && (p * q / n - b2).abs() <= 1e-12 * b2.max(1e-300)
    });
    (b1, b2)
}

/// Angular weights of the channel kernels.
pub fn beta_weights(p: Momentum, q: Momentum) -> (f64, f64) {
    beta_weights_raw(p.get(), q.get())
}

/// Channel kernel without domain checks; NaN signals an evaluation failure.
/// The Legendre argument is computed as t = 1 + (p-q)^2/(2pq) so that the
/// near-diagonal offset survives in floating point.
pub(crate) fn channel_kernel_raw(k: i32, p: f64, q: f64) -> f64 {
    let d = p - q;
    let u = d * d / (2.0 * p * q);
    let (b1, b2) = beta_weights_raw(p, q);
    // k >= 0: Q_{k-1/2}, Q_{k+1/2}; k < 0: Q_{-k-1/2}, Q_{-k-3/2}
    let (top, lo, hi) = if k >= 0 {
        (k as u32 + 1, k as u32, k as u32 + 1)
    } else {
        ((-k) as u32, (-k) as u32, (-k - 1) as u32)
    };
    match q_half_ladder(top, u) {
        Ok(lq) => b1 * lq[lo as usize] + b2 * lq[hi as usize],
        Err(_) => f64::NAN,
    }
}

/// Partial-wave channel kernel K_k(p, q) for p != q.
pub fn channel_kernel(ch: Channel, p: Momentum, q: Momentum) -> Result<f64> {
    if p.get() == q.get() {
        return Err(Error::DiagonalKernel);
    }
    let v = channel_kernel_raw(ch.index(), p.get(), q.get());
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::Quadrature(format!(
            "channel kernel evaluation failed at k={}, p={}, q={}",
            ch.index(),
            p.get(),
            q.get()
        )))
    }
}

/// Full two-dimensional kernel
/// K(p, p') = ((E+1)(E'+1) + p conj(p')) / (N N' |p - p'|).
pub fn full_kernel(a: Momentum2D, b: Momentum2D) -> Result<Complex64> {
    let dist = (a.p1 - b.p1).hypot(a.p2 - b.p2);
    if dist == 0.0 {
        return Err(Error::DiagonalKernel);
    }
    let ea = energy_raw(a.norm());
    let eb = energy_raw(b.norm());
    let na = (2.0 * ea * (ea + 1.0)).sqrt();
    let nb = (2.0 * eb * (eb + 1.0)).sqrt();
    let cross = Complex64::new(a.p1, a.p2) * Complex64::new(b.p1, -b.p2);
    let num = Complex64::new((ea + 1.0) * (eb + 1.0), 0.0) + cross;
    Ok(num / (na * nb * dist))
}
