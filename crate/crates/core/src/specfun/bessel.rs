//! Bessel functions of the first kind of integer order.
//!
//! Small arguments use the ascending series; larger arguments use the
//! midpoint rule on J_k(x) = (1/pi) int_0^pi cos(k t - x sin t) dt, which is
//! exponentially accurate for this periodic integrand once the node count
//! outruns the aliasing order.

use std::f64::consts::PI;

use crate::{Error, Result};

const SERIES_CUTOFF: f64 = 9.0;
const MAX_ORDER: u32 = 50;

pub fn bessel_j(k: u32, x: f64) -> Result<f64> {
    if x < 0.0 || !x.is_finite() {
        return Err(Error::Domain(format!("bessel_j requires x >= 0, got {x}")));
    }
    if k > MAX_ORDER {
        return Err(Error::Domain(format!("bessel_j supports k <= {MAX_ORDER}, got {k}")));
    }
    if x <= SERIES_CUTOFF {
        return Ok(series(k, x));
    }
    Ok(angular_sum(k, x))
}

fn series(k: u32, x: f64) -> f64 {
    let half = 0.5 * x;
    // (x/2)^k / k!
    let mut term = 1.0;
    for j in 1..=k {
        term *= half / j as f64;
    }
    let q = half * half;
    let mut sum = term;
    for m in 1..200u32 {
        term *= -q / (m as f64 * (k as f64 + m as f64));
        sum += term;
        if term.abs() <= f64::EPSILON * sum.abs() {
            break;
        }
    }
    sum
}

fn angular_sum(k: u32, x: f64) -> f64 {
    let n = (0.9 * x + 30.0 + 0.5 * k as f64).ceil() as usize;
    let kf = k as f64;
    let mut sum = 0.0;
    for j in 0..n {
        let theta = (j as f64 + 0.5) * PI / n as f64;
        sum += (kf * theta - x * theta.sin()).cos();
    }
    sum / n as f64
}
