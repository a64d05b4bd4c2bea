//! Gauss hypergeometric series 2F1(a, b; c; x) on the restricted argument
//! range |x| <= 1/2 used by the Legendre representations.

use crate::{Error, Result};

/// Parameter block for a 2F1 evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp2F1Params {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub x: f64,
}

impl Hyp2F1Params {
    pub fn new(a: f64, b: f64, c: f64, x: f64) -> Result<Self> {
        if !x.is_finite() || x.abs() > 0.5 {
            return Err(Error::Domain(format!(
                "2F1 series is implemented only for |x| <= 1/2, got x = {x}"
            )));
        }
        if c <= 0.0 && (c - c.round()).abs() < 1e-12 {
            return Err(Error::Domain(format!(
                "2F1 parameter pole: c = {c} is a nonpositive integer"
            )));
        }
        Ok(Self { a, b, c, x })
    }
}

const MAX_TERMS: usize = 600;

/// 2F1 partial sum together with a certified bound on the truncated tail.
///
/// Terms follow t_{k+1} = t_k (a+k)(b+k) x / ((c+k)(k+1)).  Once k is past
/// 10 max(|a|,|b|,|c|,1), every later term ratio is bounded by
/// rho = |x| (1+|a|/k)(1+|b|/k)/(1-|c|/k) < 1, so the tail is dominated by
/// the geometric series |t_k| rho/(1-rho).
pub fn hyp2f1_with_tail_bound(params: Hyp2F1Params) -> Result<(f64, f64)> {
    let Hyp2F1Params { a, b, c, x } = params;
    if x == 0.0 {
        return Ok((1.0, 0.0));
    }
    let scale = a.abs().max(b.abs()).max(c.abs()).max(1.0);
    let k_safe = (10.0 * scale).ceil();

    let mut sum = 1.0f64;
    let mut term = 1.0f64;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * x;
        sum += term;
        if term == 0.0 {
            // terminating (polynomial) case
            return Ok((sum, 0.0));
        }
        let j = kf + 1.0;
        if j >= k_safe {
            let m = (1.0 + a.abs() / j) * (1.0 + b.abs() / j) / (1.0 - c.abs() / j);
            let rho = x.abs() * m;
            debug_assert!(rho < 1.0);
            let tail = term.abs() * rho / (1.0 - rho);
            if tail <= 1e-15 * sum.abs() {
                return Ok((sum, tail));
            }
        }
    }
    Err(Error::Quadrature(format!(
        "2F1 series did not reach the tail target in {MAX_TERMS} terms (a={a}, b={b}, c={c}, x={x})"
    )))
}

/// 2F1(a, b; c; x) for |x| <= 1/2.
pub fn hyp2f1(params: Hyp2F1Params) -> Result<f64> {
    hyp2f1_with_tail_bound(params).map(|(v, _)| v)
}
