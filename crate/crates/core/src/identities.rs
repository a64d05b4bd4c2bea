//! Numerical verification of the identities behind the partial-wave
//! reduction: the corrected angular orthogonality constant (2 pi, not the
//! doubled 4 pi), the angular-to-Legendre conversion, the Hankel-transform
//! closed form, and full single-channel reconstruction of the 2D form.
//!
//! Angular integrals of smooth periodic integrands use the midpoint rule,
//! which converges geometrically with rate acosh of the singularity
//! parameter; node counts are sized from that rate.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::kernel::{channel_kernel_raw, energy_raw, normalization_raw, Channel};
use crate::quadrature::{integrate_adaptive, integrate_adaptive_split};
use crate::specfun::{bessel_j, gamma, legendre_p, legendre_q_half, HalfIntegerDegree};
use crate::{Error, Result};

/// Result of one numerically verified identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub name: String,
    pub parameters: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub rel_error: f64,
    pub pass: bool,
}

impl IdentityReport {
    pub(crate) fn new(name: impl Into<String>, lhs: f64, rhs: f64, tol: f64, absolute: bool) -> Self {
        let rel_error = if absolute {
            (lhs - rhs).abs()
        } else {
            (lhs - rhs).abs() / rhs.abs().max(1e-300)
        };
        let mut parameters = BTreeMap::new();
        parameters.insert("tol".into(), tol);
        Self {
            name: name.into(),
            parameters,
            lhs,
            rhs,
            rel_error,
            pass: rel_error <= tol,
        }
    }

    pub(crate) fn with(mut self, key: &str, value: f64) -> Self {
        self.parameters.insert(key.into(), value);
        self
    }

    /// Re-judge the report after scaling its declared tolerance (the
    /// `--strict-tol` pass-through; sign/structure checks are unaffected).
    pub fn rescaled(mut self, tol_scale: f64) -> Self {
        if let Some(&tol) = self.parameters.get("tol") {
            let scaled = tol * tol_scale;
            self.parameters.insert("tol".into(), scaled);
            self.pass = self.rel_error <= scaled;
        }
        self
    }
}

/// Midpoint node count for periodic integrands whose nearest complex
/// singularity sits at imaginary angle acosh(t).
fn midpoint_nodes_for(t: f64) -> usize {
    let rate = t.max(1.0 + 1e-14).acosh();
    ((40.0 / rate).ceil() as usize).clamp(64, 1 << 16)
}

fn midpoint_sum<F: Fn(f64) -> f64>(f: F, n: usize) -> f64 {
    let h = 2.0 * PI / n as f64;
    (0..n).map(|j| f((j as f64 + 0.5) * h)).sum::<f64>() * h
}

/// Angular orthogonality with the corrected constant:
///   int int e^{il t} e^{-il' t'} / sqrt(1 - q cos(t - t')) dt dt'
///     = 2 pi delta_{ll'} int cos(l t) / sqrt(1 - q cos t) dt.
/// The report carries `ratio_vs_doubled` = lhs / (4 pi (1D integral)), which
/// exhibits the factor-2 discrepancy of the doubled constant (0.5 on the
/// diagonal l = l').
pub fn angular_orthogonality(q: f64, l: i32, l_prime: i32) -> Result<IdentityReport> {
    if q <= 0.0 || q >= 1.0 || q.is_nan() {
        return Err(Error::Domain(format!("need 0 < q < 1, got {q}")));
    }
    let n = midpoint_nodes_for(1.0 / q);
    let h = 2.0 * PI / n as f64;
    // real part of the tensor midpoint sum
    let mut lhs = 0.0;
    for i in 0..n {
        let t = (i as f64 + 0.5) * h;
        for j in 0..n {
            let tp = (j as f64 + 0.5) * h;
            let w = 1.0 / (1.0 - q * (t - tp).cos()).sqrt();
            lhs += (l as f64 * t - l_prime as f64 * tp).cos() * w;
        }
    }
    lhs *= h * h;
    let one_d = midpoint_sum(|t| (l as f64 * t).cos() / (1.0 - q * t.cos()).sqrt(), n);
    let rhs = if l == l_prime { 2.0 * PI * one_d } else { 0.0 };
    let (tol, absolute) = if l == l_prime { (1e-8, false) } else { (1e-9, true) };
    let mut rep = IdentityReport::new(
        format!("angular-orthogonality q={q} l={l} l'={l_prime}"),
        lhs,
        rhs,
        tol,
        absolute,
    )
    .with("q", q)
    .with("l", l as f64)
    .with("l_prime", l_prime as f64);
    if l == l_prime {
        rep = rep.with("ratio_vs_doubled", lhs / (4.0 * PI * one_d));
    }
    Ok(rep)
}

/// int_0^{2 pi} sin(l t) / sqrt(1 - q cos t) dt = 0.
pub fn sine_vanishing(q: f64, l: i32) -> Result<IdentityReport> {
    if q <= 0.0 || q >= 1.0 || q.is_nan() {
        return Err(Error::Domain(format!("need 0 < q < 1, got {q}")));
    }
    let n = midpoint_nodes_for(1.0 / q);
    let lhs = midpoint_sum(|t| (l as f64 * t).sin() / (1.0 - q * t.cos()).sqrt(), n);
    Ok(IdentityReport::new(format!("sine-vanishing q={q} l={l}"), lhs, 0.0, 1e-10, true)
        .with("q", q)
        .with("l", l as f64))
}

/// Angular quadrature of int_0^{2 pi} cos(k phi) (p^2 + p'^2
/// - 2 p p' cos phi)^{-1/2} d phi against (2/sqrt(p p')) Q_{k-1/2}(t).
pub fn angular_to_legendre(k: u32, p: f64, p_prime: f64) -> Result<IdentityReport> {
    if p <= 0.0 || p_prime <= 0.0 || p == p_prime || p.is_nan() || p_prime.is_nan() {
        return Err(Error::Domain(format!(
            "need positive p != p', got ({p}, {p_prime})"
        )));
    }
    let t = 0.5 * (p / p_prime + p_prime / p);
    let n = midpoint_nodes_for(t);
    let lhs = midpoint_sum(
        |phi| {
            let half = (0.5 * phi).sin();
            let d2 = (p - p_prime) * (p - p_prime) + 4.0 * p * p_prime * half * half;
            (k as f64 * phi).cos() / d2.sqrt()
        },
        n,
    );
    let rhs = 2.0 / (p * p_prime).sqrt() * legendre_q_half(k, t)?;
    Ok(
        IdentityReport::new(format!("angular-to-legendre k={k} p={p} p'={p_prime}"), lhs, rhs, 1e-8, false)
            .with("k", k as f64)
            .with("p", p)
            .with("p_prime", p_prime),
    )
}

/// Hankel-transform identity: the radial transform of r^a e^{-r} equals
/// (p^2+1)^{-(a+2)/2} Gamma(k+a+2) P^{-k}_{a+1}((p^2+1)^{-1/2}).
/// The oscillatory integral is summed interval-by-interval between
/// consecutive Bessel zeros, with Aitken extrapolation of the partial sums
/// as a cross-estimate; disagreement beyond the tolerance is an explicit
/// error, not a silent value.
pub fn hankel_identity(k: u32, a: f64, p: f64) -> Result<IdentityReport> {
    if a != -0.5 && a != -1.5 {
        return Err(Error::Domain(format!("a must be -1/2 or -3/2, got {a}")));
    }
    if p <= 0.0 || p.is_nan() || k > 1 {
        return Err(Error::Domain(format!("need p > 0 and k <= 1, got p={p}, k={k}")));
    }
    let integrand = |r: f64| match bessel_j(k, p * r) {
        Ok(j) => j * r.powf(a + 1.0) * (-r).exp(),
        Err(_) => f64::NAN,
    };
    let r_cut: f64 = 70.0;
    // McMahon approximations to the zeros of J_k scaled by 1/p
    let mut cuts = Vec::new();
    let mut s = 1u32;
    loop {
        let beta = (s as f64 + k as f64 / 2.0 - 0.25) * PI;
        let zero = (beta - (4.0 * (k as f64).powi(2) - 1.0) / (8.0 * beta)) / p;
        if zero >= r_cut {
            break;
        }
        cuts.push(zero);
        s += 1;
    }
    let mut partial_sums = Vec::with_capacity(cuts.len() + 1);
    let mut acc = 0.0;
    let mut lo = 0.0;
    for &hi in cuts.iter().chain(std::iter::once(&r_cut)) {
        acc += integrate_adaptive(integrand, lo, hi, 1e-11)?.value;
        partial_sums.push(acc);
        lo = hi;
    }
    let plain = *partial_sums.last().expect("at least one interval");
    // Aitken delta-squared on the tail of the partial sums
    let lhs = if partial_sums.len() >= 3 {
        let m = partial_sums.len();
        let (s0, s1, s2) = (partial_sums[m - 3], partial_sums[m - 2], partial_sums[m - 1]);
        let denom = s2 - 2.0 * s1 + s0;
        let accelerated = if denom.abs() > 1e-300 {
            s2 - (s2 - s1) * (s2 - s1) / denom
        } else {
            s2
        };
        if (accelerated - plain).abs() > 1e-5 * plain.abs().max(1e-3) {
            return Err(Error::Quadrature(format!(
                "oscillatory Hankel sum converging too slowly at k={k}, a={a}, p={p}: \
                 plain {plain:.6e} vs accelerated {accelerated:.6e}"
            )));
        }
        plain
    } else {
        plain
    };
    let x = 1.0 / (p * p + 1.0).sqrt();
    let rhs = (p * p + 1.0).powf(-(a + 2.0) / 2.0)
        * gamma(k as f64 + a + 2.0)?
        * legendre_p(-(k as i32), HalfIntegerDegree::new((2.0 * a) as i64 + 2), x)?;
    Ok(IdentityReport::new(format!("hankel k={k} a={a} p={p}"), lhs, rhs, 1e-5, false)
        .with("k", k as f64)
        .with("a", a)
        .with("p", p))
}

/// Smooth bump supported on [lo, hi].
pub fn bump_profile(lo: f64, hi: f64) -> impl Fn(f64) -> f64 + Copy {
    move |r: f64| {
        let z = (2.0 * r - (lo + hi)) / (hi - lo);
        if z.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - z * z)).exp()
        }
    }
}

/// Angular factor of the 2D form for one (r, r') pair:
/// int_0^{2 pi} [ (E+1)(E'+1) cos(k phi) + r r' cos((k+1) phi) ]
///              (r^2 + r'^2 - 2 r r' cos phi)^{-1/2} d phi
/// by adaptive quadrature on the half period (no Legendre functions touch
/// this path).
fn angular_factor(k: i32, r: f64, rp: f64) -> f64 {
    let m0 = k.unsigned_abs() as f64;
    let m1 = (k + 1).unsigned_abs() as f64;
    let coef0 = (energy_raw(r) + 1.0) * (energy_raw(rp) + 1.0);
    let coef1 = r * rp;
    integrate_adaptive_split(
        |phi: f64| {
            // (r - r')^2 + 4 r r' sin^2(phi/2): cancellation-free near the
            // coincidence point
            let half = (0.5 * phi).sin();
            let d2 = (r - rp) * (r - rp) + 4.0 * r * rp * half * half;
            (coef0 * (m0 * phi).cos() + coef1 * (m1 * phi).cos()) / d2.sqrt()
        },
        0.0,
        PI,
        &[],
        1e-7,
    )
    .map(|v| 2.0 * v.value)
    .unwrap_or(f64::NAN)
}

/// Full partial-wave reconstruction for a single-channel trial state
/// u(r e^{i theta}) = (2 pi)^{-1/2} r^{-1/2} a(r) e^{ik theta}:
/// the 2D form (radial x angular quadrature of the full kernel) against the
/// 1D channel form.  `ratio_vs_doubled` reports the counterfactual
/// uncorrected/corrected potential-term ratio, which sits at 2 when the
/// channel kernels carry the corrected constant.
pub fn partial_wave_reconstruction<F: Fn(f64) -> f64 + Copy>(
    ch: Channel,
    profile: F,
    support: (f64, f64),
    delta: f64,
) -> Result<IdentityReport> {
    let (lo, hi) = support;
    if lo <= 0.0 || lo >= hi || lo.is_nan() {
        return Err(Error::Domain(format!("bad support ({lo}, {hi})")));
    }
    let k = ch.index();

    // kinetic term, common to both routes
    let kinetic = integrate_adaptive(
        |r: f64| energy_raw(r) * profile(r) * profile(r),
        lo,
        hi,
        1e-11,
    )?
    .value;

    // channel route: (delta/pi) int int a a' K_k
    let pot_channel = if delta == 0.0 {
        0.0
    } else {
        let inner = |r: f64| {
            integrate_adaptive_split(
                |rp: f64| profile(rp) * channel_kernel_raw(k, r, rp),
                lo,
                hi,
                &[r],
                1e-9,
            )
            .map(|v| v.value * profile(r))
            .unwrap_or(f64::NAN)
        };
        delta / PI * integrate_adaptive(inner, lo, hi, 1e-8)?.value
    };
    let rhs = kinetic - pot_channel;

    // 2D route: (delta/2pi) int int sqrt(r r') a a'/(N N')
    //           [(E+1)(E'+1) C_k + r r' C_{k+1}]
    let pot_full = if delta == 0.0 {
        0.0
    } else {
        let inner = |r: f64| {
            let nr = normalization_raw(r);
            integrate_adaptive_split(
                |rp: f64| {
                    let nrp = normalization_raw(rp);
                    profile(rp) * (r * rp).sqrt() / (nr * nrp) * angular_factor(k, r, rp)
                },
                lo,
                hi,
                &[r],
                1e-5,
            )
            .map(|v| v.value * profile(r))
            .unwrap_or(f64::NAN)
        };
        delta / (2.0 * PI) * integrate_adaptive(inner, lo, hi, 3e-5)?.value
    };
    let lhs = kinetic - pot_full;

    let tol = if delta == 0.0 { 1e-6 } else { 1e-3 };
    let mut rep = IdentityReport::new(
        format!("partial-wave reconstruction k={k} delta={delta}"),
        lhs,
        rhs,
        tol,
        false,
    )
    .with("k", k as f64)
    .with("delta", delta)
    .with("support_lo", lo)
    .with("support_hi", hi);
    if delta > 0.0 {
        rep = rep
            .with("potential_2d", pot_full)
            .with("potential_channel", pot_channel)
            .with("ratio_vs_doubled", 2.0 * pot_channel / pot_full);
    }
    Ok(rep)
}

/// The default identity suite in a deterministic order.
pub fn identity_suite() -> Result<Vec<IdentityReport>> {
    let mut reports = Vec::new();
    for &q in &[0.3, 0.6, 0.9] {
        for l in 0..=2 {
            for lp in 0..=2 {
                reports.push(angular_orthogonality(q, l, lp)?);
            }
        }
    }
    for &(q, l) in &[(0.3, 1), (0.99, 5), (0.5, 0)] {
        reports.push(sine_vanishing(q, l)?);
    }
    for &(k, p, pp) in &[(0u32, 1.0, 2.0), (3, 0.5, 0.7), (1, 2.0, 0.3)] {
        reports.push(angular_to_legendre(k, p, pp)?);
    }
    for &(k, a) in &[(0u32, -0.5), (1, -0.5), (0, -1.5), (1, -1.5)] {
        for &p in &[0.3, 1.0] {
            reports.push(hankel_identity(k, a, p)?);
        }
    }
    let dc = crate::certificate::critical_coupling().delta_c;
    let profile = bump_profile(1.0, 2.0);
    reports.push(partial_wave_reconstruction(Channel::new(0), profile, (1.0, 2.0), dc)?);
    reports.push(partial_wave_reconstruction(Channel::new(2), profile, (1.0, 2.0), 0.2)?);
    reports.push(partial_wave_reconstruction(Channel::new(0), profile, (1.0, 2.0), 0.0)?);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ellipk;

    #[test]
    fn orthogonality_off_diagonal_vanishes() {
        let rep = angular_orthogonality(0.5, 2, 3).unwrap();
        assert!(rep.pass, "lhs = {:e}", rep.lhs);
        assert!(rep.lhs.abs() <= 1e-9);
    }

    #[test]
    fn orthogonality_diagonal_and_counterfactual() {
        let rep = angular_orthogonality(0.5, 1, 1).unwrap();
        assert!(rep.pass, "rel = {:e}", rep.rel_error);
        let ratio = rep.parameters["ratio_vs_doubled"];
        assert!((ratio - 0.5).abs() <= 1e-8, "ratio = {ratio}");
    }

    #[test]
    fn orthogonality_elliptic_oracle() {
        // l = l' = 0 at q = 0.9: the 1D integral is 4/sqrt(1+q) K(2q/(1+q))
        let rep = angular_orthogonality(0.9, 0, 0).unwrap();
        let want = 2.0 * PI * 4.0 / 1.9f64.sqrt() * ellipk(1.8 / 1.9);
        assert!((rep.lhs - want).abs() <= 1e-7 * want, "{} vs {want}", rep.lhs);
    }

    #[test]
    fn sine_integrals_vanish() {
        for &(q, l) in &[(0.3, 1), (0.99, 5), (0.5, 0)] {
            let rep = sine_vanishing(q, l).unwrap();
            assert!(rep.pass, "q={q}, l={l}: {:e}", rep.lhs);
        }
    }

    #[test]
    fn angular_to_legendre_cases() {
        for &(k, p, pp) in &[(0u32, 1.0, 2.0), (3, 0.5, 0.7)] {
            let rep = angular_to_legendre(k, p, pp).unwrap();
            assert!(rep.pass, "k={k}: rel {:e}", rep.rel_error);
        }
        // mpmath value of the k=0, (1,2) case
        let rep = angular_to_legendre(0, 1.0, 2.0).unwrap();
        assert!((rep.lhs - 3.371_500_709_625_192).abs() < 1e-9);
    }

    #[test]
    fn angular_to_legendre_scale_invariance() {
        let base = angular_to_legendre(2, 0.8, 1.7).unwrap();
        let scaled = angular_to_legendre(2, 8.0, 17.0).unwrap();
        assert!((scaled.lhs * 10.0 - base.lhs).abs() <= 1e-9 * base.lhs.abs());
        assert!((scaled.rhs * 10.0 - base.rhs).abs() <= 1e-12 * base.rhs.abs());
    }

    #[test]
    fn hankel_identity_cases() {
        // mpmath lhs values
        let refs = [
            (0u32, -0.5, 1.0, 0.466_174_429_154_237_1),
            (1, -0.5, 0.3, 0.181_441_640_101_582_48),
            (0, -1.5, 1.0, 1.550_028_362_371_546_3),
            (1, -1.5, 2.0, 0.380_475_928_677_611_78),
        ];
        for (k, a, p, want) in refs {
            let rep = hankel_identity(k, a, p).unwrap();
            assert!(rep.pass, "k={k}, a={a}, p={p}: rel {:e}", rep.rel_error);
            assert!(
                (rep.lhs - want).abs() <= 1e-7 * want,
                "lhs {} vs mpmath {want}",
                rep.lhs
            );
        }
    }

    #[test]
    fn hankel_small_p_limit() {
        // p -> 0, k = 0, a = -1/2: both sides approach Gamma(3/2)
        let rep = hankel_identity(0, -0.5, 1e-6).unwrap();
        let g32 = gamma(1.5).unwrap();
        assert!((rep.lhs - g32).abs() < 1e-5);
        assert!((rep.rhs - g32).abs() < 1e-5);
    }

    #[test]
    fn reconstruction_kinetic_only() {
        let profile = bump_profile(1.0, 2.0);
        let rep =
            partial_wave_reconstruction(Channel::new(0), profile, (1.0, 2.0), 0.0).unwrap();
        assert!(rep.pass, "rel {:e}", rep.rel_error);
        assert!(rep.rel_error <= 1e-6);
    }

    #[test]
    fn reconstruction_with_coupling() {
        let profile = bump_profile(1.0, 2.0);
        let dc = crate::certificate::critical_coupling().delta_c;
        for (k, delta) in [(0, dc), (2, 0.2)] {
            let rep =
                partial_wave_reconstruction(Channel::new(k), profile, (1.0, 2.0), delta).unwrap();
            assert!(rep.pass, "k={k}: rel {:e}", rep.rel_error);
            let ratio = rep.parameters["ratio_vs_doubled"];
            assert!(
                (ratio - 2.0).abs() <= 1e-3 * 2.0,
                "counterfactual ratio {ratio} at k={k}"
            );
        }
    }

    #[test]
    fn report_serializes() {
        let rep = angular_orthogonality(0.3, 0, 1).unwrap();
        let json = serde_json::to_value(&rep).unwrap();
        for key in ["name", "parameters", "lhs", "rhs", "rel_error", "pass"] {
            assert!(json.get(key).is_some(), "missing {key}");
        }
    }
}
