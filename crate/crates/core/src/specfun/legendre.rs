//! Associated Legendre P of half-integer degree on (0, 1] and Legendre Q of
//! half-integer degree on (1, inf).
//!
//! Q_{k-1/2}(t) is evaluated from the integral representation
//! Q_nu(t) = int_0^{t - sqrt(t^2-1)} x^nu (x^2 - 2tx + 1)^{-1/2} dx.
//! Substituting x = s sin^2(theta) with s = t - sqrt(t^2-1) removes the
//! inverse-square-root endpoint singularity and leaves
//!
//!   Q_{k-1/2}(t) = 2 s^{k+1/2} int_0^{pi/2} sin^{2k}(theta)
//!                  (1 - s^2 sin^2 theta)^{-1/2} d(theta).
//!
//! Degrees k >= 2 come from the three-term recurrence run upward only while
//! a guard holds: positivity, the moment ratio bounds (Q_{nu+1} <= s Q_nu,
//! ratios nondecreasing in nu), and a propagated contamination estimate.  A
//! failed guard falls back to direct quadrature of the representation.

use std::f64::consts::FRAC_PI_2;

use crate::quadrature::integrate_adaptive;
use crate::specfun::hyp2f1::{hyp2f1, Hyp2F1Params};
use crate::{Error, Result};

/// Degree nu = twice_nu / 2.  The artifact only ever needs nu = k - 1/2.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HalfIntegerDegree {
    twice_nu: i64,
}

impl HalfIntegerDegree {
    pub fn new(twice_nu: i64) -> Self {
        Self { twice_nu }
    }
    pub fn twice_nu(&self) -> i64 {
        self.twice_nu
    }
    pub fn nu(&self) -> f64 {
        self.twice_nu as f64 / 2.0
    }
    pub fn is_half_integer(&self) -> bool {
        self.twice_nu.rem_euclid(2) == 1
    }
}

/// Associated Legendre function of the first kind on the cut, via the
/// hypergeometric representation
/// P^mu_nu(x) = ((1+x)/(1-x))^{mu/2} F(-nu, nu+1; 1-mu; (1-x)/2) / Gamma(1-mu).
///
/// Only mu in {0, -1} and nu in {-1/2, 1/2} are accepted; that is the whole
/// surface the kernels and certificates use.
pub fn legendre_p(mu: i32, nu: HalfIntegerDegree, x: f64) -> Result<f64> {
    if mu != 0 && mu != -1 {
        return Err(Error::Domain(format!("legendre_p supports mu in {{0, -1}}, got {mu}")));
    }
    if nu.twice_nu != 1 && nu.twice_nu != -1 {
        return Err(Error::Domain(format!(
            "legendre_p supports nu = +-1/2, got twice_nu = {}",
            nu.twice_nu
        )));
    }
    if x <= 0.0 || x > 1.0 || x.is_nan() {
        return Err(Error::Domain(format!("legendre_p requires x in (0, 1], got {x}")));
    }
    if x == 1.0 {
        // F(..; 0) = 1 and the mu = -1 prefactor vanishes
        return Ok(if mu == 0 { 1.0 } else { 0.0 });
    }
    let v = nu.nu();
    let f = hyp2f1(Hyp2F1Params::new(-v, v + 1.0, 1.0 - mu as f64, (1.0 - x) / 2.0)?)?;
    let pre = match mu {
        0 => 1.0,
        // 1/Gamma(2) = 1
        _ => ((1.0 - x) / (1.0 + x)).sqrt(),
    };
    Ok(pre * f)
}

/// theta-integral of the transformed representation (smooth integrand).
///
/// The integrand is analytic with its nearest singularity at sin(theta) = 1/s,
/// so a fixed Gauss-Legendre rule sized by s converges geometrically; only
/// the boundary-layer regime s > 0.98 falls back to adaptive Gauss-Kronrod.
fn theta_integral(k: u32, s: f64) -> Result<f64> {
    let s2 = s * s;
    let integrand = move |th: f64| {
        let sn = th.sin();
        let sin2k = (sn * sn).powi(k as i32);
        sin2k / (1.0 - s2 * sn * sn).sqrt()
    };
    let n = match s {
        _ if s <= 0.6 => 24,
        _ if s <= 0.9 => 48,
        _ if s <= 0.98 => 96,
        _ => 0,
    };
    if n > 0 {
        let (nodes, weights) = cached_gauss(n);
        let half = FRAC_PI_2 / 2.0;
        let mut acc = 0.0;
        for (&x, &w) in nodes.iter().zip(weights) {
            acc += w * integrand(half * (1.0 + x));
        }
        return Ok(acc * half);
    }
    let r = integrate_adaptive(integrand, 0.0, FRAC_PI_2, 1e-13)?;
    Ok(r.value)
}

fn cached_gauss(n: usize) -> (&'static [f64], &'static [f64]) {
    use std::sync::OnceLock;
    static TABLES: [OnceLock<(Vec<f64>, Vec<f64>)>; 3] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new()];
    let idx = match n {
        24 => 0,
        48 => 1,
        _ => 2,
    };
    let (x, w) = TABLES[idx].get_or_init(|| crate::quadrature::gauss_legendre(n));
    (x, w)
}

fn q_by_quadrature(k: u32, s: f64) -> Result<f64> {
    Ok(2.0 * s.powf(k as f64 + 0.5) * theta_integral(k, s)?)
}

/// Q_{k-1/2}(1 + u) for u > 0, with the ladder guard described above.
/// Evaluating at `u = t - 1` directly keeps the near-diagonal argument
/// accurate where t itself would round to 1.
pub fn legendre_q_half_em1(k: u32, u: f64) -> Result<f64> {
    Ok(*q_half_ladder(k, u)?.last().expect("nonempty ladder"))
}

/// Below this offset the expansion at the singular point,
/// Q_nu(1+u) = -ln(u/2)/2 - euler - psi(nu+1) + O(u ln u),
/// beats quadrature; it only ever fires deep inside diagonal-cell
/// integration, far below the t >= 1 + 1e-6 accuracy contract.
const DIAGONAL_EXPANSION_CUTOFF: f64 = 1e-13;

const EULER_MASCHERONI: f64 = 0.577_215_664_901_532_9;

/// Q_{-1/2}(1+u), ..., Q_{k_max-1/2}(1+u) in one pass.
pub fn q_half_ladder(k_max: u32, u: f64) -> Result<Vec<f64>> {
    if u <= 0.0 || !u.is_finite() {
        return Err(Error::Domain(format!(
            "legendre_q_half requires t > 1 (diverges as t -> 1+), got t - 1 = {u}"
        )));
    }
    if u <= DIAGONAL_EXPANSION_CUTOFF {
        let base = -0.5 * (0.5 * u).ln() - EULER_MASCHERONI;
        return (0..=k_max)
            .map(|j| {
                crate::specfun::gamma::digamma(j as f64 + 0.5).map(|psi| base - psi)
            })
            .collect();
    }
    let t = 1.0 + u;
    // s = t - sqrt(t^2 - 1), with t^2 - 1 = u (2 + u) evaluated cancellation-free
    let root = (u * (2.0 + u)).sqrt();
    let s = 1.0 / (t + root);

    let mut q = Vec::with_capacity(k_max as usize + 1);
    let mut err = Vec::with_capacity(k_max as usize + 1);
    q.push(q_by_quadrature(0, s)?);
    err.push(3e-13 * q[0]);
    if k_max >= 1 {
        q.push(q_by_quadrature(1, s)?);
        err.push(3e-13 * q[1]);
    }
    for k in 2..=k_max as usize {
        let nu = k as f64 - 1.5;
        let cand = ((2.0 * nu + 1.0) * t * q[k - 1] - nu * q[k - 2]) / (nu + 1.0);
        let e_cand = ((2.0 * nu + 1.0) * t * err[k - 1] + nu * err[k - 2]) / (nu + 1.0);
        let prev_ratio = q[k - 1] / q[k - 2];
        let ratio = cand / q[k - 1];
        let guarded = cand > 0.0
            && ratio <= s * (1.0 + 1e-10)
            && ratio >= prev_ratio * (1.0 - 1e-9)
            && e_cand <= 1e-11 * cand;
        if guarded {
            q.push(cand);
            err.push(e_cand);
        } else {
            let v = q_by_quadrature(k as u32, s)?;
            q.push(v);
            err.push(3e-13 * v);
        }
    }
    Ok(q)
}

/// Legendre function of the second kind of degree k - 1/2 at t > 1.
pub fn legendre_q_half(k: u32, t: f64) -> Result<f64> {
    if t <= 1.0 || !t.is_finite() {
        return Err(Error::Domain(format!(
            "legendre_q_half requires t > 1 (diverges as t -> 1+), got {t}"
        )));
    }
    legendre_q_half_em1(k, t - 1.0)
}

/// Q_{-1/2}(t), ..., Q_{k_max-1/2}(t).
pub fn legendre_q_half_sequence(k_max: u32, t: f64) -> Result<Vec<f64>> {
    if t <= 1.0 || !t.is_finite() {
        return Err(Error::Domain(format!(
            "legendre_q_half requires t > 1, got {t}"
        )));
    }
    q_half_ladder(k_max, t - 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::{ellipk, gamma};

    fn deg(twice: i64) -> HalfIntegerDegree {
        HalfIntegerDegree::new(twice)
    }

    fn assert_rel(got: f64, want: f64, tol: f64, what: &str) {
        let rel = (got - want).abs() / want.abs().max(1e-300);
        assert!(rel <= tol, "{what}: got {got:e}, want {want:e}, rel {rel:.3e}");
    }

    #[test]
    fn p_at_one() {
        assert_eq!(legendre_p(0, deg(-1), 1.0).unwrap(), 1.0);
        assert_eq!(legendre_p(0, deg(1), 1.0).unwrap(), 1.0);
        assert_eq!(legendre_p(-1, deg(-1), 1.0).unwrap(), 0.0);
        assert_eq!(legendre_p(-1, deg(1), 1.0).unwrap(), 0.0);
    }

    #[test]
    fn p_reference_values() {
        // mpmath legenp(type=2), dps=50
        let cases = [
            (0, -1, 0.5, 1.073_182_007_149_364_4),
            (0, 1, 0.5, 0.795_248_908_186_023_9),
            (-1, -1, 0.5, 0.597_344_843_421_530_6),
            (-1, 1, 0.5, 0.520_044_446_813_56),
            (0, -1, 0.05, 1.167_213_461_049_245_3),
            (0, 1, 0.05, 0.568_370_309_832_849_9),
            (0, -1, 0.9, 1.012_864_256_588_33),
            (-1, -1, 0.2, 0.865_152_911_734_351),
            (-1, 1, 0.2, 0.681_483_762_195_109_7),
        ];
        for (mu, twice_nu, x, want) in cases {
            let got = legendre_p(mu, deg(twice_nu), x).unwrap();
            assert_rel(got, want, 1e-12, &format!("P^{mu}_{twice_nu}/2({x})"));
        }
    }

    #[test]
    fn p_matches_ascending_series_oracle() {
        // P_{-1/2}(x) = (1/2pi) sum_k ( G(1/4+k)^2/(G(1/2+k) k!) x^{2k}
        //                              - G(3/4+k)^2/(G(3/2+k) k!) x^{2k+1} )
        let x: f64 = 0.5;
        let mut sum = 0.0;
        let mut even = gamma(0.25).unwrap().powi(2) / gamma(0.5).unwrap();
        let mut odd = -gamma(0.75).unwrap().powi(2) / gamma(1.5).unwrap();
        for k in 0..80u32 {
            let kf = k as f64;
            sum += even * x.powi(2 * k as i32) + odd * x.powi(2 * k as i32 + 1);
            even *= (0.25 + kf) * (0.25 + kf) / ((0.5 + kf) * (kf + 1.0));
            odd *= (0.75 + kf) * (0.75 + kf) / ((1.5 + kf) * (kf + 1.0));
        }
        sum /= 2.0 * std::f64::consts::PI;
        assert_rel(legendre_p(0, deg(-1), x).unwrap(), sum, 1e-12, "series oracle");
    }

    #[test]
    fn p_positive_on_unit_interval() {
        for i in 1..=200 {
            let x = i as f64 / 200.0;
            assert!(legendre_p(0, deg(-1), x).unwrap() > 0.0);
            assert!(legendre_p(0, deg(1), x).unwrap() > 0.0);
        }
    }

    #[test]
    fn p_rejects_out_of_surface() {
        assert!(legendre_p(1, deg(1), 0.5).is_err());
        assert!(legendre_p(-2, deg(1), 0.5).is_err());
        assert!(legendre_p(0, deg(3), 0.5).is_err());
        assert!(legendre_p(0, deg(1), 0.0).is_err());
        assert!(legendre_p(0, deg(1), 1.1).is_err());
    }

    #[test]
    fn q_reference_values() {
        // mpmath legenq(type=3), dps=50
        let cases: [(u32, f64, f64); 14] = [
            (0, 1.25, 2.384_011_014_551_230_4),
            (1, 1.25, 0.617_412_111_666_853_1),
            (0, 2.0, 1.656_638_170_236_594_2),
            (1, 2.0, 0.224_014_292_836_415_64),
            (2, 2.0, 0.045_158_724_151_576_98),
            (5, 1.5, 4.174_565_391_646_512e-3),
            (10, 1.5, 2.437_756_143_802_463e-5),
            (20, 1.5, 1.148_738_859_323_242_2e-9),
            (0, 1.000001, 8.640_622_275_304_36),
            (1, 1.000001, 6.640_626_345_615_266),
            (5, 1.01, 0.651_426_261_703_308_4),
            (0, 1e6, 2.221_441_469_079_599_6e-3),
            (1, 1e6, 5.553_603_672_700_561e-10),
            (3, 5.0, 3.231_331_484_475_761e-4),
        ];
        for (k, t, want) in cases {
            let got = legendre_q_half(k, t).unwrap();
            assert_rel(got, want, 1e-10, &format!("Q_({k}-1/2)({t})"));
        }
    }

    #[test]
    fn q_reference_values_deep_ladder() {
        assert_rel(
            legendre_q_half(20, 2.0).unwrap(),
            7.694_866_546_512_47e-13,
            1e-10,
            "Q_(39/2)(2)",
        );
        assert_rel(
            legendre_q_half(20, 1e6).unwrap(),
            2.656_017_727_723_759e-130,
            1e-10,
            "Q_(39/2)(1e6)",
        );
        assert_rel(
            legendre_q_half(10, 100.0).unwrap(),
            3.823_426_491_051_134_6e-25,
            1e-10,
            "Q_(19/2)(100)",
        );
    }

    #[test]
    fn q_agm_elliptic_cross_check() {
        // Q_{-1/2}(t) = sqrt(2/(t+1)) K(2/(t+1)) with the AGM oracle
        for &t in &[1.25f64, 1.8, 3.0, 47.0] {
            let m = 2.0 / (t + 1.0);
            let want = m.sqrt() * ellipk(m);
            assert_rel(legendre_q_half(0, t).unwrap(), want, 1e-11, "AGM cross-check");
        }
    }

    #[test]
    fn q_decreasing_in_degree() {
        for &t in &[1.01, 1.25, 2.0, 100.0] {
            let seq = legendre_q_half_sequence(12, t).unwrap();
            for w in seq.windows(2) {
                assert!(w[1] < w[0], "Q not decreasing in degree at t={t}");
                assert!(w[1] > 0.0);
            }
        }
    }

    #[test]
    fn q_degree_shift_inequality() {
        // Q_{nu+1}((p + 1/p)/2) <= p Q_nu(...) for p in (0,1), nu = -1/2
        for &p in &[0.1f64, 0.5, 0.9] {
            let t = 0.5 * (p + 1.0 / p);
            let q0 = legendre_q_half(0, t).unwrap();
            let q1 = legendre_q_half(1, t).unwrap();
            assert!(q1 <= p * q0 * (1.0 + 1e-12), "shift inequality fails at p={p}");
        }
    }

    #[test]
    fn q_contiguous_recurrence_residual() {
        // |(nu+1) Q_{nu+1} - (2nu+1) t Q_nu + nu Q_{nu-1}| <= 1e-9 |Q_nu|
        // for nu = 1/2, ..., 19/2 on a log-spaced grid of t.
        for i in 0..12 {
            let t = 1.0 + 10f64.powf(-5.0 + i as f64 * 0.9);
            let seq = legendre_q_half_sequence(11, t).unwrap();
            for k in 1..=10usize {
                let nu = k as f64 - 0.5;
                let resid = (nu + 1.0) * seq[k + 1] - (2.0 * nu + 1.0) * t * seq[k] + nu * seq[k - 1];
                assert!(
                    resid.abs() <= 1e-9 * seq[k].abs(),
                    "recurrence residual {resid:e} at t={t}, nu={nu}"
                );
            }
        }
    }

    #[test]
    fn q_rejects_t_at_or_below_one() {
        assert!(legendre_q_half(0, 1.0).is_err());
        assert!(legendre_q_half(0, 0.5).is_err());
        assert!(legendre_q_half(3, f64::INFINITY).is_err());
    }
}
