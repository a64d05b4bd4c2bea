//! The unboundedness construction above the critical coupling: the constants
//! I_nu, the Q-monotonicity lemma, tail bounds for the trial window, and the
//! divergence demonstration with the trial family f = chi_(a,b)(p)/p.
//!
//! Everything here evaluates the continuous form by adaptive quadrature; the
//! Nystrom machinery is never involved.

use serde::Serialize;

use crate::certificate::critical_coupling;
use crate::kernel::{channel_kernel_raw, energy_raw};
use crate::quadrature::{integrate_adaptive, integrate_adaptive_split};
use crate::specfun::legendre_q_half_em1;
use crate::{Error, Result};

/// Trial window 1 < a < b carrying f(p) = chi_(a,b)(p)/p.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialWindow {
    pub a: f64,
    pub b: f64,
}

impl TrialWindow {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        if a <= 1.0 || a >= b || !b.is_finite() || a.is_nan() {
            return Err(Error::Precondition(format!(
                "trial window needs 1 < a < b, got a = {a}, b = {b}"
            )));
        }
        Ok(Self { a, b })
    }
    /// ||f||^2 = 1/a - 1/b.
    pub fn norm_sq(&self) -> f64 {
        1.0 / self.a - 1.0 / self.b
    }
    pub fn log_ratio(&self) -> f64 {
        (self.b / self.a).ln()
    }
}

/// One evaluation of the trial form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct DivergenceRow {
    pub a: f64,
    pub b: f64,
    pub delta: f64,
    pub form_value: f64,
    pub norm_sq: f64,
    pub log_ratio: f64,
}

impl DivergenceRow {
    pub fn csv_header() -> &'static str {
        "a,b,delta,form_value,norm_sq,log_ratio"
    }
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.a, self.b, self.delta, self.form_value, self.norm_sq, self.log_ratio
        )
    }
}

/// Degree selector nu = +-1/2 for the lemma machinery.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HalfNu {
    MinusHalf,
    PlusHalf,
}

impl HalfNu {
    fn q_index(self) -> u32 {
        match self {
            HalfNu::MinusHalf => 0,
            HalfNu::PlusHalf => 1,
        }
    }
    pub fn nu(self) -> f64 {
        match self {
            HalfNu::MinusHalf => -0.5,
            HalfNu::PlusHalf => 0.5,
        }
    }
}

/// Q_nu((p + 1/p)/2) with the argument offset computed cancellation-free.
fn q_of_p(nu: HalfNu, p: f64) -> Result<f64> {
    let off = (1.0 - p) * (1.0 - p) / (2.0 * p);
    legendre_q_half_em1(nu.q_index(), off)
}

/// I_nu = int_0^inf Q_nu((p + 1/p)/2) dp/p by quadrature.  The integrand is
/// invariant under p <-> 1/p, so twice the (0, 1] half is integrated; the
/// integrable singularities sit at p = 1 (log) and p = 0 (algebraic).
pub fn i_nu_constant(nu: HalfNu) -> Result<f64> {
    let r = integrate_adaptive(
        move |p: f64| match q_of_p(nu, p) {
            Ok(q) => q / p,
            Err(_) => f64::NAN,
        },
        0.0,
        1.0,
        1e-9,
    )?;
    Ok(2.0 * r.value)
}

/// Closed forms Gamma(1/4)^4/(4 pi) and 16 pi^3 / Gamma(1/4)^4.
pub fn i_nu_closed_form(nu: HalfNu) -> f64 {
    let g4 = crate::specfun::gamma(0.25).expect("gamma(1/4)").powi(4);
    match nu {
        HalfNu::MinusHalf => g4 / (4.0 * std::f64::consts::PI),
        HalfNu::PlusHalf => 16.0 * std::f64::consts::PI.powi(3) / g4,
    }
}

/// Strict increase of p -> Q_nu((p+1/p)/2) p^alpha across log-spaced samples
/// of (0, 1); the lemma guarantees it for alpha >= -nu - 1.  Returns whether
/// the sampled sequence increases (reported, not asserted, so callers can
/// also explore alpha outside the lemma's range).
pub fn lemma_monotonicity_check(nu: HalfNu, alpha: f64, n_points: usize) -> Result<bool> {
    if n_points < 2 {
        return Err(Error::Precondition("need at least two sample points".into()));
    }
    let mut prev = f64::NEG_INFINITY;
    for i in 0..n_points {
        // log-spaced from 1e-6 to 1 - 1e-6
        let t = i as f64 / (n_points - 1) as f64;
        let p = 10f64.powf(-6.0 * (1.0 - t)) * (1.0 - 1e-6);
        let v = q_of_p(nu, p)? * p.powf(alpha);
        if v <= prev {
            return Ok(false);
        }
        prev = v;
    }
    Ok(true)
}

/// The two tail double integrals
///   T1 = int_a^b dp/p int_0^a dp'/p' Q_nu((p/p' + p'/p)/2),
///   T2 = int_a^b dp/p int_b^inf dp'/p' Q_nu(...)
/// (the second reduced to (0,1] by p' = b^2/u-style inversion through the
/// p <-> 1/p symmetry of the integrand in the ratio variable).
pub fn window_tail_bounds(w: TrialWindow, nu: HalfNu) -> Result<(f64, f64)> {
    // In the ratio variable u = p'/p both tails are
    // int_a^b dp/p int_(tail) du/u Q_nu((u+1/u)/2).
    let inner = |lo: f64, hi: f64| -> Result<f64> {
        Ok(integrate_adaptive(
            move |u: f64| match q_of_p_ratio(nu, u) {
                Ok(q) => q / u,
                Err(_) => f64::NAN,
            },
            lo,
            hi,
            1e-9,
        )?
        .value)
    };
    let t1 = integrate_adaptive(
        |p: f64| inner(0.0, w.a / p).map(|v| v / p).unwrap_or(f64::NAN),
        w.a,
        w.b,
        1e-8,
    )?;
    // p' in (b, inf) maps to u = p'/p in (b/p, inf), and u -> 1/u folds it
    // into (0, p/b)
    let t2 = integrate_adaptive(
        |p: f64| inner(0.0, p / w.b).map(|v| v / p).unwrap_or(f64::NAN),
        w.a,
        w.b,
        1e-8,
    )?;
    Ok((t1.value, t2.value))
}

fn q_of_p_ratio(nu: HalfNu, u: f64) -> Result<f64> {
    let off = (1.0 - u) * (1.0 - u) / (2.0 * u);
    legendre_q_half_em1(nu.q_index(), off)
}

/// Window double integral int_a^b int_a^b Q_nu((p/p'+p'/p)/2) dp dp'/(p p'),
/// with the diagonal log singularity split off the same way as the Nystrom
/// treatment: Q_nu carries exactly -ln|p - p'| on the diagonal, so the
/// subtracted ln part integrates via [`log_kernel_square_integral`] and the
/// remainder is continuous across the diagonal.
pub fn window_double_integral(w: TrialWindow, nu: HalfNu) -> Result<f64> {
    let log_part = crate::quadrature::log_kernel_square_integral(w.a, w.b, 1e-10)?;
    let outer = integrate_adaptive(
        |p: f64| {
            integrate_adaptive_split(
                |pp: f64| {
                    let off = (p - pp) * (p - pp) / (2.0 * p * pp);
                    match legendre_q_half_em1(nu.q_index(), off) {
                        Ok(q) => (q + (p - pp).abs().ln()) / pp,
                        Err(_) => f64::NAN,
                    }
                },
                w.a,
                w.b,
                &[p],
                1e-8,
            )
            .map(|r| r.value / p)
            .unwrap_or(f64::NAN)
        },
        w.a,
        w.b,
        1e-7,
    )?;
    Ok(outer.value - log_part)
}

/// Lemma check: the window double integral dominates
/// I_nu log(b/a) + C with C = -2 I_nu, within quadrature tolerance.
pub fn lemma_f_check(w: TrialWindow, nu: HalfNu, i_nu: f64) -> Result<bool> {
    let lhs = window_double_integral(w, nu)?;
    let rhs = i_nu * w.log_ratio() - 2.0 * i_nu;
    Ok(lhs >= rhs - 1e-6 * lhs.abs().max(i_nu))
}

/// <f, b_0 f> for f = chi_(a,b)/p by direct adaptive quadrature of the
/// continuous form (kinetic integral minus (delta/pi) times the window
/// double integral of K_0 against 1/(p p')).
pub fn trial_form_value(w: TrialWindow, delta: f64, tol: f64) -> Result<DivergenceRow> {
    if delta < 0.0 || delta.is_nan() {
        return Err(Error::Precondition(format!("delta must be >= 0, got {delta}")));
    }
    let kinetic = integrate_adaptive(|p: f64| energy_raw(p) / (p * p), w.a, w.b, tol)?;
    // K_0 also carries exactly -ln|p - p'| on the diagonal; split it off
    let log_part = crate::quadrature::log_kernel_square_integral(w.a, w.b, 1e-10)?;
    let remainder = integrate_adaptive(
        |p: f64| {
            integrate_adaptive_split(
                |pp: f64| {
                    let k = channel_kernel_raw(0, p, pp);
                    (k + (p - pp).abs().ln()) / pp
                },
                w.a,
                w.b,
                &[p],
                tol,
            )
            .map(|r| r.value / p)
            .unwrap_or(f64::NAN)
        },
        w.a,
        w.b,
        tol.max(1e-10) * 10.0,
    )?;
    let potential = remainder.value - log_part;
    let form_value = kinetic.value - delta / std::f64::consts::PI * potential;
    Ok(DivergenceRow {
        a: w.a,
        b: w.b,
        delta,
        form_value,
        norm_sq: w.norm_sq(),
        log_ratio: w.log_ratio(),
    })
}

/// Least-squares slope of form_value against log(b/a).
pub fn fit_slope(rows: &[DivergenceRow]) -> f64 {
    let n = rows.len() as f64;
    let xm = rows.iter().map(|r| r.log_ratio).sum::<f64>() / n;
    let ym = rows.iter().map(|r| r.form_value).sum::<f64>() / n;
    let num: f64 = rows
        .iter()
        .map(|r| (r.log_ratio - xm) * (r.form_value - ym))
        .sum();
    let den: f64 = rows.iter().map(|r| (r.log_ratio - xm).powi(2)).sum();
    num / den
}

/// Divergence demonstration: for delta > delta_c and a making
/// 1 - (delta/delta_c)(1 - 2/a) negative, the form values along b_list are
/// negative and strictly decreasing while ||f||^2 stays <= 1/a.
pub fn divergence_demo(delta: f64, a: f64, b_list: &[f64]) -> Result<Vec<DivergenceRow>> {
    let dc = critical_coupling().delta_c;
    if delta <= dc {
        return Err(Error::Precondition(format!(
            "divergence construction applies only above the critical coupling \
             (delta = {delta} <= delta_c = {dc:.6})"
        )));
    }
    let coeff = 1.0 - delta / dc * (1.0 - 2.0 / a);
    if coeff >= 0.0 {
        let a_min = 2.0 / (1.0 - dc / delta);
        return Err(Error::Precondition(format!(
            "window start a = {a} too small: need 1 - (delta/delta_c)(1 - 2/a) < 0, \
             i.e. a > {a_min:.3}"
        )));
    }
    if b_list.is_empty() {
        return Err(Error::Config("empty b list".into()));
    }
    let mut rows = Vec::with_capacity(b_list.len());
    for &b in b_list {
        let w = TrialWindow::new(a, b)?;
        rows.push(trial_form_value(w, delta, 1e-7)?);
    }
    Ok(rows)
}

/// The lemma verification suite: I_nu dual paths, the monotonicity lemma
/// (plus one exploration row outside its hypothesis), Lemma (F) on seeded
/// random windows, subcritical floor consistency, and the divergence
/// demonstration. Deterministic order and seeding.
pub fn lemma_suite() -> Result<Vec<crate::identities::IdentityReport>> {
    use crate::identities::IdentityReport;
    use rand::{Rng, SeedableRng};

    let mut reports = Vec::new();
    for (nu, label) in [(HalfNu::MinusHalf, "-1/2"), (HalfNu::PlusHalf, "+1/2")] {
        let quad = i_nu_constant(nu)?;
        let closed = i_nu_closed_form(nu);
        reports.push(
            IdentityReport::new(format!("I_{label} quadrature vs closed form"), quad, closed, 1e-6, false)
                .with("nu", nu.nu()),
        );
    }
    for (nu, label) in [(HalfNu::MinusHalf, "-1/2"), (HalfNu::PlusHalf, "+1/2")] {
        let increasing = lemma_monotonicity_check(nu, -0.5, 1000)?;
        reports.push(
            IdentityReport::new(
                format!("Q_{label}((p+1/p)/2) p^-1/2 increasing on (0,1)"),
                increasing as i32 as f64,
                1.0,
                0.0,
                true,
            )
            .with("alpha", -0.5)
            .with("n_points", 1000.0),
        );
    }
    // exploration row: alpha outside the lemma hypothesis; reported, never
    // asserted, so the row passes by construction
    let held = lemma_monotonicity_check(HalfNu::MinusHalf, -0.9, 1000)?;
    reports.push(
        IdentityReport::new(
            "exploration: monotonicity at alpha = -0.9 (outside alpha >= -nu-1)".to_string(),
            held as i32 as f64,
            held as i32 as f64,
            0.0,
            true,
        )
        .with("alpha", -0.9)
        .with("monotonicity_held", held as i32 as f64),
    );

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x1e77a);
    for (nu, label) in [(HalfNu::MinusHalf, "-1/2"), (HalfNu::PlusHalf, "+1/2")] {
        let i_nu = i_nu_closed_form(nu);
        let mut min_margin = f64::INFINITY;
        for _ in 0..20 {
            let a = 1.0 + rng.random::<f64>() * 99.0;
            let b = (a * (1.5 + rng.random::<f64>() * 50.0)).min(1e4);
            let w = TrialWindow::new(a, b)?;
            let lhs = window_double_integral(w, nu)?;
            let rhs = i_nu * w.log_ratio() - 2.0 * i_nu;
            min_margin = min_margin.min((lhs - rhs) / i_nu);
        }
        let mut rep = IdentityReport::new(
            format!("lemma F with C = -2 I_{label} on 20 random windows"),
            min_margin.min(0.0).abs(),
            0.0,
            1e-6,
            true,
        );
        rep = rep.with("min_margin", min_margin).with("windows", 20.0);
        reports.push(rep);
    }

    let dc = critical_coupling().delta_c;
    let mut worst = 0.0f64;
    for &(a, b) in &[(2.0, 8.0), (5.0, 120.0)] {
        for &delta in &[0.3, dc] {
            let row = trial_form_value(TrialWindow::new(a, b)?, delta, 1e-7)?;
            let floor = (1.0 - 2.0 * delta) * row.norm_sq;
            worst = worst.max(floor - row.form_value);
        }
    }
    reports.push(
        IdentityReport::new(
            "subcritical windows respect the (1-2 delta) floor".to_string(),
            worst.max(0.0),
            0.0,
            1e-6,
            true,
        )
        .with("worst_floor_excess", worst),
    );

    let rows = divergence_demo(0.5, 50.0, &[5e3, 5e4, 5e5])?;
    let decreasing = rows.windows(2).all(|w| w[1].form_value < w[0].form_value);
    let tail_negative = rows.last().map(|r| r.form_value < 0.0).unwrap_or(false);
    let slope = fit_slope(&rows);
    let bound = 1.0 - 0.5 / dc * (1.0 - 2.0 / 50.0) + 0.05;
    let ok = decreasing && tail_negative && slope <= bound;
    let mut rep = IdentityReport::new(
        "divergence demo (delta = 0.5, a = 50): decreasing toward -inf".to_string(),
        ok as i32 as f64,
        1.0,
        0.0,
        true,
    );
    rep = rep
        .with("slope", slope)
        .with("slope_bound", bound)
        .with("form_b5e3", rows[0].form_value)
        .with("form_b5e4", rows[1].form_value)
        .with("form_b5e5", rows[2].form_value);
    reports.push(rep);
    Ok(reports)
}
