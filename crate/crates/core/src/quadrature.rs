//! Grids and integration: Gauss-Legendre rules, mapped half-line grids,
//! globally adaptive Gauss-Kronrod integration for smooth and endpoint-singular
//! integrands, and the diagonal-cell treatment of the logarithmic kernel
//! singularity used by the Nystrom assembly.

use std::collections::BinaryHeap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::kernel::{beta_weights_raw, channel_kernel_raw, Channel};
use crate::{Error, Result};

/// Outcome of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: u64,
}

// 21-point Kronrod / 10-point Gauss pair (QUADPACK dqk21 abscissae).
const XGK: [f64; 11] = [
    0.995_657_163_025_808_1,
    0.973_906_528_517_171_7,
    0.930_157_491_355_708_2,
    0.865_063_366_688_984_5,
    0.780_817_726_586_416_9,
    0.679_409_568_299_024_4,
    0.562_757_134_668_604_7,
    0.433_395_394_129_247_2,
    0.294_392_862_701_460_2,
    0.148_874_338_981_631_21,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874,
    0.032_558_162_307_964_73,
    0.054_755_896_574_351_996,
    0.075_039_674_810_919_95,
    0.093_125_454_583_697_6,
    0.109_387_158_802_297_64,
    0.123_491_976_262_065_85,
    0.134_709_217_311_473_33,
    0.142_775_938_577_060_08,
    0.147_739_104_901_338_49,
    0.149_445_554_002_916_9,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_14,
    0.149_451_349_150_580_6,
    0.219_086_362_515_982_04,
    0.269_266_719_309_996_35,
    0.295_524_224_714_752_87,
];

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

/// One 21-point Gauss-Kronrod pass over [a, b]; returns (value, error).
fn gk21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64)> {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut resk = WGK[10] * fc;
    let mut resg = 0.0;
    let mut res_abs = resk.abs();
    let mut fv = [0.0f64; 21];
    fv[20] = fc;
    for (j, wg) in WG.iter().enumerate() {
        let jtw = 2 * j + 1;
        let x = h * XGK[jtw];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv[jtw] = f1;
        fv[10 + jtw] = f2;
        resg += wg * (f1 + f2);
        resk += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    for j in 0..5 {
        let jtw = 2 * j;
        let x = h * XGK[jtw];
        let f1 = f(c - x);
        let f2 = f(c + x);
        fv[jtw] = f1;
        fv[10 + jtw] = f2;
        resk += WGK[jtw] * (f1 + f2);
        res_abs += WGK[jtw] * (f1.abs() + f2.abs());
    }
    if !resk.is_finite() {
        return Err(Error::Quadrature(format!(
            "non-finite integrand value on [{a}, {b}]"
        )));
    }
    let mean = 0.5 * resk;
    let mut res_asc = WGK[10] * (fc - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv[j] - mean).abs() + (fv[10 + j] - mean).abs());
    }
    let err = rescale_error((resk - resg) * h, res_abs * h.abs(), res_asc * h.abs());
    Ok((resk * h, err))
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    err: f64,
    a: f64,
    b: f64,
    value: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.err.total_cmp(&other.err)
    }
}

const DEFAULT_SEGMENT_BUDGET: usize = 20_000;

/// Globally adaptive Gauss-Kronrod integration of `f` over [a, b].
///
/// Converges when the summed error estimate drops below
/// max(tol, tol * |value|); endpoint algebraic/log singularities are handled
/// by bisection (the rule never evaluates interval endpoints).  Segments
/// whose split no longer improves the estimate are frozen at their rounding
/// floor and the integration returns with the achieved `error_estimate`
/// (the caller's contract is |value - true| <= max(tol, error_estimate)).
/// Exhausting the subdivision budget with refinable segments left is an
/// explicit failure, never a silent value.
pub fn integrate_adaptive<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadratureResult> {
    integrate_adaptive_split(f, a, b, &[], tol)
}

/// As [`integrate_adaptive`], with interior break points (known singular
/// locations) that become initial segment boundaries.
pub fn integrate_adaptive_split<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    tol: f64,
) -> Result<QuadratureResult> {
    if a >= b || !a.is_finite() || !b.is_finite() {
        return Err(Error::Domain(format!("bad integration interval [{a}, {b}]")));
    }
    if tol <= 0.0 || tol.is_nan() {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    // single-pass fast path; the kernel hot loops live on it
    if breaks.is_empty() {
        let (v, e) = gk21(&f, a, b)?;
        if e <= tol.max(tol * v.abs()) {
            return Ok(QuadratureResult { value: v, error_estimate: e, evaluations: 21 });
        }
    }
    let mut edges: Vec<f64> = vec![a];
    for &s in breaks {
        if s > a && s < b {
            edges.push(s);
        }
    }
    edges.push(b);
    edges.sort_by(f64::total_cmp);
    edges.dedup();

    let mut evals: u64 = 0;
    let mut heap = BinaryHeap::new();
    let mut total = 0.0;
    let mut total_err = 0.0;
    let mut frozen_err = 0.0;
    for w in edges.windows(2) {
        let (v, e) = gk21(&f, w[0], w[1])?;
        evals += 21;
        total += v;
        total_err += e;
        heap.push(Segment { err: e, a: w[0], b: w[1], value: v });
    }

    let mut segments = heap.len();
    while total_err + frozen_err > tol.max(tol * total.abs()) {
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.a + worst.b);
        // Narrower than ~1e4 ulps of its own magnitude: rule nodes would
        // start colliding with a singular endpoint.  Park its error.
        let scale = worst.a.abs().max(worst.b.abs());
        if mid <= worst.a || mid >= worst.b || worst.b - worst.a <= 1e4 * f64::EPSILON * scale {
            frozen_err += worst.err;
            total_err -= worst.err;
            continue;
        }
        if segments >= DEFAULT_SEGMENT_BUDGET {
            return Err(Error::Quadrature(format!(
                "budget of {DEFAULT_SEGMENT_BUDGET} segments exhausted on [{a}, {b}] \
                 (error estimate {:.3e}, target {:.3e})",
                total_err + frozen_err,
                tol.max(tol * total.abs())
            )));
        }
        let (v1, e1) = gk21(&f, worst.a, mid)?;
        let (v2, e2) = gk21(&f, mid, worst.b)?;
        evals += 42;
        segments += 1;
        total += v1 + v2 - worst.value;
        total_err -= worst.err;
        let value_settled = (v1 + v2 - worst.value).abs() <= 1e-5 * (v1 + v2).abs();
        if value_settled && e1 + e2 >= 0.99 * worst.err {
            // Estimator stagnation: this stretch is at its rounding floor.
            frozen_err += e1 + e2;
        } else {
            total_err += e1 + e2;
            heap.push(Segment { err: e1, a: worst.a, b: mid, value: v1 });
            heap.push(Segment { err: e2, a: mid, b: worst.b, value: v2 });
        }
    }

    Ok(QuadratureResult {
        value: total,
        error_estimate: total_err + frozen_err,
        evaluations: evals,
    })
}

/// Gauss-Legendre nodes and weights on (-1, 1), Newton iteration on P_n.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut pp = 0.0;
        for _ in 0..100 {
            let mut p1 = 1.0;
            let mut p2 = 0.0;
            for j in 0..n {
                let p3 = p2;
                p2 = p1;
                let jf = j as f64;
                p1 = ((2.0 * jf + 1.0) * z * p2 - jf * p3) / (jf + 1.0);
            }
            pp = n as f64 * (z * p1 - p2) / (z * z - 1.0);
            let z1 = z;
            z = z1 - p1 / pp;
            if (z - z1).abs() < 1e-16 {
                break;
            }
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        let wi = 2.0 / ((1.0 - z * z) * pp * pp);
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// Half-line map used by [`RadialGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    /// Graded rational map p = L u^2/(1 - u^2-style); algebraic tails.
    Rational,
    /// Logarithmic map p = -L ln((1-s)/2); suited to exponentially
    /// decaying integrands.
    Exponential,
}

impl std::str::FromStr for MapKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(MapKind::Rational),
            "exponential" => Ok(MapKind::Exponential),
            other => Err(Error::Config(format!("unknown map kind '{other}'"))),
        }
    }
}

impl std::fmt::Display for MapKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            MapKind::Rational => write!(f, "rational"),
            MapKind::Exponential => write!(f, "exponential"),
        }
    }
}

/// Quadrature grid on the truncated half-line (0, p_max].
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RadialGrid {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    cells: Vec<(f64, f64)>,
    map_kind: MapKind,
    p_max: f64,
    self_test_error: f64,
}

impl RadialGrid {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }
    pub fn len(&self) -> usize {
        self.nodes.len()
    }
    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }
    pub fn map_kind(&self) -> MapKind {
        self.map_kind
    }
    pub fn p_max(&self) -> f64 {
        self.p_max
    }
    /// Measured error of the construction-time self-test integrals.
    pub fn self_test_error(&self) -> f64 {
        self.self_test_error
    }
    /// Cell of node `i` (the image of the node's Gauss-Legendre cell).
    pub fn cell(&self, i: usize) -> Result<(f64, f64)> {
        self.cells
            .get(i)
            .copied()
            .ok_or_else(|| Error::Domain(format!("cell index {i} out of range")))
    }
    /// Quadrature of a function sampled on the grid.
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&p, &w)| w * f(p))
            .sum()
    }
}

/// Build an n-point grid for integrals over (0, infinity) truncated at
/// `p_max` (the largest node lands exactly there).
///
/// The rational map composes Gauss-Legendre with u = ((1+s)/2)^2 and
/// p = L u/(1-u): the squared grading absorbs inverse-square-root behaviour
/// at p = 0 while the rational tail resolves algebraically decaying trial
/// functions.  The exponential map is kept for e^{-p}-type oracles.
pub fn build_radial_grid(n: usize, map_kind: MapKind, p_max: f64) -> Result<RadialGrid> {
    if n < 8 {
        return Err(Error::Config(format!("grid needs n >= 8, got {n}")));
    }
    if p_max <= 0.0 || !p_max.is_finite() {
        return Err(Error::Config(format!("p_max must be positive, got {p_max}")));
    }
    let (s, sw) = gauss_legendre(n);

    type Map = Box<dyn Fn(f64) -> f64>;
    let (map, dmap): (Map, Map) = match map_kind {
        MapKind::Rational => {
            let u_max = ((1.0 + s[n - 1]) / 2.0).powi(2);
            let scale = p_max * (1.0 - u_max) / u_max;
            (
                Box::new(move |t: f64| {
                    let half = (1.0 + t) / 2.0;
                    let u = half * half;
                    scale * u / (1.0 - u)
                }),
                Box::new(move |t: f64| {
                    let half = (1.0 + t) / 2.0;
                    let u = half * half;
                    scale * half / ((1.0 - u) * (1.0 - u))
                }),
            )
        }
        MapKind::Exponential => {
            let w_min = (1.0 - s[n - 1]) / 2.0;
            let scale = p_max / (-w_min.ln());
            (
                Box::new(move |t: f64| -scale * ((1.0 - t) / 2.0).ln()),
                Box::new(move |t: f64| scale / (1.0 - t)),
            )
        }
    };

    let nodes: Vec<f64> = s.iter().map(|&t| map(t)).collect();
    let weights: Vec<f64> = s
        .iter()
        .zip(&sw)
        .map(|(&t, &wt)| wt * dmap(t))
        .collect();
    if nodes.windows(2).any(|w| w[1] <= w[0]) || nodes[0] <= 0.0 {
        return Err(Error::Config("map produced a non-increasing grid".into()));
    }

    // Node cells: images of the Gauss-Legendre midpoint partition.
    let mut edges = Vec::with_capacity(n + 1);
    edges.push(-1.0);
    for w in s.windows(2) {
        edges.push(0.5 * (w[0] + w[1]));
    }
    edges.push(0.5 * (s[n - 1] + 1.0));
    let cells: Vec<(f64, f64)> = (0..n).map(|i| (map(edges[i]), map(edges[i + 1]))).collect();

    let mut grid = RadialGrid {
        nodes,
        weights,
        cells,
        map_kind,
        p_max,
        self_test_error: 0.0,
    };
    let e1 = (grid.integrate(|p| (-p).exp()) - 1.0).abs();
    let e2 = (grid.integrate(|p| p * (-p * p).exp()) - 0.5).abs();
    grid.self_test_error = e1.max(e2);
    Ok(grid)
}

/// int int_{[a,b]^2} ln|p - q|/(p q) dp dq, reduced in the variables
/// x = ln p to the closed-form part int int max(x, y) plus one smooth 1D
/// integral of ln(1 - e^{-u}):
///   2 int_0^L (L - u) ln(1 - e^{-u}) du,  L = ln(b/a).
pub fn log_kernel_square_integral(a: f64, b: f64, tol: f64) -> Result<f64> {
    if a <= 0.0 || a >= b || !b.is_finite() {
        return Err(Error::Domain(format!("bad square [{a}, {b}]^2")));
    }
    let (alpha, beta) = (a.ln(), b.ln());
    let l = beta - alpha;
    let max_part = 2.0 / 3.0 * (beta.powi(3) - alpha.powi(3)) - alpha * (beta * beta - alpha * alpha);
    let g_part = integrate_adaptive(
        |u: f64| (l - u) * (-(-u).exp()).ln_1p(),
        0.0,
        l,
        tol,
    )?;
    Ok(max_part + 2.0 * g_part.value)
}

/// Self-interaction of the channel kernel over the square cell [a, b]^2,
/// with the diagonal log singularity split off analytically.
///
/// On the diagonal K_k(p, q) ~ -(beta1+beta2)(p,q) ln|p-q| + smooth, and
/// beta1 + beta2 = 1 exactly at p = q, so subtracting s_c ln|p-q| with s_c
/// evaluated at the cell centre leaves a remainder whose log coefficient
/// vanishes quadratically on the diagonal.  The subtracted part integrates
/// in closed form: int int_{[a,b]^2} ln|p-q| = h^2 (ln h - 3/2).
pub fn kernel_cell_self_integral(ch: Channel, a: f64, b: f64, tol: f64) -> Result<f64> {
    if a < 0.0 || a >= b || !b.is_finite() {
        return Err(Error::Domain(format!("bad cell [{a}, {b}]")));
    }
    let c = 0.5 * (a + b);
    let (b1, b2) = beta_weights_raw(c, c);
    let s_c = b1 + b2;
    let h = b - a;
    let log_part = -s_c * h * h * (h.ln() - 1.5);

    let remainder = |p: f64, q: f64| -> f64 {
        channel_kernel_raw(ch.index(), p, q) + s_c * (p - q).abs().ln()
    };
    let inner_tol = (tol * log_part.abs().max(1.0)).max(1e-13);
    let outer = integrate_adaptive(
        |q| {
            integrate_adaptive(|p| remainder(p, q), a, q, inner_tol)
                .map(|r| r.value)
                .unwrap_or(f64::NAN)
        },
        a,
        b,
        inner_tol,
    )?;
    if !outer.value.is_finite() {
        return Err(Error::Quadrature("cell remainder integral failed".into()));
    }
    Ok(log_part + 2.0 * outer.value)
}

/// Nystrom diagonal entry for node `i`: the cell-averaged self-interaction
/// of the kernel, normalized so the assembled matrix uses it directly as
/// (delta/pi) * D_i / w_i in the symmetrized variables.
pub fn diagonal_cell_weight(
    grid: &RadialGrid,
    i: usize,
    ch: Channel,
    delta_coupling: f64,
) -> Result<f64> {
    let (a, b) = grid.cell(i)?;
    let d = kernel_cell_self_integral(ch, a, b, 1e-7)?;
    Ok(delta_coupling / PI * d / grid.weights()[i])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::ellipk;

    #[test]
    fn gauss_legendre_integrates_polynomials() {
        let (x, w) = gauss_legendre(12);
        let quad = |f: &dyn Fn(f64) -> f64| x.iter().zip(&w).map(|(&t, &wt)| wt * f(t)).sum::<f64>();
        assert!((quad(&|_| 1.0) - 2.0).abs() < 1e-14);
        assert!((quad(&|t| t * t) - 2.0 / 3.0).abs() < 1e-14);
        // degree 2n-1 = 23 still exact
        assert!((quad(&|t| t.powi(22)) - 2.0 / 23.0).abs() < 1e-13);
    }

    #[test]
    fn adaptive_log_singularity() {
        let r = integrate_adaptive(|x| (1.0 / x).ln(), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 1.0).abs() < 1e-10, "got {}", r.value);
        assert!(r.error_estimate < 1e-9);
    }

    #[test]
    fn adaptive_inverse_sqrt() {
        let r = integrate_adaptive(|x| x.powf(-0.5), 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "got {}", r.value);
    }

    #[test]
    fn adaptive_periodic_elliptic_oracle() {
        // int_0^{2pi} dt / sqrt(1 - 0.9 cos t) = 4/sqrt(1.9) K(1.8/1.9)
        let r = integrate_adaptive(
            |t| 1.0 / (1.0 - 0.9 * t.cos()).sqrt(),
            0.0,
            2.0 * PI,
            1e-12,
        )
        .unwrap();
        let want = 4.0 / 1.9f64.sqrt() * ellipk(1.8 / 1.9);
        assert!((r.value - want).abs() < 1e-9, "{} vs {want}", r.value);
    }

    #[test]
    fn adaptive_error_estimate_bounds_true_error() {
        // validate against 10x tighter runs on a small corpus
        type Item = (Box<dyn Fn(f64) -> f64>, f64, f64);
        let corpus: Vec<Item> = vec![
            (Box::new(|x: f64| (1.0 / x).ln()), 0.0, 1.0),
            (Box::new(|x: f64| x.powf(-0.5)), 0.0, 1.0),
            (Box::new(|x: f64| (x * 7.0).sin() * (-x).exp()), 0.0, 10.0),
            (Box::new(|x: f64| (1.0 - x * x).sqrt()), -1.0, 1.0),
        ];
        for (f, a, b) in &corpus {
            let loose = integrate_adaptive(f, *a, *b, 1e-7).unwrap();
            let tight = integrate_adaptive(f, *a, *b, 1e-8 * 0.1).unwrap();
            let true_err = (loose.value - tight.value).abs();
            assert!(
                true_err <= loose.error_estimate.max(1e-13),
                "estimate {:.3e} < true {:.3e}",
                loose.error_estimate,
                true_err
            );
        }
    }

    #[test]
    fn adaptive_rejects_bad_interval() {
        assert!(integrate_adaptive(|x| x, 1.0, 1.0, 1e-8).is_err());
        assert!(integrate_adaptive(|x| x, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn radial_grid_exponential_moment() {
        let g = build_radial_grid(64, MapKind::Rational, 1e4).unwrap();
        assert!(
            (g.integrate(|p| (-p).exp()) - 1.0).abs() < 1e-8,
            "exp moment error {:.3e}",
            (g.integrate(|p| (-p).exp()) - 1.0).abs()
        );
        assert!((g.integrate(|p| p * (-p * p).exp()) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn radial_grid_graded_sqrt_singularity() {
        let g = build_radial_grid(64, MapKind::Rational, 1e4).unwrap();
        let got = g.integrate(|p| p.powf(-0.5) * (-p).exp());
        assert!(
            (got - PI.sqrt()).abs() < 1e-6,
            "sqrt(pi) moment: {got} vs {}",
            PI.sqrt()
        );
    }

    #[test]
    fn radial_grid_refinement_improves() {
        // monotone until the rounding floor
        let mut prev = f64::INFINITY;
        for n in [16, 32, 64, 128] {
            let g = build_radial_grid(n, MapKind::Rational, 1e4).unwrap();
            let err = g.self_test_error();
            assert!(err < prev || err < 1e-12, "n={n}: {err:.3e} !< {prev:.3e}");
            prev = err;
        }
    }

    #[test]
    fn radial_grid_shape_invariants() {
        for kind in [MapKind::Rational, MapKind::Exponential] {
            let g = build_radial_grid(40, kind, 100.0).unwrap();
            assert!(g.nodes().windows(2).all(|w| w[1] > w[0]));
            assert!(g.weights().iter().all(|&w| w > 0.0));
            assert!((g.nodes()[39] - 100.0).abs() < 1e-9 * 100.0);
            for i in 0..g.len() {
                let (a, b) = g.cell(i).unwrap();
                let p = g.nodes()[i];
                assert!(a <= p && p <= b, "node {i} outside its cell");
            }
        }
        assert!(build_radial_grid(4, MapKind::Rational, 1.0).is_err());
        assert!(build_radial_grid(16, MapKind::Rational, -1.0).is_err());
    }
}
