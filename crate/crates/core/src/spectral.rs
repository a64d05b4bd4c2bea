//! Discretized channel quadratic forms and their spectra.
//!
//! The channel form
//!   <a, b_k a> = int e(r) |a(r)|^2 dr
//!              - (delta/pi) int int a(r) conj(a(r')) K_k(r, r') dr dr'
//! is discretized on a [`RadialGrid`] in the symmetrized variables
//! g_i = sqrt(w_i) f_i, which keeps the Nystrom matrix exactly symmetric:
//!   M_ij = e(p_i) delta_ij - (delta/pi) sqrt(w_i w_j) K_k(p_i, p_j)
//! with the diagonal cell-averaged by [`crate::quadrature::diagonal_cell_weight`].
//!
//! Reported eigenvalues are of the discretized matrix at the stated grid;
//! no continuum claim is attached to them.

use serde::Serialize;

use crate::eigen::symmetric_eigen;
use crate::kernel::{channel_kernel_raw, energy_raw, Channel};
use crate::quadrature::{kernel_cell_self_integral, RadialGrid};
use crate::{Error, Result};

/// delta- and channel-independent pieces of the Nystrom matrix, so a coupling
/// sweep reassembles nothing.
#[derive(Debug, Clone)]
pub struct FormParts {
    kinetic: Vec<f64>,
    potential: Vec<f64>,
}

impl FormParts {
    pub fn kinetic(&self) -> &[f64] {
        &self.kinetic
    }
    pub fn potential(&self) -> &[f64] {
        &self.potential
    }
}

/// Assemble the kinetic diagonal and the symmetrized kernel matrix
/// P_ij = sqrt(w_i w_j) K_k(p_i, p_j) (cell-averaged on the diagonal).
pub fn assemble_parts(grid: &RadialGrid, ch: Channel) -> Result<FormParts> {
    let n = grid.len();
    let p = grid.nodes();
    let w = grid.weights();
    let kinetic: Vec<f64> = p.iter().map(|&pi| energy_raw(pi)).collect();
    let mut potential = vec![0.0; n * n];
    for i in 0..n {
        for j in (i + 1)..n {
            let k = channel_kernel_raw(ch.index(), p[i], p[j]);
            if !k.is_finite() {
                return Err(Error::Quadrature(format!(
                    "kernel evaluation failed at nodes ({}, {})",
                    p[i], p[j]
                )));
            }
            let v = (w[i] * w[j]).sqrt() * k;
            potential[i * n + j] = v;
            potential[j * n + i] = v;
        }
        let (a, b) = grid.cell(i)?;
        potential[i * n + i] = kernel_cell_self_integral(ch, a, b, 1e-7)? / w[i];
    }
    Ok(FormParts { kinetic, potential })
}

/// Symmetric Nystrom matrix of the channel form at coupling delta.
#[derive(Debug, Clone)]
pub struct ChannelForm {
    delta: f64,
    channel: Channel,
    grid: RadialGrid,
    matrix: Vec<f64>,
}

impl ChannelForm {
    pub fn delta(&self) -> f64 {
        self.delta
    }
    pub fn channel(&self) -> Channel {
        self.channel
    }
    pub fn grid(&self) -> &RadialGrid {
        &self.grid
    }
    pub fn n(&self) -> usize {
        self.grid.len()
    }
    /// Row-major symmetric matrix.
    pub fn matrix(&self) -> &[f64] {
        &self.matrix
    }

    pub fn from_parts(grid: &RadialGrid, ch: Channel, delta: f64, parts: &FormParts) -> Result<Self> {
        if delta < 0.0 || !delta.is_finite() {
            return Err(Error::Precondition(format!("delta must be >= 0, got {delta}")));
        }
        let n = grid.len();
        let scale = delta / std::f64::consts::PI;
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut v = -scale * parts.potential[i * n + j];
                if i == j {
                    v += parts.kinetic[i];
                }
                matrix[i * n + j] = v;
            }
        }
        Ok(Self { delta, channel: ch, grid: grid.clone(), matrix })
    }
}

/// Assemble the channel form at coupling delta.
pub fn assemble_form(grid: &RadialGrid, ch: Channel, delta: f64) -> Result<ChannelForm> {
    let parts = assemble_parts(grid, ch)?;
    ChannelForm::from_parts(grid, ch, delta, &parts)
}

/// One row of a spectral sweep.  `residual` is the relative eigen-residual
/// ||M v - lambda v|| / ||M||_F of the reported eigenpair.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SpectralReport {
    pub delta: f64,
    pub k: i32,
    pub n: usize,
    pub p_max: f64,
    pub lambda_min: f64,
    pub residual: f64,
}

impl SpectralReport {
    pub fn csv_header() -> &'static str {
        "delta,k,n,p_max,lambda_min,residual"
    }
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.delta, self.k, self.n, self.p_max, self.lambda_min, self.residual
        )
    }
}

/// Smallest eigenvalue and its eigenvector.
pub fn lowest_eigenpair(form: &ChannelForm) -> Result<(f64, Vec<f64>)> {
    let n = form.n();
    let eig = symmetric_eigen(&form.matrix, n)?;
    let lambda = eig.values[0];
    let v: Vec<f64> = (0..n).map(|i| eig.vectors[i * n]).collect();
    Ok((lambda, v))
}

/// Smallest eigenvalue of the form with its residual report.
pub fn lowest_eigenvalue(form: &ChannelForm) -> Result<SpectralReport> {
    let (lambda, v) = lowest_eigenpair(form)?;
    let n = form.n();
    let m = &form.matrix;
    let mut resid = 0.0;
    for i in 0..n {
        let mut mv = 0.0;
        for j in 0..n {
            mv += m[i * n + j] * v[j];
        }
        let r = mv - lambda * v[i];
        resid += r * r;
    }
    let mnorm = m.iter().map(|x| x * x).sum::<f64>().sqrt();
    let residual = resid.sqrt() / mnorm;
    if residual > 1e-8 {
        return Err(Error::Eigen(format!(
            "eigen-residual {residual:.3e} exceeds the 1e-8 contract"
        )));
    }
    Ok(SpectralReport {
        delta: form.delta,
        k: form.channel.index(),
        n,
        p_max: form.grid.p_max(),
        lambda_min: lambda,
        residual,
    })
}

/// Rayleigh quotient (v^T M v) / (v^T v) of a trial vector in the
/// symmetrized variables.
pub fn rayleigh_quotient(form: &ChannelForm, samples: &[f64]) -> Result<f64> {
    let n = form.n();
    if samples.len() != n {
        return Err(Error::Domain(format!(
            "trial vector length {} does not match grid size {n}",
            samples.len()
        )));
    }
    let norm2: f64 = samples.iter().map(|x| x * x).sum();
    if norm2 == 0.0 {
        return Err(Error::Domain("zero trial vector".into()));
    }
    let m = &form.matrix;
    let mut quad = 0.0;
    for i in 0..n {
        let mut mv = 0.0;
        for j in 0..n {
            mv += m[i * n + j] * samples[j];
        }
        quad += samples[i] * mv;
    }
    Ok(quad / norm2)
}

/// Lowest eigenvalue per coupling, reusing one kernel assembly.
pub fn delta_sweep(grid: &RadialGrid, ch: Channel, deltas: &[f64]) -> Result<Vec<SpectralReport>> {
    if deltas.is_empty() {
        return Err(Error::Config("delta sweep needs at least one coupling".into()));
    }
    let parts = assemble_parts(grid, ch)?;
    deltas
        .iter()
        .map(|&d| lowest_eigenvalue(&ChannelForm::from_parts(grid, ch, d, &parts)?))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{build_radial_grid, MapKind};

    fn small_grid() -> RadialGrid {
        build_radial_grid(48, MapKind::Rational, 1e4).unwrap()
    }

    #[test]
    fn zero_coupling_is_diagonal_kinetic() {
        let g = small_grid();
        let form = assemble_form(&g, Channel::new(0), 0.0).unwrap();
        let n = g.len();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { energy_raw(g.nodes()[i]) } else { 0.0 };
                assert_eq!(form.matrix()[i * n + j], want);
            }
        }
        let rep = lowest_eigenvalue(&form).unwrap();
        let min_e = g.nodes().iter().map(|&p| energy_raw(p)).fold(f64::INFINITY, f64::min);
        assert!((rep.lambda_min - min_e).abs() < 1e-12);
        assert!(rep.lambda_min >= 1.0 && rep.lambda_min < 1.0 + 1e-6);
    }

    #[test]
    fn matrix_is_symmetric() {
        let g = small_grid();
        let form = assemble_form(&g, Channel::new(2), 0.3).unwrap();
        let n = form.n();
        for i in 0..n {
            for j in 0..n {
                let a = form.matrix()[i * n + j];
                let b = form.matrix()[j * n + i];
                assert!((a - b).abs() <= 1e-13 * a.abs().max(1.0));
            }
        }
    }

    #[test]
    fn lambda_min_nonincreasing_in_delta() {
        let g = small_grid();
        let reps = delta_sweep(&g, Channel::new(0), &[0.0, 0.1, 0.2, 0.3, 0.378]).unwrap();
        for w in reps.windows(2) {
            assert!(
                w[1].lambda_min <= w[0].lambda_min + 1e-12,
                "lambda_min increased between delta {} and {}",
                w[0].delta,
                w[1].delta
            );
        }
        assert!((reps[0].lambda_min - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rayleigh_of_eigenvector_is_lambda_and_bounds_hold() {
        let g = small_grid();
        let form = assemble_form(&g, Channel::new(0), 0.3).unwrap();
        let rep = lowest_eigenvalue(&form).unwrap();
        let (lambda, v) = lowest_eigenpair(&form).unwrap();
        assert!((rayleigh_quotient(&form, &v).unwrap() - lambda).abs() < 1e-10);
        assert!((lambda - rep.lambda_min).abs() < 1e-13);
        // Rayleigh principle on a few arbitrary vectors
        let n = form.n();
        for s in 0..5u64 {
            let v: Vec<f64> = (0..n)
                .map(|i| ((i as f64 + 1.3) * (s as f64 + 0.7)).sin())
                .collect();
            assert!(rayleigh_quotient(&form, &v).unwrap() >= lambda - 1e-10);
        }
        assert!(rayleigh_quotient(&form, &vec![0.0; n]).is_err());
    }

    #[test]
    fn sweep_rejects_empty_deltas() {
        let g = small_grid();
        assert!(delta_sweep(&g, Channel::new(0), &[]).is_err());
    }

    #[test]
    fn report_serializes_with_contract_keys() {
        let rep = SpectralReport {
            delta: 0.1,
            k: 0,
            n: 8,
            p_max: 1e4,
            lambda_min: 0.9,
            residual: 1e-12,
        };
        let json = serde_json::to_value(rep).unwrap();
        for key in ["delta", "k", "n", "p_max", "lambda_min", "residual"] {
            assert!(json.get(key).is_some(), "missing key {key}");
        }
        assert_eq!(SpectralReport::csv_header(), "delta,k,n,p_max,lambda_min,residual");
    }
}
