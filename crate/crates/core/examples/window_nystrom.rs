use br2d::kernel::Channel;
use br2d::quadrature::{build_radial_grid, MapKind};
use br2d::spectral::{assemble_form, rayleigh_quotient};
use br2d::unbounded::{trial_form_value, TrialWindow};

fn main() {
    // discrete image of the window trial function chi_(50,5000)/p
    let grid = build_radial_grid(400, MapKind::Rational, 1e4).unwrap();
    let form = assemble_form(&grid, Channel::new(0), 0.5).unwrap();
    let v: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(grid.weights())
        .map(|(&p, &w)| {
            if (50.0..=5000.0).contains(&p) {
                w.sqrt() / p
            } else {
                0.0
            }
        })
        .collect();
    let norm2: f64 = v.iter().map(|x| x * x).sum();
    let rq = rayleigh_quotient(&form, &v).unwrap();
    println!("nystrom form value = {:.6} (norm2 {:.6e})", rq * norm2, norm2);
    let row = trial_form_value(TrialWindow::new(50.0, 5000.0).unwrap(), 0.5, 1e-7).unwrap();
    println!("continuous         = {:.6} (norm2 {:.6e})", row.form_value, row.norm_sq);
}
