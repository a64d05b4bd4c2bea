use br2d::kernel::Channel;
use br2d::quadrature::{build_radial_grid, MapKind};
use br2d::spectral::{assemble_parts, lowest_eigenvalue, ChannelForm};
use std::time::Instant;

fn main() {
    let delta_c = 0.378016639464455749;
    for n in [100usize, 200, 400] {
        let t0 = Instant::now();
        let grid = build_radial_grid(n, MapKind::Rational, 1e4).unwrap();
        let parts = assemble_parts(&grid, Channel::new(0)).unwrap();
        let t_asm = t0.elapsed();
        for delta in [0.0, 0.1, 0.2, 0.3, delta_c] {
            let t1 = Instant::now();
            let form = ChannelForm::from_parts(&grid, Channel::new(0), delta, &parts).unwrap();
            let rep = lowest_eigenvalue(&form).unwrap();
            println!(
                "n={n} delta={delta:.6} lambda_min={:.8} (floor {:.8}) residual={:.2e} asm={:?} eig={:?}",
                rep.lambda_min,
                1.0 - 2.0 * delta,
                rep.residual,
                t_asm,
                t1.elapsed()
            );
        }
    }
}
