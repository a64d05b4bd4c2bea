use br2d::kernel::{channel_kernel, energy_raw, Channel, Momentum};
use br2d::quadrature::{build_radial_grid, integrate_adaptive, integrate_adaptive_split, MapKind};
use br2d::spectral::{assemble_form, rayleigh_quotient};

fn main() {
    let delta_c = 0.378016639464455749f64;
    // continuous form value for f(p) = e^{-p}:
    // kin = int e(p) e^{-2p}, pot = (d/pi) int int e^{-p} e^{-q} K_0(p,q)
    let kin = integrate_adaptive(|p| energy_raw(p) * (-2.0 * p).exp(), 0.0, 60.0, 1e-12)
        .unwrap()
        .value;
    let pot_inner = |q: f64| {
        integrate_adaptive_split(
            |p| (-p).exp() * channel_kernel(Channel::new(0), Momentum::new(p).unwrap(), Momentum::new(q).unwrap()).unwrap_or(f64::NAN),
            0.0,
            60.0,
            &[q],
            1e-9,
        )
        .map(|r| r.value)
        .map_err(|e| { println!("inner fail at q={q:e}: {e}"); e })
        .unwrap_or(f64::NAN)
    };
    let pot = integrate_adaptive(|q| (-q).exp() * pot_inner(q), 0.0, 60.0, 1e-8)
        .unwrap()
        .value
        * delta_c
        / std::f64::consts::PI;
    let norm = integrate_adaptive(|p| (-2.0 * p).exp(), 0.0, 60.0, 1e-12).unwrap().value;
    let continuum = (kin - pot) / norm;
    println!("continuum: kin={kin:.10} pot={pot:.10} R={continuum:.10}");

    for n in [200usize, 400] {
        let grid = build_radial_grid(n, MapKind::Rational, 1e4).unwrap();
        let form = assemble_form(&grid, Channel::new(0), delta_c).unwrap();
        let v: Vec<f64> = grid
            .nodes()
            .iter()
            .zip(grid.weights())
            .map(|(&p, &w)| w.sqrt() * (-p).exp())
            .collect();
        let rq = rayleigh_quotient(&form, &v).unwrap();
        println!(
            "n={n}: discrete R={rq:.10} rel diff={:.3e}",
            (rq - continuum).abs() / continuum.abs()
        );
    }
}
