use br2d::quadrature::integrate_adaptive;

fn main() {
    for u in [2.013e-14f64, 2e-14, 1e-12] {
        let t = 1.0 + u;
        let root = (u * (2.0 + u)).sqrt();
        let s = 1.0 / (t + root);
        let s2 = s * s;
        for k in [1i32, 2] {
            let r = integrate_adaptive(
                move |th: f64| {
                    let sn = th.sin();
                    (sn * sn).powi(k) / (1.0 - s2 * sn * sn).sqrt()
                },
                0.0,
                std::f64::consts::FRAC_PI_2,
                1e-13,
            );
            match r {
                Ok(r) => println!(
                    "u={u:.4e} k={k}: value={:.15} est={:.2e} evals={}",
                    r.value, r.error_estimate, r.evaluations
                ),
                Err(e) => println!("u={u:.4e} k={k}: ERR {e}"),
            }
        }
    }
}
