use br2d::quadrature::integrate_adaptive;
use br2d::specfun::q_half_ladder;

fn main() {
    let (a, b) = (0.23977531807029098f64, 0.24997910047112865f64);
    let remainder = |p: f64, q: f64| -> f64 {
        let d = p - q;
        let u = d * d / (2.0 * p * q);
        let lq = match q_half_ladder(1, u) {
            Ok(v) => v,
            Err(e) => {
                println!("ladder failed p={p:.17e} q={q:.17e} u={u:.3e}: {e}");
                return f64::NAN;
            }
        };
        let e = (p * p + 1.0).sqrt();
        let ep = (q * q + 1.0).sqrt();
        let b1 = 0.5 * ((e + 1.0) / e).sqrt() * ((ep + 1.0) / ep).sqrt();
        let b2 = 0.5 * (p / (e * (e + 1.0)).sqrt()) * (q / (ep * (ep + 1.0)).sqrt());
        b1 * lq[0] + b2 * lq[1] + d.abs().ln()
    };
    let outer = integrate_adaptive(
        |q| match integrate_adaptive(|p| remainder(p, q), a, q, 1e-11) {
            Ok(r) => r.value,
            Err(e) => {
                println!("INNER FAILED at q={q:.17e}: {e}");
                f64::NAN
            }
        },
        a,
        b,
        1e-11,
    );
    println!("outer: {:?}", outer.map(|r| (r.value, r.evaluations)));
}
