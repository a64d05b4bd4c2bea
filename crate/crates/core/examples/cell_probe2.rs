use br2d::quadrature::integrate_adaptive;
use br2d::specfun::q_half_ladder;

fn main() {
    // reproduce the inner integrand of the failing cell
    let (a, b) = (0.23977531807029098f64, 0.24997910047112865f64);
    let c = 0.5 * (a + b);
    let s_c = {
        // beta sum at the centre is 1 analytically
        1.0
    };
    let remainder = |p: f64, q: f64| -> f64 {
        let d = p - q;
        let u = d * d / (2.0 * p * q);
        let lq = match q_half_ladder(1, u) {
            Ok(v) => v,
            Err(e) => {
                println!("ladder failed at p={p:.17e} q={q:.17e} u={u:.3e}: {e}");
                return f64::NAN;
            }
        };
        let e = (p * p + 1.0).sqrt();
        let ep = (q * q + 1.0).sqrt();
        let b1 = 0.5 * ((e + 1.0) / e).sqrt() * ((ep + 1.0) / ep).sqrt();
        let b2 = 0.5 * (p / (e * (e + 1.0)).sqrt()) * (q / (ep * (ep + 1.0)).sqrt());
        b1 * lq[0] + b2 * lq[1] + s_c * d.abs().ln()
    };
    let _ = c;
    // try the inner integral at a few q values
    for q in [0.24, 0.2449, 0.2499, b - 1e-12] {
        let r = integrate_adaptive(|p| remainder(p, q), a, q, 1e-11);
        println!("q={q}: {:?}", r.map(|x| (x.value, x.error_estimate, x.evaluations)));
    }
}
