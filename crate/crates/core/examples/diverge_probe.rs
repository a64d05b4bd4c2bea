use br2d::unbounded::{divergence_demo, fit_slope, trial_form_value, TrialWindow};
use std::time::Instant;

fn main() {
    let t0 = Instant::now();
    let rows = divergence_demo(0.5, 50.0, &[5e3, 5e4, 5e5]).unwrap();
    for r in &rows {
        println!("b={:.0e} form={:.6} norm={:.6e}", r.b, r.form_value, r.norm_sq);
    }
    let slope = fit_slope(&rows);
    let dc = br2d::critical_coupling().delta_c;
    println!(
        "slope {:.4} vs bound {:.4}  ({:?})",
        slope,
        1.0 - 0.5 / dc * (1.0 - 2.0 / 50.0) + 0.05,
        t0.elapsed()
    );
    let t1 = Instant::now();
    let w = TrialWindow::new(5.0, 120.0).unwrap();
    let r = trial_form_value(w, 0.3, 1e-6).unwrap();
    println!("subcritical probe: {:.8} ({:?})", r.form_value, t1.elapsed());
}
