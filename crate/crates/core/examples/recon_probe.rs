use br2d::identities::{bump_profile, partial_wave_reconstruction};
use br2d::Channel;
use std::time::Instant;

fn main() {
    let profile = bump_profile(1.0, 2.0);
    let dc = br2d::critical_coupling().delta_c;
    for (k, delta) in [(0i32, dc), (2, 0.2)] {
        let t = Instant::now();
        let rep = partial_wave_reconstruction(Channel::new(k), profile, (1.0, 2.0), delta).unwrap();
        println!(
            "k={k} delta={delta:.3}: rel={:.3e} ratio={:.6} ({:?})",
            rep.rel_error,
            rep.parameters["ratio_vs_doubled"],
            t.elapsed()
        );
    }
}
