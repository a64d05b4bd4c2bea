use br2d::specfun::q_half_ladder;

fn main() {
    for u in [1e-20f64, 8e-29, 1e-29, 4.9e-32, 1e-300] {
        match q_half_ladder(1, u) {
            Ok(q) => println!("u={u:.2e}: Q-1/2={:.12} Q1/2={:.12}", q[0], q[1]),
            Err(e) => println!("u={u:.2e}: ERR {e}"),
        }
    }
}
