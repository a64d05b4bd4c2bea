use br2d::kernel::Channel;
use br2d::quadrature::{build_radial_grid, kernel_cell_self_integral, MapKind};

fn main() {
    let grid = build_radial_grid(200, MapKind::Rational, 1e4).unwrap();
    for i in 0..grid.len() {
        let (a, b) = grid.cell(i).unwrap();
        match kernel_cell_self_integral(Channel::new(0), a, b, 1e-7) {
            Ok(_) => {}
            Err(e) => {
                println!("cell {i}: [{a:.6e}, {b:.6e}] node={:.6e} w={:.6e} -> {e}", grid.nodes()[i], grid.weights()[i]);
            }
        }
    }
    println!("done");
}
