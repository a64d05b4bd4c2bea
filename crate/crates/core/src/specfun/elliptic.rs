//! Complete elliptic integrals K(m), E(m) by the arithmetic-geometric mean.
//!
//! Parameter convention m = k^2 (modulus squared).  These serve as the
//! independent cross-check oracle for the Legendre-Q evaluation path and the
//! angular integrals; production code paths do not route through them.

use std::f64::consts::PI;

const MAX_ITER: usize = 40;

/// K(m) = int_0^{pi/2} (1 - m sin^2 t)^{-1/2} dt for 0 <= m < 1.
pub fn ellipk(m: f64) -> f64 {
    if !(0.0..1.0).contains(&m) {
        return f64::NAN;
    }
    if m == 0.0 {
        return PI / 2.0;
    }
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    for _ in 0..MAX_ITER {
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= f64::EPSILON * an {
            return PI / (2.0 * an);
        }
        a = an;
        b = bn;
    }
    PI / (2.0 * a)
}

/// E(m) = int_0^{pi/2} (1 - m sin^2 t)^{1/2} dt for 0 <= m <= 1.
pub fn ellipe(m: f64) -> f64 {
    if !(0.0..=1.0).contains(&m) {
        return f64::NAN;
    }
    if m == 0.0 {
        return PI / 2.0;
    }
    if m == 1.0 {
        return 1.0;
    }
    let mut a = 1.0f64;
    let mut b = (1.0 - m).sqrt();
    let mut c2_sum = m; // c_0^2 with c_0 = sqrt(m)
    let mut pow2 = 1.0;
    for _ in 0..MAX_ITER {
        let c = 0.5 * (a - b);
        let an = 0.5 * (a + b);
        let bn = (a * b).sqrt();
        pow2 *= 2.0;
        c2_sum += pow2 * c * c;
        if c.abs() <= f64::EPSILON * an {
            return PI / (2.0 * an) * (1.0 - 0.5 * c2_sum);
        }
        a = an;
        b = bn;
    }
    PI / (2.0 * a) * (1.0 - 0.5 * c2_sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reference_values() {
        assert!((ellipk(0.0) - PI / 2.0).abs() < 1e-15);
        assert!((ellipk(0.5) - 1.854_074_677_301_372).abs() < 1e-13);
        assert!((ellipe(0.5) - 1.350_643_881_047_675_5).abs() < 1e-13);
        assert!((ellipe(1.0) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn legendre_relation() {
        // E K' + E' K - K K' = pi/2
        for &m in &[0.1, 0.35, 0.62, 0.9] {
            let k = ellipk(m);
            let e = ellipe(m);
            let kp = ellipk(1.0 - m);
            let ep = ellipe(1.0 - m);
            assert!((e * kp + ep * k - k * kp - PI / 2.0).abs() < 1e-12);
        }
    }
}
