//! Hand-assembled pullback of the P¹ kernel and a tensor-product quadrature.

use std::f64::consts::PI;

use num_complex::Complex64 as C;

fn det3(m: [[C; 3]; 3]) -> C {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Pullback of `ω` for P¹ at `ζ = 0`, assembled by hand.
///
/// Parameters are `(t, θ1, θ2)` with `r2 = t`, `r1 = 1 - t`,
/// `h = z2 dz1 - z1 dz2` and `g = |z1|^4 + |z2|^4`.
pub fn p1_hand_integrand(t: f64, th1: f64, th2: f64) -> C {
    let i = C::i();
    let e1 = C::from_polar(1.0, th1);
    let e2 = C::from_polar(1.0, th2);
    let z1 = (1.0 - t).sqrt() * e1;
    let z2 = t.sqrt() * e2;
    let dz1 = [-e1 / (2.0 * (1.0 - t).sqrt()), i * z1, C::new(0.0, 0.0)];
    let dz2 = [e2 / (2.0 * t.sqrt()), C::new(0.0, 0.0), i * z2];
    let conj = |v: [C; 3]| [v[0].conj(), v[1].conj(), v[2].conj()];
    let num = z2.conj() * det3([conj(dz1), dz1, dz2]) - z1.conj() * det3([conj(dz2), dz1, dz2]);
    num / (z1.norm_sqr().powi(2) + z2.norm_sqr().powi(2))
}

/// Midpoint rule with `k` points per axis over `(0,1) x (0,2π)^2`.
pub fn p1_quadrature(k: usize) -> C {
    let (ht, ha) = (1.0 / k as f64, 2.0 * PI / k as f64);
    let mut acc = C::new(0.0, 0.0);
    for a in 0..k {
        let t = (a as f64 + 0.5) * ht;
        for b in 0..k {
            let th1 = (b as f64 + 0.5) * ha;
            for c in 0..k {
                acc += p1_hand_integrand(t, th1, (c as f64 + 0.5) * ha);
            }
        }
    }
    acc * ht * ha * ha
}
