//! Two-qubit Bell operators at fixed measurement settings.

use ncopt_linalg::{zeigh, CMat};
use num_complex::Complex64;

use crate::pauli::dichotomic_at;

/// Bell operator sum_xy c[x][y] A_x (x) B_y + sum_x d[x] A_x (x) 1
/// + sum_y e[y] 1 (x) B_y with A_x, B_y the dichotomic observables at the
/// given Bloch angles.
pub fn bell_operator(
    c: &[Vec<f64>],
    d: &[f64],
    e: &[f64],
    angles_a: &[f64],
    angles_b: &[f64],
) -> CMat {
    let a_ops: Vec<CMat> = angles_a.iter().map(|&t| dichotomic_at(t)).collect();
    let b_ops: Vec<CMat> = angles_b.iter().map(|&t| dichotomic_at(t)).collect();
    let id = CMat::eye(2);
    let mut op = CMat::zeros(4, 4);
    for (x, row) in c.iter().enumerate() {
        for (y, &cxy) in row.iter().enumerate() {
            op.add_scaled(Complex64::new(cxy, 0.0), &a_ops[x].kron(&b_ops[y]));
        }
    }
    for (x, &dx) in d.iter().enumerate() {
        op.add_scaled(Complex64::new(dx, 0.0), &a_ops[x].kron(&id));
    }
    for (y, &ey) in e.iter().enumerate() {
        op.add_scaled(Complex64::new(ey, 0.0), &id.kron(&b_ops[y]));
    }
    op
}

/// Largest eigenvalue of the Bell operator: the best value qubit strategies
/// at these settings achieve.
pub fn bell_value(
    c: &[Vec<f64>],
    d: &[f64],
    e: &[f64],
    angles_a: &[f64],
    angles_b: &[f64],
) -> f64 {
    let op = bell_operator(c, d, e, angles_a, angles_b);
    let (evals, _) = zeigh(&op).expect("Hermitian eigensolve failed");
    evals[evals.len() - 1]
}

/// CHSH at the standard optimal settings; equals 2 sqrt(2).
pub fn chsh_quantum_value() -> f64 {
    use std::f64::consts::PI;
    let c = vec![vec![1.0, 1.0], vec![1.0, -1.0]];
    bell_value(&c, &[0.0; 2], &[0.0; 2], &[0.0, PI / 2.0], &[PI / 4.0, -PI / 4.0])
}
