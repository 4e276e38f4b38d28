//! Concrete matrix representations of operator words.
//!
//! A representation assigns one dense Hermitian matrix per variable; a word
//! maps to the product of its letters and a polynomial to the matching
//! linear combination. Matrices are materialized at full Hilbert-space
//! dimension, so this is intended for small systems (a handful of qubits),
//! where it serves as the semantic referee for the rewrite layer.

use ncopt_algebra::{Monomial, Polynomial, VarKind, VariableTable};
use ncopt_linalg::{zmatmul, CMat};
use num_complex::Complex64;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// 2x2 Pauli matrices in the computational basis.
pub fn sigma_x() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = Complex64::new(1.0, 0.0);
    m[(1, 0)] = Complex64::new(1.0, 0.0);
    m
}

pub fn sigma_y() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 1)] = -I;
    m[(1, 0)] = I;
    m
}

pub fn sigma_z() -> CMat {
    let mut m = CMat::zeros(2, 2);
    m[(0, 0)] = Complex64::new(1.0, 0.0);
    m[(1, 1)] = Complex64::new(-1.0, 0.0);
    m
}

/// Dichotomic observable cos(theta) sigma_z + sin(theta) sigma_x.
pub fn dichotomic_at(theta: f64) -> CMat {
    let mut m = sigma_z();
    m.scale(Complex64::new(theta.cos(), 0.0));
    m.add_scaled(Complex64::new(theta.sin(), 0.0), &sigma_x());
    m
}

/// A variable-to-matrix assignment over a fixed Hilbert space.
pub struct MatrixRep {
    dim: usize,
    mats: Vec<Option<CMat>>,
}

impl MatrixRep {
    pub fn new(dim: usize, num_vars: usize) -> Self {
        MatrixRep { dim, mats: vec![None; num_vars] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Assigns variable `v`; the matrix must be `dim x dim`.
    pub fn assign(&mut self, v: u16, m: CMat) {
        assert_eq!(m.rows(), self.dim);
        assert_eq!(m.cols(), self.dim);
        self.mats[v as usize] = Some(m);
    }

    /// Standard qubit representation of a table of Pauli-site variables:
    /// sites are sorted and placed left to right in the tensor product.
    pub fn pauli_qubits(vars: &VariableTable) -> MatrixRep {
        let mut sites: Vec<u32> = vars
            .iter()
            .filter_map(|(_, v)| v.site)
            .collect();
        sites.sort_unstable();
        sites.dedup();
        let n = sites.len();
        let dim = 1usize << n;
        let mut rep = MatrixRep::new(dim, vars.len());
        for (id, var) in vars.iter() {
            let local = match var.kind {
                VarKind::PauliX => sigma_x(),
                VarKind::PauliY => sigma_y(),
                VarKind::PauliZ => sigma_z(),
                _ => continue,
            };
            let site = var.site.expect("Pauli variable without a site");
            let pos = sites.binary_search(&site).expect("site indexed above");
            let mut full = CMat::eye(1usize << pos);
            full = full.kron(&local);
            full = full.kron(&CMat::eye(1usize << (n - pos - 1)));
            rep.assign(id, full);
        }
        rep
    }

    /// Product of the letter matrices, identity for the empty word.
    pub fn word(&self, m: &Monomial) -> CMat {
        let mut out = CMat::eye(self.dim);
        for &v in m.as_slice() {
            let letter = self.mats[v as usize]
                .as_ref()
                .expect("word uses an unassigned variable");
            out = zmatmul(&out, letter);
        }
        out
    }

    /// Linear combination of word matrices.
    pub fn poly(&self, p: &Polynomial) -> CMat {
        let mut out = CMat::zeros(self.dim, self.dim);
        for (m, c) in p.iter() {
            out.add_scaled(*c, &self.word(m));
        }
        out
    }
}
