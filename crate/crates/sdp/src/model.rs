//! Standard-form SDP model: named PSD blocks whose entries are affine forms
//! in a shared pool of real scalar variables, plus affine equality
//! constraints and a linear objective.
//!
//! Blocks store the upper triangle of a Hermitian affine matrix; the lower
//! triangle is implied by conjugate symmetry. Two cells that reference the
//! same variable with equal coefficients are therefore the same moment, which
//! is the property that makes a moment relaxation out of a bag of blocks.

use ncopt_linalg::CMat;
use num_complex::Complex64;

/// Handle of a scalar decision variable.
pub type SVar = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Minimize,
    Maximize,
}

/// One affine coefficient: block cell (row, col), row <= col, plus
/// `coeff * var` contribution.
#[derive(Debug, Clone, Copy)]
pub struct AffineEntry {
    pub row: u32,
    pub col: u32,
    pub var: SVar,
    pub coeff: Complex64,
}

#[derive(Debug, Clone)]
pub struct PsdBlock {
    pub name: String,
    pub dim: usize,
    pub entries: Vec<AffineEntry>,
    pub constants: Vec<(u32, u32, Complex64)>,
    /// All entries provably real: the block is embedded as-is instead of
    /// being doubled into [[Re, -Im], [Im, Re]].
    pub real_entries: bool,
}

impl PsdBlock {
    pub fn new(name: impl Into<String>, dim: usize) -> Self {
        PsdBlock {
            name: name.into(),
            dim,
            entries: Vec::new(),
            constants: Vec::new(),
            real_entries: true,
        }
    }

    /// Adds `coeff * var` to cell (i, j); callers pass the upper triangle.
    pub fn push(&mut self, i: usize, j: usize, var: SVar, coeff: Complex64) {
        assert!(i <= j && j < self.dim);
        if coeff == Complex64::new(0.0, 0.0) {
            return;
        }
        if coeff.im != 0.0 {
            self.real_entries = false;
        }
        self.entries.push(AffineEntry { row: i as u32, col: j as u32, var, coeff });
    }

    pub fn push_constant(&mut self, i: usize, j: usize, value: Complex64) {
        assert!(i <= j && j < self.dim);
        if value == Complex64::new(0.0, 0.0) {
            return;
        }
        if value.im != 0.0 {
            self.real_entries = false;
        }
        self.constants.push((i as u32, j as u32, value));
    }

    /// Adds `shift` to every diagonal cell.
    pub fn shift_diagonal(&mut self, shift: f64) {
        if shift == 0.0 {
            return;
        }
        for i in 0..self.dim {
            self.constants.push((i as u32, i as u32, Complex64::new(shift, 0.0)));
        }
    }

    /// Dense Hermitian evaluation at a variable assignment.
    pub fn evaluate(&self, values: &[f64]) -> CMat {
        let mut m = CMat::zeros(self.dim, self.dim);
        for &(i, j, c) in &self.constants {
            let (i, j) = (i as usize, j as usize);
            m[(i, j)] += c;
            if i != j {
                m[(j, i)] += c.conj();
            }
        }
        for e in &self.entries {
            let (i, j) = (e.row as usize, e.col as usize);
            let v = e.coeff * values[e.var];
            m[(i, j)] += v;
            if i != j {
                m[(j, i)] += v.conj();
            }
        }
        m
    }
}

/// Affine equality sum coeff * var = rhs over real variables.
#[derive(Debug, Clone)]
pub struct Equality {
    pub coeffs: Vec<(SVar, f64)>,
    pub rhs: f64,
}

#[derive(Debug, Clone, Default)]
pub struct LinearObjective {
    pub coeffs: Vec<(SVar, f64)>,
    pub constant: f64,
}

#[derive(Debug, Clone)]
pub struct SdpModel {
    pub num_vars: usize,
    pub blocks: Vec<PsdBlock>,
    pub equalities: Vec<Equality>,
    pub objective: LinearObjective,
    pub sense: Sense,
}

impl SdpModel {
    pub fn new(sense: Sense) -> Self {
        SdpModel {
            num_vars: 0,
            blocks: Vec::new(),
            equalities: Vec::new(),
            objective: LinearObjective::default(),
            sense,
        }
    }

    pub fn new_var(&mut self) -> SVar {
        self.num_vars += 1;
        self.num_vars - 1
    }

    pub fn add_block(&mut self, block: PsdBlock) -> usize {
        debug_assert!(block.entries.iter().all(|e| e.var < self.num_vars));
        self.blocks.push(block);
        self.blocks.len() - 1
    }

    pub fn add_equality(&mut self, coeffs: Vec<(SVar, f64)>, rhs: f64) {
        self.equalities.push(Equality { coeffs, rhs });
    }

    pub fn set_objective(&mut self, coeffs: Vec<(SVar, f64)>, constant: f64) {
        self.objective = LinearObjective { coeffs, constant };
    }

    /// Restricts the feasible set to the optimal face by fixing the current
    /// objective form to `value` (in model units, including the constant).
    pub fn pin_objective(&mut self, value: f64) {
        let row = self.objective.coeffs.clone();
        self.add_equality(row, value - self.objective.constant);
    }

    pub fn block(&self, idx: usize) -> &PsdBlock {
        &self.blocks[idx]
    }

    /// Total PSD dimension across blocks, before realification.
    pub fn total_dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim).sum()
    }
}
