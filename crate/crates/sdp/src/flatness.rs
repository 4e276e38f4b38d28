//! Rank-loop (flatness) detection on moment matrices.
//!
//! A level is exact when the moment matrix has the same numeric rank as its
//! leading principal submatrix one degree down. Plain interior-point
//! solutions land near the analytic center of the optimal face, which
//! inflates ranks; when the plain check fails, [`refine_flatness`] re-solves
//! over the optimal face (objective pinned) minimizing `tr(W M)` with
//! reweighted `W = (M + delta I)^-1`, which drives the face towards a
//! minimum-rank point without ever leaving the set of optimizers. A rank
//! loop reported after probing is therefore exhibited by an actual optimal
//! moment vector, while a level that is not exact admits no flat optimizer
//! at all, so probing cannot manufacture a false positive.

use ncopt_linalg::{zeigh, CMat};
use num_complex::Complex64;

use crate::model::{SdpModel, Sense};
use crate::{solve, SdpSolution, SolveOptions, SolveStatus};

#[derive(Debug, Clone)]
pub struct FlatnessReport {
    pub rank_full: usize,
    pub rank_sub: usize,
    /// Eigenvalues (ascending) of the full moment block and the submatrix.
    pub spectrum_full: Vec<f64>,
    pub spectrum_sub: Vec<f64>,
    /// Relative threshold: an eigenvalue counts towards the rank when it
    /// exceeds tol * max eigenvalue of the full block.
    pub tol: f64,
    pub verdict: bool,
    /// Number of reweighted re-solves taken (0 = plain check).
    pub probe_passes: usize,
}

pub const DEFAULT_RANK_TOL: f64 = 1e-6;

fn hermitian_spectrum(m: &CMat) -> Vec<f64> {
    zeigh(m).expect("Hermitian eigensolve failed").0
}

fn principal_submatrix(m: &CMat, k: usize) -> CMat {
    let mut out = CMat::zeros(k, k);
    for j in 0..k {
        for i in 0..k {
            out[(i, j)] = m[(i, j)];
        }
    }
    out
}

/// Compares numeric ranks of a Hermitian PSD block and its order-`sub_dim`
/// leading principal submatrix at a shared relative threshold.
pub fn check_rank_loop(block: &CMat, sub_dim: usize, tol: f64) -> FlatnessReport {
    assert!(sub_dim <= block.rows());
    let spectrum_full = hermitian_spectrum(block);
    let spectrum_sub = hermitian_spectrum(&principal_submatrix(block, sub_dim));
    let scale = spectrum_full.last().copied().unwrap_or(0.0).abs().max(f64::MIN_POSITIVE);
    let cut = tol * scale;
    let rank_full = spectrum_full.iter().filter(|&&e| e.abs() > cut).count();
    let rank_sub = spectrum_sub.iter().filter(|&&e| e.abs() > cut).count();
    FlatnessReport {
        rank_full,
        rank_sub,
        spectrum_full,
        spectrum_sub,
        tol,
        verdict: rank_full == rank_sub,
        probe_passes: 0,
    }
}

#[derive(Debug, Clone)]
pub struct ProbeOptions {
    pub max_passes: usize,
    /// First reweighting ridge, relative to the largest eigenvalue.
    pub delta_rel: f64,
    /// Multiplicative ridge decay per pass.
    pub shrink: f64,
    pub rank_tol: f64,
    pub solve: SolveOptions,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        ProbeOptions {
            max_passes: 8,
            delta_rel: 1e-1,
            shrink: 1e-1,
            rank_tol: DEFAULT_RANK_TOL,
            solve: SolveOptions::default(),
        }
    }
}

/// Linear objective tr(W . block(t)) over the model variables, for
/// Hermitian W. Constant entries only shift the value and are dropped.
fn weighted_trace_objective(model: &SdpModel, block_index: usize, w: &CMat) -> Vec<(usize, f64)> {
    let block = &model.blocks[block_index];
    let mut coeffs: std::collections::BTreeMap<usize, f64> = std::collections::BTreeMap::new();
    for e in &block.entries {
        let (i, j) = (e.row as usize, e.col as usize);
        // Cell (i,j) carries coeff*t and its mirror conj(coeff)*t.
        let contrib = if i == j {
            (w[(j, i)] * e.coeff).re
        } else {
            2.0 * (w[(j, i)] * e.coeff).re
        };
        if contrib != 0.0 {
            *coeffs.entry(e.var).or_insert(0.0) += contrib;
        }
    }
    coeffs.into_iter().collect()
}

fn reweight(m: &CMat, delta: f64) -> CMat {
    let (evals, vecs) = zeigh(m).expect("Hermitian eigensolve failed");
    let n = m.rows();
    // W = V diag(1/(lam + delta)) V^dagger, eigenvalues clipped at zero.
    let mut w = CMat::zeros(n, n);
    for k in 0..n {
        let f = 1.0 / (evals[k].max(0.0) + delta);
        for j in 0..n {
            for i in 0..n {
                w[(i, j)] += vecs[(i, k)] * vecs[(j, k)].conj() * Complex64::new(f, 0.0);
            }
        }
    }
    w
}

/// Plain rank-loop check, escalating to optimal-face reweighting when the
/// plain verdict is negative. Returns the report of the first pass that
/// certifies a loop, or the final pass.
pub fn refine_flatness(
    model: &SdpModel,
    block_index: usize,
    sub_dim: usize,
    base: &SdpSolution,
    opts: &ProbeOptions,
) -> FlatnessReport {
    let block_at = |values: &[f64]| model.blocks[block_index].evaluate(values);
    let mut m = block_at(&base.var_values);
    let mut report = check_rank_loop(&m, sub_dim, opts.rank_tol);
    if report.verdict {
        return report;
    }

    let mut pinned = model.clone();
    pinned.pin_objective(base.primal_objective);
    pinned.sense = Sense::Minimize;

    let mut delta_rel = opts.delta_rel;
    for pass in 1..=opts.max_passes {
        let scale = hermitian_spectrum(&m).last().copied().unwrap_or(1.0).max(1e-12);
        let w = reweight(&m, delta_rel * scale);
        let obj = weighted_trace_objective(&pinned, block_index, &w);
        pinned.set_objective(obj, 0.0);
        let sol = solve(&pinned, &opts.solve);
        match sol.status {
            SolveStatus::Optimal | SolveStatus::NearOptimal => {}
            _ => break,
        }
        m = block_at(&sol.var_values);
        report = check_rank_loop(&m, sub_dim, opts.rank_tol);
        report.probe_passes = pass;
        if report.verdict {
            return report;
        }
        delta_rel *= opts.shrink;
    }
    report
}
