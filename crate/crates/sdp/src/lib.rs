//! Standard-form SDP toolbox: model container, reduction to LMI form, an
//! embedded homogeneous self-dual interior-point solver, SDPA sparse
//! interchange, and rank-loop detection on moment blocks.

pub mod flatness;
pub mod hsde;
pub mod model;
pub mod presolve;
pub mod sdpa;

use ncopt_linalg::{CMat, Mat};
use thiserror::Error;

pub use flatness::{check_rank_loop, refine_flatness, FlatnessReport, ProbeOptions, DEFAULT_RANK_TOL};
pub use model::{AffineEntry, Equality, LinearObjective, PsdBlock, SVar, SdpModel, Sense};
pub use presolve::{reduce, LmiBlock, Reduced, ReduceError};
pub use sdpa::{import_sdpa_result, parse_sdpa, SdpaProblem};

#[derive(Debug, Error)]
pub enum SdpError {
    #[error("parse error: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    NearOptimal,
    PrimalInfeasible,
    DualInfeasible,
    NumericalFailure,
}

impl SolveStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolveStatus::Optimal => "optimal",
            SolveStatus::NearOptimal => "near-optimal",
            SolveStatus::PrimalInfeasible => "primal-infeasible",
            SolveStatus::DualInfeasible => "dual-infeasible",
            SolveStatus::NumericalFailure => "numerical-failure",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    pub gap_tol: f64,
    pub feas_tol: f64,
    pub max_iters: usize,
    pub verbose: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions { gap_tol: 1e-8, feas_tol: 1e-8, max_iters: 200, verbose: false }
    }
}

#[derive(Debug, Clone)]
pub struct SdpSolution {
    pub status: SolveStatus,
    /// Objective at the primal iterate, in model units and model sense.
    pub primal_objective: f64,
    /// Dual bound in model units: for a minimization this certifies
    /// objective >= dual_objective.
    pub dual_objective: f64,
    /// Relative duality gap reported by the solver.
    pub gap: f64,
    /// Values of every model variable (eliminated ones reconstructed).
    pub var_values: Vec<f64>,
    /// Model blocks evaluated at `var_values`.
    pub block_matrices: Vec<CMat>,
    /// Dual matrices of the reduced (realified, split) blocks.
    pub dual_blocks: Vec<Mat>,
    pub iterations: usize,
    pub primal_residual: f64,
    pub dual_residual: f64,
    pub detail: String,
}

impl SdpSolution {
    fn bare(status: SolveStatus, detail: String) -> Self {
        SdpSolution {
            status,
            primal_objective: f64::NAN,
            dual_objective: f64::NAN,
            gap: f64::NAN,
            var_values: Vec::new(),
            block_matrices: Vec::new(),
            dual_blocks: Vec::new(),
            iterations: 0,
            primal_residual: f64::NAN,
            dual_residual: f64::NAN,
            detail,
        }
    }
}

/// Reduces and solves the model with the embedded interior-point method.
pub fn solve(model: &SdpModel, opts: &SolveOptions) -> SdpSolution {
    let red = match presolve::reduce(model) {
        Ok(r) => r,
        Err(ReduceError::Infeasible(why)) => {
            return SdpSolution::bare(SolveStatus::PrimalInfeasible, format!("presolve: {why}"));
        }
        Err(ReduceError::Unbounded(why)) => {
            return SdpSolution::bare(SolveStatus::DualInfeasible, format!("presolve: {why}"));
        }
    };

    if red.num_params == 0 {
        // Everything was pinned by equalities; constant feasibility was
        // verified during reduction.
        let var_values = red.reconstruct(&[], model.num_vars);
        let obj = red.model_objective(0.0);
        let block_matrices = model.blocks.iter().map(|b| b.evaluate(&var_values)).collect();
        return SdpSolution {
            status: SolveStatus::Optimal,
            primal_objective: obj,
            dual_objective: obj,
            gap: 0.0,
            var_values,
            block_matrices,
            dual_blocks: Vec::new(),
            iterations: 0,
            primal_residual: 0.0,
            dual_residual: 0.0,
            detail: "fully determined by equalities".into(),
        };
    }

    let hopts = hsde::HsdeOptions {
        tol_gap: opts.gap_tol,
        tol_feas: opts.feas_tol,
        reduced_tol: 1e-6,
        max_iter: opts.max_iters,
        infeas_tol: 1e-8,
        verbose: opts.verbose,
    };
    let res = hsde::solve_lmi(&red.c, &red.blocks, &hopts);
    let status = match res.status {
        hsde::HsdeStatus::Optimal => SolveStatus::Optimal,
        hsde::HsdeStatus::ReducedAccuracy => SolveStatus::NearOptimal,
        hsde::HsdeStatus::Stalled | hsde::HsdeStatus::MaxIter | hsde::HsdeStatus::NumericalError => {
            SolveStatus::NumericalFailure
        }
        hsde::HsdeStatus::PrimalInfeasible => SolveStatus::PrimalInfeasible,
        hsde::HsdeStatus::DualInfeasible => SolveStatus::DualInfeasible,
    };
    let detail = format!("ipm {:?} after {} iterations", res.status, res.iters);

    if res.t.is_empty() {
        let mut sol = SdpSolution::bare(status, detail);
        sol.iterations = res.iters;
        return sol;
    }

    let var_values = red.reconstruct(&res.t, model.num_vars);
    let block_matrices = model.blocks.iter().map(|b| b.evaluate(&var_values)).collect();
    SdpSolution {
        status,
        primal_objective: red.model_objective(res.pobj),
        dual_objective: red.model_objective(res.dobj),
        gap: res.relgap,
        var_values,
        block_matrices,
        dual_blocks: res.z_blocks,
        iterations: res.iters,
        primal_residual: res.pres,
        dual_residual: res.dres,
        detail,
    }
}

/// Serializes the model in SDPA sparse format after reduction.
pub fn export_sdpa(model: &SdpModel) -> Result<String, SdpError> {
    match presolve::reduce(model) {
        Ok(red) => Ok(sdpa::export_sdpa(&red)),
        Err(e) => Err(SdpError::Parse(format!("model not exportable: {e:?}"))),
    }
}

/// Solves a parsed SDPA problem with the embedded solver; used for
/// round-trip validation.
pub fn solve_sdpa_problem(prob: &SdpaProblem, opts: &SolveOptions) -> SdpSolution {
    let hopts = hsde::HsdeOptions {
        tol_gap: opts.gap_tol,
        tol_feas: opts.feas_tol,
        reduced_tol: 1e-6,
        max_iter: opts.max_iters,
        infeas_tol: 1e-8,
        verbose: opts.verbose,
    };
    let res = hsde::solve_lmi(&prob.c, &prob.blocks, &hopts);
    let status = match res.status {
        hsde::HsdeStatus::Optimal => SolveStatus::Optimal,
        hsde::HsdeStatus::ReducedAccuracy => SolveStatus::NearOptimal,
        hsde::HsdeStatus::Stalled | hsde::HsdeStatus::MaxIter | hsde::HsdeStatus::NumericalError => {
            SolveStatus::NumericalFailure
        }
        hsde::HsdeStatus::PrimalInfeasible => SolveStatus::PrimalInfeasible,
        hsde::HsdeStatus::DualInfeasible => SolveStatus::DualInfeasible,
    };
    let sign = if prob.maximize { -1.0 } else { 1.0 };
    SdpSolution {
        status,
        primal_objective: sign * res.pobj + prob.obj_const,
        dual_objective: sign * res.dobj + prob.obj_const,
        gap: res.relgap,
        var_values: res.t,
        block_matrices: Vec::new(),
        dual_blocks: res.z_blocks,
        iterations: res.iters,
        primal_residual: res.pres,
        dual_residual: res.dres,
        detail: format!("ipm {:?}", res.status),
    }
}
