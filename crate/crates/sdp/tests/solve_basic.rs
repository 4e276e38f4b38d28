//! End-to-end checks of the model -> presolve -> interior-point pipeline on
//! problems with closed-form answers.

use approx::assert_abs_diff_eq;
use ncopt_sdp::{solve, PsdBlock, SdpModel, Sense, SolveOptions, SolveStatus};
use num_complex::Complex64;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

#[test]
fn scalar_lower_bound() {
    // min x s.t. x - 1 >= 0.
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("bound", 1);
    b.push(0, 0, x, re(1.0));
    b.push_constant(0, 0, re(-1.0));
    model.add_block(b);
    model.set_objective(vec![(x, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert_abs_diff_eq!(sol.primal_objective, 1.0, epsilon = 1e-7);
    assert_abs_diff_eq!(sol.dual_objective, 1.0, epsilon = 1e-7);
    assert_abs_diff_eq!(sol.var_values[x], 1.0, epsilon = 1e-7);
    assert!(sol.gap < 1e-7);
}

#[test]
fn maximize_with_objective_constant() {
    // max 3 - x s.t. x >= 1 attains 2 at x = 1.
    let mut model = SdpModel::new(Sense::Maximize);
    let x = model.new_var();
    let mut b = PsdBlock::new("bound", 1);
    b.push(0, 0, x, re(1.0));
    b.push_constant(0, 0, re(-1.0));
    model.add_block(b);
    model.set_objective(vec![(x, -1.0)], 3.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert_abs_diff_eq!(sol.primal_objective, 2.0, epsilon = 1e-7);
    assert_abs_diff_eq!(sol.var_values[x], 1.0, epsilon = 1e-7);
}

#[test]
fn equality_elimination_reconstructs_pinned_variable() {
    // min x s.t. x = y and y >= 1; y is eliminated and must be rebuilt.
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let y = model.new_var();
    let mut b = PsdBlock::new("bound", 1);
    b.push(0, 0, y, re(1.0));
    b.push_constant(0, 0, re(-1.0));
    model.add_block(b);
    model.add_equality(vec![(x, 1.0), (y, -1.0)], 0.0);
    model.set_objective(vec![(x, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert_abs_diff_eq!(sol.primal_objective, 1.0, epsilon = 1e-7);
    assert_abs_diff_eq!(sol.var_values[x], 1.0, epsilon = 1e-7);
    assert_abs_diff_eq!(sol.var_values[y], 1.0, epsilon = 1e-7);
}

#[test]
fn fully_determined_model_skips_the_solver() {
    // x pinned to 2 by an equality; the remaining block is constant PSD.
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("c", 1);
    b.push(0, 0, x, re(1.0));
    model.add_block(b);
    model.add_equality(vec![(x, 1.0)], 2.0);
    model.set_objective(vec![(x, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert_eq!(sol.iterations, 0);
    assert_abs_diff_eq!(sol.primal_objective, 2.0, epsilon = 1e-12);
    assert_abs_diff_eq!(sol.var_values[x], 2.0, epsilon = 1e-12);
}

#[test]
fn contradictory_equalities_are_infeasible() {
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("c", 1);
    b.push(0, 0, x, re(1.0));
    model.add_block(b);
    model.add_equality(vec![(x, 1.0)], 0.0);
    model.add_equality(vec![(x, 1.0)], 1.0);
    model.set_objective(vec![(x, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::PrimalInfeasible);
}

#[test]
fn negative_constant_block_is_infeasible() {
    // After pinning x = 1 the block becomes the constant -1.
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("c", 1);
    b.push(0, 0, x, re(1.0));
    b.push_constant(0, 0, re(-2.0));
    model.add_block(b);
    model.add_equality(vec![(x, 1.0)], 1.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::PrimalInfeasible);
}

#[test]
fn objective_along_unseen_variable_is_unbounded() {
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let y = model.new_var();
    let mut b = PsdBlock::new("c", 1);
    b.push(0, 0, x, re(1.0));
    model.add_block(b);
    model.set_objective(vec![(y, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::DualInfeasible);
}

#[test]
fn unbounded_ray_inside_the_cone_is_detected() {
    // min -x s.t. x >= 0 decreases without bound along the feasible ray.
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("c", 1);
    b.push(0, 0, x, re(1.0));
    model.add_block(b);
    model.set_objective(vec![(x, -1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::DualInfeasible);
}

#[test]
fn empty_interior_infeasible_lmi_is_detected() {
    // x >= 1 and -x >= 0 cannot hold together.
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("c", 2);
    b.push(0, 0, x, re(1.0));
    b.push_constant(0, 0, re(-1.0));
    b.push(1, 1, x, re(-1.0));
    model.add_block(b);
    model.set_objective(vec![(x, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::PrimalInfeasible);
}

#[test]
fn largest_eigenvalue_of_a_complex_hermitian_matrix() {
    // min t s.t. t I - H >= 0 equals lambda_max(H); exercises realification.
    let mut h = ncopt_linalg::CMat::zeros(3, 3);
    h[(0, 0)] = re(1.0);
    h[(1, 1)] = re(-0.5);
    h[(2, 2)] = re(0.25);
    h[(0, 1)] = Complex64::new(0.3, 0.7);
    h[(1, 0)] = h[(0, 1)].conj();
    h[(0, 2)] = Complex64::new(-0.2, 0.4);
    h[(2, 0)] = h[(0, 2)].conj();
    h[(1, 2)] = Complex64::new(0.0, -1.1);
    h[(2, 1)] = h[(1, 2)].conj();
    let lam_max = *ncopt_linalg::zeigh(&h).unwrap().0.last().unwrap();

    let mut model = SdpModel::new(Sense::Minimize);
    let t = model.new_var();
    let mut b = PsdBlock::new("resolvent", 3);
    for i in 0..3 {
        b.push(i, i, t, re(1.0));
        for j in i..3 {
            b.push_constant(i, j, -h[(i, j)]);
        }
    }
    model.add_block(b);
    model.set_objective(vec![(t, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert_abs_diff_eq!(sol.primal_objective, lam_max, epsilon = 1e-6);
    assert_abs_diff_eq!(sol.var_values[t], lam_max, epsilon = 1e-6);
}

#[test]
fn block_matrices_match_reported_variables() {
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let mut b = PsdBlock::new("c", 2);
    b.push(0, 0, x, re(1.0));
    b.push_constant(0, 1, Complex64::new(0.0, 0.5));
    b.push_constant(1, 1, re(1.0));
    b.push_constant(0, 0, re(-0.3));
    model.add_block(b);
    model.set_objective(vec![(x, 1.0)], 0.0);

    let sol = solve(&model, &SolveOptions::default());
    assert_eq!(sol.status, SolveStatus::Optimal);
    let m = &sol.block_matrices[0];
    assert_abs_diff_eq!(m[(0, 0)].re, sol.var_values[x] - 0.3, epsilon = 1e-12);
    assert_abs_diff_eq!(m[(0, 1)].im, 0.5, epsilon = 1e-12);
    assert_abs_diff_eq!(m[(1, 0)].im, -0.5, epsilon = 1e-12);
    // Feasible up to solver tolerance: lambda_min of a 2x2 Hermitian block.
    let evals = ncopt_linalg::zeigh(m).unwrap().0;
    assert!(evals[0] > -1e-6, "block not PSD: {evals:?}");
}
