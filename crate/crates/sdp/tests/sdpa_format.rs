//! SDPA sparse-format interchange: golden export layout, structural
//! round-trips, value-level round-trips through the solver, and result-file
//! import.

use ncopt_sdp::{
    import_sdpa_result, parse_sdpa, presolve, solve, solve_sdpa_problem, PsdBlock, SdpModel,
    Sense, SolveOptions, SolveStatus,
};
use num_complex::Complex64;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// min x + 2y + 1/4 s.t. [[x, 1/2], [1/2, y]] >= 0, x >= 1.
fn fixture_model() -> SdpModel {
    let mut model = SdpModel::new(Sense::Minimize);
    let x = model.new_var();
    let y = model.new_var();
    let mut b = PsdBlock::new("m", 2);
    b.push(0, 0, x, re(1.0));
    b.push(1, 1, y, re(1.0));
    b.push_constant(0, 1, re(0.5));
    model.add_block(b);
    let mut g = PsdBlock::new("g", 1);
    g.push(0, 0, x, re(1.0));
    g.push_constant(0, 0, re(-1.0));
    model.add_block(g);
    model.set_objective(vec![(x, 1.0), (y, 2.0)], 0.25);
    model
}

const FIXTURE_DAT_S: &str = "\
* objective constant 0.25
* sense minimize
2
2
2 1
1.0 2.0
0 1 1 2 -0.5
1 1 1 1 1.0
2 1 2 2 1.0
0 2 1 1 1.0
1 2 1 1 1.0
";

#[test]
fn export_matches_the_canonical_layout() {
    let text = ncopt_sdp::export_sdpa(&fixture_model()).unwrap();
    assert_eq!(text, FIXTURE_DAT_S);
}

#[test]
fn parse_reproduces_the_reduced_structure() {
    let model = fixture_model();
    let red = presolve::reduce(&model).unwrap();
    let prob = parse_sdpa(&ncopt_sdp::export_sdpa(&model).unwrap()).unwrap();

    assert_eq!(prob.num_params, red.num_params);
    assert_eq!(prob.c, red.c);
    assert_eq!(prob.obj_const, red.obj_const);
    assert_eq!(prob.maximize, red.maximize);
    assert_eq!(prob.blocks.len(), red.blocks.len());
    for (pb, rb) in prob.blocks.iter().zip(&red.blocks) {
        assert_eq!(pb.dim, rb.dim);
        assert_eq!(pb.f0.data(), rb.f0.data());
        let mut pe: Vec<_> = (0..pb.idx.len()).map(|e| (pb.idx[e], pb.pp[e], pb.qq[e], pb.vv[e])).collect();
        let mut re_: Vec<_> = (0..rb.idx.len()).map(|e| (rb.idx[e], rb.pp[e], rb.qq[e], rb.vv[e])).collect();
        pe.sort_by(|a, b| a.partial_cmp(b).unwrap());
        re_.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(pe, re_);
    }
}

#[test]
fn round_trip_preserves_objective_values() {
    let cases = [fixture_model(), {
        // Maximization with a constant shift survives the comment lines.
        let mut model = SdpModel::new(Sense::Maximize);
        let x = model.new_var();
        let mut b = PsdBlock::new("cap", 1);
        b.push(0, 0, x, re(-1.0));
        b.push_constant(0, 0, re(3.0));
        model.add_block(b);
        let mut f = PsdBlock::new("floor", 1);
        f.push(0, 0, x, re(1.0));
        model.add_block(f);
        model.set_objective(vec![(x, 2.0)], -1.0);
        model
    }];
    for (k, model) in cases.iter().enumerate() {
        let direct = solve(model, &SolveOptions::default());
        let prob = parse_sdpa(&ncopt_sdp::export_sdpa(model).unwrap()).unwrap();
        let via_file = solve_sdpa_problem(&prob, &SolveOptions::default());
        assert_eq!(direct.status, SolveStatus::Optimal, "case {k}");
        assert_eq!(via_file.status, SolveStatus::Optimal, "case {k}");
        assert!(
            (direct.primal_objective - via_file.primal_objective).abs() < 1e-7,
            "case {k}: {} vs {}",
            direct.primal_objective,
            via_file.primal_objective
        );
    }
}

#[test]
fn parse_accepts_sdpa_punctuation_and_diagonal_dims() {
    let text = "\
\"comment in the other style
2
2
{2, -1}
1.0, 2.0
0 1 1 2 -0.5
1 1 1 1 1.0
2 1 2 2 1.0
0 2 1 1 1.0
1 2 1 1 1.0
";
    let prob = parse_sdpa(text).unwrap();
    assert_eq!(prob.num_params, 2);
    assert_eq!(prob.blocks[0].dim, 2);
    assert_eq!(prob.blocks[1].dim, 1);
    assert_eq!(prob.c, vec![1.0, 2.0]);
}

#[test]
fn parse_rejects_malformed_input() {
    assert!(parse_sdpa("1\n2\n").is_err(), "truncated header");
    assert!(parse_sdpa("1\n2\n1 1\n1.0\n").is_err(), "blockStruct count mismatch");
    assert!(parse_sdpa("1\n1\n1\n1.0 2.0\n").is_err(), "objective count mismatch");
    assert!(parse_sdpa("1\n1\n2\n1.0\n1 1 2 1 1.0\n").is_err(), "lower-triangle entry");
    assert!(parse_sdpa("1\n1\n2\n1.0\n2 1 1 1 1.0\n").is_err(), "matno out of range");
    assert!(parse_sdpa("1\n1\n2\n1.0\n1 1 1 1\n").is_err(), "short entry line");
    assert!(parse_sdpa("1\n1\n2\n1.0\n1 1 1 3 1.0\n").is_err(), "cell outside block");
}

#[test]
fn import_reads_optimal_result_files() {
    let text = "\
phase.value  = pdOPT
   Iteration = 17
objValPrimal = +1.7500000000e+00
objValDual   = +1.7499999900e+00
";
    let sol = import_sdpa_result(text).unwrap();
    assert_eq!(sol.status, SolveStatus::Optimal);
    assert_eq!(sol.iterations, 17);
    assert!((sol.primal_objective - 1.75).abs() < 1e-12);
    assert!((sol.dual_objective - 1.74999999).abs() < 1e-12);
    assert!(sol.gap < 2e-8);
}

#[test]
fn import_reads_infeasibility_verdicts() {
    let text = "phase.value = pINF_dFEAS\nIteration = 9\n";
    let sol = import_sdpa_result(text).unwrap();
    assert_eq!(sol.status, SolveStatus::PrimalInfeasible);

    let text = "phase.value = pFEAS_dINF\n";
    let sol = import_sdpa_result(text).unwrap();
    assert_eq!(sol.status, SolveStatus::DualInfeasible);
}

#[test]
fn import_rejects_incomplete_result_files() {
    // No phase line at all.
    assert!(import_sdpa_result("objValPrimal = 1.0\n").is_err());
    // Claims optimality but the objective lines are missing.
    assert!(import_sdpa_result("phase.value = pdOPT\n").is_err());
    assert!(import_sdpa_result("phase.value = pdFEAS\nobjValPrimal = 1.0\n").is_err());
}
