//! The matrix representation referees the symbolic layer: rewriting and
//! calculus must commute with evaluation on concrete operators.

use ncopt_algebra::{Monomial, Polynomial, RewriteSystem, VarKind, VariableTable};
use ncopt_calculus::grad_apply;
use ncopt_exact::MatrixRep;
use ncopt_linalg::{zmatmul, CMat};
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn three_qubits() -> (VariableTable, RewriteSystem) {
    let mut vars = VariableTable::new();
    for site in 0..3 {
        vars.add_pauli_site(site, &format!("s{site}")).unwrap();
    }
    let rs = RewriteSystem::from_kinds(&vars).unwrap();
    (vars, rs)
}

fn raw_word_matrix(rep: &MatrixRep, w: &[u16]) -> CMat {
    rep.word(&Monomial::from(w))
}

#[test]
fn canonicalization_preserves_matrix_semantics() {
    let (vars, rs) = three_qubits();
    let rep = MatrixRep::pauli_qubits(&vars);
    let nv = vars.len() as u16;
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for trial in 0..10_000 {
        let len = rng.gen_range(0..=12);
        let w: Vec<u16> = (0..len).map(|_| rng.gen_range(0..nv)).collect();
        let raw = raw_word_matrix(&rep, &w);
        let canon = rep.poly(&rs.canonicalize_word(&w));
        let mut diff = raw.clone();
        diff.add_scaled(Complex64::new(-1.0, 0.0), &canon);
        assert!(
            diff.norm_fro() < 1e-10,
            "trial {trial}: rewriting changed the operator for word {w:?}"
        );
    }
}

#[test]
fn distinct_canonical_words_are_distinct_operators() {
    // Pauli strings are linearly independent, so the canonical form must
    // separate them; collapsing two would make moment matrices lie.
    let (vars, rs) = three_qubits();
    let rep = MatrixRep::pauli_qubits(&vars);
    let nv = vars.len() as u16;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for _ in 0..300 {
        let mut words = Vec::new();
        for _ in 0..2 {
            let len = rng.gen_range(0..=6);
            let w: Vec<u16> = (0..len).map(|_| rng.gen_range(0..nv)).collect();
            words.push(rs.canonicalize_word(&w));
        }
        let (p, q) = (&words[0], &words[1]);
        if p == q {
            continue;
        }
        let mut diff = rep.poly(p);
        diff.add_scaled(Complex64::new(-1.0, 0.0), &rep.poly(q));
        assert!(diff.norm_fro() > 1e-8, "distinct normal forms {p:?} vs {q:?} collapsed");
    }
}

#[test]
fn products_and_adjoints_evaluate_homomorphically() {
    let (vars, rs) = three_qubits();
    let rep = MatrixRep::pauli_qubits(&vars);
    let nv = vars.len() as u16;
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    let random_poly = |rng: &mut ChaCha8Rng| {
        let mut p = Polynomial::zero();
        for _ in 0..3 {
            let len = rng.gen_range(0..=4);
            let w: Vec<u16> = (0..len).map(|_| rng.gen_range(0..nv)).collect();
            let c = Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
            p.add_scaled(c, &rs.canonicalize_word(&w));
        }
        p
    };
    for _ in 0..200 {
        let p = random_poly(&mut rng);
        let q = random_poly(&mut rng);
        let lhs = rep.poly(&rs.multiply(&p, &q));
        let mut rhs = zmatmul(&rep.poly(&p), &rep.poly(&q));
        rhs.add_scaled(Complex64::new(-1.0, 0.0), &lhs);
        assert!(rhs.norm_fro() < 1e-9);

        let adj_sym = rep.poly(&rs.adjoint(&p));
        let mut adj_mat = rep.poly(&p).adjoint();
        adj_mat.add_scaled(Complex64::new(-1.0, 0.0), &adj_sym);
        assert!(adj_mat.norm_fro() < 1e-9);
    }
}

#[test]
fn gradient_matches_finite_differences() {
    // Free variables evaluated on random Hermitian matrices: the symbolic
    // directional derivative must agree with (p(x + eps t) - p(x)) / eps up
    // to O(eps), with the defect shrinking quadratically in eps.
    let dim = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let random_herm = |rng: &mut ChaCha8Rng| {
        let mut m = CMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
        }
        let mut h = m.adjoint();
        h.add_scaled(Complex64::new(1.0, 0.0), &m);
        h.scale(Complex64::new(0.5, 0.0));
        h
    };

    for _ in 0..20 {
        let base = [random_herm(&mut rng), random_herm(&mut rng)];
        let dir = [random_herm(&mut rng), random_herm(&mut rng)];
        let mut p = Polynomial::zero();
        for _ in 0..3 {
            let len = rng.gen_range(1..=4);
            let w: Vec<u16> = (0..len).map(|_| rng.gen_range(0..2)).collect();
            p.add_scaled(Complex64::new(rng.gen_range(-1.0..1.0), 0.0), &Polynomial::monomial(Monomial::new(w)));
        }
        // Fresh variables u, v carry the direction so the derivative can be
        // evaluated under a single assignment.
        let mut vars4 = VariableTable::new();
        for name in ["x", "y", "u", "v"] {
            vars4.add(name, VarKind::Generic, None).unwrap();
        }
        let rs4 = RewriteSystem::free(&vars4);
        let dirs4 = [Polynomial::variable(2), Polynomial::variable(3)];
        let grad4 = grad_apply(&p, &dirs4, &rs4);

        let residual = |eps: f64| {
            let mut rep_shift = MatrixRep::new(dim, 4);
            let mut rep_base = MatrixRep::new(dim, 4);
            for k in 0..2 {
                let mut shifted = base[k].clone();
                shifted.add_scaled(Complex64::new(eps, 0.0), &dir[k]);
                rep_shift.assign(k as u16, shifted);
                rep_base.assign(k as u16, base[k].clone());
                rep_base.assign((k + 2) as u16, dir[k].clone());
            }
            let mut r = rep_shift.poly(&p);
            r.add_scaled(Complex64::new(-1.0, 0.0), &rep_base.poly(&p));
            r.add_scaled(Complex64::new(-eps, 0.0), &rep_base.poly(&grad4));
            r.norm_fro()
        };

        let r1 = residual(1e-3);
        let r2 = residual(5e-4);
        assert!(r1 < 1e-4, "first-order defect too large: {r1}");
        if r1 > 1e-12 {
            let ratio = r1 / r2.max(1e-300);
            assert!(ratio > 3.0 && ratio < 5.0, "defect not quadratic: ratio {ratio}");
        }
    }
}
