use ncopt_calculus::{grad_apply, grad_degree, GradientTemplate};
use ncopt_algebra::{Monomial, Polynomial, RewriteSystem, VarKind, VariableTable};
use num_complex::Complex64;
use proptest::prelude::*;

fn three_generic() -> RewriteSystem {
    let mut vars = VariableTable::new();
    for name in ["x", "y", "z"] {
        vars.add(name, VarKind::Generic, None).unwrap();
    }
    RewriteSystem::free(&vars)
}

fn arb_word(max_len: usize) -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u16..3, 0..=max_len).prop_map(Monomial::new)
}

fn arb_poly(max_len: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((arb_word(max_len), -3i32..=3, -3i32..=3), 1..=max_terms).prop_map(
        |terms| {
            let mut p = Polynomial::zero();
            for (m, re, im) in terms {
                p.add_scaled(Complex64::new(re as f64, im as f64), &Polynomial::monomial(m));
            }
            p
        },
    )
}

fn arb_directions(max_len: usize) -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(arb_poly(max_len, 2), 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    // d(p) is linear in p.
    #[test]
    fn linear_in_polynomial(p in arb_poly(4, 3), q in arb_poly(4, 3), t in arb_directions(2)) {
        let rs = three_generic();
        let sum = &p + &q;
        let lhs = grad_apply(&sum, &t, &rs);
        let mut rhs = grad_apply(&p, &t, &rs);
        rhs.add_scaled(1.0, &grad_apply(&q, &t, &rs));
        prop_assert_eq!(lhs, rhs);
    }

    // d(p) is linear in the direction tuple.
    #[test]
    fn linear_in_direction(p in arb_poly(4, 3), t in arb_directions(2), u in arb_directions(2)) {
        let rs = three_generic();
        let sum: Vec<Polynomial> = t.iter().zip(&u).map(|(a, b)| a + b).collect();
        let lhs = grad_apply(&p, &sum, &rs);
        let mut rhs = grad_apply(&p, &t, &rs);
        rhs.add_scaled(1.0, &grad_apply(&p, &u, &rs));
        prop_assert_eq!(lhs, rhs);
    }

    // Product rule: d(pq) = d(p) q + p d(q).
    #[test]
    fn leibniz(p in arb_poly(3, 3), q in arb_poly(3, 3), t in arb_directions(2)) {
        let rs = three_generic();
        let prod = rs.multiply(&p, &q);
        let lhs = grad_apply(&prod, &t, &rs);
        let mut rhs = rs.multiply(&grad_apply(&p, &t, &rs), &q);
        rhs.add_scaled(1.0, &rs.multiply(&p, &grad_apply(&q, &t, &rs)));
        prop_assert_eq!(lhs, rhs);
    }

    // Substituting t_i = x_i scales each degree-d term by d.
    #[test]
    fn euler_identity(w in arb_word(5), re in -3i32..=3) {
        let rs = three_generic();
        let d = w.degree();
        let p = Polynomial::monomial(w).scaled(re as f64);
        let dirs: Vec<Polynomial> = (0..3).map(Polynomial::variable).collect();
        let g = grad_apply(&p, &dirs, &rs);
        prop_assert_eq!(g, p.scaled(d as f64));
    }

    // Template degree equals deg(p) - 1 for non-constant p in the free algebra.
    #[test]
    fn degree_drop(p in arb_poly(5, 3)) {
        let rs = three_generic();
        let deg = p.degree().unwrap_or(0);
        let gd = grad_degree(&p, rs.num_vars());
        if deg == 0 {
            prop_assert_eq!(gd, None);
        } else {
            prop_assert_eq!(gd, Some(deg - 1));
        }
    }

    // apply() with a single nonzero slot matches apply_single.
    #[test]
    fn single_slot_agrees(p in arb_poly(4, 3), dir in arb_poly(2, 2), v in 0u16..3) {
        let rs = three_generic();
        let tpl = GradientTemplate::new(&p, rs.num_vars());
        let mut tuple = vec![Polynomial::zero(); 3];
        tuple[v as usize] = dir.clone();
        prop_assert_eq!(tpl.apply(&tuple, &rs), tpl.apply_single(v, &dir, &rs));
    }
}
