//! Directional derivatives of non-commutative polynomials.
//!
//! The derivative of a word in direction `t` replaces one occurrence of each
//! variable at a time: d/dε p(x + ε t)|_{ε=0}. For a word `w = u x_i v` each
//! occurrence contributes `u t_i v`. The occurrence list of a polynomial is
//! precomputed as a [`GradientTemplate`] so that repeated evaluations against
//! many directions only splice words.

use ncopt_algebra::{Monomial, Polynomial, RewriteSystem, VarId};
use num_complex::Complex64;

/// One occurrence of a variable inside one term: the enclosing left/right
/// words and the term coefficient.
#[derive(Debug, Clone)]
pub struct Occurrence {
    pub left: Monomial,
    pub right: Monomial,
    pub coefficient: Complex64,
}

/// All variable occurrences of a polynomial, grouped per variable.
#[derive(Debug, Clone)]
pub struct GradientTemplate {
    per_var: Vec<Vec<Occurrence>>,
}

impl GradientTemplate {
    /// Scans `p` once; `num_vars` fixes the direction-tuple arity.
    pub fn new(p: &Polynomial, num_vars: usize) -> Self {
        let mut per_var: Vec<Vec<Occurrence>> = vec![Vec::new(); num_vars];
        for (m, c) in p.iter() {
            let w = m.as_slice();
            for (pos, &v) in w.iter().enumerate() {
                per_var[v as usize].push(Occurrence {
                    left: Monomial::from(&w[..pos]),
                    right: Monomial::from(&w[pos + 1..]),
                    coefficient: *c,
                });
            }
        }
        GradientTemplate { per_var }
    }

    pub fn occurrences(&self, v: VarId) -> &[Occurrence] {
        &self.per_var[v as usize]
    }

    pub fn num_vars(&self) -> usize {
        self.per_var.len()
    }

    /// Applies the template to a direction tuple (one polynomial per
    /// variable; missing entries mean the zero direction).
    pub fn apply(&self, directions: &[Polynomial], rs: &RewriteSystem) -> Polynomial {
        let mut out = Polynomial::zero();
        for (v, occs) in self.per_var.iter().enumerate() {
            let Some(dir) = directions.get(v) else { continue };
            if dir.is_zero() {
                continue;
            }
            for occ in occs {
                for (dm, dc) in dir.iter() {
                    let spliced = occ.left.concat(dm).concat(&occ.right);
                    out.add_scaled(occ.coefficient * dc, &rs.canonicalize_word(spliced.as_slice()));
                }
            }
        }
        out
    }

    /// Single-variable direction: all other entries zero.
    pub fn apply_single(&self, v: VarId, direction: &Polynomial, rs: &RewriteSystem) -> Polynomial {
        let mut out = Polynomial::zero();
        for occ in &self.per_var[v as usize] {
            for (dm, dc) in direction.iter() {
                let spliced = occ.left.concat(dm).concat(&occ.right);
                out.add_scaled(occ.coefficient * dc, &rs.canonicalize_word(spliced.as_slice()));
            }
        }
        out
    }

    /// Maximum `deg(left) + deg(right)` over the occurrences of variable `v`,
    /// or `None` when `v` does not occur.
    pub fn degree_for(&self, v: VarId) -> Option<usize> {
        self.per_var[v as usize]
            .iter()
            .map(|o| o.left.degree() + o.right.degree())
            .max()
    }

    /// Maximum over all variables, or `None` for constant polynomials: the
    /// degree headroom a direction word consumes when substituted in.
    pub fn degree(&self) -> Option<usize> {
        (0..self.per_var.len())
            .filter_map(|v| self.degree_for(v as VarId))
            .max()
    }
}

/// Gradient of `p` against the direction tuple `t`, one entry per variable.
pub fn grad_apply(p: &Polynomial, t: &[Polynomial], rs: &RewriteSystem) -> Polynomial {
    GradientTemplate::new(p, rs.num_vars()).apply(t, rs)
}

/// Degree bookkeeping for gradient substitutions: the largest
/// `deg(left)+deg(right)` over all occurrence splittings, `None` for
/// constants (no degree budget is consumed).
pub fn grad_degree(p: &Polynomial, num_vars: usize) -> Option<usize> {
    GradientTemplate::new(p, num_vars).degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ncopt_algebra::{VarKind, VariableTable};

    fn xy() -> (VariableTable, RewriteSystem) {
        let mut vars = VariableTable::new();
        vars.add("x", VarKind::Generic, None).unwrap();
        vars.add("y", VarKind::Generic, None).unwrap();
        let rs = RewriteSystem::free(&vars);
        (vars, rs)
    }

    #[test]
    fn square_differentiates_to_both_sides() {
        let (_, rs) = xy();
        let x2 = Polynomial::monomial(Monomial::new(vec![0, 0]));
        let q = Polynomial::variable(1);
        let g = grad_apply(&x2, &[q.clone(), Polynomial::zero()], &rs);
        // xq + qx with q = y
        let expected = Polynomial::from_terms([
            (Monomial::new(vec![0, 1]), Complex64::new(1.0, 0.0)),
            (Monomial::new(vec![1, 0]), Complex64::new(1.0, 0.0)),
        ]);
        assert_eq!(g, expected);
    }

    #[test]
    fn two_occurrences_of_x_in_xyx() {
        let (_, rs) = xy();
        let xyx = Polynomial::monomial(Monomial::new(vec![0, 1, 0]));
        let r = Polynomial::variable(1); // direction r = y for x, zero for y
        let g = grad_apply(&xyx, &[r, Polynomial::zero()], &rs);
        let expected = Polynomial::from_terms([
            (Monomial::new(vec![1, 1, 0]), Complex64::new(1.0, 0.0)),
            (Monomial::new(vec![0, 1, 1]), Complex64::new(1.0, 0.0)),
        ]);
        assert_eq!(g, expected);
    }

    #[test]
    fn anticommutator_in_unit_direction() {
        // d/dx {x, y} with t_x = 1 gives 2y.
        let (_, rs) = xy();
        let acomm = rs.anticommutator(&Polynomial::variable(0), &Polynomial::variable(1));
        let g = grad_apply(&acomm, &[Polynomial::one(), Polynomial::zero()], &rs);
        assert_eq!(g, Polynomial::variable(1).scaled(2.0));
    }

    #[test]
    fn gradient_degrees() {
        let (_, rs) = xy();
        let x2 = Polynomial::monomial(Monomial::new(vec![0, 0]));
        assert_eq!(grad_degree(&x2, rs.num_vars()), Some(1));
        assert_eq!(grad_degree(&Polynomial::constant(3.0), rs.num_vars()), None);
        let xyx = Polynomial::monomial(Monomial::new(vec![0, 1, 0]));
        assert_eq!(grad_degree(&xyx, rs.num_vars()), Some(2));
    }

    #[test]
    fn euler_identity_on_homogeneous_terms() {
        let (_, rs) = xy();
        // p homogeneous of degree 3: substituting t_i = x_i scales by 3.
        let p = Polynomial::from_terms([
            (Monomial::new(vec![0, 1, 0]), Complex64::new(2.0, 0.0)),
            (Monomial::new(vec![1, 1, 1]), Complex64::new(-1.0, 0.5)),
        ]);
        let dirs = [Polynomial::variable(0), Polynomial::variable(1)];
        let g = grad_apply(&p, &dirs, &rs);
        assert_eq!(g, p.scaled(3.0));
    }
}
