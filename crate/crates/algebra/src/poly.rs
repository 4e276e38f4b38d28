use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::monomial::Monomial;
use crate::vars::{VariableTable, VarId};

/// Finite complex-linear combination of canonical monomials.
///
/// The container itself does not know about rewrite rules; operations that
/// need canonicalization (products, adjoints) live on
/// [`crate::RewriteSystem`]. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Polynomial {
    terms: BTreeMap<Monomial, Complex64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Polynomial::monomial(Monomial::identity())
    }

    pub fn constant(c: impl Into<Complex64>) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(Monomial::identity(), c.into());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = Polynomial::zero();
        p.add_term(m, Complex64::new(1.0, 0.0));
        p
    }

    pub fn variable(v: VarId) -> Self {
        Polynomial::monomial(Monomial::single(v))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Complex64)>) -> Self {
        let mut p = Polynomial::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn add_term(&mut self, m: Monomial, c: Complex64) {
        if c == Complex64::ZERO {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let v = *e.get() + c;
                if v == Complex64::ZERO {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Complex64 {
        self.terms.get(m).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Largest word length present, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Complex64)> {
        self.terms.iter()
    }

    /// The single (monomial, coefficient) pair if the polynomial has exactly
    /// one term.
    pub fn as_single_term(&self) -> Option<(&Monomial, Complex64)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (m, *c))
        } else {
            None
        }
    }

    pub fn scaled(&self, s: impl Into<Complex64>) -> Polynomial {
        let s = s.into();
        if s == Complex64::ZERO {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect(),
        }
    }

    pub fn add_scaled(&mut self, s: impl Into<Complex64>, other: &Polynomial) {
        let s = s.into();
        for (m, c) in &other.terms {
            self.add_term(m.clone(), s * c);
        }
    }

    /// Drops terms with |coefficient| below `eps`. Rewriting keeps exact
    /// coefficients, so this is only for numerically assembled polynomials.
    pub fn prune(&mut self, eps: f64) {
        self.terms.retain(|_, c| c.norm() > eps);
    }

    pub fn max_abs_coefficient(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Render against a variable table, mostly for diagnostics and reports.
    pub fn display<'a>(&'a self, vars: &'a VariableTable) -> impl std::fmt::Display + 'a {
        DisplayPoly { poly: self, vars }
    }
}

impl std::ops::Add<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(1.0, rhs);
        self
    }
}

impl std::ops::Sub<&Polynomial> for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: &Polynomial) -> Polynomial {
        self.add_scaled(-1.0, rhs);
        self
    }
}

impl std::ops::Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.clone() + rhs
    }
}

impl std::ops::Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.clone() - rhs
    }
}

struct DisplayPoly<'a> {
    poly: &'a Polynomial,
    vars: &'a VariableTable,
}

impl std::fmt::Display for DisplayPoly<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.poly.iter() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if m.is_identity() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})·")?;
                let names: Vec<&str> = m.iter().map(|v| self.vars.get(v).name.as_str()).collect();
                write!(f, "{}", names.join("."))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancelling_terms_vanish() {
        let m = Monomial::new(vec![0, 1]);
        let mut p = Polynomial::monomial(m.clone());
        p.add_term(m, Complex64::new(-1.0, 0.0));
        assert!(p.is_zero());
        assert_eq!(p.degree(), None);
    }

    #[test]
    fn scaling_by_zero_clears() {
        let p = Polynomial::from_terms([
            (Monomial::single(0), Complex64::new(2.0, 0.0)),
            (Monomial::identity(), Complex64::new(0.0, 1.0)),
        ]);
        assert!(p.scaled(0.0).is_zero());
        assert_eq!(p.num_terms(), 2);
    }
}
