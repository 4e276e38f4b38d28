use std::collections::HashMap;

use num_complex::Complex64;

use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::vars::{VarId, VarKind, VariableTable};
use crate::AlgebraError;

/// Classification of a rewrite rule, mirroring how it was constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleClass {
    PauliSite,
    Projector,
    Involutory,
    CrossCommutation,
    CustomLinear,
}

#[derive(Debug, Clone)]
struct Rule {
    pattern: Vec<VarId>,
    replacement: Polynomial,
    class: RuleClass,
}

/// A terminating rewrite system presenting the quotient of the free algebra
/// by the relation ideal.
///
/// Every rule strictly decreases the (degree, lex) rank of the word it fires
/// on, so rewriting terminates; the built-in rule classes are additionally
/// confluent, making normal forms canonical representatives.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    num_vars: usize,
    sites: Vec<Option<u32>>,
    /// Length-2 patterns, the hot path; keyed by the variable pair.
    pair_rules: HashMap<(VarId, VarId), Rule>,
    /// Longer or variable-length custom patterns, tried in registration order.
    long_rules: Vec<Rule>,
}

enum Redex<'a> {
    /// Swap a cross-site pair into ascending order.
    Swap(usize),
    /// Replace `pattern_len` letters at `pos` by a polynomial.
    Rule(usize, usize, &'a Polynomial),
}

impl RewriteSystem {
    /// Builds the rule set implied by the variable kinds:
    /// Pauli triples per site, `E^2 = E` for projectors, `A^2 = 1` for
    /// dichotomic variables, and commutation between distinct sites.
    pub fn from_kinds(vars: &VariableTable) -> Result<Self, AlgebraError> {
        let mut rs = RewriteSystem {
            num_vars: vars.len(),
            sites: (0..vars.len()).map(|i| vars.get(i as VarId).site).collect(),
            pair_rules: HashMap::new(),
            long_rules: Vec::new(),
        };

        // Pauli triples: collect per-site {x,y,z} ids.
        let mut pauli_sites: HashMap<u32, [Option<VarId>; 3]> = HashMap::new();
        for (id, v) in vars.iter() {
            let slot = match v.kind {
                VarKind::PauliX => 0,
                VarKind::PauliY => 1,
                VarKind::PauliZ => 2,
                VarKind::Projector => {
                    rs.insert_pair(id, id, Polynomial::monomial(Monomial::single(id)), RuleClass::Projector)?;
                    continue;
                }
                VarKind::Dichotomic => {
                    rs.insert_pair(id, id, Polynomial::one(), RuleClass::Involutory)?;
                    continue;
                }
                VarKind::Generic => continue,
            };
            let site = v.site.ok_or(AlgebraError::PauliWithoutSite(v.name.clone()))?;
            let entry = pauli_sites.entry(site).or_insert([None; 3]);
            if entry[slot].is_some() {
                return Err(AlgebraError::IncompletePauliSite(site));
            }
            entry[slot] = Some(id);
        }
        for (site, ids) in pauli_sites {
            let [x, y, z] = ids;
            let (x, y, z) = match (x, y, z) {
                (Some(x), Some(y), Some(z)) => (x, y, z),
                _ => return Err(AlgebraError::IncompletePauliSite(site)),
            };
            let i = Complex64::new(0.0, 1.0);
            // squares
            for a in [x, y, z] {
                rs.insert_pair(a, a, Polynomial::one(), RuleClass::PauliSite)?;
            }
            // products of distinct components: ab = i eps(abc) c
            let cyclic = [(x, y, z), (y, z, x), (z, x, y)];
            for (a, b, c) in cyclic {
                rs.insert_pair(a, b, Polynomial::monomial(Monomial::single(c)).scaled(i), RuleClass::PauliSite)?;
                rs.insert_pair(b, a, Polynomial::monomial(Monomial::single(c)).scaled(-i), RuleClass::PauliSite)?;
            }
        }
        Ok(rs)
    }

    /// A rewrite system with no relations at all (free generic variables).
    pub fn free(vars: &VariableTable) -> Self {
        RewriteSystem {
            num_vars: vars.len(),
            sites: (0..vars.len()).map(|i| vars.get(i as VarId).site).collect(),
            pair_rules: HashMap::new(),
            long_rules: Vec::new(),
        }
    }

    /// Registers an extra rule `pattern -> replacement`.
    ///
    /// Rejected unless every replacement monomial is strictly smaller than the
    /// pattern in (degree, lex) order, which is what guarantees termination.
    pub fn add_rule(&mut self, pattern: &[VarId], replacement: Polynomial, class: RuleClass) -> Result<(), AlgebraError> {
        if pattern.is_empty() {
            return Err(AlgebraError::NonDecreasingRule);
        }
        let pat = Monomial::from(pattern);
        for (m, _) in replacement.iter() {
            if *m >= pat {
                return Err(AlgebraError::NonDecreasingRule);
            }
        }
        if pattern.len() == 2 {
            self.insert_pair(pattern[0], pattern[1], replacement, class)
        } else {
            self.long_rules.push(Rule { pattern: pattern.to_vec(), replacement, class });
            Ok(())
        }
    }

    fn insert_pair(&mut self, a: VarId, b: VarId, replacement: Polynomial, class: RuleClass) -> Result<(), AlgebraError> {
        let pat = Monomial::new(vec![a, b]);
        for (m, _) in replacement.iter() {
            if *m >= pat {
                return Err(AlgebraError::NonDecreasingRule);
            }
        }
        if self.pair_rules.insert((a, b), Rule { pattern: vec![a, b], replacement, class }).is_some() {
            return Err(AlgebraError::ConflictingRule);
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    fn commutes(&self, a: VarId, b: VarId) -> bool {
        match (self.sites[a as usize], self.sites[b as usize]) {
            (Some(sa), Some(sb)) => sa != sb,
            _ => false,
        }
    }

    fn first_redex(&self, w: &[VarId]) -> Option<Redex<'_>> {
        for pos in 0..w.len() {
            if pos + 1 < w.len() {
                let key = (w[pos], w[pos + 1]);
                if let Some(rule) = self.pair_rules.get(&key) {
                    return Some(Redex::Rule(pos, 2, &rule.replacement));
                }
                if w[pos] > w[pos + 1] && self.commutes(w[pos], w[pos + 1]) {
                    return Some(Redex::Swap(pos));
                }
            }
            for rule in &self.long_rules {
                let l = rule.pattern.len();
                if pos + l <= w.len() && w[pos..pos + l] == rule.pattern[..] {
                    return Some(Redex::Rule(pos, l, &rule.replacement));
                }
            }
        }
        None
    }

    /// Applies the first applicable rule at `pos`, if any. This exposes single
    /// rewrite steps so that reduction-order experiments can be driven from
    /// the outside; [`RewriteSystem::canonicalize_word`] is the normal entry point.
    pub fn rewrite_once_at(&self, w: &[VarId], pos: usize) -> Option<Polynomial> {
        if pos + 1 < w.len() {
            let key = (w[pos], w[pos + 1]);
            if let Some(rule) = self.pair_rules.get(&key) {
                return Some(self.splice(w, pos, 2, &rule.replacement));
            }
            if w[pos] > w[pos + 1] && self.commutes(w[pos], w[pos + 1]) {
                let swapped = Polynomial::monomial(Monomial::new(vec![w[pos + 1], w[pos]]));
                return Some(self.splice_raw(w, pos, 2, &swapped));
            }
        }
        for rule in &self.long_rules {
            let l = rule.pattern.len();
            if pos + l <= w.len() && w[pos..pos + l] == rule.pattern[..] {
                return Some(self.splice(w, pos, l, &rule.replacement));
            }
        }
        None
    }

    fn splice(&self, w: &[VarId], pos: usize, len: usize, replacement: &Polynomial) -> Polynomial {
        self.splice_raw(w, pos, len, replacement)
    }

    fn splice_raw(&self, w: &[VarId], pos: usize, len: usize, replacement: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in replacement.iter() {
            let mut new_w = Vec::with_capacity(w.len() - len + m.degree());
            new_w.extend_from_slice(&w[..pos]);
            new_w.extend(m.iter());
            new_w.extend_from_slice(&w[pos + len..]);
            out.add_term(Monomial::new(new_w), *c);
        }
        out
    }

    /// Reduces a word to its canonical polynomial representative modulo the
    /// relation ideal. The result is a fixed point of every rule.
    pub fn canonicalize_word(&self, word: &[VarId]) -> Polynomial {
        let mut out = Polynomial::zero();
        let mut stack: Vec<(Vec<VarId>, Complex64)> = vec![(word.to_vec(), Complex64::new(1.0, 0.0))];
        while let Some((w, coef)) = stack.pop() {
            match self.first_redex(&w) {
                None => out.add_term(Monomial::new(w), coef),
                Some(Redex::Swap(pos)) => {
                    let mut sw = w;
                    sw.swap(pos, pos + 1);
                    stack.push((sw, coef));
                }
                Some(Redex::Rule(pos, len, replacement)) => {
                    for (m, c) in replacement.iter() {
                        let mut new_w = Vec::with_capacity(w.len() - len + m.degree());
                        new_w.extend_from_slice(&w[..pos]);
                        new_w.extend(m.iter());
                        new_w.extend_from_slice(&w[pos + len..]);
                        stack.push((new_w, coef * c));
                    }
                }
            }
        }
        out
    }

    /// Canonicalizes every term of a polynomial.
    pub fn canonicalize(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.iter() {
            out.add_scaled(*c, &self.canonicalize_word(m.as_slice()));
        }
        out
    }

    /// True if the word is its own canonical form.
    pub fn is_canonical(&self, word: &[VarId]) -> bool {
        self.first_redex(word).is_none()
    }

    /// Canonical product of two polynomials.
    pub fn multiply(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (mp, cp) in p.iter() {
            for (mq, cq) in q.iter() {
                let prod = cp * cq;
                if prod == Complex64::new(0.0, 0.0) {
                    continue;
                }
                out.add_scaled(prod, &self.canonicalize_word(mp.concat(mq).as_slice()));
            }
        }
        out
    }

    /// Adjoint: reverse words (all variables are Hermitian), conjugate
    /// coefficients, re-canonicalize.
    pub fn adjoint(&self, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (m, c) in p.iter() {
            out.add_scaled(c.conj(), &self.canonicalize_word(m.reversed().as_slice()));
        }
        out
    }

    pub fn is_hermitian(&self, p: &Polynomial) -> bool {
        self.adjoint(p) == *p
    }

    /// `p q - q p`, canonicalized.
    pub fn commutator(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.multiply(p, q) - &self.multiply(q, p)
    }

    /// `p q + q p`, canonicalized.
    pub fn anticommutator(&self, p: &Polynomial, q: &Polynomial) -> Polynomial {
        self.multiply(p, q) + &self.multiply(q, p)
    }
}
