use std::collections::BTreeSet;
use std::sync::Arc;

use crate::monomial::Monomial;
use crate::rewrite::RewriteSystem;
use crate::vars::VarId;

/// Word filter used when generating bases, typically a locality predicate on
/// the sites a word touches. The identity word is always kept.
#[derive(Clone)]
pub enum BasisFilter {
    All,
    Predicate(Arc<dyn Fn(&Monomial) -> bool + Send + Sync>),
}

impl BasisFilter {
    pub fn predicate(f: impl Fn(&Monomial) -> bool + Send + Sync + 'static) -> Self {
        BasisFilter::Predicate(Arc::new(f))
    }

    pub fn accepts(&self, m: &Monomial) -> bool {
        match self {
            BasisFilter::All => true,
            BasisFilter::Predicate(f) => f(m),
        }
    }
}

impl std::fmt::Debug for BasisFilter {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BasisFilter::All => write!(f, "All"),
            BasisFilter::Predicate(_) => write!(f, "Predicate(..)"),
        }
    }
}

/// Ordered list of canonical monomials, degree-then-lex, identity first.
#[derive(Debug, Clone, Default)]
pub struct MonomialBasis {
    monomials: Vec<Monomial>,
}

impl MonomialBasis {
    pub fn from_monomials(monomials: Vec<Monomial>) -> Self {
        debug_assert!(monomials.windows(2).all(|w| w[0] < w[1]));
        MonomialBasis { monomials }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn words(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn iter(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter()
    }

    pub fn max_degree(&self) -> usize {
        self.monomials.last().map(|m| m.degree()).unwrap_or(0)
    }

    /// Number of leading words with degree at most `d`; because the list is
    /// degree-sorted this is the size of the degree-`d` sub-basis prefix.
    pub fn prefix_len_for_degree(&self, d: usize) -> usize {
        self.monomials.partition_point(|m| m.degree() <= d)
    }

    /// Restricts to words of degree at most `d`.
    pub fn truncated(&self, d: usize) -> MonomialBasis {
        MonomialBasis {
            monomials: self.monomials[..self.prefix_len_for_degree(d)].to_vec(),
        }
    }

    pub fn filtered(&self, filter: &BasisFilter) -> MonomialBasis {
        MonomialBasis {
            monomials: self
                .monomials
                .iter()
                .filter(|m| m.is_identity() || filter.accepts(m))
                .cloned()
                .collect(),
        }
    }
}

/// All canonical words of degree ≤ `k` passing the filter, in degree-then-lex
/// order with the identity first.
///
/// Enumeration extends canonical words of degree `d` by single letters and
/// keeps the extensions that are again canonical: every canonical word's
/// prefix is canonical (a redex inside a prefix would be a redex of the whole
/// word), so this reaches everything. The filter is applied only on output,
/// not while extending, since a filtered word may still be the prefix of an
/// admissible longer one.
pub fn generate_basis(rs: &RewriteSystem, k: usize, filter: &BasisFilter) -> MonomialBasis {
    let mut out = vec![Monomial::identity()];
    let mut frontier: Vec<Monomial> = vec![Monomial::identity()];
    for _deg in 1..=k {
        let mut level: BTreeSet<Monomial> = BTreeSet::new();
        for w in &frontier {
            for v in 0..rs.num_vars() as u32 {
                let v = v as VarId;
                let mut cand: Vec<VarId> = w.as_slice().to_vec();
                cand.push(v);
                if rs.is_canonical(&cand) {
                    level.insert(Monomial::new(cand));
                }
            }
        }
        frontier = level.iter().cloned().collect();
        out.extend(level.into_iter().filter(|m| filter.accepts(m)));
        if frontier.is_empty() {
            break;
        }
    }
    MonomialBasis { monomials: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::{VarKind, VariableTable};

    #[test]
    fn dichotomic_basis_collapses_squares() {
        let mut vars = VariableTable::new();
        vars.add("A", VarKind::Dichotomic, Some(0)).unwrap();
        let rs = RewriteSystem::from_kinds(&vars).unwrap();
        let b = generate_basis(&rs, 2, &BasisFilter::All);
        assert_eq!(b.len(), 2); // 1, A
    }

    #[test]
    fn generic_basis_counts() {
        let mut vars = VariableTable::new();
        vars.add("x", VarKind::Generic, None).unwrap();
        let rs = RewriteSystem::free(&vars);
        let b = generate_basis(&rs, 2, &BasisFilter::All);
        assert_eq!(b.len(), 3); // 1, x, x^2
    }

    #[test]
    fn single_qubit_degree_two_basis() {
        let mut vars = VariableTable::new();
        vars.add_pauli_site(0, "s").unwrap();
        let rs = RewriteSystem::from_kinds(&vars).unwrap();
        let b = generate_basis(&rs, 2, &BasisFilter::All);
        // every length-2 word reduces, leaving 1, x, y, z
        assert_eq!(b.len(), 4);
    }

    #[test]
    fn identity_always_first() {
        let mut vars = VariableTable::new();
        vars.add("x", VarKind::Generic, None).unwrap();
        let rs = RewriteSystem::free(&vars);
        let b = generate_basis(&rs, 3, &BasisFilter::predicate(|_| false));
        assert_eq!(b.len(), 1);
        assert!(b.words()[0].is_identity());
    }
}
