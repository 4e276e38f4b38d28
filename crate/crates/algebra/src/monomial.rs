use std::cmp::Ordering;

use crate::vars::VarId;

/// A word in the variables; the empty word is the identity.
///
/// Ordering is degree-first, then lexicographic on variable indices. This is
/// the order every basis, moment index and rewrite-termination argument uses.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<VarId>);

impl Monomial {
    pub fn identity() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(word: Vec<VarId>) -> Self {
        Monomial(word)
    }

    pub fn single(v: VarId) -> Self {
        Monomial(vec![v])
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[VarId] {
        &self.0
    }

    /// Word reversal; combined with coefficient conjugation this is the adjoint
    /// of a monomial in Hermitian variables.
    pub fn reversed(&self) -> Monomial {
        Monomial(self.0.iter().rev().copied().collect())
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut w = Vec::with_capacity(self.0.len() + other.0.len());
        w.extend_from_slice(&self.0);
        w.extend_from_slice(&other.0);
        Monomial(w)
    }

    pub fn iter(&self) -> impl Iterator<Item = VarId> + '_ {
        self.0.iter().copied()
    }
}

impl From<Vec<VarId>> for Monomial {
    fn from(word: Vec<VarId>) -> Self {
        Monomial(word)
    }
}

impl From<&[VarId]> for Monomial {
    fn from(word: &[VarId]) -> Self {
        Monomial(word.to_vec())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_dominates_lex() {
        let a = Monomial::new(vec![2]);
        let b = Monomial::new(vec![0, 1]);
        assert!(a < b);
        assert!(Monomial::identity() < a);
        assert!(Monomial::new(vec![0, 1]) < Monomial::new(vec![0, 2]));
    }

    #[test]
    fn reversal_is_involutive() {
        let m = Monomial::new(vec![3, 1, 4, 1]);
        assert_eq!(m.reversed().reversed(), m);
    }
}
