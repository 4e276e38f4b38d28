use std::collections::HashMap;

use crate::AlgebraError;

/// Index of a variable in its [`VariableTable`].
pub type VarId = u16;

/// What a variable is, which decides the built-in rewrite rules it carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    /// No built-in relations.
    Generic,
    PauliX,
    PauliY,
    PauliZ,
    /// Idempotent: `E^2 = E`.
    Projector,
    /// Involutory: `A^2 = 1`.
    Dichotomic,
}

/// A single Hermitian variable. `site` is an optional lattice/party label;
/// variables on *different* sites commute, variables without a site never
/// commute implicitly.
#[derive(Debug, Clone)]
pub struct Variable {
    pub name: String,
    pub kind: VarKind,
    pub site: Option<u32>,
}

/// The ordered set of variables of a problem. Indices are dense and the
/// order fixes the lexicographic rank used for canonical sorting.
#[derive(Debug, Clone, Default)]
pub struct VariableTable {
    vars: Vec<Variable>,
    by_name: HashMap<String, VarId>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, name: &str, kind: VarKind, site: Option<u32>) -> Result<VarId, AlgebraError> {
        if self.by_name.contains_key(name) {
            return Err(AlgebraError::DuplicateVariable(name.to_string()));
        }
        if self.vars.len() > VarId::MAX as usize {
            return Err(AlgebraError::TooManyVariables);
        }
        let id = self.vars.len() as VarId;
        self.by_name.insert(name.to_string(), id);
        self.vars.push(Variable { name: name.to_string(), kind, site });
        Ok(id)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn get(&self, id: VarId) -> &Variable {
        &self.vars[id as usize]
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, &Variable)> {
        self.vars.iter().enumerate().map(|(i, v)| (i as VarId, v))
    }

    /// Adds the three Pauli components of one lattice site and returns their ids.
    pub fn add_pauli_site(&mut self, site: u32, name_prefix: &str) -> Result<[VarId; 3], AlgebraError> {
        let x = self.add(&format!("{name_prefix}x"), VarKind::PauliX, Some(site))?;
        let y = self.add(&format!("{name_prefix}y"), VarKind::PauliY, Some(site))?;
        let z = self.add(&format!("{name_prefix}z"), VarKind::PauliZ, Some(site))?;
        Ok([x, y, z])
    }
}
