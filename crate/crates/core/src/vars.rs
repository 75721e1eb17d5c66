//! Variable identifiers and the symbol table mapping them to names.

use std::collections::HashMap;
use std::fmt;

/// Interned variable identifier. Ids are dense and assigned in declaration
/// order, which is also the canonical ordering used everywhere else.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

/// Symbol table for variable names. Declaration order fixes the canonical
/// variable order used in scopes and in all textual output.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    by_name: HashMap<String, VarId>,
}

impl VarTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a variable, returning its id. Returns `None` if the name is
    /// already taken.
    pub fn declare(&mut self, name: &str) -> Option<VarId> {
        if self.by_name.contains_key(name) {
            return None;
        }
        let id = VarId(self.names.len() as u32);
        self.names.push(name.to_owned());
        self.by_name.insert(name.to_owned(), id);
        Some(id)
    }

    pub fn lookup(&self, name: &str) -> Option<VarId> {
        self.by_name.get(name).copied()
    }

    pub fn name(&self, id: VarId) -> &str {
        &self.names[id.index()]
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.names.len() as u32).map(VarId)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn declare_and_lookup() {
        let mut t = VarTable::new();
        let a = t.declare("p1").unwrap();
        let b = t.declare("p2").unwrap();
        assert_eq!(t.lookup("p1"), Some(a));
        assert_eq!(t.lookup("p2"), Some(b));
        assert_eq!(t.name(a), "p1");
        assert!(t.declare("p1").is_none());
        assert_eq!(t.len(), 2);
    }
}
