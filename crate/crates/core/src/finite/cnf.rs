//! Minimal CNF import for binary frames.
//!
//! One clause per line, literals written `p<i>` or `!p<i>` and separated by
//! whitespace; `#` starts a comment. Each input clause forbids its unique
//! falsifying assignment, e.g. `p1 !p2 p3` forbids `(0, 1, 0)`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::index_set::IndexSet;
use crate::vars::{VarId, VarTable};

use super::{Clause, FrameSpec};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CnfError {
    #[error("line {line}: unknown variable `{name}`")]
    UnknownVariable { line: usize, name: String },
    #[error("line {line}: variable `{name}` is not binary")]
    NotBinary { line: usize, name: String },
    #[error("line {line}: tautological clause (both polarities of `{name}`)")]
    Tautology { line: usize, name: String },
    #[error("line {line}: empty clause")]
    EmptyClause { line: usize },
}

/// Parses a clause list into generalized clauses. All referenced variables
/// must be declared with cardinality 2.
pub fn from_cnf(
    frames: &FrameSpec,
    vars: &VarTable,
    text: &str,
) -> Result<Vec<Clause>, CnfError> {
    let mut clauses = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        // Polarity per variable: true = positive literal.
        let mut literals: BTreeMap<VarId, bool> = BTreeMap::new();
        for token in content.split_whitespace() {
            let (positive, name) = match token.strip_prefix('!') {
                Some(rest) => (false, rest),
                None => (true, token),
            };
            let id = vars.lookup(name).ok_or_else(|| CnfError::UnknownVariable {
                line,
                name: name.to_owned(),
            })?;
            if frames.cardinality(id) != 2 {
                return Err(CnfError::NotBinary {
                    line,
                    name: name.to_owned(),
                });
            }
            match literals.insert(id, positive) {
                Some(prev) if prev != positive => {
                    return Err(CnfError::Tautology {
                        line,
                        name: name.to_owned(),
                    })
                }
                _ => {}
            }
        }
        if literals.is_empty() {
            return Err(CnfError::EmptyClause { line });
        }
        let scope = IndexSet::from_iter(literals.keys().copied());
        // The falsifying assignment: 0 for positive literals, 1 for negative.
        let forbidden = scope
            .iter()
            .map(|v| if literals[&v] { 0 } else { 1 })
            .collect();
        clauses.push(Clause::new(frames, scope, forbidden));
    }
    Ok(clauses)
}
