//! Boolean functions as truth tables and their clones.

mod closure;
mod clones;
mod table;
mod term;

use std::fmt;
use std::sync::Arc;

pub use closure::{
    contains_clone, contains_function, identify_clone, nary_closure, superposition_closure,
    witness_term, CloneDescriptor,
};
pub use clones::{CloneName, ALL_CLONES, REFERENCE_CLONES};
pub use table::{named, Property, TruthTable, ARITY_CAP, CLOSURE_ARITY_CAP};
pub use term::Term;

use crate::error::{Error, Result};

/// An operator symbol together with its truth table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NamedOperator {
    pub name: Arc<str>,
    pub table: TruthTable,
}

impl NamedOperator {
    pub fn new(name: impl Into<Arc<str>>, table: TruthTable) -> Self {
        NamedOperator {
            name: name.into(),
            table,
        }
    }

    pub fn arity(&self) -> usize {
        self.table.arity()
    }
}

impl fmt::Debug for NamedOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}:{}", self.name, self.arity(), self.table.bitstring())
    }
}

/// Operators with pairwise distinct names, kept in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OperatorSet {
    ops: Vec<NamedOperator>,
}

impl OperatorSet {
    pub fn new(ops: impl IntoIterator<Item = NamedOperator>) -> Result<Self> {
        let mut set = OperatorSet::default();
        for op in ops {
            set.insert(op)?;
        }
        Ok(set)
    }

    pub fn insert(&mut self, op: NamedOperator) -> Result<()> {
        match self.get(&op.name) {
            Some(existing) if existing.table == op.table => Ok(()),
            Some(_) => Err(Error::Argument(format!(
                "operator `{}` declared twice with different tables",
                op.name
            ))),
            None => {
                self.ops.push(op);
                Ok(())
            }
        }
    }

    pub fn get(&self, name: &str) -> Option<&NamedOperator> {
        self.ops.iter().find(|o| &*o.name == name)
    }

    /// First operator with exactly this table.
    pub fn find_table(&self, table: &TruthTable) -> Option<&NamedOperator> {
        self.ops.iter().find(|o| o.table == *table)
    }

    pub fn iter(&self) -> std::slice::Iter<'_, NamedOperator> {
        self.ops.iter()
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn tables(&self) -> Vec<TruthTable> {
        self.ops.iter().map(|o| o.table).collect()
    }

    /// The same names with dual tables.
    pub fn dual(&self) -> OperatorSet {
        OperatorSet {
            ops: self
                .ops
                .iter()
                .map(|o| NamedOperator::new(o.name.clone(), o.table.dual()))
                .collect(),
        }
    }
}

impl<'a> IntoIterator for &'a OperatorSet {
    type Item = &'a NamedOperator;
    type IntoIter = std::slice::Iter<'a, NamedOperator>;

    fn into_iter(self) -> Self::IntoIter {
        self.ops.iter()
    }
}
