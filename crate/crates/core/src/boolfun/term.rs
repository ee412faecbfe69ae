use std::fmt;

use super::OperatorSet;

/// A term over named operators and argument variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Var(usize),
    Apply(String, Vec<Term>),
}

const VAR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

impl Term {
    /// Evaluates the term. Panics when an operator name is missing from `ops`.
    pub fn eval(&self, ops: &OperatorSet, args: &[bool]) -> bool {
        match self {
            Term::Var(i) => args[*i],
            Term::Apply(name, children) => {
                let op = ops.get(name).unwrap_or_else(|| panic!("unknown operator {name}"));
                let vals: Vec<bool> = children.iter().map(|c| c.eval(ops, args)).collect();
                op.table.get(super::TruthTable::index(&vals))
            }
        }
    }

    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::Apply(_, children) => 1 + children.iter().map(Term::size).sum::<usize>(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => match VAR_NAMES.get(*i) {
                Some(name) => f.write_str(name),
                None => write!(f, "x{}", i + 1),
            },
            Term::Apply(name, children) if children.is_empty() => f.write_str(name),
            Term::Apply(name, children) => {
                write!(f, "{name}(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}
