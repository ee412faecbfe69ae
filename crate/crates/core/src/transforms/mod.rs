//! Satisfiability-preserving rewrites between problem instances.
//!
//! Every transform is deterministic and only introduces `_`-prefixed names.
//! When a construction needs an operator that is not declared (for instance `⊤` or `⊓`),
//! a declared operator with the same table is reused, otherwise a fresh one is added.

mod base;
mod constants;
mod dualize;
mod lewis;
mod lift;
mod normal;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::boolfun::{named, NamedOperator, OperatorSet, Term, TruthTable};
use crate::error::{Error, Result};
use crate::syntax::{Concept, FreshNames, ProblemInstance, ProblemKind};

pub use base::change_base;
pub use constants::{simulate_constants, tcsat_to_tsat};
pub use dualize::{dualize, DualMode};
pub use lewis::lewis_relativize;
pub use lift::lift;
pub use normal::{eliminate_conjunction_nf7, is_normal_form, normalize_nf};

/// What a transform did.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TransformReport {
    pub input_kind: Option<ProblemKind>,
    pub output_kind: Option<ProblemKind>,
    pub fresh_names: Vec<String>,
    pub axioms_added: usize,
    pub axioms_rewritten: usize,
}

impl fmt::Display for TransformReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = |k: Option<ProblemKind>| k.map_or("-".to_string(), |k| k.to_string());
        write!(
            f,
            "{} -> {}: {} fresh names, {} axioms added, {} rewritten",
            kind(self.input_kind),
            kind(self.output_kind),
            self.fresh_names.len(),
            self.axioms_added,
            self.axioms_rewritten
        )
    }
}

/// A transformed instance with its report.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transformed {
    pub instance: ProblemInstance,
    pub report: TransformReport,
}

/// Shared state for building an output instance.
pub(crate) struct Builder {
    names: FreshNames,
    pub ops: OperatorSet,
    introduced: Vec<String>,
}

impl Builder {
    pub fn new(input: &ProblemInstance, ops: OperatorSet) -> Self {
        let mut names = FreshNames::for_instance(input);
        for op in &ops {
            names.reserve(&op.name);
        }
        Builder {
            names,
            ops,
            introduced: Vec::new(),
        }
    }

    pub fn fresh(&mut self, base: &str) -> Arc<str> {
        let n = self.names.fresh(base);
        self.introduced.push(n.to_string());
        n
    }

    pub fn numbered(&mut self, base: &str) -> Arc<str> {
        let n = self.names.numbered(base);
        self.introduced.push(n.to_string());
        n
    }

    /// An operator with this table: a declared one if present, else a fresh `base`.
    pub fn op(&mut self, table: TruthTable, base: &str) -> NamedOperator {
        if let Some(op) = self.ops.find_table(&table) {
            return op.clone();
        }
        let name = self.fresh(base);
        let op = NamedOperator::new(name, table);
        self.ops.insert(op.clone()).expect("fresh name");
        op
    }

    pub fn top(&mut self) -> Concept {
        Concept::apply(&self.op(named::top(), "_top"), vec![])
    }

    pub fn bot(&mut self) -> Concept {
        Concept::apply(&self.op(named::bot(), "_bot"), vec![])
    }

    pub fn and(&mut self, a: Concept, b: Concept) -> Concept {
        Concept::apply(&self.op(named::and(), "_and"), vec![a, b])
    }

    pub fn finish(self, input: &ProblemInstance, mut output: ProblemInstance) -> Transformed {
        output.operators = self.ops;
        let rewritten = input
            .tbox()
            .iter()
            .filter(|a| !output.tbox().contains(a))
            .count();
        let added = output
            .tbox()
            .iter()
            .filter(|a| !input.tbox().contains(a))
            .count();
        Transformed {
            report: TransformReport {
                input_kind: Some(input.kind),
                output_kind: Some(output.kind),
                fresh_names: self.introduced,
                axioms_added: added,
                axioms_rewritten: rewritten,
            },
            instance: output,
        }
    }
}

/// Named transforms, for pipelines and the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    Lift(ProblemKind),
    SimulateConstants,
    TcsatToTsat,
    Lewis,
    Dualize(DualMode),
    ChangeBase(OperatorSet),
    Normalize,
    Nf7,
}

impl Transform {
    pub fn apply(&self, instance: &ProblemInstance) -> Result<Transformed> {
        match self {
            Transform::Lift(kind) => lift(instance, *kind),
            Transform::SimulateConstants => simulate_constants(instance),
            Transform::TcsatToTsat => tcsat_to_tsat(instance),
            Transform::Lewis => lewis_relativize(instance),
            Transform::Dualize(mode) => dualize(instance, *mode),
            Transform::ChangeBase(ops) => change_base(instance, ops),
            Transform::Normalize => normalize_nf(instance),
            Transform::Nf7 => eliminate_conjunction_nf7(instance),
        }
    }
}

/// Transform names as used on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TransformName {
    Lift,
    SimulateConstants,
    TcsatToTsat,
    Lewis,
    Dualize,
    ChangeBase,
    Normalize,
    Nf7,
}

impl FromStr for TransformName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lift" => TransformName::Lift,
            "simulate-constants" => TransformName::SimulateConstants,
            "tcsat-to-tsat" => TransformName::TcsatToTsat,
            "lewis" => TransformName::Lewis,
            "dualize" => TransformName::Dualize,
            "change-base" => TransformName::ChangeBase,
            "normalize" => TransformName::Normalize,
            "nf7" => TransformName::Nf7,
            other => return Err(Error::Argument(format!("unknown transform `{other}`"))),
        })
    }
}

/// Applies the transforms left to right.
pub fn pipeline(instance: &ProblemInstance, steps: &[Transform]) -> Result<Transformed> {
    let mut current = Transformed {
        instance: instance.clone(),
        report: TransformReport {
            input_kind: Some(instance.kind),
            output_kind: Some(instance.kind),
            ..Default::default()
        },
    };
    for step in steps {
        let next = step.apply(&current.instance)?;
        current.report.output_kind = next.report.output_kind;
        current.report.fresh_names.extend(next.report.fresh_names);
        current.report.axioms_added += next.report.axioms_added;
        current.report.axioms_rewritten += next.report.axioms_rewritten;
        current.instance = next.instance;
    }
    Ok(current)
}

/// The concept obtained by substituting `args` for the variables of `term`.
pub(crate) fn instantiate(term: &Term, ops: &OperatorSet, args: &[Concept]) -> Concept {
    match term {
        Term::Var(i) => args[*i].clone(),
        Term::Apply(name, children) => {
            let op = ops.get(name).expect("witness terms use operators of the set");
            Concept::apply(
                op,
                children.iter().map(|c| instantiate(c, ops, args)).collect(),
            )
        }
    }
}
