use std::collections::HashMap;
use std::str::FromStr;
use std::sync::Arc;

use super::{Builder, Transformed};
use crate::boolfun::{NamedOperator, OperatorSet};
use crate::error::{Error, Result};
use crate::syntax::{nnf_dualize_with, Axiom, Concept, ProblemInstance, ProblemKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DualMode {
    Tsat,
    Tcsat,
}

impl FromStr for DualMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "tsat" => Ok(DualMode::Tsat),
            "tcsat" => Ok(DualMode::Tcsat),
            _ => Err(Error::Argument(format!("unknown dualization mode `{s}`"))),
        }
    }
}

struct Dualizer {
    atoms: HashMap<Arc<str>, Arc<str>>,
    ops: HashMap<Arc<str>, NamedOperator>,
}

impl Dualizer {
    fn new(b: &mut Builder, source: &OperatorSet, target: &mut OperatorSet) -> Result<Self> {
        let mut ops = HashMap::new();
        for op in source {
            let dual = op.table.dual();
            let named = if dual == op.table {
                op.clone()
            } else if let Some(existing) = source.find_table(&dual) {
                existing.clone()
            } else {
                NamedOperator::new(b.fresh(&format!("_d_{}", op.name)), dual)
            };
            target.insert(named.clone())?;
            ops.insert(op.name.clone(), named);
        }
        Ok(Dualizer {
            atoms: HashMap::new(),
            ops,
        })
    }

    fn concept(&mut self, b: &mut Builder, c: &Concept) -> Concept {
        let Dualizer { atoms, ops } = self;
        nnf_dualize_with(
            c,
            &mut |a| {
                atoms
                    .entry(a.into())
                    .or_insert_with(|| b.fresh(&format!("_d_{a}")))
                    .clone()
            },
            &mut |op| ops[&op.name].clone(),
        )
    }
}

/// Contraposes every axiom over dual atoms and dual operators.
///
/// `tsat` mode maps `C ⊑ D` to `D' ⊑ C'` where `'` is the dual in negation normal form.
/// `tcsat` mode keeps the query `C` and adds `C ⊓ C' ⊑ ⊥`.
pub fn dualize(instance: &ProblemInstance, mode: DualMode) -> Result<Transformed> {
    let expected = match mode {
        DualMode::Tsat => ProblemKind::Tsat,
        DualMode::Tcsat => ProblemKind::Tcsat,
    };
    if instance.kind != expected {
        return Err(Error::Unsupported(format!(
            "{mode:?} dualization expects {expected}, got {}",
            instance.kind
        )));
    }
    let mut b = Builder::new(instance, OperatorSet::default());
    let mut ops = OperatorSet::default();
    let mut d = Dualizer::new(&mut b, &instance.operators, &mut ops)?;
    b.ops = ops;
    let mut out = ProblemInstance::new(instance.kind, OperatorSet::default());
    for ax in instance.tbox() {
        let lhs = d.concept(&mut b, &ax.rhs);
        let rhs = d.concept(&mut b, &ax.lhs);
        out.ontology.tbox.push(Axiom::new(lhs, rhs));
    }
    if let Some(q) = &instance.query {
        let dual = d.concept(&mut b, q);
        let mut used = Vec::new();
        q.visit(&mut |n| {
            if let Concept::Apply(op, _) = n {
                used.push(op.clone());
            }
        });
        for op in used {
            b.ops.insert(op)?;
        }
        let both = b.and(q.clone(), dual);
        let bot = b.bot();
        out.ontology.tbox.push(Axiom::new(both, bot));
        out.query = Some(q.clone());
    }
    Ok(b.finish(instance, out))
}
