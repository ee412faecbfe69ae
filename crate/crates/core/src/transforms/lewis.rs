use std::collections::BTreeSet;

use super::{Builder, Transformed};
use crate::boolfun::OperatorSet;
use crate::error::{Error, Result};
use crate::syntax::{signature, Axiom, Concept, ProblemInstance, ProblemKind};

/// Trades `⊤` for a fresh atom `_T` that is queried for nonemptiness.
///
/// Each axiom has its `⊤` occurrences replaced by `_T`; every subconcept `C` of the TBox
/// adds `C' ⊑ _T`. With `∀` present, `_T ⊑ ∀R._T` closes `_T` under every role.
pub fn lewis_relativize(instance: &ProblemInstance) -> Result<Transformed> {
    if instance.kind != ProblemKind::Tsat {
        return Err(Error::Unsupported(format!(
            "expected a TSAT instance, got {}",
            instance.kind
        )));
    }
    let rest = OperatorSet::new(
        instance
            .operators
            .iter()
            .filter(|o| o.table.constant_value() != Some(true))
            .cloned(),
    )?;
    let mut b = Builder::new(instance, rest);
    let t = Concept::Atomic(b.fresh("_T"));
    let relativize = |c: &Concept| {
        c.map_bottom_up(&mut |n| {
            if n.constant_value() == Some(true) {
                t.clone()
            } else {
                n
            }
        })
    };
    let mut out = ProblemInstance::new(ProblemKind::Tcsat, OperatorSet::default());
    let mut subconcepts = Vec::new();
    let mut seen = BTreeSet::new();
    for ax in instance.tbox() {
        out.ontology
            .tbox
            .push(Axiom::new(relativize(&ax.lhs), relativize(&ax.rhs)));
        ax.lhs.subconcepts_into(&mut subconcepts, &mut seen);
        ax.rhs.subconcepts_into(&mut subconcepts, &mut seen);
    }
    for c in &subconcepts {
        out.ontology.tbox.push(Axiom::new(relativize(c), t.clone()));
    }
    let sig = signature(instance);
    if sig.quantifiers.forall {
        for r in &sig.roles {
            out.ontology
                .tbox
                .push(Axiom::new(t.clone(), Concept::forall(r.clone(), t.clone())));
        }
    }
    out.query = Some(t.clone());
    Ok(b.finish(instance, out))
}
