use super::{Builder, Transformed};
use crate::error::{Error, Result};
use crate::syntax::{Concept, ConceptAssertion, ProblemInstance, ProblemKind};

use ProblemKind::*;

fn next(from: ProblemKind, to: ProblemKind) -> Option<ProblemKind> {
    let step = match (from, to) {
        (Csat, Tcsat) => Tcsat,
        (Csat, Osat | Ocsat) => Osat,
        (Tsat, Tcsat) => Tcsat,
        (Tsat, Osat | Ocsat) => Osat,
        (Tcsat, Osat | Ocsat) => Osat,
        (Osat, Ocsat) => Ocsat,
        (Ocsat, Osat) => Osat,
        _ => return None,
    };
    Some(step)
}

/// Embeds an instance into a more expressive problem: `CSAT → OSAT`, `TSAT → TCSAT → OSAT`,
/// and `OSAT ↔ OCSAT`, composed as needed.
pub fn lift(instance: &ProblemInstance, target: ProblemKind) -> Result<Transformed> {
    let mut b = Builder::new(instance, instance.operators.clone());
    let mut out = instance.clone();
    while out.kind != target {
        let step = next(out.kind, target).ok_or_else(|| {
            Error::Unsupported(format!("cannot lift {} to {}", instance.kind, target))
        })?;
        match step {
            Tcsat | Ocsat => {
                if out.query.is_none() {
                    out.query = Some(Concept::Atomic(b.fresh("_A")));
                }
            }
            Osat => {
                if let Some(c) = out.query.take() {
                    out.ontology.abox_concepts.push(ConceptAssertion {
                        concept: c,
                        individual: b.fresh("_a"),
                    });
                }
            }
            Tsat | Csat => unreachable!("no lift step produces {step}"),
        }
        out.kind = step;
    }
    Ok(b.finish(instance, out))
}
