use super::{instantiate, Builder, Transformed};
use crate::boolfun::{named, witness_term, OperatorSet};
use crate::error::{Error, Result};
use crate::syntax::{Axiom, Concept, ProblemInstance, ProblemKind};

fn uses_constants(instance: &ProblemInstance) -> bool {
    let mut found = false;
    for c in instance.concepts() {
        c.visit(&mut |n| found |= n.constant_value().is_some());
    }
    found
}

/// Replaces constant operators by the atoms `_top` and `_bot`, pinned down by
/// `¬_top ⊑ _top` and `_bot ⊑ ¬_bot` where `¬` is expressed over the remaining operators.
pub fn simulate_constants(instance: &ProblemInstance) -> Result<Transformed> {
    let rest = OperatorSet::new(
        instance
            .operators
            .iter()
            .filter(|o| o.table.constant_value().is_none())
            .cloned(),
    )?;
    let mut b = Builder::new(instance, rest.clone());
    let mut out = instance.clone();
    if !uses_constants(instance) {
        return Ok(b.finish(instance, out));
    }
    if !instance.kind.allows_tbox() {
        return Err(Error::Unsupported(format!(
            "{} instances have no TBox to pin constants",
            instance.kind
        )));
    }
    let neg = match witness_term(&rest, &named::not()) {
        Ok(t) => t,
        Err(Error::NotExpressible(_)) => {
            return Err(Error::NotExpressible(
                "negation is not expressible in the non-constant operators".into(),
            ))
        }
        Err(e) => return Err(e),
    };
    let top = Concept::Atomic(b.fresh("_top"));
    let bot = Concept::Atomic(b.fresh("_bot"));
    let mut replace = |c: &Concept| {
        c.map_bottom_up(&mut |n| match n.constant_value() {
            Some(true) => top.clone(),
            Some(false) => bot.clone(),
            None => n,
        })
    };
    for ax in &mut out.ontology.tbox {
        *ax = Axiom::new(replace(&ax.lhs), replace(&ax.rhs));
    }
    for a in &mut out.ontology.abox_concepts {
        a.concept = replace(&a.concept);
    }
    out.query = out.query.as_ref().map(&mut replace);
    out.ontology.tbox.push(Axiom::new(
        instantiate(&neg, &rest, std::slice::from_ref(&top)),
        top.clone(),
    ));
    out.ontology
        .tbox
        .push(Axiom::new(bot.clone(), instantiate(&neg, &rest, std::slice::from_ref(&bot))));
    Ok(b.finish(instance, out))
}

/// `(T, C) ↦ T ∪ {⊤ ⊑ ∃_R.C}` with a fresh role `_R`.
pub fn tcsat_to_tsat(instance: &ProblemInstance) -> Result<Transformed> {
    if !matches!(instance.kind, ProblemKind::Tcsat | ProblemKind::Csat) {
        return Err(Error::Unsupported(format!(
            "expected a TCSAT instance, got {}",
            instance.kind
        )));
    }
    let query = instance
        .query
        .clone()
        .ok_or_else(|| Error::Argument("missing query".into()))?;
    let mut b = Builder::new(instance, instance.operators.clone());
    let role = b.fresh("_R");
    let top = b.top();
    let mut out = instance.clone();
    out.kind = ProblemKind::Tsat;
    out.query = None;
    out.ontology.tbox.push(Axiom::new(top, Concept::exists(role, query)));
    Ok(b.finish(instance, out))
}
