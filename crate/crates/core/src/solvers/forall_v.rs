//! `∀` over disjunction and constants, solved through its dual.
//!
//! Each axiom is contraposed over primed atoms (`A'` standing for `¬A`), which turns `∀` into
//! `∃` and the operators into conjunctions. Assertions and the query stay over unprimed atoms,
//! tied to the primed ones by `A ⊓ A' ⊑ ⊥`. The dual instance goes to EL completion and a
//! model is mapped back by complementing the primed atoms.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::{require_fragment, solve_el, Method, SolveResult, Status};
use crate::boolfun::{named, CloneName, NamedOperator, OperatorSet};
use crate::error::Result;
use crate::syntax::{
    nnf_dualize_with, signature, Axiom, Concept, ConceptAssertion, FreshNames, Interpretation,
    ProblemInstance, Quantifiers,
};

pub fn solve_forall_v(instance: &ProblemInstance) -> Result<SolveResult> {
    require_fragment(instance, Quantifiers::FORALL, CloneName::V, Method::ForallV)?;
    let mut names = FreshNames::for_instance(instance);
    let mut tbox = instance.tbox().to_vec();
    let mut abox = Vec::new();
    for a in &instance.ontology.abox_concepts {
        let concept = if a.concept.is_atomic() {
            a.concept.clone()
        } else {
            let x = Concept::Atomic(names.fresh("_X"));
            tbox.push(Axiom::new(x.clone(), a.concept.clone()));
            x
        };
        abox.push(ConceptAssertion {
            concept,
            individual: a.individual.clone(),
        });
    }
    let query = instance.query.as_ref().map(|q| {
        if q.is_atomic() {
            q.clone()
        } else {
            let x = Concept::Atomic(names.fresh("_X"));
            tbox.push(Axiom::new(x.clone(), q.clone()));
            x
        }
    });

    let mut ops = OperatorSet::default();
    let mut dual_ops: BTreeMap<Arc<str>, NamedOperator> = BTreeMap::new();
    for op in &instance.operators {
        let d = op.table.dual();
        let named = if d == op.table {
            op.clone()
        } else {
            NamedOperator::new(names.fresh(&format!("_d_{}", op.name)), d)
        };
        ops.insert(named.clone())?;
        dual_ops.insert(op.name.clone(), named);
    }
    let mut primed: BTreeMap<Arc<str>, Arc<str>> = BTreeMap::new();
    let dual = |c: &Concept, names: &mut FreshNames, primed: &mut BTreeMap<Arc<str>, Arc<str>>| {
        nnf_dualize_with(
            c,
            &mut |a| {
                primed
                    .entry(a.into())
                    .or_insert_with(|| names.fresh(&format!("_d_{a}")))
                    .clone()
            },
            &mut |op| dual_ops[&op.name].clone(),
        )
    };
    let mut out = ProblemInstance::new(instance.kind, OperatorSet::default());
    for ax in &tbox {
        let lhs = dual(&ax.rhs, &mut names, &mut primed);
        let rhs = dual(&ax.lhs, &mut names, &mut primed);
        out.ontology.tbox.push(Axiom::new(lhs, rhs));
    }
    let and = match ops.find_table(&named::and()) {
        Some(op) => op.clone(),
        None => NamedOperator::new(names.fresh("_and"), named::and()),
    };
    let bot = match ops.find_table(&named::bot()) {
        Some(op) => op.clone(),
        None => NamedOperator::new(names.fresh("_bot"), named::bot()),
    };
    ops.insert(and.clone())?;
    ops.insert(bot.clone())?;
    let mut atoms: Vec<Arc<str>> = signature(instance).atoms.into_iter().collect();
    for a in abox.iter().map(|a| &a.concept).chain(query.iter()) {
        if let Concept::Atomic(x) = a {
            if !atoms.contains(x) {
                atoms.push(x.clone());
            }
        }
    }
    for a in &atoms {
        let p = primed
            .entry(a.clone())
            .or_insert_with(|| names.fresh(&format!("_d_{a}")))
            .clone();
        out.ontology.tbox.push(Axiom::new(
            Concept::apply(&and, vec![Concept::Atomic(a.clone()), Concept::Atomic(p)]),
            Concept::apply(&bot, vec![]),
        ));
    }
    out.operators = ops;
    out.ontology.abox_concepts = abox;
    out.ontology.abox_roles = instance.ontology.abox_roles.clone();
    out.query = query;

    let mut result = solve_el(&out)?;
    result.method = Method::ForallV;
    if result.status == Status::Sat {
        let j = result.model.take().expect("EL completion returns a model");
        let original = signature(instance).atoms;
        let mut i = Interpretation::new(j.domain_size);
        i.roles = j.roles.clone();
        i.individuals = j.individuals.clone();
        for a in &original {
            let p = &primed[a];
            for x in 0..j.domain_size {
                if !j.concepts.get(&**p).is_some_and(|s| s.contains(&x)) {
                    i.add_concept(a, x);
                }
            }
        }
        result.model = Some(i);
    } else if let Some(w) = result.witness.as_mut() {
        w.insert(0, "on the dual ∃-instance:".into());
    }
    Ok(result)
}
