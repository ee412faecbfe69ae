use std::collections::HashMap;
use std::sync::Arc;

use super::{instantiate, Builder, Transformed};
use crate::boolfun::{contains_function, witness_term, OperatorSet, Term};
use crate::error::{Error, Result};
use crate::syntax::{Axiom, Concept, ProblemInstance};

struct Compiler<'a> {
    target: &'a OperatorSet,
    witnesses: HashMap<Arc<str>, Term>,
    gates: HashMap<Concept, Concept>,
    definitions: Vec<Axiom>,
    inline: bool,
}

impl Compiler<'_> {
    fn gate(&mut self, b: &mut Builder, c: &Concept) -> Concept {
        if let Concept::Atomic(_) = c {
            return c.clone();
        }
        if let Some(g) = self.gates.get(c) {
            return g.clone();
        }
        let g = if self.inline {
            Concept::Atomic("_u".into())
        } else {
            Concept::Atomic(b.numbered("_g"))
        };
        let body = match c {
            Concept::Apply(op, cs) => {
                let args: Vec<Concept> = if cs.is_empty() && self.inline {
                    vec![Concept::Atomic(b.fresh("_u"))]
                } else if cs.is_empty() {
                    vec![g.clone()]
                } else {
                    cs.iter().map(|x| self.gate(b, x)).collect()
                };
                instantiate(&self.witnesses[&op.name], self.target, &args)
            }
            Concept::Exists(r, x) => Concept::exists(r.clone(), self.gate(b, x)),
            Concept::Forall(r, x) => Concept::forall(r.clone(), self.gate(b, x)),
            Concept::Atomic(_) => unreachable!(),
        };
        if self.inline {
            self.gates.insert(c.clone(), body.clone());
            return body;
        }
        self.definitions.push(Axiom::new(g.clone(), body.clone()));
        self.definitions.push(Axiom::new(body, g.clone()));
        self.gates.insert(c.clone(), g.clone());
        g
    }
}

/// Rewrites an instance over an equivalent operator base.
///
/// Every compound subconcept gets a gate atom defined by two axioms over the target base,
/// so the output stays linear in the input. CSAT instances have no TBox and are expanded inline.
pub fn change_base(instance: &ProblemInstance, target: &OperatorSet) -> Result<Transformed> {
    let source = instance.operators.tables();
    let goal = target.tables();
    for (from, to, label) in [(&source, &goal, "target"), (&goal, &source, "source")] {
        for f in from {
            if !contains_function(to, f)? {
                return Err(Error::NotEquivalent(format!(
                    "{f} is not expressible in the {label} operators"
                )));
            }
        }
    }
    let mut witnesses = HashMap::new();
    for op in &instance.operators {
        witnesses.insert(op.name.clone(), witness_term(target, &op.table)?);
    }
    let mut b = Builder::new(instance, target.clone());
    let mut comp = Compiler {
        target,
        witnesses,
        gates: HashMap::new(),
        definitions: Vec::new(),
        inline: !instance.kind.allows_tbox(),
    };
    let mut out = instance.clone();
    for ax in &mut out.ontology.tbox {
        *ax = Axiom::new(comp.gate(&mut b, &ax.lhs), comp.gate(&mut b, &ax.rhs));
    }
    for a in &mut out.ontology.abox_concepts {
        a.concept = comp.gate(&mut b, &a.concept);
    }
    if let Some(q) = &out.query {
        out.query = Some(comp.gate(&mut b, q));
    }
    out.ontology.tbox.extend(comp.definitions);
    Ok(b.finish(instance, out))
}
