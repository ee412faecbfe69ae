use std::fmt::{self, Write};

use super::{Concept, ProblemInstance};

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Atomic(a) => f.write_str(a),
            Concept::Apply(op, cs) => {
                write!(f, "({}", op.name)?;
                for c in cs {
                    write!(f, " {c}")?;
                }
                f.write_str(")")
            }
            Concept::Exists(r, c) => write!(f, "(some {r} {c})"),
            Concept::Forall(r, c) => write!(f, "(all {r} {c})"),
        }
    }
}

/// Canonical text form. Sections appear in a fixed order and keep the instance's order.
pub fn print(instance: &ProblemInstance) -> String {
    let mut out = String::new();
    for op in &instance.operators {
        let _ = writeln!(out, "operator {} {} {}", op.name, op.arity(), op.table.bitstring());
    }
    let _ = writeln!(out, "problem {}", instance.kind.name());
    if instance.kind.allows_tbox() {
        out.push_str("tbox\n");
        for ax in instance.tbox() {
            let _ = writeln!(out, "  {} <= {}", ax.lhs, ax.rhs);
        }
    }
    if instance.ontology.has_abox() {
        out.push_str("abox\n");
        for a in &instance.ontology.abox_concepts {
            let _ = writeln!(out, "  {}({})", a.concept, a.individual);
        }
        for r in &instance.ontology.abox_roles {
            let _ = writeln!(out, "  {}({},{})", r.role, r.from, r.to);
        }
    }
    if let Some(q) = &instance.query {
        let _ = writeln!(out, "query {q}");
    }
    out
}
