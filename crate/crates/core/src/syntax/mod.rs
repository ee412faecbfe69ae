//! Concepts, axioms, ontologies and problem instances.

mod fresh;
mod parse;
mod print;
mod semantics;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::boolfun::{NamedOperator, OperatorSet};
use crate::error::Error;

pub use fresh::FreshNames;
pub use parse::{parse, parse_operators, parse_with, ParseOptions};
pub use print::print;
pub use semantics::{check_model, evaluate_concept, Interpretation};

/// A concept over declared operators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Atomic(Arc<str>),
    Apply(NamedOperator, Vec<Concept>),
    Exists(Arc<str>, Box<Concept>),
    Forall(Arc<str>, Box<Concept>),
}

impl Concept {
    pub fn atom(name: impl Into<Arc<str>>) -> Self {
        Concept::Atomic(name.into())
    }

    pub fn apply(op: &NamedOperator, children: Vec<Concept>) -> Self {
        debug_assert_eq!(op.arity(), children.len());
        Concept::Apply(op.clone(), children)
    }

    pub fn exists(role: impl Into<Arc<str>>, child: Concept) -> Self {
        Concept::Exists(role.into(), Box::new(child))
    }

    pub fn forall(role: impl Into<Arc<str>>, child: Concept) -> Self {
        Concept::Forall(role.into(), Box::new(child))
    }

    pub fn children(&self) -> Vec<&Concept> {
        match self {
            Concept::Atomic(_) => Vec::new(),
            Concept::Apply(_, cs) => cs.iter().collect(),
            Concept::Exists(_, c) | Concept::Forall(_, c) => vec![c],
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// Distinct subconcepts, each listed after its children.
    pub fn subconcepts_into(&self, out: &mut Vec<Concept>, seen: &mut BTreeSet<Concept>) {
        if seen.contains(self) {
            return;
        }
        for c in self.children() {
            c.subconcepts_into(out, seen);
        }
        seen.insert(self.clone());
        out.push(self.clone());
    }

    pub fn visit(&self, f: &mut impl FnMut(&Concept)) {
        f(self);
        for c in self.children() {
            c.visit(f);
        }
    }

    /// Rebuilds the concept bottom-up, applying `f` to every node after its children.
    pub fn map_bottom_up(&self, f: &mut impl FnMut(Concept) -> Concept) -> Concept {
        let rebuilt = match self {
            Concept::Atomic(_) => self.clone(),
            Concept::Apply(op, cs) => {
                Concept::Apply(op.clone(), cs.iter().map(|c| c.map_bottom_up(f)).collect())
            }
            Concept::Exists(r, c) => Concept::Exists(r.clone(), Box::new(c.map_bottom_up(f))),
            Concept::Forall(r, c) => Concept::Forall(r.clone(), Box::new(c.map_bottom_up(f))),
        };
        f(rebuilt)
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Concept::Atomic(_))
    }

    /// The constant value when this is an application of a constant operator.
    pub fn constant_value(&self) -> Option<bool> {
        match self {
            Concept::Apply(op, _) => op.table.constant_value(),
            _ => None,
        }
    }
}

/// `lhs ⊑ rhs`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axiom {
    pub lhs: Concept,
    pub rhs: Concept,
}

impl Axiom {
    pub fn new(lhs: Concept, rhs: Concept) -> Self {
        Axiom { lhs, rhs }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConceptAssertion {
    pub concept: Concept,
    pub individual: Arc<str>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RoleAssertion {
    pub role: Arc<str>,
    pub from: Arc<str>,
    pub to: Arc<str>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Ontology {
    pub tbox: Vec<Axiom>,
    pub abox_concepts: Vec<ConceptAssertion>,
    pub abox_roles: Vec<RoleAssertion>,
}

impl Ontology {
    pub fn has_abox(&self) -> bool {
        !self.abox_concepts.is_empty() || !self.abox_roles.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ProblemKind {
    Csat,
    Tsat,
    Tcsat,
    Osat,
    Ocsat,
}

impl ProblemKind {
    pub const ALL: [ProblemKind; 5] = [
        ProblemKind::Csat,
        ProblemKind::Tsat,
        ProblemKind::Tcsat,
        ProblemKind::Osat,
        ProblemKind::Ocsat,
    ];

    pub fn has_query(self) -> bool {
        matches!(self, ProblemKind::Csat | ProblemKind::Tcsat | ProblemKind::Ocsat)
    }

    pub fn allows_tbox(self) -> bool {
        self != ProblemKind::Csat
    }

    pub fn allows_abox(self) -> bool {
        matches!(self, ProblemKind::Osat | ProblemKind::Ocsat)
    }

    pub fn name(self) -> &'static str {
        match self {
            ProblemKind::Csat => "csat",
            ProblemKind::Tsat => "tsat",
            ProblemKind::Tcsat => "tcsat",
            ProblemKind::Osat => "osat",
            ProblemKind::Ocsat => "ocsat",
        }
    }
}

impl fmt::Display for ProblemKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name().to_uppercase())
    }
}

impl FromStr for ProblemKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ProblemKind::ALL
            .iter()
            .copied()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Argument(format!("unknown problem kind `{s}`")))
    }
}

/// A decision problem together with its input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemInstance {
    pub kind: ProblemKind,
    pub operators: OperatorSet,
    pub ontology: Ontology,
    pub query: Option<Concept>,
}

impl ProblemInstance {
    pub fn new(kind: ProblemKind, operators: OperatorSet) -> Self {
        ProblemInstance {
            kind,
            operators,
            ontology: Ontology::default(),
            query: None,
        }
    }

    pub fn tbox(&self) -> &[Axiom] {
        &self.ontology.tbox
    }

    /// Every concept occurring in the instance: axiom sides, assertions, then the query.
    pub fn concepts(&self) -> impl Iterator<Item = &Concept> {
        self.ontology
            .tbox
            .iter()
            .flat_map(|a| [&a.lhs, &a.rhs])
            .chain(self.ontology.abox_concepts.iter().map(|a| &a.concept))
            .chain(self.query.iter())
    }

    /// Checks the structural invariants tying the kind to the present components.
    pub fn validate(&self) -> Result<(), Error> {
        if self.kind.has_query() != self.query.is_some() {
            return Err(Error::Argument(format!(
                "{} instances {} a query",
                self.kind,
                if self.kind.has_query() { "require" } else { "do not take" }
            )));
        }
        if !self.kind.allows_tbox() && !self.ontology.tbox.is_empty() {
            return Err(Error::Argument(format!("{} instances take no TBox", self.kind)));
        }
        if !self.kind.allows_abox() && self.ontology.has_abox() {
            return Err(Error::Argument(format!("{} instances take no ABox", self.kind)));
        }
        for c in self.concepts() {
            let mut bad = None;
            c.visit(&mut |n| {
                if let Concept::Apply(op, cs) = n {
                    if self.operators.get(&op.name).map(|o| o.table) != Some(op.table) {
                        bad = Some(format!("operator `{}` is not declared", op.name));
                    } else if cs.len() != op.arity() {
                        bad = Some(format!("operator `{}` applied to {} arguments", op.name, cs.len()));
                    }
                }
            });
            if let Some(msg) = bad {
                return Err(Error::Argument(msg));
            }
        }
        Ok(())
    }
}

/// A subset of `{∃, ∀}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quantifiers {
    pub exists: bool,
    pub forall: bool,
}

impl Quantifiers {
    pub const NONE: Quantifiers = Quantifiers { exists: false, forall: false };
    pub const EXISTS: Quantifiers = Quantifiers { exists: true, forall: false };
    pub const FORALL: Quantifiers = Quantifiers { exists: false, forall: true };
    pub const BOTH: Quantifiers = Quantifiers { exists: true, forall: true };
    pub const ALL: [Quantifiers; 4] = [Self::NONE, Self::FORALL, Self::EXISTS, Self::BOTH];

    pub fn is_empty(self) -> bool {
        !self.exists && !self.forall
    }

    pub fn is_singleton(self) -> bool {
        self.exists != self.forall
    }

    pub fn is_subset_of(self, other: Quantifiers) -> bool {
        (!self.exists || other.exists) && (!self.forall || other.forall)
    }

    pub fn swapped(self) -> Quantifiers {
        Quantifiers { exists: self.forall, forall: self.exists }
    }

    pub fn keyword(self) -> &'static str {
        match (self.exists, self.forall) {
            (false, false) => "none",
            (true, false) => "exists",
            (false, true) => "forall",
            (true, true) => "both",
        }
    }
}

impl fmt::Display for Quantifiers {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match (self.exists, self.forall) {
            (false, false) => "∅",
            (true, false) => "∃",
            (false, true) => "∀",
            (true, true) => "∃∀",
        })
    }
}

impl FromStr for Quantifiers {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Quantifiers::ALL
            .iter()
            .copied()
            .find(|q| q.keyword().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Argument(format!("unknown quantifier set `{s}`")))
    }
}

/// The symbols an instance actually uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub operators: OperatorSet,
    pub quantifiers: Quantifiers,
    pub atoms: BTreeSet<Arc<str>>,
    pub roles: BTreeSet<Arc<str>>,
    pub individuals: BTreeSet<Arc<str>>,
}

pub fn signature(instance: &ProblemInstance) -> Signature {
    let mut used = BTreeSet::new();
    let mut quantifiers = Quantifiers::NONE;
    let mut atoms = BTreeSet::new();
    let mut roles = BTreeSet::new();
    for c in instance.concepts() {
        c.visit(&mut |n| match n {
            Concept::Atomic(a) => {
                atoms.insert(a.clone());
            }
            Concept::Apply(op, _) => {
                used.insert(op.name.clone());
            }
            Concept::Exists(r, _) => {
                quantifiers.exists = true;
                roles.insert(r.clone());
            }
            Concept::Forall(r, _) => {
                quantifiers.forall = true;
                roles.insert(r.clone());
            }
        });
    }
    let mut individuals = BTreeSet::new();
    for a in &instance.ontology.abox_concepts {
        individuals.insert(a.individual.clone());
    }
    for r in &instance.ontology.abox_roles {
        roles.insert(r.role.clone());
        individuals.insert(r.from.clone());
        individuals.insert(r.to.clone());
    }
    let operators = OperatorSet::new(
        instance
            .operators
            .iter()
            .filter(|o| used.contains(&o.name))
            .cloned(),
    )
    .expect("subset of a valid operator set");
    Signature {
        operators,
        quantifiers,
        atoms,
        roles,
        individuals,
    }
}

/// The dual concept in negation normal form.
///
/// Represents `¬c` once every atom `A` is read as `¬_d_A`: operators become their duals,
/// quantifiers are swapped. Self-dual operators keep their name, others get a `_d_` prefix.
pub fn nnf_dualize(c: &Concept) -> Concept {
    nnf_dualize_with(
        c,
        &mut |a| format!("_d_{a}").into(),
        &mut |op| {
            if op.table.dual() == op.table {
                op.clone()
            } else {
                NamedOperator::new(format!("_d_{}", op.name), op.table.dual())
            }
        },
    )
}

/// [`nnf_dualize`] with caller-chosen names for dual atoms and operators.
pub fn nnf_dualize_with(
    c: &Concept,
    atom: &mut impl FnMut(&str) -> Arc<str>,
    op: &mut impl FnMut(&NamedOperator) -> NamedOperator,
) -> Concept {
    match c {
        Concept::Atomic(a) => Concept::Atomic(atom(a)),
        Concept::Apply(f, cs) => {
            let g = op(f);
            debug_assert_eq!(g.table, f.table.dual());
            Concept::Apply(g, cs.iter().map(|c| nnf_dualize_with(c, atom, op)).collect())
        }
        Concept::Exists(r, c) => Concept::forall(r.clone(), nnf_dualize_with(c, atom, op)),
        Concept::Forall(r, c) => Concept::exists(r.clone(), nnf_dualize_with(c, atom, op)),
    }
}
