use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfun::{named, CloneName, NamedOperator, OperatorSet, TruthTable};
use crate::error::{Error, Result};
use crate::syntax::{
    Axiom, Concept, ConceptAssertion, ProblemInstance, ProblemKind, Quantifiers, RoleAssertion,
};

/// The fragment a random instance is drawn from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub kind: ProblemKind,
    pub quantifiers: Quantifiers,
    pub operators: OperatorSet,
}

/// Upper bounds on the parts of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeParams {
    pub atoms: usize,
    pub roles: usize,
    pub axioms: usize,
    pub individuals: usize,
    pub assertions: usize,
    pub depth: usize,
}

impl Default for SizeParams {
    fn default() -> Self {
        SizeParams {
            atoms: 4,
            roles: 2,
            axioms: 5,
            individuals: 2,
            assertions: 3,
            depth: 2,
        }
    }
}

fn known_name(t: &TruthTable) -> Option<&'static str> {
    use named::*;
    let table: [(&str, TruthTable); 17] = [
        ("and", and()),
        ("or", or()),
        ("not", not()),
        ("xor", xor()),
        ("equiv", equiv()),
        ("nand", nand()),
        ("top", top()),
        ("bot", bot()),
        ("id", id()),
        ("andnot", and_not()),
        ("andor", and_or()),
        ("andeq", and_equiv()),
        ("sd", sd()),
        ("maj", maj()),
        ("majn", maj_neg()),
        ("xor3", xor3()),
        ("xnor3", xnor3()),
    ];
    table.iter().find(|(_, f)| f == t).map(|(n, _)| *n)
}

/// Names tables after the usual connectives where possible and `f0`, `f1`, … otherwise.
pub fn standard_operators(tables: &[TruthTable]) -> OperatorSet {
    let mut set = OperatorSet::default();
    let mut anon = 0;
    for t in tables {
        if set.find_table(t).is_some() {
            continue;
        }
        let name = match known_name(t) {
            Some(n) if set.get(n).is_none() => n.to_string(),
            _ => loop {
                let n = format!("f{anon}");
                anon += 1;
                if set.get(&n).is_none() {
                    break n;
                }
            },
        };
        set.insert(NamedOperator::new(name, *t)).expect("fresh name");
    }
    set
}

impl Profile {
    pub fn new(kind: ProblemKind, quantifiers: Quantifiers, operators: OperatorSet) -> Self {
        Profile {
            kind,
            quantifiers,
            operators,
        }
    }

    /// A profile over the standard base of a named clone.
    pub fn from_clone(kind: ProblemKind, quantifiers: Quantifiers, clone: CloneName) -> Self {
        Profile::new(kind, quantifiers, standard_operators(&clone.base()))
    }

    /// Parses `kind/quantifiers/clone`, e.g. `tsat/forall/E`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split('/').collect();
        let [kind, q, clone] = parts[..] else {
            return Err(Error::Argument(format!(
                "unknown profile `{s}`: expected kind/quantifiers/clone"
            )));
        };
        let unknown = |_| Error::Argument(format!("unknown profile `{s}`"));
        Ok(Profile::from_clone(
            kind.parse().map_err(unknown)?,
            q.parse().map_err(unknown)?,
            clone.parse().map_err(unknown)?,
        ))
    }
}

const LETTERS: &str = "ABCDEFGHIJKLMNOPQRSTUVWXYZ";

fn atom_name(i: usize) -> String {
    match LETTERS.chars().nth(i) {
        Some(c) => c.to_string(),
        None => format!("A{i}"),
    }
}

fn role_name(i: usize) -> String {
    match "RSTUVW".chars().nth(i) {
        Some(c) => c.to_string(),
        None => format!("R{i}"),
    }
}

fn individual_name(i: usize) -> String {
    match LETTERS.to_lowercase().chars().nth(i) {
        Some(c) => c.to_string(),
        None => format!("i{i}"),
    }
}

struct ConceptGen<'a> {
    profile: &'a Profile,
    size: &'a SizeParams,
    constants: Vec<&'a NamedOperator>,
    functions: Vec<&'a NamedOperator>,
}

impl<'a> ConceptGen<'a> {
    fn new(profile: &'a Profile, size: &'a SizeParams) -> Self {
        let (constants, functions) = profile.operators.iter().partition(|o| o.arity() == 0);
        ConceptGen {
            profile,
            size,
            constants,
            functions,
        }
    }

    fn leaf(&self, rng: &mut impl Rng) -> Concept {
        if !self.constants.is_empty() && (self.size.atoms == 0 || rng.gen_bool(0.2)) {
            let op = self.constants.choose(rng).expect("nonempty");
            Concept::apply(op, vec![])
        } else {
            Concept::atom(atom_name(rng.gen_range(0..self.size.atoms.max(1))))
        }
    }

    fn concept(&self, depth: usize, rng: &mut impl Rng) -> Concept {
        let q = self.profile.quantifiers;
        let roles = self.size.roles.max(1);
        let mut choices = Vec::new();
        if !self.functions.is_empty() {
            choices.push(0);
        }
        if q.exists {
            choices.push(1);
        }
        if q.forall {
            choices.push(2);
        }
        if depth == 0 || choices.is_empty() || rng.gen_bool(0.3) {
            return self.leaf(rng);
        }
        match *choices.choose(rng).expect("nonempty") {
            0 => {
                let op = *self.functions.choose(rng).expect("nonempty");
                let children = (0..op.arity()).map(|_| self.concept(depth - 1, rng)).collect();
                Concept::apply(op, children)
            }
            1 => Concept::exists(role_name(rng.gen_range(0..roles)), self.concept(depth - 1, rng)),
            _ => Concept::forall(role_name(rng.gen_range(0..roles)), self.concept(depth - 1, rng)),
        }
    }
}

/// Draws an instance of the profile from `rng`.
pub fn random_instance(profile: &Profile, size: &SizeParams, rng: &mut impl Rng) -> ProblemInstance {
    let gen = ConceptGen::new(profile, size);
    let kind = profile.kind;
    let mut inst = ProblemInstance::new(kind, profile.operators.clone());
    if kind.allows_tbox() && size.axioms > 0 {
        for _ in 0..rng.gen_range(1..=size.axioms) {
            let lhs = gen.concept(size.depth, rng);
            let rhs = gen.concept(size.depth, rng);
            inst.ontology.tbox.push(Axiom::new(lhs, rhs));
        }
    }
    if kind.allows_abox() {
        let individuals = size.individuals.max(1);
        let ind = |rng: &mut dyn rand::RngCore| individual_name(rng.gen_range(0..individuals));
        for _ in 0..rng.gen_range(1..=size.assertions.max(1)) {
            let concept = gen.concept(size.depth, rng);
            inst.ontology.abox_concepts.push(ConceptAssertion {
                concept,
                individual: ind(rng).into(),
            });
        }
        if size.roles > 0 {
            for _ in 0..rng.gen_range(0..=size.assertions) {
                let role = role_name(rng.gen_range(0..size.roles));
                let (from, to) = (ind(rng), ind(rng));
                inst.ontology.abox_roles.push(RoleAssertion {
                    role: role.into(),
                    from: from.into(),
                    to: to.into(),
                });
            }
        }
    }
    if kind.has_query() {
        inst.query = Some(gen.concept(size.depth, rng));
    }
    inst
}

/// Reproducible random instance for a seed.
pub fn gen_random(profile: &Profile, seed: u64, size: &SizeParams) -> ProblemInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_instance(profile, size, &mut rng)
}
