//! TBox satisfiability for `∀` over conjunction and constants.
//!
//! For a set `X` of atoms, `M(X)` is the least set containing `X ∪ {⊤}` that is closed under
//! the Horn axioms and under `∀R.A ⊑ B`: with `Y = {D | C ∈ M(X), C ⊑ ∀R.D}`, `B` joins `M(X)`
//! once `A` or `⊥` is in `M(Y)`. All `M(·)` are computed together as a least fixpoint.
//! The TBox is unsatisfiable iff `⊥ ∈ M({⊤})`.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use super::{require_fragment, Method, SolveResult, Stats, Status};
use crate::boolfun::CloneName;
use crate::error::{Error, Result};
use crate::syntax::{signature, Concept, Interpretation, ProblemInstance, Quantifiers};
use crate::transforms::normalize_nf;

const TOP: usize = 0;
const BOT: usize = 1;

type Set = BTreeSet<usize>;

#[derive(Default)]
struct Rules {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, usize>,
    roles: Vec<Arc<str>>,
    sub: Vec<(usize, usize)>,
    conj: Vec<(usize, usize, usize)>,
    /// `∀R.A ⊑ B` as `(R, A, B)`.
    all_lhs: Vec<(usize, usize, usize)>,
    /// `A ⊑ ∀R.B` as `(A, R, B)`.
    all_rhs: Vec<(usize, usize, usize)>,
}

impl Rules {
    fn atom(&mut self, c: &Concept) -> Result<usize> {
        match c {
            Concept::Atomic(a) => Ok(match self.ids.get(a) {
                Some(&i) => i,
                None => {
                    self.names.push(a.clone());
                    self.ids.insert(a.clone(), self.names.len() - 1);
                    self.names.len() - 1
                }
            }),
            Concept::Apply(op, cs) if cs.is_empty() => match op.table.constant_value() {
                Some(true) => Ok(TOP),
                Some(false) => Ok(BOT),
                None => Err(Error::Fragment(format!("unexpected operator `{}`", op.name))),
            },
            other => Err(Error::Fragment(format!("`{other}` is not normalized"))),
        }
    }

    fn role(&mut self, r: &Arc<str>) -> usize {
        match self.roles.iter().position(|x| x == r) {
            Some(i) => i,
            None => {
                self.roles.push(r.clone());
                self.roles.len() - 1
            }
        }
    }

    fn load(instance: &ProblemInstance) -> Result<Self> {
        let mut rules = Rules {
            names: vec!["⊤".into(), "⊥".into()],
            ..Default::default()
        };
        for ax in instance.tbox() {
            match (&ax.lhs, &ax.rhs) {
                (Concept::Forall(r, a), b) => {
                    let t = (rules.role(r), rules.atom(a)?, rules.atom(b)?);
                    rules.all_lhs.push(t);
                }
                (a, Concept::Forall(r, b)) => {
                    let t = (rules.atom(a)?, rules.role(r), rules.atom(b)?);
                    rules.all_rhs.push(t);
                }
                (Concept::Apply(_, cs), b) if cs.len() == 2 => {
                    let t = (rules.atom(&cs[0])?, rules.atom(&cs[1])?, rules.atom(b)?);
                    rules.conj.push(t);
                }
                (a, b) => {
                    let t = (rules.atom(a)?, rules.atom(b)?);
                    rules.sub.push(t);
                }
            }
        }
        Ok(rules)
    }

    /// `{D | C ∈ m, C ⊑ ∀r.D}`.
    fn successor_key(&self, m: &Set, r: usize) -> Set {
        self.all_rhs
            .iter()
            .filter(|&&(c, rr, _)| rr == r && m.contains(&c))
            .map(|&(_, _, d)| d)
            .collect()
    }
}

struct Fixpoint<'a> {
    rules: &'a Rules,
    keys: Vec<Set>,
    index: BTreeMap<Set, usize>,
    sets: Vec<Set>,
    /// Insertion log of the root set, for the certificate.
    log: Vec<String>,
    insertions: u64,
}

impl<'a> Fixpoint<'a> {
    fn entry(&mut self, key: Set) -> usize {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let mut init = key.clone();
        init.insert(TOP);
        self.index.insert(key.clone(), self.keys.len());
        self.keys.push(key);
        self.sets.push(init);
        self.keys.len() - 1
    }

    fn add(&mut self, i: usize, a: usize, why: impl FnOnce() -> String) -> bool {
        if !self.sets[i].insert(a) {
            return false;
        }
        self.insertions += 1;
        if i == 0 {
            self.log.push(format!("{} ∈ M(⊤) by {}", self.rules.names[a], why()));
        }
        true
    }

    /// One round of rule applications on entry `i`; true if it grew.
    fn step(&mut self, i: usize) -> bool {
        let r = self.rules;
        let n = |x: usize| r.names[x].clone();
        let mut grew = false;
        for &(a, b) in &r.sub {
            if self.sets[i].contains(&a) {
                grew |= self.add(i, b, || format!("{} ⊑ {}", n(a), n(b)));
            }
        }
        for &(a, b, c) in &r.conj {
            if self.sets[i].contains(&a) && self.sets[i].contains(&b) {
                grew |= self.add(i, c, || format!("{} ⊓ {} ⊑ {}", n(a), n(b), n(c)));
            }
        }
        for role in 0..r.roles.len() {
            let key = r.successor_key(&self.sets[i], role);
            let j = self.entry(key);
            for &(rr, a, b) in &r.all_lhs {
                if rr != role {
                    continue;
                }
                let forced = self.sets[j].contains(&a) || self.sets[j].contains(&BOT);
                if forced {
                    grew |= self.add(i, b, || {
                        format!("∀{}.{} ⊑ {} (successors forced into {})", r.roles[rr], n(a), n(b), n(a))
                    });
                }
            }
        }
        grew
    }

    fn run(&mut self) {
        loop {
            let mut changed = false;
            let mut i = 0;
            while i < self.keys.len() {
                changed |= self.step(i);
                i += 1;
            }
            if !changed {
                break;
            }
        }
    }
}

pub fn solve_saturation(instance: &ProblemInstance) -> Result<SolveResult> {
    require_fragment(instance, Quantifiers::FORALL, CloneName::E, Method::Saturation)?;
    if instance.ontology.has_abox() || instance.query.is_some() {
        return Err(Error::Fragment(
            "saturation decides TBox satisfiability only".into(),
        ));
    }
    let normal = normalize_nf(instance)?.instance;
    let rules = Rules::load(&normal)?;
    let mut fp = Fixpoint {
        rules: &rules,
        keys: Vec::new(),
        index: BTreeMap::new(),
        sets: Vec::new(),
        log: Vec::new(),
        insertions: 0,
    };
    fp.entry(Set::new());
    fp.run();
    let stats = Stats {
        types: fp.keys.len() as u64,
        rules: fp.insertions,
    };
    if fp.sets[0].contains(&BOT) {
        let mut r = SolveResult::new(Method::Saturation, Status::Unsat);
        r.witness = Some(fp.log.clone());
        r.stats = stats;
        return Ok(r);
    }
    let original = signature(instance).atoms;
    let mut order = vec![0usize];
    let mut pos: HashMap<usize, usize> = HashMap::from([(0, 0)]);
    let mut edges = Vec::new();
    let mut next = 0;
    while next < order.len() {
        let i = order[next];
        for role in 0..rules.roles.len() {
            let key = rules.successor_key(&fp.sets[i], role);
            let j = fp.index[&key];
            if fp.sets[j].contains(&BOT) {
                continue;
            }
            let e = *pos.entry(j).or_insert_with(|| {
                order.push(j);
                order.len() - 1
            });
            edges.push((role, next, e));
        }
        next += 1;
    }
    let mut model = Interpretation::new(order.len());
    for (e, &i) in order.iter().enumerate() {
        for &a in &fp.sets[i] {
            if original.contains(&rules.names[a]) {
                model.add_concept(&rules.names[a], e);
            }
        }
    }
    for (role, from, to) in edges {
        model.add_role(&rules.roles[role], from, to);
    }
    let mut r = SolveResult::new(Method::Saturation, Status::Sat);
    r.model = Some(model);
    r.stats = stats;
    Ok(r)
}
