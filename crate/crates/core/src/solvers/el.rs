//! Completion for `∃` over conjunction and constants.
//!
//! Assertions are folded into the TBox through one fresh atom per individual
//! (`N_a ⊑ C`, `N_a ⊑ ∃R.N_b`) and one for the query; after normalization the sets
//! `S(X)` and role edges are saturated, and `⊥ ∈ S(X)` for a root `X` means unsatisfiable.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use super::{require_fragment, Method, SolveResult, Stats, Status};
use crate::boolfun::CloneName;
use crate::error::{Error, Result};
use crate::syntax::{
    Axiom, Concept, FreshNames, Interpretation, ProblemInstance, ProblemKind, Quantifiers,
};
use crate::transforms::normalize_nf;

const TOP: usize = 0;
const BOT: usize = 1;

#[derive(Clone, Copy, Debug)]
enum Reason {
    Init,
    Sub(usize),
    Conj(usize, usize),
    Exists(usize, usize, usize),
    Bottom(usize, usize),
}

#[derive(Default)]
struct Completion {
    names: Vec<Arc<str>>,
    ids: HashMap<Arc<str>, usize>,
    roles: Vec<Arc<str>>,
    sub: HashMap<usize, Vec<usize>>,
    conj: HashMap<usize, Vec<(usize, usize)>>,
    ex_rhs: HashMap<usize, Vec<(usize, usize)>>,
    ex_lhs: HashMap<(usize, usize), Vec<usize>>,
    sets: Vec<HashSet<usize>>,
    reasons: HashMap<(usize, usize), Reason>,
    edges: HashSet<(usize, usize, usize)>,
    succ: Vec<Vec<(usize, usize)>>,
    pred: Vec<Vec<(usize, usize)>>,
    queue: Vec<(usize, usize, Reason)>,
    fired: u64,
}

impl Completion {
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

    fn load(&mut self, tbox: &[Axiom]) -> Result<()> {
        self.names = vec!["⊤".into(), "⊥".into()];
        for ax in tbox {
            match (&ax.lhs, &ax.rhs) {
                (Concept::Exists(r, a), b) => {
                    let (r, a, b) = (self.role(r), self.atom(a)?, self.atom(b)?);
                    self.ex_lhs.entry((r, a)).or_default().push(b);
                }
                (a, Concept::Exists(r, b)) => {
                    let (a, r, b) = (self.atom(a)?, self.role(r), self.atom(b)?);
                    self.ex_rhs.entry(a).or_default().push((r, b));
                }
                (Concept::Apply(_, cs), b) if cs.len() == 2 => {
                    let (x, y, b) = (self.atom(&cs[0])?, self.atom(&cs[1])?, self.atom(b)?);
                    self.conj.entry(x).or_default().push((y, b));
                    self.conj.entry(y).or_default().push((x, b));
                }
                (a, b) => {
                    let (a, b) = (self.atom(a)?, self.atom(b)?);
                    self.sub.entry(a).or_default().push(b);
                }
            }
        }
        Ok(())
    }

    fn saturate(&mut self) {
        let n = self.names.len();
        self.sets = vec![HashSet::new(); n];
        self.succ = vec![Vec::new(); n];
        self.pred = vec![Vec::new(); n];
        for x in 0..n {
            self.queue.push((x, x, Reason::Init));
            self.queue.push((x, TOP, Reason::Init));
        }
        while let Some((x, a, why)) = self.queue.pop() {
            if !self.sets[x].insert(a) {
                continue;
            }
            self.fired += 1;
            self.reasons.insert((x, a), why);
            for &b in self.sub.get(&a).into_iter().flatten() {
                self.queue.push((x, b, Reason::Sub(a)));
            }
            for &(other, b) in self.conj.get(&a).into_iter().flatten() {
                if self.sets[x].contains(&other) {
                    self.queue.push((x, b, Reason::Conj(a, other)));
                }
            }
            for (r, b) in self.ex_rhs.get(&a).cloned().into_iter().flatten() {
                self.add_edge(x, r, b);
            }
            for &(y, r) in &self.pred[x] {
                for &b in self.ex_lhs.get(&(r, a)).into_iter().flatten() {
                    self.queue.push((y, b, Reason::Exists(r, x, a)));
                }
                if a == BOT {
                    self.queue.push((y, BOT, Reason::Bottom(r, x)));
                }
            }
        }
    }

    fn add_edge(&mut self, x: usize, r: usize, y: usize) {
        if !self.edges.insert((x, r, y)) {
            return;
        }
        self.fired += 1;
        self.succ[x].push((r, y));
        self.pred[y].push((x, r));
        for &a in &self.sets[y] {
            for &b in self.ex_lhs.get(&(r, a)).into_iter().flatten() {
                self.queue.push((x, b, Reason::Exists(r, y, a)));
            }
        }
        if self.sets[y].contains(&BOT) {
            self.queue.push((x, BOT, Reason::Bottom(r, y)));
        }
    }

    fn explain(&self, x: usize, a: usize, out: &mut Vec<String>, seen: &mut BTreeSet<(usize, usize)>) {
        if !seen.insert((x, a)) {
            return;
        }
        let (nx, na) = (&self.names[x], &self.names[a]);
        match self.reasons[&(x, a)] {
            Reason::Init => {}
            Reason::Sub(b) => {
                self.explain(x, b, out, seen);
                out.push(format!("{na} ∈ S({nx}) by {} ⊑ {na}", self.names[b]));
            }
            Reason::Conj(b, c) => {
                self.explain(x, b, out, seen);
                self.explain(x, c, out, seen);
                out.push(format!(
                    "{na} ∈ S({nx}) by {} ⊓ {} ⊑ {na}",
                    self.names[b], self.names[c]
                ));
            }
            Reason::Exists(r, y, b) => {
                self.explain(y, b, out, seen);
                out.push(format!(
                    "{na} ∈ S({nx}) by ∃{}.{} ⊑ {na} via ({nx},{})",
                    self.roles[r], self.names[b], self.names[y]
                ));
            }
            Reason::Bottom(r, y) => {
                self.explain(y, BOT, out, seen);
                out.push(format!("⊥ ∈ S({nx}) via {} edge to {}", self.roles[r], self.names[y]));
            }
        }
    }
}

/// The TBox encoding of an instance: the TBox itself plus the folded assertions and query.
pub(crate) struct Folded {
    pub instance: ProblemInstance,
    pub individuals: Vec<(Arc<str>, Arc<str>)>,
    pub query: Option<Arc<str>>,
}

pub(crate) fn fold_assertions(instance: &ProblemInstance) -> Folded {
    let mut names = FreshNames::for_instance(instance);
    let mut out = ProblemInstance::new(ProblemKind::Tsat, instance.operators.clone());
    out.ontology.tbox = instance.tbox().to_vec();
    let mut individuals: Vec<(Arc<str>, Arc<str>)> = Vec::new();
    let mut atom_of = |i: &Arc<str>, individuals: &mut Vec<(Arc<str>, Arc<str>)>| {
        if let Some((_, a)) = individuals.iter().find(|(n, _)| n == i) {
            return Concept::Atomic(a.clone());
        }
        let a = names.fresh(&format!("_N_{i}"));
        individuals.push((i.clone(), a.clone()));
        Concept::Atomic(a)
    };
    for a in &instance.ontology.abox_concepts {
        let n = atom_of(&a.individual, &mut individuals);
        out.ontology.tbox.push(Axiom::new(n, a.concept.clone()));
    }
    for r in &instance.ontology.abox_roles {
        let from = atom_of(&r.from, &mut individuals);
        let to = atom_of(&r.to, &mut individuals);
        out.ontology
            .tbox
            .push(Axiom::new(from, Concept::exists(r.role.clone(), to)));
    }
    let query = instance.query.as_ref().map(|q| {
        let a = names.fresh("_Q");
        out.ontology.tbox.push(Axiom::new(Concept::Atomic(a.clone()), q.clone()));
        a
    });
    Folded {
        instance: out,
        individuals,
        query,
    }
}

pub fn solve_el(instance: &ProblemInstance) -> Result<SolveResult> {
    require_fragment(instance, Quantifiers::EXISTS, CloneName::E, Method::El)?;
    let folded = fold_assertions(instance);
    let normal = normalize_nf(&folded.instance)?.instance;
    let mut c = Completion::default();
    c.load(normal.tbox())?;
    let mut roots: Vec<usize> = Vec::new();
    for (_, a) in &folded.individuals {
        roots.push(c.atom(&Concept::Atomic(a.clone()))?);
    }
    if let Some(q) = &folded.query {
        roots.push(c.atom(&Concept::Atomic(q.clone()))?);
    }
    if roots.is_empty() {
        roots.push(TOP);
    }
    c.saturate();
    let stats = Stats {
        types: c.names.len() as u64,
        rules: c.fired,
    };
    if let Some(&bad) = roots.iter().find(|&&x| c.sets[x].contains(&BOT)) {
        let mut lines = Vec::new();
        c.explain(bad, BOT, &mut lines, &mut BTreeSet::new());
        let mut r = SolveResult::new(Method::El, Status::Unsat);
        r.witness = Some(lines);
        r.stats = stats;
        return Ok(r);
    }
    let mut order: Vec<usize> = Vec::new();
    let mut index: HashMap<usize, usize> = HashMap::new();
    for &x in &roots {
        if let std::collections::hash_map::Entry::Vacant(e) = index.entry(x) {
            e.insert(order.len());
            order.push(x);
        }
    }
    let mut next = 0;
    while next < order.len() {
        let x = order[next];
        for &(_, y) in &c.succ[x] {
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(y) {
                e.insert(order.len());
                order.push(y);
            }
        }
        next += 1;
    }
    let original: BTreeSet<Arc<str>> = crate::syntax::signature(instance).atoms;
    let mut model = Interpretation::new(order.len());
    for (e, &x) in order.iter().enumerate() {
        for &a in &c.sets[x] {
            if original.contains(&c.names[a]) {
                model.add_concept(&c.names[a], e);
            }
        }
        for &(r, y) in &c.succ[x] {
            model.add_role(&c.roles[r], e, index[&y]);
        }
    }
    for (name, a) in &folded.individuals {
        let x = c.ids[a];
        model.individuals.insert(name.to_string(), index[&x]);
    }
    let mut r = SolveResult::new(Method::El, Status::Sat);
    r.model = Some(model);
    r.stats = stats;
    Ok(r)
}
