//! Exhaustive type elimination over the subconcept closure.
//!
//! A type assigns a truth value to every subconcept; applications are determined by their
//! children, so only atoms and quantified subconcepts are enumerated. A type dies when one of
//! its `∃R.C ∈ t` or `∀R.D ∉ t` demands has no compatible living successor type.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{Method, SolveResult, Stats, Status};
use crate::boolfun::TruthTable;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::{Concept, Interpretation, ProblemInstance};

const MAX_NODES: usize = 128;

enum Node {
    Atom(Arc<str>),
    Apply(TruthTable, Vec<usize>),
    Exists(usize, usize),
    Forall(usize, usize),
}

struct Closure {
    nodes: Vec<Node>,
    index: HashMap<Concept, usize>,
    roles: Vec<Arc<str>>,
}

impl Closure {
    fn build(instance: &ProblemInstance) -> Result<Self> {
        let mut order = Vec::new();
        let mut seen = BTreeSet::new();
        for c in instance.concepts() {
            c.subconcepts_into(&mut order, &mut seen);
        }
        if order.len() > MAX_NODES {
            return Err(Error::Limit(format!(
                "{} subconcepts exceed the type width of {MAX_NODES}",
                order.len()
            )));
        }
        let mut index = HashMap::new();
        let mut roles: Vec<Arc<str>> = Vec::new();
        let mut role_id = |r: &Arc<str>| match roles.iter().position(|x| x == r) {
            Some(i) => i,
            None => {
                roles.push(r.clone());
                roles.len() - 1
            }
        };
        let mut nodes = Vec::with_capacity(order.len());
        for (i, c) in order.iter().enumerate() {
            let node = match c {
                Concept::Atomic(a) => Node::Atom(a.clone()),
                Concept::Apply(op, cs) => Node::Apply(op.table, cs.iter().map(|x| index[x]).collect()),
                Concept::Exists(r, x) => Node::Exists(role_id(r), index[&**x]),
                Concept::Forall(r, x) => Node::Forall(role_id(r), index[&**x]),
            };
            nodes.push(node);
            index.insert(c.clone(), i);
        }
        Ok(Closure {
            nodes,
            index,
            roles,
        })
    }

    fn free(&self) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| !matches!(self.nodes[i], Node::Apply(..)))
            .collect()
    }

    /// Completes the determined bits of a partial type.
    fn complete(&self, mut t: u128) -> u128 {
        for (i, n) in self.nodes.iter().enumerate() {
            if let Node::Apply(f, cs) = n {
                let idx = cs
                    .iter()
                    .fold(0usize, |acc, &c| (acc << 1) | ((t >> c) & 1) as usize);
                if f.get(idx) {
                    t |= 1 << i;
                }
            }
        }
        t
    }
}

fn bit(t: u128, i: usize) -> bool {
    (t >> i) & 1 == 1
}

/// Quantified subconcepts of one role and the successor constraints they induce.
struct RoleView {
    exists: Vec<(usize, usize)>,
    forall: Vec<(usize, usize)>,
    mask: u128,
}

impl RoleView {
    fn new(closure: &Closure, role: usize) -> Self {
        let mut v = RoleView {
            exists: Vec::new(),
            forall: Vec::new(),
            mask: 0,
        };
        for (i, n) in closure.nodes.iter().enumerate() {
            match *n {
                Node::Exists(r, c) if r == role => {
                    v.exists.push((i, c));
                    v.mask |= 1 << c;
                }
                Node::Forall(r, c) if r == role => {
                    v.forall.push((i, c));
                    v.mask |= 1 << c;
                }
                _ => {}
            }
        }
        v
    }

    /// `(required, forbidden)` bits of every successor of `t`.
    fn bounds(&self, t: u128) -> (u128, u128) {
        let pos = self
            .forall
            .iter()
            .filter(|&&(n, _)| bit(t, n))
            .fold(0, |m, &(_, c)| m | 1 << c);
        let neg = self
            .exists
            .iter()
            .filter(|&&(n, _)| !bit(t, n))
            .fold(0, |m, &(_, c)| m | 1 << c);
        (pos, neg)
    }

    fn demands(&self, t: u128) -> Vec<(u128, u128)> {
        let (pos, neg) = self.bounds(t);
        let mut out = Vec::new();
        for &(n, c) in &self.exists {
            if bit(t, n) {
                out.push((pos | 1 << c, neg));
            }
        }
        for &(n, c) in &self.forall {
            if !bit(t, n) {
                out.push((pos, neg | 1 << c));
            }
        }
        out
    }

    fn compatible(&self, from: u128, to: u128) -> bool {
        let (pos, neg) = self.bounds(from);
        to & pos == pos && to & neg == 0
    }
}

fn satisfies(t: u128, (pos, neg): (u128, u128)) -> bool {
    t & pos == pos && t & neg == 0
}

struct Elimination {
    alive: Vec<bool>,
    eliminated: u64,
}

/// Greatest set of types whose demands are all met within the set.
fn eliminate(types: &[u128], views: &[RoleView]) -> Elimination {
    let n = types.len();
    let mut alive = vec![true; n];
    let mut eliminated = 0u64;
    struct PerRole {
        type_proj: Vec<u32>,
        proj_count: Vec<u32>,
        sat_by_proj: Vec<Vec<u32>>,
        support: Vec<u32>,
        demanders: Vec<Vec<u32>>,
    }
    let mut per_role = Vec::with_capacity(views.len());
    let mut doomed = Vec::new();
    for v in views {
        let mut proj_ids: HashMap<u128, u32> = HashMap::new();
        let mut projs = Vec::new();
        let mut proj_count = Vec::new();
        let mut type_proj = Vec::with_capacity(n);
        let mut key_ids: HashMap<(u128, u128), u32> = HashMap::new();
        let mut keys = Vec::new();
        let mut demanders: Vec<Vec<u32>> = Vec::new();
        for (ti, &t) in types.iter().enumerate() {
            let p = t & v.mask;
            let id = *proj_ids.entry(p).or_insert_with(|| {
                projs.push(p);
                proj_count.push(0);
                (projs.len() - 1) as u32
            });
            proj_count[id as usize] += 1;
            type_proj.push(id);
            for d in v.demands(t) {
                let k = *key_ids.entry(d).or_insert_with(|| {
                    keys.push(d);
                    demanders.push(Vec::new());
                    (keys.len() - 1) as u32
                });
                demanders[k as usize].push(ti as u32);
            }
        }
        let mut sat_by_proj = vec![Vec::new(); projs.len()];
        let mut support = vec![0u32; keys.len()];
        for (ki, &k) in keys.iter().enumerate() {
            for (pi, &p) in projs.iter().enumerate() {
                if satisfies(p, k) {
                    sat_by_proj[pi].push(ki as u32);
                    support[ki] += 1;
                }
            }
            if support[ki] == 0 {
                doomed.extend(demanders[ki].iter().copied());
            }
        }
        per_role.push(PerRole {
            type_proj,
            proj_count,
            sat_by_proj,
            support,
            demanders,
        });
    }
    while let Some(t) = doomed.pop() {
        let t = t as usize;
        if !alive[t] {
            continue;
        }
        alive[t] = false;
        eliminated += 1;
        for r in per_role.iter_mut() {
            let p = r.type_proj[t] as usize;
            r.proj_count[p] -= 1;
            if r.proj_count[p] > 0 {
                continue;
            }
            for &k in &r.sat_by_proj[p] {
                let k = k as usize;
                r.support[k] -= 1;
                if r.support[k] == 0 {
                    doomed.extend(r.demanders[k].iter().copied());
                }
            }
        }
    }
    Elimination { alive, eliminated }
}

struct Individuals {
    names: Vec<Arc<str>>,
    /// Closure indices asserted for each individual.
    required: Vec<u128>,
    /// `(role view index or None, from, to)`.
    edges: Vec<(Option<usize>, usize, usize)>,
    edge_roles: Vec<Arc<str>>,
}

impl Individuals {
    fn new(instance: &ProblemInstance, closure: &Closure) -> Self {
        let mut names: Vec<Arc<str>> = Vec::new();
        let id = |n: &Arc<str>, names: &mut Vec<Arc<str>>| match names.iter().position(|x| x == n) {
            Some(i) => i,
            None => {
                names.push(n.clone());
                names.len() - 1
            }
        };
        let mut required = Vec::new();
        for a in &instance.ontology.abox_concepts {
            let i = id(&a.individual, &mut names);
            required.resize(names.len(), 0u128);
            required[i] |= 1 << closure.index[&a.concept];
        }
        let mut edges = Vec::new();
        let mut edge_roles = Vec::new();
        for r in &instance.ontology.abox_roles {
            edge_roles.push(r.role.clone());
            let from = id(&r.from, &mut names);
            let to = id(&r.to, &mut names);
            let role = closure.roles.iter().position(|x| *x == r.role);
            edges.push((role, from, to));
        }
        required.resize(names.len(), 0);
        Individuals {
            names,
            required,
            edges,
            edge_roles,
        }
    }

    /// Assigns a living type to every individual, respecting role assertions.
    fn assign(&self, candidates: &[u128], views: &[RoleView]) -> Option<Vec<u128>> {
        let m = self.names.len();
        let relevant = self
            .edges
            .iter()
            .filter_map(|e| e.0)
            .fold(0u128, |acc, r| {
                let v = &views[r];
                let nodes = v.exists.iter().chain(&v.forall).fold(0, |m, &(n, _)| m | 1 << n);
                acc | nodes | v.mask
            });
        let mut domains: Vec<Vec<u128>> = (0..m)
            .map(|i| {
                let mut seen = BTreeSet::new();
                candidates
                    .iter()
                    .copied()
                    .filter(|&t| t & self.required[i] == self.required[i])
                    .filter(|&t| seen.insert(t & relevant))
                    .collect()
            })
            .collect();
        let ok = |r: Option<usize>, a: u128, b: u128| r.is_none_or(|r| views[r].compatible(a, b));
        loop {
            let mut changed = false;
            for &(r, from, to) in &self.edges {
                let (df, dt) = (domains[from].clone(), domains[to].clone());
                let before = (df.len(), dt.len());
                domains[from].retain(|&a| dt.iter().any(|&b| ok(r, a, b)));
                let df = domains[from].clone();
                domains[to].retain(|&b| df.iter().any(|&a| ok(r, a, b)));
                changed |= before != (domains[from].len(), domains[to].len());
            }
            if domains.iter().any(Vec::is_empty) {
                return None;
            }
            if !changed {
                break;
            }
        }
        let mut chosen = vec![0u128; m];
        fn search(
            i: usize,
            chosen: &mut Vec<u128>,
            domains: &[Vec<u128>],
            consistent: &dyn Fn(&[u128], usize) -> bool,
        ) -> bool {
            if i == domains.len() {
                return true;
            }
            for &t in &domains[i] {
                chosen[i] = t;
                if consistent(chosen, i) && search(i + 1, chosen, domains, consistent) {
                    return true;
                }
            }
            false
        }
        let consistent = |c: &[u128], i: usize| {
            self.edges.iter().all(|&(r, from, to)| {
                from > i || to > i || (from != i && to != i) || ok(r, c[from], c[to])
            })
        };
        search(0, &mut chosen, &domains, &consistent).then_some(chosen)
    }
}

pub fn solve_typeelim(instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    let closure = Closure::build(instance)?;
    let free = closure.free();
    if free.len() > limits.closure {
        return Err(Error::Limit(format!(
            "{} free subconcepts exceed the closure limit {}",
            free.len(),
            limits.closure
        )));
    }
    let axioms: Vec<(usize, usize)> = instance
        .tbox()
        .iter()
        .map(|a| (closure.index[&a.lhs], closure.index[&a.rhs]))
        .collect();
    let mut types = Vec::new();
    for mask in 0u64..(1 << free.len()) {
        let partial = free
            .iter()
            .enumerate()
            .filter(|&(k, _)| (mask >> k) & 1 == 1)
            .fold(0u128, |t, (_, &i)| t | 1 << i);
        let t = closure.complete(partial);
        if axioms.iter().all(|&(l, r)| !bit(t, l) || bit(t, r)) {
            types.push(t);
        }
    }
    let views: Vec<RoleView> = (0..closure.roles.len())
        .map(|r| RoleView::new(&closure, r))
        .collect();
    let elim = eliminate(&types, &views);
    let survivors: Vec<u128> = types
        .iter()
        .zip(&elim.alive)
        .filter_map(|(&t, &a)| a.then_some(t))
        .collect();
    let stats = Stats {
        types: types.len() as u64,
        rules: elim.eliminated,
    };
    let unsat = |why: String| {
        let mut r = SolveResult::new(Method::TypeElim, Status::Unsat);
        r.stats = stats;
        r.witness = Some(vec![
            format!("{} candidate types, {} eliminated", stats.types, stats.rules),
            why,
        ]);
        Ok(r)
    };
    if survivors.is_empty() {
        return unsat("no type survives elimination".into());
    }
    let query_type = match &instance.query {
        Some(q) => {
            let qi = closure.index[q];
            match survivors.iter().find(|&&t| bit(t, qi)) {
                Some(&t) => Some(t),
                None => return unsat(format!("no surviving type contains {q}")),
            }
        }
        None => None,
    };
    let inds = Individuals::new(instance, &closure);
    let Some(assignment) = inds.assign(&survivors, &views) else {
        return unsat("no surviving types fit the ABox".into());
    };
    let mut roots = assignment.clone();
    roots.extend(query_type);
    if roots.is_empty() {
        roots.push(survivors[0]);
    }
    let model = build_model(&closure, &views, &survivors, &roots, &inds);
    let mut r = SolveResult::new(Method::TypeElim, Status::Sat);
    r.stats = stats;
    r.model = Some(model);
    Ok(r)
}

fn build_model(
    closure: &Closure,
    views: &[RoleView],
    survivors: &[u128],
    roots: &[u128],
    inds: &Individuals,
) -> Interpretation {
    let mut elements: Vec<u128> = roots.to_vec();
    let mut anonymous: HashMap<u128, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut next = 0;
    while next < elements.len() {
        let t = elements[next];
        for (r, v) in views.iter().enumerate() {
            for d in v.demands(t) {
                let w = *survivors
                    .iter()
                    .find(|&&s| satisfies(s, d))
                    .expect("surviving types have witnesses");
                let e = *anonymous.entry(w).or_insert_with(|| {
                    elements.push(w);
                    elements.len() - 1
                });
                edges.push((r, next, e));
            }
        }
        next += 1;
    }
    let mut model = Interpretation::new(elements.len());
    for (e, &t) in elements.iter().enumerate() {
        for (i, n) in closure.nodes.iter().enumerate() {
            if let Node::Atom(a) = n {
                if bit(t, i) {
                    model.add_concept(a, e);
                }
            }
        }
    }
    for (r, from, to) in edges {
        model.add_role(&closure.roles[r], from, to);
    }
    for (&(_, from, to), role) in inds.edges.iter().zip(&inds.edge_roles) {
        model.add_role(role, from, to);
    }
    for (i, name) in inds.names.iter().enumerate() {
        model.individuals.insert(name.to_string(), i);
    }
    model
}
