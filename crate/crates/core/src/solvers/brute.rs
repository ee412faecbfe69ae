//! Model search by enumeration, used as an oracle.
//!
//! Quantifier-free instances are decided exactly: every element can be checked in isolation,
//! so one element per individual and one for the query suffice. Otherwise interpretations are
//! enumerated up to `limits.domain` elements, with atom vectors sorted to skip permutations;
//! finding none yields `UNKNOWN`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{Method, SolveResult, Stats, Status};
use crate::boolfun::TruthTable;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::{signature, Concept, Interpretation, ProblemInstance};

const MAX_ATOMS: usize = 24;

enum Op {
    Atom(usize),
    Apply(TruthTable, Vec<usize>),
    Exists(usize, usize),
    Forall(usize, usize),
}

struct Program {
    ops: Vec<Op>,
    atoms: Vec<Arc<str>>,
    roles: Vec<Arc<str>>,
}

impl Program {
    fn compile(instance: &ProblemInstance) -> Self {
        let sig = signature(instance);
        let atoms: Vec<Arc<str>> = sig.atoms.into_iter().collect();
        let mut roles: Vec<Arc<str>> = Vec::new();
        for c in instance.concepts() {
            c.visit(&mut |n| {
                if let Concept::Exists(r, _) | Concept::Forall(r, _) = n {
                    if !roles.contains(r) {
                        roles.push(r.clone());
                    }
                }
            });
        }
        roles.sort();
        Program {
            ops: Vec::new(),
            atoms,
            roles,
        }
    }

    fn add(&mut self, c: &Concept) -> usize {
        let op = match c {
            Concept::Atomic(a) => Op::Atom(self.atoms.binary_search(a).expect("atom in signature")),
            Concept::Apply(f, cs) => Op::Apply(f.table, cs.iter().map(|x| self.add(x)).collect()),
            Concept::Exists(r, x) => {
                let r = self.roles.binary_search(r).expect("role collected");
                Op::Exists(r, self.add(x))
            }
            Concept::Forall(r, x) => {
                let r = self.roles.binary_search(r).expect("role collected");
                Op::Forall(r, self.add(x))
            }
        };
        self.ops.push(op);
        self.ops.len() - 1
    }

    /// Extension of every node as an element bitmask.
    fn run(&self, n: usize, vectors: &[u64], succ: &[Vec<u64>], out: &mut Vec<u64>) {
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        out.clear();
        for op in &self.ops {
            let m = match op {
                Op::Atom(a) => (0..n).fold(0, |m, x| m | (((vectors[x] >> a) & 1) << x)),
                Op::Apply(f, cs) => (0..n).fold(0, |m, x| {
                    let idx = cs
                        .iter()
                        .fold(0usize, |acc, &c| (acc << 1) | ((out[c] >> x) & 1) as usize);
                    m | (f.get(idx) as u64) << x
                }),
                Op::Exists(r, c) => (0..n).fold(0, |m, x| {
                    m | ((succ[*r][x] & out[*c] != 0) as u64) << x
                }),
                Op::Forall(r, c) => (0..n).fold(0, |m, x| {
                    m | ((succ[*r][x] & !out[*c] & full == 0) as u64) << x
                }),
            };
            out.push(m);
        }
    }
}

struct Compiled {
    prog: Program,
    axioms: Vec<(usize, usize)>,
    assertions: Vec<(usize, usize)>,
    query: Option<usize>,
    individuals: Vec<Arc<str>>,
    /// `(role index among concept roles, from, to)`; `None` for roles only used in the ABox.
    role_edges: Vec<(Option<usize>, usize, usize)>,
    role_names: Vec<Arc<str>>,
}

impl Compiled {
    fn new(instance: &ProblemInstance) -> Self {
        let mut prog = Program::compile(instance);
        let axioms = instance
            .tbox()
            .iter()
            .map(|a| (prog.add(&a.lhs), prog.add(&a.rhs)))
            .collect();
        let individuals: Vec<Arc<str>> = signature(instance).individuals.into_iter().collect();
        let ind = |n: &Arc<str>| individuals.binary_search(n).expect("individual collected");
        let assertions = instance
            .ontology
            .abox_concepts
            .iter()
            .map(|a| (ind(&a.individual), prog.add(&a.concept)))
            .collect();
        let query = instance.query.as_ref().map(|q| prog.add(q));
        let mut role_edges = Vec::new();
        let mut role_names = Vec::new();
        for r in &instance.ontology.abox_roles {
            role_edges.push((prog.roles.binary_search(&r.role).ok(), ind(&r.from), ind(&r.to)));
            role_names.push(r.role.clone());
        }
        Compiled {
            prog,
            axioms,
            assertions,
            query,
            individuals,
            role_edges,
            role_names,
        }
    }

    fn model(&self, vectors: &[u64], succ: &[Vec<u64>], map: &[usize]) -> Interpretation {
        let n = vectors.len();
        let mut m = Interpretation::new(n);
        for (x, &v) in vectors.iter().enumerate() {
            for (a, name) in self.prog.atoms.iter().enumerate() {
                if (v >> a) & 1 == 1 {
                    m.add_concept(name, x);
                }
            }
        }
        for (r, rows) in succ.iter().enumerate() {
            for (x, &row) in rows.iter().enumerate() {
                for y in 0..n {
                    if (row >> y) & 1 == 1 {
                        m.add_role(&self.prog.roles[r], x, y);
                    }
                }
            }
        }
        for (&(_, a, b), name) in self.role_edges.iter().zip(&self.role_names) {
            m.add_role(name, map[a], map[b]);
        }
        for (i, name) in self.individuals.iter().enumerate() {
            m.individuals.insert(name.to_string(), map[i]);
        }
        m
    }
}

pub fn solve_bruteforce(instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    let c = Compiled::new(instance);
    if c.prog.atoms.len() > MAX_ATOMS {
        return Err(Error::Limit(format!(
            "{} atoms exceed the brute-force cap of {MAX_ATOMS}",
            c.prog.atoms.len()
        )));
    }
    if c.prog.roles.is_empty() {
        Ok(solve_local(&c))
    } else {
        Ok(solve_enumerate(&c, limits))
    }
}

fn solve_local(c: &Compiled) -> SolveResult {
    let mut out = Vec::new();
    let mut examined = 0u64;
    let mut find = |extra: &dyn Fn(&[u64]) -> bool| {
        for v in 0u64..(1 << c.prog.atoms.len()) {
            examined += 1;
            c.prog.run(1, &[v], &[], &mut out);
            if c.axioms.iter().all(|&(l, r)| out[l] & !out[r] == 0) && extra(&out) {
                return Some(v);
            }
        }
        None
    };
    let mut vectors = Vec::new();
    let mut failed = None;
    for i in 0..c.individuals.len() {
        let ok = |ext: &[u64]| c.assertions.iter().all(|&(a, k)| a != i || ext[k] == 1);
        match find(&ok) {
            Some(v) => vectors.push(v),
            None => {
                failed = Some(format!("individual {} has no consistent element", c.individuals[i]));
                break;
            }
        }
    }
    if failed.is_none() {
        let needs_element = c.query.is_some() || c.individuals.is_empty();
        if needs_element {
            let ok = |ext: &[u64]| c.query.is_none_or(|q| ext[q] == 1);
            match find(&ok) {
                Some(v) => vectors.push(v),
                None => failed = Some("no element satisfies the TBox and query".into()),
            }
        }
    }
    let stats = Stats {
        types: examined,
        rules: 0,
    };
    let mut r = match failed {
        Some(why) => {
            let mut r = SolveResult::new(Method::Brute, Status::Unsat);
            r.witness = Some(vec![why]);
            r
        }
        None => {
            let map: Vec<usize> = (0..c.individuals.len()).collect();
            let mut r = SolveResult::new(Method::Brute, Status::Sat);
            r.model = Some(c.model(&vectors, &[], &map));
            r
        }
    };
    r.stats = stats;
    r
}

/// Number of interpretations of size `n`, or `None` on overflow.
fn count(c: &Compiled, n: usize) -> Option<u64> {
    let vectors = 1u64.checked_shl(c.prog.atoms.len() as u32)?;
    let mut multisets: u64 = 1;
    for i in 0..n as u64 {
        multisets = multisets.checked_mul(vectors + i)? / (i + 1);
    }
    let role_bits = (c.prog.roles.len() * n * n) as u32;
    let roles = 1u64.checked_shl(role_bits).filter(|_| role_bits < 64)?;
    let maps = (n as u64).checked_pow(c.individuals.len() as u32)?;
    multisets.checked_mul(roles)?.checked_mul(maps)
}

fn solve_enumerate(c: &Compiled, limits: &Limits) -> SolveResult {
    let mut examined = 0u64;
    let mut skipped = BTreeSet::new();
    let mut out = Vec::new();
    let k = c.prog.atoms.len();
    let r = c.prog.roles.len();
    for n in 1..=limits.domain.min(8) {
        match count(c, n) {
            Some(total) if total <= limits.interpretations => {}
            _ => {
                skipped.insert(n);
                continue;
            }
        }
        let mut vectors = vec![0u64; n];
        loop {
            for roles in 0u64..(1 << (r * n * n)) {
                let succ: Vec<Vec<u64>> = (0..r)
                    .map(|ri| {
                        (0..n)
                            .map(|x| (roles >> ((ri * n + x) * n)) & ((1 << n) - 1))
                            .collect()
                    })
                    .collect();
                c.prog.run(n, &vectors, &succ, &mut out);
                examined += 1;
                if !c.axioms.iter().all(|&(l, r)| out[l] & !out[r] == 0) {
                    continue;
                }
                if c.query.is_some_and(|q| out[q] == 0) {
                    continue;
                }
                if let Some(map) = find_map(c, n, &out, &succ) {
                    let mut res = SolveResult::new(Method::Brute, Status::Sat);
                    res.model = Some(c.model(&vectors, &succ, &map));
                    res.stats = Stats {
                        types: examined,
                        rules: 0,
                    };
                    return res;
                }
            }
            if !next_multiset(&mut vectors, 1 << k) {
                break;
            }
        }
    }
    let mut res = SolveResult::new(Method::Brute, Status::Unknown);
    res.stats = Stats {
        types: examined,
        rules: 0,
    };
    let mut why = vec![format!(
        "no model with at most {} elements",
        limits.domain
    )];
    if !skipped.is_empty() {
        why.push(format!("sizes {skipped:?} exceed the interpretation limit"));
    }
    res.witness = Some(why);
    res
}

fn find_map(c: &Compiled, n: usize, ext: &[u64], succ: &[Vec<u64>]) -> Option<Vec<usize>> {
    let m = c.individuals.len();
    let mut map = vec![0usize; m];
    loop {
        let concepts_ok = c
            .assertions
            .iter()
            .all(|&(a, k)| (ext[k] >> map[a]) & 1 == 1);
        let roles_ok = c.role_edges.iter().all(|&(r, a, b)| {
            r.is_none_or(|r| (succ[r][map[a]] >> map[b]) & 1 == 1)
        });
        if concepts_ok && roles_ok {
            return Some(map);
        }
        let mut i = 0;
        loop {
            if i == m {
                return None;
            }
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}

/// Advances a nondecreasing sequence over `0..bound`.
fn next_multiset(v: &mut [u64], bound: u64) -> bool {
    for i in (0..v.len()).rev() {
        if v[i] + 1 < bound {
            let x = v[i] + 1;
            for y in &mut v[i..] {
                *y = x;
            }
            return true;
        }
    }
    false
}
