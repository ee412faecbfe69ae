//! Quantifier-free instances as propositional formulas, decided by DPLL.
//!
//! One copy of every atom per relevant element (each individual, plus one for the query or
//! for the bare TBox), with a gate variable per compound subconcept and element.

use std::collections::HashMap;
use std::sync::Arc;

use super::{require_fragment, Method, SolveResult, Stats, Status};
use crate::boolfun::CloneName;
use crate::error::Result;
use crate::syntax::{Concept, Interpretation, ProblemInstance, Quantifiers};

/// Literal `v` or `-v` for variable `v ≥ 1`.
type Lit = i32;

#[derive(Default)]
struct Cnf {
    vars: usize,
    clauses: Vec<Vec<Lit>>,
}

impl Cnf {
    fn var(&mut self) -> Lit {
        self.vars += 1;
        self.vars as Lit
    }
}

struct Encoder<'a> {
    cnf: &'a mut Cnf,
    atoms: HashMap<(usize, Arc<str>), Lit>,
    gates: HashMap<(usize, Concept), Lit>,
}

impl Encoder<'_> {
    fn lit(&mut self, element: usize, c: &Concept) -> Lit {
        if let Concept::Atomic(a) = c {
            if let Some(&v) = self.atoms.get(&(element, a.clone())) {
                return v;
            }
            let v = self.cnf.var();
            self.atoms.insert((element, a.clone()), v);
            return v;
        }
        if let Some(&g) = self.gates.get(&(element, c.clone())) {
            return g;
        }
        let Concept::Apply(op, cs) = c else {
            unreachable!("fragment checked")
        };
        let args: Vec<Lit> = cs.iter().map(|x| self.lit(element, x)).collect();
        let g = self.cnf.var();
        for row in 0..op.table.rows() {
            let k = args.len();
            let mut clause: Vec<Lit> = args
                .iter()
                .enumerate()
                .map(|(j, &l)| if (row >> (k - 1 - j)) & 1 == 1 { -l } else { l })
                .collect();
            clause.push(if op.table.get(row) { g } else { -g });
            self.cnf.clauses.push(clause);
        }
        self.gates.insert((element, c.clone()), g);
        g
    }
}

/// Returns a satisfying assignment indexed by variable, or `None`.
fn dpll(cnf: &Cnf, decisions: &mut u64) -> Option<Vec<bool>> {
    let n = cnf.vars;
    let mut value: Vec<i8> = vec![0; n + 1];
    let mut watches: Vec<Vec<usize>> = vec![Vec::new(); 2 * (n + 1)];
    let idx = |l: Lit| 2 * l.unsigned_abs() as usize + (l < 0) as usize;
    let mut clauses = cnf.clauses.clone();
    let mut trail: Vec<Lit> = Vec::new();
    let mut units = Vec::new();
    for (ci, c) in clauses.iter_mut().enumerate() {
        c.sort_unstable();
        c.dedup();
        if c.iter().any(|&l| c.contains(&-l)) {
            continue;
        }
        match c.len() {
            0 => return None,
            1 => units.push(c[0]),
            _ => {
                watches[idx(c[0])].push(ci);
                watches[idx(c[1])].push(ci);
            }
        }
    }
    let val = |value: &[i8], l: Lit| -> i8 {
        let v = value[l.unsigned_abs() as usize];
        if l < 0 {
            -v
        } else {
            v
        }
    };
    // (trail length at decision, decided literal, flipped)
    let mut levels: Vec<(usize, Lit, bool)> = Vec::new();
    let mut head = 0;
    for u in units {
        match val(&value, u) {
            1 => {}
            -1 => return None,
            _ => {
                value[u.unsigned_abs() as usize] = if u > 0 { 1 } else { -1 };
                trail.push(u);
            }
        }
    }
    loop {
        // Unit propagation over the two-watched-literal scheme.
        let mut conflict = false;
        while head < trail.len() && !conflict {
            let falsified = -trail[head];
            head += 1;
            let wl = std::mem::take(&mut watches[idx(falsified)]);
            let mut keep = Vec::with_capacity(wl.len());
            let mut i = 0;
            while i < wl.len() {
                let ci = wl[i];
                i += 1;
                let c = &mut clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                if val(&value, c[0]) == 1 {
                    keep.push(ci);
                    continue;
                }
                if let Some(k) = (2..c.len()).find(|&k| val(&value, c[k]) != -1) {
                    c.swap(1, k);
                    watches[idx(c[1])].push(ci);
                    continue;
                }
                keep.push(ci);
                match val(&value, c[0]) {
                    -1 => {
                        conflict = true;
                        keep.extend_from_slice(&wl[i..]);
                        break;
                    }
                    0 => {
                        let u = c[0];
                        value[u.unsigned_abs() as usize] = if u > 0 { 1 } else { -1 };
                        trail.push(u);
                    }
                    _ => {}
                }
            }
            watches[idx(falsified)].extend(keep);
        }
        if conflict {
            // Chronological backtracking: flip the latest unflipped decision.
            loop {
                let (len, lit, flipped) = levels.pop()?;
                for l in trail.drain(len..) {
                    value[l.unsigned_abs() as usize] = 0;
                }
                head = len;
                if !flipped {
                    levels.push((len, -lit, true));
                    value[lit.unsigned_abs() as usize] = if lit > 0 { -1 } else { 1 };
                    trail.push(-lit);
                    break;
                }
            }
            continue;
        }
        match (1..=n).find(|&v| value[v] == 0) {
            None => return Some(value.iter().map(|&v| v == 1).collect()),
            Some(v) => {
                *decisions += 1;
                levels.push((trail.len(), v as Lit, false));
                value[v] = 1;
                trail.push(v as Lit);
            }
        }
    }
}

pub fn solve_prop_sat(instance: &ProblemInstance) -> Result<SolveResult> {
    require_fragment(instance, Quantifiers::NONE, CloneName::BF, Method::PropSat)?;
    let mut individuals: Vec<Arc<str>> = Vec::new();
    let mut note = |i: &Arc<str>| {
        if !individuals.contains(i) {
            individuals.push(i.clone());
        }
    };
    for a in &instance.ontology.abox_concepts {
        note(&a.individual);
    }
    for r in &instance.ontology.abox_roles {
        note(&r.from);
        note(&r.to);
    }
    let m = individuals.len();
    let elements = if instance.query.is_some() || m == 0 { m + 1 } else { m };
    let mut cnf = Cnf::default();
    let mut enc = Encoder {
        cnf: &mut cnf,
        atoms: HashMap::new(),
        gates: HashMap::new(),
    };
    for e in 0..elements {
        for ax in instance.tbox() {
            let (l, r) = (enc.lit(e, &ax.lhs), enc.lit(e, &ax.rhs));
            enc.cnf.clauses.push(vec![-l, r]);
        }
    }
    for a in &instance.ontology.abox_concepts {
        let e = individuals.iter().position(|i| *i == a.individual).expect("noted");
        let l = enc.lit(e, &a.concept);
        enc.cnf.clauses.push(vec![l]);
    }
    if let Some(q) = &instance.query {
        let l = enc.lit(m, q);
        enc.cnf.clauses.push(vec![l]);
    }
    let atoms = std::mem::take(&mut enc.atoms);
    let mut decisions = 0;
    let outcome = dpll(&cnf, &mut decisions);
    let stats = Stats {
        types: cnf.vars as u64,
        rules: decisions,
    };
    let Some(assignment) = outcome else {
        let mut r = SolveResult::new(Method::PropSat, Status::Unsat);
        r.witness = Some(vec![format!(
            "{} clauses over {} variables are unsatisfiable",
            cnf.clauses.len(),
            cnf.vars
        )]);
        r.stats = stats;
        return Ok(r);
    };
    let mut model = Interpretation::new(elements);
    for ((e, a), v) in atoms {
        if assignment[v as usize] {
            model.add_concept(&a, e);
        }
    }
    for (i, name) in individuals.iter().enumerate() {
        model.individuals.insert(name.to_string(), i);
    }
    for r in &instance.ontology.abox_roles {
        let from = model.individuals[&*r.from];
        let to = model.individuals[&*r.to];
        model.add_role(&r.role, from, to);
    }
    let mut r = SolveResult::new(Method::PropSat, Status::Sat);
    r.model = Some(model);
    r.stats = stats;
    Ok(r)
}
