//! Implication-graph procedure for quantifier-free instances over unary operators.
//!
//! Every concept collapses to a literal `⊤`, `⊥`, `A` or `¬A`. Axioms become implications
//! together with their contrapositives, and `⊥ → ⊤` encodes that `⊤` holds. An instance is
//! unsatisfiable iff some literal shares a strongly connected component with its complement.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use super::{require_fragment, Method, SolveResult, Stats, Status};
use crate::boolfun::CloneName;
use crate::error::Result;
use crate::syntax::{Concept, Interpretation, ProblemInstance, Quantifiers};

/// Node `2v` is variable `v`, node `2v + 1` its complement; variable 0 is `⊤`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Lit(usize);

impl Lit {
    const TOP: Lit = Lit(0);
    const BOT: Lit = Lit(1);

    fn neg(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

struct Graph {
    vars: BTreeMap<Arc<str>, usize>,
    names: Vec<Arc<str>>,
    succ: Vec<Vec<usize>>,
}

impl Graph {
    fn new() -> Self {
        let mut g = Graph {
            vars: BTreeMap::new(),
            names: vec!["⊤".into()],
            succ: vec![Vec::new(), Vec::new()],
        };
        g.edge(Lit::BOT, Lit::TOP);
        g
    }

    fn var(&mut self, a: &Arc<str>) -> Lit {
        if let Some(&v) = self.vars.get(a) {
            return Lit(2 * v);
        }
        let v = self.names.len();
        self.vars.insert(a.clone(), v);
        self.names.push(a.clone());
        self.succ.push(Vec::new());
        self.succ.push(Vec::new());
        self.edge(Lit::BOT, Lit(2 * v));
        self.edge(Lit(2 * v), Lit::TOP);
        Lit(2 * v)
    }

    fn edge(&mut self, a: Lit, b: Lit) {
        self.succ[a.0].push(b.0);
        self.succ[b.neg().0].push(a.neg().0);
    }

    fn literal(&mut self, c: &Concept) -> Lit {
        match c {
            Concept::Atomic(a) => self.var(a),
            Concept::Apply(op, cs) => {
                if let Some(v) = op.table.constant_value() {
                    return if v { Lit::TOP } else { Lit::BOT };
                }
                let j = (0..cs.len())
                    .find(|&j| op.table.depends_on(j))
                    .expect("non-constant operator has an essential argument");
                let inner = self.literal(&cs[j]);
                let mut args = vec![false; cs.len()];
                args[j] = true;
                if op.table.eval(&args).expect("arity matches") {
                    inner
                } else {
                    inner.neg()
                }
            }
            Concept::Exists(..) | Concept::Forall(..) => unreachable!("fragment checked"),
        }
    }

    fn show(&self, l: usize) -> String {
        match l {
            0 => "⊤".into(),
            1 => "⊥".into(),
            _ if l.is_multiple_of(2) => self.names[l / 2].to_string(),
            _ => format!("¬{}", self.names[l / 2]),
        }
    }

    /// Kosaraju; components are numbered in topological order of the condensation.
    fn components(&self) -> Vec<usize> {
        let n = self.succ.len();
        let mut pred = vec![Vec::new(); n];
        for (u, vs) in self.succ.iter().enumerate() {
            for &v in vs {
                pred[v].push(u);
            }
        }
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![(s, 0usize)];
            while let Some((u, i)) = stack.pop() {
                if let Some(&v) = self.succ[u].get(i) {
                    stack.push((u, i + 1));
                    if !seen[v] {
                        seen[v] = true;
                        stack.push((v, 0));
                    }
                } else {
                    order.push(u);
                }
            }
        }
        let mut comp = vec![usize::MAX; n];
        let mut next = 0;
        for &s in order.iter().rev() {
            if comp[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            comp[s] = next;
            while let Some(u) = stack.pop() {
                for &v in &pred[u] {
                    if comp[v] == usize::MAX {
                        comp[v] = next;
                        stack.push(v);
                    }
                }
            }
            next += 1;
        }
        comp
    }

    fn path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut prev = vec![usize::MAX; self.succ.len()];
        prev[from] = from;
        let mut queue = VecDeque::from([from]);
        while let Some(u) = queue.pop_front() {
            if u == to && u != from {
                break;
            }
            for &v in &self.succ[u] {
                if prev[v] == usize::MAX {
                    prev[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut out = vec![to];
        let mut cur = to;
        while cur != from {
            cur = prev[cur];
            out.push(cur);
        }
        out.reverse();
        out
    }
}

struct Cycle(Vec<String>);

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(" → "))
    }
}

/// One 2-SAT problem per individual (plus one for the query) over the shared TBox graph.
fn check(
    tbox_edges: &[(Concept, Concept)],
    units: &[&Concept],
) -> (Option<Vec<String>>, Graph, Vec<usize>) {
    let mut g = Graph::new();
    for (l, r) in tbox_edges {
        let (a, b) = (g.literal(l), g.literal(r));
        g.edge(a, b);
    }
    for u in units {
        let l = g.literal(u);
        g.edge(Lit::TOP, l);
    }
    let comp = g.components();
    let bad = (0..g.succ.len() / 2).find(|&v| comp[2 * v] == comp[2 * v + 1]);
    let witness = bad.map(|v| {
        let mut cycle = g.path(2 * v, 2 * v + 1);
        cycle.extend(g.path(2 * v + 1, 2 * v).into_iter().skip(1));
        vec![Cycle(cycle.iter().map(|&l| g.show(l)).collect()).to_string()]
    });
    (witness, g, comp)
}

pub fn solve_nl_graph(instance: &ProblemInstance) -> Result<SolveResult> {
    require_fragment(instance, Quantifiers::NONE, CloneName::N, Method::NlGraph)?;
    let edges: Vec<(Concept, Concept)> = instance
        .tbox()
        .iter()
        .map(|a| (a.lhs.clone(), a.rhs.clone()))
        .collect();
    let mut individuals: Vec<Arc<str>> = Vec::new();
    for a in &instance.ontology.abox_concepts {
        if !individuals.contains(&a.individual) {
            individuals.push(a.individual.clone());
        }
    }
    for r in &instance.ontology.abox_roles {
        for i in [&r.from, &r.to] {
            if !individuals.contains(i) {
                individuals.push(i.clone());
            }
        }
    }
    let mut problems: Vec<Vec<&Concept>> = individuals
        .iter()
        .map(|i| {
            instance
                .ontology
                .abox_concepts
                .iter()
                .filter(|a| a.individual == *i)
                .map(|a| &a.concept)
                .collect()
        })
        .collect();
    if let Some(q) = &instance.query {
        problems.push(vec![q]);
    } else if individuals.is_empty() {
        problems.push(Vec::new());
    }
    let mut stats = Stats::default();
    let mut model = Interpretation::new(problems.len());
    for (e, units) in problems.iter().enumerate() {
        let (witness, g, comp) = check(&edges, units);
        stats.types += g.succ.len() as u64;
        stats.rules += g.succ.iter().map(Vec::len).sum::<usize>() as u64;
        if let Some(w) = witness {
            let mut r = SolveResult::new(Method::NlGraph, Status::Unsat);
            r.witness = Some(w);
            r.stats = stats;
            return Ok(r);
        }
        // Standard 2-SAT assignment: a variable is true iff its component comes later.
        for (name, &v) in &g.vars {
            if comp[2 * v] > comp[2 * v + 1] {
                model.add_concept(name, e);
            }
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
    let mut r = SolveResult::new(Method::NlGraph, Status::Sat);
    r.model = Some(model);
    r.stats = stats;
    Ok(r)
}
