use std::collections::VecDeque;

use rand::Rng;

use crate::boolfun::{named, NamedOperator, OperatorSet};
use crate::syntax::{Axiom, Concept, ProblemInstance, ProblemKind};

/// A directed graph on nodes `0..nodes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
}

/// A hyperedge with one or two source nodes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperEdge {
    pub src: Vec<usize>,
    pub dst: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hypergraph {
    pub nodes: usize,
    pub edges: Vec<HyperEdge>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

pub type Clause = [Literal; 3];

impl Digraph {
    /// Each node receives `degree` out-edges with uniformly drawn targets (duplicates dropped).
    pub fn random(nodes: usize, degree: usize, rng: &mut impl Rng) -> Self {
        let mut edges = Vec::new();
        if nodes > 1 {
            for u in 0..nodes {
                for _ in 0..degree {
                    let v = rng.gen_range(0..nodes);
                    if v != u && !edges.contains(&(u, v)) {
                        edges.push((u, v));
                    }
                }
            }
        }
        Digraph { nodes, edges }
    }

    pub fn reaches(&self, s: usize, t: usize) -> bool {
        let mut seen = vec![false; self.nodes];
        let mut queue = VecDeque::from([s]);
        seen[s] = true;
        while let Some(u) = queue.pop_front() {
            if u == t {
                return true;
            }
            for &(a, b) in &self.edges {
                if a == u && !seen[b] {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        false
    }
}

impl Hypergraph {
    /// Each node is the target of `degree` hyperedges whose one or two sources are uniform.
    pub fn random(nodes: usize, degree: usize, rng: &mut impl Rng) -> Self {
        let mut edges = Vec::new();
        for dst in 0..nodes {
            for _ in 0..degree {
                let k = rng.gen_range(1..=2);
                let mut src: Vec<usize> = (0..k).map(|_| rng.gen_range(0..nodes)).collect();
                src.sort_unstable();
                src.dedup();
                edges.push(HyperEdge { src, dst });
            }
        }
        Hypergraph { nodes, edges }
    }

    /// Forward-chaining closure of `start`.
    pub fn closure(&self, start: &[usize]) -> Vec<bool> {
        let mut reached = vec![false; self.nodes];
        for &s in start {
            reached[s] = true;
        }
        let mut changed = true;
        while changed {
            changed = false;
            for e in &self.edges {
                if !reached[e.dst] && e.src.iter().all(|&u| reached[u]) {
                    reached[e.dst] = true;
                    changed = true;
                }
            }
        }
        reached
    }
}

fn node_atom(prefix: &str, u: usize) -> Concept {
    Concept::atom(format!("{prefix}{u}"))
}

fn constants() -> (NamedOperator, NamedOperator) {
    (
        NamedOperator::new("top", named::top()),
        NamedOperator::new("bot", named::bot()),
    )
}

/// `{A_u ⊑ A_v | (u,v) ∈ E} ∪ {⊤ ⊑ A_s, A_t ⊑ ⊥}`: unsatisfiable iff `t` is reachable from `s`.
pub fn gen_gap(g: &Digraph, s: usize, t: usize) -> ProblemInstance {
    assert!(s < g.nodes && t < g.nodes, "s and t must be nodes");
    let (top, bot) = constants();
    let mut inst = ProblemInstance::new(
        ProblemKind::Tsat,
        OperatorSet::new([top.clone(), bot.clone()]).expect("distinct names"),
    );
    let tbox = &mut inst.ontology.tbox;
    for &(u, v) in &g.edges {
        tbox.push(Axiom::new(node_atom("A", u), node_atom("A", v)));
    }
    tbox.push(Axiom::new(Concept::apply(&top, vec![]), node_atom("A", s)));
    tbox.push(Axiom::new(node_atom("A", t), Concept::apply(&bot, vec![])));
    inst
}

fn conjunction(and: &NamedOperator, mut parts: Vec<Concept>) -> Concept {
    let first = parts.remove(0);
    parts
        .into_iter()
        .fold(first, |acc, c| Concept::apply(and, vec![acc, c]))
}

/// Hyperedges become `u₁ ⊓ u₂ ⊑ v`; `⊤ ⊑ s₁ ⊓ … ⊓ t′` and `t ⊓ t′ ⊑ ⊥` close the chain.
/// Unsatisfiable iff `t` is in the forward-chaining closure of `start`.
pub fn gen_hgap(h: &Hypergraph, start: &[usize], t: usize) -> ProblemInstance {
    assert!(t < h.nodes && start.iter().all(|&s| s < h.nodes));
    let and = NamedOperator::new("and", named::and());
    let (top, bot) = constants();
    let mut inst = ProblemInstance::new(
        ProblemKind::Tsat,
        OperatorSet::new([and.clone(), top.clone(), bot.clone()]).expect("distinct names"),
    );
    let tbox = &mut inst.ontology.tbox;
    for e in &h.edges {
        let src = e.src.iter().map(|&u| node_atom("N", u)).collect();
        tbox.push(Axiom::new(conjunction(&and, src), node_atom("N", e.dst)));
    }
    let t_prime = Concept::atom(format!("N{t}'"));
    let mut init: Vec<Concept> = start.iter().map(|&s| node_atom("N", s)).collect();
    init.push(t_prime.clone());
    tbox.push(Axiom::new(Concept::apply(&top, vec![]), conjunction(&and, init)));
    tbox.push(Axiom::new(
        Concept::apply(&and, vec![node_atom("N", t), t_prime]),
        Concept::apply(&bot, vec![]),
    ));
    inst
}

/// Uniform random 3-clauses over `vars` variables.
pub fn random_3cnf(vars: usize, clauses: usize, rng: &mut impl Rng) -> Vec<Clause> {
    (0..clauses)
        .map(|_| {
            [(); 3].map(|_| Literal {
                var: rng.gen_range(0..vars),
                positive: rng.gen_bool(0.5),
            })
        })
        .collect()
}

/// True iff some assignment makes exactly one literal per clause true.
pub fn one_in_three_satisfiable(clauses: &[Clause]) -> bool {
    let vars = clauses
        .iter()
        .flatten()
        .map(|l| l.var + 1)
        .max()
        .unwrap_or(0);
    (0u64..(1 << vars)).any(|assignment| {
        clauses.iter().all(|c| {
            c.iter()
                .filter(|l| ((assignment >> l.var) & 1 == 1) == l.positive)
                .count()
                == 1
        })
    })
}

/// The exactly-one-in-three reduction over binary `⊕` and `⊤`.
///
/// Per clause `i` with literals `l₁,l₂,l₃` and fresh atoms `Cᵢ, Cᵢa, Cᵢb, Cᵢc`:
/// `⊤ ⊑ l₁⊕l₂⊕l₃⊕Cᵢ⊕⊤`, `⊤ ⊑ l₁⊕l₂⊕l₃`, `Cᵢa ⊑ l₁⊕l₂`, `Cᵢb ⊑ l₁⊕l₃`, `Cᵢc ⊑ l₂⊕l₃`,
/// `Cᵢ ⊑ Cᵢa⊕Cᵢb⊕Cᵢc`; per variable `x`: `⊤ ⊑ Xx ⊕ Xx′`.
pub fn gen_one_in_three(clauses: &[Clause]) -> ProblemInstance {
    let xor = NamedOperator::new("xor", named::xor());
    let top = NamedOperator::new("top", named::top());
    let mut inst = ProblemInstance::new(
        ProblemKind::Tsat,
        OperatorSet::new([xor.clone(), top.clone()]).expect("distinct names"),
    );
    let x = |parts: Vec<Concept>| {
        let mut it = parts.into_iter();
        let first = it.next().expect("nonempty");
        it.fold(first, |acc, c| Concept::apply(&xor, vec![acc, c]))
    };
    let t = || Concept::apply(&top, vec![]);
    let lit = |l: &Literal| {
        if l.positive {
            Concept::atom(format!("X{}", l.var))
        } else {
            Concept::atom(format!("X{}'", l.var))
        }
    };
    let tbox = &mut inst.ontology.tbox;
    for (i, c) in clauses.iter().enumerate() {
        let [l1, l2, l3] = [lit(&c[0]), lit(&c[1]), lit(&c[2])];
        let s = Concept::atom(format!("C{}", i + 1));
        let [sa, sb, sc] = ["a", "b", "c"].map(|k| Concept::atom(format!("C{}{k}", i + 1)));
        tbox.push(Axiom::new(
            t(),
            x(vec![l1.clone(), l2.clone(), l3.clone(), s.clone(), t()]),
        ));
        tbox.push(Axiom::new(t(), x(vec![l1.clone(), l2.clone(), l3.clone()])));
        tbox.push(Axiom::new(sa.clone(), x(vec![l1.clone(), l2.clone()])));
        tbox.push(Axiom::new(sb.clone(), x(vec![l1, l3.clone()])));
        tbox.push(Axiom::new(sc.clone(), x(vec![l2, l3])));
        tbox.push(Axiom::new(s, x(vec![sa, sb, sc])));
    }
    let mut vars: Vec<usize> = clauses.iter().flatten().map(|l| l.var).collect();
    vars.sort_unstable();
    vars.dedup();
    for v in vars {
        tbox.push(Axiom::new(
            t(),
            x(vec![
                lit(&Literal { var: v, positive: true }),
                lit(&Literal { var: v, positive: false }),
            ]),
        ));
    }
    inst
}
