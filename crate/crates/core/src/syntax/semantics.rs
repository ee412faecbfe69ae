use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Concept, ProblemInstance};
use crate::boolfun::TruthTable;

/// A finite interpretation with domain `{0, …, domain_size - 1}`.
///
/// Atomic concepts and roles missing from the maps have empty extensions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub domain_size: usize,
    pub concepts: BTreeMap<String, BTreeSet<usize>>,
    pub roles: BTreeMap<String, BTreeSet<(usize, usize)>>,
    pub individuals: BTreeMap<String, usize>,
}

impl Interpretation {
    pub fn new(domain_size: usize) -> Self {
        Interpretation {
            domain_size,
            ..Default::default()
        }
    }

    pub fn add_concept(&mut self, name: &str, element: usize) {
        self.concepts.entry(name.to_string()).or_default().insert(element);
    }

    pub fn add_role(&mut self, name: &str, from: usize, to: usize) {
        self.roles.entry(name.to_string()).or_default().insert((from, to));
    }

    pub fn is_well_formed(&self) -> bool {
        let n = self.domain_size;
        n > 0
            && self.concepts.values().flatten().all(|&x| x < n)
            && self.roles.values().flatten().all(|&(x, y)| x < n && y < n)
            && self.individuals.values().all(|&x| x < n)
    }

    pub(crate) fn extension(&self, c: &Concept) -> Vec<bool> {
        let n = self.domain_size;
        match c {
            Concept::Atomic(a) => {
                let mut out = vec![false; n];
                if let Some(set) = self.concepts.get(&**a) {
                    for &x in set {
                        out[x] = true;
                    }
                }
                out
            }
            Concept::Apply(op, cs) => {
                let exts: Vec<Vec<bool>> = cs.iter().map(|c| self.extension(c)).collect();
                let mut args = vec![false; cs.len()];
                (0..n)
                    .map(|x| {
                        for (a, e) in args.iter_mut().zip(&exts) {
                            *a = e[x];
                        }
                        op.table.get(TruthTable::index(&args))
                    })
                    .collect()
            }
            Concept::Exists(r, c) => {
                let inner = self.extension(c);
                let mut out = vec![false; n];
                for &(x, y) in self.roles.get(&**r).into_iter().flatten() {
                    if inner[y] {
                        out[x] = true;
                    }
                }
                out
            }
            Concept::Forall(r, c) => {
                let inner = self.extension(c);
                let mut out = vec![true; n];
                for &(x, y) in self.roles.get(&**r).into_iter().flatten() {
                    if !inner[y] {
                        out[x] = false;
                    }
                }
                out
            }
        }
    }
}

impl fmt::Display for Interpretation {
    /// ```text
    /// model
    ///   domain 2
    ///   concept A 0 1
    ///   role R (0,1)
    ///   individual a 0
    /// end
    /// ```
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "model")?;
        writeln!(f, "  domain {}", self.domain_size)?;
        for (name, set) in &self.concepts {
            write!(f, "  concept {name}")?;
            for x in set {
                write!(f, " {x}")?;
            }
            writeln!(f)?;
        }
        for (name, set) in &self.roles {
            write!(f, "  role {name}")?;
            for (x, y) in set {
                write!(f, " ({x},{y})")?;
            }
            writeln!(f)?;
        }
        for (name, x) in &self.individuals {
            writeln!(f, "  individual {name} {x}")?;
        }
        write!(f, "end")
    }
}

pub fn evaluate_concept(i: &Interpretation, c: &Concept) -> BTreeSet<usize> {
    i.extension(c)
        .into_iter()
        .enumerate()
        .filter_map(|(x, b)| b.then_some(x))
        .collect()
}

/// True iff `i` satisfies every axiom and assertion and the query (if any) is nonempty.
pub fn check_model(i: &Interpretation, instance: &ProblemInstance) -> bool {
    if !i.is_well_formed() {
        return false;
    }
    let axioms_hold = instance.tbox().iter().all(|ax| {
        let l = i.extension(&ax.lhs);
        let r = i.extension(&ax.rhs);
        l.iter().zip(&r).all(|(&a, &b)| !a || b)
    });
    if !axioms_hold {
        return false;
    }
    for a in &instance.ontology.abox_concepts {
        let Some(&x) = i.individuals.get(&*a.individual) else {
            return false;
        };
        if !i.extension(&a.concept)[x] {
            return false;
        }
    }
    for r in &instance.ontology.abox_roles {
        let (Some(&x), Some(&y)) = (i.individuals.get(&*r.from), i.individuals.get(&*r.to)) else {
            return false;
        };
        if !i.roles.get(&*r.role).is_some_and(|set| set.contains(&(x, y))) {
            return false;
        }
    }
    match &instance.query {
        Some(q) => i.extension(q).iter().any(|&b| b),
        None => true,
    }
}
