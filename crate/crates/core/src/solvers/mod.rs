//! Decision procedures and the dispatcher that picks one from the classification.

mod brute;
mod el;
mod forall_v;
mod nlgraph;
mod propsat;
mod saturation;
mod typeelim;

use std::fmt;
use std::str::FromStr;

use crate::boolfun::{CloneName, TruthTable};
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::syntax::{signature, Interpretation, ProblemInstance, Quantifiers};

pub use brute::solve_bruteforce;
pub use el::solve_el;
pub use forall_v::solve_forall_v;
pub use nlgraph::solve_nl_graph;
pub use propsat::solve_prop_sat;
pub use saturation::solve_saturation;
pub use typeelim::solve_typeelim;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
}

impl Status {
    pub fn is_decided(self) -> bool {
        self != Status::Unknown
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "SAT",
            Status::Unsat => "UNSAT",
            Status::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    TypeElim,
    Brute,
    NlGraph,
    Saturation,
    El,
    ForallV,
    PropSat,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::TypeElim,
        Method::Brute,
        Method::NlGraph,
        Method::Saturation,
        Method::El,
        Method::ForallV,
        Method::PropSat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::TypeElim => "typeelim",
            Method::Brute => "brute",
            Method::NlGraph => "nlgraph",
            Method::Saturation => "saturation",
            Method::El => "el",
            Method::ForallV => "forallv",
            Method::PropSat => "propsat",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .iter()
            .copied()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Argument(format!("unknown method `{s}`")))
    }
}

/// Work counters; their meaning depends on the method.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    /// Candidate types, literal nodes, or interpretations examined.
    pub types: u64,
    /// Eliminations, rule applications, or decisions.
    pub rules: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveResult {
    pub status: Status,
    pub model: Option<Interpretation>,
    /// A human-readable certificate of unsatisfiability, one step per line.
    pub witness: Option<Vec<String>>,
    pub method: Method,
    pub stats: Stats,
}

impl SolveResult {
    pub(crate) fn new(method: Method, status: Status) -> Self {
        SolveResult {
            status,
            model: None,
            witness: None,
            method,
            stats: Stats::default(),
        }
    }
}

/// Which procedure to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Choice {
    #[default]
    Auto,
    Fixed(Method),
}

impl FromStr for Choice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "auto" {
            Ok(Choice::Auto)
        } else {
            s.parse().map(Choice::Fixed)
        }
    }
}

fn within(ops: &[TruthTable], c: CloneName) -> bool {
    ops.iter().all(|f| c.contains(f))
}

/// The cheapest procedure whose fragment contains the instance.
pub fn auto_method(instance: &ProblemInstance) -> Result<Method> {
    let sig = signature(instance);
    let ops = sig.operators.tables();
    let q = sig.quantifiers;
    if q == Quantifiers::NONE {
        if within(&ops, CloneName::N) {
            return Ok(Method::NlGraph);
        }
        return Ok(Method::PropSat);
    }
    if q.is_subset_of(Quantifiers::EXISTS) && within(&ops, CloneName::E) {
        return Ok(Method::El);
    }
    if q.is_subset_of(Quantifiers::FORALL) {
        if within(&ops, CloneName::V) {
            return Ok(Method::ForallV);
        }
        if within(&ops, CloneName::E) && !instance.ontology.has_abox() && instance.query.is_none()
        {
            return Ok(Method::Saturation);
        }
    }
    Ok(Method::TypeElim)
}

pub fn run_method(method: Method, instance: &ProblemInstance, limits: &Limits) -> Result<SolveResult> {
    match method {
        Method::TypeElim => solve_typeelim(instance, limits),
        Method::Brute => solve_bruteforce(instance, limits),
        Method::NlGraph => solve_nl_graph(instance),
        Method::Saturation => solve_saturation(instance),
        Method::El => solve_el(instance),
        Method::ForallV => solve_forall_v(instance),
        Method::PropSat => solve_prop_sat(instance),
    }
}

/// Runs the chosen procedure; with `cross_check`, also runs type elimination and brute force
/// where they fit the limits and fails with [`Error::Discrepancy`] on a conflicting verdict.
pub fn dispatch(
    instance: &ProblemInstance,
    choice: Choice,
    cross_check: bool,
    limits: &Limits,
) -> Result<SolveResult> {
    instance.validate()?;
    let method = match choice {
        Choice::Auto => auto_method(instance)?,
        Choice::Fixed(m) => m,
    };
    let result = run_method(method, instance, limits)?;
    if cross_check {
        for other in [Method::TypeElim, Method::Brute] {
            if other == method {
                continue;
            }
            let check = match run_method(other, instance, limits) {
                Ok(r) => r,
                Err(Error::Limit(_)) => continue,
                Err(e) => return Err(e),
            };
            if result.status.is_decided()
                && check.status.is_decided()
                && result.status != check.status
            {
                return Err(Error::Discrepancy(format!(
                    "{method} says {} but {other} says {}",
                    result.status, check.status
                )));
            }
        }
    }
    Ok(result)
}

/// Checks that every used operator lies in `clone` and the quantifiers in `q`.
pub(crate) fn require_fragment(
    instance: &ProblemInstance,
    q: Quantifiers,
    clone: CloneName,
    method: Method,
) -> Result<()> {
    let sig = signature(instance);
    if !sig.quantifiers.is_subset_of(q) {
        return Err(Error::Fragment(format!(
            "{method} handles quantifiers {q}, instance uses {}",
            sig.quantifiers
        )));
    }
    if let Some(op) = sig.operators.iter().find(|o| !clone.contains(&o.table)) {
        return Err(Error::Fragment(format!(
            "{method} needs operators in {clone}; `{}` is not",
            op.name
        )));
    }
    Ok(())
}
