//! Complexity verdicts for satisfiability over operator and quantifier fragments.
//!
//! Rules are evaluated in order and the first match wins. A clone that matches no explicit
//! case falls to the hard case of its row.

use std::collections::BTreeSet;
use std::fmt;

use crate::boolfun::{identify_clone, CloneDescriptor, CloneName, OperatorSet, TruthTable, ALL_CLONES, REFERENCE_CLONES};
use crate::error::{Error, Result};
use crate::syntax::{signature, ProblemInstance, ProblemKind, Quantifiers};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComplexityClass {
    Trivial,
    NlComplete,
    PComplete,
    NpComplete,
    ExpTimeComplete,
    Open,
}

impl ComplexityClass {
    /// Position in `Trivial < NL < P < NP = Open < EXPTIME`.
    pub fn rank(self) -> u8 {
        match self {
            ComplexityClass::Trivial => 0,
            ComplexityClass::NlComplete => 1,
            ComplexityClass::PComplete => 2,
            ComplexityClass::NpComplete | ComplexityClass::Open => 3,
            ComplexityClass::ExpTimeComplete => 4,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            ComplexityClass::Trivial => "trivial",
            ComplexityClass::NlComplete => "NL",
            ComplexityClass::PComplete => "P",
            ComplexityClass::NpComplete => "NP",
            ComplexityClass::ExpTimeComplete => "EXP",
            ComplexityClass::Open => "open",
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComplexityClass::Trivial => "trivial",
            ComplexityClass::NlComplete => "NL-complete",
            ComplexityClass::PComplete => "P-complete",
            ComplexityClass::NpComplete => "NP-complete",
            ComplexityClass::ExpTimeComplete => "EXPTIME-complete",
            ComplexityClass::Open => "open",
        })
    }
}

/// Known bounds of an unresolved case.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub lower: &'static str,
    pub upper: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComplexityVerdict {
    pub class: ComplexityClass,
    /// Present exactly when `class` is [`ComplexityClass::Open`].
    pub open_bounds: Option<Bounds>,
    pub provenance: Vec<&'static str>,
}

impl ComplexityVerdict {
    fn new(class: ComplexityClass, provenance: &[&'static str]) -> Self {
        ComplexityVerdict {
            class,
            open_bounds: None,
            provenance: provenance.to_vec(),
        }
    }

    fn open(provenance: &[&'static str]) -> Self {
        ComplexityVerdict {
            class: ComplexityClass::Open,
            open_bounds: Some(Bounds {
                lower: "P-hard",
                upper: "in EXPTIME",
            }),
            provenance: provenance.to_vec(),
        }
    }
}

impl fmt::Display for ComplexityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)?;
        if let Some(b) = self.open_bounds {
            write!(f, ": {}, {}", b.lower, b.upper)?;
        }
        write!(f, " per {}", self.provenance.join(", "))
    }
}

/// What the rules need to know about `[B]`.
#[derive(Clone, Copy, Debug)]
struct Position {
    in_r0: bool,
    in_r1: bool,
    named: Option<CloneName>,
}

fn rule(kind: ProblemKind, q: Quantifiers, p: Position) -> ComplexityVerdict {
    use CloneName::*;
    use ComplexityClass::*;
    let is = |cs: &[CloneName]| p.named.is_some_and(|c| cs.contains(&c));
    let v = ComplexityVerdict::new;
    if kind == ProblemKind::Tsat {
        if p.in_r0 || p.in_r1 {
            return match (q.is_empty(), q.is_singleton()) {
                (true, _) => v(Trivial, &["Thm 3(4)"]),
                (_, true) => v(Trivial, &["Thm 4(3)"]),
                _ if p.in_r0 => v(Trivial, &["Thm 2(3)"]),
                _ => v(Trivial, &["Thm 2(4)"]),
            };
        }
        if q.is_empty() {
            return if is(&[I, N2, N]) {
                v(NlComplete, &["Thm 3(3)"])
            } else if is(&[E, V]) {
                v(PComplete, &["Thm 3(2)"])
            } else {
                v(NpComplete, &["Thm 3(1)"])
            };
        }
        if q.is_singleton() {
            return if is(&[I, E, V]) {
                v(PComplete, &["Thm 4(2)"])
            } else {
                v(ExpTimeComplete, &["Thm 4(1)", "Thm 1"])
            };
        }
        return v(ExpTimeComplete, &["Thm 2(1)", "Thm 1"]);
    }
    if p.in_r1 {
        return match (q.is_empty(), q.is_singleton()) {
            (true, _) => v(Trivial, &["Thm 5(4)"]),
            (_, true) => v(Trivial, &["Thm 6(4)"]),
            _ => v(Trivial, &["Thm 2(4)"]),
        };
    }
    if q.is_empty() {
        return if is(&[I0, I, N2, N]) {
            v(NlComplete, &["Thm 5(3)"])
        } else if is(&[E0, E, V0, V]) {
            v(PComplete, &["Thm 5(2)"])
        } else {
            v(NpComplete, &["Thm 5(1)"])
        };
    }
    if q == Quantifiers::FORALL {
        return if is(&[I0, I, V0, V]) {
            v(PComplete, &["Thm 6(2)"])
        } else if is(&[E0, E]) {
            v(ExpTimeComplete, &["Thm 6(3)", "Thm 1"])
        } else {
            v(ExpTimeComplete, &["Thm 6(1)", "Thm 1"])
        };
    }
    if q == Quantifiers::EXISTS {
        return if is(&[I0, I]) {
            v(PComplete, &["Thm 6(2)"])
        } else if is(&[E0, E]) {
            v(PComplete, &["Thm 6(3)"])
        } else if is(&[V0, V]) {
            if kind == ProblemKind::Tcsat {
                v(PComplete, &["Thm 6(2)"])
            } else {
                ComplexityVerdict::open(&["Thm 6 footnote"])
            }
        } else {
            v(ExpTimeComplete, &["Thm 6(1)", "Thm 1"])
        };
    }
    v(ExpTimeComplete, &["Thm 2(2)", "Thm 1"])
}

fn check_kind(kind: ProblemKind) -> Result<()> {
    if kind == ProblemKind::Csat {
        return Err(Error::Unsupported(
            "concept satisfiability without a TBox is not classified".into(),
        ));
    }
    Ok(())
}

/// The verdict for a named clone.
pub fn classify_clone(kind: ProblemKind, q: Quantifiers, clone: CloneName) -> Result<ComplexityVerdict> {
    check_kind(kind)?;
    Ok(rule(
        kind,
        q,
        Position {
            in_r0: clone.is_subclone_of(CloneName::R0),
            in_r1: clone.is_subclone_of(CloneName::R1),
            named: Some(clone),
        },
    ))
}

fn from_descriptor(kind: ProblemKind, q: Quantifiers, d: &CloneDescriptor) -> Result<ComplexityVerdict> {
    let in_r0 = d.within.contains(&CloneName::R0);
    let in_r1 = d.within.contains(&CloneName::R1);
    if !d.approximate {
        return Ok(rule(kind, q, Position { in_r0, in_r1, named: d.named }));
    }
    // The closure is only known from below: every named clone between the bounds is a
    // candidate, as is an unnamed clone.
    let mut candidates: Vec<Option<CloneName>> = ALL_CLONES
        .iter()
        .copied()
        .filter(|c| d.within.contains(c) && d.contains.iter().all(|s| s.is_subclone_of(*c)))
        .map(Some)
        .collect();
    candidates.push(None);
    let classes: BTreeSet<ComplexityClass> = candidates
        .iter()
        .map(|&named| rule(kind, q, Position { in_r0, in_r1, named }).class)
        .collect();
    if classes.len() == 1 {
        return Ok(rule(kind, q, Position { in_r0, in_r1, named: None }));
    }
    let names: Vec<String> = classes.iter().map(|c| c.to_string()).collect();
    Err(Error::Inconclusive(format!(
        "the generated clone is only approximated; candidate verdicts: {}",
        names.join(", ")
    )))
}

/// The verdict for `kind` restricted to the quantifiers `q` and the operators `ops`.
pub fn classify(kind: ProblemKind, q: Quantifiers, ops: &[TruthTable]) -> Result<ComplexityVerdict> {
    check_kind(kind)?;
    from_descriptor(kind, q, &identify_clone(ops)?)
}

/// Like [`classify`], for an operator set.
pub fn classify_operators(kind: ProblemKind, q: Quantifiers, ops: &OperatorSet) -> Result<ComplexityVerdict> {
    classify(kind, q, &ops.tables())
}

/// Classifies the fragment an instance actually uses.
pub fn classify_instance(instance: &ProblemInstance) -> Result<ComplexityVerdict> {
    let sig = signature(instance);
    classify(instance.kind, sig.quantifiers, &sig.operators.tables())
}

/// The verdict grid over the reference clones, one row per problem and quantifier set.
pub fn overview_table() -> String {
    let kinds = [ProblemKind::Tsat, ProblemKind::Tcsat, ProblemKind::Osat, ProblemKind::Ocsat];
    let mut out = format!("{:<12}", "");
    for c in REFERENCE_CLONES {
        out.push_str(&format!("{:>8}", c.name()));
    }
    out.push('\n');
    for kind in kinds {
        for q in Quantifiers::ALL {
            out.push_str(&format!("{:<12}", format!("{}_{}", kind.name(), q.keyword())));
            for c in REFERENCE_CLONES {
                let v = classify_clone(kind, q, c).expect("kind is classified");
                out.push_str(&format!("{:>8}", v.class.short()));
            }
            out.push('\n');
        }
    }
    out
}
