use anyhow::Result;
use serde_json::json;
use sublogic::boolfun::{identify_clone, CloneName, TruthTable};
use sublogic::classifier::{classify, ComplexityClass};
use sublogic::syntax::{ProblemKind, Quantifiers};

use crate::{clone_text, Outcome, Session};

/// Standard bases as `(arity, bitstring)` with the first argument most significant.
const BASES: [(&str, &[(usize, &str)]); 18] = [
    ("BF", &[(2, "0001"), (1, "10")]),
    ("R0", &[(2, "0001"), (2, "0110")]),
    ("R1", &[(2, "0111"), (2, "1001")]),
    ("M", &[(2, "0001"), (2, "0111"), (0, "0"), (0, "1")]),
    ("S1", &[(2, "0010")]),
    ("S11", &[(3, "00000111"), (0, "0")]),
    ("D", &[(3, "10001110")]),
    ("L", &[(2, "0110"), (0, "1")]),
    ("L0", &[(2, "0110")]),
    ("L3", &[(3, "10010110")]),
    ("E0", &[(2, "0001"), (0, "0")]),
    ("E", &[(2, "0001"), (0, "0"), (0, "1")]),
    ("V0", &[(2, "0111"), (0, "0")]),
    ("V", &[(2, "0111"), (0, "0"), (0, "1")]),
    ("N2", &[(1, "10")]),
    ("N", &[(1, "10"), (0, "1")]),
    ("I0", &[(0, "0")]),
    ("I", &[(0, "0"), (0, "1")]),
];

const COLUMNS: [&str; 12] = ["I0", "I", "N2", "V0", "V", "E0", "E", "S11", "D", "M", "R1", "R0"];

/// Expected verdicts over `COLUMNS`; OSAT rows equal OCSAT rows.
const GRID: [(&str, &str, &str); 12] = [
    ("tsat", "none", "t NL NL t P t P t NP NP t t"),
    ("tsat", "forall", "t P EXP t P t P t EXP EXP t t"),
    ("tsat", "exists", "t P EXP t P t P t EXP EXP t t"),
    ("tsat", "both", "t EXP EXP t EXP t EXP t EXP EXP t t"),
    ("tcsat", "none", "NL NL NL P P P P NP NP NP t NP"),
    ("tcsat", "forall", "P P EXP P P EXP EXP EXP EXP EXP t EXP"),
    ("tcsat", "exists", "P P EXP P P P P EXP EXP EXP t EXP"),
    ("tcsat", "both", "EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
    ("ocsat", "none", "NL NL NL P P P P NP NP NP t NP"),
    ("ocsat", "forall", "P P EXP P P EXP EXP EXP EXP EXP t EXP"),
    ("ocsat", "exists", "P P EXP open open P P EXP EXP EXP t EXP"),
    ("ocsat", "both", "EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
];

fn short(cell: &str) -> &str {
    if cell == "t" {
        "trivial"
    } else {
        cell
    }
}

fn tables(base: &[(usize, &str)]) -> Result<Vec<TruthTable>> {
    Ok(base
        .iter()
        .map(|&(arity, bits)| TruthTable::from_bitstring(arity, bits))
        .collect::<Result<_, _>>()?)
}

pub fn run(ctx: &Session) -> Result<Outcome> {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (name, base) in BASES {
        checks += 1;
        let d = identify_clone(&tables(base)?)?;
        let got = clone_text(&d);
        if got != name {
            failures.push(format!("clone of the {name} base: got {got}"));
        }
    }
    for (kind, q, row) in GRID {
        let kinds: &[&str] = if kind == "ocsat" { &["osat", "ocsat"] } else { &[kind] };
        let quantifiers: Quantifiers = q.parse()?;
        for k in kinds {
            let problem: ProblemKind = k.parse()?;
            for (col, cell) in COLUMNS.iter().zip(row.split_whitespace()) {
                checks += 1;
                let clone: CloneName = col.parse()?;
                let v = classify(problem, quantifiers, &clone.base())?;
                let ok = v.class.short() == short(cell)
                    && v.open_bounds.is_some() == (v.class == ComplexityClass::Open);
                if !ok {
                    failures.push(format!("{k} {q} {col}: expected {cell}, got {}", v.class.short()));
                }
            }
        }
    }
    if ctx.json {
        out!("{}", json!({ "checks": checks, "failures": failures }));
    } else {
        for f in &failures {
            out!("FAIL {f}");
        }
        out!("{} checks, {} failures", checks, failures.len());
    }
    Ok(if failures.is_empty() { Outcome::Done } else { Outcome::Failed })
}
