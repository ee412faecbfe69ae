//! Acceptance suite: one PASS/FAIL line per criterion; exits nonzero on any failure.

use std::collections::VecDeque;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sublogic::boolfun::{identify_clone, named, CloneName, NamedOperator, OperatorSet, TruthTable};
use sublogic::classifier::{classify, classify_clone, ComplexityClass};
use sublogic::generators::*;
use sublogic::limits::Limits;
use sublogic::solvers::*;
use sublogic::syntax::{check_model, parse, print, signature, Interpretation, ProblemInstance, ProblemKind, Quantifiers};
use sublogic::transforms::*;
use sublogic::Error;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn caps(rng: &mut ChaCha8Rng) -> SizeParams {
    SizeParams {
        atoms: rng.gen_range(2..=6),
        roles: rng.gen_range(1..=2),
        axioms: rng.gen_range(1..=8),
        individuals: rng.gen_range(1..=3),
        assertions: rng.gen_range(1..=3),
        depth: rng.gen_range(1..=2),
    }
}

fn typeelim(i: &ProblemInstance, closure: usize) -> Result<Option<SolveResult>, String> {
    match solve_typeelim(i, &Limits { closure, ..Limits::default() }) {
        Ok(r) => Ok(Some(r)),
        Err(Error::Limit(_)) => Ok(None),
        Err(e) => Err(format!("{e}\n{}", print(i))),
    }
}

fn model_ok(r: &SolveResult, i: &ProblemInstance) -> Result<(), String> {
    match &r.model {
        Some(m) if !check_model(m, i) => Err(format!("{} model fails on\n{}", r.method, print(i))),
        None if r.status == Status::Sat => Err(format!("{} gave SAT without a model", r.method)),
        _ => Ok(()),
    }
}

// 1 ---------------------------------------------------------------------------------------

const BASES: [(CloneName, &[(usize, &str)]); 18] = {
    use CloneName::*;
    [
        (BF, &[(2, "0001"), (1, "10")]),
        (R0, &[(2, "0001"), (2, "0110")]),
        (R1, &[(2, "0111"), (2, "1001")]),
        (M, &[(2, "0001"), (2, "0111"), (0, "0"), (0, "1")]),
        (S1, &[(2, "0010")]),
        (S11, &[(3, "00000111"), (0, "0")]),
        (D, &[(3, "10001110")]),
        (L, &[(2, "0110"), (0, "1")]),
        (L0, &[(2, "0110")]),
        (L3, &[(3, "10010110")]),
        (E0, &[(2, "0001"), (0, "0")]),
        (E, &[(2, "0001"), (0, "0"), (0, "1")]),
        (V0, &[(2, "0111"), (0, "0")]),
        (V, &[(2, "0111"), (0, "0"), (0, "1")]),
        (N2, &[(1, "10")]),
        (N, &[(1, "10"), (0, "1")]),
        (I0, &[(0, "0")]),
        (I, &[(0, "0"), (0, "1")]),
    ]
};

fn clone_identification() -> Outcome {
    let mut slowest = Duration::ZERO;
    for (clone, base) in BASES {
        let tables: Vec<TruthTable> =
            base.iter().map(|&(n, s)| TruthTable::from_bitstring(n, s).unwrap()).collect();
        let start = Instant::now();
        let d = identify_clone(&tables).map_err(|e| e.to_string())?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(d.named == Some(clone) && !d.approximate, "{clone}: got {:?}", d.named);
        ensure!(took < Duration::from_secs(1), "{clone} took {took:?}");
    }
    Ok(format!("18/18 bases, slowest {slowest:.2?}"))
}

// 2 ---------------------------------------------------------------------------------------

fn class(cell: &str) -> ComplexityClass {
    match cell {
        "t" => ComplexityClass::Trivial,
        "NL" => ComplexityClass::NlComplete,
        "P" => ComplexityClass::PComplete,
        "NP" => ComplexityClass::NpComplete,
        "EXP" => ComplexityClass::ExpTimeComplete,
        "?" => ComplexityClass::Open,
        other => panic!("bad cell {other}"),
    }
}

/// The overview table, by problem group and quantifier set in `none exists forall both`
/// order. `§` is P for TCSAT and open for OSAT/OCSAT.
const TSAT_COLUMNS: [CloneName; 10] = {
    use CloneName::*;
    [I, V, E, N, N2, M, L3, BF, R0, R1]
};
const TSAT_ROWS: [&str; 4] = [
    "NL P P NL NL NP NP NP t t",
    "P P P EXP EXP EXP EXP EXP t t",
    "P P P EXP EXP EXP EXP EXP t t",
    "EXP EXP EXP EXP EXP EXP EXP EXP t t",
];
const STAR_COLUMNS: [CloneName; 14] = {
    use CloneName::*;
    [I, I0, V, V0, E, E0, N, N2, S11, M, L3, L0, BF, R1]
};
const STAR_ROWS: [&str; 4] = [
    "NL NL P P P P NL NL NP NP NP NP NP t",
    "P P § § P P EXP EXP EXP EXP EXP EXP EXP t",
    "P P P P EXP EXP EXP EXP EXP EXP EXP EXP EXP t",
    "EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t",
];

const QS: [Quantifiers; 4] = [Quantifiers::NONE, Quantifiers::EXISTS, Quantifiers::FORALL, Quantifiers::BOTH];

/// Full verdict grid over `COLUMNS`, rows in `none forall exists both` order per problem.
const COLUMNS: [CloneName; 18] = {
    use CloneName::*;
    [I0, I, N2, N, V0, V, E0, E, S11, S1, D, M, L0, L, L3, R0, R1, BF]
};
const GRID: [(&str, &str); 12] = [
    ("tsat", "t NL NL NL t P t P t t NP NP t NP NP t t NP"),
    ("tsat", "t P EXP EXP t P t P t t EXP EXP t EXP EXP t t EXP"),
    ("tsat", "t P EXP EXP t P t P t t EXP EXP t EXP EXP t t EXP"),
    ("tsat", "t EXP EXP EXP t EXP t EXP t t EXP EXP t EXP EXP t t EXP"),
    ("tcsat", "NL NL NL NL P P P P NP NP NP NP NP NP NP NP t NP"),
    ("tcsat", "P P EXP EXP P P EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
    ("tcsat", "P P EXP EXP P P P P EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
    ("tcsat", "EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
    ("ocsat", "NL NL NL NL P P P P NP NP NP NP NP NP NP NP t NP"),
    ("ocsat", "P P EXP EXP P P EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
    ("ocsat", "P P EXP EXP ? ? P P EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
    ("ocsat", "EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP EXP t EXP"),
];
const GRID_QS: [Quantifiers; 4] = [Quantifiers::NONE, Quantifiers::FORALL, Quantifiers::EXISTS, Quantifiers::BOTH];

fn check_cell(kind: ProblemKind, q: Quantifiers, clone: CloneName, want: ComplexityClass) -> Result<(), String> {
    let by_name = classify_clone(kind, q, clone).map_err(|e| e.to_string())?;
    let by_base = classify(kind, q, &clone.base()).map_err(|e| e.to_string())?;
    ensure!(by_name.class == want, "{kind} {q} {clone}: expected {want}, got {}", by_name.class);
    ensure!(by_base == by_name, "{kind} {q} {clone}: base and name disagree");
    ensure!(by_name.open_bounds.is_some() == (want == ComplexityClass::Open), "{kind} {q} {clone}: bounds");
    ensure!(!by_name.provenance.is_empty(), "{kind} {q} {clone}: no provenance");
    Ok(())
}

fn classification_table() -> Outcome {
    let mut cells = 0;
    for (q, row) in QS.iter().zip(TSAT_ROWS) {
        for (clone, cell) in TSAT_COLUMNS.iter().zip(row.split_whitespace()) {
            check_cell(ProblemKind::Tsat, *q, *clone, class(cell))?;
            cells += 1;
        }
    }
    for kind in [ProblemKind::Tcsat, ProblemKind::Osat, ProblemKind::Ocsat] {
        for (q, row) in QS.iter().zip(STAR_ROWS) {
            for (clone, cell) in STAR_COLUMNS.iter().zip(row.split_whitespace()) {
                let cell = match (cell, kind) {
                    ("§", ProblemKind::Tcsat) => "P",
                    ("§", _) => "?",
                    _ => cell,
                };
                check_cell(kind, *q, *clone, class(cell))?;
                cells += 1;
            }
        }
    }
    for (n, (kind, row)) in GRID.iter().enumerate() {
        let kinds: Vec<ProblemKind> = match *kind {
            "ocsat" => vec![ProblemKind::Osat, ProblemKind::Ocsat],
            k => vec![k.parse().unwrap()],
        };
        let q = GRID_QS[n % 4];
        for k in kinds {
            for (clone, cell) in COLUMNS.iter().zip(row.split_whitespace()) {
                check_cell(k, q, *clone, class(cell))?;
                cells += 1;
            }
        }
    }
    let open = classify(ProblemKind::Ocsat, Quantifiers::EXISTS, &[named::or(), named::bot()])
        .map_err(|e| e.to_string())?;
    ensure!(
        open.to_string() == "open: P-hard, in EXPTIME per Thm 6 footnote",
        "open case reads `{open}`"
    );
    Ok(format!("{cells} cells, 0 mismatches"))
}

// 3 ---------------------------------------------------------------------------------------

struct Family {
    name: &'static str,
    method: Method,
    q: Quantifiers,
    clones: &'static [CloneName],
    kinds: &'static [ProblemKind],
}

const ALL_KINDS: [ProblemKind; 4] = [ProblemKind::Tsat, ProblemKind::Tcsat, ProblemKind::Osat, ProblemKind::Ocsat];
const ABOX_KINDS: [ProblemKind; 2] = [ProblemKind::Osat, ProblemKind::Ocsat];

const FAMILIES: [Family; 5] = {
    use CloneName::*;
    [
        Family {
            name: "quantifier-free",
            method: Method::PropSat,
            q: Quantifiers::NONE,
            clones: &[BF, R0, R1, M, S1, S11, D, L, L3, E, V, N],
            kinds: &ALL_KINDS,
        },
        Family { name: "none/N", method: Method::NlGraph, q: Quantifiers::NONE, clones: &[N, N2, I, I0], kinds: &ALL_KINDS },
        Family {
            name: "forall/E tsat",
            method: Method::Saturation,
            q: Quantifiers::FORALL,
            clones: &[E, E0, E1],
            kinds: &[ProblemKind::Tsat],
        },
        Family { name: "exists/E abox", method: Method::El, q: Quantifiers::EXISTS, clones: &[E, E0, E1, I], kinds: &ABOX_KINDS },
        Family { name: "forall/V abox", method: Method::ForallV, q: Quantifiers::FORALL, clones: &[V, V0, V1, I], kinds: &ABOX_KINDS },
    ]
};

fn solver_cross_validation() -> Outcome {
    let brute_limits = Limits { closure: 14, domain: 2, interpretations: 1 << 16 };
    let mut report = Vec::new();
    let start = Instant::now();
    for (n, f) in FAMILIES.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(300 + n as u64);
        let (mut decided, mut sat, mut brute_checked, mut attempts) = (0, 0, 0, 0);
        while decided < 500 {
            attempts += 1;
            ensure!(attempts < 10_000, "{}: too few instances within closure 14", f.name);
            let clone = f.clones[rng.gen_range(0..f.clones.len())];
            let kind = f.kinds[rng.gen_range(0..f.kinds.len())];
            let size = caps(&mut rng);
            let i = random_instance(&Profile::from_clone(kind, f.q, clone), &size, &mut rng);
            let Some(oracle) = typeelim(&i, 14)? else { continue };
            model_ok(&oracle, &i)?;
            let got = run_method(f.method, &i, &Limits::default()).map_err(|e| format!("{}: {e}\n{}", f.name, print(&i)))?;
            model_ok(&got, &i)?;
            ensure!(
                got.status == oracle.status,
                "{}: {} says {}, typeelim says {} on\n{}",
                f.name, got.method, got.status, oracle.status, print(&i)
            );
            match solve_bruteforce(&i, &brute_limits) {
                Ok(b) if b.status.is_decided() => {
                    model_ok(&b, &i)?;
                    ensure!(b.status == oracle.status, "{}: brute force disagrees on\n{}", f.name, print(&i));
                    brute_checked += 1;
                }
                Ok(_) | Err(Error::Limit(_)) => {}
                Err(e) => return Err(e.to_string()),
            }
            decided += 1;
            sat += (oracle.status == Status::Sat) as usize;
        }
        ensure!(sat > 0 && sat < decided, "{}: degenerate sample, {sat}/{decided} SAT", f.name);
        report.push(format!("{} {decided} ({sat} sat, {brute_checked} brute)", f.name));
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(300), "took {took:?}");
    Ok(format!("{}; {took:.1?}", report.join("; ")))
}

// 4 ---------------------------------------------------------------------------------------

fn small(rng: &mut ChaCha8Rng) -> SizeParams {
    SizeParams {
        atoms: 3,
        roles: rng.gen_range(1..=2),
        axioms: rng.gen_range(1..=4),
        individuals: 2,
        assertions: 2,
        depth: 2,
    }
}

fn draw(rng: &mut ChaCha8Rng, kinds: &[ProblemKind], clones: &[CloneName]) -> ProblemInstance {
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let clone = clones[rng.gen_range(0..clones.len())];
    let q = Quantifiers::ALL[rng.gen_range(0..4)];
    let size = small(rng);
    random_instance(&Profile::from_clone(kind, q, clone), &size, rng)
}

type Draw = Box<dyn Fn(&mut ChaCha8Rng) -> ProblemInstance>;
type Apply = Box<dyn Fn(&ProblemInstance, &mut ChaCha8Rng) -> sublogic::Result<Transformed>>;

fn transforms() -> Vec<(&'static str, Draw, Apply)> {
    use CloneName::*;
    let nand = OperatorSet::new([NamedOperator::new("nand", named::nand())]).unwrap();
    vec![
        (
            "lift",
            Box::new(|r: &mut ChaCha8Rng| draw(r, &ALL_KINDS, &[BF, E, V])),
            Box::new(|i: &ProblemInstance, r: &mut ChaCha8Rng| {
                let to = match i.kind {
                    ProblemKind::Tsat => [ProblemKind::Tcsat, ProblemKind::Ocsat][r.gen_range(0..2)],
                    ProblemKind::Tcsat => ProblemKind::Osat,
                    ProblemKind::Osat => ProblemKind::Ocsat,
                    _ => ProblemKind::Osat,
                };
                lift(i, to)
            }),
        ),
        (
            "simulate_constants",
            Box::new(|r: &mut ChaCha8Rng| draw(r, &ALL_KINDS, &[N, BF])),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| simulate_constants(i)),
        ),
        (
            "tcsat_to_tsat",
            Box::new(|r: &mut ChaCha8Rng| draw(r, &[ProblemKind::Tcsat], &[BF, E, V, N])),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| tcsat_to_tsat(i)),
        ),
        (
            "lewis_relativize",
            Box::new(|r: &mut ChaCha8Rng| {
                let mut s = small(r);
                s.axioms += 3;
                let q = Quantifiers::ALL[r.gen_range(0..4)];
                let clone = [BF, E, V, N, M][r.gen_range(0..5)];
                random_instance(&Profile::from_clone(ProblemKind::Tsat, q, clone), &s, r)
            }),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| lewis_relativize(i)),
        ),
        (
            "dualize(tsat)",
            Box::new(|r: &mut ChaCha8Rng| draw(r, &[ProblemKind::Tsat], &[BF, E, V, N])),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| dualize(i, DualMode::Tsat)),
        ),
        (
            "dualize(tcsat)",
            Box::new(|r: &mut ChaCha8Rng| draw(r, &[ProblemKind::Tcsat], &[BF, E, V, N])),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| dualize(i, DualMode::Tcsat)),
        ),
        (
            "change_base",
            Box::new(|r: &mut ChaCha8Rng| {
                let mut s = small(r);
                s.axioms = s.axioms.min(2);
                let kind = ALL_KINDS[r.gen_range(0..4)];
                let q = Quantifiers::ALL[r.gen_range(0..4)];
                random_instance(&Profile::from_clone(kind, q, BF), &s, r)
            }),
            Box::new(move |i: &ProblemInstance, _: &mut ChaCha8Rng| change_base(i, &nand)),
        ),
        (
            "normalize_nf",
            Box::new(|r: &mut ChaCha8Rng| draw(r, &[ProblemKind::Tsat], &[E, E0, E1])),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| normalize_nf(i)),
        ),
        (
            "eliminate_conjunction_nf7",
            Box::new(|r: &mut ChaCha8Rng| {
                let mut s = small(r);
                s.axioms = 4;
                let i = random_instance(&Profile::from_clone(ProblemKind::Tsat, Quantifiers::BOTH, E), &s, r);
                normalize_nf(&i).unwrap().instance
            }),
            Box::new(|i: &ProblemInstance, _: &mut ChaCha8Rng| eliminate_conjunction_nf7(i)),
        ),
    ]
}

fn reduction_soundness() -> Outcome {
    let mut report = Vec::new();
    for (n, (name, draw, apply)) in transforms().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(400 + n as u64);
        let (mut checked, mut sat, mut attempts) = (0, 0, 0);
        while checked < 200 {
            attempts += 1;
            ensure!(attempts < 4000, "{name}: too few instances within closure 16");
            let i = draw(&mut rng);
            let out = apply(&i, &mut rng).map_err(|e| format!("{name}: {e}\n{}", print(&i)))?;
            let (Some(a), Some(b)) = (typeelim(&i, 16)?, typeelim(&out.instance, 16)?) else { continue };
            ensure!(
                a.status == b.status,
                "{name}: {} before, {} after\n{}\n{}",
                a.status, b.status, print(&i), print(&out.instance)
            );
            checked += 1;
            sat += (a.status == Status::Sat) as usize;
        }
        ensure!(sat > 0 && sat < checked, "{name}: degenerate sample, {sat}/{checked} SAT");
        report.push(format!("{name} {checked} ({sat} sat)"));
    }
    Ok(report.join("; "))
}

// 5 ---------------------------------------------------------------------------------------

fn bfs(g: &Digraph, s: usize, t: usize) -> bool {
    let mut adj = vec![Vec::new(); g.nodes];
    for &(u, v) in &g.edges {
        adj[u].push(v);
    }
    let mut seen = vec![false; g.nodes];
    seen[s] = true;
    let mut queue = VecDeque::from([s]);
    while let Some(u) = queue.pop_front() {
        for &v in &adj[u] {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen[t]
}

fn forward_chaining(h: &Hypergraph, start: &[usize], t: usize) -> bool {
    let mut reached = vec![false; h.nodes];
    for &s in start {
        reached[s] = true;
    }
    loop {
        let mut changed = false;
        for e in &h.edges {
            if !reached[e.dst] && e.src.iter().all(|&u| reached[u]) {
                reached[e.dst] = true;
                changed = true;
            }
        }
        if !changed {
            return reached[t];
        }
    }
}

fn exactly_one(clauses: &[Clause], vars: usize) -> bool {
    (0u32..1 << vars).any(|a| {
        clauses
            .iter()
            .all(|c| c.iter().filter(|l| ((a >> l.var) & 1 == 1) == l.positive).count() == 1)
    })
}

fn solved(i: &ProblemInstance) -> Result<Status, String> {
    dispatch(i, Choice::Auto, false, &Limits::default())
        .map(|r| r.status)
        .map_err(|e| e.to_string())
}

fn verdict(unsat: bool) -> Status {
    if unsat {
        Status::Unsat
    } else {
        Status::Sat
    }
}

fn generator_ground_truth() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(500);
    let mut unsat = [0; 3];
    for n in 0..100 {
        let nodes = rng.gen_range(2..=30);
        let g = Digraph::random(nodes, 1 + n % 2, &mut rng);
        let (s, t) = (rng.gen_range(0..nodes), rng.gen_range(0..nodes));
        let want = verdict(bfs(&g, s, t));
        ensure!(solved(&gen_gap(&g, s, t))? == want, "GAP mismatch");
        unsat[0] += (want == Status::Unsat) as usize;
    }
    for _ in 0..100 {
        let nodes = rng.gen_range(3..=20);
        let h = Hypergraph::random(nodes, 1, &mut rng);
        let start: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..nodes)).collect();
        let t = rng.gen_range(0..nodes);
        let want = verdict(forward_chaining(&h, &start, t));
        ensure!(solved(&gen_hgap(&h, &start, t))? == want, "HGAP mismatch");
        unsat[1] += (want == Status::Unsat) as usize;
    }
    for _ in 0..100 {
        let vars = rng.gen_range(3..=20);
        let clauses = random_3cnf(vars, rng.gen_range(1..=vars), &mut rng);
        let want = verdict(!exactly_one(&clauses, vars));
        ensure!(solved(&gen_one_in_three(&clauses))? == want, "one-in-three mismatch");
        unsat[2] += (want == Status::Unsat) as usize;
    }
    Ok(format!(
        "GAP 100 ({} unsat), HGAP 100 ({} unsat), one-in-three 100 ({} unsat)",
        unsat[0], unsat[1], unsat[2]
    ))
}

// 6 ---------------------------------------------------------------------------------------

fn singleton(i: &ProblemInstance, full: bool) -> Interpretation {
    let sig = signature(i);
    let mut m = Interpretation::new(1);
    if full {
        for a in &sig.atoms {
            m.add_concept(a, 0);
        }
    }
    for r in &sig.roles {
        m.add_role(r, 0, 0);
    }
    for a in &sig.individuals {
        m.individuals.insert(a.to_string(), 0);
    }
    m
}

fn triviality() -> Outcome {
    use CloneName::*;
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for (clones, full) in [([R1, M1, E1, V1, L1], true), ([R0, M0, E0, V0, L0], false)] {
        for clone in clones {
            for n in 0..100 {
                // One-reproducing operators allow any problem; zero-reproducing ones only TBoxes.
                let kind = if full { ALL_KINDS[n % 4] } else { ProblemKind::Tsat };
                let size = caps(&mut rng);
                let i = random_instance(&Profile::from_clone(kind, Quantifiers::BOTH, clone), &size, &mut rng);
                ensure!(check_model(&singleton(&i, full), &i), "{clone}: singleton model fails on\n{}", print(&i));
            }
        }
    }
    Ok("10 operator sets x 100 instances".into())
}

// 7 ---------------------------------------------------------------------------------------

/// Ten atoms and four quantified concepts: a closure of exactly 14.
const WIDE: &str = "\
operator not 1 10
operator and 2 0001
operator or 2 0111
problem tcsat
tbox
  (or A4 A5) <= (some R A0)
  (some R A0) <= (or (all S A3) A6)
  A6 <= (all R A1)
  (and A7 A8) <= (some S A2)
  A9 <= (not (and A2 A3))
  (and (all R A1) (all S A3)) <= (or A4 (not A7))
query (and A8 (not A5))
";

fn performance_floor() -> Outcome {
    let i = parse(WIDE).map_err(|e| e.to_string())?;
    ensure!(typeelim(&i, 13)?.is_none(), "closure is below 14");
    let mut slowest = Duration::ZERO;
    let start = Instant::now();
    let r = typeelim(&i, 14)?.ok_or("closure is above 14")?;
    model_ok(&r, &i)?;
    slowest = slowest.max(start.elapsed());
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let mut timed = 1;
    while timed < 50 {
        let q = Quantifiers::ALL[rng.gen_range(0..4)];
        let size = SizeParams { atoms: 8, roles: 2, axioms: 8, individuals: 3, assertions: 3, depth: 2 };
        let i = random_instance(&Profile::from_clone(ProblemKind::Ocsat, q, CloneName::BF), &size, &mut rng);
        let start = Instant::now();
        if typeelim(&i, 14)?.is_some() {
            slowest = slowest.max(start.elapsed());
            timed += 1;
        }
    }
    ensure!(slowest < Duration::from_secs(10), "slowest instance took {slowest:?}");
    Ok(format!("{timed} instances, slowest {slowest:.2?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("clone identification", clone_identification),
        ("classification table", classification_table),
        ("solver cross-validation", solver_cross_validation),
        ("reduction soundness", reduction_soundness),
        ("generator ground truth", generator_ground_truth),
        ("triviality models", triviality),
        ("type elimination performance", performance_floor),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default())
        });
        let took = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{took:.1?}]", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} [{took:.1?}]", n + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
