use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sublogic::boolfun::{named, CloneName, NamedOperator, OperatorSet, TruthTable};
use sublogic::generators::{random_instance, standard_operators, Profile, SizeParams};
use sublogic::syntax::*;

fn fixture(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/fixtures/printer/{name}", env!("CARGO_MANIFEST_DIR")))
        .unwrap()
}

#[test]
fn parse_minimal_instance() {
    let inst = parse("operator bot 0 0\nproblem tsat\ntbox\n(bot) <= A\n").unwrap();
    assert_eq!(inst.kind, ProblemKind::Tsat);
    assert_eq!(inst.tbox().len(), 1);
}

#[test]
fn parse_rejects_arity_mismatch() {
    let e = parse("operator and 2 0001\nproblem tsat\ntbox\n(and A) <= B\n").unwrap_err();
    match e {
        sublogic::Error::Parse { line, message, .. } => {
            assert_eq!(line, 4);
            assert!(message.contains("arity"), "{message}");
        }
        other => panic!("unexpected {other:?}"),
    }
}

#[test]
fn parse_errors() {
    assert!(parse("problem foo\n").is_err());
    assert!(parse("problem tsat\ntbox\n(xor A B) <= C\n").is_err());
    assert!(parse("problem tcsat\ntbox\nA <= B\n").is_err(), "missing query");
    assert!(parse("problem tsat\nabox\nA(a)\n").is_err(), "abox in tsat");
    assert!(parse("problem tsat\ntbox\n_X <= B\n").is_err(), "reserved name");
    assert!(parse("operator and 2 001\nproblem tsat\n").is_err());
    let relaxed = ParseOptions { allow_reserved_names: true };
    assert!(parse_with("problem tsat\ntbox\n_X <= B\n", &relaxed).is_ok());
    let e = parse("problem tsat\ntbox\nA <= B C\n").unwrap_err();
    assert!(matches!(e, sublogic::Error::Parse { line: 3, column: 8, .. }), "{e:?}");
}

#[test]
fn equivalence_is_two_inclusions() {
    let inst = parse("problem tsat\ntbox\nA == B\n").unwrap();
    assert_eq!(inst.tbox().len(), 2);
    assert_eq!(inst.tbox()[1].lhs, Concept::atom("B"));
}

#[test]
fn printer_golden_files() {
    for name in ["ontology", "gap", "concept"] {
        let inst = parse(&fixture(&format!("{name}.dl"))).unwrap();
        assert_eq!(print(&inst), fixture(&format!("{name}.expected")), "{name}");
    }
}

#[test]
fn signature_scans() {
    let inst = parse(&fixture("ontology.dl")).unwrap();
    let sig = signature(&inst);
    assert_eq!(sig.quantifiers, Quantifiers::BOTH);
    let ops: Vec<&str> = sig.operators.iter().map(|o| &*o.name).collect();
    assert_eq!(ops, ["and", "not", "top"]);
    assert_eq!(sig.atoms.len(), 3);
    assert_eq!(sig.individuals.len(), 2);

    let gap = signature(&parse(&fixture("gap.dl")).unwrap());
    assert_eq!(gap.quantifiers, Quantifiers::NONE);
    assert_eq!(gap.roles.len(), 0);

    let concept = signature(&parse(&fixture("concept.dl")).unwrap());
    assert_eq!(concept.quantifiers, Quantifiers::BOTH);
    let roles: Vec<&str> = concept.roles.iter().map(|r| &**r).collect();
    assert_eq!(roles, ["S", "T"]);
}

fn interp(n: usize, concepts: &[(&str, &[usize])], roles: &[(&str, &[(usize, usize)])]) -> Interpretation {
    let mut i = Interpretation::new(n);
    for (c, xs) in concepts {
        for &x in *xs {
            i.add_concept(c, x);
        }
    }
    for (r, ps) in roles {
        for &(x, y) in *ps {
            i.add_role(r, x, y);
        }
    }
    i
}

#[test]
fn evaluation_examples() {
    let not = NamedOperator::new("not", named::not());
    let i = interp(2, &[("A", &[0])], &[]);
    let neg = Concept::apply(&not, vec![Concept::atom("A")]);
    assert_eq!(evaluate_concept(&i, &neg), BTreeSet::from([1]));

    // Elements 0 and 1 stand for 1 and 2.
    let i = interp(2, &[("A", &[1])], &[("R", &[(0, 1)])]);
    let a = Concept::atom("A");
    assert_eq!(evaluate_concept(&i, &Concept::exists("R", a.clone())), BTreeSet::from([0]));
    assert_eq!(evaluate_concept(&i, &Concept::forall("R", a)), BTreeSet::from([0, 1]));
}

#[test]
fn check_model_examples() {
    let single = Interpretation::new(1);
    let t = parse("problem tsat\ntbox\nA <= A\n").unwrap();
    assert!(check_model(&single, &t));
    let t = parse("operator top 0 1\noperator bot 0 0\nproblem tsat\ntbox\n(top) <= (bot)\n").unwrap();
    assert!(!check_model(&single, &t));
    assert!(!check_model(&interp(3, &[("A", &[0, 1, 2])], &[]), &t));
}

#[test]
fn check_model_rejects_gap_unsat_on_small_domains() {
    let t = parse(&fixture("gap.dl")).unwrap();
    for n in 1..=3usize {
        for mask in 0u32..(1 << (3 * n)) {
            let mut i = Interpretation::new(n);
            for a in 0..3 {
                for x in 0..n {
                    if (mask >> (a * n + x)) & 1 == 1 {
                        i.add_concept(&format!("A{a}"), x);
                    }
                }
            }
            assert!(!check_model(&i, &t));
        }
    }
}

#[test]
fn check_model_needs_individuals_and_query() {
    let inst = parse("problem ocsat\ntbox\nabox\nA(a)\nquery B\n").unwrap();
    let mut i = interp(1, &[("A", &[0])], &[]);
    assert!(!check_model(&i, &inst));
    i.individuals.insert("a".into(), 0);
    assert!(!check_model(&i, &inst));
    i.add_concept("B", 0);
    assert!(check_model(&i, &inst));
}

#[test]
fn nnf_dualize_examples() {
    let and = NamedOperator::new("and", named::and());
    let top = NamedOperator::new("top", named::top());
    let c = Concept::exists("R", Concept::apply(&and, vec![Concept::atom("A"), Concept::atom("B")]));
    let d = nnf_dualize(&c);
    match &d {
        Concept::Forall(r, inner) => {
            assert_eq!(&**r, "R");
            match &**inner {
                Concept::Apply(op, cs) => {
                    assert_eq!(op.table, named::or());
                    assert_eq!(cs, &vec![Concept::atom("_d_A"), Concept::atom("_d_B")]);
                }
                other => panic!("{other:?}"),
            }
        }
        other => panic!("{other:?}"),
    }
    assert_eq!(nnf_dualize(&Concept::atom("A")), Concept::atom("_d_A"));
    let bot = nnf_dualize(&Concept::apply(&top, vec![]));
    assert_eq!(bot.constant_value(), Some(false));
}

fn random_any_profile(rng: &mut ChaCha8Rng) -> Profile {
    let kinds = ProblemKind::ALL;
    let kind = kinds[rng.gen_range(0..kinds.len())];
    let q = Quantifiers::ALL[rng.gen_range(0..4)];
    let n_ops = rng.gen_range(0..4);
    let tables: Vec<TruthTable> = (0..n_ops)
        .map(|_| {
            let a = rng.gen_range(0..4);
            TruthTable::new(a, rng.gen_range(0..(1u64 << (1 << a)))).unwrap()
        })
        .collect();
    Profile::new(kind, q, standard_operators(&tables))
}

#[test]
fn round_trip_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let size = SizeParams { atoms: 5, roles: 2, axioms: 6, individuals: 3, assertions: 3, depth: 3 };
    for _ in 0..1000 {
        let profile = random_any_profile(&mut rng);
        let inst = random_instance(&profile, &size, &mut rng);
        let text = print(&inst);
        let back = parse(&text).unwrap_or_else(|e| panic!("{e}\n{text}"));
        assert_eq!(back, inst, "{text}");
        assert_eq!(print(&back), text);
    }
}

#[test]
fn random_profiles_respect_fragment() {
    let p = Profile::parse("ocsat/exists/E").unwrap();
    let inst = sublogic::generators::gen_random(&p, 2, &SizeParams::default());
    let sig = signature(&inst);
    assert!(sig.quantifiers.is_subset_of(Quantifiers::EXISTS));
    assert!(inst.ontology.has_abox());
    assert!(sig.operators.iter().all(|o| CloneName::E.contains(&o.table)));
    assert!(Profile::parse("tsat/sometimes/E").is_err());
}

// A reference evaluator working element by element.
fn member(i: &Interpretation, x: usize, c: &Concept) -> bool {
    match c {
        Concept::Atomic(a) => i.concepts.get(&**a).is_some_and(|s| s.contains(&x)),
        Concept::Apply(op, cs) => {
            let args: Vec<bool> = cs.iter().map(|c| member(i, x, c)).collect();
            op.table.eval(&args).unwrap()
        }
        Concept::Exists(r, c) => (0..i.domain_size)
            .any(|y| i.roles.get(&**r).is_some_and(|s| s.contains(&(x, y))) && member(i, y, c)),
        Concept::Forall(r, c) => (0..i.domain_size)
            .all(|y| !i.roles.get(&**r).is_some_and(|s| s.contains(&(x, y))) || member(i, y, c)),
    }
}

fn random_interp(rng: &mut ChaCha8Rng, n: usize, atoms: &[&str], roles: &[&str]) -> Interpretation {
    let mut i = Interpretation::new(n);
    for a in atoms {
        for x in 0..n {
            if rng.gen_bool(0.5) {
                i.add_concept(a, x);
            }
        }
    }
    for r in roles {
        for x in 0..n {
            for y in 0..n {
                if rng.gen_bool(0.4) {
                    i.add_role(r, x, y);
                }
            }
        }
    }
    i
}

#[test]
fn evaluation_matches_reference() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let size = SizeParams { atoms: 4, roles: 2, axioms: 1, individuals: 1, assertions: 1, depth: 4 };
    for _ in 0..500 {
        let profile = random_any_profile(&mut rng);
        let profile = Profile { kind: ProblemKind::Csat, ..profile };
        let inst = random_instance(&profile, &size, &mut rng);
        let c = inst.query.unwrap();
        let n = rng.gen_range(1..=4);
        let i = random_interp(&mut rng, n, &["A", "B", "C", "D"], &["R", "S"]);
        let expected: BTreeSet<usize> = (0..n).filter(|&x| member(&i, x, &c)).collect();
        assert_eq!(evaluate_concept(&i, &c), expected, "{c}");
    }
}

#[test]
fn quantifiers_are_dual_on_small_domains() {
    let not = NamedOperator::new("not", named::not());
    let ops = OperatorSet::new([not.clone()]).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..300 {
        let n = rng.gen_range(1..=4);
        let i = random_interp(&mut rng, n, &["A", "B"], &["R"]);
        let profile = Profile::new(ProblemKind::Csat, Quantifiers::BOTH, ops.clone());
        let size = SizeParams { atoms: 2, roles: 1, depth: 3, ..SizeParams::default() };
        let c = random_instance(&profile, &size, &mut rng).query.unwrap();
        let ex = evaluate_concept(&i, &Concept::exists("R", c.clone()));
        let neg = Concept::apply(&not, vec![c]);
        let all_neg = evaluate_concept(&i, &Concept::forall("R", neg));
        let all: BTreeSet<usize> = (0..n).collect();
        assert_eq!(ex.union(&all_neg).cloned().collect::<BTreeSet<_>>(), all);
        assert!(ex.is_disjoint(&all_neg));
    }
}

#[test]
fn nnf_dual_is_negation_on_small_interpretations() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let size = SizeParams { atoms: 3, roles: 1, depth: 3, ..SizeParams::default() };
    for _ in 0..60 {
        let profile = random_any_profile(&mut rng);
        let profile = Profile { kind: ProblemKind::Csat, ..profile };
        let c = random_instance(&profile, &size, &mut rng).query.unwrap();
        let d = nnf_dualize(&c);
        for n in 1..=2usize {
            for mask in 0u32..(1 << (3 * n + n * n)) {
                let mut i = Interpretation::new(n);
                let mut j = Interpretation::new(n);
                for (a, name) in ["A", "B", "C"].iter().enumerate() {
                    for x in 0..n {
                        if (mask >> (a * n + x)) & 1 == 1 {
                            i.add_concept(name, x);
                        } else {
                            j.add_concept(&format!("_d_{name}"), x);
                        }
                    }
                }
                for x in 0..n {
                    for y in 0..n {
                        if (mask >> (3 * n + x * n + y)) & 1 == 1 {
                            i.add_role("R", x, y);
                            j.add_role("R", x, y);
                        }
                    }
                }
                let pos = evaluate_concept(&i, &c);
                let neg = evaluate_concept(&j, &d);
                assert!(pos.is_disjoint(&neg) && pos.len() + neg.len() == n, "{c} vs {d}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn print_parse_round_trip(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let profile = random_any_profile(&mut rng);
        let inst = random_instance(&profile, &SizeParams::default(), &mut rng);
        prop_assert_eq!(parse(&print(&inst)).unwrap(), inst);
    }
}
