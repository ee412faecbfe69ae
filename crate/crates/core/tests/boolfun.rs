use std::time::Instant;

use proptest::prelude::*;
use sublogic::boolfun::named::*;
use sublogic::boolfun::*;

fn set(ops: &[(&str, TruthTable)]) -> OperatorSet {
    OperatorSet::new(ops.iter().map(|(n, t)| NamedOperator::new(*n, *t))).unwrap()
}

fn tt(arity: usize, bits: &str) -> TruthTable {
    TruthTable::from_bitstring(arity, bits).unwrap()
}

#[test]
fn eval_examples() {
    let and = tt(2, "0001");
    assert!(and.eval(&[true, true]).unwrap());
    assert!(!and.eval(&[true, false]).unwrap());
    assert!(sd().eval(&[false, false, false]).unwrap());
    assert!(and.eval(&[true]).is_err());
}

#[test]
fn sd_matches_its_formula_on_every_row() {
    for idx in 0..8usize {
        let (x, y, z) = (idx & 4 != 0, idx & 2 != 0, idx & 1 != 0);
        let expected = (x && !y) || (x && !z) || (!y && !z);
        assert_eq!(sd().eval(&[x, y, z]).unwrap(), expected);
    }
}

#[test]
fn dual_examples() {
    assert_eq!(and().dual(), tt(2, "0111"));
    assert_eq!(tt(1, "10").dual(), tt(1, "10"));
    assert_eq!(tt(0, "1").dual(), tt(0, "0"));
}

#[test]
fn property_examples() {
    assert!(and().check_property(Property::Monotone));
    assert!(xor().check_property(Property::Affine));
    assert!(!and().check_property(Property::Affine));
    assert!(sd().check_property(Property::SelfDual));
    assert!(tt(2, "0010").check_property(Property::OneSeparating));
    assert!(!tt(2, "0110").check_property(Property::OneSeparating));
    assert!(tt(0, "0").check_property(Property::ZeroReproducing));
}

#[test]
fn closure_examples() {
    assert_eq!(nary_closure(&[and(), not()], 2).unwrap().len(), 16);
    let i0 = nary_closure(&[bot()], 1).unwrap();
    assert_eq!(i0, vec![tt(1, "00"), tt(1, "01")]);
    let l0 = nary_closure(&[xor()], 2).unwrap();
    let mut expected = vec![tt(2, "0011"), tt(2, "0101"), tt(2, "0110"), tt(2, "0000")];
    expected.sort();
    assert_eq!(l0, expected);
    assert!(nary_closure(&[xor()], 5).is_err());
    assert!(nary_closure(&[xor()], 0).is_err());
}

#[test]
fn arity_four_shortcut_agrees_with_enumeration() {
    for ops in [vec![xor()], vec![not(), top()], vec![and(), bot()], vec![maj()]] {
        let fast = nary_closure(&ops, 4).unwrap();
        let slow = superposition_closure(&ops, 4).unwrap();
        assert_eq!(fast, slow, "{ops:?}");
    }
}

#[test]
fn contains_function_examples() {
    assert!(contains_function(&[and_not()], &tt(1, "00")).unwrap());
    let expected = superposition_closure(&[and(), xor()], 2)
        .unwrap()
        .contains(&or());
    assert!(expected);
    assert_eq!(contains_function(&[and(), xor()], &or()).unwrap(), expected);
    assert!(!contains_function(&[not()], &and()).unwrap());
    assert!(contains_function(&[xor(), top()], &not()).unwrap());
}

#[test]
fn contains_clone_examples() {
    assert!(contains_clone(&[and(), not()], CloneName::S11).unwrap());
    assert!(!contains_clone(&[bot(), top()], CloneName::N2).unwrap());
    assert!(contains_clone(&[sd()], CloneName::N2).unwrap());
}

#[test]
fn identify_examples() {
    assert_eq!(identify_clone(&[and(), not()]).unwrap().named, Some(CloneName::BF));
    assert_eq!(identify_clone(&[xor()]).unwrap().named, Some(CloneName::L0));
    assert_eq!(identify_clone(&[and_or(), bot()]).unwrap().named, Some(CloneName::S11));
    assert_eq!(identify_clone(&[nand()]).unwrap().named, Some(CloneName::BF));
    assert_eq!(identify_clone(&[]).unwrap().named, Some(CloneName::I2));
    // [∧] sits strictly between I2 and E0/E1 and has no name here.
    let e2 = identify_clone(&[and()]).unwrap();
    assert_eq!(e2.named, None);
    assert!(e2.within.contains(&CloneName::E0) && e2.within.contains(&CloneName::E1));
}

#[test]
fn every_named_base_generates_its_predicate_slice() {
    for c in ALL_CLONES {
        for n in 1..=3 {
            let generated = superposition_closure(&c.base(), n).unwrap();
            let by_predicate: Vec<TruthTable> = (0..(1u64 << (1 << n)))
                .map(|b| TruthTable::new(n, b).unwrap())
                .filter(|f| c.contains(f))
                .collect();
            assert_eq!(generated, by_predicate, "{c} at arity {n}");
        }
    }
}

#[test]
fn every_named_base_is_identified_quickly() {
    for c in ALL_CLONES {
        let start = Instant::now();
        let d = identify_clone(&c.base()).unwrap();
        assert_eq!(d.named, Some(c));
        assert!(d.contains.contains(&c) && d.within.contains(&c));
        assert!(start.elapsed().as_secs_f64() < 1.0, "{c} took {:?}", start.elapsed());
    }
}

#[test]
fn descriptor_sets_are_order_closed() {
    let samples: Vec<Vec<TruthTable>> = ALL_CLONES
        .iter()
        .map(|c| c.base())
        .chain([vec![and()], vec![or(), xor()], vec![and_not(), top()]])
        .collect();
    for ops in samples {
        let d = identify_clone(&ops).unwrap();
        for &a in &ALL_CLONES {
            for &b in &ALL_CLONES {
                if a.is_subclone_of(b) {
                    if d.contains.contains(&b) {
                        assert!(d.contains.contains(&a), "{ops:?}: {b} in contains but not {a}");
                    }
                    if d.within.contains(&a) {
                        assert!(d.within.contains(&b), "{ops:?}: {a} in within but not {b}");
                    }
                }
            }
        }
    }
}

#[test]
fn duality_of_identification() {
    for c in ALL_CLONES {
        let Some(dc) = c.dual() else { continue };
        let dual_base: Vec<TruthTable> = c.base().iter().map(TruthTable::dual).collect();
        assert_eq!(identify_clone(&dual_base).unwrap().named, Some(dc), "dual of {c}");
    }
}

#[test]
fn witness_examples() {
    let b = set(&[("NAND", nand())]);
    let w = witness_term(&b, &not()).unwrap();
    assert_eq!(w.to_string(), "NAND(x,x)");

    let b = set(&[("AND", and())]);
    assert_eq!(witness_term(&b, &and()).unwrap().to_string(), "AND(x,y)");

    let b = set(&[("XOR", xor()), ("top", top())]);
    let w = witness_term(&b, &not()).unwrap();
    assert_eq!(w.to_string(), "XOR(x,top)");

    let b = set(&[("NOT", not())]);
    assert!(matches!(witness_term(&b, &and()), Err(sublogic::Error::NotExpressible(_))));
}

#[test]
fn high_arity_operators_use_minors() {
    let wide = TruthTable::from_fn(5, |a| a.iter().filter(|&&x| x).count() >= 3);
    let d = identify_clone(&[wide]).unwrap();
    assert!(d.within.contains(&CloneName::D2));
    assert_eq!(d.named, Some(CloneName::D2));
}

fn table_strategy(max_arity: usize) -> impl Strategy<Value = TruthTable> {
    (0..=max_arity).prop_flat_map(|n| {
        let rows = 1u32 << n;
        let max = if rows == 64 { u64::MAX } else { (1u64 << rows) - 1 };
        (Just(n), 0..=max).prop_map(|(n, b)| TruthTable::new(n, b).unwrap())
    })
}

fn reference_eval(f: &TruthTable, args: &[bool]) -> bool {
    let idx = args.iter().fold(0usize, |acc, &b| acc * 2 + b as usize);
    f.bitstring().as_bytes()[idx] == b'1'
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn dual_is_involutive(f in table_strategy(6)) {
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn eval_matches_bitstring(f in table_strategy(4), seed in any::<u64>()) {
        let args: Vec<bool> = (0..f.arity()).map(|i| (seed >> i) & 1 == 1).collect();
        prop_assert_eq!(f.eval(&args).unwrap(), reference_eval(&f, &args));
    }

    #[test]
    fn closure_is_idempotent(ops in prop::collection::vec(table_strategy(2), 1..3), n in 1usize..=2) {
        let once = nary_closure(&ops, n).unwrap();
        let twice = nary_closure(&once, n).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn closure_is_monotone(
        a in prop::collection::vec(table_strategy(3), 1..3),
        b in prop::collection::vec(table_strategy(3), 0..2),
        n in 1usize..=3,
    ) {
        let small = superposition_closure(&a, n).unwrap();
        let mut ab = a.clone();
        ab.extend(b);
        let large = superposition_closure(&ab, n).unwrap();
        prop_assert!(small.iter().all(|f| large.contains(f)));
    }

    #[test]
    fn properties_agree_with_generated_clones(f in table_strategy(3)) {
        let n = f.arity().max(1);
        let g = f.lifted();
        let mono = superposition_closure(&[and(), or(), top(), bot()], n).unwrap();
        prop_assert_eq!(f.check_property(Property::Monotone), mono.contains(&g));
        let aff = superposition_closure(&[xor(), top()], n).unwrap();
        prop_assert_eq!(f.check_property(Property::Affine), aff.contains(&g));
        let selfdual = superposition_closure(&[sd()], n).unwrap();
        prop_assert_eq!(f.check_property(Property::SelfDual), selfdual.contains(&g));
    }

    #[test]
    fn witness_terms_evaluate_to_target(ops in prop::collection::vec(table_strategy(3), 1..3), g in table_strategy(2)) {
        let named = OperatorSet::new(
            ops.iter().enumerate().map(|(i, t)| NamedOperator::new(format!("f{i}"), *t)),
        ).unwrap();
        match witness_term(&named, &g) {
            Ok(term) => {
                let g = g.lifted();
                for idx in 0..g.rows() {
                    let args: Vec<bool> = (0..g.arity()).map(|j| (idx >> (g.arity() - 1 - j)) & 1 == 1).collect();
                    prop_assert_eq!(term.eval(&named, &args), g.get(idx));
                }
            }
            Err(_) => prop_assert!(!contains_function(&ops, &g).unwrap()),
        }
    }
}
