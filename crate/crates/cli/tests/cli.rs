use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sublogic"))
        .args(args)
        .env_remove("SUBLOGIC_LIMITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn first_line(o: &Output) -> String {
    stdout(o).lines().next().unwrap_or_default().to_string()
}

#[test]
fn clone_of_and_not_is_bf() {
    let o = run(&["clone", &fixture("ops_and_not.txt")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "BF");
    assert_eq!(first_line(&run(&["clone", &fixture("ops_or_bot.txt")])), "V0");
    // An instance file contributes its declared operators.
    assert_eq!(first_line(&run(&["clone", &fixture("gap_unsat.dl")])), "I");
}

#[test]
fn clone_json() {
    let o = run(&["--json", "clone", &fixture("ops_nand.txt")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["clone"], "BF");
    assert_eq!(v["approximate"], false);
}

#[test]
fn classify_reports_the_open_case() {
    let o = run(&["classify", "--problem", "ocsat", "--quantifiers", "exists", &fixture("ops_or_bot.txt")]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "open: P-hard, in EXPTIME per Thm 6 footnote");
    let o = run(&["classify", "--problem", "tcsat", "--quantifiers", "exists", &fixture("ops_or_bot.txt")]);
    assert_eq!(stdout(&o).trim(), "P-complete per Thm 6(2)");
}

#[test]
fn classify_instances_and_table() {
    assert_eq!(first_line(&run(&["classify", &fixture("gap_unsat.dl")])), "NL-complete per Thm 3(3)");
    assert_eq!(first_line(&run(&["classify", &fixture("one_in_three.dl")])), "NP-complete per Thm 3(1)");
    let o = run(&["classify", "--table"]);
    assert_eq!(stdout(&o).lines().count(), 17);
    let o = run(&["--json", "classify", "--problem", "tsat", "--quantifiers", "both", &fixture("ops_and_not.txt")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["class"], "EXPTIME-complete");
    assert_eq!(v["provenance"][0], "Thm 2(1)");
}

#[test]
fn solve_with_cross_check() {
    let o = run(&["solve", "--cross-check", &fixture("gap_unsat.dl")]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(first_line(&o), "UNSAT");
    for (file, want) in [("gap_sat.dl", "SAT"), ("hgap.dl", "SAT"), ("one_in_three.dl", "UNSAT"), ("random_el.dl", "UNSAT")] {
        let o = run(&["solve", "--cross-check", &fixture(file)]);
        assert_eq!(o.status.code(), Some(0), "{file}");
        assert_eq!(first_line(&o), want, "{file}");
    }
}

#[test]
fn solve_prints_a_model() {
    let o = run(&["solve", "--model", "--method", "typeelim", &fixture("gap_sat.dl")]);
    let out = stdout(&o);
    assert_eq!(first_line(&o), "SAT");
    assert!(out.contains("model\n") && out.contains("\nend"));
    let o = run(&["--json", "solve", "--model", &fixture("gap_sat.dl")]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "SAT");
    assert!(v["model"]["domain"].as_u64().unwrap() >= 1);
}

#[test]
fn exit_codes() {
    let o = run(&["solve", "/nonexistent/file.dl"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    assert_eq!(run(&["solve", "--method", "quantum", &fixture("gap_sat.dl")]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    // A fragment-specific solver refuses an instance outside its fragment.
    assert_eq!(run(&["solve", "--method", "el", &fixture("one_in_three.dl")]).status.code(), Some(2));
}

#[test]
fn limits_come_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_sublogic"))
        .args(["solve", "--method", "typeelim", &fixture("one_in_three.dl")])
        .env("SUBLOGIC_LIMITS", "closure=4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_sublogic"))
        .args(["solve", &fixture("gap_sat.dl")])
        .env("SUBLOGIC_LIMITS", "closure")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reduce_pipeline_round_trips() {
    let o = run(&["reduce", "--transform", "lift", "--target", "tcsat", "--transform", "tcsat-to-tsat", &fixture("gap_unsat.dl")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stderr).contains("TSAT -> TSAT"));
    let dir = std::env::temp_dir().join(format!("sublogic-reduce-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("reduced.dl");
    std::fs::write(&path, &o.stdout).unwrap();
    let path = path.to_string_lossy().into_owned();
    // Fresh names start with `_` and need the opt-in flag.
    assert_eq!(run(&["solve", &path]).status.code(), Some(2));
    let solved = run(&["--allow-reserved", "solve", "--cross-check", &path]);
    assert_eq!(first_line(&solved), "UNSAT");

    let o = run(&["reduce", "--transform", "change-base", "--target-ops", &fixture("ops_nand.txt"), &fixture("bf_tcsat.dl")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("operator nand 2 1110\n"));
    // nand lies outside the clone of the one-in-three operators.
    let o = run(&["reduce", "--transform", "change-base", "--target-ops", &fixture("ops_nand.txt"), &fixture("one_in_three.dl")]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn gen_is_deterministic_and_labelled() {
    let args = ["gen", "one-in-three", "--vars", "6", "--clauses", "5", "--seed", "9", "--with-answer"];
    let a = run(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, run(&args).stdout);
    let text = stdout(&a);
    let last = text.lines().last().unwrap();
    assert!(last == "# expected: sat" || last == "# expected: unsat");
    let r = run(&["gen", "random", "--profile", "tcsat/forall/V", "--seed", "3", "--axioms", "3"]);
    assert!(stdout(&r).contains("problem tcsat"));
    assert_eq!(run(&["gen", "random", "--seed", "3"]).status.code(), Some(2));
}

#[test]
fn generated_answers_match_the_solver() {
    let dir = std::env::temp_dir().join(format!("sublogic-gen-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    for seed in 0..6 {
        for family in [vec!["gap", "--nodes", "9"], vec!["hgap", "--nodes", "9"], vec!["one-in-three", "--vars", "7", "--clauses", "5"]] {
            let mut args = vec!["gen"];
            args.extend(&family);
            let seed = seed.to_string();
            args.extend(["--seed", &seed, "--with-answer"]);
            let out = stdout(&run(&args));
            let path = dir.join("g.dl");
            std::fs::write(&path, &out).unwrap();
            let want = if out.ends_with("# expected: sat\n") { "SAT" } else { "UNSAT" };
            assert_eq!(first_line(&run(&["solve", &path.to_string_lossy()])), want, "{out}");
        }
    }
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn bench_rows_follow_input_order() {
    let o = run(&["bench", "--methods", "auto,typeelim", "--jobs", "3", &fixture("")]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], ["id", "profile", "method", "status", "ms", "types", "rules"]);
    let ids: Vec<&str> = rows[1..].iter().map(|r| r[0]).collect();
    assert_eq!(
        ids,
        ["bf_tcsat", "bf_tcsat", "gap_sat", "gap_sat", "gap_unsat", "gap_unsat", "hgap", "hgap", "one_in_three", "one_in_three", "random_el", "random_el"]
    );
    assert_eq!(rows[3][1], "tsat/none/I");
    assert_eq!(rows[3][3], "SAT");
    assert_eq!(rows[5][3], "UNSAT");
    assert_eq!(rows[9][3], "UNSAT");
    assert_eq!(rows[10][3], "UNSAT");
}

#[test]
fn selftest_passes() {
    let o = run(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("0 failures\n"));
}
