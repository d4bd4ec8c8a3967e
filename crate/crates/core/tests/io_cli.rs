use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use graded_aut::input::{parse_input, GradingSpec, Mode, ProblemInput};
use graded_aut::linalg::rat;
use graded_aut::poly::{IndexedVars, Monomial, Polynomial, Style};
use graded_aut::report::{read_report, ResultBundle};
use proptest::prelude::*;

fn example() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("inputs/example_running.toml")
}

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_graded-aut"))
        .args(args)
        .env_remove("GRADED_AUT_JOBS")
        .output()
        .unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

fn input_strategy() -> impl Strategy<Value = ProblemInput> {
    (1usize..=5, 1usize..=3, prop::collection::vec(2i64..=5, 0..=2)).prop_flat_map(|(vars, k, torsion)| {
        let rows = k + torsion.len();
        let torsion_for_rows = torsion.clone();
        (
            prop::collection::vec(prop::collection::vec(-3i64..=3, vars), rows),
            prop::collection::vec(
                prop::collection::vec((prop::collection::vec(0u32..3, vars), -3i64..=3), 1..4),
                0..3,
            ),
            prop::option::of(prop::collection::vec(-4i64..=4, rows)),
            prop::option::of(prop::collection::vec(prop::collection::vec(1..=vars, 1..=vars), 1..4)),
            prop::option::of(prop_oneof![Just(Mode::AllSubsets), Just(Mode::UserFaces)]),
        )
            .prop_map(move |(mut q, ideal, w, faces, mode)| {
                for (i, a) in torsion_for_rows.iter().enumerate() {
                    q[k + i].iter_mut().for_each(|x| *x = x.rem_euclid(*a));
                }
                let names = IndexedVars::new("T", vars);
                let ideal = ideal
                    .into_iter()
                    .map(|terms| {
                        Polynomial::from_terms(terms.into_iter().map(|(e, c)| (Monomial::from_exponents(&e), rat(c))))
                    })
                    .filter(|p| !p.is_zero())
                    .map(|p| p.display(&names, Style::Explicit).to_string())
                    .collect();
                let mode = if mode == Some(Mode::UserFaces) && faces.is_none() { None } else { mode };
                ProblemInput {
                    vars,
                    q,
                    ideal,
                    w,
                    faces,
                    mode,
                    grading: GradingSpec { free_rank: k, torsion: torsion.clone() },
                }
            })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn problem_files_round_trip(input in input_strategy()) {
        let text = input.to_toml();
        prop_assert_eq!(parse_input(&text).unwrap(), input);
    }
}

#[test]
fn commands_succeed_on_the_running_example() {
    let ex = example();
    let ex = ex.to_str().unwrap();
    for cmd in ["check", "weights-aut", "autks", "autgradalg", "autxhat"] {
        let out = cli(&[cmd, "--input", ex]);
        assert!(out.status.success(), "{cmd}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let out = cli(&["autxhat", "--input", ex, "--w", "0,0,1,0"]);
    assert!(String::from_utf8_lossy(&out.stdout).contains("retained triples: 1, 2, 3, 4"));
}

#[test]
fn reports_and_scripts_are_deterministic() {
    let ex = example();
    let ex = ex.to_str().unwrap();
    let a = cli(&["autxhat", "--json", "--input", ex, "--jobs", "1"]);
    let b = cli(&["autxhat", "--json", "--input", ex, "--jobs", "4"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_graded-aut"))
        .args(["autxhat", "--json", "--input", ex])
        .env("GRADED_AUT_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
    let s1 = cli(&["export", "--input", ex]);
    let s2 = cli(&["export", "--input", ex, "--dialect", "singular-like"]);
    assert!(s1.status.success());
    assert_eq!(s1.stdout, s2.stdout);
    let bundle = ResultBundle::from_json(&String::from_utf8_lossy(&a.stdout)).unwrap();
    assert!(bundle.timing.is_none());
    let p = bundle.presentation.unwrap();
    assert_eq!(p.triples.len(), 4);
    assert_eq!(
        p.triples[2].automorphism,
        vec![vec![-1, 2, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 1, 1, 1]]
    );
    assert_eq!(bundle.filtered.unwrap().retained, vec![1]);
}

#[test]
fn report_file_feeds_export() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.json");
    let ex = example();
    let ex = ex.to_str().unwrap();
    let out = cli(&["autgradalg", "--input", ex, "--out", report.to_str().unwrap(), "--timing"]);
    assert!(out.status.success());
    let bundle = read_report(&report).unwrap();
    assert!(bundle.timing.as_ref().is_some_and(|t| t.contains_key("autgradalg")));
    let from_report = cli(&["export", "--report", report.to_str().unwrap(), "--dialect", "macaulay2-like"]);
    let from_input = cli(&["export", "--input", ex, "--dialect", "macaulay2-like"]);
    assert!(from_report.status.success());
    assert_eq!(from_report.stdout, from_input.stdout);
    let script = dir.path().join("s.sing");
    let out = cli(&["export", "--report", report.to_str().unwrap(), "--out", script.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(script).unwrap();
    assert!(text.starts_with("ring Sprime = 0,(Y(1..64),Z),dp;"));
    assert!(text.contains("  -Y(1)*Y(13)*Y(24)*Y(31)*Y(34)*Y(46)*Y(52)*Y(59)*Z - 1,\n"));
    assert!(text.contains("ideal J = J1*J2*J3*J4;"));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ex = example();
    let ex = ex.to_str().unwrap();

    // validation failure
    let linear = write(d, "linear.toml", "vars = 2\nQ = [[1, 1]]\nideal = [\"T(1)\"]\n[grading]\nfree_rank = 1\n");
    assert_eq!(cli(&["check", "--input", &linear]).status.code(), Some(1));
    assert_eq!(cli(&["autgradalg", "--input", &linear]).status.code(), Some(1));
    let not_pointed = write(d, "np.toml", "vars = 2\nQ = [[1, -1]]\n[grading]\nfree_rank = 1\n");
    assert_eq!(cli(&["autks", "--input", &not_pointed]).status.code(), Some(1));
    assert_eq!(cli(&["export", "--input", ex, "--dialect", "maple"]).status.code(), Some(1));
    assert_eq!(cli(&["autxhat", "--input", ex, "--w", "0,0,-1,0"]).status.code(), Some(1));

    // parse failures
    let bad = write(d, "bad.toml", "vars = 2\nQ = [[1]]\n[grading]\nfree_rank = 1\n");
    let out = cli(&["check", "--input", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("row 1"));
    assert_eq!(cli(&["autxhat", "--input", ex, "--w", "1,x"]).status.code(), Some(2));
    assert_eq!(cli(&["autxhat", "--input", ex, "--w", "1,2"]).status.code(), Some(2));
    assert_eq!(cli(&["frobnicate"]).status.code(), Some(2));
    let report = d.join("r.json");
    assert!(cli(&["autks", "--input", ex, "--out", report.to_str().unwrap()]).status.success());
    let text = std::fs::read_to_string(&report).unwrap().replacen("\"schema_version\": 1", "\"schema_version\": 7", 1);
    std::fs::write(&report, text).unwrap();
    let out = cli(&["export", "--report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("schema version 7"));

    // resource guards
    assert_eq!(cli(&["autxhat", "--input", ex, "--max-subset-vars", "4"]).status.code(), Some(3));
    assert_eq!(cli(&["autks", "--input", ex, "--max-basis-size", "4"]).status.code(), Some(3));
    assert_eq!(cli(&["autks", "--input", ex, "--max-det-terms", "0"]).status.code(), Some(3));
}

#[test]
fn user_faces_mode() {
    let dir = tempfile::tempdir().unwrap();
    let text = std::fs::read_to_string(example()).unwrap();
    // the faces {1..8} and {7} give cone(Q^0) and a ray
    let text = text.replace("mode = \"all-subsets\"", "mode = \"user-faces\"\nfaces = [[1, 2, 3, 4, 5, 6, 7, 8], [7]]");
    let path = write(dir.path(), "faces.toml", &text);
    let out = cli(&["autxhat", "--json", "--input", &path]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let bundle = ResultBundle::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(bundle.filtered.unwrap().mode, Mode::UserFaces);
    let out = cli(&["autxhat", "--input", example().to_str().unwrap(), "--mode", "user-faces"]);
    assert_eq!(out.status.code(), Some(2));
}
