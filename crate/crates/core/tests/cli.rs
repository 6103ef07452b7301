use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use redgit::cli::{AdaptedOut, BundleSsOut, DestabilizerOut, InvariantsOut, ParabolicOut, PatternOut, PushOut, StratumOut, TraceFormOut, VerifyOut, WeylOut, WitnessOut};
use redgit::Rational;
use serde::de::DeserializeOwned;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn redgit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_redgit")).args(args).output().expect("binary runs")
}

fn run_data(args: &[&str]) -> Output {
    let resolved: Vec<String> = args
        .iter()
        .map(|a| if a.ends_with(".json") { data(a).display().to_string() } else { a.to_string() })
        .collect();
    redgit(&resolved.iter().map(String::as_str).collect::<Vec<_>>())
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json<T: DeserializeOwned>(args: &[&str]) -> T {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let o = run_data(&full);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)))
}

#[test]
fn weyl_of_gl2() {
    let out: WeylOut = json(&["weyl", "--group", "gl2.json"]);
    assert_eq!(out.order, 2);
    assert_eq!(out.generators.len(), 1);
    let text = run_data(&["weyl", "--group", "gl2.json"]);
    assert_eq!(text.status.code(), Some(0));
    assert!(stdout(&text).contains("order: 2"), "{}", stdout(&text));
}

#[test]
fn adapted_exactly_for_equal_slopes() {
    let o = run_data(&["adapted", "--hom", "sum_gl2_gl3.json", "--degree", "a2b3.json"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "adapted: true");
    let no: AdaptedOut = json(&["adapted", "--hom", "sum_gl2_gl3.json", "--degree", "a1b1.json"]);
    assert!(!no.adapted);
}

#[test]
fn strata_as_dot() {
    let o = run_data(&["--format", "dot", "git-strata", "--action", "pm1.json"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert_eq!(dot.matches("[label=").count(), 3);
    assert!(dot.contains("s0 -> s2;") && dot.contains("s1 -> s2;"), "{dot}");
    let strata: Vec<StratumOut> = json(&["git-strata", "--action", "pm1.json"]);
    assert_eq!(strata.len(), 3);
    assert!(strata.windows(2).all(|w| w[0].m_squared >= w[1].m_squared));
    assert!(strata.last().unwrap().label.is_zero());
}

#[test]
fn json_outputs_round_trip() {
    fn check<T: DeserializeOwned + serde::Serialize>(args: &[&str]) {
        let mut full = vec!["--format", "json"];
        full.extend_from_slice(args);
        let o = run_data(&full);
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        let parsed: T = serde_json::from_slice(&o.stdout).unwrap();
        let again = serde_json::to_string_pretty(&parsed).unwrap();
        assert_eq!(again.trim(), stdout(&o).trim(), "{args:?}");
    }
    check::<WeylOut>(&["weyl", "--group", "normalizer2.json"]);
    check::<InvariantsOut>(&["invariants", "--group", "gl2_gl3.json"]);
    check::<TraceFormOut>(&["trace-form", "--group", "gl2.json"]);
    check::<ParabolicOut>(&["parabolic", "--group", "gl2_gl3.json", "--lambda", "1,0,1/2,1/2,-1"]);
    check::<AdaptedOut>(&["adapted", "--hom", "normalizer_into_gl2.json", "--degree", "d11.json"]);
    check::<PushOut>(&["push-degree", "--hom", "sum_gl2_gl3.json", "--degree", "a1b1.json"]);
    check::<WitnessOut>(&["witness", "--hom", "sum_gl2_gl3.json", "--degree", "a1b1.json"]);
    check::<BundleSsOut>(&["bundle-ss", "--bundle", "split_gl2_10.json"]);
    check::<BundleSsOut>(&["bundle-ss", "--bundle", "levi_gl5.json"]);
    check::<DestabilizerOut>(&["destabilizer", "--bundle", "split_gl2_10.json"]);
    check::<Vec<PatternOut>>(&["git-classify", "--action", "ppm1.json"]);
    check::<Vec<StratumOut>>(&["git-strata", "--action", "swap_units.json"]);
    check::<VerifyOut>(&["git-verify", "--action", "swap_units.json"]);
}

#[test]
fn outputs_are_deterministic() {
    let cases: [&[&str]; 4] = [
        &["git-strata", "--action", "swap_units.json"],
        &["--format", "json", "git-verify", "--action", "ppm1.json"],
        &["--format", "dot", "git-strata", "--action", "pm1.json"],
        &["--format", "json", "weyl", "--group", "gl2_gl3.json"],
    ];
    for args in cases {
        let (a, b) = (run_data(args), run_data(args));
        assert_eq!(a.status.code(), Some(0));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn bundle_results() {
    let d: DestabilizerOut = json(&["destabilizer", "--bundle", "split_gl2_10.json"]);
    assert!(!d.semistable);
    assert_eq!(d.lambda_star.unwrap().to_string(), "(2, -2)");
    assert_eq!(d.m_squared, Some(Rational::from(8)));
    let push: PushOut = json(&["push-degree", "--hom", "sum_gl2_gl3.json", "--degree", "a2b3.json"]);
    assert!(push.image.iter().all(|x| *x == Rational::from(1)));
    let v: VerifyOut = json(&["git-verify", "--action", "swap_units.json"]);
    assert!(v.verified && v.partition && v.monotone);
    assert_eq!(v.patterns, 7);
}

#[test]
fn invalid_input_exits_1_and_names_the_file() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("missing.json");
    let o = redgit(&["weyl", "--group", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("missing.json"), "{}", stderr(&o));

    // pairing of root and coroot is 1, not 2
    let bad = dir.path().join("bad_pairing.json");
    std::fs::write(&bad, r#"{"rank": 1, "roots": [[1], [-1]], "coroots": [[1], [-1]], "base": [0]}"#).unwrap();
    let o = redgit(&["weyl", "--group", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(msg.contains("bad_pairing.json"), "{msg}");

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{not json").unwrap();
    let o = redgit(&["trace-form", "--group", garbage.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("garbage.json"));

    let o = run_data(&["parabolic", "--group", "gl2.json", "--lambda", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));
    let o = redgit(&["no-such-command"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run_data(&["--format", "dot", "weyl", "--group", "gl2.json"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn caps_exit_2() {
    let o = run_data(&["--cap-closure", "1", "weyl", "--group", "gl2.json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
    let o = run_data(&["--cap-subsets", "2", "git-strata", "--action", "ppm1.json"]);
    assert_eq!(o.status.code(), Some(2), "{}", stderr(&o));
}

#[test]
fn nonabelian_classification_exits_3() {
    let o = run_data(&["git-classify", "--action", "gl2_std.json"]);
    assert_eq!(o.status.code(), Some(3), "{}", stderr(&o));
}

#[test]
fn help_exits_0() {
    let o = redgit(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("git-strata"));
}
