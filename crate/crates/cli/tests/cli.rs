use std::path::PathBuf;
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_uzalg")).args(args).output().expect("spawn uzalg")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn assert_golden(args: &[&str], name: &str) {
    let want = std::fs::read_to_string(golden(name)).unwrap();
    assert_eq!(stdout_of(args), want, "{name}");
}

#[test]
fn generate_quotient_json() {
    assert_golden(&["generate", "--algebra", "uzsl2", "--beta", "-3"], "uzsl2_beta_m3.json");
}

#[test]
fn generate_fock_latex() {
    assert_golden(
        &["generate", "--algebra", "uzh4", "--beta", "1/2", "--delta", "1", "--cutoff", "3", "--format", "latex"],
        "uzh4_fock3.tex",
    );
}

#[test]
fn rmatrix_on_spin_half() {
    assert_golden(&["rmatrix", "--algebra", "uzsl2", "--beta", "-2", "--format", "latex"], "r_spin_half.tex");
}

#[test]
fn decompose_with_reference_basis() {
    let reference = golden("half_half_reference.json");
    assert_golden(
        &[
            "decompose",
            "--j1",
            "1/2",
            "--j2",
            "1/2",
            "--reference",
            reference.to_str().unwrap(),
            "--format",
            "latex",
        ],
        "decompose_half_half.tex",
    );
}

#[test]
fn explore_small_spins() {
    assert_golden(&["decompose", "--explore", "1", "--format", "text"], "explore_1.txt");
}

#[test]
fn contract_to_h4() {
    assert_golden(&["contract", "--scheme", "ext-to-h4", "--beta", "1/2", "--delta", "1"], "contract_ext_h4.json");
}

#[test]
fn output_is_deterministic_and_out_matches_stdout() {
    let args = ["decompose", "--j1", "1", "--j2", "1/2"];
    let a = stdout_of(&args);
    assert_eq!(a, stdout_of(&args));
    let dir = std::env::temp_dir().join(format!("uzalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.json");
    let mut with_out = args.to_vec();
    with_out.extend(["--out", path.to_str().unwrap()]);
    assert_eq!(stdout_of(&with_out), "");
    assert_eq!(std::fs::read_to_string(&path).unwrap(), a);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_suites_pass() {
    for suite in ["relations", "casimir", "qybe", "intertwiner", "hopf", "quadratic"] {
        stdout_of(&["verify", "--suite", suite, "--algebra", "uzsl2", "--beta", "-2"]);
    }
    for suite in ["relations", "casimir", "intertwiner", "hopf"] {
        stdout_of(&["verify", "--suite", suite, "--algebra", "uzh4", "--beta", "1/2", "--delta", "1", "--cutoff", "4"]);
    }
    stdout_of(&["verify", "--suite", "relations", "--algebra", "uzsl2", "--beta", "-3", "--z", "2/3"]);
}

#[test]
fn classical_contraction() {
    let text = stdout_of(&["contract", "--scheme", "sl2-to-poincare", "--classical", "--format", "text"]);
    assert!(text.lines().filter(|l| l.ends_with(": PASS")).count() >= 2, "{text}");
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["generate", "--algebra", "nope", "--beta", "-2"][..],
        &["generate", "--algebra", "uzsl2", "--beta", "1/2"],
        &["generate", "--algebra", "uzsl2"],
        &["generate", "--algebra", "uzsl2", "--beta", "x"],
        &["contract", "--scheme", "nope"],
        &["frobnicate"],
        &["verify", "--suite", "relations", "--algebra", "uzh4", "--beta", "1/2", "--delta", "1", "--cutoff", "0"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bad_reference_basis_is_rejected() {
    let dir = std::env::temp_dir().join(format!("uzalg-ref-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ref.json");
    // wrong labels for 1/2 (x) 1/2
    std::fs::write(
        &path,
        r#"[{"label": "1/2", "vectors": [["1","0","0","0"],["0","1","0","0"]]},
            {"label": "1/2", "vectors": [["0","0","1","0"],["0","0","0","1"]]}]"#,
    )
    .unwrap();
    let out = run(&["decompose", "--j1", "1/2", "--j2", "1/2", "--reference", path.to_str().unwrap()]);
    std::fs::remove_dir_all(dir).unwrap();
    assert_ne!(out.status.code(), Some(0));
    assert_ne!(out.status.code(), Some(101));
}
