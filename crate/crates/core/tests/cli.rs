use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("data")
        .join(name)
        .display()
        .to_string()
}

fn geoconj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geoconj"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn reduce_prints_one_for_the_identity() {
    let o = geoconj(&["reduce", "--word", "abBA"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn normal_form_in_the_infinite_dihedral_group() {
    let o = geoconj(&["nf", "--group", &data("dinf.vf"), "--word", "ba"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "A @ b");
}

#[test]
fn decisions_map_to_exit_codes() {
    let yes = geoconj(&[
        "dgcp",
        "--k0",
        &data("universal.nfa"),
        "--k1",
        &data("b.nfa"),
        "--k2",
        &data("aba_inv.nfa"),
    ]);
    assert_eq!(yes.status.code(), Some(0));
    assert_eq!(stdout(&yes).trim(), "YES");
    let no = geoconj(&[
        "dgcp",
        "--k0",
        &data("b.nfa"),
        "--k1",
        &data("b.nfa"),
        "--k2",
        &data("aba_inv.nfa"),
    ]);
    assert_eq!(no.status.code(), Some(1));
    assert_eq!(stdout(&no).trim(), "NO");
    let gcp = geoconj(&[
        "gcp",
        "--x",
        "abA",
        "--k",
        &data("b.nfa"),
        "--l0",
        &data("universal.nfa"),
    ]);
    assert_eq!(gcp.status.code(), Some(0));
}

#[test]
fn witness_is_printed_on_request() {
    let o = geoconj(&[
        "dgcp",
        "--k0",
        &data("universal.nfa"),
        "--k1",
        &data("b.nfa"),
        "--k2",
        &data("aba_inv.nfa"),
        "--witness",
    ]);
    assert!(stdout(&o).contains("witness: u = a, x = b, y = abA"));
}

#[test]
fn input_errors_exit_with_two() {
    assert_eq!(
        geoconj(&["nf", "--group", &data("missing.vf"), "--word", "a"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        geoconj(&["nf", "--group", &data("dinf.vf"), "--word", "z"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        geoconj(&["benois", "--nfa", &data("dinf.vf")])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn budget_and_validation_exit_codes() {
    let o = geoconj(&[
        "geo",
        "--group",
        &data("dinf.vf"),
        "--k",
        &data("b.nfa"),
        "--ftc",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(4));
    let o = geoconj(&[
        "transducer",
        "--group",
        &data("swap.vf"),
        "--ftc",
        "2",
        "--validate-radius",
        "0",
        "--budget",
        "10",
    ]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn exported_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let nfa = dir.path().join("sat.nfa");
    let o = geoconj(&[
        "benois",
        "--nfa",
        &data("abB_star.nfa"),
        "--out",
        nfa.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let words = stdout(&geoconj(&[
        "enumerate",
        "--nfa",
        nfa.to_str().unwrap(),
        "--max-len",
        "6",
    ]));
    assert_eq!(
        words.lines().collect::<Vec<_>>(),
        vec!["1", "a", "aa", "aaa", "aaaa", "aaaaa", "aaaaaa"]
    );

    let cfg = dir.path().join("alpha.cfg");
    let o = geoconj(&[
        "alpha",
        "--k",
        &data("b.nfa"),
        "--l",
        &data("universal.nfa"),
        "--out",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = fs::read_to_string(&cfg).unwrap();
    let g = geoconj::Cfg::parse(&text).unwrap();
    let listed = stdout(&geoconj(&[
        "enumerate",
        "--cfg",
        cfg.to_str().unwrap(),
        "--max-len",
        "6",
    ]));
    let direct: Vec<String> = g
        .enumerate(6)
        .iter()
        .map(|w| g.alphabet().render(w))
        .collect();
    assert_eq!(listed.lines().collect::<Vec<_>>(), direct);
    assert!(direct.contains(&"abA".to_string()));
}

#[test]
fn dot_export() {
    let o = geoconj(&["benois", "--nfa", &data("b.nfa"), "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn geodesics_of_a_subset() {
    let o = geoconj(&[
        "geo",
        "--group",
        &data("dinf.vf"),
        "--k",
        &data("b.nfa"),
        "--config",
        &data("dinf.cfg"),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("geo.nfa");
    fs::write(&path, stdout(&o)).unwrap();
    let words = stdout(&geoconj(&[
        "enumerate",
        "--nfa",
        path.to_str().unwrap(),
        "--max-len",
        "4",
    ]));
    assert_eq!(words.lines().collect::<Vec<_>>(), vec!["b", "B"]);
}

#[test]
fn single_acceptance_criterion() {
    let o = geoconj(&["check", "--suite", "acceptance", "--only", "6"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("[PASS]"));
}
