//! End-to-end tests of the `ccc` binary: spec'd outputs, JSON round
//! trips, determinism, and exit codes.

use ccc_cli::report::{OrderReport, SolveReport, SweepReport, VerifyReport};
use std::process::{Command, Output};

fn ccc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccc"))
        .args(args)
        .env_remove("CCC_THREADS")
        .output()
        .expect("binary runs")
}

fn ccc_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccc"))
        .args(args)
        .env(key, value)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn order_examples_from_the_interface_contract() {
    let out = stdout_of(&ccc(&["order", "--pair", "non-isogenous", "--n", "7"]));
    let report: OrderReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.order, 7);
    assert_eq!(report.method, "generic-formula");

    let out = stdout_of(&ccc(&[
        "order", "--pair", "cm", "--m", "2", "--d", "-1", "--n", "4",
    ]));
    let report: OrderReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.order, 1);
    assert_eq!(report.method, "congruence-solver");
    assert_eq!(report.certificate.len(), 1);
    assert_eq!(report.certificate[0].solution, Some(vec![1, 0, 0, 1]));

    let out = stdout_of(&ccc(&["order", "--pair", "non-isogenous", "--n", "1"]));
    let report: OrderReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.order, 1);
    assert_eq!(report.method, "rational-fiber");
}

#[test]
fn order_accepts_an_explicit_torsion_point() {
    let out = stdout_of(&ccc(&[
        "order", "--pair", "cm", "--m", "3", "--d", "-1", "--n", "4", "--t", "1/4,0",
    ]));
    let report: OrderReport = serde_json::from_str(&out).unwrap();
    assert_eq!(report.order, 2);

    // A point whose order disagrees with --n is an invalid config.
    let out = ccc(&[
        "order", "--pair", "cm", "--m", "3", "--d", "-1", "--n", "4", "--t", "1/3,0",
    ]);
    assert_eq!(exit_code(&out), 2);
}

#[test]
fn json_reports_round_trip() {
    let out = stdout_of(&ccc(&[
        "order", "--pair", "cm", "--m", "6", "--d", "-4", "--n", "8",
    ]));
    let report: OrderReport = serde_json::from_str(&out).unwrap();
    let again: OrderReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
    assert!(report.note.is_some());

    let out = stdout_of(&ccc(&["verify-lattice"]));
    let report: VerifyReport = serde_json::from_str(&out).unwrap();
    let again: VerifyReport =
        serde_json::from_str(&serde_json::to_string(&report).unwrap()).unwrap();
    assert_eq!(report, again);
}

#[test]
fn identical_configs_produce_identical_bytes() {
    let args = [
        "sweep", "--pair", "cm", "--m", "1:5", "--d", "-3:-1", "--n", "4",
    ];
    let a = stdout_of(&ccc(&args));
    let b = stdout_of(&ccc(&args));
    assert_eq!(a, b);
    // And with a different worker count.
    let c = String::from_utf8(ccc_env(&args, "CCC_THREADS", "3").stdout).unwrap();
    assert_eq!(a, c);
}

#[test]
fn sweep_matches_repeated_order_invocations() {
    let out = stdout_of(&ccc(&[
        "sweep", "--pair", "cm", "--m", "1:4", "--d", "-2:-1", "--n", "4",
    ]));
    let sweep: SweepReport = serde_json::from_str(&out).unwrap();
    assert_eq!(sweep.rows.len(), 8);
    for row in &sweep.rows {
        let m = row.pair.m.unwrap().to_string();
        let d = row.pair.d.unwrap().to_string();
        let single = stdout_of(&ccc(&[
            "order", "--pair", "cm", "--m", &m, "--d", &d, "--n", "4",
        ]));
        let single: OrderReport = serde_json::from_str(&single).unwrap();
        assert_eq!(single, *row);
    }
    // Order 1 exactly at (2, -1) and (4, -1).
    let ones: Vec<(i64, i64)> = sweep
        .rows
        .iter()
        .filter(|r| r.order == 1)
        .map(|r| (r.pair.m.unwrap(), r.pair.d.unwrap()))
        .collect();
    assert_eq!(ones, vec![(2, -1), (4, -1)]);
}

#[test]
fn sweep_over_n_reproduces_the_order_table() {
    let out = stdout_of(&ccc(&[
        "sweep",
        "--pair",
        "non-isogenous",
        "--n-range",
        "3:8",
        "--format",
        "tsv",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n\td_of_n\torder\tmethod");
    let orders: Vec<&str> = lines[1..]
        .iter()
        .map(|l| l.split('\t').nth(2).unwrap())
        .collect();
    assert_eq!(orders, vec!["3", "2", "5", "3", "7", "4"]);
}

#[test]
fn solve_congruence_examples() {
    // The CM family system at (2, -1) is solvable with (1, 0, 0, 1).
    let out = stdout_of(&ccc(&[
        "solve-congruence",
        "--pair",
        "cm",
        "--m",
        "2",
        "--d",
        "-1",
        "--modulus",
        "2",
    ]));
    let report: SolveReport = serde_json::from_str(&out).unwrap();
    assert!(report.solvable);
    assert_eq!(report.solution, Some(vec![1, 0, 0, 1]));

    // Isomorphic pair generators T(I) and T(A) for A = [[0,1],[-1,0]]:
    // unsolvable mod 2.
    let out = stdout_of(&ccc(&[
        "solve-congruence",
        "--gamma",
        "1,0",
        "--target",
        "0,1,-1,0",
        "--gen",
        "0,1,-1,0",
        "--gen",
        "-1,0,0,-1",
        "--modulus",
        "2",
    ]));
    let report: SolveReport = serde_json::from_str(&out).unwrap();
    assert!(!report.solvable);
    assert_eq!(report.solution, None);

    // Modulus 1 is always solvable by zero.
    let out = stdout_of(&ccc(&[
        "solve-congruence",
        "--gamma",
        "1,0",
        "--target",
        "0,1,-1,0",
        "--gen",
        "0,1,-1,0",
        "--modulus",
        "1",
    ]));
    let report: SolveReport = serde_json::from_str(&out).unwrap();
    assert!(report.solvable);
    assert_eq!(report.solution, Some(vec![0, 0]));
}

#[test]
fn verify_lattice_passes_and_reports_the_numbers() {
    let out = ccc(&["verify-lattice"]);
    assert_eq!(exit_code(&out), 0);
    let report: VerifyReport =
        serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(report.rank, 16);
    assert_eq!(report.discriminant, 64);
    assert_eq!(report.index_blowup, 2048);
    assert_eq!(report.index_glue, 32);
    assert_eq!(report.weight_enumerator, "1 + 30z^8 + z^16");
    assert!(report.pass);
}

#[test]
fn invalid_configs_exit_two() {
    // cm without --m.
    assert_eq!(
        exit_code(&ccc(&["order", "--pair", "cm", "--d", "-1", "--n", "4"])),
        2
    );
    // Empty range.
    assert_eq!(
        exit_code(&ccc(&[
            "sweep", "--pair", "non-isogenous", "--n-range", "8:3"
        ])),
        2
    );
    // Positive d.
    assert_eq!(
        exit_code(&ccc(&[
            "order", "--pair", "cm", "--m", "2", "--d", "1", "--n", "4"
        ])),
        2
    );
    // n = 0.
    assert_eq!(
        exit_code(&ccc(&["order", "--pair", "non-isogenous", "--n", "0"])),
        2
    );
    // Unknown flag (clap's own usage error).
    assert_eq!(
        exit_code(&ccc(&["order", "--pair", "non-isogenous", "--n", "4", "--bogus"])),
        2
    );
    // Bad CCC_THREADS.
    assert_eq!(
        exit_code(&ccc_env(
            &["sweep", "--pair", "non-isogenous", "--n", "4"],
            "CCC_THREADS",
            "zero"
        )),
        2
    );
    // Zero denominator in --t.
    assert_eq!(
        exit_code(&ccc(&[
            "order", "--pair", "non-isogenous", "--n", "4", "--t", "1/0,0"
        ])),
        2
    );
    // --gen together with --pair cm in solve-congruence.
    assert_eq!(
        exit_code(&ccc(&[
            "solve-congruence",
            "--pair",
            "cm",
            "--m",
            "2",
            "--d",
            "-1",
            "--gen",
            "0,1,-1,0"
        ])),
        2
    );
}

#[test]
fn out_flag_writes_the_same_bytes_as_stdout() {
    let dir = std::env::temp_dir().join(format!("ccc-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let args_stdout = ["order", "--pair", "non-isogenous", "--n", "9"];
    let printed = stdout_of(&ccc(&args_stdout));
    let out = ccc(&[
        "order",
        "--pair",
        "non-isogenous",
        "--n",
        "9",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    let written = std::fs::read_to_string(&path).unwrap();
    assert_eq!(printed, written);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn tsv_order_report_is_header_first() {
    let out = stdout_of(&ccc(&[
        "order", "--pair", "cm", "--m", "2", "--d", "-1", "--n", "4", "--format", "tsv",
    ]));
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "m\td\tn\td_of_n\torder\tmethod");
    assert_eq!(lines[1], "2\t-1\t4\t2\t1\tcongruence-solver");
}
