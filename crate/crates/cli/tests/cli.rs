//! End-to-end checks of the command-line surface: table formats, exit
//! codes, cap refusals, and byte determinism.

use std::process::{Command, Output};

fn walshkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_walshkit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 output")
}

#[test]
fn lebesgue_small_table() {
    let output = walshkit(&["lebesgue", "--max", "5"]);
    assert!(output.status.success());
    let expected = "\
n,V,norm_num,norm_exp,norm_float,lower_ok,upper_ok
1,2,1,0,1,true,true
2,2,1,0,1,true,true
3,2,3,1,1.5,true,true
4,2,1,0,1,true,true
5,4,7,2,1.75,true,true
";
    assert_eq!(stdout(&output), expected);
}

#[test]
fn lebesgue_json_rows() {
    let output = walshkit(&["lebesgue", "--max", "3", "--out", "json"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(text.lines().count(), 3);
    assert!(text
        .lines()
        .nth(2)
        .unwrap()
        .starts_with("{\"n\":3,\"V\":2,\"norm_num\":3,\"norm_exp\":1,\"norm_float\":1.5"));
}

#[test]
fn cap_refusals_exit_2() {
    let output = walshkit(&["lebesgue", "--max", "5000"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(output.stdout.is_empty());

    let output = walshkit(&["divergence", "--n-max", "15"]);
    assert_eq!(output.status.code(), Some(2));

    let output = walshkit(&["counterexample", "--n", "12"]);
    assert_eq!(output.status.code(), Some(2));

    let output = walshkit(&["fine", "--max-n", "2000000", "--variant", "variation"]);
    assert_eq!(output.status.code(), Some(2));

    // raising the cap explicitly admits the same request
    let output = walshkit(&["lebesgue", "--max", "5000", "--cap", "5000"]);
    assert_eq!(output.status.code(), Some(0));
}

#[test]
fn validation_failures_exit_1() {
    let output = walshkit(&["divergence", "--n-max", "3", "--phi", "power"]);
    assert_eq!(output.status.code(), Some(1));

    let output = walshkit(&[
        "divergence",
        "--n-max",
        "3",
        "--phi",
        "one",
        "--alpha",
        "2.0",
    ]);
    assert_eq!(output.status.code(), Some(1));

    let output = walshkit(&["fine", "--max-n", "1", "--variant", "variation"]);
    assert_eq!(output.status.code(), Some(1));

    let output = walshkit(&["divergence", "--n-min", "5", "--n-max", "3"]);
    assert_eq!(output.status.code(), Some(1));

    // unknown flags are validation failures too
    let output = walshkit(&["lebesgue", "--nonsense"]);
    assert_eq!(output.status.code(), Some(1));
}

#[test]
fn divergence_matches_hand_value() {
    let output = walshkit(&["divergence", "--n-min", "1", "--n-max", "1", "--phi", "one"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "n,block_sum,phi_at_block,ratio,path");
    let row = lines.next().unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    assert_eq!(fields[0], "1");
    let block_sum: f64 = fields[1].parse().unwrap();
    let expected = 1.0 / (3.0 * 4f64.ln().powi(2)) + 1.0 / (4.0 * 5f64.ln().powi(2));
    assert!((block_sum - expected).abs() < 1e-15);
    assert_eq!(fields[4], "1d");
}

#[test]
fn divergence_oracle_route_agrees() {
    let fast = walshkit(&["divergence", "--n-min", "2", "--n-max", "3", "--phi", "log"]);
    let slow = walshkit(&[
        "divergence",
        "--n-min",
        "2",
        "--n-max",
        "3",
        "--phi",
        "log",
        "--oracle",
    ]);
    assert!(fast.status.success() && slow.status.success());
    let parse = |out: &Output| -> Vec<f64> {
        stdout(out)
            .lines()
            .skip(1)
            .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
            .collect()
    };
    for (a, b) in parse(&fast).iter().zip(parse(&slow)) {
        assert!((a - b).abs() < 1e-12);
    }
    let text = stdout(&slow);
    assert!(text.lines().nth(1).unwrap().ends_with("2d-oracle"));
}

#[test]
fn counterexample_record_and_dumps() {
    let output = walshkit(&["counterexample", "--n", "0"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert_eq!(
        text,
        "n,l1,l1_float,h1,h1_float,coefficients_ok\n0,1,1,1,1,true\n"
    );

    let output = walshkit(&["counterexample", "--n", "0", "--emit", "grid"]);
    let text = stdout(&output);
    let expected = "\
cell_index,value_numerator,value_exponent,value_float
0,1,0,1
1,-1,0,-1
2,-1,0,-1
3,1,0,1
";
    assert_eq!(text, expected);

    let output = walshkit(&["counterexample", "--n", "0", "--emit", "spectrum"]);
    let text = stdout(&output);
    // coefficients on the 2x2 block {1}^2 at resolution 1
    let expected = "\
coeff_index,value_numerator,value_exponent,value_float
0,0,0,0
1,0,0,0
2,0,0,0
3,1,0,1
";
    assert_eq!(text, expected);
}

#[test]
fn hardy_report_shapes() {
    let output = walshkit(&["hardy", "--family", "counterexample", "--n", "2"]);
    assert!(output.status.success());
    assert_eq!(
        stdout(&output),
        "{\"family\":\"counterexample\",\"n\":2,\"resolution\":3,\"l1\":\"1\",\"l1_float\":1,\"h1\":\"1\",\"h1_float\":1}\n"
    );

    let output = walshkit(&["hardy", "--family", "dirichlet", "--n", "3"]);
    assert_eq!(
        stdout(&output),
        "{\"family\":\"dirichlet\",\"n\":3,\"resolution\":2,\"l1\":\"3/2^1\",\"l1_float\":1.5,\"h1\":\"7/2^2\",\"h1_float\":1.75}\n"
    );

    let output = walshkit(&["hardy", "--family", "walsh-pair", "--n", "3"]);
    assert_eq!(
        stdout(&output),
        "{\"family\":\"walsh-pair\",\"n\":3,\"resolution\":2,\"l1\":\"1\",\"l1_float\":1,\"h1\":\"1\",\"h1_float\":1}\n"
    );

    let output = walshkit(&["hardy", "--family", "constant", "--n", "0"]);
    assert!(stdout(&output).contains("\"l1\":\"1\""));

    let output = walshkit(&["hardy", "--family", "dirichlet-diff", "--n", "4"]);
    assert!(stdout(&output).contains("\"h1\":\"1\""));
}

#[test]
fn kernel_dump_formats() {
    let output = walshkit(&["kernel-dump", "--n", "5"]);
    let text = stdout(&output);
    let expected = "\
cell_index,value_numerator,value_exponent,value_float
0,5,0,5
1,1,0,1
2,1,0,1
3,1,0,1
4,3,0,3
5,-1,0,-1
6,-1,0,-1
7,-1,0,-1
";
    assert_eq!(text, expected);

    let output = walshkit(&["kernel-dump", "--n", "5", "--spectrum"]);
    let text = stdout(&output);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "coeff_index,value_numerator,value_exponent,value_float"
    );
    assert_eq!(lines[1], "0,1,0,1");
    assert_eq!(lines[6], "5,0,0,0");
}

#[test]
fn output_file_and_determinism() {
    let dir = std::env::temp_dir();
    let path = dir.join("walshkit_cli_test_lebesgue.csv");
    let path_str = path.to_str().unwrap();
    let output = walshkit(&["lebesgue", "--max", "8", "--output", path_str]);
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let from_file = std::fs::read_to_string(&path).unwrap();
    let direct = walshkit(&["lebesgue", "--max", "8"]);
    assert_eq!(from_file, stdout(&direct));
    std::fs::remove_file(&path).ok();

    // repeated invocations and explicit thread counts emit identical bytes
    let a = walshkit(&["divergence", "--n-max", "8", "--phi", "log"]);
    let b = walshkit(&["divergence", "--n-max", "8", "--phi", "log"]);
    let c = walshkit(&[
        "divergence",
        "--n-max",
        "8",
        "--phi",
        "log",
        "--threads",
        "1",
    ]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn threads_env_override() {
    let output = Command::new(env!("CARGO_BIN_EXE_walshkit"))
        .args(["lebesgue", "--max", "16"])
        .env("WALSHKIT_THREADS", "1")
        .output()
        .expect("binary runs");
    assert!(output.status.success());

    let bad = Command::new(env!("CARGO_BIN_EXE_walshkit"))
        .args(["lebesgue", "--max", "16"])
        .env("WALSHKIT_THREADS", "many")
        .output()
        .expect("binary runs");
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn verify_suites_pass() {
    for suite in ["bitops", "dyadic", "walsh", "kernels", "hardy", "strong"] {
        let output = walshkit(&["verify", "--suite", suite]);
        assert!(output.status.success(), "suite {suite}");
        let text = stdout(&output);
        assert!(text.contains("[PASS]"));
        assert!(!text.contains("[FAIL]"));
        assert!(text.lines().last().unwrap().ends_with("0 failures"));
    }
}

#[test]
fn help_exits_zero() {
    let output = walshkit(&["--help"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("lebesgue"));
}
