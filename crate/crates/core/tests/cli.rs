use seqcontest::cli::run_with;
use serde_json::Value;

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("seqcontest").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn num(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn solve_json_round_trips_byte_for_byte() {
    let (code, out, _) = run(&["solve", "--contest", "1,2,1"]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let again = serde_json::to_string_pretty(&v).unwrap() + "\n";
    assert_eq!(again, out);
    assert_eq!(v["status"], "Solved");
    assert!((num(&v["x_star"]) - (7.0 + 13f64.sqrt()) / 12.0).abs() < 1e-14);
    let efforts: Vec<f64> = v["efforts"].as_array().unwrap().iter().map(num).collect();
    assert_eq!(efforts.len(), 4);
    assert_eq!(efforts[1], efforts[2]);
}

#[test]
fn solve_is_deterministic() {
    let a = run(&["solve", "--contest", "3,1,2", "--kernel", "exp:a=1/2,b=2"]);
    let b = run(&["solve", "--contest", "3,1,2", "--kernel", "exp:a=1/2,b=2"]);
    assert_eq!(a, b);
}

#[test]
fn exact_flag_reports_rationals() {
    let v = json(&["solve", "--contest", "1,2,1", "--kernel", "power", "--exact"]);
    assert_eq!(v["exact"]["x_star"], "1/3");
}

#[test]
fn csv_has_one_row_per_player() {
    let (code, out, _) = run(&["solve", "--contest", "1,2,1", "--format", "csv"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "player,period,effort,payoff");
    assert_eq!(lines.len(), 5);
    assert!(lines[4].starts_with("4,3,0.1027"));
}

#[test]
fn measures_table() {
    assert_eq!(run(&["measures", "--contest", "1,2,1"]).1, "4,5,2\n");
}

#[test]
fn sweep_simultaneous_row() {
    let (code, out, _) = run(&["sweep", "--family", "sim", "--n-min", "10", "--n-max", "10"]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,contest,status,x_star,gap_to_one,s_weighted"));
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[3], "0.9");
}

#[test]
fn design_balances_two_periods() {
    let v = json(&["design", "--players", "10", "--max-periods", "2"]);
    assert_eq!(v["best_contest"], serde_json::json!([5, 5]));
}

#[test]
fn compare_reports_incomparable() {
    let v = json(&["compare", "--a", "5,5", "--b", "8,1,1"]);
    assert_eq!(v["dominance"], "incomparable");
    assert!(num(&v["x_a"]) > num(&v["x_b"]));
}

#[test]
fn oracle_agrees_with_solve() {
    let v = json(&["oracle", "--contest", "1,2,1", "--step", "1e-2"]);
    assert!((num(&v["total"]) - 0.883796).abs() < 5e-2);
}

#[test]
fn best_response_table() {
    let (code, out, _) = run(&["br", "--contest", "1,2,1", "--period", "3", "--points", "5"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 6);
}

#[test]
fn no_interior_candidate_exits_one() {
    let (code, out, _) = run(&["solve", "--contest", "2", "--kernel", "power"]);
    assert_eq!(code, 1);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["status"], "NoInteriorCandidate");
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["solve", "--contest", "1,0"]).0, 2);
    assert_eq!(run(&["solve", "--contest", "2", "--kernel", "nope"]).0, 2);
    assert_eq!(run(&["frobnicate"]).0, 2);
    assert_eq!(run(&["--help"]).0, 0);
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("seqcontest-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("m.csv");
    let (code, out, _) = run(&[
        "measures",
        "--contest",
        "5,5",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(out.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "k,S_k\n1,10\n2,25\n");
    std::fs::remove_dir_all(dir).unwrap();
}
