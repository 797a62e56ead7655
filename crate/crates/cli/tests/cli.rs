use std::process::{Command, Output};

fn svoa(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_svoa"))
        .args(args)
        .env_remove("SVOA_TERMS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("valid json on stdout")
}

#[test]
fn expand_mckay_thompson_2a() {
    let o = svoa(&["expand", "mckay-thompson", "--class", "2A", "--terms", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "q^-1 + 4372*q + 96256*q^2 + 1240002*q^3 + O(q^4)");
}

#[test]
fn terms_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_svoa"))
        .args(["expand", "j"])
        .env("SVOA_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "q^-1 + 744 + 196884*q + O(q^2)");
    // the flag wins over the variable
    let o = Command::new(env!("CARGO_BIN_EXE_svoa"))
        .args(["expand", "j", "--terms", "1"])
        .env("SVOA_TERMS", "2")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "q^-1 + 744 + O(q)");
}

#[test]
fn expand_csv_lists_exponents() {
    let o = svoa(&["expand", "j", "--terms", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("exponent,rational,sqrt2"));
    assert_eq!(lines.next(), Some("-1,1,0"));
    assert_eq!(lines.next(), Some("0,744,0"));
}

#[test]
fn solve_worked_example() {
    let o = svoa(&["solve", "--c", "33.5", "--mu", "3/2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("Infeasible"));
    assert!(text.contains("B0 integral forces a4 = 0 mod 32768"));

    let v = json(&svoa(&["solve", "--c", "33.5", "--mu", "3/2", "--format", "json"]));
    assert_eq!(v["result"]["status"], "Infeasible");
}

#[test]
fn solve_is_deterministic() {
    let args = ["solve", "--c", "48", "--mu", "5/2", "--format", "json"];
    assert_eq!(svoa(&args).stdout, svoa(&args).stdout);
    let args = ["table", "--from", "20", "--to", "24", "--format", "csv"];
    assert_eq!(svoa(&args).stdout, svoa(&args).stdout);
}

#[test]
fn table_csv() {
    let o = svoa(&["table", "--from", "1/2", "--to", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "c,mu_upper,annotation\n1/2,1/2,\n1,1/2,\n3/2,1/2,\n2,1/2,\n"
    );
    let o = svoa(&["table", "--from", "10", "--to", "10", "--format", "csv"]);
    assert_eq!(stdout(&o), "c,mu_upper,annotation\n10,1,classification_dependent\n");
}

#[test]
fn verify_maxodd_and_usage_errors() {
    let o = svoa(&["verify", "maxodd", "--c", "48"]);
    assert_eq!(o.status.code(), Some(0));
    let o = svoa(&["verify", "maxodd", "--c", "25"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("multiple of 24"));
    assert_eq!(svoa(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(svoa(&["solve", "--c", "abc", "--mu", "1"]).status.code(), Some(2));
}

#[test]
fn failed_checks_exit_one_with_a_reason() {
    let o = svoa(&["verify", "coeffpos", "--c", "2", "--n", "50"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("except the coefficient of p^1"));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["failure"]["check"], "coeffpos");
}

#[test]
fn csv_where_unsupported_is_a_usage_error() {
    let o = svoa(&["solve", "--c", "33.5", "--mu", "3/2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn monster_commands() {
    let o = svoa(&["monster", "obstruction", "--class", "2A"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("21590016*q"));

    let v = json(&svoa(&["monster", "obstruction", "--class", "2B", "--format", "json"]));
    assert_eq!(v["matched_family"], 2);
    assert_eq!(v["contradiction"], false);

    let o = svoa(&["monster", "check-decomposition", "--builtin", "character"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("333202640600"));

    let o = svoa(&["monster", "split"]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn monster_data_override() {
    let dir = std::env::temp_dir().join(format!("svoa-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("monster.csv");
    std::fs::write(&path, "index,dimension,trace2A,trace2B\n1,1,1,1\n2,196882,4371,275\n").unwrap();
    let o = svoa(&[
        "monster",
        "obstruction",
        "--class",
        "2A",
        "--data",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn check_decomposition_from_a_file() {
    let dir = std::env::temp_dir().join(format!("svoa-dec-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("dec.json");
    let input = serde_json::json!({
        "series": "extremal-voa",
        "base_exponent": "-2",
        "decomposition": {
            "name": "W",
            "start": "0",
            "step": "1",
            "entries": [
                {"label": "W_0", "multiplicities": {"1": 1}},
                {"label": "W_1", "multiplicities": {}},
                {"label": "W_2", "multiplicities": {"1": 1}},
                {"label": "W_3", "multiplicities": {"1": 1, "2": 1, "3": 1}}
            ]
        }
    });
    std::fs::write(&path, input.to_string()).unwrap();
    let o = svoa(&["monster", "check-decomposition", "--input", path.to_str().unwrap()]);
    // W_3 is 42987520, not 21493760
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("MISMATCH"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_newbound_and_n1() {
    let o = svoa(&["verify", "newbound", "--c", "40"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("a_2m: Lagrange -10379, rebase -10379, fit -10379"));
    let v = json(&svoa(&["verify", "n1", "--c", "23.5", "--format", "json"]));
    assert_eq!(v["first_nonzero"]["coefficient"], "4370");
    assert_eq!(v["exceptional"], true);
}
