use std::process::{Command, Output};

fn bosonq(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bosonq"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn map_rdm1_unary_first_quantized() {
    let o = bosonq(&[
        "map",
        "--spec-json",
        r#"{"kind":"rdm_term","creators":[0],"annihilators":[1]}"#,
        "--mapping",
        "U1Q",
        "-N",
        "1",
        "-M",
        "2",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    let strings: Vec<&str> = text.lines().map(|l| l.split_once(' ').unwrap().1).collect();
    assert_eq!(strings, ["X0 X1", "X0 Y1", "Y0 X1", "Y0 Y1"]);
    assert!(text.lines().all(|l| l.contains("0.25")));
}

#[test]
fn map_number_binary_second_quantized() {
    let o = bosonq(&[
        "map",
        "--spec-json",
        r#"{"kind":"number","site":0}"#,
        "--mapping",
        "B2Q",
        "-N",
        "1",
        "-M",
        "1",
        "-d",
        "2",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "(0.5+0j) I\n(-0.5+0j) Z0\n");
}

#[test]
fn map_is_deterministic() {
    let args = [
        "map",
        "--spec-json",
        r#"{"model":"bhm","M":3,"N":2,"J":1.0,"U":0.5}"#,
        "--mapping",
        "B2Q",
    ];
    let a = bosonq(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, bosonq(&args).stdout);
}

#[test]
fn invalid_mode_index_exits_2() {
    let o = bosonq(&[
        "map",
        "--spec-json",
        r#"{"kind":"rdm_term","creators":[0],"annihilators":[7]}"#,
        "--mapping",
        "U1Q",
        "-N",
        "1",
        "-M",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("out of range"));
}

#[test]
fn malformed_spec_exits_2() {
    let o = bosonq(&[
        "map",
        "--spec-json",
        "{",
        "--mapping",
        "U1Q",
        "-N",
        "1",
        "-M",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let o = bosonq(&["map", "--mapping", "Q9Q"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_all_small_passes() {
    let o = bosonq(&["verify", "--all-small"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().count() > 1000);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["passed"], true, "{line}");
    }
}

#[test]
fn verify_bhm_all_mappings() {
    let o = bosonq(&[
        "verify",
        "--spec-json",
        r#"{"model":"bhm","M":3,"N":2,"J":1.0,"U":1.0}"#,
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mappings: Vec<String> = text
        .lines()
        .map(|l| {
            serde_json::from_str::<serde_json::Value>(l).unwrap()["mapping"]
                .as_str()
                .unwrap()
                .to_string()
        })
        .collect();
    assert_eq!(mappings, ["U1Q", "B1Q", "U2Q", "B2Q"]);
}

#[test]
fn corrupted_coefficient_fails_with_exit_1() {
    let o = bosonq(&[
        "verify",
        "--spec-json",
        r#"{"model":"bhm","M":3,"N":2,"J":1.0,"U":1.0}"#,
        "--mapping",
        "U2Q",
        "--corrupt-coefficient",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(stdout(&o).trim()).unwrap();
    assert_eq!(v["passed"], false);
}

#[test]
fn tensor_file_input() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.json");
    std::fs::write(&path, r#"{"M":2,"h":[[1,0],[0,0],[0,0],[1,0]],"V":[]}"#).unwrap();
    let o = bosonq(&["verify", "--tensors", path.to_str().unwrap(), "-N", "2"]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let doc = format!(
        r#"{{"model":"tensors","path":{:?}}}"#,
        path.to_str().unwrap()
    );
    let o = bosonq(&["count", "--spec-json", &doc, "--mapping", "U2Q", "-N", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
}

fn sweep_csv(dir: &std::path::Path, name: &str, config: &str) -> String {
    let cfg = dir.join(format!("{name}.toml"));
    let out = dir.join(format!("{name}.csv"));
    std::fs::write(&cfg, config).unwrap();
    let o = bosonq(&[
        "sweep",
        cfg.to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
        "-q",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    std::fs::read_to_string(out).unwrap()
}

#[test]
fn sweep_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let config = "family = \"bhm\"\nN_list = [2, 3]\nM_list = [2, 3, 4]\n";
    let a = sweep_csv(dir.path(), "a", config);
    let b = sweep_csv(dir.path(), "b", config);
    assert_eq!(a, b);
    assert!(a.starts_with("# bosonq sweep\n"));
    assert!(a.contains("# boundary: periodic"));
}

#[test]
fn sweep_row_count_matches_grid() {
    let dir = tempfile::tempdir().unwrap();
    // rdm2 drops M < 4 everywhere and N = 1 on the first-quantized mappings
    let config = "family = \"rdm2\"\nN_list = [1, 2]\nM_list = [3, 4, 5]\nbwcp = false\n";
    let csv = sweep_csv(dir.path(), "r", config);
    let rows: Vec<&str> = csv
        .lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .collect();
    assert_eq!(rows.len(), 2 * 2 + 2 * 2 * 2);
    assert!(rows.iter().all(|r| r.ends_with(",ok")));
}

#[test]
fn sweep_bad_config_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "family = \"rdm1\"\nN_list = []\nM_list = [2]\n").unwrap();
    assert_eq!(
        bosonq(&["sweep", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
    std::fs::write(
        &cfg,
        "family = \"rdm1\"\nN_list = [1]\nM_list = [2]\nbogus = 1\n",
    )
    .unwrap();
    assert_eq!(
        bosonq(&["sweep", cfg.to_str().unwrap()]).status.code(),
        Some(2)
    );
}

#[test]
fn print_config_round_trips() {
    let o = bosonq(&["sweep", "--print-config", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["family"], "rdm1");
    assert_eq!(v["b1q_index_policy"], "min_hamming");
    assert!(v.get("d").is_some());
}

#[test]
fn formulas_tables() {
    let o = bosonq(&["formulas", "--table", "qubits", "-N", "6", "-M", "128"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let row: Vec<&str> = text.lines().nth(2).unwrap().split_whitespace().collect();
    assert_eq!(row, ["6", "128", "768", "42", "896", "384"]);
    let o = bosonq(&["formulas", "--table", "break-even", "-N", "100", "-k", "1"]);
    assert!(stdout(&o).contains("3.887"));
}
