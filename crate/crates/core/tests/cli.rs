use std::path::PathBuf;
use std::process::Command;

fn nbcube() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nbcube"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("nbcube-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn table_csv_small_grid() {
    let out = nbcube()
        .args(["table", "--n", "1..3", "--k", "2..4", "--format", "csv"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "n,k,delta,formula,search,match,witness");
    assert_eq!(lines.len(), 10);
    assert!(lines[1..].iter().all(|l| l.split(',').nth(5) == Some("true")));
    assert!(lines.contains(&"3,3,6,3,3,true,000 111 222"));
    assert!(lines.contains(&"1,2,1,0,0,true,"));
}

#[test]
fn table_is_identical_across_worker_counts() {
    let run = |w: &str| {
        let path = scratch(&format!("table-{w}.json"));
        let status = nbcube()
            .args([
                "table",
                "--n",
                "2..3",
                "--k",
                "2..4",
                "--format",
                "json",
                "--workers",
                w,
                "--out",
            ])
            .arg(&path)
            .status()
            .unwrap();
        assert!(status.success());
        std::fs::read(&path).unwrap()
    };
    let one = run("1");
    assert_eq!(run("3"), one);
    let env_path = scratch("table-env.json");
    let status = nbcube()
        .env("NBCUBE_WORKERS", "4")
        .args(["table", "--n", "2..3", "--k", "2..4", "--format", "json", "--out"])
        .arg(&env_path)
        .status()
        .unwrap();
    assert!(status.success());
    assert_eq!(std::fs::read(&env_path).unwrap(), one);
}

#[test]
fn table_budget_exhaustion_exits_3() {
    let out = nbcube()
        .args(["table", "--n", "3", "--k", "3", "--budget", "1", "--format", "csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("3,3,6,3,exhausted,false,"));
}

#[test]
fn witness_commands() {
    let out = nbcube().args(["witness", "--cube", "2,3"]).output().unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("U = {11, 22}"));
    assert!(text.contains("complete"));
    assert!(text.contains("PASS"));

    let out = nbcube()
        .args(["witness", "--group", "Z6", "--gens", "1,5"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    let out = nbcube()
        .args(["witness", "--cube", "4,2", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["size"], 2);
    assert_eq!(v["passed"], true);

    let out = nbcube()
        .args(["witness", "--group", "Z3xZ3", "--gens", "01,02,10,20"])
        .output()
        .unwrap();
    assert!(out.status.success());
}

#[test]
fn paths_then_verify_and_tamper() {
    let file = scratch("q33.json");
    let status = nbcube()
        .args([
            "paths", "--cube", "3,3", "--faults", "000", "--x", "111", "--y", "222", "--out",
        ])
        .arg(&file)
        .status()
        .unwrap();
    assert!(status.success());
    let json = std::fs::read_to_string(&file).unwrap();
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["version"], 1);
    assert!(v["paths"].as_array().unwrap().len() >= 4);

    let ok = nbcube().arg("verify").arg(&file).output().unwrap();
    assert!(ok.status.success());

    let mut bad: serde_json::Value = v.clone();
    let first = bad["paths"][0][1].as_u64().unwrap();
    bad["paths"][0][1] = serde_json::json!(first ^ 1);
    let tampered = scratch("tampered.json");
    std::fs::write(&tampered, serde_json::to_string(&bad).unwrap()).unwrap();
    let out = nbcube().arg("verify").arg(&tampered).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&tampered, "{ not json").unwrap();
    assert_eq!(
        nbcube().arg("verify").arg(&tampered).output().unwrap().status.code(),
        Some(1)
    );
    assert_eq!(
        nbcube()
            .arg("verify")
            .arg(scratch("missing.json"))
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn paths_bound_zero_is_a_usage_error() {
    let out = nbcube()
        .args([
            "paths",
            "--cube",
            "4,2",
            "--faults",
            "0000,1111",
            "--x",
            "0011",
            "--y",
            "0110",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8(out.stderr).unwrap().contains("zero"));
}

#[test]
fn check_lemmas_reports() {
    let out = nbcube()
        .args(["check-lemmas", "--cube", "3,3", "--lmax", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("0 failures"));
    assert!(text.contains("PASS"));

    let out = nbcube()
        .args(["check-lemmas", "--cube", "2,5", "--format", "json"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["nonadjacent_with_one"].as_u64().unwrap() > 0);
}

#[test]
fn bad_arguments_exit_2() {
    assert_eq!(
        nbcube().args(["table", "--n", "x"]).output().unwrap().status.code(),
        Some(2)
    );
    assert_eq!(
        nbcube()
            .args(["paths", "--cube", "3,3", "--x", "9", "--y", "0"])
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        nbcube()
            .args(["table", "--n", "1", "--k", "2", "--workers", "0"])
            .output()
            .unwrap()
            .status
            .code(),
        Some(2)
    );
}
