use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn dbb(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dbb"))
        .args(args)
        .env_remove("DBB_CYCLE_CAP")
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn balance_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.txt", "0 0\n1 4\n2 0\n3 0\n");
    let edges = dir.path().join("f.txt");
    let o = dbb(&[
        "balance",
        "--n",
        "2",
        "--d",
        "2",
        "--weights",
        &w,
        "--out",
        edges.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).starts_with("global_mean 1\n"));
    let f = fs::read_to_string(&edges).unwrap();
    assert_eq!(f.lines().count(), 8);
    assert!(f.contains("1 2 -1\n"));
    assert!(!dir.path().join("f.txt.tmp").exists());

    let o = dbb(&[
        "verify",
        "--n",
        "2",
        "--d",
        "2",
        "--weights",
        &w,
        "--edges",
        edges.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all_equal true\n"));
    assert!(stdout(&o).contains("poisson_residual_max 0\n"));
}

#[test]
fn verify_failures_exit_one_with_a_witness() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.txt", "0 0\n1 4\n2 0\n3 0\n");
    let zero = write(
        dir.path(),
        "f.txt",
        "0 0 0\n0 1 0\n1 2 0\n1 3 0\n2 0 0\n2 1 0\n3 2 0\n3 3 0\n",
    );
    let o = dbb(&[
        "verify",
        "--n",
        "2",
        "--d",
        "2",
        "--weights",
        &w,
        "--edges",
        &zero,
    ]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("min_mean 0\n"), "{out}");
    assert!(out.contains("max_mean 2\n"), "{out}");
    assert!(out.contains("all_equal false\n"));
    assert!(!out.contains("witness none"));

    let unbalanced = write(
        dir.path(),
        "g.txt",
        "0 0 1\n0 1 0\n1 2 0\n1 3 0\n2 0 0\n2 1 0\n3 2 0\n3 3 0\n",
    );
    let o = dbb(&[
        "verify",
        "--n",
        "2",
        "--d",
        "2",
        "--weights",
        &w,
        "--edges",
        &unbalanced,
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("sum_zero false (vertex 0)"));
}

#[test]
fn cycle_cap_from_flag_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(
        dir.path(),
        "w.txt",
        "0 1\n1 2\n2 3\n3 4\n4 5\n5 6\n6 7\n7 8\n",
    );
    let edges = dir.path().join("f.txt");
    let o = dbb(&[
        "balance",
        "--n",
        "2",
        "--d",
        "3",
        "--weights",
        &w,
        "--out",
        edges.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let e = edges.to_str().unwrap();

    let o = dbb(&[
        "verify",
        "--n",
        "2",
        "--d",
        "3",
        "--weights",
        &w,
        "--edges",
        e,
        "--cycle-cap",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("enumeration_complete false\n"));
    assert!(stdout(&o).contains("all_equal true\n"));

    let o = Command::new(env!("CARGO_BIN_EXE_dbb"))
        .args([
            "verify",
            "--n",
            "2",
            "--d",
            "3",
            "--weights",
            &w,
            "--edges",
            e,
        ])
        .env("DBB_CYCLE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.txt", "0 1\n1 x\n");
    let o = dbb(&["solve", "--n", "2", "--d", "1", "--T", "3", "--weights", &w]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));

    let w = write(dir.path(), "w2.txt", "0 1\n");
    let o = dbb(&["solve", "--n", "2", "--d", "1", "--T", "3", "--weights", &w]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("vertex 1"), "{}", stderr(&o));

    let sink = write(dir.path(), "g.txt", "3\n0 1\n1 2\n");
    let w = write(dir.path(), "w3.txt", "0 1\n1 1\n2 1\n");
    let o = dbb(&["general", "--graph", &sink, "--weights", &w, "--T", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains('2'), "{}", stderr(&o));

    let o = dbb(&[
        "verify",
        "--n",
        "2",
        "--d",
        "1",
        "--weights",
        "/nonexistent",
        "--edges",
        "/nonexistent",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn solve_variants_and_decimal_output() {
    let dir = tempfile::tempdir().unwrap();
    let w = write(dir.path(), "w.txt", "0 0\n1 4\n2 0\n3 0\n");
    let base = dbb(&["solve", "--n", "2", "--d", "2", "--T", "5", "--weights", &w]);
    assert_eq!(base.status.code(), Some(0));
    let base = stdout(&base);
    assert_eq!(base.lines().count(), 24);
    // three turns left at 00 costs 4 (two stationary steps of mean 1 plus 2)
    assert!(base.contains("2 0 4\n"), "{base}");

    let mixed = stdout(&dbb(&[
        "solve",
        "--n",
        "2",
        "--d",
        "2",
        "--T",
        "5",
        "--weights",
        &w,
        "--mixed",
        "1,3",
    ]));
    assert_eq!(
        mixed.strip_suffix("mixed_equals_baseline true\n"),
        Some(base.as_str())
    );
    let maxmin = stdout(&dbb(&[
        "solve",
        "--n",
        "2",
        "--d",
        "2",
        "--T",
        "5",
        "--weights",
        &w,
        "--maxmin",
    ]));
    assert_eq!(
        maxmin.strip_suffix("maxmin_equals_baseline true\n"),
        Some(base.as_str())
    );

    let o = dbb(&[
        "solve",
        "--n",
        "2",
        "--d",
        "2",
        "--T",
        "5",
        "--weights",
        &w,
        "--mixed",
        "7",
    ]);
    assert_eq!(o.status.code(), Some(2));

    let dec = stdout(&dbb(&[
        "solve",
        "--n",
        "2",
        "--d",
        "1",
        "--T",
        "1",
        "--weights",
        &write(dir.path(), "q.txt", "0 1/3\n1 2/3\n"),
        "--decimal",
        "2",
    ]));
    assert_eq!(dec, "0 0 0.83\n0 1 1.17\n1 0 0.33\n1 1 0.67\n");
}

#[test]
fn general_on_a_file_graph() {
    let dir = tempfile::tempdir().unwrap();
    let g = write(dir.path(), "g.txt", "# triangle\n3\n0 1\n1 2\n2 0\n");
    let w = write(dir.path(), "w.txt", "0 1\n1 2\n2 3\n");
    let o = dbb(&["general", "--graph", &g, "--weights", &w, "--T", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("0 0 7\n0 1 8\n0 2 9\n"), "{out}");
    assert!(out.ends_with("k_regular_cross_check true\n"));
}

#[test]
fn report_and_build() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("b.txt");
    let o = dbb(&[
        "build",
        "--n",
        "3",
        "--d",
        "2",
        "--out",
        graph.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&graph).unwrap().lines().count(), 28);

    let w = write(
        dir.path(),
        "w.txt",
        "0 1\n1 0\n2 0\n3 0\n4 2\n5 0\n6 0\n7 0\n8 -3\n",
    );
    let o = dbb(&["report", "--n", "3", "--d", "2", "--weights", &w]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("global_mean 0\n"));
    assert!(out.contains("cycle_count 148\n"));
    assert!(out.contains("all_equal true\n"));
}
