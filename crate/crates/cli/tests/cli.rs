use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const WORKED: &str = "1\n3 6\n1 1 -7\n1 2 2\n1 3 2\n2 2 4\n2 3 2\n3 3 5\n";

fn eigqubo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eigqubo"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(args: &[&str]) -> String {
    let out = eigqubo(args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn seeded_solve_reports_are_identical() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("g.txt");
    ok(&["gen", "--n", "60", "--density", "0.2", "--seed", "3", "-o", s(&inst)]);
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for r in [&a, &b] {
        ok(&["solve", s(&inst), "--evals", "1000", "--seed", "7", "--report", s(r)]);
    }
    let ja = fs::read(&a).unwrap();
    assert_eq!(ja, fs::read(&b).unwrap());
    let text = String::from_utf8(ja).unwrap();
    assert!(text.contains("\"evaluations\": 1000"));
    assert!(text.contains("\"deterministic\": true"));
    assert!(dir.path().join("a.json.manifest").exists());
}

#[test]
fn transform_reproduces_worked_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("w.txt");
    fs::write(&inst, WORKED).unwrap();
    let out = ok(&["transform", s(&inst), "--M", "1", "--k", "1"]);
    let want = [
        (1, 1, -7.96),
        (1, 2, 2.14),
        (1, 3, 2.13),
        (2, 2, 3.98),
        (2, 3, 1.98),
        (3, 3, 4.98),
    ];
    let lines: Vec<&str> = out.lines().skip(2).collect();
    assert_eq!(lines.len(), want.len());
    for (line, (i, j, v)) in lines.iter().zip(want) {
        let t: Vec<&str> = line.split_whitespace().collect();
        assert_eq!((t[0].parse::<usize>().unwrap(), t[1].parse::<usize>().unwrap()), (i, j));
        assert!((t[2].parse::<f64>().unwrap() - v).abs() <= 0.01, "{line}");
    }
}

#[test]
fn sweep_writes_one_row_per_cell_and_reruns_from_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("toy.cfg");
    fs::write(
        &cfg,
        "# toy sweep\n\
         generate = orlib-like n=20 density=0.3 seed=1 count=3\n\
         M = 0 50 100\n\
         k = 1 2\n\
         evals = 2000\n\
         repetitions = 2\n\
         output = out\n",
    )
    .unwrap();
    ok(&["sweep", s(&cfg)]);
    let out = dir.path().join("out");
    let csv = fs::read_to_string(out.join("comparison.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "instance,M,k,base_best,transformed_best,improvement_abs,improvement_pct"
    );
    assert_eq!(lines.count(), 3 * 3 * 2);
    assert!(!out.join("errors.txt").exists());

    let again = dir.path().join("again");
    ok(&["sweep", s(&out.join("manifest.txt")), "--out-dir", s(&again)]);
    assert_eq!(csv, fs::read_to_string(again.join("comparison.csv")).unwrap());
}

#[test]
fn eig_and_landscape_write_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("w.txt");
    fs::write(&inst, WORKED).unwrap();
    let summary = ok(&["eig", s(&inst), "--out-dir", s(&dir.path().join("eig"))]);
    assert!(summary.contains("max|lambda|=7.56"), "{summary}");
    let spectrum = fs::read_to_string(dir.path().join("eig/spectrum.csv")).unwrap();
    assert_eq!(spectrum.lines().count(), 4);

    let grid = dir.path().join("grid.csv");
    ok(&[
        "landscape", s(&inst), "--M", "0,10", "--k", "0,1", "--walk-length", "2000", "--max-lag", "5",
        "-o", s(&grid),
    ]);
    let text = fs::read_to_string(&grid).unwrap();
    assert_eq!(text.lines().next().unwrap(), "k,M=0,M=10");
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn mdp2qubo_produces_parseable_orlib() {
    let dir = tempfile::tempdir().unwrap();
    let mdp = dir.path().join("m.txt");
    fs::write(&mdp, "3 2\n0 1 4\n0 2 1\n1 2 2\n").unwrap();
    let out = ok(&["mdp2qubo", s(&mdp), "--P", "20"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("1"));
    assert_eq!(lines.next(), Some("3 6 -80"));
}

#[test]
fn bad_input_fails_with_line_number() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("bad.txt");
    fs::write(&inst, "1\n3 2\n1 1 1\n1 1 2\n").unwrap();
    let out = eigqubo(&["solve", s(&inst), "--evals", "10"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let out = eigqubo(&["solve", s(&inst), "--no-such-flag"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));

    let cfg = dir.path().join("bad.cfg");
    fs::write(&cfg, "M = 1\nbogus = 2\n").unwrap();
    let out = eigqubo(&["sweep", s(&cfg)]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}
