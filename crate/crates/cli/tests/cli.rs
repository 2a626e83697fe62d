use std::path::Path;
use std::process::{Command, Output};

fn lozi(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lozi"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .expect("running lozi")
}

#[test]
fn single_panel_raster() {
    let dir = tempfile::tempdir().unwrap();
    let o = lozi(
        &[
            "pruned-region",
            "--a",
            "1.7",
            "--b",
            "0.5",
            "--word-len",
            "5",
        ],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let pgm = std::fs::read(dir.path().join("pruned_region_1.7_0.5.pgm")).unwrap();
    assert!(pgm.starts_with(b"P5\n32 32\n255\n"));
    assert_eq!(pgm.len(), 13 + 32 * 32);
    // some cylinder is pruned at these parameters
    assert!(pgm[13..].contains(&0));
    let header = std::fs::read_to_string(dir.path().join("pruned_region_1.7_0.5.txt")).unwrap();
    assert!(header.contains("word_len=5\n"));
}

#[test]
fn entropy_brackets_log_two() {
    let dir = tempfile::tempdir().unwrap();
    let o = lozi(
        &["entropy", "--a", "2.1", "--b", "0.05", "--n-max", "10"],
        dir.path(),
    );
    assert!(o.status.success());
    let header = std::fs::read_to_string(dir.path().join("entropy_2.1_0.05.txt")).unwrap();
    let get = |k: &str| -> f64 {
        header
            .lines()
            .find_map(|l| l.strip_prefix(&format!("{k}=")))
            .unwrap()
            .parse()
            .unwrap()
    };
    let ln2 = 2f64.ln();
    assert!(get("h_lower") - 0.05 <= ln2 && ln2 <= get("h_upper") + 0.05);
    let csv = std::fs::read_to_string(dir.path().join("entropy_2.1_0.05.csv")).unwrap();
    assert_eq!(csv.lines().count(), 11);
}

#[test]
fn cones_table_is_monotone_in_a() {
    let dir = tempfile::tempdir().unwrap();
    let o = lozi(&["cones", "--grid", "16"], dir.path());
    assert!(o.status.success());
    let csv = std::fs::read_to_string(dir.path().join("cones.csv")).unwrap();
    let a: Vec<f64> = csv
        .lines()
        .skip(1)
        .map(|l| l.split(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(a.len(), 16);
    assert!(a.windows(2).all(|w| w[0] < w[1]) && a[15] == 2.0);
}

#[test]
fn manifolds_and_zero_scan() {
    let dir = tempfile::tempdir().unwrap();
    assert!(lozi(&["manifolds", "--arc-budget", "10"], dir.path())
        .status
        .success());
    let csv = std::fs::read_to_string(dir.path().join("manifolds_1.7_0.5.csv")).unwrap();
    for branch in [
        "UnstableRight",
        "UnstableLeft",
        "StableHalfline",
        "StableLower",
    ] {
        assert!(csv.contains(branch), "{branch}");
    }
    assert!(lozi(
        &["zero-scan", "--grid", "6", "--arc-budget", "20"],
        dir.path()
    )
    .status
    .success());
    let csv = std::fs::read_to_string(dir.path().join("zero_scan.csv")).unwrap();
    assert_eq!(csv.lines().count(), 37);
}

#[test]
fn refuses_to_overwrite_without_force() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["cones", "--grid", "4"];
    assert!(lozi(&args, dir.path()).status.success());
    let again = lozi(&args, dir.path());
    assert_eq!(again.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&again.stderr).contains("--force"));
    let forced = lozi(&["cones", "--grid", "4", "--force"], dir.path());
    assert!(forced.status.success());
}

#[test]
fn config_file_and_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "grid = 5\n").unwrap();
    let o = lozi(
        &["cones", "--config", cfg.to_str().unwrap()],
        &dir.path().join("a"),
    );
    assert!(o.status.success());
    let rows = std::fs::read_to_string(dir.path().join("a/cones.csv"))
        .unwrap()
        .lines()
        .count();
    assert_eq!(rows, 6);
    std::fs::write(&cfg, "colour = red\n").unwrap();
    let o = lozi(
        &["cones", "--config", cfg.to_str().unwrap()],
        &dir.path().join("b"),
    );
    assert_eq!(o.status.code(), Some(2));
    let o = lozi(
        &["entropy", "--a", "0.9", "--b", "0.5"],
        &dir.path().join("c"),
    );
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("hyperbolic"));
}
