//! Acceptance suite: one PASS/FAIL line per criterion, full-size settings.
//! Criterion 12 runs `lozi verify` twice on one config and compares every
//! output file byte for byte.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;

use lozi_core::verify::{run_criterion, VerifyConfig, CRITERIA};

const SMALL_CONFIG: &str = "\
closed_form_grid = 6
random_heads = 20
word_len = 6
bound_tail = 6
bound_head = 60
n_max = 10
monotone_points = 4
lyapunov_points = 50
grid = 12
arc_budget = 40
windows = 50
seed = 7
";

fn read_dir(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(dir)
        .expect("output directory")
        .map(|e| {
            let e = e.expect("directory entry");
            (
                e.file_name().to_string_lossy().into_owned(),
                std::fs::read(e.path()).expect("output file"),
            )
        })
        .collect()
}

fn determinism() -> (bool, String) {
    let tmp = tempfile::tempdir().expect("temp dir");
    let cfg = tmp.path().join("run.cfg");
    std::fs::write(&cfg, SMALL_CONFIG).expect("config");
    let mut outputs = Vec::new();
    for run in ["first", "second"] {
        let out = tmp.path().join(run);
        let status = Command::new(env!("CARGO_BIN_EXE_lozi"))
            .arg("verify")
            .arg("--config")
            .arg(&cfg)
            .arg("--out")
            .arg(&out)
            .output()
            .expect("running lozi");
        if !status.status.success() {
            return (false, format!("{run} run exited with {}", status.status));
        }
        outputs.push(read_dir(&out));
    }
    let files = outputs[0].len();
    if files > 0 && outputs[0] == outputs[1] {
        (true, format!("{files} files identical"))
    } else {
        (false, "outputs differ".into())
    }
}

fn main() {
    let cfg = VerifyConfig::default();
    let mut failed = 0;
    for &(id, _) in &CRITERIA {
        let o = run_criterion(id, &cfg);
        println!(
            "{} {:>2} {} ({:.2?})",
            if o.passed { "PASS" } else { "FAIL" },
            id,
            o.name,
            o.elapsed
        );
        for line in &o.details {
            println!("        {line}");
        }
        failed += usize::from(!o.passed);
    }
    let (ok, detail) = determinism();
    println!(
        "{} 12 determinism of verify artifacts",
        if ok { "PASS" } else { "FAIL" }
    );
    println!("        {detail}");
    failed += usize::from(!ok);
    if failed > 0 {
        eprintln!("{failed} criteria failed");
        std::process::exit(1);
    }
}
