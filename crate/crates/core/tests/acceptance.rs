//! Acceptance suite: one line per criterion, nonzero exit if a gating one fails.

use std::path::Path;
use std::process::ExitCode;

use gyro_core::catalog::Catalog;
use gyro_core::regress::{checks, run_check};

fn main() -> ExitCode {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../catalog");
    let catalog = match Catalog::with_dir(&dir) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("catalog: {e}");
            return ExitCode::FAILURE;
        }
    };
    let only: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    for (n, (id, name, gating)) in checks().enumerate() {
        if !only.is_empty() && !only.iter().any(|o| o == id || o == name) {
            continue;
        }
        let r = run_check(&catalog, id).expect("listed check");
        let verdict = if r.passed { "PASS" } else { "FAIL" };
        let tag = if gating { "" } else { " (not gating)" };
        println!("criterion {:>2} [{id}] {name}: {verdict}{tag} ({} ms)", n + 1, r.elapsed_ms);
        for a in &r.annotations {
            println!("    {a}");
        }
        if !r.passed {
            println!("    {}", r.detail);
            if gating {
                failed.push(id);
            }
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed: {}", failed.join(", "));
        ExitCode::FAILURE
    }
}
