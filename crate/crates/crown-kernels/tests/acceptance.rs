//! Runs every acceptance suite and prints one line per criterion.

use std::process::ExitCode;
use std::time::Instant;

use crown_kernels::verify::{run_all, SuiteConfig};

fn main() -> ExitCode {
    let verbose = std::env::args().any(|a| a == "--verbose" || a == "-v");
    let start = Instant::now();
    let reports = run_all(&SuiteConfig::default());
    let mut failed = 0;
    for r in &reports {
        let status = if r.passed() { "PASS" } else { "FAIL" };
        println!("[{status}] criterion {:>2} ({}): {} [{} checks]", r.criterion, r.suite, r.title, r.checks.len());
        if !r.passed() {
            failed += 1;
        }
        for c in r.checks.iter().filter(|c| verbose || !c.pass) {
            let note = c.note.as_deref().unwrap_or("");
            println!(
                "    {} {}: expected {:e} got {:e} tol {:e} ({:?}) {note}",
                if c.pass { "ok  " } else { "FAIL" },
                c.name,
                c.expected,
                c.got,
                c.tol,
                c.kind
            );
        }
    }
    println!("{} of {} criteria passed in {:.1?}", reports.len() - failed, reports.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
