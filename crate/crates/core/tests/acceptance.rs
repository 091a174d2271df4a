//! Runs every acceptance suite in order and prints one PASS/FAIL line per
//! criterion. Built without the libtest harness so the lines always show.

use std::io::Write;
use std::process::ExitCode;

use rcakit::verify::{run_suite, Options, SUITES};

fn main() -> ExitCode {
    let opts = Options::default();
    let mut failed = Vec::new();
    let mut out = std::io::stdout();
    for (k, &name) in SUITES.iter().enumerate() {
        match run_suite(name, &opts) {
            Ok(r) => {
                let _ = writeln!(out, "[{:>2}] {}", k + 1, r.line());
                if !r.passed {
                    let _ = writeln!(out, "     {}", r.detail);
                    failed.push(name);
                }
            }
            Err(e) => {
                let _ = writeln!(out, "[{:>2}] FAIL {name} (error: {e})", k + 1);
                failed.push(name);
            }
        }
        let _ = out.flush();
    }
    if failed.is_empty() {
        let _ = writeln!(out, "acceptance: all {} criteria passed", SUITES.len());
        ExitCode::SUCCESS
    } else {
        let _ = writeln!(out, "acceptance: failing criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
