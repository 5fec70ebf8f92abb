//! Verify the shipped −4-class catalog against the screen and print the
//! per-row outcomes plus the orbit relations between rows.
//!
//! Run with `cargo run --example verify_catalog`.

use neg4lat::spheres::{builtin_table, verify_table, RowStatus};

fn main() {
    let entries = builtin_table();
    let report = verify_table(&entries, 6);

    for r in &report.rows {
        let outcome = r
            .outcome
            .map(|o| o.as_str())
            .unwrap_or("(screen not run)");
        let mark = match r.status {
            RowStatus::Pass => "ok    ",
            RowStatus::Review => "REVIEW",
            RowStatus::Fail => "FAIL  ",
        };
        println!(
            "{mark} k={:<2} {}  ->  {outcome}{}",
            r.entry.rel_min_k,
            r.entry.xi,
            if r.detail.is_empty() {
                String::new()
            } else {
                format!("   [{}]", r.detail)
            }
        );
    }

    println!(
        "\n{} passed, {} for review, {} failed",
        report.passed, report.reviewed, report.failed
    );

    println!("\norbit relations between rows (reduced forms coincide):");
    for f in &report.findings {
        let (i, j) = f.rows;
        println!(
            "    {} ~ {}   over k = {}{}",
            entries[i].xi,
            entries[j].xi,
            f.common_k,
            if f.uses_global_sign {
                "  (up to global sign)"
            } else {
                ""
            }
        );
    }
}
