//! Evaluate the CRY conjectures up to a given size (default 3; pass 4 for the
//! slow type B and C Ehrhart fits).

use flowpoly::families::conjecture_report;

fn main() -> flowpoly::Result<()> {
    let n_max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let report = conjecture_report(n_max)?;
    for r in &report.rows {
        println!(
            "{} n={} {:<40} {:>8}  conjectured {:>8}  {:?}",
            r.family,
            r.n,
            r.quantity,
            r.value,
            r.conjectured.as_deref().unwrap_or("-"),
            r.matches
        );
    }
    for f in &report.findings {
        println!("{f}");
    }
    Ok(())
}
