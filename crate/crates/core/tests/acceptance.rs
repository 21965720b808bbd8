//! One pass/fail line per acceptance criterion. Every tolerance is exact
//! equality; time limits are pinned in the check registry.

use std::process::ExitCode;

use negcurve::golden::{run_suite, Ctx, Suite, CRITERIA};

fn main() -> ExitCode {
    let quiet = |_: &str| {};
    let ctx = Ctx::new(&quiet);
    let checks = run_suite(Suite::All, &ctx);
    let mut failed = 0;
    for (n, title) in CRITERIA {
        let mine: Vec<_> = checks.iter().filter(|c| c.criterion == n).collect();
        let pass = !mine.is_empty() && mine.iter().all(|c| c.pass);
        let secs: f64 = mine.iter().map(|c| c.elapsed_s).sum();
        println!("criterion {n:>2} {}: {title} ({} checks, {secs:.1} s)", if pass { "PASS" } else { "FAIL" }, mine.len());
        for c in &mine {
            let limit = c.time_limit_s.map_or(String::new(), |l| format!(", limit {l} s"));
            println!("    [{}] {}: {} ({:.1} s{limit})", if c.pass { "ok" } else { "FAIL" }, c.name, c.detail, c.elapsed_s);
        }
        failed += usize::from(!pass);
    }
    println!("{} of {} criteria pass", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
