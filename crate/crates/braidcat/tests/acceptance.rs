use braidcat::acceptance::{run_all, DEFAULT_SEED};

fn main() {
    let report = run_all(DEFAULT_SEED, true);
    let mut failed = 0;
    for c in &report.criteria {
        // budgets are enforced here, outside the timing-free JSON report
        let ok = c.pass && c.within_budget();
        let status = if ok { "PASS" } else { "FAIL" };
        let time = match c.budget {
            Some(b) if !c.within_budget() => format!(" [{:.2?} over budget {:.0?}]", c.elapsed, b),
            _ => format!(" [{:.2?}]", c.elapsed),
        };
        println!("{status} {:>2} {}: {}{time}", c.id, c.name, c.detail);
        failed += usize::from(!ok);
    }
    println!("acceptance: {}/{} passed", report.criteria.len() - failed, report.criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
