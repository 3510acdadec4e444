use scg_core::verifier::{verify_theorem, DEFAULT_CAP};
fn main() {
    let n: usize = std::env::args().nth(1).unwrap().parse().unwrap();
    let t0 = std::time::Instant::now();
    let report = verify_theorem(n, DEFAULT_CAP).unwrap();
    println!("n={} elapsed={:?} all_match={}", n, t0.elapsed(), report.all_match);
    for c in &report.checks {
        if !c.matches {
            println!("MISMATCH {}{} expected={} got={:?} err={:?}",
                c.tag, c.i.map(|i| format!("(i={i})")).unwrap_or_default(),
                c.expected, c.scg_verdict, c.error);
        }
    }
    println!("checks: {} accepted_distinct={}", report.checks.len(), report.accepted_pairwise_distinct);
}
