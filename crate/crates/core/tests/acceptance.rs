//! Acceptance battery: one pass/fail line per criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Duration;

use rainbow_star::verify::{timed, Case, Criterion, Status, DEFAULT_SEED};

fn seed() -> u64 {
    std::env::var("ACCEPTANCE_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEED)
}

/// Runtime limits for criteria that state one.
fn time_limit(number: u8) -> Option<Duration> {
    match number {
        1 => Some(Duration::from_secs(60)),
        7 => Some(Duration::from_secs(5)),
        _ => None,
    }
}

fn main() -> ExitCode {
    // libtest flags such as --nocapture may be passed; none apply here
    let seed = seed();
    let mut groups: Vec<(u8, Vec<&'static str>, Vec<Case>, Duration)> = Vec::new();
    for criterion in Criterion::ALL {
        let (cases, elapsed) = timed(criterion, seed);
        match groups.iter_mut().find(|g| g.0 == criterion.number()) {
            Some(g) => {
                g.1.push(criterion.title());
                g.2.extend(cases);
                g.3 += elapsed;
            }
            None => groups.push((criterion.number(), vec![criterion.title()], cases, elapsed)),
        }
    }
    let mut all_ok = true;
    for (number, titles, cases, elapsed) in &groups {
        let fails: Vec<&Case> = cases.iter().filter(|c| c.status == Status::Fail).collect();
        let discrepancies = cases.iter().filter(|c| c.status == Status::Discrepancy).count();
        let slow = time_limit(*number).is_some_and(|limit| *elapsed > limit);
        let ok = fails.is_empty() && !slow && !cases.is_empty();
        all_ok &= ok;
        println!(
            "criterion {number} [{}]: {} ({} cases, {} fail, {} discrepancy, {:.2}s{})",
            titles.join(" + "),
            if ok { "PASS" } else { "FAIL" },
            cases.len(),
            fails.len(),
            discrepancies,
            elapsed.as_secs_f64(),
            if slow { ", over time limit" } else { "" },
        );
        for f in fails.iter().take(5) {
            println!("    fail: {} {:?} expected {} got {} {}", f.check, f.params, f.expected.value, f.actual, f.note);
        }
        if *number == 5 {
            for d in cases.iter().filter(|c| c.check == "sharpness_adjudication") {
                println!("    {}: {:?} -> {} {}", d.check, d.status, d.actual, d.note);
            }
        }
    }
    println!("seed {seed}: {}", if all_ok { "all criteria pass" } else { "some criteria FAIL" });
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
