//! Run the randomized property battery: fourteen checks covering the
//! algebraic laws of the singular value function (monotonicity in both
//! arguments, triangle-style inequalities, unitary invariance, the
//! a*a vs aa* symmetry, two Ky Fan style sum bounds, and more), each
//! replayed over freshly seeded random elements.
//!
//! Every check reports its worst observed slack: how far the tested
//! inequality was from being violated, after allowing for floating
//! point noise. A passing battery has every slack at rounding scale.
//!
//! Run with: cargo run --example property_battery

use svfn::svf::property_battery;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let trials = 200;
    let seed = 7;
    let report = property_battery(trials, seed, None)?;

    println!("{:>3}  {:<44} {:>7} {:>9} {:>12}", "id", "check", "trials", "failures", "worst slack");
    for check in &report.checks {
        println!(
            "{:>3}  {:<44} {:>7} {:>9} {:>12.3e}",
            check.id, check.name, check.trials, check.failures, check.worst_slack
        );
    }
    println!();
    if report.all_passed() {
        println!(
            "all {} checks passed (trials={}, seed={})",
            report.checks.len(),
            report.trials,
            report.seed
        );
    } else {
        println!("{} checks FAILED", report.failed_count());
        std::process::exit(1);
    }
    Ok(())
}
