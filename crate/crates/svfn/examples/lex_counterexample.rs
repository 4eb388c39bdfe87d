//! The singular value function of a projection is right-continuous in
//! its class argument, but not lower semicontinuous: a decreasing
//! sequence of classes g_n converging to a limit g can hold the value
//! at 0 all the way while the value at g itself jumps to 1.
//!
//! The witness lives over the ordered group Q (+) Z with the strict
//! lexicographic cone. For the projection class [p] = (1; 0):
//!   g_n = (1 + 1/n; 1)  gives  s_(g_n)(p) = 0   ([p] <= g_n), but
//!   g   = (1; 1)        gives  s_g(p)     = 1   ([p] is NOT <= g,
//! because equality in the first coordinate demands equality in the
//! second). Everything is exact rational arithmetic; no tolerances.
//!
//! Run with: cargo run --example lex_counterexample

use svfn::realize::{counterexample_lex, lex_sequence_converges};

fn main() {
    let report = counterexample_lex();

    println!("projection class [p] = {}\n", report.p_class.render());
    println!("{:>8}  {:>14}  {}", "n", "class g_n", "s_(g_n)(p)");
    for row in report.rows.iter().take(4) {
        println!("{:>8}  {:>14}  {}", row.n, row.class.render(), row.svf);
    }
    println!("{:>8}  {:>14}  ...", "...", "...");
    let last = report.rows.last().unwrap();
    println!("{:>8}  {:>14}  {}\n", last.n, last.class.render(), last.svf);

    println!(
        "{:>8}  {:>14}  {}",
        "limit",
        report.limit_class.render(),
        report.limit_svf
    );
    println!(
        "{:>8}  {:>14}  {}",
        "control",
        report.control_class.render(),
        report.control_svf
    );

    assert!(report.rows.iter().all(|r| r.svf == 0.0));
    assert_eq!(report.limit_svf, 1.0);
    assert_eq!(report.control_svf, 0.0);
    assert!(lex_sequence_converges(&report));
    println!("\ng_n decreases to the limit, s stays 0 along the way, then jumps to 1:");
    println!("liminf s_(g_n)(p) = 0 < 1 = s at the limit — not lower semicontinuous");
}
