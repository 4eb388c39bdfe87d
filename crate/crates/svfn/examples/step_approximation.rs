//! Approximate a decreasing right-continuous target function by step
//! functions over nested dyadic partitions, halving the sup distance
//! at every level.
//!
//! Each level-n step function takes the target's values at the left
//! endpoints of a partition with exact dyadic breakpoints; refining
//! the partition keeps earlier breakpoints (nesting) and tightens the
//! sup distance below C / 2^n, where C = f(0).
//!
//! Run with: cargo run --example step_approximation

use num_rational::BigRational;
use svfn::stepfn::{
    approx_sequence, step_from_partition, sup_distance, ScalarDomain, StepFunction, TargetFunction,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn show(name: &str, f: &TargetFunction, c: f64) -> Result<(), Box<dyn std::error::Error>> {
    println!("target: {name}  (C = {c})");
    println!("{:>5} {:>12} {:>14} {:>12}", "level", "breakpoints", "sup distance", "bound C/2^n");
    let levels = approx_sequence(f, c, 6, &rat(1, 1))?;
    let mut previous: Vec<BigRational> = Vec::new();
    for (n, partition) in levels.iter().enumerate() {
        // Nesting: every earlier breakpoint survives refinement.
        assert!(previous.iter().all(|x| partition.contains(x)));
        let step = step_from_partition(f, partition)?;
        let d = sup_distance(&step, f)?;
        let bound = c / (1u64 << n) as f64;
        assert!(d < bound);
        println!("{n:>5} {:>12} {d:>14.6e} {bound:>12.6e}", partition.len());
        previous = partition.clone();
    }
    println!();
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // A continuous target: the ramp 1 - t on [0, 1].
    show("1 - t on [0, 1]", &TargetFunction::one_minus_t(), 1.0)?;

    // A target that is itself a step function, with jumps at 3/8 and
    // 3/4. Once the partition contains the jump points the distance
    // collapses to exactly zero.
    let two_jump = StepFunction::new(vec![rat(0, 1), rat(3, 8), rat(3, 4)], vec![1.0, 0.25, 0.0])?;
    show(
        "two-jump step (1 on [0,3/8), 1/4 on [3/8,3/4), 0 beyond)",
        &TargetFunction::from_step(&two_jump, ScalarDomain::Dyadic)?,
        1.0,
    )?;
    Ok(())
}
