//! For a projection p the singular value function collapses to an
//! order indicator: s_g(p) = 0 when [p] <= g in the ordered K0 group,
//! and 1 otherwise. No intermediate values ever appear.
//!
//! Run with: cargo run --example projection_indicator

use svfn::algebra::{random_projection, rank_vector, MultiMatrixAlgebra};
use svfn::k0::K0Class;
use svfn::svf::{projection_svf, svf_projection_indicator};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let algebra = MultiMatrixAlgebra::new(&[3, 2])?;
    let rank = K0Class::simplicial_from_usizes(&[2, 1]);
    // A rank-(2,1) projection conjugated by a random unitary, so the
    // matrix itself is dense even though its class is simple.
    let p = random_projection(&algebra, &rank, 99)?;
    println!("projection with class [p] = {}", rank.render());
    println!("numerical value on the left, exact order indicator on the right\n");

    println!("{:>8}  {:>7}  {:>9}  {}", "g", "s_g(p)", "indicator", "[p] <= g?");
    for g1 in 0..=3usize {
        for g2 in 0..=2usize {
            let g = K0Class::simplicial_from_usizes(&[g1, g2]);
            // Dense route: measured on the matrix itself.
            let measured = projection_svf(&p, &g)?;
            // Exact route: pure order arithmetic on the classes.
            let indicator = svf_projection_indicator(&rank_vector(&p)?, &g)?;
            assert_eq!(measured, indicator, "routes must agree exactly");
            println!(
                "{:>8}  {measured:>7}  {indicator:>9}  {}",
                g.render(),
                rank.leq(&g)?
            );
        }
    }
    println!("\nboth routes agree on every class, with values exactly 0 or 1");
    Ok(())
}
