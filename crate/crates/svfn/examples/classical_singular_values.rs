//! On a single matrix block, the singular value function evaluated at
//! the rank-j class reproduces the classical singular value ladder:
//! s_j(a) is the (j+1)-th largest singular value, and s_n(a) = 0.
//!
//! Run with: cargo run --example classical_singular_values

use svfn::algebra::{block_singular_values, random_element, trial_rng, MultiMatrixAlgebra};
use svfn::k0::K0Class;
use svfn::svf::svf;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let algebra = MultiMatrixAlgebra::new(&[5])?;
    let a = random_element(&algebra, &mut trial_rng(2024, 0))?;

    // The classical ladder, straight from the decomposition.
    let ladder = &block_singular_values(&a)?[0];

    println!("5x5 random complex matrix");
    println!("{:>4}  {:>22}  {:>22}", "j", "svf at rank j", "sigma_(j+1) from svd");
    for j in 0..=5usize {
        let value = svf(&a, &K0Class::simplicial_from_usizes(&[j]))?;
        let classical = ladder.get(j).copied().unwrap_or(0.0);
        println!("{j:>4}  {value:>22.16}  {classical:>22.16}");
        assert!((value - classical).abs() <= 1e-12 * classical.max(1.0));
    }
    println!("\nall ranks agree with the classical singular values");
    Ok(())
}
