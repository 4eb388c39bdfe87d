//! The singular value function of an element of M_2 + M_3, tabulated
//! over every class g = (g_1, g_2) in the box 0..=2 x 0..=3.
//!
//! The element is diagonal with entries (5, 1) in the first block and
//! (4, 3, 2) in the second, so every table value is a whole number and
//! easy to follow: s_g(a) picks, in each block i, the singular value
//! of the block at index g_i (counting from the largest), and takes
//! the maximum over the blocks.
//!
//! Run with: cargo run --example svf_table

use svfn::algebra::{AlgebraElement, MultiMatrixAlgebra};
use svfn::k0::K0Class;
use svfn::svf::{svf, svf_table};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let algebra = MultiMatrixAlgebra::new(&[2, 3])?;
    let a = AlgebraElement::from_real_diags(&algebra, &[vec![5.0, 1.0], vec![4.0, 3.0, 2.0]])?;

    let table = svf_table(&a)?;
    println!("block sizes {:?}, element diag(5,1) + diag(4,3,2)", table.block_sizes());
    println!("{:>8}  {}", "class", "value");
    for (coords, value) in table.rows() {
        let class = K0Class::simplicial_from_usizes(&coords);
        println!("{:>8}  {value}", class.render());
    }

    // Spot checks, all exact for this diagonal element:
    // - s_(0,0) is the norm, the largest singular value anywhere;
    // - s_(1,1) drops one value in each block, leaving max(1, 3);
    // - s_(2,0) empties the first block, leaving the second's norm;
    // - s_(2,3) empties both blocks entirely.
    for (coords, expect) in [([0, 0], 5.0), ([1, 1], 3.0), ([2, 0], 4.0), ([2, 3], 0.0)] {
        let g = K0Class::simplicial_from_usizes(&coords);
        let v = svf(&a, &g)?;
        assert_eq!(v, expect);
        println!("s_{}(a) = {v}", g.render());
    }
    Ok(())
}
