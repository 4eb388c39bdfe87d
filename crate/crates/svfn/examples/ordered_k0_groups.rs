//! Tour of the four exact ordered K0 groups: Z^k with componentwise
//! order (finite-dimensional algebras), Z[1/2] (the dyadic tower),
//! Q (its rational cousin), and Q (+) Z ordered lexicographically.
//! All arithmetic and order decisions are exact rational arithmetic;
//! classes round-trip through their text form.
//!
//! Run with: cargo run --example ordered_k0_groups

use svfn::k0::{
    in_dimension_range, is_infinitesimal, is_infinitesimal_by_definition, GroupVariant, K0Class,
    OrderedGroupSpec,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Z^2, the K0 group of M_3 + M_2: order is componentwise, so
    // classes can be incomparable in both directions.
    let a = K0Class::simplicial_from_i64(&[1, 2]);
    let b = K0Class::simplicial_from_i64(&[2, 1]);
    println!("simplicial {} vs {}:", a.render(), b.render());
    println!("  a <= b: {}, b <= a: {} (incomparable)", a.leq(&b)?, b.leq(&a)?);
    println!(
        "  {} inside the dimension range of [3, 2]: {}",
        a.render(),
        in_dimension_range(&[3, 2], &a)?
    );

    // Z[1/2]: denominators must be powers of two; order is the real
    // order. 5/8 sits between 1/2 and 3/4.
    let half = K0Class::dyadic(1, 1);
    let five_eighths = K0Class::dyadic(5, 3);
    println!("\ndyadic {} <= {}: {}", half.render(), five_eighths.render(), half.leq(&five_eighths)?);
    let parsed = K0Class::parse("5/8", &GroupVariant::Dyadic)?;
    assert_eq!(parsed, five_eighths);
    println!("  \"5/8\" parses back to {}", parsed.render());
    assert!(K0Class::parse("1/3", &GroupVariant::Dyadic).is_err());
    println!("  \"1/3\" is rejected: 3 is not a power of two");

    // Q: any denominator goes.
    let third = K0Class::parse("1/3", &GroupVariant::Rational)?;
    println!("\nrational {} + {} = {}", third.render(), third.render(), third.add(&third)?.render());

    // Q (+) Z with the lexicographic cone: (u, v) is positive when
    // u > 0, or u = 0 and v = 0. The second coordinate is crushed by
    // the first, which makes (0; 1) an infinitesimal: every positive
    // multiple of it stays below every positive fraction of the unit.
    let spec = OrderedGroupSpec::lex_pair();
    let wisp = K0Class::lex(0, 1, 1);
    let tiny_but_real = K0Class::parse("(1/1000; 0)", &GroupVariant::LexPair)?;
    println!("\nlex pair {}:", wisp.render());
    println!("  infinitesimal (closed form): {}", is_infinitesimal(&spec, &wisp)?);
    println!(
        "  infinitesimal (definition, m,n <= 50): {}",
        is_infinitesimal_by_definition(&spec, &wisp, 50)?
    );
    println!("  {} infinitesimal: {}", tiny_but_real.render(), is_infinitesimal(&spec, &tiny_but_real)?);
    println!(
        "  100 * {} <= {}: {}",
        wisp.render(),
        tiny_but_real.render(),
        wisp.scale(100).leq(&tiny_but_real)?
    );
    Ok(())
}
