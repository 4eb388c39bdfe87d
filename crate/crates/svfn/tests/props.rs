//! Property tests for the structural invariants: monotonicity and
//! Lipschitz behaviour of the singular value function, exactness of
//! the ordered-group layer, and stability of the step-function
//! machinery under refinement.

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use svfn::algebra::{element_norm, random_element, random_projection, trial_rng, MultiMatrixAlgebra};
use svfn::k0::{GroupVariant, K0Class};
use svfn::realize::{tower_svf, TowerElement};
use svfn::stepfn::{step_from_partition, sup_distance, TargetFunction};
use svfn::svf::{projection_svf, svf, svf_table};

fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Random block sizes: 1..=3 blocks of side 1..=4.
fn sizes_strategy() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1usize..=4, 1..=3)
}

/// Simplicial coordinates dominated by the unit (one per block).
fn class_under_unit(sizes: &[usize], picks: &[usize]) -> K0Class {
    let coords: Vec<usize> = sizes
        .iter()
        .zip(picks)
        .map(|(&n, &p)| p % (n + 1))
        .collect();
    K0Class::simplicial_from_usizes(&coords)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Growing the class never grows the value.
    #[test]
    fn svf_is_antitone_in_the_class(
        sizes in sizes_strategy(),
        seed in 0u64..1_000_000,
        picks in prop::collection::vec(0usize..16, 3),
        bumps in prop::collection::vec(0usize..2, 3),
    ) {
        let algebra = MultiMatrixAlgebra::new(&sizes).unwrap();
        let mut rng = trial_rng(seed, 0);
        let a = random_element(&algebra, &mut rng).unwrap();
        let g = class_under_unit(&sizes, &picks);
        let g_coords = g.simplicial_coords().unwrap();
        let h_coords: Vec<usize> = g_coords
            .iter()
            .zip(&bumps)
            .map(|(&c, &b)| c + b)
            .collect();
        let h = K0Class::simplicial_from_usizes(&h_coords);
        let s_g = svf(&a, &g).unwrap();
        let s_h = svf(&a, &h).unwrap();
        prop_assert!(s_h <= s_g + 1e-12, "s_h={s_h} s_g={s_g}");
    }

    /// |s_g(a) - s_g(b)| <= ||a - b||.
    #[test]
    fn svf_is_lipschitz_in_the_element(
        sizes in sizes_strategy(),
        seed in 0u64..1_000_000,
        picks in prop::collection::vec(0usize..16, 3),
    ) {
        let algebra = MultiMatrixAlgebra::new(&sizes).unwrap();
        let mut rng = trial_rng(seed, 1);
        let a = random_element(&algebra, &mut rng).unwrap();
        let b = random_element(&algebra, &mut rng).unwrap();
        let g = class_under_unit(&sizes, &picks);
        let s_a = svf(&a, &g).unwrap();
        let s_b = svf(&b, &g).unwrap();
        let gap = element_norm(&a.sub(&b).unwrap()).unwrap();
        prop_assert!((s_a - s_b).abs() <= gap + 1e-9,
            "|{s_a} - {s_b}| > {gap}");
    }

    /// s_g(alpha a) = |alpha| s_g(a).
    #[test]
    fn svf_is_absolutely_homogeneous(
        sizes in sizes_strategy(),
        seed in 0u64..1_000_000,
        picks in prop::collection::vec(0usize..16, 3),
        alpha in -3.0f64..3.0,
    ) {
        let algebra = MultiMatrixAlgebra::new(&sizes).unwrap();
        let mut rng = trial_rng(seed, 2);
        let a = random_element(&algebra, &mut rng).unwrap();
        let g = class_under_unit(&sizes, &picks);
        let lhs = svf(&a.scale(alpha.into()), &g).unwrap();
        let rhs = alpha.abs() * svf(&a, &g).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs.max(1.0));
    }

    /// The projection indicator is exactly 0 or 1 and mirrors the order.
    #[test]
    fn projection_values_are_exactly_zero_or_one(
        sizes in sizes_strategy(),
        seed in 0u64..1_000_000,
        rank_picks in prop::collection::vec(0usize..16, 3),
        class_picks in prop::collection::vec(0usize..16, 3),
    ) {
        let algebra = MultiMatrixAlgebra::new(&sizes).unwrap();
        let r = class_under_unit(&sizes, &rank_picks);
        let p = random_projection(&algebra, &r, seed).unwrap();
        let g = class_under_unit(&sizes, &class_picks);
        let value = projection_svf(&p, &g).unwrap();
        let expected = if r.leq(&g).unwrap() { 0.0 } else { 1.0 };
        prop_assert_eq!(value, expected);
    }

    /// The full table has exact corners and is antitone along every axis.
    #[test]
    fn table_corners_and_axis_monotonicity(
        sizes in prop::collection::vec(1usize..=3, 1..=2),
        seed in 0u64..1_000_000,
    ) {
        let algebra = MultiMatrixAlgebra::new(&sizes).unwrap();
        let mut rng = trial_rng(seed, 3);
        let a = random_element(&algebra, &mut rng).unwrap();
        let table = svf_table(&a).unwrap();
        let zero = vec![0usize; sizes.len()];
        let full: Vec<usize> = sizes.clone();
        prop_assert_eq!(
            table.get(&zero).unwrap(),
            element_norm(&a).unwrap()
        );
        prop_assert_eq!(table.get(&full).unwrap(), 0.0);
        for (coords, value) in table.rows() {
            for axis in 0..coords.len() {
                let mut up = coords.clone();
                if up[axis] < sizes[axis] {
                    up[axis] += 1;
                    let next = table.get(&up).unwrap();
                    prop_assert!(next <= value, "axis {axis}: {next} > {value}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    /// render -> parse is the identity in every group variant.
    #[test]
    fn classes_round_trip_through_text(
        coords in prop::collection::vec(-20i64..20, 1..=4),
        m in -64i64..64,
        e in 0u32..6,
        p in -50i64..50,
        q in 1i64..50,
        v in -9i64..9,
    ) {
        let cases = vec![
            (
                K0Class::simplicial_from_i64(&coords),
                GroupVariant::Simplicial(coords.len()),
            ),
            (K0Class::dyadic(m, e), GroupVariant::Dyadic),
            (K0Class::rational(p, q), GroupVariant::Rational),
            (K0Class::lex(p, q, v), GroupVariant::LexPair),
        ];
        for (class, variant) in cases {
            let text = class.render();
            let back = K0Class::parse(&text, &variant).unwrap();
            prop_assert_eq!(back, class, "text {}", text);
        }
    }

    /// The positive cone is closed under addition: a<=b and c<=d imply
    /// a+c <= b+d, in every variant.
    #[test]
    fn order_respects_addition(
        m1 in -32i64..32, m2 in -32i64..32, m3 in -32i64..32, m4 in -32i64..32,
        e in 0u32..5,
        v1 in -4i64..4, v2 in -4i64..4,
    ) {
        // Dyadic.
        let (a, b) = (K0Class::dyadic(m1.min(m2), e), K0Class::dyadic(m1.max(m2), e));
        let (c, d) = (K0Class::dyadic(m3.min(m4), e), K0Class::dyadic(m3.max(m4), e));
        prop_assert!(a.add(&c).unwrap().leq(&b.add(&d).unwrap()).unwrap());
        // Lex pairs: compare (min; v) <= (max; v) pairs.
        let (a, b) = (K0Class::lex(m1.min(m2), 7, v1), K0Class::lex(m1.max(m2), 7, v1));
        let (c, d) = (K0Class::lex(m3.min(m4), 5, v2), K0Class::lex(m3.max(m4), 5, v2));
        prop_assert!(a.leq(&b).unwrap() && c.leq(&d).unwrap());
        prop_assert!(a.add(&c).unwrap().leq(&b.add(&d).unwrap()).unwrap());
    }

    /// Reflexive and antisymmetric in every variant.
    #[test]
    fn order_is_reflexive_and_antisymmetric(
        m in -64i64..64, e in 0u32..6,
        p in -50i64..50, q in 1i64..50, v in -9i64..9,
    ) {
        for class in [
            K0Class::dyadic(m, e),
            K0Class::rational(p, q),
            K0Class::lex(p, q, v),
        ] {
            prop_assert!(class.leq(&class).unwrap());
        }
        let x = K0Class::lex(p, q, v);
        let y = K0Class::lex(p, q, v.wrapping_add(1));
        // Same rational part, different integer part: incomparable.
        prop_assert!(!x.leq(&y).unwrap());
        prop_assert!(!y.leq(&x).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Inserting one more cut point never increases the step distance.
    #[test]
    fn step_distance_shrinks_under_refinement(
        cuts in prop::collection::btree_set(1u32..64, 1..6),
        extra in 1u32..64,
    ) {
        let f = TargetFunction::one_minus_t();
        let mut partition: Vec<BigRational> = vec![rat(0, 1)];
        partition.extend(cuts.iter().map(|&c| rat(c as i64, 64)));
        partition.push(rat(1, 1));
        partition.dedup();
        let coarse = step_from_partition(&f, &partition).unwrap();
        let d_coarse = sup_distance(&coarse, &f).unwrap();

        let mut refined = partition.clone();
        refined.push(rat(extra as i64, 64));
        refined.sort();
        refined.dedup();
        let fine = step_from_partition(&f, &refined).unwrap();
        let d_fine = sup_distance(&fine, &f).unwrap();
        prop_assert!(d_fine <= d_coarse + 1e-15, "{d_fine} > {d_coarse}");
    }

    /// Tower singular value functions are antitone in the class.
    #[test]
    fn tower_svf_is_antitone(
        raw_values in prop::collection::vec(0.01f64..10.0, 1..5),
        raw_masses in prop::collection::vec(1u32..8, 1..5),
        g1 in 0u32..64,
        g2 in 0u32..64,
    ) {
        let mut values = raw_values.clone();
        values.sort_by(|a, b| b.partial_cmp(a).unwrap());
        values.dedup();
        let total: u32 = raw_masses.iter().take(values.len()).sum();
        let groups: Vec<(f64, BigRational)> = values
            .iter()
            .zip(&raw_masses)
            .map(|(&v, &m)| (v, rat(m as i64, 32.max(total as i64 * 8))))
            .collect();
        let stage = 12;
        // Scale masses into a power-of-two denominator within stage 12.
        let groups: Vec<(f64, BigRational)> = groups
            .iter()
            .map(|(v, m)| {
                let scaled = m * rat(1, 1);
                let denom = 1i64 << stage;
                let num = (scaled * rat(denom, 1)).floor().to_integer();
                (*v, BigRational::new(num.max(BigInt::from(1)), BigInt::from(denom)))
            })
            .collect();
        let total: BigRational = groups.iter().map(|(_, m)| m.clone()).sum();
        prop_assume!(total <= rat(1, 1));
        let a = TowerElement::new(stage, groups).unwrap();
        let lo = g1.min(g2);
        let hi = g1.max(g2);
        let s_lo = tower_svf(&a, &K0Class::dyadic(lo as i64, 6)).unwrap();
        let s_hi = tower_svf(&a, &K0Class::dyadic(hi as i64, 6)).unwrap();
        prop_assert!(s_hi <= s_lo);
    }
}
