//! Realization of decreasing functions as singular value functions in
//! the dyadic tower M_2 -> M_4 -> M_8 -> ... with unital embeddings.
//!
//! A [`TowerElement`] is a positive diagonal element presented by its
//! decreasing rearrangement: value groups with exact dyadic trace
//! masses, decreasing along the canonical diagonal flag. The unital
//! embedding into a deeper stage repeats diagonal entries in place, so
//! the presentation is stage independent and all arithmetic on masses
//! is exact.
//!
//! Ordered K0 of the limit is the dyadic rationals with unit 1; the
//! singular value function of a tower element at a class g drops to
//! the first value group whose preceding cumulative mass fits under g.
//! The realization engine turns a decreasing, right-continuous,
//! vanishing target f with f(1) = 0 into a sequence of tower elements
//! whose singular value functions converge to f at geometric rate,
//! with geometrically small increments — so the sequence converges in
//! the limit algebra and its limit has singular value function f.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, MultiMatrixAlgebra};
use crate::k0::{dyadic_exponent, K0Class, K0Error};
use crate::stepfn::{
    approx_sequence, step_from_partition, sup_distance, ScalarDomain, StepFnError, StepFunction,
    TargetFunction,
};

#[derive(Debug, Error)]
pub enum RealizeError {
    #[error(transparent)]
    StepFn(#[from] StepFnError),
    #[error(transparent)]
    K0(#[from] K0Error),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("realization requires the dyadic scalar domain")]
    NotDyadicDomain,
    #[error("realization requires f(1) = 0, got {at_one} (the model is unital, classes live in [0,1])")]
    BadNormalization { at_one: f64 },
    #[error("bad trace mass {0}: masses must be positive dyadics at the declared stage with total at most 1")]
    BadMass(String),
    #[error("bad value list: {0}")]
    BadValues(String),
    #[error("stage {stage} exceeds the materialization limit {max} (matrix side 2^stage)")]
    StageTooLarge { stage: u32, max: u32 },
    #[error("class {0} is not a nonnegative dyadic")]
    BadClass(String),
    #[error(
        "fine element does not refine the coarse one at trace coordinate {at}: coarse value {coarse}, fine value {fine}"
    )]
    NotRefinement { at: String, coarse: f64, fine: f64 },
}

/// Largest stage the dense materialization accepts (matrix side 4096).
pub const MAX_MATERIALIZE_STAGE: u32 = 12;

/// Positive diagonal element of the dyadic tower in decreasing
/// rearrangement: strictly decreasing positive values, each carrying a
/// positive dyadic trace mass resolvable at the declared stage.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerElement {
    stage: u32,
    /// (value, mass) groups, values strictly decreasing, masses > 0,
    /// total mass at most 1. Trailing zero values are not stored.
    groups: Vec<(f64, BigRational)>,
}

impl TowerElement {
    /// Build from (value, mass) groups listed in decreasing value
    /// order. Adjacent equal values merge; zero values are dropped.
    pub fn new(stage: u32, groups: Vec<(f64, BigRational)>) -> Result<Self, RealizeError> {
        let scale = BigRational::from_integer(BigInt::from(1) << stage);
        let mut merged: Vec<(f64, BigRational)> = Vec::with_capacity(groups.len());
        let mut total = BigRational::zero();
        for (value, mass) in groups {
            if !value.is_finite() || value < 0.0 {
                return Err(RealizeError::BadValues(format!(
                    "value {value} is not a finite nonnegative number"
                )));
            }
            if !mass.is_positive() {
                return Err(RealizeError::BadMass(mass.to_string()));
            }
            if !(&mass * &scale).is_integer() {
                return Err(RealizeError::BadMass(format!(
                    "{mass} is not resolvable at stage {stage}"
                )));
            }
            total += &mass;
            if value == 0.0 {
                continue;
            }
            match merged.last_mut() {
                Some((v, m)) if *v == value => *m += mass,
                Some((v, _)) if *v < value => {
                    return Err(RealizeError::BadValues(
                        "values must be listed in decreasing order".into(),
                    ))
                }
                _ => merged.push((value, mass)),
            }
        }
        if total > BigRational::one() {
            return Err(RealizeError::BadMass(format!(
                "total mass {total} exceeds 1"
            )));
        }
        Ok(TowerElement {
            stage,
            groups: merged,
        })
    }

    /// The element sum_i f(x_{i-1}) p_i over a partition
    /// 0 = x_0 < ... < x_m of [0, 1], where p_i is the trace-interval
    /// projection of mass x_i - x_{i-1}.
    pub fn from_step_over_partition(
        f: &TargetFunction,
        partition: &[BigRational],
    ) -> Result<Self, RealizeError> {
        if partition.is_empty() || !partition[0].is_zero() {
            return Err(RealizeError::BadMass(
                "partition must start at 0".to_string(),
            ));
        }
        let mut stage = 0u32;
        for x in partition {
            if x > &BigRational::one() {
                return Err(RealizeError::BadMass(format!("{x} lies beyond 1")));
            }
            let e = dyadic_exponent(x)
                .ok_or_else(|| RealizeError::BadMass(format!("{x} is not dyadic")))?;
            stage = stage.max(e);
        }
        let mut groups = Vec::with_capacity(partition.len().saturating_sub(1));
        for w in partition.windows(2) {
            if w[0] >= w[1] {
                return Err(RealizeError::BadMass(
                    "partition must be strictly increasing".to_string(),
                ));
            }
            let value = f.eval(&w[0])?;
            groups.push((value, &w[1] - &w[0]));
        }
        TowerElement::new(stage, groups)
    }

    /// Zero element at stage 0.
    pub fn zero() -> Self {
        TowerElement {
            stage: 0,
            groups: Vec::new(),
        }
    }

    pub fn stage(&self) -> u32 {
        self.stage
    }

    pub fn groups(&self) -> &[(f64, BigRational)] {
        &self.groups
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    /// Operator norm: the top value.
    pub fn norm(&self) -> f64 {
        self.groups.first().map_or(0.0, |(v, _)| *v)
    }

    /// Cumulative trace masses 0 = c_0 < c_1 < ... < c_m (m = number of
    /// value groups).
    pub fn cumulative_masses(&self) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.groups.len() + 1);
        out.push(BigRational::zero());
        let mut acc = BigRational::zero();
        for (_, m) in &self.groups {
            acc += m;
            out.push(acc.clone());
        }
        out
    }

    /// Value of the decreasing rearrangement at trace coordinate t in
    /// [0, 1): the value of the group whose mass interval contains t,
    /// and 0 at or beyond the total mass.
    pub fn value_at(&self, t: &BigRational) -> f64 {
        debug_assert!(!t.is_negative());
        let mut acc = BigRational::zero();
        for (v, m) in &self.groups {
            acc += m;
            if t < &acc {
                return *v;
            }
        }
        0.0
    }

    /// The decreasing rearrangement as a step function of the trace
    /// coordinate; breakpoints are the cumulative masses. This is the
    /// exact singular value function g |-> s_g of the element, read as
    /// a function on [0, 1].
    pub fn svf_step(&self) -> StepFunction {
        let breakpoints = self.cumulative_masses();
        let mut values: Vec<f64> = self.groups.iter().map(|(v, _)| *v).collect();
        values.push(0.0);
        StepFunction::new(breakpoints, values).expect("tower groups are a valid step function")
    }

    /// Dense matrix form in M_{2^stage}: the diagonal with each value
    /// repeated mass * 2^stage times, padded with zeros.
    pub fn materialize(&self) -> Result<AlgebraElement, RealizeError> {
        if self.stage > MAX_MATERIALIZE_STAGE {
            return Err(RealizeError::StageTooLarge {
                stage: self.stage,
                max: MAX_MATERIALIZE_STAGE,
            });
        }
        let side = 1usize << self.stage;
        let scale = BigRational::from_integer(BigInt::from(side as i64));
        let mut diag = Vec::with_capacity(side);
        for (value, mass) in &self.groups {
            let count = (mass * &scale)
                .to_integer()
                .to_usize()
                .expect("mass fits the stage");
            diag.extend(std::iter::repeat(*value).take(count));
        }
        diag.resize(side, 0.0);
        let algebra = MultiMatrixAlgebra::new(&[side])?;
        Ok(AlgebraElement::from_real_diags(&algebra, &[diag])?)
    }
}

fn dyadic_class_value(g: &K0Class) -> Result<BigRational, RealizeError> {
    match g {
        K0Class::Dyadic(r) if !r.is_negative() => Ok(r.clone()),
        _ => Err(RealizeError::BadClass(g.render())),
    }
}

/// Singular value function of a tower element at a dyadic class
/// g >= 0: the first value whose preceding cumulative mass fits under
/// g, and 0 once the full mass does. Exact in the masses.
pub fn tower_svf(a: &TowerElement, g: &K0Class) -> Result<f64, RealizeError> {
    let r = dyadic_class_value(g)?;
    let mut acc = BigRational::zero();
    for (v, m) in &a.groups {
        if acc > r {
            unreachable!("cumulative masses scanned in order");
        }
        let next = &acc + m;
        if next > r {
            return Ok(*v);
        }
        acc = next;
    }
    Ok(0.0)
}

/// Operator norm of a - b for two tower elements presented along the
/// same diagonal flag (which is how every element produced by the
/// realization engine is built): the maximum value difference over the
/// union grid of cumulative masses.
///
/// The second element must refine the first: at every cumulative
/// breakpoint of `coarse` carrying a positive value, `fine` must take
/// exactly the same value. Co-constructed elements (steps of one
/// target over nested partitions) satisfy this with bitwise equality;
/// anything else is refused rather than silently measured.
pub fn tower_norm_diff(coarse: &TowerElement, fine: &TowerElement) -> Result<f64, RealizeError> {
    let coarse_cuts = coarse.cumulative_masses();
    // Refinement check: the value of the coarse element at each of its
    // own positive-value breakpoints must reappear in the fine one.
    for (k, (v, _)) in coarse.groups.iter().enumerate() {
        let at = &coarse_cuts[k];
        let fine_value = fine.value_at(at);
        if fine_value != *v {
            return Err(RealizeError::NotRefinement {
                at: at.to_string(),
                coarse: *v,
                fine: fine_value,
            });
        }
    }

    let mut grid: Vec<BigRational> = coarse_cuts;
    grid.extend(fine.cumulative_masses());
    grid.sort();
    grid.dedup();

    let mut best = 0.0f64;
    for x in &grid {
        if x >= &BigRational::one() {
            break;
        }
        let d = (coarse.value_at(x) - fine.value_at(x)).abs();
        best = best.max(d);
    }
    Ok(best)
}

/// How far s_{g + delta} can drop below s_g for admissible deltas: the
/// right-continuity probe. Deltas at or beyond the next cumulative
/// breakpoint after g are skipped (there the function genuinely
/// drops); every surviving delta must give exactly the same value, so
/// the returned worst drop is expected to be exactly 0.
pub fn right_continuity_probe(
    a: &TowerElement,
    g: &K0Class,
    deltas: &[BigRational],
) -> Result<f64, RealizeError> {
    let r = dyadic_class_value(g)?;
    let base = tower_svf(a, g)?;
    let gap = a
        .cumulative_masses()
        .into_iter()
        .find(|c| c > &r)
        .map(|c| c - &r);
    let mut worst = 0.0f64;
    for delta in deltas {
        if !delta.is_positive() {
            return Err(RealizeError::BadClass(format!(
                "probe delta {delta} must be positive"
            )));
        }
        if let Some(gap) = &gap {
            if delta >= gap {
                continue;
            }
        }
        let shifted = K0Class::dyadic_from_rational(&r + delta)
            .map_err(|_| RealizeError::BadClass(format!("{} + {delta}", &r)))?;
        let value = tower_svf(a, &shifted)?;
        worst = worst.max(base - value);
    }
    Ok(worst)
}

/// Transcript of a realization run: nested partitions, the tower
/// elements over them, and the two geometric envelopes.
#[derive(Debug, Clone)]
pub struct RealizationTrace {
    /// f(0), the envelope constant.
    pub target_norm: f64,
    /// Nested partitions F_0 subset ... subset F_N of [0, 1].
    pub partitions: Vec<Vec<BigRational>>,
    /// a_n built over F_n; the singular value function of a_n is
    /// exactly the step of f over F_n.
    pub elements: Vec<TowerElement>,
    /// increments[n-1] = ||a_n - a_{n-1}||, strictly below
    /// target_norm / 2^(n-1).
    pub increments: Vec<f64>,
    /// distances[n] = sup |s(a_n) - f|, strictly below
    /// target_norm / 2^n.
    pub distances: Vec<f64>,
}

impl RealizationTrace {
    pub fn levels(&self) -> usize {
        self.elements.len().saturating_sub(1)
    }

    /// Check both geometric envelopes strictly.
    pub fn envelopes_hold(&self) -> bool {
        let c = self.target_norm;
        self.distances
            .iter()
            .enumerate()
            .all(|(n, d)| *d < c / (1u64 << n) as f64 || c == 0.0)
            && self
                .increments
                .iter()
                .enumerate()
                .all(|(n, i)| *i < c / (1u64 << n) as f64 || c == 0.0)
    }
}

/// Realize a decreasing, right-continuous target f (dyadic domain,
/// f(1) = 0) as a Cauchy sequence of tower elements: a_n's singular
/// value function is exactly the step of f over the n-th partition,
/// distances to f fall below f(0)/2^n and increments below
/// f(0)/2^(n-1). The sequence's limit in the tower completion has
/// singular value function f.
pub fn realize(f: &TargetFunction, levels: usize) -> Result<RealizationTrace, RealizeError> {
    match f.domain() {
        ScalarDomain::Dyadic => {}
        _ => return Err(RealizeError::NotDyadicDomain),
    }
    let one = BigRational::one();
    let at_one = f.eval(&one)?;
    if at_one != 0.0 {
        return Err(RealizeError::BadNormalization { at_one });
    }
    let c = f.eval(&BigRational::zero())?;
    if c == 0.0 {
        // f is decreasing and nonnegative, so it vanishes identically.
        return Ok(RealizationTrace {
            target_norm: 0.0,
            partitions: vec![vec![BigRational::zero()]; levels + 1],
            elements: vec![TowerElement::zero(); levels + 1],
            increments: vec![0.0; levels],
            distances: vec![0.0; levels + 1],
        });
    }

    let partitions = approx_sequence(f, c, levels, &one)?;
    let mut elements = Vec::with_capacity(partitions.len());
    let mut distances = Vec::with_capacity(partitions.len());
    for partition in &partitions {
        let element = TowerElement::from_step_over_partition(f, partition)?;
        // The singular value function of the element is the step of f
        // over the partition by construction; measure the distance to
        // f from the element's own data.
        let step = element.svf_step();
        let reference = step_from_partition(f, partition)?;
        debug_assert_eq!(
            sup_distance(&step, f).unwrap_or(f64::NAN),
            sup_distance(&reference, f).unwrap_or(f64::NAN),
            "merging equal values must not change the step function"
        );
        distances.push(sup_distance(&step, f)?);
        elements.push(element);
    }
    let mut increments = Vec::with_capacity(levels);
    for w in elements.windows(2) {
        increments.push(tower_norm_diff(&w[0], &w[1])?);
    }
    Ok(RealizationTrace {
        target_norm: c,
        partitions,
        elements,
        increments,
        distances,
    })
}

/// One probed class in the order-discontinuity report.
#[derive(Debug, Clone)]
pub struct LexCounterexampleRow {
    pub n: u64,
    pub class: K0Class,
    pub svf: f64,
}

/// Failure of order continuity over the lexicographic pair group
/// Q (+) Z: a projection class p and a sequence g_n -> g_limit
/// (coordinatewise) with s_{g_n}(p) = 0 for every n while
/// s_{g_limit}(p) = 1.
#[derive(Debug, Clone)]
pub struct LexCounterexample {
    /// The projection's class: (1; 0).
    pub p_class: K0Class,
    /// g_n = (1 + 1/n; 1) for n = 1..=100, each with s_{g_n}(p) = 0.
    pub rows: Vec<LexCounterexampleRow>,
    /// The coordinatewise limit (1; 1).
    pub limit_class: K0Class,
    /// s at the limit class: 1.
    pub limit_svf: f64,
    /// Control class (1; 0), the class of p itself: s = 0.
    pub control_class: K0Class,
    pub control_svf: f64,
}

/// Build the order-discontinuity report over the lexicographic pair
/// group. Every value is computed exactly through the projection
/// indicator; nothing in the report is floating-point sensitive.
pub fn counterexample_lex() -> LexCounterexample {
    use crate::svf::svf_projection_indicator;

    let p_class = K0Class::lex(1, 1, 0);
    let mut rows = Vec::with_capacity(100);
    for n in 1..=100u64 {
        let class = K0Class::lex(n as i64 + 1, n as i64, 1);
        let svf = svf_projection_indicator(&p_class, &class)
            .expect("lex classes are compatible");
        rows.push(LexCounterexampleRow { n, class, svf });
    }
    let limit_class = K0Class::lex(1, 1, 1);
    let limit_svf = svf_projection_indicator(&p_class, &limit_class)
        .expect("lex classes are compatible");
    let control_class = K0Class::lex(1, 1, 0);
    let control_svf = svf_projection_indicator(&p_class, &control_class)
        .expect("lex classes are compatible");
    LexCounterexample {
        p_class,
        rows,
        limit_class,
        limit_svf,
        control_class,
        control_svf,
    }
}

/// Verify that the probe sequence converges to the limit class in the
/// product topology: integer coordinates all equal the limit's, and
/// the rational coordinates approach the limit's first coordinate
/// monotonically from above.
pub fn lex_sequence_converges(report: &LexCounterexample) -> bool {
    let (lu, lv) = match &report.limit_class {
        K0Class::LexPair(u, v) => (u.clone(), v.clone()),
        _ => return false,
    };
    let mut prev_gap: Option<BigRational> = None;
    for row in &report.rows {
        let (u, v) = match &row.class {
            K0Class::LexPair(u, v) => (u.clone(), v.clone()),
            _ => return false,
        };
        if v != lv {
            return false;
        }
        let gap = &u - &lu;
        if !gap.is_positive() {
            return false;
        }
        if let Some(p) = prev_gap {
            if gap >= p {
                return false;
            }
        }
        prev_gap = Some(gap);
    }
    // The gap after n steps is 1/n, so it falls below any threshold of
    // the form 1/N within the first N rows; check the tail explicitly.
    match prev_gap {
        Some(g) => g <= BigRational::new(BigInt::from(1), BigInt::from(100)),
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::k0::is_dyadic;
    use crate::svf::svf;

    fn rat(p: i64, q: i64) -> BigRational {
        BigRational::new(BigInt::from(p), BigInt::from(q))
    }

    fn ramp() -> TargetFunction {
        TargetFunction::one_minus_t()
    }

    #[test]
    fn construction_merges_and_validates() {
        let a = TowerElement::new(
            2,
            vec![(1.0, rat(1, 4)), (1.0, rat(1, 4)), (0.5, rat(1, 4)), (0.0, rat(1, 4))],
        )
        .unwrap();
        assert_eq!(a.groups().len(), 2);
        assert_eq!(a.groups()[0], (1.0, rat(1, 2)));
        assert_eq!(a.groups()[1], (0.5, rat(1, 4)));
        assert_eq!(a.norm(), 1.0);

        // Mass not resolvable at the stage.
        assert!(matches!(
            TowerElement::new(1, vec![(1.0, rat(1, 4))]),
            Err(RealizeError::BadMass(_))
        ));
        // Non-dyadic mass.
        assert!(matches!(
            TowerElement::new(4, vec![(1.0, rat(1, 3))]),
            Err(RealizeError::BadMass(_))
        ));
        // Total mass beyond 1.
        assert!(matches!(
            TowerElement::new(1, vec![(2.0, rat(1, 2)), (1.0, rat(1, 2)), (0.5, rat(1, 2))]),
            Err(RealizeError::BadMass(_))
        ));
        // Increasing values.
        assert!(matches!(
            TowerElement::new(1, vec![(1.0, rat(1, 2)), (2.0, rat(1, 2))]),
            Err(RealizeError::BadValues(_))
        ));
    }

    #[test]
    fn tower_svf_walks_the_cumulative_masses() {
        let a = TowerElement::new(2, vec![(1.0, rat(1, 2)), (0.5, rat(1, 4))]).unwrap();
        let g = |r: BigRational| K0Class::dyadic_from_rational(r).unwrap();
        assert_eq!(tower_svf(&a, &g(rat(0, 1))).unwrap(), 1.0);
        assert_eq!(tower_svf(&a, &g(rat(1, 4))).unwrap(), 1.0);
        assert_eq!(tower_svf(&a, &g(rat(1, 2))).unwrap(), 0.5);
        assert_eq!(tower_svf(&a, &g(rat(5, 8))).unwrap(), 0.5);
        assert_eq!(tower_svf(&a, &g(rat(3, 4))).unwrap(), 0.0);
        assert_eq!(tower_svf(&a, &g(rat(2, 1))).unwrap(), 0.0);
        // Matches the step-function view pointwise.
        let step = a.svf_step();
        for r in [rat(0, 1), rat(1, 8), rat(1, 2), rat(11, 16), rat(3, 4)] {
            assert_eq!(tower_svf(&a, &g(r.clone())).unwrap(), step.eval(&r));
        }
        // Negative or non-dyadic classes are refused.
        assert!(tower_svf(&a, &K0Class::rational(1, 3)).is_err());
        assert!(tower_svf(&a, &K0Class::dyadic(-1, 1)).is_err());
    }

    #[test]
    fn norm_diff_on_the_frozen_pair() {
        let a = TowerElement::new(0, vec![(1.0, rat(1, 1))]).unwrap();
        let b = TowerElement::new(1, vec![(1.0, rat(1, 2)), (0.5, rat(1, 2))]).unwrap();
        assert_eq!(tower_norm_diff(&a, &b).unwrap(), 0.5);
    }

    #[test]
    fn norm_diff_on_a_ramp_refinement() {
        let f = ramp();
        let coarse =
            TowerElement::from_step_over_partition(&f, &[rat(0, 1), rat(1, 2), rat(1, 1)])
                .unwrap();
        let fine = TowerElement::from_step_over_partition(
            &f,
            &[rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)],
        )
        .unwrap();
        assert_eq!(tower_norm_diff(&coarse, &fine).unwrap(), 0.25);
        // The same pair through dense matrices at the common stage:
        // embed the stage-1 element into stage 2 by repeating entries.
        let fine_dense = fine.materialize().unwrap();
        let algebra = MultiMatrixAlgebra::new(&[4]).unwrap();
        let embedded =
            AlgebraElement::from_real_diags(&algebra, &[vec![1.0, 1.0, 0.5, 0.5]]).unwrap();
        let diff = crate::algebra::element_norm(&embedded.sub(&fine_dense).unwrap()).unwrap();
        assert!((diff - 0.25).abs() < 1e-15);
    }

    #[test]
    fn norm_diff_requires_refinement() {
        let a = TowerElement::new(0, vec![(1.0, rat(1, 1))]).unwrap();
        let b = TowerElement::new(1, vec![(0.9, rat(1, 1))]).unwrap();
        assert!(matches!(
            tower_norm_diff(&a, &b),
            Err(RealizeError::NotRefinement { .. })
        ));
    }

    #[test]
    fn materialize_matches_tower_svf() {
        let a = TowerElement::new(1, vec![(1.0, rat(1, 2)), (0.5, rat(1, 2))]).unwrap();
        let dense = a.materialize().unwrap();
        // s at dyadic class k/2 equals the dense value at rank class k.
        for k in 0..=2usize {
            let tower = tower_svf(
                &a,
                &K0Class::dyadic_from_rational(rat(k as i64, 2)).unwrap(),
            )
            .unwrap();
            let d = svf(&dense, &K0Class::simplicial_from_usizes(&[k])).unwrap();
            assert!((tower - d).abs() < 1e-12, "k={k}: tower {tower} dense {d}");
        }
        // Stage over the materialization limit is refused.
        let deep = TowerElement::new(13, vec![(1.0, rat(1, 8192))]).unwrap();
        assert!(matches!(
            deep.materialize(),
            Err(RealizeError::StageTooLarge { .. })
        ));
    }

    #[test]
    fn right_continuity_never_drops() {
        let a = TowerElement::new(3, vec![(2.0, rat(1, 8)), (1.0, rat(1, 2)), (0.25, rat(1, 4))])
            .unwrap();
        let deltas: Vec<BigRational> = (1..=10).map(|k| rat(1, 1i64 << k)).collect();
        for num in 0..=8i64 {
            let g = K0Class::dyadic_from_rational(rat(num, 8)).unwrap();
            let drop = right_continuity_probe(&a, &g, &deltas).unwrap();
            assert_eq!(drop, 0.0, "drop at {}", g.render());
        }
    }

    #[test]
    fn realize_the_ramp_with_geometric_envelopes() {
        let f = ramp();
        let trace = realize(&f, 6).unwrap();
        assert_eq!(trace.elements.len(), 7);
        assert_eq!(trace.increments.len(), 6);
        assert_eq!(trace.distances.len(), 7);
        assert!(trace.envelopes_hold());
        for (n, d) in trace.distances.iter().enumerate() {
            assert!(*d < 1.0 / (1u64 << n) as f64, "distance {d} at level {n}");
        }
        for (n, i) in trace.increments.iter().enumerate() {
            assert!(
                *i < 2.0 / (1u64 << n) as f64,
                "increment {i} between levels {n} and {}",
                n + 1
            );
        }
        // Partitions are nested and dyadic; elements refine in order.
        for w in trace.partitions.windows(2) {
            for x in &w[0] {
                assert!(w[1].contains(x));
            }
        }
        for p in &trace.partitions {
            for x in p {
                assert!(is_dyadic(x));
            }
        }
        // The element's singular value function at each partition point
        // is exactly f frozen at that point.
        let last = trace.elements.last().unwrap();
        let partition = trace.partitions.last().unwrap();
        for x in partition {
            if x == partition.last().unwrap() {
                continue;
            }
            let g = K0Class::dyadic_from_rational(x.clone()).unwrap();
            let s = tower_svf(last, &g).unwrap();
            assert_eq!(s, f.eval(x).unwrap(), "svf at partition point {x}");
        }
    }

    #[test]
    fn realize_is_deterministic() {
        let t1 = realize(&ramp(), 5).unwrap();
        let t2 = realize(&ramp(), 5).unwrap();
        assert_eq!(t1.partitions, t2.partitions);
        assert_eq!(t1.increments, t2.increments);
        assert_eq!(t1.distances, t2.distances);
    }

    #[test]
    fn realize_rejects_bad_targets() {
        // Not normalized at 1.
        let f = TargetFunction::continuous(
            ScalarDomain::Dyadic,
            |x| 2.0 - x.to_f64().unwrap().min(2.0),
            0.0,
        );
        assert!(matches!(
            realize(&f, 3),
            Err(RealizeError::BadNormalization { .. })
        ));
        // Wrong domain.
        let g = TargetFunction::continuous(
            ScalarDomain::Rational,
            |x| (1.0 - x.to_f64().unwrap()).max(0.0),
            0.0,
        );
        assert!(matches!(realize(&g, 3), Err(RealizeError::NotDyadicDomain)));
    }

    #[test]
    fn realize_zero_target_short_circuits() {
        let f = TargetFunction::continuous(ScalarDomain::Dyadic, |_| 0.0, 0.0);
        let trace = realize(&f, 4).unwrap();
        assert_eq!(trace.target_norm, 0.0);
        assert!(trace.elements.iter().all(|e| e.is_zero()));
        assert!(trace.envelopes_hold());
    }

    #[test]
    fn realize_step_target_with_jump_is_exact_from_level_zero() {
        // Indicator of [0, 1/2): the jump is snapped into the first
        // partition, so every level reproduces the target exactly.
        let f = TargetFunction::with_jumps(
            ScalarDomain::Dyadic,
            |x| {
                if x < &BigRational::new(BigInt::from(1), BigInt::from(2)) {
                    1.0
                } else {
                    0.0
                }
            },
            vec![(rat(1, 2), 1.0)],
            0.0,
        )
        .unwrap();
        let trace = realize(&f, 3).unwrap();
        for d in &trace.distances {
            assert_eq!(*d, 0.0);
        }
        for i in &trace.increments {
            assert_eq!(*i, 0.0);
        }
        let e = trace.elements.last().unwrap();
        assert_eq!(e.groups(), &[(1.0, rat(1, 2))]);
    }

    #[test]
    fn lex_counterexample_is_exact() {
        let report = counterexample_lex();
        assert_eq!(report.rows.len(), 100);
        for row in &report.rows {
            assert_eq!(row.svf, 0.0, "s at {} must vanish", row.class.render());
        }
        assert_eq!(report.limit_svf, 1.0);
        assert_eq!(report.control_svf, 0.0);
        assert_eq!(report.p_class.render(), "(1; 0)");
        assert_eq!(report.limit_class.render(), "(1; 1)");
        assert_eq!(report.rows[0].class.render(), "(2; 1)");
        assert_eq!(report.rows[99].class.render(), "(101/100; 1)");
        assert!(lex_sequence_converges(&report));
    }
}
