//! Decreasing step functions on exact scalar domains, and partition
//! refinement against a decreasing right-continuous target.
//!
//! The domain S is a set of nonnegative exact rationals: all dyadics,
//! all rationals, or a finite grid. A target f: S -> [0, inf) is
//! decreasing and right continuous, carries an explicit list of its
//! left-jump points (each of which must lie in S), and is continuous
//! away from them. Left limits are therefore computable exactly:
//! f(x-) = f(x) + declared jump at x, and f(x-) = f(x) elsewhere.
//!
//! A partition F = {0 = x_0 < ... < x_m} induces the step function
//! that freezes f at the left endpoint of each cell and vanishes
//! beyond max F. The refinement routine cuts cells until every
//! left-limit drop is below a requested epsilon, which drives the
//! geometric approximation sequence used by the realization engine.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::sync::Arc;
use thiserror::Error;

use crate::k0::is_dyadic;

#[derive(Debug, Error)]
pub enum StepFnError {
    #[error("partition is empty")]
    EmptyPartition,
    #[error("partition must start at 0, got {0}")]
    DoesNotStartAtZero(String),
    #[error("partition is not strictly increasing at position {0}")]
    NotStrictlyIncreasing(usize),
    #[error("point {0} is not in the scalar domain")]
    NotInDomain(String),
    #[error("declared jump at {0} is not in the scalar domain")]
    JumpNotInDomain(String),
    #[error("declared jump at {point} has non-positive size {size}")]
    BadJumpSize { point: String, size: f64 },
    #[error("step function values must be decreasing and nonnegative at position {0}")]
    NotDecreasing(usize),
    #[error("interval [{0}, {1}] is empty or reversed")]
    BadInterval(String, String),
    #[error("refinement exceeded its iteration bound of {bound}; the target violates its declared-jump or right-continuity contract")]
    NonTermination { bound: usize },
    #[error("target does not fall below {eps:e} within the search bound {bound}")]
    DoesNotVanish { eps: f64, bound: String },
    #[error("target evaluated to a non-finite or negative value {value} at {point}")]
    BadTargetValue { point: String, value: f64 },
}

/// The exact scalar domain S.
#[derive(Clone)]
pub enum ScalarDomain {
    /// Nonnegative dyadic rationals m / 2^e.
    Dyadic,
    /// Nonnegative rationals.
    Rational,
    /// A finite increasing grid of nonnegative rationals containing 0.
    FiniteGrid(Vec<BigRational>),
}

impl std::fmt::Debug for ScalarDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarDomain::Dyadic => write!(f, "Dyadic"),
            ScalarDomain::Rational => write!(f, "Rational"),
            ScalarDomain::FiniteGrid(g) => write!(f, "FiniteGrid({} points)", g.len()),
        }
    }
}

impl ScalarDomain {
    pub fn contains(&self, x: &BigRational) -> bool {
        if x.is_negative() {
            return false;
        }
        match self {
            ScalarDomain::Dyadic => is_dyadic(x),
            ScalarDomain::Rational => true,
            ScalarDomain::FiniteGrid(grid) => grid.binary_search(x).is_ok(),
        }
    }

    /// A domain point strictly between lo and hi, as central as the
    /// domain allows. None when the open interval misses the domain.
    pub fn midpoint(&self, lo: &BigRational, hi: &BigRational) -> Option<BigRational> {
        if lo >= hi {
            return None;
        }
        match self {
            ScalarDomain::Dyadic | ScalarDomain::Rational => {
                Some((lo + hi) / BigRational::from_integer(BigInt::from(2)))
            }
            ScalarDomain::FiniteGrid(grid) => {
                let lo_idx = match grid.binary_search(lo) {
                    Ok(i) => i + 1,
                    Err(i) => i,
                };
                let hi_idx = match grid.binary_search(hi) {
                    Ok(i) => i,
                    Err(i) => i,
                };
                if lo_idx >= hi_idx {
                    return None;
                }
                Some(grid[(lo_idx + hi_idx) / 2].clone())
            }
        }
    }

    /// Largest domain point strictly below x, for finite grids.
    fn grid_predecessor(&self, x: &BigRational) -> Option<BigRational> {
        match self {
            ScalarDomain::FiniteGrid(grid) => {
                let idx = match grid.binary_search(x) {
                    Ok(i) => i,
                    Err(i) => i,
                };
                if idx == 0 {
                    None
                } else {
                    Some(grid[idx - 1].clone())
                }
            }
            _ => None,
        }
    }

    /// Ascending scan points in [from, bound] used by the vanishing
    /// search: the start itself, then powers of two, then the bound.
    fn scan_points(&self, from: &BigRational, bound: &BigRational) -> Vec<BigRational> {
        let mut pts = Vec::new();
        match self {
            ScalarDomain::Dyadic | ScalarDomain::Rational => {
                pts.push(from.clone());
                let mut p = BigRational::one();
                while &p <= bound {
                    if &p > from {
                        pts.push(p.clone());
                    }
                    p *= BigRational::from_integer(BigInt::from(2));
                }
                if bound > from && pts.last() != Some(bound) && self.contains(bound) {
                    pts.push(bound.clone());
                }
            }
            ScalarDomain::FiniteGrid(grid) => {
                for g in grid {
                    if g >= from && g <= bound {
                        pts.push(g.clone());
                    }
                }
            }
        }
        pts
    }
}

/// Right-continuous decreasing step function. values[i] is the value on
/// [breakpoints[i], breakpoints[i+1]) and values[m-1] persists on
/// [breakpoints[m-1], inf). Compact support means the last value is 0.
#[derive(Debug, Clone, PartialEq)]
pub struct StepFunction {
    breakpoints: Vec<BigRational>,
    values: Vec<f64>,
}

impl StepFunction {
    pub fn new(breakpoints: Vec<BigRational>, values: Vec<f64>) -> Result<Self, StepFnError> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(StepFnError::EmptyPartition);
        }
        if !breakpoints[0].is_zero() {
            return Err(StepFnError::DoesNotStartAtZero(breakpoints[0].to_string()));
        }
        for i in 1..breakpoints.len() {
            if breakpoints[i - 1] >= breakpoints[i] {
                return Err(StepFnError::NotStrictlyIncreasing(i));
            }
        }
        for (i, w) in values.windows(2).enumerate() {
            if !(w[0] >= w[1]) {
                return Err(StepFnError::NotDecreasing(i + 1));
            }
        }
        if let Some(&last) = values.last() {
            if !(last >= 0.0) {
                return Err(StepFnError::NotDecreasing(values.len() - 1));
            }
        }
        Ok(StepFunction {
            breakpoints,
            values,
        })
    }

    pub fn breakpoints(&self) -> &[BigRational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: &BigRational) -> f64 {
        debug_assert!(!x.is_negative());
        // Largest breakpoint <= x.
        let idx = match self.breakpoints.binary_search(x) {
            Ok(i) => i,
            Err(0) => 0,
            Err(i) => i - 1,
        };
        self.values[idx]
    }

    pub fn is_compact_support(&self) -> bool {
        self.values.last().copied().unwrap_or(0.0) == 0.0
    }
}

type Evaluator = Arc<dyn Fn(&BigRational) -> f64 + Send + Sync>;

/// A decreasing, right-continuous, nonnegative target on a scalar
/// domain, with its left-jump points declared up front.
#[derive(Clone)]
pub struct TargetFunction {
    domain: ScalarDomain,
    eval: Evaluator,
    /// Sorted (point, size) pairs; f(x-) = f(x) + size at these points.
    jumps: Vec<(BigRational, f64)>,
    /// inf of f over the domain, used for the sup distance beyond the
    /// last breakpoint. Zero for every vanishing target.
    tail: f64,
}

impl std::fmt::Debug for TargetFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("TargetFunction")
            .field("domain", &self.domain)
            .field("jumps", &self.jumps.len())
            .field("tail", &self.tail)
            .finish()
    }
}

impl TargetFunction {
    /// Continuous decreasing target (no declared jumps).
    pub fn continuous(
        domain: ScalarDomain,
        eval: impl Fn(&BigRational) -> f64 + Send + Sync + 'static,
        tail: f64,
    ) -> Self {
        TargetFunction {
            domain,
            eval: Arc::new(eval),
            jumps: Vec::new(),
            tail,
        }
    }

    /// Target with declared left jumps. Jump points must be strictly
    /// positive members of the domain with positive sizes.
    pub fn with_jumps(
        domain: ScalarDomain,
        eval: impl Fn(&BigRational) -> f64 + Send + Sync + 'static,
        mut jumps: Vec<(BigRational, f64)>,
        tail: f64,
    ) -> Result<Self, StepFnError> {
        jumps.sort_by(|a, b| a.0.cmp(&b.0));
        for (point, size) in &jumps {
            if !point.is_positive() || !domain.contains(point) {
                return Err(StepFnError::JumpNotInDomain(point.to_string()));
            }
            if !(*size > 0.0) {
                return Err(StepFnError::BadJumpSize {
                    point: point.to_string(),
                    size: *size,
                });
            }
        }
        Ok(TargetFunction {
            domain,
            eval: Arc::new(eval),
            jumps,
            tail,
        })
    }

    /// View a step function as a target: its jumps are the breakpoints
    /// where the value actually drops, and its tail is its last value.
    pub fn from_step(step: &StepFunction, domain: ScalarDomain) -> Result<Self, StepFnError> {
        for x in step.breakpoints() {
            if !domain.contains(x) {
                return Err(StepFnError::NotInDomain(x.to_string()));
            }
        }
        let mut jumps = Vec::new();
        for i in 1..step.breakpoints.len() {
            let size = step.values[i - 1] - step.values[i];
            if size > 0.0 {
                jumps.push((step.breakpoints[i].clone(), size));
            }
        }
        let tail = step.values.last().copied().unwrap_or(0.0);
        let s = step.clone();
        Ok(TargetFunction {
            domain,
            eval: Arc::new(move |x| s.eval(x)),
            jumps,
            tail,
        })
    }

    /// The clamped linear ramp max(0, 1 - t) on the dyadics. The
    /// canonical continuous realization target: value 1 at 0, value 0
    /// at the unit class.
    pub fn one_minus_t() -> Self {
        TargetFunction::continuous(
            ScalarDomain::Dyadic,
            |x| {
                let v = 1.0 - x.to_f64().unwrap_or(f64::INFINITY);
                v.max(0.0)
            },
            0.0,
        )
    }

    pub fn domain(&self) -> &ScalarDomain {
        &self.domain
    }

    pub fn tail(&self) -> f64 {
        self.tail
    }

    pub fn eval(&self, x: &BigRational) -> Result<f64, StepFnError> {
        if !self.domain.contains(x) {
            return Err(StepFnError::NotInDomain(x.to_string()));
        }
        let v = (self.eval)(x);
        if !v.is_finite() || v < 0.0 {
            return Err(StepFnError::BadTargetValue {
                point: x.to_string(),
                value: v,
            });
        }
        Ok(v)
    }

    /// Left limit f(x-). On a finite grid this is the value at the
    /// previous grid point; on dense domains it is f(x) plus the
    /// declared jump at x, which is exact because f is continuous by
    /// declaration everywhere else.
    pub fn left_limit(&self, x: &BigRational) -> Result<f64, StepFnError> {
        if let Some(prev) = self.domain.grid_predecessor(x) {
            return self.eval(&prev);
        }
        let base = self.eval(x)?;
        let jump = self
            .jumps
            .iter()
            .find(|(p, _)| p == x)
            .map(|(_, s)| *s)
            .unwrap_or(0.0);
        Ok(base + jump)
    }

    fn jumps_in_open_interval(&self, a: &BigRational, b: &BigRational) -> Vec<&(BigRational, f64)> {
        self.jumps
            .iter()
            .filter(|(p, _)| p > a && p < b)
            .collect()
    }
}

/// Declared left-jump points of the target in the window (0, b], with
/// their sizes. Each is validated to be a genuine drop inside the
/// domain.
pub fn left_jump_set(
    f: &TargetFunction,
    b: &BigRational,
) -> Result<Vec<(BigRational, f64)>, StepFnError> {
    if !f.domain.contains(b) {
        return Err(StepFnError::NotInDomain(b.to_string()));
    }
    let mut out = Vec::new();
    for (point, size) in &f.jumps {
        if point > b {
            break;
        }
        if !f.domain.contains(point) {
            return Err(StepFnError::JumpNotInDomain(point.to_string()));
        }
        if !(*size > 0.0) {
            return Err(StepFnError::BadJumpSize {
                point: point.to_string(),
                size: *size,
            });
        }
        out.push((point.clone(), *size));
    }
    Ok(out)
}

/// The step function freezing f at the left endpoint of each partition
/// cell and vanishing beyond max F.
pub fn step_from_partition(
    f: &TargetFunction,
    partition: &[BigRational],
) -> Result<StepFunction, StepFnError> {
    if partition.is_empty() {
        return Err(StepFnError::EmptyPartition);
    }
    for x in partition {
        if !f.domain.contains(x) {
            return Err(StepFnError::NotInDomain(x.to_string()));
        }
    }
    let mut values = Vec::with_capacity(partition.len());
    for x in &partition[..partition.len() - 1] {
        values.push(f.eval(x)?);
    }
    values.push(0.0);
    StepFunction::new(partition.to_vec(), values)
}

/// Exact sup distance between a step function and a target over the
/// whole domain.
///
/// On a cell [x_{i-1}, x_i) the target sweeps the interval from its
/// left limit at x_i up to its value at x_{i-1}, so the sup of the
/// pointwise difference against the constant v_{i-1} is attained at
/// one of the two ends. Beyond the last breakpoint the target sweeps
/// down to its tail infimum.
pub fn sup_distance(g: &StepFunction, f: &TargetFunction) -> Result<f64, StepFnError> {
    let m = g.breakpoints.len();
    let mut best = 0.0f64;
    for i in 1..m {
        let v = g.values[i - 1];
        let at_left = f.eval(&g.breakpoints[i - 1])?;
        let at_right_limit = f.left_limit(&g.breakpoints[i])?;
        best = best.max((v - at_left).abs()).max((v - at_right_limit).abs());
    }
    let v = g.values[m - 1];
    let at_last = f.eval(&g.breakpoints[m - 1])?;
    best = best.max((v - at_last).abs()).max((v - f.tail).abs());
    Ok(best)
}

/// Iteration guard for the cut search inside one cell. Exceeding it
/// means the target hides a jump it never declared.
const CUT_SEARCH_CAP: usize = 256;

/// Find c in (a, b) with lambda < f(a) - f(c) and f(a) - f(c-) < lambda + mu.
///
/// Writing h(x) = f(a) - f(x), h is nondecreasing, and the premise
/// h(b-) > lambda guarantees the threshold is crossed inside the cell.
/// If the crossing happens at a declared jump the jump point itself is
/// the cut; otherwise the crossing is continuous and bisection pins it
/// down until the left-limit condition holds.
fn find_cut(
    f: &TargetFunction,
    a: &BigRational,
    b: &BigRational,
    lambda: f64,
    mu: f64,
) -> Result<BigRational, StepFnError> {
    let fa = f.eval(a)?;
    let h = |v: f64| fa - v;

    // Jump snap: a declared jump where h crosses the threshold is the
    // infimum of the super-level set and already satisfies both sides.
    for (point, _) in f.jumps_in_open_interval(a, b) {
        let at = h(f.eval(point)?);
        let before = h(f.left_limit(point)?);
        if at > lambda && before <= lambda {
            return Ok(point.clone());
        }
    }

    // Find a point of the super-level set by walking toward b.
    let mut hi = None;
    let mut probe_gap = b - a;
    let two = BigRational::from_integer(BigInt::from(2));
    for _ in 0..CUT_SEARCH_CAP {
        probe_gap = &probe_gap / &two;
        let candidate = b - &probe_gap;
        if let Some(cand) = exact_point_in_domain(&f.domain, &candidate, a, b) {
            if h(f.eval(&cand)?) > lambda {
                hi = Some(cand);
                break;
            }
        }
    }
    let mut hi = hi.ok_or(StepFnError::NonTermination {
        bound: CUT_SEARCH_CAP,
    })?;

    let mut lo = a.clone();
    for _ in 0..CUT_SEARCH_CAP {
        if h(f.left_limit(&hi)?) < lambda + mu {
            return Ok(hi);
        }
        let mid = match f.domain.midpoint(&lo, &hi) {
            Some(m) => m,
            // No domain point between lo and hi: hi is the immediate
            // successor of lo, so its left limit is f(lo) and the exit
            // test above must already have fired on a sane target.
            None => {
                return Err(StepFnError::NonTermination {
                    bound: CUT_SEARCH_CAP,
                })
            }
        };
        if h(f.eval(&mid)?) > lambda {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Err(StepFnError::NonTermination {
        bound: CUT_SEARCH_CAP,
    })
}

/// Snap a dense-domain candidate into the domain, keeping it inside
/// (a, b). Finite grids route through midpoint search instead.
fn exact_point_in_domain(
    domain: &ScalarDomain,
    candidate: &BigRational,
    a: &BigRational,
    b: &BigRational,
) -> Option<BigRational> {
    match domain {
        ScalarDomain::Dyadic | ScalarDomain::Rational => {
            if candidate > a && candidate < b && domain.contains(candidate) {
                Some(candidate.clone())
            } else {
                None
            }
        }
        ScalarDomain::FiniteGrid(_) => domain.midpoint(a, b),
    }
}

/// Refine [a, b] until every consecutive left-limit drop is below eps:
/// returns a = x_0 < x_1 < ... < x_r = b with
/// f(x_{i-1}) - f(x_i -) < eps for every cell.
///
/// Cuts are produced with lambda = mu = eps/2, which also guarantees
/// f(x_{i-1}) - f(x_i) > eps/2 and hence termination within
/// ceil(2 (f(a) - f(b-)) / eps) + 1 cells.
pub fn refine_partition(
    f: &TargetFunction,
    a: &BigRational,
    b: &BigRational,
    eps: f64,
) -> Result<Vec<BigRational>, StepFnError> {
    assert!(eps > 0.0, "refinement needs a positive epsilon");
    if a >= b || !f.domain.contains(a) || !f.domain.contains(b) {
        return Err(StepFnError::BadInterval(a.to_string(), b.to_string()));
    }
    let total_drop = f.eval(a)? - f.left_limit(b)?;
    let bound = (2.0 * total_drop / eps).ceil().max(0.0) as usize + 1;

    let mut cuts = vec![a.clone()];
    loop {
        let x = cuts.last().unwrap().clone();
        if f.eval(&x)? - f.left_limit(b)? < eps {
            cuts.push(b.clone());
            return Ok(cuts);
        }
        if cuts.len() > bound {
            return Err(StepFnError::NonTermination { bound });
        }
        let c = find_cut(f, &x, b, eps / 2.0, eps / 2.0)?;
        cuts.push(c);
    }
}

/// Whether some domain point within the search bound already has
/// f(x) < eps. One witness suffices because f is decreasing. Bound
/// exhaustion is a plain false, never a silent success.
pub fn is_vanishing_at_infinity(f: &TargetFunction, eps: f64, bound: &BigRational) -> bool {
    let zero = BigRational::zero();
    for x in f.domain.scan_points(&zero, bound) {
        if let Ok(v) = f.eval(&x) {
            if v < eps {
                return true;
            }
        }
    }
    false
}

fn vanishing_witness(
    f: &TargetFunction,
    from: &BigRational,
    eps: f64,
    bound: &BigRational,
) -> Result<BigRational, StepFnError> {
    for x in f.domain.scan_points(from, bound) {
        if f.eval(&x)? < eps {
            return Ok(x);
        }
    }
    Err(StepFnError::DoesNotVanish {
        eps,
        bound: bound.to_string(),
    })
}

/// Nested partitions F_0 subset F_1 subset ... subset F_N with
/// sup |step(F_n) - f| < c / 2^n for every n.
///
/// Level 0 finds a witness b_0 with f(b_0) < c and refines [0, b_0] at
/// eps = c. Each later level extends the previous partition by a far
/// enough witness and re-refines every cell at the halved epsilon. The
/// witness search scans up to search_bound and fails loudly when f
/// never falls below the required threshold there.
pub fn approx_sequence(
    f: &TargetFunction,
    c: f64,
    n_levels: usize,
    search_bound: &BigRational,
) -> Result<Vec<Vec<BigRational>>, StepFnError> {
    assert!(c > 0.0, "approximation needs a positive envelope constant");
    let zero = BigRational::zero();
    if !f.domain.contains(&zero) {
        return Err(StepFnError::NotInDomain(zero.to_string()));
    }

    let mut levels: Vec<Vec<BigRational>> = Vec::with_capacity(n_levels + 1);

    // Level 0.
    let b0 = vanishing_witness(f, &zero, c, search_bound)?;
    let f0 = if b0.is_zero() {
        vec![zero.clone()]
    } else {
        refine_partition(f, &zero, &b0, c)?
    };
    levels.push(f0);

    for level in 1..=n_levels {
        let eps = c / (1u64 << level) as f64;
        let prev = levels.last().unwrap();
        let prev_max = prev.last().unwrap().clone();
        let witness = vanishing_witness(f, &prev_max, eps, search_bound)?;
        let b = if witness < prev_max { prev_max.clone() } else { witness };

        let mut extended: Vec<BigRational> = prev.clone();
        if b > prev_max {
            extended.push(b.clone());
        }

        let mut next: Vec<BigRational> = vec![extended[0].clone()];
        for w in extended.windows(2) {
            let refined = refine_partition(f, &w[0], &w[1], eps)?;
            next.extend_from_slice(&refined[1..]);
        }
        levels.push(next);
    }
    Ok(levels)
}
