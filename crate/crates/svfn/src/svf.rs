//! Singular value functions on multi-matrix algebras.
//!
//! For an element a of A = M_{n_1} + ... + M_{n_k} and an ordered
//! K0 class g = (g_1, ..., g_k) >= 0, the singular value function is
//!
//! ```text
//! s_g(a) = inf { ||a - a p|| : p a projection with [p] <= g }
//! ```
//!
//! Three independent routes to the same number live here:
//!
//! * the closed form max_i sigma_{min(g_i, n_i)}(a_i), where sigma_j
//!   is the (j+1)-th largest singular value of block i and
//!   sigma_{n_i} = 0;
//! * the finite-spectrum oracle: writing |a| = sum alpha_i p_i with
//!   distinct positive eigenvalues alpha_0 > alpha_1 > ... and
//!   cumulative spectral projections p-hat_k, the value is
//!   min { alpha_k : [p-hat_k] <= g } with p-hat_0 = 0 and the final
//!   candidate 0 at the full cumulative class;
//! * direct sampling of the defining infimum over admissible
//!   projections.
//!
//! Every call of [`svf`] computes the first two and refuses to return
//! if they disagree; the sampling route is a separate bound used by
//! the property battery and the acceptance suite.

use num_complex::Complex64;
use rand::Rng;
use thiserror::Error;

use crate::algebra::{
    block_singular_values, element_absolute_value, element_norm, is_projection,
    projector_from_columns, random_element, random_positive, random_projection, random_unitary,
    rank_vector, spectral_steps, trial_rng, AlgebraElement, AlgebraError, MultiMatrixAlgebra,
    SpectralSteps,
};
use crate::k0::{K0Class, K0Error};
use crate::linalg::{apply_scalar_function, hermitian_eigen, orthonormalize, svd};
use crate::tol;

#[derive(Debug, Error)]
pub enum SvfError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    K0(#[from] K0Error),
    #[error(transparent)]
    Linalg(#[from] crate::linalg::LinalgError),
    #[error("class {0} is not a nonnegative simplicial vector")]
    BadClass(String),
    #[error("class has {got} coordinates but the algebra has {expected} blocks")]
    ClassLength { expected: usize, got: usize },
    #[error(
        "closed form {closed_form} and finite-spectrum oracle {oracle} disagree by {diff:e} (allowed {allowed:e})"
    )]
    OracleDisagreement {
        closed_form: f64,
        oracle: f64,
        diff: f64,
        allowed: f64,
    },
    #[error("sampling the infimum needs at least one trial")]
    ZeroTrials,
    #[error("value table would hold {entries} entries, over the limit of {limit}")]
    TableTooLarge { entries: u128, limit: u128 },
    #[error("range containment violated: ||p - p q|| = {defect:e}")]
    NotNested { defect: f64 },
    #[error(
        "rank gap violated in block {block}: need r(lower) <= r(middle) <= r(upper), got {r1}, {rq}, {r2}"
    )]
    RankGapViolated {
        block: usize,
        r1: usize,
        rq: usize,
        r2: usize,
    },
    #[error("class chain is not increasing at position {0}")]
    ChainNotIncreasing(usize),
    #[error("last chain class {got} does not match the projection's rank vector {expected}")]
    TopMismatch { expected: String, got: String },
    #[error("rank overflow in block {block}: combined rank {sum} exceeds block size {size}")]
    RankOverflow {
        block: usize,
        sum: usize,
        size: usize,
    },
    #[error(
        "norm {norm} is below the subordination threshold yet rank {rp:?} is not dominated by {rq:?}"
    )]
    SubordinationContradiction {
        norm: f64,
        rp: Vec<usize>,
        rq: Vec<usize>,
    },
}

/// Nonnegative simplicial coordinates of g, checked against the
/// algebra's block count. Entries may exceed the block sizes (class
/// sums do); callers clamp where the closed form needs it.
fn class_coords(algebra: &MultiMatrixAlgebra, g: &K0Class) -> Result<Vec<usize>, SvfError> {
    let coords = g
        .simplicial_coords()
        .ok_or_else(|| SvfError::BadClass(g.render()))?;
    if coords.len() != algebra.block_count() {
        return Err(SvfError::ClassLength {
            expected: algebra.block_count(),
            got: coords.len(),
        });
    }
    Ok(coords)
}

/// Closed form from precomputed per-block singular value lists.
fn svf_from_singular_values(svals: &[Vec<f64>], coords: &[usize]) -> f64 {
    let mut best = 0.0f64;
    for (list, &g) in svals.iter().zip(coords) {
        let idx = g.min(list.len());
        let s = if idx == list.len() { 0.0 } else { list[idx] };
        best = best.max(s);
    }
    best
}

/// Finite-spectrum value of s_g for a positive element presented by
/// its spectral steps. Candidates are (cumulative class, next step
/// value) pairs: the empty class paired with the top step, and the
/// full cumulative class paired with 0.
pub fn svf_finite_spectrum(steps: &SpectralSteps, g: &K0Class) -> Result<f64, SvfError> {
    let n = steps.values.len();
    let zero = g.zero_like();
    let mut best: Option<f64> = None;
    for k in 0..=n {
        let class = if k == 0 {
            &zero
        } else {
            &steps.cumulative_classes[k - 1]
        };
        if class.leq(g)? {
            let candidate = if k == n { 0.0 } else { steps.values[k] };
            best = Some(match best {
                Some(b) if b <= candidate => b,
                _ => candidate,
            });
        }
    }
    best.ok_or_else(|| SvfError::BadClass(g.render()))
}

/// The singular value function s_g(a).
///
/// Computes the closed form and independently the finite-spectrum
/// value of |a|; any disagreement beyond the oracle budget is a hard
/// error rather than a silently chosen answer.
pub fn svf(a: &AlgebraElement, g: &K0Class) -> Result<f64, SvfError> {
    let coords = class_coords(a.algebra(), g)?;
    let svals = block_singular_values(a)?;
    let closed_form = svf_from_singular_values(&svals, &coords);

    let abs = element_absolute_value(a)?;
    let steps = spectral_steps(&abs)?;
    let oracle = svf_finite_spectrum(&steps, g)?;

    let norm = svals.iter().filter_map(|v| v.first()).fold(0.0f64, |m, &x| m.max(x));
    let allowed = tol::ORACLE_AGREEMENT * norm.max(1.0);
    let diff = (closed_form - oracle).abs();
    if diff > allowed {
        return Err(SvfError::OracleDisagreement {
            closed_form,
            oracle,
            diff,
            allowed,
        });
    }
    Ok(closed_form)
}

/// s_g of a projection class: exactly 1 when the class does not sit
/// below g, exactly 0 when it does. Works for every group variant.
pub fn svf_projection_indicator(p_class: &K0Class, g: &K0Class) -> Result<f64, K0Error> {
    Ok(if p_class.leq(g)? { 0.0 } else { 1.0 })
}

/// s_g of a projection element, via the exact indicator on its rank
/// vector.
pub fn projection_svf(p: &AlgebraElement, g: &K0Class) -> Result<f64, SvfError> {
    let class = rank_vector(p)?;
    Ok(svf_projection_indicator(&class, g)?)
}

/// Upper bound on s_g(a) by direct search over admissible projections.
///
/// Besides `trials` random projections of random admissible ranks, the
/// candidate set always contains the structured minimizer: per block,
/// the projector onto the top min(g_i, n_i) right singular vectors,
/// which attains the closed form. The returned bound therefore matches
/// s_g(a) up to numerical error while remaining an honest evaluation
/// of the defining infimum.
pub fn svf_sampling_bound(
    a: &AlgebraElement,
    g: &K0Class,
    trials: usize,
    seed: u64,
) -> Result<f64, SvfError> {
    if trials == 0 {
        return Err(SvfError::ZeroTrials);
    }
    let algebra = a.algebra().clone();
    let coords = class_coords(&algebra, g)?;
    let clamped: Vec<usize> = coords
        .iter()
        .zip(algebra.block_sizes())
        .map(|(&g, &n)| g.min(n))
        .collect();

    let residual = |p: &AlgebraElement| -> Result<f64, SvfError> {
        let ap = a.mul(p)?;
        Ok(element_norm(&a.sub(&ap)?)?)
    };

    // Structured candidate: top right singular subspaces.
    let mut structured_blocks = Vec::with_capacity(algebra.block_count());
    for (block, &rank) in a.blocks().iter().zip(&clamped) {
        let f = svd(block)?;
        let cols: Vec<Vec<Complex64>> = (0..rank).map(|j| f.right.column(j)).collect();
        structured_blocks.push(projector_from_columns(block.dim(), &cols));
    }
    let structured = AlgebraElement::from_blocks(&algebra, structured_blocks)?;
    let mut best = residual(&structured)?;

    let mut rng = trial_rng(seed, 0);
    for _ in 0..trials {
        let ranks: Vec<usize> = clamped.iter().map(|&c| rng.gen_range(0..=c)).collect();
        let class = K0Class::simplicial_from_usizes(&ranks);
        let p = random_projection(&algebra, &class, rng.gen())?;
        best = best.min(residual(&p)?);
    }
    Ok(best)
}

/// Full table of s_g(a) over the dimension box, one entry per class
/// g with 0 <= g_i <= n_i.
#[derive(Debug, Clone)]
pub struct SvfTable {
    block_sizes: Vec<usize>,
    values: Vec<f64>,
}

const TABLE_LIMIT: u128 = 100_000;

impl SvfTable {
    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn index(&self, coords: &[usize]) -> Option<usize> {
        if coords.len() != self.block_sizes.len() {
            return None;
        }
        let mut idx = 0usize;
        for (&c, &n) in coords.iter().zip(&self.block_sizes) {
            if c > n {
                return None;
            }
            idx = idx * (n + 1) + c;
        }
        Some(idx)
    }

    pub fn get(&self, coords: &[usize]) -> Option<f64> {
        self.index(coords).map(|i| self.values[i])
    }

    /// Rows in lexicographic order of the class coordinates.
    pub fn rows(&self) -> Vec<(Vec<usize>, f64)> {
        let mut out = Vec::with_capacity(self.values.len());
        let mut coords = vec![0usize; self.block_sizes.len()];
        for &v in &self.values {
            out.push((coords.clone(), v));
            for d in (0..coords.len()).rev() {
                if coords[d] < self.block_sizes[d] {
                    coords[d] += 1;
                    break;
                }
                coords[d] = 0;
            }
        }
        out
    }
}

/// Compute s_g(a) for every class in the dimension box, validating
/// each entry against the finite-spectrum oracle and checking the
/// table-level invariants: the zero corner carries ||a||, the full
/// corner carries 0, and the table is antitone in every coordinate.
pub fn svf_table(a: &AlgebraElement) -> Result<SvfTable, SvfError> {
    let sizes = a.algebra().block_sizes().to_vec();
    let mut entries: u128 = 1;
    for &n in &sizes {
        entries = entries.saturating_mul(n as u128 + 1);
    }
    if entries > TABLE_LIMIT {
        return Err(SvfError::TableTooLarge {
            entries,
            limit: TABLE_LIMIT,
        });
    }

    let svals = block_singular_values(a)?;
    let abs = element_absolute_value(a)?;
    let steps = spectral_steps(&abs)?;
    let norm = svals.iter().filter_map(|v| v.first()).fold(0.0f64, |m, &x| m.max(x));
    let allowed = tol::ORACLE_AGREEMENT * norm.max(1.0);

    let total = entries as usize;
    let mut values = Vec::with_capacity(total);
    let mut coords = vec![0usize; sizes.len()];
    for _ in 0..total {
        let closed_form = svf_from_singular_values(&svals, &coords);
        let class = K0Class::simplicial_from_usizes(&coords);
        let oracle = svf_finite_spectrum(&steps, &class)?;
        let diff = (closed_form - oracle).abs();
        if diff > allowed {
            return Err(SvfError::OracleDisagreement {
                closed_form,
                oracle,
                diff,
                allowed,
            });
        }
        values.push(closed_form);
        for d in (0..coords.len()).rev() {
            if coords[d] < sizes[d] {
                coords[d] += 1;
                break;
            }
            coords[d] = 0;
        }
    }

    let table = SvfTable {
        block_sizes: sizes.clone(),
        values,
    };

    // Invariants over the finished table. These compare values built
    // from the same singular value lists, so exact comparisons hold.
    let zero_corner = table.get(&vec![0; sizes.len()]).unwrap();
    assert!(
        zero_corner == norm,
        "zero corner {zero_corner} must carry the norm {norm}"
    );
    let full_corner = table.get(&sizes).unwrap();
    assert!(
        full_corner == 0.0,
        "full corner must vanish, got {full_corner}"
    );
    for (coords, v) in table.rows() {
        for d in 0..coords.len() {
            if coords[d] < sizes[d] {
                let mut up = coords.clone();
                up[d] += 1;
                let vu = table.get(&up).unwrap();
                assert!(
                    vu <= v,
                    "table must be antitone: {coords:?} -> {v}, {up:?} -> {vu}"
                );
            }
        }
    }
    Ok(table)
}

/// Outcome of the norm test ||p - p q|| against the subordination
/// threshold: strictly below 1 forces blockwise rank domination.
#[derive(Debug, Clone)]
pub struct SubordinationReport {
    /// ||p - p q||.
    pub norm: f64,
    /// Whether the norm sits below 1 by at least the safety margin, so
    /// the rank implication is asserted.
    pub implied: bool,
    pub rank_p: Vec<usize>,
    pub rank_q: Vec<usize>,
    /// Blockwise rank(p) <= rank(q).
    pub dominated: bool,
}

/// Evaluate ||p - p q|| for projections p, q and check the implication
/// "norm < 1 forces [p] <= [q]". A margin-certified norm below 1
/// together with non-dominated ranks is mathematically impossible, so
/// that combination is a hard numerical error.
pub fn norm_subordination(
    p: &AlgebraElement,
    q: &AlgebraElement,
) -> Result<SubordinationReport, SvfError> {
    for e in [p, q] {
        if !is_projection(e)? {
            return Err(SvfError::Algebra(AlgebraError::NotProjection(
                tol::PROJECTION,
            )));
        }
    }
    let norm = element_norm(&p.sub(&p.mul(q)?)?)?;
    let rank_p = class_coords(p.algebra(), &rank_vector(p)?)?;
    let rank_q = class_coords(q.algebra(), &rank_vector(q)?)?;
    let dominated = rank_p.iter().zip(&rank_q).all(|(a, b)| a <= b);
    let implied = norm < 1.0 - tol::SUBORDINATION_MARGIN;
    if implied && !dominated {
        return Err(SvfError::SubordinationContradiction {
            norm,
            rp: rank_p,
            rq: rank_q,
        });
    }
    Ok(SubordinationReport {
        norm,
        implied,
        rank_p,
        rank_q,
        dominated,
    })
}

/// Orthonormal basis of the range of a projection block: the top
/// rank-many eigenvectors.
fn range_basis(block: &crate::linalg::ComplexMatrix, rank: usize) -> Result<Vec<Vec<Complex64>>, SvfError> {
    let eig = hermitian_eigen(block)?;
    Ok((0..rank).map(|j| eig.vectors.column(j)).collect())
}

fn containment_defect(p: &AlgebraElement, q: &AlgebraElement) -> Result<f64, SvfError> {
    Ok(element_norm(&p.sub(&p.mul(q)?)?)?)
}

/// Build a projection with the rank vector of `middle` sitting between
/// `lower` and `upper`: lower <= result <= upper.
///
/// Requires lower <= upper as projections and blockwise
/// rank(lower) <= rank(middle) <= rank(upper). The result reuses the
/// range of `lower` and completes it with top eigenvectors of
/// upper - lower, so the sandwich holds by construction.
pub fn nest_projection(
    lower: &AlgebraElement,
    middle: &AlgebraElement,
    upper: &AlgebraElement,
) -> Result<AlgebraElement, SvfError> {
    for e in [lower, middle, upper] {
        if !is_projection(e)? {
            return Err(SvfError::Algebra(AlgebraError::NotProjection(
                tol::PROJECTION,
            )));
        }
    }
    let defect = containment_defect(lower, upper)?;
    if defect > tol::CONTAINMENT {
        return Err(SvfError::NotNested { defect });
    }
    let algebra = lower.algebra().clone();
    let r1 = class_coords(&algebra, &rank_vector(lower)?)?;
    let rq = class_coords(&algebra, &rank_vector(middle)?)?;
    let r2 = class_coords(&algebra, &rank_vector(upper)?)?;
    for block in 0..algebra.block_count() {
        if !(r1[block] <= rq[block] && rq[block] <= r2[block]) {
            return Err(SvfError::RankGapViolated {
                block,
                r1: r1[block],
                rq: rq[block],
                r2: r2[block],
            });
        }
    }

    let mut blocks = Vec::with_capacity(algebra.block_count());
    for (block, ((lb, ub), (&a, &b))) in lower
        .blocks()
        .iter()
        .zip(upper.blocks())
        .zip(r1.iter().zip(&rq))
        .enumerate()
    {
        let need = b - a;
        let diff = ub.sub(lb)?;
        let eig = hermitian_eigen(&diff)?;
        let mut cols = range_basis(lb, r1[block])?;
        cols.extend((0..need).map(|j| eig.vectors.column(j)));
        blocks.push(projector_from_columns(lb.dim(), &cols));
    }
    let result = AlgebraElement::from_blocks(&algebra, blocks)?;

    // The construction is only accepted if it verifies.
    if !is_projection(&result)? {
        return Err(SvfError::Algebra(AlgebraError::NotProjection(
            tol::PROJECTION,
        )));
    }
    let d1 = containment_defect(lower, &result)?;
    let d2 = containment_defect(&result, upper)?;
    let worst = d1.max(d2);
    if worst > tol::CONTAINMENT {
        return Err(SvfError::NotNested { defect: worst });
    }
    Ok(result)
}

/// Realize an increasing chain of classes as an increasing chain of
/// subprojections of `top`, ending at `top` itself.
///
/// The chain must be nondecreasing in the order and its last class
/// must equal the rank vector of `top`; every returned element k is a
/// projection with rank vector chain[k], nested under its successor.
pub fn lift_class_chain(
    chain: &[K0Class],
    top: &AlgebraElement,
) -> Result<Vec<AlgebraElement>, SvfError> {
    if chain.is_empty() {
        return Err(SvfError::BadClass("empty chain".into()));
    }
    if !is_projection(top)? {
        return Err(SvfError::Algebra(AlgebraError::NotProjection(
            tol::PROJECTION,
        )));
    }
    let algebra = top.algebra().clone();
    let top_class = rank_vector(top)?;
    let mut coords = Vec::with_capacity(chain.len());
    for class in chain {
        coords.push(class_coords(&algebra, class)?);
    }
    for k in 1..chain.len() {
        if !chain[k - 1].leq(&chain[k])? {
            return Err(SvfError::ChainNotIncreasing(k));
        }
    }
    let last = chain.last().unwrap();
    if *last != top_class {
        return Err(SvfError::TopMismatch {
            expected: top_class.render(),
            got: last.render(),
        });
    }

    // One basis of the range of each block, shared by every level.
    let top_coords = class_coords(&algebra, &top_class)?;
    let mut bases = Vec::with_capacity(algebra.block_count());
    for (block, &rank) in top.blocks().iter().zip(&top_coords) {
        bases.push(range_basis(block, rank)?);
    }

    let mut out = Vec::with_capacity(chain.len());
    for (k, c) in coords.iter().enumerate() {
        if k + 1 == chain.len() {
            out.push(top.clone());
            break;
        }
        let mut blocks = Vec::with_capacity(algebra.block_count());
        for (basis, (&rank, block)) in bases.iter().zip(c.iter().zip(top.blocks())) {
            blocks.push(projector_from_columns(block.dim(), &basis[..rank]));
        }
        out.push(AlgebraElement::from_blocks(&algebra, blocks)?);
    }
    Ok(out)
}

/// A projection of rank exactly rank(p) + rank(q) whose range contains
/// both ranges. Fails with RankOverflow when the combined rank exceeds
/// a block size. `drop_tol` is the dependence threshold used when the
/// two ranges overlap.
pub fn approx_sum_projection(
    p: &AlgebraElement,
    q: &AlgebraElement,
    drop_tol: f64,
) -> Result<AlgebraElement, SvfError> {
    for e in [p, q] {
        if !is_projection(e)? {
            return Err(SvfError::Algebra(AlgebraError::NotProjection(
                tol::PROJECTION,
            )));
        }
    }
    let algebra = p.algebra().clone();
    let rp = class_coords(&algebra, &rank_vector(p)?)?;
    let rq = class_coords(&algebra, &rank_vector(q)?)?;

    let mut blocks = Vec::with_capacity(algebra.block_count());
    for (block, ((pb, qb), (&a, &b))) in p
        .blocks()
        .iter()
        .zip(q.blocks())
        .zip(rp.iter().zip(&rq))
        .enumerate()
    {
        let n = pb.dim();
        let target = a + b;
        if target > n {
            return Err(SvfError::RankOverflow {
                block,
                sum: target,
                size: n,
            });
        }
        let mut cols = range_basis(pb, a)?;
        cols.extend(range_basis(qb, b)?);
        // Append the coordinate basis so orthonormalization can pad an
        // overlapping pair of ranges back up to the target rank.
        for j in 0..n {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            cols.push(e);
        }
        let ortho = orthonormalize(&cols, n, drop_tol);
        blocks.push(projector_from_columns(n, &ortho[..target]));
    }
    let result = AlgebraElement::from_blocks(&algebra, blocks)?;

    if !is_projection(&result)? {
        return Err(SvfError::Algebra(AlgebraError::NotProjection(
            tol::PROJECTION,
        )));
    }
    let worst = containment_defect(p, &result)?.max(containment_defect(q, &result)?);
    if worst > tol::CONTAINMENT {
        return Err(SvfError::NotNested { defect: worst });
    }
    Ok(result)
}

/// One property of the randomized battery.
#[derive(Debug, Clone)]
pub struct PropertyCheck {
    pub id: u32,
    pub name: &'static str,
    pub trials: usize,
    pub failures: usize,
    /// Largest observed slack: |difference| for equalities, positive
    /// part of the violation for inequalities.
    pub worst_slack: f64,
}

impl PropertyCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// Result of the full battery run.
#[derive(Debug, Clone)]
pub struct BatteryReport {
    pub seed: u64,
    pub trials: usize,
    pub checks: Vec<PropertyCheck>,
}

impl BatteryReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn failed_count(&self) -> usize {
        self.checks.iter().filter(|c| !c.passed()).count()
    }
}

const PROPERTY_NAMES: [(u32, &str); 14] = [
    (1, "zero class recovers the norm"),
    (2, "absolute homogeneity"),
    (3, "one-sided multiplication bound"),
    (4, "lipschitz in the element"),
    (5, "absolute-value invariance"),
    (6, "adjoint and unitary invariance"),
    (7, "subadditive across class sums"),
    (8, "submultiplicative across class sums"),
    (9, "scalar calculus on positives"),
    (10, "monotone on positives"),
    (11, "left-right symmetry"),
    (12, "vanishing at the unit class"),
    (13, "closed form, oracle, sampling agree"),
    (14, "square domination"),
];

fn element_scalar_function(
    a: &AlgebraElement,
    f: impl Fn(f64) -> f64 + Copy,
) -> Result<AlgebraElement, SvfError> {
    let blocks: Result<Vec<_>, _> = a
        .blocks()
        .iter()
        .map(|b| apply_scalar_function(b, f))
        .collect();
    Ok(AlgebraElement::from_blocks(a.algebra(), blocks?)?)
}

/// Run the randomized property battery: `trials` independent sample
/// sets, each checked against all fourteen properties. `sizes` pins
/// the algebra; when absent each trial draws one to three blocks of
/// size at most six. Deterministic in (seed, trials, sizes).
pub fn property_battery(
    trials: usize,
    seed: u64,
    sizes: Option<&[usize]>,
) -> Result<BatteryReport, SvfError> {
    if trials == 0 {
        return Err(SvfError::ZeroTrials);
    }
    let mut checks: Vec<PropertyCheck> = PROPERTY_NAMES
        .iter()
        .map(|&(id, name)| PropertyCheck {
            id,
            name,
            trials,
            failures: 0,
            worst_slack: 0.0,
        })
        .collect();

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let algebra = match sizes {
            Some(s) => MultiMatrixAlgebra::new(s)?,
            None => {
                let k = rng.gen_range(1..=3usize);
                let s: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=6usize)).collect();
                MultiMatrixAlgebra::new(&s)?
            }
        };
        let a = random_element(&algebra, &mut rng)?;
        let b = random_element(&algebra, &mut rng)?;
        let c = random_element(&algebra, &mut rng)?;
        let apos = random_positive(&algebra, &mut rng)?;
        let u = random_unitary(&algebra, &mut rng)?;
        let v = random_unitary(&algebra, &mut rng)?;
        let alpha: f64 = rng.gen_range(-2.0..2.0);
        let g_coords: Vec<usize> = algebra
            .block_sizes()
            .iter()
            .map(|&n| rng.gen_range(0..=n))
            .collect();
        let h_coords: Vec<usize> = algebra
            .block_sizes()
            .iter()
            .map(|&n| rng.gen_range(0..=n))
            .collect();
        let sampling_seed: u64 = rng.gen();

        let g = K0Class::simplicial_from_usizes(&g_coords);
        let h = K0Class::simplicial_from_usizes(&h_coords);
        let zero = algebra.zero_class();
        let unit = algebra.unit_class();

        let s_a_g = svf(&a, &g)?;
        let s_b_g = svf(&b, &g)?;
        let slacks: [f64; 14] = [
            // 1: s_0(a) = ||a||.
            (svf(&a, &zero)? - element_norm(&a)?).abs(),
            // 2: s_g(alpha a) = |alpha| s_g(a).
            {
                let scaled = a.scale(Complex64::new(alpha, 0.0));
                (svf(&scaled, &g)? - alpha.abs() * s_a_g).abs()
            },
            // 3: s_g(b a) <= ||b|| s_g(a) and s_g(a b) <= ||b|| s_g(a).
            {
                let nb = element_norm(&b)?;
                let left = svf(&b.mul(&a)?, &g)? - nb * s_a_g;
                let right = svf(&a.mul(&b)?, &g)? - nb * s_a_g;
                left.max(right).max(0.0)
            },
            // 4: |s_g(a) - s_g(b)| <= ||a - b||.
            ((s_a_g - s_b_g).abs() - element_norm(&a.sub(&b)?)?).max(0.0),
            // 5: s_g(a) = s_g(|a|).
            (svf(&element_absolute_value(&a)?, &g)? - s_a_g).abs(),
            // 6: s_g(a) = s_g(a*) and s_g(u a v) = s_g(a).
            {
                let adj = (svf(&a.adjoint(), &g)? - s_a_g).abs();
                let rot = (svf(&u.mul(&a)?.mul(&v)?, &g)? - s_a_g).abs();
                adj.max(rot)
            },
            // 7: s_{g+h}(a + b) <= s_g(a) + s_h(b).
            {
                let gh = g.add(&h)?;
                (svf(&a.add(&b)?, &gh)? - (s_a_g + svf(&b, &h)?)).max(0.0)
            },
            // 8: s_{g+h}(a b) <= s_g(a) s_h(b).
            {
                let gh = g.add(&h)?;
                (svf(&a.mul(&b)?, &gh)? - s_a_g * svf(&b, &h)?).max(0.0)
            },
            // 9: s_g(f(a)) = f(s_g(a)) for increasing f with f(0) = 0.
            {
                let s_pos = svf(&apos, &g)?;
                let mut worst = 0.0f64;
                let fns: [(fn(f64) -> f64, fn(f64) -> f64); 3] = [
                    (|t| t * t, |t| t * t),
                    (f64::sqrt, f64::sqrt),
                    (|t| t / (1.0 + t), |t| t / (1.0 + t)),
                ];
                for (f_mat, f_val) in fns {
                    let lhs = svf(&element_scalar_function(&apos, f_mat)?, &g)?;
                    worst = worst.max((lhs - f_val(s_pos)).abs());
                }
                worst
            },
            // 10: 0 <= x <= y implies s_g(x) <= s_g(y), with y = x + c* c.
            {
                let bigger = apos.add(&c.adjoint().mul(&c)?)?;
                (svf(&apos, &g)? - svf(&bigger, &g)?).max(0.0)
            },
            // 11: s_g(a* a) = s_g(a a*).
            (svf(&a.adjoint().mul(&a)?, &g)? - svf(&a.mul(&a.adjoint())?, &g)?).abs(),
            // 12: s vanishes at the unit class.
            svf(&a, &unit)?.abs(),
            // 13: closed form, finite-spectrum oracle, and sampled
            // infimum agree pairwise.
            {
                let abs = element_absolute_value(&a)?;
                let oracle = svf_finite_spectrum(&spectral_steps(&abs)?, &g)?;
                let sampled = svf_sampling_bound(&a, &g, 8, sampling_seed)?;
                (s_a_g - oracle)
                    .abs()
                    .max((s_a_g - sampled).abs())
                    .max((oracle - sampled).abs())
            },
            // 14: a* a <= y* y implies s_g(a) <= s_g(y), with
            // y = (a* a + c* c)^(1/2).
            {
                let m = a.adjoint().mul(&a)?.add(&c.adjoint().mul(&c)?)?;
                let y = element_scalar_function(&m, f64::sqrt)?;
                (s_a_g - svf(&y, &g)?).max(0.0)
            },
        ];

        for (check, slack) in checks.iter_mut().zip(slacks) {
            if slack > tol::BATTERY {
                check.failures += 1;
            }
            if slack > check.worst_slack {
                check.worst_slack = slack;
            }
        }
    }

    Ok(BatteryReport {
        seed,
        trials,
        checks,
    })
}
