//! Finite-dimensional multi-matrix algebras A = M_{n_1} (+) ... (+) M_{n_k}
//! and their elements.
//!
//! Elements are tuples of square complex blocks. The operator norm is the
//! max of the block norms, K0 is Z^k with the componentwise order, and a
//! projection class is its vector of block ranks.

use crate::k0::{K0Class, K0Error};
use crate::linalg::{
    self, absolute_value, hermitian_eigen, operator_norm, svd, ComplexMatrix, LinalgError,
};
use crate::tol;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("algebra must have between 1 and 8 blocks, got {0}")]
    BadBlockCount(usize),
    #[error("block {index} must have size between 1 and 4096, got {size}")]
    BadBlockSize { index: usize, size: usize },
    #[error("element has {got} blocks, algebra has {expected}")]
    BlockCountMismatch { expected: usize, got: usize },
    #[error("block {index} has dimension {got}, algebra wants {expected}")]
    BlockShapeMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("elements live in different algebras")]
    AlgebraMismatch,
    #[error("element is not a projection within tolerance {0:e}")]
    NotProjection(f64),
    #[error("element is not positive: block {block} eigenvalue {eigenvalue:e}")]
    NotPositive { block: usize, eigenvalue: f64 },
    #[error("rank {rank} out of range for block {block} of size {size}")]
    RankOutOfRange {
        block: usize,
        rank: String,
        size: usize,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    K0(#[from] K0Error),
}

/// Shape of a multi-matrix algebra: the block sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiMatrixAlgebra {
    block_sizes: Vec<usize>,
}

impl MultiMatrixAlgebra {
    pub fn new(block_sizes: &[usize]) -> Result<Self, AlgebraError> {
        if block_sizes.is_empty() || block_sizes.len() > 8 {
            return Err(AlgebraError::BadBlockCount(block_sizes.len()));
        }
        for (index, &size) in block_sizes.iter().enumerate() {
            if size == 0 || size > 4096 {
                return Err(AlgebraError::BadBlockSize { index, size });
            }
        }
        Ok(MultiMatrixAlgebra {
            block_sizes: block_sizes.to_vec(),
        })
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn block_count(&self) -> usize {
        self.block_sizes.len()
    }

    /// K0 class of the unit: the block-size vector, the top of the box.
    pub fn unit_class(&self) -> K0Class {
        K0Class::simplicial_from_usizes(&self.block_sizes)
    }

    pub fn zero_class(&self) -> K0Class {
        K0Class::Simplicial(vec![num_bigint::BigInt::zero(); self.block_sizes.len()])
    }
}

/// An element of a multi-matrix algebra: one square block per summand.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    algebra: MultiMatrixAlgebra,
    blocks: Vec<ComplexMatrix>,
}

impl AlgebraElement {
    pub fn from_blocks(
        algebra: &MultiMatrixAlgebra,
        blocks: Vec<ComplexMatrix>,
    ) -> Result<Self, AlgebraError> {
        if blocks.len() != algebra.block_count() {
            return Err(AlgebraError::BlockCountMismatch {
                expected: algebra.block_count(),
                got: blocks.len(),
            });
        }
        for (index, (block, &size)) in blocks.iter().zip(algebra.block_sizes()).enumerate() {
            if block.dim() != size {
                return Err(AlgebraError::BlockShapeMismatch {
                    index,
                    expected: size,
                    got: block.dim(),
                });
            }
        }
        Ok(AlgebraElement {
            algebra: algebra.clone(),
            blocks,
        })
    }

    pub fn zero(algebra: &MultiMatrixAlgebra) -> Self {
        AlgebraElement {
            algebra: algebra.clone(),
            blocks: algebra
                .block_sizes()
                .iter()
                .map(|&n| ComplexMatrix::zeros(n))
                .collect(),
        }
    }

    pub fn unit(algebra: &MultiMatrixAlgebra) -> Self {
        AlgebraElement {
            algebra: algebra.clone(),
            blocks: algebra
                .block_sizes()
                .iter()
                .map(|&n| ComplexMatrix::identity(n))
                .collect(),
        }
    }

    /// Element with real diagonal blocks.
    pub fn from_real_diags(
        algebra: &MultiMatrixAlgebra,
        diags: &[Vec<f64>],
    ) -> Result<Self, AlgebraError> {
        let blocks = diags
            .iter()
            .map(|d| ComplexMatrix::from_real_diag(d))
            .collect();
        Self::from_blocks(algebra, blocks)
    }

    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i]
    }

    fn check_same_algebra(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.algebra != other.algebra {
            return Err(AlgebraError::AlgebraMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_algebra(other)?;
        let blocks: Result<Vec<_>, _> = self
            .blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| a.add(b))
            .collect();
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: blocks?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_algebra(other)?;
        let blocks: Result<Vec<_>, _> = self
            .blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| a.sub(b))
            .collect();
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: blocks?,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same_algebra(other)?;
        let blocks: Result<Vec<_>, _> = self
            .blocks
            .iter()
            .zip(other.blocks.iter())
            .map(|(a, b)| a.mul(b))
            .collect();
        Ok(AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: blocks?,
        })
    }

    pub fn adjoint(&self) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    pub fn scale(&self, s: Complex64) -> Self {
        AlgebraElement {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(s)).collect(),
        }
    }
}

/// Operator norm: the max over blocks of the largest singular value.
pub fn element_norm(a: &AlgebraElement) -> Result<f64, AlgebraError> {
    let mut best = 0.0f64;
    for block in a.blocks() {
        best = best.max(operator_norm(block)?);
    }
    Ok(best)
}

/// Whether p is a projection: self-adjoint and idempotent within the
/// absolute projection budget, blockwise.
pub fn is_projection(p: &AlgebraElement) -> Result<bool, AlgebraError> {
    for block in p.blocks() {
        let sa = operator_norm(&block.sub(&block.adjoint())?)?;
        if sa > tol::PROJECTION {
            return Ok(false);
        }
        let idem = operator_norm(&block.mul(block)?.sub(block)?)?;
        if idem > tol::PROJECTION {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Block ranks of a projection as a simplicial K0 class. Ranks are read
/// off the spectrum, counting eigenvalues above 1/2; for an honest
/// projection the spectrum clusters at 0 and 1 so the cut is stable.
pub fn rank_vector(p: &AlgebraElement) -> Result<K0Class, AlgebraError> {
    if !is_projection(p)? {
        return Err(AlgebraError::NotProjection(tol::PROJECTION));
    }
    let mut ranks = Vec::with_capacity(p.blocks().len());
    for block in p.blocks() {
        let eig = hermitian_eigen(block)?;
        ranks.push(eig.values.iter().filter(|&&v| v > 0.5).count());
    }
    Ok(K0Class::simplicial_from_usizes(&ranks))
}

/// Descending distinct eigenvalues of a positive element, with the
/// cumulative K0 classes of its spectral projections.
///
/// values[j] is the (j+1)-th distinct eigenvalue, cumulative_classes[j]
/// is the class of the projection onto all eigenspaces with eigenvalue
/// >= values[j]. Eigenvalues closer than the merge budget are one step,
/// and eigenvalues at most the merge budget above zero do not count as
/// a step at all.
#[derive(Debug, Clone)]
pub struct SpectralSteps {
    pub values: Vec<f64>,
    pub cumulative_classes: Vec<K0Class>,
}

impl SpectralSteps {
    pub fn step_count(&self) -> usize {
        self.values.len()
    }
}

/// Spectral steps plus the actual cumulative spectral projections,
/// blockwise, as elements of the algebra.
pub fn spectral_decomposition(
    a: &AlgebraElement,
) -> Result<(SpectralSteps, Vec<AlgebraElement>), AlgebraError> {
    let norm = element_norm(a)?;
    let merge = tol::EIGEN_MERGE * norm.max(1.0);

    // Eigen data per block; positivity check rides along.
    let mut eigs = Vec::with_capacity(a.blocks().len());
    for (bi, block) in a.blocks().iter().enumerate() {
        let eig = hermitian_eigen(block).map_err(|e| match e {
            LinalgError::NotHermitian { .. } => AlgebraError::NotPositive {
                block: bi,
                eigenvalue: f64::NAN,
            },
            other => AlgebraError::Linalg(other),
        })?;
        if let Some(&min) = eig.values.last() {
            if min < -tol::STRUCTURAL * norm.max(1.0) {
                return Err(AlgebraError::NotPositive {
                    block: bi,
                    eigenvalue: min,
                });
            }
        }
        eigs.push(eig);
    }

    // Pool (eigenvalue, block, index-within-block), sort descending,
    // then cluster by the merge budget.
    let mut pool: Vec<(f64, usize, usize)> = Vec::new();
    for (bi, eig) in eigs.iter().enumerate() {
        for (vi, &v) in eig.values.iter().enumerate() {
            pool.push((v, bi, vi));
        }
    }
    pool.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());

    let k = a.blocks().len();
    let mut values = Vec::new();
    let mut cumulative_counts: Vec<Vec<usize>> = Vec::new();
    let mut running = vec![0usize; k];
    let mut idx = 0;
    while idx < pool.len() {
        let head = pool[idx].0;
        if head <= merge {
            break; // the zero cluster is not a step
        }
        let mut end = idx;
        while end < pool.len() && pool[idx].0 - pool[end].0 <= merge {
            end += 1;
        }
        for item in &pool[idx..end] {
            running[item.1] += 1;
        }
        values.push(head);
        cumulative_counts.push(running.clone());
        idx = end;
    }

    // Cumulative spectral projections from the per-block eigenvectors.
    let mut projections = Vec::with_capacity(values.len());
    for counts in &cumulative_counts {
        let mut blocks = Vec::with_capacity(k);
        for (bi, eig) in eigs.iter().enumerate() {
            let n = a.block(bi).dim();
            let cols: Vec<Vec<Complex64>> =
                (0..counts[bi]).map(|j| eig.vectors.column(j)).collect();
            blocks.push(projector_from_columns(n, &cols));
        }
        projections.push(AlgebraElement::from_blocks(a.algebra(), blocks)?);
    }

    let cumulative_classes = cumulative_counts
        .iter()
        .map(|c| K0Class::simplicial_from_usizes(c))
        .collect();
    Ok((
        SpectralSteps {
            values,
            cumulative_classes,
        },
        projections,
    ))
}

/// Spectral steps of a positive element.
pub fn spectral_steps(a: &AlgebraElement) -> Result<SpectralSteps, AlgebraError> {
    Ok(spectral_decomposition(a)?.0)
}

/// Sum of v v^* over the given orthonormal columns.
pub fn projector_from_columns(dim: usize, cols: &[Vec<Complex64>]) -> ComplexMatrix {
    let mut p = ComplexMatrix::zeros(dim);
    for col in cols {
        for i in 0..dim {
            for j in 0..dim {
                let add = col[i] * col[j].conj();
                p.set(i, j, p.get(i, j) + add);
            }
        }
    }
    p
}

/// Deterministic stream for trial t of a seeded run. Every randomized
/// routine in the crate derives its draws this way, so runs are
/// reproducible from (seed, trial) alone.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Standard complex gaussian via Box-Muller.
fn standard_complex(rng: &mut impl Rng) -> Complex64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen();
    let r = (-2.0 * u1.ln()).sqrt();
    let th = 2.0 * std::f64::consts::PI * u2;
    Complex64::new(r * th.cos(), r * th.sin()) * std::f64::consts::FRAC_1_SQRT_2
}

fn ginibre(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    let data: Vec<Complex64> = (0..n * n).map(|_| standard_complex(rng)).collect();
    ComplexMatrix::new(n, data).expect("gaussian entries are finite")
}

/// Haar-distributed unitary: Gram-Schmidt applied to a Ginibre matrix.
/// Modified Gram-Schmidt with positive diagonal normalization gives the
/// Haar measure exactly.
pub fn haar_unitary(n: usize, rng: &mut impl Rng) -> ComplexMatrix {
    loop {
        let g = ginibre(n, rng);
        let cols: Vec<Vec<Complex64>> = (0..n).map(|j| g.column(j)).collect();
        let ortho = linalg::orthonormalize(&cols, n, 1e-8);
        if ortho.len() == n {
            return ComplexMatrix::from_columns(n, &ortho);
        }
        // Ginibre is almost surely full rank; retry on the null event.
    }
}

/// Random projection with the prescribed rank vector: a Haar conjugate
/// of the coordinate projection in each block.
pub fn random_projection(
    algebra: &MultiMatrixAlgebra,
    r: &K0Class,
    seed: u64,
) -> Result<AlgebraElement, AlgebraError> {
    let coords = match r.simplicial_coords() {
        Some(c) => c,
        None => {
            return Err(AlgebraError::K0(K0Error::VariantMismatch(
                r.variant_name(),
                "simplicial",
            )))
        }
    };
    if coords.len() != algebra.block_count() {
        return Err(AlgebraError::K0(K0Error::LengthMismatch(
            coords.len(),
            algebra.block_count(),
        )));
    }
    for (block, (&rank, &size)) in coords.iter().zip(algebra.block_sizes()).enumerate() {
        if rank > size {
            return Err(AlgebraError::RankOutOfRange {
                block,
                rank: rank.to_string(),
                size,
            });
        }
    }
    let mut rng = trial_rng(seed, 0);
    let mut blocks = Vec::with_capacity(algebra.block_count());
    for (&rank, &size) in coords.iter().zip(algebra.block_sizes()) {
        let u = haar_unitary(size, &mut rng);
        let cols: Vec<Vec<Complex64>> = (0..rank).map(|j| u.column(j)).collect();
        blocks.push(projector_from_columns(size, &cols));
    }
    AlgebraElement::from_blocks(algebra, blocks)
}

/// Random test element: Ginibre blocks rescaled to norm at most 2, with
/// an occasional rank-deficient draw so degenerate spectra get covered.
pub fn random_element(
    algebra: &MultiMatrixAlgebra,
    rng: &mut impl Rng,
) -> Result<AlgebraElement, AlgebraError> {
    let mut blocks = Vec::with_capacity(algebra.block_count());
    for &n in algebra.block_sizes() {
        let mut g = ginibre(n, rng);
        if rng.gen_bool(0.2) {
            // Zero out a random set of columns to force rank deficiency.
            let keep: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.6)).collect();
            for j in 0..n {
                if !keep[j] {
                    for i in 0..n {
                        g.set(i, j, Complex64::zero());
                    }
                }
            }
        }
        blocks.push(g);
    }
    let mut a = AlgebraElement::from_blocks(algebra, blocks)?;
    let norm = element_norm(&a)?;
    if norm > 2.0 {
        a = a.scale(Complex64::new(2.0 / norm, 0.0));
    }
    Ok(a)
}

/// Random positive element c^* c, rescaled to norm at most 2.
pub fn random_positive(
    algebra: &MultiMatrixAlgebra,
    rng: &mut impl Rng,
) -> Result<AlgebraElement, AlgebraError> {
    let c = random_element(algebra, rng)?;
    let mut a = c.adjoint().mul(&c)?;
    let norm = element_norm(&a)?;
    if norm > 2.0 {
        a = a.scale(Complex64::new(2.0 / norm, 0.0));
    }
    Ok(a)
}

/// Random unitary element, blockwise Haar.
pub fn random_unitary(
    algebra: &MultiMatrixAlgebra,
    rng: &mut impl Rng,
) -> Result<AlgebraElement, AlgebraError> {
    let blocks = algebra
        .block_sizes()
        .iter()
        .map(|&n| haar_unitary(n, rng))
        .collect();
    AlgebraElement::from_blocks(algebra, blocks)
}

/// The element |a| = (a^* a)^(1/2), blockwise.
pub fn element_absolute_value(a: &AlgebraElement) -> Result<AlgebraElement, AlgebraError> {
    let blocks: Result<Vec<_>, _> = a.blocks().iter().map(absolute_value).collect();
    Ok(AlgebraElement::from_blocks(a.algebra(), blocks?)?)
}

/// Per-block singular values, descending within each block.
pub fn block_singular_values(a: &AlgebraElement) -> Result<Vec<Vec<f64>>, AlgebraError> {
    let mut out = Vec::with_capacity(a.blocks().len());
    for block in a.blocks() {
        out.push(svd(block)?.values);
    }
    Ok(out)
}
