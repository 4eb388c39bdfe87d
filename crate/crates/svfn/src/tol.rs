//! Central tolerance policy.
//!
//! Every numeric comparison in the crate routes through one of these
//! constants so the accuracy contract lives in a single place.

/// Structural predicates (hermitian, positive, projection flatness),
/// relative to max(1, norm of the input).
pub const STRUCTURAL: f64 = 1e-12;

/// Idempotency and self-adjointness slack for projection checks,
/// absolute. Projections in this crate have norm about 1, so an
/// absolute budget is the honest one.
pub const PROJECTION: f64 = 1e-10;

/// Reconstruction and equality-of-decompositions budget, relative to
/// max(1, norm of the input).
pub const RECONSTRUCTION: f64 = 1e-10;

/// Slack allowed when a randomized trial checks an exact inequality or
/// equality of singular value functions.
pub const BATTERY: f64 = 1e-8;

/// Two eigenvalues closer than this (times max(1, norm)) are treated
/// as one spectral step, and anything at most this far from zero is
/// treated as zero.
pub const EIGEN_MERGE: f64 = 1e-10;

/// Margin demanded below 1.0 before the subordination implication
/// "norm < 1 forces rank domination" is asserted. The implication
/// holds for the exact norm; the margin keeps floating point rounding
/// from promoting a norm-exactly-1 pair into the hypothesis.
pub const SUBORDINATION_MARGIN: f64 = 1e-9;

/// Agreement demanded between the closed-form singular value function
/// and the finite-spectrum oracle. Disagreement past this is a hard
/// error, never silently reconciled.
pub const ORACLE_AGREEMENT: f64 = 1e-8;

/// Range-containment slack: ||p - p q|| at most this certifies that
/// the range of p sits inside the range of q for the nesting and
/// chain-lifting constructions (both ranges come from eigensolves, so
/// this is looser than the raw projection tolerance).
pub const CONTAINMENT: f64 = 1e-9;
