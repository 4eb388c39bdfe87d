//! Exact ordered K0 arithmetic for the group models used by the engine.
//!
//! Four models are supported:
//!
//! * `Simplicial`: Z^k with the componentwise order and the block-size
//!   vector as order unit. This is K0 of a multi-matrix algebra.
//! * `Dyadic`: Z[1/2] ordered by the reals, order unit 1. This is K0 of
//!   the 2^infinity UHF algebra.
//! * `Rational`: Q ordered by the reals, order unit 1.
//! * `LexPair`: Q (+) Z with positive cone {(u,v) : u > 0} union {0} and
//!   order unit (1, 0). The second coordinate is invisible to states,
//!   which is what makes this model a source of counterexamples.
//!
//! All arithmetic and comparisons are exact. Floating point never enters
//! this module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum K0Error {
    #[error("class variants do not match: {0} vs {1}")]
    VariantMismatch(&'static str, &'static str),
    #[error("simplicial classes have different lengths: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("denominator {0} is not a power of two")]
    NotDyadic(String),
    #[error("cannot parse {0:?} as a {1} class")]
    Parse(String, &'static str),
}

/// Which group model a class or group spec lives in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupVariant {
    /// Z^k, componentwise order.
    Simplicial(usize),
    /// Z[1/2], real order.
    Dyadic,
    /// Q, real order.
    Rational,
    /// Q (+) Z, strict-first-coordinate cone.
    LexPair,
}

/// An ordered abelian group with a distinguished order unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGroupSpec {
    pub variant: GroupVariant,
    pub order_unit: K0Class,
}

impl OrderedGroupSpec {
    /// Z^k with the block sizes of a multi-matrix algebra as order unit.
    pub fn simplicial(block_sizes: &[usize]) -> Self {
        OrderedGroupSpec {
            variant: GroupVariant::Simplicial(block_sizes.len()),
            order_unit: K0Class::simplicial_from_usizes(block_sizes),
        }
    }

    /// Z[1/2] with order unit 1.
    pub fn dyadic() -> Self {
        OrderedGroupSpec {
            variant: GroupVariant::Dyadic,
            order_unit: K0Class::Dyadic(BigRational::one()),
        }
    }

    /// Q with order unit 1.
    pub fn rational() -> Self {
        OrderedGroupSpec {
            variant: GroupVariant::Rational,
            order_unit: K0Class::Rational(BigRational::one()),
        }
    }

    /// Q (+) Z with order unit (1, 0).
    pub fn lex_pair() -> Self {
        OrderedGroupSpec {
            variant: GroupVariant::LexPair,
            order_unit: K0Class::LexPair(BigRational::one(), BigInt::zero()),
        }
    }
}

/// An element of one of the supported ordered K0 groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum K0Class {
    Simplicial(Vec<BigInt>),
    Dyadic(BigRational),
    Rational(BigRational),
    LexPair(BigRational, BigInt),
}

fn is_power_of_two(n: &BigInt) -> bool {
    if n.is_zero() || n.is_negative() {
        return false;
    }
    let (_, bytes) = n.to_bytes_be();
    let mut seen = 0u32;
    for b in &bytes {
        seen += b.count_ones();
    }
    seen == 1
}

/// A rational is dyadic when its reduced denominator is a power of two.
pub fn is_dyadic(r: &BigRational) -> bool {
    is_power_of_two(r.denom())
}

/// Exponent e with denom = 2^e for a dyadic rational.
pub fn dyadic_exponent(r: &BigRational) -> Option<u32> {
    if !is_dyadic(r) {
        return None;
    }
    Some(r.denom().bits() as u32 - 1)
}

impl K0Class {
    pub fn variant_name(&self) -> &'static str {
        match self {
            K0Class::Simplicial(_) => "simplicial",
            K0Class::Dyadic(_) => "dyadic",
            K0Class::Rational(_) => "rational",
            K0Class::LexPair(_, _) => "lex_pair",
        }
    }

    pub fn simplicial_from_usizes(v: &[usize]) -> Self {
        K0Class::Simplicial(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn simplicial_from_i64(v: &[i64]) -> Self {
        K0Class::Simplicial(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Dyadic class m/2^e.
    pub fn dyadic(m: i64, e: u32) -> Self {
        K0Class::Dyadic(BigRational::new(
            BigInt::from(m),
            BigInt::from(2u8).pow(e),
        ))
    }

    pub fn dyadic_from_rational(r: BigRational) -> Result<Self, K0Error> {
        if !is_dyadic(&r) {
            return Err(K0Error::NotDyadic(r.denom().to_string()));
        }
        Ok(K0Class::Dyadic(r))
    }

    pub fn rational(p: i64, q: i64) -> Self {
        K0Class::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    pub fn lex(p: i64, q: i64, v: i64) -> Self {
        K0Class::LexPair(
            BigRational::new(BigInt::from(p), BigInt::from(q)),
            BigInt::from(v),
        )
    }

    /// The zero class of the same variant and shape.
    pub fn zero_like(&self) -> Self {
        match self {
            K0Class::Simplicial(v) => K0Class::Simplicial(vec![BigInt::zero(); v.len()]),
            K0Class::Dyadic(_) => K0Class::Dyadic(BigRational::zero()),
            K0Class::Rational(_) => K0Class::Rational(BigRational::zero()),
            K0Class::LexPair(_, _) => K0Class::LexPair(BigRational::zero(), BigInt::zero()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            K0Class::Simplicial(v) => v.iter().all(|x| x.is_zero()),
            K0Class::Dyadic(r) | K0Class::Rational(r) => r.is_zero(),
            K0Class::LexPair(u, v) => u.is_zero() && v.is_zero(),
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<(), K0Error> {
        match (self, other) {
            (K0Class::Simplicial(a), K0Class::Simplicial(b)) => {
                if a.len() != b.len() {
                    Err(K0Error::LengthMismatch(a.len(), b.len()))
                } else {
                    Ok(())
                }
            }
            (K0Class::Dyadic(_), K0Class::Dyadic(_))
            | (K0Class::Rational(_), K0Class::Rational(_))
            | (K0Class::LexPair(_, _), K0Class::LexPair(_, _)) => Ok(()),
            _ => Err(K0Error::VariantMismatch(
                self.variant_name(),
                other.variant_name(),
            )),
        }
    }

    /// Order relation of the group. Exact; a partial order in general,
    /// total for the dyadic and rational models.
    pub fn leq(&self, other: &Self) -> Result<bool, K0Error> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (K0Class::Simplicial(a), K0Class::Simplicial(b)) => {
                a.iter().zip(b.iter()).all(|(x, y)| x <= y)
            }
            (K0Class::Dyadic(a), K0Class::Dyadic(b)) => a <= b,
            (K0Class::Rational(a), K0Class::Rational(b)) => a <= b,
            (K0Class::LexPair(u1, v1), K0Class::LexPair(u2, v2)) => {
                // d = other - self must lie in {(u,v) : u > 0} union {0}.
                let du = u2 - u1;
                if du.is_positive() {
                    true
                } else {
                    du.is_zero() && v1 == v2
                }
            }
            _ => unreachable!("variants checked above"),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self, K0Error> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (K0Class::Simplicial(a), K0Class::Simplicial(b)) => {
                K0Class::Simplicial(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect())
            }
            (K0Class::Dyadic(a), K0Class::Dyadic(b)) => K0Class::Dyadic(a + b),
            (K0Class::Rational(a), K0Class::Rational(b)) => K0Class::Rational(a + b),
            (K0Class::LexPair(u1, v1), K0Class::LexPair(u2, v2)) => {
                K0Class::LexPair(u1 + u2, v1 + v2)
            }
            _ => unreachable!("variants checked above"),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, K0Error> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (K0Class::Simplicial(a), K0Class::Simplicial(b)) => {
                K0Class::Simplicial(a.iter().zip(b.iter()).map(|(x, y)| x - y).collect())
            }
            (K0Class::Dyadic(a), K0Class::Dyadic(b)) => K0Class::Dyadic(a - b),
            (K0Class::Rational(a), K0Class::Rational(b)) => K0Class::Rational(a - b),
            (K0Class::LexPair(u1, v1), K0Class::LexPair(u2, v2)) => {
                K0Class::LexPair(u1 - u2, v1 - v2)
            }
            _ => unreachable!("variants checked above"),
        })
    }

    /// Integer scaling, available in every variant.
    pub fn scale(&self, n: i64) -> Self {
        let n = BigInt::from(n);
        match self {
            K0Class::Simplicial(v) => K0Class::Simplicial(v.iter().map(|x| x * &n).collect()),
            K0Class::Dyadic(r) => K0Class::Dyadic(r * BigRational::from_integer(n)),
            K0Class::Rational(r) => K0Class::Rational(r * BigRational::from_integer(n)),
            K0Class::LexPair(u, v) => {
                K0Class::LexPair(u * BigRational::from_integer(n.clone()), v * &n)
            }
        }
    }

    /// Simplicial coordinates as usize, when they fit and are nonnegative.
    pub fn simplicial_coords(&self) -> Option<Vec<usize>> {
        match self {
            K0Class::Simplicial(v) => v.iter().map(|x| x.to_usize()).collect(),
            _ => None,
        }
    }

    /// Canonical text form. Simplicial "(g1,...,gk)", dyadic "m/2^e"
    /// (plain "m" when integral), rational "p/q" (plain "p" when
    /// integral), lex pair "(r; v)".
    pub fn render(&self) -> String {
        match self {
            K0Class::Simplicial(v) => {
                let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                format!("({})", parts.join(","))
            }
            K0Class::Dyadic(r) => render_dyadic(r),
            K0Class::Rational(r) => render_rational(r),
            K0Class::LexPair(u, v) => format!("({}; {})", render_rational(u), v),
        }
    }

    /// Parse the canonical text form for a given variant.
    pub fn parse(s: &str, variant: &GroupVariant) -> Result<Self, K0Error> {
        let s = s.trim();
        match variant {
            GroupVariant::Simplicial(k) => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| K0Error::Parse(s.to_string(), "simplicial"))?;
                let coords: Result<Vec<BigInt>, _> = inner
                    .split(',')
                    .map(|t| t.trim().parse::<BigInt>())
                    .collect();
                let coords = coords.map_err(|_| K0Error::Parse(s.to_string(), "simplicial"))?;
                if coords.len() != *k {
                    return Err(K0Error::LengthMismatch(coords.len(), *k));
                }
                Ok(K0Class::Simplicial(coords))
            }
            GroupVariant::Dyadic => {
                let r = parse_dyadic_str(s)?;
                Ok(K0Class::Dyadic(r))
            }
            GroupVariant::Rational => {
                let r = parse_rational_str(s)
                    .ok_or_else(|| K0Error::Parse(s.to_string(), "rational"))?;
                Ok(K0Class::Rational(r))
            }
            GroupVariant::LexPair => {
                let inner = s
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(|| K0Error::Parse(s.to_string(), "lex_pair"))?;
                let mut parts = inner.split(';');
                let u = parts
                    .next()
                    .and_then(|t| parse_rational_str(t.trim()))
                    .ok_or_else(|| K0Error::Parse(s.to_string(), "lex_pair"))?;
                let v = parts
                    .next()
                    .and_then(|t| t.trim().parse::<BigInt>().ok())
                    .ok_or_else(|| K0Error::Parse(s.to_string(), "lex_pair"))?;
                if parts.next().is_some() {
                    return Err(K0Error::Parse(s.to_string(), "lex_pair"));
                }
                Ok(K0Class::LexPair(u, v))
            }
        }
    }
}

pub fn render_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn render_dyadic(r: &BigRational) -> String {
    match dyadic_exponent(r) {
        Some(0) | None => r.numer().to_string(),
        Some(e) => format!("{}/2^{}", r.numer(), e),
    }
}

fn parse_rational_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(p))
    }
}

/// Accepts "m", "m/2^e", and "p/q" with q a power of two.
fn parse_dyadic_str(s: &str) -> Result<BigRational, K0Error> {
    let s = s.trim();
    if let Some((m, rest)) = s.split_once("/2^") {
        let m: BigInt = m
            .trim()
            .parse()
            .map_err(|_| K0Error::Parse(s.to_string(), "dyadic"))?;
        let e: u32 = rest
            .trim()
            .parse()
            .map_err(|_| K0Error::Parse(s.to_string(), "dyadic"))?;
        return Ok(BigRational::new(m, BigInt::from(2u8).pow(e)));
    }
    let r = parse_rational_str(s).ok_or_else(|| K0Error::Parse(s.to_string(), "dyadic"))?;
    if !is_dyadic(&r) {
        return Err(K0Error::NotDyadic(r.denom().to_string()));
    }
    Ok(r)
}

/// Whether a simplicial class fits in the dimension box of an algebra
/// with the given block sizes: 0 <= g_i <= n_i for every block.
pub fn in_dimension_range(block_sizes: &[usize], g: &K0Class) -> Result<bool, K0Error> {
    match g {
        K0Class::Simplicial(v) => {
            if v.len() != block_sizes.len() {
                return Err(K0Error::LengthMismatch(v.len(), block_sizes.len()));
            }
            Ok(v.iter()
                .zip(block_sizes.iter())
                .all(|(x, &n)| !x.is_negative() && *x <= BigInt::from(n)))
        }
        _ => Err(K0Error::VariantMismatch(g.variant_name(), "simplicial")),
    }
}

/// Infinitesimal test in closed form.
///
/// An element g is infinitesimal when -m*u <= n*g <= m*u for all
/// m, n > 0, with u the order unit. In the Archimedean models this
/// forces g = 0; in the lex pair model it picks out exactly the
/// elements with vanishing first coordinate.
pub fn is_infinitesimal(spec: &OrderedGroupSpec, g: &K0Class) -> Result<bool, K0Error> {
    spec.order_unit.check_compatible(g)?;
    Ok(match g {
        K0Class::Simplicial(_) | K0Class::Dyadic(_) | K0Class::Rational(_) => g.is_zero(),
        K0Class::LexPair(u, _) => u.is_zero(),
    })
}

/// Infinitesimal test straight from the definition, with m and n
/// ranging over 1..=bound. A bounded check can only refute; agreement
/// with the closed form on a given g additionally needs g to be either
/// zero or large enough for some pair (m, n) below the bound to refute
/// it. Kept as an independent cross-check for the closed form.
pub fn is_infinitesimal_by_definition(
    spec: &OrderedGroupSpec,
    g: &K0Class,
    bound: u32,
) -> Result<bool, K0Error> {
    let u = &spec.order_unit;
    u.check_compatible(g)?;
    for m in 1..=bound as i64 {
        let mu = u.scale(m);
        let neg_mu = u.scale(-m);
        for n in 1..=bound as i64 {
            let ng = g.scale(n);
            if !(neg_mu.leq(&ng)? && ng.leq(&mu)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
