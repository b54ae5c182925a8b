//! Exact truncated Laurent series in `q`, plus the classical series built on
//! top of them: the divisor sum σ₃, the Eisenstein series E₄, the 24th power
//! of the Euler product, the modular invariant `j`, `J = j - 744`, graded
//! characters and the Monster group order.
//!
//! Every coefficient is an exact integer or rational. A series carries the
//! exponent from which on its coefficients are unknown (`order`); arithmetic
//! propagates that bound pessimistically and never reports coefficients
//! past it.

use std::cmp::{max, min, Ordering};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeriesError {
    #[error("lowest coefficient {0} is not invertible in this coefficient ring")]
    NotInvertible(String),
    #[error("cannot invert a series that vanishes to order {0}")]
    ZeroSeries(i64),
    #[error("argument must be positive, got {0}")]
    NonPositive(i64),
    #[error("n_max must be at least {min}, got {got}")]
    OrderTooSmall { min: i64, got: i64 },
    #[error("irrep dimensions must be ascending and start with 1")]
    BadIrrepList,
    #[error("character needs at least one graded dimension")]
    EmptyCharacter,
}

/// Coefficient ring for [`QSeries`].
pub trait Coefficient:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
    /// Multiplicative inverse, if it exists in the ring.
    fn try_inverse(&self) -> Option<Self>;
}

impl Coefficient for BigInt {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_one() || (-self).is_one() {
            Some(self.clone())
        } else {
            None
        }
    }
}

impl Coefficient for BigRational {
    fn try_inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A Laurent series `Σ coeffs[i] q^(lead+i)` known up to (excluding) `q^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<C = BigInt> {
    lead: i64,
    coeffs: Vec<C>,
    order: i64,
}

/// Integer-coefficient series.
pub type IntSeries = QSeries<BigInt>;
/// Rational-coefficient series.
pub type RatSeries = QSeries<BigRational>;

impl<C: Coefficient> QSeries<C> {
    /// Series with `coeffs[i]` at exponent `lead + i`, known through the last
    /// supplied coefficient.
    pub fn from_coeffs(lead: i64, coeffs: Vec<C>) -> Self {
        let order = lead + coeffs.len() as i64;
        Self::normalized(lead, coeffs, order)
    }

    /// Like [`from_coeffs`](Self::from_coeffs) but with an explicit truncation
    /// order. Missing coefficients below `order` are zero; supplied ones at or
    /// beyond `order` are dropped.
    pub fn with_order(lead: i64, mut coeffs: Vec<C>, order: i64) -> Self {
        let len = max(order - lead, 0) as usize;
        coeffs.resize(len, C::zero());
        Self::normalized(lead, coeffs, order)
    }

    /// The series that is zero up to `q^order`.
    pub fn zero(order: i64) -> Self {
        Self {
            lead: order,
            coeffs: Vec::new(),
            order,
        }
    }

    /// The constant `c`, known to `q^order`.
    pub fn constant(c: C, order: i64) -> Self {
        if order <= 0 {
            return Self::zero(order);
        }
        let mut coeffs = vec![C::zero(); order as usize];
        coeffs[0] = c;
        Self::normalized(0, coeffs, order)
    }

    /// The monomial `q^exp` known to `q^order`.
    pub fn monomial(exp: i64, order: i64) -> Self {
        if exp >= order {
            return Self::zero(order);
        }
        let mut coeffs = vec![C::zero(); (order - exp) as usize];
        coeffs[0] = C::one();
        Self {
            lead: exp,
            coeffs,
            order,
        }
    }

    fn normalized(mut lead: i64, coeffs: Vec<C>, order: i64) -> Self {
        let skip = coeffs.iter().take_while(|c| c.is_zero()).count();
        lead += skip as i64;
        let coeffs: Vec<C> = coeffs.into_iter().skip(skip).collect();
        if coeffs.is_empty() {
            return Self::zero(order);
        }
        Self {
            lead,
            coeffs,
            order,
        }
    }

    /// Lowest exponent with a nonzero coefficient (equals `order` for a zero series).
    pub fn lead(&self) -> i64 {
        self.lead
    }

    /// Exponents at or beyond this value are unknown.
    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficients from `lead` up to `order - 1`.
    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `q^exp`, or `None` if `exp` lies beyond the truncation order.
    pub fn coeff(&self, exp: i64) -> Option<C> {
        if exp >= self.order {
            None
        } else if exp < self.lead {
            Some(C::zero())
        } else {
            Some(self.coeffs[(exp - self.lead) as usize].clone())
        }
    }

    /// `(exponent, coefficient)` pairs for every known exponent from `lead`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &C)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.lead + i as i64, c))
    }

    /// Drop every coefficient at exponent `>= order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = min(order, self.order);
        let keep = max(order - self.lead, 0) as usize;
        Self::normalized(
            self.lead,
            self.coeffs.iter().take(keep).cloned().collect(),
            order,
        )
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            lead: self.lead + k,
            coeffs: self.coeffs.clone(),
            order: self.order + k,
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::normalized(
            self.lead,
            self.coeffs.iter().map(|x| x.clone() * c).collect(),
            self.order,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = min(self.order, other.order);
        let lead = min(self.lead, other.lead).min(order);
        let coeffs = (lead..order)
            .map(|e| self.coeff(e).unwrap() + &other.coeff(e).unwrap())
            .collect();
        Self::normalized(lead, coeffs, order)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            lead: self.lead,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            order: self.order,
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = min(self.lead + other.order, other.lead + self.order);
        if self.is_zero() || other.is_zero() {
            return Self::zero(order);
        }
        let lead = self.lead + other.lead;
        if lead >= order {
            return Self::zero(order);
        }
        let len = (order - lead) as usize;
        let mut coeffs = vec![C::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] = coeffs[i + j].clone() + &(a.clone() * b);
            }
        }
        Self::normalized(lead, coeffs, order)
    }

    /// Non-negative integer power by repeated squaring.
    pub fn pow(&self, mut exp: u32) -> Self {
        if exp == 0 {
            return Self::constant(C::one(), self.order - self.lead);
        }
        let mut base = self.clone();
        let mut acc: Option<Self> = None;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = Some(match acc {
                    Some(a) => a.mul(&base),
                    None => base.clone(),
                });
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("exp > 0")
    }

    /// Multiplicative inverse. The relative precision `order - lead` is kept.
    pub fn invert(&self) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Err(SeriesError::ZeroSeries(self.order));
        }
        let a0_inv = self.coeffs[0]
            .try_inverse()
            .ok_or_else(|| SeriesError::NotInvertible(self.coeffs[0].to_string()))?;
        let len = self.coeffs.len();
        let mut out: Vec<C> = Vec::with_capacity(len);
        out.push(a0_inv.clone());
        for n in 1..len {
            let mut acc = C::zero();
            for i in 1..=n {
                acc = acc + &(self.coeffs[i].clone() * &out[n - i]);
            }
            out.push(-(acc * &a0_inv));
        }
        let lead = -self.lead;
        Ok(Self {
            lead,
            coeffs: out,
            order: lead + len as i64,
        })
    }
}

impl<C: Coefficient> fmt::Display for QSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.terms() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.order)
    }
}

/// Sum of the cubes of the positive divisors of `n`.
pub fn sigma3(n: i64) -> Result<u128, SeriesError> {
    if n <= 0 {
        return Err(SeriesError::NonPositive(n));
    }
    let n = n as u64;
    let mut total: u128 = 0;
    let mut d = 1u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            total += (d as u128).pow(3);
            let e = n / d;
            if e != d {
                total += (e as u128).pow(3);
            }
        }
        d += 1;
    }
    Ok(total)
}

/// `E₄ = 1 + 240 Σ σ₃(n) qⁿ`, known to `q^order`.
pub fn eisenstein_e4(order: i64) -> IntSeries {
    let coeffs = (0..max(order, 0))
        .map(|n| {
            if n == 0 {
                BigInt::one()
            } else {
                BigInt::from(240u32) * BigInt::from(sigma3(n).unwrap())
            }
        })
        .collect();
    IntSeries::with_order(0, coeffs, order)
}

/// `∏_{n>0} (1 - qⁿ)^24`, known to `q^order`.
pub fn euler_product_pow24(order: i64) -> IntSeries {
    let mut prod = IntSeries::constant(BigInt::one(), order);
    for n in 1..order {
        let mut coeffs = vec![BigInt::zero(); order as usize];
        coeffs[0] = BigInt::one();
        coeffs[n as usize] = BigInt::from(-1);
        let factor = IntSeries::with_order(0, coeffs, order);
        prod = prod.mul(&factor);
    }
    prod.pow(24)
}

/// The `j`-function `E₄³ / (q ∏(1-qⁿ)²⁴)` with exact coefficients through `q^n_max`.
pub fn j_series(n_max: i64) -> Result<IntSeries, SeriesError> {
    if n_max < -1 {
        return Err(SeriesError::OrderTooSmall {
            min: -1,
            got: n_max,
        });
    }
    // E4^3 / prod needs relative precision n_max + 2 to reach q^n_max after the q^-1 shift
    let rel = n_max + 2;
    let e4_cubed = eisenstein_e4(rel).pow(3);
    let inv = euler_product_pow24(rel).invert()?;
    Ok(e4_cubed.mul(&inv).shift(-1))
}

/// `J = j - 744`.
#[allow(non_snake_case)]
pub fn J_series(n_max: i64) -> Result<IntSeries, SeriesError> {
    let j = j_series(n_max)?;
    Ok(j.sub(&IntSeries::constant(BigInt::from(744u32), j.order())))
}

/// Graded dimensions of a module together with its lowest energy and central charge.
#[derive(Clone, Debug, PartialEq)]
pub struct CharacterSpec {
    pub dims: Vec<BigInt>,
    pub h: BigRational,
    pub c: BigRational,
}

/// `Σ dims[n] q^(n + h - c/24)` written as `q^frac · series` with the integral
/// part of the offset absorbed into the series' exponents.
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    /// Exact `h - c/24`.
    pub offset: BigRational,
    /// Fractional part of `offset`, in `[0, 1)`.
    pub frac: BigRational,
    pub series: IntSeries,
}

impl Character {
    /// Exact exponent of the `n`-th graded piece.
    pub fn exponent(&self, n: usize) -> BigRational {
        self.offset.clone() + BigRational::from_integer(BigInt::from(n))
    }
}

/// Character of a graded module, using graded pieces `0..=n_max`.
pub fn character(spec: &CharacterSpec, n_max: usize) -> Result<Character, SeriesError> {
    if spec.dims.is_empty() {
        return Err(SeriesError::EmptyCharacter);
    }
    let offset = spec.h.clone() - spec.c.clone() / BigRational::from_integer(BigInt::from(24));
    let floor = offset.floor();
    let frac = offset.clone() - floor.clone();
    let lead = floor.to_integer().to_i64().expect("offset fits in i64");
    let take = min(spec.dims.len(), n_max + 1);
    let series = IntSeries::from_coeffs(lead, spec.dims[..take].to_vec());
    Ok(Character {
        offset,
        frac,
        series,
    })
}

/// Order of the Monster group, `2⁴⁶·3²⁰·5⁹·7⁶·11²·13³·17·19·23·29·31·41·47·59·71`.
pub fn monster_order() -> BigInt {
    const FACTORS: [(u32, u32); 15] = [
        (2, 46),
        (3, 20),
        (5, 9),
        (7, 6),
        (11, 2),
        (13, 3),
        (17, 1),
        (19, 1),
        (23, 1),
        (29, 1),
        (31, 1),
        (41, 1),
        (47, 1),
        (59, 1),
        (71, 1),
    ];
    FACTORS.iter().fold(BigInt::one(), |acc, &(p, e)| {
        acc * num_traits::pow(BigInt::from(p), e as usize)
    })
}

const MONSTER_IRREPS: &str = include_str!("../data/monster_irreps.txt");

/// Leading Monster irreducible dimensions from the bundled data file.
pub fn monster_irrep_dims() -> Vec<BigInt> {
    MONSTER_IRREPS
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| l.parse().expect("monster_irreps.txt holds integers"))
        .collect()
}

pub const DEFAULT_MULTIPLICITY_BOUND: u32 = 10;

/// All ways to write `coeff` as a non-negative combination of `irrep_dims`
/// with every multiplicity at most `bound`.
#[derive(Clone, Debug, PartialEq)]
pub struct McKayReport {
    pub coeff: BigInt,
    pub bound: u32,
    /// Each entry maps an irrep dimension to its (nonzero) multiplicity.
    pub decompositions: Vec<BTreeMap<BigInt, u32>>,
}

impl McKayReport {
    pub fn found(&self) -> bool {
        !self.decompositions.is_empty()
    }
}

/// Search for decompositions by trying the largest irreps first with the
/// greatest admissible multiplicity and backtracking.
pub fn mckay_check(
    coeff: &BigInt,
    irrep_dims: &[BigInt],
    bound: u32,
) -> Result<McKayReport, SeriesError> {
    let ascending = irrep_dims.windows(2).all(|w| w[0] < w[1]);
    if irrep_dims.first().map(|d| !d.is_one()).unwrap_or(true) || !ascending {
        return Err(SeriesError::BadIrrepList);
    }
    let mut found = Vec::new();
    let mut mult = vec![0u32; irrep_dims.len()];
    if !coeff.is_negative() {
        mckay_dfs(
            coeff.clone(),
            irrep_dims.len() - 1,
            irrep_dims,
            bound,
            &mut mult,
            &mut found,
        );
    }
    Ok(McKayReport {
        coeff: coeff.clone(),
        bound,
        decompositions: found,
    })
}

fn mckay_dfs(
    rem: BigInt,
    idx: usize,
    dims: &[BigInt],
    bound: u32,
    mult: &mut [u32],
    found: &mut Vec<BTreeMap<BigInt, u32>>,
) {
    if idx == 0 {
        // dims[0] == 1 absorbs the rest
        if rem <= BigInt::from(bound) {
            mult[0] = rem.to_u32().unwrap();
            found.push(
                dims.iter()
                    .zip(mult.iter())
                    .filter(|(_, &m)| m > 0)
                    .map(|(d, &m)| (d.clone(), m))
                    .collect(),
            );
            mult[0] = 0;
        }
        return;
    }
    let (q, _) = rem.div_rem(&dims[idx]);
    let top = q.to_u32().map(|q| q.min(bound)).unwrap_or(bound);
    for m in (0..=top).rev() {
        mult[idx] = m;
        let next = rem.clone() - &dims[idx] * BigInt::from(m);
        // remaining irreps cannot reach more than bound * (sum of smaller dims)
        let reach: BigInt = dims[..idx].iter().sum::<BigInt>() * BigInt::from(bound);
        if next.cmp(&reach) == Ordering::Greater {
            break;
        }
        mckay_dfs(next, idx - 1, dims, bound, mult, found);
    }
    mult[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn divisor_cubes(n: i64) -> u128 {
        (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| (d as u128).pow(3))
            .sum()
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = IntSeries::with_order(0, ints(&[1, -1]), 12);
        let geo = IntSeries::from_coeffs(0, ints(&[1; 12]));
        let prod = one_minus_q.mul(&geo);
        assert_eq!(prod.order(), 12);
        assert_eq!(prod.coeff(0), Some(BigInt::one()));
        for e in 1..12 {
            assert_eq!(prod.coeff(e), Some(BigInt::zero()));
        }
        assert_eq!(prod.coeff(12), None);

        let inv = one_minus_q.invert().unwrap();
        assert_eq!(inv.coeffs(), &ints(&[1; 12])[..]);
    }

    #[test]
    fn binomial_cube() {
        let p = IntSeries::from_coeffs(0, ints(&[1, 1])).pow(3);
        // (1 + q) is exact only to q^2, so the cube is known to q^2 as well
        assert_eq!(p.order(), 2);
        let exact = IntSeries::with_order(0, ints(&[1, 1]), 10).pow(3);
        assert_eq!(exact.coeffs()[..4], ints(&[1, 3, 3, 1])[..]);
        assert!(exact.coeffs()[4..].iter().all(Zero::is_zero));
    }

    #[test]
    fn integer_inversion_needs_unit() {
        let s = IntSeries::from_coeffs(0, ints(&[2, 1]));
        assert!(matches!(s.invert(), Err(SeriesError::NotInvertible(_))));
        let r = RatSeries::from_coeffs(
            0,
            vec![
                BigRational::from_integer(2.into()),
                BigRational::from_integer(1.into()),
            ],
        );
        let inv = r.invert().unwrap();
        assert_eq!(inv.coeff(0).unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(
            inv.coeff(1).unwrap(),
            BigRational::new((-1).into(), 4.into())
        );
        assert!(matches!(
            IntSeries::zero(3).invert(),
            Err(SeriesError::ZeroSeries(3))
        ));
    }

    #[test]
    fn laurent_shift_in_products() {
        let a = IntSeries::from_coeffs(-1, ints(&[1, 2, 3]));
        let b = IntSeries::from_coeffs(-2, ints(&[1, 1, 1, 1]));
        let p = a.mul(&b);
        assert_eq!(p.lead(), -3);
        // min(-1 + 2, -2 + 2)
        assert_eq!(p.order(), 0);
        assert_eq!(p.coeffs(), &ints(&[1, 3, 6])[..]);
    }

    #[test]
    fn sigma3_values() {
        assert_eq!(sigma3(1).unwrap(), 1);
        assert_eq!(sigma3(2).unwrap(), divisor_cubes(2));
        assert_eq!(sigma3(2).unwrap(), 9);
        assert_eq!(sigma3(6).unwrap(), divisor_cubes(6));
        assert_eq!(sigma3(6).unwrap(), 252);
        assert_eq!(sigma3(0), Err(SeriesError::NonPositive(0)));
        assert_eq!(sigma3(-4), Err(SeriesError::NonPositive(-4)));
    }

    #[test]
    fn j_leading_coefficients() {
        let j = j_series(3).unwrap();
        assert_eq!(j.lead(), -1);
        assert_eq!(j.order(), 4);
        let expect = [1i64, 744, 196884, 21493760, 864299970];
        for (e, c) in (-1..=3).zip(expect) {
            assert_eq!(j.coeff(e).unwrap(), BigInt::from(c), "q^{e}");
        }
        assert_eq!(j.coeff(4), None);
        assert!(j_series(-2).is_err());
        assert_eq!(j_series(-1).unwrap().coeffs(), &ints(&[1])[..]);
    }

    #[test]
    fn big_j_drops_constant() {
        let jj = J_series(2).unwrap();
        assert_eq!(jj.coeff(0).unwrap(), BigInt::zero());
        assert_eq!(jj.coeff(1).unwrap(), BigInt::from(196884));
        assert_eq!(jj.coeff(-1).unwrap(), BigInt::one());
    }

    #[test]
    fn j_times_discriminant_is_e4_cubed() {
        let n = 50;
        let j = j_series(n).unwrap();
        let delta = euler_product_pow24(n + 2).shift(1);
        let lhs = j.mul(&delta);
        let rhs = eisenstein_e4(n + 2).pow(3);
        assert_eq!(lhs.order(), n + 2);
        for e in 0..=n {
            assert_eq!(lhs.coeff(e), rhs.coeff(e), "q^{e}");
        }
    }

    #[test]
    fn big_j_is_j_minus_744() {
        let j = j_series(30).unwrap();
        let jj = J_series(30).unwrap();
        for e in -1..=30 {
            let d = j.coeff(e).unwrap() - jj.coeff(e).unwrap();
            assert_eq!(
                d,
                if e == 0 {
                    BigInt::from(744)
                } else {
                    BigInt::zero()
                }
            );
        }
    }

    #[test]
    fn mckay_first_coefficients() {
        let dims = monster_irrep_dims();
        let r = mckay_check(
            &BigInt::from(196884),
            &dims[..2],
            DEFAULT_MULTIPLICITY_BOUND,
        )
        .unwrap();
        let expect: BTreeMap<BigInt, u32> = [(BigInt::one(), 1), (BigInt::from(196883), 1)].into();
        assert_eq!(r.decompositions, vec![expect]);

        let r = mckay_check(&BigInt::one(), &dims[..2], DEFAULT_MULTIPLICITY_BOUND).unwrap();
        assert_eq!(r.decompositions, vec![[(BigInt::one(), 1)].into()]);
    }

    fn brute_decompositions(coeff: i64, dims: &[i64], bound: u32) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let total = (bound as usize + 1).pow(dims.len() as u32);
        for code in 0..total {
            let mut c = code;
            let mut mult = Vec::new();
            for _ in dims {
                mult.push((c % (bound as usize + 1)) as u32);
                c /= bound as usize + 1;
            }
            let s: i64 = mult.iter().zip(dims).map(|(&m, &d)| m as i64 * d).sum();
            if s == coeff {
                out.push(mult);
            }
        }
        out
    }

    #[test]
    fn mckay_matches_brute_force() {
        let dims = [1i64, 196883, 21296876];
        let oracle = brute_decompositions(21493760, &dims, 4);
        assert_eq!(oracle, vec![vec![1, 1, 1]]);
        let r = mckay_check(&BigInt::from(21493760), &ints(&dims), 4).unwrap();
        let got: Vec<Vec<u32>> = r
            .decompositions
            .iter()
            .map(|m| {
                dims.iter()
                    .map(|d| *m.get(&BigInt::from(*d)).unwrap_or(&0))
                    .collect()
            })
            .collect();
        assert_eq!(got, oracle);

        // small case with several decompositions
        let small = [1i64, 3, 5];
        let mut oracle = brute_decompositions(11, &small, 10);
        let r = mckay_check(&BigInt::from(11), &ints(&small), 10).unwrap();
        let mut got: Vec<Vec<u32>> = r
            .decompositions
            .iter()
            .map(|m| {
                small
                    .iter()
                    .map(|d| *m.get(&BigInt::from(*d)).unwrap_or(&0))
                    .collect()
            })
            .collect();
        oracle.sort();
        got.sort();
        assert_eq!(got, oracle);
    }

    #[test]
    fn mckay_failure_is_reported() {
        let r = mckay_check(&BigInt::from(196884 * 40), &ints(&[1, 196883]), 3).unwrap();
        assert!(!r.found());
        assert_eq!(
            mckay_check(&BigInt::one(), &ints(&[2, 3]), 3),
            Err(SeriesError::BadIrrepList)
        );
        assert_eq!(
            mckay_check(&BigInt::one(), &ints(&[1, 5, 3]), 3),
            Err(SeriesError::BadIrrepList)
        );
    }

    #[test]
    fn characters() {
        let zero = BigRational::zero();
        let ch = character(
            &CharacterSpec {
                dims: ints(&[1]),
                h: zero.clone(),
                c: zero.clone(),
            },
            5,
        )
        .unwrap();
        assert_eq!(ch.offset, zero);
        assert_eq!(ch.series.coeffs(), &ints(&[1])[..]);

        let c24 = BigRational::from_integer(24.into());
        let ch = character(
            &CharacterSpec {
                dims: ints(&[1, 0, 1]),
                h: zero.clone(),
                c: c24.clone(),
            },
            5,
        )
        .unwrap();
        assert_eq!(ch.series.lead(), -1);
        assert_eq!(ch.series.coeff(0), Some(BigInt::zero()));
        assert_eq!(ch.series.coeff(1), Some(BigInt::one()));

        let moonshine = CharacterSpec {
            dims: ints(&[1, 0, 196884]),
            h: zero.clone(),
            c: c24,
        };
        let ch = character(&moonshine, 2).unwrap();
        let jj = J_series(1).unwrap();
        for e in -1..=1 {
            assert_eq!(ch.series.coeff(e), jj.coeff(e));
        }

        let ising = CharacterSpec {
            dims: ints(&[1, 1]),
            h: BigRational::new(1.into(), 2.into()),
            c: BigRational::new(1.into(), 2.into()),
        };
        let ch = character(&ising, 4).unwrap();
        assert_eq!(ch.offset, BigRational::new(23.into(), 48.into()));
        assert_eq!(ch.frac, ch.offset);
        assert_eq!(ch.exponent(1), BigRational::new(71.into(), 48.into()));
    }

    #[test]
    fn monster_order_digits() {
        let m = monster_order();
        assert_eq!(m.to_string().len(), 54);
        assert!(m.to_string().starts_with('8'));
        assert!((&m % BigInt::from(71)).is_zero());
        assert_eq!(
            m.to_string(),
            "808017424794512875886459904961710757005754368000000000"
        );
    }

    proptest! {
        #[test]
        fn sigma3_multiplicative(a in 1i64..100, b in 1i64..100) {
            prop_assume!(num_integer::gcd(a, b) == 1);
            prop_assert_eq!(sigma3(a * b).unwrap(), sigma3(a).unwrap() * sigma3(b).unwrap());
        }

        #[test]
        fn inverse_times_series_is_one(tail in proptest::collection::vec(-5i64..5, 1..12)) {
            let mut c = vec![1i64];
            c.extend(tail);
            let s = IntSeries::from_coeffs(0, ints(&c));
            let p = s.mul(&s.invert().unwrap());
            prop_assert_eq!(p.coeff(0), Some(BigInt::one()));
            for e in 1..p.order() {
                prop_assert_eq!(p.coeff(e), Some(BigInt::zero()));
            }
        }
    }

    #[test]
    fn sigma3_multiplicative_to_ten_thousand() {
        for n in 2..=10_000i64 {
            let mut m = n;
            let mut p = 2;
            while m % p != 0 {
                p += 1;
            }
            let mut pk = 1;
            while m % p == 0 {
                m /= p;
                pk *= p;
            }
            if m > 1 {
                assert_eq!(
                    sigma3(n).unwrap(),
                    sigma3(pk).unwrap() * sigma3(m).unwrap(),
                    "n={n}"
                );
            }
        }
    }
}
