//! Integer and rational classes in H₂ of a blown-up rational surface, with the
//! diagonal intersection form diag(1, −1, …, −1).
//!
//! A class is written `aH − Σᵢ bᵢeᵢ` and stored as the tuple `(a, b₁, …, bₖ)`,
//! matching the tuple notation used for orbit representatives of −4-classes.
//! The exceptional class eᵢ itself is `(a = 0, bᵢ = −1)`. All arithmetic is
//! exact: coefficients are arbitrary-precision integers or rationals, so signs
//! of pairings are always decided correctly.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// An integral class `aH − Σᵢ bᵢeᵢ` over `k = b.len()` blow-ups.
///
/// Equality is componentwise on `(a, b)`; two classes over the same `k` are
/// equal iff all coefficients agree. Ordering is lexicographic by `a` then `b`,
/// which is the order used for all deterministic enumerations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticeClass {
    a: BigInt,
    b: Vec<BigInt>,
}

impl LatticeClass {
    pub fn new(a: BigInt, b: Vec<BigInt>) -> Self {
        Self { a, b }
    }

    /// Convenience constructor from machine integers.
    pub fn from_i64(a: i64, b: &[i64]) -> Self {
        Self {
            a: BigInt::from(a),
            b: b.iter().map(|&v| BigInt::from(v)).collect(),
        }
    }

    /// Number of blow-ups; the length of the `b` vector.
    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &[BigInt] {
        &self.b
    }

    /// The hyperplane class `H` in ℂP² (k = 0).
    pub fn hyperplane() -> Self {
        Self::from_i64(1, &[])
    }

    /// The exceptional class `eᵢ` over `k` blow-ups: `(a = 0, bᵢ = −1)`.
    pub fn exceptional(k: usize, i: usize) -> Result<Self> {
        if i >= k {
            return Err(Error::Index(format!("e_{i} does not exist for k={k}")));
        }
        let mut b = vec![BigInt::zero(); k];
        b[i] = BigInt::from(-1);
        Ok(Self::new(BigInt::zero(), b))
    }

    /// Intersection pairing `a_x·a_y − Σ b_{x,i}·b_{y,i}`.
    pub fn pair(&self, other: &Self) -> Result<BigInt> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch(self.k(), other.k()));
        }
        let mut acc = &self.a * &other.a;
        for (p, q) in self.b.iter().zip(&other.b) {
            acc -= p * q;
        }
        Ok(acc)
    }

    /// Self-intersection `a² − Σ bᵢ²`.
    pub fn square(&self) -> BigInt {
        self.pair(self).expect("same k")
    }

    /// Pairing with the standard canonical class: `K_st·x = −3a + Σ bᵢ`.
    pub fn k_dot(&self) -> BigInt {
        let mut acc = BigInt::from(-3) * &self.a;
        for v in &self.b {
            acc += v;
        }
        acc
    }

    /// Adjunction genus `1 + (x² + K_st·x)/2`; an integer for classes of
    /// embedded curves.
    pub fn adjunction_genus(&self) -> BigRational {
        let num = self.square() + self.k_dot();
        BigRational::one() + BigRational::new(num, BigInt::from(2))
    }

    /// A class of an embedded sphere satisfies `K_st·x = −2 − x²`
    /// (adjunction genus zero).
    pub fn is_sphere_class(&self) -> bool {
        self.k_dot() == BigInt::from(-2) - self.square()
    }

    /// Representative under the trivial automorphisms only (eᵢ ↦ −eᵢ and
    /// permutations): all `bᵢ ≥ 0`, sorted non-increasing; `a` is untouched.
    pub fn normalize_trivial(&self) -> Self {
        let mut b: Vec<BigInt> = self.b.iter().map(|v| v.abs()).collect();
        b.sort_by_key(|v| Reverse(v.clone()));
        Self::new(self.a.clone(), b)
    }

    /// Whether the class already is its own trivial-normal form.
    pub fn is_trivial_normal(&self) -> bool {
        self.b
            .windows(2)
            .all(|w| w[0] >= w[1])
            && self.b.iter().all(|v| !v.is_negative())
    }

    /// Project away every `bᵢ = 0`; the result lives over
    /// `k′ = #{i : bᵢ ≠ 0}` and has the same square and `K_st`-pairing.
    pub fn drop_zeros(&self) -> Self {
        let b = self.b.iter().filter(|v| !v.is_zero()).cloned().collect();
        Self::new(self.a.clone(), b)
    }

    pub fn nonzero_count(&self) -> usize {
        self.b.iter().filter(|v| !v.is_zero()).count()
    }

    /// Extend with zero entries up to `k` blow-ups.
    pub fn pad(&self, k: usize) -> Result<Self> {
        if k < self.k() {
            return Err(Error::Domain(format!(
                "cannot pad a class over k={} down to k={k}",
                self.k()
            )));
        }
        let mut b = self.b.clone();
        b.resize(k, BigInt::zero());
        Ok(Self::new(self.a.clone(), b))
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.a, self.b.iter().map(|v| -v).collect())
    }

    pub fn scale(&self, m: &BigInt) -> Self {
        Self::new(&self.a * m, self.b.iter().map(|v| v * m).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch(self.k(), other.k()));
        }
        Ok(Self::new(
            &self.a + &other.a,
            self.b.iter().zip(&other.b).map(|(p, q)| p + q).collect(),
        ))
    }

    /// Exact division by a scalar, when every coefficient is divisible.
    pub fn divide_exact(&self, m: &BigInt) -> Option<Self> {
        if m.is_zero() {
            return None;
        }
        if (&self.a % m).is_zero() && self.b.iter().all(|v| (v % m).is_zero()) {
            Some(Self::new(
                &self.a / m,
                self.b.iter().map(|v| v / m).collect(),
            ))
        } else {
            None
        }
    }

    /// Compact text form `a;b1,b2,...,bk`.
    pub fn to_compact(&self) -> String {
        format!(
            "{};{}",
            self.a,
            self.b
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl fmt::Display for LatticeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl FromStr for LatticeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a_str, b_str) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("class literal `{s}` lacks `;`")))?;
        let a = parse_bigint(a_str)?;
        let b = if b_str.trim().is_empty() {
            Vec::new()
        } else {
            b_str
                .split(',')
                .map(parse_bigint)
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self::new(a, b))
    }
}

fn parse_bigint(s: &str) -> Result<BigInt> {
    BigInt::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad integer `{s}`: {e}")))
}

/// The standard canonical class `K_st = −3H + Σ eᵢ`, i.e. the tuple
/// `(−3, −1, …, −1)` over `k` blow-ups. Its square is `9 − k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CanonicalStd {
    k: usize,
}

impl CanonicalStd {
    pub fn new(k: usize) -> Self {
        Self { k }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn class(&self) -> LatticeClass {
        LatticeClass::new(BigInt::from(-3), vec![BigInt::from(-1); self.k])
    }

    pub fn square(&self) -> BigInt {
        BigInt::from(9) - BigInt::from(self.k as i64)
    }
}

/// Shorthand for `CanonicalStd::new(k).class()`.
pub fn canonical_std(k: usize) -> LatticeClass {
    CanonicalStd::new(k).class()
}

/// A class with exact rational coefficients in the same basis; used for
/// symplectic classes ω when threading areas through surgery formulas.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalClass {
    a: BigRational,
    b: Vec<BigRational>,
}

impl RationalClass {
    pub fn new(a: BigRational, b: Vec<BigRational>) -> Self {
        Self { a, b }
    }

    pub fn k(&self) -> usize {
        self.b.len()
    }

    pub fn a(&self) -> &BigRational {
        &self.a
    }

    pub fn b(&self) -> &[BigRational] {
        &self.b
    }

    pub fn pair(&self, other: &Self) -> Result<BigRational> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch(self.k(), other.k()));
        }
        let mut acc = &self.a * &other.a;
        for (p, q) in self.b.iter().zip(&other.b) {
            acc -= p * q;
        }
        Ok(acc)
    }

    pub fn square(&self) -> BigRational {
        self.pair(self).expect("same k")
    }

    pub fn to_compact(&self) -> String {
        format!(
            "{};{}",
            self.a,
            self.b
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

impl From<&LatticeClass> for RationalClass {
    fn from(x: &LatticeClass) -> Self {
        Self::new(
            BigRational::from_integer(x.a.clone()),
            x.b.iter()
                .map(|v| BigRational::from_integer(v.clone()))
                .collect(),
        )
    }
}

impl fmt::Display for RationalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_compact())
    }
}

impl FromStr for RationalClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (a_str, b_str) = s
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("class literal `{s}` lacks `;`")))?;
        let a = parse_rational(a_str)?;
        let b = if b_str.trim().is_empty() {
            Vec::new()
        } else {
            b_str
                .split(',')
                .map(parse_rational)
                .collect::<Result<Vec<_>>>()?
        };
        Ok(Self::new(a, b))
    }
}

/// Parse `p` or `p/q` into an exact rational; rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(parse_bigint(s)?)),
        Some((num, den)) => {
            let num = parse_bigint(num)?;
            let den = parse_bigint(den)?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in `{s}`")));
            }
            Ok(BigRational::new(num, den))
        }
    }
}
