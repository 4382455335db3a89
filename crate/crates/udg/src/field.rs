//! Exact arithmetic in the degree-16 real field Q(√3, √5, √7, √11).
//!
//! Every coordinate that appears in the constructions lives here: elements are
//! rational linear combinations of the 16 square roots √r where r ranges over
//! the squarefree products of {3, 5, 7, 11}. Those radicals are linearly
//! independent over Q, so the coefficient vector is a canonical form and
//! equality is just coefficient equality. Sign determination never resorts to
//! floating point: an element is zero iff all coefficients are zero, and a
//! nonzero element gets its sign from interval arithmetic refined until the
//! interval excludes zero (guaranteed to terminate).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

/// Number of basis elements: one per subset of {3, 5, 7, 11}.
pub const BASIS: usize = 16;

/// Radicand of basis element `m`: the product of the primes selected by the
/// bits of `m` (bit 0 = 3, bit 1 = 5, bit 2 = 7, bit 3 = 11).
pub const RADICAND: [u64; BASIS] = [
    1, 3, 5, 15, 7, 21, 35, 105, 11, 33, 55, 165, 77, 231, 385, 1155,
];

const PRIMES: [u64; 4] = [3, 5, 7, 11];

/// Basis order used by the JSON interchange format: grouped by subset size,
/// each group in lexicographic order of the primes involved.
pub const SERIAL_ORDER: [usize; BASIS] = [0, 1, 2, 4, 8, 3, 5, 9, 6, 10, 12, 7, 11, 13, 14, 15];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("radicand {0} is not a squarefree product of 3, 5, 7, 11")]
    UnrepresentableRadical(u64),
    #[error("square root of a negative rational")]
    NegativeRadicand,
    #[error("rational too large to factor")]
    UnsupportedMagnitude,
    #[error("division by zero")]
    DivisionByZero,
}

/// An element of Q(√3, √5, √7, √11), stored as 16 rational coefficients in
/// bitmask basis order. Derived `Ord` compares coefficient vectors
/// lexicographically; that is a structural order used for canonical sorting,
/// not the numeric order of the represented reals.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Box<[Rational; BASIS]>,
}

fn zero_coeffs() -> Box<[Rational; BASIS]> {
    Box::new(std::array::from_fn(|_| Rational::zero()))
}

impl FieldElement {
    pub fn zero() -> Self {
        FieldElement {
            coeffs: zero_coeffs(),
        }
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: Rational) -> Self {
        let mut coeffs = zero_coeffs();
        coeffs[0] = q;
        FieldElement { coeffs }
    }

    /// √n for a squarefree product n of distinct primes from {3, 5, 7, 11}
    /// (n = 1 gives 1). Anything else, e.g. √2 or √9, is not in the field.
    pub fn radical(n: u64) -> Result<Self, FieldError> {
        let mut rest = n;
        let mut mask = 0usize;
        if rest == 0 {
            return Err(FieldError::UnrepresentableRadical(n));
        }
        for (bit, &p) in PRIMES.iter().enumerate() {
            if rest % p == 0 {
                rest /= p;
                if rest % p == 0 {
                    return Err(FieldError::UnrepresentableRadical(n));
                }
                mask |= 1 << bit;
            }
        }
        if rest != 1 {
            return Err(FieldError::UnrepresentableRadical(n));
        }
        let mut coeffs = zero_coeffs();
        coeffs[mask] = Rational::one();
        Ok(FieldElement { coeffs })
    }

    /// c·√n, the workhorse constructor for coordinates like (√33 − 3)/6.
    pub fn rational_times_radical(c: Rational, n: u64) -> Result<Self, FieldError> {
        let mut e = Self::radical(n)?;
        for c16 in e.coeffs.iter_mut() {
            if !c16.is_zero() {
                *c16 *= &c;
            }
        }
        Ok(e)
    }

    /// √q for a non-negative rational q, when the result lies in the field:
    /// writing q = a/b in lowest terms, √q = √(ab)/b and ab must factor as
    /// s²·r with r a squarefree product of {3, 5, 7, 11}.
    pub fn sqrt_rational(q: &Rational) -> Result<Self, FieldError> {
        if q.is_negative() {
            return Err(FieldError::NegativeRadicand);
        }
        if q.is_zero() {
            return Ok(Self::zero());
        }
        let ab = q.numer() * q.denom();
        let ab: u128 = ab
            .to_u128()
            .ok_or(FieldError::UnsupportedMagnitude)?;
        // Pull out the largest square divisor by trial division.
        let mut square_root_part: u128 = 1;
        let mut radicand: u128 = 1;
        let mut rest = ab;
        let mut d: u128 = 2;
        while d * d <= rest {
            if rest % d == 0 {
                let mut exp = 0u32;
                while rest % d == 0 {
                    rest /= d;
                    exp += 1;
                }
                for _ in 0..exp / 2 {
                    square_root_part *= d;
                }
                if exp % 2 == 1 {
                    radicand *= d;
                }
            }
            d += 1;
        }
        radicand *= rest; // leftover prime, if any, appears to the first power
        let radicand =
            u64::try_from(radicand).map_err(|_| FieldError::UnsupportedMagnitude)?;
        let coeff = Rational::new(
            BigInt::from(square_root_part),
            q.denom().clone(),
        );
        Self::rational_times_radical(coeff, radicand)
            .map_err(|_| FieldError::UnrepresentableRadical(radicand))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// True when the element lies in Q (only the rational coefficient in use).
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Rational::is_zero)
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then(|| &self.coeffs[0])
    }

    pub fn coeff(&self, mask: usize) -> &Rational {
        &self.coeffs[mask]
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c *= q;
            }
        }
        out
    }

    pub fn div_rational(&self, q: &Rational) -> Result<Self, FieldError> {
        if q.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c /= q;
            }
        }
        Ok(out)
    }

    /// Exact sign: -1, 0, or +1. Zero is decided structurally (all
    /// coefficients zero); otherwise intervals are refined until they exclude
    /// zero, which must happen because the radicals are linearly independent.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return if self.coeffs[0].is_positive() { 1 } else { -1 };
        }
        let mut bits = 16u32;
        loop {
            let (lo, hi) = self.interval(bits);
            if lo.is_positive() {
                return 1;
            }
            if hi.is_negative() {
                return -1;
            }
            bits *= 2;
        }
    }

    /// Structural comparison is `Ord`; this is numeric comparison.
    pub fn cmp_value(&self, other: &Self) -> Ordering {
        match (self - other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }

    /// Enclosing interval with dyadic endpoints of denominator 2^bits.
    /// Width shrinks like Σ|cᵢ|·2⁻ᵇⁱᵗˢ over the irrational terms.
    fn interval(&self, bits: u32) -> (Rational, Rational) {
        let mut lo = Rational::zero();
        let mut hi = Rational::zero();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if mask == 0 {
                lo += c;
                hi += c;
                continue;
            }
            let (rlo, rhi) = radical_bounds(mask, bits);
            if c.is_positive() {
                lo += c * &rlo;
                hi += c * &rhi;
            } else {
                lo += c * &rhi;
                hi += c * &rlo;
            }
        }
        (lo, hi)
    }

    /// Rational enclosure [lo, hi] with hi − lo ≤ eps (eps must be positive).
    pub fn approx(&self, eps: &Rational) -> (Rational, Rational) {
        assert!(eps.is_positive(), "approx needs a positive width bound");
        let mut spread = Rational::zero();
        for (mask, c) in self.coeffs.iter().enumerate() {
            if mask != 0 && !c.is_zero() {
                spread += c.abs();
            }
        }
        if spread.is_zero() {
            return (self.coeffs[0].clone(), self.coeffs[0].clone());
        }
        // Need 2^bits ≥ spread/eps.
        let ratio = (spread / eps).ceil().to_integer();
        let mut bits = ratio.bits() as u32 + 1;
        loop {
            let (lo, hi) = self.interval(bits);
            if &hi - &lo <= *eps {
                return (lo, hi);
            }
            bits += 8;
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut acc = 0.0;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c.to_f64().unwrap_or(f64::NAN) * (RADICAND[mask] as f64).sqrt();
            }
        }
        acc
    }

    /// Coefficients in interchange order, each as "numer/denom".
    pub fn serial_coeffs(&self) -> Vec<String> {
        SERIAL_ORDER
            .iter()
            .map(|&m| {
                let c = &self.coeffs[m];
                format!("{}/{}", c.numer(), c.denom())
            })
            .collect()
    }

    /// Inverse of `serial_coeffs`. Accepts plain integers as well as
    /// "numer/denom"; rejects zero denominators and wrong arity.
    pub fn from_serial_coeffs(strs: &[String]) -> Result<Self, String> {
        if strs.len() != BASIS {
            return Err(format!("expected {} coefficients, got {}", BASIS, strs.len()));
        }
        let mut coeffs = zero_coeffs();
        for (i, s) in strs.iter().enumerate() {
            let q = parse_rational(s)?;
            coeffs[SERIAL_ORDER[i]] = q;
        }
        Ok(FieldElement { coeffs })
    }
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.trim().parse().map_err(|e| format!("bad numerator {s:?}: {e}"))?;
    let d: BigInt = d.trim().parse().map_err(|e| format!("bad denominator {s:?}: {e}"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rational::new(n, d))
}

/// [lo, hi] with lo ≤ √RADICAND[mask] ≤ hi, endpoints of denominator 2^bits.
fn radical_bounds(mask: usize, bits: u32) -> (Rational, Rational) {
    let scaled = BigInt::from(RADICAND[mask]) << (2 * bits);
    let root = scaled.sqrt(); // floor square root
    let denom = BigInt::one() << bits;
    (
        Rational::new(root.clone(), denom.clone()),
        Rational::new(root + 1, denom),
    )
}

impl Default for FieldElement {
    fn default() -> Self {
        Self::zero()
    }
}

// Debug and Display both render as a readable sum of terms.
impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                first = false;
            } else if c.is_positive() {
                write!(f, " + ")?;
            } else {
                write!(f, " - ")?;
            }
            let mag = if first || !c.is_negative() { c.clone() } else { -c.clone() };
            if mask == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "sqrt{}", RADICAND[mask])?;
            } else {
                write!(f, "{mag}*sqrt{}", RADICAND[mask])?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            if !b.is_zero() {
                *a += b;
            }
        }
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        for (a, b) in self.coeffs.iter_mut().zip(rhs.coeffs.iter()) {
            if !b.is_zero() {
                *a -= b;
            }
        }
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            if !c.is_zero() {
                *c = -c.clone();
            }
        }
        out
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    /// Basis rule: √r·√s = k·√t where t indexes the symmetric difference of
    /// the two prime sets and k is the product of the shared primes.
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let lhs_nz: Vec<usize> = (0..BASIS).filter(|&m| !self.coeffs[m].is_zero()).collect();
        let rhs_nz: Vec<usize> = (0..BASIS).filter(|&m| !rhs.coeffs[m].is_zero()).collect();
        let mut out = FieldElement::zero();
        for &i in &lhs_nz {
            for &j in &rhs_nz {
                let overlap = RADICAND[i & j];
                let mut term = &self.coeffs[i] * &rhs.coeffs[j];
                if overlap != 1 {
                    term *= BigInt::from(overlap);
                }
                out.coeffs[i ^ j] += term;
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($trait:ident :: $meth:ident),*) => {$(
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $meth(self, rhs: FieldElement) -> FieldElement {
                $trait::$meth(&self, &rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $meth(self, rhs: &FieldElement) -> FieldElement {
                $trait::$meth(&self, rhs)
            }
        }
    )*};
}
owned_ops!(Add::add, Sub::sub, Mul::mul);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// n/d as a Rational; convenience for construction code and tests.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}
