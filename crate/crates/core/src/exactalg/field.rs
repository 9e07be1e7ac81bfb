//! Exact scalar arithmetic over Q and real/imaginary quadratic extensions Q(w),
//! w^2 = D for a squarefree integer D.
//!
//! An element is stored as `a + b*w` with `a`, `b` arbitrary-precision
//! rationals. Elements with `b = 0` carry no discriminant and mix freely with
//! elements of any quadratic field; combining elements from *different*
//! quadratic fields is a programming error and panics.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// Which coefficient field computations run over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldCtx {
    /// The rationals.
    Rational,
    /// Q(w) with w^2 = D; D must be squarefree and not 0 or 1.
    Quadratic(i64),
}

impl FieldCtx {
    pub fn validate(&self) -> Result<(), FieldError> {
        match *self {
            FieldCtx::Rational => Ok(()),
            FieldCtx::Quadratic(d) => {
                if d == 0 || d == 1 {
                    return Err(FieldError::BadDiscriminant(d));
                }
                if !is_squarefree(d) {
                    return Err(FieldError::BadDiscriminant(d));
                }
                Ok(())
            }
        }
    }

    /// Does this context admit the given element?
    pub fn contains(&self, x: &FieldElement) -> bool {
        match (self, x.disc) {
            (_, None) => true,
            (FieldCtx::Rational, Some(_)) => false,
            (FieldCtx::Quadratic(d), Some(e)) => *d == e,
        }
    }
}

fn is_squarefree(d: i64) -> bool {
    let mut n = d.unsigned_abs();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("discriminant {0} is not squarefree or is degenerate")]
    BadDiscriminant(i64),
    #[error("division by zero")]
    DivisionByZero,
}

/// Exact scalar: `a + b*w`, w^2 = disc. `disc` is `None` exactly when `b = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    a: BigRational,
    b: BigRational,
    disc: Option<i64>,
}

impl FieldElement {
    fn normalized(a: BigRational, b: BigRational, disc: Option<i64>) -> Self {
        if b.is_zero() {
            FieldElement { a, b, disc: None }
        } else {
            debug_assert!(disc.is_some(), "irrational part without discriminant");
            FieldElement { a, b, disc }
        }
    }

    pub fn zero() -> Self {
        Self::from_int(0)
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::normalized(BigRational::from_integer(n.into()), BigRational::zero(), None)
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::normalized(BigRational::from_integer(n), BigRational::zero(), None)
    }

    pub fn from_rational(r: BigRational) -> Self {
        Self::normalized(r, BigRational::zero(), None)
    }

    /// num/den as a rational; panics if den = 0.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// The generator w of Q(w), w^2 = d.
    pub fn sqrt_gen(d: i64) -> Self {
        Self::normalized(BigRational::zero(), BigRational::one(), Some(d))
    }

    /// a + b*w in Q(w), w^2 = d.
    pub fn quadratic(a: BigRational, b: BigRational, d: i64) -> Self {
        Self::normalized(a, b, Some(d))
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn irrational_part(&self) -> &BigRational {
        &self.b
    }

    pub fn discriminant(&self) -> Option<i64> {
        self.disc
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Rational value if b = 0.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    /// Galois conjugate a - b*w.
    pub fn conj(&self) -> Self {
        Self::normalized(self.a.clone(), -self.b.clone(), self.disc)
    }

    /// Field norm a^2 - D*b^2 (= self * conj, a rational).
    pub fn norm(&self) -> BigRational {
        match self.disc {
            None => &self.a * &self.a,
            Some(d) => {
                &self.a * &self.a - BigRational::from_integer(d.into()) * &self.b * &self.b
            }
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        // In a real quadratic field a nonzero element can still have norm 0 only
        // if D were a square, which FieldCtx validation excludes; guard anyway.
        if n.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let c = self.conj();
        Ok(Self::normalized(c.a / &n, c.b / &n, self.disc))
    }

    fn join_disc(x: Option<i64>, y: Option<i64>) -> Option<i64> {
        match (x, y) {
            (None, d) | (d, None) => d,
            (Some(p), Some(q)) => {
                assert_eq!(p, q, "mixed quadratic fields: sqrt({p}) vs sqrt({q})");
                Some(p)
            }
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True when the element is a nonzero rational, printable without sign or
    /// fraction complications handled by the caller.
    pub fn is_negative_rational(&self) -> bool {
        self.b.is_zero() && self.a.is_negative()
    }
}

impl Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        let d = FieldElement::join_disc(self.disc, rhs.disc);
        FieldElement::normalized(&self.a + &rhs.a, &self.b + &rhs.b, d)
    }
}

impl Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        let d = FieldElement::join_disc(self.disc, rhs.disc);
        FieldElement::normalized(&self.a - &rhs.a, &self.b - &rhs.b, d)
    }
}

impl Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        let d = FieldElement::join_disc(self.disc, rhs.disc);
        let cross = &self.a * &rhs.b + &self.b * &rhs.a;
        let mut plain = &self.a * &rhs.a;
        if let Some(disc) = d {
            if !self.b.is_zero() && !rhs.b.is_zero() {
                plain += BigRational::from_integer(disc.into()) * &self.b * &rhs.b;
            }
        }
        FieldElement::normalized(plain, cross, d)
    }
}

impl Div for &FieldElement {
    type Output = FieldElement;
    fn div(self, rhs: &FieldElement) -> FieldElement {
        let inv = rhs.inv().expect("division by zero");
        self * &inv
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::normalized(-self.a.clone(), -self.b.clone(), self.disc)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

impl AddAssign<&FieldElement> for FieldElement {
    fn add_assign(&mut self, rhs: &FieldElement) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&FieldElement> for FieldElement {
    fn sub_assign(&mut self, rhs: &FieldElement) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&FieldElement> for FieldElement {
    fn mul_assign(&mut self, rhs: &FieldElement) {
        *self = &*self * rhs;
    }
}

/// Canonical text form, reparseable by the polynomial parser:
/// `3`, `-1/2`, `w`, `-2*w`, `1/2 + 3*w`, `-1 - 1/2*w`.
impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn wterm(b: &BigRational) -> String {
            if b.is_one() {
                "w".to_string()
            } else if (-b).is_one() {
                "-w".to_string()
            } else {
                format!("{b}*w")
            }
        }
        if self.b.is_zero() {
            write!(f, "{}", self.a)
        } else if self.a.is_zero() {
            write!(f, "{}", wterm(&self.b))
        } else if self.b.is_negative() {
            write!(f, "{} - {}", self.a, wterm(&-self.b.clone()).trim_start_matches('-'))
        } else {
            write!(f, "{} + {}", self.a, wterm(&self.b))
        }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")?;
        if let Some(d) = self.disc {
            write!(f, " [w^2={d}]")?;
        }
        Ok(())
    }
}
