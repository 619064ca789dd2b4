//! Exact scalar arithmetic: arbitrary-precision rationals and real quadratic
//! field elements `a + b*sqrt(d)`, plus exact trigonometric values at
//! quarter-turn angles.
//!
//! A computation fixes one scalar field and stays inside it; mixing two
//! distinct quadratic fields is a programming error and panics. Rationals
//! embed into any quadratic field, and a quadratic element whose irrational
//! part vanishes normalizes back to a rational, so equality stays decidable.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Tag naming the scalar field a certificate or computation works in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalarField {
    /// Plain rationals.
    Rational,
    /// `Q(sqrt(d))` for a positive non-square integer `d`.
    Quadratic(u64),
    /// Rationals arising as cos/sin of integer multiples of a quarter turn.
    QuarterTurn,
}

impl fmt::Display for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarField::Rational => write!(f, "rational"),
            ScalarField::Quadratic(d) => write!(f, "quadratic sqrt({d})"),
            ScalarField::QuarterTurn => write!(f, "quarter-turn"),
        }
    }
}

/// An exact scalar: a rational or an element of a real quadratic field.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(BigRational),
    /// `a + b*sqrt(d)` with `b != 0` and `d` a positive non-square integer.
    Quadratic { a: BigRational, b: BigRational, d: u64 },
}

pub fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn bigratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

fn is_square(d: u64) -> bool {
    let r = (d as f64).sqrt().round() as u64;
    r.saturating_sub(1).pow(2) == d || r * r == d || (r + 1).pow(2) == d
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(big(n))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(bigratio(num, den))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    /// `a + b*sqrt(d)`, normalized to a rational when `b = 0`.
    ///
    /// Panics if `d` is zero or a perfect square (the field would degenerate).
    pub fn quadratic(a: BigRational, b: BigRational, d: u64) -> Self {
        assert!(d > 0 && !is_square(d), "sqrt({d}) is not irrational");
        if b.is_zero() {
            Scalar::Rational(a)
        } else {
            Scalar::Quadratic { a, b, d }
        }
    }

    /// `sqrt(d)` as a field element.
    pub fn sqrt(d: u64) -> Self {
        Scalar::quadratic(BigRational::zero(), BigRational::one(), d)
    }

    /// Exact `cos(k*pi/2)` for integer `k`; always one of -1, 0, 1.
    pub fn cos_quarter_turns(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Scalar::int(1),
            2 => Scalar::int(-1),
            _ => Scalar::zero(),
        }
    }

    /// Exact `sin(k*pi/2)` for integer `k`; always one of -1, 0, 1.
    pub fn sin_quarter_turns(k: i64) -> Self {
        match k.rem_euclid(4) {
            1 => Scalar::int(1),
            3 => Scalar::int(-1),
            _ => Scalar::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    /// The rational value, when the scalar is rational.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Quadratic { .. } => None,
        }
    }

    /// True when the scalar is a rational integer.
    pub fn is_integer(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_integer())
    }

    /// The field this scalar naturally lives in.
    pub fn field(&self) -> ScalarField {
        match self {
            Scalar::Rational(_) => ScalarField::Rational,
            Scalar::Quadratic { d, .. } => ScalarField::Quadratic(*d),
        }
    }

    fn parts(&self, d: u64) -> (BigRational, BigRational) {
        match self {
            Scalar::Rational(q) => (q.clone(), BigRational::zero()),
            Scalar::Quadratic { a, b, d: dd } => {
                assert_eq!(*dd, d, "mixed quadratic fields sqrt({dd}) and sqrt({d})");
                (a.clone(), b.clone())
            }
        }
    }

    fn common_d(&self, other: &Scalar) -> Option<u64> {
        match (self, other) {
            (Scalar::Rational(_), Scalar::Rational(_)) => None,
            (Scalar::Quadratic { d, .. }, Scalar::Rational(_)) => Some(*d),
            (Scalar::Rational(_), Scalar::Quadratic { d, .. }) => Some(*d),
            (Scalar::Quadratic { d: d1, .. }, Scalar::Quadratic { d: d2, .. }) => {
                assert_eq!(d1, d2, "mixed quadratic fields sqrt({d1}) and sqrt({d2})");
                Some(*d1)
            }
        }
    }

    /// Exact multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Quadratic { a, b, d } => {
                // 1/(a+b r) = (a-b r)/(a^2 - b^2 d), nonzero since d is non-square
                let dd = big(*d as i64);
                let norm = a * a - b * b * dd;
                assert!(!norm.is_zero(), "zero norm in quadratic field");
                Some(Scalar::quadratic(a / &norm, -(b / &norm), *d))
            }
        }
    }

    /// Field conjugate `a - b*sqrt(d)`; identity on rationals.
    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q.clone()),
            Scalar::Quadratic { a, b, d } => Scalar::quadratic(a.clone(), -b.clone(), *d),
        }
    }

    /// Integer power (negative exponents via the inverse).
    pub fn pow(&self, e: i64) -> Scalar {
        if e == 0 {
            return Scalar::one();
        }
        let base = if e < 0 {
            self.inv().expect("inverse of zero")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Rational(q) => rational_to_f64(q),
            Scalar::Quadratic { a, b, d } => {
                rational_to_f64(a) + rational_to_f64(b) * (*d as f64).sqrt()
            }
        }
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q.clone()),
            Scalar::Quadratic { a, b, d } => Scalar::quadratic(-a.clone(), -b.clone(), *d),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match self.common_d(rhs) {
            None => match (self, rhs) {
                (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x + y),
                _ => unreachable!(),
            },
            Some(d) => {
                let (a1, b1) = self.parts(d);
                let (a2, b2) = rhs.parts(d);
                Scalar::quadratic(a1 + a2, b1 + b2, d)
            }
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match self.common_d(rhs) {
            None => match (self, rhs) {
                (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(x * y),
                _ => unreachable!(),
            },
            Some(d) => {
                let (a1, b1) = self.parts(d);
                let (a2, b2) = rhs.parts(d);
                let dd = big(d as i64);
                Scalar::quadratic(&a1 * &a2 + &b1 * &b2 * dd, &a1 * &b2 + &b1 * &a2, d)
            }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

macro_rules! forward_val_ops {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { $tr::$m(&self, &rhs) }
        }
    )*};
}
forward_val_ops!(Add::add, Sub::sub, Mul::mul, Div::div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Quadratic { a, b, d } => {
                write!(f, "{}/{}+{}/{}r{}", a.numer(), a.denom(), b.numer(), b.denom(), d)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_field_closure_and_inverse() {
        // golden ratio algebra inside Q(sqrt 5)
        let u = Scalar::quadratic(bigratio(3, 2), bigratio(1, 2), 5); // (3+sqrt5)/2
        let v = u.inv().unwrap(); // (3-sqrt5)/2
        assert_eq!(&u * &v, Scalar::one());
        assert_eq!(&u + &v, Scalar::int(3));
        assert_eq!(&u - &v, Scalar::sqrt(5));
        // u is a unit: norm one
        assert_eq!(v, u.conjugate());
    }

    #[test]
    fn quadratic_normalizes_to_rational() {
        let r5 = Scalar::sqrt(5);
        let x = &r5 * &r5;
        assert_eq!(x, Scalar::int(5));
        assert!(x.is_rational());
    }

    #[test]
    fn quarter_turn_values() {
        assert_eq!(Scalar::cos_quarter_turns(0), Scalar::int(1));
        assert_eq!(Scalar::cos_quarter_turns(1), Scalar::zero());
        assert_eq!(Scalar::cos_quarter_turns(2), Scalar::int(-1));
        assert_eq!(Scalar::sin_quarter_turns(1), Scalar::int(1));
        assert_eq!(Scalar::sin_quarter_turns(3), Scalar::int(-1));
        assert_eq!(Scalar::sin_quarter_turns(-1), Scalar::int(-1));
    }

    #[test]
    #[should_panic(expected = "mixed quadratic fields")]
    fn mixed_fields_panic() {
        let _ = &Scalar::sqrt(2) + &Scalar::sqrt(3);
    }

    #[test]
    fn pow_negative_exponent() {
        let u = Scalar::quadratic(bigratio(3, 2), bigratio(1, 2), 5);
        assert_eq!(&u.pow(2) * &u.pow(-2), Scalar::one());
        assert_eq!(u.pow(0), Scalar::one());
    }
}
