use std::cmp::Ordering;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::forms::Sign;

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = BigRational;

/// `a + b·√2` with rational `a`, `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct RealQuad {
    pub a: Rational,
    pub b: Rational,
}

/// Implements the four owned/borrowed combinations of a binary operator in
/// terms of the `&T op &T` implementation.
macro_rules! forward_binop {
    ($ty:ty, $tr:ident, $method:ident) => {
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $method(self, rhs: &$ty) -> $ty {
                (&self).$method(rhs)
            }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $method(self, rhs: $ty) -> $ty {
                self.$method(&rhs)
            }
        }
    };
}
pub(crate) use forward_binop;

impl RealQuad {
    pub fn new(a: Rational, b: Rational) -> Self {
        RealQuad { a, b }
    }

    pub fn zero() -> Self {
        RealQuad::default()
    }

    pub fn one() -> Self {
        RealQuad::from_rational(Rational::one())
    }

    pub fn sqrt2() -> Self {
        RealQuad::new(Rational::zero(), Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        RealQuad::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        RealQuad::from_rational(Rational::new(n.into(), d.into()))
    }

    pub fn from_rational(a: Rational) -> Self {
        RealQuad { a, b: Rational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b·√2`.
    pub fn galois_conj(&self) -> Self {
        RealQuad::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 2b²`; zero iff the element is zero.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - Rational::from_integer(2.into()) * &self.b * &self.b
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.norm();
        Ok(RealQuad::new(&self.a / &n, -(&self.b / &n)))
    }

    /// Exact sign of the real number `a + b√2`.
    ///
    /// When `a` and `b` have opposite signs the term with the larger square
    /// wins, comparing `a²` against `2b²`.
    pub fn sign(&self) -> Result<Sign> {
        if self.is_zero() {
            return Err(Error::ZeroSign);
        }
        Ok(if self.is_positive() { Sign::Plus } else { Sign::Minus })
    }

    fn is_positive(&self) -> bool {
        let sa = self.a.signum();
        let sb = self.b.signum();
        if !sa.is_negative() && !sb.is_negative() {
            return !(sa.is_zero() && sb.is_zero());
        }
        if !sa.is_positive() && !sb.is_positive() {
            return false;
        }
        let a2 = &self.a * &self.a;
        let b2 = Rational::from_integer(2.into()) * &self.b * &self.b;
        if sa.is_positive() {
            a2 > b2
        } else {
            b2 > a2
        }
    }

    /// Exact square root inside Q(√2), if one exists.
    pub fn sqrt_exact(&self) -> Option<RealQuad> {
        if self.is_zero() {
            return Some(RealQuad::zero());
        }
        if !self.is_positive() {
            return None;
        }
        // (x + y√2)² = x² + 2y² + 2xy√2. With X = x², X satisfies
        // X² − aX + b²/2 = 0, so X = (a ± √(a² − 2b²)) / 2.
        let disc = self.norm();
        let root = rational_sqrt(&disc)?;
        let two = Rational::from_integer(2.into());
        for cand in [(&self.a + &root) / &two, (&self.a - &root) / &two] {
            if cand.is_negative() {
                continue;
            }
            let Some(x) = rational_sqrt(&cand) else { continue };
            let y = if x.is_zero() {
                let Some(y2) = rational_sqrt(&(&self.a / &two)) else { continue };
                y2
            } else {
                &self.b / (&two * &x)
            };
            for r in [RealQuad::new(x.clone(), y.clone()), RealQuad::new(-x.clone(), -y.clone())] {
                if r.is_positive() && &r * &r == *self {
                    return Some(r);
                }
            }
        }
        None
    }

    /// Approximate value, for diagnostics and test oracles only.
    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.a) + ratio_to_f64(&self.b) * std::f64::consts::SQRT_2
    }
}

pub(crate) fn ratio_to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    let n = int_sqrt(r.numer())?;
    let d = int_sqrt(r.denom())?;
    Some(Rational::new(n, d))
}

impl PartialOrd for RealQuad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealQuad {
    /// Numeric order on the real line.
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self - other;
        if d.is_zero() {
            Ordering::Equal
        } else if d.is_positive() {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    }
}

impl Add for &RealQuad {
    type Output = RealQuad;
    fn add(self, rhs: &RealQuad) -> RealQuad {
        RealQuad::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl Sub for &RealQuad {
    type Output = RealQuad;
    fn sub(self, rhs: &RealQuad) -> RealQuad {
        RealQuad::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl Mul for &RealQuad {
    type Output = RealQuad;
    fn mul(self, rhs: &RealQuad) -> RealQuad {
        if self.is_rational() && rhs.is_rational() {
            return RealQuad::from_rational(&self.a * &rhs.a);
        }
        let two = Rational::from_integer(2.into());
        RealQuad::new(
            &self.a * &rhs.a + two * &self.b * &rhs.b,
            &self.a * &rhs.b + &self.b * &rhs.a,
        )
    }
}

forward_binop!(RealQuad, Add, add);
forward_binop!(RealQuad, Sub, sub);
forward_binop!(RealQuad, Mul, mul);

impl Neg for &RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        RealQuad::new(-self.a.clone(), -self.b.clone())
    }
}

impl Neg for RealQuad {
    type Output = RealQuad;
    fn neg(self) -> RealQuad {
        RealQuad::new(-self.a, -self.b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rq(a: (i64, i64), b: (i64, i64)) -> RealQuad {
        RealQuad::new(Rational::new(a.0.into(), a.1.into()), Rational::new(b.0.into(), b.1.into()))
    }

    #[test]
    fn one_plus_root_two_inverse() {
        let x = rq((1, 1), (1, 1));
        assert_eq!(x.inv().unwrap(), rq((-1, 1), (1, 1)));
        assert_eq!(&x * &rq((-1, 1), (1, 1)), RealQuad::one());
        assert!(RealQuad::zero().inv().is_err());
    }

    #[test]
    fn signs() {
        assert_eq!(rq((1, 1), (-1, 1)).sign().unwrap(), Sign::Minus);
        // (3/2)² = 9/4 > 2
        assert_eq!(rq((3, 2), (-1, 1)).sign().unwrap(), Sign::Plus);
        assert_eq!(RealQuad::from_int(-5).sign().unwrap(), Sign::Minus);
        assert_eq!(rq((-3, 2), (1, 1)).sign().unwrap(), Sign::Minus);
        assert_eq!(rq((-1, 1), (1, 1)).sign().unwrap(), Sign::Plus);
        assert!(RealQuad::zero().sign().is_err());
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(RealQuad::from_int(9).sqrt_exact(), Some(RealQuad::from_int(3)));
        assert_eq!(RealQuad::from_int(2).sqrt_exact(), Some(RealQuad::sqrt2()));
        // (1 + √2)² = 3 + 2√2
        assert_eq!(rq((3, 1), (2, 1)).sqrt_exact(), Some(rq((1, 1), (1, 1))));
        // (√2/2)² = 1/2
        assert_eq!(rq((1, 2), (0, 1)).sqrt_exact(), Some(rq((0, 1), (1, 2))));
        assert_eq!(RealQuad::from_int(3).sqrt_exact(), None);
        assert_eq!(RealQuad::from_int(-4).sqrt_exact(), None);
    }
}
