//! Exact scalar rings for matrix entries.
//!
//! Every entry of every matrix this crate touches lives in one of three
//! rings, all built on arbitrary-precision rationals:
//!
//! * [`RealQuad`]: the real quadratic field Q(√2),
//! * [`Cyclo8`]: the cyclotomic field Q(ω) with ω⁴ = −1 (so ω² = i),
//! * [`Quaternion`]: Hamilton quaternions with coefficients in Q(√2).
//!
//! Q(√2) is the common real subfield. Real-linear algebra on matrices is done
//! over it (see [`Scalar::real_coords`]), which keeps ranks identical to ranks
//! over ℝ.

mod cyclo;
mod quat;
mod real;
mod text;

use std::fmt;

pub use cyclo::Cyclo8;
pub use quat::Quaternion;
pub use real::{Rational, RealQuad};
pub use text::{format_scalar, parse_scalar};

use crate::error::{Error, Result};

/// Which of the three division algebras ℝ, ℂ, ℍ a matrix algebra is over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    R,
    C,
    H,
}

impl Kind {
    /// Dimension over ℝ of the coefficient division algebra.
    pub fn real_dim(self) -> usize {
        match self {
            Kind::R => 1,
            Kind::C => 2,
            Kind::H => 4,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Kind::R => "R",
            Kind::C => "C",
            Kind::H => "H",
        }
    }

    pub fn from_symbol(s: &str) -> Option<Kind> {
        match s {
            "R" => Some(Kind::R),
            "C" => Some(Kind::C),
            "H" => Some(Kind::H),
            _ => None,
        }
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// An element of one of the three coefficient rings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Real(RealQuad),
    Complex(Cyclo8),
    Quat(Quaternion),
}

impl Scalar {
    pub fn kind(&self) -> Kind {
        match self {
            Scalar::Real(_) => Kind::R,
            Scalar::Complex(_) => Kind::C,
            Scalar::Quat(_) => Kind::H,
        }
    }

    pub fn zero(kind: Kind) -> Scalar {
        Scalar::from_real(kind, RealQuad::zero())
    }

    pub fn one(kind: Kind) -> Scalar {
        Scalar::from_real(kind, RealQuad::one())
    }

    pub fn from_int(kind: Kind, n: i64) -> Scalar {
        Scalar::from_real(kind, RealQuad::from_int(n))
    }

    /// Embeds a real number of Q(√2) into the ring of the given kind.
    pub fn from_real(kind: Kind, r: RealQuad) -> Scalar {
        match kind {
            Kind::R => Scalar::Real(r),
            Kind::C => Scalar::Complex(Cyclo8::from_real(&r)),
            Kind::H => Scalar::Quat(Quaternion::from_real(r)),
        }
    }

    /// The complex unit `i` (ω² in Q(ω)). Only defined for kind C.
    pub fn imag_unit() -> Scalar {
        Scalar::Complex(Cyclo8::omega_pow(2))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Real(x) => x.is_zero(),
            Scalar::Complex(x) => x.is_zero(),
            Scalar::Quat(x) => x.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.kind())
    }

    fn mismatch(&self, other: &Scalar) -> Error {
        Error::KindMismatch {
            left: self.kind(),
            right: other.kind(),
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(x + y),
            (Scalar::Complex(x), Scalar::Complex(y)) => Scalar::Complex(x + y),
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(x + y),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(x - y),
            (Scalar::Complex(x), Scalar::Complex(y)) => Scalar::Complex(x - y),
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(x - y),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        Ok(match (self, other) {
            (Scalar::Real(x), Scalar::Real(y)) => Scalar::Real(x * y),
            (Scalar::Complex(x), Scalar::Complex(y)) => Scalar::Complex(x * y),
            (Scalar::Quat(x), Scalar::Quat(y)) => Scalar::Quat(x * y),
            _ => return Err(self.mismatch(other)),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Real(x) => Scalar::Real(-x),
            Scalar::Complex(x) => Scalar::Complex(-x),
            Scalar::Quat(x) => Scalar::Quat(-x),
        }
    }

    // Panicking variants for code paths where a matrix invariant already
    // guarantees matching kinds.
    pub fn add(&self, other: &Scalar) -> Scalar {
        self.checked_add(other).expect("scalar kind mismatch")
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.checked_sub(other).expect("scalar kind mismatch")
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.checked_mul(other).expect("scalar kind mismatch")
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        Ok(match self {
            Scalar::Real(x) => Scalar::Real(x.inv()?),
            Scalar::Complex(x) => Scalar::Complex(x.inv()?),
            Scalar::Quat(x) => Scalar::Quat(x.inv()?),
        })
    }

    /// Complex conjugation (ω ↦ ω⁻¹) or quaternion conjugation; identity on reals.
    pub fn conj(&self) -> Scalar {
        match self {
            Scalar::Real(x) => Scalar::Real(x.clone()),
            Scalar::Complex(x) => Scalar::Complex(x.conj()),
            Scalar::Quat(x) => Scalar::Quat(x.conj()),
        }
    }

    /// Multiplies by a real scalar (central in every kind).
    pub fn scale(&self, r: &RealQuad) -> Scalar {
        match self {
            Scalar::Real(x) => Scalar::Real(x * r),
            Scalar::Complex(x) => Scalar::Complex(x.scale(r)),
            Scalar::Quat(x) => Scalar::Quat(x.scale(r)),
        }
    }

    /// Coordinates over the real subfield Q(√2): 1, 2 (re, im) or 4 (w, x, y, z).
    pub fn real_coords(&self) -> Vec<RealQuad> {
        match self {
            Scalar::Real(x) => vec![x.clone()],
            Scalar::Complex(x) => {
                let (re, im) = x.re_im();
                vec![re, im]
            }
            Scalar::Quat(q) => vec![q.w.clone(), q.x.clone(), q.y.clone(), q.z.clone()],
        }
    }

    pub fn from_real_coords(kind: Kind, coords: &[RealQuad]) -> Scalar {
        assert_eq!(coords.len(), kind.real_dim());
        match kind {
            Kind::R => Scalar::Real(coords[0].clone()),
            Kind::C => Scalar::Complex(Cyclo8::from_re_im(&coords[0], &coords[1])),
            Kind::H => Scalar::Quat(Quaternion::new(
                coords[0].clone(),
                coords[1].clone(),
                coords[2].clone(),
                coords[3].clone(),
            )),
        }
    }

    /// The value as a real number, if it is one.
    pub fn as_real(&self) -> Option<RealQuad> {
        let coords = self.real_coords();
        if coords[1..].iter().all(RealQuad::is_zero) {
            Some(coords[0].clone())
        } else {
            None
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn kind_mismatch_is_an_error() {
        let a = Scalar::one(Kind::R);
        let b = Scalar::one(Kind::C);
        assert!(matches!(a.checked_add(&b), Err(Error::KindMismatch { .. })));
        assert!(a.checked_mul(&b).is_err());
    }

    #[test]
    fn real_coordinates_round_trip() {
        let z = Scalar::Complex(Cyclo8::new([q(1, 2), q(1, 3), q(-2, 1), q(5, 7)]));
        let back = Scalar::from_real_coords(Kind::C, &z.real_coords());
        assert_eq!(back, z);
        // ω = (√2/2)(1 + i)
        let w = Scalar::Complex(Cyclo8::omega_pow(1));
        let half_r2 = RealQuad::new(q(0, 1), q(1, 2));
        assert_eq!(w.real_coords(), vec![half_r2.clone(), half_r2]);
    }

    #[test]
    fn as_real_detects_imaginary_parts() {
        assert!(Scalar::imag_unit().as_real().is_none());
        let r = Scalar::from_real(Kind::H, RealQuad::sqrt2());
        assert_eq!(r.as_real(), Some(RealQuad::sqrt2()));
    }
}
