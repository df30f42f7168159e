use std::ops::{Add, Mul, Neg, Sub};

use super::real::{forward_binop, RealQuad};
use crate::error::{Error, Result};

/// Hamilton quaternion `w + x·i + y·j + z·k` over Q(√2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Quaternion {
    pub w: RealQuad,
    pub x: RealQuad,
    pub y: RealQuad,
    pub z: RealQuad,
}

impl Quaternion {
    pub fn new(w: RealQuad, x: RealQuad, y: RealQuad, z: RealQuad) -> Self {
        Quaternion { w, x, y, z }
    }

    pub fn from_real(w: RealQuad) -> Self {
        Quaternion { w, ..Default::default() }
    }

    pub fn one() -> Self {
        Quaternion::from_real(RealQuad::one())
    }

    pub fn i() -> Self {
        Quaternion { x: RealQuad::one(), ..Default::default() }
    }

    pub fn j() -> Self {
        Quaternion { y: RealQuad::one(), ..Default::default() }
    }

    pub fn k() -> Self {
        Quaternion { z: RealQuad::one(), ..Default::default() }
    }

    /// The units 1, i, j, k in that order.
    pub fn units() -> [Quaternion; 4] {
        [Quaternion::one(), Quaternion::i(), Quaternion::j(), Quaternion::k()]
    }

    pub fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn conj(&self) -> Self {
        Quaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Reduced norm w² + x² + y² + z².
    pub fn norm(&self) -> RealQuad {
        &(&(&self.w * &self.w) + &(&self.x * &self.x)) + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn scale(&self, r: &RealQuad) -> Self {
        Quaternion::new(&self.w * r, &self.x * r, &self.y * r, &self.z * r)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.norm().inv()?;
        Ok(self.conj().scale(&n))
    }
}

impl Add for &Quaternion {
    type Output = Quaternion;
    fn add(self, r: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w + &r.w, &self.x + &r.x, &self.y + &r.y, &self.z + &r.z)
    }
}

impl Sub for &Quaternion {
    type Output = Quaternion;
    fn sub(self, r: &Quaternion) -> Quaternion {
        Quaternion::new(&self.w - &r.w, &self.x - &r.x, &self.y - &r.y, &self.z - &r.z)
    }
}

impl Mul for &Quaternion {
    type Output = Quaternion;
    fn mul(self, r: &Quaternion) -> Quaternion {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&r.w, &r.x, &r.y, &r.z);
        Quaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

forward_binop!(Quaternion, Add, add);
forward_binop!(Quaternion, Sub, sub);
forward_binop!(Quaternion, Mul, mul);

impl Neg for &Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        Quaternion::new(-&self.w, -&self.x, -&self.y, -&self.z)
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;
    fn neg(self) -> Quaternion {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Quaternion::i(), Quaternion::j(), Quaternion::k());
        let minus_one = -Quaternion::one();
        assert_eq!(&i * &i, minus_one);
        assert_eq!(&j * &j, minus_one);
        assert_eq!(&k * &k, minus_one);
        assert_eq!(&i * &j, k);
        assert_eq!(&j * &k, i);
        assert_eq!(&k * &i, j);
        assert_eq!(&j * &i, -&k);
    }

    #[test]
    fn inverse_and_conjugate() {
        assert_eq!(Quaternion::i().inv().unwrap(), -Quaternion::i());
        assert_eq!(Quaternion::j().conj(), -Quaternion::j());
        assert!(Quaternion::default().inv().is_err());
    }
}
