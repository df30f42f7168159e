use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::real::{forward_binop, Rational, RealQuad};
use crate::error::{Error, Result};

/// `c0 + c1·ω + c2·ω² + c3·ω³` with ω a primitive 8th root of unity, ω⁴ = −1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Cyclo8 {
    pub c: [Rational; 4],
}

impl Cyclo8 {
    pub fn new(c: [Rational; 4]) -> Self {
        Cyclo8 { c }
    }

    pub fn zero() -> Self {
        Cyclo8::default()
    }

    pub fn one() -> Self {
        Cyclo8::omega_pow(0)
    }

    /// ω^k for any k ≥ 0, reduced with ω⁴ = −1.
    pub fn omega_pow(k: usize) -> Self {
        let mut c: [Rational; 4] = Default::default();
        let sign = if (k / 4) % 2 == 0 { Rational::one() } else { -Rational::one() };
        c[k % 4] = sign;
        Cyclo8 { c }
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut c: [Rational; 4] = Default::default();
        c[0] = r;
        Cyclo8 { c }
    }

    /// Embeds `a + b√2` using √2 = ω − ω³.
    pub fn from_real(r: &RealQuad) -> Self {
        Cyclo8::new([r.a.clone(), r.b.clone(), Rational::zero(), -r.b.clone()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Real and imaginary parts in Q(√2); ω = (√2/2)(1 + i), ω³ = (√2/2)(−1 + i).
    pub fn re_im(&self) -> (RealQuad, RealQuad) {
        let half = Rational::new(1.into(), 2.into());
        let [c0, c1, c2, c3] = &self.c;
        let re = RealQuad::new(c0.clone(), (c1 - c3) * &half);
        let im = RealQuad::new(c2.clone(), (c1 + c3) * &half);
        (re, im)
    }

    pub fn from_re_im(re: &RealQuad, im: &RealQuad) -> Self {
        Cyclo8::new([
            re.a.clone(),
            &re.b + &im.b,
            im.a.clone(),
            &im.b - &re.b,
        ])
    }

    /// Complex conjugation, ω ↦ ω⁻¹ = −ω³.
    pub fn conj(&self) -> Self {
        let [c0, c1, c2, c3] = &self.c;
        Cyclo8::new([c0.clone(), -c3.clone(), -c2.clone(), -c1.clone()])
    }

    pub fn scale(&self, r: &RealQuad) -> Self {
        if r.is_rational() {
            return Cyclo8::new(self.c.clone().map(|x| x * &r.a));
        }
        self * &Cyclo8::from_real(r)
    }

    /// Inverse by solving the 4×4 rational system `self · y = 1`.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // Column j holds the coordinates of self·ω^j.
        let cols: Vec<Cyclo8> = (0..4).map(|j| self * &Cyclo8::omega_pow(j)).collect();
        let mut m: Vec<Vec<Rational>> = (0..4)
            .map(|i| {
                let mut row: Vec<Rational> = (0..4).map(|j| cols[j].c[i].clone()).collect();
                row.push(if i == 0 { Rational::one() } else { Rational::zero() });
                row
            })
            .collect();
        for col in 0..4 {
            let piv = (col..4).find(|&r| !m[r][col].is_zero()).ok_or(Error::ZeroInverse)?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for x in m[col].iter_mut() {
                *x = &*x / &p;
            }
            for r in 0..4 {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for k in 0..5 {
                        let v = &m[col][k] * &f;
                        m[r][k] = &m[r][k] - v;
                    }
                }
            }
        }
        Ok(Cyclo8::new([m[0][4].clone(), m[1][4].clone(), m[2][4].clone(), m[3][4].clone()]))
    }
}

impl Add for &Cyclo8 {
    type Output = Cyclo8;
    fn add(self, rhs: &Cyclo8) -> Cyclo8 {
        Cyclo8::new(std::array::from_fn(|k| &self.c[k] + &rhs.c[k]))
    }
}

impl Sub for &Cyclo8 {
    type Output = Cyclo8;
    fn sub(self, rhs: &Cyclo8) -> Cyclo8 {
        Cyclo8::new(std::array::from_fn(|k| &self.c[k] - &rhs.c[k]))
    }
}

impl Mul for &Cyclo8 {
    type Output = Cyclo8;
    fn mul(self, rhs: &Cyclo8) -> Cyclo8 {
        let mut out: [Rational; 4] = Default::default();
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let p = x * y;
                let k = i + j;
                if k < 4 {
                    out[k] += p;
                } else {
                    out[k - 4] -= p;
                }
            }
        }
        Cyclo8::new(out)
    }
}

forward_binop!(Cyclo8, Add, add);
forward_binop!(Cyclo8, Sub, sub);
forward_binop!(Cyclo8, Mul, mul);

impl Neg for &Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        Cyclo8::new(self.c.clone().map(|x| -x))
    }
}

impl Neg for Cyclo8 {
    type Output = Cyclo8;
    fn neg(self) -> Cyclo8 {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(k: usize) -> Cyclo8 {
        Cyclo8::omega_pow(k)
    }

    #[test]
    fn omega_relations() {
        assert_eq!(&w(1) * &w(3), -Cyclo8::one());
        assert_eq!(w(4), -Cyclo8::one());
        assert_eq!(w(8), Cyclo8::one());
        assert_eq!(w(1).inv().unwrap(), -w(3));
    }

    #[test]
    fn conjugation() {
        assert_eq!(w(2).conj(), -w(2));
        let one_plus_w = &Cyclo8::one() + &w(1);
        assert_eq!(one_plus_w.conj(), &Cyclo8::one() - &w(3));
        // |1 + ω|² is real
        let n = &one_plus_w * &one_plus_w.conj();
        assert!(n.re_im().1.is_zero());
    }

    #[test]
    fn sqrt2_embedding_squares_to_two() {
        let r2 = Cyclo8::from_real(&RealQuad::sqrt2());
        assert_eq!(&r2 * &r2, Cyclo8::from_rational(Rational::from_integer(2.into())));
    }
}
