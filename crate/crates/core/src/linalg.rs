//! Linear algebra over the field Q(√2).
//!
//! Matrices over ℝ, ℂ and ℍ with entries in the exact rings are flattened to
//! coordinate vectors over Q(√2); since 1, i, j, k (and the real and imaginary
//! parts of Q(ω)) are independent over ℝ, ranks computed here equal real ranks.

use crate::scalar::RealQuad;

pub type Vector = Vec<RealQuad>;

fn axpy(v: &mut [RealQuad], c: &RealQuad, row: &[RealQuad]) {
    // v -= c * row
    for (x, r) in v.iter_mut().zip(row) {
        if !r.is_zero() {
            *x = &*x - &(c * r);
        }
    }
}

/// Incrementally built row echelon basis of a span, remembering how each
/// stored row is expressed in terms of the accepted input vectors.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    len: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
    /// `combos[i][j]`: coefficient of accepted input j in stored row i.
    combos: Vec<Vector>,
}

impl Echelon {
    pub fn new(len: usize) -> Echelon {
        Echelon { len, ..Default::default() }
    }

    pub fn from_vectors(len: usize, vs: &[Vector]) -> Echelon {
        let mut e = Echelon::new(len);
        for v in vs {
            e.insert(v);
        }
        e
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the stored rows; returns the residual and the
    /// coefficients (over accepted inputs) that were subtracted.
    fn reduce(&self, v: &[RealQuad]) -> (Vector, Vector) {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut r = v.to_vec();
        let mut coef = vec![RealQuad::zero(); self.rows.len()];
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            axpy(&mut r, &c, row);
            for (k, x) in self.combos[i].iter().enumerate() {
                if !x.is_zero() {
                    coef[k] = &coef[k] + &(&c * x);
                }
            }
        }
        (r, coef)
    }

    pub fn contains(&self, v: &[RealQuad]) -> bool {
        self.reduce(v).0.iter().all(RealQuad::is_zero)
    }

    /// Adds `v` if it is independent of the stored span; returns whether it was.
    pub fn insert(&mut self, v: &[RealQuad]) -> bool {
        let (mut r, coef) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[p].inv().expect("nonzero pivot");
        for x in r.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        // new input index is self.rows.len(); row = (v - Σ coef_k in_k) * inv
        let mut combo: Vector = coef.iter().map(|c| -(c * &inv)).collect();
        combo.push(inv);
        for c in self.combos.iter_mut() {
            c.push(RealQuad::zero());
        }
        self.rows.push(r);
        self.pivots.push(p);
        self.combos.push(combo);
        true
    }

    /// Coefficients of `v` in terms of the accepted inputs, if `v` is in the span.
    pub fn express(&self, v: &[RealQuad]) -> Option<Vector> {
        let (r, coef) = self.reduce(v);
        r.iter().all(RealQuad::is_zero).then_some(coef)
    }
}

pub fn rank(len: usize, vs: &[Vector]) -> usize {
    Echelon::from_vectors(len, vs).rank()
}

/// Basis of the null space {c : Σ_j c_j · columns[j] = 0}.
pub fn kernel(len: usize, columns: &[Vector]) -> Vec<Vector> {
    let k = columns.len();
    // rows of the system: one per coordinate
    let mut m: Vec<Vector> = (0..len)
        .map(|i| columns.iter().map(|c| c[i].clone()).collect())
        .filter(|row: &Vector| row.iter().any(|x| !x.is_zero()))
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for col in 0..k {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][col].inv().expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let c = row[col].clone();
                axpy(row, &c, &pivot_row);
            }
        }
        pivot_cols.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let mut out = Vec::new();
    for free in (0..k).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![RealQuad::zero(); k];
        v[free] = RealQuad::one();
        for (row, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -m[row][free].clone();
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| RealQuad::from_int(x)).collect()
    }

    #[test]
    fn echelon_rank_and_membership() {
        let mut e = Echelon::new(3);
        assert!(e.insert(&v(&[1, 2, 0])));
        assert!(e.insert(&v(&[0, 1, 1])));
        assert!(!e.insert(&v(&[1, 3, 1])));
        assert_eq!(e.rank(), 2);
        assert!(e.contains(&v(&[2, 5, 1])));
        assert!(!e.contains(&v(&[0, 0, 1])));
        assert_eq!(e.express(&v(&[2, 5, 1])).unwrap(), v(&[2, 1]));
    }

    #[test]
    fn sqrt2_independence_is_respected() {
        // (1, √2) and (√2, 2) are dependent over Q(√2)
        let a = vec![RealQuad::one(), RealQuad::sqrt2()];
        let b = vec![RealQuad::sqrt2(), RealQuad::from_int(2)];
        assert_eq!(rank(2, &[a, b]), 1);
    }

    #[test]
    fn kernel_of_dependent_columns() {
        let cols = vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])];
        let k = kernel(2, &cols);
        assert_eq!(k, vec![v(&[-1, -1, 1])]);
        assert!(kernel(2, &[v(&[1, 0]), v(&[0, 1])]).is_empty());
        assert_eq!(kernel(2, &[v(&[0, 0])]).len(), 1);
    }
}
