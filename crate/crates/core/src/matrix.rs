//! Dense matrices over the exact coefficient rings.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Vector;
use crate::scalar::{Kind, Quaternion, RealQuad, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    kind: Kind,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(kind: Kind, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|s| s.kind() != kind) {
            return Err(Error::KindMismatch { left: kind, right: bad.kind() });
        }
        Ok(Matrix { kind, rows, cols, data })
    }

    pub fn from_rows(kind: Kind, rows: Vec<Vec<Scalar>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Matrix::new(kind, r, c, rows.into_iter().flatten().collect())
    }

    /// Square matrix with integer entries embedded in the given kind.
    pub fn from_ints(kind: Kind, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(kind, x)).collect()).collect();
        Matrix::from_rows(kind, data).expect("well-formed integer matrix")
    }

    pub fn zeros(kind: Kind, rows: usize, cols: usize) -> Matrix {
        Matrix { kind, rows, cols, data: vec![Scalar::zero(kind); rows * cols] }
    }

    pub fn scalar(n: usize, s: &Scalar) -> Matrix {
        let mut m = Matrix::zeros(s.kind(), n, n);
        for i in 0..n {
            m.data[i * n + i] = s.clone();
        }
        m
    }

    pub fn identity(kind: Kind, n: usize) -> Matrix {
        Matrix::scalar(n, &Scalar::one(kind))
    }

    /// Diagonal matrix.
    pub fn diag(entries: &[Scalar]) -> Result<Matrix> {
        let kind = entries.first().map(Scalar::kind).ok_or_else(|| Error::Shape("empty diagonal".into()))?;
        let n = entries.len();
        let mut m = Matrix::zeros(kind, n, n);
        for (i, e) in entries.iter().enumerate() {
            if e.kind() != kind {
                return Err(Error::KindMismatch { left: kind, right: e.kind() });
            }
            m.data[i * n + i] = e.clone();
        }
        Ok(m)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        assert_eq!(s.kind(), self.kind, "entry kind");
        self.data[i * self.cols + j] = s;
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    fn same_shape(&self, other: &Matrix) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch { left: self.kind, right: other.kind });
        }
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(self.with_data(data))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect();
        Ok(self.with_data(data))
    }

    fn with_data(&self, data: Vec<Scalar>) -> Matrix {
        Matrix { kind: self.kind, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        self.with_data(self.data.iter().map(Scalar::neg).collect())
    }

    pub fn scale(&self, r: &RealQuad) -> Matrix {
        self.with_data(self.data.iter().map(|x| x.scale(r)).collect())
    }

    /// s·A (entries multiplied by `s` on the left).
    pub fn left_scale(&self, s: &Scalar) -> Result<Matrix> {
        let data = self.data.iter().map(|x| s.checked_mul(x)).collect::<Result<_>>()?;
        Ok(self.with_data(data))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch { left: self.kind, right: other.kind });
        }
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.kind, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.data[idx] = out.data[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Matrix> {
        let mut acc = Matrix::identity(self.kind, self.rows);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// AB − BA.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    /// Entrywise Kronecker product `[a_ij · B]` of two matrices of one kind.
    pub fn kron(&self, other: &Matrix) -> Result<Matrix> {
        if self.kind != other.kind {
            return Err(Error::KindMismatch { left: self.kind, right: other.kind });
        }
        let (r, c) = (self.rows * other.rows, self.cols * other.cols);
        let mut out = Matrix::zeros(self.kind, r, c);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.data[(i * other.rows + k) * c + j * other.cols + l] = a.mul(b);
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Embeds a real matrix into kind C or H (identity on same kind).
    pub fn embed(&self, kind: Kind) -> Result<Matrix> {
        if self.kind == kind {
            return Ok(self.clone());
        }
        if self.kind != Kind::R {
            return Err(Error::KindMismatch { left: self.kind, right: kind });
        }
        let data = self
            .data
            .iter()
            .map(|x| Scalar::from_real(kind, x.as_real().expect("real entry")))
            .collect();
        Ok(Matrix { kind, rows: self.rows, cols: self.cols, data })
    }

    /// Inverse by Gauss–Jordan elimination. Row operations multiply on the
    /// left, so the same code is correct over the quaternions.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut a: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut inv: Vec<Vec<Scalar>> = Matrix::identity(self.kind, n).data.chunks(n).map(<[_]>::to_vec).collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::Singular { column: col })?;
            a.swap(col, p);
            inv.swap(col, p);
            let s = a[col][col].inv()?;
            for x in a[col].iter_mut() {
                *x = s.mul(x);
            }
            for x in inv[col].iter_mut() {
                *x = s.mul(x);
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = f.mul(&a[col][j]);
                    a[r][j] = a[r][j].sub(&t);
                    let t = f.mul(&inv[col][j]);
                    inv[r][j] = inv[r][j].sub(&t);
                }
            }
        }
        Matrix::from_rows(self.kind, inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.inverse().is_ok()
    }

    /// `Some(s)` if the matrix is s·I.
    pub fn scalar_value(&self) -> Option<Scalar> {
        if !self.is_square() || self.rows == 0 {
            return None;
        }
        let s = self.get(0, 0).clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let x = self.get(i, j);
                let ok = if i == j { *x == s } else { x.is_zero() };
                if !ok {
                    return None;
                }
            }
        }
        Some(s)
    }

    /// `Some(r)` if the matrix is r·I with r real.
    pub fn real_scalar_value(&self) -> Option<RealQuad> {
        self.scalar_value().and_then(|s| s.as_real())
    }

    /// Real part of the trace.
    pub fn real_trace(&self) -> RealQuad {
        (0..self.rows.min(self.cols)).fold(RealQuad::zero(), |acc, i| &acc + &self.get(i, i).real_coords()[0])
    }

    /// Coordinates over Q(√2), entry by entry.
    pub fn real_coords(&self) -> Vector {
        self.data.iter().flat_map(Scalar::real_coords).collect()
    }

    pub fn from_real_coords(kind: Kind, rows: usize, cols: usize, coords: &[RealQuad]) -> Matrix {
        let d = kind.real_dim();
        assert_eq!(coords.len(), rows * cols * d, "coordinate vector length");
        let data = coords.chunks(d).map(|c| Scalar::from_real_coords(kind, c)).collect();
        Matrix { kind, rows, cols, data }
    }

    /// Σ c_i · M_i with real coefficients.
    pub fn real_combination(coefs: &[RealQuad], ms: &[Matrix]) -> Result<Matrix> {
        let first = ms.first().ok_or_else(|| Error::Shape("empty combination".into()))?;
        let mut acc = Matrix::zeros(first.kind, first.rows, first.cols);
        for (c, m) in coefs.iter().zip(ms) {
            if !c.is_zero() {
                acc = acc.add(&m.scale(c))?;
            }
        }
        Ok(acc)
    }

    /// Quaternion entries `q` with the embedding ℍ → M₂(ℂ),
    /// w + xi + yj + zk ↦ [[w + xi, y + zi], [−y + zi, w − xi]].
    pub fn quaternion_as_complex(q: &Quaternion) -> [[Scalar; 2]; 2] {
        let c = |re: &RealQuad, im: &RealQuad| Scalar::from_real_coords(Kind::C, &[re.clone(), im.clone()]);
        [[c(&q.w, &q.x), c(&q.y, &q.z)], [c(&-&q.y, &q.z), c(&q.w, &-&q.x)]]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[ ")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(|s| s.to_string()).collect();
            f.write_str(&row.join(", "))?;
        }
        f.write_str(" ]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Cyclo8;

    fn w(k: usize) -> Scalar {
        Scalar::Complex(Cyclo8::omega_pow(k))
    }

    #[test]
    fn swap_squares_to_identity() {
        let x = Matrix::from_ints(Kind::R, &[&[0, 1], &[1, 0]]);
        assert_eq!(x.mul(&x).unwrap(), Matrix::identity(Kind::R, 2));
    }

    #[test]
    fn omega_diagonal_fourth_power() {
        let d = Matrix::diag(&[w(1), w(1).neg()]).unwrap();
        assert_eq!(d.pow(4).unwrap(), Matrix::identity(Kind::C, 2).neg());
    }

    #[test]
    fn kron_with_identity_is_block_diagonal() {
        let x = Matrix::from_ints(Kind::R, &[&[1, 2], &[3, 4]]);
        let k = Matrix::identity(Kind::R, 2).kron(&x).unwrap();
        let expect = Matrix::from_ints(Kind::R, &[&[1, 2, 0, 0], &[3, 4, 0, 0], &[0, 0, 1, 2], &[0, 0, 3, 4]]);
        assert_eq!(k, expect);
    }

    #[test]
    fn quaternion_inverse() {
        let q = |x: Quaternion| Scalar::Quat(x);
        let m = Matrix::from_rows(
            Kind::H,
            vec![
                vec![q(Quaternion::i()), q(Quaternion::j())],
                vec![q(Quaternion::one()), q(Quaternion::k())],
            ],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), Matrix::identity(Kind::H, 2));
        assert_eq!(inv.mul(&m).unwrap(), Matrix::identity(Kind::H, 2));
    }

    #[test]
    fn singular_matrix_reports_column() {
        let m = Matrix::from_ints(Kind::R, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.inverse(), Err(Error::Singular { column: 1 }));
    }

    #[test]
    fn kind_mismatch() {
        let a = Matrix::identity(Kind::R, 2);
        let b = Matrix::identity(Kind::C, 2);
        assert!(matches!(a.mul(&b), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn quaternion_embedding_is_multiplicative() {
        let units = Quaternion::units();
        let as_matrix = |q: &Quaternion| {
            let e = Matrix::quaternion_as_complex(q);
            Matrix::from_rows(Kind::C, e.iter().map(|r| r.to_vec()).collect()).unwrap()
        };
        for p in &units {
            for q in &units {
                assert_eq!(as_matrix(p).mul(&as_matrix(q)).unwrap(), as_matrix(&(p * q)));
            }
        }
    }
}
