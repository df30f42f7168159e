//! Refinements by an inner involution and the double centralizer split.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graded::GradedAlgebra;
use crate::group::{Elem, Group, Hom, Subgroup};
use crate::linalg::{kernel, Echelon};
use crate::matrix::Matrix;
use crate::par;
use crate::scalar::{Kind, RealQuad, Scalar};

/// A refinement together with the element X whose conjugation splits the
/// components.
#[derive(Clone, Debug)]
pub struct Refinement {
    pub algebra: GradedAlgebra,
    pub x: Matrix,
}

fn pure_part(x: &Matrix) -> Matrix {
    let n = x.rows();
    let a = &x.real_trace() * &RealQuad::from_int(n as i64).inv().expect("n > 0");
    x.sub(&Matrix::scalar(n, &Scalar::from_real(x.kind(), a))).expect("same shape")
}

/// The splitting element: a trace-zero element of D_e when D_e ≅ ℍ, or the
/// first basis element of the first component outside the support of the
/// centralizer of D_e when D_e ≅ ℂ.
pub fn refining_element(a: &GradedAlgebra) -> Result<Matrix> {
    let de = a.component(0);
    match a.component_dim() {
        Some(4) => de
            .iter()
            .map(pure_part)
            .find(|p| !p.is_zero())
            .ok_or_else(|| Error::Internal("quaternionic neutral component without pure part".into())),
        Some(2) => {
            if a.kind() == Kind::C {
                let ii = Matrix::scalar(a.n(), &Scalar::imag_unit());
                let vs: Vec<_> = de.iter().map(Matrix::real_coords).collect();
                if Echelon::from_vectors(a.coord_len(), &vs).contains(&ii.real_coords()) {
                    return Err(Error::Precondition("neutral component is the center; no refinement".into()));
                }
            }
            let c = a.centralizer(de)?;
            a.components()
                .iter()
                .find(|(t, _)| c.component(**t).is_empty())
                .map(|(_, v)| v[0].clone())
                .ok_or_else(|| Error::Precondition("every component commutes with the neutral one".into()))
        }
        _ => Err(Error::Precondition("refinement needs components of dimension 2 or 4".into())),
    }
}

/// Splits every component into the (+1) and (−1) eigenspaces of d ↦ XdX⁻¹.
/// The new grading group is Z2 × G with the new coordinate first.
pub fn refine(a: &GradedAlgebra) -> Result<Refinement> {
    a.check_grading()?;
    a.check_division_grading()?;
    let x = refining_element(a)?;
    let xi = x.inverse()?;
    let z2 = Group::elementary(1);
    let g = a.group();
    let p = Group::product(&z2, &g)?;
    let len = a.coord_len();
    let entries: Vec<(Elem, &Vec<Matrix>)> = a.components().iter().map(|(&t, v)| (t, v)).collect();
    let parts = par::map(&entries, |&(t, basis)| -> Result<Vec<(Elem, Vec<Matrix>)>> {
        let images = basis.iter().map(|b| x.mul(b)?.mul(&xi)).collect::<Result<Vec<_>>>()?;
        let mut out = Vec::new();
        for (eps, negate) in [(0, false), (1, true)] {
            let cols = images
                .iter()
                .zip(basis)
                .map(|(img, b)| Ok((if negate { img.add(b)? } else { img.sub(b)? }).real_coords()))
                .collect::<Result<Vec<_>>>()?;
            let ker = kernel(len, &cols);
            let mats = ker.iter().map(|c| Matrix::real_combination(c, basis)).collect::<Result<Vec<_>>>()?;
            out.push((Group::pair(&z2, &g, eps, t), mats));
        }
        Ok(out)
    });
    let mut comps = BTreeMap::new();
    for part in parts {
        comps.extend(part?);
    }
    let algebra = GradedAlgebra::new(a.kind(), a.n(), p, comps)?;
    Ok(Refinement { algebra, x })
}

/// The projection Z2 × G → G forgetting a refinement coordinate.
pub fn forget_refinement(p: Group, g: Group) -> Result<Hom> {
    let z2 = Group::elementary(1);
    if Group::product(&z2, &g)? != p {
        return Err(Error::BadHom(format!("{p} is not Z2 x {g}")));
    }
    Hom::from_fn(p, g, |z| Group::split(&z2, &g, z).1)
}

/// Whether two gradings over one group have the same components as
/// subspaces.
pub fn same_components(a: &GradedAlgebra, b: &GradedAlgebra) -> bool {
    if a.group() != b.group() || a.kind() != b.kind() || a.n() != b.n() {
        return false;
    }
    if a.support_elements() != b.support_elements() {
        return false;
    }
    let len = a.coord_len();
    a.components().iter().all(|(t, va)| {
        let vb = b.component(*t);
        if va.len() != vb.len() {
            return false;
        }
        let e = Echelon::from_vectors(len, &va.iter().map(Matrix::real_coords).collect::<Vec<_>>());
        vb.iter().all(|m| e.contains(&m.real_coords()))
    })
}

/// D_e ≅ ℍ together with its graded centralizer, which carries a grading
/// with one-dimensional components on the same support.
#[derive(Clone, Debug)]
pub struct DoubleCentralizer {
    pub neutral: Vec<Matrix>,
    pub centralizer: GradedAlgebra,
}

pub fn double_centralizer_split(a: &GradedAlgebra) -> Result<DoubleCentralizer> {
    let de = a.component(0).to_vec();
    if de.len() != 4 {
        return Err(Error::Precondition("double centralizer split needs a quaternionic neutral component".into()));
    }
    let c = a.centralizer(&de)?;
    c.check_subalgebra()
        .map_err(|v| Error::Internal(format!("centralizer is not a graded subalgebra: {v}")))?;
    if c.component_dim() != Some(1) || c.support_elements() != a.support_elements() {
        return Err(Error::NotDivision("centralizer components are not one-dimensional on the support".into()));
    }
    if 4 * c.total_dim() != a.algebra_dim() {
        return Err(Error::NotDivision(format!(
            "dim D_e * dim C = {} but dim D = {}",
            4 * c.total_dim(),
            a.algebra_dim()
        )));
    }
    let mut e = Echelon::new(a.coord_len());
    for (_, y) in c.basis() {
        for x in &de {
            e.insert(&x.mul(y)?.real_coords());
        }
    }
    if e.rank() != a.algebra_dim() {
        return Err(Error::NotDivision("D_e and its centralizer do not generate D".into()));
    }
    Ok(DoubleCentralizer { neutral: de, centralizer: c })
}

/// Support of a refinement should be Z2 × T.
pub fn expected_refined_support(t: &Subgroup) -> Result<Subgroup> {
    let z2 = Group::elementary(1);
    let g = t.parent();
    let p = Group::product(&z2, &g)?;
    let elems: Vec<Elem> =
        [0, 1].iter().flat_map(|&e| t.elements().iter().map(move |&x| Group::pair(&z2, &g, e, x))).collect();
    Subgroup::from_elements(p, &elems)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::Block;
    use crate::scalar::Quaternion;

    fn q(x: Quaternion) -> Matrix {
        Matrix::scalar(1, &Scalar::Quat(x))
    }

    #[test]
    fn refine_h2_by_j() {
        let r = refine(&Block::H2.build()).unwrap();
        assert_eq!(r.x, q(Quaternion::j()));
        let a = &r.algebra;
        assert_eq!(a.group(), Group::elementary(2));
        // (eps, t): (0,e)=0, (0,g)=1, (1,e)=2, (1,g)=3
        assert_eq!(a.component(0), &[q(Quaternion::one())]);
        assert_eq!(a.component(2).len(), 1);
        assert_eq!(a.component(1).len(), 1);
        assert_eq!(a.component(3).len(), 1);
        assert!(a.is_division_grading());
        let back = a.coarsen(&forget_refinement(a.group(), Group::elementary(1)).unwrap()).unwrap();
        assert!(same_components(&back, &Block::H2.build()));
    }

    #[test]
    fn refine_quaternions_by_i() {
        let r = refine(&Block::H0.build()).unwrap();
        assert_eq!(r.x, q(Quaternion::i()));
        assert_eq!(r.algebra.component(0).len(), 2);
        assert_eq!(r.algebra.component(1).len(), 2);
        assert!(r.algebra.is_division_grading());
    }

    #[test]
    fn refine_rejects_fine_and_central_cases() {
        assert!(matches!(refine(&Block::H1.build()), Err(Error::Precondition(_))));
        assert!(matches!(refine(&Block::C0.build()), Err(Error::Precondition(_))));
    }

    #[test]
    fn quaternion_centralizer_is_real_line() {
        let s = double_centralizer_split(&Block::H0.build()).unwrap();
        assert_eq!(s.centralizer.component(0), &[Matrix::identity(Kind::H, 1)]);
    }
}
