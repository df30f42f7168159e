//! Graded matrix algebras: building blocks, product gradings, coarsenings,
//! centralizers and the grading / division-grading checks.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Hom, Subgroup};
use crate::linalg::{kernel, Echelon};
use crate::matrix::Matrix;
use crate::par;
use crate::scalar::{Cyclo8, Kind, Quaternion, RealQuad, Scalar};

/// A matrix algebra over ℝ, ℂ or ℍ (or a graded subalgebra of one) with a
/// decomposition into homogeneous components. Each component is stored as a
/// list of real-linearly independent matrices; empty components are omitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    kind: Kind,
    n: usize,
    group: Group,
    components: BTreeMap<Elem, Vec<Matrix>>,
}

impl GradedAlgebra {
    pub fn new(kind: Kind, n: usize, group: Group, components: BTreeMap<Elem, Vec<Matrix>>) -> Result<GradedAlgebra> {
        for (&t, mats) in &components {
            group.check(t)?;
            for m in mats {
                if m.kind() != kind {
                    return Err(Error::KindMismatch { left: kind, right: m.kind() });
                }
                if m.rows() != n || m.cols() != n {
                    return Err(Error::Shape(format!(
                        "component {} holds a {}x{} matrix, expected {n}x{n}",
                        group.format_elem(t),
                        m.rows(),
                        m.cols()
                    )));
                }
            }
        }
        let components = components.into_iter().filter(|(_, v)| !v.is_empty()).collect();
        Ok(GradedAlgebra { kind, n, group, components })
    }

    /// The trivially graded algebra of 1×1 matrices of the given kind.
    pub fn trivial(kind: Kind) -> GradedAlgebra {
        let basis: Vec<Matrix> = match kind {
            Kind::R => vec![Scalar::one(kind)],
            Kind::C => vec![Scalar::one(kind), Scalar::imag_unit()],
            Kind::H => Quaternion::units().into_iter().map(Scalar::Quat).collect(),
        }
        .into_iter()
        .map(|s| Matrix::scalar(1, &s))
        .collect();
        GradedAlgebra::new(kind, 1, Group::trivial(), BTreeMap::from([(0, basis)])).expect("trivial grading")
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn components(&self) -> &BTreeMap<Elem, Vec<Matrix>> {
        &self.components
    }

    pub fn component(&self, t: Elem) -> &[Matrix] {
        self.components.get(&t).map_or(&[], Vec::as_slice)
    }

    pub fn support_elements(&self) -> Vec<Elem> {
        self.components.keys().copied().collect()
    }

    /// The support, which must be a subgroup.
    pub fn support(&self) -> Result<Subgroup> {
        Subgroup::from_elements(self.group, &self.support_elements())
            .map_err(|e| Error::NotDivision(format!("support is not a subgroup ({e})")))
    }

    /// Common component dimension, if all components have the same one.
    pub fn component_dim(&self) -> Option<usize> {
        let mut dims = self.components.values().map(Vec::len);
        let d = dims.next()?;
        dims.all(|x| x == d).then_some(d)
    }

    pub fn total_dim(&self) -> usize {
        self.components.values().map(Vec::len).sum()
    }

    /// Real dimension of the full matrix algebra.
    pub fn algebra_dim(&self) -> usize {
        self.n * self.n * self.kind.real_dim()
    }

    /// (degree, matrix) for every basis element, in degree order.
    pub fn basis(&self) -> Vec<(Elem, &Matrix)> {
        self.components.iter().flat_map(|(&t, v)| v.iter().map(move |m| (t, m))).collect()
    }

    pub fn coord_len(&self) -> usize {
        self.algebra_dim()
    }

    fn echelon(&self, mats: &[Matrix]) -> Echelon {
        let vs: Vec<_> = mats.iter().map(Matrix::real_coords).collect();
        Echelon::from_vectors(self.coord_len(), &vs)
    }

    /// Replaces the grading group through a homomorphism: the component at h
    /// collects the components at all preimages of h.
    pub fn coarsen(&self, phi: &Hom) -> Result<GradedAlgebra> {
        if phi.src() != self.group {
            return Err(Error::BadHom(format!("map is defined on {}, grading group is {}", phi.src(), self.group)));
        }
        let mut comps: BTreeMap<Elem, Vec<Matrix>> = BTreeMap::new();
        for (&t, mats) in &self.components {
            comps.entry(phi.apply(t)).or_default().extend(mats.iter().cloned());
        }
        GradedAlgebra::new(self.kind, self.n, phi.dst(), comps)
    }

    /// Conjugates every basis element by an invertible matrix (a graded
    /// isomorphism onto the conjugate grading).
    pub fn conjugate_by(&self, p: &Matrix) -> Result<GradedAlgebra> {
        let pi = p.inverse()?;
        let mut comps = BTreeMap::new();
        for (&t, mats) in &self.components {
            let v = mats.iter().map(|m| p.mul(m)?.mul(&pi)).collect::<Result<Vec<_>>>()?;
            comps.insert(t, v);
        }
        GradedAlgebra::new(self.kind, self.n, self.group, comps)
    }

    /// Same components with every basis matrix replaced by `f(degree, m)`.
    pub fn map_basis(&self, f: impl Fn(Elem, &Matrix) -> Matrix) -> Result<GradedAlgebra> {
        let comps = self
            .components
            .iter()
            .map(|(&t, v)| (t, v.iter().map(|m| f(t, m)).collect()))
            .collect();
        GradedAlgebra::new(self.kind, self.n, self.group, comps)
    }

    /// Graded subalgebra of elements commuting with every matrix of `s`.
    pub fn centralizer(&self, s: &[Matrix]) -> Result<GradedAlgebra> {
        let entries: Vec<(Elem, &Vec<Matrix>)> = self.components.iter().map(|(&t, v)| (t, v)).collect();
        let len = self.coord_len() * s.len();
        let parts = par::map(&entries, |&(t, mats)| -> Result<(Elem, Vec<Matrix>)> {
            let cols = mats
                .iter()
                .map(|b| {
                    let mut v = Vec::with_capacity(len);
                    for x in s {
                        v.extend(b.commutator(x)?.real_coords());
                    }
                    Ok(v)
                })
                .collect::<Result<Vec<_>>>()?;
            let ker = kernel(len, &cols);
            let basis = ker.iter().map(|c| Matrix::real_combination(c, mats)).collect::<Result<Vec<_>>>()?;
            Ok((t, basis))
        });
        let comps = parts.into_iter().collect::<Result<BTreeMap<_, _>>>()?;
        GradedAlgebra::new(self.kind, self.n, self.group, comps)
    }

    /// Checks the grading axioms. Subalgebras (`full == false`) skip the
    /// requirement that the components span the whole matrix algebra.
    fn validate(&self, full: bool) -> Result<GradingReport, Violation> {
        let g = self.group;
        let fmt = |t: Elem| g.format_elem(t);
        let mut echelons = BTreeMap::new();
        for (&t, mats) in &self.components {
            let e = self.echelon(mats);
            if e.rank() < mats.len() {
                return Err(Violation::DependentBasis { degree: fmt(t) });
            }
            echelons.insert(t, e);
        }
        let identity = Matrix::identity(self.kind, self.n).real_coords();
        if !echelons.get(&0).is_some_and(|e| e.contains(&identity)) {
            return Err(Violation::IdentityNotNeutral);
        }
        let all: Vec<_> = self.basis().iter().map(|(_, m)| m.real_coords()).collect();
        let rank = Echelon::from_vectors(self.coord_len(), &all).rank();
        if rank < all.len() {
            return Err(Violation::NotDirect);
        }
        if full && rank != self.algebra_dim() {
            return Err(Violation::Dimension { found: rank, expected: self.algebra_dim() });
        }
        let basis: Vec<(Elem, usize, &Matrix)> = self
            .components
            .iter()
            .flat_map(|(&t, v)| v.iter().enumerate().map(move |(i, m)| (t, i, m)))
            .collect();
        let pairs: Vec<(usize, usize)> =
            (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
        let bad = par::find_map_first(&pairs, |&(i, j)| {
            let (t, ti, x) = basis[i];
            let (u, ui, y) = basis[j];
            let target = g.mul(t, u);
            let p = x.mul(y).expect("matrices of one algebra");
            let ok = match echelons.get(&target) {
                Some(e) => e.contains(&p.real_coords()),
                None => p.is_zero(),
            };
            (!ok).then(|| Violation::Closure {
                left: fmt(t),
                left_index: ti,
                right: fmt(u),
                right_index: ui,
                target: fmt(target),
            })
        });
        match bad {
            Some(v) => Err(v),
            None => Ok(GradingReport { products_checked: pairs.len() }),
        }
    }

    /// Verifies the direct sum decomposition of the whole algebra and
    /// D_g·D_h ⊆ D_{gh} on all pairs of basis elements.
    pub fn check_grading(&self) -> Result<GradingReport, Violation> {
        self.validate(true)
    }

    /// The grading axioms for a graded subalgebra.
    pub fn check_subalgebra(&self) -> Result<GradingReport, Violation> {
        self.validate(false)
    }

    /// Verifies that a (valid) grading is a division grading and identifies
    /// the neutral component as ℝ, ℂ or ℍ.
    pub fn check_division_grading(&self) -> Result<NeutralKind, Violation> {
        let g = self.group;
        let de = self.component(0);
        let neutral = neutral_kind(de)?;
        let d = de.len();
        let entries: Vec<(Elem, &Vec<Matrix>)> = self.components.iter().map(|(&t, v)| (t, v)).collect();
        let bad = par::find_map_first(&entries, |&(t, mats)| {
            if mats.len() != d {
                return Some(Violation::UnequalDims { degree: g.format_elem(t), found: mats.len(), expected: d });
            }
            let x = &mats[0];
            if !x.is_invertible() {
                return Some(Violation::NotInvertible { degree: g.format_elem(t) });
            }
            let prods: Vec<Matrix> = de.iter().map(|b| b.mul(x).expect("same algebra")).collect();
            if self.echelon(&prods).rank() != d {
                return Some(Violation::NotSpanning { degree: g.format_elem(t) });
            }
            None
        });
        match bad {
            Some(v) => Err(v),
            None => Ok(neutral),
        }
    }

    pub fn is_division_grading(&self) -> bool {
        self.check_grading().is_ok() && self.check_division_grading().is_ok()
    }
}

/// Pure part X − (Re tr X / Re tr I)·I.
fn pure_part(x: &Matrix) -> Matrix {
    let n = x.rows();
    let a = &x.real_trace() * &RealQuad::from_int(n as i64).inv().expect("n > 0");
    x.sub(&Matrix::scalar(n, &Scalar::from_real(x.kind(), a))).expect("same shape")
}

/// `Some(c)` with X² = −c·I and c > 0.
fn negative_square(x: &Matrix) -> Option<RealQuad> {
    let c = -x.mul(x).ok()?.real_scalar_value()?;
    (c.sign().ok()? == crate::forms::Sign::Plus).then_some(c)
}

fn neutral_kind(de: &[Matrix]) -> Result<NeutralKind, Violation> {
    let fail = |m: &str| Err(Violation::NeutralNotDivision(m.to_string()));
    let pures: Vec<Matrix> = de.iter().map(pure_part).filter(|p| !p.is_zero()).collect();
    match de.len() {
        1 => Ok(NeutralKind::Real),
        2 => {
            let Some(p) = pures.first() else { return fail("no non-scalar element") };
            let Some(c) = negative_square(p) else {
                return fail("the non-scalar element does not square to a negative scalar");
            };
            match c.sqrt_exact() {
                Some(r) => Ok(NeutralKind::Complex { j: p.scale(&r.inv().expect("r > 0")), c: RealQuad::one() }),
                None => Ok(NeutralKind::Complex { j: p.clone(), c }),
            }
        }
        4 => {
            let Some(p1) = pures.first() else { return fail("no non-scalar element") };
            let Some(n1) = negative_square(p1) else {
                return fail("a pure element does not square to a negative scalar");
            };
            let n = p1.rows();
            let kind = p1.kind();
            // ⟨p, q⟩·I = −(pq + qp)/2 for pure p, q
            let inner = |p: &Matrix, q: &Matrix| -> Option<RealQuad> {
                let s = p.mul(q).ok()?.add(&q.mul(p).ok()?).ok()?;
                Some(-(&s.real_scalar_value()? * &RealQuad::from_ratio(1, 2)))
            };
            let mut p2 = None;
            for q in &pures[1..] {
                let Some(ip) = inner(p1, q) else { return fail("pure elements do not anticommute up to scalars") };
                let c = &ip * &n1.inv().expect("n1 > 0");
                let r = q.sub(&p1.scale(&c)).expect("same shape");
                if !r.is_zero() {
                    p2 = Some(r);
                    break;
                }
            }
            let Some(p2) = p2 else { return fail("neutral component is commutative") };
            let p3 = p1.mul(&p2).expect("same shape");
            let all = [p1, &p2, &p3];
            if all.iter().any(|p| negative_square(p).is_none()) {
                return fail("quaternion triple squares are not negative scalars");
            }
            let anti = |a: &Matrix, b: &Matrix| a.mul(b).unwrap().add(&b.mul(a).unwrap()).unwrap().is_zero();
            if !(anti(p1, &p2) && anti(p1, &p3) && anti(&p2, &p3)) {
                return fail("quaternion triple does not anticommute");
            }
            let id = Matrix::identity(kind, n);
            let vs: Vec<_> = [&id, p1, &p2, &p3].iter().map(|m| m.real_coords()).collect();
            if Echelon::from_vectors(vs[0].len(), &vs).rank() != 4 {
                return fail("quaternion triple is dependent");
            }
            Ok(NeutralKind::Quaternion { i: p1.clone(), j: p2, k: p3 })
        }
        d => Err(Violation::NeutralNotDivision(format!("neutral component has dimension {d}"))),
    }
}

/// The neutral component as one of the three real division algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NeutralKind {
    Real,
    /// D_e = ℝI ⊕ ℝJ with J² = −c·I, c > 0 (c = 1 whenever √c is exact).
    Complex { j: Matrix, c: RealQuad },
    /// D_e = span{I, i, j, k} with the usual quaternion relations up to
    /// positive scalars on the squares.
    Quaternion { i: Matrix, j: Matrix, k: Matrix },
}

impl NeutralKind {
    pub fn dim(&self) -> usize {
        match self {
            NeutralKind::Real => 1,
            NeutralKind::Complex { .. } => 2,
            NeutralKind::Quaternion { .. } => 4,
        }
    }

    pub fn symbol(&self) -> Kind {
        match self {
            NeutralKind::Real => Kind::R,
            NeutralKind::Complex { .. } => Kind::C,
            NeutralKind::Quaternion { .. } => Kind::H,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradingReport {
    pub products_checked: usize,
}

/// Why a candidate fails to be a (division) grading.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    IdentityNotNeutral,
    DependentBasis { degree: String },
    NotDirect,
    Dimension { found: usize, expected: usize },
    Closure { left: String, left_index: usize, right: String, right_index: usize, target: String },
    NeutralNotDivision(String),
    UnequalDims { degree: String, found: usize, expected: usize },
    NotInvertible { degree: String },
    NotSpanning { degree: String },
}

impl Violation {
    pub fn is_closure(&self) -> bool {
        matches!(self, Violation::Closure { .. })
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::IdentityNotNeutral => write!(f, "identity matrix is not in the neutral component"),
            Violation::DependentBasis { degree } => write!(f, "component {degree} has a dependent basis"),
            Violation::NotDirect => write!(f, "components do not form a direct sum"),
            Violation::Dimension { found, expected } => {
                write!(f, "components span dimension {found}, algebra has dimension {expected}")
            }
            Violation::Closure { left, left_index, right, right_index, target } => write!(
                f,
                "product of basis element {left_index} of {left} and basis element {right_index} of {right} is not in component {target}"
            ),
            Violation::NeutralNotDivision(m) => write!(f, "neutral component is not a division algebra: {m}"),
            Violation::UnequalDims { degree, found, expected } => {
                write!(f, "component {degree} has dimension {found}, neutral component has {expected}")
            }
            Violation::NotInvertible { degree } => write!(f, "basis element of component {degree} is not invertible"),
            Violation::NotSpanning { degree } => {
                write!(f, "neutral component times a basis element does not span component {degree}")
            }
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Error {
        match v {
            Violation::NeutralNotDivision(_)
            | Violation::UnequalDims { .. }
            | Violation::NotInvertible { .. }
            | Violation::NotSpanning { .. } => Error::NotDivision(v.to_string()),
            _ => Error::NotGrading(v.to_string()),
        }
    }
}

/// The building-block gradings, plus trivially graded ℝ, ℂ, ℍ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Block {
    H1,
    M2R1,
    C1,
    M2C1,
    H2,
    M2R2,
    M2C2,
    R0,
    C0,
    H0,
}

impl Block {
    pub const ALL: [Block; 10] = [
        Block::H1,
        Block::M2R1,
        Block::C1,
        Block::M2C1,
        Block::H2,
        Block::M2R2,
        Block::M2C2,
        Block::R0,
        Block::C0,
        Block::H0,
    ];

    /// The seven nontrivial blocks.
    pub const EXAMPLES: [Block; 7] =
        [Block::H1, Block::M2R1, Block::C1, Block::M2C1, Block::H2, Block::M2R2, Block::M2C2];

    pub fn name(self) -> &'static str {
        match self {
            Block::H1 => "H1",
            Block::M2R1 => "M2R1",
            Block::C1 => "C1",
            Block::M2C1 => "M2C1",
            Block::H2 => "H2",
            Block::M2R2 => "M2R2",
            Block::M2C2 => "M2C2",
            Block::R0 => "R0",
            Block::C0 => "C0",
            Block::H0 => "H0",
        }
    }

    pub fn parse(name: &str) -> Result<Block> {
        Block::ALL.into_iter().find(|b| b.name() == name).ok_or_else(|| Error::UnknownBlock(name.to_string()))
    }

    pub fn build(self) -> GradedAlgebra {
        let r = |rows: &[&[i64]]| Matrix::from_ints(Kind::R, rows);
        let c = |rows: [[Scalar; 2]; 2]| {
            Matrix::from_rows(Kind::C, rows.iter().map(|x| x.to_vec()).collect()).expect("2x2")
        };
        let w = |k: usize| Scalar::Complex(Cyclo8::omega_pow(k));
        let z = || Scalar::zero(Kind::C);
        let q1 = |q: Quaternion| Matrix::scalar(1, &Scalar::Quat(q));
        let z2sq = Group::elementary(2);
        let (ga, gb, gc) = (2, 1, 3); // (1,0), (0,1), (1,1)
        let one_each = |group: Group, items: Vec<(Elem, Matrix)>| {
            (group, items.into_iter().map(|(t, m)| (t, vec![m])).collect::<BTreeMap<_, _>>())
        };
        let (kind, n, (group, comps)) = match self {
            Block::R0 => return GradedAlgebra::trivial(Kind::R),
            Block::C0 => return GradedAlgebra::trivial(Kind::C),
            Block::H0 => return GradedAlgebra::trivial(Kind::H),
            Block::H1 => (
                Kind::H,
                1,
                one_each(
                    z2sq,
                    vec![
                        (0, q1(Quaternion::one())),
                        (ga, q1(Quaternion::i())),
                        (gb, q1(Quaternion::j())),
                        (gc, q1(Quaternion::k())),
                    ],
                ),
            ),
            Block::M2R1 => (
                Kind::R,
                2,
                one_each(
                    z2sq,
                    vec![
                        (0, r(&[&[1, 0], &[0, 1]])),
                        (ga, r(&[&[0, 1], &[1, 0]])),
                        (gb, r(&[&[-1, 0], &[0, 1]])),
                        (gc, r(&[&[0, -1], &[1, 0]])),
                    ],
                ),
            ),
            Block::C1 => (
                Kind::C,
                1,
                one_each(
                    Group::elementary(1),
                    vec![(0, Matrix::scalar(1, &Scalar::one(Kind::C))), (1, Matrix::scalar(1, &Scalar::imag_unit()))],
                ),
            ),
            Block::M2C1 => (
                Kind::C,
                2,
                one_each(
                    Group::new(1, 1).expect("Z2 x Z4"),
                    vec![
                        (0, c([[w(0), z()], [z(), w(0)]])),
                        (1, c([[w(1), z()], [z(), w(1).neg()]])),
                        (2, c([[w(2), z()], [z(), w(2)]])),
                        (3, c([[w(3), z()], [z(), w(3).neg()]])),
                        (4, c([[z(), w(0)], [w(0), z()]])),
                        (5, c([[z(), w(1).neg()], [w(1), z()]])),
                        (6, c([[z(), w(2)], [w(2), z()]])),
                        (7, c([[z(), w(3).neg()], [w(3), z()]])),
                    ],
                ),
            ),
            Block::H2 => (
                Kind::H,
                1,
                (
                    Group::elementary(1),
                    BTreeMap::from([
                        (0, vec![q1(Quaternion::one()), q1(Quaternion::i())]),
                        (1, vec![q1(Quaternion::j()), q1(Quaternion::k())]),
                    ]),
                ),
            ),
            Block::M2R2 => (
                Kind::R,
                2,
                (
                    Group::elementary(1),
                    BTreeMap::from([
                        (0, vec![r(&[&[1, 0], &[0, 1]]), r(&[&[0, -1], &[1, 0]])]),
                        (1, vec![r(&[&[0, 1], &[1, 0]]), r(&[&[-1, 0], &[0, 1]])]),
                    ]),
                ),
            ),
            Block::M2C2 => (
                Kind::C,
                2,
                (
                    Group::new(0, 1).expect("Z4"),
                    BTreeMap::from([
                        (0, vec![c([[w(0), z()], [z(), w(0)]]), c([[z(), w(2)], [w(2), z()]])]),
                        (1, vec![c([[w(1), z()], [z(), w(1).neg()]]), c([[z(), w(3).neg()], [w(3), z()]])]),
                        (2, vec![c([[w(2), z()], [z(), w(2)]]), c([[z(), w(0)], [w(0), z()]])]),
                        (3, vec![c([[w(3), z()], [z(), w(3).neg()]]), c([[z(), w(1).neg()], [w(1), z()]])]),
                    ]),
                ),
            ),
        };
        GradedAlgebra::new(kind, n, group, comps).expect("building block")
    }
}

pub fn build_block(name: &str) -> Result<GradedAlgebra> {
    Ok(Block::parse(name)?.build())
}

/// Kind of the realization of a tensor product, or an error if no
/// realization rule exists for the pair.
pub fn product_kind(a: Kind, b: Kind) -> Result<Kind> {
    match (a, b) {
        (Kind::R, k) | (k, Kind::R) => Ok(k),
        (Kind::H, Kind::H) => Ok(Kind::R),
        (Kind::H, Kind::C) | (Kind::C, Kind::H) => Ok(Kind::C),
        (Kind::C, Kind::C) => Err(Error::UnsupportedKindPair(a, b)),
    }
}

/// Size of the realization of an n×n (kind a) ⊗ m×m (kind b) product.
pub fn product_size(a: Kind, n: usize, b: Kind, m: usize) -> Result<usize> {
    Ok(match (a, b) {
        (Kind::H, Kind::H) => 4 * n * m,
        (Kind::H, Kind::C) | (Kind::C, Kind::H) => 2 * n * m,
        _ => {
            product_kind(a, b)?;
            n * m
        }
    })
}

/// The real 4×4 matrix of x ↦ p·x·conj(q) on ℍ in the basis (1, i, j, k).
pub fn quaternion_pair_matrix(p: &Quaternion, q: &Quaternion) -> [[RealQuad; 4]; 4] {
    let qc = q.conj();
    let cols: Vec<Quaternion> = Quaternion::units().iter().map(|e| &(p * e) * &qc).collect();
    std::array::from_fn(|r| {
        std::array::from_fn(|c| {
            let x = &cols[c];
            [&x.w, &x.x, &x.y, &x.z][r].clone()
        })
    })
}

/// Realizes x ⊗ y as a single matrix.
///
/// Rules: ℝ⊗K and K⊗ℝ by Kronecker product after embedding; ℍ⊗ℍ as real
/// matrices through x ↦ a·x·conj(b); ℍ⊗ℂ and ℂ⊗ℍ as complex matrices
/// through ℍ → M₂(ℂ), w + xi + yj + zk ↦ [[w + xi, y + zi], [−y + zi, w − xi]].
pub fn tensor_matrices(x: &Matrix, y: &Matrix) -> Result<Matrix> {
    let (ka, kb) = (x.kind(), y.kind());
    let kind = product_kind(ka, kb)?;
    let (n, m) = (x.rows(), y.rows());
    match (ka, kb) {
        (Kind::R, _) | (_, Kind::R) => x.embed(kind)?.kron(&y.embed(kind)?),
        (Kind::H, Kind::H) => {
            let size = 4 * n * m;
            let mut out = Matrix::zeros(Kind::R, size, size);
            for i in 0..n {
                for j in 0..n {
                    let Scalar::Quat(a) = x.get(i, j) else { unreachable!() };
                    if a.is_zero() {
                        continue;
                    }
                    for k in 0..m {
                        for l in 0..m {
                            let Scalar::Quat(b) = y.get(k, l) else { unreachable!() };
                            if b.is_zero() {
                                continue;
                            }
                            let rho = quaternion_pair_matrix(a, b);
                            for (r, row) in rho.iter().enumerate() {
                                for (c, v) in row.iter().enumerate() {
                                    out.set((i * m + k) * 4 + r, (j * m + l) * 4 + c, Scalar::Real(v.clone()));
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
        (Kind::H, Kind::C) | (Kind::C, Kind::H) => {
            let size = 2 * n * m;
            let mut out = Matrix::zeros(Kind::C, size, size);
            for i in 0..n {
                for j in 0..n {
                    for k in 0..m {
                        for l in 0..m {
                            let (a, b) = (x.get(i, j), y.get(k, l));
                            if a.is_zero() || b.is_zero() {
                                continue;
                            }
                            let block = match (a, b) {
                                (Scalar::Quat(q), z) => Matrix::quaternion_as_complex(q).map(|r| r.map(|e| e.mul(z))),
                                (z, Scalar::Quat(q)) => Matrix::quaternion_as_complex(q).map(|r| r.map(|e| z.mul(&e))),
                                _ => unreachable!(),
                            };
                            for (r, row) in block.into_iter().enumerate() {
                                for (c, v) in row.into_iter().enumerate() {
                                    out.set((i * m + k) * 2 + r, (j * m + l) * 2 + c, v);
                                }
                            }
                        }
                    }
                }
            }
            Ok(out)
        }
        (Kind::C, Kind::C) => unreachable!("rejected by product_kind"),
    }
}

/// The product grading on A ⊗ B by G × H, realized as a matrix algebra.
pub fn product_grading(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<GradedAlgebra> {
    let kind = product_kind(a.kind, b.kind)?;
    let n = product_size(a.kind, a.n, b.kind, b.n)?;
    let group = Group::product(&a.group, &b.group)?;
    let pairs: Vec<(Elem, &Vec<Matrix>, Elem, &Vec<Matrix>)> = a
        .components
        .iter()
        .flat_map(|(&t, x)| b.components.iter().map(move |(&u, y)| (t, x, u, y)))
        .collect();
    let parts = par::map(&pairs, |&(t, xs, u, ys)| -> Result<(Elem, Vec<Matrix>)> {
        let mats = xs
            .iter()
            .flat_map(|x| ys.iter().map(move |y| tensor_matrices(x, y)))
            .collect::<Result<Vec<_>>>()?;
        Ok((Group::pair(&a.group, &b.group, t, u), mats))
    });
    let comps = parts.into_iter().collect::<Result<BTreeMap<_, _>>>()?;
    GradedAlgebra::new(kind, n, group, comps)
}

/// Left-to-right product of several gradings.
pub fn product_of(factors: &[GradedAlgebra]) -> Result<GradedAlgebra> {
    let (first, rest) = factors.split_first().ok_or_else(|| Error::Precondition("empty product".into()))?;
    rest.iter().try_fold(first.clone(), |acc, f| product_grading(&acc, f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_are_division_gradings() {
        for b in Block::ALL {
            let a = b.build();
            a.check_grading().unwrap_or_else(|v| panic!("{}: {v}", b.name()));
            a.check_division_grading().unwrap_or_else(|v| panic!("{}: {v}", b.name()));
        }
    }

    #[test]
    fn product_check_counts() {
        assert_eq!(Block::H1.build().check_grading().unwrap().products_checked, 16);
        assert_eq!(Block::M2C1.build().check_grading().unwrap().products_checked, 64);
    }

    #[test]
    fn h2_neutral_is_complex_with_j_equal_i() {
        let nk = Block::H2.build().check_division_grading().unwrap();
        match nk {
            NeutralKind::Complex { j, c } => {
                assert_eq!(c, RealQuad::one());
                assert_eq!(j, Matrix::scalar(1, &Scalar::Quat(Quaternion::i())));
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(Block::M2R1.build().check_division_grading().unwrap(), NeutralKind::Real);
    }

    #[test]
    fn misgraded_quaternions_violate_closure() {
        let h = Block::H1.build();
        let mut comps = h.components().clone();
        let j = comps.remove(&1).unwrap();
        comps.get_mut(&2).unwrap().extend(j);
        let bad = GradedAlgebra::new(Kind::H, 1, h.group(), comps).unwrap();
        let v = bad.check_grading().unwrap_err();
        assert!(v.is_closure(), "{v}");
        assert!(matches!(Error::from(v), Error::NotGrading(_)));
    }

    #[test]
    fn idempotent_neutral_component_is_not_division() {
        let r = |rows: &[&[i64]]| Matrix::from_ints(Kind::R, rows);
        let a = GradedAlgebra::new(
            Kind::R,
            2,
            Group::elementary(1),
            BTreeMap::from([
                (0, vec![r(&[&[1, 0], &[0, 0]]), r(&[&[0, 0], &[0, 1]])]),
                (1, vec![r(&[&[0, 1], &[0, 0]]), r(&[&[0, 0], &[1, 0]])]),
            ]),
        )
        .unwrap();
        assert!(a.check_grading().is_ok());
        assert!(matches!(a.check_division_grading(), Err(Violation::NeutralNotDivision(_))));
    }

    #[test]
    fn coarsenings_give_the_dim2_blocks() {
        let z2sq = Group::elementary(2);
        let z2 = Group::elementary(1);
        let h = Block::H1.build().coarsen(&Hom::new(z2sq, z2, vec![0, 1]).unwrap()).unwrap();
        assert_eq!(h, Block::H2.build());
        let z2z4 = Group::new(1, 1).unwrap();
        let z4 = Group::new(0, 1).unwrap();
        let m = Block::M2C1.build().coarsen(&Hom::new(z2z4, z4, vec![2, 1]).unwrap()).unwrap();
        for t in 0..4 {
            let e = Echelon::from_vectors(8, &m.component(t).iter().map(Matrix::real_coords).collect::<Vec<_>>());
            for x in Block::M2C2.build().component(t) {
                assert!(e.contains(&x.real_coords()));
            }
        }
        let id = Block::M2R1.build().coarsen(&Hom::identity(z2sq)).unwrap();
        assert_eq!(id, Block::M2R1.build());
    }

    #[test]
    fn quaternion_pair_realization_is_multiplicative() {
        let u = Quaternion::units();
        let as_m = |p: &Quaternion, q: &Quaternion| {
            let rho = quaternion_pair_matrix(p, q);
            Matrix::from_rows(Kind::R, rho.iter().map(|r| r.iter().cloned().map(Scalar::Real).collect()).collect())
                .unwrap()
        };
        assert_eq!(as_m(&u[0], &u[0]), Matrix::identity(Kind::R, 4));
        for a in &u {
            for b in &u {
                for c in &u {
                    for d in &u {
                        let lhs = as_m(a, b).mul(&as_m(c, d)).unwrap();
                        assert_eq!(lhs, as_m(&(a * c), &(b * d)));
                    }
                }
            }
        }
    }

    #[test]
    fn small_products() {
        let rr = product_grading(&Block::M2R1.build(), &Block::M2R1.build()).unwrap();
        assert_eq!((rr.kind(), rr.n(), rr.group()), (Kind::R, 4, Group::elementary(4)));
        rr.check_grading().unwrap();
        rr.check_division_grading().unwrap();
        let hh = product_grading(&Block::H1.build(), &Block::H1.build()).unwrap();
        assert_eq!((hh.kind(), hh.n()), (Kind::R, 4));
        hh.check_grading().unwrap();
        hh.check_division_grading().unwrap();
        assert!(matches!(
            product_grading(&Block::C1.build(), &Block::C1.build()),
            Err(Error::UnsupportedKindPair(Kind::C, Kind::C))
        ));
    }

    #[test]
    fn centralizers() {
        let m = Block::M2R2.build();
        let c = m.centralizer(m.component(0)).unwrap();
        assert_eq!(c.support_elements(), vec![0]);
        assert_eq!(c.component(0).len(), 2);
        let h = Block::H0.build();
        let c = h.centralizer(h.component(0)).unwrap();
        assert_eq!(c.component(0), &[Matrix::identity(Kind::H, 1)]);
        let m = Block::M2C2.build();
        let c = m.centralizer(m.component(0)).unwrap();
        assert_eq!(c.support_elements(), vec![0, 2]);
    }
}
