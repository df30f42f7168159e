//! Invariants of division gradings and their classification.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::forms::{
    arf, check_nice_map, radical_and_type, symplectic_basis, Bicharacter, FormType, QuadraticForm, Sign,
};
use crate::graded::{GradedAlgebra, NeutralKind};
use crate::group::{Elem, Group, Subgroup};
use crate::linalg::Echelon;
use crate::matrix::Matrix;
use crate::scalar::{Kind, RealQuad, Scalar};

/// The entries of the list of equivalence classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseTag {
    C1a,
    C1b,
    C1c,
    C1d,
    C2a,
    C2b,
    C2c,
    C2d,
    C2e,
    C2f,
    C3a,
    C3b,
    C3c,
    C3d,
}

impl CaseTag {
    pub const ALL: [CaseTag; 14] = [
        CaseTag::C1a,
        CaseTag::C1b,
        CaseTag::C1c,
        CaseTag::C1d,
        CaseTag::C2a,
        CaseTag::C2b,
        CaseTag::C2c,
        CaseTag::C2d,
        CaseTag::C2e,
        CaseTag::C2f,
        CaseTag::C3a,
        CaseTag::C3b,
        CaseTag::C3c,
        CaseTag::C3d,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseTag::C1a => "1a",
            CaseTag::C1b => "1b",
            CaseTag::C1c => "1c",
            CaseTag::C1d => "1d",
            CaseTag::C2a => "2a",
            CaseTag::C2b => "2b",
            CaseTag::C2c => "2c",
            CaseTag::C2d => "2d",
            CaseTag::C2e => "2e",
            CaseTag::C2f => "2f",
            CaseTag::C3a => "3a",
            CaseTag::C3b => "3b",
            CaseTag::C3c => "3c",
            CaseTag::C3d => "3d",
        }
    }

    pub fn parse(s: &str) -> Result<CaseTag> {
        CaseTag::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown case tag `{s}`")))
    }

    pub fn kind(self) -> Kind {
        match self {
            CaseTag::C1a | CaseTag::C2a | CaseTag::C3a => Kind::R,
            CaseTag::C1b | CaseTag::C2b | CaseTag::C3b => Kind::H,
            _ => Kind::C,
        }
    }

    /// Component dimension.
    pub fn dim(self) -> usize {
        match self {
            CaseTag::C1a | CaseTag::C1b | CaseTag::C1c | CaseTag::C1d => 1,
            CaseTag::C3a | CaseTag::C3b | CaseTag::C3c | CaseTag::C3d => 4,
            _ => 2,
        }
    }

    /// Smallest m (with n = 2^m) for which the entry exists.
    pub fn min_m(self) -> u32 {
        match self {
            CaseTag::C1a | CaseTag::C1b | CaseTag::C1c | CaseTag::C2b | CaseTag::C3b | CaseTag::C2f => 0,
            CaseTag::C1d | CaseTag::C2a | CaseTag::C2c | CaseTag::C2e | CaseTag::C3c => 1,
            CaseTag::C2d | CaseTag::C3a | CaseTag::C3d => 2,
        }
    }

    /// Shape Z2^a × Z4^b of the support at a given m (not defined for 2f).
    pub fn support_shape(self, m: u32) -> Result<Group> {
        if m < self.min_m() {
            return Err(Error::Precondition(format!("case {self} needs m >= {}", self.min_m())));
        }
        let (a, b) = match self {
            CaseTag::C1a => (2 * m, 0),
            CaseTag::C1b => (2 * m + 2, 0),
            CaseTag::C1c => (2 * m + 1, 0),
            CaseTag::C1d => (2 * m - 1, 1),
            CaseTag::C2a => (2 * m - 1, 0),
            CaseTag::C2b => (2 * m + 1, 0),
            CaseTag::C2c => (2 * m, 0),
            CaseTag::C2d => (2 * m - 2, 1),
            CaseTag::C2e => (2 * m - 2, 1),
            CaseTag::C3a => (2 * m - 2, 0),
            CaseTag::C3b => (2 * m, 0),
            CaseTag::C3c => (2 * m - 1, 0),
            CaseTag::C3d => (2 * m - 3, 1),
            CaseTag::C2f => return Err(Error::Deferred("case 2f has no fixed support shape".into())),
        };
        Group::new(a, b)
    }

    /// The dim-4 entry whose centralizer falls in this dim-1 entry.
    fn centralizer_outer(self) -> Option<CaseTag> {
        match self {
            CaseTag::C1a => Some(CaseTag::C3b),
            CaseTag::C1b => Some(CaseTag::C3a),
            CaseTag::C1c => Some(CaseTag::C3c),
            CaseTag::C1d => Some(CaseTag::C3d),
            _ => None,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Kind of the centralizer of a quaternionic neutral component.
pub fn centralizer_kind(kind: Kind) -> Kind {
    match kind {
        Kind::R => Kind::H,
        Kind::H => Kind::R,
        Kind::C => Kind::C,
    }
}

/// Commutation factors X_u X_v = i^k X_v X_u of a grading whose neutral
/// component is the center ℂI; only pairs with k ≠ 0 are stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Commutation {
    pub exps: BTreeMap<(Elem, Elem), u8>,
}

/// Invariant payloads, one shape per group of case tags.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Payload {
    /// (T, μ): 1a, 1b, 1c.
    Form { mu: QuadraticForm },
    /// (T, β, μ on T₂): 1d.
    BetaForm { beta: Bicharacter, mu: QuadraticForm },
    /// (T, K, ν): 2a, 2b, 2c.
    Nice { k: Subgroup, nu: BTreeMap<Elem, Sign> },
    /// (T, K, β on K, ν on T₂∖K): 2d.
    BetaNice { k: Subgroup, beta: Bicharacter, nu: BTreeMap<Elem, Sign> },
    /// (T, [ν]) with ν = +1 at the least element of T∖T₂: 2e.
    NuClass { nu: BTreeMap<Elem, Sign> },
    /// Dim-1 invariants of the centralizer of the neutral component: 3a–3d.
    Centralizer { kind: Kind, case: CaseTag, inner: Box<Payload> },
    /// (T, commutation factors), not classified further: 2f.
    Deferred { commutation: Commutation },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassificationRecord {
    pub case: CaseTag,
    pub kind: Kind,
    pub n: usize,
    pub dim: usize,
    pub support: Subgroup,
    pub payload: Payload,
}

impl ClassificationRecord {
    pub fn group(&self) -> Group {
        self.support.parent()
    }

    /// m with n = 2^m.
    pub fn m(&self) -> Option<u32> {
        self.n.is_power_of_two().then(|| self.n.trailing_zeros())
    }

    pub fn is_deferred(&self) -> bool {
        self.case == CaseTag::C2f
    }
}

/// First basis element of each component.
pub fn representatives(a: &GradedAlgebra) -> BTreeMap<Elem, Matrix> {
    a.components().iter().map(|(&t, v)| (t, v[0].clone())).collect()
}

/// `Some(+)` if x, y commute, `Some(−)` if they anticommute.
fn commutation_sign(x: &Matrix, y: &Matrix) -> Result<Option<Sign>> {
    let p = x.mul(y)?;
    let q = y.mul(x)?;
    Ok(if p == q {
        Some(Sign::Plus)
    } else if p == q.neg() {
        Some(Sign::Minus)
    } else {
        None
    })
}

/// Sign of c where X² = c·I with c real.
fn square_sign(x: &Matrix) -> Result<Option<Sign>> {
    Ok(match x.mul(x)?.real_scalar_value() {
        Some(c) if !c.is_zero() => Some(c.sign()?),
        _ => None,
    })
}

/// r with X² = r·iI.
fn imaginary_square(x: &Matrix) -> Result<Option<RealQuad>> {
    Ok(match x.mul(x)?.scalar_value() {
        Some(Scalar::Complex(c)) => {
            let (re, im) = c.re_im();
            (re.is_zero() && !im.is_zero()).then_some(im)
        }
        _ => None,
    })
}

fn in_span(mats: &[Matrix], x: &Matrix) -> bool {
    let vs: Vec<_> = mats.iter().map(Matrix::real_coords).collect();
    Echelon::from_vectors(x.real_coords().len(), &vs).contains(&x.real_coords())
}

fn unclassifiable(msg: impl Into<String>) -> Error {
    Error::Unclassifiable(msg.into())
}

/// β(u, v) from X_u X_v = β(u, v) X_v X_u, for representatives on `dom`.
pub fn beta_from_reps(dom: &Subgroup, reps: &BTreeMap<Elem, Matrix>) -> Result<Bicharacter> {
    let g = dom.parent();
    let mut table = BTreeMap::new();
    for &u in dom.elements() {
        for &v in dom.elements() {
            let s = commutation_sign(&reps[&u], &reps[&v])?.ok_or_else(|| {
                unclassifiable(format!(
                    "representatives at {} and {} neither commute nor anticommute",
                    g.format_elem(u),
                    g.format_elem(v)
                ))
            })?;
            table.insert((u, v), s);
        }
    }
    Bicharacter::from_fn(dom.clone(), |u, v| table[&(u, v)])
}

/// μ(t) from X_t² = μ(t)·c·I with c > 0, for t in `dom`.
pub fn mu_from_reps(dom: &Subgroup, reps: &BTreeMap<Elem, Matrix>) -> Result<QuadraticForm> {
    let g = dom.parent();
    let mut table = BTreeMap::new();
    for &t in dom.elements() {
        let s = square_sign(&reps[&t])?
            .ok_or_else(|| unclassifiable(format!("square at {} is not a real scalar", g.format_elem(t))))?;
        table.insert(t, s);
    }
    QuadraticForm::from_fn(dom.clone(), |t| table[&t])
}

/// The commutation bicharacter of a grading with one-dimensional components.
pub fn extract_beta(a: &GradedAlgebra) -> Result<Bicharacter> {
    let t = a.support()?;
    if a.component_dim() != Some(1) {
        return Err(Error::Precondition("extract_beta needs one-dimensional components".into()));
    }
    beta_from_reps(&t, &representatives(a))
}

/// The quadratic form X_t² = ±I on T₂ of a grading with one-dimensional
/// components.
pub fn extract_mu(a: &GradedAlgebra) -> Result<QuadraticForm> {
    let t = a.support()?;
    if a.component_dim() != Some(1) {
        return Err(Error::Precondition("extract_mu needs one-dimensional components".into()));
    }
    mu_from_reps(&t.two_torsion(), &representatives(a))
}

/// Neutral component, the degrees of the center, and the degree f of iI.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CenterInfo {
    pub neutral: NeutralKind,
    pub center_support: Vec<Elem>,
    pub f: Option<Elem>,
    pub neutral_is_center: bool,
}

/// Checks the grading, identifies D_e, computes the center as a graded
/// subalgebra and locates iI for complex algebras.
pub fn neutral_and_center(a: &GradedAlgebra) -> Result<CenterInfo> {
    a.check_grading()?;
    let neutral = a.check_division_grading()?;
    // D_e together with one element per generator of T generates D
    let t = a.support()?;
    let reps = representatives(a);
    let mut gens: Vec<Matrix> = a.component(0).to_vec();
    gens.extend(t.basis().iter().map(|b| reps[b].clone()));
    let center = a.centralizer(&gens)?;
    let center_support = center.support_elements();
    let expected = if a.kind() == Kind::C { 2 } else { 1 };
    if center.total_dim() != expected {
        return Err(Error::Internal(format!(
            "center has dimension {}, expected {expected} for kind {}",
            center.total_dim(),
            a.kind()
        )));
    }
    let f = if a.kind() == Kind::C {
        let ii = Matrix::scalar(a.n(), &Scalar::imag_unit());
        let deg = center_support
            .iter()
            .copied()
            .find(|&s| in_span(a.component(s), &ii))
            .ok_or_else(|| Error::Internal("iI is not homogeneous".into()))?;
        (deg != 0).then_some(deg)
    } else {
        None
    };
    let neutral_is_center = a.component(0).len() == center.total_dim() && center_support == [0];
    Ok(CenterInfo { neutral, center_support, f, neutral_is_center })
}

/// K and ν for gradings with two-dimensional components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KNu {
    pub k: Subgroup,
    /// ν on T∖K (R, H, elementary C), on T₂∖K (C with Z4, K ≠ T₂), or the
    /// normalized class representative on T∖T₂ (K = T₂).
    pub nu: BTreeMap<Elem, Sign>,
    pub class_only: bool,
}

/// Support of the centralizer of the neutral component.
fn centralizer_support(a: &GradedAlgebra) -> Result<(GradedAlgebra, Subgroup)> {
    let c = a.centralizer(a.component(0))?;
    let k = Subgroup::from_elements(a.group(), &c.support_elements())
        .map_err(|e| unclassifiable(format!("centralizer support is not a subgroup ({e})")))?;
    Ok((c, k))
}

pub fn extract_k_and_nu(a: &GradedAlgebra) -> Result<KNu> {
    if a.component_dim() != Some(2) {
        return Err(Error::Precondition("extract_k_and_nu needs two-dimensional components".into()));
    }
    let t = a.support()?;
    let g = a.group();
    let reps = representatives(a);
    if a.kind() == Kind::C && in_span(a.component(0), &Matrix::scalar(a.n(), &Scalar::imag_unit())) {
        return Err(Error::Deferred("neutral component is the center".into()));
    }
    let (_, k) = centralizer_support(a)?;
    if 2 * k.order() != t.order() {
        return Err(unclassifiable(format!("centralizer support has index {} in T", t.order() / k.order())));
    }
    let real_nu = |dom: Vec<Elem>| -> Result<BTreeMap<Elem, Sign>> {
        dom.into_iter()
            .map(|x| {
                let s = square_sign(&reps[&x])?.ok_or_else(|| {
                    unclassifiable(format!("square at {} is not a real scalar", g.format_elem(x)))
                })?;
                Ok((x, s))
            })
            .collect()
    };
    if t.is_elementary() {
        return Ok(KNu { nu: real_nu(t.difference(&k))?, k, class_only: false });
    }
    let t2 = t.two_torsion();
    if k != t2 {
        return Ok(KNu { nu: real_nu(t2.difference(&k))?, k, class_only: false });
    }
    let outside = t.difference(&t2);
    let r = |x: Elem| -> Result<Sign> {
        imaginary_square(&reps[&x])?
            .ok_or_else(|| unclassifiable(format!("square at {} is not a multiple of iI", g.format_elem(x))))?
            .sign()
    };
    let rg = r(outside[0])?;
    let nu = outside.iter().map(|&x| Ok((x, r(x)? * rg))).collect::<Result<_>>()?;
    Ok(KNu { k, nu, class_only: true })
}

fn commutation_table(a: &GradedAlgebra, t: &Subgroup) -> Result<Commutation> {
    let reps = representatives(a);
    let units: Vec<Scalar> = (0..4).map(|k| Scalar::Complex(crate::scalar::Cyclo8::omega_pow(2 * k))).collect();
    let mut exps = BTreeMap::new();
    for &u in t.elements() {
        for &v in t.elements() {
            let p = reps[&u].mul(&reps[&v])?;
            let q = reps[&v].mul(&reps[&u])?;
            let k = units
                .iter()
                .position(|z| q.left_scale(z).map(|m| m == p).unwrap_or(false))
                .ok_or_else(|| unclassifiable("commutation factor is not a fourth root of unity"))?;
            if k != 0 {
                exps.insert((u, v), k as u8);
            }
        }
    }
    Ok(Commutation { exps })
}

/// Classification of a grading (or graded subalgebra) with one-dimensional
/// components, as an algebra of the given kind.
fn classify_dim1(a: &GradedAlgebra, kind: Kind) -> Result<(CaseTag, Payload)> {
    let t = a.support()?;
    let reps = representatives(a);
    let beta = beta_from_reps(&t, &reps)?;
    let rad = beta.radical();
    match kind {
        Kind::R | Kind::H => {
            if rad.order() != 1 || !t.is_elementary() {
                return Err(unclassifiable("commutation bicharacter is not of type I"));
            }
            let mu = mu_from_reps(&t, &reps)?;
            if mu.polarize()? != beta {
                return Err(Error::Internal("squares do not polarize to the commutation bicharacter".into()));
            }
            let (want, case) = if kind == Kind::R { (Sign::Plus, CaseTag::C1a) } else { (Sign::Minus, CaseTag::C1b) };
            if arf(&mu)? != want {
                return Err(unclassifiable(format!("Arf invariant {} contradicts kind {kind}", arf(&mu)?)));
            }
            Ok((case, Payload::Form { mu }))
        }
        Kind::C => {
            if rad.order() != 2 {
                return Err(unclassifiable(format!("radical of order {} for a complex algebra", rad.order())));
            }
            let f = rad.elements()[1];
            if t.is_elementary() {
                let mu = mu_from_reps(&t, &reps)?;
                if mu.polarize()? != beta || radical_and_type(&beta, Some(&mu)) != (FormType::TypeII { f }) {
                    return Err(unclassifiable("quadratic form is not of type II"));
                }
                Ok((CaseTag::C1c, Payload::Form { mu }))
            } else {
                let t2 = t.two_torsion();
                if t.squares().elements() != [0, f] {
                    return Err(unclassifiable("semineutral element is not the square class"));
                }
                let mu = mu_from_reps(&t2, &reps)?;
                if mu.polarize()? != beta.restrict(&t2)? || !mu.value(f).is_minus() {
                    return Err(unclassifiable("form on T2 does not match the bicharacter"));
                }
                Ok((CaseTag::C1d, Payload::BetaForm { beta, mu }))
            }
        }
    }
}

fn classify_dim2(a: &GradedAlgebra) -> Result<(CaseTag, Payload)> {
    let t = a.support()?;
    let kind = a.kind();
    if kind == Kind::C && in_span(a.component(0), &Matrix::scalar(a.n(), &Scalar::imag_unit())) {
        return Ok((CaseTag::C2f, Payload::Deferred { commutation: commutation_table(a, &t)? }));
    }
    let knu = extract_k_and_nu(a)?;
    let k = knu.k.clone();
    match kind {
        Kind::R | Kind::H => {
            if !t.is_elementary() {
                return Err(unclassifiable("support of a real or quaternionic grading has order-4 elements"));
            }
            let nm = check_nice_map(&t, &k, |x| knu.nu[&x])?;
            let want = if kind == Kind::R { Sign::Plus } else { Sign::Minus };
            if nm.form_type != FormType::TypeI || nm.sign != Some(want) {
                return Err(unclassifiable("nice map has the wrong type or sign"));
            }
            let case = if kind == Kind::R { CaseTag::C2a } else { CaseTag::C2b };
            Ok((case, Payload::Nice { k, nu: knu.nu }))
        }
        Kind::C => {
            let ii = Matrix::scalar(a.n(), &Scalar::imag_unit());
            let f = a
                .support_elements()
                .into_iter()
                .find(|&s| in_span(a.component(s), &ii))
                .ok_or_else(|| Error::Internal("iI is not homogeneous".into()))?;
            if t.is_elementary() {
                let nm = check_nice_map(&t, &k, |x| knu.nu[&x])?;
                if nm.form_type != (FormType::TypeII { f }) {
                    return Err(unclassifiable("nice map is not of type II with semineutral deg(iI)"));
                }
                return Ok((CaseTag::C2c, Payload::Nice { k, nu: knu.nu }));
            }
            let t2 = t.two_torsion();
            if t.squares().elements() != [0, f] {
                return Err(unclassifiable("iI does not sit at the square class"));
            }
            if knu.class_only {
                let nm = check_nice_map(&t, &t2, |x| knu.nu[&x])?;
                if nm.form_type != (FormType::TypeII { f }) {
                    return Err(unclassifiable("nice map is not of type II with semineutral f"));
                }
                return Ok((CaseTag::C2e, Payload::NuClass { nu: knu.nu }));
            }
            let (c, _) = centralizer_support(a)?;
            let creps = representatives(&c);
            let beta = beta_from_reps(&k, &creps)?;
            if radical_and_type(&beta, None) != (FormType::TypeII { f }) {
                return Err(unclassifiable("bicharacter on K is not of type II"));
            }
            let k2 = k.two_torsion();
            let nm = check_nice_map(&t2, &k2, |x| knu.nu[&x])?;
            if nm.beta != beta.restrict(&k2)? || !nm.mu_g.value(f).is_minus() {
                return Err(unclassifiable("nice map does not match the bicharacter on K"));
            }
            Ok((CaseTag::C2d, Payload::BetaNice { k, beta, nu: knu.nu }))
        }
    }
}

fn classify_dim4(a: &GradedAlgebra) -> Result<(CaseTag, Payload)> {
    let split = crate::refine::double_centralizer_split(a)?;
    let kind = centralizer_kind(a.kind());
    let (inner_case, inner) = classify_dim1(&split.centralizer, kind)?;
    let case = inner_case.centralizer_outer().expect("dim-1 tag");
    Ok((case, Payload::Centralizer { kind, case: inner_case, inner: Box::new(inner) }))
}

/// Validates a division grading and computes its classification record.
pub fn classify(a: &GradedAlgebra) -> Result<ClassificationRecord> {
    a.check_grading()?;
    let neutral = a.check_division_grading()?;
    let support = a.support()?;
    let dim = neutral.dim();
    let (case, payload) = match dim {
        1 => classify_dim1(a, a.kind())?,
        2 => classify_dim2(a)?,
        4 => classify_dim4(a)?,
        _ => unreachable!("neutral dimension is 1, 2 or 4"),
    };
    let rec = ClassificationRecord { case, kind: a.kind(), n: a.n(), dim, support, payload };
    if case != CaseTag::C2f {
        let m = rec.m().ok_or_else(|| unclassifiable(format!("n = {} is not a power of two", a.n())))?;
        let shape = case.support_shape(m)?;
        if rec.support.shape() != shape {
            return Err(Error::Internal(format!(
                "case {case} with n = {} should have support {shape}, found {}",
                a.n(),
                rec.support.shape()
            )));
        }
    }
    Ok(rec)
}

/// Verdict of a comparison, with both records.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub reason: String,
    pub left: ClassificationRecord,
    pub right: ClassificationRecord,
}

/// Isomorphism over a common grading group: equality of invariants.
pub fn is_isomorphic(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<Verdict> {
    if a.group() != b.group() {
        return Err(Error::AmbientMismatch(a.group().to_string(), b.group().to_string()));
    }
    let (l, r) = (classify(a)?, classify(b)?);
    Ok(compare_records(l, r))
}

/// Isomorphism verdict for two records over the same grading group.
pub fn compare_records(l: ClassificationRecord, r: ClassificationRecord) -> Verdict {
    let (holds, reason) = if (l.kind, l.n) != (r.kind, r.n) {
        (false, "different algebras".to_string())
    } else if l.case != r.case {
        (false, format!("case {} vs case {}", l.case, r.case))
    } else if l.support != r.support {
        (false, "different supports".to_string())
    } else if l.payload != r.payload {
        (false, "different invariants".to_string())
    } else if l.case == CaseTag::C2f {
        (true, "equal commutation factors (complex classification, deferred)".to_string())
    } else {
        (true, "equal invariants".to_string())
    };
    Verdict { holds, reason, left: l, right: r }
}

/// Equivalence: equality of (component dimension, kind, n, case tag).
/// Two case-2f gradings are not compared.
pub fn is_equivalent(a: &GradedAlgebra, b: &GradedAlgebra) -> Result<Verdict> {
    let (l, r) = (classify(a)?, classify(b)?);
    equivalence_of_records(l, r)
}

pub fn equivalence_of_records(l: ClassificationRecord, r: ClassificationRecord) -> Result<Verdict> {
    if l.case == CaseTag::C2f && r.case == CaseTag::C2f {
        return Err(Error::Deferred("equivalence of two complex gradings (case 2f) is not decided".into()));
    }
    let key = |x: &ClassificationRecord| (x.dim, x.kind, x.n, x.case);
    let holds = key(&l) == key(&r);
    let reason = if holds {
        format!("both case {} on the same algebra", l.case)
    } else if (l.kind, l.n) != (r.kind, r.n) {
        "different algebras".to_string()
    } else if l.dim != r.dim {
        format!("component dimensions {} and {}", l.dim, r.dim)
    } else {
        format!("case {} vs case {}", l.case, r.case)
    };
    Ok(Verdict { holds, reason, left: l, right: r })
}

/// X_u X_v = σ(u, v) X_{uv} for chosen representatives of a grading with
/// one-dimensional components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    pub support: Subgroup,
    pub reps: BTreeMap<Elem, Matrix>,
    pub sigma: BTreeMap<(Elem, Elem), RealQuad>,
}

/// The real number s with x = s·y, if any.
fn real_ratio(x: &Matrix, y: &Matrix) -> Option<RealQuad> {
    let e = Echelon::from_vectors(y.real_coords().len(), &[y.real_coords()]);
    e.express(&x.real_coords()).map(|c| c[0].clone())
}

impl StructureConstants {
    pub fn compute(a: &GradedAlgebra) -> Result<StructureConstants> {
        if a.component_dim() != Some(1) {
            return Err(Error::Precondition("structure constants need one-dimensional components".into()));
        }
        let support = a.support()?;
        let g = a.group();
        let reps = representatives(a);
        let mut sigma = BTreeMap::new();
        for &u in support.elements() {
            for &v in support.elements() {
                let p = reps[&u].mul(&reps[&v])?;
                let s = real_ratio(&p, &reps[&g.mul(u, v)])
                    .ok_or_else(|| Error::Internal("product leaves its component".into()))?;
                sigma.insert((u, v), s);
            }
        }
        Ok(StructureConstants { support, reps, sigma })
    }

    /// σ(u,v)σ(uv,w) = σ(u,vw)σ(v,w) for all triples.
    pub fn is_cocycle(&self) -> bool {
        let g = self.support.parent();
        let el = self.support.elements();
        el.iter().all(|&u| {
            el.iter().all(|&v| {
                el.iter().all(|&w| {
                    let l = &self.sigma[&(u, v)] * &self.sigma[&(g.mul(u, v), w)];
                    let r = &self.sigma[&(u, g.mul(v, w))] * &self.sigma[&(v, w)];
                    l == r
                })
            })
        })
    }

    /// β(u, v) = σ(u, v)/σ(v, u).
    pub fn beta(&self, u: Elem, v: Elem) -> Result<Sign> {
        let q = &self.sigma[&(u, v)] * &self.sigma[&(v, u)].inv()?;
        if q == RealQuad::one() {
            Ok(Sign::Plus)
        } else if q == -RealQuad::one() {
            Ok(Sign::Minus)
        } else {
            Err(Error::Internal("commutation ratio is not a sign".into()))
        }
    }

    /// β(uv, w) = β(u, w) β(v, w) for all triples.
    pub fn beta_is_multiplicative(&self) -> Result<bool> {
        let g = self.support.parent();
        let el = self.support.elements();
        for &u in el {
            for &v in el {
                for &w in el {
                    if self.beta(g.mul(u, v), w)? != self.beta(u, w)? * self.beta(v, w)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Generators e_1..e_r of T with β(e_i, e_j) = −1 for i ≠ j, representatives
/// X_i with X_i² = ±I, and the signature |{i : μ(e_i) = +1}|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordPresentation {
    pub generators: Vec<Elem>,
    pub reps: Vec<Matrix>,
    pub squares: Vec<Sign>,
    pub signature: usize,
}

pub fn clifford_presentation(a: &GradedAlgebra) -> Result<CliffordPresentation> {
    let rec = classify(a)?;
    let mu = match (&rec.case, &rec.payload) {
        (CaseTag::C1a | CaseTag::C1b | CaseTag::C1c, Payload::Form { mu }) => mu.clone(),
        _ => {
            return Err(Error::Precondition(format!(
                "Clifford presentation needs case 1a, 1b or 1c, got {}",
                rec.case
            )))
        }
    };
    let g = a.group();
    let beta = mu.polarize()?;
    let fam = symplectic_basis(&beta)?;
    let mut gens = Vec::new();
    let mut c = 0; // product of a_j b_j over earlier pairs
    for &(x, y) in &fam.pairs {
        gens.push(g.mul(x, c));
        gens.push(g.mul(y, c));
        c = g.mul(c, g.mul(x, y));
    }
    if let Some(f) = fam.f {
        gens.push(g.mul(f, c));
    }
    let reps_all = representatives(a);
    let mut reps = Vec::new();
    let mut squares = Vec::new();
    for &e in &gens {
        let x = &reps_all[&e];
        let sq = x.mul(x)?.real_scalar_value().ok_or_else(|| Error::Internal("square is not real".into()))?;
        let s = sq.sign()?;
        let x = match (if s.is_minus() { -sq } else { sq }).sqrt_exact() {
            Some(r) => x.scale(&r.inv()?),
            None => x.clone(),
        };
        reps.push(x);
        squares.push(s);
    }
    for i in 0..gens.len() {
        for j in 0..i {
            if beta.value(gens[i], gens[j]) != Sign::Minus
                || commutation_sign(&reps[i], &reps[j])? != Some(Sign::Minus)
            {
                return Err(Error::Internal("Clifford generators do not anticommute".into()));
            }
        }
    }
    let span = Subgroup::span(g, &gens)?;
    if span != rec.support {
        return Err(Error::Internal("Clifford generators do not generate the support".into()));
    }
    let signature = squares.iter().filter(|s| !s.is_minus()).count();
    Ok(CliffordPresentation { generators: gens, reps, squares, signature })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::{product_of, Block};

    fn block(b: Block) -> GradedAlgebra {
        b.build()
    }

    #[test]
    fn h1_invariants() {
        let h = block(Block::H1);
        let beta = extract_beta(&h).unwrap();
        assert_eq!(beta.value(2, 1), Sign::Minus);
        assert_eq!(beta.value(0, 3), Sign::Plus);
        let mu = extract_mu(&h).unwrap();
        for t in 1..4 {
            assert_eq!(mu.value(t), Sign::Minus);
        }
        let rec = classify(&h).unwrap();
        assert_eq!(rec.case, CaseTag::C1b);
        assert_eq!(rec.m(), Some(0));
    }

    #[test]
    fn m2c1_invariants() {
        let m = block(Block::M2C1);
        let beta = extract_beta(&m).unwrap();
        // a = (1,0) = 4, b = (0,1) = 1
        assert_eq!(beta.value(4, 1), Sign::Minus);
        assert_eq!(beta.value(1, 1), Sign::Plus);
        let mu = extract_mu(&m).unwrap();
        assert_eq!(mu.value(4), Sign::Plus);
        assert_eq!(mu.value(2), Sign::Minus);
        assert_eq!(mu.value(6), Sign::Minus);
        let info = neutral_and_center(&m).unwrap();
        assert_eq!(info.f, Some(2));
        assert_eq!(classify(&m).unwrap().case, CaseTag::C1d);
    }

    #[test]
    fn block_cases() {
        let cases = [
            (Block::M2R1, CaseTag::C1a),
            (Block::C1, CaseTag::C1c),
            (Block::H2, CaseTag::C2b),
            (Block::M2R2, CaseTag::C2a),
            (Block::M2C2, CaseTag::C2e),
            (Block::R0, CaseTag::C1a),
            (Block::H0, CaseTag::C3b),
            (Block::C0, CaseTag::C2f),
        ];
        for (b, c) in cases {
            assert_eq!(classify(&block(b)).unwrap().case, c, "{}", b.name());
        }
    }

    #[test]
    fn k_and_nu_of_dim2_blocks() {
        let knu = extract_k_and_nu(&block(Block::M2R2)).unwrap();
        assert_eq!(knu.k.elements(), [0]);
        assert_eq!(knu.nu[&1], Sign::Plus);
        let knu = extract_k_and_nu(&block(Block::H2)).unwrap();
        assert_eq!(knu.nu[&1], Sign::Minus);
        let knu = extract_k_and_nu(&block(Block::M2C2)).unwrap();
        assert_eq!(knu.k.elements(), [0, 2]);
        assert_eq!(knu.nu[&1] * knu.nu[&3], Sign::Minus);
        assert_eq!(knu.nu[&1], Sign::Plus);
    }

    #[test]
    fn isomorphism_and_equivalence() {
        let hh = product_of(&[block(Block::H1), block(Block::H1)]).unwrap();
        let rr = product_of(&[block(Block::M2R1), block(Block::M2R1)]).unwrap();
        assert!(is_equivalent(&hh, &rr).unwrap().holds);
        assert!(!is_isomorphic(&hh, &rr).unwrap().holds);
        assert!(is_isomorphic(&rr, &rr).unwrap().holds);
        assert!(!is_equivalent(&block(Block::H2), &block(Block::M2R2)).unwrap().holds);
        assert!(matches!(
            is_isomorphic(&block(Block::H1), &block(Block::C1)),
            Err(Error::AmbientMismatch(..))
        ));
        let c0 = block(Block::C0);
        assert!(matches!(is_equivalent(&c0, &c0), Err(Error::Deferred(_))));
        assert!(!is_equivalent(&c0, &block(Block::C1)).unwrap().holds);
    }

    #[test]
    fn structure_constants_form_a_cocycle() {
        for b in [Block::H1, Block::M2R1, Block::M2C1, Block::C1] {
            let sc = StructureConstants::compute(&block(b)).unwrap();
            assert!(sc.is_cocycle());
            assert!(sc.beta_is_multiplicative().unwrap());
        }
    }

    #[test]
    fn clifford_generators() {
        let p = clifford_presentation(&block(Block::H1)).unwrap();
        assert_eq!((p.generators.len(), p.signature), (2, 0));
        let p = clifford_presentation(&block(Block::M2R1)).unwrap();
        assert_eq!((p.generators.len(), p.signature), (2, 2));
        let p = clifford_presentation(&block(Block::R0)).unwrap();
        assert_eq!(p.generators.len(), 0);
        let p = clifford_presentation(&block(Block::C1)).unwrap();
        assert_eq!(p.generators.len(), 1);
        let rr = product_of(&[block(Block::M2R1), block(Block::M2R1)]).unwrap();
        assert_eq!(clifford_presentation(&rr).unwrap().generators.len(), 4);
    }
}
