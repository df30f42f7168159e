//! Canonical representatives of the list, realizations of invariant
//! payloads, and enumeration of all payloads on a fixed support.

use std::collections::{BTreeMap, HashSet};

use crate::classify::{classify, CaseTag, ClassificationRecord, Payload};
use crate::error::{Error, Result};
use crate::forms::{
    arf, check_nice_map, enumerate_bicharacters, enumerate_quadratic_forms, radical_and_type, symplectic_basis,
    Bicharacter, FormType, QuadraticForm, Sign,
};
use crate::graded::{product_grading, product_of, Block, GradedAlgebra};
use crate::group::{Elem, Group, Hom, Subgroup};
use crate::par;
use crate::scalar::Kind;

/// Tensor factors of the list entry (tag, m), left to right.
pub fn recipe(tag: CaseTag, m: u32) -> Result<Vec<Block>> {
    if tag == CaseTag::C2f {
        return Err(Error::Deferred("case 2f has no real representative".into()));
    }
    if m < tag.min_m() {
        return Err(Error::Precondition(format!("case {tag} needs m >= {}", tag.min_m())));
    }
    let m = m as usize;
    let r = |k: usize| vec![Block::M2R1; k];
    let cat = |parts: Vec<Vec<Block>>| parts.concat();
    Ok(match tag {
        CaseTag::C1a if m == 0 => vec![Block::R0],
        CaseTag::C1a => r(m),
        CaseTag::C1b => cat(vec![r(m), vec![Block::H1]]),
        CaseTag::C1c => cat(vec![r(m), vec![Block::C1]]),
        CaseTag::C1d => cat(vec![r(m - 1), vec![Block::M2C1]]),
        CaseTag::C2a => cat(vec![vec![Block::M2R2], r(m - 1)]),
        CaseTag::C2b => cat(vec![vec![Block::H2], r(m)]),
        CaseTag::C2c => cat(vec![vec![Block::M2R2], r(m - 1), vec![Block::C1]]),
        CaseTag::C2d => cat(vec![vec![Block::M2R2], r(m - 2), vec![Block::M2C1]]),
        CaseTag::C2e => cat(vec![vec![Block::M2C2], r(m - 1)]),
        CaseTag::C3a => cat(vec![vec![Block::H0], r(m - 2), vec![Block::H1]]),
        CaseTag::C3b => cat(vec![vec![Block::H0], r(m)]),
        CaseTag::C3c => cat(vec![vec![Block::H0], r(m - 1), vec![Block::C1]]),
        CaseTag::C3d => cat(vec![vec![Block::H0], r(m - 2), vec![Block::M2C1]]),
        CaseTag::C2f => unreachable!(),
    })
}

/// Embeds `g` into `ambient` generator by generator: Z2 generators onto the
/// first Z2 generators, the Z4 generator onto the Z4 generator.
pub fn standard_embedding(g: Group, ambient: Group) -> Result<Hom> {
    if g.z2_rank() > ambient.z2_rank() || (g.has_z4() && !ambient.has_z4()) {
        return Err(Error::BadHom(format!("{g} does not embed generator-wise into {ambient}")));
    }
    let mut images: Vec<Elem> = (0..g.z2_rank() as usize).map(|i| ambient.generator(i)).collect();
    if g.has_z4() {
        images.push(ambient.generator(ambient.arity() - 1));
    }
    Hom::new(g, ambient, images)
}

/// The list entry (tag, m) as a product grading, optionally moved into a
/// larger grading group.
pub fn canonical_representative(tag: CaseTag, m: u32, ambient: Option<Group>) -> Result<GradedAlgebra> {
    let blocks: Vec<GradedAlgebra> = recipe(tag, m)?.into_iter().map(Block::build).collect();
    let a = product_of(&blocks)?;
    match ambient {
        None => Ok(a),
        Some(g) => a.coarsen(&standard_embedding(a.group(), g)?),
    }
}

/// A grading over its own group with a map of that group into the target.
struct Placed {
    alg: GradedAlgebra,
    hom: Hom,
}

impl Placed {
    fn block(b: Block, target: Group, images: Vec<Elem>) -> Result<Placed> {
        let alg = b.build();
        let hom = Hom::new(alg.group(), target, images)?;
        Ok(Placed { alg, hom })
    }

    fn times(&self, other: &Placed) -> Result<Placed> {
        let (ga, gb) = (self.alg.group(), other.alg.group());
        let alg = product_grading(&self.alg, &other.alg)?;
        let target = self.hom.dst();
        let hom = Hom::from_fn(alg.group(), target, |z| {
            let (x, y) = Group::split(&ga, &gb, z);
            target.mul(self.hom.apply(x), other.hom.apply(y))
        })?;
        Ok(Placed { alg, hom })
    }

    fn finish(self) -> Result<GradedAlgebra> {
        if !self.hom.is_injective() {
            return Err(Error::Internal("realization map is not injective".into()));
        }
        self.alg.coarsen(&self.hom)
    }
}

fn product_placed(parts: Vec<Placed>) -> Result<Placed> {
    let mut it = parts.into_iter();
    let first = it.next().ok_or_else(|| Error::Internal("empty realization".into()))?;
    it.try_fold(first, |acc, p| acc.times(&p))
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidPayload(msg.into())
}

/// Factors realizing a symplectic pair (a, b) with μ(a), μ(b) given:
/// ℍ for (−, −), otherwise M₂(ℝ) with its generators sent so that both
/// squares are +I.
fn pair_block(g: Group, mu: &QuadraticForm, a: Elem, b: Elem, target: Group) -> Result<Placed> {
    let ab = g.mul(a, b);
    match (mu.value(a), mu.value(b)) {
        (Sign::Minus, Sign::Minus) => Placed::block(Block::H1, target, vec![a, b]),
        (Sign::Plus, Sign::Plus) => Placed::block(Block::M2R1, target, vec![a, b]),
        (Sign::Plus, Sign::Minus) => Placed::block(Block::M2R1, target, vec![a, ab]),
        (Sign::Minus, Sign::Plus) => Placed::block(Block::M2R1, target, vec![ab, b]),
    }
}

/// Realization of a dim-1 payload on `t`.
fn realize_dim1(payload: &Payload, t: &Subgroup) -> Result<Placed> {
    let g = t.parent();
    let mut parts = vec![Placed::block(Block::R0, g, vec![])?];
    match payload {
        Payload::Form { mu } => {
            if mu.domain() != t {
                return Err(invalid("quadratic form lives on another group"));
            }
            let beta = mu.polarize()?;
            let fam = symplectic_basis(&beta).map_err(|e| invalid(e.to_string()))?;
            match fam.f {
                None => {
                    for &(a, b) in &fam.pairs {
                        parts.push(pair_block(g, mu, a, b, g)?);
                    }
                }
                Some(f) => {
                    if !mu.value(f).is_minus() {
                        return Err(invalid("form is not regular: mu(f) = +1"));
                    }
                    let fix = |x: Elem| if mu.value(x).is_minus() { g.mul(x, f) } else { x };
                    for &(a, b) in &fam.pairs {
                        parts.push(Placed::block(Block::M2R1, g, vec![fix(a), fix(b)])?);
                    }
                    parts.push(Placed::block(Block::C1, g, vec![f])?);
                }
            }
        }
        Payload::BetaForm { beta, mu } => {
            if beta.domain() != t || t.is_elementary() {
                return Err(invalid("bicharacter must live on the support, which needs an order-4 element"));
            }
            let t2 = t.two_torsion();
            if mu.domain() != &t2 || mu.polarize()? != beta.restrict(&t2)? {
                return Err(invalid("form on T2 does not polarize to the bicharacter"));
            }
            let fam = symplectic_basis(beta).map_err(|e| invalid(e.to_string()))?;
            let f = fam.f.ok_or_else(|| invalid("bicharacter is not of type II"))?;
            if !mu.value(f).is_minus() {
                return Err(invalid("mu(f) must be -1"));
            }
            let fix = |x: Elem| if mu.value(x).is_minus() { g.mul(x, f) } else { x };
            let (last, init) = fam.pairs.split_last().ok_or_else(|| invalid("empty symplectic family"))?;
            for &(a, b) in init {
                if !t2.contains(a) || !t2.contains(b) {
                    return Err(Error::Internal("order-4 element before the last symplectic pair".into()));
                }
                parts.push(Placed::block(Block::M2R1, g, vec![fix(a), fix(b)])?);
            }
            let (a, b) = *last;
            if g.square(b) != f || !t2.contains(a) {
                return Err(Error::Internal("last symplectic pair is not (order 2, order 4)".into()));
            }
            parts.push(Placed::block(Block::M2C1, g, vec![fix(a), b])?);
        }
        _ => return Err(invalid("not a payload with one-dimensional components")),
    }
    product_placed(parts)
}

/// Realizes a record's payload without checking the case conditions.
fn realize_payload(rec: &ClassificationRecord) -> Result<GradedAlgebra> {
    let t = &rec.support;
    let g = t.parent();
    let placed = match (&rec.case, &rec.payload) {
        (_, Payload::Deferred { .. }) => return Err(Error::Deferred("case 2f is not realized".into())),
        (_, Payload::Form { .. } | Payload::BetaForm { .. }) => realize_dim1(&rec.payload, t)?,
        (_, Payload::Nice { k, nu }) => {
            let nm = check_nice_map(t, k, |x| nu[&x])?;
            let first = dim2_block(nu[&nm.g], g, nm.g)?;
            first.times(&realize_dim1(&Payload::Form { mu: nm.mu_g }, k)?)?
        }
        (_, Payload::BetaNice { k, beta, nu }) => {
            let t2 = t.two_torsion();
            let nm = check_nice_map(&t2, &k.two_torsion(), |x| nu[&x])?;
            let first = dim2_block(nu[&nm.g], g, nm.g)?;
            first.times(&realize_dim1(&Payload::BetaForm { beta: beta.clone(), mu: nm.mu_g }, k)?)?
        }
        (_, Payload::NuClass { nu }) => {
            let t2 = t.two_torsion();
            let nm = check_nice_map(t, &t2, |x| nu[&x])?;
            if nu[&nm.g].is_minus() {
                return Err(invalid("class representative must be +1 at the least order-4 element"));
            }
            let fam = symplectic_basis(&nm.beta).map_err(|e| invalid(e.to_string()))?;
            if fam.f != Some(g.square(nm.g)) {
                return Err(invalid("nice map is not of type II with semineutral g^2"));
            }
            let a = Subgroup::span(g, &fam.members())?;
            let mu_a = QuadraticForm::from_fn(a.clone(), |x| nm.mu_g.value(x))?;
            let first = Placed::block(Block::M2C2, g, vec![nm.g])?;
            first.times(&realize_dim1(&Payload::Form { mu: mu_a }, &a)?)?
        }
        (_, Payload::Centralizer { inner, .. }) => {
            Placed::block(Block::H0, g, vec![])?.times(&realize_dim1(inner, t)?)?
        }
    };
    placed.finish()
}

fn dim2_block(nu_g: Sign, target: Group, g: Elem) -> Result<Placed> {
    let b = if nu_g.is_minus() { Block::H2 } else { Block::M2R2 };
    Placed::block(b, target, vec![g])
}

/// Checks that a payload satisfies the conditions of its case.
pub fn validate_record(rec: &ClassificationRecord) -> Result<()> {
    let t = &rec.support;
    let g = t.parent();
    if rec.case == CaseTag::C2f {
        return Err(Error::Deferred("case 2f records are not validated".into()));
    }
    if (rec.kind, rec.dim) != (rec.case.kind(), rec.case.dim()) {
        return Err(invalid(format!("case {} is not on a kind {} algebra with dim {}", rec.case, rec.kind, rec.dim)));
    }
    let m = rec.m().ok_or_else(|| invalid("n is not a power of two"))?;
    if t.shape() != rec.case.support_shape(m).map_err(|e| invalid(e.to_string()))? {
        return Err(invalid(format!("support {} does not fit case {} with n = {}", t.shape(), rec.case, rec.n)));
    }
    let f = t.squares().elements().get(1).copied();
    match (rec.case, &rec.payload) {
        (CaseTag::C1a | CaseTag::C1b | CaseTag::C1c, Payload::Form { mu }) => {
            dim1_form_case(mu, t).and_then(|c| (c == rec.case).then_some(()).ok_or_else(|| invalid("form type")))
        }
        (CaseTag::C1d, Payload::BetaForm { .. }) => dim1_beta_form_check(&rec.payload, t),
        (CaseTag::C2a | CaseTag::C2b | CaseTag::C2c, Payload::Nice { k, nu }) => {
            let nm = check_nice_map(t, k, |x| nu.get(&x).copied().unwrap_or(Sign::Plus))?;
            if nu.keys().copied().collect::<Vec<_>>() != t.difference(k) {
                return Err(invalid("nu must be defined exactly on T minus K"));
            }
            let ok = match rec.case {
                CaseTag::C2a => nm.form_type == FormType::TypeI && nm.sign == Some(Sign::Plus),
                CaseTag::C2b => nm.form_type == FormType::TypeI && nm.sign == Some(Sign::Minus),
                _ => matches!(nm.form_type, FormType::TypeII { .. }),
            };
            ok.then_some(()).ok_or_else(|| invalid("nice map has the wrong type or sign"))
        }
        (CaseTag::C2d, Payload::BetaNice { k, beta, nu }) => {
            let t2 = t.two_torsion();
            if !k.is_subgroup_of(t) || 2 * k.order() != t.order() || *k == t2 || beta.domain() != k {
                return Err(invalid("K must be an index-2 subgroup other than T2 carrying beta"));
            }
            let k2 = k.two_torsion();
            if nu.keys().copied().collect::<Vec<_>>() != t2.difference(&k2) {
                return Err(invalid("nu must be defined exactly on T2 minus K"));
            }
            let nm = check_nice_map(&t2, &k2, |x| nu[&x])?;
            let ok = radical_and_type(beta, None) == (FormType::TypeII { f: f.expect("Z4 present") })
                && nm.beta == beta.restrict(&k2)?
                && nm.mu_g.value(f.expect("Z4 present")).is_minus();
            ok.then_some(()).ok_or_else(|| invalid("beta and nu are incompatible"))
        }
        (CaseTag::C2e, Payload::NuClass { nu }) => {
            let t2 = t.two_torsion();
            if nu.keys().copied().collect::<Vec<_>>() != t.difference(&t2) {
                return Err(invalid("nu must be defined exactly on T minus T2"));
            }
            let nm = check_nice_map(t, &t2, |x| nu[&x])?;
            let ok = nm.form_type == (FormType::TypeII { f: f.expect("Z4 present") }) && nu[&nm.g] == Sign::Plus;
            ok.then_some(()).ok_or_else(|| invalid("nu is not a normalized type II nice map with semineutral f"))
        }
        (outer, Payload::Centralizer { kind, case, inner }) => {
            let want = match outer {
                CaseTag::C3a => (Kind::H, CaseTag::C1b),
                CaseTag::C3b => (Kind::R, CaseTag::C1a),
                CaseTag::C3c => (Kind::C, CaseTag::C1c),
                CaseTag::C3d => (Kind::C, CaseTag::C1d),
                _ => return Err(invalid(format!("case {outer} does not carry a centralizer payload"))),
            };
            if (*kind, *case) != want {
                return Err(invalid("centralizer kind or case does not match"));
            }
            match inner.as_ref() {
                Payload::Form { mu } => (dim1_form_case(mu, t)? == *case)
                    .then_some(())
                    .ok_or_else(|| invalid("centralizer form type")),
                p @ Payload::BetaForm { .. } if *case == CaseTag::C1d => dim1_beta_form_check(p, t),
                _ => Err(invalid("centralizer payload shape")),
            }
        }
        (c, _) => Err(invalid(format!("payload shape does not match case {c} in {g}"))),
    }
}

/// Dim-1 case (1a, 1b or 1c) a form on T belongs to.
fn dim1_form_case(mu: &QuadraticForm, t: &Subgroup) -> Result<CaseTag> {
    if mu.domain() != t {
        return Err(invalid("form lives on another group"));
    }
    let beta = mu.polarize()?;
    match radical_and_type(&beta, Some(mu)) {
        FormType::TypeI => Ok(if arf(mu)? == Sign::Plus { CaseTag::C1a } else { CaseTag::C1b }),
        FormType::TypeII { .. } => Ok(CaseTag::C1c),
        FormType::NotRegular { .. } => Err(invalid("form is not regular")),
    }
}

fn dim1_beta_form_check(p: &Payload, t: &Subgroup) -> Result<()> {
    let Payload::BetaForm { beta, mu } = p else { unreachable!() };
    let t2 = t.two_torsion();
    let f = t.squares().elements().get(1).copied().ok_or_else(|| invalid("support has no order-4 element"))?;
    let ok = beta.domain() == t
        && mu.domain() == &t2
        && radical_and_type(beta, None) == (FormType::TypeII { f })
        && mu.polarize()? == beta.restrict(&t2)?
        && mu.value(f).is_minus();
    ok.then_some(()).ok_or_else(|| invalid("(beta, mu) does not satisfy the 1d conditions"))
}

/// A grading over the record's group whose invariants are the record.
pub fn realize_from_invariants(rec: &ClassificationRecord) -> Result<GradedAlgebra> {
    validate_record(rec)?;
    let a = realize_payload(rec)?;
    if (a.kind(), a.n()) != (rec.kind, rec.n) {
        return Err(Error::Internal(format!(
            "realization is on M_{}({}), record says M_{}({})",
            a.n(),
            a.kind(),
            rec.n,
            rec.kind
        )));
    }
    Ok(a)
}

/// m with support shape of `tag` at m equal to the shape of `t`.
pub fn m_for_support(tag: CaseTag, t: &Subgroup) -> Option<u32> {
    (tag.min_m()..=MAX_RANK_M).find(|&m| tag.support_shape(m).ok() == Some(t.shape()))
}

const MAX_RANK_M: u32 = 12;

/// Largest support order accepted by the enumerations.
pub const MAX_ENUMERATION_ORDER: u32 = 64;

/// Index-2 subgroups of `t`.
pub fn index_two_subgroups(t: &Subgroup) -> Vec<Subgroup> {
    let abs = t.abstract_group();
    let z2 = Group::elementary(1);
    let table = t.abstract_table();
    let r = abs.arity();
    let mut out = Vec::new();
    for mask in 1u32..(1 << r) {
        let images: Vec<Elem> = (0..r).map(|i| (mask >> i) & 1).collect();
        let chi = Hom::new(abs, z2, images).expect("every generator maps into Z2");
        let elems: Vec<Elem> =
            t.elements().iter().zip(&table).filter(|(_, &a)| chi.apply(a) == 0).map(|(&x, _)| x).collect();
        out.push(Subgroup::from_elements(t.parent(), &elems).expect("kernel"));
    }
    out
}

fn record(tag: CaseTag, t: &Subgroup, m: u32, payload: Payload) -> ClassificationRecord {
    ClassificationRecord { case: tag, kind: tag.kind(), n: 1 << m, dim: tag.dim(), support: t.clone(), payload }
}

/// Regular forms on an elementary `t` landing in the given dim-1 case.
fn dim1_forms(tag: CaseTag, t: &Subgroup) -> Result<Vec<QuadraticForm>> {
    let forms = enumerate_quadratic_forms(t, None)?;
    Ok(forms.into_iter().filter(|mu| dim1_form_case(mu, t).ok() == Some(tag)).collect())
}

/// Type II pairs (β on T, μ on T₂) for a support with an order-4 element.
fn dim1_beta_forms(t: &Subgroup) -> Result<Vec<(Bicharacter, QuadraticForm)>> {
    let f = t.squares().elements()[1];
    let t2 = t.two_torsion();
    let mut out = Vec::new();
    for beta in enumerate_bicharacters(t)? {
        if radical_and_type(&beta, None) != (FormType::TypeII { f }) {
            continue;
        }
        let restricted = beta.restrict(&t2)?;
        for mu in enumerate_quadratic_forms(&t2, Some(&restricted))? {
            if mu.value(f).is_minus() {
                out.push((beta.clone(), mu));
            }
        }
    }
    Ok(out)
}

/// ν(g·k) = s·μ(k) on the coset g·K.
fn nu_from(g: Group, at: Elem, s: Sign, mu: &QuadraticForm) -> BTreeMap<Elem, Sign> {
    mu.entries().map(|(k, v)| (g.mul(at, k), s * v)).collect()
}

/// Every valid record of case `tag` with support exactly `t`.
pub fn enumerate_records(tag: CaseTag, t: &Subgroup) -> Result<Vec<ClassificationRecord>> {
    if t.order() > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge(format!("support of order {} exceeds {MAX_ENUMERATION_ORDER}", t.order())));
    }
    if tag == CaseTag::C2f {
        return Err(Error::Deferred("case 2f payloads are not enumerated".into()));
    }
    let Some(m) = m_for_support(tag, t) else { return Ok(Vec::new()) };
    let g = t.parent();
    let mut out = Vec::new();
    match tag {
        CaseTag::C1a | CaseTag::C1b | CaseTag::C1c => {
            for mu in dim1_forms(tag, t)? {
                out.push(record(tag, t, m, Payload::Form { mu }));
            }
        }
        CaseTag::C1d => {
            for (beta, mu) in dim1_beta_forms(t)? {
                out.push(record(tag, t, m, Payload::BetaForm { beta, mu }));
            }
        }
        CaseTag::C2a | CaseTag::C2b | CaseTag::C2c => {
            for k in index_two_subgroups(t) {
                let at = t.difference(&k)[0];
                for mu in enumerate_quadratic_forms(&k, None)? {
                    for s in [Sign::Plus, Sign::Minus] {
                        let nu = nu_from(g, at, s, &mu);
                        let rec = record(tag, t, m, Payload::Nice { k: k.clone(), nu });
                        if validate_record(&rec).is_ok() {
                            out.push(rec);
                        }
                    }
                }
            }
        }
        CaseTag::C2d => {
            let t2 = t.two_torsion();
            for k in index_two_subgroups(t) {
                if k == t2 {
                    continue;
                }
                let k2 = k.two_torsion();
                let at = t2.difference(&k2)[0];
                for (beta, mu) in dim1_beta_forms(&k)? {
                    for s in [Sign::Plus, Sign::Minus] {
                        let nu = nu_from(g, at, s, &mu);
                        let rec = record(tag, t, m, Payload::BetaNice { k: k.clone(), beta: beta.clone(), nu });
                        if validate_record(&rec).is_ok() {
                            out.push(rec);
                        }
                    }
                }
            }
        }
        CaseTag::C2e => {
            let t2 = t.two_torsion();
            let at = t.difference(&t2)[0];
            for mu in enumerate_quadratic_forms(&t2, None)? {
                let rec = record(tag, t, m, Payload::NuClass { nu: nu_from(g, at, Sign::Plus, &mu) });
                if validate_record(&rec).is_ok() {
                    out.push(rec);
                }
            }
        }
        CaseTag::C3a | CaseTag::C3b | CaseTag::C3c | CaseTag::C3d => {
            let (kind, inner_tag) = match tag {
                CaseTag::C3a => (Kind::H, CaseTag::C1b),
                CaseTag::C3b => (Kind::R, CaseTag::C1a),
                CaseTag::C3c => (Kind::C, CaseTag::C1c),
                _ => (Kind::C, CaseTag::C1d),
            };
            for inner in enumerate_records(inner_tag, t)? {
                let payload = Payload::Centralizer { kind, case: inner_tag, inner: Box::new(inner.payload) };
                out.push(record(tag, t, m, payload));
            }
        }
        CaseTag::C2f => unreachable!(),
    }
    Ok(out)
}

/// Cases (other than 2f) on kind `kind` with component dimension `dim`.
pub fn cases_for(kind: Kind, dim: usize) -> Vec<CaseTag> {
    CaseTag::ALL.into_iter().filter(|c| *c != CaseTag::C2f && c.kind() == kind && c.dim() == dim).collect()
}

/// Number of isomorphism classes of division gradings with support `t` on
/// an algebra of kind `kind` with component dimension `dim` (case 2f not
/// counted), by enumerating valid payloads.
pub fn count_isomorphism_classes(kind: Kind, dim: usize, t: &Subgroup) -> Result<usize> {
    let mut total = 0;
    for tag in cases_for(kind, dim) {
        total += enumerate_records(tag, t)?.len();
    }
    Ok(total)
}

/// Candidate payloads for a case on `t`, with none of the case conditions
/// imposed (only their shapes).
fn candidate_payloads(tag: CaseTag, t: &Subgroup) -> Result<Vec<Payload>> {
    let g = t.parent();
    let mut out = Vec::new();
    match tag {
        CaseTag::C1a | CaseTag::C1b | CaseTag::C1c => {
            if t.is_elementary() {
                out.extend(enumerate_quadratic_forms(t, None)?.into_iter().map(|mu| Payload::Form { mu }));
            }
        }
        CaseTag::C1d => {
            if !t.is_elementary() {
                let t2 = t.two_torsion();
                for beta in enumerate_bicharacters(t)? {
                    let Ok(restricted) = beta.restrict(&t2) else { continue };
                    for mu in enumerate_quadratic_forms(&t2, Some(&restricted))? {
                        out.push(Payload::BetaForm { beta: beta.clone(), mu });
                    }
                }
            }
        }
        CaseTag::C2a | CaseTag::C2b | CaseTag::C2c => {
            for k in index_two_subgroups(t).into_iter().filter(Subgroup::is_elementary) {
                let at = t.difference(&k)[0];
                for mu in enumerate_quadratic_forms(&k, None)? {
                    for s in [Sign::Plus, Sign::Minus] {
                        out.push(Payload::Nice { k: k.clone(), nu: nu_from(g, at, s, &mu) });
                    }
                }
            }
        }
        CaseTag::C2d => {
            if !t.is_elementary() {
                let t2 = t.two_torsion();
                for k in index_two_subgroups(t).into_iter().filter(|k| !k.is_elementary()) {
                    let k2 = k.two_torsion();
                    let at = t2.difference(&k2)[0];
                    for beta in enumerate_bicharacters(&k)? {
                        let restricted = beta.restrict(&k2)?;
                        for mu in enumerate_quadratic_forms(&k2, Some(&restricted))? {
                            for s in [Sign::Plus, Sign::Minus] {
                                let nu = nu_from(g, at, s, &mu);
                                out.push(Payload::BetaNice { k: k.clone(), beta: beta.clone(), nu });
                            }
                        }
                    }
                }
            }
        }
        CaseTag::C2e => {
            if !t.is_elementary() {
                let t2 = t.two_torsion();
                let at = t.difference(&t2)[0];
                for mu in enumerate_quadratic_forms(&t2, None)? {
                    out.push(Payload::NuClass { nu: nu_from(g, at, Sign::Plus, &mu) });
                }
            }
        }
        CaseTag::C3a | CaseTag::C3b | CaseTag::C3c | CaseTag::C3d => {
            let (kind, inner_tag) = match tag {
                CaseTag::C3a => (Kind::H, CaseTag::C1b),
                CaseTag::C3b => (Kind::R, CaseTag::C1a),
                CaseTag::C3c => (Kind::C, CaseTag::C1c),
                _ => (Kind::C, CaseTag::C1d),
            };
            for inner in candidate_payloads(inner_tag, t)? {
                out.push(Payload::Centralizer { kind, case: inner_tag, inner: Box::new(inner) });
            }
        }
        CaseTag::C2f => {}
    }
    Ok(out)
}

/// The same count by a second route: realize every candidate payload
/// without checking its conditions, classify the resulting matrices, and
/// count the distinct records of the requested kind and dimension.
pub fn count_by_realization(kind: Kind, dim: usize, t: &Subgroup) -> Result<usize> {
    if t.order() > MAX_ENUMERATION_ORDER {
        return Err(Error::TooLarge(format!("support of order {} exceeds {MAX_ENUMERATION_ORDER}", t.order())));
    }
    let mut candidates = Vec::new();
    for tag in cases_for(kind, dim) {
        // the tag only fixes the payload shape; n is read off the realization
        for payload in candidate_payloads(tag, t)? {
            candidates.push(ClassificationRecord {
                case: tag,
                kind,
                n: 0,
                dim,
                support: t.clone(),
                payload,
            });
        }
    }
    let found = par::map(&candidates, |cand| -> Option<ClassificationRecord> {
        let a = realize_payload(cand).ok()?;
        // the record's kind is the algebra's; skip classifying other algebras
        if a.kind() != kind || a.component_dim() != Some(dim) {
            return None;
        }
        let rec = classify(&a).ok()?;
        (rec.kind == kind && rec.dim == dim && rec.support == *t).then_some(rec)
    });
    let distinct: HashSet<ClassificationRecord> = found.into_iter().flatten().collect();
    Ok(distinct.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::elementary;

    #[test]
    fn canonical_entries_have_claimed_shapes() {
        for tag in CaseTag::ALL.into_iter().filter(|t| *t != CaseTag::C2f) {
            for m in tag.min_m()..=tag.min_m() + 1 {
                let a = canonical_representative(tag, m, None).unwrap();
                assert_eq!(a.n(), 1 << m, "{tag} m={m}");
                assert_eq!(a.kind(), tag.kind(), "{tag} m={m}");
                let rec = classify(&a).unwrap();
                assert_eq!(rec.case, tag, "{tag} m={m}");
                assert_eq!(rec.support.shape(), tag.support_shape(m).unwrap());
            }
        }
    }

    #[test]
    fn canonical_rejects_small_m_and_2f() {
        assert!(canonical_representative(CaseTag::C2d, 1, None).is_err());
        assert!(matches!(canonical_representative(CaseTag::C2f, 1, None), Err(Error::Deferred(_))));
    }

    #[test]
    fn canonical_into_larger_group() {
        let g = Group::new(3, 1).unwrap();
        let a = canonical_representative(CaseTag::C2e, 1, Some(g)).unwrap();
        assert_eq!(a.group(), g);
        assert_eq!(classify(&a).unwrap().case, CaseTag::C2e);
    }

    #[test]
    fn counts_on_z2_squared() {
        let t = elementary(2);
        assert_eq!(count_isomorphism_classes(Kind::R, 1, &t).unwrap(), 3);
        assert_eq!(count_isomorphism_classes(Kind::H, 1, &t).unwrap(), 1);
        assert_eq!(count_by_realization(Kind::R, 1, &t).unwrap(), 3);
        assert_eq!(count_by_realization(Kind::H, 1, &t).unwrap(), 1);
        let triv = elementary(0);
        assert_eq!(count_isomorphism_classes(Kind::R, 1, &triv).unwrap(), 1);
    }

    #[test]
    fn small_round_trips() {
        let cases = [
            (CaseTag::C1a, elementary(2)),
            (CaseTag::C1b, elementary(2)),
            (CaseTag::C1c, elementary(1)),
            (CaseTag::C1d, Subgroup::full(Group::new(1, 1).unwrap())),
            (CaseTag::C2a, elementary(1)),
            (CaseTag::C2b, elementary(1)),
            (CaseTag::C2c, elementary(2)),
            (CaseTag::C2e, Subgroup::full(Group::new(0, 1).unwrap())),
            (CaseTag::C3a, elementary(2)),
            (CaseTag::C3b, elementary(0)),
            (CaseTag::C3c, elementary(1)),
        ];
        for (tag, t) in cases {
            let recs = enumerate_records(tag, &t).unwrap();
            assert!(!recs.is_empty(), "{tag}");
            for rec in recs {
                let a = realize_from_invariants(&rec).unwrap();
                assert_eq!(classify(&a).unwrap(), rec, "{tag}");
            }
        }
    }
}
