//! {±1}-valued forms on finite abelian 2-groups: alternating bicharacters,
//! quadratic forms, radicals and types, symplectic bases, the Arf invariant
//! and nice maps.
//!
//! Every group here is a [`Subgroup`] of some parent group, so values are
//! keyed by parent elements. A bicharacter is stored as a symmetric GF(2)
//! matrix on the canonical basis of T/T².

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, Neg};

use crate::error::{Error, Result};
use crate::group::{Elem, Group, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_minus(minus: bool) -> Sign {
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" | "+1" => Some(Sign::Plus),
            "-" | "-1" => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn product(signs: impl IntoIterator<Item = Sign>) -> Sign {
        signs.into_iter().fold(Sign::Plus, |a, b| a * b)
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_minus(self.is_minus() != rhs.is_minus())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        Sign::from_minus(!self.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Coordinates modulo 2 on the canonical basis, one bitmask per element.
/// Basis element i sits at bit `r - 1 - i`.
fn mod2_table(dom: &Subgroup) -> Vec<u32> {
    let abs = dom.abstract_group();
    let c = u32::from(abs.has_z4());
    dom.abstract_table()
        .into_iter()
        .map(|a| ((a >> (2 * c)) << c) | (a & c))
        .collect()
}

fn parity(x: u32) -> bool {
    x.count_ones() % 2 == 1
}

/// Alternating bicharacter T × T → {±1}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bicharacter {
    dom: Subgroup,
    rank: usize,
    gram: Vec<u32>,
    bits: Vec<u32>,
}

impl Bicharacter {
    fn with_gram(dom: Subgroup, gram: Vec<u32>) -> Bicharacter {
        let rank = dom.basis().len();
        let bits = mod2_table(&dom);
        Bicharacter { dom, rank, gram, bits }
    }

    pub fn trivial(dom: Subgroup) -> Bicharacter {
        let r = dom.basis().len();
        Bicharacter::with_gram(dom, vec![0; r])
    }

    /// Validates a full table given as a function and stores it.
    pub fn from_fn(dom: Subgroup, f: impl Fn(Elem, Elem) -> Sign) -> Result<Bicharacter> {
        let parent = dom.parent();
        let basis = dom.basis();
        let r = basis.len();
        for &t in dom.elements() {
            if f(t, t).is_minus() {
                return Err(Error::NotBicharacter(format!(
                    "beta{0}{0} = -1, not alternating",
                    parent.format_elem(t)
                )));
            }
        }
        let gram: Vec<u32> = (0..r)
            .map(|i| {
                (0..r)
                    .filter(|&j| f(basis[i], basis[j]).is_minus())
                    .fold(0, |m, j| m | 1 << (r - 1 - j))
            })
            .collect();
        let beta = Bicharacter::with_gram(dom, gram);
        for &x in beta.dom.elements() {
            for &y in beta.dom.elements() {
                if f(x, y) != beta.value(x, y) {
                    return Err(Error::NotBicharacter(format!(
                        "not multiplicative at ({}, {})",
                        parent.format_elem(x),
                        parent.format_elem(y)
                    )));
                }
            }
        }
        Ok(beta)
    }

    /// Builds from a GF(2) matrix on the canonical basis (row i as a bitmask,
    /// basis element j at bit `r - 1 - j`).
    pub fn from_gram(dom: Subgroup, gram: Vec<u32>) -> Result<Bicharacter> {
        let r = dom.basis().len();
        if gram.len() != r {
            return Err(Error::NotBicharacter(format!("expected {r} rows")));
        }
        for i in 0..r {
            let bit_i = 1 << (r - 1 - i);
            if gram[i] & bit_i != 0 {
                return Err(Error::NotBicharacter("nonzero diagonal".into()));
            }
            for j in 0..r {
                let bit_j = 1 << (r - 1 - j);
                if (gram[i] & bit_j != 0) != (gram[j] & bit_i != 0) {
                    return Err(Error::NotBicharacter("not symmetric".into()));
                }
            }
        }
        Ok(Bicharacter::with_gram(dom, gram))
    }

    pub fn domain(&self) -> &Subgroup {
        &self.dom
    }

    pub fn gram(&self) -> &[u32] {
        &self.gram
    }

    fn bits_of(&self, x: Elem) -> u32 {
        let pos = self.dom.position(x).unwrap_or_else(|| {
            panic!("{} outside the bicharacter's domain", self.dom.parent().format_elem(x))
        });
        self.bits[pos]
    }

    pub fn value(&self, x: Elem, y: Elem) -> Sign {
        let (bx, by) = (self.bits_of(x), self.bits_of(y));
        let mut acc = false;
        for i in 0..self.rank {
            if bx & (1 << (self.rank - 1 - i)) != 0 {
                acc ^= parity(self.gram[i] & by);
            }
        }
        Sign::from_minus(acc)
    }

    pub fn is_trivial(&self) -> bool {
        self.gram.iter().all(|&r| r == 0)
    }

    /// rad(β): elements pairing trivially with all of T.
    pub fn radical(&self) -> Subgroup {
        let basis = self.dom.basis();
        let elems: Vec<Elem> = self
            .dom
            .elements()
            .iter()
            .copied()
            .filter(|&t| basis.iter().all(|&g| !self.value(g, t).is_minus()))
            .collect();
        Subgroup::from_elements(self.dom.parent(), &elems).expect("radical is a subgroup")
    }

    /// Restriction to a subgroup of the domain.
    pub fn restrict(&self, sub: &Subgroup) -> Result<Bicharacter> {
        if !sub.is_subgroup_of(&self.dom) {
            return Err(Error::Precondition("restriction to a non-subgroup".into()));
        }
        Bicharacter::from_fn(sub.clone(), |x, y| self.value(x, y))
    }

    /// Pairs (u, v) with u < v and β(u, v) = −1, as parent elements.
    pub fn minus_pairs(&self) -> Vec<(Elem, Elem)> {
        let e = self.dom.elements();
        let mut out = Vec::new();
        for (i, &u) in e.iter().enumerate() {
            for &v in &e[i + 1..] {
                if self.value(u, v).is_minus() {
                    out.push((u, v));
                }
            }
        }
        out
    }
}

/// Quadratic form μ: T₂ → {±1} on an elementary abelian group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    dom: Subgroup,
    values: Vec<Sign>,
}

impl QuadraticForm {
    /// Wraps a value table; checks the domain is elementary and μ(e) = +1.
    /// Quadraticity is checked by [`QuadraticForm::polarize`].
    pub fn from_fn(dom: Subgroup, f: impl Fn(Elem) -> Sign) -> Result<QuadraticForm> {
        if !dom.is_elementary() {
            return Err(Error::NotQuadratic("domain is not elementary abelian".into()));
        }
        let values: Vec<Sign> = dom.elements().iter().map(|&x| f(x)).collect();
        if values[0].is_minus() {
            return Err(Error::NotQuadratic("mu(e) = -1".into()));
        }
        Ok(QuadraticForm { dom, values })
    }

    pub fn trivial(dom: Subgroup) -> Result<QuadraticForm> {
        QuadraticForm::from_fn(dom, |_| Sign::Plus)
    }

    pub fn domain(&self) -> &Subgroup {
        &self.dom
    }

    pub fn value(&self, x: Elem) -> Sign {
        let pos = self.dom.position(x).unwrap_or_else(|| {
            panic!("{} outside the form's domain", self.dom.parent().format_elem(x))
        });
        self.values[pos]
    }

    /// (element, value) pairs in element order.
    pub fn entries(&self) -> impl Iterator<Item = (Elem, Sign)> + '_ {
        self.dom.elements().iter().copied().zip(self.values.iter().copied())
    }

    /// β(u, v) = μ(uv) μ(u)⁻¹ μ(v)⁻¹; errors if μ is not quadratic.
    pub fn polarize(&self) -> Result<Bicharacter> {
        let g = self.dom.parent();
        Bicharacter::from_fn(self.dom.clone(), |u, v| {
            self.value(g.mul(u, v)) * self.value(u) * self.value(v)
        })
        .map_err(|e| match e {
            Error::NotBicharacter(m) => Error::NotQuadratic(format!("polarization {m}")),
            other => other,
        })
    }

    /// Majority value, defined for type I forms (no ties occur).
    pub fn majority(&self) -> Result<Sign> {
        let minus = self.values.iter().filter(|s| s.is_minus()).count();
        let plus = self.values.len() - minus;
        match plus.cmp(&minus) {
            std::cmp::Ordering::Greater => Ok(Sign::Plus),
            std::cmp::Ordering::Less => Ok(Sign::Minus),
            std::cmp::Ordering::Equal => Err(Error::WrongType("values are balanced".into())),
        }
    }

    pub fn count(&self, s: Sign) -> usize {
        self.values.iter().filter(|&&v| v == s).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormType {
    TypeI,
    TypeII { f: Elem },
    NotRegular { radical_order: u32 },
}

impl FormType {
    pub fn is_regular(&self) -> bool {
        !matches!(self, FormType::NotRegular { .. })
    }
}

/// Classifies β (and optionally μ) as type I, type II or not regular.
pub fn radical_and_type(beta: &Bicharacter, mu: Option<&QuadraticForm>) -> FormType {
    let rad = beta.radical();
    match rad.order() {
        1 => FormType::TypeI,
        2 => {
            let f = rad.elements()[1];
            match mu {
                Some(mu) if !mu.domain().contains(f) || !mu.value(f).is_minus() => {
                    FormType::NotRegular { radical_order: 2 }
                }
                _ => FormType::TypeII { f },
            }
        }
        n => FormType::NotRegular { radical_order: n },
    }
}

/// Pairs (a_i, b_i) with β(a_i, b_i) = −1 and all other pairings trivial,
/// plus the semineutral element f for type II.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymplecticFamily {
    pub pairs: Vec<(Elem, Elem)>,
    pub f: Option<Elem>,
}

impl SymplecticFamily {
    pub fn members(&self) -> Vec<Elem> {
        self.pairs.iter().flat_map(|&(a, b)| [a, b]).collect()
    }

    /// Direct check of the defining pairings.
    pub fn is_symplectic_for(&self, beta: &Bicharacter) -> bool {
        let m = self.members();
        for (i, &x) in m.iter().enumerate() {
            for (j, &y) in m.iter().enumerate() {
                let expect_minus = i != j && i / 2 == j / 2;
                if beta.value(x, y).is_minus() != expect_minus {
                    return false;
                }
            }
        }
        true
    }
}

/// Symplectic basis of a regular bicharacter.
///
/// Repeatedly takes the first hyperbolic pair in lexicographic order among
/// those whose larger element order is smallest (then smaller element
/// order), and passes to the orthogonal complement of the pair. In the Z4
/// case order-2 pairs exist until the last step, whose pair is (order 2,
/// order 4) with b² = f.
pub fn symplectic_basis(beta: &Bicharacter) -> Result<SymplecticFamily> {
    let ty = radical_and_type(beta, None);
    if !ty.is_regular() {
        return Err(Error::NotRegular(format!("radical of order {}", beta.radical().order())));
    }
    let g = beta.domain().parent();
    let mut w: Vec<Elem> = beta.domain().elements().to_vec();
    let mut pairs = Vec::new();
    loop {
        let mut best: Option<((u32, u32), Elem, Elem)> = None;
        for (i, &u) in w.iter().enumerate() {
            for &v in &w[i + 1..] {
                if !beta.value(u, v).is_minus() {
                    continue;
                }
                let (ou, ov) = (g.elem_order(u), g.elem_order(v));
                let key = (ou.max(ov), ou.min(ov));
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, u, v));
                }
            }
        }
        let Some((_, u, v)) = best else { break };
        let (a, b) = if g.elem_order(u) <= g.elem_order(v) { (u, v) } else { (v, u) };
        pairs.push((a, b));
        w.retain(|&x| !beta.value(a, x).is_minus() && !beta.value(b, x).is_minus());
    }
    let f = match w.len() {
        1 => None,
        2 => Some(w[1]),
        n => return Err(Error::Internal(format!("symplectic reduction left {n} elements"))),
    };
    let fam = SymplecticFamily { pairs, f };
    if !fam.is_symplectic_for(beta) {
        return Err(Error::Internal("constructed family is not symplectic".into()));
    }
    Ok(fam)
}

/// m(s, t) = −1 iff s = t = −1.
fn gf2_product(s: Sign, t: Sign) -> Sign {
    Sign::from_minus(s.is_minus() && t.is_minus())
}

/// Product formula for the Arf invariant over a given symplectic basis.
pub fn arf_product(mu: &QuadraticForm, pairs: &[(Elem, Elem)]) -> Sign {
    Sign::product(pairs.iter().map(|&(a, b)| gf2_product(mu.value(a), mu.value(b))))
}

/// Arf invariant of a type I form, by product formula and by majority,
/// cross-checked.
pub fn arf(mu: &QuadraticForm) -> Result<Sign> {
    let beta = mu.polarize()?;
    match radical_and_type(&beta, Some(mu)) {
        FormType::TypeI => {}
        other => return Err(Error::WrongType(format!("Arf invariant needs type I, got {other:?}"))),
    }
    let fam = symplectic_basis(&beta)?;
    let by_product = arf_product(mu, &fam.pairs);
    let by_majority = mu.majority()?;
    if by_product != by_majority {
        return Err(Error::Internal("Arf product formula disagrees with majority".into()));
    }
    Ok(by_product)
}

/// Result of analysing a nice map.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NiceMap {
    pub t: Subgroup,
    pub k: Subgroup,
    /// ν on T∖K, keyed by parent element.
    pub nu: BTreeMap<Elem, Sign>,
    /// Lexicographically least element of T∖K.
    pub g: Elem,
    /// μ_g(k) = ν(gk) ν(g)⁻¹ on K.
    pub mu_g: QuadraticForm,
    pub beta: Bicharacter,
    pub form_type: FormType,
    /// ν(g)·Arf(μ_g) for type I.
    pub sign: Option<Sign>,
}

/// Validates ν on T∖K and computes its type and sign.
pub fn check_nice_map(t: &Subgroup, k: &Subgroup, nu: impl Fn(Elem) -> Sign) -> Result<NiceMap> {
    if !k.is_subgroup_of(t) || 2 * k.order() != t.order() {
        return Err(Error::Precondition("K must be an index-2 subgroup of T".into()));
    }
    if !k.is_elementary() {
        return Err(Error::Precondition("K must be elementary abelian".into()));
    }
    let grp = t.parent();
    let outside = t.difference(k);
    let nu: BTreeMap<Elem, Sign> = outside.iter().map(|&x| (x, nu(x))).collect();
    let g = outside[0];
    let mu_at = |h: Elem| QuadraticForm::from_fn(k.clone(), |x| nu[&grp.mul(h, x)] * nu[&h]);
    let mu_g = mu_at(g)?;
    let beta = mu_g.polarize()?;
    for &h in &outside[1..] {
        let mu_h = mu_at(h)?;
        if mu_h.polarize()? != beta {
            return Err(Error::Internal("nice map with inconsistent polarizations".into()));
        }
    }
    let form_type = radical_and_type(&beta, Some(&mu_g));
    let sign = match form_type {
        FormType::TypeI => Some(nu[&g] * arf(&mu_g)?),
        _ => None,
    };
    Ok(NiceMap { t: t.clone(), k: k.clone(), nu, g, mu_g, beta, form_type, sign })
}

/// Largest elementary group accepted by [`enumerate_quadratic_forms`] with a
/// fixed bicharacter, and without one.
pub const MAX_FILTERED_RANK: usize = 10;
pub const MAX_UNFILTERED_RANK: usize = 5;

/// All alternating bicharacters on `dom`, in order of their GF(2) matrices.
pub fn enumerate_bicharacters(dom: &Subgroup) -> Result<Vec<Bicharacter>> {
    let r = dom.basis().len();
    if r > MAX_UNFILTERED_RANK {
        return Err(Error::TooLarge(format!("rank {r} exceeds {MAX_UNFILTERED_RANK}")));
    }
    let slots: Vec<(usize, usize)> = (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect();
    let mut out = Vec::with_capacity(1 << slots.len());
    for mask in 0u32..(1 << slots.len()) {
        let mut gram = vec![0u32; r];
        for (s, &(i, j)) in slots.iter().enumerate() {
            if mask & (1 << s) != 0 {
                gram[i] |= 1 << (r - 1 - j);
                gram[j] |= 1 << (r - 1 - i);
            }
        }
        out.push(Bicharacter::from_gram(dom.clone(), gram)?);
    }
    Ok(out)
}

/// Quadratic forms with polarization β whose values on the canonical basis
/// are given by `basis_minus` (bit i set means μ(g_i) = −1).
pub fn form_from_basis(beta: &Bicharacter, basis_minus: u32) -> Result<QuadraticForm> {
    let dom = beta.domain().clone();
    if !dom.is_elementary() {
        return Err(Error::NotQuadratic("domain is not elementary abelian".into()));
    }
    let basis = dom.basis();
    let r = basis.len();
    let bits = mod2_table(&dom);
    let values: Vec<Sign> = bits
        .iter()
        .map(|&c| {
            let mut minus = false;
            for i in 0..r {
                if c & (1 << (r - 1 - i)) == 0 {
                    continue;
                }
                minus ^= basis_minus & (1 << i) != 0;
                for j in i + 1..r {
                    if c & (1 << (r - 1 - j)) != 0 {
                        minus ^= beta.value(basis[i], basis[j]).is_minus();
                    }
                }
            }
            Sign::from_minus(minus)
        })
        .collect();
    Ok(QuadraticForm { dom, values })
}

/// All quadratic forms on an elementary abelian `t`, optionally only those
/// with polarization `beta`.
pub fn enumerate_quadratic_forms(t: &Subgroup, beta: Option<&Bicharacter>) -> Result<Vec<QuadraticForm>> {
    if !t.is_elementary() {
        return Err(Error::Precondition("quadratic forms need an elementary abelian group".into()));
    }
    let r = t.basis().len();
    let betas = match beta {
        Some(b) => {
            if b.domain() != t {
                return Err(Error::Precondition("bicharacter lives on another group".into()));
            }
            if r > MAX_FILTERED_RANK {
                return Err(Error::TooLarge(format!("rank {r} exceeds {MAX_FILTERED_RANK}")));
            }
            vec![b.clone()]
        }
        None => enumerate_bicharacters(t)?,
    };
    let mut out = Vec::new();
    for b in &betas {
        for s in 0..(1u32 << r) {
            out.push(form_from_basis(b, s)?);
        }
    }
    Ok(out)
}

/// Convenience: the full elementary group Z2^r as a subgroup of itself.
pub fn elementary(r: u32) -> Subgroup {
    Subgroup::full(Group::elementary(r))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2sq() -> (Subgroup, Elem, Elem, Elem) {
        let t = elementary(2);
        // a = (1,0), b = (0,1), c = (1,1)
        (t, 2, 1, 3)
    }

    fn form(t: &Subgroup, minus: &[Elem]) -> QuadraticForm {
        QuadraticForm::from_fn(t.clone(), |x| Sign::from_minus(minus.contains(&x))).unwrap()
    }

    #[test]
    fn nontrivial_bicharacter_on_z2_squared() {
        let (t, a, b, c) = z2sq();
        let minus = [(a, b), (b, a), (a, c), (c, a), (b, c), (c, b)];
        let beta = Bicharacter::from_fn(t.clone(), |x, y| Sign::from_minus(minus.contains(&(x, y)))).unwrap();
        assert!(!beta.is_trivial());
        assert_eq!(radical_and_type(&beta, None), FormType::TypeI);
        assert!(Bicharacter::from_fn(t.clone(), |x, y| Sign::from_minus(x == a && y == a)).is_err());
        assert!(Bicharacter::trivial(t).is_trivial());
    }

    #[test]
    fn polarization_and_arf_of_the_two_z2_squared_forms() {
        let (t, a, b, c) = z2sq();
        let h = form(&t, &[a, b, c]);
        let r = form(&t, &[c]);
        assert_eq!(h.polarize().unwrap(), r.polarize().unwrap());
        assert_eq!(arf(&h).unwrap(), Sign::Minus);
        assert_eq!(arf(&r).unwrap(), Sign::Plus);
        assert!(form(&t, &[]).polarize().unwrap().is_trivial());
    }

    #[test]
    fn non_quadratic_table_is_rejected() {
        let t = elementary(3);
        let mu = form(&t, &[7]);
        assert!(matches!(mu.polarize(), Err(Error::NotQuadratic(_))));
    }

    #[test]
    fn type_two_on_z2() {
        let t = elementary(1);
        let mu = form(&t, &[1]);
        let beta = mu.polarize().unwrap();
        assert_eq!(radical_and_type(&beta, Some(&mu)), FormType::TypeII { f: 1 });
        let plus = form(&t, &[]);
        assert!(!radical_and_type(&beta, Some(&plus)).is_regular());
        assert!(!radical_and_type(&Bicharacter::trivial(elementary(2)), None).is_regular());
    }

    #[test]
    fn symplectic_basis_for_z4_case() {
        // Z2 × Z4 with β(a, b) = −1 on the generators a = (1,0), b = (0,1).
        let t = Subgroup::full(Group::new(1, 1).unwrap());
        let beta = Bicharacter::from_gram(t.clone(), vec![0b01, 0b10]).unwrap();
        let fam = symplectic_basis(&beta).unwrap();
        let g = t.parent();
        let (a, b) = fam.pairs[0];
        assert_eq!(g.elem_order(a), 2);
        assert_eq!(g.elem_order(b), 4);
        assert_eq!(fam.f, Some(g.square(b)));
        assert_eq!(fam.f, g.distinguished());
    }

    #[test]
    fn empty_family_and_empty_product() {
        let t = elementary(0);
        let mu = QuadraticForm::trivial(t.clone()).unwrap();
        let fam = symplectic_basis(&mu.polarize().unwrap()).unwrap();
        assert!(fam.pairs.is_empty());
        assert_eq!(arf(&mu).unwrap(), Sign::Plus);
    }

    #[test]
    fn enumeration_counts() {
        let (t, a, b, _) = z2sq();
        let beta = form(&t, &[a, b, 3]).polarize().unwrap();
        assert_eq!(enumerate_quadratic_forms(&t, Some(&beta)).unwrap().len(), 4);
        assert_eq!(enumerate_quadratic_forms(&elementary(1), None).unwrap().len(), 2);
        assert!(enumerate_quadratic_forms(&elementary(6), None).is_err());
    }

    #[test]
    fn nice_maps_on_z2() {
        let t = elementary(1);
        let k = Subgroup::trivial(t.parent());
        let pos = check_nice_map(&t, &k, |_| Sign::Plus).unwrap();
        assert_eq!(pos.form_type, FormType::TypeI);
        assert_eq!(pos.sign, Some(Sign::Plus));
        let neg = check_nice_map(&t, &k, |_| Sign::Minus).unwrap();
        assert_eq!(neg.sign, Some(Sign::Minus));
    }
}
