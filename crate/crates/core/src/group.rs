//! Finite abelian groups Z2^a × Z4^b with b ≤ 1.
//!
//! Elements are encoded as integers: the Z2 exponents form the high bits
//! (first coordinate most significant) and the Z4 exponent, if present, the
//! two low bits. Numeric order of the encoding is the lexicographic order of
//! exponent tuples, which every deterministic choice in this crate relies on.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// Encoded group element; see the module docs.
pub type Elem = u32;

/// Largest number of Z2 factors accepted anywhere.
pub const MAX_RANK: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Group {
    a: u32,
    b: u32,
}

impl Group {
    pub fn new(a: u32, b: u32) -> Result<Group> {
        if b > 1 {
            return Err(Error::BadGroup(format!("at most one Z4 factor allowed, got {b}")));
        }
        if a > MAX_RANK {
            return Err(Error::BadGroup(format!("Z2^{a} is too large")));
        }
        Ok(Group { a, b })
    }

    pub fn elementary(a: u32) -> Group {
        Group::new(a, 0).expect("elementary group")
    }

    pub fn trivial() -> Group {
        Group { a: 0, b: 0 }
    }

    /// Number of Z2 factors.
    pub fn z2_rank(&self) -> u32 {
        self.a
    }

    pub fn has_z4(&self) -> bool {
        self.b == 1
    }

    /// Number of exponent coordinates.
    pub fn arity(&self) -> usize {
        (self.a + self.b) as usize
    }

    pub fn order(&self) -> u32 {
        1 << (self.a + 2 * self.b)
    }

    fn y_bits(&self) -> u32 {
        2 * self.b
    }

    fn y_mask(&self) -> u32 {
        (1 << self.y_bits()) - 1
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn contains(&self, x: Elem) -> bool {
        x < self.order()
    }

    pub fn check(&self, x: Elem) -> Result<Elem> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(Error::NotInGroup(format!("#{x} of {self}")))
        }
    }

    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        let m = self.y_mask();
        ((x ^ y) & !m) | ((x + y) & m)
    }

    pub fn inv(&self, x: Elem) -> Elem {
        let m = self.y_mask();
        (x & !m) | (x.wrapping_neg() & m)
    }

    pub fn pow(&self, x: Elem, k: u32) -> Elem {
        (0..k % 4).fold(0, |acc, _| self.mul(acc, x))
    }

    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    /// Order of an element: 1, 2 or 4.
    pub fn elem_order(&self, x: Elem) -> u32 {
        if x == 0 {
            1
        } else if self.square(x) == 0 {
            2
        } else {
            4
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order()
    }

    pub fn exps(&self, x: Elem) -> Vec<u32> {
        let z2 = x >> self.y_bits();
        let mut out: Vec<u32> = (0..self.a).map(|i| (z2 >> (self.a - 1 - i)) & 1).collect();
        if self.b == 1 {
            out.push(x & 3);
        }
        out
    }

    pub fn from_exps(&self, exps: &[u32]) -> Result<Elem> {
        if exps.len() != self.arity() {
            return Err(Error::NotInGroup(format!(
                "{} coordinates given, {self} needs {}",
                exps.len(),
                self.arity()
            )));
        }
        let mut z2 = 0;
        for &e in &exps[..self.a as usize] {
            if e > 1 {
                return Err(Error::NotInGroup(format!("Z2 exponent {e} out of range")));
            }
            z2 = (z2 << 1) | e;
        }
        let y = if self.b == 1 {
            let e = exps[self.a as usize];
            if e > 3 {
                return Err(Error::NotInGroup(format!("Z4 exponent {e} out of range")));
            }
            e
        } else {
            0
        };
        Ok((z2 << self.y_bits()) | y)
    }

    /// The i-th standard generator: Z2 generators first, then the Z4 one.
    pub fn generator(&self, i: usize) -> Elem {
        let mut e = vec![0; self.arity()];
        e[i] = 1;
        self.from_exps(&e).expect("generator index in range")
    }

    pub fn generators(&self) -> Vec<Elem> {
        (0..self.arity()).map(|i| self.generator(i)).collect()
    }

    /// The subgroup T² of squares.
    pub fn squares(&self) -> Vec<Elem> {
        let s: BTreeSet<Elem> = self.elements().map(|x| self.square(x)).collect();
        s.into_iter().collect()
    }

    /// The subgroup T₂ of elements of order dividing 2.
    pub fn two_torsion(&self) -> Vec<Elem> {
        self.elements().filter(|&x| self.square(x) == 0).collect()
    }

    /// The generator f of T² when T has a Z4 factor.
    pub fn distinguished(&self) -> Option<Elem> {
        self.has_z4().then_some(2)
    }

    pub fn format_elem(&self, x: Elem) -> String {
        let parts: Vec<String> = self.exps(x).iter().map(u32::to_string).collect();
        format!("({})", parts.join(","))
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let t = text.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::NotInGroup(format!("`{t}` is not a parenthesized tuple")))?;
        let exps = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse::<u32>()
                        .map_err(|_| Error::NotInGroup(format!("bad exponent `{}`", p.trim())))
                })
                .collect::<Result<Vec<_>>>()?
        };
        self.from_exps(&exps)
    }

    pub fn parse(text: &str) -> Result<Group> {
        let mut a = 0;
        let mut b = 0;
        for part in text.split('x').map(str::trim) {
            if part == "Z4" {
                b += 1;
            } else if part == "Z2" {
                a += 1;
            } else if let Some(k) = part.strip_prefix("Z2^") {
                a += k.parse::<u32>().map_err(|_| Error::BadGroup(format!("bad exponent in `{part}`")))?;
            } else {
                return Err(Error::BadGroup(format!("unrecognized factor `{part}`")));
            }
        }
        Group::new(a, b)
    }

    /// Direct product; coordinates are G's Z2, then H's Z2, then the Z4 one.
    pub fn product(g: &Group, h: &Group) -> Result<Group> {
        Group::new(g.a + h.a, g.b + h.b)
    }

    /// Encodes the pair (x, y) ∈ G × H in `Group::product(g, h)`.
    pub fn pair(g: &Group, h: &Group, x: Elem, y: Elem) -> Elem {
        let (ex, ey) = (g.exps(x), h.exps(y));
        let mut e: Vec<u32> = ex[..g.a as usize].to_vec();
        e.extend_from_slice(&ey[..h.a as usize]);
        if g.b == 1 {
            e.push(ex[g.a as usize]);
        }
        if h.b == 1 {
            e.push(ey[h.a as usize]);
        }
        Group::product(g, h).expect("product exists").from_exps(&e).expect("pair in product")
    }

    /// Inverse of [`Group::pair`].
    pub fn split(g: &Group, h: &Group, z: Elem) -> (Elem, Elem) {
        let p = Group::product(g, h).expect("product exists");
        let e = p.exps(z);
        let (ga, ha) = (g.a as usize, h.a as usize);
        let mut ex = e[..ga].to_vec();
        let mut ey = e[ga..ga + ha].to_vec();
        if g.b == 1 {
            ex.push(e[ga + ha]);
        }
        if h.b == 1 {
            ey.push(e[ga + ha]);
        }
        (g.from_exps(&ex).expect("left"), h.from_exps(&ey).expect("right"))
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a, self.b) {
            (0, 1) => f.write_str("Z4"),
            (a, 0) => write!(f, "Z2^{a}"),
            (a, _) => write!(f, "Z2^{a} x Z4"),
        }
    }
}

/// A subgroup of a parent group with a canonical basis and coordinates.
///
/// The canonical basis is the lexicographically least element of order 4
/// (if any), followed by a greedy lexicographic choice of order-2 elements
/// completing it to a basis. Coordinates identify the subgroup with the
/// abstract group [`Subgroup::abstract_group`], whose last coordinate belongs
/// to the order-4 generator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: Group,
    elems: Vec<Elem>,
    z2_basis: Vec<Elem>,
    z4_gen: Option<Elem>,
}

impl Subgroup {
    /// Subgroup generated by `gens`.
    pub fn span(parent: Group, gens: &[Elem]) -> Result<Subgroup> {
        let mut set: BTreeSet<Elem> = BTreeSet::from([0]);
        for &g in gens {
            parent.check(g)?;
            loop {
                let add: Vec<Elem> =
                    set.iter().map(|&x| parent.mul(x, g)).filter(|y| !set.contains(y)).collect();
                if add.is_empty() {
                    break;
                }
                set.extend(add);
            }
        }
        Ok(Subgroup::from_closed_set(parent, set.into_iter().collect()))
    }

    pub fn full(parent: Group) -> Subgroup {
        Subgroup::from_closed_set(parent, parent.elements().collect())
    }

    pub fn trivial(parent: Group) -> Subgroup {
        Subgroup::from_closed_set(parent, vec![0])
    }

    /// Checks that `elems` is a subgroup and wraps it.
    pub fn from_elements(parent: Group, elems: &[Elem]) -> Result<Subgroup> {
        let set: BTreeSet<Elem> = elems.iter().copied().collect();
        for &x in &set {
            parent.check(x)?;
        }
        if !set.contains(&0) {
            return Err(Error::BadGroup("element set lacks the identity".into()));
        }
        for &x in &set {
            for &y in &set {
                if !set.contains(&parent.mul(x, y)) {
                    return Err(Error::BadGroup(format!(
                        "element set not closed: {} * {}",
                        parent.format_elem(x),
                        parent.format_elem(y)
                    )));
                }
            }
        }
        Ok(Subgroup::from_closed_set(parent, set.into_iter().collect()))
    }

    fn from_closed_set(parent: Group, elems: Vec<Elem>) -> Subgroup {
        let z4_gen = elems.iter().copied().find(|&x| parent.elem_order(x) == 4);
        let mut basis_span: BTreeSet<Elem> = BTreeSet::from([0]);
        if let Some(w) = z4_gen {
            basis_span = (0..4).map(|k| parent.pow(w, k)).collect();
        }
        let mut z2_basis = Vec::new();
        for &x in &elems {
            if basis_span.len() == elems.len() {
                break;
            }
            if parent.elem_order(x) == 2 && !basis_span.contains(&x) {
                let shifted: Vec<Elem> = basis_span.iter().map(|&s| parent.mul(s, x)).collect();
                basis_span.extend(shifted);
                z2_basis.push(x);
            }
        }
        debug_assert_eq!(basis_span.len(), elems.len());
        Subgroup { parent, elems, z2_basis, z4_gen }
    }

    pub fn parent(&self) -> Group {
        self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elems
    }

    pub fn order(&self) -> u32 {
        self.elems.len() as u32
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }

    /// Position of `x` in the sorted element list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.elems.binary_search(&x).ok()
    }

    pub fn is_elementary(&self) -> bool {
        self.z4_gen.is_none()
    }

    pub fn z4_generator(&self) -> Option<Elem> {
        self.z4_gen
    }

    pub fn z2_basis(&self) -> &[Elem] {
        &self.z2_basis
    }

    /// Canonical basis: Z2 generators followed by the order-4 generator.
    pub fn basis(&self) -> Vec<Elem> {
        let mut b = self.z2_basis.clone();
        b.extend(self.z4_gen);
        b
    }

    /// The abstract group Z2^k [× Z4] this subgroup is isomorphic to.
    pub fn abstract_group(&self) -> Group {
        Group::new(self.z2_basis.len() as u32, u32::from(self.z4_gen.is_some()))
            .expect("subgroup shape")
    }

    /// Exponents of `x` with respect to the canonical basis.
    pub fn coords(&self, x: Elem) -> Result<Vec<u32>> {
        if !self.contains(x) {
            return Err(Error::NotInGroup(format!(
                "{} is not in the subgroup",
                self.parent.format_elem(x)
            )));
        }
        let basis = self.basis();
        let abs = self.abstract_group();
        // Subgroups are small; search the abstract group for the preimage.
        for cand in abs.elements() {
            let e = abs.exps(cand);
            let img = basis.iter().zip(&e).fold(0, |acc, (&g, &k)| self.parent.mul(acc, self.parent.pow(g, k)));
            if img == x {
                return Ok(e);
            }
        }
        Err(Error::Internal("subgroup basis does not span".into()))
    }

    /// For each element (in sorted order) its preimage in the abstract group.
    pub fn abstract_table(&self) -> Vec<Elem> {
        let emb = self.embedding();
        let mut out = vec![0; self.elems.len()];
        for a in self.abstract_group().elements() {
            let pos = self.position(emb.apply(a)).expect("embedding lands in the subgroup");
            out[pos] = a;
        }
        out
    }

    /// The isomorphism from the abstract group onto this subgroup.
    pub fn embedding(&self) -> Hom {
        Hom::new(self.abstract_group(), self.parent, self.basis()).expect("basis images are valid")
    }

    /// Elements of order dividing 2.
    pub fn two_torsion(&self) -> Subgroup {
        let e: Vec<Elem> = self.elems.iter().copied().filter(|&x| self.parent.square(x) == 0).collect();
        Subgroup::from_closed_set(self.parent, e)
    }

    pub fn squares(&self) -> Subgroup {
        let s: BTreeSet<Elem> = self.elems.iter().map(|&x| self.parent.square(x)).collect();
        Subgroup::from_closed_set(self.parent, s.into_iter().collect())
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.elems.iter().all(|&x| other.contains(x))
    }

    /// Elements of `self` outside `sub`, in order.
    pub fn difference(&self, sub: &Subgroup) -> Vec<Elem> {
        self.elems.iter().copied().filter(|&x| !sub.contains(x)).collect()
    }

    /// Cosets of `sub` in `self`, each listed in order, ordered by least element.
    pub fn cosets(&self, sub: &Subgroup) -> Vec<Vec<Elem>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for &x in &self.elems {
            if seen.contains(&x) {
                continue;
            }
            let mut c: Vec<Elem> = sub.elems.iter().map(|&s| self.parent.mul(x, s)).collect();
            c.sort_unstable();
            seen.extend(c.iter().copied());
            out.push(c);
        }
        out
    }

    /// Shape summary such as `Z2^3 x Z4`.
    pub fn shape(&self) -> Group {
        self.abstract_group()
    }

    pub fn format_elements(&self) -> String {
        let parts: Vec<String> = self.elems.iter().map(|&x| self.parent.format_elem(x)).collect();
        parts.join(" ")
    }
}

/// A homomorphism between groups of this family, given by the images of the
/// standard generators of the source.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hom {
    src: Group,
    dst: Group,
    images: Vec<Elem>,
}

impl Hom {
    pub fn new(src: Group, dst: Group, images: Vec<Elem>) -> Result<Hom> {
        if images.len() != src.arity() {
            return Err(Error::BadHom(format!(
                "{} generator images given, {src} has {} generators",
                images.len(),
                src.arity()
            )));
        }
        for (i, &img) in images.iter().enumerate() {
            dst.check(img)?;
            if i < src.z2_rank() as usize && dst.square(img) != 0 {
                return Err(Error::BadHom(format!(
                    "an order-2 generator cannot map to {} of order 4",
                    dst.format_elem(img)
                )));
            }
        }
        Ok(Hom { src, dst, images })
    }

    pub fn identity(g: Group) -> Hom {
        Hom::new(g, g, g.generators()).expect("identity")
    }

    /// The homomorphism agreeing with `f` on the standard generators.
    pub fn from_fn(src: Group, dst: Group, f: impl Fn(Elem) -> Elem) -> Result<Hom> {
        Hom::new(src, dst, src.generators().into_iter().map(f).collect())
    }

    pub fn src(&self) -> Group {
        self.src
    }

    pub fn dst(&self) -> Group {
        self.dst
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.src
            .exps(x)
            .iter()
            .zip(&self.images)
            .fold(0, |acc, (&k, &g)| self.dst.mul(acc, self.dst.pow(g, k)))
    }

    pub fn compose(&self, after: &Hom) -> Result<Hom> {
        if after.src != self.dst {
            return Err(Error::BadHom("composition of incompatible maps".into()));
        }
        Hom::new(self.src, after.dst, self.images.iter().map(|&g| after.apply(g)).collect())
    }

    pub fn is_injective(&self) -> bool {
        self.src.elements().filter(|&x| self.apply(x) == 0).count() == 1
    }

    pub fn is_isomorphism(&self) -> bool {
        self.src.order() == self.dst.order() && self.is_injective()
    }

    pub fn image(&self) -> Subgroup {
        Subgroup::span(self.dst, &self.images).expect("images lie in the target")
    }

    /// Inverse of an isomorphism.
    pub fn inverse(&self) -> Result<Hom> {
        if !self.is_isomorphism() {
            return Err(Error::BadHom("not an isomorphism".into()));
        }
        let mut table = vec![0; self.dst.order() as usize];
        for x in self.src.elements() {
            table[self.apply(x) as usize] = x;
        }
        Hom::from_fn(self.dst, self.src, |y| table[y as usize])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2z4() -> Group {
        Group::new(1, 1).unwrap()
    }

    #[test]
    fn squares_and_distinguished_element_of_z2_z4() {
        let g = z2z4();
        let sq: Vec<String> = g.squares().iter().map(|&x| g.format_elem(x)).collect();
        assert_eq!(sq, vec!["(0,0)", "(0,2)"]);
        assert_eq!(g.format_elem(g.distinguished().unwrap()), "(0,2)");
    }

    #[test]
    fn two_torsion_of_z2_z4() {
        let g = z2z4();
        let t2 = g.two_torsion();
        assert_eq!(t2.len(), 4);
        for x in t2 {
            assert!(g.exps(x)[1] % 2 == 0);
        }
    }

    #[test]
    fn element_orders() {
        let g = Group::elementary(2);
        assert_eq!(g.elem_order(g.parse_elem("(1,1)").unwrap()), 2);
        let h = z2z4();
        assert_eq!(h.elem_order(h.parse_elem("(1,3)").unwrap()), 4);
        assert_eq!(h.inv(h.parse_elem("(1,3)").unwrap()), h.parse_elem("(1,1)").unwrap());
    }

    #[test]
    fn lexicographic_encoding() {
        let g = Group::new(2, 1).unwrap();
        let tuples: Vec<Vec<u32>> = g.elements().map(|x| g.exps(x)).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
    }

    #[test]
    fn group_literals() {
        assert_eq!(Group::parse("Z2^3 x Z4").unwrap(), Group::new(3, 1).unwrap());
        assert_eq!(Group::parse("Z4").unwrap().to_string(), "Z4");
        assert_eq!(Group::parse("Z2^0").unwrap(), Group::trivial());
        assert!(Group::parse("Z4 x Z4").is_err());
        assert!(Group::parse("Z8").is_err());
    }

    #[test]
    fn product_pairs_round_trip() {
        let g = Group::elementary(2);
        let h = z2z4();
        for x in g.elements() {
            for y in h.elements() {
                let z = Group::pair(&g, &h, x, y);
                assert_eq!(Group::split(&g, &h, z), (x, y));
            }
        }
    }

    #[test]
    fn subgroup_span_and_coordinates() {
        let g = Group::new(2, 1).unwrap();
        let s = Subgroup::span(g, &[g.parse_elem("(1,0,1)").unwrap()]).unwrap();
        assert_eq!(s.order(), 4);
        assert_eq!(s.abstract_group(), Group::new(0, 1).unwrap());
        let full = Subgroup::full(g);
        let emb = full.embedding();
        for x in full.abstract_group().elements() {
            let y = emb.apply(x);
            assert_eq!(full.coords(y).unwrap(), full.abstract_group().exps(x));
        }
        assert!(Subgroup::from_elements(g, &[0, 4]).is_ok());
        assert!(Subgroup::from_elements(g, &[0, 1]).is_err());
    }

    #[test]
    fn cosets_partition() {
        let g = z2z4();
        let t = Subgroup::full(g);
        let k = t.two_torsion();
        let cs = t.cosets(&k);
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0], k.elements());
    }

    #[test]
    fn hom_inverse() {
        let g = Group::elementary(2);
        let h = Hom::new(g, g, vec![3, 1]).unwrap();
        let hi = h.inverse().unwrap();
        for x in g.elements() {
            assert_eq!(hi.apply(h.apply(x)), x);
        }
        assert!(Hom::new(z2z4(), z2z4(), vec![1, 1]).is_err());
    }
}
