//! Brute-force cross-checks of the pipeline. Every check here works from
//! the raw matrices of a grading and its own rank computations.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::{classify, equivalence_of_records, is_equivalent, is_isomorphic, CaseTag};
use crate::error::{Error, Result};
use crate::forms::{arf_product, enumerate_quadratic_forms, Bicharacter, Sign, SymplecticFamily};
use crate::graded::{product_of, Block, GradedAlgebra};
use crate::group::{Elem, Group, Hom, Subgroup};
use crate::linalg::rank;
use crate::matrix::Matrix;
use crate::par;
use crate::realize::{
    canonical_representative, count_by_realization, count_isomorphism_classes, enumerate_records,
    realize_from_invariants,
};
use crate::refine::{expected_refined_support, forget_refinement, refine, same_components};
use crate::scalar::{Kind, RealQuad, Scalar};

/// One failing case with the datum that reproduces it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub case: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub cases: usize,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
    pub seed: Option<u64>,
}

impl VerificationReport {
    fn new(suite: &str, seed: Option<u64>) -> VerificationReport {
        VerificationReport { suite: suite.into(), cases: 0, failures: Vec::new(), notes: Vec::new(), seed }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, case: impl Into<String>, outcome: std::result::Result<(), String>) {
        self.cases += 1;
        if let Err(detail) = outcome {
            self.failures.push(Failure { case: case.into(), detail });
        }
    }

    fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "pass" } else { "fail" };
        write!(f, "suite {} {status} cases {} failures {}", self.suite, self.cases, self.failures.len())?;
        if let Some(s) = self.seed {
            write!(f, " seed {s}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note {n}")?;
        }
        for x in &self.failures {
            write!(f, "\n  failure {}: {}", x.case, x.detail)?;
        }
        Ok(())
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err_string<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Symmetric elimination with every pivot negative.
fn is_negative_definite(mut a: Vec<Vec<RealQuad>>) -> bool {
    let n = a.len();
    for k in 0..n {
        let p = a[k][k].clone();
        if p.sign().ok() != Some(Sign::Minus) {
            return false;
        }
        let pi = p.inv().expect("nonzero pivot");
        for i in k + 1..n {
            let c = &a[i][k] * &pi;
            for j in k + 1..n {
                let d = &c * &a[k][j];
                a[i][j] = &a[i][j] - &d;
            }
        }
    }
    true
}

/// Division certificate for a unital subalgebra: the form Re tr(xy) is
/// negative definite on trace-zero elements. Nilpotents and nontrivial
/// idempotents both give non-negative values, so the subalgebra is ℝ, ℂ
/// or ℍ.
fn neutral_is_division(de: &[Matrix]) -> std::result::Result<(), String> {
    let n = de[0].rows();
    let kind = de[0].kind();
    let id = Matrix::identity(kind, n);
    let len = id.real_coords().len();
    let inv_n = RealQuad::from_int(n as i64).inv().expect("n > 0");
    let mut pures = Vec::new();
    for x in de {
        let c = &x.real_trace() * &inv_n;
        let p = x.sub(&Matrix::scalar(n, &Scalar::from_real(kind, c))).expect("same shape");
        let mut vs: Vec<_> = pures.iter().map(Matrix::real_coords).collect();
        vs.push(id.real_coords());
        let before = rank(len, &vs);
        vs.push(p.real_coords());
        if rank(len, &vs) > before {
            pures.push(p);
        }
    }
    ensure(pures.len() + 1 == de.len(), || "neutral component does not contain I".into())?;
    let gram: Vec<Vec<RealQuad>> = pures
        .iter()
        .map(|p| pures.iter().map(|q| p.mul(q).expect("same shape").real_trace()).collect())
        .collect();
    ensure(is_negative_definite(gram), || "trace form on the neutral component is not negative definite".into())
}

/// Grading and division grading checked independently of the pipeline.
/// Returns the number of basis products checked.
pub fn oracle_check(a: &GradedAlgebra) -> std::result::Result<usize, String> {
    let g = a.group();
    let len = a.coord_len();
    let coords = |ms: &[Matrix]| ms.iter().map(Matrix::real_coords).collect::<Vec<_>>();
    let all: Vec<Matrix> = a.basis().into_iter().map(|(_, m)| m.clone()).collect();
    ensure(rank(len, &coords(&all)) == a.algebra_dim() && all.len() == a.algebra_dim(), || {
        format!("components do not form a direct sum decomposition of dimension {}", a.algebra_dim())
    })?;
    let comps: Vec<(Elem, &Vec<Matrix>)> = a.components().iter().map(|(&t, v)| (t, v)).collect();
    let mut products = 0;
    for &(s, xs) in &comps {
        let rows: Vec<std::result::Result<usize, String>> = par::map(&comps, |&(t, ys)| {
            let target = a.component(g.mul(s, t));
            let base = coords(target);
            let r0 = rank(len, &base);
            let mut count = 0;
            for (i, x) in xs.iter().enumerate() {
                for (j, y) in ys.iter().enumerate() {
                    let p = x.mul(y).map_err(|e| e.to_string())?;
                    count += 1;
                    if p.is_zero() {
                        continue;
                    }
                    let mut vs = base.clone();
                    vs.push(p.real_coords());
                    if rank(len, &vs) != r0 {
                        return Err(format!(
                            "product of basis {i} at {} and basis {j} at {} leaves degree {}",
                            g.format_elem(s),
                            g.format_elem(t),
                            g.format_elem(g.mul(s, t))
                        ));
                    }
                }
            }
            Ok(count)
        });
        for r in rows {
            products += r?;
        }
    }
    let de = a.component(0);
    ensure(!de.is_empty(), || "empty neutral component".into())?;
    neutral_is_division(de)?;
    for &(t, xs) in &comps {
        ensure(xs.len() == de.len(), || format!("component {} has dimension {}", g.format_elem(t), xs.len()))?;
        xs[0].inverse().map_err(|_| format!("first basis element at {} is singular", g.format_elem(t)))?;
        let shifted: Vec<Matrix> = de.iter().map(|d| xs[0].mul(d).expect("same shape")).collect();
        let mut vs = coords(xs);
        vs.extend(coords(&shifted));
        ensure(rank(len, &coords(&shifted)) == xs.len() && rank(len, &vs) == xs.len(), || {
            format!("component {} is not X·D_e", g.format_elem(t))
        })?;
    }
    Ok(products)
}

/// Flips the sign of the imaginary part of one entry (or of the entry
/// itself when every entry is real) in the first non-neutral component.
pub fn corrupt(a: &GradedAlgebra) -> Result<GradedAlgebra> {
    let mut comps = a.components().clone();
    let m = comps
        .iter_mut()
        .find(|(t, _)| **t != 0)
        .map(|(_, v)| &mut v[0])
        .ok_or_else(|| Error::Internal("grading has a single component".into()))?;
    let cells: Vec<(usize, usize)> = (0..m.rows()).flat_map(|i| (0..m.cols()).map(move |j| (i, j))).collect();
    let &(i, j) = cells
        .iter()
        .find(|&&(i, j)| m.get(i, j).conj() != *m.get(i, j))
        .or_else(|| cells.iter().find(|&&(i, j)| !m.get(i, j).is_zero()))
        .ok_or_else(|| Error::Internal("zero basis matrix".into()))?;
    let s = m.get(i, j);
    let v = if s.conj() != *s { s.conj() } else { s.neg() };
    m.set(i, j, v);
    GradedAlgebra::new(a.kind(), a.n(), a.group(), comps)
}

pub fn verify_building_blocks() -> VerificationReport {
    let mut r = VerificationReport::new("blocks", None);
    for b in Block::EXAMPLES {
        let a = b.build();
        let out = oracle_check(&a);
        if let Ok(k) = &out {
            r.note(format!("{} {k} products", b.name()));
        }
        let pipeline = a.is_division_grading();
        r.check(b.name(), out.map(|_| ()).and_then(|_| ensure(pipeline, || "pipeline rejects the block".into())));
    }
    let bad = corrupt(&Block::M2C1.build()).expect("corruptible");
    let out = oracle_check(&bad);
    if let Err(e) = &out {
        r.note(format!("corrupted M2C1: {e}"));
    }
    let pipeline = bad.check_grading();
    r.check(
        "corrupted M2C1",
        ensure(out.is_err() && pipeline.as_ref().is_err_and(|v| v.is_closure()), || {
            "a corrupted block was accepted".into()
        }),
    );
    r
}

/// Tag and m of every list entry up to `max_m`, 2f excluded.
pub fn list_entries(max_m: u32) -> Vec<(CaseTag, u32)> {
    CaseTag::ALL
        .into_iter()
        .filter(|t| *t != CaseTag::C2f)
        .flat_map(|t| (t.min_m()..=max_m).map(move |m| (t, m)))
        .collect()
}

/// Example of case 2f: M₂(ℝ)^{⊗m} ⊗ ℂ with ℂ trivially graded.
pub fn complex_example(m: u32) -> Result<GradedAlgebra> {
    let mut blocks = vec![Block::M2R1.build(); m as usize];
    blocks.push(Block::C0.build());
    product_of(&blocks)
}

/// A non-identity automorphism of `g` when one exists: e_i ↦ e_i e_{i+1}
/// on the Z2 generators, z ↦ z⁻¹ e_0 on the Z4 generator.
pub fn mixing_automorphism(g: Group) -> Hom {
    let a = g.z2_rank() as usize;
    let mut images: Vec<Elem> =
        (0..a).map(|i| if i + 1 < a { g.mul(g.generator(i), g.generator(i + 1)) } else { g.generator(i) }).collect();
    if g.has_z4() {
        let z = g.generator(a);
        images.push(if a > 0 { g.mul(g.inv(z), g.generator(0)) } else { g.inv(z) });
    }
    Hom::new(g, g, images).expect("generator images have the right orders")
}

fn centralizer_has_order_four(a: &GradedAlgebra) -> Result<bool> {
    let c = a.centralizer(a.component(0))?;
    Ok(c.support_elements().iter().any(|&t| a.group().elem_order(t) == 4))
}

fn neutral_is_center(a: &GradedAlgebra) -> Result<bool> {
    let de = a.component(0);
    let all: Vec<Matrix> = a.basis().into_iter().map(|(_, m)| m.clone()).collect();
    for x in de {
        for y in &all {
            if !x.commutator(y)?.is_zero() {
                return Ok(false);
            }
        }
    }
    let len = a.coord_len();
    let mut vs: Vec<_> = de.iter().map(Matrix::real_coords).collect();
    let r = rank(len, &vs);
    vs.push(Matrix::scalar(a.n(), &Scalar::imag_unit()).real_coords());
    Ok(a.kind() == Kind::C && rank(len, &vs) == r)
}

pub fn verify_section3_list(max_m: u32) -> VerificationReport {
    let mut r = VerificationReport::new("list", None);
    let entries = list_entries(max_m.min(2));
    let built: Vec<Result<GradedAlgebra>> = par::map(&entries, |&(t, m)| canonical_representative(t, m, None));
    let mut ok: Vec<(CaseTag, u32, GradedAlgebra)> = Vec::new();
    for (&(tag, m), a) in entries.iter().zip(built) {
        let name = format!("{tag} m={m}");
        let a = match a {
            Ok(a) => a,
            Err(e) => {
                r.check(name, Err(e.to_string()));
                continue;
            }
        };
        let out = (|| {
            oracle_check(&a)?;
            ensure(a.kind() == tag.kind() && a.n() == 1 << m, || format!("algebra M_{}({})", a.n(), a.kind()))?;
            let support = err_string(a.support())?;
            let shape = err_string(tag.support_shape(m))?;
            ensure(support.shape() == shape, || format!("support {} instead of {shape}", support.shape()))?;
            ensure(a.component_dim() == Some(tag.dim()), || format!("component dimension {:?}", a.component_dim()))?;
            let rec = err_string(classify(&a))?;
            ensure(rec.case == tag, || format!("classified as {}", rec.case))?;
            Ok(())
        })();
        r.check(name, out);
        ok.push((tag, m, a));
    }
    // every pair, and every entry against a relabeled copy of itself
    let recs: Vec<_> = par::map(&ok, |(_, _, a)| classify(a));
    for (i, (ti, mi, ai)) in ok.iter().enumerate() {
        let relabeled = ai.coarsen(&mixing_automorphism(ai.group())).and_then(|b| is_equivalent(ai, &b));
        r.check(
            format!("equiv {ti} m={mi} relabeled"),
            err_string(relabeled).and_then(|v| ensure(v.holds, || v.reason)),
        );
        for (j, (tj, mj, _)) in ok.iter().enumerate().skip(i + 1) {
            let (Ok(li), Ok(lj)) = (&recs[i], &recs[j]) else { continue };
            let v = err_string(equivalence_of_records(li.clone(), lj.clone()));
            let expect = ti == tj && mi == mj;
            r.check(
                format!("equiv {ti} m={mi} vs {tj} m={mj}"),
                v.and_then(|v| ensure(v.holds == expect, || format!("verdict {} ({})", v.holds, v.reason))),
            );
        }
    }
    // 2c against 2f: D_e = Z(D) separates them
    for m in 1..=max_m.min(2) {
        let out = (|| {
            let c = err_string(complex_example(m))?;
            let two_c = err_string(canonical_representative(CaseTag::C2c, m, None))?;
            oracle_check(&c)?;
            ensure(err_string(neutral_is_center(&c))?, || "D_e is not the center in the 2f example".into())?;
            ensure(!err_string(neutral_is_center(&two_c))?, || "D_e is the center in 2c".into())?;
            let rec = err_string(classify(&c))?;
            ensure(rec.case == CaseTag::C2f && rec.is_deferred(), || format!("2f example classified as {}", rec.case))?;
            let v = err_string(is_equivalent(&two_c, &c))?;
            ensure(!v.holds, || "2c and 2f reported equivalent".into())?;
            ensure(matches!(is_equivalent(&c, &c), Err(Error::Deferred(_))), || "2f vs 2f was not deferred".into())
        })();
        r.check(format!("2c vs 2f m={m}"), out);
    }
    // 2d against 2e: order-4 elements in the support of the centralizer
    if max_m >= 2 {
        let out = (|| {
            let d = err_string(canonical_representative(CaseTag::C2d, 2, None))?;
            let e = err_string(canonical_representative(CaseTag::C2e, 2, None))?;
            ensure(err_string(centralizer_has_order_four(&d))?, || "2d centralizer has no order-4 degree".into())?;
            ensure(!err_string(centralizer_has_order_four(&e))?, || "2e centralizer has an order-4 degree".into())?;
            let v = err_string(is_equivalent(&d, &e))?;
            ensure(!v.holds, || "2d and 2e reported equivalent".into())
        })();
        r.check("2d vs 2e m=2", out);
    }
    r.note(format!("{} list entries built", ok.len()));
    r
}

/// Standard symplectic form on Z2^{2m}: generators 2i and 2i+1 pair.
fn standard_beta(t: &Subgroup) -> Bicharacter {
    let g = t.parent();
    Bicharacter::from_fn(t.clone(), |x, y| {
        let (a, b) = (g.exps(x), g.exps(y));
        let odd = (0..a.len() / 2).filter(|&i| a[2 * i] * b[2 * i + 1] + a[2 * i + 1] * b[2 * i] == 1).count();
        Sign::from_minus(odd % 2 == 1)
    })
    .expect("alternating")
}

/// x ↦ x·v^{[β(x, v) = −1]}, a symplectic transvection.
fn transvect(g: Group, beta: &Bicharacter, v: Elem, x: Elem) -> Elem {
    if beta.value(x, v).is_minus() {
        g.mul(x, v)
    } else {
        x
    }
}

pub fn verify_arf_independence(m: u32, trials: usize, seed: u64) -> VerificationReport {
    let mut r = VerificationReport::new("arf", Some(seed));
    if m > 3 {
        r.check(format!("m={m}"), Err("m must be at most 3".into()));
        return r;
    }
    let t = Subgroup::full(Group::elementary(2 * m));
    let g = t.parent();
    let beta = standard_beta(&t);
    let forms = match enumerate_quadratic_forms(&t, Some(&beta)) {
        Ok(f) => f,
        Err(e) => {
            r.check("enumerate", Err(e.to_string()));
            return r;
        }
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let standard: Vec<(Elem, Elem)> = (0..m as usize).map(|i| (g.generator(2 * i), g.generator(2 * i + 1))).collect();
    let bases: Vec<Vec<(Elem, Elem)>> = (0..trials)
        .map(|_| {
            let mut pairs = standard.clone();
            for _ in 0..(4 * m as usize + 4) {
                let v = rng.gen_range(1..g.order().max(2)).min(g.order() - 1);
                pairs = pairs.iter().map(|&(a, b)| (transvect(g, &beta, v, a), transvect(g, &beta, v, b))).collect();
            }
            pairs
        })
        .collect();
    for (i, pairs) in bases.iter().enumerate() {
        let fam = SymplecticFamily { pairs: pairs.clone(), f: None };
        let spans = Subgroup::span(g, &fam.members()).map(|s| s.order() == t.order()).unwrap_or(false);
        r.check(
            format!("basis {i}"),
            ensure(fam.is_symplectic_for(&beta) && spans, || format!("transvected basis {pairs:?} is not symplectic")),
        );
    }
    let (mut plus, mut minus) = (0, 0);
    for mu in &forms {
        let Ok(majority) = mu.majority() else {
            r.check("majority", Err("form has no majority value".into()));
            continue;
        };
        if majority == Sign::Plus {
            plus += 1;
        } else {
            minus += 1;
        }
        let bad = bases.iter().find(|p| arf_product(mu, p) != majority);
        let values: Vec<String> = mu.entries().map(|(_, s)| s.symbol().to_string()).collect();
        r.check(
            format!("form {}", values.concat()),
            ensure(bad.is_none(), || format!("product formula over {:?} differs from majority {majority}", bad.unwrap())),
        );
    }
    r.note(format!("m={m}: {} forms, {plus} with Arf +1, {minus} with Arf -1, {trials} bases", forms.len()));
    r
}

/// Raw sign of X² for the first basis element at each degree.
fn raw_square_signs(a: &GradedAlgebra) -> BTreeMap<Elem, Option<Sign>> {
    a.components()
        .iter()
        .map(|(&t, v)| {
            let s = v[0].mul(&v[0]).ok().and_then(|m| m.real_scalar_value()).and_then(|c| c.sign().ok());
            (t, s)
        })
        .collect()
}

/// Raw sign with X_u X_v = ±X_v X_u.
fn raw_commutation(a: &GradedAlgebra, u: Elem, v: Elem) -> Option<Sign> {
    let (x, y) = (&a.component(u)[0], &a.component(v)[0]);
    let xy = x.mul(y).ok()?;
    let yx = y.mul(x).ok()?;
    if xy == yx {
        Some(Sign::Plus)
    } else if xy == yx.neg() {
        Some(Sign::Minus)
    } else {
        None
    }
}

pub fn verify_hh_relabeling() -> VerificationReport {
    let mut r = VerificationReport::new("hh", None);
    let hh = product_of(&[Block::H1.build(), Block::H1.build()]).expect("H⊗H");
    let g = hh.group();
    let [a1, b1, a2, b2] = [0, 1, 2, 3].map(|i| g.generator(i));
    let primed = [g.mul(a1, a2), g.mul(g.mul(a1, a2), b1), g.mul(b1, b2), g.mul(g.mul(b1, b2), a2)];
    let phi = Hom::new(g, g, primed.to_vec()).expect("images in Z2^4");
    r.check("basis change is an automorphism", ensure(phi.is_isomorphism(), || "not bijective".into()));
    let squares = raw_square_signs(&hh);
    for (name, x) in ["a1'", "b1'", "a2'", "b2'"].iter().zip(primed) {
        r.check(
            format!("mu({name})"),
            ensure(squares[&x] == Some(Sign::Plus), || format!("X² has sign {:?}", squares[&x])),
        );
    }
    // symplectic: β(φ x, φ y) equals the standard pairing of generators
    for i in 0..4 {
        for j in 0..4 {
            let want = if i / 2 == j / 2 && i != j { Sign::Minus } else { Sign::Plus };
            let got = raw_commutation(&hh, primed[i], primed[j]);
            r.check(
                format!("beta pair {i},{j}"),
                ensure(got == Some(want), || format!("commutation {got:?}, expected {want}")),
            );
        }
    }
    let out = (|| {
        let relabeled = err_string(hh.coarsen(&err_string(phi.inverse())?))?;
        let rec_hh = err_string(classify(&hh))?;
        ensure(rec_hh.case == CaseTag::C1a, || format!("H⊗H classified as {}", rec_hh.case))?;
        let rr = err_string(product_of(&[Block::M2R1.build(), Block::M2R1.build()]))?;
        let realized = err_string(realize_from_invariants(&err_string(classify(&rr))?))?;
        let v = err_string(is_isomorphic(&relabeled, &realized))?;
        ensure(v.holds, || v.reason.clone())?;
        let v = err_string(is_isomorphic(&relabeled, &rr))?;
        ensure(v.holds, || v.reason)
    })();
    r.check("relabeled H⊗H isomorphic to M2(R)⊗M2(R)", out);
    r
}

/// Refines until the components are one-dimensional, then coarsens back.
fn refinement_chain(a: &GradedAlgebra) -> std::result::Result<GradedAlgebra, String> {
    let t = err_string(a.support())?;
    let mut steps = Vec::new();
    let mut cur = a.clone();
    let mut expected = t;
    while cur.component_dim() != Some(1) {
        let next = err_string(refine(&cur))?.algebra;
        expected = err_string(expected_refined_support(&expected))?;
        let support = err_string(next.support())?;
        ensure(support == expected, || format!("refined support {}", support.shape()))?;
        oracle_check(&next)?;
        steps.push(cur.group());
        cur = next;
        ensure(steps.len() <= 2, || "more than two refinements".into())?;
    }
    let mut back = cur.clone();
    for g in steps.iter().rev() {
        back = err_string(back.coarsen(&err_string(forget_refinement(back.group(), *g))?))?;
    }
    ensure(same_components(&back, a), || "coarsening does not recover the components".into())?;
    Ok(cur)
}

pub fn verify_refinement_chain() -> VerificationReport {
    let mut r = VerificationReport::new("refine", None);
    let entries: Vec<(CaseTag, u32)> = list_entries(2).into_iter().filter(|(t, _)| t.dim() > 1).collect();
    let results = par::map(&entries, |&(tag, m)| -> std::result::Result<GradedAlgebra, String> {
        let a = err_string(canonical_representative(tag, m, None))?;
        let fine = refinement_chain(&a)?;
        let depth = if tag.dim() == 4 { 2 } else { 1 };
        ensure(fine.group().z2_rank() == a.group().z2_rank() + depth, || "wrong number of refinements".into())?;
        Ok(fine)
    });
    for (&(tag, m), out) in entries.iter().zip(results) {
        let fine = out.as_ref().ok().cloned();
        r.check(format!("{tag} m={m}"), out.map(|_| ()));
        if let (Some(fine), true) = (fine, (tag, m) == (CaseTag::C2e, 1) || (tag, m) == (CaseTag::C3b, 1)) {
            if let Ok(rec) = classify(&fine) {
                r.note(format!("{tag} m={m} refines to case {}", rec.case));
            }
        }
    }
    r
}

/// Every grading group of order at most `max_order`.
pub fn small_groups(max_order: u32) -> Vec<Group> {
    let mut out = Vec::new();
    for b in 0..=1 {
        for a in 0..=8 {
            if let Ok(g) = Group::new(a, b) {
                if g.order() <= max_order {
                    out.push(g);
                }
            }
        }
    }
    out
}

pub fn verify_round_trips(max_order: u32) -> VerificationReport {
    let mut r = VerificationReport::new("roundtrip", None);
    let mut jobs = Vec::new();
    for g in small_groups(max_order) {
        let t = Subgroup::full(g);
        for tag in CaseTag::ALL.into_iter().filter(|t| *t != CaseTag::C2f) {
            match enumerate_records(tag, &t) {
                Ok(recs) => jobs.extend(recs.into_iter().map(|rec| (tag, g, rec))),
                Err(e) => r.check(format!("{tag} on {g}"), Err(e.to_string())),
            }
        }
    }
    let outcomes = par::map(&jobs, |(_, _, rec)| -> std::result::Result<(), String> {
        let a = err_string(realize_from_invariants(rec))?;
        let back = err_string(classify(&a))?;
        ensure(&back == rec, || format!("classify returned case {} with a different payload", back.case))
    });
    let mut per: BTreeMap<(String, String), usize> = BTreeMap::new();
    for ((tag, g, _), out) in jobs.iter().zip(outcomes) {
        *per.entry((tag.to_string(), g.to_string())).or_default() += 1;
        r.check(format!("{tag} on {g}"), out);
    }
    for ((tag, g), k) in per {
        r.note(format!("{tag} on {g}: {k} records"));
    }
    r
}

pub fn verify_counting(max_order: u32) -> VerificationReport {
    let mut r = VerificationReport::new("count", None);
    let fixed = [
        (Kind::R, 1, Subgroup::full(Group::elementary(2)), 3),
        (Kind::H, 1, Subgroup::full(Group::elementary(2)), 1),
        (Kind::R, 1, Subgroup::full(Group::trivial()), 1),
    ];
    for (kind, dim, t, want) in fixed {
        let got = count_isomorphism_classes(kind, dim, &t);
        r.check(
            format!("{kind} dim {dim} on {}", t.shape()),
            err_string(got).and_then(|c| ensure(c == want, || format!("{c} classes, expected {want}"))),
        );
    }
    for g in small_groups(max_order) {
        let t = Subgroup::full(g);
        for kind in [Kind::R, Kind::C, Kind::H] {
            for dim in [1, 2, 4] {
                let a = count_isomorphism_classes(kind, dim, &t);
                let b = count_by_realization(kind, dim, &t);
                let out = match (a, b) {
                    (Ok(a), Ok(b)) => {
                        if a > 0 {
                            r.note(format!("{kind} dim {dim} on {g}: {a}"));
                        }
                        ensure(a == b, || format!("enumeration {a}, realization {b}"))
                    }
                    (Err(e), _) | (_, Err(e)) => Err(e.to_string()),
                };
                r.check(format!("{kind} dim {dim} on {g}"), out);
            }
        }
    }
    r
}

/// Suite names accepted by [`run_suite`].
pub const SUITES: [&str; 7] = ["blocks", "list", "arf", "hh", "refine", "roundtrip", "count"];

pub fn run_suite(name: &str, seed: u64, max_m: u32) -> Result<Vec<VerificationReport>> {
    Ok(match name {
        "blocks" => vec![verify_building_blocks()],
        "list" => vec![verify_section3_list(max_m)],
        "arf" => (0..=3).map(|m| verify_arf_independence(m, 100, seed.wrapping_add(m as u64))).collect(),
        "hh" => vec![verify_hh_relabeling()],
        "refine" => vec![verify_refinement_chain()],
        "roundtrip" => vec![verify_round_trips(16)],
        "count" => vec![verify_counting(16)],
        "all" => {
            let mut out = Vec::new();
            for s in SUITES {
                out.extend(run_suite(s, seed, max_m)?);
            }
            out
        }
        other => return Err(Error::Precondition(format!("unknown suite {other}"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_suite_passes_and_counts_products() {
        let r = verify_building_blocks();
        assert!(r.passed(), "{r}");
        assert!(r.notes.iter().any(|n| n == "H1 16 products"));
        assert!(r.notes.iter().any(|n| n == "M2C1 64 products"));
        assert!(r.notes.iter().any(|n| n.contains("corrupted M2C1") && n.contains("product of basis")));
    }

    #[test]
    fn division_certificate_rejects_split_algebras() {
        let d = Matrix::diag(&[Scalar::from_int(Kind::R, 1), Scalar::from_int(Kind::R, 0)]).unwrap();
        assert!(neutral_is_division(&[Matrix::identity(Kind::R, 2), d]).is_err());
        let nil = Matrix::from_ints(Kind::R, &[&[0, 1], &[0, 0]]);
        assert!(neutral_is_division(&[Matrix::identity(Kind::R, 2), nil]).is_err());
        let j = Matrix::from_ints(Kind::R, &[&[0, -2], &[1, 0]]);
        assert!(neutral_is_division(&[Matrix::identity(Kind::R, 2), j]).is_ok());
    }

    #[test]
    fn arf_counts_for_m2() {
        let r = verify_arf_independence(2, 100, 7);
        assert!(r.passed(), "{r}");
        assert!(r.notes[0].contains("16 forms, 10 with Arf +1, 6 with Arf -1"), "{}", r.notes[0]);
        assert!(verify_arf_independence(0, 10, 1).passed());
    }

    #[test]
    fn hh_relabeling_passes() {
        let r = verify_hh_relabeling();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn mixing_automorphisms_are_bijective() {
        for g in small_groups(32) {
            assert!(mixing_automorphism(g).is_isomorphism(), "{g}");
        }
    }

    #[test]
    fn report_text() {
        let mut r = VerificationReport::new("x", Some(3));
        r.check("a", Ok(()));
        r.check("b", Err("bad".into()));
        assert_eq!(r.to_string(), "suite x fail cases 2 failures 1 seed 3\n  failure b: bad");
    }
}
