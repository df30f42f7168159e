use std::sync::LazyLock;

use proptest::prelude::*;
use proptest::sample::{select, Index};

use divgrad::classify::{classify, extract_beta, extract_mu, CaseTag, ClassificationRecord, Payload, StructureConstants};
use divgrad::format::{format_record, parse_record};
use divgrad::forms::{arf, form_from_basis, radical_and_type, Bicharacter, Sign};
use divgrad::graded::GradedAlgebra;
use divgrad::group::{Group, Subgroup};
use divgrad::matrix::Matrix;
use divgrad::realize::{canonical_representative, enumerate_records, realize_from_invariants};
use divgrad::scalar::{Cyclo8, Kind, Quaternion, Rational, RealQuad, Scalar};

fn small_rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn real_quad() -> impl Strategy<Value = RealQuad> {
    (small_rational(), small_rational()).prop_map(|(a, b)| RealQuad::new(a, b))
}

fn quaternion() -> impl Strategy<Value = Quaternion> {
    (real_quad(), real_quad(), real_quad(), real_quad()).prop_map(|(w, x, y, z)| Quaternion::new(w, x, y, z))
}

fn cyclo() -> impl Strategy<Value = Cyclo8> {
    [small_rational(), small_rational(), small_rational(), small_rational()].prop_map(Cyclo8::new)
}

fn group() -> impl Strategy<Value = Group> {
    (0u32..=4, 0u32..=1).prop_map(|(a, b)| Group::new(a, b).unwrap())
}

/// Records with supports of order at most 16, for every enumerable case.
static RECORDS: LazyLock<Vec<ClassificationRecord>> = LazyLock::new(|| {
    let mut out = Vec::new();
    for tag in CaseTag::ALL.into_iter().filter(|t| *t != CaseTag::C2f) {
        for m in tag.min_m()..=3 {
            let shape = tag.support_shape(m).unwrap();
            if shape.order() > 16 {
                continue;
            }
            out.extend(enumerate_records(tag, &Subgroup::full(shape)).unwrap());
        }
    }
    out
});

fn dim1_records() -> Vec<ClassificationRecord> {
    RECORDS.iter().filter(|r| r.dim == 1).cloned().collect()
}

/// Small division gradings to move around by isomorphisms.
fn small_gradings() -> Vec<GradedAlgebra> {
    [
        (CaseTag::C1a, 1),
        (CaseTag::C1b, 1),
        (CaseTag::C1c, 1),
        (CaseTag::C1d, 1),
        (CaseTag::C2a, 1),
        (CaseTag::C2b, 1),
        (CaseTag::C2c, 1),
        (CaseTag::C2e, 1),
        (CaseTag::C3b, 1),
        (CaseTag::C3c, 1),
    ]
    .into_iter()
    .map(|(t, m)| canonical_representative(t, m, None).unwrap())
    .collect()
}

fn entry(kind: Kind, v: [i64; 4]) -> Scalar {
    let r = |x: i64| RealQuad::from_int(x);
    match kind {
        Kind::R => Scalar::Real(r(v[0])),
        Kind::C => Scalar::from_real_coords(Kind::C, &[r(v[0]), r(v[1])]),
        Kind::H => Scalar::Quat(Quaternion::new(r(v[0]), r(v[1]), r(v[2]), r(v[3]))),
    }
}

/// Symplectic form on Z2^{2m} pairing coordinates 2i and 2i+1.
fn standard_beta(t: &Subgroup) -> Bicharacter {
    let g = t.parent();
    Bicharacter::from_fn(t.clone(), |x, y| {
        let (a, b) = (g.exps(x), g.exps(y));
        let s: u32 = (0..a.len() / 2).map(|i| a[2 * i] * b[2 * i + 1] + a[2 * i + 1] * b[2 * i]).sum();
        Sign::from_minus(s % 2 == 1)
    })
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn real_quad_field_laws(a in real_quad(), b in real_quad(), c in real_quad()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), RealQuad::one());
        }
        prop_assert_eq!((&a * &b).norm(), a.norm() * b.norm());
    }

    #[test]
    fn real_quad_order_is_compatible(a in real_quad(), b in real_quad(), c in real_quad()) {
        if a <= b {
            prop_assert!(&a + &c <= &b + &c);
        }
        let sq = &a * &a;
        prop_assert!(sq >= RealQuad::zero());
    }

    #[test]
    fn quaternion_norm_is_multiplicative(p in quaternion(), q in quaternion(), r in quaternion()) {
        prop_assert_eq!((&p * &q).norm(), &p.norm() * &q.norm());
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!((&p * &q).conj(), &q.conj() * &p.conj());
    }

    #[test]
    fn cyclotomic_ring_laws(a in cyclo(), b in cyclo(), c in cyclo()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Cyclo8::one());
        }
    }

    #[test]
    fn group_laws(g in group(), i in any::<Index>(), j in any::<Index>(), k in any::<Index>()) {
        let n = g.order() as usize;
        let (x, y, z) = (i.index(n) as u32, j.index(n) as u32, k.index(n) as u32);
        prop_assert_eq!(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
        prop_assert_eq!(g.mul(x, y), g.mul(y, x));
        prop_assert_eq!(g.mul(x, g.inv(x)), g.identity());
        prop_assert_eq!(g.from_exps(&g.exps(x)).unwrap(), x);
        prop_assert_eq!(g.parse_elem(&g.format_elem(x)).unwrap(), x);
        prop_assert_eq!(g.pow(x, g.elem_order(x)), g.identity());
    }

    #[test]
    fn subgroup_span_is_closed(g in group(), i in any::<Index>(), j in any::<Index>()) {
        let n = g.order() as usize;
        let s = Subgroup::span(g, &[i.index(n) as u32, j.index(n) as u32]).unwrap();
        for &x in s.elements() {
            for &y in s.elements() {
                prop_assert!(s.contains(g.mul(x, y)));
            }
        }
        prop_assert_eq!(g.order() % s.order(), 0);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_positive_rescaling(
        a in select(small_gradings()),
        scales in prop::collection::vec((1i64..=9, 1i64..=9), 16),
    ) {
        let b = a
            .map_basis(|t, m| {
                let (p, q) = scales[t as usize % scales.len()];
                m.scale(&RealQuad::from_ratio(p, q))
            })
            .unwrap();
        prop_assert!(b.check_division_grading().is_ok());
        prop_assert_eq!(classify(&b).unwrap(), classify(&a).unwrap());
    }

    #[test]
    fn invariants_survive_conjugation(
        a in select(small_gradings()),
        raw in prop::collection::vec(prop::array::uniform4(-2i64..=2), 16),
    ) {
        let n = a.n();
        let data: Vec<Scalar> = raw.iter().take(n * n).map(|v| entry(a.kind(), *v)).collect();
        let p = Matrix::new(a.kind(), n, n, data).unwrap();
        prop_assume!(p.is_invertible());
        let b = a.conjugate_by(&p).unwrap();
        prop_assert!(b.check_division_grading().is_ok());
        prop_assert_eq!(classify(&b).unwrap(), classify(&a).unwrap());
    }

    #[test]
    fn arf_decides_the_realizing_algebra(m in 1u32..=2, bits in any::<u32>()) {
        let t = Subgroup::full(Group::elementary(2 * m));
        let beta = standard_beta(&t);
        let mu = form_from_basis(&beta, bits & ((1 << (2 * m)) - 1)).unwrap();
        prop_assert!(radical_and_type(&beta, Some(&mu)).is_regular());
        let sign = arf(&mu).unwrap();
        prop_assert_eq!(sign, mu.majority().unwrap());
        let (tag, kind, n) = if sign == Sign::Plus {
            (CaseTag::C1a, Kind::R, 1usize << m)
        } else {
            (CaseTag::C1b, Kind::H, 1usize << (m - 1))
        };
        let rec = ClassificationRecord { case: tag, kind, n, dim: 1, support: t.clone(), payload: Payload::Form { mu: mu.clone() } };
        let a = realize_from_invariants(&rec).unwrap();
        prop_assert_eq!((a.kind(), a.n()), (kind, n));
        prop_assert_eq!(extract_mu(&a).unwrap(), mu.clone());
        let swapped = if tag == CaseTag::C1a {
            ClassificationRecord { case: CaseTag::C1b, kind: Kind::H, n: n / 2, ..rec }
        } else {
            ClassificationRecord { case: CaseTag::C1a, kind: Kind::R, n: n * 2, ..rec }
        };
        prop_assert!(realize_from_invariants(&swapped).is_err());
    }

    #[test]
    fn structure_constants_are_consistent(rec in select(dim1_records())) {
        let a = realize_from_invariants(&rec).unwrap();
        let sc = StructureConstants::compute(&a).unwrap();
        prop_assert!(sc.is_cocycle());
        prop_assert!(sc.beta_is_multiplicative().unwrap());
        let beta = extract_beta(&a).unwrap();
        for &u in sc.support.elements() {
            for &v in sc.support.elements() {
                prop_assert_eq!(sc.beta(u, v).unwrap(), beta.value(u, v));
            }
        }
    }

    #[test]
    fn records_round_trip(i in any::<Index>()) {
        let rec = &RECORDS[i.index(RECORDS.len())];
        let text = format_record(rec);
        prop_assert_eq!(&parse_record(&text).unwrap(), rec);
        let a = realize_from_invariants(rec).unwrap();
        prop_assert!(a.check_division_grading().is_ok());
        prop_assert_eq!(&classify(&a).unwrap(), rec);
    }
}
