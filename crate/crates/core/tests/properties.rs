use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use nestmaps_core::chern::{ctot_quotient, factorization_obstruction, theta, Obstruction, TruncPoly};
use nestmaps_core::ffield::{is_invertible, kernel, rank, rref};
use nestmaps_core::grassmann::{enumerate_subspaces, subspace_rank, Subspace};
use nestmaps_core::nesting::{symplectic_nesting_map, AlternatingForm};
use nestmaps_core::schwz::classify_chern_splits;
use nestmaps_core::{FieldSpec, MatGF, UniPolyQ};

const ORDERS: [u64; 10] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27];

fn field_and_codes(len: usize) -> impl Strategy<Value = (FieldSpec, Vec<u32>)> {
    prop::sample::select(ORDERS.to_vec()).prop_flat_map(move |q| {
        (Just(FieldSpec::of_order(q).unwrap()), prop::collection::vec(0..q as u32, len))
    })
}

fn matrix(f: &FieldSpec, rows: usize, cols: usize, codes: &[u32]) -> MatGF {
    MatGF::new(rows, cols, codes.iter().map(|&c| f.from_code(c).unwrap()).collect()).unwrap()
}

fn small_poly() -> impl Strategy<Value = TruncPoly> {
    prop::collection::vec(((0u32..3, 0u32..3), -3i64..4), 0..6).prop_map(|terms| {
        TruncPoly::from_terms(2, 4, terms.into_iter().map(|((a, b), c)| (vec![a, b], BigInt::from(c))))
    })
}

fn unit_poly() -> impl Strategy<Value = TruncPoly> {
    small_poly().prop_map(|p| {
        let c = p.constant_term();
        p.sub(&TruncPoly::constant(2, 4, c - 1)).unwrap()
    })
}

fn rat_poly() -> impl Strategy<Value = UniPolyQ> {
    prop::collection::vec((-5i64..6, 1i64..4), 0..6)
        .prop_map(|v| UniPolyQ::new(v.into_iter().map(|(n, d)| BigRational::new(n.into(), d.into())).collect()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((f, c) in field_and_codes(3)) {
        let [a, b, d] = [c[0], c[1], c[2]].map(|x| f.from_code(x).unwrap());
        prop_assert_eq!(f.mul(a, f.add(b, d)), f.add(f.mul(a, b), f.mul(a, d)));
        prop_assert_eq!(f.mul(f.mul(a, b), d), f.mul(a, f.mul(b, d)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            prop_assert_eq!(f.pow(a, u64::from(f.q()) - 1), f.one());
        }
    }

    #[test]
    fn rref_is_idempotent_and_kernel_annihilates((f, c) in field_and_codes(12)) {
        let m = matrix(&f, 3, 4, &c);
        let red = rref(&f, &m);
        prop_assert_eq!(rref(&f, &red.matrix).matrix, red.matrix.clone());
        prop_assert!(red.rank <= 3);
        let ker = kernel(&f, &m);
        prop_assert_eq!(ker.rows() + red.rank, 4);
        if ker.rows() > 0 {
            let prod = m.mul(&f, &ker.transpose()).unwrap();
            prop_assert!(prod.entries().iter().all(|e| e.is_zero()));
        }
    }

    #[test]
    fn span_ignores_choice_of_basis((f, c) in field_and_codes(8), (_, g) in field_and_codes(4)) {
        let rows = matrix(&f, 2, 4, &c);
        prop_assume!(rank(&f, &rows) == 2);
        let change = matrix(&f, 2, 2, &g.iter().map(|x| x % f.q()).collect::<Vec<_>>());
        prop_assume!(is_invertible(&f, &change));
        let a = Subspace::span(&f, &rows).unwrap();
        let b = Subspace::span(&f, &change.mul(&f, &rows).unwrap()).unwrap();
        prop_assert_eq!(a.id(), b.id());
        prop_assert_eq!(a.id(), subspace_rank(&f, 4, a.basis(), a.pivots()).unwrap());
    }

    #[test]
    fn trunc_ring_laws(a in small_poly(), b in small_poly(), c in small_poly()) {
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
        prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
    }

    #[test]
    fn trunc_inverse_laws(a in unit_poly(), b in unit_poly()) {
        let ia = a.inverse().unwrap();
        prop_assert!(a.mul(&ia).unwrap().is_one());
        prop_assert_eq!(ia.inverse().unwrap(), a.clone());
        let iab = a.mul(&b).unwrap().inverse().unwrap();
        prop_assert_eq!(iab, ia.mul(&b.inverse().unwrap()).unwrap());
    }

    #[test]
    fn rational_division_reconstructs(a in rat_poly(), d in rat_poly()) {
        prop_assume!(!d.is_zero());
        let (q, r) = a.checked_div_rem(&d).unwrap();
        prop_assert_eq!(&(&q * &d) + &r, a.clone());
        prop_assert!(r.degree() < d.degree());
        let g = a.gcd(&d);
        prop_assert!(g.divides(&d));
        prop_assert!(a.is_zero() || g.divides(&a));
    }

    #[test]
    fn perp_map_for_random_forms(codes in prop::collection::vec(0u32..3, 16)) {
        let f = FieldSpec::of_order(3).unwrap();
        let p = matrix(&f, 4, 4, &codes);
        prop_assume!(is_invertible(&f, &p));
        let j = AlternatingForm::standard(&f, 4).unwrap();
        let gram = p.transpose().mul(&f, &j.gram().mul(&f, &p).unwrap()).unwrap();
        let form = AlternatingForm::new(&f, gram).unwrap();
        prop_assert!(symplectic_nesting_map(&form).unwrap().verified());
    }
}

#[test]
fn subspace_ids_are_table_positions() {
    for q in [2, 3, 4] {
        let f = FieldSpec::of_order(q).unwrap();
        for (n, i) in [(3, 1), (4, 2), (4, 3)] {
            let t = enumerate_subspaces(n, i, &f).unwrap();
            for (pos, s) in t.iter().enumerate() {
                assert_eq!(s.id() as usize, pos);
            }
        }
    }
}

#[test]
fn obstruction_matches_classification() {
    for n in 4..=10 {
        let table = classify_chern_splits(n).unwrap();
        for j in 2..n {
            match factorization_obstruction(n, 1, j).unwrap() {
                Obstruction::ChernLevel { survivors, .. } => {
                    let expected = table.survivors().filter(|e| e.j == j).count();
                    assert_eq!(survivors.len(), expected, "n={n} j={j}");
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }
    for n in 4..=9 {
        for i in 2..n - 1 {
            for j in i + 1..n {
                let ob = factorization_obstruction(n, i, j).unwrap();
                assert!(ob.rules_out(), "n={n} i={i} j={j}");
            }
        }
    }
}

#[test]
fn homogenized_quotient_class_is_theta() {
    for i in 1..=4 {
        for n in i + 1..=i + 6 {
            let d = (n - i) as u32;
            let h = ctot_quotient(i, n).unwrap().homogenize(d);
            assert_eq!(h, theta(d, i + 1, d), "i={i} n={n}");
        }
    }
}
