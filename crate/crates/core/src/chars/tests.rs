use proptest::prelude::*;

use super::*;
use crate::exact::rat;

fn grp(kind: CoxeterType, n: usize) -> CoxeterRealization {
    CoxeterRealization::build(kind, n).unwrap()
}

#[test]
fn series_inverse_of_geometric() {
    let inv = series_inverse(&[Q::one(), -Q::one()], 5);
    assert!(inv.iter().all(|x| x.is_one()));
}

#[test]
fn closed_form_dimension_is_r_to_the_rank() {
    for (kind, n, r) in [(CoxeterType::A, 3, 2), (CoxeterType::A, 4, 5), (CoxeterType::B, 3, 3)] {
        let g = grp(kind, n);
        let l = g.rank();
        let len = l * (r - 1) + 2;
        let s = simple_char_closed_form(&g, r, &WRep::trivial(&g), len);
        assert_eq!(s.value_at_one(0), int((r as i64).pow(l as u32)));
        // symmetric about the middle degree
        let row = &s.coeffs[0];
        let top = l * (r - 1);
        for d in 0..=top {
            assert_eq!(row[d], row[top - d]);
        }
    }
}

#[test]
fn spherical_closed_form_matches_product() {
    let g = grp(CoxeterType::A, 3);
    let s = spherical_closed_form(&g, 4, 12);
    assert_eq!(s.coeffs[0].iter().fold(Q::zero(), |a, b| a + b), int(5));
    assert_eq!(spherical_dimension(&g, 4), int(5));
    assert_eq!(type_a_spherical(3, 4), Some(5));
    assert_eq!(type_a_spherical(3, 2), Some(2));
}

#[test]
fn solomon_small_groups() {
    for (kind, n) in [(CoxeterType::A, 3), (CoxeterType::B, 2), (CoxeterType::I2, 6)] {
        let r = solomon_check(&grp(kind, n), 8);
        assert!(r.passed, "{:?}", r.mismatches);
    }
}

#[test]
fn shephard_todd_and_catalan() {
    for (kind, n) in [(CoxeterType::A, 4), (CoxeterType::B, 3), (CoxeterType::D, 4)] {
        assert!(shephard_todd_check(&grp(kind, n), 6).passed());
    }
    assert!(catalan_check(6, 4).passed());
}

#[test]
fn root_lattice_a2() {
    let g = grp(CoxeterType::A, 3);
    let model = RootLatticeModel::new(&g, 2).unwrap();
    let tr = root_lattice_traces(&g, &model);
    for (cls, t) in g.classes().iter().zip(&tr) {
        assert_eq!(*t, 2u64.pow(g.fix_dimension(cls.representative) as u32));
    }
}

#[test]
fn isotypic_dims_sum_to_total() {
    let g = grp(CoxeterType::A, 3);
    let total: usize = WRep::all_irreducibles(&g)
        .unwrap()
        .iter()
        .map(|t| isotypic_dims(&g, 2, t).unwrap() * t.dim())
        .sum();
    assert_eq!(total, 4);
}

#[test]
fn product_oracle_agrees_with_closed_form() {
    let g = grp(CoxeterType::B, 3);
    for k in 0..3 {
        let len = 2 * k * 3 + 2;
        let a = a1_product_character(&g, k, len).unwrap();
        a.compare(&b_family_character(&g, k, len)).unwrap();
    }
}

#[test]
fn bgg_sum_for_triv_is_closed_form() {
    let g = grp(CoxeterType::A, 3);
    let c = CParameter::constant(&g, rat(5, 3));
    let s = bgg_alternating_sum(&g, &c, 0, 14).unwrap();
    s.compare(&simple_char_closed_form(&g, 5, &WRep::trivial(&g), 14)).unwrap();
}

#[test]
fn compare_detects_a_difference() {
    let a = CharacterSeries::scalar(Q::zero(), vec![Q::one(), Q::one()]);
    let b = CharacterSeries::scalar(Q::zero(), vec![Q::one(), int(2)]);
    assert!(a.compare(&b).is_err());
    let c = CharacterSeries::scalar(Q::one(), vec![Q::one()]);
    assert!(a.compare(&c).is_err());
}

proptest! {
    #[test]
    fn inverse_times_series_is_one(v in prop::collection::vec(-5i64..5, 1..6)) {
        let mut a: Vec<Q> = v.iter().map(|&x| int(x)).collect();
        a[0] = Q::one();
        let inv = series_inverse(&a, 8);
        let p = poly_mul(&a, &inv, 8);
        prop_assert!(p[0].is_one());
        prop_assert!(p[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn combine_with_negation_vanishes(v in prop::collection::vec(-9i64..9, 1..8), off in -4i64..4) {
        let s = CharacterSeries::scalar(int(off), v.iter().map(|&x| int(x)).collect());
        let z = s.combine(&s, -1).unwrap();
        prop_assert!(z.coeffs.iter().flatten().all(|x| x.is_zero()));
    }
}
