use num_traits::{One, Zero};

use super::*;
use crate::chars::simple_char_closed_form;
use crate::exact::{int, rat, Fp};

fn a(n: usize) -> CoxeterRealization {
    CoxeterRealization::build(CoxeterType::A, n).unwrap()
}

fn b(n: usize) -> CoxeterRealization {
    CoxeterRealization::build(CoxeterType::B, n).unwrap()
}

use crate::coxeter::CoxeterType;

#[test]
fn dunkl_kills_degree_zero_and_reproduces_relation() {
    let g = a(3);
    let triv = WRep::trivial(&g);
    let mut m = StandardModule::<Q>::new(&g, &triv, &CParameter::constant(&g, rat(1, 3))).unwrap();
    let ops = m.dunkl(1).unwrap();
    // c = 1/h: every T_y vanishes on degree one
    for t in ops.iter() {
        assert!(t.cols.iter().all(|c| c.is_empty()));
    }
    let v = m.dunkl_apply(&[Q::one(), Q::zero()], &[Q::one()], 0).unwrap();
    assert!(v.iter().all(|x| x.is_zero()));
}

#[test]
fn rank_one_even_power() {
    let g = a(2);
    let triv = WRep::trivial(&g);
    let mut m = StandardModule::<Q>::new(&g, &triv, &CParameter::constant(&g, rat(3, 7))).unwrap();
    // T(x^2) = 2 x
    let out = m.dunkl_apply(&[Q::one()], &[Q::one()], 2).unwrap();
    assert_eq!(out, vec![int(2)]);
}

#[test]
fn relations_hold_in_low_degree() {
    let g = a(3);
    let h = WRep::reflection(&g);
    let mut m = StandardModule::<Q>::new(&g, &h, &CParameter::constant(&g, rat(2, 3))).unwrap();
    for d in 1..=4 {
        let rep = m.check_relations(d).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
    }
    let g = b(2);
    let triv = WRep::trivial(&g);
    let c = CParameter::type_b(&g, rat(1, 2), int(1)).unwrap();
    let mut m = StandardModule::<Q>::new(&g, &triv, &c).unwrap();
    for d in 1..=3 {
        assert!(m.check_relations(d).unwrap().passed());
    }
}

#[test]
fn non_class_constant_parameter_breaks_equivariance() {
    let g = a(3);
    let triv = WRep::trivial(&g);
    let mut values = vec![rat(2, 3); g.reflections().len()];
    values[0] = rat(1, 5);
    let mut m = StandardModule::<Q>::with_reflection_values(&g, &triv, values).unwrap();
    let rep = m.check_relations(2).unwrap();
    assert!(!rep.passed());
    assert!(rep.failures.iter().any(|f| f.contains("equivariance")), "{:?}", rep.failures);
}

#[test]
fn one_over_coxeter_number_is_one_dimensional() {
    let g = a(3);
    let r = simple_graded(&g, &WRep::trivial(&g), &CParameter::constant(&g, rat(1, 3)), &SimpleOptions::with_bound(6))
        .unwrap();
    assert_eq!(r.verdict, Verdict::Finite { total: 1, top_degree: 0 });
}

#[test]
fn a2_at_two_thirds() {
    let g = a(3);
    let triv = WRep::trivial(&g);
    let c = CParameter::constant(&g, rat(2, 3));
    let r = simple_graded(&g, &triv, &c, &SimpleOptions::with_bound(8)).unwrap();
    assert_eq!(&r.graded_dims[..4], &[1, 2, 1, 0]);
    assert_eq!(r.total_dim(), Some(4));
    let closed = simple_char_closed_form(&g, 2, &triv, 6);
    r.traces.as_ref().unwrap().compare(&closed).unwrap();

    let mut m = StandardModule::<Q>::new(&g, &triv, &c).unwrap();
    let s = singular_vectors(&mut m, 2).unwrap();
    assert_eq!(s.dim(), 2);
    let h = WRep::reflection(&g);
    for (cls, t) in g.classes().iter().zip(&s.traces) {
        assert_eq!(*t, h.trace(cls.representative));
    }
    assert_eq!(spherical_graded(&g, &r).unwrap().iter().sum::<usize>(), 2);
    assert!(gorenstein_check(&g, &c, 8).unwrap().passed);
}

#[test]
fn generic_parameter_has_no_singular_vectors() {
    let g = a(3);
    let triv = WRep::trivial(&g);
    let mut m = StandardModule::<Q>::new(&g, &triv, &CParameter::constant(&g, rat(1, 5))).unwrap();
    for d in 1..=4 {
        assert_eq!(singular_vectors(&mut m, d).unwrap().dim(), 0);
    }
}

#[test]
fn a2_at_four_thirds_spherical() {
    let g = a(3);
    let c = CParameter::constant(&g, rat(4, 3));
    let r = simple_graded(&g, &WRep::trivial(&g), &c, &SimpleOptions::default_for(&g, &c)).unwrap();
    assert_eq!(r.total_dim(), Some(16));
    assert_eq!(spherical_graded(&g, &r).unwrap().iter().sum::<usize>(), 5);
}

#[test]
fn a3_at_one_half_is_not_finite() {
    let g = a(4);
    let c = CParameter::constant(&g, rat(1, 2));
    let r = simple_graded(&g, &WRep::trivial(&g), &c, &SimpleOptions::with_bound(12)).unwrap();
    assert_eq!(r.verdict, Verdict::NotFiniteUpTo { bound: 12 });
}

#[test]
fn b2_on_the_first_line() {
    let g = b(2);
    let c = CParameter::type_b(&g, rat(1, 3), rat(7, 6)).unwrap();
    let r = simple_graded(&g, &WRep::trivial(&g), &c, &SimpleOptions::with_bound(10)).unwrap();
    assert_eq!(r.total_dim(), Some(9));
    let closed = crate::chars::b_family_character(&g, 1, 8);
    r.traces.as_ref().unwrap().compare(&closed).unwrap();
    assert!(gorenstein_check(&g, &c, 10).unwrap().passed);
}

#[test]
fn b2_half_one_has_an_extra_quadratic_singular_vector() {
    // c_1 = 1/2 makes x_1^2 - x_2^2 singular for every c_2
    let g = b(2);
    let c = CParameter::type_b(&g, rat(1, 2), int(1)).unwrap();
    let triv = WRep::trivial(&g);
    let mut m = StandardModule::<Q>::new(&g, &triv, &c).unwrap();
    assert_eq!(singular_vectors(&mut m, 2).unwrap().dim(), 1);
    let r = simple_graded(&g, &triv, &c, &SimpleOptions::with_bound(10)).unwrap();
    assert_eq!(&r.graded_dims[..6], &[1, 2, 2, 2, 1, 0]);
    assert!(gorenstein_check(&g, &c, 10).unwrap().passed);
}

#[test]
fn exact_and_modular_runs_agree() {
    let g = a(4);
    let triv = WRep::trivial(&g);
    let c = CParameter::constant(&g, rat(3, 4));
    let mut mq = StandardModule::<Q>::new(&g, &triv, &c).unwrap();
    let mut mp = StandardModule::<Fp>::new(&g, &triv, &c).unwrap();
    let rq = mq.simple_run(12, true).unwrap();
    let rp = mp.simple_run(12, false).unwrap();
    assert_eq!(rq.dims, rp.dims);
    assert_eq!(rq.dims.iter().sum::<usize>(), 27);
}

#[test]
fn rescaled_roots_give_the_same_operators() {
    let g = a(3);
    let factors: Vec<Q> = (0..g.reflections().len()).map(|i| rat(i as i64 + 2, 3)).collect();
    let g2 = g.with_rescaled_roots(&factors).unwrap();
    let h = WRep::reflection(&g);
    let h2 = WRep::reflection(&g2);
    let c = CParameter::constant(&g, rat(-3, 4));
    let mut m1 = StandardModule::<Q>::new(&g, &h, &c).unwrap();
    let mut m2 = StandardModule::<Q>::new(&g2, &h2, &c).unwrap();
    for d in 1..=3 {
        let (t1, t2) = (m1.dunkl(d).unwrap(), m2.dunkl(d).unwrap());
        for (x, y) in t1.iter().zip(t2.iter()) {
            assert_eq!(x.to_dense(), y.to_dense());
        }
    }
}

#[test]
fn sign_twist_swaps_parameter_sign() {
    for (n, c) in [(3, rat(2, 3)), (3, rat(-2, 3)), (4, rat(3, 4)), (4, rat(-3, 4))] {
        let g = a(n);
        let triv = WRep::trivial(&g);
        let sign = WRep::sign(&g);
        let opts = SimpleOptions::with_bound(10);
        let cp = CParameter::constant(&g, c.clone());
        let l1 = simple_graded(&g, &triv, &cp, &opts).unwrap();
        let l2 = simple_graded(&g, &sign, &cp.twisted(&[-1]), &opts).unwrap();
        assert_eq!(l1.graded_dims, l2.graded_dims, "n={n} c={c}");
    }
}

#[test]
fn one_dimensional_criterion() {
    let g = a(3);
    let r = onedim_exists(&g, &CParameter::constant(&g, rat(1, 3))).unwrap();
    assert!(r.equation && r.relations_hold);
    let r = onedim_exists(&g, &CParameter::constant(&g, rat(1, 2))).unwrap();
    assert!(!r.equation && !r.relations_hold);
    let g = b(2);
    let r = onedim_exists(&g, &CParameter::type_b(&g, rat(1, 4), rat(1, 4)).unwrap()).unwrap();
    assert!(r.equation && r.relations_hold);
    let r = onedim_exists(&g, &CParameter::type_b(&g, rat(1, 3), rat(1, 6)).unwrap()).unwrap();
    assert!(r.equation && r.relations_hold);
}

#[test]
fn n_module_b2_first_line() {
    let g = b(2);
    for u in [Q::zero(), rat(1, 3), int(2)] {
        let chk = check_n_module(&g, 1, &u).unwrap();
        assert_eq!(chk.module.total_dim(), 9, "u={u}");
        chk.charfor.clone().unwrap();
        if let Some(p) = chk.product_oracle {
            p.unwrap();
        }
    }
}

#[test]
fn n_module_k0_is_trivial() {
    let g = b(2);
    let chk = check_n_module(&g, 0, &rat(1, 5)).unwrap();
    assert_eq!(chk.module.total_dim(), 1);
    chk.charfor.unwrap();
}

#[test]
fn n_module_at_a_special_point_is_a_limit() {
    let g = b(2);
    let chk = check_n_module(&g, 1, &rat(1, 2)).unwrap();
    assert!(chk.module.limit_order > 0);
    assert_eq!(chk.module.graded_dims, vec![1, 2, 3, 2, 1, 0]);
    chk.charfor.unwrap();
}

#[test]
fn n_module_requires_type_b() {
    assert!(n_module_on_b_line(&a(3), 1, &Q::zero()).is_err());
}

#[test]
fn d3_family_matches_a3() {
    let chk = d_family_check(3, 1).unwrap();
    assert!(chk.coprime);
    assert!(chk.passed(), "{chk:?}");
    assert_eq!(chk.graded_dims.iter().sum::<usize>(), 27);
}
