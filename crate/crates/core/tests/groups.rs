use negcurve::exactfield::*;
use negcurve::groups::*;
use negcurve::linalg::{mat3_apply, mat3_det, mat3_transpose};
use negcurve::polyring::*;
use proptest::prelude::*;

#[test]
fn klein_group_orders() {
    let f = klein_number_field();
    let g = klein_group(&f).unwrap();
    assert_eq!(g.order(), 168);
    for m in klein_generators(&f).unwrap() {
        assert!(f.is_one(&mat3_det(&f, &m)));
    }
    let p = klein_prime_field(4733).unwrap();
    assert_eq!(klein_group(&p).unwrap().order(), 168);
    let r = PolyRing::standard(f.clone());
    let quartic = r.from_int_terms(&[(1, [3, 1, 0]), (1, [0, 3, 1]), (1, [1, 0, 3])]);
    assert!(g.is_invariant(&r, &quartic).unwrap());
}

#[test]
fn wiman_group_orders() {
    let f = wiman_number_field();
    assert_eq!(wiman_group(&f, false).unwrap().order(), 1080);
    let g = wiman_group(&f, true).unwrap();
    assert_eq!(g.order(), 360);
    let p = wiman_prime_field(WIMAN_DEFAULT_PRIME).unwrap();
    assert_eq!(wiman_group(&p, true).unwrap().order(), 360);
}

#[test]
fn mirror_orbits() {
    let f = klein_number_field();
    let g = klein_group(&f).unwrap();
    let i = &klein_generators(&f).unwrap()[2];
    let line = mirror_of_reflection(&f, i).unwrap();
    assert_eq!(g.orbit_of_linear_form(&line).len(), 21);
    let w = wiman_prime_field(WIMAN_DEFAULT_PRIME).unwrap();
    let gw = wiman_group(&w, true).unwrap();
    let r2 = &wiman_generators(&w).unwrap()[1];
    let l = mirror_of_reflection(&w, r2).unwrap();
    assert_eq!(l.0, [1, 0, 0]);
    assert_eq!(gw.orbit_of_linear_form(&l).len(), 45);
}

#[test]
fn orbit_stabilizer_for_the_triple_point() {
    let f = klein_number_field();
    let g = klein_group(&f).unwrap();
    let q = Point::new(&f, [f.one(), f.one(), f.one()]).unwrap();
    let orbit = g.orbit(&q);
    assert_eq!(orbit.len(), 28);
    assert_eq!(g.stabilizer_order(&q), 6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]
    #[test]
    fn gradient_identity(idx in 0usize..168, terms in prop::collection::vec((1i64..50, 0u32..4, 0u32..4), 1..6)) {
        let f = klein_prime_field(4733).unwrap();
        let g = klein_group(&f).unwrap();
        let r = PolyRing::standard(f.clone());
        let poly = r.from_int_terms(&terms.iter().map(|&(c, a, b)| (c, [a, b, 6 - a - b])).collect::<Vec<_>>());
        let m = &g.elements()[idx];
        let lhs = r.gradient(&g.act_on_poly(&r, m, &poly).unwrap());
        let moved: Vec<Poly<u64>> = r.gradient(&poly).iter().map(|d| g.act_on_poly(&r, m, d).unwrap()).collect();
        let t = mat3_transpose(m);
        for i in 0..3 {
            let mut acc = Poly::zero();
            for k in 0..3 {
                acc = r.add(&acc, &r.scale(&moved[k], &t[i][k]));
            }
            prop_assert_eq!(&lhs[i], &acc);
        }
        // point action is compatible with the form action
        let pt = [1u64, 2, 3];
        prop_assert_eq!(r.eval(&g.act_on_poly(&r, m, &poly).unwrap(), &pt), r.eval(&poly, &mat3_apply(&f, m, &pt)));
    }
}
