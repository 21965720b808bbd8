use negcurve::configs::*;
use negcurve::divisors::*;
use negcurve::exactfield::*;
use negcurve::invariants::*;
use negcurve::series::SeriesEngine;
use proptest::prelude::*;

#[test]
fn self_intersections() {
    let k = IntersectionForm::klein();
    let w = IntersectionForm::wiman();
    assert_eq!(DivisorClass::int(&k, 21, &[4, 3]).self_intersection(), rat(-147));
    assert_eq!(DivisorClass::int(&k, 42, &[0, 8]).self_intersection(), rat(-28));
    assert_eq!(DivisorClass::int(&w, 90, &[0, 4, 8]).self_intersection(), rat(-300));
    let d = DivisorClass::int(&w, 36, &[1, 2, 3]);
    assert_eq!(d.intersect(&DivisorClass::int(&w, 45, &[5, 4, 3])).unwrap(), rat(0));
    assert_eq!(d.self_intersection(), rat(0));
    assert_eq!(DivisorClass::int(&k, 1, &[0, 0]).intersect(&DivisorClass::int(&w, 1, &[0, 0, 0])), Err(DivisorError::FormMismatch));
}

#[test]
fn divisor_identities() {
    let k = IntersectionForm::klein();
    let a = DivisorClass::int(&k, 21, &[4, 3]);
    let b = DivisorClass::int(&k, 42, &[0, 8]);
    let d = klein_dk(&ratio(16, 7));
    assert!(verify_divisor_identity(&[(rat(8), &a), (rat(7), &b)], &[(rat(7), &d)]).unwrap());
    assert!(!verify_divisor_identity(&[(rat(8), &a), (rat(6), &b)], &[(rat(7), &d)]).unwrap());
    assert!(verify_divisor_identity(&[(rat(1), &a)], &[(rat(1), &a)]).unwrap());

    let w = IntersectionForm::wiman();
    let aw = DivisorClass::int(&w, 45, &[5, 4, 3]);
    let bw = DivisorClass::int(&w, 90, &[0, 4, 8]);
    let dw = DivisorClass::int(&w, 36, &[1, 2, 3]);
    assert!(verify_divisor_identity(&[(rat(2), &aw), (rat(3), &bw)], &[(rat(10), &dw)]).unwrap());

    let limit = DivisorClass::int(&k, 28, &[2, 5]);
    assert_eq!(limit.intersect(&a).unwrap(), rat(0));
    for n in 1..20 {
        assert!(klein_dk(&ratio(n, 3)).intersect(&a).unwrap() > rat(0));
    }
}

#[test]
fn binomial_identities() {
    assert!(binomial_identity(&[(1, 28, 4), (-21, 2, 1), (-28, 5, 1)], &[6, 7]).holds);
    assert!(binomial_identity(&[(1, 36, 8), (-36, 1, 1), (-45, 2, 1), (-120, 3, 1)], &[28, 27]).holds);
    assert!(!binomial_identity(&[(1, 28, 4), (-21, 2, 1), (-28, 5, 1)], &[6, 8]).holds);
    assert_eq!(PolyInK::binomial2(1, 0), PolyInK::new(vec![rat(0), ratio(-1, 2), ratio(1, 2)]));
}

#[test]
fn threshold_matches_closed_form() {
    let k = IntersectionForm::klein();
    let a = DivisorClass::int(&k, 21, &[4, 3]);
    for n in 1..30 {
        let kk = ratio(n, 7);
        let expected = (rat(91) * &kk + rat(24)) / (rat(14) * &kk + rat(4));
        assert_eq!(alpha_hat_threshold(&klein_dk(&kk), &a), expected);
    }
}

fn klein_search(d_max: u32) -> NegSearchReport {
    let f = klein_prime_field(KLEIN_DEFAULT_PRIME).unwrap();
    let inv = klein_invariants(&f).unwrap();
    let config = build_klein(&f).unwrap();
    let mut eng = SeriesEngine::new(&inv, &config);
    negative_curve_search(&mut eng, &SearchOptions::new(d_max), &mut |_| {}).unwrap()
}

fn ledger_strings(r: &NegSearchReport) -> Vec<String> {
    r.ledger.iter().map(|c| c.class.clone()).collect()
}

#[test]
fn klein_search_small() {
    let r = klein_search(2);
    assert_eq!(ledger_strings(&r), ["21H - 4E4 - 3E3"]);
    let r = klein_search(60);
    assert_eq!(ledger_strings(&r), ["21H - 4E4 - 3E3", "18H - 4E4", "42H - 8E3"]);
    let form = IntersectionForm::klein();
    let classes = r.ledger_classes(&form);
    for (i, c) in classes.iter().enumerate() {
        assert!(c.self_intersection() < rat(0));
        for earlier in &classes[..i] {
            assert!(c.intersect(earlier).unwrap() >= rat(0));
        }
    }
}

#[test]
fn klein_search_to_200_and_bounds() {
    let r = klein_search(200);
    assert_eq!(ledger_strings(&r), ["21H - 4E4 - 3E3", "18H - 4E4", "42H - 8E3", "144H - 4E4 - 27E3"]);
    let ledger = r.ledger_classes(&IntersectionForm::klein());
    let rep = klein_waldschmidt(&ledger, 200, true);
    assert!(rep.identities.iter().all(|i| i.holds), "{:?}", rep.identities);
    assert_eq!(rep.lower, Some(ratio(661, 102)));
    assert_eq!(rep.upper, ratio(13, 2));
    assert_eq!(rep.lower_bounds[0].k, Some(rat(7)));
    assert!(klein_ledger_bound(8, &ledger, 200).is_err());
}

#[test]
fn klein_bound_from_curve_only() {
    let rep = klein_waldschmidt(&[], 0, true);
    assert!(rep.identities.iter().all(|i| i.holds));
    assert_eq!(rep.lower, Some(ratio(58, 9)));
    assert_eq!(rep.upper, ratio(13, 2));
    let none = klein_waldschmidt(&[], 0, false);
    assert_eq!(none.lower, None);
}

#[test]
fn wiman_exact_constant() {
    let rep = wiman_waldschmidt(true);
    assert!(rep.identities.iter().all(|i| i.holds));
    assert_eq!(rep.lower, Some(ratio(27, 2)));
    assert_eq!(rep.upper, ratio(27, 2));
    assert!(rep.exact);
    assert!(!wiman_waldschmidt(false).exact);
}

fn class_strategy() -> impl Strategy<Value = DivisorClass> {
    (-50i64..50, -20i64..20, -20i64..20).prop_map(|(d, a, b)| DivisorClass::int(&IntersectionForm::klein(), d, &[a, b]))
}

proptest! {
    #[test]
    fn intersection_is_symmetric_and_bilinear(a in class_strategy(), b in class_strategy(), c in class_strategy(), s in -9i64..9) {
        prop_assert_eq!(a.intersect(&b).unwrap(), b.intersect(&a).unwrap());
        let lhs = a.scale(&rat(s)).add(&b).unwrap().intersect(&c).unwrap();
        prop_assert_eq!(lhs, rat(s) * a.intersect(&c).unwrap() + b.intersect(&c).unwrap());
    }
}
