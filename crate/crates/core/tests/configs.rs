use negcurve::configs::*;
use negcurve::exactfield::*;
use negcurve::groups::*;

fn sizes<F: Field>(c: &LineConfiguration<F>) -> Vec<(String, u32, usize)> {
    c.classes.iter().map(|k| (k.label.clone(), k.multiplicity, k.points.len())).collect()
}

#[test]
fn klein_exact() {
    let f = klein_number_field();
    let c = build_klein(&f).unwrap();
    assert_eq!(c.lines.len(), 21);
    assert_eq!(sizes(&c), vec![("4".into(), 4, 21), ("3".into(), 3, 28)]);
    assert!(c.audit_incidences());
    let one = f.one();
    assert_eq!(c.class("3").unwrap().representative.0, [one.clone(), one.clone(), one.clone()]);
    let z = f.constant("zeta").unwrap();
    let qx = f.add(&f.pow(&z, 4), &one);
    assert_eq!(c.class("4").unwrap().representative.0[0], qx);
    assert_eq!(c.line_class().self_intersection(), negcurve::divisors::rat(-147));
    let g = klein_group(&f).unwrap();
    let rep = verify_orbit_decomposition(&c, &g);
    assert!(rep.ok, "{rep:?}");
    assert_eq!(rep.classes[0].stabilizer_order, 8);
    assert_eq!(rep.classes[1].stabilizer_order, 6);
}

#[test]
fn wiman_exact() {
    let f = wiman_number_field();
    let c = build_wiman(&f).unwrap();
    assert_eq!(c.lines.len(), 45);
    assert_eq!(sizes(&c), vec![("5".into(), 5, 36), ("4".into(), 4, 45), ("3a".into(), 3, 60), ("3b".into(), 3, 60)]);
    assert!(c.audit_incidences());
    for counts in c.points_per_line() {
        assert_eq!(counts, vec![4, 4, 4, 4]);
    }
    let g = wiman_group(&f, true).unwrap();
    let rep = verify_orbit_decomposition(&c, &g);
    assert!(rep.ok, "{rep:?}");
    let with_x = c.class("4").unwrap();
    assert!(with_x.points.contains(&negcurve::polyring::Point([f.one(), f.zero(), f.zero()])));
}

#[test]
fn char7() {
    let c = build_klein_char7().unwrap();
    assert_eq!(sizes(&c), vec![("4".into(), 4, 21), ("3".into(), 3, 28)]);
    assert!(c.audit_incidences());
}
