use std::sync::OnceLock;

use negcurve::configs::*;
use negcurve::exactfield::*;
use negcurve::groups::*;
use negcurve::invariants::*;
use negcurve::linalg::{kernel, rank};
use negcurve::polyring::{local_expand, Point, PolyRing};

fn wiman_exact() -> &'static (InvariantSet<NumberField>, LineConfiguration<NumberField>) {
    static CELL: OnceLock<(InvariantSet<NumberField>, LineConfiguration<NumberField>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = wiman_number_field();
        (wiman_invariants(&f).unwrap(), build_wiman(&f).unwrap())
    })
}

fn klein_exact() -> &'static (InvariantSet<NumberField>, LineConfiguration<NumberField>) {
    static CELL: OnceLock<(InvariantSet<NumberField>, LineConfiguration<NumberField>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = klein_number_field();
        (klein_invariants(&f).unwrap(), build_klein(&f).unwrap())
    })
}

#[test]
fn klein_fundamental_forms() {
    let f = NumberField::rationals();
    let inv = klein_invariants(&f).unwrap();
    let r = &inv.ring;
    let phi6 = r.from_int_terms(&[(1, [1, 5, 0]), (1, [0, 1, 5]), (1, [5, 0, 1]), (-5, [2, 2, 2])]);
    assert_eq!(inv.poly("Phi6").unwrap(), &phi6);
    assert_eq!(r.hessian(inv.poly("Phi4").unwrap()), r.scale_int(&phi6, -54));
    for form in inv.forms() {
        assert_eq!(r.homogeneous_degree(&form.poly).unwrap(), form.degree);
    }
    let one = f.one();
    let image = inv.quotient_map(&[one.clone(), one.clone(), one]);
    assert_eq!(image, [f.from_i64(3), f.from_i64(-2), f.from_i64(-48)]);
}

#[test]
fn klein_relation_and_rederivation() {
    let inv = klein_invariants(&NumberField::rationals()).unwrap();
    let rep = verify_klein_relation(&inv).unwrap();
    assert!(rep.holds, "{rep:?}");
    assert!(rep.rederived_matches, "{rep:?}");
    let p = klein_invariants(&klein_prime_field(KLEIN_DEFAULT_PRIME).unwrap()).unwrap();
    assert!(verify_klein_relation(&p).unwrap().holds);
}

#[test]
fn klein_forms_are_invariant_and_phi21_is_the_arrangement() {
    let (inv, config) = klein_exact();
    let f = inv.field();
    let g = klein_group(f).unwrap();
    for (name, ok) in inv.invariance_report(&g).unwrap() {
        assert!(ok, "{name} is not invariant");
    }
    let lines = config.line_product(&inv.ring);
    assert!(inv.ring.proportionality(&lines, inv.poly("Phi21").unwrap()).is_some());
    for l in &config.lines {
        let form = inv.ring.linear_form(&l.0);
        let phi21 = inv.poly("Phi21").unwrap();
        // a point on the line other than the pivot chart origin
        let (a, b, c) = (&l.0[0], &l.0[1], &l.0[2]);
        let pt = if f.is_zero(c) { [f.neg(b), a.clone(), f.one()] } else { [f.one(), f.one(), f.neg(&f.div(&f.add(a, b), c).unwrap())] };
        assert!(f.is_zero(&inv.ring.eval(&form, &pt)));
        assert!(f.is_zero(&inv.ring.eval(phi21, &pt)));
    }
}

#[test]
fn klein_psi_vanishing_and_curve() {
    let (inv, config) = klein_exact();
    let f = inv.field();
    let triple = &config.class("3").unwrap().representative;
    for name in ["Psi12", "Psi14"] {
        let e = local_expand(f, inv.poly(name).unwrap(), triple, 3);
        assert_eq!(e.multiplicity(f), Some(2), "{name}");
    }
    let [a, b] = klein_curve_constants(inv, triple).unwrap();
    assert_eq!((a, b), (f.from_i64(2), f.from_i64(2)));
    let lambdas = klein_curve_coefficients(inv, triple).unwrap();
    assert_eq!(lambdas, [f.from_i64(2), f.from_i64(-3), f.one()]);
    let curve = klein_negative_curve(inv, triple).unwrap();
    let g = klein_group(f).unwrap();
    let other = g.act_on_point(&g.generators()[0], triple);
    assert_ne!(&other, triple);
    for p in [triple, &other] {
        assert_eq!(negcurve::invariants::multiplicity_at(inv, &curve, p, 10), Some(8));
    }
    let quad = &config.class("4").unwrap().representative;
    assert_eq!(negcurve::invariants::multiplicity_at(inv, &curve, quad, 10), Some(0));
}

/// The sextic invariant written out with √5 ↦ −δ and i√15 ↦ s.
fn displayed_sextic(f: &NumberField, r: &PolyRing<NumberField>) -> negcurve::polyring::Poly<NfElem> {
    let d = f.constant("delta").unwrap();
    let w = f.constant("omega").unwrap();
    let s = f.constant("s").unwrap();
    let i = |n| f.from_i64(n);
    let q34 = f.div(&i(3), &i(4)).unwrap();
    let c222 = f.mul(&i(3), &f.sub(&i(5), &s));
    let c1 = f.mul(&q34, &f.sub(&f.neg(&f.mul(&i(2), &d)), &f.mul(&f.add(&i(5), &d), &w)));
    let c2 = f.mul(&q34, &f.add(&f.add(&i(5), &d), &f.mul(&f.sub(&i(5), &d), &w)));
    let mut terms = vec![([6, 0, 0], i(1)), ([0, 6, 0], i(1)), ([0, 0, 6], i(1)), ([2, 2, 2], c222)];
    for e in [[4, 2, 0], [0, 4, 2], [2, 0, 4]] {
        terms.push((e, c1.clone()));
    }
    for e in [[4, 0, 2], [2, 4, 0], [0, 2, 4]] {
        terms.push((e, c2.clone()));
    }
    r.from_terms(terms.into_iter().map(|(e, c)| (negcurve::polyring::Monomial(e), c)))
}

#[test]
fn wiman_fundamental_forms() {
    let (inv, _) = wiman_exact();
    let f = inv.field();
    assert_eq!(inv.poly("Phi6").unwrap(), &displayed_sextic(f, &inv.ring));
    for (name, d) in [("Phi12", 12), ("Phi30", 30)] {
        assert!(f.is_one(&inv.ring.coeff(inv.poly(name).unwrap(), [d, 0, 0])));
    }
    assert_eq!(inv.get("Phi45").unwrap().degree, 45);
    assert!(f.is_zero(&inv.ring.coeff(inv.poly("Phi45").unwrap(), [45, 0, 0])));
    let g = wiman_group(f, false).unwrap();
    for (name, ok) in inv.invariance_report(&g).unwrap() {
        assert!(ok, "{name} is not invariant");
    }
}

#[test]
fn wiman_psi24_factors() {
    let (inv, _) = wiman_exact();
    let w = &inv.weighted;
    let prod = w.mul(inv.weighted_form("Upsilon12").unwrap(), inv.weighted_form("Upsilon12bar").unwrap());
    assert_eq!(&prod, inv.weighted_form("Psi24").unwrap());
    assert_eq!(inv.expand(&prod), *inv.poly("Psi24").unwrap());
}

#[test]
fn wiman_psi_incidences_and_curve() {
    let (inv, config) = wiman_exact();
    let f = inv.field();
    let p4 = config.class("4").unwrap().representative.clone();
    assert_eq!(p4, Point([f.zero(), f.zero(), f.one()]));
    let (p3, p3bar) = wiman_triple_representatives(inv, config).unwrap();
    let vanishes = |name: &str, p: &Point<NfElem>| f.is_zero(&inv.ring.eval(inv.poly(name).unwrap(), &p.0));
    assert!(vanishes("Psi12", &p4) && !vanishes("Psi12", &p3) && !vanishes("Psi12", &p3bar));
    assert!(!vanishes("Psi24", &p4) && vanishes("Psi24", &p3) && vanishes("Psi24", &p3bar));
    assert!(vanishes("Psi30", &p4) && vanishes("Psi30", &p3) && vanishes("Psi30", &p3bar));
    // vanishing at a configuration point forces a double point
    for (name, p) in [("Psi12", &p4), ("Psi24", &p3), ("Psi30", &p3bar), ("Upsilon12", &p3)] {
        assert_eq!(local_expand(f, inv.poly(name).unwrap(), p, 3).multiplicity(f), Some(2), "{name}");
    }

    let e = degree0_constant(inv, &[("Psi12", 1), ("Psi24", 1)], &[("Psi6", 1), ("Psi30", 1)], &p4).unwrap();
    assert_eq!(e, f.from_i64(-4));

    let m = wiman_curve_matrix(inv, &p4, &p3, &p3bar).unwrap();
    let s = f.constant("s").unwrap();
    let lin = |a: i64, b: i64| f.add(&f.from_i64(a), &f.mul(&f.from_i64(b), &s));
    let shown = [
        vec![lin(30, 0), lin(10, 2), lin(1, 1), lin(0, 4), lin(0, 0)],
        vec![lin(0, 0), lin(5, 0), lin(5, 1), lin(15, 5), lin(0, 6)],
        vec![lin(30, 0), lin(10, -2), lin(1, -1), lin(0, -4), lin(0, 0)],
        vec![lin(0, 0), lin(5, 0), lin(5, -1), lin(15, -5), lin(0, -6)],
        vec![lin(0, 0), lin(0, 0), lin(1, 0), lin(0, 0), lin(-4, 0)],
    ];
    // Υ₁₂ vanishes at the point whose rows carry −s in the displayed matrix,
    // so the two row pairs appear swapped.
    for (row, target) in m.iter().zip([2, 3, 0, 1, 4].map(|i| &shown[i])) {
        let k = target.iter().position(|c| !f.is_zero(c)).unwrap();
        let c = f.div(&target[k], &row[k]).unwrap();
        let scaled: Vec<NfElem> = row.iter().map(|x| f.mul(x, &c)).collect();
        assert_eq!(&scaled, target);
    }
    assert_eq!(rank(f, m.clone(), 5), 4);
    let ker = kernel(f, m, 5);
    assert_eq!(ker.len(), 1);
    let v = &ker[0];
    let c = f.div(&f.from_i64(4), &v[0]).unwrap();
    let coeffs: Vec<NfElem> = v.iter().map(|x| f.mul(x, &c)).collect();
    let expected: Vec<NfElem> = WIMAN_CURVE_COEFFICIENTS.iter().map(|&(n, _)| f.from_i64(n)).collect();
    assert_eq!(coeffs, expected);

    let lambdas: [NfElem; 5] = std::array::from_fn(|i| expected[i].clone());
    let curve = wiman_negative_curve(inv, &lambdas).unwrap();
    let g = wiman_group(f, true).unwrap();
    let moved = |p: &Point<NfElem>| g.act_on_point(&g.generators()[3], &g.act_on_point(&g.generators()[0], p));
    for (p, m) in [(&p4, 4), (&p3, 8), (&p3bar, 8)] {
        assert_eq!(negcurve::invariants::multiplicity_at(inv, &curve, p, m + 2), Some(m));
        let q = moved(p);
        assert_eq!(negcurve::invariants::multiplicity_at(inv, &curve, &q, m + 2), Some(m));
    }
    let p5 = &config.class("5").unwrap().representative;
    assert_eq!(negcurve::invariants::multiplicity_at(inv, &curve, p5, 3), Some(0));
}

#[test]
fn wiman_phi45_relation_modular() {
    let f = wiman_prime_field(WIMAN_DEFAULT_PRIME).unwrap();
    let inv = wiman_invariants(&f).unwrap();
    let rep = verify_wiman_relation(&inv).unwrap();
    assert!(rep.proportional, "{rep:?}");
}
