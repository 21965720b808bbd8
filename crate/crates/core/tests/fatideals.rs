use std::sync::OnceLock;

use negcurve::configs::*;
use negcurve::divisors::{ratio, wiman_waldschmidt};
use negcurve::exactfield::*;
use negcurve::fatideals::*;
use negcurve::groups::*;
use negcurve::invariants::*;
use negcurve::polyring::PolyRing;
use proptest::prelude::*;

struct Data<F: Field> {
    ring: PolyRing<F>,
    config: LineConfiguration<F>,
    points: PointSet<F>,
    gens: GeneratorSet<F>,
}

fn data<F: Field>(config: LineConfiguration<F>, through: u32) -> Data<F> {
    let ring = PolyRing::standard(config.field.clone());
    let points = PointSet::from_config(&config);
    let gens = minimal_generators(&ring, &points, through);
    Data { ring, config, points, gens }
}

fn klein_modp() -> &'static (Data<PrimeField>, InvariantSet<PrimeField>) {
    static CELL: OnceLock<(Data<PrimeField>, InvariantSet<PrimeField>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = klein_prime_field(KLEIN_DEFAULT_PRIME).unwrap();
        (data(build_klein(&f).unwrap(), 13), klein_invariants(&f).unwrap())
    })
}

fn char7() -> &'static Data<PrimeField> {
    static CELL: OnceLock<Data<PrimeField>> = OnceLock::new();
    CELL.get_or_init(|| data(build_klein_char7().unwrap(), 20))
}

#[test]
fn klein_generators_are_jacobian_minors() {
    let (d, inv) = klein_modp();
    assert_eq!(d.points.len(), 49);
    assert_eq!(symbolic_piece(&d.points, 1, 8).dim(), 3);
    assert_eq!(symbolic_piece(&d.points, 0, 7).dim(), 36);
    assert_eq!(d.gens.count_by_degree(), [(8, 3)]);
    assert_eq!((d.gens.alpha(), d.gens.omega(), d.gens.regularity), (Some(8), Some(8), Some(12)));
    let minors = jacobian_minor_generators(&d.ring, inv.poly("Phi4").unwrap(), inv.poly("Phi6").unwrap());
    let span = span_piece(&d.ring, 8, &minors).unwrap();
    let i8 = symbolic_piece(&d.points, 1, 8);
    assert!(span.dim() == 3 && span.contains_piece(&i8) && i8.contains_piece(&span));

    // the minor span is carried to itself by the group
    let group = klein_group(&d.config.field).unwrap();
    for g in group.generators() {
        for m in &minors {
            assert!(membership(&d.ring, &group.act_on_poly(&d.ring, g, m).unwrap(), &span).unwrap());
        }
    }
}

#[test]
fn minors_of_linear_forms() {
    let ring = PolyRing::standard(PrimeField::new(101).unwrap());
    let [a, b, c] = jacobian_minor_generators(&ring, &ring.var(0), &ring.var(1));
    assert!(a.is_zero() && b.is_zero());
    assert_eq!(c, ring.one());
}

#[test]
fn klein_containment_failure() {
    let (d, inv) = klein_modp();
    let phi21 = inv.poly("Phi21").unwrap();
    assert!(vanishes_at_all(&d.points, phi21, 3));
    let s3 = symbolic_piece(&d.points, 3, 21);
    assert!(membership(&d.ring, phi21, &s3).unwrap());
    assert_eq!(power_piece(&d.ring, &d.gens, 2, 16).unwrap().dim(), 6);
    let p2 = power_piece(&d.ring, &d.gens, 2, 21).unwrap();
    assert_eq!(p2.dim(), 105);
    assert!(!membership(&d.ring, phi21, &p2).unwrap());
    assert!(membership(&d.ring, &negcurve::polyring::Poly::zero(), &p2).unwrap());
    assert!(matches!(membership(&d.ring, &inv.poly("Phi4").unwrap().clone(), &p2), Err(FatIdealError::DegreeMismatch { .. })));
    let i21 = power_piece(&d.ring, &d.gens, 1, 21).unwrap();
    assert_eq!(i21.dim(), symbolic_piece(&d.points, 1, 21).dim());
    let rep = containment_report(&d.ring, &d.points, &d.gens, 3, 2, 1..=21, None).unwrap();
    assert_eq!(rep.outcome, ContainmentOutcome::NotContained { degree: 21 });
    let partial = minimal_generators(&d.ring, &d.points, 9);
    assert_eq!(partial.regularity, None);
    assert!(matches!(power_piece(&d.ring, &partial, 2, 30), Err(FatIdealError::IncompleteGenerators { needed: 22, have: 9 })));
}

#[test]
fn klein_exact_containment_failure() {
    let f = klein_number_field();
    let inv = klein_invariants(&f).unwrap();
    let d = data(build_klein(&f).unwrap(), 13);
    assert_eq!(d.gens.count_by_degree(), [(8, 3)]);
    let phi21 = inv.poly("Phi21").unwrap();
    assert!(vanishes_at_all(&d.points, phi21, 3));
    assert!(!membership(&d.ring, phi21, &power_piece(&d.ring, &d.gens, 2, 21).unwrap()).unwrap());
}

#[test]
fn wiman_generators_and_failure() {
    let f = wiman_prime_field(WIMAN_DEFAULT_PRIME).unwrap();
    let inv = wiman_invariants(&f).unwrap();
    let d = data(build_wiman(&f).unwrap(), 29);
    assert_eq!(d.points.len(), 201);
    assert_eq!(d.gens.count_by_degree(), [(16, 3)]);
    assert_eq!(d.gens.regularity, Some(26));
    let minors = jacobian_minor_generators(&d.ring, inv.poly("Phi6").unwrap(), inv.poly("Phi12").unwrap());
    let span = span_piece(&d.ring, 16, &minors).unwrap();
    let i16 = symbolic_piece(&d.points, 1, 16);
    assert!(span.dim() == 3 && span.contains_piece(&i16));
    let phi45 = inv.poly("Phi45").unwrap();
    assert!(vanishes_at_all(&d.points, phi45, 3));
    assert!(!membership(&d.ring, phi45, &power_piece(&d.ring, &d.gens, 2, 45).unwrap()).unwrap());
    let fail = containment_report(&d.ring, &d.points, &d.gens, 3, 2, 45..=45, None).unwrap();
    assert_eq!(fail.outcome, ContainmentOutcome::NotContained { degree: 45 });
    let w = wiman_waldschmidt(true);
    let wiman = resurgence_report(ResurgenceInput {
        name: "wiman".into(),
        alpha: Sourced::computed(16),
        omega: Sourced::computed(16),
        alpha_hat_lower: Sourced::computed(w.lower.clone().unwrap()),
        alpha_hat_upper: Sourced::computed(w.upper.clone()),
        reg: RegularityBound::wiman(),
        target: ratio(3, 2),
        witness: Some(&fail),
        residual: None,
    })
    .unwrap();
    assert_eq!((wiman.rho_hat_lower.as_str(), wiman.rho_hat_upper.as_str()), ("32/27", "32/27"));
    assert_eq!(wiman.inequality_from_r, Some(2));
    assert_eq!(wiman.rho.as_deref(), Some("3/2"));
}

#[test]
fn char7_generators_and_alpha() {
    let d = char7();
    assert_eq!(d.points.len(), 49);
    assert_eq!(d.gens.count_by_degree(), [(8, 3), (9, 1)]);
    assert_eq!((d.gens.alpha(), d.gens.omega(), d.gens.regularity), (Some(8), Some(9), Some(12)));
    assert_eq!(alpha_symbolic(&d.points, 1, 1, 120).unwrap().alpha, 8);
    let a8 = alpha_symbolic(&d.points, 8, 40, 120).unwrap();
    assert_eq!(a8.alpha, 50);
    assert!(a8.checked.contains(&(49, 0)));
    assert!(matches!(alpha_symbolic(&d.points, 8, 1, 30), Err(FatIdealError::AlphaCapExceeded { .. })));
    let audit = star_bezout_audit(&d.config);
    assert!(audit.holds, "{audit:?}");
}

#[test]
fn char7_containment_and_resurgence() {
    let d = char7();
    let f = d.config.line_product(&d.ring);
    assert!(membership(&d.ring, &f, &symbolic_piece(&d.points, 3, 21)).unwrap());
    let fail32 = containment_report(&d.ring, &d.points, &d.gens, 3, 2, 1..=30, None).unwrap();
    assert_eq!(fail32.outcome, ContainmentOutcome::NotContained { degree: 21 });
    let fail23 = containment_report(&d.ring, &d.points, &d.gens, 2, 3, 1..=30, None).unwrap();
    assert!(matches!(fail23.outcome, ContainmentOutcome::NotContained { .. }));

    let (ring, points, gens) = (&d.ring, &d.points, &d.gens);
    let mut residual = |m: u32, r: u32, degrees: std::ops::RangeInclusive<u32>| containment_report(ring, points, gens, m, r, degrees, None);
    let rep = resurgence_report(ResurgenceInput {
        name: "klein-char7".into(),
        alpha: Sourced::computed(8),
        omega: Sourced::computed(9),
        alpha_hat_lower: Sourced::computed(ratio(25, 4)),
        alpha_hat_upper: Sourced::computed(ratio(50, 8)),
        reg: RegularityBound::klein_char7(),
        target: ratio(3, 2),
        witness: Some(&fail32),
        residual: Some(&mut residual),
    })
    .unwrap();
    assert_eq!((rep.rho_hat_lower.as_str(), rep.rho_hat_upper.as_str()), ("32/25", "36/25"));
    assert_eq!(rep.inequality_from_r, Some(8));
    assert_eq!(rep.residual_checks.iter().map(|c| (c.m, c.r)).collect::<Vec<_>>(), [(5, 3), (8, 5)]);
    assert_eq!(rep.rho.as_deref(), Some("3/2"));
}

#[test]
fn char0_resurgence_bounds() {
    let (d, _) = klein_modp();
    let fail = containment_report(&d.ring, &d.points, &d.gens, 3, 2, 21..=21, None).unwrap();
    let klein = resurgence_report(ResurgenceInput {
        name: "klein".into(),
        alpha: Sourced::computed(8),
        omega: Sourced::computed(8),
        alpha_hat_lower: Sourced::computed(ratio(661, 102)),
        alpha_hat_upper: Sourced::computed(ratio(13, 2)),
        reg: RegularityBound::klein(),
        target: ratio(3, 2),
        witness: Some(&fail),
        residual: None,
    })
    .unwrap();
    assert_eq!((klein.rho_hat_lower.as_str(), klein.rho_hat_upper.as_str()), ("16/13", "816/661"));
    assert_eq!(klein.rho.as_deref(), Some("3/2"));
}

#[test]
fn orbit_count_audits() {
    assert_eq!(nonneg_solutions(&[28, 21, 24, 56, 42, 84, 168], 49), [vec![1, 1, 0, 0, 0, 0, 0]]);
    assert_eq!(nonneg_solutions(&[60, 45, 36, 72, 90, 180, 360], 201), [vec![2, 1, 1, 0, 0, 0, 0]]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn symbolic_pieces_decrease_in_m(m in 0u32..4, d in 1u32..22) {
        let d7 = char7();
        let lower = symbolic_piece(&d7.points, m + 1, d);
        let upper = symbolic_piece(&d7.points, m, d);
        prop_assert!(upper.contains_piece(&lower));
    }

    #[test]
    fn powers_lie_in_symbolic_powers(r in 1u32..3, d in 8u32..22) {
        let (k, _) = klein_modp();
        let pow = power_piece(&k.ring, &k.gens, r, d).unwrap();
        prop_assert!(symbolic_piece(&k.points, r, d).contains_piece(&pow));
    }
}
