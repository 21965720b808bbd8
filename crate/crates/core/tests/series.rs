use std::sync::OnceLock;

use negcurve::configs::*;
use negcurve::exactfield::*;
use negcurve::invariants::*;
use negcurve::series::*;
use rand::{Rng, SeedableRng};

/// Coefficient of t^m in t / ((1−t)(1−t²)(1−t^n)).
fn cond_by_series(n: u32, m: u32) -> usize {
    let len = m as usize + 1;
    let mut c = vec![0usize; len];
    if len > 1 {
        c[1] = 1;
    }
    for step in [1usize, 2, n as usize] {
        for k in step..len {
            c[k] += c[k - step];
        }
    }
    c[m as usize]
}

#[test]
fn cond_table_and_generating_function() {
    let table: [[usize; 3]; 8] = [[1, 1, 1], [1, 1, 1], [2, 2, 2], [3, 2, 2], [4, 4, 3], [5, 4, 4], [7, 6, 5], [8, 6, 6]];
    for (i, row) in table.iter().enumerate() {
        let m = i as u32 + 1;
        assert_eq!([cond(3, m), cond(4, m), cond(5, m)], *row, "m = {m}");
    }
    for n in 3..=5 {
        assert_eq!(cond(n, 0), 0);
        for m in 0..60 {
            assert_eq!(cond(n, m), cond_by_series(n, m), "n = {n}, m = {m}");
        }
    }
}

fn klein_modp() -> &'static (InvariantSet<PrimeField>, LineConfiguration<PrimeField>) {
    static CELL: OnceLock<(InvariantSet<PrimeField>, LineConfiguration<PrimeField>)> = OnceLock::new();
    CELL.get_or_init(|| {
        let f = klein_prime_field(KLEIN_DEFAULT_PRIME).unwrap();
        (klein_invariants(&f).unwrap(), build_klein(&f).unwrap())
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
fn klein_exact_series() {
    let (inv, config) = klein_exact();
    let mut eng = SeriesEngine::new(inv, config);
    assert_eq!(eng.dim_t(18), 3);
    assert_eq!(eng.dim_t(42), 9);
    assert_eq!(eng.dimension(&SeriesSpec::klein(21, 0, 0)).unwrap(), 0);

    let s18 = eng.basis(&SeriesSpec::klein(18, 4, 0)).unwrap();
    assert_eq!((s18.dim(), s18.edim), (1, 1));
    eng.verify_basis(&s18).unwrap();
    let quad = &config.class("4").unwrap().representative;
    assert_eq!(multiplicity_at(inv, &s18.basis[0], quad, 6), Some(4));

    let s42 = eng.basis(&SeriesSpec::klein(42, 0, 8)).unwrap();
    assert_eq!((s42.dim(), s42.edim), (1, 1));
    eng.verify_basis(&s42).unwrap();
    let triple = &config.class("3").unwrap().representative;
    let curve = klein_negative_curve(inv, triple).unwrap();
    assert!(inv.weighted.proportionality(&curve, &s42.basis[0]).is_some());

    let twice_lines = eng.check_expected_dim(&SeriesSpec::klein(42, 8, 6)).unwrap();
    assert_eq!((twice_lines.dim, twice_lines.edim), (1, 0));
    let phi21_sq = inv.ring.pow(inv.poly("Phi21").unwrap(), 2);
    let b = eng.basis(&SeriesSpec::klein(42, 8, 6)).unwrap();
    assert!(inv.ring.proportionality(&inv.expand(&b.basis[0]), &phi21_sq).is_some());

    let full = eng.basis(&SeriesSpec::klein(30, 0, 0)).unwrap();
    assert_eq!(full.dim(), eng.dim_t(30));
}

#[test]
fn wiman_series_beats_expected_dimension() {
    let f = wiman_prime_field(WIMAN_DEFAULT_PRIME).unwrap();
    let inv = wiman_invariants(&f).unwrap();
    let config = build_wiman(&f).unwrap();
    let mut eng = SeriesEngine::new(&inv, &config);
    assert_eq!(eng.dim_t(90), 18);
    let spec = SeriesSpec::wiman(90, 0, 4, 8);
    assert_eq!(eng.edim(&spec).unwrap(), 0);
    let rep = eng.check_expected_dim(&spec).unwrap();
    assert_eq!((rep.dim, rep.edim, rep.equal), (1, 0, false));
    let b = eng.basis(&spec).unwrap();
    eng.verify_basis(&b).unwrap();
    let lambdas = WIMAN_CURVE_COEFFICIENTS.map(|(n, _)| f.from_i64(n));
    let curve = wiman_negative_curve(&inv, &lambdas).unwrap();
    assert!(inv.weighted.proportionality(&curve, &b.basis[0]).is_some());
}

#[test]
fn wiman_exact_series() {
    let f = wiman_number_field();
    let inv = wiman_invariants(&f).unwrap();
    let config = build_wiman(&f).unwrap();
    let mut eng = SeriesEngine::new(&inv, &config);
    let b = eng.basis(&SeriesSpec::wiman(90, 0, 4, 8)).unwrap();
    assert_eq!((b.dim(), b.edim), (1, 0));
    eng.verify_basis(&b).unwrap();
}

#[test]
fn double_point_parity() {
    let (inv, config) = klein_modp();
    let mut eng = SeriesEngine::new(inv, config);
    for d in [12, 18, 24, 30, 36] {
        for (m4, m3) in [(1, 0), (0, 1), (1, 1)] {
            let a = eng.dimension(&SeriesSpec::klein(d, m4, m3)).unwrap();
            let b = eng.dimension(&SeriesSpec::klein(d, 2 * m4, 2 * m3)).unwrap();
            assert_eq!(a, b, "d = {d}, m = ({m4}, {m3})");
        }
    }
}

#[test]
fn dimension_at_least_expected_on_random_specs() {
    let (inv, config) = klein_modp();
    let mut eng = SeriesEngine::new(inv, config);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    for _ in 0..50 {
        let d = 2 * rng.gen_range(0..=30);
        let spec = SeriesSpec::klein(d, rng.gen_range(0..=d / 4 + 1), rng.gen_range(0..=d / 4 + 1));
        let rep = eng.check_expected_dim(&spec).unwrap();
        assert!(rep.dim >= rep.edim, "{rep:?}");
    }
}

#[test]
fn exact_and_modular_dimensions_agree() {
    let (ie, ce) = klein_exact();
    let (ip, cp) = klein_modp();
    let mut exact = SeriesEngine::new(ie, ce);
    let mut modp = SeriesEngine::new(ip, cp);
    for spec in [
        SeriesSpec::klein(18, 4, 0),
        SeriesSpec::klein(42, 0, 8),
        SeriesSpec::klein(42, 8, 6),
        SeriesSpec::klein(36, 4, 6),
        SeriesSpec::klein(28, 2, 5),
    ] {
        assert_eq!(exact.dimension(&spec).unwrap(), modp.dimension(&spec).unwrap(), "{spec:?}");
    }
}
