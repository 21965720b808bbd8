use negcurve::exactfield::{Field, PrimeField};
use negcurve::linalg::Mat3;
use negcurve::polyring::*;
use proptest::prelude::*;

fn ring() -> PolyRing<PrimeField> {
    PolyRing::standard(PrimeField::new(101).unwrap())
}

/// Cofactor expansion along the first row.
fn laplace(r: &PolyRing<PrimeField>, m: &[Vec<Poly<u64>>]) -> Poly<u64> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero();
    for j in 0..n {
        let minor: Vec<Vec<Poly<u64>>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect()).collect();
        let t = r.mul(&m[0][j], &laplace(r, &minor));
        acc = if j % 2 == 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
    }
    acc
}

fn poly_strategy(max_terms: usize, deg: u32) -> impl Strategy<Value = Vec<(i64, [u32; 3])>> {
    prop::collection::vec(
        (-5i64..5, 0..=deg)
            .prop_flat_map(move |(c, a)| (Just(c), Just(a), 0..=(deg - a)))
            .prop_map(move |(c, a, b)| (c, [a, b, deg - a - b])),
        1..max_terms,
    )
}

#[test]
fn klein_quartic_text() {
    let r = ring();
    let f = r.from_int_terms(&[(1, [3, 1, 0]), (1, [0, 3, 1]), (1, [1, 0, 3])]);
    assert_eq!(r.format(&f), "x^3*y + x*z^3 + y^3*z");
    assert_eq!(r.homogeneous_degree(&f).unwrap(), 4);
}

#[test]
fn weighted_basis_matches_generating_function() {
    // Coefficient of t^d in 1/((1-t^4)(1-t^6)(1-t^14)) by series division.
    let n = 121;
    let mut series = vec![0u64; n];
    series[0] = 1;
    for w in [4usize, 6, 14] {
        for d in w..n {
            series[d] += series[d - w];
        }
    }
    for d in 0..n {
        assert_eq!(weighted_basis([4, 6, 14], d as u32).len() as u64, series[d], "degree {d}");
    }
    let b = weighted_basis([4, 6, 14], 18);
    assert_eq!(b, vec![Monomial([3, 1, 0]), Monomial([1, 0, 1]), Monomial([0, 3, 0])]);
    assert_eq!(weighted_basis([4, 6, 14], 42).len(), 9);
    assert_eq!(weighted_basis([6, 12, 30], 90).len(), 18);
}

#[test]
fn hessian_of_a_cubic() {
    let r = ring();
    // H(x^3 + y^3 + z^3) = 216 xyz
    let f = r.from_int_terms(&[(1, [3, 0, 0]), (1, [0, 3, 0]), (1, [0, 0, 3])]);
    assert_eq!(r.hessian(&f), r.from_int_terms(&[(216, [1, 1, 1])]));
    let m = r.hessian_matrix(&f);
    assert_eq!(laplace(&r, &m), r.hessian(&f));
}

#[test]
fn local_expansion_of_a_line_pencil() {
    let f = PrimeField::new(101).unwrap();
    let r = PolyRing::standard(f.clone());
    // (x - z)^2 (y - 2z) vanishes to order 3 at [1:2:1]
    let a = r.from_int_terms(&[(1, [1, 0, 0]), (-1, [0, 0, 1])]);
    let b = r.from_int_terms(&[(1, [0, 1, 0]), (-2, [0, 0, 1])]);
    let g = r.mul(&r.mul(&a, &a), &b);
    let p = Point::new(&f, [1, 2, 1]).unwrap();
    let e = local_expand(&f, &g, &p, 5);
    assert_eq!(e.multiplicity(&f), Some(3));
    assert_eq!(*e.get(2, 1), 1);
    assert!(e.vanishes_to_order(&f, 3));
}

proptest! {
    #[test]
    fn leibniz_matches_laplace(entries in prop::collection::vec(poly_strategy(4, 2), 16)) {
        let r = ring();
        let polys: Vec<Poly<u64>> = entries.iter().map(|t| r.from_int_terms(t)).collect();
        let m: Vec<Vec<Poly<u64>>> = polys.chunks(4).map(|c| c.to_vec()).collect();
        prop_assert_eq!(r.determinant(&m), laplace(&r, &m));
    }

    #[test]
    fn elementary_substitution_matches_naive(t in poly_strategy(8, 5), m in prop::collection::vec(0u64..101, 9)) {
        let f = PrimeField::new(101).unwrap();
        let r = PolyRing::standard(f.clone());
        let mat: Mat3<u64> = [[m[0], m[1], m[2]], [m[3], m[4], m[5]], [m[6], m[7], m[8]]];
        let p = r.from_int_terms(&t);
        match r.linear_substitution(&p, &mat) {
            Ok(q) => prop_assert_eq!(q, r.linear_substitution_naive(&p, &mat)),
            Err(PolyError::SingularMatrix) => {
                prop_assert_eq!(negcurve::linalg::mat3_det(&f, &mat), 0);
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn local_expansion_matches_translation(t in poly_strategy(8, 6), a in 0u64..101, b in 0u64..101) {
        let f = PrimeField::new(101).unwrap();
        let r = PolyRing::standard(f.clone());
        let p = r.from_int_terms(&t);
        // Translate x -> x + a z, y -> y + b z, then read z = 1 coefficients.
        let mat: Mat3<u64> = [[1, 0, a], [0, 1, b], [0, 0, 1]];
        let moved = r.linear_substitution_naive(&p, &mat);
        let e = local_expand(&f, &p, &Point::new(&f, [a, b, 1]).unwrap(), 4);
        for i in 0..4u32 {
            for j in 0..(4 - i) {
                let mut c = 0;
                for (m, v) in moved.terms() {
                    if m.0[0] == i && m.0[1] == j {
                        c = f.add(&c, v);
                    }
                }
                prop_assert_eq!(*e.get(i as usize, j as usize), c);
            }
        }
    }

    #[test]
    fn local_expansion_is_multiplicative(t1 in poly_strategy(6, 3), t2 in poly_strategy(6, 4), a in 0u64..101) {
        let f = PrimeField::new(101).unwrap();
        let r = PolyRing::standard(f.clone());
        let (p, q) = (r.from_int_terms(&t1), r.from_int_terms(&t2));
        let pt = Point::new(&f, [a, 1, 0]).unwrap();
        let ep = local_expand(&f, &p, &pt, 5);
        let eq = local_expand(&f, &q, &pt, 5);
        prop_assert_eq!(ep.mul(&f, &eq), local_expand(&f, &r.mul(&p, &q), &pt, 5));
    }
}
