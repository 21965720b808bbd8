use negcurve::exactfield::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn klein() -> NumberField {
    match Preset::KleinExact.build().unwrap() {
        AnyField::Number(f) => f,
        _ => unreachable!(),
    }
}

fn wiman() -> NumberField {
    match Preset::WimanExact.build().unwrap() {
        AnyField::Number(f) => f,
        _ => unreachable!(),
    }
}

#[test]
fn quadratic_gauss_sum_squares_to_minus_seven() {
    let f = klein();
    let w = f.constant("zeta").unwrap();
    let p = |e| f.pow(&w, e);
    let residues = f.add(&f.add(&p(1), &p(2)), &p(4));
    let nonresidues = f.add(&f.add(&p(3), &p(5)), &p(6));
    let g = f.sub(&residues, &nonresidues);
    assert_eq!(f.mul(&g, &g), f.from_i64(-7));
    assert!(f.is_one(&f.pow(&w, 7)));
    assert!(!f.is_one(&w));
}

#[test]
fn wiman_constants_satisfy_their_relations() {
    let f = wiman();
    let d = f.constant("delta").unwrap();
    let o = f.constant("omega").unwrap();
    let s = f.constant("s").unwrap();
    assert_eq!(f.mul(&d, &d), f.from_i64(5));
    let o2 = f.mul(&o, &o);
    assert!(f.is_zero(&f.add(&f.add(&o2, &o), &f.one())));
    assert_eq!(f.mul(&s, &s), f.from_i64(-15));
    let mu1 = f.constant("mu1").unwrap();
    let mu2 = f.constant("mu2").unwrap();
    // μ₁ and μ₂ are the roots of x² + x − 1.
    for mu in [mu1, mu2] {
        let v = f.add(&f.add(&f.mul(&mu, &mu), &mu), &f.from_i64(-1));
        assert!(f.is_zero(&v));
    }
    assert_eq!(f.roots_of_unity(6).len(), 6);
    assert_eq!(f.roots_of_unity(4).len(), 2);
}

#[test]
fn modular_presets() {
    let AnyField::Prime(k) = Preset::KleinModP(4733).build().unwrap() else { unreachable!() };
    assert_eq!(k.constant("zeta").unwrap(), 7);
    assert_eq!(k.pow(&7, 7), 1);
    let AnyField::Prime(w) = Preset::WimanModP(WIMAN_DEFAULT_PRIME).build().unwrap() else { unreachable!() };
    let d = w.constant("delta").unwrap();
    assert_eq!(w.mul(&d, &d), 5);
    let s = w.constant("s").unwrap();
    assert_eq!(w.mul(&s, &s), w.from_i64(-15));
    assert!(matches!(Preset::KleinModP(11).build(), Err(FieldError::MissingRoot { .. })));
    assert!(matches!(Preset::WimanModP(4733).build(), Err(FieldError::MissingRoot { .. })));
    assert!(matches!(Preset::ModP(4731).build(), Err(FieldError::NotPrime(4731))));
    assert_eq!("klein-mod4733".parse::<Preset>().unwrap(), Preset::KleinModP(4733));
    assert_eq!("modp:7".parse::<Preset>().unwrap(), Preset::ModP(7));
}

#[test]
fn dynamic_arithmetic_errors() {
    let a = Preset::ModP(7).build().unwrap();
    let b = Preset::ModP(11).build().unwrap();
    let x = a.element(3);
    let y = b.element(3);
    assert!(matches!(field_arith(&x, &y, ArithOp::Add), Err(FieldError::MismatchedFields(..))));
    assert_eq!(field_arith(&x, &a.element(0), ArithOp::Div), Err(FieldError::DivisionByZero));
    assert_eq!(field_arith(&x, &a.element(5), ArithOp::Mul).unwrap().to_string(), "1");
    let f = PrimeField::new(7).unwrap();
    let q = BigRational::new(BigInt::from(1), BigInt::from(14));
    assert!(matches!(f.from_rational(&q), Err(FieldError::NonInvertibleDenominator(..))));
}

#[test]
fn element_formatting() {
    let f = klein();
    let w = f.constant("zeta").unwrap();
    let e = f.sub(&f.mul(&f.from_i64(3), &f.pow(&w, 2)), &f.one());
    assert_eq!(f.format(&e), "3*w^2 - 1");
    let half = f.inv(&f.from_i64(-2)).unwrap();
    assert_eq!(f.format(&half), "-1/2");
}

fn nf_elem(f: &NumberField, c: &[i64]) -> NfElem {
    let coords: Vec<BigRational> = c.iter().map(|&x| BigRational::from_integer(x.into())).collect();
    f.from_coordinates(&coords)
}

proptest! {
    #[test]
    fn prime_field_axioms(a in 0u64..4733, b in 0u64..4733, c in 0u64..4733) {
        let f = PrimeField::new(4733).unwrap();
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), (a * b) % 4733);
        if a != 0 {
            prop_assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        let mut v = vec![b, c];
        f.sub_scaled(&mut v, &a, &[c, b]);
        prop_assert_eq!(&v, &vec![f.sub(&b, &f.mul(&a, &c)), f.sub(&c, &f.mul(&a, &b))]);
    }

    #[test]
    fn number_field_axioms(a in prop::collection::vec(-20i64..20, 4),
                           b in prop::collection::vec(-20i64..20, 4),
                           c in prop::collection::vec(-20i64..20, 4)) {
        let f = wiman();
        let (a, b, c) = (nf_elem(&f, &a), nf_elem(&f, &b), nf_elem(&f, &c));
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        if !f.is_zero(&a) {
            prop_assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
        prop_assert!(f.is_zero(&f.sub(&a, &a)));
    }
}
