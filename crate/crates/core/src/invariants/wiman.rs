use serde::Serialize;

use super::{degree0_constant, normalize_x_power, q, InvariantError, InvariantKind, InvariantSet};
use crate::configs::LineConfiguration;
use crate::exactfield::Field;
use crate::groups::wiman_group;
use crate::polyring::{Point, Poly, PolyRing, RingMap};

/// Φ₄₅², up to a scalar, as a combination of monomials in (Φ₆, Φ₁₂, Φ₃₀).
pub const WIMAN_PHI45_RELATION: [(i64, [u32; 3]); 17] = [
    (16, [13, 1, 0]),
    (-160, [11, 2, 0]),
    (816, [9, 3, 0]),
    (-2188, [7, 4, 0]),
    (3271, [5, 5, 0]),
    (-1539, [3, 6, 0]),
    (351, [1, 7, 0]),
    (72, [10, 0, 1]),
    (-396, [8, 1, 1]),
    (954, [6, 2, 1]),
    (99, [4, 3, 1]),
    (-1377, [2, 4, 1]),
    (243, [0, 5, 1]),
    (324, [5, 0, 2]),
    (-1944, [3, 1, 2]),
    (729, [1, 2, 2]),
    (729, [0, 0, 3]),
];

/// Monomials of the degree-90 curve, with the coefficients that make it
/// 4-fold at the quadruple points and 8-fold at the triple points.
pub const WIMAN_CURVE_COEFFICIENTS: [(i64, &[(&str, u32)]); 5] = [
    (4, &[("Psi30", 3)]),
    (-10, &[("Psi6", 1), ("Psi24", 1), ("Psi30", 2)]),
    (-20, &[("Psi6", 2), ("Psi24", 2), ("Psi30", 1)]),
    (10, &[("Psi12", 1), ("Psi24", 2), ("Psi30", 1)]),
    (-5, &[("Psi6", 1), ("Psi12", 1), ("Psi24", 3)]),
];

/// Φ₆ = 16·R(x⁶) over the Valentiner group, Φ₁₂ and Φ₃₀ from the Hessian
/// and bordered Hessian scaled to have x^d coefficient 1, Φ₄₅ their
/// Jacobian, and the normalized Ψ₆, Ψ₁₂, Ψ₂₄, Ψ₃₀. When the field contains
/// s with s² = −15 the factors Υ₁₂, Ῡ₁₂ of Ψ₂₄ are included as well.
pub fn wiman_invariants<F: Field>(field: &F) -> Result<InvariantSet<F>, InvariantError> {
    let ring = PolyRing::standard(field.clone());
    let group = wiman_group(field, false)?;
    let phi6 = ring.scale_int(&group.reynolds(&ring, &ring.monomial(field.one(), [6, 0, 0]))?, 16);
    let phi12 = normalize_x_power(&ring, &ring.hessian(&phi6), "Phi12")?;
    let phi30 = normalize_x_power(&ring, &ring.bordered_hessian(&phi6, &phi12), "Phi30")?;
    let phi45 = ring.jacobian(&phi6, &phi12, &phi30);

    let weighted = PolyRing::weighted(field.clone(), [6, 12, 30], ["Phi6", "Phi12", "Phi30"]);
    let generators = RingMap::new(weighted.clone(), ring.clone(), [phi6.clone(), phi12.clone(), phi30.clone()])?;
    let mut inv = InvariantSet::new(InvariantKind::Wiman, ring, weighted.clone(), generators);
    let w = |i| weighted.var(i);
    inv.push("Phi6", phi6, Some(w(0)))?;
    inv.push("Phi12", phi12, Some(w(1)))?;
    inv.push("Phi30", phi30, Some(w(2)))?;
    inv.push("Phi45", phi45, None)?;

    let wr = &weighted;
    let psi6 = wr.scale_int(&w(0), 2);
    let psi12 = wr.scale_int(&wr.sub(&wr.pow(&w(0), 2), &w(1)), 18);
    let psi6_sq = wr.pow(&psi6, 2);
    let psi24 = {
        let mut acc = wr.pow(&psi6, 4);
        wr.add_assign(&mut acc, &wr.scale(&wr.mul(&psi6_sq, &psi12), &q(field, -1, 2)?));
        wr.add_assign(&mut acc, &wr.scale(&wr.pow(&psi12, 2), &q(field, 1, 15)?));
        acc
    };
    let psi30 = {
        let inner = wr.from_int_terms(&[(2, [5, 0, 0]), (-11, [3, 1, 0]), (36, [1, 2, 0]), (-27, [0, 0, 1])]);
        wr.scale(&inner, &q(field, 36, 25)?)
    };
    let upsilon = match field.constant("s") {
        Ok(s) => {
            let sixtieth = q(field, 1, 60)?;
            let fifteen = field.from_i64(15);
            let mk = |t: &F::Elem| wr.sub(&psi6_sq, &wr.scale(&psi12, &field.mul(&sixtieth, &field.add(&fifteen, t))));
            Some((mk(&s), mk(&field.neg(&s))))
        }
        Err(_) => None,
    };
    inv.push_weighted("Psi6", psi6)?;
    inv.push_weighted("Psi12", psi12)?;
    if let Some((u, ubar)) = upsilon {
        inv.push_weighted("Upsilon12", u)?;
        inv.push_weighted("Upsilon12bar", ubar)?;
    }
    inv.push_weighted("Psi24", psi24)?;
    inv.push_weighted("Psi30", psi30)?;
    Ok(inv)
}

#[derive(Debug, Clone, Serialize)]
pub struct ProportionalityReport {
    pub proportional: bool,
    /// The scalar c with Φ₄₅² = c·(relation), when proportional.
    pub scalar: Option<String>,
}

/// Whether Φ₄₅² is a scalar multiple of [`WIMAN_PHI45_RELATION`].
pub fn verify_wiman_relation<F: Field>(inv: &InvariantSet<F>) -> Result<ProportionalityReport, InvariantError> {
    let lhs = inv.ring.pow(inv.poly("Phi45")?, 2);
    let rhs = inv.expand(&inv.weighted.from_int_terms(&WIMAN_PHI45_RELATION));
    let c = inv.ring.proportionality(&rhs, &lhs);
    Ok(ProportionalityReport { proportional: c.is_some(), scalar: c.map(|c| inv.field().format(&c)) })
}

/// The two triple-point representatives (p₃, p̄₃), ordered so that Υ₁₂
/// vanishes at p₃ and Ῡ₁₂ at p̄₃.
pub fn wiman_triple_representatives<F: Field>(
    inv: &InvariantSet<F>,
    config: &LineConfiguration<F>,
) -> Result<(Point<F::Elem>, Point<F::Elem>), InvariantError> {
    let f = inv.field();
    let u = inv.poly("Upsilon12")?;
    let reps: Vec<Point<F::Elem>> = ["3a", "3b"]
        .iter()
        .map(|l| config.class(l).map(|c| c.representative.clone()))
        .collect::<Option<_>>()
        .ok_or_else(|| InvariantError::Structure("configuration has no split triple classes".into()))?;
    let vanishes: Vec<bool> = reps.iter().map(|p| f.is_zero(&inv.ring.eval(u, &p.0))).collect();
    match vanishes.as_slice() {
        [true, false] => Ok((reps[0].clone(), reps[1].clone())),
        [false, true] => Ok((reps[1].clone(), reps[0].clone())),
        _ => Err(InvariantError::Structure("Υ₁₂ does not separate the triple orbits".into())),
    }
}

/// The 5×5 matrix whose kernel gives the coefficients of the degree-90
/// curve: two rows for 8-fold vanishing at each triple point, one row for
/// 4-fold vanishing at the quadruple point.
pub fn wiman_curve_matrix<F: Field>(
    inv: &InvariantSet<F>,
    p4: &Point<F::Elem>,
    p3: &Point<F::Elem>,
    p3bar: &Point<F::Elem>,
) -> Result<Vec<Vec<F::Elem>>, InvariantError> {
    let f = inv.field();
    let mut rows = Vec::with_capacity(5);
    for p in [p3, p3bar] {
        let a = degree0_constant(inv, &[("Psi6", 1), ("Psi24", 1)], &[("Psi30", 1)], p)?;
        let a2 = degree0_constant(inv, &[("Psi6", 2), ("Psi24", 2)], &[("Psi30", 2)], p)?;
        let b = degree0_constant(inv, &[("Psi12", 1), ("Psi24", 2)], &[("Psi30", 2)], p)?;
        let c = degree0_constant(inv, &[("Psi12", 1), ("Psi24", 1)], &[("Psi6", 1), ("Psi30", 1)], p)?;
        let two = f.from_i64(2);
        rows.push(vec![f.from_i64(3), f.mul(&two, &a), a2, b.clone(), f.zero()]);
        rows.push(vec![f.zero(), f.one(), f.mul(&two, &a), f.mul(&two, &c), f.mul(&f.from_i64(3), &b)]);
    }
    let e = degree0_constant(inv, &[("Psi12", 1), ("Psi24", 1)], &[("Psi6", 1), ("Psi30", 1)], p4)?;
    rows.push(vec![f.zero(), f.zero(), f.one(), f.zero(), e]);
    Ok(rows)
}

/// The weighted polynomial Σ λᵢ mᵢ over the monomials of
/// [`WIMAN_CURVE_COEFFICIENTS`].
pub fn wiman_negative_curve<F: Field>(inv: &InvariantSet<F>, lambdas: &[F::Elem; 5]) -> Result<Poly<F::Elem>, InvariantError> {
    let w = &inv.weighted;
    let mut acc = Poly::zero();
    for (l, (_, factors)) in lambdas.iter().zip(WIMAN_CURVE_COEFFICIENTS.iter()) {
        w.add_assign(&mut acc, &w.scale(&inv.weighted_monomial(factors)?, l));
    }
    Ok(acc)
}
