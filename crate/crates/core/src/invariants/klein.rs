use serde::Serialize;

use super::{degree0_constant, q, InvariantError, InvariantKind, InvariantSet};
use crate::exactfield::Field;
use crate::linalg::kernel;
use crate::polyring::{Monomial, Point, Poly, PolyRing, RingMap};

/// Φ₂₁² as a combination of monomials in (Φ₄, Φ₆, Φ₁₄).
pub const KLEIN_RELATION: [(i64, [u32; 3]); 9] = [
    (1, [0, 0, 3]),
    (-1728, [0, 7, 0]),
    (1008, [1, 4, 1]),
    (88, [2, 1, 2]),
    (60032, [3, 5, 0]),
    (1088, [4, 2, 1]),
    (-22016, [6, 3, 0]),
    (-256, [7, 0, 1]),
    (2048, [9, 1, 0]),
];

/// Φ₄ = x³y + y³z + z³x, Φ₆ = −H(Φ₄)/54, Φ₁₄ = BH(Φ₄,Φ₆)/9,
/// Φ₂₁ = J(Φ₄,Φ₆,Φ₁₄)/14, and the normalized Ψ₄, Ψ₆, Ψ₁₂, Ψ₁₄.
pub fn klein_invariants<F: Field>(field: &F) -> Result<InvariantSet<F>, InvariantError> {
    let ring = PolyRing::standard(field.clone());
    let phi4 = ring.from_int_terms(&[(1, [3, 1, 0]), (1, [0, 3, 1]), (1, [1, 0, 3])]);
    let phi6 = ring.div_int(&ring.hessian(&phi4), -54)?;
    let phi14 = ring.div_int(&ring.bordered_hessian(&phi4, &phi6), 9)?;
    let phi21 = ring.div_int(&ring.jacobian(&phi4, &phi6, &phi14), 14)?;

    let weighted = PolyRing::weighted(field.clone(), [4, 6, 14], ["Phi4", "Phi6", "Phi14"]);
    let generators = RingMap::new(weighted.clone(), ring.clone(), [phi4.clone(), phi6.clone(), phi14.clone()])?;
    let mut inv = InvariantSet::new(InvariantKind::Klein, ring, weighted.clone(), generators);
    let w = |i| weighted.var(i);
    inv.push("Phi4", phi4, Some(w(0)))?;
    inv.push("Phi6", phi6, Some(w(1)))?;
    inv.push("Phi14", phi14, Some(w(2)))?;
    inv.push("Phi21", phi21, None)?;

    let psi4 = weighted.scale(&w(0), &q(field, 2, 3)?);
    let psi6 = weighted.scale_int(&w(1), 2);
    let psi12 = weighted.sub(&weighted.scale_int(&weighted.pow(&psi4, 3), 2), &weighted.pow(&psi6, 2));
    let psi14 = weighted
        .sub(&weighted.scale(&w(2), &q(field, 1, 11)?), &weighted.scale(&weighted.monomial(field.one(), [2, 1, 0]), &q(field, 8, 33)?));
    inv.push_weighted("Psi4", psi4)?;
    inv.push_weighted("Psi6", psi6)?;
    inv.push_weighted("Psi12", psi12)?;
    inv.push_weighted("Psi14", psi14)?;
    Ok(inv)
}

#[derive(Debug, Clone, Serialize)]
pub struct KleinRelationReport {
    /// The published identity holds term for term.
    pub holds: bool,
    pub residual_terms: usize,
    /// Coefficients solved for from the monomials of weighted degree 42,
    /// in the order of [`KLEIN_RELATION`].
    pub rederived: Option<Vec<String>>,
    pub rederived_matches: bool,
}

/// Checks Φ₂₁² against [`KLEIN_RELATION`] and independently re-derives the
/// coefficients as the kernel of the 10 forms of degree 42.
pub fn verify_klein_relation<F: Field>(inv: &InvariantSet<F>) -> Result<KleinRelationReport, InvariantError> {
    let ring = &inv.ring;
    let f = inv.field();
    let phi21 = inv.poly("Phi21")?;
    let lhs = ring.pow(phi21, 2);
    let rhs_w = inv.weighted.from_int_terms(&KLEIN_RELATION);
    let residual = ring.sub(&lhs, &inv.expand(&rhs_w));

    let mut columns: Vec<Poly<F::Elem>> = KLEIN_RELATION.iter().map(|&(_, e)| inv.expand(&inv.weighted.monomial(f.one(), e))).collect();
    columns.push(lhs);
    let basis: Vec<Monomial> = {
        let mut all: Vec<Monomial> = columns.iter().flat_map(|p| p.terms().map(|(m, _)| *m)).collect();
        all.sort();
        all.dedup();
        all
    };
    let coords: Vec<Vec<F::Elem>> = columns.iter().map(|p| ring.coordinates(p, &basis)).collect();
    let rows: Vec<Vec<F::Elem>> = (0..basis.len()).map(|r| coords.iter().map(|c| c[r].clone()).collect()).collect();
    let ker = kernel(f, rows, columns.len());
    let (rederived, rederived_matches) = match ker.as_slice() {
        [v] if !f.is_zero(&v[9]) => {
            let scale = f.neg(&f.inv(&v[9])?);
            let coeffs: Vec<F::Elem> = v[..9].iter().map(|c| f.mul(c, &scale)).collect();
            let matches = coeffs.iter().zip(KLEIN_RELATION.iter()).all(|(c, &(n, _))| *c == f.from_i64(n));
            (Some(coeffs.iter().map(|c| f.format(c)).collect()), matches)
        }
        _ => (None, false),
    };
    Ok(KleinRelationReport { holds: residual.is_zero(), residual_terms: residual.len(), rederived, rederived_matches })
}

/// The two constants (Ψ₄Ψ₁₂²/Ψ₁₄²)(p) and (Ψ₆Ψ₁₂/(Ψ₄Ψ₁₄))(p) at a triple
/// point, which fix the degree-42 curve.
pub fn klein_curve_constants<F: Field>(inv: &InvariantSet<F>, triple: &Point<F::Elem>) -> Result<[F::Elem; 2], InvariantError> {
    let a = degree0_constant(inv, &[("Psi4", 1), ("Psi12", 2)], &[("Psi14", 2)], triple)?;
    let b = degree0_constant(inv, &[("Psi6", 1), ("Psi12", 1)], &[("Psi4", 1), ("Psi14", 1)], triple)?;
    Ok([a, b])
}

/// Coefficients (λ₁, λ₂, λ₃) of λ₁Ψ₁₄³ + λ₂Ψ₄Ψ₁₂²Ψ₁₄ + λ₃Ψ₆Ψ₁₂³ making the
/// curve 8-fold at the triple points, scaled so that λ₃ = 1.
pub fn klein_curve_coefficients<F: Field>(inv: &InvariantSet<F>, triple: &Point<F::Elem>) -> Result<[F::Elem; 3], InvariantError> {
    let f = inv.field();
    let [a, b] = klein_curve_constants(inv, triple)?;
    let l3 = f.one();
    let l2 = f.neg(&f.mul(&q(f, 3, 2)?, &b));
    let l1 = f.neg(&f.mul(&q(f, 1, 3)?, &f.mul(&a, &l2)));
    Ok([l1, l2, l3])
}

/// The weighted polynomial of the invariant curve of degree 42 that is
/// 8-fold at the triple points.
pub fn klein_negative_curve<F: Field>(inv: &InvariantSet<F>, triple: &Point<F::Elem>) -> Result<Poly<F::Elem>, InvariantError> {
    let [l1, l2, l3] = klein_curve_coefficients(inv, triple)?;
    let w = &inv.weighted;
    let terms = [
        (l1, inv.weighted_monomial(&[("Psi14", 3)])?),
        (l2, inv.weighted_monomial(&[("Psi4", 1), ("Psi12", 2), ("Psi14", 1)])?),
        (l3, inv.weighted_monomial(&[("Psi6", 1), ("Psi12", 3)])?),
    ];
    let mut acc = Poly::zero();
    for (c, m) in &terms {
        w.add_assign(&mut acc, &w.scale(m, c));
    }
    Ok(acc)
}
