use crate::exactfield::Field;

use super::{binomial_table, power_table, Poly, PolyError};

/// A point of the projective plane, scaled so that its last nonzero
/// coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<E>(pub [E; 3]);

impl<E: Clone> Point<E> {
    pub fn new<F: Field<Elem = E>>(field: &F, coords: [E; 3]) -> Result<Self, PolyError> {
        let k = (0..3).rev().find(|&i| !field.is_zero(&coords[i])).ok_or(PolyError::ZeroPoint)?;
        let inv = field.inv(&coords[k])?;
        Ok(Point(coords.map(|c| field.mul(&c, &inv))))
    }

    /// Index of the coordinate normalized to 1; its complement gives the
    /// affine chart around the point.
    pub fn pivot<F: Field<Elem = E>>(&self, field: &F) -> usize {
        (0..3).rev().find(|&i| !field.is_zero(&self.0[i])).expect("points are nonzero")
    }

    pub fn coords(&self) -> &[E; 3] {
        &self.0
    }
}

/// The local coordinates of the affine chart: the two indices other than
/// the pivot, in increasing order.
pub fn chart_coordinates(pivot: usize) -> (usize, usize) {
    match pivot {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

/// Taylor expansion of a form at a point, truncated below total degree
/// `order`, in the chart where the pivot coordinate is set to 1 and the
/// point is moved to the origin. Coefficients are stored by total degree:
/// the entry for u^i v^j sits at t(t+1)/2 + j with t = i + j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalExpansion<E> {
    order: usize,
    coeffs: Vec<E>,
}

fn tri(t: usize, j: usize) -> usize {
    t * (t + 1) / 2 + j
}

impl<E: Clone> LocalExpansion<E> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// Coefficient of u^i v^j (requires i + j < order).
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.coeffs[tri(i + j, j)]
    }

    pub fn coefficients(&self) -> &[E] {
        &self.coeffs
    }

    pub fn constant<F: Field<Elem = E>>(field: &F, c: E, order: usize) -> Self {
        let mut coeffs = vec![field.zero(); tri(order, 0)];
        if order > 0 {
            coeffs[0] = c;
        }
        LocalExpansion { order, coeffs }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        LocalExpansion { order, coeffs: self.coeffs[..tri(order, 0)].to_vec() }
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let mut out = vec![field.zero(); tri(order, 0)];
        for t1 in 0..order {
            for j1 in 0..=t1 {
                let a = &self.coeffs[tri(t1, j1)];
                if field.is_zero(a) {
                    continue;
                }
                for t2 in 0..(order - t1) {
                    for j2 in 0..=t2 {
                        let b = &other.coeffs[tri(t2, j2)];
                        if field.is_zero(b) {
                            continue;
                        }
                        let slot = &mut out[tri(t1 + t2, j1 + j2)];
                        *slot = field.add(slot, &field.mul(a, b));
                    }
                }
            }
        }
        LocalExpansion { order, coeffs: out }
    }

    pub fn scale<F: Field<Elem = E>>(&self, field: &F, c: &E) -> Self {
        LocalExpansion { order: self.order, coeffs: self.coeffs.iter().map(|x| field.mul(x, c)).collect() }
    }

    pub fn add<F: Field<Elem = E>>(&self, field: &F, other: &Self) -> Self {
        let order = self.order.min(other.order);
        let n = tri(order, 0);
        LocalExpansion { order, coeffs: (0..n).map(|k| field.add(&self.coeffs[k], &other.coeffs[k])).collect() }
    }

    /// Lowest total degree with a nonzero coefficient; `None` when all
    /// coefficients below the truncation order vanish.
    pub fn multiplicity<F: Field<Elem = E>>(&self, field: &F) -> Option<usize> {
        (0..self.order).find(|&t| (0..=t).any(|j| !field.is_zero(&self.coeffs[tri(t, j)])))
    }

    /// Whether all coefficients of total degree below `m` vanish.
    pub fn vanishes_to_order<F: Field<Elem = E>>(&self, field: &F, m: usize) -> bool {
        assert!(m <= self.order, "truncation order {} too small to decide order {m}", self.order);
        self.coeffs[..tri(m, 0)].iter().all(|x| field.is_zero(x))
    }

    /// The coefficients of total degree t, indexed by the power of v.
    pub fn homogeneous_part(&self, t: usize) -> &[E] {
        &self.coeffs[tri(t, 0)..tri(t + 1, 0)]
    }
}

/// Expands the form `f` at `point` up to (excluding) total degree `order`.
/// For a monomial x^α y^β z^γ in the chart z = 1 centred at (a, b), the
/// coefficient of u^i v^j is C(α,i) a^{α−i} C(β,j) b^{β−j}.
pub fn local_expand<F: Field>(field: &F, f: &Poly<F::Elem>, point: &Point<F::Elem>, order: usize) -> LocalExpansion<F::Elem> {
    let pivot = point.pivot(field);
    let (iu, iv) = chart_coordinates(pivot);
    let maxe = f.terms().flat_map(|(m, _)| [m.0[iu], m.0[iv]]).max().unwrap_or(0) as usize;
    let binom = binomial_table(field, maxe);
    let pa = power_table(field, &point.0[iu], maxe);
    let pb = power_table(field, &point.0[iv], maxe);
    let mut coeffs = vec![field.zero(); tri(order, 0)];
    for (m, c) in f.terms() {
        let (alpha, beta) = (m.0[iu] as usize, m.0[iv] as usize);
        for i in 0..=alpha.min(order.saturating_sub(1)) {
            let ai = field.mul(c, &field.mul(&binom[alpha][i], &pa[alpha - i]));
            if field.is_zero(&ai) {
                continue;
            }
            for j in 0..=beta.min(order - 1 - i) {
                let term = field.mul(&ai, &field.mul(&binom[beta][j], &pb[beta - j]));
                let slot = &mut coeffs[tri(i + j, j)];
                *slot = field.add(slot, &term);
            }
        }
    }
    LocalExpansion { order, coeffs }
}
