//! Finite matrix groups acting on 𝔸³, on forms and on points of ℙ².
//!
//! Convention: a matrix M acts on a form by (M·f)(v) = f(M v) and on a
//! point by p ↦ M p. With this choice ∇(M·f) = Mᵀ (M·∇f).

use std::collections::{HashSet, VecDeque};

use crate::exactfield::{Field, FieldError};
use crate::linalg::{mat3_apply, mat3_identity, mat3_mul, mat3_projective_normal, mat3_transpose, Mat3};
use crate::polyring::{Point, Poly, PolyError, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("group closure exceeded {0} elements")]
    CapExceeded(usize),
    #[error("generated group has order {found}, expected {expected}")]
    OrderMismatch { expected: usize, found: usize },
    #[error("group order {0} is not invertible in characteristic {1}")]
    OrderNotInvertible(usize, u64),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Field(#[from] FieldError),
}

#[derive(Debug, Clone)]
pub struct MatrixGroup<F: Field> {
    field: F,
    generators: Vec<Mat3<F::Elem>>,
    elements: Vec<Mat3<F::Elem>>,
    projective: bool,
}

/// Closes `generators` under multiplication. In projective mode matrices
/// are identified up to scalars (each stored with first nonzero entry 1).
pub fn generate_group<F: Field>(
    field: &F,
    generators: Vec<Mat3<F::Elem>>,
    expected_order: Option<usize>,
    projective: bool,
    cap: usize,
) -> Result<MatrixGroup<F>, GroupError> {
    let normal = |m: Mat3<F::Elem>| if projective { mat3_projective_normal(field, &m) } else { m };
    let generators: Vec<Mat3<F::Elem>> = generators.into_iter().map(normal).collect();
    let id = mat3_identity(field);
    let mut seen: HashSet<Mat3<F::Elem>> = HashSet::new();
    let mut elements = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    elements.push(id.clone());
    queue.push_back(id);
    while let Some(e) = queue.pop_front() {
        for g in &generators {
            let n = normal(mat3_mul(field, &e, g));
            if seen.insert(n.clone()) {
                if seen.len() > cap {
                    return Err(GroupError::CapExceeded(cap));
                }
                elements.push(n.clone());
                queue.push_back(n);
            }
        }
    }
    if let Some(expected) = expected_order {
        if elements.len() != expected {
            return Err(GroupError::OrderMismatch { expected, found: elements.len() });
        }
    }
    Ok(MatrixGroup { field: field.clone(), generators, elements, projective })
}

impl<F: Field> MatrixGroup<F> {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat3<F::Elem>] {
        &self.elements
    }

    pub fn generators(&self) -> &[Mat3<F::Elem>] {
        &self.generators
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn act_on_poly(&self, ring: &PolyRing<F>, g: &Mat3<F::Elem>, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>, GroupError> {
        Ok(ring.linear_substitution(f, g)?)
    }

    pub fn act_on_point(&self, g: &Mat3<F::Elem>, p: &Point<F::Elem>) -> Point<F::Elem> {
        Point::new(&self.field, mat3_apply(&self.field, g, &p.0)).expect("invertible matrices move nonzero points")
    }

    /// Action on the coefficient vector of a linear form: ℓ(M v) has
    /// coefficients Mᵀ c. The result is scaled like a point.
    pub fn act_on_linear_form(&self, g: &Mat3<F::Elem>, c: &Point<F::Elem>) -> Point<F::Elem> {
        let t = mat3_transpose(g);
        Point::new(&self.field, mat3_apply(&self.field, &t, &c.0)).expect("invertible matrices move nonzero forms")
    }

    /// Whether every generator fixes `f` exactly.
    pub fn is_invariant(&self, ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Result<bool, GroupError> {
        for g in &self.generators {
            if ring.linear_substitution(f, g)? != *f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every generator maps `f` to a scalar multiple of itself.
    pub fn is_semi_invariant(&self, ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Result<bool, GroupError> {
        for g in &self.generators {
            if ring.proportionality(f, &ring.linear_substitution(f, g)?).is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Average of g·f over the group.
    pub fn reynolds(&self, ring: &PolyRing<F>, f: &Poly<F::Elem>) -> Result<Poly<F::Elem>, GroupError> {
        let n = self.order();
        let inv =
            self.field.inv(&self.field.from_i64(n as i64)).map_err(|_| GroupError::OrderNotInvertible(n, self.field.characteristic()))?;
        let mut acc = Poly::zero();
        for g in &self.elements {
            ring.add_assign(&mut acc, &ring.linear_substitution(f, g)?);
        }
        Ok(ring.scale(&acc, &inv))
    }

    /// Orbit of a point, found by closing under the generators; sorted.
    pub fn orbit(&self, p: &Point<F::Elem>) -> Vec<Point<F::Elem>> {
        self.close(p, |g, q| self.act_on_point(g, q))
    }

    /// Orbit of a linear form (as a projective coefficient vector); sorted.
    pub fn orbit_of_linear_form(&self, c: &Point<F::Elem>) -> Vec<Point<F::Elem>> {
        self.close(c, |g, q| self.act_on_linear_form(g, q))
    }

    fn close(&self, start: &Point<F::Elem>, act: impl Fn(&Mat3<F::Elem>, &Point<F::Elem>) -> Point<F::Elem>) -> Vec<Point<F::Elem>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(start.clone());
        queue.push_back(start.clone());
        while let Some(q) = queue.pop_front() {
            for g in &self.generators {
                let n = act(g, &q);
                if seen.insert(n.clone()) {
                    queue.push_back(n);
                }
            }
        }
        let mut out: Vec<_> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Number of group elements fixing `p`, counted directly.
    pub fn stabilizer_order(&self, p: &Point<F::Elem>) -> usize {
        self.elements.iter().filter(|g| self.act_on_point(g, p) == *p).count()
    }
}

/// The three generators g, h, i of the order-168 Klein group, built from
/// the field constant `zeta`. `i` is the involution whose fixed line
/// spans the configuration.
pub fn klein_generators<F: Field>(field: &F) -> Result<[Mat3<F::Elem>; 3], GroupError> {
    let z = field.constant("zeta")?;
    let p = |e: u64| field.pow(&z, e);
    let o = || field.zero();
    let g = [[p(4), o(), o()], [o(), p(2), o()], [o(), o(), p(1)]];
    let h = crate::linalg::mat3_from_i64(field, [[0, 1, 0], [0, 0, 1], [1, 0, 0]]);
    // (2ζ⁴ + 2ζ² + 2ζ + 1)/7, whose square is −1/7.
    let two = field.from_i64(2);
    let gauss = field.add(&field.mul(&two, &field.add(&field.add(&p(4), &p(2)), &p(1))), &field.one());
    let scalar = field.div(&gauss, &field.from_i64(7))?;
    let a = field.mul(&scalar, &field.sub(&p(1), &p(6)));
    let b = field.mul(&scalar, &field.sub(&p(2), &p(5)));
    let c = field.mul(&scalar, &field.sub(&p(4), &p(3)));
    let i = [[a.clone(), b.clone(), c.clone()], [b.clone(), c.clone(), a.clone()], [c, a, b]];
    Ok([g, h, i])
}

/// The generators R₁..R₄ of the Valentiner group (order 1080 in SL₃,
/// 360 projectively), from the constants `omega`, `mu1`, `mu2`.
pub fn wiman_generators<F: Field>(field: &F) -> Result<[Mat3<F::Elem>; 4], GroupError> {
    let omega = field.constant("omega")?;
    let mu1 = field.constant("mu1")?;
    let mu2 = field.constant("mu2")?;
    let r1 = crate::linalg::mat3_from_i64(field, [[0, 0, 1], [1, 0, 0], [0, 1, 0]]);
    let r2 = crate::linalg::mat3_from_i64(field, [[1, 0, 0], [0, -1, 0], [0, 0, -1]]);
    let half = field.inv(&field.from_i64(2))?;
    let m1 = field.from_i64(-1);
    let raw = [[m1.clone(), mu2.clone(), mu1.clone()], [mu2.clone(), mu1.clone(), m1.clone()], [mu1, m1, mu2]];
    let r3 = crate::linalg::mat3_scale(field, &raw, &half);
    let zero = field.zero();
    let r4 = [
        [field.from_i64(-1), zero.clone(), zero.clone()],
        [zero.clone(), zero.clone(), field.neg(&field.mul(&omega, &omega))],
        [zero.clone(), field.neg(&omega), zero],
    ];
    Ok([r1, r2, r3, r4])
}

pub const KLEIN_ORDER: usize = 168;
pub const VALENTINER_ORDER: usize = 1080;
pub const WIMAN_PROJECTIVE_ORDER: usize = 360;

pub fn klein_group<F: Field>(field: &F) -> Result<MatrixGroup<F>, GroupError> {
    generate_group(field, klein_generators(field)?.to_vec(), Some(KLEIN_ORDER), false, 10 * KLEIN_ORDER)
}

/// The Valentiner group (linear) or its image A₆ in PGL₃ (projective).
pub fn wiman_group<F: Field>(field: &F, projective: bool) -> Result<MatrixGroup<F>, GroupError> {
    let order = if projective { WIMAN_PROJECTIVE_ORDER } else { VALENTINER_ORDER };
    generate_group(field, wiman_generators(field)?.to_vec(), Some(order), projective, 10 * order)
}

/// Linear form cut out by the (−1)-eigenplane of a reflection: any nonzero
/// row of M + I.
pub fn mirror_of_reflection<F: Field>(field: &F, m: &Mat3<F::Elem>) -> Option<Point<F::Elem>> {
    (0..3).find_map(|i| {
        let row: [F::Elem; 3] = std::array::from_fn(|j| if i == j { field.add(&m[i][j], &field.one()) } else { m[i][j].clone() });
        Point::new(field, row).ok()
    })
}
