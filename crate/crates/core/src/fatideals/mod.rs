//! Fat-point ideals of the configuration points: graded pieces of symbolic
//! and ordinary powers, least degrees, minimal generators and membership.

mod containment;

pub use containment::{
    containment_report, nonneg_solutions, resurgence_report, star_bezout_audit, ContainmentOutcome, ContainmentReport, DegreeCheck,
    RegularityBound, RegularityCertificate, ResidualCheck, ResurgenceInput, ResurgenceReport, ResurgenceStep, Sourced, StarBezoutAudit,
    COMPUTED, PAPER_CONSTANT,
};

use std::collections::HashMap;

use serde::Serialize;

use crate::configs::LineConfiguration;
use crate::exactfield::Field;
use crate::linalg::{kernel, rank, RowSpace};
use crate::polyring::{binomial_table, chart_coordinates, power_table, weighted_basis, Monomial, Point, Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FatIdealError {
    #[error("point {0} occurs twice")]
    DuplicatePoint(usize),
    #[error("no form of degree <= {cap} vanishes to order {m} at all points")]
    AlphaCapExceeded { m: u32, cap: u32 },
    #[error("generators are known through degree {have}, but degree {needed} is required")]
    IncompleteGenerators { needed: u32, have: u32 },
    #[error("form has degree {found:?}, piece has degree {expected}")]
    DegreeMismatch { expected: u32, found: Option<u32> },
}

/// Every point of a configuration, each normalized so that its last nonzero
/// coordinate is 1.
#[derive(Debug, Clone)]
pub struct PointSet<F: Field> {
    field: F,
    points: Vec<Point<F::Elem>>,
}

impl<F: Field> PointSet<F> {
    pub fn new(field: &F, points: Vec<Point<F::Elem>>) -> Result<Self, FatIdealError> {
        let mut seen = HashMap::new();
        for (i, p) in points.iter().enumerate() {
            if seen.insert(p.0.clone(), i).is_some() {
                return Err(FatIdealError::DuplicatePoint(i));
            }
        }
        Ok(PointSet { field: field.clone(), points })
    }

    pub fn from_config(config: &LineConfiguration<F>) -> Self {
        Self::new(&config.field, config.all_points()).expect("configuration points are distinct")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn points(&self) -> &[Point<F::Elem>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Rows expressing that a form of degree d vanishes to order m at every
    /// point: the Taylor coefficients of order < m in the chart of each
    /// point, as linear functionals on the monomial basis.
    fn conditions(&self, m: u32, monomials: &[Monomial]) -> Vec<Vec<F::Elem>> {
        let f = &self.field;
        let Some(d) = monomials.first().map(Monomial::degree) else { return Vec::new() };
        let m = m as usize;
        let binom = binomial_table(f, d as usize);
        let mut rows = Vec::with_capacity(self.points.len() * m * (m + 1) / 2);
        for p in &self.points {
            let (iu, iv) = chart_coordinates(p.pivot(f));
            let pa = power_table(f, &p.0[iu], d as usize);
            let pb = power_table(f, &p.0[iv], d as usize);
            for t in 0..m {
                for j in 0..=t {
                    let i = t - j;
                    rows.push(
                        monomials
                            .iter()
                            .map(|mono| {
                                let (a, b) = (mono.0[iu] as usize, mono.0[iv] as usize);
                                if a < i || b < j {
                                    return f.zero();
                                }
                                f.mul(&f.mul(&binom[a][i], &pa[a - i]), &f.mul(&binom[b][j], &pb[b - j]))
                            })
                            .collect(),
                    );
                }
            }
        }
        rows
    }
}

/// Monomials of degree d in x, y, z.
pub fn monomial_basis(d: u32) -> Vec<Monomial> {
    weighted_basis([1, 1, 1], d)
}

/// A homogeneous piece J_d of an ideal, with a basis in echelon form.
#[derive(Debug, Clone)]
pub struct GradedPiece<F: Field> {
    pub degree: u32,
    pub monomials: Vec<Monomial>,
    space: RowSpace<F>,
}

impl<F: Field> GradedPiece<F> {
    fn from_vectors(field: &F, degree: u32, monomials: Vec<Monomial>, vectors: Vec<Vec<F::Elem>>) -> Self {
        let mut space = RowSpace::new(field.clone(), monomials.len());
        space.extend_batch(vectors);
        GradedPiece { degree, monomials, space }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self, ring: &PolyRing<F>) -> Vec<Poly<F::Elem>> {
        self.space.rows().iter().map(|r| ring.from_coordinates(r, &self.monomials)).collect()
    }

    /// Whether every element of `other` (same degree) lies in this piece.
    pub fn contains_piece(&self, other: &GradedPiece<F>) -> bool {
        other.space.rows().iter().all(|r| self.space.contains(r))
    }

    /// The first basis element of `other` outside this piece.
    pub fn first_outside(&self, ring: &PolyRing<F>, other: &GradedPiece<F>) -> Option<Poly<F::Elem>> {
        other.space.rows().iter().find(|r| !self.space.contains(r)).map(|r| ring.from_coordinates(r, &other.monomials))
    }
}

/// (I^(m))_d: all forms of degree d vanishing to order m at every point.
pub fn symbolic_piece<F: Field>(points: &PointSet<F>, m: u32, d: u32) -> GradedPiece<F> {
    let f = points.field();
    let monomials = monomial_basis(d);
    let rows = points.conditions(m, &monomials);
    let ker = kernel(f, rows, monomials.len());
    GradedPiece::from_vectors(f, d, monomials, ker)
}

/// dim (I^(m))_d, by a rank computation only.
pub fn symbolic_dim<F: Field>(points: &PointSet<F>, m: u32, d: u32) -> usize {
    let monomials = monomial_basis(d);
    if m == 0 {
        return monomials.len();
    }
    monomials.len() - rank(points.field(), points.conditions(m, &monomials), monomials.len())
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaReport {
    pub m: u32,
    pub alpha: u32,
    /// Degrees examined with the dimension found there.
    pub checked: Vec<(u32, usize)>,
}

/// Least degree of a nonzero form vanishing to order m at all points.
/// Nonempty pieces stay nonempty in higher degree, so the search bisects
/// between `hint` and `cap` and then confirms that degree α − 1 is empty;
/// the result does not depend on the hint being a true lower bound.
pub fn alpha_symbolic<F: Field>(points: &PointSet<F>, m: u32, hint: u32, cap: u32) -> Result<AlphaReport, FatIdealError> {
    let mut checked = Vec::new();
    let probe = |d: u32, checked: &mut Vec<(u32, usize)>| {
        let dim = symbolic_dim(points, m, d);
        checked.push((d, dim));
        dim > 0
    };
    let (mut lo, mut hi) = (hint.max(1), cap);
    if lo > hi || !probe(hi, &mut checked) {
        return Err(FatIdealError::AlphaCapExceeded { m, cap });
    }
    // invariant: the piece in degree hi is nonempty
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe(mid, &mut checked) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let mut alpha = hi;
    while alpha > 1 && !checked.iter().any(|&(d, dim)| d == alpha - 1 && dim == 0) {
        if probe(alpha - 1, &mut checked) {
            alpha -= 1;
        } else {
            break;
        }
    }
    checked.sort();
    checked.dedup();
    Ok(AlphaReport { m, alpha, checked })
}

/// Whether f vanishes to order m at every point.
pub fn vanishes_at_all<F: Field>(points: &PointSet<F>, f: &Poly<F::Elem>, m: u32) -> bool {
    points
        .points()
        .iter()
        .all(|p| crate::polyring::local_expand(points.field(), f, p, m as usize).vanishes_to_order(points.field(), m as usize))
}

/// The three 2×2 minors of the Jacobian matrix of (f, g), for the column
/// pairs (y,z), (x,z), (x,y).
pub fn jacobian_minor_generators<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> [Poly<F::Elem>; 3] {
    let (df, dg) = (ring.gradient(f), ring.gradient(g));
    let minor = |i: usize, j: usize| ring.sub(&ring.mul(&df[i], &dg[j]), &ring.mul(&df[j], &dg[i]));
    [minor(1, 2), minor(0, 2), minor(0, 1)]
}

fn coordinates_in<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>, index: &HashMap<Monomial, usize>, n: usize) -> Vec<F::Elem> {
    let mut v = vec![ring.field().zero(); n];
    for (m, c) in f.terms() {
        v[index[m]] = c.clone();
    }
    v
}

fn index_of(monomials: &[Monomial]) -> HashMap<Monomial, usize> {
    monomials.iter().enumerate().map(|(i, m)| (*m, i)).collect()
}

/// Span of homogeneous forms of one degree, as a graded piece.
pub fn span_piece<F: Field>(ring: &PolyRing<F>, d: u32, forms: &[Poly<F::Elem>]) -> Result<GradedPiece<F>, FatIdealError> {
    let monomials = monomial_basis(d);
    let index = index_of(&monomials);
    let mut vectors = Vec::with_capacity(forms.len());
    for f in forms {
        if f.is_zero() {
            continue;
        }
        if f.degree() != Some(d) || ring.homogeneous_degree(f).is_err() {
            return Err(FatIdealError::DegreeMismatch { expected: d, found: f.degree() });
        }
        vectors.push(coordinates_in(ring, f, &index, monomials.len()));
    }
    Ok(GradedPiece::from_vectors(ring.field(), d, monomials, vectors))
}

/// Whether f lies in the piece; the zero form lies in every piece.
pub fn membership<F: Field>(ring: &PolyRing<F>, f: &Poly<F::Elem>, piece: &GradedPiece<F>) -> Result<bool, FatIdealError> {
    if f.is_zero() {
        return Ok(true);
    }
    if f.degree() != Some(piece.degree) || ring.homogeneous_degree(f).is_err() {
        return Err(FatIdealError::DegreeMismatch { expected: piece.degree, found: f.degree() });
    }
    let index = index_of(&piece.monomials);
    Ok(piece.space.contains(&coordinates_in(ring, f, &index, piece.monomials.len())))
}

/// Products of each form with the three variables.
fn times_linear<F: Field>(ring: &PolyRing<F>, forms: &[Poly<F::Elem>]) -> Vec<Poly<F::Elem>> {
    forms.iter().flat_map(|f| (0..3).map(move |i| ring.mul(&ring.var(i), f))).collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct GeneratorDegree {
    pub degree: u32,
    /// dim I_d
    pub piece_dim: usize,
    /// dim of the span of S₁·I_{d−1} in I_d
    pub from_lower: usize,
    pub new_generators: usize,
}

/// Minimal generators of the ideal of the points, degree by degree, up to
/// a degree bound.
#[derive(Debug, Clone)]
pub struct GeneratorSet<F: Field> {
    pub complete_through: u32,
    /// reg(I), once the points impose independent conditions in degree
    /// reg(I) − 1 within the computed range. No minimal generator has
    /// larger degree, so the set is then complete in every degree.
    pub regularity: Option<u32>,
    pub generators: Vec<(u32, Poly<F::Elem>)>,
    pub degrees: Vec<GeneratorDegree>,
}

impl<F: Field> GeneratorSet<F> {
    pub fn is_complete_through(&self, d: u32) -> bool {
        d <= self.complete_through || self.regularity.is_some_and(|r| r <= self.complete_through)
    }

    pub fn alpha(&self) -> Option<u32> {
        self.generators.iter().map(|(d, _)| *d).min()
    }

    /// Largest generator degree found so far.
    pub fn omega(&self) -> Option<u32> {
        self.generators.iter().map(|(d, _)| *d).max()
    }

    pub fn in_degree(&self, d: u32) -> Vec<&Poly<F::Elem>> {
        self.generators.iter().filter(|(e, _)| *e == d).map(|(_, g)| g).collect()
    }

    pub fn count_by_degree(&self) -> Vec<(u32, usize)> {
        self.degrees.iter().filter(|g| g.new_generators > 0).map(|g| (g.degree, g.new_generators)).collect()
    }
}

/// In each degree d ≤ up_to, new generators complete a basis of I_d modulo
/// S₁·I_{d−1}.
pub fn minimal_generators<F: Field>(ring: &PolyRing<F>, points: &PointSet<F>, up_to: u32) -> GeneratorSet<F> {
    let mut generators = Vec::new();
    let mut degrees = Vec::new();
    let mut previous: Vec<Poly<F::Elem>> = Vec::new();
    for d in 1..=up_to {
        let piece = symbolic_piece(points, 1, d);
        let basis = piece.basis(ring);
        let lower = span_piece(ring, d, &times_linear(ring, &previous)).expect("products are homogeneous of degree d");
        let from_lower = lower.dim();
        let mut span = lower;
        let mut new = 0;
        for b in &basis {
            let v = coordinates_in(ring, b, &index_of(&span.monomials), span.monomials.len());
            if span.space.insert(v) {
                generators.push((d, b.clone()));
                new += 1;
            }
        }
        degrees.push(GeneratorDegree { degree: d, piece_dim: piece.dim(), from_lower, new_generators: new });
        previous = basis;
    }
    let n = points.len();
    let regularity =
        degrees.iter().find(|g| g.piece_dim + n == monomial_basis(g.degree).len()).map(|g| g.degree + 1).filter(|&r| r <= up_to);
    GeneratorSet { complete_through: up_to, regularity, generators, degrees }
}

/// (I^r)_d, spanned by products of r generators times monomials. Needs the
/// generators through degree d − (r−1)·α.
pub fn power_piece<F: Field>(ring: &PolyRing<F>, gens: &GeneratorSet<F>, r: u32, d: u32) -> Result<GradedPiece<F>, FatIdealError> {
    if r == 0 {
        let monomials = monomial_basis(d);
        let index = index_of(&monomials);
        let all: Vec<Poly<F::Elem>> = monomials.iter().map(|m| ring.monomial(ring.field().one(), m.0)).collect();
        let vectors = all.iter().map(|p| coordinates_in(ring, p, &index, monomials.len())).collect();
        return Ok(GradedPiece::from_vectors(ring.field(), d, monomials, vectors));
    }
    let Some(alpha) = gens.alpha() else {
        return Ok(GradedPiece::from_vectors(ring.field(), d, monomial_basis(d), Vec::new()));
    };
    let needed = d.saturating_sub((r - 1) * alpha);
    if !gens.is_complete_through(needed) {
        return Err(FatIdealError::IncompleteGenerators { needed, have: gens.complete_through });
    }
    let monomials = monomial_basis(d);
    let index = index_of(&monomials);
    let mut vectors = Vec::new();
    let usable: Vec<&(u32, Poly<F::Elem>)> = gens.generators.iter().filter(|(e, _)| *e <= needed).collect();
    if usable.is_empty() || r * alpha > d {
        return Ok(GradedPiece::from_vectors(ring.field(), d, monomials, Vec::new()));
    }
    // r-multisets of generators, as nondecreasing index sequences
    let mut pick = vec![0usize; r as usize];
    'outer: loop {
        let deg: u32 = pick.iter().map(|&i| usable[i].0).sum();
        if deg <= d {
            let prod = ring.product(pick.iter().map(|&i| &usable[i].1));
            for mono in monomial_basis(d - deg) {
                let t = ring.mul(&ring.monomial(ring.field().one(), mono.0), &prod);
                vectors.push(coordinates_in(ring, &t, &index, monomials.len()));
            }
        }
        let mut k = pick.len();
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            if pick[k] + 1 < usable.len() {
                let v = pick[k] + 1;
                for slot in &mut pick[k..] {
                    *slot = v;
                }
                break;
            }
        }
    }
    Ok(GradedPiece::from_vectors(ring.field(), d, monomials, vectors))
}
