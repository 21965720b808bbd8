//! Fundamental invariant forms of the Klein and Valentiner groups, the
//! normalized invariants that describe the negative curves, and local
//! evaluation of weighted polynomials in the invariants.

mod klein;
mod wiman;

pub use klein::{
    klein_curve_coefficients, klein_curve_constants, klein_invariants, klein_negative_curve, verify_klein_relation, KleinRelationReport,
    KLEIN_RELATION,
};
pub use wiman::{
    verify_wiman_relation, wiman_curve_matrix, wiman_invariants, wiman_negative_curve, wiman_triple_representatives, ProportionalityReport,
    WIMAN_CURVE_COEFFICIENTS, WIMAN_PHI45_RELATION,
};

use serde::Serialize;

use crate::configs::ConfigError;
use crate::exactfield::{Field, FieldError};
use crate::groups::{GroupError, MatrixGroup};
use crate::polyring::{local_expand, LocalExpansion, Point, Poly, PolyError, PolyRing, RingMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("no invariant named {0}")]
    MissingForm(String),
    #[error("cannot normalize {0}: its x^{1} coefficient is zero")]
    Normalization(String, u32),
    #[error("local orders differ at the point: numerator {numerator}, denominator {denominator}")]
    OrderMismatch { numerator: usize, denominator: usize },
    #[error("total degrees differ: numerator {numerator}, denominator {denominator}")]
    DegreeMismatch { numerator: u32, denominator: u32 },
    #[error("leading local forms are not proportional")]
    NotProportional,
    #[error("{0}")]
    Structure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InvariantKind {
    Klein,
    Wiman,
}

/// An invariant form, together with its expression in the three
/// fundamental generators when it lies in the subring they generate.
#[derive(Debug, Clone)]
pub struct NamedForm<E> {
    pub name: String,
    pub degree: u32,
    pub poly: Poly<E>,
    pub in_generators: Option<Poly<E>>,
}

#[derive(Debug, Clone)]
pub struct InvariantSet<F: Field> {
    pub kind: InvariantKind,
    pub ring: PolyRing<F>,
    /// Weighted polynomial ring whose variables stand for the generators.
    pub weighted: PolyRing<F>,
    pub generators: RingMap<F>,
    forms: Vec<NamedForm<F::Elem>>,
}

impl<F: Field> InvariantSet<F> {
    fn new(kind: InvariantKind, ring: PolyRing<F>, weighted: PolyRing<F>, generators: RingMap<F>) -> Self {
        InvariantSet { kind, ring, weighted, generators, forms: Vec::new() }
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    fn push(&mut self, name: &str, poly: Poly<F::Elem>, in_generators: Option<Poly<F::Elem>>) -> Result<(), InvariantError> {
        let degree = self.ring.homogeneous_degree(&poly)?;
        self.forms.push(NamedForm { name: name.to_string(), degree, poly, in_generators });
        Ok(())
    }

    /// Adds a form given by a weighted polynomial in the generators.
    fn push_weighted(&mut self, name: &str, w: Poly<F::Elem>) -> Result<(), InvariantError> {
        let poly = self.generators.apply(&w);
        self.push(name, poly, Some(w))
    }

    pub fn forms(&self) -> &[NamedForm<F::Elem>] {
        &self.forms
    }

    pub fn names(&self) -> Vec<&str> {
        self.forms.iter().map(|f| f.name.as_str()).collect()
    }

    pub fn get(&self, name: &str) -> Result<&NamedForm<F::Elem>, InvariantError> {
        self.forms.iter().find(|f| f.name == name).ok_or_else(|| InvariantError::MissingForm(name.to_string()))
    }

    pub fn poly(&self, name: &str) -> Result<&Poly<F::Elem>, InvariantError> {
        Ok(&self.get(name)?.poly)
    }

    pub fn weighted_form(&self, name: &str) -> Result<&Poly<F::Elem>, InvariantError> {
        self.get(name)?.in_generators.as_ref().ok_or_else(|| InvariantError::MissingForm(format!("{name} in generators")))
    }

    /// Expands a weighted polynomial in the generators into x, y, z.
    pub fn expand(&self, w: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.generators.apply(w)
    }

    /// Product of named forms with exponents, as a weighted polynomial.
    pub fn weighted_monomial(&self, factors: &[(&str, u32)]) -> Result<Poly<F::Elem>, InvariantError> {
        let mut acc = self.weighted.one();
        for &(name, e) in factors {
            acc = self.weighted.mul(&acc, &self.weighted.pow(self.weighted_form(name)?, e));
        }
        Ok(acc)
    }

    /// Image of the point under the quotient map, [Φ_a(p) : Φ_b(p) : Φ_c(p)].
    pub fn quotient_map(&self, p: &[F::Elem; 3]) -> [F::Elem; 3] {
        let g = self.generators.images();
        [0, 1, 2].map(|i| self.ring.eval(&g[i], p))
    }

    /// Whether each form is fixed by every generator of the group.
    pub fn invariance_report(&self, group: &MatrixGroup<F>) -> Result<Vec<(String, bool)>, InvariantError> {
        self.forms.iter().map(|f| Ok((f.name.clone(), group.is_invariant(&self.ring, &f.poly)?))).collect()
    }
}

/// rational constant n/d in the field
pub(crate) fn q<F: Field>(f: &F, n: i64, d: i64) -> Result<F::Elem, FieldError> {
    f.div(&f.from_i64(n), &f.from_i64(d))
}

/// Rescales `p` so that its x^d coefficient is 1.
pub(crate) fn normalize_x_power<F: Field>(ring: &PolyRing<F>, p: &Poly<F::Elem>, name: &str) -> Result<Poly<F::Elem>, InvariantError> {
    let d = ring.homogeneous_degree(p)?;
    let c = ring.coeff(p, [d, 0, 0]);
    if ring.field().is_zero(&c) {
        return Err(InvariantError::Normalization(name.to_string(), d));
    }
    Ok(ring.scale(p, &ring.field().inv(&c)?))
}

/// Local expansions of the three generators at a point, with cached powers,
/// so that weighted polynomials can be evaluated in the truncated local ring
/// without expanding them in x, y, z.
pub struct LocalGenerators<'a, F: Field> {
    inv: &'a InvariantSet<F>,
    order: usize,
    powers: [Vec<LocalExpansion<F::Elem>>; 3],
}

impl<'a, F: Field> LocalGenerators<'a, F> {
    pub fn new(inv: &'a InvariantSet<F>, point: &Point<F::Elem>, order: usize) -> Self {
        let f = inv.field();
        let g = inv.generators.images();
        let powers = [0, 1, 2].map(|i| vec![LocalExpansion::constant(f, f.one(), order), local_expand(f, &g[i], point, order)]);
        LocalGenerators { inv, order, powers }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn power(&mut self, i: usize, e: usize) -> &LocalExpansion<F::Elem> {
        let f = self.inv.field();
        while self.powers[i].len() <= e {
            let next = self.powers[i].last().unwrap().mul(f, &self.powers[i][1]);
            self.powers[i].push(next);
        }
        &self.powers[i][e]
    }

    /// Local expansion of the monomial g₀^a g₁^b g₂^c in the generators.
    pub fn monomial(&mut self, exps: [u32; 3]) -> LocalExpansion<F::Elem> {
        let f = self.inv.field();
        for (i, &e) in exps.iter().enumerate() {
            self.power(i, e as usize);
        }
        let [a, b, c] = exps.map(|e| e as usize);
        self.powers[0][a].mul(f, &self.powers[1][b]).mul(f, &self.powers[2][c])
    }

    pub fn eval(&mut self, w: &Poly<F::Elem>) -> LocalExpansion<F::Elem> {
        let f = self.inv.field().clone();
        let mut acc = LocalExpansion::constant(&f, f.zero(), self.order);
        for (m, c) in w.terms() {
            acc = acc.add(&f, &self.monomial(m.0).scale(&f, c));
        }
        acc
    }
}

/// Multiplicity at `point` of the curve given by a weighted polynomial in
/// the generators, or `None` if it is at least `bound`.
pub fn multiplicity_at<F: Field>(inv: &InvariantSet<F>, w: &Poly<F::Elem>, point: &Point<F::Elem>, bound: usize) -> Option<usize> {
    LocalGenerators::new(inv, point, bound).eval(w).multiplicity(inv.field())
}

/// Lowest nonzero homogeneous part of a form's local expansion at a point,
/// as coefficients indexed by the power of the second local coordinate.
pub fn leading_local_form<F: Field>(
    field: &F,
    poly: &Poly<F::Elem>,
    point: &Point<F::Elem>,
) -> Result<(usize, Vec<F::Elem>), InvariantError> {
    if poly.is_zero() {
        return Err(InvariantError::Structure("zero form has no leading local form".into()));
    }
    let degree = poly.degree().unwrap_or(0) as usize;
    let mut order = 4.min(degree + 1);
    loop {
        let e = local_expand(field, poly, point, order);
        if let Some(t) = e.multiplicity(field) {
            return Ok((t, e.homogeneous_part(t).to_vec()));
        }
        order = (order * 2).min(degree + 1);
    }
}

fn binary_form_mul<F: Field>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            f.add_assign(&mut out[i + j], &f.mul(x, y));
        }
    }
    out
}

fn monomial_leading_form<F: Field>(
    inv: &InvariantSet<F>,
    factors: &[(&str, u32)],
    point: &Point<F::Elem>,
) -> Result<(u32, usize, Vec<F::Elem>), InvariantError> {
    let f = inv.field();
    let (mut degree, mut order, mut form) = (0u32, 0usize, vec![f.one()]);
    for &(name, e) in factors {
        let nf = inv.get(name)?;
        let (t, lead) = leading_local_form(f, &nf.poly, point)?;
        for _ in 0..e {
            form = binary_form_mul(f, &form, &lead);
        }
        degree += nf.degree * e;
        order += t * e as usize;
    }
    Ok((degree, order, form))
}

/// Value at a point of a degree-0 ratio of monomials in the named forms,
/// taken as the ratio of the leading local forms of numerator and
/// denominator.
pub fn degree0_constant<F: Field>(
    inv: &InvariantSet<F>,
    numerator: &[(&str, u32)],
    denominator: &[(&str, u32)],
    point: &Point<F::Elem>,
) -> Result<F::Elem, InvariantError> {
    let f = inv.field();
    let (dn, on, n) = monomial_leading_form(inv, numerator, point)?;
    let (dd, od, d) = monomial_leading_form(inv, denominator, point)?;
    if dn != dd {
        return Err(InvariantError::DegreeMismatch { numerator: dn, denominator: dd });
    }
    if on != od {
        return Err(InvariantError::OrderMismatch { numerator: on, denominator: od });
    }
    let k = d.iter().position(|c| !f.is_zero(c)).expect("leading forms are nonzero");
    let c = f.div(&n[k], &d[k])?;
    if n.iter().zip(&d).any(|(x, y)| *x != f.mul(&c, y)) {
        return Err(InvariantError::NotProportional);
    }
    Ok(c)
}
