//! Polynomials in three variables over a [`Field`], optionally graded by
//! positive weights, with the differential and determinantal constructions
//! used to build invariants.

mod local;
mod text;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use crate::exactfield::{Field, FieldError};
use crate::linalg::Mat3;

pub use local::{chart_coordinates, local_expand, LocalExpansion, Point};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is not homogeneous for weights {0:?}")]
    NotHomogeneous([u32; 3]),
    #[error("ring map image {index} has degree {found}, expected {expected}")]
    ImageDegree { index: usize, expected: u32, found: u32 },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("zero point has no projective representative")]
    ZeroPoint,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Exponent vector of a monomial x^a y^b z^c.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial(pub [u32; 3]);

impl Monomial {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weighted_degree(&self, w: &[u32; 3]) -> u32 {
        self.0.iter().zip(w).map(|(e, w)| e * w).sum()
    }

    pub fn times(&self, other: &Monomial) -> Monomial {
        Monomial(std::array::from_fn(|i| self.0[i] + other.0[i]))
    }
}

/// Graded lexicographic order (total degree first, then x, y, z).
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    terms: BTreeMap<Monomial, E>,
}

impl<E: Clone> Poly<E> {
    pub fn zero() -> Self {
        Poly { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &E)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&E> {
        self.terms.get(m)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &E)> {
        self.terms.iter().next_back()
    }

    /// Total degree of the highest term.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn weighted_degree(&self, w: &[u32; 3]) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.weighted_degree(w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }
}

/// A polynomial ring k[x, y, z] with variable weights.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    field: F,
    weights: [u32; 3],
    names: [String; 3],
}

impl<F: Field> PolyRing<F> {
    /// Standard graded k[x, y, z].
    pub fn standard(field: F) -> Self {
        PolyRing { field, weights: [1, 1, 1], names: ["x".into(), "y".into(), "z".into()] }
    }

    pub fn weighted(field: F, weights: [u32; 3], names: [&str; 3]) -> Self {
        PolyRing { field, weights, names: names.map(String::from) }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn weights(&self) -> [u32; 3] {
        self.weights
    }

    pub fn names(&self) -> &[String; 3] {
        &self.names
    }

    pub fn from_terms<I>(&self, terms: I) -> Poly<F::Elem>
    where
        I: IntoIterator<Item = (Monomial, F::Elem)>,
    {
        let mut p = Poly::zero();
        for (m, c) in terms {
            self.add_term(&mut p, m, c);
        }
        p
    }

    pub fn add_term(&self, p: &mut Poly<F::Elem>, m: Monomial, c: F::Elem) {
        if self.field.is_zero(&c) {
            return;
        }
        match p.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = self.field.add(e.get(), &c);
                if self.field.is_zero(&s) {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        self.from_terms([(Monomial([0, 0, 0]), c)])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn var(&self, i: usize) -> Poly<F::Elem> {
        let mut e = [0; 3];
        e[i] = 1;
        self.from_terms([(Monomial(e), self.field.one())])
    }

    pub fn monomial(&self, c: F::Elem, exps: [u32; 3]) -> Poly<F::Elem> {
        self.from_terms([(Monomial(exps), c)])
    }

    /// Polynomial with integer coefficients given as (coefficient, exponents).
    pub fn from_int_terms(&self, terms: &[(i64, [u32; 3])]) -> Poly<F::Elem> {
        self.from_terms(terms.iter().map(|&(c, e)| (Monomial(e), self.field.from_i64(c))))
    }

    pub fn linear_form(&self, coeffs: &[F::Elem; 3]) -> Poly<F::Elem> {
        self.from_terms((0..3).map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            (Monomial(e), coeffs[i].clone())
        }))
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            self.add_term(&mut out, *m, c.clone());
        }
        out
    }

    pub fn add_assign(&self, a: &mut Poly<F::Elem>, b: &Poly<F::Elem>) {
        for (m, c) in &b.terms {
            self.add_term(a, *m, c.clone());
        }
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly { terms: a.terms.iter().map(|(m, c)| (*m, self.field.neg(c))).collect() }
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.add_term(&mut out, *m, self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        if self.field.is_zero(c) {
            return Poly::zero();
        }
        Poly { terms: a.terms.iter().map(|(m, x)| (*m, self.field.mul(x, c))).collect() }
    }

    pub fn scale_int(&self, a: &Poly<F::Elem>, c: i64) -> Poly<F::Elem> {
        self.scale(a, &self.field.from_i64(c))
    }

    /// Divides by an integer; fails when it is zero in the field.
    pub fn div_int(&self, a: &Poly<F::Elem>, c: i64) -> Result<Poly<F::Elem>, FieldError> {
        let inv = self.field.inv(&self.field.from_i64(c))?;
        Ok(self.scale(a, &inv))
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(a.len() * b.len() / 2 + 1);
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let prod = self.field.mul(ca, cb);
                let m = ma.times(mb);
                match acc.get_mut(&m) {
                    Some(v) => *v = self.field.add(v, &prod),
                    None => {
                        acc.insert(m, prod);
                    }
                }
            }
        }
        Poly { terms: acc.into_iter().filter(|(_, c)| !self.field.is_zero(c)).collect() }
    }

    pub fn pow(&self, a: &Poly<F::Elem>, e: u32) -> Poly<F::Elem> {
        let mut acc = self.one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    pub fn product<'a, I>(&self, factors: I) -> Poly<F::Elem>
    where
        I: IntoIterator<Item = &'a Poly<F::Elem>>,
        F::Elem: 'a,
    {
        let mut acc = self.one();
        for f in factors {
            acc = self.mul(&acc, f);
        }
        acc
    }

    pub fn derivative(&self, a: &Poly<F::Elem>, var: usize) -> Poly<F::Elem> {
        self.from_terms(a.terms.iter().filter(|(m, _)| m.0[var] > 0).map(|(m, c)| {
            let mut e = m.0;
            let k = e[var];
            e[var] -= 1;
            (Monomial(e), self.field.mul(c, &self.field.from_i64(k as i64)))
        }))
    }

    pub fn gradient(&self, a: &Poly<F::Elem>) -> [Poly<F::Elem>; 3] {
        std::array::from_fn(|i| self.derivative(a, i))
    }

    pub fn eval(&self, a: &Poly<F::Elem>, point: &[F::Elem; 3]) -> F::Elem {
        let f = &self.field;
        let maxdeg = a.terms.keys().flat_map(|m| m.0).max().unwrap_or(0) as usize;
        let powers: Vec<Vec<F::Elem>> = point
            .iter()
            .map(|v| {
                let mut p = Vec::with_capacity(maxdeg + 1);
                p.push(f.one());
                for k in 1..=maxdeg {
                    p.push(f.mul(&p[k - 1], v));
                }
                p
            })
            .collect();
        let mut acc = f.zero();
        for (m, c) in &a.terms {
            let mut t = c.clone();
            for i in 0..3 {
                if m.0[i] > 0 {
                    t = f.mul(&t, &powers[i][m.0[i] as usize]);
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }

    /// Determinant of a square matrix of polynomials by the Leibniz formula.
    pub fn determinant(&self, m: &[Vec<Poly<F::Elem>>]) -> Poly<F::Elem> {
        let n = m.len();
        let mut total = Poly::zero();
        for (perm, sign) in permutations(n) {
            if (0..n).any(|i| m[i][perm[i]].is_zero()) {
                continue;
            }
            let mut term = m[0][perm[0]].clone();
            for i in 1..n {
                term = self.mul(&term, &m[i][perm[i]]);
            }
            if sign < 0 {
                term = self.neg(&term);
            }
            self.add_assign(&mut total, &term);
        }
        total
    }

    pub fn hessian_matrix(&self, f: &Poly<F::Elem>) -> Vec<Vec<Poly<F::Elem>>> {
        let g = self.gradient(f);
        (0..3).map(|i| (0..3).map(|j| self.derivative(&g[i], j)).collect()).collect()
    }

    /// det of the Hessian matrix of `f`.
    pub fn hessian(&self, f: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.determinant(&self.hessian_matrix(f))
    }

    /// det [[H(f), ∇g], [∇gᵀ, 0]].
    pub fn bordered_hessian(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>) -> Poly<F::Elem> {
        let h = self.hessian_matrix(f);
        let dg = self.gradient(g);
        let mut m: Vec<Vec<Poly<F::Elem>>> = h
            .into_iter()
            .zip(dg.iter())
            .map(|(mut row, d)| {
                row.push(d.clone());
                row
            })
            .collect();
        let mut last: Vec<Poly<F::Elem>> = dg.to_vec();
        last.push(Poly::zero());
        m.push(last);
        self.determinant(&m)
    }

    /// Jacobian determinant of three polynomials.
    pub fn jacobian(&self, f: &Poly<F::Elem>, g: &Poly<F::Elem>, h: &Poly<F::Elem>) -> Poly<F::Elem> {
        let m: Vec<Vec<Poly<F::Elem>>> = [f, g, h].iter().map(|p| self.gradient(p).to_vec()).collect();
        self.determinant(&m)
    }

    /// f(M·v): the variable vector is replaced by M times itself. Computed
    /// by factoring M into elementary matrices, each of which acts cheaply.
    pub fn linear_substitution(&self, a: &Poly<F::Elem>, m: &Mat3<F::Elem>) -> Result<Poly<F::Elem>, PolyError> {
        let mut p = a.clone();
        for op in elementary_factors(&self.field, m)? {
            p = self.apply_elementary(&p, &op);
        }
        Ok(p)
    }

    /// f(M·v) by expanding products of the linear forms directly; slow, but
    /// independent of the elementary factorization.
    pub fn linear_substitution_naive(&self, a: &Poly<F::Elem>, m: &Mat3<F::Elem>) -> Poly<F::Elem> {
        let forms: [Poly<F::Elem>; 3] = std::array::from_fn(|i| self.linear_form(&m[i]));
        let mut out = Poly::zero();
        for (mono, c) in &a.terms {
            let mut t = self.constant(c.clone());
            for i in 0..3 {
                for _ in 0..mono.0[i] {
                    t = self.mul(&t, &forms[i]);
                }
            }
            self.add_assign(&mut out, &t);
        }
        out
    }

    fn apply_elementary(&self, a: &Poly<F::Elem>, op: &Elementary<F::Elem>) -> Poly<F::Elem> {
        let f = &self.field;
        match op {
            Elementary::Swap(i, j) => Poly {
                terms: a
                    .terms
                    .iter()
                    .map(|(m, c)| {
                        let mut e = m.0;
                        e.swap(*i, *j);
                        (Monomial(e), c.clone())
                    })
                    .collect(),
            },
            Elementary::Scale(i, lambda) => {
                let maxe = a.terms.keys().map(|m| m.0[*i]).max().unwrap_or(0);
                let pw = power_table(f, lambda, maxe as usize);
                Poly { terms: a.terms.iter().map(|(m, c)| (*m, f.mul(c, &pw[m.0[*i] as usize]))).collect() }
            }
            Elementary::AddMultiple { target, source, factor } => {
                // x_target -> x_target + factor * x_source
                let maxe = a.terms.keys().map(|m| m.0[*target]).max().unwrap_or(0) as usize;
                let pw = power_table(f, factor, maxe);
                let binom = binomial_table(f, maxe);
                let mut out = Poly::zero();
                for (m, c) in &a.terms {
                    let e = m.0[*target] as usize;
                    for k in 0..=e {
                        let coeff = f.mul(c, &f.mul(&binom[e][k], &pw[k]));
                        let mut ex = m.0;
                        ex[*target] -= k as u32;
                        ex[*source] += k as u32;
                        self.add_term(&mut out, Monomial(ex), coeff);
                    }
                }
                out
            }
        }
    }

    /// Checks that `a` is homogeneous for this ring's weights and returns
    /// its weighted degree (0 for the zero polynomial).
    pub fn homogeneous_degree(&self, a: &Poly<F::Elem>) -> Result<u32, PolyError> {
        if a.is_zero() {
            return Ok(0);
        }
        a.weighted_degree(&self.weights).ok_or(PolyError::NotHomogeneous(self.weights))
    }

    /// Coefficient of a monomial, zero if absent.
    pub fn coeff(&self, a: &Poly<F::Elem>, exps: [u32; 3]) -> F::Elem {
        a.coefficient(&Monomial(exps)).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Coefficient vector along a basis of monomials.
    pub fn coordinates(&self, a: &Poly<F::Elem>, basis: &[Monomial]) -> Vec<F::Elem> {
        basis.iter().map(|m| a.coefficient(m).cloned().unwrap_or_else(|| self.field.zero())).collect()
    }

    pub fn from_coordinates(&self, coords: &[F::Elem], basis: &[Monomial]) -> Poly<F::Elem> {
        self.from_terms(basis.iter().copied().zip(coords.iter().cloned()))
    }

    /// Whether `b = c·a` for some nonzero scalar c; returns c.
    pub fn proportionality(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Option<F::Elem> {
        let f = &self.field;
        let (m, ca) = a.leading_term()?;
        let cb = b.coefficient(m)?;
        let c = f.div(cb, ca).ok()?;
        (self.scale(a, &c) == *b).then_some(c)
    }
}

pub(crate) fn power_table<F: Field>(f: &F, x: &F::Elem, n: usize) -> Vec<F::Elem> {
    let mut pw = Vec::with_capacity(n + 1);
    pw.push(f.one());
    for k in 1..=n {
        pw.push(f.mul(&pw[k - 1], x));
    }
    pw
}

/// Pascal's triangle with entries in the field, rows 0..=n.
pub(crate) fn binomial_table<F: Field>(f: &F, n: usize) -> Vec<Vec<F::Elem>> {
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![f.one(); i + 1];
        for k in 1..i {
            row[k] = f.add(&rows[i - 1][k - 1], &rows[i - 1][k]);
        }
        rows.push(row);
    }
    rows
}

#[derive(Debug, Clone)]
enum Elementary<E> {
    Swap(usize, usize),
    Scale(usize, E),
    AddMultiple { target: usize, source: usize, factor: E },
}

/// Elementary matrices E₁, …, E_k with M = E₁ E₂ ⋯ E_k.
fn elementary_factors<F: Field>(f: &F, m: &Mat3<F::Elem>) -> Result<Vec<Elementary<F::Elem>>, PolyError> {
    let mut a = m.clone();
    let mut inverses = Vec::new();
    for c in 0..3 {
        let p = (c..3).find(|&r| !f.is_zero(&a[r][c])).ok_or(PolyError::SingularMatrix)?;
        if p != c {
            a.swap(p, c);
            inverses.push(Elementary::Swap(p, c));
        }
        let piv = a[c][c].clone();
        let inv = f.inv(&piv)?;
        if !f.is_one(&piv) {
            for x in a[c].iter_mut() {
                *x = f.mul(x, &inv);
            }
            inverses.push(Elementary::Scale(c, piv));
        }
        for r in 0..3 {
            if r != c && !f.is_zero(&a[r][c]) {
                let t = a[r][c].clone();
                for k in 0..3 {
                    a[r][k] = f.sub(&a[r][k], &f.mul(&t, &a[c][k]));
                }
                // row_r -= t·row_c has inverse row_r += t·row_c
                inverses.push(Elementary::AddMultiple { target: r, source: c, factor: t });
            }
        }
    }
    Ok(inverses)
}

/// All permutations of 0..n with their signs.
fn permutations(n: usize) -> Vec<(Vec<usize>, i32)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, out: &mut Vec<(Vec<usize>, i32)>) {
        if prefix.len() == n {
            let mut inversions = 0;
            for i in 0..n {
                for j in (i + 1)..n {
                    if prefix[i] > prefix[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for k in 0..n {
            if !used[k] {
                used[k] = true;
                prefix.push(k);
                rec(prefix, used, n, out);
                prefix.pop();
                used[k] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], n, &mut out);
    out
}

/// Monomials of weighted degree `d`, in decreasing lexicographic order of
/// exponent vectors.
pub fn weighted_basis(weights: [u32; 3], d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    for a in (0..=d / weights[0]).rev() {
        let r1 = d - a * weights[0];
        for b in (0..=r1 / weights[1]).rev() {
            let r2 = r1 - b * weights[1];
            if r2.is_multiple_of(weights[2]) {
                out.push(Monomial([a, b, r2 / weights[2]]));
            }
        }
    }
    out
}

/// Homomorphism from a weighted ring to another ring, given by the images
/// of the three variables.
#[derive(Debug, Clone)]
pub struct RingMap<F: Field> {
    source: PolyRing<F>,
    target: PolyRing<F>,
    images: [Poly<F::Elem>; 3],
}

impl<F: Field> RingMap<F> {
    /// Each image must be homogeneous of degree equal to its variable's weight.
    pub fn new(source: PolyRing<F>, target: PolyRing<F>, images: [Poly<F::Elem>; 3]) -> Result<Self, PolyError> {
        for (i, img) in images.iter().enumerate() {
            let d = target.homogeneous_degree(img)?;
            if !img.is_zero() && d != source.weights[i] {
                return Err(PolyError::ImageDegree { index: i, expected: source.weights[i], found: d });
            }
        }
        Ok(RingMap { source, target, images })
    }

    pub fn source(&self) -> &PolyRing<F> {
        &self.source
    }

    pub fn target(&self) -> &PolyRing<F> {
        &self.target
    }

    pub fn images(&self) -> &[Poly<F::Elem>; 3] {
        &self.images
    }

    pub fn apply(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let t = &self.target;
        let maxe: [u32; 3] = std::array::from_fn(|i| a.terms.keys().map(|m| m.0[i]).max().unwrap_or(0));
        let powers: Vec<Vec<Poly<F::Elem>>> = (0..3)
            .map(|i| {
                let mut p = vec![t.one()];
                for k in 1..=maxe[i] as usize {
                    let next = t.mul(&p[k - 1], &self.images[i]);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut out = Poly::zero();
        for (m, c) in &a.terms {
            let mut term = t.constant(c.clone());
            for i in 0..3 {
                if m.0[i] > 0 {
                    term = t.mul(&term, &powers[i][m.0[i] as usize]);
                }
            }
            t.add_assign(&mut out, &term);
        }
        out
    }
}
