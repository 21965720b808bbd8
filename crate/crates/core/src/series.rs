//! Invariant linear series T_d(−Σ mᵢEᵢ): forms of degree d in the invariant
//! subring with prescribed multiplicities along the orbits of configuration
//! points, their expected dimension and an exact basis.

use std::collections::HashMap;

use serde::Serialize;

use crate::configs::LineConfiguration;
use crate::exactfield::Field;
use crate::invariants::{InvariantSet, LocalGenerators};
use crate::linalg::kernel;
use crate::polyring::{weighted_basis, Monomial, Point, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("no orbit class labelled {0}")]
    UnknownClass(String),
    #[error("dimension {dim} is below the expected dimension {edim}")]
    BelowExpected { dim: usize, edim: usize },
    #[error("basis element {index} has multiplicity {found:?} < {required} at a point of class {class}")]
    MultiplicityCheck { index: usize, class: String, required: u32, found: Option<usize> },
}

/// Number of monomials u^a v^b of weighted degree below m, with deg u = 2
/// and deg v = n.
pub fn cond(n: u32, m: u32) -> usize {
    (0i64..).map(|b| m as i64 - n as i64 * b).take_while(|&rest| rest > 0).map(|rest| (rest as usize).div_ceil(2)).sum()
}

/// A degree together with a multiplicity for each orbit class; classes not
/// listed have multiplicity 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SeriesSpec {
    pub d: u32,
    pub multiplicities: Vec<(String, u32)>,
}

impl SeriesSpec {
    pub fn new(d: u32, multiplicities: &[(&str, u32)]) -> Self {
        SeriesSpec { d, multiplicities: multiplicities.iter().map(|&(l, m)| (l.to_string(), m)).collect() }
    }

    pub fn klein(d: u32, m4: u32, m3: u32) -> Self {
        SeriesSpec::new(d, &[("4", m4), ("3", m3)])
    }

    /// Both triple orbits get the same multiplicity m₃.
    pub fn wiman(d: u32, m5: u32, m4: u32, m3: u32) -> Self {
        SeriesSpec::wiman_split(d, m5, m4, m3, m3)
    }

    pub fn wiman_split(d: u32, m5: u32, m4: u32, m3a: u32, m3b: u32) -> Self {
        SeriesSpec::new(d, &[("5", m5), ("4", m4), ("3a", m3a), ("3b", m3b)])
    }

    pub fn multiplicity(&self, label: &str) -> u32 {
        self.multiplicities.iter().find(|(l, _)| l == label).map_or(0, |&(_, m)| m)
    }
}

#[derive(Debug, Clone)]
pub struct SeriesBasis<E> {
    pub spec: SeriesSpec,
    pub edim: usize,
    /// Weighted monomials spanning T_d, in the order used for coordinates.
    pub monomials: Vec<Monomial>,
    /// Basis of the series as weighted polynomials in the generators.
    pub basis: Vec<Poly<E>>,
}

impl<E> SeriesBasis<E> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ExpectedDimReport {
    pub spec: SeriesSpec,
    pub dim_t: usize,
    pub dim: usize,
    pub edim: usize,
    pub equal: bool,
}

/// Computes series for one configuration and its invariants, caching the
/// local expansions of the generators at each class representative.
pub struct SeriesEngine<'a, F: Field> {
    inv: &'a InvariantSet<F>,
    config: &'a LineConfiguration<F>,
    local: HashMap<(usize, usize), LocalGenerators<'a, F>>,
}

impl<'a, F: Field> SeriesEngine<'a, F> {
    pub fn new(inv: &'a InvariantSet<F>, config: &'a LineConfiguration<F>) -> Self {
        SeriesEngine { inv, config, local: HashMap::new() }
    }

    pub fn invariants(&self) -> &'a InvariantSet<F> {
        self.inv
    }

    pub fn configuration(&self) -> &'a LineConfiguration<F> {
        self.config
    }

    pub fn dim_t(&self, d: u32) -> usize {
        weighted_basis(self.inv.weighted.weights(), d).len()
    }

    fn class_index(&self, label: &str) -> Result<usize, SeriesError> {
        self.config.classes.iter().position(|c| c.label == label).ok_or_else(|| SeriesError::UnknownClass(label.to_string()))
    }

    pub fn edim(&self, spec: &SeriesSpec) -> Result<usize, SeriesError> {
        let mut conditions = 0;
        for (label, m) in &spec.multiplicities {
            let class = &self.config.classes[self.class_index(label)?];
            conditions += cond(class.multiplicity, *m);
        }
        Ok(self.dim_t(spec.d).saturating_sub(conditions))
    }

    /// Exact kernel of T_d → ⊕ 𝒪_p/𝔪_p^{mᵢ}, with one representative p per
    /// orbit class.
    pub fn basis(&mut self, spec: &SeriesSpec) -> Result<SeriesBasis<F::Elem>, SeriesError> {
        let f = self.inv.field().clone();
        let monomials = weighted_basis(self.inv.weighted.weights(), spec.d);
        let edim = self.edim(spec)?;
        let mut columns: Vec<Vec<F::Elem>> = vec![Vec::new(); monomials.len()];
        for (label, m) in &spec.multiplicities {
            if *m == 0 || monomials.is_empty() {
                continue;
            }
            let ci = self.class_index(label)?;
            let rep = self.config.classes[ci].representative.clone();
            let inv = self.inv;
            let local = self.local.entry((ci, *m as usize)).or_insert_with(|| LocalGenerators::new(inv, &rep, *m as usize));
            for (col, mono) in columns.iter_mut().zip(&monomials) {
                col.extend_from_slice(local.monomial(mono.0).coefficients());
            }
        }
        let nrows = columns.first().map_or(0, |c| c.len());
        let rows: Vec<Vec<F::Elem>> = (0..nrows).map(|r| columns.iter().map(|c| c[r].clone()).collect()).collect();
        let ker = if monomials.is_empty() { Vec::new() } else { kernel(&f, rows, monomials.len()) };
        let w = &self.inv.weighted;
        let basis = ker.iter().map(|v| w.from_coordinates(v, &monomials)).collect();
        Ok(SeriesBasis { spec: spec.clone(), edim, monomials, basis })
    }

    pub fn dimension(&mut self, spec: &SeriesSpec) -> Result<usize, SeriesError> {
        Ok(self.basis(spec)?.dim())
    }

    /// Compares the exact dimension with the expected one; a dimension below
    /// the expected dimension is an error.
    pub fn check_expected_dim(&mut self, spec: &SeriesSpec) -> Result<ExpectedDimReport, SeriesError> {
        let dim = self.dimension(spec)?;
        let edim = self.edim(spec)?;
        if dim < edim {
            return Err(SeriesError::BelowExpected { dim, edim });
        }
        Ok(ExpectedDimReport { spec: spec.clone(), dim_t: self.dim_t(spec.d), dim, edim, equal: dim == edim })
    }

    /// Checks every basis element at the representative and at one further
    /// point of each class with positive multiplicity.
    pub fn verify_basis(&self, basis: &SeriesBasis<F::Elem>) -> Result<(), SeriesError> {
        for (label, m) in &basis.spec.multiplicities {
            if *m == 0 {
                continue;
            }
            let class = &self.config.classes[self.class_index(label)?];
            let others: Vec<&Point<F::Elem>> = class.points.iter().filter(|p| **p != class.representative).take(1).collect();
            for p in std::iter::once(&class.representative).chain(others) {
                let mut local = LocalGenerators::new(self.inv, p, *m as usize);
                for (index, b) in basis.basis.iter().enumerate() {
                    let e = local.eval(b);
                    if !e.vanishes_to_order(self.inv.field(), *m as usize) {
                        return Err(SeriesError::MultiplicityCheck {
                            index,
                            class: label.clone(),
                            required: *m,
                            found: e.multiplicity(self.inv.field()),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}
