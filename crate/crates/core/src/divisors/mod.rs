//! Divisor classes on the blowup of ℙ² at the configuration points,
//! negative-curve searches and Waldschmidt-constant certificates.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DivisorError {
    #[error("divisor classes live on different blowups")]
    FormMismatch,
    #[error("expected {expected} multiplicities, got {found}")]
    WrongArity { expected: usize, found: usize },
    #[error("requested k = {requested} exceeds the certified range (k <= {certified})")]
    UncertifiedParameter { requested: String, certified: String },
}

/// The intersection form on the blowup: H² = 1, E_c² = −(size of class c),
/// all other products zero. Each class is the sum of the exceptional
/// curves over one set of points.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionForm {
    pub name: String,
    pub labels: Vec<String>,
    pub sizes: Vec<u64>,
}

impl IntersectionForm {
    pub fn new(name: &str, classes: &[(&str, u64)]) -> Arc<Self> {
        Arc::new(IntersectionForm {
            name: name.to_string(),
            labels: classes.iter().map(|(l, _)| l.to_string()).collect(),
            sizes: classes.iter().map(|(_, s)| *s).collect(),
        })
    }

    pub fn klein() -> Arc<Self> {
        Self::new("klein", &[("4", 21), ("3", 28)])
    }

    pub fn wiman() -> Arc<Self> {
        Self::new("wiman", &[("5", 36), ("4", 45), ("3", 120)])
    }

    /// Wiman blowup with the two triple-point orbits kept apart.
    pub fn wiman_split() -> Arc<Self> {
        Self::new("wiman-split", &[("5", 36), ("4", 45), ("3a", 60), ("3b", 60)])
    }

    pub fn arity(&self) -> usize {
        self.sizes.len()
    }
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// The class dH − Σ m_c E_c with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    form: Arc<IntersectionForm>,
    pub degree: BigRational,
    /// Multiplicity m_c of each class; the coefficient of E_c is −m_c.
    pub mults: Vec<BigRational>,
}

impl DivisorClass {
    pub fn new(form: &Arc<IntersectionForm>, degree: BigRational, mults: Vec<BigRational>) -> Result<Self, DivisorError> {
        if mults.len() != form.arity() {
            return Err(DivisorError::WrongArity { expected: form.arity(), found: mults.len() });
        }
        Ok(DivisorClass { form: form.clone(), degree, mults })
    }

    /// Integer class; panics on arity mismatch, for compile-time-known data.
    pub fn int(form: &Arc<IntersectionForm>, degree: i64, mults: &[i64]) -> Self {
        Self::new(form, rat(degree), mults.iter().map(|&m| rat(m)).collect()).expect("arity matches the form")
    }

    pub fn form(&self) -> &Arc<IntersectionForm> {
        &self.form
    }

    fn check(&self, other: &DivisorClass) -> Result<(), DivisorError> {
        if self.form == other.form || *self.form == *other.form {
            Ok(())
        } else {
            Err(DivisorError::FormMismatch)
        }
    }

    pub fn intersect(&self, other: &DivisorClass) -> Result<BigRational, DivisorError> {
        self.check(other)?;
        let mut acc = &self.degree * &other.degree;
        for ((a, b), s) in self.mults.iter().zip(&other.mults).zip(&self.form.sizes) {
            acc -= a * b * BigRational::from_integer(BigInt::from(*s));
        }
        Ok(acc)
    }

    pub fn self_intersection(&self) -> BigRational {
        self.intersect(self).expect("same form")
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, DivisorError> {
        self.check(other)?;
        Ok(DivisorClass {
            form: self.form.clone(),
            degree: &self.degree + &other.degree,
            mults: self.mults.iter().zip(&other.mults).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> DivisorClass {
        DivisorClass { form: self.form.clone(), degree: &self.degree * c, mults: self.mults.iter().map(|m| m * c).collect() }
    }

    /// Integer coordinates (d, m_1, ..) when all coefficients are integral.
    pub fn as_integers(&self) -> Option<(i64, Vec<i64>)> {
        let to_i = |q: &BigRational| -> Option<i64> {
            if q.is_integer() {
                i64::try_from(q.to_integer()).ok()
            } else {
                None
            }
        };
        Some((to_i(&self.degree)?, self.mults.iter().map(to_i).collect::<Option<Vec<_>>>()?))
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |q: &BigRational| {
            if q.is_integer() {
                q.to_integer().to_string()
            } else {
                format!("({q})")
            }
        };
        write!(f, "{}H", show(&self.degree))?;
        for (m, l) in self.mults.iter().zip(&self.form.labels) {
            if m.is_zero() {
                continue;
            }
            let mag = m.abs();
            let sign = if m.is_negative() { '+' } else { '-' };
            if mag.is_one() {
                write!(f, " {sign} E{l}")?;
            } else {
                write!(f, " {sign} {}E{l}", show(&mag))?;
            }
        }
        Ok(())
    }
}

/// A formal integer-or-rational combination Σ c_i C_i of classes.
pub type FormalSum<'a> = [(BigRational, &'a DivisorClass)];

fn evaluate_sum(terms: &FormalSum<'_>) -> Result<Option<DivisorClass>, DivisorError> {
    let mut acc: Option<DivisorClass> = None;
    for (c, d) in terms {
        let t = d.scale(c);
        acc = Some(match acc {
            None => t,
            Some(a) => a.add(&t)?,
        });
    }
    Ok(acc)
}

/// Coefficientwise equality of two formal sums of classes.
pub fn verify_divisor_identity(lhs: &FormalSum<'_>, rhs: &FormalSum<'_>) -> Result<bool, DivisorError> {
    let (l, r) = (evaluate_sum(lhs)?, evaluate_sum(rhs)?);
    Ok(match (l, r) {
        (Some(l), Some(r)) => {
            l.check(&r)?;
            l.degree == r.degree && l.mults == r.mults
        }
        (None, None) => true,
        (Some(x), None) | (None, Some(x)) => x.degree.is_zero() && x.mults.iter().all(Zero::is_zero),
    })
}

mod search;
mod waldschmidt;

pub use search::{negative_curve_search, series_spec_for, NegSearchReport, SearchCandidate, SearchOptions};
pub use waldschmidt::{
    alpha_hat_threshold, binomial_identity, klein_dk, klein_ledger_bound, klein_waldschmidt, wiman_waldschmidt, IdentityCheck, LowerBound,
    NefCertificate, NefMethod, PolyInK, WaldschmidtReport,
};
