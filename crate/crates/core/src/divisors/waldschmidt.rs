use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::{rat, ratio, verify_divisor_identity, DivisorClass, DivisorError, IntersectionForm};

fn ser_rat<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

fn ser_opt_rat<S: Serializer>(q: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match q {
        Some(q) => s.serialize_str(&q.to_string()),
        None => s.serialize_none(),
    }
}

/// Polynomial in k with rational coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyInK(Vec<BigRational>);

impl PolyInK {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        let mut p = PolyInK(coeffs);
        while p.0.last().is_some_and(Zero::is_zero) {
            p.0.pop();
        }
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// The binomial coefficient C(ak+b, 2) as a polynomial in k.
    pub fn binomial2(a: i64, b: i64) -> Self {
        let half = ratio(1, 2);
        Self::new(vec![rat(b * (b - 1)) * &half, rat(a * (2 * b - 1)) * &half, rat(a * a) * &half])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.0
    }

    pub fn add(&self, other: &PolyInK) -> PolyInK {
        let n = self.0.len().max(other.0.len());
        let get = |p: &PolyInK, i: usize| p.0.get(i).cloned().unwrap_or_else(BigRational::zero);
        Self::new((0..n).map(|i| get(self, i) + get(other, i)).collect())
    }

    pub fn scale(&self, c: &BigRational) -> PolyInK {
        Self::new(self.0.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, k: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * k + c)
    }
}

impl fmt::Display for PolyInK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                1 if mag == rat(1) => write!(f, "k")?,
                1 => write!(f, "{mag}k")?,
                _ if mag == rat(1) => write!(f, "k^{i}")?,
                _ => write!(f, "{mag}k^{i}")?,
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub statement: String,
    pub holds: bool,
}

/// Checks Σ cᵢ·C(aᵢk+bᵢ, 2) = rhs as polynomials in k, for terms (cᵢ, aᵢ, bᵢ).
pub fn binomial_identity(terms: &[(i64, i64, i64)], rhs: &[i64]) -> IdentityCheck {
    let lhs = terms.iter().fold(PolyInK::new(Vec::new()), |acc, &(c, a, b)| acc.add(&PolyInK::binomial2(a, b).scale(&rat(c))));
    let rhs = PolyInK::from_ints(rhs);
    let shown: Vec<String> = terms
        .iter()
        .enumerate()
        .map(|(i, &(c, a, b))| {
            let sign = if c < 0 {
                "- "
            } else if i > 0 {
                "+ "
            } else {
                ""
            };
            let mag = c.abs();
            let coeff = if mag == 1 { String::new() } else { mag.to_string() };
            format!("{sign}{coeff}C({a}k+{b}, 2)")
        })
        .collect();
    IdentityCheck { statement: format!("{} = {rhs}", shown.join(" ")), holds: lhs == rhs }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NefMethod {
    /// The class is effective of degree at most the search bound, so any
    /// curve meeting it negatively is an invariant negative curve of at most
    /// that degree and hence a ledger entry; it meets every entry nonnegatively.
    Ledger,
    /// The class is a nonnegative combination of irreducible curves, each of
    /// which it meets nonnegatively.
    Decomposition,
}

#[derive(Debug, Clone, Serialize)]
pub struct NefCertificate {
    pub divisor: String,
    pub method: NefMethod,
    /// Each curve used, with its intersection number against the divisor.
    pub checks: Vec<(String, String)>,
    pub holds: bool,
}

fn nef_check(d: &DivisorClass, curves: &[DivisorClass], method: NefMethod) -> NefCertificate {
    let mut holds = true;
    let checks = curves
        .iter()
        .map(|c| {
            let x = d.intersect(c).expect("same form");
            holds &= !x.is_negative();
            (c.to_string(), x.to_string())
        })
        .collect();
    NefCertificate { divisor: d.to_string(), method, checks, holds }
}

#[derive(Debug, Clone, Serialize)]
pub struct LowerBound {
    #[serde(serialize_with = "ser_rat")]
    pub value: BigRational,
    #[serde(serialize_with = "ser_opt_rat")]
    pub k: Option<BigRational>,
    pub nef_divisor: String,
    pub certificate: NefCertificate,
}

#[derive(Debug, Clone, Serialize)]
pub struct WaldschmidtReport {
    pub configuration: String,
    /// Best certified lower bound, if any.
    #[serde(serialize_with = "ser_opt_rat")]
    pub lower: Option<BigRational>,
    #[serde(serialize_with = "ser_rat")]
    pub upper: BigRational,
    pub exact: bool,
    pub lower_bounds: Vec<LowerBound>,
    pub identities: Vec<IdentityCheck>,
    pub notes: Vec<String>,
}

/// Sum of all exceptional classes with multiplicity 1: the class of a form
/// of degree β per unit of multiplicity.
fn unit_class(form: &Arc<IntersectionForm>, beta: &BigRational) -> DivisorClass {
    DivisorClass::new(form, beta.clone(), vec![rat(1); form.arity()]).expect("arity matches")
}

/// The least β for which a form of degree βm vanishing to order m at all
/// points is compatible with `nef` being nef, given the negative curve `a`
/// meeting `nef` nonnegatively. Writing F = βH − E and c = max(0, F·A/A²),
/// F − cA meets A in 0 and must meet `nef` nonnegatively; that number is
/// linear in β and its root is returned.
pub fn alpha_hat_threshold(nef: &DivisorClass, a: &DivisorClass) -> BigRational {
    let a2 = a.self_intersection();
    let g = |beta: &BigRational| {
        let f = unit_class(nef.form(), beta);
        let fa = f.intersect(a).expect("same form");
        let c = if fa.is_negative() { fa / &a2 } else { BigRational::zero() };
        f.intersect(nef).expect("same form") - c * a.intersect(nef).expect("same form")
    };
    // g is linear on the range where the stripping coefficient is positive;
    // sample inside that range.
    let g0 = g(&rat(0));
    let slope = g(&rat(1)) - &g0;
    let root = -g0 / slope;
    debug_assert!(g(&root).is_zero(), "threshold lies in the linear range");
    root
}

fn klein_classes(form: &Arc<IntersectionForm>) -> (DivisorClass, DivisorClass) {
    (DivisorClass::int(form, 21, &[4, 3]), DivisorClass::int(form, 42, &[0, 8]))
}

/// D_k = (28k+2)H − 2kE₄ − 5kE₃.
pub fn klein_dk(k: &BigRational) -> DivisorClass {
    let form = IntersectionForm::klein();
    DivisorClass::new(&form, rat(28) * k + rat(2), vec![rat(2) * k, rat(5) * k]).expect("arity matches")
}

fn klein_ledger_k(ledger: &[DivisorClass], d_max: u32) -> Option<i64> {
    let kmax = (d_max as i64 - 2).div_euclid(28);
    (1..=kmax).rev().find(|&k| {
        let dk = klein_dk(&rat(k));
        ledger.iter().all(|c| dk.intersect(c).is_ok_and(|x| !x.is_negative()))
    })
}

/// Lower bound from D_k with integer k, certified nef against a ledger of
/// all invariant negative curves of degree ≤ d_max.
pub fn klein_ledger_bound(k: i64, ledger: &[DivisorClass], d_max: u32) -> Result<LowerBound, DivisorError> {
    let certified = klein_ledger_k(ledger, d_max);
    let dk = klein_dk(&rat(k));
    let cert = nef_check(&dk, ledger, NefMethod::Ledger);
    if k < 1 || certified.is_none_or(|c| k > c) || !cert.holds {
        return Err(DivisorError::UncertifiedParameter {
            requested: k.to_string(),
            certified: certified.map_or("none".into(), |c| c.to_string()),
        });
    }
    let (a, _) = klein_classes(dk.form());
    Ok(LowerBound { value: alpha_hat_threshold(&dk, &a), k: Some(rat(k)), nef_divisor: dk.to_string(), certificate: cert })
}

/// Waldschmidt bounds for the Klein configuration. `ledger` holds the
/// invariant negative curves of degree ≤ d_max found by the search (and may
/// be empty); `curve_verified` says whether the degree-42 curve with
/// multiplicity 8 at the triple points has been verified.
pub fn klein_waldschmidt(ledger: &[DivisorClass], d_max: u32, curve_verified: bool) -> WaldschmidtReport {
    let form = IntersectionForm::klein();
    let (a, b) = klein_classes(&form);
    let mut identities = vec![binomial_identity(&[(1, 28, 4), (-21, 2, 1), (-28, 5, 1)], &[6, 7])];

    // D_k + 3k·A_K = (91k+2)H − 14kE₄ − 14kE₃; both sides are affine in k,
    // so agreement at k = 0 and k = 1 proves it.
    let shifted = |k: i64| DivisorClass::int(&form, 91 * k + 2, &[14 * k, 14 * k]);
    let holds = [0, 1].iter().all(|&k| {
        let dk = klein_dk(&rat(k));
        verify_divisor_identity(&[(rat(1), &dk), (rat(3 * k), &a)], &[(rat(1), &shifted(k))]).unwrap_or(false)
    });
    identities.push(IdentityCheck { statement: "D_k + 3kA = (91k+2)H - 14kE4 - 14kE3".into(), holds });

    let limit = DivisorClass::int(&form, 28, &[2, 5]);
    identities.push(IdentityCheck { statement: format!("({limit})·A = 0"), holds: limit.intersect(&a).is_ok_and(|x| x.is_zero()) });
    let dka = klein_dk(&rat(1)).intersect(&a).expect("same form") - limit.intersect(&a).expect("same form");
    identities.push(IdentityCheck { statement: format!("D_k·A = {dka} > 0 for all k"), holds: dka.is_positive() });

    let mut lower_bounds = Vec::new();
    if let Some(k) = klein_ledger_k(ledger, d_max) {
        if let Ok(lb) = klein_ledger_bound(k, ledger, d_max) {
            lower_bounds.push(lb);
        }
    }
    if curve_verified {
        let k = ratio(16, 7);
        let d = klein_dk(&k);
        let ok = verify_divisor_identity(&[(rat(8), &a), (rat(7), &b)], &[(rat(7), &d)]).unwrap_or(false);
        identities.push(IdentityCheck { statement: format!("8({a}) + 7({b}) = 7({d})"), holds: ok });
        let cert = nef_check(&d, &[a.clone(), b.clone()], NefMethod::Decomposition);
        if ok && cert.holds {
            lower_bounds.push(LowerBound { value: alpha_hat_threshold(&d, &a), k: Some(k), nef_divisor: d.to_string(), certificate: cert });
        }
    }
    let lower = lower_bounds.iter().map(|l| l.value.clone()).max();
    WaldschmidtReport {
        configuration: "klein".into(),
        lower,
        upper: ratio(91, 14),
        exact: false,
        lower_bounds,
        identities,
        notes: vec![format!("nefness of {limit} would give equality with the upper bound; it is not proven")],
    }
}

/// Waldschmidt constant of the Wiman configuration. With the degree-90
/// curve verified, D = 36H − E₅ − 2E₄ − 3E₃ is nef and the bounds meet.
pub fn wiman_waldschmidt(curve_verified: bool) -> WaldschmidtReport {
    let form = IntersectionForm::wiman();
    let a = DivisorClass::int(&form, 45, &[5, 4, 3]);
    let b = DivisorClass::int(&form, 90, &[0, 4, 8]);
    let d = DivisorClass::int(&form, 36, &[1, 2, 3]);
    let mut identities = vec![binomial_identity(&[(1, 36, 8), (-36, 1, 1), (-45, 2, 1), (-120, 3, 1)], &[28, 27])];
    let dk = |k: i64| DivisorClass::int(&form, 36 * k + 6, &[k, 2 * k, 3 * k]);
    let shifted = |k: i64| DivisorClass::int(&form, 81 * k + 6, &[6 * k, 6 * k, 6 * k]);
    let holds =
        [0, 1].iter().all(|&k| verify_divisor_identity(&[(rat(1), &dk(k)), (rat(k), &a)], &[(rat(1), &shifted(k))]).unwrap_or(false));
    identities.push(IdentityCheck { statement: "D_k + kA = (81k+6)H - 6k(E5 + E4 + E3)".into(), holds });
    identities.push(IdentityCheck {
        statement: format!("({d})² = 0 and ({d})·A = 0"),
        holds: d.self_intersection().is_zero() && d.intersect(&a).is_ok_and(|x| x.is_zero()),
    });

    let mut lower_bounds = Vec::new();
    if curve_verified {
        let ok = verify_divisor_identity(&[(rat(2), &a), (rat(3), &b)], &[(rat(10), &d)]).unwrap_or(false);
        identities.push(IdentityCheck { statement: format!("2({a}) + 3({b}) = 10({d})"), holds: ok });
        let cert = nef_check(&d, &[a.clone(), b.clone()], NefMethod::Decomposition);
        if ok && cert.holds {
            lower_bounds.push(LowerBound { value: alpha_hat_threshold(&d, &a), k: None, nef_divisor: d.to_string(), certificate: cert });
        }
    }
    let lower = lower_bounds.iter().map(|l| l.value.clone()).max();
    let upper = ratio(81, 6);
    WaldschmidtReport {
        configuration: "wiman".into(),
        exact: lower.as_ref() == Some(&upper),
        lower,
        upper,
        lower_bounds,
        identities,
        notes: Vec::new(),
    }
}
