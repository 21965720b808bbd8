use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{power_piece, symbolic_dim, symbolic_piece, vanishes_at_all, FatIdealError, GeneratorSet, PointSet};
use crate::configs::LineConfiguration;
use crate::exactfield::{Field, PrimeField};
use crate::polyring::{Point, PolyRing};

pub const COMPUTED: &str = "computed";
pub const PAPER_CONSTANT: &str = "paper-constant";

/// A reported value with its provenance: `computed` or `paper-constant`.
#[derive(Debug, Clone, Serialize)]
pub struct Sourced<T> {
    pub value: T,
    pub source: &'static str,
}

impl<T> Sourced<T> {
    pub fn computed(value: T) -> Self {
        Sourced { value, source: COMPUTED }
    }

    pub fn paper(value: T) -> Self {
        Sourced { value, source: PAPER_CONSTANT }
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn ceil_u32(q: &BigRational) -> u32 {
    q.ceil().to_integer().to_u32().expect("small degree")
}

/// reg(I^r) = slope·r + intercept, or an upper bound of that form.
#[derive(Debug, Clone, Serialize)]
pub struct RegularityBound {
    pub slope: i64,
    pub intercept: i64,
    /// Whether the formula is the exact regularity rather than a bound.
    pub exact: bool,
    pub source: &'static str,
}

impl RegularityBound {
    pub fn klein() -> Self {
        RegularityBound { slope: 8, intercept: 6, exact: true, source: PAPER_CONSTANT }
    }

    pub fn wiman() -> Self {
        RegularityBound { slope: 16, intercept: 14, exact: true, source: PAPER_CONSTANT }
    }

    /// 2·reg(I) + (r−2)·ω(I) with reg(I) = 12 and ω(I) = 9.
    pub fn klein_char7() -> Self {
        RegularityBound { slope: 9, intercept: 6, exact: false, source: PAPER_CONSTANT }
    }

    pub fn at(&self, r: u32) -> i64 {
        self.slope * r as i64 + self.intercept
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DegreeCheck {
    pub d: u32,
    pub symbolic_dim: usize,
    pub power_dim: Option<usize>,
    pub contained: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RegularityCertificate {
    /// Lower bound for the Waldschmidt constant used.
    pub alpha_hat_lower: String,
    /// ⌈m·α̂⌉ ≤ α(I^(m)).
    pub alpha_bound: u32,
    pub reg: Sourced<i64>,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ContainmentOutcome {
    /// Holds in every degree.
    Contained { route: String },
    /// Fails, with a witness in this degree.
    NotContained { degree: u32 },
    /// Holds in the degrees checked, which do not cover all degrees.
    Inconclusive { checked_through: u32 },
}

#[derive(Debug, Clone, Serialize)]
pub struct ContainmentReport {
    pub m: u32,
    pub r: u32,
    pub degrees: (u32, u32),
    pub checks: Vec<DegreeCheck>,
    /// Canonical text of the first symbolic-power element found outside I^r.
    pub witness: Option<String>,
    pub regularity: Option<RegularityCertificate>,
    pub outcome: ContainmentOutcome,
    pub caveat: String,
}

/// Tests I^(m) ⊆ I^r degree by degree over `degrees`, and by the
/// regularity route when a regularity bound and a Waldschmidt lower bound
/// are given: α(I^(m)) ≥ reg(I^r) implies containment, and so does checking
/// every degree below reg(I^r) when m ≥ r, since I^r and I^(r) agree from
/// degree reg(I^r) on.
pub fn containment_report<F: Field>(
    ring: &PolyRing<F>,
    points: &PointSet<F>,
    gens: &GeneratorSet<F>,
    m: u32,
    r: u32,
    degrees: RangeInclusive<u32>,
    regularity: Option<(&RegularityBound, &BigRational)>,
) -> Result<ContainmentReport, FatIdealError> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let mut checks = Vec::new();
    let mut witness = None;
    let mut fail_degree = None;
    for d in degrees {
        let symbolic = symbolic_dim(points, m, d);
        if symbolic == 0 {
            checks.push(DegreeCheck { d, symbolic_dim: 0, power_dim: None, contained: true });
            continue;
        }
        let sym = symbolic_piece(points, m, d);
        let pow = power_piece(ring, gens, r, d)?;
        let outside = pow.first_outside(ring, &sym);
        let contained = outside.is_none();
        checks.push(DegreeCheck { d, symbolic_dim: symbolic, power_dim: Some(pow.dim()), contained });
        if let Some(w) = outside {
            witness = Some(ring.format(&w));
            fail_degree = Some(d);
            break;
        }
    }
    let reg_cert = regularity.map(|(reg, ah)| {
        let alpha_bound = ceil_u32(&(ah * rat(m as i64)));
        let value = reg.at(r);
        RegularityCertificate {
            alpha_hat_lower: ah.to_string(),
            alpha_bound,
            reg: Sourced { value, source: reg.source },
            holds: alpha_bound as i64 >= value,
        }
    });
    let outcome = if let Some(degree) = fail_degree {
        ContainmentOutcome::NotContained { degree }
    } else if r <= 1 && m >= r {
        ContainmentOutcome::Contained { route: "trivial".into() }
    } else if reg_cert.as_ref().is_some_and(|c| c.holds) {
        ContainmentOutcome::Contained { route: "regularity".into() }
    } else if let (Some(c), true) = (&reg_cert, m >= r) {
        // degrees below α(I^(m)) are empty; degrees from reg(I^r) on are automatic
        if lo <= c.alpha_bound && hi as i64 >= c.reg.value - 1 {
            ContainmentOutcome::Contained { route: "degreewise-below-regularity".into() }
        } else {
            ContainmentOutcome::Inconclusive { checked_through: hi }
        }
    } else {
        ContainmentOutcome::Inconclusive { checked_through: hi }
    };
    let caveat = match &outcome {
        ContainmentOutcome::Inconclusive { .. } => format!("containment verified only in degrees {lo}..={hi}"),
        ContainmentOutcome::Contained { route } if route != "trivial" => {
            format!("degrees {lo}..={hi} checked directly; the remaining degrees rest on the regularity value")
        }
        _ => String::new(),
    };
    Ok(ContainmentReport { m, r, degrees: (lo, hi), checks, witness, regularity: reg_cert, outcome, caveat })
}

/// Per r, how I^(m) ⊆ I^r is established for the least m with m/r above
/// the target ratio.
#[derive(Debug, Clone, Serialize)]
pub struct ResurgenceStep {
    pub r: u32,
    pub m: u32,
    pub alpha_bound: u32,
    pub reg: i64,
    pub closed_by: String,
}

/// Checks I^(m) ⊆ I^r over a range of degrees, given (m, r, degrees).
pub type ResidualCheck<'a> = dyn FnMut(u32, u32, RangeInclusive<u32>) -> Result<ContainmentReport, FatIdealError> + 'a;

pub struct ResurgenceInput<'a> {
    pub name: String,
    pub alpha: Sourced<u32>,
    pub omega: Sourced<u32>,
    pub alpha_hat_lower: Sourced<BigRational>,
    pub alpha_hat_upper: Sourced<BigRational>,
    pub reg: RegularityBound,
    /// The ratio m/r above which containment is to be shown.
    pub target: BigRational,
    /// A computed failure I^(m) ⊄ I^r with m/r equal to the target.
    pub witness: Option<&'a ContainmentReport>,
    /// Degreewise check of I^(m) ⊆ I^r over a range of degrees, for those r
    /// not closed by the regularity inequality.
    pub residual: Option<&'a mut ResidualCheck<'a>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResurgenceReport {
    pub name: String,
    pub alpha: Sourced<u32>,
    pub omega: Sourced<u32>,
    pub alpha_hat_lower: Sourced<String>,
    pub alpha_hat_upper: Sourced<String>,
    /// α/α̂ ≤ ρ̂ ≤ ω/α̂.
    pub rho_hat_lower: String,
    pub rho_hat_upper: String,
    pub reg: RegularityBound,
    /// Containment for m/r above the target holds for every r ≥ this value
    /// by the linear inequality.
    pub inequality_from_r: Option<u32>,
    pub steps: Vec<ResurgenceStep>,
    pub residual_checks: Vec<ContainmentReport>,
    pub witness: Option<(u32, u32)>,
    /// Set when both the upper certificate and the witness are complete.
    pub rho: Option<String>,
    pub notes: Vec<String>,
}

/// Assembles ρ̂ bounds and the certificate for ρ = target: a failure at
/// ratio target and containment I^(m) ⊆ I^r whenever m/r > target.
pub fn resurgence_report(input: ResurgenceInput<'_>) -> Result<ResurgenceReport, FatIdealError> {
    let ResurgenceInput { name, alpha, omega, alpha_hat_lower, alpha_hat_upper, reg, target, witness, mut residual } = input;
    let ah = &alpha_hat_lower.value;
    let rho_hat_lower = rat(alpha.value as i64) / &alpha_hat_upper.value;
    let rho_hat_upper = rat(omega.value as i64) / ah;

    // m ≥ t·r + 1/den(t) for m/r > t; the bound α̂·m ≥ reg(I^r) then holds when
    // (α̂t − slope)·r ≥ intercept − α̂/den(t).
    let step_m = BigRational::new(BigInt::from(1), target.denom().clone());
    let slope = ah * &target - rat(reg.slope);
    let rhs = rat(reg.intercept) - ah * &step_m;
    let inequality_from_r = if slope.is_positive() {
        let r0 = (rhs / &slope).ceil().to_integer();
        Some(r0.to_u32().unwrap_or(0).max(1))
    } else {
        None
    };
    let last = inequality_from_r.unwrap_or(1);
    let mut steps = Vec::new();
    let mut residual_checks = Vec::new();
    let mut all_closed = inequality_from_r.is_some();
    for r in 1..last.max(2) {
        let m = (&target * rat(r as i64)).floor().to_integer().to_u32().expect("small") + 1;
        let alpha_bound = ceil_u32(&(ah * rat(m as i64)));
        let rv = reg.at(r);
        let closed_by = if r == 1 {
            "trivial".to_string()
        } else if alpha_bound as i64 >= rv {
            "inequality".to_string()
        } else if let Some(check) = residual.as_mut() {
            let rep = check(m, r, alpha_bound..=(rv - 1) as u32)?;
            let ok = rep.witness.is_none();
            residual_checks.push(rep);
            if ok {
                format!("degreewise {alpha_bound}..={}", rv - 1)
            } else {
                all_closed = false;
                "fails".to_string()
            }
        } else {
            all_closed = false;
            "open".to_string()
        };
        steps.push(ResurgenceStep { r, m, alpha_bound, reg: rv, closed_by });
    }
    let mut notes = Vec::new();
    if !reg.exact {
        notes.push("the regularity formula is an upper bound".into());
    }
    let witnessed = witness.and_then(|w| match w.outcome {
        ContainmentOutcome::NotContained { .. } if rat(w.m as i64) == &target * rat(w.r as i64) => Some((w.m, w.r)),
        _ => None,
    });
    if witnessed.is_none() {
        notes.push(format!("no computed failure at ratio {target}"));
    }
    let rho = (all_closed && witnessed.is_some()).then(|| target.to_string());
    Ok(ResurgenceReport {
        name,
        alpha,
        omega,
        alpha_hat_lower: Sourced { value: alpha_hat_lower.value.to_string(), source: alpha_hat_lower.source },
        alpha_hat_upper: Sourced { value: alpha_hat_upper.value.to_string(), source: alpha_hat_upper.source },
        rho_hat_lower: rho_hat_lower.to_string(),
        rho_hat_upper: rho_hat_upper.to_string(),
        reg,
        inequality_from_r,
        steps,
        residual_checks,
        witness: witnessed,
        rho,
        notes,
    })
}

/// All nonnegative integer solutions of Σ cᵢaᵢ = target.
pub fn nonneg_solutions(coeffs: &[u64], target: u64) -> Vec<Vec<u64>> {
    fn go(coeffs: &[u64], rest: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        let Some((&c, tail)) = coeffs.split_first() else {
            if rest == 0 {
                out.push(prefix.clone());
            }
            return;
        };
        for a in 0..=rest / c {
            prefix.push(a);
            go(tail, rest - a * c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(coeffs, target, &mut Vec::new(), &mut out);
    out
}

/// Checks behind α̂ = 25/4 for the Klein points over 𝔽₇: the tangents to
/// the conic through its 8 points, the line product F and tangent product G,
/// the incidence counts the divisibility argument needs, F²G ∈ I^(8), and
/// the two numerical inequalities of that argument.
#[derive(Debug, Clone, Serialize)]
pub struct StarBezoutAudit {
    pub tangents: usize,
    /// Configuration points on each line of F, and on each tangent.
    pub points_on_lines: Vec<usize>,
    pub points_on_tangents: Vec<usize>,
    /// (quadruple, triple) points on each line of F.
    pub line_split: Vec<(usize, usize)>,
    /// Triple points are exactly the pairwise meets of the tangents.
    pub triples_are_tangent_meets: bool,
    pub f2g_degree: u32,
    pub f2g_in_eighth_power: bool,
    /// Each factor of FG passes through n points with 8n > 50.
    pub factor_inequality: bool,
    /// 50m − 29 < q(8m−4) + t(8m−5) for all m ≥ 1, with (q, t) the split of
    /// each line of F.
    pub residual_inequality: bool,
    pub holds: bool,
}

fn incident(f: &PrimeField, line: &Point<u64>, p: &Point<u64>) -> bool {
    f.is_zero(&(0..3).fold(0, |acc, i| f.add(&acc, &f.mul(&line.0[i], &p.0[i]))))
}

pub fn star_bezout_audit(config: &LineConfiguration<PrimeField>) -> StarBezoutAudit {
    let f = &config.field;
    let ring = PolyRing::standard(f.clone());
    let points = config.all_points();
    let quads = &config.class("4").expect("quadruple class").points;
    let triples = &config.class("3").expect("triple class").points;
    let mut tangents = Vec::new();
    for a in 0..7u64 {
        for b in 0..7u64 {
            for c in 0..7u64 {
                let sum = f.add(&f.add(&f.mul(&a, &a), &f.mul(&b, &b)), &f.mul(&c, &c));
                if (a, b, c) != (0, 0, 0) && f.is_zero(&sum) {
                    let p = Point::new(f, [a, b, c]).expect("nonzero");
                    if !tangents.contains(&p) {
                        tangents.push(p);
                    }
                }
            }
        }
    }
    let count = |l: &Point<u64>, set: &[Point<u64>]| set.iter().filter(|p| incident(f, l, p)).count();
    let points_on_lines: Vec<usize> = config.lines.iter().map(|l| count(l, &points)).collect();
    let points_on_tangents: Vec<usize> = tangents.iter().map(|t| count(t, &points)).collect();
    let line_split = config.lines.iter().map(|l| (count(l, quads), count(l, triples))).collect::<Vec<_>>();
    let mut meets = Vec::new();
    for (i, s) in tangents.iter().enumerate() {
        for t in &tangents[i + 1..] {
            let cross = [
                f.sub(&f.mul(&s.0[1], &t.0[2]), &f.mul(&s.0[2], &t.0[1])),
                f.sub(&f.mul(&s.0[2], &t.0[0]), &f.mul(&s.0[0], &t.0[2])),
                f.sub(&f.mul(&s.0[0], &t.0[1]), &f.mul(&s.0[1], &t.0[0])),
            ];
            meets.push(Point::new(f, cross).expect("distinct tangents meet in a point"));
        }
    }
    meets.sort();
    meets.dedup();
    let mut sorted_triples = triples.clone();
    sorted_triples.sort();
    let triples_are_tangent_meets = meets == sorted_triples;

    let fprod = config.line_product(&ring);
    let g = ring.product(tangents.iter().map(|t| ring.linear_form(&t.0)).collect::<Vec<_>>().iter());
    let f2g = ring.mul(&ring.pow(&fprod, 2), &g);
    let pset = PointSet::from_config(config);
    let f2g_in_eighth_power = vanishes_at_all(&pset, &f2g, 8);
    let f2g_degree = f2g.degree().unwrap_or(0);
    // a factor through n points divides any form of degree ≤ 50m in I^(8m) once 8n > 50
    let factor_inequality = points_on_lines.iter().chain(&points_on_tangents).all(|&n| 8 * n > 50);
    // after removing FG: degree 50m − 29 against q(8m−4) + t(8m−5), affine in m
    let residual_inequality = line_split.iter().all(|&(q, t)| {
        let (q, t) = (q as i64, t as i64);
        let (slope, intercept) = (8 * q + 8 * t - 50, 29 - 4 * q - 5 * t);
        slope > 0 && slope + intercept > 0
    });
    let holds = tangents.len() == 8
        && triples_are_tangent_meets
        && f2g_degree == 50
        && f2g_in_eighth_power
        && factor_inequality
        && residual_inequality;
    StarBezoutAudit {
        tangents: tangents.len(),
        points_on_lines,
        points_on_tangents,
        line_split,
        triples_are_tangent_meets,
        f2g_degree,
        f2g_in_eighth_power,
        factor_inequality,
        residual_inequality,
        holds,
    }
}
