use std::sync::Arc;

use num_traits::Signed;
use serde::Serialize;

use super::{rat, DivisorClass, IntersectionForm};
use crate::configs::LineConfiguration;
use crate::exactfield::Field;
use crate::series::{SeriesEngine, SeriesError, SeriesSpec};

#[derive(Debug, Clone, Serialize)]
pub struct SearchOptions {
    pub d_max: u32,
    /// Give the two Wiman triple-point orbits independent multiplicities.
    pub split_orbits: bool,
}

impl SearchOptions {
    pub fn new(d_max: u32) -> Self {
        SearchOptions { d_max, split_orbits: false }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchCandidate {
    pub class: String,
    pub degree: i64,
    pub multiplicities: Vec<i64>,
    pub dim: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct NegSearchReport {
    pub d_max: u32,
    pub labels: Vec<String>,
    /// Classes found, starting with the seed class of the line arrangement.
    pub ledger: Vec<SearchCandidate>,
    /// Every class for which a series was computed, in search order.
    pub candidates: Vec<SearchCandidate>,
}

impl NegSearchReport {
    pub fn ledger_classes(&self, form: &Arc<IntersectionForm>) -> Vec<DivisorClass> {
        self.ledger.iter().map(|c| DivisorClass::int(form, c.degree, &c.multiplicities)).collect()
    }
}

/// The series of invariant forms corresponding to a class. A label of the
/// multiplicity form covers every orbit class with that multiplicity.
pub fn series_spec_for<F: Field>(config: &LineConfiguration<F>, class: &DivisorClass) -> Option<SeriesSpec> {
    let (d, mults) = class.as_integers()?;
    let mut out = Vec::new();
    for (label, m) in class.form().labels.iter().zip(mults) {
        let m = u32::try_from(m).ok()?;
        if config.class(label).is_some() {
            out.push((label.clone(), m));
        } else {
            let n: u32 = label.parse().ok()?;
            out.extend(config.classes.iter().filter(|c| c.multiplicity == n).map(|c| (c.label.clone(), m)));
        }
    }
    Some(SeriesSpec { d: u32::try_from(d).ok()?, multiplicities: out })
}

fn line_class_on<F: Field>(config: &LineConfiguration<F>, form: &Arc<IntersectionForm>) -> DivisorClass {
    let mults: Vec<i64> = form.labels.iter().map(|l| l.trim_end_matches(['a', 'b']).parse().expect("numeric labels")).collect();
    DivisorClass::int(form, config.lines.len() as i64, &mults)
}

fn describe(c: &DivisorClass, dim: usize) -> SearchCandidate {
    let (degree, multiplicities) = c.as_integers().expect("search classes are integral");
    SearchCandidate { class: c.to_string(), degree, multiplicities, dim }
}

/// Search for invariant curves of negative self-intersection meeting all
/// earlier ones nonnegatively. Degrees run upward in steps of the gcd of the
/// generator degrees. For each degree the multiplicities of all classes but
/// the first run upward from 0 to ⌊d/4⌋, with the last class varying
/// slowest; the first multiplicity is the least making the
/// self-intersection negative. A series is computed only if the class meets
/// the ledger nonnegatively and lowering any nonzero free multiplicity by
/// one gives a class of nonnegative self-intersection.
pub fn negative_curve_search<F: Field>(
    engine: &mut SeriesEngine<'_, F>,
    opts: &SearchOptions,
    progress: &mut dyn FnMut(&SearchCandidate),
) -> Result<NegSearchReport, SeriesError> {
    let config = engine.configuration();
    let form = if opts.split_orbits { config.orbit_form() } else { config.multiplicity_form() };
    let seed = line_class_on(config, &form);
    let mut ledger = vec![seed.clone()];
    let mut report =
        NegSearchReport { d_max: opts.d_max, labels: form.labels.clone(), ledger: vec![describe(&seed, 1)], candidates: Vec::new() };
    let w = engine.invariants().weighted.weights();
    let step = w.iter().fold(0, |g, &x| num_integer::gcd(g, x)).max(1);
    let free = form.arity() - 1;
    let mut d = step;
    while d < 4 {
        d += step;
    }
    while d <= opts.d_max {
        let bound = (d / 4) as i64;
        let mut free_m = vec![0i64; free];
        loop {
            let mut mults = vec![0i64];
            mults.extend(free_m.iter());
            let mut c = DivisorClass::int(&form, d as i64, &mults);
            while !c.self_intersection().is_negative() {
                c.mults[0] += rat(1);
            }
            let meets_ledger = ledger.iter().all(|l| !c.intersect(l).expect("same form").is_negative());
            let boundary = (1..form.arity()).all(|i| {
                if free_m[i - 1] == 0 {
                    return true;
                }
                let mut lower = c.clone();
                lower.mults[i] -= rat(1);
                !lower.self_intersection().is_negative()
            });
            if meets_ledger && boundary {
                let spec = series_spec_for(config, &c).expect("search classes are integral");
                let dim = engine.dimension(&spec)?;
                let cand = describe(&c, dim);
                progress(&cand);
                if dim > 0 {
                    ledger.push(c);
                    report.ledger.push(cand.clone());
                }
                report.candidates.push(cand);
            }
            // odometer over the free multiplicities, first free class fastest
            let mut i = 0;
            loop {
                if i == free {
                    break;
                }
                free_m[i] += 1;
                if free_m[i] <= bound {
                    break;
                }
                free_m[i] = 0;
                i += 1;
            }
            if i == free {
                break;
            }
        }
        d += step;
    }
    Ok(report)
}
