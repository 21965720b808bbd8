use std::error::Error;
use std::fmt;

use negcurve::configs::*;
use negcurve::divisors::{klein_waldschmidt, negative_curve_search, wiman_waldschmidt, IntersectionForm, SearchOptions};
use negcurve::exactfield::*;
use negcurve::fatideals::*;
use negcurve::golden::{self, Ctx, Suite};
use negcurve::groups::{klein_group, wiman_group, MatrixGroup};
use negcurve::invariants::*;
use negcurve::polyring::{Point, PolyRing};
use negcurve::series::{SeriesEngine, SeriesSpec};
use serde_json::{json, Value};

use crate::output::{computed, Report};
use crate::{Cmd, ConfigAction, FatAction, FieldChoice, PresetName, Target};

type Res<T> = Result<T, Box<dyn Error>>;

/// Bad flags or an incompatible preset and field; exit status 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct UsageError(pub String);

pub fn exit_code(e: &(dyn Error + 'static)) -> u8 {
    if e.is::<UsageError>() {
        2
    } else {
        1
    }
}

fn usage<T>(msg: impl fmt::Display) -> Res<T> {
    Err(Box::new(UsageError(msg.to_string())))
}

fn field_for(target: &Target, prefer_modp: bool) -> Res<AnyField> {
    let usage_err = |e: FieldError| -> Box<dyn Error> { Box::new(UsageError(e.to_string())) };
    Ok(match target.preset {
        PresetName::KleinChar7 => match target.field {
            None | Some(FieldChoice::ModP(7)) => AnyField::Prime(PrimeField::new(7)?),
            Some(_) => return usage("klein-char7 is defined over F_7 only; use --field modp:7"),
        },
        PresetName::Klein => {
            match target.field.unwrap_or(if prefer_modp { FieldChoice::ModP(KLEIN_DEFAULT_PRIME) } else { FieldChoice::Exact }) {
                FieldChoice::Exact => AnyField::Number(klein_number_field()),
                FieldChoice::ModP(p) => AnyField::Prime(klein_prime_field(p).map_err(usage_err)?),
            }
        }
        PresetName::Wiman => {
            match target.field.unwrap_or(if prefer_modp { FieldChoice::ModP(WIMAN_DEFAULT_PRIME) } else { FieldChoice::Exact }) {
                FieldChoice::Exact => AnyField::Number(wiman_number_field()),
                FieldChoice::ModP(p) => AnyField::Prime(wiman_prime_field(p).map_err(usage_err)?),
            }
        }
    })
}

fn config_over<F: Field>(preset: PresetName, f: &F) -> Res<LineConfiguration<F>> {
    Ok(match preset {
        PresetName::Klein => build_klein(f)?,
        PresetName::Wiman => build_wiman(f)?,
        PresetName::KleinChar7 => unreachable!("built separately"),
    })
}

fn invariants_over<F: Field>(preset: PresetName, f: &F) -> Res<Option<InvariantSet<F>>> {
    Ok(match preset {
        PresetName::Klein => Some(klein_invariants(f)?),
        PresetName::Wiman => Some(wiman_invariants(f)?),
        PresetName::KleinChar7 => None,
    })
}

fn group_over<F: Field>(preset: PresetName, f: &F) -> Res<Option<MatrixGroup<F>>> {
    Ok(match preset {
        PresetName::Klein => Some(klein_group(f)?),
        PresetName::Wiman => Some(wiman_group(f, true)?),
        PresetName::KleinChar7 => None,
    })
}

fn require_invariants<F: Field>(preset: PresetName, f: &F) -> Res<InvariantSet<F>> {
    match invariants_over(preset, f)? {
        Some(inv) => Ok(inv),
        None => usage("this task needs the invariant forms, which the klein-char7 preset does not carry"),
    }
}

/// Runs `$body` with `$config` bound to the configuration over the chosen field.
macro_rules! with_config {
    ($preset:expr, $field:expr, |$config:ident| $body:expr) => {
        match ($preset, $field) {
            (PresetName::KleinChar7, _) => {
                let $config = build_klein_char7()?;
                $body
            }
            (p, AnyField::Number(f)) => {
                let $config = config_over(p, f)?;
                $body
            }
            (p, AnyField::Prime(f)) => {
                let $config = config_over(p, f)?;
                $body
            }
        }
    };
}

fn fmt_point<F: Field>(f: &F, p: &Point<F::Elem>) -> String {
    format!("[{}]", p.0.iter().map(|c| f.format(c)).collect::<Vec<_>>().join(" : "))
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

pub fn dispatch(cmd: &Cmd, progress: &dyn Fn(&str)) -> Res<Report> {
    match cmd {
        Cmd::Config { action: ConfigAction::Show { target } } => {
            let field = field_for(target, false)?;
            let result = with_config!(target.preset, &field, |config| config_show(target.preset, &config)?);
            Ok(report("config show", target, &field, result))
        }
        Cmd::Invariants { target, polys, invariance, relation } => {
            let field = field_for(target, false)?;
            let exact = matches!(field, AnyField::Number(_));
            let result = match &field {
                AnyField::Number(f) => invariants(target.preset, f, *polys, *invariance, *relation || !exact)?,
                AnyField::Prime(f) => invariants(target.preset, f, *polys, *invariance, true)?,
            };
            Ok(report("invariants", target, &field, result))
        }
        Cmd::Series { target, d, m5, m4, m3, m3a, m3b, basis } => {
            let spec = series_spec(target.preset, *d, [*m5, *m4, *m3, *m3a, *m3b])?;
            let field = field_for(target, false)?;
            let result = with_config!(target.preset, &field, |config| series(target.preset, &config, &spec, *basis)?);
            Ok(report("series", target, &field, result))
        }
        Cmd::Negsearch { target, d_max, split, candidates } => {
            if *split && target.preset != PresetName::Wiman {
                return usage("--split applies to the wiman preset only");
            }
            let field = field_for(target, true)?;
            let opts = SearchOptions { d_max: *d_max, split_orbits: *split };
            let result = with_config!(target.preset, &field, |config| negsearch(target.preset, &config, &opts, *candidates, progress)?);
            Ok(report("negsearch", target, &field, result))
        }
        Cmd::Waldschmidt { target, d_max } => {
            let field = field_for(target, true)?;
            let result = with_config!(target.preset, &field, |config| waldschmidt(target.preset, &config, *d_max, progress)?);
            Ok(report("waldschmidt", target, &field, result))
        }
        Cmd::Fatideal { action } => fatideal(action, progress),
        Cmd::Golden { suite } => {
            let suite: Suite = suite.parse().map_err(UsageError)?;
            let ctx = Ctx::new(progress);
            let checks = golden::run_suite(suite, &ctx);
            let passed = checks.iter().filter(|c| c.pass).count();
            let verified = passed == checks.len();
            Ok(Report {
                command: "golden".into(),
                preset: None,
                field: None,
                result: json!({ "suite": suite.to_string(), "passed": passed, "total": checks.len(), "checks": to_value(&checks), "source": "computed" }),
                verified,
            })
        }
    }
}

fn report(command: &str, target: &Target, field: &AnyField, (result, verified): (Value, bool)) -> Report {
    Report {
        command: command.into(),
        preset: Some(target.preset.as_str().into()),
        field: Some(to_value(&field.spec())),
        result: computed(result),
        verified,
    }
}

fn config_show<F: Field>(preset: PresetName, config: &LineConfiguration<F>) -> Res<(Value, bool)> {
    let f = &config.field;
    let mut by_mult = std::collections::BTreeMap::<u32, usize>::new();
    for c in &config.classes {
        *by_mult.entry(c.multiplicity).or_default() += c.points.len();
    }
    let counts: Vec<usize> = std::iter::once(config.lines.len()).chain(by_mult.values().rev().copied()).collect();
    let classes: Vec<Value> = config
        .classes
        .iter()
        .map(|c| json!({ "label": c.label, "multiplicity": c.multiplicity, "size": c.points.len(), "representative": fmt_point(f, &c.representative) }))
        .collect();
    let incidences = config.audit_incidences();
    let orbits = group_over(preset, f)?.map(|g| verify_orbit_decomposition(config, &g));
    let verified = incidences && orbits.as_ref().is_none_or(|o| o.ok);
    let result = json!({
        "kind": to_value(&config.kind),
        "counts": counts,
        "lines": config.lines.len(),
        "classes": classes,
        "incidences_ok": incidences,
        "orbits": orbits.as_ref().map(to_value),
    });
    Ok((result, verified))
}

fn invariants<F: Field>(preset: PresetName, f: &F, polys: bool, invariance: bool, relation: bool) -> Res<(Value, bool)> {
    let inv = require_invariants(preset, f)?;
    let mut verified = true;
    let forms: Vec<Value> = inv
        .forms()
        .iter()
        .map(|form| {
            let mut v = json!({
                "name": form.name,
                "degree": form.degree,
                "in_generators": form.in_generators.as_ref().map(|w| inv.weighted.format(w)),
            });
            if polys {
                v["poly"] = json!(inv.ring.format(&form.poly));
            }
            v
        })
        .collect();
    let mut result = json!({ "kind": to_value(&inv.kind), "forms": forms });
    if relation {
        result["relation"] = match inv.kind {
            InvariantKind::Klein => {
                let rep = verify_klein_relation(&inv)?;
                verified &= rep.holds;
                to_value(&rep)
            }
            InvariantKind::Wiman => {
                let rep = verify_wiman_relation(&inv)?;
                verified &= rep.proportional;
                to_value(&rep)
            }
        };
    }
    if invariance {
        let g = match inv.kind {
            InvariantKind::Klein => klein_group(f)?,
            InvariantKind::Wiman => wiman_group(f, false)?,
        };
        let rep = inv.invariance_report(&g)?;
        verified &= rep.iter().all(|(_, ok)| *ok);
        result["invariance"] = json!(rep.iter().map(|(n, ok)| json!({ "name": n, "invariant": ok })).collect::<Vec<_>>());
    }
    Ok((result, verified))
}

/// Multiplicities in the order m5, m4, m3, m3a, m3b.
fn series_spec(preset: PresetName, d: u32, m: [Option<u32>; 5]) -> Res<SeriesSpec> {
    let [m5, m4, m3, m3a, m3b] = m;
    match preset {
        PresetName::Klein => {
            if m5.is_some() || m3a.is_some() || m3b.is_some() {
                return usage("the klein preset takes --m4 and --m3 only");
            }
            Ok(SeriesSpec::klein(d, m4.unwrap_or(0), m3.unwrap_or(0)))
        }
        PresetName::Wiman => {
            if m3.is_some() && (m3a.is_some() || m3b.is_some()) {
                return usage("give either --m3 or --m3a/--m3b");
            }
            if m3a.is_some() || m3b.is_some() {
                Ok(SeriesSpec::wiman_split(d, m5.unwrap_or(0), m4.unwrap_or(0), m3a.unwrap_or(0), m3b.unwrap_or(0)))
            } else {
                Ok(SeriesSpec::wiman(d, m5.unwrap_or(0), m4.unwrap_or(0), m3.unwrap_or(0)))
            }
        }
        PresetName::KleinChar7 => usage("series need the invariant forms, which the klein-char7 preset does not carry"),
    }
}

fn series<F: Field>(preset: PresetName, config: &LineConfiguration<F>, spec: &SeriesSpec, basis: bool) -> Res<(Value, bool)> {
    let inv = require_invariants(preset, &config.field)?;
    let mut eng = SeriesEngine::new(&inv, config);
    let rep = eng.check_expected_dim(spec)?;
    let mut result = json!({
        "spec": to_value(&rep.spec),
        "dim_t": rep.dim_t,
        "dim": rep.dim,
        "edim": rep.edim,
        "equal": rep.equal,
    });
    let mut verified = true;
    if basis {
        let b = eng.basis(spec)?;
        let check = eng.verify_basis(&b);
        verified = check.is_ok();
        result["basis"] = json!(b.basis.iter().map(|p| inv.weighted.format(p)).collect::<Vec<_>>());
        result["basis_verified"] = json!(verified);
        if let Err(e) = check {
            result["basis_error"] = json!(e.to_string());
        }
    }
    Ok((result, verified))
}

fn negsearch<F: Field>(
    preset: PresetName,
    config: &LineConfiguration<F>,
    opts: &SearchOptions,
    candidates: bool,
    progress: &dyn Fn(&str),
) -> Res<(Value, bool)> {
    let inv = require_invariants(preset, &config.field)?;
    let mut eng = SeriesEngine::new(&inv, config);
    let mut last = -1;
    let mut rep = negative_curve_search(&mut eng, opts, &mut |c| {
        if c.degree >= last + 10 {
            last = c.degree;
            progress(&format!("negsearch: degree {} of {}", c.degree, opts.d_max));
        }
    })?;
    if !candidates {
        rep.candidates.clear();
    }
    Ok((to_value(&rep), true))
}

fn waldschmidt<F: Field>(preset: PresetName, config: &LineConfiguration<F>, d_max: u32, progress: &dyn Fn(&str)) -> Res<(Value, bool)> {
    let inv = require_invariants(preset, &config.field)?;
    let f = &config.field;
    let (rep, curve) = match preset {
        PresetName::Klein => {
            let triple = &config.class("3").ok_or("no triple class")?.representative;
            let curve = klein_negative_curve(&inv, triple)?;
            let m = multiplicity_at(&inv, &curve, triple, 10);
            let mut eng = SeriesEngine::new(&inv, config);
            progress(&format!("negsearch to degree {d_max}"));
            let search = negative_curve_search(&mut eng, &SearchOptions::new(d_max), &mut |_| {})?;
            let ledger = search.ledger_classes(&IntersectionForm::klein());
            let curve_ok = m.is_some_and(|m| m >= 8);
            (klein_waldschmidt(&ledger, d_max, curve_ok), json!({ "multiplicities": [m], "verified": curve_ok }))
        }
        _ => {
            let p4 = config.class("4").ok_or("no quadruple class")?.representative.clone();
            let (p3, p3bar) = wiman_triple_representatives(&inv, config)?;
            let curve = wiman_negative_curve(&inv, &WIMAN_CURVE_COEFFICIENTS.map(|(n, _)| f.from_i64(n)))?;
            let m: Vec<Option<usize>> =
                [(&p4, 6), (&p3, 10), (&p3bar, 10)].iter().map(|(p, b)| multiplicity_at(&inv, &curve, p, *b)).collect();
            let curve_ok = m == [Some(4), Some(8), Some(8)];
            (wiman_waldschmidt(curve_ok), json!({ "multiplicities": m, "verified": curve_ok }))
        }
    };
    let verified = rep.lower.is_some() && rep.identities.iter().all(|i| i.holds);
    let mut result = to_value(&rep);
    result["curve"] = curve;
    Ok((result, verified))
}

fn default_up_to(preset: PresetName) -> u32 {
    match preset {
        PresetName::Klein | PresetName::KleinChar7 => 13,
        PresetName::Wiman => 29,
    }
}

fn fatideal(action: &FatAction, progress: &dyn Fn(&str)) -> Res<Report> {
    let (name, target) = match action {
        FatAction::Generators { target, .. } => ("fatideal generators", target),
        FatAction::Alpha { target, .. } => ("fatideal alpha", target),
        FatAction::Contain { target, .. } => ("fatideal contain", target),
        FatAction::Resurgence { target } => ("fatideal resurgence", target),
    };
    let field = field_for(target, true)?;
    if let FatAction::Resurgence { target } = action {
        let default = field_for(&Target { preset: target.preset, field: None }, true)?;
        if field != default {
            return usage("resurgence reports run over the preset's default field only");
        }
        let ctx = Ctx::new(progress);
        let value = match target.preset {
            PresetName::Klein => to_value(&golden::klein_resurgence(&ctx)?),
            PresetName::Wiman => to_value(&golden::wiman_resurgence(&ctx)?),
            PresetName::KleinChar7 => {
                let (witness, rep) = golden::char7_resurgence(&ctx)?;
                let mut v = to_value(&rep);
                v["witness_report"] = to_value(&witness);
                v
            }
        };
        let verified = value["rho"].is_string();
        return Ok(report(name, target, &field, (value, verified)));
    }
    let result = with_config!(target.preset, &field, |config| fat_task(action, &config, progress)?);
    Ok(report(name, target, &field, result))
}

fn fat_task<F: Field>(action: &FatAction, config: &LineConfiguration<F>, progress: &dyn Fn(&str)) -> Res<(Value, bool)> {
    let ring = PolyRing::standard(config.field.clone());
    let points = PointSet::from_config(config);
    match action {
        FatAction::Generators { target, up_to, polys } => {
            let up_to = up_to.unwrap_or(default_up_to(target.preset));
            progress(&format!("generators through degree {up_to}"));
            let gens = minimal_generators(&ring, &points, up_to);
            let mut result = json!({
                "points": points.len(),
                "alpha": gens.alpha(),
                "omega": gens.omega(),
                "regularity": gens.regularity,
                "complete_through": gens.complete_through,
                "count_by_degree": gens.count_by_degree(),
                "degrees": to_value(&gens.degrees),
            });
            let mut verified = true;
            if let Some(inv) = invariants_over(target.preset, &config.field)? {
                let (a, b, d) = match target.preset {
                    PresetName::Klein => ("Phi4", "Phi6", 8),
                    _ => ("Phi6", "Phi12", 16),
                };
                let minors = jacobian_minor_generators(&inv.ring, inv.poly(a)?, inv.poly(b)?);
                let span = span_piece(&ring, d, &minors)?;
                let piece = symbolic_piece(&points, 1, d);
                let equal = span.dim() == piece.dim() && span.contains_piece(&piece);
                verified = equal;
                result["jacobian_minors"] = json!({ "forms": [a, b], "degree": d, "span_dim": span.dim(), "equals_ideal_piece": equal });
            }
            if *polys {
                result["generators"] =
                    json!(gens.generators.iter().map(|(d, p)| json!({ "degree": d, "poly": ring.format(p) })).collect::<Vec<_>>());
            }
            Ok((result, verified))
        }
        FatAction::Alpha { m, hint, cap, .. } => {
            progress(&format!("alpha of I^({m})"));
            Ok((to_value(&alpha_symbolic(&points, *m, *hint, *cap)?), true))
        }
        FatAction::Contain { target, m, r, from, to } => {
            if from > to {
                return usage("--from must not exceed --to");
            }
            let gens = minimal_generators(&ring, &points, default_up_to(target.preset));
            let rep = containment_report(&ring, &points, &gens, *m, *r, *from..=*to, None)?;
            Ok((to_value(&rep), true))
        }
        FatAction::Resurgence { .. } => unreachable!("handled by the caller"),
    }
}
