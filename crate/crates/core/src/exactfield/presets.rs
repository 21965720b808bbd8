use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{AnyField, Field, FieldError, NumberField, PrimeField};

/// Default prime for modular Wiman computations: p ≡ 1 (mod 30), so √5, a
/// primitive cube root of unity and the fifth roots of unity all lie in 𝔽_p.
pub const WIMAN_DEFAULT_PRIME: u64 = 2_147_482_951;
/// Prime with 7 | p - 1 used by the modular Klein preset, where 7 is a
/// primitive seventh root of unity.
pub const KLEIN_DEFAULT_PRIME: u64 = 4733;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Rationals,
    KleinExact,
    WimanExact,
    KleinModP(u64),
    WimanModP(u64),
    ModP(u64),
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::Rationals => write!(f, "qq"),
            Preset::KleinExact => write!(f, "klein-exact"),
            Preset::WimanExact => write!(f, "wiman-exact"),
            Preset::KleinModP(p) => write!(f, "klein-mod{p}"),
            Preset::WimanModP(p) => write!(f, "wiman-mod{p}"),
            Preset::ModP(p) => write!(f, "mod{p}"),
        }
    }
}

impl FromStr for Preset {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, FieldError> {
        let parse_p = |t: &str| t.parse::<u64>().map_err(|_| FieldError::UnknownPreset(s.to_string()));
        Ok(match s {
            "qq" | "rationals" => Preset::Rationals,
            "klein-exact" => Preset::KleinExact,
            "wiman-exact" => Preset::WimanExact,
            "klein-modp" => Preset::KleinModP(KLEIN_DEFAULT_PRIME),
            "wiman-modp" => Preset::WimanModP(WIMAN_DEFAULT_PRIME),
            "char7" => Preset::ModP(7),
            _ => {
                if let Some(t) = s.strip_prefix("klein-mod") {
                    Preset::KleinModP(parse_p(t.trim_start_matches("p:"))?)
                } else if let Some(t) = s.strip_prefix("wiman-mod") {
                    Preset::WimanModP(parse_p(t.trim_start_matches("p:"))?)
                } else if let Some(t) = s.strip_prefix("mod") {
                    Preset::ModP(parse_p(t.trim_start_matches("p:"))?)
                } else {
                    return Err(FieldError::UnknownPreset(s.to_string()));
                }
            }
        })
    }
}

impl Preset {
    pub fn build(self) -> Result<AnyField, FieldError> {
        Ok(match self {
            Preset::Rationals => AnyField::Number(NumberField::rationals()),
            Preset::KleinExact => AnyField::Number(klein_number_field()),
            Preset::WimanExact => AnyField::Number(wiman_number_field()),
            Preset::KleinModP(p) => AnyField::Prime(klein_prime_field(p)?),
            Preset::WimanModP(p) => AnyField::Prime(wiman_prime_field(p)?),
            Preset::ModP(p) => AnyField::Prime(PrimeField::new(p)?),
        })
    }
}

/// ℚ(ζ₇), generated by `w` with w⁶ + w⁵ + ... + 1 = 0. Constant: `zeta`.
pub fn klein_number_field() -> NumberField {
    let base = NumberField::new("QQ(zeta7)", "w", &[1, 1, 1, 1, 1, 1]).expect("cyclotomic field");
    let w = base.generator();
    let minus_w = base.neg(&w);
    base.with_data(vec![("zeta".into(), w)], (minus_w, 14))
}

/// ℚ(√5, ω) as ℚ(θ) with θ = δ + ω, δ² = 5, ω² + ω + 1 = 0; θ has minimal
/// polynomial θ⁴ + 2θ³ − 7θ² − 8θ + 31 and δ = (θ² + θ + 6)/(2θ + 1).
/// Constants: `delta`, `omega`, `s` (s² = −15), `mu1`, `mu2`.
pub fn wiman_number_field() -> NumberField {
    let base = NumberField::new("QQ(sqrt5,omega)", "t", &[31, -8, -7, 2]).expect("quartic field");
    let t = base.generator();
    let t2 = base.mul(&t, &t);
    let numer = base.add(&base.add(&t2, &t), &base.from_i64(6));
    let denom = base.add(&base.mul(&base.from_i64(2), &t), &base.one());
    let delta = base.div(&numer, &denom).expect("2t + 1 is nonzero");
    let omega = base.sub(&t, &delta);
    let constants = wiman_constants(&base, delta, omega);
    let minus_omega = base.neg(&constants[1].1);
    base.with_data(constants, (minus_omega, 6))
}

/// Derived Wiman constants from δ, ω: s = −δ(2ω + 1), μ₁ = (δ − 1)/2, μ₂ = −(1 + δ)/2.
fn wiman_constants<F: Field>(f: &F, delta: F::Elem, omega: F::Elem) -> Vec<(String, F::Elem)> {
    let two = f.from_i64(2);
    let s = f.neg(&f.mul(&delta, &f.add(&f.mul(&two, &omega), &f.one())));
    let half = f.inv(&two).expect("characteristic is not 2");
    let mu1 = f.mul(&f.sub(&delta, &f.one()), &half);
    let mu2 = f.neg(&f.mul(&f.add(&delta, &f.one()), &half));
    vec![("delta".into(), delta), ("omega".into(), omega), ("s".into(), s), ("mu1".into(), mu1), ("mu2".into(), mu2)]
}

/// 𝔽_p with `zeta`, a primitive seventh root of unity. For p = 4733 the
/// constant is 7; otherwise the smallest primitive root in [2, p).
pub fn klein_prime_field(p: u64) -> Result<PrimeField, FieldError> {
    let base = PrimeField::new(p)?;
    let roots = base.roots_of_unity(7);
    if roots.len() != 7 {
        return Err(FieldError::MissingRoot { field: base.name(), what: "a primitive 7th root of unity (zeta)".into() });
    }
    let zeta = if p == KLEIN_DEFAULT_PRIME { 7 } else { roots[1] };
    Ok(base.extend_constants(format!("GF({p})[klein]"), vec![("zeta".into(), zeta)]))
}

/// 𝔽_p with the Wiman constants; requires √5 and a primitive cube root of
/// unity, i.e. p ≡ 1 or 19 (mod 30).
pub fn wiman_prime_field(p: u64) -> Result<PrimeField, FieldError> {
    let base = PrimeField::new(p)?;
    let name = base.name();
    let delta = base
        .sqrt(5)
        .filter(|_| p > 5)
        .ok_or_else(|| FieldError::MissingRoot { field: name.clone(), what: "a square root of 5 (delta)".into() })?;
    let cube = base.roots_of_unity(3);
    if cube.len() != 3 {
        return Err(FieldError::MissingRoot { field: name, what: "a primitive cube root of unity (omega)".into() });
    }
    let omega = cube[1];
    let constants = wiman_constants(&base, delta, omega);
    Ok(base.extend_constants(format!("GF({p})[wiman]"), constants))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Prime,
    Number,
}

/// Serializable description of a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub name: String,
    pub kind: FieldKind,
    pub characteristic: u64,
    pub degree: usize,
    /// Non-leading minimal polynomial coefficients, constant term first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minimal_polynomial: Option<Vec<String>>,
    pub constants: Vec<(String, String)>,
}

impl FieldSpec {
    pub fn of<F: Field>(field: &F, minpoly: Option<Vec<String>>) -> Self {
        let constants = field
            .constant_names()
            .into_iter()
            .map(|n| {
                let v = field.constant(&n).expect("listed constant exists");
                (n, field.format(&v))
            })
            .collect();
        FieldSpec {
            name: field.name(),
            kind: if field.characteristic() == 0 { FieldKind::Number } else { FieldKind::Prime },
            characteristic: field.characteristic(),
            degree: field.degree(),
            minimal_polynomial: minpoly,
            constants,
        }
    }
}
