//! The Klein (21 lines), Wiman (45 lines) and characteristic-7 Klein line
//! configurations, with their multiple points grouped into orbit classes.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::divisors::{DivisorClass, IntersectionForm};
use crate::exactfield::{Field, FieldError, PrimeField};
use crate::groups::{klein_generators, klein_group, mirror_of_reflection, wiman_generators, wiman_group, GroupError, MatrixGroup};
use crate::polyring::{Point, Poly, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("field cannot carry this configuration: {0}")]
    Field(#[from] FieldError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("unexpected structure: {0}")]
    Structure(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConfigKind {
    Klein,
    Wiman,
    KleinChar7,
}

/// Points of one orbit (or, without a group, one multiplicity).
#[derive(Debug, Clone)]
pub struct OrbitClass<E> {
    pub label: String,
    pub multiplicity: u32,
    pub points: Vec<Point<E>>,
    pub representative: Point<E>,
}

#[derive(Debug, Clone)]
pub struct LineConfiguration<F: Field> {
    pub field: F,
    pub kind: ConfigKind,
    /// Coefficient vectors of the lines, scaled like points.
    pub lines: Vec<Point<F::Elem>>,
    pub classes: Vec<OrbitClass<F::Elem>>,
}

fn cross<F: Field>(f: &F, a: &[F::Elem; 3], b: &[F::Elem; 3]) -> [F::Elem; 3] {
    let m = |i: usize, j: usize| f.sub(&f.mul(&a[i], &b[j]), &f.mul(&a[j], &b[i]));
    [m(1, 2), m(2, 0), m(0, 1)]
}

fn incident<F: Field>(f: &F, line: &Point<F::Elem>, p: &Point<F::Elem>) -> bool {
    let mut acc = f.zero();
    for i in 0..3 {
        acc = f.add(&acc, &f.mul(&line.0[i], &p.0[i]));
    }
    f.is_zero(&acc)
}

/// All pairwise intersections of the lines with their incidence counts.
fn intersections<F: Field>(f: &F, lines: &[Point<F::Elem>]) -> BTreeMap<Point<F::Elem>, u32> {
    let mut pts = BTreeMap::new();
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            let p = Point::new(f, cross(f, &lines[i].0, &lines[j].0)).expect("distinct lines meet in a point");
            pts.entry(p).or_insert(0);
        }
    }
    for (p, count) in pts.iter_mut() {
        *count = lines.iter().filter(|l| incident(f, l, p)).count() as u32;
    }
    pts
}

fn group_by_multiplicity<E: Clone>(pts: &BTreeMap<Point<E>, u32>) -> BTreeMap<u32, Vec<Point<E>>> {
    let mut by: BTreeMap<u32, Vec<Point<E>>> = BTreeMap::new();
    for (p, m) in pts {
        by.entry(*m).or_default().push(p.clone());
    }
    by
}

fn expect_counts<E>(by: &BTreeMap<u32, Vec<Point<E>>>, expected: &[(u32, usize)]) -> Result<(), ConfigError> {
    let found: Vec<(u32, usize)> = by.iter().map(|(m, v)| (*m, v.len())).collect();
    let mut want = expected.to_vec();
    want.sort();
    if found != want {
        return Err(ConfigError::Structure(format!("multiplicity counts {found:?}, expected {want:?}")));
    }
    Ok(())
}

fn choose_rep<E: Clone + PartialEq>(points: &[Point<E>], preferred: Option<Point<E>>) -> Point<E> {
    match preferred {
        Some(p) if points.contains(&p) => p,
        _ => points[0].clone(),
    }
}

/// The Klein configuration: the orbit of the mirror of ρ(i). Requires the
/// field constant `zeta`.
pub fn build_klein<F: Field>(field: &F) -> Result<LineConfiguration<F>, ConfigError> {
    let group = klein_group(field)?;
    let [_, _, inv] = klein_generators(field)?;
    let mirror = mirror_of_reflection(field, &inv).ok_or_else(|| ConfigError::Structure("ρ(i) is not a reflection".into()))?;
    let lines = group.orbit_of_linear_form(&mirror);
    if lines.len() != 21 {
        return Err(ConfigError::Structure(format!("{} lines in the mirror orbit", lines.len())));
    }
    let pts = intersections(field, &lines);
    let mut by = group_by_multiplicity(&pts);
    expect_counts(&by, &[(4, 21), (3, 28)])?;
    let one = field.one();
    let triple_pref = Point::new(field, [one.clone(), one.clone(), one.clone()]).ok();
    let z = field.constant("zeta")?;
    let zp = |e| field.pow(&z, e);
    let qx = field.add(&zp(4), &one);
    let qy = field.neg(&field.add(&field.add(&zp(5), &zp(3)), &zp(1)));
    let quad_pref = Point::new(field, [qx, qy, one]).ok();
    let quads = by.remove(&4).unwrap_or_default();
    let triples = by.remove(&3).unwrap_or_default();
    let classes = vec![
        OrbitClass { label: "4".into(), multiplicity: 4, representative: choose_rep(&quads, quad_pref), points: quads },
        OrbitClass { label: "3".into(), multiplicity: 3, representative: choose_rep(&triples, triple_pref), points: triples },
    ];
    Ok(LineConfiguration { field: field.clone(), kind: ConfigKind::Klein, lines, classes })
}

/// The Wiman configuration: the orbit of the mirror x = 0 of R₂. Requires
/// the constants `omega`, `mu1`, `mu2`.
pub fn build_wiman<F: Field>(field: &F) -> Result<LineConfiguration<F>, ConfigError> {
    let group = wiman_group(field, true)?;
    let r2 = &wiman_generators(field)?[1];
    let mirror = mirror_of_reflection(field, r2).ok_or_else(|| ConfigError::Structure("R₂ is not a reflection".into()))?;
    let lines = group.orbit_of_linear_form(&mirror);
    if lines.len() != 45 {
        return Err(ConfigError::Structure(format!("{} lines in the mirror orbit", lines.len())));
    }
    let pts = intersections(field, &lines);
    let mut by = group_by_multiplicity(&pts);
    expect_counts(&by, &[(5, 36), (4, 45), (3, 120)])?;
    let (zero, one) = (field.zero(), field.one());
    let quad_pref = Point::new(field, [zero.clone(), zero, one]).ok();
    let quints = by.remove(&5).unwrap_or_default();
    let quads = by.remove(&4).unwrap_or_default();
    let triples = by.remove(&3).unwrap_or_default();
    // Split the triple points into their two orbits; the orbit containing
    // the smallest point with nonzero last coordinate comes first.
    let first = triples.iter().find(|p| !field.is_zero(&p.0[2])).unwrap_or(&triples[0]).clone();
    let orbit_a = group.orbit(&first);
    let orbit_b: Vec<Point<F::Elem>> = triples.iter().filter(|p| !orbit_a.contains(p)).cloned().collect();
    if orbit_a.len() != 60 || orbit_b.len() != 60 {
        return Err(ConfigError::Structure(format!("triple orbits of sizes {} and {}", orbit_a.len(), orbit_b.len())));
    }
    let rep_b = orbit_b.iter().find(|p| !field.is_zero(&p.0[2])).unwrap_or(&orbit_b[0]).clone();
    let classes = vec![
        OrbitClass { label: "5".into(), multiplicity: 5, representative: choose_rep(&quints, None), points: quints },
        OrbitClass { label: "4".into(), multiplicity: 4, representative: choose_rep(&quads, quad_pref), points: quads },
        OrbitClass { label: "3a".into(), multiplicity: 3, representative: first, points: orbit_a },
        OrbitClass { label: "3b".into(), multiplicity: 3, representative: rep_b, points: orbit_b },
    ];
    Ok(LineConfiguration { field: field.clone(), kind: ConfigKind::Wiman, lines, classes })
}

/// All points of ℙ²(𝔽_p), scaled like [`Point`].
fn projective_points(f: &PrimeField) -> Vec<Point<u64>> {
    let p = f.modulus();
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            out.push(Point([a, b, 1]));
        }
    }
    for a in 0..p {
        out.push(Point([a, 1, 0]));
    }
    out.push(Point([1, 0, 0]));
    out
}

/// The Klein configuration over 𝔽₇: the 21 lines missing the conic
/// x² + y² + z² = 0 over 𝔽₇.
pub fn build_klein_char7() -> Result<LineConfiguration<PrimeField>, ConfigError> {
    let f = PrimeField::new(7)?;
    let all = projective_points(&f);
    let on_conic = |p: &Point<u64>| p.0.iter().map(|c| c * c).sum::<u64>() % 7 == 0;
    let conic: Vec<Point<u64>> = all.iter().filter(|p| on_conic(p)).cloned().collect();
    if conic.len() != 8 {
        return Err(ConfigError::Structure(format!("conic has {} points", conic.len())));
    }
    // The tangent at P has coefficient vector P.
    let tangents = conic.clone();
    let lines: Vec<Point<u64>> = all.iter().filter(|l| !conic.iter().any(|p| incident(&f, l, p))).cloned().collect();
    if lines.len() != 21 {
        return Err(ConfigError::Structure(format!("{} exterior lines", lines.len())));
    }
    let pts = intersections(&f, &lines);
    let mut by = group_by_multiplicity(&pts);
    expect_counts(&by, &[(4, 21), (3, 28)])?;
    let quads = by.remove(&4).unwrap_or_default();
    let triples = by.remove(&3).unwrap_or_default();
    let on_tangent = |p: &Point<u64>| tangents.iter().any(|t| incident(&f, t, p));
    let mut off_tangents: Vec<Point<u64>> = all.iter().filter(|p| !on_tangent(p)).cloned().collect();
    off_tangents.sort();
    let tangent_not_conic: Vec<Point<u64>> = all.iter().filter(|p| on_tangent(p) && !on_conic(p)).cloned().collect();
    let star: Vec<Point<u64>> = intersections(&f, &tangents).into_keys().collect();
    if off_tangents != quads || star != triples || tangent_not_conic.len() != 28 || tangent_not_conic.iter().any(|p| !triples.contains(p)) {
        return Err(ConfigError::Structure("multiple points do not match the conic description".into()));
    }
    let classes = vec![
        OrbitClass { label: "4".into(), multiplicity: 4, representative: quads[0].clone(), points: quads },
        OrbitClass { label: "3".into(), multiplicity: 3, representative: triples[0].clone(), points: triples },
    ];
    Ok(LineConfiguration { field: f, kind: ConfigKind::KleinChar7, lines, classes })
}

impl<F: Field> LineConfiguration<F> {
    pub fn all_points(&self) -> Vec<Point<F::Elem>> {
        self.classes.iter().flat_map(|c| c.points.iter().cloned()).collect()
    }

    pub fn class(&self, label: &str) -> Option<&OrbitClass<F::Elem>> {
        self.classes.iter().find(|c| c.label == label)
    }

    pub fn line_forms(&self, ring: &PolyRing<F>) -> Vec<Poly<F::Elem>> {
        self.lines.iter().map(|l| ring.linear_form(&l.0)).collect()
    }

    /// Product of all line forms.
    pub fn line_product(&self, ring: &PolyRing<F>) -> Poly<F::Elem> {
        ring.product(self.line_forms(ring).iter())
    }

    /// Intersection form with one exceptional class per orbit class.
    pub fn orbit_form(&self) -> Arc<IntersectionForm> {
        let name = match self.kind {
            ConfigKind::Klein => "klein",
            ConfigKind::Wiman => "wiman-split",
            ConfigKind::KleinChar7 => "klein-char7",
        };
        let classes: Vec<(&str, u64)> = self.classes.iter().map(|c| (c.label.as_str(), c.points.len() as u64)).collect();
        IntersectionForm::new(name, &classes)
    }

    /// Intersection form with one exceptional class per multiplicity.
    pub fn multiplicity_form(&self) -> Arc<IntersectionForm> {
        match self.kind {
            ConfigKind::Klein => IntersectionForm::klein(),
            ConfigKind::Wiman => IntersectionForm::wiman(),
            ConfigKind::KleinChar7 => IntersectionForm::new("klein-char7", &[("4", 21), ("3", 28)]),
        }
    }

    /// Class of the union of the lines, dH − Σ m E_m on the multiplicity form.
    pub fn line_class(&self) -> DivisorClass {
        let form = self.multiplicity_form();
        let mults: Vec<i64> = form.labels.iter().map(|l| l.trim_end_matches(['a', 'b']).parse().expect("numeric labels")).collect();
        DivisorClass::int(&form, self.lines.len() as i64, &mults)
    }

    /// Every listed point lies on exactly its multiplicity of lines and
    /// every pairwise intersection appears in exactly one class.
    pub fn audit_incidences(&self) -> bool {
        let pts = intersections(&self.field, &self.lines);
        let listed: usize = self.classes.iter().map(|c| c.points.len()).sum();
        if listed != pts.len() {
            return false;
        }
        self.classes.iter().all(|c| {
            c.points.iter().all(|p| {
                pts.get(p) == Some(&c.multiplicity)
                    && self.lines.iter().filter(|l| incident(&self.field, l, p)).count() as u32 == c.multiplicity
            })
        })
    }

    /// Number of configuration points of each class on each line.
    pub fn points_per_line(&self) -> Vec<Vec<usize>> {
        self.lines
            .iter()
            .map(|l| self.classes.iter().map(|c| c.points.iter().filter(|p| incident(&self.field, l, p)).count()).collect())
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitCheck {
    pub label: String,
    pub size: usize,
    pub single_orbit: bool,
    pub stabilizer_order: usize,
    pub orbit_stabilizer: bool,
    pub generators_permute: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialOrbitCheck {
    pub name: String,
    pub expected: usize,
    pub found: Option<usize>,
    pub status: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitReport {
    pub group_order: usize,
    pub classes: Vec<OrbitCheck>,
    pub special: Vec<SpecialOrbitCheck>,
    pub ok: bool,
}

/// Checks that each class is a single orbit and that orbit-stabilizer holds.
pub fn verify_orbit_decomposition<F: Field>(config: &LineConfiguration<F>, group: &MatrixGroup<F>) -> OrbitReport {
    let mut classes = Vec::new();
    for c in &config.classes {
        let orbit = group.orbit(&c.representative);
        let stab = group.stabilizer_order(&c.representative);
        let permute = group.generators().iter().all(|g| c.points.iter().all(|p| c.points.contains(&group.act_on_point(g, p))));
        classes.push(OrbitCheck {
            label: c.label.clone(),
            size: c.points.len(),
            single_orbit: orbit == c.points,
            stabilizer_order: stab,
            orbit_stabilizer: orbit.len() * stab == group.order(),
            generators_permute: permute,
        });
    }
    let ok = classes.iter().all(|c| c.single_orbit && c.orbit_stabilizer && c.generators_permute);
    OrbitReport { group_order: group.order(), classes, special: Vec::new(), ok }
}

/// Projective fixed points that are isolated eigenvectors of group elements,
/// for eigenvalues that are roots of unity in the field.
pub fn isolated_fixed_points<F: Field>(group: &MatrixGroup<F>) -> Vec<Point<F::Elem>> {
    let f = group.field();
    let eigenvalues = f.roots_of_unity(2520);
    let mut out = std::collections::BTreeSet::new();
    for m in group.elements() {
        for lambda in &eigenvalues {
            let rows: Vec<Vec<F::Elem>> =
                (0..3).map(|i| (0..3).map(|j| if i == j { f.sub(&m[i][j], lambda) } else { m[i][j].clone() }).collect()).collect();
            let ker = crate::linalg::kernel(f, rows, 3);
            if ker.len() == 1 {
                let v = [ker[0][0].clone(), ker[0][1].clone(), ker[0][2].clone()];
                if let Ok(p) = Point::new(f, v) {
                    out.insert(p);
                }
            }
        }
    }
    out.into_iter().collect()
}

/// Common zeros of `a` and `b` among the isolated fixed points, closed under
/// the group. Complete when the count reaches the Bézout number.
pub fn special_orbit<F: Field>(
    group: &MatrixGroup<F>,
    ring: &PolyRing<F>,
    name: &str,
    a: &Poly<F::Elem>,
    b: &Poly<F::Elem>,
    candidates: &[Point<F::Elem>],
) -> SpecialOrbitCheck {
    let bezout = (a.degree().unwrap_or(0) * b.degree().unwrap_or(0)) as usize;
    let f = group.field();
    let mut found = std::collections::BTreeSet::new();
    let mut orbits = 0;
    for p in candidates {
        if f.is_zero(&ring.eval(a, &p.0)) && f.is_zero(&ring.eval(b, &p.0)) && !found.contains(p) {
            found.extend(group.orbit(p));
            orbits += 1;
        }
    }
    let n = found.len();
    let status = if n == bezout && orbits == 1 {
        "verified: one orbit whose size is the Bezout number".to_string()
    } else if n == bezout {
        format!("verified: {orbits} orbits whose sizes add up to the Bezout number")
    } else {
        format!("skipped: only {n} of {bezout} points are rational over {}", f.name())
    };
    SpecialOrbitCheck { name: name.to_string(), expected: bezout, found: (n == bezout).then_some(n), status }
}
