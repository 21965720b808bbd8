use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, RngCore};

use super::{Field, FieldError};

/// Element of ℚ[t]/(f): integer numerators over a common positive
/// denominator, kept in lowest terms so that equality is structural.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NfElem {
    num: Vec<BigInt>,
    den: BigInt,
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElem({:?}/{})", self.num, self.den)
    }
}

impl NfElem {
    fn normalized(mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            for c in num.iter_mut() {
                *c = -std::mem::take(c);
            }
        }
        let mut g = den.clone();
        for c in &num {
            if g.is_one() {
                break;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if num.iter().all(Zero::is_zero) {
            return NfElem { num, den: BigInt::one() };
        }
        if !g.is_one() {
            for c in num.iter_mut() {
                *c = &*c / &g;
            }
            den /= &g;
        }
        NfElem { num, den }
    }

    /// Coordinates in the power basis 1, t, t², ...
    pub fn coordinates(&self) -> Vec<BigRational> {
        self.num.iter().map(|c| BigRational::new(c.clone(), self.den.clone())).collect()
    }

    /// The rational value, when the element lies in ℚ.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(BigRational::new(self.num[0].clone(), self.den.clone()))
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }
}

/// ℚ(t) with t a root of a monic integer polynomial.
#[derive(Clone)]
pub struct NumberField {
    inner: Arc<NumberData>,
}

struct NumberData {
    name: String,
    generator_name: String,
    /// Coefficients c_0..c_{n-1} of t^n + c_{n-1} t^{n-1} + ... + c_0.
    minpoly: Vec<BigInt>,
    constants: Vec<(String, NfElem)>,
    /// A root of unity generating all roots of unity the field is known to
    /// contain, with its order.
    torsion: (NfElem, u64),
}

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({})", self.inner.name)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.minpoly == other.inner.minpoly && self.inner.constants == other.inner.constants)
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// `minpoly` lists the non-leading coefficients, constant term first.
    pub fn new(name: &str, generator_name: &str, minpoly: &[i64]) -> Result<Self, FieldError> {
        if minpoly.is_empty() {
            return Err(FieldError::BadMinimalPolynomial);
        }
        let n = minpoly.len();
        let one = {
            let mut v = vec![BigInt::zero(); n];
            v[0] = BigInt::one();
            NfElem { num: v, den: BigInt::one() }
        };
        Ok(NumberField {
            inner: Arc::new(NumberData {
                name: name.to_string(),
                generator_name: generator_name.to_string(),
                minpoly: minpoly.iter().map(|&c| BigInt::from(c)).collect(),
                constants: Vec::new(),
                torsion: (one, 1),
            }),
        })
    }

    pub fn rationals() -> Self {
        let f = NumberField::new("QQ", "t", &[0]).expect("degree one field");
        let minus_one = f.from_i64(-1);
        f.with_data(Vec::new(), (minus_one, 2))
    }

    pub(crate) fn with_data(&self, constants: Vec<(String, NfElem)>, torsion: (NfElem, u64)) -> Self {
        NumberField {
            inner: Arc::new(NumberData {
                name: self.inner.name.clone(),
                generator_name: self.inner.generator_name.clone(),
                minpoly: self.inner.minpoly.clone(),
                constants,
                torsion,
            }),
        }
    }

    pub fn generator(&self) -> NfElem {
        let n = self.degree();
        let mut v = vec![BigInt::zero(); n];
        if n == 1 {
            v[0] = -self.inner.minpoly[0].clone();
        } else {
            v[1] = BigInt::one();
        }
        NfElem { num: v, den: BigInt::one() }
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.inner.minpoly
    }

    pub fn from_coordinates(&self, coords: &[BigRational]) -> NfElem {
        let n = self.degree();
        let mut den = BigInt::one();
        for c in coords {
            den = den.lcm(c.denom());
        }
        let mut num = vec![BigInt::zero(); n];
        for (i, c) in coords.iter().enumerate() {
            num[i] = c.numer() * (&den / c.denom());
        }
        NfElem::normalized(num, den)
    }

    fn scalar(&self, q: BigInt, den: BigInt) -> NfElem {
        let mut v = vec![BigInt::zero(); self.degree()];
        v[0] = q;
        NfElem::normalized(v, den)
    }

    /// Reduces a product of length 2n-1 modulo the minimal polynomial.
    fn reduce(&self, mut prod: Vec<BigInt>) -> Vec<BigInt> {
        let n = self.degree();
        let f = &self.inner.minpoly;
        for k in (n..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for j in 0..n {
                if !f[j].is_zero() {
                    prod[k - n + j] -= &c * &f[j];
                }
            }
        }
        prod.truncate(n);
        prod
    }

    fn mul_table_column(&self, a: &NfElem, j: usize) -> Vec<BigRational> {
        let mut t = self.one();
        let g = self.generator();
        for _ in 0..j {
            t = self.mul(&t, &g);
        }
        self.mul(a, &t).coordinates()
    }
}

impl Field for NumberField {
    type Elem = NfElem;

    fn zero(&self) -> NfElem {
        NfElem { num: vec![BigInt::zero(); self.degree()], den: BigInt::one() }
    }
    fn one(&self) -> NfElem {
        self.scalar(BigInt::one(), BigInt::one())
    }
    fn from_i64(&self, n: i64) -> NfElem {
        self.scalar(BigInt::from(n), BigInt::one())
    }
    fn from_bigint(&self, n: &BigInt) -> NfElem {
        self.scalar(n.clone(), BigInt::one())
    }
    fn from_rational(&self, q: &BigRational) -> Result<NfElem, FieldError> {
        Ok(self.scalar(q.numer().clone(), q.denom().clone()))
    }

    fn add(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if self.is_zero(a) {
            return b.clone();
        }
        if self.is_zero(b) {
            return a.clone();
        }
        if a.den == b.den {
            let num = a.num.iter().zip(&b.num).map(|(x, y)| x + y).collect();
            return NfElem::normalized(num, a.den.clone());
        }
        let num = a.num.iter().zip(&b.num).map(|(x, y)| x * &b.den + y * &a.den).collect();
        NfElem::normalized(num, &a.den * &b.den)
    }

    fn sub(&self, a: &NfElem, b: &NfElem) -> NfElem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &NfElem, b: &NfElem) -> NfElem {
        if self.is_zero(a) || self.is_zero(b) {
            return self.zero();
        }
        let den = &a.den * &b.den;
        if a.is_rational() {
            let c = &a.num[0];
            return NfElem::normalized(b.num.iter().map(|x| x * c).collect(), den);
        }
        if b.is_rational() {
            let c = &b.num[0];
            return NfElem::normalized(a.num.iter().map(|x| x * c).collect(), den);
        }
        let n = self.degree();
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.num.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.num.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        NfElem::normalized(self.reduce(prod), den)
    }

    fn neg(&self, a: &NfElem) -> NfElem {
        NfElem { num: a.num.iter().map(|x| -x).collect(), den: a.den.clone() }
    }

    fn inv(&self, a: &NfElem) -> Result<NfElem, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        if a.is_rational() {
            return Ok(self.scalar(a.den.clone(), a.num[0].clone()));
        }
        // Solve (multiplication by a) · v = 1 over ℚ.
        let n = self.degree();
        let cols: Vec<Vec<BigRational>> = (0..n).map(|j| self.mul_table_column(a, j)).collect();
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|i| {
                let mut row: Vec<BigRational> = (0..n).map(|j| cols[j][i].clone()).collect();
                row.push(if i == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for c in 0..n {
            let piv = (c..n).find(|&r| !m[r][c].is_zero()).expect("multiplication by a nonzero element is invertible");
            m.swap(c, piv);
            let inv = m[c][c].recip();
            for x in m[c].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..n {
                if r != c && !m[r][c].is_zero() {
                    let f = m[r][c].clone();
                    for k in c..=n {
                        let t = &m[c][k] * &f;
                        m[r][k] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = m.iter().map(|row| row[n].clone()).collect();
        Ok(self.from_coordinates(&sol))
    }

    fn is_zero(&self, a: &NfElem) -> bool {
        a.num.iter().all(Zero::is_zero)
    }

    fn characteristic(&self) -> u64 {
        0
    }
    fn degree(&self) -> usize {
        self.inner.minpoly.len()
    }
    fn name(&self) -> String {
        self.inner.name.clone()
    }

    fn format(&self, a: &NfElem) -> String {
        let g = &self.inner.generator_name;
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (i, c) in a.num.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), a.den.clone());
            let neg = q.is_negative();
            let mag = q.abs();
            let var = match i {
                0 => String::new(),
                1 => g.clone(),
                _ => format!("{g}^{i}"),
            };
            let body = if var.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                var
            } else {
                format!("{mag}*{var}")
            };
            parts.push((neg, body));
        }
        if parts.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (neg, body)) in parts.into_iter().enumerate() {
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            s.push_str(&body);
        }
        s
    }

    fn constant(&self, name: &str) -> Result<NfElem, FieldError> {
        self.inner
            .constants
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, v)| v.clone())
            .ok_or_else(|| FieldError::UnknownConstant(name.to_string()))
    }
    fn constant_names(&self) -> Vec<String> {
        self.inner.constants.iter().map(|(n, _)| n.clone()).collect()
    }

    fn random(&self, rng: &mut dyn RngCore) -> NfElem {
        let num = (0..self.degree()).map(|_| BigInt::from(rng.gen_range(-3i64..=3))).collect();
        NfElem::normalized(num, BigInt::one())
    }

    fn roots_of_unity(&self, n: u64) -> Vec<NfElem> {
        let (gen, order) = &self.inner.torsion;
        let k = order.gcd(&n);
        let base = self.pow(gen, order / k);
        let mut out: Vec<NfElem> = (0..k).map(|i| self.pow(&base, i)).collect();
        out.sort();
        out
    }

    fn prefers_sparse_pivots(&self) -> bool {
        true
    }
}
