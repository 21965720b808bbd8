use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::{Rng, RngCore};

use super::{is_prime, Field, FieldError};

/// The prime field 𝔽_p for a prime `p < 2^31`, with Barrett reduction.
#[derive(Clone)]
pub struct PrimeField {
    inner: Arc<PrimeData>,
}

struct PrimeData {
    p: u64,
    /// floor(2^64 / p)
    barrett: u64,
    generator: u64,
    name: String,
    constants: Vec<(String, u64)>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimeField({})", self.inner.p)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || (self.inner.p == other.inner.p && self.inner.constants == other.inner.constants)
    }
}

impl Eq for PrimeField {}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        Self::with_constants(p, format!("GF({p})"), Vec::new())
    }

    pub(crate) fn with_constants(p: u64, name: String, constants: Vec<(String, u64)>) -> Result<Self, FieldError> {
        if !(2..(1u64 << 31)).contains(&p) {
            return Err(FieldError::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        let barrett = ((1u128 << 64) / p as u128) as u64;
        let generator = primitive_root(p);
        Ok(PrimeField { inner: Arc::new(PrimeData { p, barrett, generator, name, constants }) })
    }

    /// Returns a field equal to this one with additional named constants.
    pub(crate) fn extend_constants(&self, name: String, extra: Vec<(String, u64)>) -> Self {
        let mut constants = self.inner.constants.clone();
        constants.extend(extra);
        PrimeField {
            inner: Arc::new(PrimeData { p: self.inner.p, barrett: self.inner.barrett, generator: self.inner.generator, name, constants }),
        }
    }

    pub fn modulus(&self) -> u64 {
        self.inner.p
    }

    #[inline(always)]
    fn reduce(&self, x: u64) -> u64 {
        let p = self.inner.p;
        let q = ((x as u128 * self.inner.barrett as u128) >> 64) as u64;
        let r = x - q * p;
        if r >= p {
            r - p
        } else {
            r
        }
    }

    pub fn sqrt(&self, a: u64) -> Option<u64> {
        let p = self.inner.p;
        let a = a % p;
        if a == 0 || p == 2 {
            return Some(a);
        }
        if self.pow(&a, (p - 1) / 2) != 1 {
            return None;
        }
        // Tonelli-Shanks
        let mut q = p - 1;
        let mut s = 0u32;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let mut z = 2u64;
        while self.pow(&z, (p - 1) / 2) != p - 1 {
            z += 1;
        }
        let mut m = s;
        let mut c = self.pow(&z, q);
        let mut t = self.pow(&a, q);
        let mut r = self.pow(&a, q.div_ceil(2));
        while t != 1 {
            let mut i = 0u32;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(&t2, &t2);
                i += 1;
            }
            let b = self.pow(&c, 1u64 << (m - i - 1));
            m = i;
            c = self.mul(&b, &b);
            t = self.mul(&t, &c);
            r = self.mul(&r, &b);
        }
        Some(r.min(p - r))
    }

    fn modinv(&self, a: u64) -> Option<u64> {
        let p = self.inner.p as i64;
        let (mut old_r, mut r) = (a as i64, p);
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        if old_r != 1 {
            return None;
        }
        Some(old_s.rem_euclid(p) as u64)
    }

    fn reduce_bigint(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.inner.p);
        let r = n.mod_floor(&p);
        r.to_u64().expect("residue fits in u64")
    }
}

fn factor_distinct(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = ((acc as u128 * b as u128) % p as u128) as u64;
        }
        b = ((b as u128 * b as u128) % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let factors = factor_distinct(p - 1);
    (2..p).find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1)).expect("prime fields have primitive roots")
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.inner.p
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.inner.p as i64) as u64
    }
    fn from_bigint(&self, n: &BigInt) -> u64 {
        self.reduce_bigint(n)
    }
    fn from_rational(&self, q: &BigRational) -> Result<u64, FieldError> {
        let den = self.reduce_bigint(q.denom());
        if den == 0 {
            return Err(FieldError::NonInvertibleDenominator(q.denom().clone(), self.inner.p));
        }
        let num = self.reduce_bigint(q.numer());
        Ok(self.mul(&num, &self.modinv(den).expect("nonzero residue is invertible")))
    }

    #[inline(always)]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = a + b;
        if s >= self.inner.p {
            s - self.inner.p
        } else {
            s
        }
    }
    #[inline(always)]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.inner.p - b
        }
    }
    #[inline(always)]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        self.reduce(a * b)
    }
    #[inline(always)]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.inner.p - a
        }
    }
    fn inv(&self, a: &u64) -> Result<u64, FieldError> {
        if *a == 0 {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.modinv(*a).expect("nonzero residue is invertible"))
    }
    #[inline(always)]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }

    fn characteristic(&self) -> u64 {
        self.inner.p
    }
    fn degree(&self) -> usize {
        1
    }
    fn name(&self) -> String {
        self.inner.name.clone()
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn constant(&self, name: &str) -> Result<u64, FieldError> {
        self.inner.constants.iter().find(|(n, _)| n == name).map(|(_, v)| *v).ok_or_else(|| FieldError::UnknownConstant(name.to_string()))
    }
    fn constant_names(&self) -> Vec<String> {
        self.inner.constants.iter().map(|(n, _)| n.clone()).collect()
    }
    fn random(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.inner.p)
    }

    fn roots_of_unity(&self, n: u64) -> Vec<u64> {
        let p = self.inner.p;
        let k = (p - 1).gcd(&n);
        let base = self.pow(&self.inner.generator, (p - 1) / k);
        let mut out: Vec<u64> = (0..k).map(|i| self.pow(&base, i)).collect();
        out.sort_unstable();
        out
    }

    fn sub_scaled(&self, dst: &mut [u64], factor: &u64, src: &[u64]) {
        let nf = self.neg(factor);
        if nf == 0 {
            return;
        }
        for (d, s) in dst.iter_mut().zip(src) {
            *d = self.reduce(*d + nf * *s);
        }
    }

    fn scale_slice(&self, v: &mut [u64], factor: &u64) {
        for x in v.iter_mut() {
            *x = self.reduce(*x * *factor);
        }
    }
}

impl PrimeField {
    /// Residue with the smallest absolute value, for display in signed form.
    pub fn signed(&self, a: u64) -> i64 {
        let p = self.inner.p;
        if a > p / 2 {
            a as i64 - p as i64
        } else {
            a as i64
        }
    }
}
