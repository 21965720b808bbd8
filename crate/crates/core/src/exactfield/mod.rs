//! Exact coefficient fields: prime fields and number fields given by a
//! monic minimal polynomial over the rationals.

mod dynamic;
mod number;
mod presets;
mod prime;

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::RngCore;

pub use dynamic::{field_arith, AnyField, ArithOp, FieldElement};
pub use number::{NfElem, NumberField};
pub use presets::{
    klein_number_field, klein_prime_field, wiman_number_field, wiman_prime_field, FieldKind, FieldSpec, Preset, KLEIN_DEFAULT_PRIME,
    WIMAN_DEFAULT_PRIME,
};
pub use prime::PrimeField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("elements belong to different fields ({0} vs {1})")]
    MismatchedFields(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} is outside the supported range 2..2^31")]
    ModulusOutOfRange(u64),
    #[error("field {field} lacks {what}")]
    MissingRoot { field: String, what: String },
    #[error("unknown named constant `{0}`")]
    UnknownConstant(String),
    #[error("denominator {0} is not invertible in characteristic {1}")]
    NonInvertibleDenominator(BigInt, u64),
    #[error("minimal polynomial must be monic of degree >= 1")]
    BadMinimalPolynomial,
    #[error("unknown field preset `{0}`")]
    UnknownPreset(String),
}

/// A field with exact arithmetic. Elements are plain values; all
/// operations go through the field object, which carries the modulus or
/// the minimal polynomial.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Hash + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, FieldError>;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, FieldError>;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    /// Degree over the prime field (prime fields) or over the rationals.
    fn degree(&self) -> usize;
    fn name(&self) -> String;
    fn format(&self, a: &Self::Elem) -> String;
    fn constant(&self, name: &str) -> Result<Self::Elem, FieldError>;
    fn constant_names(&self) -> Vec<String>;
    fn random(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Small integer count of roots of unity available for eigenvalue
    /// searches: returns all `n`-th roots of unity lying in the field.
    fn roots_of_unity(&self, n: u64) -> Vec<Self::Elem>;

    /// Whether elimination should prefer pivots with small support.
    fn prefers_sparse_pivots(&self) -> bool {
        false
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn add_assign(&self, a: &mut Self::Elem, b: &Self::Elem) {
        *a = self.add(a, b);
    }

    /// `dst[i] -= factor * src[i]`, the inner loop of elimination.
    fn sub_scaled(&self, dst: &mut [Self::Elem], factor: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.sub(d, &self.mul(factor, s));
            }
        }
    }

    /// Multiplies every entry by `factor` in place.
    fn scale_slice(&self, v: &mut [Self::Elem], factor: &Self::Elem) {
        for x in v.iter_mut() {
            if !self.is_zero(x) {
                *x = self.mul(x, factor);
            }
        }
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        let mut acc = self.zero();
        for x in items {
            self.add_assign(&mut acc, x);
        }
        acc
    }
}

/// Deterministic trial-division primality test, adequate for moduli below 2^31.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
