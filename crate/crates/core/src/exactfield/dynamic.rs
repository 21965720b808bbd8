use std::fmt;

use super::{Field, FieldError, FieldSpec, NfElem, NumberField, PrimeField};

/// A field chosen at run time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AnyField {
    Prime(PrimeField),
    Number(NumberField),
}

impl AnyField {
    pub fn spec(&self) -> FieldSpec {
        match self {
            AnyField::Prime(f) => FieldSpec::of(f, None),
            AnyField::Number(f) => FieldSpec::of(f, Some(f.minimal_polynomial().iter().map(|c| c.to_string()).collect())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            AnyField::Prime(f) => f.name(),
            AnyField::Number(f) => f.name(),
        }
    }

    pub fn element(&self, n: i64) -> FieldElement {
        let repr = match self {
            AnyField::Prime(f) => Repr::Prime(f.from_i64(n)),
            AnyField::Number(f) => Repr::Number(f.from_i64(n)),
        };
        FieldElement { field: self.clone(), repr }
    }

    pub fn constant(&self, name: &str) -> Result<FieldElement, FieldError> {
        let repr = match self {
            AnyField::Prime(f) => Repr::Prime(f.constant(name)?),
            AnyField::Number(f) => Repr::Number(f.constant(name)?),
        };
        Ok(FieldElement { field: self.clone(), repr })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    Prime(u64),
    Number(NfElem),
}

/// An element tagged with its field, for arithmetic across a dynamic API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: AnyField,
    repr: Repr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn field(&self) -> &AnyField {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        match (&self.field, &self.repr) {
            (AnyField::Prime(f), Repr::Prime(a)) => f.is_zero(a),
            (AnyField::Number(f), Repr::Number(a)) => f.is_zero(a),
            _ => unreachable!("representation matches its field"),
        }
    }

    pub fn inverse(&self) -> Result<FieldElement, FieldError> {
        let repr = match (&self.field, &self.repr) {
            (AnyField::Prime(f), Repr::Prime(a)) => Repr::Prime(f.inv(a)?),
            (AnyField::Number(f), Repr::Number(a)) => Repr::Number(f.inv(a)?),
            _ => unreachable!("representation matches its field"),
        };
        Ok(FieldElement { field: self.field.clone(), repr })
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let repr = match (&self.field, &self.repr) {
            (AnyField::Prime(f), Repr::Prime(a)) => Repr::Prime(f.pow(a, e)),
            (AnyField::Number(f), Repr::Number(a)) => Repr::Number(f.pow(a, e)),
            _ => unreachable!("representation matches its field"),
        };
        FieldElement { field: self.field.clone(), repr }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.field, &self.repr) {
            (AnyField::Prime(f), Repr::Prime(a)) => write!(out, "{}", f.format(a)),
            (AnyField::Number(f), Repr::Number(a)) => write!(out, "{}", f.format(a)),
            _ => unreachable!("representation matches its field"),
        }
    }
}

fn apply<F: Field>(f: &F, a: &F::Elem, b: &F::Elem, op: ArithOp) -> Result<F::Elem, FieldError> {
    Ok(match op {
        ArithOp::Add => f.add(a, b),
        ArithOp::Sub => f.sub(a, b),
        ArithOp::Mul => f.mul(a, b),
        ArithOp::Div => f.div(a, b)?,
    })
}

/// Binary arithmetic on tagged elements; fails on mismatched fields or
/// division by zero.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement, FieldError> {
    if a.field != b.field {
        return Err(FieldError::MismatchedFields(a.field.name(), b.field.name()));
    }
    let repr = match (&a.field, &a.repr, &b.repr) {
        (AnyField::Prime(f), Repr::Prime(x), Repr::Prime(y)) => Repr::Prime(apply(f, x, y, op)?),
        (AnyField::Number(f), Repr::Number(x), Repr::Number(y)) => Repr::Number(apply(f, x, y, op)?),
        _ => unreachable!("representation matches its field"),
    };
    Ok(FieldElement { field: a.field.clone(), repr })
}
