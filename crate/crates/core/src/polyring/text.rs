use std::fmt::Write;

use crate::exactfield::Field;

use super::{Monomial, Poly, PolyRing};

impl<F: Field> PolyRing<F> {
    /// Canonical text: terms in decreasing graded-lex order, e.g.
    /// `x^3*y + y^3*z + z^3*x`.
    pub fn format(&self, p: &Poly<F::Elem>) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in p.terms().rev().enumerate() {
            let mono = self.format_monomial(m);
            let coeff = self.field().format(c);
            let (neg, mag) = match coeff.strip_prefix('-') {
                Some(rest) if !rest.contains([' ', '+', '-']) => (true, rest.to_string()),
                _ => (false, coeff),
            };
            let mag = if mag.contains(' ') { format!("({mag})") } else { mag };
            match (k, neg) {
                (0, true) => s.push('-'),
                (0, false) => {}
                (_, true) => s.push_str(" - "),
                (_, false) => s.push_str(" + "),
            }
            match (mono.is_empty(), mag == "1") {
                (true, _) => s.push_str(&mag),
                (false, true) => s.push_str(&mono),
                (false, false) => {
                    let _ = write!(s, "{mag}*{mono}");
                }
            }
        }
        s
    }

    fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            match e {
                0 => {}
                1 => parts.push(self.names()[i].clone()),
                _ => parts.push(format!("{}^{e}", self.names()[i])),
            }
        }
        parts.join("*")
    }
}
