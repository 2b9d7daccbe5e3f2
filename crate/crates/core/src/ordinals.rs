//! Ordinals below epsilon-zero in Cantor normal form.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("zero is not a valid argument")]
    Zero,
    #[error("{0} is additively indecomposable")]
    Indecomposable(Ordinal),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid normal form: {0}")]
    Invalid(String),
}

/// An ordinal `w^e0*c0 + w^e1*c1 + ...` with strictly decreasing exponents.
/// The empty term list is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Self {
        Ordinal { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Ordinal::nat(1)
    }

    pub fn omega() -> Self {
        omega_pow(&Ordinal::one())
    }

    pub fn nat(n: u64) -> Self {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    /// Builds an ordinal from terms that are already in normal form.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Result<Self, OrdinalError> {
        for (i, (_, c)) in terms.iter().enumerate() {
            if *c == 0 {
                return Err(OrdinalError::Invalid(format!("term {i} has coefficient 0")));
            }
        }
        for w in terms.windows(2) {
            if w[0].0 <= w[1].0 {
                return Err(OrdinalError::Invalid("exponents not strictly decreasing".into()));
            }
        }
        Ok(Ordinal { terms })
    }

    /// Normalises an arbitrary term list by summing the terms left to right.
    pub fn normalise(terms: Vec<(Ordinal, u64)>) -> Self {
        terms
            .into_iter()
            .filter(|(_, c)| *c > 0)
            .fold(Ordinal::zero(), |acc, (e, c)| {
                acc.add(&Ordinal { terms: vec![(e, c)] })
            })
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_nat(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        matches!(self.terms.last(), Some((e, _)) if e.is_zero())
    }

    /// Leading exponent, or `None` for zero.
    pub fn degree(&self) -> Option<&Ordinal> {
        self.terms.first().map(|(e, _)| e)
    }

    pub fn add(&self, b: &Ordinal) -> Ordinal {
        let Some((b0, bc)) = b.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> = Vec::with_capacity(self.terms.len() + b.terms.len());
        for (e, c) in &self.terms {
            match e.cmp(b0) {
                Ordering::Greater => terms.push((e.clone(), *c)),
                Ordering::Equal => {
                    terms.push((e.clone(), c + bc));
                    terms.extend(b.terms[1..].iter().cloned());
                    return Ordinal { terms };
                }
                Ordering::Less => break,
            }
        }
        terms.extend(b.terms.iter().cloned());
        Ordinal { terms }
    }

    pub fn mul(&self, b: &Ordinal) -> Ordinal {
        if self.is_zero() || b.is_zero() {
            return Ordinal::zero();
        }
        let (a0, ac) = &self.terms[0];
        let mut out = Ordinal::zero();
        for (e, c) in &b.terms {
            let piece = if e.is_zero() {
                // (w^a0*ac + rest) * c = w^a0*(ac*c) + rest
                let mut terms = self.terms.clone();
                terms[0].1 = ac * c;
                Ordinal { terms }
            } else {
                Ordinal {
                    terms: vec![(a0.add(e), *c)],
                }
            };
            out = out.add(&piece);
        }
        out
    }

    pub fn is_indecomposable(&self) -> Result<bool, OrdinalError> {
        if self.is_zero() {
            return Err(OrdinalError::Zero);
        }
        Ok(self.terms.len() == 1 && self.terms[0].1 == 1)
    }

    /// Splits a decomposable ordinal as `beta + gamma` with both summands
    /// smaller, peeling one copy of the last term into `gamma`.
    pub fn decompose(&self) -> Result<(Ordinal, Ordinal), OrdinalError> {
        if self.is_indecomposable()? {
            return Err(OrdinalError::Indecomposable(self.clone()));
        }
        let mut beta = self.terms.clone();
        let (e, c) = beta.pop().expect("nonzero");
        if c > 1 {
            beta.push((e.clone(), c - 1));
        }
        let gamma = Ordinal {
            terms: vec![(e, 1)],
        };
        Ok((Ordinal { terms: beta }, gamma))
    }
}

pub fn omega_pow(b: &Ordinal) -> Ordinal {
    Ordinal {
        terms: vec![(b.clone(), 1)],
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for ((ea, ca), (eb, cb)) in self.terms.iter().zip(&other.terms) {
            match ea.cmp(eb).then(ca.cmp(cb)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            write!(f, "w")?;
            match e.as_nat() {
                Some(1) => {}
                Some(n) => write!(f, "^{n}")?,
                None if *e == Ordinal::omega() => write!(f, "^w")?,
                None => write!(f, "^({e})")?,
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ordinal({self})")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T, OrdinalError> {
        Err(OrdinalError::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> bool {
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn nat(&mut self) -> Result<u64, OrdinalError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a natural number");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("number too large")
        })
    }

    fn expr(&mut self) -> Result<Ordinal, OrdinalError> {
        let mut acc = self.term()?;
        while self.eat(b'+') {
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Ordinal, OrdinalError> {
        match self.peek() {
            Some(b'w') => {
                self.pos += 1;
                let exp = if self.eat(b'^') { self.atom()? } else { Ordinal::one() };
                let coeff = if self.eat(b'*') { self.nat()? } else { 1 };
                Ok(Ordinal::normalise(vec![(exp, coeff)]))
            }
            Some(c) if c.is_ascii_digit() => Ok(Ordinal::nat(self.nat()?)),
            Some(_) => self.err("expected 'w' or a natural number"),
            None => self.err("unexpected end of input"),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, OrdinalError> {
        if self.eat(b'(') {
            let e = self.expr()?;
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(e)
        } else if self.eat(b'w') {
            Ok(Ordinal::omega())
        } else {
            Ok(Ordinal::nat(self.nat()?))
        }
    }
}

impl FromStr for Ordinal {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let o = p.expr()?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        Ok(o)
    }
}

impl Serialize for Ordinal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ordinal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<u64> for Ordinal {
    fn from(n: u64) -> Self {
        Ordinal::nat(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn o(s: &str) -> Ordinal {
        s.parse().unwrap()
    }

    #[test]
    fn cmp_examples() {
        assert_eq!(o("w").cmp(&o("w")), Ordering::Equal);
        assert!(o("3") < o("w"));
        assert!(o("w^2+1") < o("w^2+w"));
    }

    #[test]
    fn add_examples() {
        assert_eq!(o("w").add(&o("1")), o("w+1"));
        assert_eq!(o("1").add(&o("w")), o("w"));
        assert_eq!(o("w^2+w").add(&o("w^2")), o("w^2*2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(o("w").mul(&o("2")), o("w*2"));
        assert_eq!(o("2").mul(&o("w")), o("w"));
        assert_eq!(o("w+1").mul(&o("w")), o("w^2"));
        assert_eq!(o("w+1").mul(&o("3")), o("w*3+1"));
    }

    #[test]
    fn omega_pow_examples() {
        assert_eq!(omega_pow(&o("0")), o("1"));
        assert_eq!(omega_pow(&o("1")), o("w"));
        assert_eq!(omega_pow(&o("w")).to_string(), "w^w");
    }

    #[test]
    fn indecomposable_examples() {
        assert!(o("w^2").is_indecomposable().unwrap());
        assert!(!o("w+1").is_indecomposable().unwrap());
        assert!(!o("w^3*2").is_indecomposable().unwrap());
        assert_eq!(Ordinal::zero().is_indecomposable(), Err(OrdinalError::Zero));
    }

    #[test]
    fn decompose_examples() {
        assert_eq!(o("w+1").decompose().unwrap(), (o("w"), o("1")));
        assert_eq!(o("w^2*2").decompose().unwrap(), (o("w^2"), o("w^2")));
        assert_eq!(o("w^2+w*3").decompose().unwrap(), (o("w^2+w*2"), o("w")));
        assert!(o("w^w").decompose().is_err());
    }

    #[test]
    fn printing() {
        assert_eq!(o("w^2*3+w+5").to_string(), "w^2*3+w+5");
        assert_eq!(o("0").to_string(), "0");
        assert_eq!(o(" w ^ ( w + 1 ) * 2 + 7 ").to_string(), "w^(w+1)*2+7");
        assert_eq!(o("w^2+w+1 + w^2").to_string(), "w^2*2");
        assert_eq!(o("w^2 + w^2+w+1").to_string(), "w^2*2+w+1");
        assert_eq!(o("w^0*4").to_string(), "4");
        assert_eq!(o("w^w*2+w^(w+1)").to_string(), "w^(w+1)");
    }

    #[test]
    fn parse_errors_carry_position() {
        match "w^".parse::<Ordinal>() {
            Err(OrdinalError::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("{other:?}"),
        }
        assert!("w+".parse::<Ordinal>().is_err());
        assert!("w^(2".parse::<Ordinal>().is_err());
        assert!("x".parse::<Ordinal>().is_err());
        assert!("w w".parse::<Ordinal>().is_err());
    }

    #[test]
    fn from_terms_checks_invariants() {
        assert!(Ordinal::from_terms(vec![(Ordinal::zero(), 0)]).is_err());
        assert!(Ordinal::from_terms(vec![(o("1"), 1), (o("2"), 1)]).is_err());
        assert!(Ordinal::from_terms(vec![(o("2"), 1), (o("1"), 3)]).is_ok());
    }

    fn arb_ordinal() -> impl Strategy<Value = Ordinal> {
        let leaf = (0u64..4).prop_map(Ordinal::nat);
        leaf.prop_recursive(3, 12, 3, |inner| {
            prop::collection::vec((inner, 1u64..4), 0..4).prop_map(Ordinal::normalise)
        })
    }

    proptest! {
        #[test]
        fn roundtrip(a in arb_ordinal()) {
            prop_assert_eq!(a.to_string().parse::<Ordinal>().unwrap(), a);
        }

        #[test]
        fn normal_form_invariants(a in arb_ordinal()) {
            prop_assert!(Ordinal::from_terms(a.terms().to_vec()).is_ok());
        }

        #[test]
        fn add_assoc(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        }

        #[test]
        fn mul_assoc_and_distrib(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        }

        #[test]
        fn add_strictly_increasing_on_right(a in arb_ordinal(), b in arb_ordinal(), c in arb_ordinal()) {
            if b < c {
                prop_assert!(a.add(&b) < a.add(&c));
            }
        }

        #[test]
        fn omega_pow_hom(a in arb_ordinal(), b in arb_ordinal()) {
            prop_assert_eq!(omega_pow(&a.add(&b)), omega_pow(&a).mul(&omega_pow(&b)));
        }

        #[test]
        fn finite_agrees_with_u64(x in 0u64..1000, y in 0u64..1000) {
            prop_assert_eq!(Ordinal::nat(x).add(&Ordinal::nat(y)), Ordinal::nat(x + y));
            prop_assert_eq!(Ordinal::nat(x).mul(&Ordinal::nat(y)), Ordinal::nat(x * y));
            prop_assert_eq!(Ordinal::nat(x).cmp(&Ordinal::nat(y)), x.cmp(&y));
        }

        #[test]
        fn indecomposable_closed_under_add(e in arb_ordinal(), x in arb_ordinal(), y in arb_ordinal()) {
            let a = omega_pow(&e);
            if x < a && y < a {
                prop_assert!(x.add(&y) < a);
            }
        }

        #[test]
        fn decompose_sums_back(a in arb_ordinal()) {
            if !a.is_zero() && !a.is_indecomposable().unwrap() {
                let (b, g) = a.decompose().unwrap();
                prop_assert!(b < a && g < a);
                prop_assert_eq!(b.add(&g), a);
            }
        }
    }
}
