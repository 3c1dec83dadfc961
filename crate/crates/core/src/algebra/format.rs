//! Text and JSON renderings of rational functions, and a parser for the
//! text form.
//!
//! The text form is what `Display` prints, e.g.
//! `(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2))`. The parser accepts any
//! expression built from integers, variables, `+ - * / ^` and parentheses,
//! provided every divisor is, up to sign, a binomial `1 - m`
//! or `±1`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::monomial::{Monomial, Variable};
use super::poly::Polynomial;
use super::rational::RationalFunction;
use super::AlgebraError;

/// Integer coefficient in JSON: a plain number when it fits in `i64`,
/// otherwise a decimal string.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(untagged)]
pub enum CoefJson {
    Small(i64),
    Big(String),
}

impl CoefJson {
    pub fn from_int(c: &Int) -> CoefJson {
        match c.to_i64() {
            Some(v) => CoefJson::Small(v),
            None => CoefJson::Big(c.to_string()),
        }
    }

    pub fn to_int(&self) -> Result<Int, AlgebraError> {
        match self {
            CoefJson::Small(v) => Ok(Int::from(*v)),
            CoefJson::Big(s) => s
                .parse()
                .map_err(|_| AlgebraError::Parse(format!("bad coefficient `{s}`"))),
        }
    }
}

pub type TermJson = (CoefJson, BTreeMap<String, u32>);

/// Machine-readable rational function: numerator terms as `[coef, monomial]`
/// pairs and the monomials `m` of the denominator factors `1 - m`.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RationalJson {
    pub num: Vec<TermJson>,
    pub den: Vec<BTreeMap<String, u32>>,
}

pub fn monomial_to_json(m: &Monomial) -> BTreeMap<String, u32> {
    m.iter().map(|(v, e)| (v.name(), e)).collect()
}

pub fn monomial_from_json(j: &BTreeMap<String, u32>) -> Result<Monomial, AlgebraError> {
    let pairs = j
        .iter()
        .map(|(k, &e)| {
            k.parse::<Variable>()
                .map(|v| (v, e))
                .map_err(AlgebraError::Parse)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Monomial::from_pairs(pairs))
}

impl RationalFunction {
    pub fn to_json(&self) -> RationalJson {
        RationalJson {
            num: self
                .numerator()
                .terms()
                .iter()
                .map(|(m, c)| (CoefJson::from_int(c), monomial_to_json(m)))
                .collect(),
            den: self.denominator().iter().map(monomial_to_json).collect(),
        }
    }

    pub fn from_json(j: &RationalJson) -> Result<Self, AlgebraError> {
        let terms = j
            .num
            .iter()
            .map(|(c, m)| Ok((monomial_from_json(m)?, c.to_int()?)))
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        let den = j
            .den
            .iter()
            .map(monomial_from_json)
            .collect::<Result<Vec<_>, _>>()?;
        RationalFunction::try_new(Polynomial::from_terms(terms), den)
    }

    /// Parses the text form (see the module docs).
    pub fn parse(s: &str) -> Result<Self, AlgebraError> {
        let mut p = Parser {
            toks: tokenize(s)?,
            pos: 0,
        };
        let v = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(AlgebraError::Parse(format!(
                "unexpected token {:?}",
                p.toks[p.pos]
            )));
        }
        v.into_rf()
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(Int),
    Var(Variable),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, AlgebraError> {
    let chars: Vec<char> = s.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            toks.push(Tok::Int(
                lit.parse().map_err(|_| AlgebraError::Parse(lit.clone()))?,
            ));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let name: String = chars[start..i].iter().collect();
            toks.push(Tok::Var(name.parse().map_err(AlgebraError::Parse)?));
        } else if "+-*/^()".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(AlgebraError::Parse(format!("unexpected character `{c}`")));
        }
    }
    Ok(toks)
}

/// A product of factors over a product of divisors, kept unexpanded so that
/// `(1 - x)*(1 - y)` can still be divided by.
struct Val {
    factors: Vec<RationalFunction>,
    divisors: Vec<RationalFunction>,
}

impl Val {
    fn single(f: RationalFunction) -> Val {
        Val {
            factors: vec![f],
            divisors: Vec::new(),
        }
    }

    fn into_rf(self) -> Result<RationalFunction, AlgebraError> {
        let mut acc = RationalFunction::one();
        for f in &self.factors {
            acc = acc.mul(f);
        }
        for d in &self.divisors {
            acc = acc.mul(&reciprocal(d)?);
        }
        Ok(acc)
    }
}

fn reciprocal(d: &RationalFunction) -> Result<RationalFunction, AlgebraError> {
    let mut expanded = Polynomial::one();
    for m in d.denominator() {
        expanded = expanded.mul_one_minus(m);
    }
    let n = d.numerator();
    let terms = n.terms();
    let bad = || AlgebraError::Parse(format!("cannot divide by `{d}`"));
    match terms {
        [(m, c)] if m.is_one() && (c.is_one() || *c == Int::from(-1)) => {
            Ok(RationalFunction::from_poly(expanded.mul_term(c, m)))
        }
        [(one, c0), (m, c1)] if one.is_one() => {
            let sign = if c0.is_one() && *c1 == Int::from(-1) {
                Int::ONE
            } else if *c0 == Int::from(-1) && c1.is_one() {
                Int::from(-1)
            } else {
                return Err(bad());
            };
            Ok(RationalFunction::new(
                expanded.mul_term(&sign, &Monomial::one()),
                vec![m.clone()],
            ))
        }
        _ => Err(bad()),
    }
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Val, AlgebraError> {
        let mut negate = false;
        if self.eat('-') {
            negate = true;
        } else {
            self.eat('+');
        }
        let first = self.term()?;
        if !negate && !matches!(self.peek(), Some(Tok::Op('+' | '-'))) {
            return Ok(first);
        }
        let mut acc = first.into_rf()?;
        if negate {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?.into_rf()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?.into_rf()?);
            } else {
                break;
            }
        }
        Ok(Val::single(acc))
    }

    fn term(&mut self) -> Result<Val, AlgebraError> {
        let mut v = self.power()?;
        loop {
            if self.eat('*') {
                let rhs = self.power()?;
                v.factors.extend(rhs.factors);
                v.divisors.extend(rhs.divisors);
            } else if self.eat('/') {
                let rhs = self.power()?;
                v.factors.extend(rhs.divisors);
                v.divisors.extend(rhs.factors);
            } else {
                break;
            }
        }
        Ok(v)
    }

    fn power(&mut self) -> Result<Val, AlgebraError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let e = match self.toks.get(self.pos) {
            Some(Tok::Int(n)) => n.to_i64().filter(|&e| (0..=u32::MAX as i64).contains(&e)),
            _ => None,
        }
        .ok_or_else(|| AlgebraError::Parse("exponent must be a non-negative integer".into()))?;
        self.pos += 1;
        let mut out = Val {
            factors: Vec::new(),
            divisors: Vec::new(),
        };
        for _ in 0..e {
            out.factors.extend(base.factors.iter().cloned());
            out.divisors.extend(base.divisors.iter().cloned());
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Val, AlgebraError> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Val::single(RationalFunction::from_poly(
                    Polynomial::constant(n),
                )))
            }
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Val::single(RationalFunction::from_poly(
                    Polynomial::monomial(Monomial::var(v)),
                )))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err(AlgebraError::Parse("missing `)`".into()));
                }
                Ok(v)
            }
            other => Err(AlgebraError::Parse(format!("unexpected {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_rendered_form() {
        let s =
            "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3)*(1 - x1*x2*x3*x4))";
        let f = RationalFunction::parse(s).unwrap();
        assert_eq!(f.denominator().len(), 5);
        let rendered = f.to_string();
        assert_eq!(RationalFunction::parse(&rendered).unwrap(), f);
        assert_eq!(
            RationalFunction::parse(&rendered).unwrap().to_string(),
            rendered
        );
    }

    #[test]
    fn parses_hand_written_forms() {
        let a = RationalFunction::parse("(1+q^2)/((1-q)*(1-q^2)*(1-q^3)*(1-q^4))").unwrap();
        let b = RationalFunction::parse("(1-q^4)/((1-q)*(1-q^2)^2*(1-q^3)*(1-q^4))").unwrap();
        assert!(a.rf_eq(&b));
        let c = RationalFunction::parse("-x2/(1 - x2)").unwrap();
        let d = RationalFunction::parse("1 - 1/(1-x2)").unwrap();
        assert!(c.rf_eq(&d));
        let e = RationalFunction::parse("1/(x1 - 1)").unwrap();
        assert!(e.rf_eq(&RationalFunction::parse("-1/(1-x1)").unwrap()));
        assert!(RationalFunction::parse("1/(1 + x1)").is_err());
        assert!(RationalFunction::parse("1/(1 - x1").is_err());
        assert!(RationalFunction::parse("1 $ 2").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let f = RationalFunction::parse("(3 - 2*x1*q)/((1 - q)*(1 - x1*x7^2))").unwrap();
        let j = serde_json::to_string(&f.to_json()).unwrap();
        let back: RationalJson = serde_json::from_str(&j).unwrap();
        assert_eq!(RationalFunction::from_json(&back).unwrap(), f);
        let big = RationalFunction::parse("123456789012345678901234567890*q").unwrap();
        let j = serde_json::to_value(big.to_json()).unwrap();
        assert!(j["num"][0][0].is_string());
        let back: RationalJson = serde_json::from_value(j).unwrap();
        assert_eq!(RationalFunction::from_json(&back).unwrap(), big);
    }
}
