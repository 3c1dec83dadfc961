use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::int::Int;
use super::monomial::{Monomial, Variable};

/// Sparse multivariate polynomial with integer coefficients.
///
/// Terms are stored in ascending graded-lex order with no zero coefficients,
/// so two equal polynomials have identical term vectors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<(Monomial, Int)>,
}

impl Polynomial {
    pub fn zero() -> Polynomial {
        Polynomial::default()
    }

    pub fn one() -> Polynomial {
        Polynomial::constant(Int::ONE)
    }

    pub fn constant(c: Int) -> Polynomial {
        Polynomial::term(c, Monomial::one())
    }

    pub fn term(c: Int, m: Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: vec![(m, c)],
        }
    }

    pub fn monomial(m: Monomial) -> Polynomial {
        Polynomial::term(Int::ONE, m)
    }

    /// `1 - m`.
    pub fn one_minus(m: &Monomial) -> Polynomial {
        Polynomial::from_terms([(Monomial::one(), Int::ONE), (m.clone(), Int::from(-1))])
    }

    /// Collects terms, merging equal monomials and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Int)>>(terms: I) -> Polynomial {
        let mut acc: HashMap<Monomial, Int> = HashMap::new();
        for (m, c) in terms {
            *acc.entry(m).or_default() += &c;
        }
        Polynomial::from_map(acc)
    }

    fn from_map(acc: HashMap<Monomial, Int>) -> Polynomial {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(Monomial, Int)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Int)> {
        self.terms
    }

    /// Highest total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> Int {
        self.terms
            .binary_search_by(|(t, _)| t.cmp(m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_default()
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: Vec<Variable> = self.terms.iter().flat_map(|(m, _)| m.variables()).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.merge(other, true)
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut terms = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let rhs = |c: &Int| if negate { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    terms.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    terms.push((b[j].0.clone(), rhs(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        terms.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        terms.extend(a[i..].iter().cloned());
        terms.extend(b[j..].iter().map(|(m, c)| (m.clone(), rhs(c))));
        Polynomial { terms }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        if self.terms.len() == 1 {
            let (m, c) = &self.terms[0];
            return other.mul_term(c, m);
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return self.mul_term(c, m);
        }
        let mut acc: HashMap<Monomial, Int> =
            HashMap::with_capacity(self.terms.len() * other.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.entry(ma.mul(mb)).or_default().add_mul(ca, cb);
            }
        }
        Polynomial::from_map(acc)
    }

    /// Multiplies by the single term `c * m`. Order is preserved because
    /// graded lex is a monomial order.
    pub fn mul_term(&self, c: &Int, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect(),
        }
    }

    /// `self * (1 - m)`.
    pub fn mul_one_minus(&self, m: &Monomial) -> Polynomial {
        self.sub(&self.mul_term(&Int::ONE, m))
    }

    /// Exact quotient by `1 - m`, or `None` when `1 - m` does not divide `self`.
    ///
    /// Works from the leading term down: the leading term of the dividend must
    /// equal `-lead(quotient) * m`, so each step either fails the divisibility
    /// check or strictly lowers the leading term.
    pub fn exact_div_one_minus(&self, m: &Monomial) -> Option<Polynomial> {
        assert!(!m.is_one(), "division by 1 - 1");
        if self.is_zero() {
            return Some(Polynomial::zero());
        }
        // cheap necessary condition: the top term must be divisible by m
        if !m.divides(&self.terms.last().unwrap().0) {
            return None;
        }
        if !self.vanishes_where_one(m) {
            return None;
        }
        let mut rem: BTreeMap<Monomial, Int> = self.terms.iter().cloned().collect();
        let mut quot: Vec<(Monomial, Int)> = Vec::new();
        while let Some((top, c)) = rem.pop_last() {
            let lowered = top.div(m)?;
            // quotient term is -c * lowered; remainder gains +c * lowered
            let slot = rem.entry(lowered.clone()).or_default();
            *slot += &c;
            if slot.is_zero() {
                rem.remove(&lowered);
            }
            quot.push((lowered, -&c));
        }
        quot.reverse();
        Some(Polynomial { terms: quot })
    }

    /// Whether `self` vanishes mod a prime at a fixed point with `m = 1`.
    /// `false` proves `1 - m` does not divide `self`; `true` is inconclusive
    /// only with negligible probability. Gives `true` when no variable of `m`
    /// has exponent one.
    fn vanishes_where_one(&self, m: &Monomial) -> bool {
        let Some(free) = m.iter().find(|&(_, e)| e == 1).map(|(v, _)| v) else {
            return true;
        };
        let rest = m.iter().filter(|&(v, _)| v != free).fold(1, |acc, (v, e)| {
            modp::mul(acc, modp::pow(modp::point(v), e as u64))
        });
        let free_val = modp::inv(rest);
        // powers of each variable's value, indexed by exponent
        let mut vars: Vec<Variable> = Vec::new();
        let mut max_exp: Vec<u32> = Vec::new();
        for (t, _) in &self.terms {
            for (v, e) in t.iter() {
                match vars.binary_search(&v) {
                    Ok(i) => max_exp[i] = max_exp[i].max(e),
                    Err(i) => {
                        vars.insert(i, v);
                        max_exp.insert(i, e);
                    }
                }
            }
        }
        let powers: Vec<Vec<u64>> = vars
            .iter()
            .zip(&max_exp)
            .map(|(&v, &top)| {
                let x = if v == free { free_val } else { modp::point(v) };
                let mut row = vec![1u64; top as usize + 1];
                for k in 1..row.len() {
                    row[k] = modp::mul(row[k - 1], x);
                }
                row
            })
            .collect();
        let mut total = 0u64;
        for (t, c) in &self.terms {
            let mut x = modp::from_int(c);
            for (v, e) in t.iter() {
                x = modp::mul(x, powers[vars.binary_search(&v).unwrap()][e as usize]);
            }
            total = modp::add(total, x);
        }
        total == 0
    }

    /// Applies a monomial-valued map to every variable simultaneously.
    pub fn map_monomials<F: FnMut(&Monomial) -> Monomial>(&self, mut f: F) -> Polynomial {
        let mut acc: HashMap<Monomial, Int> = HashMap::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            *acc.entry(f(m)).or_default() += c;
        }
        Polynomial::from_map(acc)
    }

    /// Like [`Polynomial::map_monomials`] for a map that is injective on
    /// the monomials of `self`, so no terms merge.
    pub(crate) fn map_injective<F: FnMut(&Monomial) -> Monomial>(&self, mut f: F) -> Polynomial {
        let mut terms: Vec<_> = self.terms.iter().map(|(m, c)| (f(m), c.clone())).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Polynomial { terms }
    }

    /// Drops every term of total degree above `bound`.
    pub fn truncate(&self, bound: u32) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= bound)
                .cloned()
                .collect(),
        }
    }

    /// Sum of all coefficients.
    pub fn coefficient_sum(&self) -> Int {
        let mut s = Int::ZERO;
        for (_, c) in &self.terms {
            s += c;
        }
        s
    }

    /// Truncated product, keeping only terms of total degree `<= bound`.
    pub fn mul_truncated(&self, other: &Polynomial, bound: u32) -> Polynomial {
        let mut acc: HashMap<Monomial, Int> = HashMap::new();
        for (ma, ca) in &self.terms {
            if ma.degree() > bound {
                continue;
            }
            for (mb, cb) in &other.terms {
                if ma.degree() + mb.degree() > bound {
                    continue;
                }
                acc.entry(ma.mul(mb)).or_default().add_mul(ca, cb);
            }
        }
        Polynomial::from_map(acc)
    }
}

impl fmt::Display for Polynomial {
    /// Ascending term order, e.g. `1 - x1^2*x2*x3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// Arithmetic modulo the Mersenne prime `2^61 - 1`.
mod modp {
    use super::{Int, Variable};

    const P: u64 = (1 << 61) - 1;

    pub fn add(a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= P {
            s - P
        } else {
            s
        }
    }

    pub fn mul(a: u64, b: u64) -> u64 {
        let w = a as u128 * b as u128;
        let r = ((w >> 61) as u64) + ((w as u64) & P);
        if r >= P {
            r - P
        } else {
            r
        }
    }

    pub fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    }

    pub fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    pub fn from_int(c: &Int) -> u64 {
        match c.to_i64() {
            Some(v) => v.rem_euclid(P as i64) as u64,
            None => {
                let p = num_bigint::BigInt::from(P);
                let r = ((c.to_bigint() % &p) + &p) % &p;
                r.try_into().expect("residue fits in u64")
            }
        }
    }

    /// Fixed nonzero pseudo-random value for a variable (splitmix64).
    pub fn point(v: Variable) -> u64 {
        let id = v.element().map_or(u64::MAX, u64::from);
        let mut z = id.wrapping_add(0x9e37_79b9_7f4a_7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        z % (P - 1) + 1
    }
}
