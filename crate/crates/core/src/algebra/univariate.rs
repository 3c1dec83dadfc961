//! Dense arithmetic in the single variable `q`.
//!
//! The q-specialized computations only ever see denominators of the form
//! `∏ (1 - q^k)`, so they get a dedicated representation that avoids the
//! sparse multivariate machinery.

use std::collections::BTreeMap;

use super::int::Int;
use super::monomial::{Monomial, Variable};
use super::poly::Polynomial;
use super::rational::RationalFunction;

/// Polynomial in `q`, coefficient `i` belonging to `q^i`, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Int>);

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly(Vec::new())
    }

    pub fn one() -> UPoly {
        UPoly(vec![Int::ONE])
    }

    /// `c * q^k`.
    pub fn term(c: Int, k: usize) -> UPoly {
        if c.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Int::ZERO; k + 1];
        v[k] = c;
        UPoly(v)
    }

    pub fn from_coeffs(mut v: Vec<Int>) -> UPoly {
        while v.last().is_some_and(Int::is_zero) {
            v.pop();
        }
        UPoly(v)
    }

    pub fn coeffs(&self) -> &[Int] {
        &self.0
    }

    pub fn coeff(&self, k: usize) -> Int {
        self.0.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn add(&self, other: &UPoly) -> UPoly {
        let (long, short) = if self.0.len() >= other.0.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut v = long.0.clone();
        for (i, c) in short.0.iter().enumerate() {
            v[i] += c;
        }
        UPoly::from_coeffs(v)
    }

    pub fn neg(&self) -> UPoly {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Int::ZERO; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j].add_mul(a, b);
            }
        }
        UPoly::from_coeffs(v)
    }

    /// Multiplies by `c * q^shift`.
    pub fn scale(&self, c: &Int, shift: usize) -> UPoly {
        if self.is_zero() || c.is_zero() {
            return UPoly::zero();
        }
        let mut v = vec![Int::ZERO; shift];
        v.extend(self.0.iter().map(|a| a * c));
        UPoly(v)
    }

    /// `self * (1 - q^k)`.
    pub fn mul_one_minus(&self, k: usize) -> UPoly {
        if self.is_zero() {
            return UPoly::zero();
        }
        let mut v = self.0.clone();
        v.resize(self.0.len() + k, Int::ZERO);
        for (i, c) in self.0.iter().enumerate() {
            v[i + k] -= c;
        }
        UPoly::from_coeffs(v)
    }

    /// Exact quotient by `1 - q^k`, `None` if it does not divide.
    pub fn exact_div_one_minus(&self, k: usize) -> Option<UPoly> {
        assert!(k > 0);
        let Some(d) = self.degree() else {
            return Some(UPoly::zero());
        };
        if d < k {
            return None;
        }
        // p_i = t_i - t_{i-k}, so t_i = p_i + t_{i-k}
        let qd = d - k;
        let mut t: Vec<Int> = Vec::with_capacity(qd + 1);
        for i in 0..=qd {
            let mut c = self.0[i].clone();
            if i >= k {
                c += &t[i - k];
            }
            t.push(c);
        }
        for i in qd + 1..=d {
            let mut c = self.0[i].clone();
            if i >= k {
                c += &t[i - k];
            }
            if !c.is_zero() {
                return None;
            }
        }
        Some(UPoly::from_coeffs(t))
    }

    /// Value at `q = 1`.
    pub fn sum(&self) -> Int {
        let mut s = Int::ZERO;
        for c in &self.0 {
            s += c;
        }
        s
    }

    pub fn to_polynomial(&self) -> Polynomial {
        Polynomial::from_terms(
            self.0
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (Monomial::pow(Variable::Q, i as u32), c.clone())),
        )
    }

    /// Reads a polynomial in `q` alone; `None` if another variable appears.
    pub fn from_polynomial(p: &Polynomial) -> Option<UPoly> {
        let mut v: Vec<Int> = Vec::new();
        for (m, c) in p.terms() {
            let mut deg = 0usize;
            for (var, e) in m.iter() {
                if !var.is_q() {
                    return None;
                }
                deg = e as usize;
            }
            if v.len() <= deg {
                v.resize(deg + 1, Int::ZERO);
            }
            v[deg] += c;
        }
        Some(UPoly::from_coeffs(v))
    }
}

/// `num / ∏ (1 - q^k)^{mult}`, normalized like [`RationalFunction`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct URat {
    num: UPoly,
    den: BTreeMap<usize, u32>,
}

impl URat {
    pub fn zero() -> URat {
        URat::default()
    }

    pub fn one() -> URat {
        URat::from_poly(UPoly::one())
    }

    pub fn from_poly(p: UPoly) -> URat {
        URat {
            num: p,
            den: BTreeMap::new(),
        }
    }

    pub fn new(num: UPoly, den: impl IntoIterator<Item = usize>) -> URat {
        let mut r = URat {
            num,
            den: BTreeMap::new(),
        };
        for k in den {
            assert!(k > 0, "denominator factor 1 - q^0");
            *r.den.entry(k).or_insert(0) += 1;
        }
        r.normalize();
        r
    }

    pub fn numerator(&self) -> &UPoly {
        &self.num
    }

    /// Exponent `k` to multiplicity for every factor `1 - q^k`.
    pub fn denominator(&self) -> &BTreeMap<usize, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        let mut den = std::mem::take(&mut self.den);
        for (&k, mult) in den.iter_mut() {
            while *mult > 0 {
                match self.num.exact_div_one_minus(k) {
                    Some(q) => {
                        self.num = q;
                        *mult -= 1;
                    }
                    None => break,
                }
            }
        }
        den.retain(|_, m| *m > 0);
        self.den = den;
    }

    pub fn add(&self, other: &URat) -> URat {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        let mut den = self.den.clone();
        for (&k, &kb) in &other.den {
            let ka = self.den.get(&k).copied().unwrap_or(0);
            for _ in ka..kb {
                a = a.mul_one_minus(k);
            }
            den.insert(k, ka.max(kb));
        }
        for (&k, &ka) in &self.den {
            let kb = other.den.get(&k).copied().unwrap_or(0);
            for _ in kb..ka {
                b = b.mul_one_minus(k);
            }
        }
        let mut r = URat {
            num: a.add(&b),
            den,
        };
        r.normalize();
        r
    }

    pub fn mul(&self, other: &URat) -> URat {
        if self.is_zero() || other.is_zero() {
            return URat::zero();
        }
        let mut den = self.den.clone();
        for (&k, &m) in &other.den {
            *den.entry(k).or_insert(0) += m;
        }
        let mut r = URat {
            num: self.num.mul(&other.num),
            den,
        };
        r.normalize();
        r
    }

    /// Multiplies by `c * q^shift`.
    pub fn scale(&self, c: &Int, shift: usize) -> URat {
        let mut r = URat {
            num: self.num.scale(c, shift),
            den: self.den.clone(),
        };
        if r.num.is_zero() {
            r.den.clear();
        }
        r
    }

    /// Divides by `1 - q^k`.
    pub fn div_one_minus(&self, k: usize) -> URat {
        assert!(k > 0);
        if self.is_zero() {
            return URat::zero();
        }
        match self.num.exact_div_one_minus(k) {
            Some(q) => URat {
                num: q,
                den: self.den.clone(),
            },
            None => {
                let mut den = self.den.clone();
                *den.entry(k).or_insert(0) += 1;
                URat {
                    num: self.num.clone(),
                    den,
                }
            }
        }
    }

    /// Evaluates a multivariate function at `x_v = q^{weight(v)}`. Every
    /// denominator factor must keep a positive degree.
    pub fn from_weighted<F: Fn(Variable) -> u32>(f: &RationalFunction, weight: F) -> URat {
        let mut v: Vec<Int> = Vec::new();
        for (m, c) in f.numerator().terms() {
            let d = m.weighted_degree(&weight) as usize;
            if v.len() <= d {
                v.resize(d + 1, Int::ZERO);
            }
            v[d] += c;
        }
        URat::new(
            UPoly::from_coeffs(v),
            f.denominator()
                .iter()
                .map(|m| m.weighted_degree(&weight) as usize),
        )
    }

    pub fn to_rational(&self) -> RationalFunction {
        let den: Vec<Monomial> = self
            .den
            .iter()
            .flat_map(|(&k, &m)| {
                std::iter::repeat_n(Monomial::pow(Variable::Q, k as u32), m as usize)
            })
            .collect();
        RationalFunction::from_parts_unchecked(self.num.to_polynomial(), den)
    }

    /// Numerator after rewriting over `∏_{k in target} (1 - q^k)`.
    pub fn numerator_over(&self, target: &[usize]) -> Option<UPoly> {
        let mut p = self.num.clone();
        for &k in target {
            p = p.mul_one_minus(k);
        }
        for (&k, &m) in &self.den {
            for _ in 0..m {
                p = p.exact_div_one_minus(k)?;
            }
        }
        Some(p)
    }

    pub fn rf_eq(&self, other: &URat) -> bool {
        if self == other {
            return true;
        }
        let mut a = self.num.clone();
        let mut b = other.num.clone();
        for (&k, &kb) in &other.den {
            let ka = self.den.get(&k).copied().unwrap_or(0);
            for _ in ka..kb {
                a = a.mul_one_minus(k);
            }
        }
        for (&k, &ka) in &self.den {
            let kb = other.den.get(&k).copied().unwrap_or(0);
            for _ in kb..ka {
                b = b.mul_one_minus(k);
            }
        }
        a == b
    }

    /// Power series coefficients of degree `0..=bound`.
    pub fn series(&self, bound: usize) -> Vec<Int> {
        let mut s: Vec<Int> = (0..=bound).map(|i| self.num.coeff(i)).collect();
        for (&k, &m) in &self.den {
            for _ in 0..m {
                // multiply by 1/(1 - q^k): running sum with stride k
                for i in k..=bound {
                    let prev = s[i - k].clone();
                    s[i] += &prev;
                }
            }
        }
        s
    }
}
