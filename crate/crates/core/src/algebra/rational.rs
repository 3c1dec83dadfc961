use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::int::Int;
use super::monomial::{Monomial, Variable};
use super::poly::Polynomial;
use super::AlgebraError;

/// A monomial-valued substitution `v -> s(v)`; variables without an entry
/// are left alone. Applied simultaneously to all variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Substitution {
    map: BTreeMap<Variable, Monomial>,
}

impl Substitution {
    pub fn identity() -> Substitution {
        Substitution::default()
    }

    pub fn single(v: Variable, image: Monomial) -> Substitution {
        let mut s = Substitution::default();
        s.set(v, image);
        s
    }

    pub fn set(&mut self, v: Variable, image: Monomial) {
        if image == Monomial::var(v) {
            self.map.remove(&v);
        } else {
            self.map.insert(v, image);
        }
    }

    pub fn get(&self, v: Variable) -> Monomial {
        self.map
            .get(&v)
            .cloned()
            .unwrap_or_else(|| Monomial::var(v))
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, &Monomial)> {
        self.map.iter().map(|(v, m)| (*v, m))
    }

    pub fn apply_monomial(&self, m: &Monomial) -> Monomial {
        if self.map.is_empty() {
            return m.clone();
        }
        m.map_vars(|v| self.get(v))
    }

    /// `outer ∘ self`: first `self`, then `outer`.
    pub fn then(&self, outer: &Substitution) -> Substitution {
        let mut out = Substitution::default();
        for (v, img) in &self.map {
            out.set(*v, outer.apply_monomial(img));
        }
        for (v, img) in &outer.map {
            if !self.map.contains_key(v) {
                out.set(*v, img.clone());
            }
        }
        out
    }
}

impl FromIterator<(Variable, Monomial)> for Substitution {
    fn from_iter<T: IntoIterator<Item = (Variable, Monomial)>>(iter: T) -> Self {
        let mut s = Substitution::default();
        for (v, m) in iter {
            s.set(v, m);
        }
        s
    }
}

/// `numerator / ∏ (1 - m)` over a multiset of non-constant monomials `m`.
///
/// Kept in normal form: no denominator factor `1 - m` divides the numerator,
/// and the zero function has an empty denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: Polynomial,
    den: Vec<Monomial>,
}

fn multiset(den: &[Monomial]) -> BTreeMap<&Monomial, u32> {
    let mut counts = BTreeMap::new();
    for m in den {
        *counts.entry(m).or_insert(0) += 1;
    }
    counts
}

impl RationalFunction {
    pub fn zero() -> Self {
        RationalFunction {
            num: Polynomial::zero(),
            den: Vec::new(),
        }
    }

    pub fn one() -> Self {
        RationalFunction::from_poly(Polynomial::one())
    }

    pub fn from_poly(p: Polynomial) -> Self {
        RationalFunction {
            num: p,
            den: Vec::new(),
        }
    }

    /// `1 / (1 - m)`.
    pub fn geometric(m: Monomial) -> Self {
        RationalFunction::new(Polynomial::one(), vec![m])
    }

    /// Builds and normalizes. Panics on a constant denominator monomial;
    /// use [`RationalFunction::try_new`] for untrusted input.
    pub fn new(num: Polynomial, den: Vec<Monomial>) -> Self {
        Self::try_new(num, den).expect("denominator factor 1 - 1")
    }

    pub fn try_new(num: Polynomial, mut den: Vec<Monomial>) -> Result<Self, AlgebraError> {
        if den.iter().any(Monomial::is_one) {
            return Err(AlgebraError::DenominatorCollapse);
        }
        den.sort_unstable();
        let mut f = RationalFunction { num, den };
        f.normalize();
        Ok(f)
    }

    /// Builds without the cancellation pass. Only for callers that know the
    /// input is already reduced.
    pub(crate) fn from_parts_unchecked(num: Polynomial, mut den: Vec<Monomial>) -> Self {
        den.sort_unstable();
        RationalFunction { num, den }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.num
    }

    /// Denominator factors `m` of `∏ (1 - m)`, sorted, with repetition.
    pub fn denominator(&self) -> &[Monomial] {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_empty()
    }

    pub fn variables(&self) -> Vec<Variable> {
        let mut vs: BTreeSet<Variable> = self.num.variables().into_iter().collect();
        for m in &self.den {
            vs.extend(m.variables());
        }
        vs.into_iter().collect()
    }

    /// Cancels every denominator factor that divides the numerator exactly.
    /// Idempotent.
    pub fn normalize(&mut self) {
        if self.num.is_zero() {
            self.den.clear();
            return;
        }
        if self.den.is_empty() {
            return;
        }
        let mut kept = Vec::with_capacity(self.den.len());
        let mut num = std::mem::take(&mut self.num);
        let den = std::mem::take(&mut self.den);
        let mut i = 0;
        while i < den.len() {
            let m = &den[i];
            let mut j = i;
            while j < den.len() && den[j] == *m {
                j += 1;
            }
            let mut left = j - i;
            while left > 0 {
                match num.exact_div_one_minus(m) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            kept.extend(std::iter::repeat_n(m.clone(), left));
            i = j;
        }
        self.num = num;
        self.den = kept;
    }

    pub fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        if self.den == other.den {
            let mut f = RationalFunction {
                num: self.num.add(&other.num),
                den: self.den.clone(),
            };
            f.normalize();
            return f;
        }
        let (a, b) = (multiset(&self.den), multiset(&other.den));
        // each numerator picks up the factors the other side has in excess
        let mut num_a = self.num.clone();
        let mut num_b = other.num.clone();
        let mut den = Vec::new();
        let keys: BTreeSet<&Monomial> = a.keys().chain(b.keys()).copied().collect();
        for m in keys {
            let (ka, kb) = (
                a.get(m).copied().unwrap_or(0),
                b.get(m).copied().unwrap_or(0),
            );
            for _ in kb..ka {
                num_b = num_b.mul_one_minus(m);
            }
            for _ in ka..kb {
                num_a = num_a.mul_one_minus(m);
            }
            den.extend(std::iter::repeat_n(m.clone(), ka.max(kb) as usize));
        }
        let mut f = RationalFunction {
            num: num_a.add(&num_b),
            den,
        };
        f.normalize();
        f
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return RationalFunction::zero();
        }
        let mut den = self.den.clone();
        den.extend(other.den.iter().cloned());
        den.sort_unstable();
        let mut f = RationalFunction {
            num: self.num.mul(&other.num),
            den,
        };
        f.normalize();
        f
    }

    /// Multiplies the numerator by the signed term `c * m`.
    pub fn scale(&self, c: &Int, m: &Monomial) -> Self {
        let mut f = RationalFunction {
            num: self.num.mul_term(c, m),
            den: self.den.clone(),
        };
        if f.num.is_zero() {
            f.den.clear();
        }
        f
    }

    pub fn mul_poly(&self, p: &Polynomial) -> Self {
        let mut f = RationalFunction {
            num: self.num.mul(p),
            den: self.den.clone(),
        };
        f.normalize();
        f
    }

    /// Divides by `1 - m`.
    pub fn div_one_minus(&self, m: &Monomial) -> Self {
        assert!(!m.is_one());
        if self.is_zero() {
            return RationalFunction::zero();
        }
        match self.num.exact_div_one_minus(m) {
            Some(q) => RationalFunction {
                num: q,
                den: self.den.clone(),
            },
            None => {
                let mut den = self.den.clone();
                let pos = den.partition_point(|d| d < m);
                den.insert(pos, m.clone());
                RationalFunction {
                    num: self.num.clone(),
                    den,
                }
            }
        }
    }

    pub fn substitute(&self, s: &Substitution) -> Result<Self, AlgebraError> {
        if s.is_identity() {
            return Ok(self.clone());
        }
        if let Some(f) = self.rename(s) {
            return Ok(f);
        }
        let num = self.num.map_monomials(|m| s.apply_monomial(m));
        let den: Vec<Monomial> = self.den.iter().map(|m| s.apply_monomial(m)).collect();
        RationalFunction::try_new(num, den)
    }

    /// Fast path for substitutions that send the variables of `self` to
    /// distinct variables. Such a renaming keeps the normal form.
    fn rename(&self, s: &Substitution) -> Option<Self> {
        let vars = self.variables();
        let mut seen = BTreeSet::new();
        for &v in &vars {
            let img = s.get(v);
            if img.degree() != 1 || !seen.insert(img.variables().next()?) {
                return None;
            }
        }
        let num = self.num.map_injective(|m| s.apply_monomial(m));
        let den = self.den.iter().map(|m| s.apply_monomial(m)).collect();
        Some(RationalFunction::from_parts_unchecked(num, den))
    }

    /// Sets every variable outside `keep` (and other than `q`) to `q`.
    pub fn specialize_q(&self, keep: &BTreeSet<Variable>) -> Self {
        let s: Substitution = self
            .variables()
            .into_iter()
            .filter(|v| !v.is_q() && !keep.contains(v))
            .map(|v| (v, Monomial::var(Variable::Q)))
            .collect();
        self.substitute(&s)
            .expect("q-specialization keeps every factor non-constant")
    }

    /// Taylor expansion at the origin truncated to total degree `<= bound`.
    pub fn series(&self, bound: u32) -> Polynomial {
        let mut acc = self.num.truncate(bound);
        for m in &self.den {
            let d = m.degree();
            assert!(d >= 1, "series of a constant denominator factor");
            let geometric = Polynomial::from_terms((0..=bound / d).map(|k| (m.powi(k), Int::ONE)));
            acc = acc.mul_truncated(&geometric, bound);
        }
        acc
    }

    /// Whether the two functions agree, decided by cross-multiplication after
    /// dropping the shared denominator factors.
    pub fn rf_eq(&self, other: &Self) -> bool {
        if self == other {
            return true;
        }
        let (a, b) = (multiset(&self.den), multiset(&other.den));
        let mut lhs = self.num.clone();
        let mut rhs = other.num.clone();
        let keys: BTreeSet<&Monomial> = a.keys().chain(b.keys()).copied().collect();
        for m in keys {
            let (ka, kb) = (
                a.get(m).copied().unwrap_or(0),
                b.get(m).copied().unwrap_or(0),
            );
            for _ in ka..kb {
                lhs = lhs.mul_one_minus(m);
            }
            for _ in kb..ka {
                rhs = rhs.mul_one_minus(m);
            }
        }
        lhs == rhs
    }

    /// Numerator after rewriting over the denominator `∏ (1 - m)` for `m` in
    /// `target`, or `None` when `self` times that product is not a polynomial.
    pub fn numerator_over(&self, target: &[Monomial]) -> Option<Polynomial> {
        let mut p = self.num.clone();
        for m in target {
            p = p.mul_one_minus(m);
        }
        for m in &self.den {
            p = p.exact_div_one_minus(m)?;
        }
        Some(p)
    }
}

impl From<Polynomial> for RationalFunction {
    fn from(p: Polynomial) -> Self {
        RationalFunction::from_poly(p)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let simple_num = self.num.len() <= 1;
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        if simple_num {
            write!(f, "{}", self.num)?;
        } else {
            write!(f, "({})", self.num)?;
        }
        f.write_str("/(")?;
        for (k, m) in self.den.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            write!(f, "(1 - {m})")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm(pairs: &[(u32, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(v, e)| (Variable::x(v), e)))
    }

    fn q(e: u32) -> Monomial {
        Monomial::pow(Variable::Q, e)
    }

    fn chain3() -> RationalFunction {
        RationalFunction::new(
            Polynomial::one(),
            vec![
                xm(&[(1, 1)]),
                xm(&[(1, 1), (2, 1)]),
                xm(&[(1, 1), (2, 1), (3, 1)]),
            ],
        )
    }

    fn diamond_closed_form() -> RationalFunction {
        RationalFunction::new(
            Polynomial::one_minus(&xm(&[(1, 2), (2, 1), (3, 1)])),
            vec![
                xm(&[(1, 1)]),
                xm(&[(1, 1), (2, 1)]),
                xm(&[(1, 1), (3, 1)]),
                xm(&[(1, 1), (2, 1), (3, 1)]),
                xm(&[(1, 1), (2, 1), (3, 1), (4, 1)]),
            ],
        )
    }

    fn subst(pairs: &[(u32, &[(u32, u32)])]) -> Substitution {
        pairs
            .iter()
            .map(|&(v, m)| (Variable::x(v), xm(m)))
            .collect()
    }

    #[test]
    fn substitute_chain_terms_of_diamond_example() {
        let f = chain3();
        // chain 1 < 3 < 4 in the diamond: x2 -> x3, x3 -> x2 x4
        let g = f
            .substitute(&subst(&[(2, &[(3, 1)]), (3, &[(2, 1), (4, 1)])]))
            .unwrap();
        let expect = RationalFunction::new(
            Polynomial::one(),
            vec![
                xm(&[(1, 1)]),
                xm(&[(1, 1), (3, 1)]),
                xm(&[(1, 1), (2, 1), (3, 1), (4, 1)]),
            ],
        );
        assert_eq!(g, expect);
        let h = f
            .substitute(&subst(&[
                (1, &[(1, 1), (2, 1)]),
                (2, &[(3, 1)]),
                (3, &[(4, 1)]),
            ]))
            .unwrap();
        let expect_h = RationalFunction::new(
            Polynomial::one(),
            vec![
                xm(&[(1, 1), (2, 1)]),
                xm(&[(1, 1), (2, 1), (3, 1)]),
                xm(&[(1, 1), (2, 1), (3, 1), (4, 1)]),
            ],
        );
        assert_eq!(h, expect_h);
        assert_eq!(f.substitute(&Substitution::identity()).unwrap(), f);

        // (g - x2 h) / (1 - x2) is the diamond closed form
        let combined = g
            .sub(&h.scale(&Int::ONE, &xm(&[(2, 1)])))
            .div_one_minus(&xm(&[(2, 1)]));
        assert!(combined.rf_eq(&diamond_closed_form()));
        assert_eq!(combined, diamond_closed_form());
    }

    #[test]
    fn add_telescopes() {
        let a = RationalFunction::geometric(xm(&[(1, 1)]));
        let b = a.scale(&Int::from(-1), &xm(&[(1, 1)]));
        assert_eq!(a.add(&b), RationalFunction::one());
        assert_eq!(a.add(&RationalFunction::zero()), a);
    }

    #[test]
    fn scale_signs() {
        let f = RationalFunction::geometric(xm(&[(2, 1)]));
        assert_eq!(f.scale(&Int::ONE, &Monomial::one()), f);
        let g = f.scale(&Int::from(-1), &xm(&[(2, 1)]));
        assert_eq!(g.to_string(), "-x2/((1 - x2))");
    }

    #[test]
    fn specialize_and_series() {
        let f = chain3().specialize_q(&BTreeSet::new());
        assert_eq!(f.denominator(), &[q(1), q(2), q(3)]);
        let d = diamond_closed_form().specialize_q(&BTreeSet::new());
        let expect = RationalFunction::new(
            Polynomial::one().add(&Polynomial::monomial(q(2))),
            vec![q(1), q(2), q(3), q(4)],
        );
        assert!(d.rf_eq(&expect));
        let s = d.series(3);
        assert_eq!(
            s,
            Polynomial::from_terms([
                (q(0), Int::ONE),
                (q(1), Int::ONE),
                (q(2), Int::from(3)),
                (q(3), Int::from(4))
            ])
        );
        let keep: BTreeSet<Variable> = chain3().variables().into_iter().collect();
        assert_eq!(chain3().specialize_q(&keep), chain3());
    }

    #[test]
    fn rf_eq_across_forms() {
        let a = RationalFunction::geometric(q(1));
        let b = RationalFunction::from_parts_unchecked(
            Polynomial::one().add(&Polynomial::monomial(q(1))),
            vec![q(2)],
        );
        assert!(a.rf_eq(&b));
        assert!(!a.rf_eq(&RationalFunction::geometric(q(2))));
        // (1+q)/(1-q^2) is already reduced: no single factor divides 1 + q
        let mut c = b.clone();
        c.normalize();
        assert_eq!(c, b);
        assert!(c.rf_eq(&a));
    }

    #[test]
    fn denominator_collapse_is_reported() {
        let f = RationalFunction::geometric(xm(&[(1, 1)]));
        let s = Substitution::single(Variable::x(1), Monomial::one());
        assert_eq!(f.substitute(&s), Err(AlgebraError::DenominatorCollapse));
    }

    #[test]
    fn numerator_over_pochhammer() {
        let d = diamond_closed_form().specialize_q(&BTreeSet::new());
        let target: Vec<Monomial> = (1..=4).map(q).collect();
        let n = d.numerator_over(&target).unwrap();
        assert_eq!(n, Polynomial::one().add(&Polynomial::monomial(q(2))));
        assert!(d.numerator_over(&[q(1)]).is_none());
    }
}
