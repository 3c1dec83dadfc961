use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// An indeterminate: either `x_a` for a poset element `a`, or the reserved
/// counting variable `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Variable(u32);

impl Variable {
    /// The distinguished variable `q`. It sorts after every element variable.
    pub const Q: Variable = Variable(u32::MAX);

    /// Variable `x_id`. Panics if `id` collides with the reserved `q` slot.
    pub fn x(id: u32) -> Variable {
        assert!(
            id != u32::MAX,
            "element id {id} collides with reserved variable q"
        );
        Variable(id)
    }

    pub fn is_q(self) -> bool {
        self == Variable::Q
    }

    /// Element id for an `x` variable, `None` for `q`.
    pub fn element(self) -> Option<u32> {
        (!self.is_q()).then_some(self.0)
    }

    pub fn name(self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Variable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_q() {
            f.write_str("q")
        } else {
            write!(f, "x{}", self.0)
        }
    }
}

impl std::str::FromStr for Variable {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "q" {
            return Ok(Variable::Q);
        }
        s.strip_prefix('x')
            .and_then(|d| d.parse::<u32>().ok())
            .filter(|&id| id != u32::MAX)
            .map(Variable)
            .ok_or_else(|| format!("bad variable name `{s}`"))
    }
}

type Exps = SmallVec<[(Variable, u32); 4]>;

/// A power product with non-negative exponents. The empty product is `1`.
///
/// Exponents are kept sorted by variable with no zero entries, so structural
/// equality is mathematical equality. The total degree is cached.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    degree: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one() -> Monomial {
        Monomial::default()
    }

    pub fn var(v: Variable) -> Monomial {
        Monomial::pow(v, 1)
    }

    pub fn pow(v: Variable, e: u32) -> Monomial {
        if e == 0 {
            return Monomial::one();
        }
        let mut exps = Exps::new();
        exps.push((v, e));
        Monomial { degree: e, exps }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeats and dropping zero exponents.
    pub fn from_pairs<I: IntoIterator<Item = (Variable, u32)>>(pairs: I) -> Monomial {
        let mut exps: Exps = pairs.into_iter().filter(|&(_, e)| e > 0).collect();
        exps.sort_unstable_by_key(|&(v, _)| v);
        let mut merged = Exps::with_capacity(exps.len());
        for (v, e) in exps {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        let degree = merged.iter().map(|&(_, e)| e).sum();
        Monomial {
            degree,
            exps: merged,
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn exponent(&self, v: Variable) -> u32 {
        self.exps
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.exps[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Variable, u32)> + '_ {
        self.exps.iter().copied()
    }

    pub fn variables(&self) -> impl Iterator<Item = Variable> + '_ {
        self.exps.iter().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let (a, b) = (&self.exps, &other.exps);
        let mut exps = Exps::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    exps.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    exps.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    exps.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        exps.extend_from_slice(&a[i..]);
        exps.extend_from_slice(&b[j..]);
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    pub fn powi(&self, k: u32) -> Monomial {
        if k == 0 {
            return Monomial::one();
        }
        Monomial {
            degree: self.degree * k,
            exps: self.exps.iter().map(|&(v, e)| (v, e * k)).collect(),
        }
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.is_one() {
            return Some(self.clone());
        }
        if other.degree > self.degree {
            return None;
        }
        let mut exps = Exps::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            if j < other.exps.len() && other.exps[j].0 < v {
                return None;
            }
            if j < other.exps.len() && other.exps[j].0 == v {
                let d = other.exps[j].1;
                j += 1;
                match e.cmp(&d) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => exps.push((v, e - d)),
                }
            } else {
                exps.push((v, e));
            }
        }
        if j < other.exps.len() {
            return None;
        }
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        other.div(self).is_some()
    }

    /// Replaces each variable through `f`, which must itself return a monomial.
    pub fn map_vars<F: FnMut(Variable) -> Monomial>(&self, mut f: F) -> Monomial {
        let mut out = Monomial::one();
        for &(v, e) in &self.exps {
            out = out.mul(&f(v).powi(e));
        }
        out
    }

    /// Degree obtained after substituting `x -> q^{weight(x)}` for every variable.
    pub fn weighted_degree<F: Fn(Variable) -> u32>(&self, weight: F) -> u32 {
        self.exps.iter().map(|&(v, e)| weight(v) * e).sum()
    }
}

/// Graded lexicographic order: total degree first, then the exponent of the
/// smallest variable, and so on.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (a, b) = (&self.exps, &other.exps);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            let (va, ea) = a[i];
            let (vb, eb) = b[j];
            match va.cmp(&vb) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => match ea.cmp(&eb) {
                    Ordering::Equal => {
                        i += 1;
                        j += 1;
                    }
                    ord => return ord,
                },
            }
        }
        (a.len() - i).cmp(&(b.len() - j))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.exps.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}
