//! Brute-force P-partition enumeration, used as ground truth for every
//! symbolic computation in the crate.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;

use crate::algebra::{Int, Monomial, Polynomial, RationalFunction, Variable};
use crate::poset::{ElementId, Poset};

/// An order-reversing map `σ: P → ℕ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PPartition(pub BTreeMap<ElementId, u32>);

impl PPartition {
    pub fn value(&self, e: ElementId) -> u32 {
        self.0[&e]
    }

    pub fn sum(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn monomial(&self) -> Monomial {
        Monomial::from_pairs(self.0.iter().map(|(e, &v)| (Variable::x(e.0), v)))
    }

    pub fn is_valid(&self, p: &Poset) -> bool {
        p.relations()
            .iter()
            .all(|(x, y)| self.value(*x) >= self.value(*y))
    }
}

/// Order-reversing assignments in `0..=bound` with total at most `budget`,
/// enumerated over a linear extension.
struct Walk {
    vars: Vec<Variable>,
    elems: Vec<ElementId>,
    /// lower covers of the k-th element, as positions in the extension
    below: Vec<Vec<usize>>,
    bound: u32,
    budget: u32,
}

impl Walk {
    fn new(p: &Poset, bound: u32, budget: u32) -> Walk {
        let elems = p.linear_extension();
        let order: Vec<usize> = elems.iter().map(|&e| p.index_of(e).unwrap()).collect();
        let mut pos = vec![0usize; p.len()];
        for (k, &i) in order.iter().enumerate() {
            pos[i] = k;
        }
        let below = order
            .iter()
            .map(|&i| p.lower_idx(i).iter().map(|&j| pos[j]).collect())
            .collect();
        let vars = elems.iter().map(|e| Variable::x(e.0)).collect();
        Walk {
            vars,
            elems,
            below,
            bound,
            budget,
        }
    }

    /// Values the first element may take; each one roots an independent
    /// subtree, which is how the work is split across threads.
    fn first_values(&self) -> std::ops::RangeInclusive<u32> {
        0..=self.bound.min(self.budget)
    }

    fn run<F: FnMut(&[u32])>(&self, first: u32, visit: &mut F) {
        let mut vals = vec![0u32; self.elems.len()];
        if vals.is_empty() {
            if first == 0 {
                visit(&vals);
            }
            return;
        }
        vals[0] = first;
        self.rec(1, self.budget - first, &mut vals, visit);
    }

    fn rec<F: FnMut(&[u32])>(&self, k: usize, left: u32, vals: &mut [u32], visit: &mut F) {
        if k == vals.len() {
            visit(vals);
            return;
        }
        let cap = self.below[k]
            .iter()
            .map(|&j| vals[j])
            .min()
            .unwrap_or(self.bound)
            .min(left);
        for v in 0..=cap {
            vals[k] = v;
            self.rec(k + 1, left - v, vals, visit);
        }
    }

    fn monomials(&self) -> HashMap<Monomial, i64> {
        self.first_values()
            .into_par_iter()
            .map(|first| {
                let mut acc: HashMap<Monomial, i64> = HashMap::new();
                self.run(first, &mut |vals: &[u32]| {
                    let m =
                        Monomial::from_pairs(self.vars.iter().copied().zip(vals.iter().copied()));
                    *acc.entry(m).or_insert(0) += 1;
                });
                acc
            })
            .reduce(HashMap::new, |mut a, b| {
                for (m, c) in b {
                    *a.entry(m).or_insert(0) += c;
                }
                a
            })
    }
}

/// Every P-partition with all values at most `bound`.
pub fn enumerate(p: &Poset, bound: u32) -> Vec<PPartition> {
    let w = Walk::new(p, bound, u32::MAX);
    let mut out = Vec::new();
    for first in w.first_values() {
        w.run(first, &mut |vals: &[u32]| {
            out.push(PPartition(
                w.elems.iter().copied().zip(vals.iter().copied()).collect(),
            ));
        });
    }
    out
}

/// `f_P` truncated to total degree `bound`, with variable `x_a` for element `a`.
pub fn truncated_gf(p: &Poset, bound: u32) -> Polynomial {
    let acc = Walk::new(p, bound, bound).monomials();
    Polynomial::from_terms(acc.into_iter().map(|(m, c)| (m, Int::from(c))))
}

/// Sum of `∏ x_a^σ(a)` over P-partitions with every value at most `bound`.
pub fn box_gf(p: &Poset, bound: u32) -> Polynomial {
    let acc = Walk::new(p, bound, u32::MAX).monomials();
    Polynomial::from_terms(acc.into_iter().map(|(m, c)| (m, Int::from(c))))
}

/// Number of P-partitions of each total `0..=bound`, i.e. the series of
/// `f_P(q)` up to `q^bound`.
pub fn q_counts(p: &Poset, bound: u32) -> Vec<Int> {
    let w = Walk::new(p, bound, bound);
    let counts = w
        .first_values()
        .into_par_iter()
        .map(|first| {
            let mut c = vec![0u64; bound as usize + 1];
            w.run(first, &mut |vals: &[u32]| {
                c[vals.iter().sum::<u32>() as usize] += 1
            });
            c
        })
        .reduce(
            || vec![0u64; bound as usize + 1],
            |a, b| a.iter().zip(&b).map(|(x, y)| x + y).collect(),
        );
    counts.into_iter().map(|c| Int::from(c as i64)).collect()
}

/// First coefficient on which a candidate series and the oracle disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discrepancy {
    pub monomial: Monomial,
    pub expected: Int,
    pub actual: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub bound: u32,
    pub discrepancy: Option<Discrepancy>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.discrepancy.is_none()
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match &self.discrepancy {
            None => write!(f, "pass (degree <= {})", self.bound),
            Some(d) => write!(
                f,
                "FAIL at {}: oracle coefficient {}, candidate {}",
                d.monomial, d.expected, d.actual
            ),
        }
    }
}

/// Compares two polynomials and reports the smallest monomial (in the
/// canonical term order) on which they differ.
pub fn first_difference(expected: &Polynomial, actual: &Polynomial) -> Option<Discrepancy> {
    let diff = actual.sub(expected);
    diff.terms().first().map(|(m, _)| Discrepancy {
        monomial: m.clone(),
        expected: expected.coefficient(m),
        actual: actual.coefficient(m),
    })
}

/// Checks `f` against the enumeration up to total degree `bound`. A
/// candidate that only uses `q` is compared against the `q`-counts.
pub fn verify(p: &Poset, f: &RationalFunction, bound: u32) -> Report {
    let univariate = f.variables().iter().all(|v| v.is_q());
    let (expected, actual) = if univariate && !p.is_empty() {
        let counts = q_counts(p, bound);
        let exp = Polynomial::from_terms(
            counts
                .into_iter()
                .enumerate()
                .map(|(k, c)| (Monomial::pow(Variable::Q, k as u32), c)),
        );
        (exp, f.series(bound))
    } else {
        (truncated_gf(p, bound), f.series(bound))
    };
    Report {
        bound,
        discrepancy: first_difference(&expected, &actual),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diamond() -> Poset {
        Poset::from_u32(&[1, 2, 3, 4], &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn small_counts() {
        let anti = Poset::from_u32(&[1, 2], &[]).unwrap();
        assert_eq!(enumerate(&anti, 1).len(), 4);
        let chain = Poset::from_u32(&[1, 2], &[(1, 2)]).unwrap();
        let got: Vec<(u32, u32)> = enumerate(&chain, 1)
            .iter()
            .map(|s| (s.value(ElementId(1)), s.value(ElementId(2))))
            .collect();
        assert_eq!(got, vec![(0, 0), (1, 0), (1, 1)]);
        assert_eq!(enumerate(&diamond(), 1).len(), 6);
    }

    #[test]
    fn truncation() {
        let anti = Poset::from_u32(&[1, 2], &[]).unwrap();
        let x = |i| Polynomial::monomial(Monomial::var(Variable::x(i)));
        assert_eq!(
            truncated_gf(&anti, 1),
            Polynomial::one().add(&x(1)).add(&x(2))
        );
        assert!(truncated_gf(&Poset::empty(), 5).is_one());
        let counts: Vec<i64> = q_counts(&diamond(), 3)
            .iter()
            .map(|c| c.to_i64().unwrap())
            .collect();
        assert_eq!(counts, vec![1, 1, 3, 4]);
    }

    #[test]
    fn chains_follow_stars_and_bars() {
        for n in 1..=5u32 {
            let els: Vec<u32> = (1..=n).collect();
            let cov: Vec<(u32, u32)> = (1..n).map(|i| (i, i + 1)).collect();
            let c = Poset::from_u32(&els, &cov).unwrap();
            for b in 0..=4u32 {
                assert_eq!(
                    enumerate(&c, b).len() as u64,
                    binomial((n + b) as u64, n as u64)
                );
            }
        }
    }

    #[test]
    fn enumeration_is_valid_and_distinct() {
        let p = Poset::from_u32(
            &[1, 2, 3, 4, 5],
            &[(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        let all = enumerate(&p, 3);
        let set: std::collections::BTreeSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        assert!(all.iter().all(|s| s.is_valid(&p)));
        assert_eq!(box_gf(&p, 3).coefficient_sum(), Int::from(all.len() as i64));
    }

    #[test]
    fn verify_reports_first_difference() {
        let d = diamond();
        let closed = RationalFunction::parse(
            "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3)*(1 - x1*x2*x3*x4))",
        )
        .unwrap();
        assert!(verify(&d, &closed, 8).passed());
        let chain4 =
            RationalFunction::parse("1/((1 - x1)*(1 - x1*x2)*(1 - x1*x2*x3)*(1 - x1*x2*x3*x4))")
                .unwrap();
        let r = verify(&d, &chain4, 3);
        assert!(!r.passed());
        let disc = r.discrepancy.unwrap();
        assert_ne!(disc.expected, disc.actual);
    }
}
