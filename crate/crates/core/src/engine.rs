//! Recursive computation of `f_P` by deletion of removable elements and
//! partially linear extensions.
//!
//! Every non-empty poset either has a removable element or an antichain of
//! size two, and both moves strictly lower the number of nonempty
//! antichains, so the recursion bottoms out at the empty poset with `f = 1`.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{Int, Monomial, RationalFunction, Substitution, URat, Variable};
use crate::poset::{AntiChain, ElementId, Poset, PosetError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("element {0} is not removable")]
    NotRemovable(ElementId),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// How the next move is chosen.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Delete the removable element with the smallest id; otherwise glue the
    /// lexicographically first incomparable pair.
    #[default]
    Default,
    /// Largest removable id first; otherwise the lexicographically last pair.
    Reversed,
    /// Glue an incomparable pair whenever one exists, two maximal elements
    /// if possible; delete only once the poset is a chain.
    PleFirst,
}

impl Strategy {
    pub const ALL: [Strategy; 3] = [Strategy::Default, Strategy::Reversed, Strategy::PleFirst];
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Done,
    Delete(ElementId),
    Ple(AntiChain),
}

impl Strategy {
    pub fn choose(self, p: &Poset) -> Step {
        if p.is_empty() {
            return Step::Done;
        }
        let removable = p.removable_elements();
        match self {
            Strategy::Default => match removable.first() {
                Some(&b) => Step::Delete(b),
                None => Step::Ple(
                    p.first_two_antichain()
                        .expect("no removable element implies a 2-antichain"),
                ),
            },
            Strategy::Reversed => match removable.last() {
                Some(&b) => Step::Delete(b),
                None => Step::Ple(
                    p.last_two_antichain()
                        .expect("no removable element implies a 2-antichain"),
                ),
            },
            Strategy::PleFirst => {
                let top = p.maximal();
                if top.len() >= 2 {
                    return Step::Ple(
                        AntiChain::new(p, [top[0], top[1]])
                            .expect("maximal elements are incomparable"),
                    );
                }
                match p.first_two_antichain() {
                    Some(a) => Step::Ple(a),
                    None => Step::Delete(removable[0]),
                }
            }
        }
    }
}

/// Assignment of a variable to each element. The identity binding sends
/// element `a` to `x_a`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VarBinding(BTreeMap<ElementId, Variable>);

impl VarBinding {
    pub fn identity(p: &Poset) -> VarBinding {
        VarBinding(
            p.elements()
                .iter()
                .map(|&e| (e, Variable::x(e.0)))
                .collect(),
        )
    }

    pub fn new(map: BTreeMap<ElementId, Variable>) -> VarBinding {
        VarBinding(map)
    }

    pub fn get(&self, e: ElementId) -> Option<Variable> {
        self.0.get(&e).copied()
    }

    fn substitution(&self) -> Substitution {
        self.0
            .iter()
            .map(|(e, &v)| (Variable::x(e.0), Monomial::var(v)))
            .collect()
    }
}

/// Record of the `ac(P)` checks made along recursion edges.
#[derive(Clone, Debug, Default)]
pub struct MetricLog {
    pub checked: u64,
    pub violations: Vec<(Poset, Poset)>,
}

type Key = (usize, Vec<(u32, u32)>);

fn key(p: &Poset) -> Key {
    (p.len(), p.canonical_covers())
}

/// Renaming between a poset's own element variables and the positional
/// variables `x_0 .. x_{n-1}` the memo table stores.
fn to_positional(p: &Poset) -> Substitution {
    p.elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (Variable::x(e.0), Monomial::var(Variable::x(i as u32))))
        .collect()
}

fn from_positional(p: &Poset) -> Substitution {
    p.elements()
        .iter()
        .enumerate()
        .map(|(i, e)| (Variable::x(i as u32), Monomial::var(Variable::x(e.0))))
        .collect()
}

fn rename(f: &RationalFunction, s: &Substitution) -> RationalFunction {
    f.substitute(s)
        .expect("renaming variables cannot collapse a denominator")
}

/// Memoizing evaluator. The memo is keyed on the cover list after an
/// order-preserving relabeling onto `0..n`, so relabeled copies of one poset
/// share an entry; no isomorphism search is attempted.
#[derive(Default)]
pub struct Engine {
    strategy: Strategy,
    memo: HashMap<Key, RationalFunction>,
    qmemo: HashMap<(Key, Vec<u32>), URat>,
    metric: Option<MetricLog>,
}

impl Engine {
    pub fn new(strategy: Strategy) -> Engine {
        Engine {
            strategy,
            ..Engine::default()
        }
    }

    /// Turns on brute-force `ac(P)` checks on every recursion edge.
    pub fn with_metric_check(mut self) -> Engine {
        self.metric = Some(MetricLog::default());
        self
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn metric(&self) -> Option<&MetricLog> {
        self.metric.as_ref()
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len() + self.qmemo.len()
    }

    fn check_edges(&mut self, parent: &Poset, children: &[&Poset]) {
        if let Some(log) = self.metric.as_mut() {
            let ac = parent.antichain_count();
            for c in children {
                log.checked += 1;
                if c.antichain_count() >= ac {
                    log.violations.push((parent.clone(), (*c).clone()));
                }
            }
        }
    }

    /// `f_P` in the variables `x_a`, `a ∈ P`.
    pub fn gfun(&mut self, p: &Poset) -> RationalFunction {
        let k = key(p);
        if let Some(f) = self.memo.get(&k) {
            return rename(f, &from_positional(p));
        }
        let f = match self.strategy.choose(p) {
            Step::Done => RationalFunction::one(),
            Step::Delete(b) => self
                .apply_deletion(p, b)
                .expect("strategy picks removable elements"),
            Step::Ple(a) => self.apply_ple(p, &a).expect("strategy picks antichains"),
        };
        self.memo.insert(k, rename(&f, &to_positional(p)));
        f
    }

    /// `f_P` with element `a` carried by `bind(a)`.
    pub fn gfun_bound(&mut self, p: &Poset, bind: &VarBinding) -> RationalFunction {
        rename(&self.gfun(p), &bind.substitution())
    }

    /// One deletion step: `(g - h) / (1 - x_b)` from `f_{P \ b}`.
    pub fn apply_deletion(
        &mut self,
        p: &Poset,
        b: ElementId,
    ) -> Result<RationalFunction, EngineError> {
        if !p.is_removable(b) {
            return Err(match p.index_of(b) {
                Some(_) => EngineError::NotRemovable(b),
                None => EngineError::Poset(PosetError::UnknownElement(b)),
            });
        }
        let lower = p.lower_covers(b).first().copied();
        let upper = p.upper_covers(b).first().copied();
        let rest = p.delete(b)?;
        self.check_edges(p, &[&rest]);
        let f = self.gfun(&rest);
        let xb = Monomial::var(Variable::x(b.0));
        let times_b = |e: ElementId| {
            let v = Variable::x(e.0);
            Substitution::single(v, Monomial::var(v).mul(&xb))
        };
        let g = match upper {
            Some(c) => rename(&f, &times_b(c)),
            None => f.clone(),
        };
        let diff = match lower {
            Some(a) => g.sub(&rename(&f, &times_b(a)).scale(&Int::ONE, &xb)),
            None => g,
        };
        Ok(diff.div_one_minus(&xb))
    }

    /// One PLE step: the signed sum of `f_{P(M,A)}` over nonempty `M ⊆ A`,
    /// with the glued variable replaced by `∏_{a∈M} x_a`.
    pub fn apply_ple(&mut self, p: &Poset, a: &AntiChain) -> Result<RationalFunction, EngineError> {
        let a = AntiChain::new(p, a.members().iter().copied())?;
        let members = a.members();
        let mut total = RationalFunction::zero();
        for mask in 1u32..(1 << members.len()) {
            let m: Vec<ElementId> = (0..members.len())
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| members[i])
                .collect();
            let ple = p.ple(&m, &a)?;
            self.check_edges(p, &[&ple.poset]);
            let f = self.gfun(&ple.poset);
            let prod = Monomial::from_pairs(m.iter().map(|e| (Variable::x(e.0), 1)));
            let term = rename(&f, &Substitution::single(Variable::x(ple.glued.0), prod));
            total = if m.len() % 2 == 1 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        }
        Ok(total)
    }

    /// `f_P(q)`.
    pub fn gfun_q(&mut self, p: &Poset) -> RationalFunction {
        self.gfun_weighted(p, &vec![1; p.len()]).to_rational()
    }

    /// `f_P` with `x_a = q^{w_a}`, `w` indexed like `p.elements()`. Runs the
    /// same recursion on exponent vectors instead of multivariate functions.
    pub fn gfun_weighted(&mut self, p: &Poset, w: &[u32]) -> URat {
        assert_eq!(w.len(), p.len());
        let k = (key(p), w.to_vec());
        if let Some(f) = self.qmemo.get(&k) {
            return f.clone();
        }
        let f = match self.strategy.choose(p) {
            Step::Done => URat::one(),
            Step::Delete(b) => {
                let i = p.index_of(b).unwrap();
                let wb = w[i];
                let rest = p.delete(b).unwrap();
                self.check_edges(p, &[&rest]);
                let base: Vec<u32> = (0..p.len()).filter(|&j| j != i).map(|j| w[j]).collect();
                let shifted = |e: Option<&ElementId>| {
                    e.map(|&e| {
                        let mut v = base.clone();
                        v[rest.index_of(e).unwrap()] += wb;
                        v
                    })
                };
                let g = match shifted(p.upper_covers(b).first()) {
                    Some(v) => self.gfun_weighted(&rest, &v),
                    None => self.gfun_weighted(&rest, &base),
                };
                let diff = match shifted(p.lower_covers(b).first()) {
                    Some(v) => g.add(
                        &self
                            .gfun_weighted(&rest, &v)
                            .scale(&Int::from(-1), wb as usize),
                    ),
                    None => g,
                };
                diff.div_one_minus(wb as usize)
            }
            Step::Ple(a) => {
                let members = a.members();
                let mut total = URat::zero();
                for mask in 1u32..(1 << members.len()) {
                    let m: Vec<ElementId> = (0..members.len())
                        .filter(|&i| mask >> i & 1 == 1)
                        .map(|i| members[i])
                        .collect();
                    let ple = p.ple(&m, &a).unwrap();
                    self.check_edges(p, &[&ple.poset]);
                    let glued_w: u32 = m.iter().map(|&e| w[p.index_of(e).unwrap()]).sum();
                    let v: Vec<u32> = ple
                        .poset
                        .elements()
                        .iter()
                        .map(|&e| {
                            if e == ple.glued {
                                glued_w
                            } else {
                                w[p.index_of(e).unwrap()]
                            }
                        })
                        .collect();
                    let term = self.gfun_weighted(&ple.poset, &v);
                    let sign = if m.len() % 2 == 1 {
                        Int::ONE
                    } else {
                        Int::from(-1)
                    };
                    total = total.add(&term.scale(&sign, 0));
                }
                total
            }
        };
        self.qmemo.insert(k, f.clone());
        f
    }
}

/// `f_P` with a fresh default engine.
pub fn gfun(p: &Poset) -> RationalFunction {
    Engine::new(Strategy::Default).gfun(p)
}

/// `f_P(q)` with a fresh default engine.
pub fn gfun_q(p: &Poset) -> RationalFunction {
    Engine::new(Strategy::Default).gfun_q(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use std::collections::BTreeSet;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    fn diamond() -> Poset {
        Poset::from_u32(&[1, 2, 3, 4], &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap()
    }

    fn e(v: u32) -> ElementId {
        ElementId(v)
    }

    const DIAMOND: &str =
        "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3)*(1 - x1*x2*x3*x4))";

    #[test]
    fn small_closed_forms() {
        assert!(gfun(&Poset::empty()).rf_eq(&RationalFunction::one()));
        let chain = Poset::from_u32(&[1, 2, 3], &[(1, 2), (2, 3)]).unwrap();
        assert!(gfun(&chain).rf_eq(&rf("1/((1 - x1)*(1 - x1*x2)*(1 - x1*x2*x3))")));
        let anti = Poset::from_u32(&[1, 2, 3], &[]).unwrap();
        assert!(gfun(&anti).rf_eq(&rf("1/((1 - x1)*(1 - x2)*(1 - x3))")));
        for s in Strategy::ALL {
            assert!(Engine::new(s).gfun(&diamond()).rf_eq(&rf(DIAMOND)), "{s:?}");
        }
    }

    #[test]
    fn deletion_cases() {
        let mut eng = Engine::new(Strategy::Default);
        assert!(eng
            .apply_deletion(&diamond(), e(2))
            .unwrap()
            .rf_eq(&rf(DIAMOND)));
        let single = Poset::from_u32(&[5], &[]).unwrap();
        assert!(eng
            .apply_deletion(&single, e(5))
            .unwrap()
            .rf_eq(&rf("1/(1 - x5)")));
        let two = Poset::from_u32(&[1, 2], &[(1, 2)]).unwrap();
        assert!(eng
            .apply_deletion(&two, e(2))
            .unwrap()
            .rf_eq(&rf("1/((1 - x1)*(1 - x1*x2))")));
        assert_eq!(
            eng.apply_deletion(&diamond(), e(1)),
            Err(EngineError::NotRemovable(e(1)))
        );
    }

    #[test]
    fn ple_cases() {
        let mut eng = Engine::new(Strategy::Default);
        let k22 = Poset::from_u32(&[1, 2, 3, 4], &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
        let a = AntiChain::new(&k22, [e(1), e(2)]).unwrap();
        let via_ple = eng.apply_ple(&k22, &a).unwrap();
        assert!(oracle::verify(&k22, &via_ple, 8).passed());

        let anti = Poset::from_u32(&[1, 2], &[]).unwrap();
        let a = AntiChain::new(&anti, [e(1), e(2)]).unwrap();
        assert!(eng
            .apply_ple(&anti, &a)
            .unwrap()
            .rf_eq(&rf("1/((1 - x1)*(1 - x2))")));

        let wide_diamond = Poset::from_u32(
            &[1, 2, 3, 4, 5],
            &[(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        let a = AntiChain::new(&wide_diamond, [e(2), e(3), e(4)]).unwrap();
        assert!(
            oracle::verify(&wide_diamond, &eng.apply_ple(&wide_diamond, &a).unwrap(), 8).passed()
        );
    }

    #[test]
    fn weighted_matches_specialized() {
        let wide_diamond = Poset::from_u32(
            &[1, 2, 3, 4, 5],
            &[(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
        )
        .unwrap();
        for p in [diamond(), wide_diamond] {
            let multi = gfun(&p).specialize_q(&BTreeSet::new());
            for s in Strategy::ALL {
                assert!(Engine::new(s).gfun_q(&p).rf_eq(&multi));
            }
        }
    }

    #[test]
    fn binding_renames() {
        let chain = Poset::from_u32(&[1, 2], &[(1, 2)]).unwrap();
        let bind = VarBinding::new(
            [(e(1), Variable::x(7)), (e(2), Variable::Q)]
                .into_iter()
                .collect(),
        );
        let f = Engine::new(Strategy::Default).gfun_bound(&chain, &bind);
        assert!(f.rf_eq(&rf("1/((1 - x7)*(1 - x7*q))")));
    }

    #[test]
    fn metric_is_checked() {
        let mut eng = Engine::new(Strategy::PleFirst).with_metric_check();
        eng.gfun(&diamond());
        let log = eng.metric().unwrap();
        assert!(log.checked > 0);
        assert!(log.violations.is_empty());
    }
}
