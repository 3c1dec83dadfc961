//! Substituted recurrences for `X_n = A ⊕_{R1} P_R^n ⊕_{R2} B`.
//!
//! Eliminating the prefix (the seed `A`, or a frontier chain `C`) together
//! with the first copy of `P` leaves a chain `C'` hanging below the second
//! copy. Each such chain, with its cover pairs into `P`, is a
//! [`FrontierState`]; the sequences `f(C ⊕ P_R^m ⊕ B)` for the finitely many
//! states satisfy a linear system whose coefficients are rational functions
//! and whose arguments are monomial substitutions.
//!
//! Variables follow one layout throughout. For a prefix of size `a` and a
//! block of size `p`, prefix element `i` (bottom-up, or by rank for a seed)
//! carries `x_i`, copy `j` element of rank `r` carries `x_{a+(j-1)p+r}`, and
//! tail element of rank `r` carries `x_{a+mp+r}` after `m` copies.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{
    monomial_to_json, Int, Monomial, RationalFunction, RationalJson, Substitution, URat, Variable,
};
use crate::engine::{Engine, Strategy};
use crate::poset::{AntiChain, ElementId, Poset, PosetError, Relation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecurrenceError {
    #[error("frontier chain of length {chain} is not shorter than the block ({block} elements)")]
    StateBoundExceeded { chain: usize, block: usize },
    #[error("at least one copy of the block is required")]
    ZeroCopies,
    #[error(transparent)]
    Poset(#[from] PosetError),
}

/// A poset attached below (seed) or above (tail) the copies, with its
/// relation to the adjacent copy.
#[derive(Clone, Debug)]
pub struct Attachment {
    pub poset: Poset,
    pub rel: Relation,
}

/// Everything needed to build `X_m` for any number of copies `m`.
#[derive(Clone, Debug)]
pub struct RecurrenceSpec {
    pub block: Poset,
    pub glue: Relation,
    pub seed: Option<Attachment>,
    pub tail: Option<Attachment>,
}

/// A chain `c_1 < ... < c_k` (bottom-up) and its cover pairs into the block:
/// `(i, e)` means `c_i` is covered by block element `e` of the next copy.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FrontierState {
    pub chain_length: usize,
    pub interface: Vec<(usize, ElementId)>,
}

impl std::fmt::Display for FrontierState {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let pairs: Vec<String> = self
            .interface
            .iter()
            .map(|(i, e)| format!("({i},{e})"))
            .collect();
        write!(f, "chain {} [{}]", self.chain_length, pairs.join(" "))
    }
}

/// One summand `coef(x) · F_dst(argmap(x))`.
#[derive(Clone, Debug)]
pub struct Term {
    pub coef: RationalFunction,
    pub dst: usize,
    pub argmap: Substitution,
}

#[derive(Clone, Debug)]
pub struct Transition {
    pub src: usize,
    pub terms: Vec<Term>,
}

#[derive(Clone, Debug)]
pub struct RecurrenceSystem {
    pub spec: RecurrenceSpec,
    pub states: Vec<FrontierState>,
    pub transitions: Vec<Transition>,
    /// Terms expressing `f(X_m)` through the states at `m - 1` copies.
    pub entry: Vec<Term>,
    /// `f(C ⊕ P ⊕ B)` for each state, one copy.
    pub base: Vec<RationalFunction>,
}

/// A prefix below copy 1, with elements `1..=a` and relation pairs
/// `(prefix element, block element)`.
#[derive(Clone, Debug)]
struct Prefix {
    poset: Poset,
    rel: Vec<(ElementId, ElementId)>,
}

impl Prefix {
    fn empty() -> Prefix {
        Prefix {
            poset: Poset::empty(),
            rel: Vec::new(),
        }
    }

    fn chain(state: &FrontierState) -> Prefix {
        let k = state.chain_length as u32;
        let els: Vec<u32> = (1..=k).collect();
        let cov: Vec<(u32, u32)> = (1..k).map(|i| (i, i + 1)).collect();
        Prefix {
            poset: Poset::from_u32(&els, &cov).expect("a chain is acyclic"),
            rel: state
                .interface
                .iter()
                .map(|&(i, e)| (ElementId(i as u32), e))
                .collect(),
        }
    }

    fn seed(seed: &Option<Attachment>) -> Prefix {
        match seed {
            None => Prefix::empty(),
            Some(att) => {
                let rank: BTreeMap<ElementId, ElementId> = att
                    .poset
                    .elements()
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| (e, ElementId(k as u32 + 1)))
                    .collect();
                Prefix {
                    poset: att.poset.relabel(|e| rank[&e]),
                    rel: att.rel.pairs().map(|(a, b)| (rank[&a], b)).collect(),
                }
            }
        }
    }

    fn len(&self) -> usize {
        self.poset.len()
    }
}

fn var(i: usize) -> Variable {
    Variable::x(i as u32)
}

impl RecurrenceSpec {
    pub fn power(block: Poset, glue: Relation) -> RecurrenceSpec {
        RecurrenceSpec {
            block,
            glue,
            seed: None,
            tail: None,
        }
    }

    fn rank(&self, e: ElementId) -> usize {
        self.block
            .index_of(e)
            .expect("relation pairs lie in the block")
            + 1
    }

    fn tail_len(&self) -> usize {
        self.tail.as_ref().map_or(0, |t| t.poset.len())
    }

    /// Prefix, `copies` copies of the block, and optionally the tail, with
    /// the module's variable layout as element ids.
    fn assemble(&self, prefix: &Prefix, copies: usize, with_tail: bool) -> Poset {
        let a = prefix.len();
        let p = self.block.len();
        let id = |copy: usize, e: ElementId| ElementId((a + (copy - 1) * p + self.rank(e)) as u32);
        let mut elems: Vec<ElementId> = prefix.poset.elements().to_vec();
        let mut rel: Vec<(ElementId, ElementId)> = prefix.poset.covers();
        rel.extend(prefix.rel.iter().map(|&(c, e)| (c, id(1, e))));
        for j in 1..=copies {
            elems.extend(self.block.elements().iter().map(|&e| id(j, e)));
            rel.extend(
                self.block
                    .covers()
                    .into_iter()
                    .map(|(x, y)| (id(j, x), id(j, y))),
            );
            if j < copies {
                rel.extend(self.glue.pairs().map(|(x, y)| (id(j, x), id(j + 1, y))));
            }
        }
        if with_tail {
            if let Some(t) = &self.tail {
                let base = a + copies * p;
                let tid: BTreeMap<ElementId, ElementId> = t
                    .poset
                    .elements()
                    .iter()
                    .enumerate()
                    .map(|(k, &e)| (e, ElementId((base + k + 1) as u32)))
                    .collect();
                elems.extend(tid.values().copied());
                rel.extend(
                    t.poset
                        .covers()
                        .into_iter()
                        .map(|(x, y)| (tid[&x], tid[&y])),
                );
                rel.extend(t.rel.pairs().map(|(x, y)| (id(copies, x), tid[&y])));
            }
        }
        Poset::build(elems, rel).expect("assembled posets are acyclic")
    }

    /// `X_m = A ⊕ P_R^m ⊕ B` in the variable layout.
    pub fn poset(&self, copies: usize) -> Result<Poset, RecurrenceError> {
        if copies == 0 {
            return Err(RecurrenceError::ZeroCopies);
        }
        Ok(self.assemble(&Prefix::seed(&self.seed), copies, true))
    }

    /// `C ⊕_{R'} P_R^m ⊕ B` for a frontier state.
    pub fn state_poset(
        &self,
        state: &FrontierState,
        copies: usize,
    ) -> Result<Poset, RecurrenceError> {
        if copies == 0 {
            return Err(RecurrenceError::ZeroCopies);
        }
        Ok(self.assemble(&Prefix::chain(state), copies, true))
    }

    /// Eliminates the prefix and copy 1 down to frontier chains, keeping copy
    /// 2 as placeholders that only receive substitutions.
    fn eliminate(
        &self,
        prefix: &Prefix,
    ) -> Result<Vec<(RationalFunction, FrontierState, Substitution)>, RecurrenceError> {
        let a = prefix.len();
        let p = self.block.len();
        let first_placeholder = (a + p + 1) as u32;
        let is_placeholder =
            |e: ElementId| (first_placeholder..first_placeholder + p as u32).contains(&e.0);
        let start = self.assemble(prefix, 2, false);
        let sigma0: BTreeMap<ElementId, Monomial> = start
            .elements()
            .iter()
            .map(|&e| (e, Monomial::var(Variable::x(e.0))))
            .collect();

        // branches bucketed by ac, processed from the largest down so that
        // every merge happens before a branch is expanded
        type Bucket = HashMap<(Poset, Vec<(ElementId, Monomial)>), RationalFunction>;
        let mut buckets: BTreeMap<u64, Bucket> = BTreeMap::new();
        let push = |buckets: &mut BTreeMap<u64, Bucket>,
                    s: Poset,
                    sigma: BTreeMap<ElementId, Monomial>,
                    coef: RationalFunction| {
            if coef.is_zero() {
                return;
            }
            let bucket = buckets.entry(s.antichain_count()).or_default();
            let key = (s, sigma.into_iter().collect::<Vec<_>>());
            match bucket.get_mut(&key) {
                Some(c) => *c = c.add(&coef),
                None => {
                    bucket.insert(key, coef);
                }
            }
        };
        push(&mut buckets, start, sigma0, RationalFunction::one());

        let mut terminals: BTreeMap<(FrontierState, Vec<(Variable, Monomial)>), RationalFunction> =
            BTreeMap::new();
        while let Some((_, bucket)) = buckets.pop_last() {
            let mut entries: Vec<_> = bucket.into_iter().collect();
            entries.sort_by(|x, y| (x.0 .0.covers(), &x.0 .1).cmp(&(y.0 .0.covers(), &y.0 .1)));
            for ((s, sigma), coef) in entries {
                if coef.is_zero() {
                    continue;
                }
                let sigma: BTreeMap<ElementId, Monomial> = sigma.into_iter().collect();
                let finite: Vec<ElementId> = s
                    .elements()
                    .iter()
                    .copied()
                    .filter(|&e| !is_placeholder(e))
                    .collect();
                let removable = finite.iter().copied().find(|&e| s.is_removable(e));
                if let Some(b) = removable {
                    let rest = s.delete(b)?;
                    let sb = sigma[&b].clone();
                    let mut g_sigma = sigma.clone();
                    g_sigma.remove(&b);
                    let mut h_sigma = g_sigma.clone();
                    let one_minus = RationalFunction::geometric(sb.clone());
                    if let Some(c) = s.upper_covers(b).first() {
                        let v = g_sigma[c].mul(&sb);
                        g_sigma.insert(*c, v);
                    }
                    push(&mut buckets, rest.clone(), g_sigma, coef.mul(&one_minus));
                    if let Some(lower) = s.lower_covers(b).first() {
                        let v = h_sigma[lower].mul(&sb);
                        h_sigma.insert(*lower, v);
                        push(
                            &mut buckets,
                            rest,
                            h_sigma,
                            coef.mul(&one_minus).scale(&Int::from(-1), &sb),
                        );
                    }
                    continue;
                }
                let sub = s.induced(|e| !is_placeholder(e));
                if let Some(pair) = sub.first_two_antichain() {
                    let anti = AntiChain::new(&s, pair.members().iter().copied())?;
                    let members = anti.members().to_vec();
                    for mask in 1u32..(1 << members.len()) {
                        let m: Vec<ElementId> = (0..members.len())
                            .filter(|&i| mask >> i & 1 == 1)
                            .map(|i| members[i])
                            .collect();
                        let ple = s.ple(&m, &anti)?;
                        let mut sg = sigma.clone();
                        let mut glued = Monomial::one();
                        for e in &m {
                            glued = glued.mul(&sg.remove(e).unwrap());
                        }
                        sg.insert(ple.glued, glued);
                        let sign = if m.len() % 2 == 1 {
                            Int::ONE
                        } else {
                            Int::from(-1)
                        };
                        push(
                            &mut buckets,
                            ple.poset,
                            sg,
                            coef.scale(&sign, &Monomial::one()),
                        );
                    }
                    continue;
                }
                // the finite part is a chain with no removable element
                let chain = sub.linear_extension();
                let k = chain.len();
                if k >= p {
                    return Err(RecurrenceError::StateBoundExceeded { chain: k, block: p });
                }
                let mut interface = Vec::new();
                for (i, &c) in chain.iter().enumerate() {
                    for u in s.upper_covers(c) {
                        if is_placeholder(u) {
                            let rank = (u.0 - first_placeholder) as usize;
                            interface.push((i + 1, self.block.elements()[rank]));
                        }
                    }
                }
                interface.sort_unstable();
                let mut args: Vec<(Variable, Monomial)> = Vec::new();
                for (i, c) in chain.iter().enumerate() {
                    args.push((var(i + 1), sigma[c].clone()));
                }
                for r in 1..=p {
                    args.push((
                        var(k + r),
                        sigma[&ElementId(first_placeholder + r as u32 - 1)].clone(),
                    ));
                }
                let key = (
                    FrontierState {
                        chain_length: k,
                        interface,
                    },
                    args,
                );
                match terminals.get_mut(&key) {
                    Some(c) => *c = c.add(&coef),
                    None => {
                        terminals.insert(key, coef);
                    }
                }
            }
        }
        Ok(terminals
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((state, args), coef)| (coef, state, args.into_iter().collect()))
            .collect())
    }

    /// Builds the full system by closing the state set under elimination.
    pub fn discover(&self) -> Result<RecurrenceSystem, RecurrenceError> {
        let mut states: Vec<FrontierState> = Vec::new();
        let mut index: HashMap<FrontierState, usize> = HashMap::new();
        let mut queue: VecDeque<usize> = VecDeque::new();
        let mut intern = |s: FrontierState,
                          states: &mut Vec<FrontierState>,
                          queue: &mut VecDeque<usize>|
         -> usize {
            *index.entry(s.clone()).or_insert_with(|| {
                states.push(s);
                queue.push_back(states.len() - 1);
                states.len() - 1
            })
        };
        let mut entry = Vec::new();
        for (coef, s, argmap) in self.eliminate(&Prefix::seed(&self.seed))? {
            let dst = intern(s, &mut states, &mut queue);
            entry.push(Term { coef, dst, argmap });
        }
        let mut transitions: Vec<Option<Transition>> = Vec::new();
        while let Some(src) = queue.pop_front() {
            let mut terms = Vec::new();
            for (coef, s, argmap) in self.eliminate(&Prefix::chain(&states[src].clone()))? {
                let dst = intern(s, &mut states, &mut queue);
                terms.push(Term { coef, dst, argmap });
            }
            if transitions.len() <= src {
                transitions.resize(src + 1, None);
            }
            transitions[src] = Some(Transition { src, terms });
        }
        let mut engine = Engine::new(Strategy::Default);
        let base = states
            .iter()
            .map(|s| engine.gfun(&self.assemble(&Prefix::chain(s), 1, true)))
            .collect();
        Ok(RecurrenceSystem {
            spec: self.clone(),
            states,
            transitions: transitions
                .into_iter()
                .map(|t| t.expect("every state is expanded"))
                .collect(),
            entry,
            base,
        })
    }
}

impl RecurrenceSystem {
    fn window(&self, prefix_len: usize) -> usize {
        prefix_len + self.spec.block.len()
    }

    fn seed_len(&self) -> usize {
        self.spec.seed.as_ref().map_or(0, |s| s.poset.len())
    }

    /// Maps the variables of a target state at `level` copies into the
    /// source layout, where the source prefix has `a` elements.
    fn link(&self, a: usize, dst: usize, level: usize, argmap: &Substitution) -> Substitution {
        let p = self.spec.block.len();
        let k = self.states[dst].chain_length;
        let total = k + level * p + self.spec.tail_len();
        let shift = a + p - k;
        let mut s = Substitution::identity();
        for v in 1..=total {
            let image = if v <= k + p {
                argmap.get(var(v))
            } else {
                Monomial::var(var(v + shift))
            };
            s.set(var(v), image);
        }
        // the argmap's own defaults for copy-1 variables are the next copy
        for r in 1..=p {
            if argmap.get(var(k + r)) == Monomial::var(var(k + r)) {
                s.set(var(k + r), Monomial::var(var(a + p + r)));
            }
        }
        s
    }

    /// Multivariate `f(C ⊕ P_R^level ⊕ B)` for one state.
    pub fn evaluate_state(
        &self,
        state: usize,
        level: usize,
    ) -> Result<RationalFunction, RecurrenceError> {
        if level == 0 {
            return Err(RecurrenceError::ZeroCopies);
        }
        let mut cur: Vec<RationalFunction> = self.base.clone();
        for l in 2..=level {
            cur = self
                .transitions
                .iter()
                .map(|t| {
                    let a = self.states[t.src].chain_length;
                    self.sum_terms(a, &t.terms, l - 1, &cur)
                })
                .collect();
        }
        Ok(cur[state].clone())
    }

    fn sum_terms(
        &self,
        a: usize,
        terms: &[Term],
        level: usize,
        values: &[RationalFunction],
    ) -> RationalFunction {
        let mut acc = RationalFunction::zero();
        for t in terms {
            let moved = values[t.dst]
                .substitute(&self.link(a, t.dst, level, &t.argmap))
                .expect("argument maps keep denominators non-constant");
            acc = acc.add(&t.coef.mul(&moved));
        }
        acc
    }

    /// Multivariate `f(X_m)`.
    pub fn evaluate(&self, copies: usize) -> Result<RationalFunction, RecurrenceError> {
        match copies {
            0 => Err(RecurrenceError::ZeroCopies),
            1 => Ok(Engine::new(Strategy::Default).gfun(&self.spec.poset(1)?)),
            m => {
                let values: Vec<RationalFunction> = (0..self.states.len())
                    .map(|s| self.evaluate_state(s, m - 1))
                    .collect::<Result<_, _>>()?;
                Ok(self.sum_terms(self.seed_len(), &self.entry, m - 1, &values))
            }
        }
    }

    /// `f(X_m)(q)`, iterating with every variable past the current window
    /// already set to `q`.
    pub fn evaluate_q(&self, copies: usize) -> Result<URat, RecurrenceError> {
        QEval::new(self).top(copies)
    }

    /// Human-readable listing. Arguments are shown with the next copy's
    /// variables set to `q`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let p = self.spec.block.len();
        for (i, s) in self.states.iter().enumerate() {
            let _ = writeln!(out, "F{i}: {s}");
        }
        let show = |out: &mut String, lhs: String, a: usize, terms: &[Term]| {
            let _ = writeln!(out, "{lhs} =");
            for t in terms {
                let k = self.states[t.dst].chain_length;
                let to_q: Substitution = (1..=p)
                    .map(|r| (var(a + p + r), Monomial::var(Variable::Q)))
                    .collect();
                let args: Vec<String> = (1..=k + p)
                    .map(|v| to_q.apply_monomial(&t.argmap.get(var(v))).to_string())
                    .collect();
                let _ = writeln!(
                    out,
                    "    + ({}) * F{}(n-1)({})",
                    t.coef,
                    t.dst,
                    args.join(", ")
                );
            }
        };
        show(&mut out, "X(n)".to_string(), self.seed_len(), &self.entry);
        for t in &self.transitions {
            show(
                &mut out,
                format!("F{}(n)", t.src),
                self.states[t.src].chain_length,
                &t.terms,
            );
        }
        for (i, b) in self.base.iter().enumerate() {
            let _ = writeln!(out, "F{i}(1) = {b}");
        }
        out
    }

    pub fn to_json(&self) -> SystemJson {
        let term = |t: &Term| TermJson {
            coef: t.coef.to_json(),
            dst: format!("F{}", t.dst),
            argmap: t
                .argmap
                .iter()
                .map(|(v, m)| (v.name(), monomial_to_json(m)))
                .collect(),
        };
        SystemJson {
            states: self
                .states
                .iter()
                .enumerate()
                .map(|(i, s)| StateJson {
                    name: format!("F{i}"),
                    chain_length: s.chain_length,
                    interface: s.interface.iter().map(|&(c, e)| (c, e.0)).collect(),
                })
                .collect(),
            entry: self.entry.iter().map(term).collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| TransitionJson {
                    src: format!("F{}", t.src),
                    terms: t.terms.iter().map(term).collect(),
                })
                .collect(),
            base: self
                .base
                .iter()
                .enumerate()
                .map(|(i, b)| (format!("F{i}"), b.to_json()))
                .collect(),
        }
    }

    /// Index of the state with this chain and interface, if discovered.
    pub fn find(&self, s: &FrontierState) -> Option<usize> {
        self.states.iter().position(|t| t == s)
    }
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct StateJson {
    pub name: String,
    pub chain_length: usize,
    pub interface: Vec<(usize, u32)>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TermJson {
    pub coef: RationalJson,
    pub dst: String,
    pub argmap: BTreeMap<String, BTreeMap<String, u32>>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct TransitionJson {
    pub src: String,
    pub terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize, Debug, Clone)]
pub struct SystemJson {
    pub states: Vec<StateJson>,
    pub entry: Vec<TermJson>,
    pub transitions: Vec<TransitionJson>,
    pub base: BTreeMap<String, RationalJson>,
}

/// Top-down `q` evaluation memoized on `(state, level, window weights)`,
/// where the window variable `v` stands for `q^{w_v}`.
struct QEval<'a> {
    sys: &'a RecurrenceSystem,
    engine: Engine,
    memo: HashMap<(usize, usize, Vec<u32>), URat>,
}

impl<'a> QEval<'a> {
    fn new(sys: &'a RecurrenceSystem) -> QEval<'a> {
        QEval {
            sys,
            engine: Engine::new(Strategy::Default),
            memo: HashMap::new(),
        }
    }

    fn top(&mut self, copies: usize) -> Result<URat, RecurrenceError> {
        let sys = self.sys;
        match copies {
            0 => Err(RecurrenceError::ZeroCopies),
            1 => Ok(self.engine.gfun_q(&sys.spec.poset(1)?).into_urat()),
            m => {
                let w = vec![1; sys.window(sys.seed_len())];
                Ok(self.terms(&sys.entry, &w, m - 1))
            }
        }
    }

    fn terms(&mut self, terms: &[Term], w: &[u32], level: usize) -> URat {
        let sys = self.sys;
        let p = sys.spec.block.len();
        let weight = |v: Variable| -> u32 {
            let i = v.element().expect("element variable") as usize;
            if i <= w.len() {
                w[i - 1]
            } else {
                1
            }
        };
        let mut acc = URat::zero();
        for t in terms {
            let k = sys.states[t.dst].chain_length;
            let w2: Vec<u32> = (1..=k + p)
                .map(|v| t.argmap.get(var(v)).weighted_degree(weight))
                .collect();
            let c = URat::from_weighted(&t.coef, weight);
            let f = self.state(t.dst, level, w2);
            acc = acc.add(&c.mul(&f));
        }
        acc
    }

    fn state(&mut self, s: usize, level: usize, w: Vec<u32>) -> URat {
        let key = (s, level, w);
        if let Some(f) = self.memo.get(&key) {
            return f.clone();
        }
        let sys = self.sys;
        let (s, level, w) = &key;
        let f = if *level == 1 {
            let poset = sys.spec.assemble(&Prefix::chain(&sys.states[*s]), 1, true);
            let mut weights = w.clone();
            weights.resize(poset.len(), 1);
            self.engine.gfun_weighted(&poset, &weights)
        } else {
            let terms = sys.transitions[*s].terms.clone();
            self.terms(&terms, w, level - 1)
        };
        self.memo.insert(key, f.clone());
        f
    }
}

trait IntoURat {
    fn into_urat(self) -> URat;
}

impl IntoURat for RationalFunction {
    fn into_urat(self) -> URat {
        URat::from_weighted(&self, |_| 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine;

    fn rf(s: &str) -> RationalFunction {
        RationalFunction::parse(s).unwrap()
    }

    fn zigzag() -> RecurrenceSpec {
        RecurrenceSpec::power(
            Poset::from_u32(&[1, 2], &[(2, 1)]).unwrap(),
            Relation::from_u32(&[(2, 1)]),
        )
    }

    fn three_rowed() -> RecurrenceSpec {
        RecurrenceSpec::power(
            Poset::from_u32(&[1, 2, 3], &[(1, 2), (1, 3)]).unwrap(),
            Relation::from_u32(&[(2, 2), (3, 3)]),
        )
    }

    #[test]
    fn zigzag_system() {
        let sys = zigzag().discover().unwrap();
        assert_eq!(sys.states.len(), 1);
        assert_eq!(
            sys.states[0],
            FrontierState {
                chain_length: 0,
                interface: vec![]
            }
        );
        assert_eq!(sys.transitions[0].terms.len(), 2);
        assert!(sys.base[0].rf_eq(&rf("1/((1 - x2)*(1 - x1*x2))")));
        let coefs: Vec<&RationalFunction> =
            sys.transitions[0].terms.iter().map(|t| &t.coef).collect();
        let a = rf("1/((1 - x1)*(1 - x2))");
        let b = rf("-x1/((1 - x1)*(1 - x1*x2))");
        assert!(coefs.iter().any(|c| c.rf_eq(&a)) && coefs.iter().any(|c| c.rf_eq(&b)));
        for m in 1..=3 {
            let direct = engine::gfun(&zigzag().poset(m).unwrap());
            assert!(sys.evaluate(m).unwrap().rf_eq(&direct), "m = {m}");
            assert!(sys
                .evaluate_q(m)
                .unwrap()
                .to_rational()
                .rf_eq(&engine::gfun_q(&zigzag().poset(m).unwrap())));
        }
    }

    #[test]
    fn three_rowed_system() {
        let sys = three_rowed().discover().unwrap();
        let q = FrontierState {
            chain_length: 1,
            interface: vec![(1, ElementId(2)), (1, ElementId(3))],
        };
        let qi = sys.find(&q).expect("Q state");
        assert_eq!(sys.transitions[qi].terms.len(), 4);
        assert_eq!(sys.entry.len(), 4);
        let fq1 = rf("(1 - x1^2*x2^2*x3*x4)/((1 - x1)*(1 - x2)*(1 - x1*x2*x3)*(1 - x1*x2*x4)*(1 - x1*x2*x3*x4))");
        assert!(sys.evaluate_state(qi, 1).unwrap().rf_eq(&fq1));
        for m in 1..=3 {
            let direct = engine::gfun_q(&three_rowed().poset(m).unwrap());
            assert!(
                sys.evaluate_q(m).unwrap().to_rational().rf_eq(&direct),
                "m = {m}"
            );
        }
        assert!(sys
            .evaluate(2)
            .unwrap()
            .rf_eq(&engine::gfun(&three_rowed().poset(2).unwrap())));
    }

    #[test]
    fn seed_and_tail() {
        // 1 below an antichain {1, 2} repeated with full glue, then a top
        let anti = Poset::from_u32(&[1, 2], &[]).unwrap();
        let one = Poset::from_u32(&[1], &[]).unwrap();
        let spec = RecurrenceSpec {
            block: anti.clone(),
            glue: Relation::full(&anti, &anti),
            seed: Some(Attachment {
                poset: one.clone(),
                rel: Relation::full(&one, &anti),
            }),
            tail: Some(Attachment {
                poset: one.clone(),
                rel: Relation::full(&anti, &one),
            }),
        };
        let sys = spec.discover().unwrap();
        assert_eq!(sys.states.len(), 1);
        assert_eq!(sys.transitions[0].terms.len(), 1);
        let t = &sys.transitions[0].terms[0];
        assert!(t
            .coef
            .rf_eq(&rf("(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3))")));
        assert_eq!(t.argmap.get(Variable::x(1)).to_string(), "x1*x2*x3");
        assert_eq!(
            spec.poset(1).unwrap().covers(),
            Poset::from_u32(&[1, 2, 3, 4], &[(1, 2), (1, 3), (2, 4), (3, 4)])
                .unwrap()
                .covers()
        );
        for m in 1..=3 {
            let direct = engine::gfun(&spec.poset(m).unwrap());
            assert!(sys.evaluate(m).unwrap().rf_eq(&direct), "m = {m}");
        }
    }
}
