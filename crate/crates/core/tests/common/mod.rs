#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ppgf::poset::Poset;

/// Random poset on `1..=n`: each pair `i < j` is a cover candidate with
/// probability `density`, so the relation is acyclic by construction.
pub fn random_poset(rng: &mut StdRng, n: u32, density: f64) -> Poset {
    let els: Vec<u32> = (1..=n).collect();
    let mut cov = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            if rng.gen_bool(density) {
                cov.push((i, j));
            }
        }
    }
    // relabel so that larger ids are not always higher in the order
    let mut perm = els.clone();
    for k in (1..perm.len()).rev() {
        perm.swap(k, rng.gen_range(0..=k));
    }
    let cov: Vec<(u32, u32)> = cov
        .iter()
        .map(|&(a, b)| (perm[a as usize - 1], perm[b as usize - 1]))
        .collect();
    Poset::from_u32(&els, &cov).unwrap()
}

/// Fixed corpus of `count` posets with 1 to `max_n` elements.
pub fn corpus(seed: u64, count: usize, max_n: u32) -> Vec<Poset> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_n);
            let d = rng.gen_range(0.15..0.6);
            random_poset(&mut rng, n, d)
        })
        .collect()
}

/// Nonempty antichains by subset enumeration.
pub fn brute_antichains(p: &Poset) -> u64 {
    let els = p.elements();
    let n = els.len();
    (1u32..1 << n)
        .filter(|&mask| {
            let pick: Vec<_> = (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| els[i])
                .collect();
            pick.iter()
                .enumerate()
                .all(|(i, &a)| pick[i + 1..].iter().all(|&b| !p.comparable(a, b)))
        })
        .count() as u64
}

/// `∏_{k<n} (1 - c q^(s + k*step))` as a coefficient vector.
pub fn pochhammer(c: i64, s: usize, step: usize, n: usize) -> Vec<i64> {
    let mut out = vec![1i64];
    for k in 0..n {
        let sh = s + k * step;
        let mut next = vec![0i64; out.len() + sh];
        for (i, &v) in out.iter().enumerate() {
            next[i] += v;
            next[i + sh] -= c * v;
        }
        out = next;
    }
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}

/// `Σ_L q^maj(L)` over linear extensions, labeling elements by their
/// position in one fixed linear extension. Equals `f_P(q) (q;q)_p`.
pub fn maj_numerator(p: &Poset) -> Vec<u64> {
    use std::collections::HashMap;
    let order = p.linear_extension();
    let n = order.len();
    assert!(n <= 64);
    let below: Vec<u64> = order
        .iter()
        .map(|&a| {
            (0..n)
                .filter(|&j| p.lt(order[j], a))
                .fold(0u64, |m, j| m | 1 << j)
        })
        .collect();
    let mut cur: HashMap<(u64, usize), Vec<u64>> = HashMap::new();
    cur.insert((0, usize::MAX), vec![1]);
    for pos in 0..n {
        let mut next: HashMap<(u64, usize), Vec<u64>> = HashMap::new();
        for ((mask, last), poly) in &cur {
            for (i, &need) in below.iter().enumerate() {
                if mask >> i & 1 == 1 || need & mask != need {
                    continue;
                }
                let shift = if *last != usize::MAX && *last > i {
                    pos
                } else {
                    0
                };
                let slot = next.entry((mask | 1 << i, i)).or_default();
                if slot.len() < poly.len() + shift {
                    slot.resize(poly.len() + shift, 0);
                }
                for (d, c) in poly.iter().enumerate() {
                    slot[d + shift] += c;
                }
            }
        }
        cur = next;
    }
    let mut total: Vec<u64> = Vec::new();
    for poly in cur.values() {
        if total.len() < poly.len() {
            total.resize(poly.len(), 0);
        }
        for (d, c) in poly.iter().enumerate() {
            total[d] += c;
        }
    }
    total
}
