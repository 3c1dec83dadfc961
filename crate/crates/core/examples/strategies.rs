//! The three decomposition strategies give the same function by different
//! routes. Every step is checked to shrink the number of antichains.

use std::time::Instant;

use ppgf::engine::{Engine, Strategy};
use ppgf::families::Family;

fn main() {
    let p = Family::Multicube.poset(2).unwrap();
    let mut results = Vec::new();
    for s in Strategy::ALL {
        let t = Instant::now();
        let mut eng = Engine::new(s).with_metric_check();
        let f = eng.gfun(&p);
        let log = eng.metric().unwrap();
        println!(
            "{s:?}: {} memo entries, {} steps checked, {} violations, {:.2?}",
            eng.memo_len(),
            log.checked,
            log.violations.len(),
            t.elapsed()
        );
        results.push(f);
    }
    println!(
        "all equal: {}",
        results.windows(2).all(|w| w[0].rf_eq(&w[1]))
    );
}
