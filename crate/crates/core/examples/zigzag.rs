//! Zigzag posets: one-state recurrence, checked against the engine.
//!
//! Usage: cargo run --example zigzag [max_n]

use ppgf::engine::gfun_q;
use ppgf::families::Family;

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(6);
    let sys = Family::Zigzag.recurrence().unwrap().discover().unwrap();
    print!("{}", sys.render());
    for n in 1..=max_n {
        let f = sys.evaluate_q(n).unwrap();
        let direct = gfun_q(&Family::Zigzag.poset(n).unwrap());
        let series: Vec<String> = f.series(8).iter().map(|c| c.to_string()).collect();
        println!(
            "n = {n}: {} ... (engine agrees: {})",
            series.join(", "),
            f.to_rational().rf_eq(&direct)
        );
    }
}
