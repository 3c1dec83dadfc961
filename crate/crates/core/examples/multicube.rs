//! q-generating functions of the multi-cube posets via their recurrence.
//!
//! Usage: cargo run --release --example multicube [max_n]

use std::time::Instant;

use ppgf::algebra::Int;
use ppgf::families::Family;

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(4);
    let t = Instant::now();
    let sys = Family::Multicube
        .recurrence()
        .unwrap()
        .discover()
        .expect("state discovery");
    println!(
        "{} states, discovered in {:.2?}",
        sys.states.len(),
        t.elapsed()
    );
    for (i, s) in sys.states.iter().enumerate() {
        println!("  F{i}: {s}, {} terms", sys.transitions[i].terms.len());
    }
    for n in 1..=max_n {
        let t = Instant::now();
        let f = sys.evaluate_q(n).expect("evaluation");
        let den: Vec<usize> = (1..=4 * n).collect();
        let num = f
            .numerator_over(&den)
            .expect("denominator divides (q;q)_4n");
        let c = |k: usize| num.coeff(k);
        let top = num.degree().unwrap_or(0);
        println!(
            "n = {n}: numerator over (q;q)_{} has degree {top}, middle coefficient {} ({:.2?})",
            4 * n,
            c(top / 2),
            t.elapsed()
        );
        if n == 6 {
            // published values for C_6
            let quoted = [(0, 1), (2, 2), (96, 40660110), (190, 2), (192, 1)];
            for (k, v) in quoted {
                let mark = if c(k) == Int::from(v) {
                    ""
                } else {
                    "  <- differs"
                };
                println!("  q^{k}: {} (quoted {v}){mark}", c(k));
            }
            let palindromic = (0..=top).all(|k| c(k) == c(top - k));
            println!("  palindromic: {palindromic}");
        }
    }
}
