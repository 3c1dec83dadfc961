//! 3-rowed plane partitions: the recurrence system, its initial condition,
//! and the first few q-series.

use ppgf::families::Family;

fn main() {
    let sys = Family::ThreeRowed.recurrence().unwrap().discover().unwrap();
    print!("{}", sys.render());
    for (i, s) in sys.states.iter().enumerate() {
        println!("F{i}: {s}, {} terms", sys.transitions[i].terms.len());
    }
    for n in 1..=5 {
        let f = sys.evaluate_q(n).unwrap();
        let c: Vec<String> = f.series(10).iter().map(|c| c.to_string()).collect();
        println!("n = {n}: {}", c.join(" "));
    }
}
