//! 2-rowed posets with double diagonals: f(q) times (q;q)_2n is the
//! product (1 + q^2)(1 + q^4)...(1 + q^(2n-2)).

use ppgf::algebra::UPoly;
use ppgf::families::Family;

fn main() {
    let fam = Family::TwoRowedDd;
    let sys = fam.recurrence().unwrap().discover().unwrap();
    println!("{} state(s)", sys.states.len());
    for n in 2..=8 {
        let f = sys.evaluate_q(fam.copies(n)).unwrap();
        let den: Vec<usize> = (1..=2 * n).collect();
        let num = f.numerator_over(&den).unwrap();
        let mut want = UPoly::one();
        for k in 1..n {
            want = want.add(&want.scale(&1.into(), 2 * k));
        }
        let shown: Vec<String> = num.coeffs().iter().map(|c| c.to_string()).collect();
        println!(
            "n = {n}: [{}] product form: {}",
            shown.join(" "),
            num == want
        );
    }
}
