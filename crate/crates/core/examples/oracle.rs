//! Listing P-partitions directly and using them to catch a wrong formula.

use ppgf::algebra::RationalFunction;
use ppgf::oracle;
use ppgf::poset::Poset;

fn main() {
    let v = Poset::from_u32(&[1, 2, 3], &[(1, 2), (1, 3)]).unwrap();
    for s in oracle::enumerate(&v, 1) {
        println!("{:?} -> {}", s.0.values().collect::<Vec<_>>(), s.monomial());
    }
    let counts: Vec<String> = oracle::q_counts(&v, 10)
        .iter()
        .map(|c| c.to_string())
        .collect();
    println!("partitions by total: {}", counts.join(" "));

    let right = RationalFunction::parse(
        "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3))",
    )
    .unwrap();
    let wrong = RationalFunction::parse("1/((1 - x1)*(1 - x1*x2)*(1 - x1*x2*x3))").unwrap();
    println!("right: {}", oracle::verify(&v, &right, 8));
    println!("wrong: {}", oracle::verify(&v, &wrong, 8));
}
