//! The diamond poset: generating function, q-specialization and a check
//! against brute-force enumeration.

use ppgf::algebra::RationalFunction;
use ppgf::engine::gfun_q;
use ppgf::engine::{Engine, Strategy};
use ppgf::families::diamond;
use ppgf::oracle;

fn main() {
    let d = diamond();
    let f = Engine::new(Strategy::Default).gfun(&d);
    println!("f_D(x) = {f}");

    let closed = RationalFunction::parse(
        "(1 - x1^2*x2*x3)/((1 - x1)*(1 - x1*x2)*(1 - x1*x3)*(1 - x1*x2*x3)*(1 - x1*x2*x3*x4))",
    )
    .unwrap();
    println!("matches the closed form: {}", f.rf_eq(&closed));

    println!("f_D(q) = {}", gfun_q(&d));
    println!("oracle, degree <= 10: {}", oracle::verify(&d, &f, 10));
}
