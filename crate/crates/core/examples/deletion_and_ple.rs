//! The two transformation steps, applied by hand: deleting a removable
//! element and expanding over partially linear extensions.

use ppgf::engine::{Engine, Strategy};
use ppgf::poset::{AntiChain, ElementId, Poset};

fn main() {
    let e = ElementId;
    let mut eng = Engine::new(Strategy::Default);

    let p = Poset::from_u32(
        &[1, 2, 3, 4, 5],
        &[(1, 2), (1, 3), (1, 4), (2, 5), (3, 5), (4, 5)],
    )
    .unwrap();
    println!("P: covers {:?}", p.covers());
    println!("removable: {:?}", p.removable_elements());
    println!("nonempty antichains: {}", p.antichain_count());

    let direct = eng.gfun(&p);
    let by_deletion = eng.apply_deletion(&p, e(4)).unwrap();
    println!("delete 4: {by_deletion}");
    println!("  agrees with f_P: {}", by_deletion.rf_eq(&direct));

    let a = AntiChain::new(&p, [e(2), e(3), e(4)]).unwrap();
    for m in [vec![e(2)], vec![e(2), e(3)], vec![e(2), e(3), e(4)]] {
        let ple = p.ple(&m, &a).unwrap();
        println!(
            "P({:?}, {{2,3,4}}): glued {} covers {:?}, ac = {}",
            m.iter().map(|x| x.0).collect::<Vec<_>>(),
            ple.glued,
            ple.poset.covers(),
            ple.poset.antichain_count()
        );
    }
    let by_ple = eng.apply_ple(&p, &a).unwrap();
    println!(
        "PLE over {{2,3,4}} agrees with f_P: {}",
        by_ple.rf_eq(&direct)
    );

    let q = Poset::from_u32(&[1, 2, 3, 4], &[(1, 3), (1, 4), (2, 3), (2, 4)]).unwrap();
    let a = AntiChain::new(&q, [e(1), e(2)]).unwrap();
    println!("f over {{1,2}} = {}", eng.apply_ple(&q, &a).unwrap());
}
