//! Reading a poset file, building an R-plus power from it, and writing it
//! back out.

use ppgf::poset::{parse_poset_file, render_poset_file, Poset};
use ppgf::recurrence::RecurrenceSpec;

const BLOCK: &str = "\
name: vee
# 1 below 2 and 3
elements: 1 2 3
cover: 1 2
cover: 1 3
rel: 2 2
rel: 3 3
";

fn main() {
    let file = parse_poset_file(BLOCK).unwrap();
    println!(
        "{:?}: {} elements, covers {:?}",
        file.name,
        file.poset.len(),
        file.poset.covers()
    );
    let power = Poset::power(&file.poset, &file.rel, 3).unwrap();
    println!(
        "3 copies: {} elements, {} antichains",
        power.poset.len(),
        power.poset.antichain_count()
    );
    print!("{}", render_poset_file(&power.poset, Some("vee^3"), None));

    let sys = RecurrenceSpec::power(file.poset, file.rel)
        .discover()
        .unwrap();
    println!("recurrence with {} state(s)", sys.states.len());

    match parse_poset_file("elements: 1 2\ncover: 1 2\ncover: 2 1\n") {
        Ok(_) => println!("unexpected"),
        Err(e) => println!("cyclic input rejected: {e}"),
    }
}
