//! Two drawings with different coordinates but the same topology.
use mosaic::codec::{encode, equivalent};
use mosaic::fp;
use mosaic::geometry::{equivalent_by_graphs, is_standard_form, normalize};

fn main() {
    let a = fp::parse("0 0 10 4\n0 4 3 9\n3 4 10 9\n").unwrap();
    let b = fp::parse("0 0 2 1\n0 1 1 2\n1 1 2 2\n").unwrap();
    let c = fp::parse("0 0 1 2\n1 0 2 1\n1 1 2 2\n").unwrap();

    let n = normalize(&a).unwrap();
    println!("standard form of a:\n{}", fp::write(&n));
    assert!(is_standard_form(&n));

    println!("a ~ b: {}", equivalent(&a, &b).unwrap());
    println!("a ~ c: {}", equivalent(&a, &c).unwrap());
    assert_eq!(equivalent_by_graphs(&a, &b).unwrap(), equivalent(&a, &b).unwrap());
    println!("codes: a={} c={}", encode(&a).unwrap(), encode(&c).unwrap());
}
