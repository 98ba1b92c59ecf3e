//! Floorplan to Baxter permutation and back.
use mosaic::baxter::{baxter_number, bp2fp, fp2bp, is_baxter, Permutation};
use mosaic::codec::decode_ascii;
use mosaic::fp;

fn main() {
    let f = decode_ascii("000011101000110111").unwrap();
    let p = fp2bp(&f).unwrap();
    println!("permutation: {p}  baxter: {}", is_baxter(&p));

    let g = bp2fp(&p).unwrap();
    assert_eq!(g, f);
    print!("{}", fp::write(&g));

    for s in ["2 4 1 3", "2 1 4 3"] {
        let q: Permutation = s.parse().unwrap();
        println!("{q}: baxter = {}", is_baxter(&q));
    }
    for n in [1u32, 5, 10, 30] {
        println!("B({n}) = {}", baxter_number(n));
    }
}
