//! Encode a hand-written floorplan, decode it back and compare.
use mosaic::codec::{decode, encode};
use mosaic::fp;

const INPUT: &str = "\
# a 5 x 3 mosaic with uneven widths
0 0 3 1
3 0 5 2
0 1 2 3
2 1 3 3
3 2 5 3
";

fn main() {
    let f = fp::parse(INPUT).expect("valid floorplan");
    let code = encode(&f).expect("encodable");
    println!("{} blocks -> {} bits: {}", f.len(), code.bit_len(), code.to_grouped_ascii());

    let g = decode(&code).expect("valid code");
    println!("decoded standard form:\n{}", fp::write(&g));
    assert_eq!(encode(&g).unwrap(), code);
}
