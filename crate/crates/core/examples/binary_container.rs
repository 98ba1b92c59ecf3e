//! Pack a long random code into the binary container and read it back.
use mosaic::codec::{decode, pack, unpack};
use mosaic::oracle::random_code;

fn main() {
    let (code, f) = random_code(1000, 5);
    let bytes = pack(&code);
    println!("{} blocks, {} bits, {} bytes packed", f.len(), code.bit_len(), bytes.len());
    let back = unpack(&bytes).unwrap();
    assert_eq!(back, code);
    assert_eq!(decode(&back).unwrap(), f);
    println!("round trip ok");
}
