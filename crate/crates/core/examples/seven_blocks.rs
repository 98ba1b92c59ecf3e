//! Decode the seven-block example string and replay its removal sequence.
use mosaic::codec::{decode_ascii, trace};
use mosaic::fp;

fn main() {
    let bits = "000 011 101 000 110 111";
    let f = decode_ascii(bits).expect("valid code");
    print!("{}", fp::write(&f));

    let t = trace(&f).unwrap();
    for (k, r) in t.removals.iter().enumerate() {
        println!(
            "step {}: remove block {} type {} ({} -> {} steps)",
            k + 1,
            r.block,
            r.rect_type,
            r.steps_before,
            r.steps_after
        );
    }
    println!("last block: {}", t.last);
}
