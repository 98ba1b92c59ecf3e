//! Count valid codes for small n against the Baxter numbers, then compare
//! the code length with the entropy bound.
use mosaic::oracle::{enumeration_report, entropy_report, log2_classes, EnumerationReport};

fn main() {
    let max = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    println!("{}", EnumerationReport::CSV_HEADER);
    for n in 1..=max {
        println!("{}", enumeration_report(n, max).unwrap().csv_row());
    }
    for n in [7, 20, 100] {
        let r = entropy_report(n);
        println!("{r} log2={:.2}", log2_classes(n));
    }
}
