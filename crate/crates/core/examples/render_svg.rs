//! Draw a random floorplan as SVG on stdout.
use mosaic::oracle::random_floorplan;
use mosaic::render::render_svg;

fn main() {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(12);
    let f = random_floorplan(n, 2024);
    print!("{}", render_svg(&f, 24));
}
