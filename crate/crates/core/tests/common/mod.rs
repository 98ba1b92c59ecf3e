#![allow(dead_code)]

use std::collections::HashSet;

use mosaic::geometry::{canonical_signature, Block, FloorplanDrawing};
use rand::Rng;

/// Every dissection of a `w x h` unit grid into exactly `n` rectangles with
/// integer corners. Four-way junctions are filtered out by construction
/// through `FloorplanDrawing::from_blocks`.
pub fn grid_mosaics(w: i64, h: i64, n: usize) -> Vec<FloorplanDrawing> {
    fn fill(
        w: i64,
        h: i64,
        n: usize,
        grid: &mut Vec<bool>,
        blocks: &mut Vec<Block>,
        out: &mut Vec<FloorplanDrawing>,
    ) {
        let Some(cell) = grid.iter().position(|&c| !c) else {
            if blocks.len() == n {
                if let Ok(f) = FloorplanDrawing::from_blocks(blocks.clone()) {
                    out.push(f);
                }
            }
            return;
        };
        if blocks.len() == n {
            return;
        }
        let (x, y) = ((cell as i64) % w, (cell as i64) / w);
        let mut max_width = 0;
        while x + max_width < w && !grid[(y * w + x + max_width) as usize] {
            max_width += 1;
        }
        for bw in 1..=max_width {
            for bh in 1..=(h - y) {
                let row_free =
                    (x..x + bw).all(|cx| !grid[((y + bh - 1) * w + cx) as usize]);
                if !row_free {
                    break;
                }
                for cy in y..y + bh {
                    for cx in x..x + bw {
                        grid[(cy * w + cx) as usize] = true;
                    }
                }
                blocks.push(Block::new(x, y, x + bw, y + bh));
                fill(w, h, n, grid, blocks, out);
                blocks.pop();
                for cy in y..y + bh {
                    for cx in x..x + bw {
                        grid[(cy * w + cx) as usize] = false;
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    let mut grid = vec![false; (w * h) as usize];
    fill(w, h, n, &mut grid, &mut Vec::new(), &mut out);
    out
}

/// All grid dissections into `n` rectangles on grids with `w + h <= n + 1`.
/// Every mosaic class with `n` blocks has a standard drawing of that size,
/// so this covers every class, most of them many times and mostly outside
/// standard form.
pub fn all_grid_mosaics(n: usize) -> Vec<FloorplanDrawing> {
    let mut out = Vec::new();
    for w in 1..=n as i64 {
        for h in 1..=(n as i64 + 1 - w) {
            out.extend(grid_mosaics(w, h, n));
        }
    }
    out
}

pub fn class_count(drawings: &[FloorplanDrawing]) -> usize {
    drawings
        .iter()
        .map(|f| canonical_signature(f).unwrap())
        .collect::<HashSet<_>>()
        .len()
}

/// Random slicing floorplan with arbitrary coordinates in a large square;
/// cuts landing on an existing coordinate are retried.
pub fn random_slicing<R: Rng>(n: usize, rng: &mut R) -> FloorplanDrawing {
    const SIZE: i64 = 1 << 40;
    loop {
        let mut blocks = vec![Block::new(0, 0, SIZE, SIZE)];
        while blocks.len() < n {
            let i = rng.gen_range(0..blocks.len());
            let b = blocks[i];
            if rng.gen_bool(0.5) && b.width() > 1 {
                let x = rng.gen_range(b.x1 + 1..b.x2);
                blocks[i] = Block::new(b.x1, b.y1, x, b.y2);
                blocks.push(Block::new(x, b.y1, b.x2, b.y2));
            } else if b.height() > 1 {
                let y = rng.gen_range(b.y1 + 1..b.y2);
                blocks[i] = Block::new(b.x1, b.y1, b.x2, y);
                blocks.push(Block::new(b.x1, y, b.x2, b.y2));
            }
        }
        if let Ok(f) = FloorplanDrawing::from_blocks(blocks) {
            return f;
        }
    }
}

/// Stretch every coordinate by a random strictly increasing map. Topology is
/// unchanged.
pub fn stretch<R: Rng>(f: &FloorplanDrawing, rng: &mut R) -> FloorplanDrawing {
    let remap = |values: Vec<i64>, rng: &mut R| {
        let mut sorted = values;
        sorted.sort_unstable();
        sorted.dedup();
        let mut next = 0i64;
        let mut map = std::collections::HashMap::new();
        for (k, v) in sorted.into_iter().enumerate() {
            if k > 0 {
                next += rng.gen_range(1..50);
            }
            map.insert(v, next);
        }
        map
    };
    let xs = remap(f.blocks().iter().flat_map(|b| [b.x1, b.x2]).collect(), rng);
    let ys = remap(f.blocks().iter().flat_map(|b| [b.y1, b.y2]).collect(), rng);
    let blocks = f
        .blocks()
        .iter()
        .map(|b| Block::new(xs[&b.x1], ys[&b.y1], xs[&b.x2], ys[&b.y2]))
        .collect();
    FloorplanDrawing::from_blocks(blocks).unwrap()
}

/// Deletable blocks of a staircase given by its blocks, computed directly:
/// a block is deletable when no other block lies against its top edge or its
/// right edge.
pub fn deletable_from_scratch(blocks: &[Block]) -> Vec<usize> {
    let overlap = |a1: i64, a2: i64, b1: i64, b2: i64| a1.max(b1) < a2.min(b2);
    (0..blocks.len())
        .filter(|&i| {
            let b = blocks[i];
            blocks.iter().all(|o| {
                !(o.y1 == b.y2 && overlap(o.x1, o.x2, b.x1, b.x2))
                    && !(o.x1 == b.x2 && overlap(o.y1, o.y2, b.y1, b.y2))
            })
        })
        .collect()
}

/// True when the blocks share a boundary piece of positive length.
pub fn edge_adjacent(a: &Block, b: &Block) -> bool {
    let overlap = |a1: i64, a2: i64, b1: i64, b2: i64| a1.max(b1) < a2.min(b2);
    ((a.x2 == b.x1 || b.x2 == a.x1) && overlap(a.y1, a.y2, b.y1, b.y2))
        || ((a.y2 == b.y1 || b.y2 == a.y1) && overlap(a.x1, a.x2, b.x1, b.x2))
}
