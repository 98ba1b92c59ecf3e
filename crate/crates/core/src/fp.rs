//! The `.fp` text format: one block per line as `x1 y1 x2 y2`, `#` starts a
//! comment. The bounding box is `[0, max x2] x [0, max y2]`.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::geometry::{validate_drawing, Block, FloorplanDrawing, GeometryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FpError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("line {line}: duplicate of the block on line {first}")]
    Duplicate { line: usize, first: usize },
    #[error("no blocks")]
    Empty,
    #[error("smallest {axis} coordinate is {min}, expected 0")]
    NonZeroMinimum { axis: char, min: i64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub fn parse(text: &str) -> Result<FloorplanDrawing, FpError> {
    let mut blocks = Vec::new();
    let mut seen: HashMap<Block, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        if fields.len() != 4 {
            return Err(FpError::Malformed {
                line,
                message: format!("expected 4 integers, found {} fields", fields.len()),
            });
        }
        let mut v = [0i64; 4];
        for (slot, f) in v.iter_mut().zip(&fields) {
            *slot = f.parse().map_err(|_| FpError::Malformed {
                line,
                message: format!("{f:?} is not an integer"),
            })?;
        }
        let b = Block::new(v[0], v[1], v[2], v[3]);
        if b.x1 >= b.x2 || b.y1 >= b.y2 {
            return Err(FpError::Malformed {
                line,
                message: format!("block {b} has no area"),
            });
        }
        if let Some(&first) = seen.get(&b) {
            return Err(FpError::Duplicate { line, first });
        }
        seen.insert(b, line);
        blocks.push(b);
    }
    if blocks.is_empty() {
        return Err(FpError::Empty);
    }
    let min_x = blocks.iter().map(|b| b.x1).min().unwrap_or(0);
    let min_y = blocks.iter().map(|b| b.y1).min().unwrap_or(0);
    if min_x != 0 {
        return Err(FpError::NonZeroMinimum { axis: 'x', min: min_x });
    }
    if min_y != 0 {
        return Err(FpError::NonZeroMinimum { axis: 'y', min: min_y });
    }
    let w = blocks.iter().map(|b| b.x2).max().unwrap_or(0);
    let h = blocks.iter().map(|b| b.y2).max().unwrap_or(0);
    Ok(validate_drawing(blocks, w, h)?)
}

pub fn write(f: &FloorplanDrawing) -> String {
    let mut out = format!(
        "# {} blocks, {} x {}\n",
        f.len(),
        f.width(),
        f.height()
    );
    for b in f.blocks() {
        let _ = writeln!(out, "{b}");
    }
    out
}
