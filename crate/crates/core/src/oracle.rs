//! Exhaustive and randomized generation of floorplans through the decoder.
//!
//! Validity of a code is prefix-closed: a prefix that fails to attach can
//! never be completed, and a staircase with `m` steps needs at least `m - 1`
//! more attachments to close into a rectangle. Enumeration prunes on both.

use std::fmt;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::baxter::baxter_number;
use crate::codec::{finish, CodeString, Triple};
use crate::geometry::FloorplanDrawing;
use crate::staircase::Staircase;

pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("n = {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("n must be at least 1")]
    ZeroBlocks,
}

fn check_range(n: usize, cap: usize) -> Result<(), OracleError> {
    if n == 0 {
        return Err(OracleError::ZeroBlocks);
    }
    if n > cap {
        return Err(OracleError::CapExceeded { n, cap });
    }
    Ok(())
}

const ALL_TRIPLES: [Triple; 8] = [
    Triple::from_bits(0),
    Triple::from_bits(1),
    Triple::from_bits(2),
    Triple::from_bits(3),
    Triple::from_bits(4),
    Triple::from_bits(5),
    Triple::from_bits(6),
    Triple::from_bits(7),
];

struct Node {
    stair: Staircase,
    prev: usize,
    prefix: Vec<Triple>,
}

fn children(node: &Node, remaining_after: usize) -> Vec<Node> {
    ALL_TRIPLES
        .iter()
        .filter_map(|&t| {
            let mut stair = node.stair.clone();
            let prev = stair.attach_in_place(t.rect_type, t.loc, node.prev).ok()?;
            if stair.step_count() - 1 > remaining_after {
                return None;
            }
            let mut prefix = node.prefix.clone();
            prefix.push(t);
            Some(Node {
                stair,
                prev,
                prefix,
            })
        })
        .collect()
}

fn walk(node: Node, total: usize, out: &mut Vec<(CodeString, FloorplanDrawing)>) {
    let depth = node.prefix.len();
    if depth == total {
        let code = CodeString::new(node.prefix);
        if let Ok(f) = finish(&node.stair, &code) {
            out.push((code, f));
        }
        return;
    }
    for child in children(&node, total - depth - 1) {
        walk(child, total, out);
    }
}

/// Every valid code for `n` blocks, in lexicographic order, with its
/// standard-form drawing. Subtrees below each first triple are searched in
/// parallel.
pub fn enumerate_floorplans_capped(
    n: usize,
    cap: usize,
) -> Result<Vec<(CodeString, FloorplanDrawing)>, OracleError> {
    check_range(n, cap)?;
    let root = Node {
        stair: Staircase::single(),
        prev: 0,
        prefix: Vec::new(),
    };
    let total = n - 1;
    if total == 0 {
        let mut out = Vec::new();
        walk(root, 0, &mut out);
        return Ok(out);
    }
    let parts: Vec<Vec<(CodeString, FloorplanDrawing)>> = children(&root, total - 1)
        .into_par_iter()
        .map(|child| {
            let mut out = Vec::new();
            walk(child, total, &mut out);
            out
        })
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

pub fn enumerate_floorplans(n: usize) -> Result<Vec<(CodeString, FloorplanDrawing)>, OracleError> {
    enumerate_floorplans_capped(n, DEFAULT_CAP)
}

/// Number of valid codes for `n` blocks.
pub fn count_valid_codes(n: usize, cap: usize) -> Result<u64, OracleError> {
    Ok(enumerate_floorplans_capped(n, cap)?.len() as u64)
}

/// Random drawing built by `n - 1` random legal attachments, steered so the
/// staircase closes into a rectangle at the end. Deterministic in
/// `(n, seed)`.
pub fn random_floorplan(n: usize, seed: u64) -> FloorplanDrawing {
    random_code(n, seed).1
}

/// Like [`random_floorplan`], also returning the code.
pub fn random_code(n: usize, seed: u64) -> (CodeString, FloorplanDrawing) {
    let n = n.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    'attempt: loop {
        let mut stair = Staircase::single();
        let mut prev = 0;
        let mut triples = Vec::with_capacity(n - 1);
        for i in 1..n {
            let remaining_after = n - 1 - i;
            let mut options = ALL_TRIPLES;
            options.shuffle(&mut rng);
            let mut placed = false;
            for t in options {
                // Every attachment changes the step count by at most one.
                let m = stair.step_count() as isize - t.rect_type.step_delta();
                if m - 1 > remaining_after as isize {
                    continue;
                }
                if let Ok(id) = stair.attach_in_place(t.rect_type, t.loc, prev) {
                    prev = id;
                    triples.push(t);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'attempt;
            }
        }
        let code = CodeString::new(triples);
        if let Ok(f) = finish(&stair, &code) {
            return (code, f);
        }
    }
}

/// Counts for one `n`, compared against the Baxter number.
#[derive(Debug, Clone, PartialEq)]
pub struct EnumerationReport {
    pub n: usize,
    /// Size of the flat code space, `8^(n-1)`.
    pub total: BigUint,
    pub valid: u64,
    pub expected: BigUint,
    pub seconds: f64,
    pub pass: bool,
}

impl EnumerationReport {
    pub const CSV_HEADER: &'static str = "n,total,valid,expected,seconds,pass";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{:.3},{}",
            self.n, self.total, self.valid, self.expected, self.seconds, self.pass
        )
    }
}

impl fmt::Display for EnumerationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} total={} valid={} expected={} seconds={:.3} {}",
            self.n,
            self.total,
            self.valid,
            self.expected,
            self.seconds,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

pub fn enumeration_report(n: usize, cap: usize) -> Result<EnumerationReport, OracleError> {
    check_range(n, cap)?;
    let start = Instant::now();
    let valid = count_valid_codes(n, cap)?;
    let seconds = start.elapsed().as_secs_f64();
    let expected = baxter_number(n as u32);
    Ok(EnumerationReport {
        n,
        total: BigUint::from(8u32).pow((n - 1) as u32),
        valid,
        pass: BigUint::from(valid) == expected,
        expected,
        seconds,
    })
}

/// Code length against the information-theoretic minimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntropyReport {
    pub n: usize,
    pub classes: BigUint,
    pub bits_used: u64,
    /// `ceil(log2 B(n))`.
    pub bits_needed: u64,
    pub slack: u64,
}

impl fmt::Display for EntropyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} classes={} bits_used={} bits_needed={} slack={}",
            self.n, self.classes, self.bits_used, self.bits_needed, self.slack
        )
    }
}

/// Exact `ceil(log2 x)` for `x >= 1`.
pub fn ceil_log2(x: &BigUint) -> u64 {
    if x <= &BigUint::one() {
        return 0;
    }
    (x - BigUint::one()).bits()
}

pub fn entropy_report(n: usize) -> EntropyReport {
    let n = n.max(1);
    let classes = baxter_number(n as u32);
    let bits_used = 3 * (n as u64 - 1);
    let bits_needed = ceil_log2(&classes);
    EntropyReport {
        n,
        classes,
        bits_used,
        bits_needed,
        slack: bits_used - bits_needed,
    }
}

/// `log2 B(n)` as a float, for display.
pub fn log2_classes(n: usize) -> f64 {
    let b = baxter_number(n.max(1) as u32);
    if b.is_zero() {
        return 0.0;
    }
    let bits = b.bits();
    let shift = bits.saturating_sub(53);
    let top = (&b >> shift).to_f64().unwrap_or(f64::MAX);
    top.log2() + shift as f64
}
