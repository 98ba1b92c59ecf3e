//! The `3n - 3` bit code.
//!
//! Encoding peels deletable rectangles off the standard form `r_n, ..., r_2`
//! and records one triple per removed block: its two type bits `t1 t2`, then
//! a location bit that is 1 when the block shares a horizontal edge with the
//! next deletable rectangle `r_{i-1}` and 0 when the edge is vertical. The
//! string lists the triple of `r_2` first, so the decoder reads left to right
//! while growing the staircase from the bottom-left block.
//!
//! Binary container (`.mfc`): ASCII `MFP1`, block count `n` as a
//! little-endian `u32`, then `ceil((3n-3)/8)` payload bytes holding the bits
//! most-significant-bit first. Padding bits are zero.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{normalize, FloorplanDrawing, GeometryError};
use crate::staircase::{RectType, Staircase, StaircaseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub rect_type: RectType,
    /// 1 = shared horizontal edge with the previous block, 0 = vertical.
    pub loc: u8,
}

impl Triple {
    pub const fn new(t1: bool, t2: bool, loc: u8) -> Self {
        Triple {
            rect_type: RectType::new(t1, t2),
            loc,
        }
    }

    /// From a 3-bit value `t1 t2 loc`, most significant bit first.
    pub const fn from_bits(v: u8) -> Self {
        Triple::new(v & 4 != 0, v & 2 != 0, v & 1)
    }

    pub const fn bits(self) -> u8 {
        ((self.rect_type.t1 as u8) << 2) | ((self.rect_type.t2 as u8) << 1) | self.loc
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:03b}", self.bits())
    }
}

/// Code of an `n`-block mosaic floorplan: `n - 1` triples.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CodeString {
    triples: Vec<Triple>,
}

impl CodeString {
    pub fn new(triples: Vec<Triple>) -> Self {
        CodeString { triples }
    }

    pub fn empty() -> Self {
        CodeString::default()
    }

    pub fn triples(&self) -> &[Triple] {
        &self.triples
    }

    /// Number of blocks.
    pub fn block_count(&self) -> usize {
        self.triples.len() + 1
    }

    pub fn bit_len(&self) -> usize {
        3 * self.triples.len()
    }

    pub fn bits(&self) -> impl Iterator<Item = bool> + '_ {
        self.triples
            .iter()
            .flat_map(|t| [t.rect_type.t1, t.rect_type.t2, t.loc == 1])
    }

    /// Parses a string over `{0, 1}`; whitespace is ignored.
    pub fn from_ascii(s: &str) -> Result<Self, CodecError> {
        let mut bits = Vec::with_capacity(s.len());
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(false),
                '1' => bits.push(true),
                c if c.is_whitespace() => {}
                c => return Err(CodecError::BadCharacter { index: i, found: c }),
            }
        }
        Self::from_bit_slice(&bits)
    }

    pub fn from_bit_slice(bits: &[bool]) -> Result<Self, CodecError> {
        if !bits.len().is_multiple_of(3) {
            return Err(CodecError::BadLength(bits.len()));
        }
        Ok(CodeString {
            triples: bits
                .chunks(3)
                .map(|c| Triple::new(c[0], c[1], c[2] as u8))
                .collect(),
        })
    }

    /// Bits as a compact `0`/`1` string.
    pub fn to_ascii(&self) -> String {
        self.bits().map(|b| if b { '1' } else { '0' }).collect()
    }

    /// Bits grouped per triple, e.g. `000 011 101`.
    pub fn to_grouped_ascii(&self) -> String {
        self.triples
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for CodeString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ascii())
    }
}

impl FromStr for CodeString {
    type Err = CodecError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CodeString::from_ascii(s)
    }
}

/// Why a code failed to decode.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvalidReason {
    #[error(transparent)]
    Attachment(#[from] StaircaseError),
    #[error("the blocks do not close up into a rectangle ({steps} steps left)")]
    NotRectangle { steps: usize },
    #[error("the decoded floorplan encodes to a different string")]
    NotCanonical,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("bit count {0} is not a multiple of 3")]
    BadLength(usize),
    #[error("unexpected character {found:?} at index {index}")]
    BadCharacter { index: usize, found: char },
    #[error("invalid code at triple {position}: {reason}")]
    InvalidCode {
        position: usize,
        reason: InvalidReason,
    },
    #[error("bad magic bytes")]
    BadMagic,
    #[error("container truncated: need {needed} bytes, have {available}")]
    TruncatedPayload { needed: usize, available: usize },
    #[error("{0} trailing bytes after payload")]
    TrailingGarbage(usize),
    #[error("block count must be at least 1")]
    ZeroBlocks,
    #[error("padding bits are not zero")]
    NonZeroPadding,
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("encoder invariant violated: {0}")]
    Encoder(StaircaseError),
}

/// Removal sequence of a drawing, with the drawing's standard form.
#[derive(Debug, Clone)]
pub struct EncodeTrace {
    pub standard: FloorplanDrawing,
    pub removals: Vec<crate::staircase::Removal>,
    /// The bottom-left block, `r_1`.
    pub last: usize,
}

impl EncodeTrace {
    /// Blocks in removal order `r_n, ..., r_1`.
    pub fn order(&self) -> Vec<usize> {
        self.removals
            .iter()
            .map(|r| r.block)
            .chain(std::iter::once(self.last))
            .collect()
    }
}

pub fn trace(f: &FloorplanDrawing) -> Result<EncodeTrace, CodecError> {
    let standard = normalize(f)?;
    let stair = Staircase::from_drawing(&standard).map_err(CodecError::Encoder)?;
    let (removals, last) = stair.peel().map_err(CodecError::Encoder)?;
    Ok(EncodeTrace {
        standard,
        removals,
        last,
    })
}

pub fn encode(f: &FloorplanDrawing) -> Result<CodeString, CodecError> {
    let t = trace(f)?;
    code_from_trace(&t)
}

fn code_from_trace(t: &EncodeTrace) -> Result<CodeString, CodecError> {
    let blocks = t.standard.blocks();
    let order = t.order();
    let mut triples = Vec::with_capacity(t.removals.len());
    for (i, r) in t.removals.iter().enumerate() {
        let cur = blocks[r.block];
        let next = blocks[order[i + 1]];
        let loc = if cur.shares_horizontal_edge_above(&next) {
            1
        } else if cur.shares_vertical_edge_right_of(&next) {
            0
        } else {
            return Err(CodecError::Encoder(StaircaseError::InvariantBreach(format!(
                "consecutive deletable rectangles {} and {} are not adjacent",
                r.block,
                order[i + 1]
            ))));
        };
        triples.push(Triple {
            rect_type: r.rect_type,
            loc,
        });
    }
    triples.reverse();
    Ok(CodeString { triples })
}

/// Grows the staircase for `c`, stopping at the first failed attachment.
/// The result need not be a rectangle.
pub fn decode_staircase(c: &CodeString) -> Result<(Staircase, usize), CodecError> {
    let mut s = Staircase::single();
    let mut prev = 0;
    for (position, t) in c.triples.iter().enumerate() {
        prev = s
            .attach_in_place(t.rect_type, t.loc, prev)
            .map_err(|e| CodecError::InvalidCode {
                position,
                reason: e.into(),
            })?;
    }
    Ok((s, prev))
}

/// Finishes a fully grown staircase into the standard-form drawing, checking
/// that the result encodes back to `c`.
pub(crate) fn finish(s: &Staircase, c: &CodeString) -> Result<FloorplanDrawing, CodecError> {
    let end = c.triples.len();
    let drawing = s.to_drawing().ok_or(CodecError::InvalidCode {
        position: end,
        reason: InvalidReason::NotRectangle {
            steps: s.step_count(),
        },
    })?;
    let standard = normalize(&drawing)?;
    let again = encode(&standard)?;
    if &again != c {
        let position = again
            .triples
            .iter()
            .zip(&c.triples)
            .position(|(a, b)| a != b)
            .unwrap_or(end);
        return Err(CodecError::InvalidCode {
            position,
            reason: InvalidReason::NotCanonical,
        });
    }
    Ok(standard)
}

/// Decodes to the standard-form drawing. Block `i` of the result is `r_{i+1}`;
/// block 0 is the bottom-left block.
pub fn decode(c: &CodeString) -> Result<FloorplanDrawing, CodecError> {
    let (s, _) = decode_staircase(c)?;
    finish(&s, c)
}

pub fn decode_ascii(bits: &str) -> Result<FloorplanDrawing, CodecError> {
    decode(&CodeString::from_ascii(bits)?)
}

pub fn is_valid_code(bits: &[bool]) -> bool {
    CodeString::from_bit_slice(bits)
        .and_then(|c| decode(&c))
        .is_ok()
}

/// Mosaic equivalence via canonical codes.
pub fn equivalent(a: &FloorplanDrawing, b: &FloorplanDrawing) -> Result<bool, CodecError> {
    Ok(encode(a)? == encode(b)?)
}

pub const MAGIC: [u8; 4] = *b"MFP1";

pub fn pack(c: &CodeString) -> Vec<u8> {
    let n = c.block_count() as u32;
    let nbytes = c.bit_len().div_ceil(8);
    let mut out = Vec::with_capacity(8 + nbytes);
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&n.to_le_bytes());
    let mut payload = vec![0u8; nbytes];
    for (i, bit) in c.bits().enumerate() {
        if bit {
            payload[i / 8] |= 0x80 >> (i % 8);
        }
    }
    out.extend_from_slice(&payload);
    out
}

pub fn unpack(bytes: &[u8]) -> Result<CodeString, CodecError> {
    if bytes.len() < 4 {
        return Err(CodecError::TruncatedPayload {
            needed: 8,
            available: bytes.len(),
        });
    }
    if bytes[..4] != MAGIC {
        return Err(CodecError::BadMagic);
    }
    if bytes.len() < 8 {
        return Err(CodecError::TruncatedPayload {
            needed: 8,
            available: bytes.len(),
        });
    }
    let n = u32::from_le_bytes(bytes[4..8].try_into().expect("4 bytes")) as usize;
    if n == 0 {
        return Err(CodecError::ZeroBlocks);
    }
    let nbits = 3 * (n - 1);
    let needed = 8 + nbits.div_ceil(8);
    if bytes.len() < needed {
        return Err(CodecError::TruncatedPayload {
            needed,
            available: bytes.len(),
        });
    }
    if bytes.len() > needed {
        return Err(CodecError::TrailingGarbage(bytes.len() - needed));
    }
    let payload = &bytes[8..];
    let bits: Vec<bool> = (0..nbits)
        .map(|i| payload[i / 8] & (0x80 >> (i % 8)) != 0)
        .collect();
    if !nbits.is_multiple_of(8) {
        let mask = 0xffu8 >> (nbits % 8);
        if payload[payload.len() - 1] & mask != 0 {
            return Err(CodecError::NonZeroPadding);
        }
    }
    CodeString::from_bit_slice(&bits)
}
