//! Mosaic floorplans: a `3n - 3` bit codec built on staircase peeling, the
//! bijection with Baxter permutations, and an enumeration oracle.
//!
//! ```
//! use mosaic::codec::{decode_ascii, encode};
//!
//! let f = decode_ascii("000 011 101 000 110 111").unwrap();
//! assert_eq!(f.len(), 7);
//! assert_eq!(encode(&f).unwrap().to_grouped_ascii(), "000 011 101 000 110 111");
//! ```

pub mod baxter;
pub mod cli;
pub mod codec;
pub mod fp;
pub mod geometry;
pub mod oracle;
pub mod render;
pub mod staircase;
