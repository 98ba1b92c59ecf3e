//! Baxter numbers, Baxter permutations, and the bridge to mosaic floorplans.
//!
//! The bridge labels blocks by the order in which top-left corner blocks are
//! peeled off (mirror the drawing, run the staircase removal) and reads the
//! labels in the order bottom-left corner blocks are peeled off (rotate by
//! 180 degrees, run the removal).
//!
//! For a pair of blocks `a, b`, `a` precedes `b` in the top-left order when
//! `a` is left of or above `b`, and in the bottom-left order when `a` is
//! left of or below `b`. So in the permutation, ascents between positions
//! are left/right pairs and inversions are above/below pairs. The inverse
//! map reads the code directly off the permutation: the location bit of the
//! block at position `i` is the descent bit `pi(i-1) > pi(i)`, its top-left
//! corner is a pass-through horizontal exactly when label `pi(i) - 1` lies
//! left of it, and its bottom-right corner is a pass-through vertical exactly
//! when label `pi(i) + 1` lies below it.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::codec::{decode, encode, trace, CodeString, CodecError, Triple};
use crate::geometry::{mirror_h, rotate180, FloorplanDrawing};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BaxterError {
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
    #[error("permutation {0} is not Baxter")]
    NotBaxter(Permutation),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error("bridge invariant violated: {0}")]
    InvariantBreach(String),
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<u32>);

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self, BaxterError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            let i = (v as usize).wrapping_sub(1);
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(BaxterError::NotAPermutation(n));
            }
        }
        Ok(Permutation(values))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n as u32).collect())
    }

    pub fn values(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `positions()[v - 1]` is the 0-based position of value `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            pos[v as usize - 1] = i;
        }
        pos
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Permutation {
    type Err = BaxterError;

    /// Comma- or whitespace-separated 1-based values, e.g. `3 1 4 2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<u32>().map_err(|e| BaxterError::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        if values.is_empty() {
            return Err(BaxterError::Parse("empty permutation".into()));
        }
        Permutation::new(values)
    }
}

fn binomial(n: u32, k: u32) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `B(n) = [C(n+1,1) C(n+1,2)]^-1 * sum_{r=0}^{n-1} C(n+1,r) C(n+1,r+1) C(n+1,r+2)`.
pub fn baxter_number(n: u32) -> BigUint {
    let (value, rem) = baxter_number_with_remainder(n);
    debug_assert!(rem.is_zero());
    value
}

/// Quotient and remainder of the division in the closed form.
pub fn baxter_number_with_remainder(n: u32) -> (BigUint, BigUint) {
    if n == 0 {
        return (BigUint::zero(), BigUint::zero());
    }
    let m = n + 1;
    let sum: BigUint = (0..n)
        .map(|r| binomial(m, r) * binomial(m, r + 1) * binomial(m, r + 2))
        .sum();
    let denom = binomial(m, 1) * binomial(m, 2);
    (&sum / &denom, &sum % &denom)
}

/// True when `p` avoids the vincular patterns 2-41-3 and 3-14-2, where the
/// middle two entries must be adjacent. O(n^2).
pub fn is_baxter(p: &Permutation) -> bool {
    let v = p.values();
    let n = v.len();
    for j in 0..n.saturating_sub(1) {
        let (a, b) = (v[j], v[j + 1]);
        let (lo, hi) = (a.min(b), a.max(b));
        let inside = |x: u32| lo < x && x < hi;
        let before = v[..j].iter().copied().filter(|&x| inside(x));
        let after = v[j + 2..].iter().copied().filter(|&x| inside(x));
        if a > b {
            // 2-41-3: an earlier value below a later one, both inside (b, a).
            if let (Some(first), Some(last)) = (before.min(), after.max()) {
                if first < last {
                    return false;
                }
            }
        } else if let (Some(first), Some(last)) = (before.max(), after.min()) {
            // 3-14-2: an earlier value above a later one, both inside (a, b).
            if first > last {
                return false;
            }
        }
    }
    true
}

/// Cubic reference check straight from the pattern definitions.
pub fn is_baxter_naive(p: &Permutation) -> bool {
    let v = p.values();
    let n = v.len();
    for j in 0..n.saturating_sub(1) {
        for i in 0..j {
            for k in j + 2..n {
                let (a, b, c, d) = (v[i], v[j], v[j + 1], v[k]);
                if c < a && a < d && d < b {
                    return false;
                }
                if b < d && d < a && a < c {
                    return false;
                }
            }
        }
    }
    true
}

/// Mosaic floorplan to Baxter permutation.
pub fn fp2bp(f: &FloorplanDrawing) -> Result<Permutation, BaxterError> {
    // Removal order of the mirror starts at the top-left block of `f`.
    let top_left = trace(&mirror_h(f))?.order();
    let bottom_left = trace(&rotate180(f))?.order();
    let mut label = vec![0u32; f.len()];
    for (rank, &b) in top_left.iter().enumerate() {
        label[b] = rank as u32 + 1;
    }
    Ok(Permutation(bottom_left.iter().map(|&b| label[b]).collect()))
}

/// The code of the floorplan corresponding to a Baxter permutation, read off
/// the permutation directly.
pub fn permutation_code(p: &Permutation) -> CodeString {
    let v = p.values();
    let n = v.len() as u32;
    let pos = p.positions();
    let at = |label: u32| pos[label as usize - 1];
    let triples = (1..v.len())
        .map(|i| {
            let b = v[i];
            let t1 = b < n && at(b + 1) < at(b);
            let t2 = b > 1 && at(b - 1) < at(b);
            Triple::new(t1, t2, (v[i - 1] > b) as u8)
        })
        .collect();
    CodeString::new(triples)
}

/// Baxter permutation to the standard-form floorplan of its class.
pub fn bp2fp(p: &Permutation) -> Result<FloorplanDrawing, BaxterError> {
    if !is_baxter(p) {
        return Err(BaxterError::NotBaxter(p.clone()));
    }
    let f = decode(&permutation_code(p))?;
    let back = fp2bp(&f)?;
    if &back != p {
        return Err(BaxterError::InvariantBreach(format!(
            "{p} maps to a floorplan that reads back as {back}"
        )));
    }
    Ok(f)
}

pub fn encode_permutation(p: &Permutation) -> Result<CodeString, BaxterError> {
    Ok(encode(&bp2fp(p)?)?)
}

pub fn decode_permutation(c: &CodeString) -> Result<Permutation, BaxterError> {
    fp2bp(&decode(c)?)
}

/// All permutations of `1..=n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = (1..=n as u32).collect();
    loop {
        out.push(Permutation(cur.clone()));
        // Next lexicographic permutation.
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Block;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn first_baxter_numbers() {
        let got: Vec<BigUint> = (1..=7).map(baxter_number).collect();
        let want: Vec<BigUint> = [1u32, 2, 6, 22, 92, 422, 2074]
            .iter()
            .map(|&x| BigUint::from(x))
            .collect();
        assert_eq!(got, want);
        assert_eq!(baxter_number(8), BigUint::from(10754u32));
    }

    #[test]
    fn exact_division() {
        for n in 1..=64 {
            assert!(baxter_number_with_remainder(n).1.is_zero(), "n = {n}");
        }
    }

    #[test]
    fn small_recognition() {
        assert!(is_baxter(&Permutation::identity(9)));
        assert!(all_permutations(3).iter().all(is_baxter));
        let bad: Vec<String> = all_permutations(4)
            .iter()
            .filter(|p| !is_baxter(p))
            .map(|p| p.to_string())
            .collect();
        assert_eq!(bad, vec!["2 4 1 3", "3 1 4 2"]);
    }

    #[test]
    fn fast_check_matches_naive() {
        for n in 1..=7 {
            for p in all_permutations(n) {
                assert_eq!(is_baxter(&p), is_baxter_naive(&p), "{p}");
            }
        }
    }

    #[test]
    fn parse_forms() {
        assert_eq!(perm("3,1, 4 2").values(), &[3, 1, 4, 2]);
        assert!("1 1".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("a".parse::<Permutation>().is_err());
    }

    #[test]
    fn two_block_bridge() {
        let v = FloorplanDrawing::from_blocks(vec![Block::new(0, 0, 1, 1), Block::new(1, 0, 2, 1)])
            .unwrap();
        let h = FloorplanDrawing::from_blocks(vec![Block::new(0, 0, 1, 1), Block::new(0, 1, 1, 2)])
            .unwrap();
        assert_eq!(fp2bp(&v).unwrap(), perm("1 2"));
        assert_eq!(fp2bp(&h).unwrap(), perm("2 1"));
        assert_eq!(fp2bp(&FloorplanDrawing::unit()).unwrap(), perm("1"));
        assert_eq!(bp2fp(&perm("1")).unwrap(), FloorplanDrawing::unit());
        assert_eq!(encode_permutation(&perm("1")).unwrap().bit_len(), 0);
    }

    #[test]
    fn non_baxter_rejected() {
        assert!(matches!(bp2fp(&perm("2 4 1 3")), Err(BaxterError::NotBaxter(_))));
        assert!(matches!(bp2fp(&perm("3 1 4 2")), Err(BaxterError::NotBaxter(_))));
    }

    #[test]
    fn permutation_roundtrip_small() {
        for n in 1..=5 {
            for p in all_permutations(n).into_iter().filter(is_baxter) {
                let c = encode_permutation(&p).unwrap();
                assert_eq!(c.bit_len(), 3 * n - 3);
                assert_eq!(decode_permutation(&c).unwrap(), p);
            }
        }
    }
}
