//! Young diagrams, the sequences `mu_lambda(t)` and the block structure they
//! control.
//!
//! ```
//! use urep::young::{block_of, YoungDiagram};
//!
//! let one: YoungDiagram = "1".parse().unwrap();
//! let block = block_of(&one, 5, 6).unwrap();
//! assert!(block.is_infinite());
//! assert_eq!(block.members[1], "5".parse().unwrap());
//! assert_eq!(block.index_of_query, 0);
//! ```

mod symmetrizer;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use symmetrizer::{
    pt_power_idempotent, young_symmetrizer, GroupAlgebraElement, PT_POWER_CAP, SYMMETRIZER_CAP,
};

/// A weakly decreasing list of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    parts: Vec<usize>,
}

impl YoungDiagram {
    pub fn empty() -> Self {
        YoungDiagram::default()
    }

    /// Trailing zeros are dropped; any increase is an error.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not weakly decreasing")));
        }
        Ok(YoungDiagram { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `lambda_i` for `i >= 1`, zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> YoungDiagram {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|c| self.parts.iter().filter(|&&p| p >= c).count())
            .collect();
        YoungDiagram { parts }
    }

    /// Number of standard tableaux, by the hook length formula.
    pub fn standard_tableaux(&self) -> u64 {
        let conj = self.conjugate();
        let mut hooks: u64 = 1;
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                hooks *= (row - j + conj.parts[j] - i - 1) as u64;
            }
        }
        let n_fact: u64 = (1..=self.size() as u64).product();
        n_fact / hooks
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        YoungDiagram::new(parts)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(y: YoungDiagram) -> Self {
        y.parts
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Comma-separated parts; the empty string, `0` and `()` give the empty diagram.
impl FromStr for YoungDiagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(YoungDiagram::empty());
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|e| Error::InvalidInput(format!("bad part {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        YoungDiagram::new(parts)
    }
}

/// All Young diagrams of size `n`, in reverse lexicographic order.
pub fn partitions(n: usize) -> Vec<YoungDiagram> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
        if rest == 0 {
            out.push(YoungDiagram { parts: cur.clone() });
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            go(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// All Young diagrams with at most `bound` boxes, by size.
pub fn diagrams_up_to(bound: usize) -> Vec<YoungDiagram> {
    (0..=bound).flat_map(partitions).collect()
}

/// The value of the parameter: an integer or the indeterminate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TValue {
    Int(i64),
    Symbolic,
}

/// An entry of `mu_lambda(t)`: an integer, or `t + k` in the first slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MuEntry {
    Int(i64),
    ShiftedT(i64),
}

impl fmt::Display for MuEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            MuEntry::Int(k) => write!(f, "{k}"),
            MuEntry::ShiftedT(0) => write!(f, "t"),
            MuEntry::ShiftedT(k) if k < 0 => write!(f, "t-{}", -k),
            MuEntry::ShiftedT(k) => write!(f, "t+{k}"),
        }
    }
}

/// The first `len + 1` entries `(t - |lambda|, lambda_1 - 1, ..., lambda_len - len)`.
pub fn mu_seq(lambda: &YoungDiagram, t: TValue, len: usize) -> Vec<MuEntry> {
    let shift = -(lambda.size() as i64);
    let head = match t {
        TValue::Int(d) => MuEntry::Int(d + shift),
        TValue::Symbolic => MuEntry::ShiftedT(shift),
    };
    std::iter::once(head)
        .chain((1..=len).map(|i| MuEntry::Int(lambda.part(i) as i64 - i as i64)))
        .collect()
}

fn int_prefix(lambda: &YoungDiagram, d: i64, len: usize) -> Vec<i64> {
    std::iter::once(d - lambda.size() as i64)
        .chain((1..=len).map(|i| lambda.part(i) as i64 - i as i64))
        .collect()
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

/// Whether `mu_lambda(t)` and `mu_lambda'(t)` are rearrangements of each other.
pub fn same_block(lambda: &YoungDiagram, other: &YoungDiagram, t: TValue) -> bool {
    match t {
        TValue::Symbolic => lambda == other,
        TValue::Int(d) => {
            // Past this index both sequences read -i, and the heads are >= -m.
            let m = lambda.len().max(other.len())
                + lambda.size()
                + other.size()
                + d.unsigned_abs() as usize
                + 2;
            sorted(int_prefix(lambda, d, m)) == sorted(int_prefix(other, d, m))
        }
    }
}

/// The part of `mu_lambda(d)` that differs from the sequence `-1, -2, ...`:
/// entries present in excess, and entries of that sequence that are missing.
/// Two diagrams lie in the same block exactly when their keys agree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockKey {
    pub extra: Vec<i64>,
    pub missing: Vec<i64>,
}

pub fn block_key(lambda: &YoungDiagram, d: i64) -> BlockKey {
    let m = lambda.len() + lambda.size() + d.unsigned_abs() as usize + 2;
    let mut seq = sorted(int_prefix(lambda, d, m));
    let mut missing = Vec::new();
    for k in 1..=m as i64 {
        match seq.iter().position(|&x| x == -k) {
            Some(p) => {
                seq.remove(p);
            }
            None => missing.push(-k),
        }
    }
    missing.sort_unstable();
    BlockKey {
        extra: seq,
        missing,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BlockType {
    Trivial,
    Infinite,
}

/// The block of `L(lambda)` at `t = d`, listed up to a size bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockDescriptor {
    pub d: i64,
    pub key: BlockKey,
    pub block_type: BlockType,
    /// Members with at most `bound` boxes, by size.
    pub members: Vec<YoungDiagram>,
    pub index_of_query: usize,
}

impl BlockDescriptor {
    pub fn is_infinite(&self) -> bool {
        self.block_type == BlockType::Infinite
    }

    /// `{"lambda":[..],"d":..,"block":{"type":..,"members":[..],"index":..}}`.
    pub fn to_json(&self, lambda: &YoungDiagram) -> serde_json::Value {
        serde_json::json!({
            "lambda": lambda,
            "d": self.d,
            "block": {
                "type": self.block_type,
                "members": self.members,
                "index": self.index_of_query,
            }
        })
    }
}

/// Every `lambda'` with `|lambda'| <= bound` whose sequence at `t = d` is a
/// rearrangement of `lambda`'s, found by choosing which entry becomes the
/// head and reading the remaining entries back as a diagram.
pub fn block_of(lambda: &YoungDiagram, d: i64, bound: usize) -> Result<BlockDescriptor> {
    if d < 0 {
        return Err(Error::InvalidInput(format!("d = {d} must be nonnegative")));
    }
    if bound < lambda.size() {
        return Err(Error::InvalidInput(format!(
            "bound {bound} is smaller than |lambda| = {}",
            lambda.size()
        )));
    }
    let w = lambda.len() + bound + d as usize + 2;
    let prefix = int_prefix(lambda, d, w);
    let candidates: BTreeSet<i64> = prefix
        .iter()
        .copied()
        .filter(|&s| s <= d && d - s <= bound as i64)
        .collect();
    let mut members: Vec<YoungDiagram> = candidates
        .into_iter()
        .filter_map(|s| {
            let mut rest = prefix.clone();
            let at = rest.iter().position(|&x| x == s).expect("candidate from prefix");
            rest.remove(at);
            rest.sort_unstable_by(|a, b| b.cmp(a));
            let parts: Vec<i64> = rest.iter().enumerate().map(|(i, r)| r + i as i64 + 1).collect();
            let valid = parts.iter().all(|&p| p >= 0) && parts.windows(2).all(|p| p[0] >= p[1]);
            (valid && parts.iter().sum::<i64>() == d - s).then(|| {
                YoungDiagram::new(parts.into_iter().map(|p| p as usize).collect())
                    .expect("checked decreasing")
            })
        })
        .collect();
    members.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    // A repeated entry pins the head; otherwise the chain never ends.
    let distinct = prefix.iter().collect::<BTreeSet<_>>().len() == prefix.len();
    let block_type = if distinct {
        BlockType::Infinite
    } else {
        BlockType::Trivial
    };
    let index_of_query = members
        .iter()
        .position(|m| m == lambda)
        .expect("lambda belongs to its own block");
    Ok(BlockDescriptor {
        d,
        key: block_key(lambda, d),
        block_type,
        members,
        index_of_query,
    })
}

/// Whether `L(lambda)` is negligible at `t = d`: everything except the
/// smallest member of an infinite block.
pub fn negligible_class(lambda: &YoungDiagram, d: i64) -> Result<bool> {
    let b = block_of(lambda, d, lambda.size())?;
    Ok(!(b.is_infinite() && b.index_of_query == 0))
}

/// Number of distinct infinite blocks met by diagrams with at most `bound`
/// boxes. Stabilises once `bound >= d + 4`.
pub fn count_infinite_blocks(d: i64, bound: usize) -> Result<usize> {
    let keys = diagrams_up_to(bound)
        .par_iter()
        .map(|l| block_of(l, d, l.size()).map(|b| b.is_infinite().then_some(b.key)))
        .collect::<Result<Vec<_>>>()?;
    Ok(keys.into_iter().flatten().collect::<BTreeSet<_>>().len())
}
