use std::fmt;

use smallvec::SmallVec;

use crate::error::Error;

/// Labels of the points of a diagram, one per point.
pub(crate) type Labels = SmallVec<[u8; 24]>;

/// A set partition of `source + target` points.
///
/// Points `0..source` are the bottom row (the domain) and
/// `source..source + target` the top row (the codomain). The partition is
/// stored as a restricted growth string: `labels[i]` is the index of the
/// block containing point `i`, with blocks numbered in order of their
/// smallest element. This is exactly the "blocks sorted by minimum" order,
/// so two diagrams are equal iff their encodings are identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartitionDiagram {
    source: u16,
    target: u16,
    labels: Labels,
}

/// Disjoint-set forest over a handful of points.
pub(crate) struct UnionFind {
    parent: SmallVec<[u16; 64]>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u16).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            let p = self.parent[x] as usize;
            self.parent[x] = self.parent[p];
            x = p;
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // The root of every class is its smallest point.
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo as u16;
        }
    }
}

/// Renumbers arbitrary block ids into a restricted growth string.
pub(crate) fn canonical_labels(raw: impl IntoIterator<Item = usize>) -> Labels {
    let mut map: SmallVec<[(usize, u8); 24]> = SmallVec::new();
    raw.into_iter()
        .map(|r| match map.iter().find(|(k, _)| *k == r) {
            Some(&(_, v)) => v,
            None => {
                let v = map.len() as u8;
                map.push((r, v));
                v
            }
        })
        .collect()
}

impl PartitionDiagram {
    /// Builds a diagram from per-point block ids (any ids; they are renumbered).
    pub fn from_labels(source: usize, target: usize, raw: &[usize]) -> Self {
        assert_eq!(raw.len(), source + target, "label count must equal point count");
        Self::from_canonical(source, target, canonical_labels(raw.iter().copied()))
    }

    pub(crate) fn from_canonical(source: usize, target: usize, labels: Labels) -> Self {
        debug_assert!(source + target <= 255);
        PartitionDiagram {
            source: source as u16,
            target: target as u16,
            labels,
        }
    }

    /// Builds a diagram from explicit blocks, checking that they partition
    /// `0..source + target`.
    pub fn from_blocks(source: usize, target: usize, blocks: &[Vec<usize>]) -> Result<Self, Error> {
        let n = source + target;
        if n > 255 {
            return Err(Error::InvalidDiagram(format!("{n} points exceeds 255")));
        }
        let mut owner: Vec<Option<usize>> = vec![None; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidDiagram(format!("block {b} is empty")));
            }
            for &p in block {
                if p >= n {
                    return Err(Error::InvalidDiagram(format!(
                        "point {p} out of range for {source}+{target} points"
                    )));
                }
                if owner[p].is_some() {
                    return Err(Error::InvalidDiagram(format!("point {p} appears twice")));
                }
                owner[p] = Some(b);
            }
        }
        if let Some(p) = owner.iter().position(Option::is_none) {
            return Err(Error::InvalidDiagram(format!("point {p} is not covered")));
        }
        Ok(Self::from_canonical(
            source,
            target,
            canonical_labels(owner.into_iter().map(|o| o.expect("covered"))),
        ))
    }

    pub fn source(&self) -> usize {
        self.source as usize
    }

    pub fn target(&self) -> usize {
        self.target as usize
    }

    pub fn num_points(&self) -> usize {
        self.labels.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.labels.iter().map(|&l| l as usize + 1).max().unwrap_or(0)
    }

    /// Blocks in canonical order: sorted by minimum, elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (p, &l) in self.labels.iter().enumerate() {
            blocks[l as usize].push(p);
        }
        blocks
    }

    /// Number of blocks meeting both the bottom and the top row.
    pub fn propagating_number(&self) -> usize {
        let nb = self.num_blocks();
        let mut bottom = vec![false; nb];
        let mut top = vec![false; nb];
        for (p, &l) in self.labels.iter().enumerate() {
            if p < self.source() {
                bottom[l as usize] = true;
            } else {
                top[l as usize] = true;
            }
        }
        bottom.iter().zip(&top).filter(|(b, t)| **b && **t).count()
    }

    /// `self ∘ f`: stacks `self` on top of `f`.
    ///
    /// Returns the restricted partition together with the number of blocks
    /// of the join that lie entirely in the middle row. Panics on a size
    /// mismatch; callers check sizes first.
    pub fn compose(&self, f: &PartitionDiagram) -> (PartitionDiagram, u32) {
        assert_eq!(f.target, self.source, "diagram size mismatch");
        let (a, b, c) = (f.source(), f.target(), self.target());
        let total = a + b + c;
        let mut uf = UnionFind::new(total);
        // f occupies points 0..a+b, self occupies a..a+b+c.
        let mut first: SmallVec<[u16; 24]> = SmallVec::from_elem(u16::MAX, f.num_points());
        for (p, &l) in f.labels.iter().enumerate() {
            let slot = &mut first[l as usize];
            if *slot == u16::MAX {
                *slot = p as u16;
            } else {
                uf.union(*slot as usize, p);
            }
        }
        let mut first: SmallVec<[u16; 24]> = SmallVec::from_elem(u16::MAX, self.num_points());
        for (p, &l) in self.labels.iter().enumerate() {
            let q = p + a;
            let slot = &mut first[l as usize];
            if *slot == u16::MAX {
                *slot = q as u16;
            } else {
                uf.union(*slot as usize, q);
            }
        }
        let mut outer_root = SmallVec::<[bool; 64]>::from_elem(false, total);
        let mut raw: SmallVec<[usize; 24]> = SmallVec::with_capacity(a + c);
        for p in (0..a).chain(a + b..total) {
            let r = uf.find(p);
            outer_root[r] = true;
            raw.push(r);
        }
        let mut loops = 0;
        for p in a..a + b {
            let r = uf.find(p);
            if r == p && !outer_root[r] {
                loops += 1;
            }
        }
        // Roots are minimal elements, so a middle-only class has its root in
        // the middle row and is counted exactly once above.
        (
            Self::from_canonical(a, c, canonical_labels(raw)),
            loops,
        )
    }

    /// Side-by-side juxtaposition; `self` on the left.
    pub fn tensor(&self, other: &PartitionDiagram) -> PartitionDiagram {
        let (a1, b1) = (self.source(), self.target());
        let (a2, b2) = (other.source(), other.target());
        let shift = self.num_blocks();
        let mut raw: SmallVec<[usize; 24]> = SmallVec::with_capacity(a1 + a2 + b1 + b2);
        raw.extend(self.labels[..a1].iter().map(|&l| l as usize));
        raw.extend(other.labels[..a2].iter().map(|&l| l as usize + shift));
        raw.extend(self.labels[a1..].iter().map(|&l| l as usize));
        raw.extend(other.labels[a2..].iter().map(|&l| l as usize + shift));
        Self::from_canonical(a1 + a2, b1 + b2, canonical_labels(raw))
    }

    /// Reflection across the horizontal axis: swaps domain and codomain.
    pub fn dual(&self) -> PartitionDiagram {
        let a = self.source();
        let raw = self.labels[a..]
            .iter()
            .chain(&self.labels[..a])
            .map(|&l| l as usize);
        Self::from_canonical(self.target(), a, canonical_labels(raw))
    }

    /// Number of components after identifying each bottom point `i` with
    /// top point `i` (the exponent of the trace). Panics on non-endomorphisms.
    pub fn closure_components(&self) -> u32 {
        let n = self.source();
        assert_eq!(n, self.target(), "closure of a non-endomorphism");
        let nb = self.num_blocks();
        let mut uf = UnionFind::new(nb);
        for i in 0..n {
            uf.union(self.labels[i] as usize, self.labels[n + i] as usize);
        }
        (0..nb).filter(|&b| uf.find(b) == b).count() as u32
    }

    /// Whether every block is a pair and no two pairs cross when the
    /// boundary is read around the rectangle (bottom left to right, then top
    /// right to left).
    pub fn is_planar_matching(&self) -> bool {
        let blocks = self.blocks();
        if blocks.iter().any(|b| b.len() != 2) {
            return false;
        }
        let a = self.source();
        let total = self.num_points();
        let pos = |p: usize| if p < a { p } else { a + (total - 1 - p) };
        let arcs: Vec<(usize, usize)> = blocks
            .iter()
            .map(|b| {
                let (x, y) = (pos(b[0]), pos(b[1]));
                (x.min(y), x.max(y))
            })
            .collect();
        arcs.iter().enumerate().all(|(i, &(p1, q1))| {
            arcs[i + 1..]
                .iter()
                .all(|&(p2, q2)| !((p1 < p2 && p2 < q1 && q1 < q2) || (p2 < p1 && p1 < q2 && q2 < q1)))
        })
    }
}

impl fmt::Debug for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}:{}", self.source, self.target, self)
    }
}

impl fmt::Display for PartitionDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for (j, p) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

/// All set partitions of `n` points as restricted growth strings, in
/// lexicographic order.
pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        current: if n == 0 { None } else { Some(SmallVec::from_elem(0, n)) },
        empty_pending: n == 0,
    }
}

pub struct SetPartitions {
    current: Option<Labels>,
    empty_pending: bool,
}

impl Iterator for SetPartitions {
    type Item = Labels;

    fn next(&mut self) -> Option<Labels> {
        if self.empty_pending {
            self.empty_pending = false;
            return Some(Labels::new());
        }
        let cur = self.current.take()?;
        let out = cur.clone();
        // Advance: increment the rightmost position that may grow.
        let mut next = cur;
        let n = next.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            let max_prefix = *next[..i].iter().max().expect("nonempty");
            if next[i] <= max_prefix {
                next[i] += 1;
                for x in next[i + 1..].iter_mut() {
                    *x = 0;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}
