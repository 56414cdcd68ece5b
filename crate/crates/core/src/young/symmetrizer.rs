use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::YoungDiagram;
use crate::coeff::Ring;
use crate::error::{Error, Result};
use crate::pcat::generators::permutation;
use crate::pcat::Morphism;

pub const SYMMETRIZER_CAP: usize = 6;
pub const PT_POWER_CAP: usize = 5;

/// An element of `Q[S_n]`; permutations are in one-line notation and
/// multiply as functions, `(s * t)(i) = s(t(i))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Vec<usize>, BigRational>,
}

fn compose(s: &[usize], t: &[usize]) -> Vec<usize> {
    t.iter().map(|&i| s[i]).collect()
}

fn sign(p: &[usize]) -> i64 {
    let mut seen = vec![false; p.len()];
    let mut s = 1;
    for i in 0..p.len() {
        let mut len = 0;
        let mut j = i;
        while !seen[j] {
            seen[j] = true;
            j = p[j];
            len += 1;
        }
        if len > 0 && len % 2 == 0 {
            s = -s;
        }
    }
    s
}

/// Permutations of `0..n` that preserve each of the given blocks.
fn block_stabilizer(n: usize, blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![(0..n).collect::<Vec<_>>()];
    for block in blocks {
        let mut next = Vec::new();
        for p in &out {
            for perm in permutations(block.len()) {
                let mut q = p.clone();
                for (k, &src) in block.iter().enumerate() {
                    q[src] = block[perm[k]];
                }
                next.push(q);
            }
        }
        out = next;
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for pos in 0..k {
            let mut q = p.clone();
            q.insert(pos, k - 1);
            out.push(q);
        }
    }
    out
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::basis((0..n).collect())
    }

    pub fn basis(p: Vec<usize>) -> Self {
        GroupAlgebraElement {
            n: p.len(),
            terms: BTreeMap::from([(p, BigRational::one())]),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn coeff(&self, p: &[usize]) -> BigRational {
        self.terms.get(p).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, p: Vec<usize>, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(p) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(compose(s, t), a * b);
            }
        }
        out
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut out = Self::zero(self.n);
        for (p, a) in &self.terms {
            out.add_term(p.clone(), a * c);
        }
        out
    }

    /// The image under permutation diagrams.
    pub fn to_morphism(&self, ring: &Ring) -> Result<Morphism> {
        let parts = self
            .terms
            .iter()
            .map(|(p, c)| permutation(ring, p)?.scale(&ring.rat(c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Morphism::sum(ring, self.n, self.n, &parts)
    }
}

/// `(f^lambda / n!) a_lambda b_lambda` for the tableau filled row by row.
pub fn young_symmetrizer(lambda: &YoungDiagram) -> Result<GroupAlgebraElement> {
    let n = lambda.size();
    if n > SYMMETRIZER_CAP {
        return Err(Error::cap("|lambda|", n, SYMMETRIZER_CAP));
    }
    let mut rows = Vec::new();
    let mut next = 0;
    for &len in lambda.parts() {
        rows.push((next..next + len).collect::<Vec<_>>());
        next += len;
    }
    let cols: Vec<Vec<usize>> = (0..lambda.part(1))
        .map(|c| rows.iter().filter(|r| r.len() > c).map(|r| r[c]).collect())
        .collect();
    let mut a = GroupAlgebraElement::zero(n);
    for p in block_stabilizer(n, &rows) {
        a.add_term(p, BigRational::one());
    }
    let mut b = GroupAlgebraElement::zero(n);
    for q in block_stabilizer(n, &cols) {
        let s = sign(&q);
        b.add_term(q, BigRational::from_integer(BigInt::from(s)));
    }
    let n_fact: u64 = (1..=n as u64).product();
    let c = BigRational::new(
        BigInt::from(lambda.standard_tableaux()),
        BigInt::from(n_fact),
    );
    Ok(a.mul(&b).scale(&c))
}

/// The idempotent on `[A_n]` cutting out `[pt]^lambda`.
pub fn pt_power_idempotent(ring: &Ring, lambda: &YoungDiagram) -> Result<Morphism> {
    if lambda.size() > PT_POWER_CAP {
        return Err(Error::cap("|lambda|", lambda.size(), PT_POWER_CAP));
    }
    young_symmetrizer(lambda)?.to_morphism(ring)
}
