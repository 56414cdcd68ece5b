use rayon::prelude::*;
use rustc_hash::FxHashMap;

use super::diagram::PartitionDiagram;
use crate::coeff::{Ring, RingElement};
use crate::error::{Error, Result};
use num_rational::BigRational;

type Terms = FxHashMap<PartitionDiagram, RingElement>;

/// Products of term counts above this go through the parallel path.
const PAR_THRESHOLD: usize = 1 << 12;

/// A finite linear combination of partition diagrams `[A_a] -> [A_b]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    source: usize,
    target: usize,
    ring: Ring,
    terms: Terms,
}

fn accumulate(terms: &mut Terms, d: PartitionDiagram, c: RingElement) {
    use std::collections::hash_map::Entry;
    match terms.entry(d) {
        Entry::Occupied(mut e) => {
            let sum = e.get() + &c;
            if sum.is_zero() {
                e.remove();
            } else {
                *e.get_mut() = sum;
            }
        }
        Entry::Vacant(e) => {
            if !c.is_zero() {
                e.insert(c);
            }
        }
    }
}

fn merge(mut a: Terms, b: Terms) -> Terms {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (d, c) in b {
        accumulate(&mut a, d, c);
    }
    a
}

impl Morphism {
    pub fn zero(ring: &Ring, source: usize, target: usize) -> Self {
        Morphism {
            source,
            target,
            ring: ring.clone(),
            terms: Terms::default(),
        }
    }

    pub fn from_diagram(ring: &Ring, d: PartitionDiagram) -> Self {
        let mut m = Self::zero(ring, d.source(), d.target());
        m.terms.insert(d, ring.one());
        m
    }

    /// Sums `(diagram, coefficient)` pairs, checking sizes and ring.
    pub fn from_terms(
        ring: &Ring,
        source: usize,
        target: usize,
        terms: impl IntoIterator<Item = (PartitionDiagram, RingElement)>,
    ) -> Result<Self> {
        let mut m = Self::zero(ring, source, target);
        for (d, c) in terms {
            if (d.source(), d.target()) != (source, target) {
                return Err(Error::SizeMismatch {
                    expected: format!("{source}->{target}"),
                    found: format!("{}->{}", d.source(), d.target()),
                });
            }
            if &c.tag() != ring.tag() {
                return Err(Error::RingMismatch {
                    left: ring.tag().to_string(),
                    right: c.tag().to_string(),
                });
            }
            accumulate(&mut m.terms, d, c);
        }
        Ok(m)
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of diagrams with a nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source == self.target
    }

    pub fn coeff(&self, d: &PartitionDiagram) -> RingElement {
        self.terms.get(d).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&PartitionDiagram, &RingElement)> {
        self.terms.iter()
    }

    /// Terms sorted by diagram.
    pub fn sorted_terms(&self) -> Vec<(&PartitionDiagram, &RingElement)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| a.0.cmp(b.0));
        v
    }

    fn check_ring(&self, other: &Morphism) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: other.ring.to_string(),
            });
        }
        Ok(())
    }

    fn check_same_shape(&self, other: &Morphism) -> Result<()> {
        self.check_ring(other)?;
        if (self.source, self.target) != (other.source, other.target) {
            return Err(Error::SizeMismatch {
                expected: format!("{}->{}", self.source, self.target),
                found: format!("{}->{}", other.source, other.target),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Morphism) -> Result<Morphism> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            accumulate(&mut out.terms, d.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Morphism) -> Result<Morphism> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Morphism {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, c: &RingElement) -> Result<Morphism> {
        if &c.tag() != self.ring.tag() {
            return Err(Error::RingMismatch {
                left: self.ring.tag().to_string(),
                right: c.tag().to_string(),
            });
        }
        let mut out = Self::zero(&self.ring, self.source, self.target);
        if c.is_zero() {
            return Ok(out);
        }
        out.terms = self.terms.iter().map(|(d, x)| (d.clone(), x * c)).collect();
        Ok(out)
    }

    /// Sum of a nonempty list of same-shape morphisms.
    pub fn sum<'a>(ring: &Ring, source: usize, target: usize, items: impl IntoIterator<Item = &'a Morphism>) -> Result<Morphism> {
        let mut acc = Self::zero(ring, source, target);
        for m in items {
            acc.check_same_shape(m)?;
            for (d, c) in &m.terms {
                accumulate(&mut acc.terms, d.clone(), c.clone());
            }
        }
        Ok(acc)
    }

    /// `self ∘ f`.
    pub fn compose(&self, f: &Morphism) -> Result<Morphism> {
        self.check_ring(f)?;
        if f.target != self.source {
            return Err(Error::SizeMismatch {
                expected: format!("source {}", self.source),
                found: format!("target {}", f.target),
            });
        }
        let ring = &self.ring;
        let pair = |gd: &PartitionDiagram, gc: &RingElement, fd: &PartitionDiagram, fc: &RingElement| {
            let (d, loops) = gd.compose(fd);
            (d, ring.scale_by_param_pow(&(gc * fc), loops))
        };
        let terms = if self.terms.len() * f.terms.len() >= PAR_THRESHOLD {
            let g_terms: Vec<_> = self.terms.iter().collect();
            g_terms
                .par_iter()
                .fold(Terms::default, |mut acc, (gd, gc)| {
                    for (fd, fc) in &f.terms {
                        let (d, c) = pair(gd, gc, fd, fc);
                        accumulate(&mut acc, d, c);
                    }
                    acc
                })
                .reduce(Terms::default, merge)
        } else {
            let mut acc = Terms::default();
            for (gd, gc) in &self.terms {
                for (fd, fc) in &f.terms {
                    let (d, c) = pair(gd, gc, fd, fc);
                    accumulate(&mut acc, d, c);
                }
            }
            acc
        };
        Ok(Morphism {
            source: f.source,
            target: self.target,
            ring: ring.clone(),
            terms,
        })
    }

    /// Composes a chain given outermost first: `chain(&[h, g, f]) = h ∘ g ∘ f`.
    pub fn chain(parts: &[&Morphism]) -> Result<Morphism> {
        let (last, rest) = parts
            .split_last()
            .ok_or_else(|| Error::InvalidInput("empty composition chain".into()))?;
        let mut acc = (*last).clone();
        for m in rest.iter().rev() {
            acc = m.compose(&acc)?;
        }
        Ok(acc)
    }

    pub fn tensor(&self, other: &Morphism) -> Result<Morphism> {
        self.check_ring(other)?;
        let mut terms = Terms::default();
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                accumulate(&mut terms, d1.tensor(d2), c1 * c2);
            }
        }
        Ok(Morphism {
            source: self.source + other.source,
            target: self.target + other.target,
            ring: self.ring.clone(),
            terms,
        })
    }

    pub fn dual(&self) -> Morphism {
        Morphism {
            source: self.target,
            target: self.source,
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(d, c)| (d.dual(), c.clone())).collect(),
        }
    }

    pub fn trace(&self) -> Result<RingElement> {
        if !self.is_endomorphism() {
            return Err(Error::NotEndomorphism {
                from: self.source,
                to: self.target,
            });
        }
        let mut acc = self.ring.zero();
        for (d, c) in &self.terms {
            acc = &acc + &self.ring.scale_by_param_pow(c, d.closure_components());
        }
        Ok(acc)
    }

    /// Closes the last strand of an endomorphism of `[A_{n+1}]`, giving an
    /// endomorphism of `[A_n]`.
    pub fn partial_trace(&self) -> Result<Morphism> {
        if !self.is_endomorphism() || self.source == 0 {
            return Err(Error::NotEndomorphism {
                from: self.source,
                to: self.target,
            });
        }
        let n = self.source - 1;
        let id = super::generators::identity(&self.ring, n);
        let open = id.tensor(&super::generators::coev(&self.ring, 1))?;
        let close = id.tensor(&super::generators::ev(&self.ring, 1))?;
        let body = self.tensor(&super::generators::identity(&self.ring, 1))?;
        Morphism::chain(&[&close, &body, &open])
    }

    /// Evaluates every coefficient at `t = t0`, landing in `Q` with `t` bound to `t0`.
    pub fn specialize(&self, t0: &BigRational) -> Result<Morphism> {
        let ring = Ring::rational(t0.clone());
        let mut out = Self::zero(&ring, self.source, self.target);
        for (d, c) in &self.terms {
            let v = ring.rat(c.eval_at(t0)?);
            accumulate(&mut out.terms, d.clone(), v);
        }
        Ok(out)
    }

    /// Reinterprets coefficients in a larger ring sharing the parameter
    /// (for example `Qt` into `Qratfun`).
    pub fn coerce(&self, ring: &Ring) -> Result<Morphism> {
        if &self.ring == ring {
            return Ok(self.clone());
        }
        let param_ok = self.ring.param().coerce(ring.tag()).ok().as_ref() == Some(ring.param());
        if !param_ok {
            return Err(Error::RingMismatch {
                left: self.ring.to_string(),
                right: ring.to_string(),
            });
        }
        let mut out = Self::zero(ring, self.source, self.target);
        for (d, c) in &self.terms {
            out.terms.insert(d.clone(), c.coerce(ring.tag())?);
        }
        Ok(out)
    }

    /// Linear extension of a map on diagrams.
    pub fn map_diagrams(
        &self,
        source: usize,
        target: usize,
        f: impl Fn(&PartitionDiagram) -> PartitionDiagram,
    ) -> Morphism {
        let mut out = Self::zero(&self.ring, source, target);
        for (d, c) in &self.terms {
            let image = f(d);
            debug_assert_eq!((image.source(), image.target()), (source, target));
            accumulate(&mut out.terms, image, c.clone());
        }
        out
    }
}
