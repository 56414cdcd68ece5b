//! The Temperley-Lieb category: planar perfect matchings, with a closed loop
//! worth `d = q + 1/q`.
//!
//! Matchings are partition diagrams whose blocks are non-crossing pairs, so
//! composition, tensor and trace are inherited from [`crate::pcat`] with the
//! ring parameter playing the role of `d`.
//!
//! ```
//! use urep::coeff::Ring;
//! use urep::tl::{cup_cap, jw, TlMorphism};
//!
//! let ring = Ring::ratfun();
//! let e1 = cup_cap(&ring, 2, 1).unwrap();
//! assert_eq!(e1.compose(&e1).unwrap(), e1.scale(ring.param()).unwrap());
//! let p = jw(&ring, 2).unwrap();
//! assert!(e1.compose(&p).unwrap().is_zero());
//! assert_eq!(p.trace().unwrap().render(), "t^2 - 1");
//! ```

use rayon::prelude::*;

use crate::coeff::{Ring, RingElement, MAX_CHEBYSHEV_L};
use crate::error::{Error, Result};
use crate::pcat::json::{self, MorphismDoc};
use crate::pcat::{generators, Morphism, PartitionDiagram};

/// Largest `a + b` for which the planar basis is enumerated.
pub const TL_STRAND_CAP: usize = 16;

/// A linear combination of planar matchings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TlMorphism(Morphism);

impl TlMorphism {
    /// Checks that every term is a planar matching.
    pub fn new(m: Morphism) -> Result<Self> {
        if let Some((d, _)) = m.iter().find(|(d, _)| !d.is_planar_matching()) {
            return Err(Error::InvalidDiagram(format!("{d} is not a planar matching")));
        }
        Ok(TlMorphism(m))
    }

    pub fn zero(ring: &Ring, source: usize, target: usize) -> Self {
        TlMorphism(Morphism::zero(ring, source, target))
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        TlMorphism(generators::identity(ring, n))
    }

    pub fn as_morphism(&self) -> &Morphism {
        &self.0
    }

    pub fn into_morphism(self) -> Morphism {
        self.0
    }

    pub fn source(&self) -> usize {
        self.0.source()
    }

    pub fn target(&self) -> usize {
        self.0.target()
    }

    pub fn ring(&self) -> &Ring {
        self.0.ring()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn compose(&self, f: &TlMorphism) -> Result<TlMorphism> {
        self.0.compose(&f.0).map(TlMorphism)
    }

    pub fn tensor(&self, g: &TlMorphism) -> Result<TlMorphism> {
        self.0.tensor(&g.0).map(TlMorphism)
    }

    pub fn add(&self, g: &TlMorphism) -> Result<TlMorphism> {
        self.0.add(&g.0).map(TlMorphism)
    }

    pub fn sub(&self, g: &TlMorphism) -> Result<TlMorphism> {
        self.0.sub(&g.0).map(TlMorphism)
    }

    pub fn scale(&self, c: &RingElement) -> Result<TlMorphism> {
        self.0.scale(c).map(TlMorphism)
    }

    pub fn dual(&self) -> TlMorphism {
        TlMorphism(self.0.dual())
    }

    /// Closes every strand; each resulting circle contributes `d`.
    pub fn trace(&self) -> Result<RingElement> {
        self.0.trace()
    }

    pub fn coerce(&self, ring: &Ring) -> Result<TlMorphism> {
        self.0.coerce(ring).map(TlMorphism)
    }
}

/// `e_i` on `n` strands (1-based): strands `i` and `i + 1` capped below and
/// cupped above.
pub fn cup_cap(ring: &Ring, n: usize, i: usize) -> Result<TlMorphism> {
    if i == 0 || i >= n {
        return Err(Error::InvalidInput(format!("e_{i} needs 1 <= i < n = {n}")));
    }
    let mut labels: Vec<usize> = (0..n).chain(0..n).collect();
    labels[i] = i - 1;
    labels[n + i - 1] = n;
    labels[n + i] = n;
    Ok(TlMorphism(Morphism::from_diagram(
        ring,
        PartitionDiagram::from_labels(n, n, &labels),
    )))
}

/// `[n]` evaluated at the ring parameter.
pub fn quantum_int(ring: &Ring, n: usize) -> RingElement {
    let mut prev = ring.zero();
    let mut cur = ring.one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&cur * ring.param()) - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// The least `l >= 1` with `[l + 1] = 0`, or `None` when the parameter is
/// symbolic or no such `l` exists below the supported bound.
pub fn l_q(ring: &Ring) -> Option<usize> {
    if !matches!(
        ring.tag(),
        crate::coeff::RingTag::Q | crate::coeff::RingTag::NumberFieldDelta(_)
    ) {
        return None;
    }
    (1..=MAX_CHEBYSHEV_L).find(|&l| quantum_int(ring, l + 1).is_zero())
}

/// The Jones-Wenzl projector on `n` strands, computed over the fraction
/// field of `ring`.
pub fn jw(ring: &Ring, n: usize) -> Result<TlMorphism> {
    let ring = ring.fraction_field();
    let mut p = TlMorphism::identity(&ring, n.min(1));
    for k in 2..=n {
        let qk = quantum_int(&ring, k);
        if qk.is_zero() {
            return Err(Error::ProjectorUndefined(k));
        }
        let ratio = quantum_int(&ring, k - 1).checked_div(&qk)?;
        let pid = p.tensor(&TlMorphism::identity(&ring, 1))?;
        let e = cup_cap(&ring, k, k - 1)?;
        let sandwich = pid.compose(&e)?.compose(&pid)?;
        p = pid.sub(&sandwich.scale(&ratio)?)?;
    }
    Ok(p)
}

/// `jw(l - 1)`, whose trace is `[l]`.
pub fn steinberg(ring: &Ring, l: usize) -> Result<TlMorphism> {
    if l < 2 {
        return Err(Error::InvalidInput(format!("l = {l} must be at least 2")));
    }
    if let Some(lq) = l_q(ring) {
        if lq != l {
            return Err(Error::InvalidInput(format!("the ring has l_q = {lq}, not {l}")));
        }
    }
    jw(ring, l - 1)
}

/// Non-crossing perfect matchings of `m` points on a circle, as index pairs.
fn circle_matchings(m: usize) -> Vec<Vec<(usize, usize)>> {
    fn go(lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo >= hi {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for partner in (lo + 1..hi).step_by(2) {
            for inner in go(lo + 1, partner) {
                for outer in go(partner + 1, hi) {
                    let mut v = vec![(lo, partner)];
                    v.extend(inner.iter().copied());
                    v.extend(outer.iter().copied());
                    out.push(v);
                }
            }
        }
        out
    }
    if m % 2 == 1 {
        return vec![];
    }
    go(0, m)
}

/// Every planar matching `a -> b`.
pub fn tl_basis(a: usize, b: usize) -> Result<Vec<PartitionDiagram>> {
    if a + b > TL_STRAND_CAP {
        return Err(Error::cap("a + b", a + b, TL_STRAND_CAP));
    }
    let total = a + b;
    let point = |c: usize| if c < a { c } else { total - 1 - (c - a) };
    let mut out: Vec<PartitionDiagram> = circle_matchings(total)
        .into_iter()
        .map(|arcs| {
            let mut labels = vec![0; total];
            for (k, (x, y)) in arcs.into_iter().enumerate() {
                labels[point(x)] = k;
                labels[point(y)] = k;
            }
            PartitionDiagram::from_labels(a, b, &labels)
        })
        .collect();
    out.sort();
    Ok(out)
}

/// Whether `trace(g f)` vanishes for every planar `g`.
pub fn tl_negligible(f: &TlMorphism) -> Result<bool> {
    let basis = tl_basis(f.target(), f.source())?;
    let ring = f.ring();
    let terms: Vec<_> = f.as_morphism().iter().collect();
    Ok(basis.par_iter().all(|g| {
        terms
            .iter()
            .fold(ring.zero(), |acc, (d, c)| {
                let (h, loops) = g.compose(d);
                &acc + &ring.scale_by_param_pow(c, loops + h.closure_components())
            })
            .is_zero()
    }))
}

/// Whether the indecomposable of weight `n` is negligible, i.e. `[n + 1] = 0`.
pub fn jw_negligible(ring: &Ring, n: usize) -> bool {
    quantum_int(ring, n + 1).is_zero()
}

/// Block label of the indecomposable of weight `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TlBlock {
    /// A block containing only this weight.
    Simple(usize),
    /// A non-semisimple block, named by the orbit representative in `1..=l`.
    Linked(usize),
}

/// Weights `i` and `j` are linked when `i + 1 = ±(j + 1)` modulo `2(l + 1)`;
/// weights with `i + 1` divisible by `l + 1` sit alone. Without `l` every
/// weight is its own block.
pub fn tl_block(i: usize, l: Option<usize>) -> Result<TlBlock> {
    let Some(l) = l else {
        return Ok(TlBlock::Simple(i));
    };
    if l < 2 {
        return Err(Error::InvalidInput(format!("l = {l} must be at least 2")));
    }
    let p = l + 1;
    let r = (i + 1) % (2 * p);
    if r.is_multiple_of(p) {
        return Ok(TlBlock::Simple(i));
    }
    Ok(TlBlock::Linked(r.min(2 * p - r)))
}

pub fn to_doc(f: &TlMorphism) -> MorphismDoc {
    json::to_doc(f.as_morphism(), Some("tl"))
}

/// Reads a document with `"kind":"tl"`.
pub fn read_tl(text: &str) -> Result<TlMorphism> {
    let doc = json::parse_doc(text)?;
    if doc.kind.as_deref() != Some("tl") {
        return Err(Error::Json {
            path: "/kind".into(),
            msg: "expected \"tl\"".into(),
        });
    }
    TlMorphism::new(json::from_doc(&doc)?).map_err(|e| Error::Json {
        path: "/terms".into(),
        msg: e.to_string(),
    })
}

pub fn write_tl(f: &TlMorphism) -> String {
    json::render_doc(&to_doc(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::chebyshev_minpoly;
    use std::collections::BTreeSet;

    fn catalan(k: usize) -> usize {
        (0..k).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
    }

    #[test]
    fn hom_dimensions_are_catalan() {
        for a in 0..=8 {
            for b in 0..=8 {
                let n = tl_basis(a, b).unwrap().len();
                let expected = if (a + b) % 2 == 0 { catalan((a + b) / 2) } else { 0 };
                assert_eq!(n, expected, "{a} {b}");
            }
        }
        assert!(tl_basis(9, 9).unwrap_err().is_cap());
    }

    #[test]
    fn cup_cap_relations() {
        let r = Ring::poly();
        for n in 2..=6 {
            let e: Vec<TlMorphism> = (1..n).map(|i| cup_cap(&r, n, i).unwrap()).collect();
            for i in 0..n - 1 {
                assert_eq!(e[i].compose(&e[i]).unwrap(), e[i].scale(r.param()).unwrap());
                for j in 0..n - 1 {
                    let eij = e[i].compose(&e[j]).unwrap();
                    if i.abs_diff(j) == 1 {
                        assert_eq!(eij.compose(&e[i]).unwrap(), e[i]);
                    } else if i.abs_diff(j) > 1 {
                        assert_eq!(eij, e[j].compose(&e[i]).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn braid_like_example() {
        let r = Ring::poly();
        let e1 = cup_cap(&r, 3, 1).unwrap();
        let e2 = cup_cap(&r, 3, 2).unwrap();
        assert_eq!(e1.compose(&e2).unwrap().compose(&e1).unwrap(), e1);
        assert!(cup_cap(&r, 3, 3).is_err());
    }

    #[test]
    fn quantum_integers() {
        let r = Ring::poly();
        assert_eq!(quantum_int(&r, 2).render(), "t");
        assert_eq!(quantum_int(&r, 3).render(), "t^2 - 1");
        assert_eq!(l_q(&Ring::rational_int(-1)), Some(2));
        assert_eq!(l_q(&Ring::rational_int(0)), Some(1));
        assert_eq!(l_q(&Ring::rational_int(2)), None);
        assert_eq!(l_q(&r), None);
        let sqrt2 = Ring::number_field(chebyshev_minpoly(3).unwrap()).unwrap();
        assert_eq!(l_q(&sqrt2), Some(3));
    }

    #[test]
    fn projectors() {
        let r = Ring::ratfun();
        for n in 1..=6 {
            let p = jw(&r, n).unwrap();
            assert_eq!(p.compose(&p).unwrap(), p, "n = {n}");
            for i in 1..n {
                let e = cup_cap(&r, n, i).unwrap();
                assert!(e.compose(&p).unwrap().is_zero());
                assert!(p.compose(&e).unwrap().is_zero());
            }
            assert_eq!(p.trace().unwrap(), quantum_int(&r, n + 1));
        }
        let e1 = cup_cap(&r, 2, 1).unwrap();
        let inv_d = r.param().inv().unwrap();
        let expected = TlMorphism::identity(&r, 2).sub(&e1.scale(&inv_d).unwrap()).unwrap();
        assert_eq!(jw(&r, 2).unwrap(), expected);
        assert_eq!(jw(&r, 0).unwrap(), TlMorphism::identity(&r, 0));
    }

    #[test]
    fn projector_undefined_at_root_of_unity() {
        let r = Ring::rational_int(-1);
        assert!(jw(&r, 2).is_ok());
        assert!(matches!(jw(&r, 3), Err(Error::ProjectorUndefined(3))));
    }

    #[test]
    fn steinberg_examples() {
        let r = Ring::rational_int(-1);
        let st = steinberg(&r, 2).unwrap();
        assert_eq!(st, TlMorphism::identity(&r, 1));
        assert_eq!(st.trace().unwrap(), r.int(-1));
        let sqrt2 = Ring::number_field(chebyshev_minpoly(3).unwrap()).unwrap();
        let st = steinberg(&sqrt2, 3).unwrap();
        assert_eq!(st, jw(&sqrt2, 2).unwrap());
        assert!(!st.trace().unwrap().is_zero());
        assert!(steinberg(&r, 3).is_err());
    }

    #[test]
    fn negligibility() {
        let r = Ring::rational_int(-1);
        let pattern: Vec<bool> = (0..=8).map(|n| jw_negligible(&r, n)).collect();
        let expected: Vec<bool> = (0..=8).map(|n| n % 3 == 2).collect();
        assert_eq!(pattern, expected);
        for n in 1..=2 {
            assert_eq!(tl_negligible(&jw(&r, n).unwrap()).unwrap(), jw_negligible(&r, n));
        }
        assert!(!tl_negligible(&TlMorphism::identity(&Ring::ratfun(), 1)).unwrap());
    }

    #[test]
    fn blocks() {
        assert_eq!(tl_block(3, Some(2)).unwrap(), tl_block(3, Some(2)).unwrap());
        let generic: BTreeSet<_> = (0..10).map(|i| tl_block(i, None).unwrap()).collect();
        assert_eq!(generic.len(), 10);
        let linked: BTreeSet<_> = (0..4)
            .filter_map(|i| match tl_block(i, Some(2)).unwrap() {
                TlBlock::Linked(k) => Some(k),
                TlBlock::Simple(_) => None,
            })
            .collect();
        assert_eq!(linked.len(), 2);
        assert_eq!(tl_block(0, Some(2)).unwrap(), tl_block(4, Some(2)).unwrap());
        assert_eq!(tl_block(2, Some(2)).unwrap(), TlBlock::Simple(2));
    }

    #[test]
    fn json_round_trip() {
        let r = Ring::rational_int(-1);
        let p = jw(&r, 2).unwrap();
        let text = write_tl(&p);
        assert!(text.starts_with("{\"kind\":\"tl\""));
        assert_eq!(read_tl(&text).unwrap(), p);
        let crossing = json::write_morphism(&generators::braiding(&r, 1, 1))
            .replacen('{', "{\"kind\":\"tl\",", 1);
        assert!(read_tl(&crossing).is_err());
    }
}
