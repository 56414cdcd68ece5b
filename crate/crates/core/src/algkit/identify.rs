use rustc_hash::FxHashMap;
use serde::Serialize;

use super::algebra::FinDimAlgebra;
use crate::coeff::{Ring, RingElement, RingTag};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::pcat::{hom_basis_capped, Morphism, PartitionDiagram};
use crate::young::{partitions, pt_power_idempotent, YoungDiagram};

/// Which `L(lambda)` a primitive idempotent cuts out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummandId {
    pub lambda: YoungDiagram,
    /// The smallest `k` such that the summand is a summand of `[A_k]`.
    pub level: usize,
    /// The categorical trace of the idempotent.
    #[serde(serialize_with = "render")]
    pub dim: RingElement,
}

fn render<S: serde::Serializer>(x: &RingElement, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.render())
}

struct Coords {
    index: FxHashMap<PartitionDiagram, usize>,
    ring: Ring,
}

impl Coords {
    fn new(ring: &Ring, n: usize) -> Result<Self> {
        let index = hom_basis_capped(n, n, 2 * n)?
            .into_iter()
            .enumerate()
            .map(|(i, d)| (d, i))
            .collect();
        Ok(Coords {
            index,
            ring: ring.clone(),
        })
    }

    fn of(&self, m: &Morphism) -> Vec<RingElement> {
        let mut v = vec![self.ring.zero(); self.index.len()];
        for (d, c) in m.iter() {
            v[self.index[d]] = c.clone();
        }
        v
    }
}

fn with_propagation(a: usize, b: usize, p: usize) -> Result<Vec<PartitionDiagram>> {
    Ok(hom_basis_capped(a, b, a + b)?
        .into_iter()
        .filter(|d| d.propagating_number() == p)
        .collect())
}

/// Labels the image of a primitive idempotent `eps` of `[A_n]` at a numeric
/// `t`: the level is the least `k` through which `eps` factors, and `lambda`
/// is the unique shape of that size whose Young idempotent `eps` factors
/// through.
pub fn identify_summand(eps: &Morphism) -> Result<SummandId> {
    let ring = eps.ring().clone();
    if !matches!(ring.tag(), RingTag::Q) {
        return Err(Error::FieldRequired("Q (a numeric value of t)".into()));
    }
    let n = eps.source();
    if !eps.is_endomorphism() {
        return Err(Error::NotEndomorphism {
            from: n,
            to: eps.target(),
        });
    }
    if n > super::PARTITION_END_CAP {
        return Err(Error::cap("n", n, super::PARTITION_END_CAP));
    }
    if &eps.compose(eps)? != eps || eps.is_zero() {
        return Err(Error::NotIdempotent);
    }
    let coords = Coords::new(&ring, n)?;
    let target = coords.of(eps);
    let sandwich = |m: &Morphism| -> Result<Vec<RingElement>> {
        Ok(coords.of(&Morphism::chain(&[eps, m, eps])?))
    };

    let mut lower = Echelon::new(&ring)?;
    let mut level = None;
    for k in 0..=n {
        let before = lower.clone();
        for d in hom_basis_capped(n, n, 2 * n)?.into_iter().filter(|d| d.propagating_number() == k) {
            let _ = lower.insert(&sandwich(&Morphism::from_diagram(&ring, d))?);
        }
        if lower.contains(&target) {
            level = Some((k, before));
            break;
        }
    }
    let (m, below) = level.expect("eps factors through itself");
    let dim = eps.trace()?;
    if m == 0 {
        return Ok(SummandId {
            lambda: YoungDiagram::empty(),
            level: 0,
            dim,
        });
    }

    let ins = with_propagation(m, n, m)?;
    let outs = with_propagation(n, m, m)?;
    let mut found = Vec::new();
    for lambda in partitions(m) {
        let y = pt_power_idempotent(&ring, &lambda)?;
        let mut span = below.clone();
        'pairs: for a in &ins {
            let ea = eps.compose(&Morphism::from_diagram(&ring, a.clone()))?;
            let eay = ea.compose(&y)?;
            for b in &outs {
                let be = Morphism::from_diagram(&ring, b.clone()).compose(eps)?;
                let _ = span.insert(&coords.of(&eay.compose(&be)?));
                if span.contains(&target) {
                    break 'pairs;
                }
            }
        }
        if span.contains(&target) {
            found.push(lambda);
        }
    }
    match found.len() {
        1 => Ok(SummandId {
            lambda: found.pop().expect("one candidate"),
            level: m,
            dim,
        }),
        _ => Err(Error::Ambiguous(format!(
            "level {m}, candidates [{}]",
            found.iter().map(YoungDiagram::to_string).collect::<Vec<_>>().join(", ")
        ))),
    }
}

/// Splits the identity of `[A_n]` at `t = d` and labels every summand.
pub fn decompose_power(d: i64, n: usize) -> Result<Vec<(Morphism, SummandId)>> {
    let a = FinDimAlgebra::partition_end(&Ring::rational_int(d), n)?;
    let dec = a.split_idempotent(a.unit())?;
    let mut out = dec
        .idempotents
        .iter()
        .map(|e| {
            let m = a.to_morphism(e)?;
            let id = identify_summand(&m)?;
            Ok((m, id))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|x, y| {
        (x.1.level, &x.1.lambda).cmp(&(y.1.level, &y.1.lambda))
    });
    Ok(out)
}
