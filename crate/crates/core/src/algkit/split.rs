use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::algebra::{FinDimAlgebra, Vector};
use crate::coeff::{Poly, RingElement, RingTag};
use crate::error::{Error, Result};
use crate::linalg::Echelon;

const RANDOM_CANDIDATES: usize = 64;

/// Pairwise orthogonal idempotents summing to the input.
#[derive(Clone, Debug)]
pub struct IdempotentDecomposition {
    pub idempotents: Vec<Vector>,
    pub primitive: Vec<bool>,
}

impl FinDimAlgebra {
    /// The minimal polynomial of `x` inside the unital algebra `eAe`.
    pub fn min_poly(&self, x: &[RingElement], e: &[RingElement]) -> Result<Poly> {
        let mut span = Echelon::new(self.ring())?;
        let mut power = e.to_vec();
        loop {
            match span.insert(&power) {
                Ok(()) => power = self.mul(&power, x),
                Err(combo) => {
                    let mut coeffs = combo
                        .iter()
                        .map(|c| c.as_rational().map(|q| -q))
                        .collect::<Option<Vec<BigRational>>>()
                        .ok_or_else(|| Error::FieldRequired("Q".into()))?;
                    coeffs.push(BigRational::from_integer(1.into()));
                    return Ok(Poly::from_coeffs(coeffs));
                }
            }
        }
    }

    /// `p(x)` with `e` as the identity.
    pub fn eval_poly(&self, p: &Poly, x: &[RingElement], e: &[RingElement]) -> Vector {
        let mut acc = self.zero();
        for c in p.coeffs().iter().rev() {
            acc = self.mul(&acc, x);
            let c = self.ring().rat(c.clone());
            acc = self.add(&acc, &self.scale(&c, e));
        }
        acc
    }

    /// Whether `eAe` is local with residue field of dimension one.
    pub fn is_primitive(&self, e: &[RingElement], radical: &[Vector]) -> Result<bool> {
        if FinDimAlgebra::is_zero(e) {
            return Ok(false);
        }
        let corner = self.corner(e)?;
        let mut rad = Echelon::new(self.ring())?;
        for r in radical {
            let _ = rad.insert(&self.mul(&self.mul(e, r), e));
        }
        Ok(corner.len() == rad.rank() + 1)
    }

    /// Splits `e` into primitive orthogonal idempotents. Idempotents are
    /// separated by the coprime factors of minimal polynomials of elements
    /// of `eAe`, so every piece is exactly idempotent.
    pub fn split_idempotent(&self, e: &[RingElement]) -> Result<IdempotentDecomposition> {
        if !matches!(self.ring().tag(), RingTag::Q) {
            return Err(Error::FieldRequired("Q (a numeric value of t)".into()));
        }
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let radical = self.radical()?;
        let mut rng = ChaCha8Rng::seed_from_u64(0x1d3e_7a11);
        let mut out = Vec::new();
        let mut todo = vec![e.to_vec()];
        while let Some(f) = todo.pop() {
            if FinDimAlgebra::is_zero(&f) {
                continue;
            }
            if self.is_primitive(&f, &radical)? {
                out.push(f);
                continue;
            }
            let (g, h) = self.split_once(&f, &mut rng)?;
            todo.push(h);
            todo.push(g);
        }
        let primitive = vec![true; out.len()];
        Ok(IdempotentDecomposition {
            idempotents: out,
            primitive,
        })
    }

    fn split_once(&self, f: &[RingElement], rng: &mut ChaCha8Rng) -> Result<(Vector, Vector)> {
        let corner = self.corner(f)?;
        let mut candidates: Vec<Vector> = corner.clone();
        for _ in 0..RANDOM_CANDIDATES {
            let mut x = self.zero();
            for b in &corner {
                let c = self.ring().int(rng.gen_range(-2..=2));
                x = self.add(&x, &self.scale(&c, b));
            }
            candidates.push(x);
        }
        for x in candidates {
            if let Some(g) = self.separating_idempotent(&x, f)? {
                let h = self.sub(f, &g);
                return Ok((g, h));
            }
        }
        Err(Error::SplitFailure(format!(
            "no element of a {}-dimensional corner separated it",
            corner.len()
        )))
    }

    /// An idempotent `0 != g != f` that is a polynomial in `x`, if the
    /// minimal polynomial of `x` has a rational root and another factor.
    fn separating_idempotent(&self, x: &[RingElement], f: &[RingElement]) -> Result<Option<Vector>> {
        let m = self.min_poly(x, f)?;
        for r in m.rational_roots() {
            let lin = Poly::from_coeffs(vec![-r.clone(), BigRational::from_integer(1.into())]);
            let mut a = Poly::one();
            let mut rest = m.clone();
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                a = &a * &lin;
                rest = q;
            }
            if rest.is_constant() {
                continue;
            }
            let (g, _, v) = a.ext_gcd(&rest);
            debug_assert!(g.is_one());
            // v * rest is 1 on the root's generalised eigenspace and 0 elsewhere.
            let idem = self.eval_poly(&(&v * &rest), x, f);
            return Ok(Some(idem));
        }
        Ok(None)
    }
}

impl IdempotentDecomposition {
    pub fn len(&self) -> usize {
        self.idempotents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.idempotents.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::Ring;
    use crate::pcat::{Morphism, PartitionDiagram};

    fn check_decomposition(a: &FinDimAlgebra, e: &Vector, dec: &IdempotentDecomposition) {
        let mut sum = a.zero();
        for (i, x) in dec.idempotents.iter().enumerate() {
            sum = a.add(&sum, x);
            for (j, y) in dec.idempotents.iter().enumerate() {
                let xy = a.mul(x, y);
                if i == j {
                    assert_eq!(&xy, x);
                } else {
                    assert!(FinDimAlgebra::is_zero(&xy));
                }
            }
        }
        assert_eq!(&sum, e);
    }

    #[test]
    fn point_at_one_splits_in_two() {
        let a = FinDimAlgebra::partition_end(&Ring::rational_int(1), 1).unwrap();
        let dec = a.split_idempotent(a.unit()).unwrap();
        assert_eq!(dec.len(), 2);
        check_decomposition(&a, a.unit(), &dec);
        let e = a
            .from_morphism(&Morphism::from_diagram(a.ring(), PartitionDiagram::from_labels(1, 1, &[0, 1])))
            .unwrap();
        assert!(dec.idempotents.contains(&e));
    }

    #[test]
    fn point_at_zero_is_indecomposable() {
        let a = FinDimAlgebra::partition_end(&Ring::rational_int(0), 1).unwrap();
        let dec = a.split_idempotent(a.unit()).unwrap();
        assert_eq!(dec.idempotents, vec![a.unit().clone()]);
        assert!(a.split_idempotent(&a.zero()).unwrap().is_empty());
    }

    #[test]
    fn larger_decompositions_are_complete() {
        for d in 0..=3 {
            let a = FinDimAlgebra::partition_end(&Ring::rational_int(d), 2).unwrap();
            let dec = a.split_idempotent(a.unit()).unwrap();
            check_decomposition(&a, a.unit(), &dec);
        }
        let tl = FinDimAlgebra::tl_end(&Ring::rational_int(-1), 3).unwrap();
        let dec = tl.split_idempotent(tl.unit()).unwrap();
        check_decomposition(&tl, tl.unit(), &dec);
    }

    #[test]
    fn rejects_non_idempotents() {
        let a = FinDimAlgebra::partition_end(&Ring::rational_int(1), 1).unwrap();
        let two = a.scale(&a.ring().int(2), a.unit());
        assert!(matches!(a.split_idempotent(&two), Err(Error::NotIdempotent)));
        let generic = FinDimAlgebra::partition_end(&Ring::ratfun(), 1).unwrap();
        assert!(generic.split_idempotent(generic.unit()).is_err());
    }
}
