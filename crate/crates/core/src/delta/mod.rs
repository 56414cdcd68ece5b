//! The idempotents `x_n`, the maps that extend a leg by one point, and the
//! algebra object `Δ_n` cut out by `x_n`.
//!
//! ```
//! use urep::coeff::Ring;
//! use urep::delta::x_n;
//!
//! let ring = Ring::poly();
//! let x3 = x_n(&ring, 3);
//! assert_eq!(x3.compose(&x3).unwrap(), x3);
//! assert_eq!(x3.trace().unwrap().render(), "t^3 - 3*t^2 + 2*t");
//! ```

mod maps;
mod verify;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use maps::DeltaMaps;
pub use verify::{
    deligne_split_check, verify_suite, verify_suite_capped, Check, Family, VerificationReport,
};

use crate::coeff::{Poly, Ring, RingElement};
use crate::error::{Error, Result};
use crate::pcat::{set_partitions, Morphism, PartitionDiagram};

/// Largest `n` accepted by [`trace_x`].
pub const TRACE_X_CAP: usize = 8;

/// `prod_B (-1)^{|B|-1} (|B|-1)!` over the blocks of a set partition of `{1, ..., n}`.
pub fn mobius_coarsening(blocks: &[Vec<usize>]) -> Result<BigInt> {
    let n: usize = blocks.iter().map(Vec::len).sum();
    let mut seen = vec![false; n + 1];
    for b in blocks {
        if b.is_empty() {
            return Err(Error::InvalidInput("empty block".into()));
        }
        for &i in b {
            if i == 0 || i > n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidInput(format!(
                    "{blocks:?} is not a partition of 1..={n}"
                )));
            }
        }
    }
    Ok(blocks.iter().map(|b| mobius_factor(b.len())).product())
}

fn mobius_factor(size: usize) -> BigInt {
    let f: BigInt = (1..size).map(BigInt::from).product();
    if size.is_multiple_of(2) {
        -f
    } else {
        f
    }
}

/// `sum_P mu(P) pi_P` where `pi_P` merges the strands of the identity
/// diagram according to the set partition `P` of `{1, ..., n}`.
pub fn x_n(ring: &Ring, n: usize) -> Morphism {
    let terms = set_partitions(n).map(|labels| {
        let mut counts = vec![0usize; n];
        for &l in &labels {
            counts[l as usize] += 1;
        }
        let coeff: BigInt = counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| mobius_factor(c))
            .product();
        let doubled: Vec<usize> = labels.iter().chain(&labels).map(|&l| l as usize).collect();
        (
            PartitionDiagram::from_labels(n, n, &doubled),
            ring.rat(BigRational::from_integer(coeff)),
        )
    });
    Morphism::from_terms(ring, n, n, terms).expect("shapes agree")
}

/// Which side of a morphism gains the new point in [`theta`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaVariant {
    /// `Hom(X, A_n) -> Hom(X, A_{n+1})`: the target gains a point.
    Target,
    /// `Hom(A_n, X) -> Hom(A_{n+1}, X)`: the source gains a point.
    Source,
    /// Both sides of an endomorphism of `A_n`.
    Endo,
}

fn check_j(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n {
        return Err(Error::InvalidInput(format!("j = {j} outside 1..={n}")));
    }
    Ok(())
}

/// Appends a point to the legs listed in `source_legs` / `target_legs`
/// (start offsets of runs of `n` points within each side), placing each new
/// point in the block of the `j`-th point of its leg.
fn extend_diagram(
    d: &PartitionDiagram,
    n: usize,
    j: usize,
    source_legs: &[usize],
    target_legs: &[usize],
) -> PartitionDiagram {
    let (a, b) = (d.source(), d.target());
    let labels: Vec<usize> = {
        let mut l = vec![0; a + b];
        for (k, block) in d.blocks().iter().enumerate() {
            for &p in block {
                l[p] = k;
            }
        }
        l
    };
    let mut out = Vec::with_capacity(a + b + source_legs.len() + target_legs.len());
    let mut side = |offset: usize, len: usize, legs: &[usize]| {
        for p in 0..len {
            out.push(labels[offset + p]);
            if let Some(&start) = legs.iter().find(|&&s| s + n == p + 1) {
                out.push(labels[offset + start + j - 1]);
            }
        }
    };
    side(0, a, source_legs);
    side(a, b, target_legs);
    PartitionDiagram::from_labels(a + source_legs.len(), b + target_legs.len(), &out)
}

/// The leg-extension maps. `f`'s extended side(s) must have size `n`.
pub fn theta(f: &Morphism, j: usize, variant: ThetaVariant) -> Result<Morphism> {
    let (a, b) = (f.source(), f.target());
    let (n, src, tgt): (usize, &[usize], &[usize]) = match variant {
        ThetaVariant::Target => (b, &[], &[0]),
        ThetaVariant::Source => (a, &[0], &[]),
        ThetaVariant::Endo => {
            if a != b {
                return Err(Error::NotEndomorphism { from: a, to: b });
            }
            (a, &[0], &[0])
        }
    };
    check_j(n, j)?;
    Ok(f.map_diagrams(a + src.len(), b + tgt.len(), |d| {
        extend_diagram(d, n, j, src, tgt)
    }))
}

/// Extends every leg of a morphism `A_n^{⊗k} -> A_n^{⊗m}`; this is how the
/// endomorphism map acts on the multiplication `mu_n`.
pub fn theta_legs(f: &Morphism, n: usize, j: usize) -> Result<Morphism> {
    check_j(n, j)?;
    let (a, b) = (f.source(), f.target());
    if a % n != 0 || b % n != 0 {
        return Err(Error::SizeMismatch {
            expected: format!("multiples of {n}"),
            found: format!("{a}->{b}"),
        });
    }
    let src: Vec<usize> = (0..a / n).map(|k| k * n).collect();
    let tgt: Vec<usize> = (0..b / n).map(|k| k * n).collect();
    Ok(f.map_diagrams(a + src.len(), b + tgt.len(), |d| {
        extend_diagram(d, n, j, &src, &tgt)
    }))
}

/// `x_{n,j}`, the endomorphism extension of `x_n`.
pub fn x_nj(ring: &Ring, n: usize, j: usize) -> Result<Morphism> {
    theta(&x_n(ring, n), j, ThetaVariant::Endo)
}

/// `trace(x_n)` computed by closing diagrams.
pub fn trace_x(ring: &Ring, n: usize) -> Result<RingElement> {
    if n > TRACE_X_CAP {
        return Err(Error::cap("n", n, TRACE_X_CAP));
    }
    x_n(ring, n).trace()
}

/// `t (t - 1) ... (t - n + 1)` as a polynomial.
pub fn falling_factorial(n: usize) -> Poly {
    (0..n).fold(Poly::one(), |acc, k| {
        &acc * &Poly::from_ints(&[-(k as i64), 1])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcat::generators::identity;
    use num_traits::One;

    fn m2(ring: &Ring) -> Morphism {
        Morphism::from_diagram(ring, PartitionDiagram::from_labels(2, 2, &[0, 0, 0, 0]))
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius_coarsening(&[vec![1], vec![2], vec![3]]).unwrap(), BigInt::one());
        assert_eq!(mobius_coarsening(&[vec![1, 2], vec![3]]).unwrap(), BigInt::from(-1));
        assert_eq!(mobius_coarsening(&[vec![1, 2, 3]]).unwrap(), BigInt::from(2));
        assert!(mobius_coarsening(&[vec![1, 1]]).is_err());
        assert!(mobius_coarsening(&[vec![0]]).is_err());
        assert_eq!(mobius_coarsening(&[]).unwrap(), BigInt::one());
    }

    #[test]
    fn small_x() {
        let r = Ring::poly();
        assert_eq!(x_n(&r, 1), identity(&r, 1));
        assert_eq!(x_n(&r, 2), identity(&r, 2).sub(&m2(&r)).unwrap());
        assert_eq!(x_n(&r, 0), identity(&r, 0));
    }

    #[test]
    fn theta_examples() {
        let r = Ring::poly();
        assert_eq!(theta(&identity(&r, 1), 1, ThetaVariant::Endo).unwrap(), m2(&r));
        assert_eq!(x_nj(&r, 1, 1).unwrap(), m2(&r));
        let up = theta(&identity(&r, 1), 1, ThetaVariant::Target).unwrap();
        assert_eq!(up.sorted_terms()[0].0.blocks(), vec![vec![0, 1, 2]]);
        assert!(theta(&identity(&r, 2), 3, ThetaVariant::Endo).is_err());
        assert!(theta(&identity(&r, 2), 0, ThetaVariant::Source).is_err());
    }

    #[test]
    fn theta_is_linear() {
        let r = Ring::poly();
        let f = x_n(&r, 2);
        let g = identity(&r, 2).scale(r.param()).unwrap();
        let lhs = theta(&f.add(&g).unwrap(), 2, ThetaVariant::Endo).unwrap();
        let rhs = theta(&f, 2, ThetaVariant::Endo)
            .unwrap()
            .add(&theta(&g, 2, ThetaVariant::Endo).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn theta_endo_is_multiplicative() {
        let r = Ring::poly();
        let f = x_n(&r, 2).add(&m2(&r).scale(&r.int(3)).unwrap()).unwrap();
        let g = crate::pcat::generators::braiding(&r, 1, 1);
        for j in 1..=2 {
            let lhs = theta(&f.compose(&g).unwrap(), j, ThetaVariant::Endo).unwrap();
            let rhs = theta(&f, j, ThetaVariant::Endo)
                .unwrap()
                .compose(&theta(&g, j, ThetaVariant::Endo).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn theta_of_mu_merges_new_strand() {
        let r = Ring::poly();
        let got = theta_legs(&crate::pcat::generators::mu(&r, 2), 2, 1).unwrap();
        // mu_3 with strands 1 and 3 merged.
        let labels = [0, 1, 0, 0, 1, 0, 0, 1, 0];
        assert_eq!(got, Morphism::from_diagram(&r, PartitionDiagram::from_labels(6, 3, &labels)));
    }

    #[test]
    fn traces_are_falling_factorials() {
        let r = Ring::poly();
        for n in 0..=5 {
            let expected = RingElement::Poly(falling_factorial(n));
            assert_eq!(trace_x(&r, n).unwrap(), expected, "n = {n}");
        }
        assert!(trace_x(&r, 9).unwrap_err().is_cap());
    }
}
