//! Partition diagrams and the category they span.
//!
//! Objects are the sets `[A_n]`, represented by `n`. A morphism
//! `[A_a] -> [A_b]` is a linear combination of set partitions of `a + b`
//! points; composition stacks diagrams and pays a factor of the parameter
//! for every component that lives only in the middle row.
//!
//! ```
//! use urep::coeff::Ring;
//! use urep::pcat::{generators, Morphism, PartitionDiagram};
//!
//! let ring = Ring::poly();
//! let e = Morphism::from_diagram(&ring, PartitionDiagram::from_labels(1, 1, &[0, 1]));
//! let ee = e.compose(&e).unwrap();
//! assert_eq!(ee, e.scale(ring.param()).unwrap());
//! assert_eq!(generators::identity(&ring, 2).trace().unwrap().render(), "t^2");
//! ```

mod diagram;
pub mod generators;
pub mod json;
mod morphism;

use rayon::prelude::*;

pub use diagram::{set_partitions, PartitionDiagram, SetPartitions};
pub use morphism::Morphism;

use crate::coeff::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Default bound on `a + b` for operations that enumerate a whole Hom space.
pub const DEFAULT_DENSE_CAP: usize = 10;

/// Every partition diagram `[A_a] -> [A_b]`, in restricted-growth order.
pub fn hom_basis(a: usize, b: usize) -> Result<Vec<PartitionDiagram>> {
    hom_basis_capped(a, b, DEFAULT_DENSE_CAP)
}

pub fn hom_basis_capped(a: usize, b: usize, cap: usize) -> Result<Vec<PartitionDiagram>> {
    if a + b > cap {
        return Err(Error::cap("a + b", a + b, cap));
    }
    Ok(set_partitions(a + b)
        .map(|labels| PartitionDiagram::from_canonical(a, b, labels))
        .collect())
}

/// Exponent of the parameter in `trace(g ∘ f)` for diagrams.
fn closed_exponent(g: &PartitionDiagram, f: &PartitionDiagram) -> u32 {
    let (d, loops) = g.compose(f);
    loops + d.closure_components()
}

/// `G[i][j] = trace(b_j^* ∘ b_i)` over the diagram basis of `Hom(a, b)`.
pub fn gram_matrix(ring: &Ring, a: usize, b: usize) -> Result<Matrix> {
    gram_matrix_capped(ring, a, b, DEFAULT_DENSE_CAP)
}

pub fn gram_matrix_capped(ring: &Ring, a: usize, b: usize, cap: usize) -> Result<Matrix> {
    let basis = hom_basis_capped(a, b, cap)?;
    let duals: Vec<PartitionDiagram> = basis.iter().map(PartitionDiagram::dual).collect();
    let one = ring.one();
    Ok(basis
        .par_iter()
        .map(|f| {
            duals
                .iter()
                .map(|g| ring.scale_by_param_pow(&one, closed_exponent(g, f)))
                .collect()
        })
        .collect())
}

/// Whether `trace(g ∘ f)` vanishes for every diagram `g` in `Hom(b, a)`.
pub fn is_negligible(f: &Morphism) -> Result<bool> {
    is_negligible_capped(f, DEFAULT_DENSE_CAP)
}

pub fn is_negligible_capped(f: &Morphism, cap: usize) -> Result<bool> {
    let basis = hom_basis_capped(f.target(), f.source(), cap)?;
    let ring = f.ring();
    let terms: Vec<(&PartitionDiagram, &RingElement)> = f.iter().collect();
    Ok(basis.par_iter().all(|g| {
        terms
            .iter()
            .fold(ring.zero(), |acc, (d, c)| {
                &acc + &ring.scale_by_param_pow(c, closed_exponent(g, d))
            })
            .is_zero()
    }))
}
