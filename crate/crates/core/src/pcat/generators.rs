//! The structural morphisms of the category.

use super::diagram::PartitionDiagram;
use super::morphism::Morphism;
use crate::coeff::Ring;
use crate::error::{Error, Result};

fn diagram(source: usize, target: usize, labels: Vec<usize>) -> PartitionDiagram {
    PartitionDiagram::from_labels(source, target, &labels)
}

/// Labels pairing bottom point `i` with top point `sigma[i]`.
fn pairing_labels(sigma: &[usize]) -> Vec<usize> {
    let n = sigma.len();
    let mut labels = vec![0; 2 * n];
    for (i, &s) in sigma.iter().enumerate() {
        labels[i] = i;
        labels[n + s] = i;
    }
    labels
}

pub fn identity_diagram(n: usize) -> PartitionDiagram {
    diagram(n, n, pairing_labels(&(0..n).collect::<Vec<_>>()))
}

pub fn identity(ring: &Ring, n: usize) -> Morphism {
    Morphism::from_diagram(ring, identity_diagram(n))
}

/// Diagram of the permutation sending strand `i` to position `sigma[i]`.
pub fn permutation_diagram(sigma: &[usize]) -> Result<PartitionDiagram> {
    let n = sigma.len();
    let mut seen = vec![false; n];
    for &s in sigma {
        if s >= n || std::mem::replace(&mut seen[s], true) {
            return Err(Error::InvalidInput(format!("{sigma:?} is not a permutation")));
        }
    }
    Ok(diagram(n, n, pairing_labels(sigma)))
}

pub fn permutation(ring: &Ring, sigma: &[usize]) -> Result<Morphism> {
    Ok(Morphism::from_diagram(ring, permutation_diagram(sigma)?))
}

/// The symmetry `[A_a] ⊗ [A_b] -> [A_b] ⊗ [A_a]`.
pub fn braiding(ring: &Ring, a: usize, b: usize) -> Morphism {
    let sigma: Vec<usize> = (0..a).map(|i| b + i).chain(0..b).collect();
    Morphism::from_diagram(ring, diagram(a + b, a + b, pairing_labels(&sigma)))
}

/// Multiplication `[A_n] ⊗ [A_n] -> [A_n]`, one part `{i, n+i, i'}` per strand.
pub fn mu(ring: &Ring, n: usize) -> Morphism {
    let labels = (0..n).chain(0..n).chain(0..n).collect();
    Morphism::from_diagram(ring, diagram(2 * n, n, labels))
}

/// Unit `1 -> [A_n]`: singleton top points.
pub fn unit(ring: &Ring, n: usize) -> Morphism {
    Morphism::from_diagram(ring, diagram(0, n, (0..n).collect()))
}

pub fn counit(ring: &Ring, n: usize) -> Morphism {
    unit(ring, n).dual()
}

/// Evaluation `[A_n] ⊗ [A_n] -> 1` pairing `i` with `n+i`.
pub fn ev(ring: &Ring, n: usize) -> Morphism {
    let labels = (0..n).chain(0..n).collect();
    Morphism::from_diagram(ring, diagram(2 * n, 0, labels))
}

/// Coevaluation `1 -> [A_n] ⊗ [A_n]`.
pub fn coev(ring: &Ring, n: usize) -> Morphism {
    ev(ring, n).dual()
}
