use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::coeff::{Ring, RingElement};
use crate::error::{Error, Result};
use crate::linalg::{kernel, Echelon, Matrix};
use crate::pcat::{generators, hom_basis_capped, Morphism, PartitionDiagram};
use crate::tl::{tl_basis, TlMorphism};

/// Largest `n` for `End([A_n])`.
pub const PARTITION_END_CAP: usize = 3;
/// Largest strand count for Temperley-Lieb endomorphism algebras.
pub const TL_END_CAP: usize = 6;

/// Up to this dimension every basis triple is checked for associativity.
const EXHAUSTIVE_ASSOCIATIVITY_DIM: usize = 250;
const ASSOCIATIVITY_SAMPLES: usize = 2000;

pub type Vector = Vec<RingElement>;

/// An associative algebra with a basis and structure constants.
#[derive(Clone, Debug)]
pub struct FinDimAlgebra {
    ring: Ring,
    labels: Vec<String>,
    diagrams: Option<(usize, Vec<PartitionDiagram>, FxHashMap<PartitionDiagram, usize>)>,
    /// `table[i * dim + j]` lists the coordinates of `b_i b_j`.
    table: Vec<Vec<(usize, RingElement)>>,
    unit: Vector,
}

impl FinDimAlgebra {
    /// Builds an algebra from structure constants, checking the unit and
    /// associativity (on every basis triple up to dimension 250).
    pub fn new(
        ring: &Ring,
        labels: Vec<String>,
        table: Vec<Vec<(usize, RingElement)>>,
        unit: Vector,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim || unit.len() != dim {
            return Err(Error::SizeMismatch {
                expected: format!("{dim}x{dim} table and unit of length {dim}"),
                found: format!("{} entries and unit of length {}", table.len(), unit.len()),
            });
        }
        let a = FinDimAlgebra {
            ring: ring.clone(),
            labels,
            diagrams: None,
            table,
            unit,
        };
        a.check_axioms()?;
        Ok(a)
    }

    fn from_diagrams(ring: &Ring, n: usize, basis: Vec<PartitionDiagram>) -> Result<Self> {
        if !ring.is_field() {
            return Err(Error::FieldRequired(ring.tag().to_string()));
        }
        let index: FxHashMap<PartitionDiagram, usize> =
            basis.iter().cloned().enumerate().map(|(i, d)| (d, i)).collect();
        let one = ring.one();
        let table = basis
            .par_iter()
            .flat_map_iter(|bi| {
                basis.iter().map(|bj| {
                    let (d, loops) = bi.compose(bj);
                    let c = ring.scale_by_param_pow(&one, loops);
                    if c.is_zero() {
                        vec![]
                    } else {
                        vec![(index[&d], c)]
                    }
                })
            })
            .collect();
        let mut unit = vec![ring.zero(); basis.len()];
        unit[index[&generators::identity_diagram(n)]] = ring.one();
        let a = FinDimAlgebra {
            ring: ring.clone(),
            labels: basis.iter().map(|d| d.to_string()).collect(),
            diagrams: Some((n, basis, index)),
            table,
            unit,
        };
        a.check_axioms()?;
        Ok(a)
    }

    /// `End([A_n])` over a field; `Qt` is replaced by `Qratfun`.
    pub fn partition_end(ring: &Ring, n: usize) -> Result<Self> {
        if n > PARTITION_END_CAP {
            return Err(Error::cap("n", n, PARTITION_END_CAP));
        }
        Self::from_diagrams(&ring.fraction_field(), n, hom_basis_capped(n, n, 2 * n)?)
    }

    /// The Temperley-Lieb algebra on `n` strands.
    pub fn tl_end(ring: &Ring, n: usize) -> Result<Self> {
        if n > TL_END_CAP {
            return Err(Error::cap("n", n, TL_END_CAP));
        }
        Self::from_diagrams(&ring.fraction_field(), n, tl_basis(n, n)?)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn zero(&self) -> Vector {
        vec![self.ring.zero(); self.dim()]
    }

    pub fn basis_vector(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = self.ring.one();
        v
    }

    pub fn structure(&self, i: usize, j: usize) -> &[(usize, RingElement)] {
        &self.table[i * self.dim() + j]
    }

    pub fn mul(&self, x: &[RingElement], y: &[RingElement]) -> Vector {
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in y.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.structure(i, j) {
                    out[*k] = &out[*k] + &(&ab * c);
                }
            }
        }
        out
    }

    pub fn add(&self, x: &[RingElement], y: &[RingElement]) -> Vector {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    pub fn sub(&self, x: &[RingElement], y: &[RingElement]) -> Vector {
        x.iter().zip(y).map(|(a, b)| a - b).collect()
    }

    pub fn scale(&self, c: &RingElement, x: &[RingElement]) -> Vector {
        x.iter().map(|a| c * a).collect()
    }

    pub fn is_zero(x: &[RingElement]) -> bool {
        x.iter().all(RingElement::is_zero)
    }

    fn check_axioms(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            let b = self.basis_vector(i);
            if self.mul(&self.unit, &b) != b || self.mul(&b, &self.unit) != b {
                return Err(Error::InvalidInput(format!("unit fails on {}", self.labels[i])));
            }
        }
        if dim == 0 {
            return Ok(());
        }
        let triple = |i: usize, j: usize, k: usize| {
            let mut left: FxHashMap<usize, RingElement> = FxHashMap::default();
            for (m, c) in self.structure(i, j) {
                for (l, e) in self.structure(*m, k) {
                    let v = left.entry(*l).or_insert_with(|| self.ring.zero());
                    *v = &*v + &(c * e);
                }
            }
            let mut right: FxHashMap<usize, RingElement> = FxHashMap::default();
            for (m, c) in self.structure(j, k) {
                for (l, e) in self.structure(i, *m) {
                    let v = right.entry(*l).or_insert_with(|| self.ring.zero());
                    *v = &*v + &(c * e);
                }
            }
            left.retain(|_, v| !v.is_zero());
            right.retain(|_, v| !v.is_zero());
            left == right
        };
        let failure = if dim <= EXHAUSTIVE_ASSOCIATIVITY_DIM {
            (0..dim * dim).into_par_iter().find_map_first(|ij| {
                let (i, j) = (ij / dim, ij % dim);
                (0..dim).find(|&k| !triple(i, j, k)).map(|k| (i, j, k))
            })
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0xa55_0c1a);
            (0..ASSOCIATIVITY_SAMPLES)
                .map(|_| (rng.gen_range(0..dim), rng.gen_range(0..dim), rng.gen_range(0..dim)))
                .find(|&(i, j, k)| !triple(i, j, k))
        };
        match failure {
            Some((i, j, k)) => Err(Error::InvalidInput(format!(
                "not associative on ({}, {}, {})",
                self.labels[i], self.labels[j], self.labels[k]
            ))),
            None => Ok(()),
        }
    }

    /// Trace of left multiplication by each basis element.
    fn regular_traces(&self) -> Vector {
        let dim = self.dim();
        (0..dim)
            .map(|m| {
                (0..dim).fold(self.ring.zero(), |acc, l| {
                    self.structure(m, l)
                        .iter()
                        .filter(|(k, _)| *k == l)
                        .fold(acc, |acc, (_, c)| &acc + c)
                })
            })
            .collect()
    }

    /// Kernel of the trace form `(x, y) -> Tr(L_{xy})`, which is the Jacobson
    /// radical in characteristic zero. Returned in reduced echelon form.
    pub fn radical(&self) -> Result<Vec<Vector>> {
        let tau = self.regular_traces();
        let dim = self.dim();
        let form: Matrix = (0..dim)
            .into_par_iter()
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        self.structure(i, j)
                            .iter()
                            .fold(self.ring.zero(), |acc, (m, c)| &acc + &(c * &tau[*m]))
                    })
                    .collect()
            })
            .collect();
        let mut e = Echelon::new(&self.ring)?;
        for v in kernel(&self.ring, &form, dim)? {
            let _ = e.insert(&v);
        }
        Ok(e.basis().cloned().collect())
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical()?.is_empty())
    }

    pub fn is_idempotent(&self, e: &[RingElement]) -> bool {
        self.mul(e, e) == e
    }

    /// A basis of `eAe`, in reduced echelon form.
    pub fn corner(&self, e: &[RingElement]) -> Result<Vec<Vector>> {
        if !self.is_idempotent(e) {
            return Err(Error::NotIdempotent);
        }
        let mut span = Echelon::new(&self.ring)?;
        let left: Vec<Vector> = (0..self.dim())
            .into_par_iter()
            .map(|i| {
                let eb = self.mul(e, &self.basis_vector(i));
                self.mul(&eb, e)
            })
            .collect();
        for v in &left {
            let _ = span.insert(v);
        }
        Ok(span.basis().cloned().collect())
    }

    /// `eAe` as an algebra in its own right, with unit `e`.
    pub fn corner_algebra(&self, e: &[RingElement]) -> Result<FinDimAlgebra> {
        let basis = self.corner(e)?;
        let pivots: Vec<usize> = basis
            .iter()
            .map(|v| v.iter().position(|x| !x.is_zero()).expect("nonzero row"))
            .collect();
        let k = basis.len();
        // Reduced rows make coordinates readable at the pivot columns.
        let coords = |v: &Vector| -> Vec<(usize, RingElement)> {
            pivots
                .iter()
                .enumerate()
                .filter(|(_, &p)| !v[p].is_zero())
                .map(|(i, &p)| (i, v[p].clone()))
                .collect()
        };
        let table = (0..k * k)
            .into_par_iter()
            .map(|ij| coords(&self.mul(&basis[ij / k], &basis[ij % k])))
            .collect();
        let unit = {
            let c = coords(&e.to_vec());
            let mut u = vec![self.ring.zero(); k];
            for (i, x) in c {
                u[i] = x;
            }
            u
        };
        let labels = (0..k).map(|i| format!("u{i}")).collect();
        FinDimAlgebra::new(&self.ring, labels, table, unit)
    }

    /// `x` as a morphism, for algebras built from diagrams.
    pub fn to_morphism(&self, x: &[RingElement]) -> Result<Morphism> {
        let (n, basis, _) = self
            .diagrams
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("algebra has no diagram basis".into()))?;
        Morphism::from_terms(
            &self.ring,
            *n,
            *n,
            basis.iter().cloned().zip(x.iter().cloned()).filter(|(_, c)| !c.is_zero()),
        )
    }

    pub fn from_morphism(&self, m: &Morphism) -> Result<Vector> {
        let (n, _, index) = self
            .diagrams
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("algebra has no diagram basis".into()))?;
        if m.source() != *n || m.target() != *n {
            return Err(Error::SizeMismatch {
                expected: format!("{n}->{n}"),
                found: format!("{}->{}", m.source(), m.target()),
            });
        }
        let m = m.coerce(&self.ring)?;
        let mut v = self.zero();
        for (d, c) in m.iter() {
            let i = index
                .get(d)
                .ok_or_else(|| Error::InvalidDiagram(format!("{d} is not in the basis")))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn tl_element(&self, x: &[RingElement]) -> Result<TlMorphism> {
        TlMorphism::new(self.to_morphism(x)?)
    }

    /// `{"ring":..,"basis":[..],"unit":[..],"table":[[i,j,k,"c"],..]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let (ring, t, minpoly) = crate::pcat::json::ring_fields(&self.ring);
        let dim = self.dim();
        let table: Vec<serde_json::Value> = (0..dim * dim)
            .flat_map(|ij| {
                self.table[ij]
                    .iter()
                    .map(move |(k, c)| serde_json::json!([ij / dim, ij % dim, k, c.render()]))
            })
            .collect();
        serde_json::json!({
            "ring": ring,
            "t": t,
            "minpoly": minpoly,
            "basis": self.labels,
            "unit": self.unit.iter().map(RingElement::render).collect::<Vec<_>>(),
            "table": table,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e_vec(a: &FinDimAlgebra) -> Vector {
        let e = PartitionDiagram::from_labels(1, 1, &[0, 1]);
        a.from_morphism(&Morphism::from_diagram(a.ring(), e)).unwrap()
    }

    #[test]
    fn rejects_non_associative_tables() {
        // Basis 1, a, b with a*a = b, b*a = a and every other product of a, b zero.
        let r = Ring::rational_int(0);
        let one = || r.one();
        let mut table = vec![Vec::new(); 9];
        for i in 0..3 {
            table[i] = vec![(i, one())];
            table[i * 3] = vec![(i, one())];
        }
        table[4] = vec![(2, one())];
        table[7] = vec![(1, one())];
        let labels = vec!["1".into(), "a".into(), "b".into()];
        let unit = vec![one(), r.zero(), r.zero()];
        let err = FinDimAlgebra::new(&r, labels, table, unit).unwrap_err();
        assert!(err.to_string().contains("not associative on (a, a, a)"), "{err}");
    }

    #[test]
    fn end_of_a_point() {
        let a = FinDimAlgebra::partition_end(&Ring::rational_int(1), 1).unwrap();
        assert_eq!(a.dim(), 2);
        assert!(a.is_semisimple().unwrap());
        let a0 = FinDimAlgebra::partition_end(&Ring::rational_int(0), 1).unwrap();
        let e = e_vec(&a0);
        assert!(FinDimAlgebra::is_zero(&a0.mul(&e, &e)));
        assert_eq!(a0.radical().unwrap(), vec![e]);
        assert!(FinDimAlgebra::partition_end(&Ring::poly(), 1).unwrap().is_semisimple().unwrap());
    }

    #[test]
    fn sizes_and_caps() {
        let r = Ring::rational_int(2);
        assert_eq!(FinDimAlgebra::partition_end(&r, 2).unwrap().dim(), 15);
        assert!(FinDimAlgebra::partition_end(&r, 4).unwrap_err().is_cap());
        let tl = FinDimAlgebra::tl_end(&Ring::ratfun(), 2).unwrap();
        assert_eq!(tl.dim(), 2);
        assert!(tl.is_semisimple().unwrap());
        assert_eq!(FinDimAlgebra::tl_end(&Ring::ratfun(), 4).unwrap().dim(), 14);
    }

    #[test]
    fn radical_is_a_nilpotent_ideal() {
        for d in 0..=2 {
            let a = FinDimAlgebra::partition_end(&Ring::rational_int(d), 2).unwrap();
            let rad = a.radical().unwrap();
            let mut span = Echelon::new(a.ring()).unwrap();
            for r in &rad {
                let _ = span.insert(r);
            }
            for r in &rad {
                for i in 0..a.dim() {
                    let b = a.basis_vector(i);
                    assert!(span.contains(&a.mul(r, &b)));
                    assert!(span.contains(&a.mul(&b, r)));
                }
            }
            let mut power = rad.clone();
            for _ in 0..a.dim() {
                if power.is_empty() {
                    break;
                }
                let mut next = Echelon::new(a.ring()).unwrap();
                for p in &power {
                    for r in &rad {
                        let _ = next.insert(&a.mul(p, r));
                    }
                }
                power = next.basis().cloned().collect();
            }
            assert!(power.is_empty(), "d = {d}");
        }
    }

    #[test]
    fn corner_of_the_unit_is_everything() {
        let a = FinDimAlgebra::partition_end(&Ring::rational_int(1), 1).unwrap();
        let c = a.corner_algebra(a.unit()).unwrap();
        assert_eq!(c.dim(), 2);
        let e = e_vec(&a);
        assert!(a.corner(&a.scale(&a.ring().int(2), &e)).is_err());
        assert_eq!(a.corner_algebra(&e).unwrap().dim(), 1);
    }

    #[test]
    fn json_dump_lists_structure_constants() {
        let a = FinDimAlgebra::partition_end(&Ring::rational_int(0), 1).unwrap();
        let v = a.to_json();
        assert_eq!(v["basis"].as_array().unwrap().len(), 2);
        assert_eq!(v["table"].as_array().unwrap().len(), 3);
        assert_eq!(v["t"], "0");
    }
}
