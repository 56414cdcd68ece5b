//! Dense exact linear algebra over a field ring.
//!
//! Matrices are row-major `Vec<Vec<RingElement>>`. Non-field polynomial
//! rings are handled by passing through the fraction field.

use crate::coeff::{Ring, RingElement};
use crate::error::{Error, Result};

pub type Matrix = Vec<Vec<RingElement>>;

fn require_field(ring: &Ring) -> Result<()> {
    if ring.is_field() {
        Ok(())
    } else {
        Err(Error::FieldRequired(ring.tag().to_string()))
    }
}

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref(ring: &Ring, m: &mut Matrix) -> Result<Vec<usize>> {
    require_field(ring)?;
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv()?;
        if !inv.is_one() {
            for x in m[row][col..].iter_mut() {
                *x = &*x * &inv;
            }
        }
        let pivot_row = m[row].clone();
        for (r, other) in m.iter_mut().enumerate() {
            if r == row || other[col].is_zero() {
                continue;
            }
            let factor = other[col].clone();
            for (x, p) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    Ok(pivots)
}

pub fn rank(ring: &Ring, m: &Matrix) -> Result<usize> {
    let (ring, mut m) = to_field(ring, m)?;
    Ok(rref(&ring, &mut m)?.len())
}

/// Basis of `{x : m x = 0}`, one vector per free column.
pub fn kernel(ring: &Ring, m: &Matrix, cols: usize) -> Result<Vec<Vec<RingElement>>> {
    require_field(ring)?;
    let mut r = m.clone();
    let pivots = rref(ring, &mut r)?;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ring.zero(); cols];
        v[free] = ring.one();
        for (row, &pc) in pivots.iter().enumerate() {
            v[pc] = -&r[row][free];
        }
        basis.push(v);
    }
    Ok(basis)
}

/// Solves `sum_i x_i rows[i] = v`, returning `None` if `v` is outside the span.
pub fn solve_in_span(ring: &Ring, rows: &[Vec<RingElement>], v: &[RingElement]) -> Result<Option<Vec<RingElement>>> {
    require_field(ring)?;
    // Columns are the given vectors; augment with v.
    let k = rows.len();
    let mut m: Matrix = (0..v.len())
        .map(|j| {
            let mut row: Vec<RingElement> = rows.iter().map(|r| r[j].clone()).collect();
            row.push(v[j].clone());
            row
        })
        .collect();
    let pivots = rref(ring, &mut m)?;
    if pivots.last() == Some(&k) {
        return Ok(None);
    }
    let mut x = vec![ring.zero(); k];
    for (row, &pc) in pivots.iter().enumerate() {
        x[pc] = m[row][k].clone();
    }
    Ok(Some(x))
}

pub fn determinant(ring: &Ring, m: &Matrix) -> Result<RingElement> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidInput("determinant of a non-square matrix".into()));
    }
    let (field, mut a) = to_field(ring, m)?;
    let mut det = field.one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(ring.zero());
        };
        if p != col {
            a.swap(p, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].inv()?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            let (top, bottom) = a.split_at_mut(r);
            for (x, p) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *x = &*x - &(&factor * p);
            }
        }
    }
    from_field(ring, det)
}

/// A growing set of vectors kept in echelon form, for repeated span tests.
/// Each stored row remembers how it was built from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon {
    ring: Ring,
    rows: Vec<(usize, Vec<RingElement>, Vec<RingElement>)>,
    inserted: usize,
}

impl Echelon {
    pub fn new(ring: &Ring) -> Result<Self> {
        require_field(ring)?;
        Ok(Echelon {
            ring: ring.clone(),
            rows: Vec::new(),
            inserted: 0,
        })
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// The reduced rows, each with a leading one at its pivot.
    pub fn basis(&self) -> impl Iterator<Item = &Vec<RingElement>> {
        self.rows.iter().map(|(_, v, _)| v)
    }

    /// `v` minus its projection onto the span, and the combination of
    /// inserted vectors that was subtracted.
    pub fn reduce(&self, v: &[RingElement]) -> (Vec<RingElement>, Vec<RingElement>) {
        let mut v = v.to_vec();
        let mut combo = vec![self.ring.zero(); self.inserted];
        for (p, row, how) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&f * r);
                }
            }
            for (c, h) in combo.iter_mut().zip(how) {
                if !h.is_zero() {
                    *c = &*c + &(&f * h);
                }
            }
        }
        (v, combo)
    }

    pub fn contains(&self, v: &[RingElement]) -> bool {
        self.reduce(v).0.iter().all(RingElement::is_zero)
    }

    /// Adds `v`; returns `Err(combo)` with `v = sum combo_i inserted_i` when
    /// `v` is already in the span.
    pub fn insert(&mut self, v: &[RingElement]) -> std::result::Result<(), Vec<RingElement>> {
        let (mut r, mut combo) = self.reduce(v);
        let Some(p) = r.iter().position(|x| !x.is_zero()) else {
            return Err(combo);
        };
        for (_, _, how) in self.rows.iter_mut() {
            how.push(self.ring.zero());
        }
        // r = v - combo, so the new row is (v - combo) / r[p].
        let inv = r[p].inv().expect("nonzero in a field");
        for x in r.iter_mut() {
            *x = &*x * &inv;
        }
        for c in combo.iter_mut() {
            *c = -&(&*c * &inv);
        }
        combo.push(inv);
        self.inserted += 1;
        self.rows.push((p, r, combo));
        Ok(())
    }
}

fn to_field(ring: &Ring, m: &Matrix) -> Result<(Ring, Matrix)> {
    let field = ring.fraction_field();
    require_field(&field)?;
    let m = m
        .iter()
        .map(|r| r.iter().map(|x| x.coerce(field.tag())).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Matrix, _>>()?;
    Ok((field, m))
}

fn from_field(ring: &Ring, x: RingElement) -> Result<RingElement> {
    if &x.tag() == ring.tag() {
        return Ok(x);
    }
    match &x {
        RingElement::RatFun(r) if r.denom().is_one() => Ok(RingElement::Poly(r.numer().clone())),
        _ => Err(Error::InvalidInput(format!("{x} does not lie in {}", ring.tag()))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(ring: &Ring, rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| ring.int(x)).collect()).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let r = Ring::rational_int(0);
        let m = q(&r, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(rank(&r, &m).unwrap(), 2);
        let k = kernel(&r, &m, 3).unwrap();
        assert_eq!(k.len(), 1);
        for row in &m {
            let dot = row.iter().zip(&k[0]).fold(r.zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn polynomial_determinant() {
        let r = Ring::poly();
        let t = r.param().clone();
        let m = vec![vec![t.clone(), t.clone()], vec![t.clone(), &t * &t]];
        assert_eq!(determinant(&r, &m).unwrap().render(), "t^3 - t^2");
    }

    #[test]
    fn span_membership() {
        let r = Ring::rational_int(0);
        let rows = q(&r, &[&[1, 0, 1], &[0, 1, 1]]);
        let x = solve_in_span(&r, &rows, &q(&r, &[&[2, 3, 5]])[0]).unwrap().unwrap();
        assert_eq!(x, vec![r.int(2), r.int(3)]);
        assert!(solve_in_span(&r, &rows, &q(&r, &[&[0, 0, 1]])[0]).unwrap().is_none());
    }

    #[test]
    fn echelon_tracks_combinations() {
        let r = Ring::rational_int(0);
        let rows = q(&r, &[&[1, 1, 0], &[0, 2, 1], &[2, 6, 2]]);
        let mut e = Echelon::new(&r).unwrap();
        assert!(e.insert(&rows[0]).is_ok());
        assert!(e.insert(&rows[1]).is_ok());
        let combo = e.insert(&rows[2]).unwrap_err();
        assert_eq!(combo, vec![r.int(2), r.int(2)]);
        assert_eq!(e.rank(), 2);
        assert!(!e.contains(&q(&r, &[&[0, 0, 1]])[0]));
    }

    #[test]
    fn polynomial_ring_needs_fraction_field_for_kernels() {
        assert!(kernel(&Ring::poly(), &vec![], 0).is_err());
    }
}
