//! Quantum integers as polynomials in `d = q + 1/q`, and the minimal
//! polynomial of `d` for the smallest `l` with `[l+1] = 0`.

use super::{CoeffError, Poly};

pub const MAX_CHEBYSHEV_L: usize = 24;

/// `[n]` as a polynomial in `d`: `[0] = 0`, `[1] = 1`, `[k+1] = d[k] - [k-1]`.
pub fn quantum_integer_poly(n: usize) -> Poly {
    let mut prev = Poly::zero();
    let mut cur = Poly::one();
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &(&cur * &Poly::x()) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Lucas-type polynomial with `V_k(q + 1/q) = q^k + q^{-k}`.
fn lucas_poly(k: usize) -> Poly {
    let mut prev = Poly::from_int(2);
    let mut cur = Poly::x();
    if k == 0 {
        return prev;
    }
    for _ in 1..k {
        let next = &(&cur * &Poly::x()) - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Minimal polynomial over `Q` of `d = q + 1/q` where `q` is a root of unity
/// of smallest order with `1 + q^2 + ... + q^{2l} = 0`.
///
/// The order of such a `q` is `l + 1` when `l + 1` is odd and `2(l + 1)`
/// otherwise, so `d = 2cos(2pi/(l+1))` or `2cos(pi/(l+1))` respectively.
pub fn chebyshev_minpoly(l: usize) -> Result<Poly, CoeffError> {
    if l == 0 || l > MAX_CHEBYSHEV_L {
        return Err(CoeffError::OutOfRange(format!(
            "l = {l} outside supported range 1..={MAX_CHEBYSHEV_L}"
        )));
    }
    // Strip from [l+1] every factor it shares with a smaller [k+1]; the
    // quantum integers are squarefree, so what remains has exactly the roots
    // with l_q = l.
    let mut m = quantum_integer_poly(l + 1).monic();
    for k in 1..l {
        let g = m.gcd(&quantum_integer_poly(k + 1));
        if !g.is_constant() {
            m = m.div_rem(&g).0;
        }
    }
    if (l + 1) % 2 == 1 {
        // Two Galois orbits survive; keep the one with q^{l+1} = 1.
        let target = &lucas_poly(l + 1) - &Poly::from_int(2);
        m = m.gcd(&target);
    }
    Ok(m.monic())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{Ring, RingElement};

    #[test]
    fn small_values() {
        assert_eq!(chebyshev_minpoly(1).unwrap(), Poly::x());
        assert_eq!(chebyshev_minpoly(2).unwrap(), Poly::from_ints(&[1, 1]));
        assert_eq!(chebyshev_minpoly(3).unwrap(), Poly::from_ints(&[-2, 0, 1]));
        assert!(chebyshev_minpoly(0).is_err());
        assert!(chebyshev_minpoly(25).is_err());
    }

    #[test]
    fn quantum_integers() {
        assert_eq!(quantum_integer_poly(2), Poly::x());
        assert_eq!(quantum_integer_poly(3), Poly::from_ints(&[-1, 0, 1]));
        assert_eq!(quantum_integer_poly(4), Poly::from_ints(&[0, -2, 0, 1]));
    }

    #[test]
    fn vanishing_pattern_all_l() {
        for l in 1..=MAX_CHEBYSHEV_L {
            let m = chebyshev_minpoly(l).unwrap();
            let ring = Ring::number_field(m).unwrap();
            let tag = ring.tag().clone();
            for k in 1..=l + 1 {
                let qk = RingElement::from_poly(&tag, quantum_integer_poly(k)).unwrap();
                assert_eq!(qk.is_zero(), k == l + 1, "l = {l}, k = {k}");
            }
        }
    }
}
