use proptest::prelude::*;

use urep::coeff::{chebyshev_minpoly, Poly, Ring, RingElement};
use urep::pcat::json::{read_morphism, write_morphism};
use urep::pcat::{Morphism, PartitionDiagram};
use urep::tl::{self, TlMorphism};

fn rings() -> Vec<Ring> {
    vec![
        Ring::rational_int(3),
        Ring::poly(),
        Ring::ratfun(),
        Ring::number_field(chebyshev_minpoly(4).unwrap()).unwrap(),
    ]
}

fn poly_in(ring: &Ring, coeffs: &[i64]) -> RingElement {
    let p = Poly::from_ints(coeffs);
    RingElement::from_poly(ring.tag(), p.clone()).unwrap_or_else(|| ring.rat(p.eval(ring.t_value().unwrap())))
}

/// `(p / k) / q` with `q` only used where it is invertible.
fn element(ring: &Ring, p: &[i64], k: i64, q: &[i64]) -> RingElement {
    let mut x = poly_in(ring, p).checked_div(&ring.int(k)).unwrap();
    if ring.is_field() {
        let q = poly_in(ring, q);
        if !q.is_zero() {
            x = x.checked_div(&q).unwrap();
        }
    }
    x
}

fn coeffs() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=4, 0..4)
}

fn scalar() -> impl Strategy<Value = (Vec<i64>, i64, Vec<i64>)> {
    (coeffs(), 1i64..=5, coeffs())
}

fn diagram(a: usize, b: usize) -> impl Strategy<Value = PartitionDiagram> {
    let n = a + b;
    prop::collection::vec(0..n.max(1), n).prop_map(move |labels| PartitionDiagram::from_labels(a, b, &labels))
}

fn morphism(a: usize, b: usize) -> impl Strategy<Value = Morphism> {
    prop::collection::vec((diagram(a, b), -3i64..=3, 0u32..3), 0..4).prop_map(move |terms| {
        let ring = Ring::poly();
        let terms: Vec<_> = terms
            .into_iter()
            .map(|(d, c, k)| (d, ring.param().pow(k).checked_mul(&ring.int(c)).unwrap()))
            .collect();
        Morphism::from_terms(&ring, a, b, terms).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(x in scalar(), y in scalar(), z in scalar()) {
        for ring in rings() {
            let (x, y, z) = (element(&ring, &x.0, x.1, &x.2), element(&ring, &y.0, y.1, &y.2), element(&ring, &z.0, z.1, &z.2));
            let add = |a: &RingElement, b: &RingElement| a.checked_add(b).unwrap();
            let mul = |a: &RingElement, b: &RingElement| a.checked_mul(b).unwrap();
            prop_assert_eq!(add(&x, &y), add(&y, &x));
            prop_assert_eq!(mul(&x, &y), mul(&y, &x));
            prop_assert_eq!(add(&add(&x, &y), &z), add(&x, &add(&y, &z)));
            prop_assert_eq!(mul(&mul(&x, &y), &z), mul(&x, &mul(&y, &z)));
            prop_assert_eq!(mul(&x, &add(&y, &z)), add(&mul(&x, &y), &mul(&x, &z)));
            prop_assert!(add(&x, &x.checked_neg()).is_zero());
            prop_assert_eq!(mul(&x, &ring.one()), x.clone());
            if ring.is_field() && !x.is_zero() {
                prop_assert!(mul(&x, &x.inv().unwrap()).is_one());
            }
        }
    }

    #[test]
    fn rendered_scalars_parse_back(x in scalar()) {
        for ring in rings() {
            let x = element(&ring, &x.0, x.1, &x.2);
            prop_assert_eq!(ring.parse(&x.render()).unwrap(), x);
        }
    }

    #[test]
    fn composition_is_associative(f in diagram(2, 3), g in diagram(3, 1), h in diagram(1, 2)) {
        let (gf, l1) = g.compose(&f);
        let (hg, l2) = h.compose(&g);
        let (x, l3) = h.compose(&gf);
        let (y, l4) = hg.compose(&f);
        prop_assert_eq!(x, y);
        prop_assert_eq!(l1 + l3, l2 + l4);
    }

    #[test]
    fn interchange_law(f1 in morphism(1, 2), g1 in morphism(2, 1), f2 in morphism(2, 1), g2 in morphism(1, 2)) {
        let lhs = g1.tensor(&g2).unwrap().compose(&f1.tensor(&f2).unwrap()).unwrap();
        let rhs = g1.compose(&f1).unwrap().tensor(&g2.compose(&f2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn linear_composition_is_associative(f in morphism(2, 1), g in morphism(1, 3), h in morphism(3, 0)) {
        let lhs = h.compose(&g).unwrap().compose(&f).unwrap();
        let rhs = h.compose(&g.compose(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn trace_is_cyclic(f in morphism(2, 3), g in morphism(3, 2)) {
        prop_assert_eq!(g.compose(&f).unwrap().trace().unwrap(), f.compose(&g).unwrap().trace().unwrap());
    }

    #[test]
    fn dual_reverses_composition(f in morphism(2, 1), g in morphism(1, 3)) {
        prop_assert_eq!(g.compose(&f).unwrap().dual(), f.dual().compose(&g.dual()).unwrap());
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn json_round_trip(f in morphism(2, 2)) {
        let once = write_morphism(&f);
        let back = read_morphism(&once).unwrap();
        prop_assert_eq!(write_morphism(&back), once);
        prop_assert_eq!(back, f);
    }

    #[test]
    fn planar_diagrams_compose_to_planar(i in 0usize..14, j in 0usize..14) {
        let basis = tl::tl_basis(4, 4).unwrap();
        let ring = Ring::ratfun();
        let f = TlMorphism::new(Morphism::from_diagram(&ring, basis[i].clone())).unwrap();
        let g = TlMorphism::new(Morphism::from_diagram(&ring, basis[j].clone())).unwrap();
        let h = g.compose(&f).unwrap();
        for (d, _) in h.as_morphism().iter() {
            prop_assert!(d.is_planar_matching());
        }
    }
}

#[test]
fn parser_rejects_malformed_coefficients() {
    let ring = Ring::poly();
    for bad in ["t//2", "", "2*", "(t", "t^", "1/0", "x"] {
        assert!(ring.parse(bad).is_err(), "{bad}");
    }
}
