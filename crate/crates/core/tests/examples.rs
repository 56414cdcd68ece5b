//! Worked examples for each module, checked against hand computations and
//! small independent oracles.

use num_bigint::BigInt;
use num_rational::BigRational;

use urep::algkit::{decompose_power, identify_summand, FinDimAlgebra};
use urep::coeff::{chebyshev_minpoly, parse_coefficient, Poly, Ring, RingTag};
use urep::delta::{
    deligne_split_check, mobius_coarsening, theta, trace_x, verify_suite, x_n, x_nj, DeltaMaps, Family,
    ThetaVariant,
};
use urep::pcat::generators::{braiding, counit, identity, mu, unit};
use urep::pcat::{hom_basis, is_negligible, set_partitions, Morphism, PartitionDiagram};
use urep::tl::{self, TlBlock};
use urep::young::{self, MuEntry, TValue, YoungDiagram};

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn yd(parts: &[usize]) -> YoungDiagram {
    YoungDiagram::new(parts.to_vec()).unwrap()
}

fn diag(a: usize, b: usize, blocks: &[&[usize]]) -> PartitionDiagram {
    let blocks: Vec<Vec<usize>> = blocks.iter().map(|b| b.to_vec()).collect();
    PartitionDiagram::from_blocks(a, b, &blocks).unwrap()
}

fn e(ring: &Ring) -> Morphism {
    Morphism::from_diagram(ring, diag(1, 1, &[&[0], &[1]]))
}

fn m2(ring: &Ring) -> Morphism {
    Morphism::from_diagram(ring, diag(2, 2, &[&[0, 1, 2, 3]]))
}

/// Bell numbers from the triangle recurrence.
fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            next.push(next.last().unwrap() + x);
        }
        row = next;
    }
    row[0]
}

#[test]
fn coefficient_arithmetic() {
    let qr = Ring::rational_int(0);
    let sum = qr.rat(q(1, 2)).checked_add(&qr.rat(q(1, 3))).unwrap();
    assert_eq!(sum, qr.rat(q(5, 6)));
    let p = Ring::poly();
    let t = p.param().clone();
    let prod = t.checked_sub(&p.one()).unwrap().checked_mul(&t.checked_add(&p.one()).unwrap()).unwrap();
    assert_eq!(prod.render(), "t^2 - 1");
    let r = Ring::ratfun();
    assert_eq!(r.param().inv().unwrap().render(), "1/t");
}

#[test]
fn coefficient_parsing() {
    assert_eq!(parse_coefficient("3/2", &RingTag::Q).unwrap().as_rational(), Some(q(3, 2)));
    assert_eq!(parse_coefficient("t^2 - t", &RingTag::PolyT).unwrap().render(), "t^2 - t");
    assert!(parse_coefficient("1/0", &RingTag::Q).is_err());
}

#[test]
fn chebyshev_minimal_polynomials() {
    assert_eq!(chebyshev_minpoly(2).unwrap(), Poly::from_ints(&[1, 1]));
    assert_eq!(chebyshev_minpoly(1).unwrap(), Poly::from_ints(&[0, 1]));
    assert_eq!(chebyshev_minpoly(3).unwrap(), Poly::from_ints(&[-2, 0, 1]));
}

#[test]
fn generators_and_composition() {
    let r = Ring::poly();
    assert_eq!(identity(&r, 1), Morphism::from_diagram(&r, diag(1, 1, &[&[0, 1]])));
    assert_eq!(mu(&r, 1), Morphism::from_diagram(&r, diag(2, 1, &[&[0, 1, 2]])));
    assert_eq!(unit(&r, 1), Morphism::from_diagram(&r, diag(0, 1, &[&[0]])));
    assert_eq!(e(&r).compose(&e(&r)).unwrap(), e(&r).scale(r.param()).unwrap());
    for pi in hom_basis(2, 2).unwrap() {
        let pi = Morphism::from_diagram(&r, pi);
        assert_eq!(identity(&r, 2).compose(&pi).unwrap(), pi);
    }
    assert_eq!(m2(&r).compose(&m2(&r)).unwrap(), m2(&r));
    assert_eq!(identity(&r, 1).tensor(&identity(&r, 1)).unwrap(), identity(&r, 2));
    let em = e(&r).tensor(&m2(&r)).unwrap();
    assert_eq!(em, Morphism::from_diagram(&r, diag(3, 3, &[&[0], &[3], &[1, 2, 4, 5]])));
    assert_eq!(unit(&r, 1).dual(), counit(&r, 1));
}

#[test]
fn traces_and_bases() {
    let r = Ring::poly();
    let t = r.param().clone();
    assert_eq!(identity(&r, 1).trace().unwrap(), t);
    assert_eq!(identity(&r, 2).trace().unwrap(), t.pow(2));
    assert_eq!(m2(&r).trace().unwrap(), t);
    assert_eq!(e(&r).trace().unwrap(), t);
    assert_eq!(hom_basis(0, 0).unwrap().len(), 1);
    for (a, b) in [(1, 1), (2, 2), (1, 3), (0, 5), (3, 3)] {
        assert_eq!(hom_basis(a, b).unwrap().len(), bell(a + b));
    }
}

#[test]
fn negligibility_and_specialization() {
    let one = Ring::rational_int(1);
    assert!(is_negligible(&e(&one).sub(&identity(&one, 1)).unwrap()).unwrap());
    assert!(!is_negligible(&identity(&Ring::rational_int(2), 1)).unwrap());
    for d in 0..=3usize {
        let at_d = Ring::rational_int(d as i64);
        assert!(is_negligible(&x_n(&at_d, d + 1)).unwrap(), "d = {d}");
    }
    let r = Ring::poly();
    let te = e(&r).scale(r.param()).unwrap();
    assert_eq!(te.specialize(&q(3, 1)).unwrap(), e(&Ring::rational_int(3)).scale(&Ring::rational_int(3).int(3)).unwrap());
    let ee = e(&r).compose(&e(&r)).unwrap().specialize(&q(5, 1)).unwrap();
    let e5 = e(&r).specialize(&q(5, 1)).unwrap();
    assert_eq!(ee, e5.compose(&e5).unwrap());
    assert_eq!(ee, e5.scale(&Ring::rational_int(5).int(5)).unwrap());
    let rf = Ring::ratfun();
    let pole = rf.param().checked_sub(&rf.one()).unwrap().inv().unwrap();
    assert!(identity(&rf, 1).scale(&pole).unwrap().specialize(&q(1, 1)).is_err());
}

#[test]
fn mobius_values() {
    let big = |n: i64| BigInt::from(n);
    assert_eq!(mobius_coarsening(&[vec![1], vec![2], vec![3]]).unwrap(), big(1));
    assert_eq!(mobius_coarsening(&[vec![1, 2], vec![3]]).unwrap(), big(-1));
    assert_eq!(mobius_coarsening(&[vec![1, 2, 3]]).unwrap(), big(2));
    // Sum over the lattice of mu(P) is zero above one element.
    for n in 2..=5 {
        let total: BigInt = set_partitions(n)
            .map(|p| {
                let mut blocks: Vec<Vec<usize>> = Vec::new();
                for (i, &label) in p.iter().enumerate() {
                    let label = label as usize;
                    if blocks.len() <= label {
                        blocks.resize(label + 1, Vec::new());
                    }
                    blocks[label].push(i + 1);
                }
                mobius_coarsening(&blocks).unwrap()
            })
            .sum();
        assert_eq!(total, big(0), "n = {n}");
    }
}

#[test]
fn distinguished_idempotents() {
    let r = Ring::poly();
    assert_eq!(x_n(&r, 1), identity(&r, 1));
    let x2 = x_n(&r, 2);
    assert_eq!(x2, identity(&r, 2).sub(&m2(&r)).unwrap());
    assert_eq!(x2.compose(&x2).unwrap(), x2);
    assert_eq!(theta(&identity(&r, 1), 1, ThetaVariant::Endo).unwrap(), m2(&r));
    assert_eq!(x_nj(&r, 1, 1).unwrap(), m2(&r));
    let d = DeltaMaps::new(&r, 1);
    assert_eq!(d.mult(), &mu(&r, 1));
    assert_eq!(d.unit(), unit(&r, 1));
    assert_eq!(d.tau().compose(d.tau()).unwrap(), *d.tau());
}

#[test]
fn suites_and_traces() {
    for (family, n) in [(Family::XnIdempotent, 4), (Family::Ortho, 1), (Family::Deltalg, 2)] {
        assert!(verify_suite(family, n).unwrap().overall, "{family} n = {n}");
    }
    let r = Ring::poly();
    assert_eq!(x_n(&r, 2).add(&x_nj(&r, 1, 1).unwrap()).unwrap(), identity(&r, 2));
    let expect = ["t", "t^2 - t", "t^3 - 3*t^2 + 2*t"];
    for (n, want) in (1..=3).zip(expect) {
        assert_eq!(trace_x(&r, n).unwrap().render(), want);
    }
    // Falling factorial against direct evaluation at small integers.
    for n in 0..=6 {
        let tr = trace_x(&r, n).unwrap();
        for t0 in -3i64..=8 {
            let direct: i64 = (0..n as i64).map(|k| t0 - k).product();
            assert_eq!(tr.eval_at(&q(t0, 1)).unwrap(), q(direct, 1), "n = {n}, t = {t0}");
        }
    }
    assert!(trace_x(&Ring::rational_int(0), 1).unwrap().is_zero());
    assert!(trace_x(&Ring::rational_int(1), 2).unwrap().is_zero());
    for d in 0..=1 {
        assert!(deligne_split_check(d).unwrap().overall);
    }
}

#[test]
fn relative_dimension() {
    let r = Ring::poly();
    for n in 0..=4 {
        let t_minus_n = r.param().checked_sub(&r.int(n as i64)).unwrap();
        let closed = x_n(&r, n + 1).partial_trace().unwrap();
        assert_eq!(closed, x_n(&r, n).scale(&t_minus_n).unwrap(), "n = {n}");
    }
    // At t = 1 the new strand of x_2 closes to -x_1.
    let one = Ring::rational_int(1);
    assert_eq!(x_n(&one, 3).partial_trace().unwrap(), x_n(&one, 2).scale(&one.int(-1)).unwrap());
    assert_eq!(x_n(&Ring::rational_int(2), 2).partial_trace().unwrap(), identity(&Ring::rational_int(2), 1));
}

#[test]
fn mu_sequences() {
    let show = |v: Vec<MuEntry>| v.iter().map(MuEntry::to_string).collect::<Vec<_>>();
    assert_eq!(show(young::mu_seq(&YoungDiagram::empty(), TValue::Symbolic, 3)), ["t", "-1", "-2", "-3"]);
    assert_eq!(show(young::mu_seq(&yd(&[1]), TValue::Int(0), 4)), ["-1", "0", "-2", "-3", "-4"]);
    assert_eq!(show(young::mu_seq(&yd(&[3, 1]), TValue::Symbolic, 4)), ["t-4", "2", "-1", "-3", "-4"]);
}

#[test]
fn block_examples() {
    assert!(young::same_block(&YoungDiagram::empty(), &yd(&[1]), TValue::Int(0)));
    assert!(!young::same_block(&YoungDiagram::empty(), &yd(&[2]), TValue::Int(0)));
    for l in young::diagrams_up_to(4) {
        assert!(young::same_block(&l, &l, TValue::Symbolic));
        assert!(young::same_block(&l, &l, TValue::Int(2)));
    }
    let b = young::block_of(&YoungDiagram::empty(), 0, 3).unwrap();
    assert_eq!(b.members, vec![yd(&[]), yd(&[1]), yd(&[1, 1]), yd(&[1, 1, 1])]);
    assert!(b.is_infinite());
    assert_eq!(b.index_of_query, 0);
    let b = young::block_of(&yd(&[1]), 1, 6).unwrap();
    assert_eq!(b.members, vec![yd(&[1])]);
    assert!(!b.is_infinite());
    let b = young::block_of(&yd(&[1]), 5, 6).unwrap();
    assert!(b.is_infinite() && b.members.contains(&yd(&[5])) && b.index_of_query == 0);
    assert!(!young::negligible_class(&YoungDiagram::empty(), 0).unwrap());
    assert!(young::negligible_class(&yd(&[1]), 0).unwrap());
    assert!(young::negligible_class(&yd(&[5]), 5).unwrap());
    for (d, want) in [(0, 1), (2, 2), (5, 7)] {
        assert_eq!(young::count_infinite_blocks(d, d as usize + 4).unwrap(), want);
    }
}

#[test]
fn symmetrizers() {
    let y = young::young_symmetrizer(&yd(&[1])).unwrap();
    assert_eq!(y.terms().collect::<Vec<_>>(), vec![(&vec![0], &q(1, 1))]);
    let y = young::young_symmetrizer(&yd(&[2])).unwrap();
    assert_eq!(y.coeff(&[0, 1]), q(1, 2));
    assert_eq!(y.coeff(&[1, 0]), q(1, 2));
    let y = young::young_symmetrizer(&yd(&[1, 1])).unwrap();
    assert_eq!(y.coeff(&[0, 1]), q(1, 2));
    assert_eq!(y.coeff(&[1, 0]), q(-1, 2));
    let r = Ring::poly();
    assert_eq!(young::pt_power_idempotent(&r, &yd(&[1])).unwrap(), identity(&r, 1));
    let half = r.rat(q(1, 2));
    let want = identity(&r, 2).add(&braiding(&r, 1, 1)).unwrap().scale(&half).unwrap();
    assert_eq!(young::pt_power_idempotent(&r, &yd(&[2])).unwrap(), want);
}

#[test]
fn temperley_lieb_examples() {
    let r = Ring::ratfun();
    let delta = r.param().clone();
    let e1 = tl::cup_cap(&r, 2, 1).unwrap();
    assert_eq!(e1.compose(&e1).unwrap(), e1.scale(&delta).unwrap());
    let (a, b) = (tl::cup_cap(&r, 3, 1).unwrap(), tl::cup_cap(&r, 3, 2).unwrap());
    assert_eq!(a.compose(&b).unwrap().compose(&a).unwrap(), a);
    assert_eq!(tl::quantum_int(&r, 2), delta);
    assert_eq!(tl::quantum_int(&r, 3).render(), "t^2 - 1");
    assert_eq!(tl::l_q(&Ring::rational_int(-1)), Some(2));
    assert_eq!(tl::jw(&r, 1).unwrap().as_morphism(), &identity(&r, 1));
    let jw2 = tl::jw(&r, 2).unwrap();
    let want = tl::TlMorphism::identity(&r, 2).sub(&e1.scale(&delta.inv().unwrap()).unwrap()).unwrap();
    assert_eq!(jw2, want);
    assert!(e1.compose(&jw2).unwrap().is_zero());

    let at_minus_one = Ring::rational_int(-1);
    let st = tl::steinberg(&at_minus_one, 2).unwrap();
    assert_eq!(st.as_morphism(), &identity(&at_minus_one, 1));
    assert_eq!(st.trace().unwrap(), at_minus_one.int(-1));
    let sqrt2 = Ring::number_field(chebyshev_minpoly(3).unwrap()).unwrap();
    let st = tl::steinberg(&sqrt2, 3).unwrap();
    let e1 = tl::cup_cap(&sqrt2, 2, 1).unwrap();
    let want = tl::TlMorphism::identity(&sqrt2, 2)
        .sub(&e1.scale(&sqrt2.param().inv().unwrap()).unwrap())
        .unwrap();
    assert_eq!(st, want);

    assert!(tl::jw_negligible(&at_minus_one, 2));
    assert!(!tl::jw_negligible(&at_minus_one, 1));
    assert!(!tl::tl_negligible(&tl::TlMorphism::identity(&r, 1)).unwrap());
    let ids: std::collections::BTreeSet<usize> = (0..4)
        .filter_map(|i| match tl::tl_block(i, Some(2)).unwrap() {
            TlBlock::Linked(k) => Some(k),
            TlBlock::Simple(_) => None,
        })
        .collect();
    assert_eq!(ids.len(), 2);
}

#[test]
fn algebra_examples() {
    let one = Ring::rational_int(1);
    let a = FinDimAlgebra::partition_end(&one, 1).unwrap();
    assert_eq!(a.dim(), 2);
    assert!(a.radical().unwrap().is_empty());
    let dec = a.split_idempotent(a.unit()).unwrap();
    let ev = a.from_morphism(&e(&one)).unwrap();
    let rest = a.sub(a.unit(), &ev);
    assert_eq!(dec.len(), 2);
    assert!(dec.idempotents.contains(&ev) && dec.idempotents.contains(&rest));
    assert!(dec.primitive.iter().all(|&p| p));
    assert!(a.split_idempotent(&a.zero()).unwrap().is_empty());

    let zero = Ring::rational_int(0);
    let a0 = FinDimAlgebra::partition_end(&zero, 1).unwrap();
    let rad = a0.radical().unwrap();
    assert_eq!(rad.len(), 1);
    let ev0 = a0.from_morphism(&e(&zero)).unwrap();
    assert!(rad[0].iter().zip(&ev0).all(|(x, y)| x.is_zero() == y.is_zero()));
    assert_eq!(a0.split_idempotent(a0.unit()).unwrap().idempotents, vec![a0.unit().clone()]);

    let t = FinDimAlgebra::tl_end(&Ring::ratfun(), 2).unwrap();
    assert_eq!(t.dim(), 2);
    assert!(t.radical().unwrap().is_empty());

    let id = identify_summand(&identity(&one, 1).sub(&e(&one)).unwrap()).unwrap();
    assert_eq!((id.lambda, id.dim.render()), (yd(&[1]), "0".to_string()));
    let id = identify_summand(&e(&one)).unwrap();
    assert_eq!((id.lambda, id.dim.render()), (YoungDiagram::empty(), "1".to_string()));
    let id = identify_summand(&identity(&zero, 1)).unwrap();
    assert_eq!((id.lambda, id.dim.render()), (yd(&[1]), "0".to_string()));
    assert_eq!(decompose_power(0, 1).unwrap().len(), 1);
}
