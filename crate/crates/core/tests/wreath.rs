mod common;

use common::*;
use rand::seq::SliceRandom;
use rand::Rng;
use wreathgen_core::perm::catalog;
use wreathgen_core::wreath::{
    build_exponentiation, build_perm_wreath, kaluzhnin_bijection, kaluzhnin_check, precedes, Action, Elem, Embedding,
    Shape, StructuredGroup, TupleCodec,
};
use wreathgen_core::{PermGroup, Permutation, DEFAULT_DEGREE_CAP as CAP};

fn small_pool() -> Vec<(&'static str, PermGroup)> {
    corpus().into_iter().filter(|(_, g)| g.degree() <= 5 && g.degree() >= 2).collect()
}

#[test]
fn flatten_is_a_homomorphism_on_random_pairs() {
    let mut rng = rng(11);
    let pool = small_pool();
    let mut checked = 0;
    while checked < 500 {
        let (_, a) = pool.choose(&mut rng).unwrap();
        let (_, b) = pool.choose(&mut rng).unwrap();
        let action = if rng.gen_bool(0.5) { Action::Exp } else { Action::Perm };
        if action == Action::Exp && a.degree().pow(b.degree() as u32) > 4000 {
            continue;
        }
        let ea = closure(a.degree(), a.generators());
        let eb = closure(b.degree(), b.generators());
        let w1 = random_wreath(action, &ea, &eb, &mut rng);
        let w2 = random_wreath(action, &ea, &eb, &mut rng);
        let f1 = w1.flatten(CAP).unwrap();
        let f2 = w2.flatten(CAP).unwrap();
        assert_eq!(w1.multiply(&w2).unwrap().flatten(CAP).unwrap(), f1.compose(&f2).unwrap());
        assert_eq!(w1.inverse().flatten(CAP).unwrap(), f1.inverse());
        if action == Action::Exp {
            let w = w1.as_wreath().unwrap();
            let base: Vec<Permutation> = w.base().iter().map(|e| e.as_perm().unwrap().clone()).collect();
            assert_eq!(f1.images(), exp_action_table(&base, w.top().as_perm().unwrap()));
        }
        checked += 1;
    }
}

#[test]
fn flatten_is_a_homomorphism_on_nested_elements() {
    let mut rng = rng(12);
    let c2 = StructuredGroup::from_perm_group(&catalog::c2());
    let s3 = StructuredGroup::from_perm_group(&catalog::s3());
    let inner = StructuredGroup::wreath(Action::Perm, &c2, &s3, Embedding::FirstCoordinate).unwrap();
    let g = StructuredGroup::wreath(Action::Exp, &catalog_structured_c3(), &inner, Embedding::FirstCoordinate).unwrap();
    let word = |rng: &mut rand_chacha::ChaCha8Rng| {
        let mut x = g.shape().identity().unwrap();
        for _ in 0..8 {
            x = x.multiply(g.generators().choose(rng).unwrap()).unwrap();
        }
        x
    };
    for _ in 0..50 {
        let (x, y) = (word(&mut rng), word(&mut rng));
        let (fx, fy) = (x.flatten(CAP).unwrap(), y.flatten(CAP).unwrap());
        assert_eq!(x.multiply(&y).unwrap().flatten(CAP).unwrap(), fx.compose(&fy).unwrap());
        assert_eq!(x.inverse().flatten(CAP).unwrap(), fx.inverse());
    }
}

fn catalog_structured_c3() -> StructuredGroup {
    StructuredGroup::from_perm_group(&catalog::c3())
}

#[test]
fn top_only_elements_fix_the_diagonal() {
    for (_, a) in small_pool() {
        for (_, b) in small_pool() {
            let (m, n) = (a.degree(), b.degree());
            if m.pow(n as u32) > 4000 {
                continue;
            }
            let shape = Shape::wreath(Action::Exp, Shape::Perm(m), Shape::Perm(n));
            let codec = TupleCodec::new(m, n).unwrap();
            for tau in closure(n, b.generators()) {
                let w = Elem::top_embedding(&shape, Elem::Perm(tau)).unwrap();
                for i in 1..=m {
                    let d = codec.diagonal(i).unwrap();
                    assert_eq!(w.apply(d).unwrap(), d);
                }
            }
        }
    }
}

#[test]
fn codec_round_trip_and_order() {
    let mut rng = rng(13);
    for _ in 0..1000 {
        let m = rng.gen_range(1..7);
        let n = rng.gen_range(1..7);
        let codec = TupleCodec::new(m, n).unwrap();
        let t: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=m)).collect();
        let r = codec.rank(&t).unwrap();
        assert_eq!(codec.unrank(r).unwrap(), t);
        let u: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=m)).collect();
        assert_eq!(precedes(&t, &u), r < codec.rank(&u).unwrap());
    }
    let codec = TupleCodec::new(3, 4).unwrap();
    assert_eq!(codec.rank(&[1, 1, 1, 1]).unwrap(), 1);
    assert_eq!(codec.rank(&[1, 1, 1, 2]).unwrap(), 2);
}

#[test]
fn degree_and_order_laws() {
    let pool = corpus();
    for (na, a) in &pool {
        for (nb, b) in pool.iter().filter(|(_, b)| b.is_transitive()) {
            let (m, n) = (a.degree(), b.degree());
            let expected = a.order().pow(n as u64) * b.order();
            let w = build_perm_wreath(a, b, CAP, true).unwrap();
            assert_eq!(w.degree(), m * n);
            assert_eq!(w.order(), expected, "{na} wr {nb}");
            // on a single point the product action forgets the top group
            if m >= 2 && m.pow(n as u32) <= 5000 {
                let e = build_exponentiation(a, b, CAP, true).unwrap();
                assert_eq!(e.degree(), m.pow(n as u32));
                assert_eq!(e.order(), expected, "{na} exp {nb}");
            }
        }
    }
}

#[test]
fn product_action_examples() {
    let shape = Shape::wreath(Action::Exp, Shape::Perm(5), Shape::Perm(3));
    let t0 = cyc(5, &[&[1, 2, 3]]);
    let w = Elem::base_embedding(&shape, &[(2, Elem::Perm(t0))]).unwrap();
    let codec = TupleCodec::new(5, 3).unwrap();
    assert_eq!(codec.unrank(w.apply(codec.rank(&[1, 1, 1]).unwrap()).unwrap()).unwrap(), vec![1, 1, 2]);

    let shape = Shape::wreath(Action::Exp, Shape::Perm(3), Shape::Perm(2));
    let swap = Elem::top_embedding(&shape, Elem::Perm(cyc(2, &[&[1, 2]]))).unwrap();
    let codec = TupleCodec::new(3, 2).unwrap();
    assert_eq!(codec.unrank(swap.apply(codec.rank(&[1, 2]).unwrap()).unwrap()).unwrap(), vec![2, 1]);

    let shape = Shape::wreath(Action::Exp, Shape::Perm(2), Shape::Perm(2));
    let x = Elem::base_embedding(&shape, &[(0, Elem::Perm(cyc(2, &[&[1, 2]])))]).unwrap();
    assert_eq!(x.flatten(CAP).unwrap(), cyc(4, &[&[1, 3], &[2, 4]]));
    assert!(shape.identity().unwrap().flatten(CAP).unwrap().is_identity());
}

#[test]
fn small_wreath_products_against_closure() {
    let c2 = catalog::c2();
    let e = build_exponentiation(&c2, &c2, CAP, true).unwrap();
    assert_eq!(e.generators().len(), 2);
    assert_eq!(e.order().to_u64(), Some(8));
    assert_eq!(closure_order(&e), 8);
    let w = build_perm_wreath(&c2, &c2, CAP, true).unwrap();
    assert_eq!(closure_order(&w), 8);
    assert_eq!(w.degree(), 4);

    let one = PermGroup::trivial(1);
    let e = build_exponentiation(&c2, &one, CAP, true).unwrap();
    assert_eq!((e.degree(), e.order().to_u64()), (2, Some(2)));
    let w = build_perm_wreath(&catalog::a5(), &one, CAP, true).unwrap();
    assert_eq!((w.degree(), w.order().to_u64()), (5, Some(60)));

    let a5 = catalog::a5();
    let w = build_perm_wreath(&a5, &a5, CAP, true).unwrap();
    assert_eq!(w.degree(), 25);
    assert_eq!(w.order(), a5.order().pow(6));
}

#[test]
fn multiply_and_invert_examples() {
    let mut rng = rng(14);
    let ea = closure(5, catalog::a5().generators());
    let w = random_wreath(Action::Exp, &ea, &ea, &mut rng);
    let id = w.shape().identity().unwrap();
    assert_eq!(w.multiply(&id).unwrap(), w);
    assert!(w.multiply(&w.inverse()).unwrap().is_identity());
    assert_eq!(w.project_top().unwrap(), w.as_wreath().unwrap().top().clone());
    assert!(id.project_top().unwrap().is_identity());
}

#[test]
fn commutator_of_conjugated_base_pairs() {
    // ([l1, d1, e..], [l2, d2, e..]^mu) with mu a top element fixing 1 and
    // moving 2 leaves only the commutator at coordinate 1.
    let mut rng = rng(15);
    let a5 = catalog::a5();
    let ea = closure(5, a5.generators());
    let shape = Shape::wreath(Action::Exp, Shape::Perm(5), Shape::Perm(5));
    let s = ea.iter().find(|s| s.apply(1) == 1 && s.apply(2) != 2).unwrap().clone();
    let mu = Elem::top_embedding(&shape, Elem::Perm(s)).unwrap();
    for _ in 0..20 {
        let pick = |rng: &mut rand_chacha::ChaCha8Rng| Elem::Perm(ea.choose(rng).unwrap().clone());
        let (l1, d1, l2, d2) = (pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng));
        let x = Elem::base_embedding(&shape, &[(0, l1.clone()), (1, d1)]).unwrap();
        let y = Elem::base_embedding(&shape, &[(0, l2.clone()), (1, d2)]).unwrap();
        let c = x.commutator(&y.conjugate_by(&mu).unwrap()).unwrap();
        let expected = Elem::base_embedding(&shape, &[(0, l1.commutator(&l2).unwrap())]).unwrap();
        assert_eq!(c, expected);
    }
}

#[test]
fn rebracketing_examples() {
    let one = PermGroup::trivial(1);
    let cert = kaluzhnin_check(&one, &one, &one, CAP, true).unwrap();
    assert!(cert.passed());
    assert_eq!(cert.degree, 1);
    let c2 = catalog::c2();
    let cert = kaluzhnin_check(&c2, &c2, &c2, CAP, true).unwrap();
    assert!(cert.passed());
    assert_eq!(cert.degree, 16);
    assert!(cert.bijection_is_identity);
    assert!(kaluzhnin_bijection(2, 3, 2, CAP).unwrap().is_identity());
}
