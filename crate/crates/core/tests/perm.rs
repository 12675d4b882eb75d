mod common;

use common::*;
use proptest::prelude::*;
use rand::Rng;
use wreathgen_core::perm::{catalog, format_permutation, parse_permutation, PermStyle};
use wreathgen_core::{PermGroup, Permutation};

fn arb_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(&v).unwrap())
}

proptest! {
    #[test]
    fn right_action_axiom((p, q) in (1usize..12).prop_flat_map(|n| (arb_perm(n), arb_perm(n)))) {
        let pq = p.compose(&q).unwrap();
        for x in 1..=p.degree() {
            prop_assert_eq!(pq.apply(x), q.apply(p.apply(x)));
        }
    }

    #[test]
    fn inverse_cancels(p in (1usize..12).prop_flat_map(arb_perm)) {
        prop_assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn cycle_text_round_trip(p in (1usize..12).prop_flat_map(arb_perm)) {
        let text = format_permutation(&p, PermStyle::Cycles);
        prop_assert_eq!(parse_permutation(&text, Some(p.degree())).unwrap(), p.clone());
        let text = format_permutation(&p, PermStyle::Images);
        prop_assert_eq!(parse_permutation(&text, None).unwrap(), p);
    }
}

#[test]
fn composition_examples() {
    let p = cyc(5, &[&[1, 2, 3, 4, 5]]);
    assert_eq!(Permutation::identity(5).compose(&p).unwrap(), p);
    let c = cyc(5, &[&[1, 2, 3]]);
    assert_eq!(c.compose(&c).unwrap(), cyc(5, &[&[1, 3, 2]]));
    let q = cyc(5, &[&[1, 2], &[3, 4]]);
    assert_eq!(p.compose(&q).unwrap(), perm(&[1, 4, 3, 5, 2]));
}

#[test]
fn orbit_examples() {
    let c5 = group(5, &[cyc(5, &[&[1, 2, 3, 4, 5]])]);
    assert_eq!(c5.orbit(1).unwrap().sorted_points(), vec![1, 2, 3, 4, 5]);
    let c3 = group(5, &[cyc(5, &[&[1, 2, 3]])]);
    assert_eq!(c3.orbit(4).unwrap().sorted_points(), vec![4]);
    let a5 = catalog::a5();
    let t = a5.orbit(1).unwrap().transversal(2).unwrap();
    assert_eq!(t.apply(1), 2);
    assert!(a5.contains(&t));
}

#[test]
fn stabilizer_examples() {
    assert_eq!(catalog::a5().stabilizer(5).unwrap().order().to_u64(), Some(12));
    assert!(PermGroup::trivial(4).stabilizer(2).unwrap().order().is_one());
    let v = group(4, &[cyc(4, &[&[1, 2], &[3, 4]])]);
    assert!(v.stabilizer(1).unwrap().order().is_one());
}

#[test]
fn orbit_stabilizer_on_corpus() {
    for (name, g) in corpus() {
        for x in 1..=g.degree() {
            let orbit = g.orbit(x).unwrap().len() as u64;
            let stab = g.stabilizer(x).unwrap().order().to_u64().unwrap();
            assert_eq!(orbit * stab, g.order().to_u64().unwrap(), "{name} at {x}");
        }
    }
}

#[test]
fn chain_order_matches_closure() {
    for (name, g) in corpus() {
        assert_eq!(g.order().to_u64(), Some(closure_order(&g) as u64), "{name}");
    }
}

#[test]
fn membership_matches_closure() {
    let mut rng = rng(7);
    for (name, g) in corpus() {
        let n = g.degree();
        let elements = closure(n, g.generators());
        for _ in 0..200 {
            let mut w = Permutation::identity(n);
            for _ in 0..rng.gen_range(0..20).min(20 * g.generators().len()) {
                let s = &g.generators()[rng.gen_range(0..g.generators().len())];
                w = w.compose(s).unwrap();
            }
            assert!(g.contains(&w), "{name}: word not a member");
        }
        for _ in 0..200 {
            let p = random_perm(n, &mut rng);
            assert_eq!(g.contains(&p), elements.binary_search_by_key(&p.images(), Permutation::images).is_ok(), "{name}: {p}");
        }
    }
}

#[test]
fn named_group_properties() {
    let a5 = group(5, &[cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2, 3]])]);
    assert_eq!(a5.order().to_u64(), Some(60));
    assert_eq!(closure_order(&a5), 60);
    assert!(PermGroup::trivial(3).order().is_one());
    assert!(!catalog::a5().contains(&cyc(5, &[&[1, 2]])));
    assert!(catalog::a5().is_transitive());
    assert!(catalog::a5().is_perfect());
    assert!(!catalog::c2().is_perfect());
}

#[test]
fn text_examples() {
    assert_eq!(parse_permutation("[2,1,3]", None).unwrap(), cyc(3, &[&[1, 2]]));
    assert_eq!(parse_permutation("(1 2 3)(4 5)", Some(5)).unwrap().images(), vec![2, 3, 1, 5, 4]);
    assert_eq!(format_permutation(&Permutation::identity(4), PermStyle::Cycles), "()");
}
