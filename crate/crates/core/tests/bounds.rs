mod common;

use common::*;
use num_rational::Ratio;
use rand::Rng;
use wreathgen_core::bounds::{
    count_automorphisms, d_of_simple_power, d_of_simple_power_with, eulerian_count, is_nonabelian_simple,
    lower_bound, min_generators, row_collision_witness, sample_collision_words, BoundInput, PowerWreathElement,
    TUPLE_BUDGET,
};
use wreathgen_core::perm::catalog;
use wreathgen_core::wreath::Action;
use wreathgen_core::{BigCount, PermGroup, DEFAULT_DEGREE_CAP as CAP};

fn brute_eulerian(g: &PermGroup, k: usize) -> usize {
    let elements = closure(g.degree(), g.generators());
    let order = elements.len();
    let mut count = 0;
    let mut tuple = vec![0usize; k];
    loop {
        let gens: Vec<_> = tuple.iter().map(|&i| elements[i].clone()).collect();
        if closure(g.degree(), &gens).len() == order {
            count += 1;
        }
        let mut pos = k;
        loop {
            if pos == 0 {
                return count;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < order {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

#[test]
fn eulerian_counts_match_closure() {
    assert_eq!(eulerian_count(&PermGroup::trivial(1), 1, TUPLE_BUDGET).unwrap(), BigCount::from(1u64));
    assert_eq!(eulerian_count(&catalog::c2(), 1, TUPLE_BUDGET).unwrap(), BigCount::from(1u64));
    for (name, g, k) in [("C3", catalog::c3(), 2), ("S3", catalog::s3(), 2), ("A4", corpus()[7].1.clone(), 2), ("A5", catalog::a5(), 2)] {
        let fast = eulerian_count(&g, k, TUPLE_BUDGET).unwrap();
        assert_eq!(fast, BigCount::from(brute_eulerian(&g, k) as u64), "{name}");
    }
}

#[test]
fn small_generator_counts() {
    assert_eq!(min_generators(&catalog::a5(), TUPLE_BUDGET).unwrap(), 2);
    assert_eq!(min_generators(&catalog::c3(), TUPLE_BUDGET).unwrap(), 1);
    assert_eq!(min_generators(&PermGroup::trivial(3), TUPLE_BUDGET).unwrap(), 0);
    let v4 = &corpus()[5].1;
    assert_eq!(min_generators(v4, TUPLE_BUDGET).unwrap(), 2);
    assert!(is_nonabelian_simple(&catalog::a5(), TUPLE_BUDGET).unwrap());
    assert!(!is_nonabelian_simple(&catalog::s3(), TUPLE_BUDGET).unwrap());
    assert_eq!(count_automorphisms(&catalog::a5(), 120).unwrap(), 120);
    assert_eq!(count_automorphisms(&catalog::s3(), 120).unwrap(), 6);
}

#[test]
fn power_generator_threshold() {
    let a5 = catalog::a5();
    let phi2 = eulerian_count(&a5, 2, TUPLE_BUDGET).unwrap().to_u64().unwrap();
    let step = phi2 / 120;
    assert_eq!(d_of_simple_power(&a5, 1, 120).unwrap(), 2);
    assert_eq!(d_of_simple_power(&a5, step, 120).unwrap(), 2);
    assert_eq!(d_of_simple_power(&a5, step + 1, 120).unwrap(), 3);
    let counted = d_of_simple_power_with(step + 1, 120, |k| eulerian_count(&a5, k, TUPLE_BUDGET)).unwrap();
    assert_eq!(counted, 3);
}

#[test]
fn lower_bound_values() {
    let input = |copies| BoundInput { a: catalog::a5(), copies, b: catalog::a5(), aut_order: 120 };
    let step = eulerian_count(&catalog::a5(), 2, TUPLE_BUDGET).unwrap().to_u64().unwrap() / 120;
    let below = lower_bound(&input(step)).unwrap();
    assert_eq!((below.d_power, below.d_a, below.d_b, below.n), (2, 2, 2, 5));
    assert_eq!(below.power_term, Ratio::new(-1, 5));
    assert_eq!(below.value, Ratio::from_integer(2));
    let above = lower_bound(&input(step + 1)).unwrap();
    assert_eq!(above.power_term, Ratio::from_integer(0));
    assert!(lower_bound(&input(0)).is_err());
    assert!(lower_bound(&BoundInput { aut_order: 60, ..input(1) }).is_err());
    assert!(lower_bound(&BoundInput { a: catalog::s3(), ..input(1) }).is_err());
}

#[test]
fn found_generating_sets_respect_the_bound() {
    let a5 = catalog::a5();
    let bound = lower_bound(&BoundInput { a: a5.clone(), copies: 1, b: a5.clone(), aut_order: 120 }).unwrap();
    let elements = closure(5, a5.generators());
    let target = a5.order().pow(6);
    let mut r = rng(11);
    let mut found = 0;
    for _ in 0..20 {
        let pair: Vec<_> = (0..2)
            .map(|_| random_wreath(Action::Perm, &elements, &elements, &mut r).flatten(CAP).unwrap())
            .collect();
        if group(25, &pair).order() == target {
            found += 1;
            assert!(bound.admits(pair.len()));
        }
    }
    assert!(found > 0);
    assert!(!bound.admits(1));
}

fn random_power_element(a: &[wreathgen_core::Permutation], n: usize, rows: usize, r: &mut impl Rng) -> PowerWreathElement {
    let blocks = (0..n).map(|_| (0..rows).map(|_| a[r.gen_range(0..a.len())].clone()).collect()).collect();
    PowerWreathElement::new(blocks, random_perm(n, r)).unwrap()
}

#[test]
fn collisions_are_forced_past_the_pigeonhole_threshold() {
    let mut r = rng(5);
    let bases = [catalog::c2(), catalog::c3()];
    for _ in 0..100 {
        let a = &bases[r.gen_range(0..2)];
        let elements = closure(a.degree(), a.generators());
        let (n, d) = (r.gen_range(2..=3), r.gen_range(1..=2));
        let threshold = elements.len().pow((n * d) as u32);
        if threshold > 800 {
            continue;
        }
        let rows = threshold + 1;
        let set: Vec<_> = (0..d).map(|_| random_power_element(&elements, n, rows, &mut r)).collect();
        let (l1, l2) = row_collision_witness(&set).unwrap().expect("pigeonhole");
        assert!(l1 < l2);
        assert!(set.iter().all(|x| x.rows_agree(l1, l2)));
        assert_eq!(sample_collision_words(&set, (l1, l2), 100, 12, &mut r).unwrap(), 100);
    }
}

#[test]
fn distinct_rows_have_no_collision() {
    let s3 = closure(3, catalog::s3().generators());
    let blocks = vec![s3.clone(), s3];
    let x = PowerWreathElement::new(blocks, perm(&[2, 1])).unwrap();
    assert_eq!(row_collision_witness(std::slice::from_ref(&x)).unwrap(), None);
    let y = x.multiply(&x.inverse()).unwrap();
    assert_eq!(y, PowerWreathElement::identity(2, 6, 3));
}
