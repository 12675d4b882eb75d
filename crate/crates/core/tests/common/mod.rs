//! Independent oracles and fixtures shared by the integration tests.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wreathgen_core::perm::catalog;
use wreathgen_core::wreath::{Action, Elem};
use wreathgen_core::{PermGroup, Permutation};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn perm(images: &[usize]) -> Permutation {
    Permutation::from_images(images).unwrap()
}

pub fn cyc(degree: usize, cycles: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(degree, cycles).unwrap()
}

pub fn group(degree: usize, gens: &[Permutation]) -> PermGroup {
    PermGroup::new(degree, gens.to_vec()).unwrap()
}

/// Every element of `<gens>` by breadth-first closure on image tables.
/// Does not touch the stabilizer chain.
pub fn closure(degree: usize, gens: &[Permutation]) -> Vec<Permutation> {
    let id: Vec<usize> = (1..=degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let tables: Vec<Vec<usize>> = gens.iter().map(Permutation::images).collect();
    while let Some(x) = queue.pop_front() {
        for g in &tables {
            // right action: point i goes to g[x[i]]
            let y: Vec<usize> = x.iter().map(|&p| g[p - 1]).collect();
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Permutation> = seen.into_iter().map(|t| perm(&t)).collect();
    out.sort_by_key(Permutation::images);
    out
}

pub fn closure_order(g: &PermGroup) -> usize {
    closure(g.degree(), g.generators()).len()
}

pub fn random_perm(degree: usize, rng: &mut impl Rng) -> Permutation {
    let mut images: Vec<usize> = (1..=degree).collect();
    images.shuffle(rng);
    perm(&images)
}

/// Small groups with brute-force-checkable orders: cyclic, dihedral,
/// symmetric and alternating groups plus the built-in catalog.
pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("trivial1", PermGroup::trivial(1)),
        ("C2", catalog::c2()),
        ("C3", catalog::c3()),
        ("S3", catalog::s3()),
        ("C4", group(4, &[cyc(4, &[&[1, 2, 3, 4]])])),
        ("V4", group(4, &[cyc(4, &[&[1, 2], &[3, 4]]), cyc(4, &[&[1, 3], &[2, 4]])])),
        ("D8", group(4, &[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 3]])])),
        ("A4", group(4, &[cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[2, 3, 4]])])),
        ("S4", group(4, &[cyc(4, &[&[1, 2, 3, 4]]), cyc(4, &[&[1, 2]])])),
        ("C5", group(5, &[cyc(5, &[&[1, 2, 3, 4, 5]])])),
        ("D10", group(5, &[cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[2, 5], &[3, 4]])])),
        ("A5", catalog::a5()),
        ("S5", group(5, &[cyc(5, &[&[1, 2, 3, 4, 5]]), cyc(5, &[&[1, 2]])])),
        ("C2xC3 on 5", group(5, &[cyc(5, &[&[1, 2]]), cyc(5, &[&[3, 4, 5]])])),
        ("A6", group(6, &[cyc(6, &[&[1, 2, 3]]), cyc(6, &[&[2, 3, 4, 5, 6]])])),
        ("PSL(2,7)", catalog::psl27()),
    ]
}

pub fn transitive_corpus() -> Vec<(&'static str, PermGroup)> {
    corpus().into_iter().filter(|(_, g)| g.is_transitive()).collect()
}

/// A uniformly random element drawn from the closure of `g`.
pub fn random_element(g: &PermGroup, rng: &mut impl Rng) -> Permutation {
    closure(g.degree(), g.generators()).choose(rng).unwrap().clone()
}

/// A random one-level wreath element over `a` (base) and `b` (top).
pub fn random_wreath(action: Action, a: &[Permutation], b: &[Permutation], rng: &mut impl Rng) -> Elem {
    let n = b[0].degree();
    let base = (0..n).map(|_| Elem::Perm(a.choose(rng).unwrap().clone())).collect();
    Elem::wreath(action, base, Elem::Perm(b.choose(rng).unwrap().clone())).unwrap()
}

/// Point images of a permutation of `{1..m}^n`, computed coordinatewise
/// from the product-action definition with coordinate 1 most significant.
pub fn exp_action_table(base: &[Permutation], top: &Permutation) -> Vec<usize> {
    let m = base[0].degree();
    let n = top.degree();
    let size = m.pow(n as u32);
    (0..size)
        .map(|r| {
            let mut t = vec![0; n];
            let mut x = r;
            for c in (0..n).rev() {
                t[c] = x % m + 1;
                x /= m;
            }
            // apply base coordinatewise, then move coordinate k to k^top
            let moved: Vec<usize> = (0..n).map(|k| base[k].apply(t[k])).collect();
            let mut out = vec![0; n];
            for k in 0..n {
                out[top.apply(k + 1) - 1] = moved[k];
            }
            out.iter().fold(0, |acc, &v| acc * m + (v - 1)) + 1
        })
        .collect()
}
