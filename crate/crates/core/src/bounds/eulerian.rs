//! Generating-tuple counts and the quantities derived from them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::perm::{PermGroup, Permutation};
use crate::{BigCount, Error, Result};

/// Default bound on the number of tuples scanned.
pub const TUPLE_BUDGET: u64 = 10_000_000;

fn tuple_count(order: u64, k: usize, budget: u64) -> Result<()> {
    let total = BigCount::from(order).pow(k as u64);
    match total.to_u64() {
        Some(t) if t <= budget => Ok(()),
        _ => Err(Error::Budget(alloc::format!(
            "{order}^{k} = {total} tuples exceed the scan budget {budget}"
        ))),
    }
}

/// Number of ordered `k`-tuples of elements generating `a`.
///
/// Prefixes that already generate `a` are counted in bulk.
pub fn eulerian_count(a: &PermGroup, k: usize, budget: u64) -> Result<BigCount> {
    let order = a.order();
    let n = order
        .to_u64()
        .ok_or_else(|| Error::Budget(alloc::format!("group of order {order} is too large to scan")))?;
    tuple_count(n, k, budget)?;
    let elements = a.elements(budget)?;
    let mut prefix = Vec::with_capacity(k);
    let count = count_from(a.degree(), &elements, &order, k, &mut prefix)?;
    Ok(BigCount::from(count))
}

fn count_from(
    degree: usize,
    elements: &[Permutation],
    order: &BigCount,
    remaining: usize,
    prefix: &mut Vec<Permutation>,
) -> Result<BigUint> {
    let generated = PermGroup::new(degree, prefix.clone())?.order();
    if &generated == order {
        return Ok(BigUint::from(elements.len()).pow(remaining as u32));
    }
    if remaining == 0 {
        return Ok(BigUint::from(0u32));
    }
    let mut total = BigUint::from(0u32);
    for g in elements {
        prefix.push(g.clone());
        total += count_from(degree, elements, order, remaining - 1, prefix)?;
        prefix.pop();
    }
    Ok(total)
}

/// Smallest `k` for which some `k`-tuple generates `g`, by exhaustive search.
pub fn min_generators(g: &PermGroup, budget: u64) -> Result<usize> {
    let order = g.order();
    if order.is_one() {
        return Ok(0);
    }
    let n = order
        .to_u64()
        .ok_or_else(|| Error::Budget(alloc::format!("group of order {order} is too large to scan")))?;
    let elements = g.elements(budget)?;
    // The given generators bound the search from above.
    for k in 1..g.generators().len() {
        tuple_count(n, k, budget)?;
        let mut prefix = Vec::with_capacity(k);
        if exists_from(g.degree(), &elements, &order, k, &mut prefix)? {
            return Ok(k);
        }
    }
    Ok(g.generators().len())
}

fn exists_from(
    degree: usize,
    elements: &[Permutation],
    order: &BigCount,
    remaining: usize,
    prefix: &mut Vec<Permutation>,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(&PermGroup::new(degree, prefix.clone())?.order() == order);
    }
    for g in elements {
        prefix.push(g.clone());
        let hit = exists_from(degree, elements, order, remaining - 1, prefix)?;
        prefix.pop();
        if hit {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Whether `a` is nonabelian and simple, by checking that every
/// nonidentity element has normal closure `a`.
pub fn is_nonabelian_simple(a: &PermGroup, limit: u64) -> Result<bool> {
    if a.is_abelian() {
        return Ok(false);
    }
    let order = a.order();
    for g in a.elements(limit)? {
        if g.is_identity() {
            continue;
        }
        if a.normal_closure(core::slice::from_ref(&g), Some(&order)).order() != order {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `d(A^N)` for nonabelian simple `A`: the least `k` with
/// `N <= phi_k(A) / |Aut A|`, where `phi_k` is supplied by `count`.
pub fn d_of_simple_power_with(
    n_copies: u64,
    aut_order: u64,
    mut count: impl FnMut(usize) -> Result<BigCount>,
) -> Result<usize> {
    if n_copies == 0 || aut_order == 0 {
        return Err(Error::Invalid("N and |Aut A| must be positive".into()));
    }
    for k in 1.. {
        let phi = count(k)?;
        let copies = phi.as_biguint() / BigUint::from(aut_order);
        if copies >= BigUint::from(n_copies) {
            return Ok(k);
        }
    }
    unreachable!()
}

/// `d(A^N)` using [`eulerian_count`] under the default budget.
pub fn d_of_simple_power(a: &PermGroup, n_copies: u64, aut_order: u64) -> Result<usize> {
    if !is_nonabelian_simple(a, TUPLE_BUDGET)? {
        return Err(Error::Hypothesis {
            level: 0,
            what: "A is not a nonabelian simple group".into(),
        });
    }
    d_of_simple_power_with(n_copies, aut_order, |k| eulerian_count(a, k, TUPLE_BUDGET))
}

/// Number of automorphisms of `g`, counted by trying every assignment of
/// generator images and testing whether it extends to a bijective
/// homomorphism along the Cayley graph.
pub fn count_automorphisms(g: &PermGroup, limit: u64) -> Result<u64> {
    let elements = g.elements(limit)?;
    let index: BTreeMap<&Permutation, usize> = elements.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let gens = g.generators();
    let r = gens.len();
    let n = elements.len();
    tuple_count(n as u64, r, limit.saturating_mul(limit))?;
    // Cayley graph: right multiplication by each generator.
    let step: Vec<Vec<usize>> = elements
        .iter()
        .map(|e| gens.iter().map(|s| index[&e.mul_unchecked(s)]).collect())
        .collect();
    let mut count = 0u64;
    let mut choice = alloc::vec![0usize; r];
    loop {
        if extends(&elements, &index, &step, &choice) {
            count += 1;
        }
        let mut i = 0;
        loop {
            if i == r {
                return Ok(count);
            }
            choice[i] += 1;
            if choice[i] < n {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extends(
    elements: &[Permutation],
    index: &BTreeMap<&Permutation, usize>,
    step: &[Vec<usize>],
    choice: &[usize],
) -> bool {
    let n = elements.len();
    let identity = index[&Permutation::identity(elements[0].degree())];
    let mut image = alloc::vec![usize::MAX; n];
    let mut used = alloc::vec![false; n];
    image[identity] = identity;
    used[identity] = true;
    let mut queue = alloc::collections::VecDeque::from([identity]);
    while let Some(x) = queue.pop_front() {
        for (s, &c) in choice.iter().enumerate() {
            let y = step[x][s];
            let fy = index[&elements[image[x]].mul_unchecked(&elements[c])];
            if image[y] == usize::MAX {
                if used[fy] {
                    return false;
                }
                image[y] = fy;
                used[fy] = true;
                queue.push_back(y);
            } else if image[y] != fy {
                return false;
            }
        }
    }
    image.iter().all(|&i| i != usize::MAX)
}

/// Whether `aut_order` divides `order!`, a sanity check on catalog data.
pub fn aut_order_plausible(order: u64, aut_order: u64) -> bool {
    if aut_order == 0 {
        return false;
    }
    let mut factorial = BigUint::from(1u32);
    for i in 2..=order {
        factorial *= i;
        if factorial.is_multiple_of(&BigUint::from(aut_order)) {
            return true;
        }
    }
    factorial.is_multiple_of(&BigUint::from(aut_order))
}
