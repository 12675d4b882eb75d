use alloc::collections::VecDeque;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use super::chain::StabChain;
use super::orbit::Orbit;
use super::Permutation;
use crate::{BigCount, Error, Result};

/// A permutation group given by generators, with a lazily built stabilizer
/// chain.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order_bound: Option<BigCount>,
    chain: OnceBox<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceBox::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(alloc::boxed::Box::new(c.clone()));
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            order_bound: self.order_bound.clone(),
            chain,
        }
    }
}

impl core::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            order_bound: None,
            chain: OnceBox::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            order_bound: None,
            chain: OnceBox::new(),
        }
    }

    fn with_chain(degree: usize, generators: Vec<Permutation>, chain: StabChain) -> Self {
        let cell = OnceBox::new();
        let _ = cell.set(alloc::boxed::Box::new(chain));
        PermGroup {
            degree,
            generators,
            order_bound: None,
            chain: cell,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Declares the order of a group known to contain this one. The chain is
    /// then built by random sifting until the bound is reached, which is much
    /// faster on large degrees. A bound that is not an upper bound gives wrong
    /// orders.
    pub fn with_order_bound(mut self, bound: BigCount) -> Self {
        self.order_bound = Some(bound);
        self.chain = OnceBox::new();
        self
    }

    /// The stabilizer chain, built on first use.
    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            alloc::boxed::Box::new(match &self.order_bound {
                Some(bound) => StabChain::build_with_bound(self.degree, &self.generators, bound),
                None => StabChain::build(self.degree, &self.generators, &[]),
            })
        })
    }

    pub fn is_chain_built(&self) -> bool {
        self.chain.get().is_some()
    }

    pub fn order(&self) -> BigCount {
        self.chain().order()
    }

    /// Exact membership test by sifting. Elements of another degree are not members.
    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn orbit(&self, point: usize) -> Result<Orbit> {
        Orbit::new(self.degree, &self.generators, point)
    }

    pub fn is_transitive(&self) -> bool {
        self.orbit(1).map(|o| o.len() == self.degree).unwrap_or(false)
    }

    /// Orbits as sorted point lists, ordered by smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = alloc::vec![false; self.degree];
        let mut out = Vec::new();
        for p in 1..=self.degree {
            if seen[p - 1] {
                continue;
            }
            let o = self.orbit(p).expect("point in range").sorted_points();
            for &q in &o {
                seen[q - 1] = true;
            }
            out.push(o);
        }
        out
    }

    /// The point stabilizer `St_G(point)`, returned with a ready stabilizer chain.
    pub fn stabilizer(&self, point: usize) -> Result<PermGroup> {
        if point == 0 || point > self.degree {
            return Err(Error::PointOutOfRange {
                point,
                degree: self.degree,
            });
        }
        let chain = StabChain::build(self.degree, &self.generators, &[point - 1]);
        let stab = chain.stabilizer_chain();
        let gens = chain.level_generators(1).to_vec();
        Ok(PermGroup::with_chain(self.degree, gens, stab))
    }

    /// Generators of `St_G(point)` (strong generators from a chain whose base
    /// starts at `point`; every one fixes `point`).
    pub fn stabilizer_generators(&self, point: usize) -> Result<Vec<Permutation>> {
        Ok(self.stabilizer(point)?.generators)
    }

    /// Smallest normal subgroup of `self` containing `elements`.
    ///
    /// Stops early once the order reaches `stop_at`.
    pub fn normal_closure(&self, elements: &[Permutation], stop_at: Option<&BigCount>) -> PermGroup {
        let mut gens: Vec<Permutation> = Vec::new();
        let mut chain = StabChain::build(self.degree, &[], &[]);
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        for e in elements {
            if chain.add_generator(e) {
                gens.push(e.clone());
                queue.push_back(e.clone());
            }
        }
        'outer: while let Some(n) = queue.pop_front() {
            if stop_at.is_some_and(|s| &chain.order() == s) {
                break;
            }
            for x in &self.generators {
                let c = x.conjugate(&n);
                if chain.add_generator(&c) {
                    gens.push(c.clone());
                    queue.push_back(c);
                    if stop_at.is_some_and(|s| &chain.order() == s) {
                        break 'outer;
                    }
                }
            }
        }
        PermGroup::with_chain(self.degree, gens, chain)
    }

    /// The commutator subgroup: normal closure of the generator commutators.
    pub fn derived_subgroup(&self) -> PermGroup {
        self.derived_subgroup_until(None)
    }

    fn derived_subgroup_until(&self, stop_at: Option<&BigCount>) -> PermGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = a.commutator(b);
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms, stop_at)
    }

    pub fn is_perfect(&self) -> bool {
        let order = self.order();
        self.derived_subgroup_until(Some(&order)).order() == order
    }

    /// Whether the group is abelian (all generators commute).
    pub fn is_abelian(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.commutator(b).is_identity())
        })
    }

    /// All elements in chain-traversal order, or an error past `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Permutation>> {
        let order = self.order();
        match order.to_u64() {
            Some(n) if n <= limit => Ok(self.chain().elements()),
            _ => Err(Error::Budget(alloc::format!(
                "group of order {order} exceeds element enumeration limit {limit}"
            ))),
        }
    }

    /// `p^-1 G p`, with generators conjugated in order.
    pub fn conjugate_by(&self, p: &Permutation) -> Result<PermGroup> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                left: self.degree,
                right: p.degree(),
            });
        }
        PermGroup::new(
            self.degree,
            self.generators.iter().map(|g| p.conjugate(g)).collect(),
        )
    }

    /// Subgroup generated by a subset of the elements, with the same degree.
    pub fn subgroup(&self, generators: Vec<Permutation>) -> Result<PermGroup> {
        PermGroup::new(self.degree, generators)
    }
}
