//! Schreier–Sims, deterministic or driven by a known order bound.
//!
//! Transversals are Schreier vectors; transversal elements are recomputed by
//! walking the tree. Base points are chosen as the smallest point moved by the
//! element that forces a new level.

use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use super::orbit::SchreierTree;
use super::Permutation;
use crate::BigCount;

const RANDOM_SEED: u64 = 0x5eed_5c4e_1e75;
/// Consecutive random elements that sift to the identity before giving up on
/// reaching the bound.
const FRUITLESS_LIMIT: usize = 48;

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    gens: Vec<Permutation>,
    inverses: Vec<Permutation>,
    tree: SchreierTree,
    /// For each orbit position, how many generators (a prefix) have had their
    /// Schreier generator sifted to the identity.
    checked: Vec<u32>,
}

impl Level {
    fn new(degree: usize, base: usize, gens: Vec<Permutation>) -> Self {
        let inverses = gens.iter().map(Permutation::inverse).collect();
        let tree = SchreierTree::build(degree, base, &gens);
        let checked = alloc::vec![0; tree.len()];
        Level {
            base,
            gens,
            inverses,
            tree,
            checked,
        }
    }

    fn push_gen(&mut self, g: Permutation) {
        let first_new = self.gens.len();
        self.inverses.push(g.inverse());
        self.gens.push(g);
        self.tree.extend(&self.gens, first_new);
        self.checked.resize(self.tree.len(), 0);
    }
}

/// A base and strong generating set with Schreier-vector transversals.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    /// Builds a chain for `<gens>` with the base starting with `base_prefix`
    /// (0-based points).
    pub(crate) fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = base_prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.apply0(b) == b) {
                if let Some(p) = g.first_moved() {
                    base.push(p - 1);
                }
            }
        }
        for (l, &b) in base.iter().enumerate() {
            let level_gens: Vec<Permutation> = gens
                .iter()
                .filter(|g| base[..l].iter().all(|&c| g.apply0(c) == c))
                .cloned()
                .collect();
            chain.levels.push(Level::new(degree, b, level_gens));
        }
        if !chain.levels.is_empty() {
            let top = chain.levels.len() - 1;
            chain.complete_from(top);
        }
        chain
    }

    /// Builds a chain for `<gens>` by sifting random elements until the order
    /// reaches `bound`, which must be the order of a group containing
    /// `<gens>`. Sifted elements all lie in the group, so reaching the bound
    /// makes the chain exact. Otherwise the chain is completed
    /// deterministically.
    pub(crate) fn build_with_bound(degree: usize, gens: &[Permutation], bound: &BigCount) -> Self {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if gens.is_empty() {
            return chain;
        }
        for g in &gens {
            chain.absorb(g.clone());
        }
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
        let mut state: Vec<Permutation> = gens.iter().cycle().take(gens.len().max(10)).cloned().collect();
        let mut acc = Permutation::identity(degree);
        for _ in 0..50 {
            product_replacement(&mut state, &mut acc, &mut rng);
        }
        let mut fruitless = 0;
        while &chain.order() < bound && fruitless < FRUITLESS_LIMIT {
            product_replacement(&mut state, &mut acc, &mut rng);
            if chain.absorb(acc.clone()) {
                fruitless = 0;
            } else {
                fruitless += 1;
            }
        }
        if &chain.order() != bound {
            let top = chain.levels.len() - 1;
            chain.complete_from(top);
        }
        chain
    }

    /// Sifts `g` and keeps a nontrivial residue as a strong generator.
    fn absorb(&mut self, mut g: Permutation) -> bool {
        let j = self.sift(&mut g, 0);
        if j == self.levels.len() {
            match g.first_moved() {
                None => return false,
                Some(p) => self.levels.push(Level::new(self.degree, p - 1, Vec::new())),
            }
        }
        for level in &mut self.levels[..=j] {
            level.push_gen(g.clone());
        }
        true
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Base points, 1-based.
    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base + 1).collect()
    }

    /// Basic orbit lengths, one per level.
    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.tree.len()).collect()
    }

    pub fn order(&self) -> BigCount {
        self.levels.iter().map(|l| BigCount::from(l.tree.len())).product()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Strong generators of the level-`l` stabilizer (0-based level).
    pub fn level_generators(&self, l: usize) -> &[Permutation] {
        self.levels.get(l).map(|x| x.gens.as_slice()).unwrap_or(&[])
    }

    /// Sorted list of distinct strong generators.
    pub fn strong_generators(&self) -> Vec<Permutation> {
        let mut out: Vec<Permutation> = self.levels.iter().flat_map(|l| l.gens.iter().cloned()).collect();
        out.sort();
        out.dedup();
        out
    }

    /// The chain for the stabilizer of the first base point.
    pub fn stabilizer_chain(&self) -> StabChain {
        StabChain {
            degree: self.degree,
            levels: self.levels.iter().skip(1).cloned().collect(),
        }
    }

    /// Sifts `g` from level `from`; returns the residue and the level at
    /// which it dropped out (`depth()` when it passed every level).
    fn sift(&self, g: &mut Permutation, from: usize) -> usize {
        for (l, level) in self.levels.iter().enumerate().skip(from) {
            let b = g.apply0(level.base);
            if !level.tree.contains(b) {
                return l;
            }
            level.tree.strip_into(b, g, &level.inverses);
        }
        self.levels.len()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let mut h = g.clone();
        self.sift(&mut h, 0) == self.levels.len() && h.is_identity()
    }

    /// `None` for members; otherwise the 1-based point where sifting fails
    /// (a base point whose image leaves the basic orbit, or the first point
    /// moved by the residue).
    pub fn non_membership_witness(&self, g: &Permutation) -> Option<usize> {
        if g.degree() != self.degree {
            return Some(1);
        }
        let mut h = g.clone();
        let l = self.sift(&mut h, 0);
        if l < self.levels.len() {
            Some(self.levels[l].base + 1)
        } else {
            h.first_moved()
        }
    }

    /// Adds `g` to the group; returns `false` if it was already a member.
    pub(crate) fn add_generator(&mut self, g: &Permutation) -> bool {
        if self.contains(g) {
            return false;
        }
        let j = self
            .levels
            .iter()
            .position(|l| g.apply0(l.base) != l.base)
            .unwrap_or(self.levels.len());
        if j == self.levels.len() {
            let p = g.first_moved().expect("non-member is not the identity") - 1;
            self.levels.push(Level::new(self.degree, p, Vec::new()));
        }
        for level in &mut self.levels[..=j] {
            level.push_gen(g.clone());
        }
        self.complete_from(j);
        true
    }

    /// Main Schreier–Sims loop; levels above `start` must already be complete.
    fn complete_from(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let li = i as usize;
            match self.find_nontrivial_schreier_residue(li) {
                None => i -= 1,
                Some((residue, j)) => {
                    if j == self.levels.len() {
                        let p = residue.first_moved().expect("nontrivial residue") - 1;
                        self.levels.push(Level::new(self.degree, p, Vec::new()));
                    }
                    for level in &mut self.levels[li + 1..=j] {
                        level.push_gen(residue.clone());
                    }
                    i = j as isize;
                }
            }
        }
    }

    fn find_nontrivial_schreier_residue(&mut self, i: usize) -> Option<(Permutation, usize)> {
        let depth = self.levels.len();
        let mut pos = 0;
        while pos < self.levels[i].tree.len() {
            let level = &self.levels[i];
            let ngens = level.gens.len();
            let start = level.checked[pos] as usize;
            if start >= ngens {
                pos += 1;
                continue;
            }
            let beta = level.tree.points[pos] as usize;
            let u_beta = level.tree.element(beta, &level.gens, &level.inverses);
            for x in start..ngens {
                let level = &self.levels[i];
                let gamma = level.gens[x].apply0(beta);
                let tree_edge =
                    level.tree.label(gamma) == Some(x) && level.inverses[x].apply0(gamma) == beta;
                if !tree_edge {
                    let mut h = u_beta.clone();
                    h.right_mul_assign(&level.gens[x]);
                    level.tree.strip_into(gamma, &mut h, &level.inverses);
                    let j = self.sift(&mut h, i + 1);
                    if j < depth || !h.is_identity() {
                        return Some((h, j));
                    }
                }
                self.levels[i].checked[pos] = x as u32 + 1;
            }
            pos += 1;
        }
        None
    }

    /// All group elements in chain-traversal order. Intended for small groups.
    pub(crate) fn elements(&self) -> Vec<Permutation> {
        let transversals: Vec<Vec<Permutation>> = self
            .levels
            .iter()
            .map(|l| {
                l.tree
                    .points
                    .iter()
                    .map(|&p| l.tree.element(p as usize, &l.gens, &l.inverses))
                    .collect()
            })
            .collect();
        let mut out = alloc::vec![Permutation::identity(self.degree)];
        // g = u_(k-1) ... u_1 u_0, top level varying slowest.
        for t in transversals.iter().rev() {
            let mut next = Vec::with_capacity(out.len() * t.len());
            for u in t {
                for h in &out {
                    next.push(h.mul_unchecked(u));
                }
            }
            out = next;
        }
        out
    }
}

/// One product-replacement step; the running product `acc` is the output.
fn product_replacement(state: &mut [Permutation], acc: &mut Permutation, rng: &mut ChaCha8Rng) {
    let n = state.len() as u64;
    let i = (rng.next_u64() % n) as usize;
    let j = loop {
        let j = (rng.next_u64() % n) as usize;
        if j != i {
            break j;
        }
    };
    let x = if rng.next_u32() & 1 == 0 {
        state[j].clone()
    } else {
        state[j].inverse()
    };
    state[i].right_mul_assign(&x);
    acc.right_mul_assign(&state[i]);
}
