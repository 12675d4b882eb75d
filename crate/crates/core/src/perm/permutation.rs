use core::fmt;

use alloc::vec::Vec;
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

use crate::{Error, Result};

/// A bijection of `{1..degree}`, stored as a 0-based image table.
///
/// Composition follows the right-action convention: `x^(pq) = (x^p)^q`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from a 1-based image list.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        let mut table = Vec::with_capacity(n);
        for &img in images {
            if img == 0 || img > n {
                return Err(Error::PointOutOfRange {
                    point: img,
                    degree: n,
                });
            }
            if core::mem::replace(&mut seen[img - 1], true) {
                return Err(Error::NotBijection(alloc::format!(
                    "point {img} appears twice"
                )));
            }
            table.push((img - 1) as u32);
        }
        Ok(Permutation { images: table })
    }

    /// Builds a permutation from a 0-based table already known to be a bijection.
    pub(crate) fn from_table_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(is_bijection(&images));
        Permutation { images }
    }

    /// Builds a permutation from disjoint cycles given with 1-based points.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = alloc::vec![false; degree];
        for cycle in cycles {
            for &p in cycle.iter() {
                if p == 0 || p > degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if core::mem::replace(&mut seen[p - 1], true) {
                    return Err(Error::NotBijection(alloc::format!(
                        "point {p} repeated across cycles"
                    )));
                }
            }
            for (i, &p) in cycle.iter().enumerate() {
                let next = cycle[(i + 1) % cycle.len()];
                images[p - 1] = (next - 1) as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> usize {
        self.images[point - 1] as usize + 1
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply0(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    /// The 0-based image table.
    pub fn table(&self) -> &[u32] {
        &self.images
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self * other`, checking degrees.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self
                .images
                .iter()
                .map(|&i| other.images[i as usize])
                .collect(),
        }
    }

    /// In place `self <- self * other`.
    #[inline]
    pub(crate) fn right_mul_assign(&mut self, other: &Permutation) {
        for x in self.images.iter_mut() {
            *x = other.images[*x as usize];
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = alloc::vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `self^-1 * g * self`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        // x -> x^(p^-1 g p): map x^p to (x^g)^p.
        let mut out = alloc::vec![0u32; self.images.len()];
        for (x, &gx) in g.images.iter().enumerate() {
            out[self.images[x] as usize] = self.images[gx as usize];
        }
        Permutation { images: out }
    }

    /// The commutator `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Permutation) -> Permutation {
        self.inverse()
            .mul_unchecked(&other.inverse())
            .mul_unchecked(self)
            .mul_unchecked(other)
    }

    /// `self^k`, computed cycle by cycle in linear time.
    pub fn pow(&self, k: u64) -> Permutation {
        let n = self.degree();
        let mut out = alloc::vec![0u32; n];
        let mut done = alloc::vec![false; n];
        let mut cycle = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            cycle.clear();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                cycle.push(x as u32);
                x = self.images[x] as usize;
            }
            let len = cycle.len();
            let shift = (k % len as u64) as usize;
            for (i, &p) in cycle.iter().enumerate() {
                out[p as usize] = cycle[(i + shift) % len];
            }
        }
        Permutation { images: out }
    }

    /// Disjoint cycles of length at least two, each starting at its smallest
    /// point, ordered by that point. Points are 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut done = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if done[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !done[x] {
                done[x] = true;
                cycle.push(x + 1);
                x = self.images[x] as usize;
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Element order (lcm of the cycle lengths).
    pub fn order(&self) -> BigUint {
        let mut acc = BigUint::one();
        for c in self.cycles() {
            acc = acc.lcm(&BigUint::from(c.len()));
        }
        acc
    }

    /// Element order as `u64`, if it fits.
    pub fn order_u64(&self) -> Option<u64> {
        num_traits::ToPrimitive::to_u64(&self.order())
    }

    /// Fixed points, 1-based and ascending.
    pub fn fixed_points(&self) -> Vec<usize> {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i == x as usize)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Smallest moved point (1-based), if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i + 1)
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }
}

fn is_bijection(table: &[u32]) -> bool {
    let mut seen = alloc::vec![false; table.len()];
    table.iter().all(|&x| {
        (x as usize) < table.len() && !core::mem::replace(&mut seen[x as usize], true)
    })
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_cycles(self))
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", super::text::format_cycles(self))
    }
}

impl core::ops::Mul for &Permutation {
    type Output = Permutation;

    /// Panics on degree mismatch; use [`Permutation::compose`] for the checked form.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.degree(), rhs.degree(), "degree mismatch");
        self.mul_unchecked(rhs)
    }
}
