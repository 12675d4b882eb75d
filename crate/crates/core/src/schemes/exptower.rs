//! Iterated exponentiation `S~_k = S_k ⊛ S~_(k-1)` over structured level
//! groups, with the embeddings the constructions need.

use alloc::vec::Vec;

use crate::wreath::{Action, Elem, Shape, StructuredGroup, TupleCodec};
use crate::{BigCount, Error, Result};

#[derive(Debug, Clone)]
pub(crate) struct ExpTower {
    pub groups: Vec<StructuredGroup>,
    /// Shape of `S~_k` at index `k - 1`.
    pub shapes: Vec<Shape>,
    pub degrees: Vec<BigCount>,
    pub orders: Vec<BigCount>,
}

impl ExpTower {
    pub fn new(groups: Vec<StructuredGroup>) -> Result<Self> {
        let mut shapes: Vec<Shape> = Vec::with_capacity(groups.len());
        let mut degrees: Vec<BigCount> = Vec::with_capacity(groups.len());
        let mut orders: Vec<BigCount> = Vec::with_capacity(groups.len());
        for g in &groups {
            match (shapes.last(), degrees.last(), orders.last()) {
                (Some(below), Some(deg), Some(ord)) => {
                    let shape = Shape::wreath(Action::Exp, g.shape().clone(), below.clone());
                    let degree = g.degree()?.pow_big(deg)?;
                    let order = g.order().pow_big(deg)? * ord.clone();
                    shapes.push(shape);
                    degrees.push(degree);
                    orders.push(order);
                }
                _ => {
                    shapes.push(g.shape().clone());
                    degrees.push(g.degree()?);
                    orders.push(g.order().clone());
                }
            }
        }
        Ok(ExpTower {
            groups,
            shapes,
            degrees,
            orders,
        })
    }

    pub fn depth(&self) -> usize {
        self.groups.len()
    }

    pub fn shape(&self, k: usize) -> &Shape {
        &self.shapes[k - 1]
    }

    pub fn order(&self, k: usize) -> &BigCount {
        &self.orders[k - 1]
    }

    /// Degree `m_k` of the level group.
    pub fn level_degree(&self, k: usize) -> Result<usize> {
        self.groups[k - 1]
            .shape()
            .degree_usize()
            .ok_or_else(|| Error::NotRepresentable(alloc::format!("degree of level group {k}")))
    }

    /// Number of points of `S~_k`, when it fits in a machine word.
    pub fn tilde_degree(&self, k: usize) -> Result<usize> {
        self.degrees[k - 1]
            .to_usize()
            .ok_or_else(|| Error::NotRepresentable(alloc::format!("degree of level {k}")))
    }

    /// Membership in the full iterated exponentiation `S~_k`.
    pub fn contains(&self, x: &Elem, k: usize) -> bool {
        if k == 1 {
            return self.groups[0].contains_in_product(x);
        }
        match x.as_wreath() {
            Some(w) => {
                w.action() == Action::Exp
                    && self.tilde_degree(k - 1).ok() == Some(w.base().len())
                    && w.base().iter().all(|b| self.groups[k - 1].contains_in_product(b))
                    && self.contains(w.top(), k - 1)
            }
            None => false,
        }
    }

    /// Lifts an element of `S~_k` to `S~_n` through the top embeddings.
    pub fn lift(&self, mut x: Elem, k: usize, n: usize) -> Result<Elem> {
        for l in k + 1..=n {
            x = Elem::top_embedding(self.shape(l), x)?;
        }
        Ok(x)
    }

    /// The element of `S~_k` (`k >= 2`) with the given level-`k` elements at
    /// the given 1-based points of `S~_(k-1)` and identity elsewhere.
    pub fn base_factor(&self, k: usize, placements: &[(usize, Elem)]) -> Result<Elem> {
        let zero_based: Vec<(usize, Elem)> = placements.iter().map(|(p, x)| (p - 1, x.clone())).collect();
        Elem::base_embedding(self.shape(k), &zero_based)
    }

    /// The diagonal point `(x,...,x)` of `S~_k` as a 1-based point.
    pub fn diagonal(&self, k: usize, x: usize) -> Result<usize> {
        if k == 1 {
            return Ok(x);
        }
        TupleCodec::new(self.level_degree(k)?, self.tilde_degree(k - 1)?)?.diagonal(x)
    }

    /// Product of `factors[k]` lifted from level `k` to level `n`, in the
    /// given order.
    pub fn lifted_product(&self, factors: &[(usize, Elem)], n: usize) -> Result<Elem> {
        let mut acc = self.shape(n).identity()?;
        for (k, x) in factors {
            acc = acc.multiply(&self.lift(x.clone(), *k, n)?)?;
        }
        Ok(acc)
    }
}
