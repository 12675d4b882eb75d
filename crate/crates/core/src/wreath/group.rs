use alloc::boxed::Box;
use alloc::vec::Vec;

use super::{Action, Elem, Shape};
use crate::perm::{PermGroup, Permutation};
use crate::{BigCount, Error, Result};

/// How the inner group's generators are placed in the base of a wreath product.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    /// Only at coordinate 1; generates the full base when the top is transitive.
    FirstCoordinate,
    /// A copy at every coordinate; generates the full base unconditionally.
    EveryCoordinate,
}

/// A group given by structured generators, together with its exact order.
///
/// The order is the theoretical one: products of constituent orders, which is
/// exact as long as the generators do generate (checked where flattenable).
#[derive(Debug, Clone)]
pub struct StructuredGroup {
    shape: Shape,
    generators: Vec<Elem>,
    order: BigCount,
    transitive: bool,
    factors: Factors,
}

/// The groups the full wreath product is built from.
#[derive(Debug, Clone)]
enum Factors {
    Leaf(PermGroup),
    Wreath(Box<StructuredGroup>, Box<StructuredGroup>),
}

impl StructuredGroup {
    pub fn from_perm_group(g: &PermGroup) -> Self {
        StructuredGroup {
            shape: Shape::Perm(g.degree()),
            generators: g.generators().iter().cloned().map(Elem::Perm).collect(),
            order: g.order(),
            transitive: g.is_transitive(),
            factors: Factors::Leaf(g.clone()),
        }
    }

    /// `inner` wreath `top` under `action`, with the generating set given by
    /// the embedding of the inner generators plus the top generators.
    pub fn wreath(
        action: Action,
        inner: &StructuredGroup,
        top: &StructuredGroup,
        embedding: Embedding,
    ) -> Result<Self> {
        let shape = Shape::wreath(action, inner.shape.clone(), top.shape.clone());
        let n = shape
            .coordinates()
            .ok_or_else(|| Error::NotRepresentable("top degree".into()))?;
        let order = inner.order.pow(n as u64) * top.order.clone();
        let mut generators = Vec::new();
        let coords: &[usize] = &(0..n).collect::<Vec<_>>();
        let coords = match embedding {
            Embedding::FirstCoordinate => &coords[..1],
            Embedding::EveryCoordinate => coords,
        };
        for &k in coords {
            for a in &inner.generators {
                generators.push(Elem::base_embedding(&shape, &[(k, a.clone())])?);
            }
        }
        for b in &top.generators {
            generators.push(Elem::top_embedding(&shape, b.clone())?);
        }
        Ok(StructuredGroup {
            shape,
            generators,
            order,
            transitive: inner.transitive && top.transitive,
            factors: Factors::Wreath(Box::new(inner.clone()), Box::new(top.clone())),
        })
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    /// Theoretical order.
    pub fn order(&self) -> &BigCount {
        &self.order
    }

    pub fn degree(&self) -> Result<BigCount> {
        self.shape.degree()
    }

    /// Transitivity known from the construction.
    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    /// Flattened permutation group on `degree` points; the chain is not built.
    pub fn flatten(&self, cap: usize) -> Result<PermGroup> {
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| g.flatten(cap))
            .collect::<Result<_>>()?;
        let degree = self.shape.degree_usize().ok_or_else(|| Error::DegreeOverflow {
            degree: alloc::format!("{}", self.shape.degree().unwrap_or_default()),
            cap,
        })?;
        if degree > cap {
            return Err(Error::DegreeOverflow {
                degree: alloc::format!("{degree}"),
                cap,
            });
        }
        Ok(PermGroup::new(degree, gens)?.with_order_bound(self.order.clone()))
    }

    /// Membership in the full wreath product over the factor groups, the
    /// group of order [`order`](Self::order) that contains this one.
    pub fn contains_in_product(&self, x: &Elem) -> bool {
        match (&self.factors, x) {
            (Factors::Leaf(g), Elem::Perm(p)) => g.contains(p),
            (Factors::Wreath(inner, top), Elem::Wreath(w)) => {
                let action = match &self.shape {
                    Shape::Wreath { action, .. } => *action,
                    Shape::Perm(_) => return false,
                };
                w.action() == action
                    && Some(w.base().len()) == self.shape.coordinates()
                    && w.base().iter().all(|b| inner.contains_in_product(b))
                    && top.contains_in_product(w.top())
            }
            _ => false,
        }
    }

    pub fn is_flattenable(&self, cap: usize) -> bool {
        self.shape.degree_usize().is_some_and(|d| d <= cap)
    }
}

fn wreath_groups(
    action: Action,
    a: &PermGroup,
    b: &PermGroup,
    cap: usize,
    strict: bool,
) -> Result<PermGroup> {
    let inner = StructuredGroup::from_perm_group(a);
    let top = StructuredGroup::from_perm_group(b);
    let embedding = if top.transitive {
        Embedding::FirstCoordinate
    } else if strict {
        return Err(Error::Hypothesis {
            level: 0,
            what: "top group is not transitive; the first-coordinate generating set needs transitivity".into(),
        });
    } else {
        Embedding::EveryCoordinate
    };
    let shape = Shape::wreath(action, inner.shape.clone(), top.shape.clone());
    if !shape.degree_usize().is_some_and(|d| d <= cap) {
        return Err(Error::DegreeOverflow {
            degree: alloc::format!("{}", shape.degree()?),
            cap,
        });
    }
    StructuredGroup::wreath(action, &inner, &top, embedding)?.flatten(cap)
}

/// `A ⊛ B` acting on `{1..m}^n` in product action.
pub fn build_exponentiation(a: &PermGroup, b: &PermGroup, cap: usize, strict: bool) -> Result<PermGroup> {
    wreath_groups(Action::Exp, a, b, cap, strict)
}

/// `A ≀ B` acting on `m·n` points.
pub fn build_perm_wreath(a: &PermGroup, b: &PermGroup, cap: usize, strict: bool) -> Result<PermGroup> {
    wreath_groups(Action::Perm, a, b, cap, strict)
}
