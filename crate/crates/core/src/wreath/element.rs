use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::perm::Permutation;
use crate::{BigCount, Error, Result};

use super::codec::{checked_pow, TupleCodec};

/// Largest number of base coordinates a structured element may materialize.
pub const MAX_COORDINATES: usize = 1 << 22;

/// How the wreath product acts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Action {
    /// Product action on `{1..m}^n` ("exponentiation").
    Exp,
    /// Imprimitive action on `{1..m} x {1..n}`, pair `(i, j)` coded `m(j-1)+i`.
    Perm,
}

/// The type of a (possibly nested) wreath element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Shape {
    Perm(usize),
    Wreath {
        action: Action,
        base: Box<Shape>,
        top: Box<Shape>,
    },
}

impl Shape {
    pub fn wreath(action: Action, base: Shape, top: Shape) -> Shape {
        Shape::Wreath {
            action,
            base: Box::new(base),
            top: Box::new(top),
        }
    }

    /// Degree of the action, exactly.
    pub fn degree(&self) -> Result<BigCount> {
        match self {
            Shape::Perm(d) => Ok(BigCount::from(*d)),
            Shape::Wreath { action, base, top } => {
                let m = base.degree()?;
                let n = top.degree()?;
                match action {
                    Action::Exp => m.pow_big(&n),
                    Action::Perm => Ok(m * n),
                }
            }
        }
    }

    pub fn degree_usize(&self) -> Option<usize> {
        match self {
            Shape::Perm(d) => Some(*d),
            Shape::Wreath { action, base, top } => {
                let m = base.degree_usize()?;
                let n = top.degree_usize()?;
                match action {
                    Action::Exp => checked_pow(m, n),
                    Action::Perm => m.checked_mul(n),
                }
            }
        }
    }

    /// Number of base coordinates (the degree of the top group).
    pub fn coordinates(&self) -> Option<usize> {
        match self {
            Shape::Perm(_) => None,
            Shape::Wreath { top, .. } => top.degree_usize(),
        }
    }

    pub fn identity(&self) -> Result<Elem> {
        match self {
            Shape::Perm(d) => Ok(Elem::Perm(Permutation::identity(*d))),
            Shape::Wreath { action, base, top } => {
                let n = materializable(top)?;
                let e = base.identity()?;
                Ok(Elem::Wreath(Box::new(WreathElement {
                    action: *action,
                    base: alloc::vec![e; n],
                    top: top.identity()?,
                })))
            }
        }
    }

    /// Nesting depth; a plain permutation has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Shape::Perm(_) => 0,
            Shape::Wreath { top, base, .. } => 1 + top.depth().max(base.depth()),
        }
    }
}

fn materializable(top: &Shape) -> Result<usize> {
    match top.degree_usize() {
        Some(n) if n <= MAX_COORDINATES => Ok(n),
        _ => Err(Error::NotRepresentable(alloc::format!(
            "{} base coordinates cannot be materialized",
            top.degree().map(|d| alloc::format!("{d}")).unwrap_or_else(|_| "too many".into())
        ))),
    }
}

/// An element of a (possibly iterated) wreath product.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Elem {
    Perm(Permutation),
    Wreath(Box<WreathElement>),
}

/// A pair `(base, top)`: `base` is a tuple over the inner group indexed by
/// the points of the top group.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WreathElement {
    action: Action,
    base: Vec<Elem>,
    top: Elem,
}

impl WreathElement {
    pub fn new(action: Action, base: Vec<Elem>, top: Elem) -> Result<Self> {
        let n = top.degree_usize().ok_or_else(|| Error::Shape("top degree too large".into()))?;
        if base.len() != n {
            return Err(Error::Shape(alloc::format!(
                "base has {} coordinates, top has degree {n}",
                base.len()
            )));
        }
        let first = base[0].shape();
        if let Some(k) = base.iter().position(|b| b.shape() != first) {
            return Err(Error::Shape(alloc::format!("base coordinate {} has a different shape", k + 1)));
        }
        Ok(WreathElement { action, base, top })
    }

    pub fn action(&self) -> Action {
        self.action
    }

    pub fn base(&self) -> &[Elem] {
        &self.base
    }

    pub fn top(&self) -> &Elem {
        &self.top
    }

    /// Product action on a 1-based tuple: the base acts coordinatewise, then
    /// the top permutes coordinates (`r_(k^top) = t_k^base[k]`).
    pub fn act_on_tuple(&self, tuple: &[usize]) -> Result<Vec<usize>> {
        if self.action != Action::Exp {
            return Err(Error::Shape("tuple action needs a product-action element".into()));
        }
        if tuple.len() != self.base.len() {
            return Err(Error::Shape(alloc::format!(
                "tuple of length {} for {} coordinates",
                tuple.len(),
                self.base.len()
            )));
        }
        let mut out = alloc::vec![0; tuple.len()];
        for (k, (&t, b)) in tuple.iter().zip(&self.base).enumerate() {
            out[self.top.apply(k + 1)? - 1] = b.apply(t)?;
        }
        Ok(out)
    }
}

impl Elem {
    pub fn wreath(action: Action, base: Vec<Elem>, top: Elem) -> Result<Elem> {
        Ok(Elem::Wreath(Box::new(WreathElement::new(action, base, top)?)))
    }

    /// The element with `x` at the given 0-based coordinates of the base,
    /// identity elsewhere, and identity top.
    pub fn base_embedding(shape: &Shape, placements: &[(usize, Elem)]) -> Result<Elem> {
        let mut id = shape.identity()?;
        match &mut id {
            Elem::Wreath(w) => {
                for (k, x) in placements {
                    let slot = w
                        .base
                        .get_mut(*k)
                        .ok_or_else(|| Error::Shape(alloc::format!("coordinate {} out of range", k + 1)))?;
                    if x.shape() != slot.shape() {
                        return Err(Error::Shape("embedded element has the wrong shape".into()));
                    }
                    *slot = x.clone();
                }
                Ok(id)
            }
            Elem::Perm(_) => Err(Error::Shape("base embedding into a flat shape".into())),
        }
    }

    /// The element with identity base and the given top.
    pub fn top_embedding(shape: &Shape, top: Elem) -> Result<Elem> {
        match shape {
            Shape::Wreath { action, base, top: top_shape } => {
                if &top.shape() != top_shape.as_ref() {
                    return Err(Error::Shape("top element has the wrong shape".into()));
                }
                let n = materializable(top_shape)?;
                Ok(Elem::Wreath(Box::new(WreathElement {
                    action: *action,
                    base: alloc::vec![base.identity()?; n],
                    top,
                })))
            }
            Shape::Perm(_) => Err(Error::Shape("top embedding into a flat shape".into())),
        }
    }

    pub fn shape(&self) -> Shape {
        match self {
            Elem::Perm(p) => Shape::Perm(p.degree()),
            Elem::Wreath(w) => Shape::wreath(w.action, w.base[0].shape(), w.top.shape()),
        }
    }

    pub fn degree_usize(&self) -> Option<usize> {
        self.shape().degree_usize()
    }

    pub fn as_perm(&self) -> Option<&Permutation> {
        match self {
            Elem::Perm(p) => Some(p),
            Elem::Wreath(_) => None,
        }
    }

    pub fn as_wreath(&self) -> Option<&WreathElement> {
        match self {
            Elem::Perm(_) => None,
            Elem::Wreath(w) => Some(w),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            Elem::Perm(p) => p.is_identity(),
            Elem::Wreath(w) => w.top.is_identity() && w.base.iter().all(Elem::is_identity),
        }
    }

    /// `(f, t)(g, r) = (h, tr)` with `h[k] = f[k] g[k^t]`.
    pub fn multiply(&self, other: &Elem) -> Result<Elem> {
        match (self, other) {
            (Elem::Perm(a), Elem::Perm(b)) => Ok(Elem::Perm(a.compose(b)?)),
            (Elem::Wreath(a), Elem::Wreath(b)) => {
                if a.action != b.action || a.base.len() != b.base.len() {
                    return Err(Error::Shape("multiplying elements of different wreath products".into()));
                }
                let tau = a.top.table()?;
                let base = a
                    .base
                    .iter()
                    .zip(&tau)
                    .map(|(f, &t)| f.multiply(&b.base[t as usize]))
                    .collect::<Result<Vec<_>>>()?;
                Ok(Elem::Wreath(Box::new(WreathElement {
                    action: a.action,
                    base,
                    top: a.top.multiply(&b.top)?,
                })))
            }
            _ => Err(Error::Shape("multiplying a flat and a structured element".into())),
        }
    }

    /// `(f, t)^-1 = (f', t^-1)` with `f'[k] = f[k^(t^-1)]^-1`.
    pub fn inverse(&self) -> Elem {
        match self {
            Elem::Perm(p) => Elem::Perm(p.inverse()),
            Elem::Wreath(w) => {
                let top_inv = w.top.inverse();
                let t = top_inv.table().expect("top of a valid element is materializable");
                let base = t.iter().map(|&k| w.base[k as usize].inverse()).collect();
                Elem::Wreath(Box::new(WreathElement {
                    action: w.action,
                    base,
                    top: top_inv,
                }))
            }
        }
    }

    pub fn pow(&self, mut k: u64) -> Result<Elem> {
        let mut acc = self.shape().identity()?;
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.multiply(&sq)?;
            }
            k >>= 1;
            if k > 0 {
                sq = sq.multiply(&sq)?;
            }
        }
        Ok(acc)
    }

    /// `[self, other] = self^-1 other^-1 self other`.
    pub fn commutator(&self, other: &Elem) -> Result<Elem> {
        self.inverse()
            .multiply(&other.inverse())?
            .multiply(self)?
            .multiply(other)
    }

    /// `g^-1 self g`.
    pub fn conjugate_by(&self, g: &Elem) -> Result<Elem> {
        g.inverse().multiply(self)?.multiply(g)
    }

    /// Drops the base: the projection onto the top group.
    pub fn project_top(&self) -> Result<Elem> {
        match self {
            Elem::Wreath(w) => Ok(w.top.clone()),
            Elem::Perm(_) => Err(Error::Shape(
                "flat permutations carry no wreath structure; keep elements structured to project".into(),
            )),
        }
    }

    /// Image of a 1-based point.
    pub fn apply(&self, point: usize) -> Result<usize> {
        match self {
            Elem::Perm(p) => {
                if point == 0 || point > p.degree() {
                    return Err(Error::PointOutOfRange {
                        point,
                        degree: p.degree(),
                    });
                }
                Ok(p.apply(point))
            }
            Elem::Wreath(w) => {
                let m = w.base[0]
                    .degree_usize()
                    .ok_or_else(|| Error::NotRepresentable("inner degree".into()))?;
                match w.action {
                    Action::Exp => {
                        let codec = TupleCodec::new(m, w.base.len())?;
                        let t = codec.unrank(point)?;
                        codec.rank(&w.act_on_tuple(&t)?)
                    }
                    Action::Perm => {
                        let n = w.base.len();
                        if point == 0 || point > m * n {
                            return Err(Error::PointOutOfRange { point, degree: m * n });
                        }
                        let (j, i) = ((point - 1) / m, (point - 1) % m);
                        let i2 = w.base[j].apply(i + 1)? - 1;
                        let j2 = w.top.apply(j + 1)? - 1;
                        Ok(m * j2 + i2 + 1)
                    }
                }
            }
        }
    }

    /// Full 0-based image table of the action. No cap is applied here.
    pub(crate) fn table(&self) -> Result<Vec<u32>> {
        match self {
            Elem::Perm(p) => Ok(p.table().to_vec()),
            Elem::Wreath(w) => {
                let base: Vec<Vec<u32>> = w.base.iter().map(Elem::table).collect::<Result<_>>()?;
                let top = w.top.table()?;
                let m = base[0].len();
                match w.action {
                    Action::Exp => exp_table(&base, m, &top),
                    Action::Perm => {
                        let size = m
                            .checked_mul(top.len())
                            .filter(|&s| s <= u32::MAX as usize)
                            .ok_or_else(|| Error::NotRepresentable("degree".into()))?;
                        let mut out = alloc::vec![0u32; size];
                        for (j, b) in base.iter().enumerate() {
                            let shift = top[j] as usize * m;
                            for (i, &bi) in b.iter().enumerate() {
                                out[m * j + i] = (shift + bi as usize) as u32;
                            }
                        }
                        Ok(out)
                    }
                }
            }
        }
    }

    /// The permutation of the flattened point set, refusing degrees above `cap`.
    pub fn flatten(&self, cap: usize) -> Result<Permutation> {
        let shape = self.shape();
        match shape.degree_usize() {
            Some(d) if d <= cap => Ok(Permutation::from_table_unchecked(self.table()?)),
            _ => Err(Error::DegreeOverflow {
                degree: shape
                    .degree()
                    .map(|d| alloc::format!("{d}"))
                    .unwrap_or_else(|e| alloc::format!("{e}")),
                cap,
            }),
        }
    }
}

fn exp_table(base: &[Vec<u32>], m: usize, top: &[u32]) -> Result<Vec<u32>> {
    let n = base.len();
    let size = checked_pow(m, n)
        .filter(|&s| s <= u32::MAX as usize)
        .ok_or_else(|| Error::NotRepresentable("degree".into()))?;
    let mut weights = alloc::vec![1usize; n];
    for q in (0..n.saturating_sub(1)).rev() {
        weights[q] = weights[q + 1] * m;
    }
    // contribution[k][t]: coordinate k holding digit t lands at position top[k].
    let contribution: Vec<Vec<usize>> = base
        .iter()
        .zip(top)
        .map(|(b, &tk)| b.iter().map(|&x| x as usize * weights[tk as usize]).collect())
        .collect();
    let mut digits = alloc::vec![0usize; n];
    let mut cur: usize = contribution.iter().map(|c| c[0]).sum();
    let mut out = Vec::with_capacity(size);
    for _ in 0..size {
        out.push(cur as u32);
        let mut k = n;
        while k > 0 {
            k -= 1;
            cur -= contribution[k][digits[k]];
            digits[k] += 1;
            if digits[k] < m {
                cur += contribution[k][digits[k]];
                break;
            }
            digits[k] = 0;
            cur += contribution[k][0];
        }
    }
    Ok(out)
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Elem::Perm(p) => write!(f, "{p}"),
            Elem::Wreath(w) => fmt::Debug::fmt(w.as_ref(), f),
        }
    }
}

impl fmt::Debug for WreathElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let moved: Vec<(usize, &Elem)> = self
            .base
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_identity())
            .map(|(k, e)| (k + 1, e))
            .collect();
        write!(f, "{:?}{{base: {:?}, top: {:?}}}", self.action, moved, self.top)
    }
}
