//! Elements of `A^N wr B` and the row-collision certificate of
//! non-generation.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand_core::RngCore;

use crate::perm::Permutation;
use crate::{Error, Result};

/// An element `((x_(j,l))_(j,l), tau)` of `A^N wr B`: `n` blocks of `N`
/// elements of `A`, and `tau` of degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerWreathElement {
    /// `blocks[j][l]` is the `l`-th coordinate of block `j` (0-based).
    pub blocks: Vec<Vec<Permutation>>,
    pub top: Permutation,
}

impl PowerWreathElement {
    pub fn new(blocks: Vec<Vec<Permutation>>, top: Permutation) -> Result<Self> {
        if blocks.len() != top.degree() {
            return Err(Error::Shape(alloc::format!(
                "{} blocks for a top of degree {}",
                blocks.len(),
                top.degree()
            )));
        }
        let rows = blocks.first().map_or(0, Vec::len);
        let degree = blocks.first().and_then(|b| b.first()).map(Permutation::degree);
        if rows == 0 || blocks.iter().any(|b| b.len() != rows || b.iter().any(|x| Some(x.degree()) != degree)) {
            return Err(Error::Shape("blocks must be non-empty with equal lengths and degrees".into()));
        }
        Ok(PowerWreathElement { blocks, top })
    }

    pub fn identity(n: usize, rows: usize, degree: usize) -> Self {
        PowerWreathElement {
            blocks: alloc::vec![alloc::vec![Permutation::identity(degree); rows]; n],
            top: Permutation::identity(n),
        }
    }

    /// `N`.
    pub fn rows(&self) -> usize {
        self.blocks[0].len()
    }

    /// `(f, tau)(g, rho) = (h, tau rho)` with `h[j] = f[j] g[j^tau]`.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.blocks.len() != other.blocks.len() || self.rows() != other.rows() {
            return Err(Error::Shape("elements of different wreath products".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .enumerate()
            .map(|(j, f)| {
                let g = &other.blocks[self.top.apply(j + 1) - 1];
                f.iter().zip(g).map(|(x, y)| x.compose(y)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(PowerWreathElement {
            blocks,
            top: self.top.compose(&other.top)?,
        })
    }

    pub fn inverse(&self) -> Self {
        let inv = self.top.inverse();
        let blocks = (0..self.blocks.len())
            .map(|j| {
                self.blocks[inv.apply(j + 1) - 1]
                    .iter()
                    .map(Permutation::inverse)
                    .collect()
            })
            .collect();
        PowerWreathElement { blocks, top: inv }
    }

    /// Whether rows `l1` and `l2` (1-based) agree in every block.
    pub fn rows_agree(&self, l1: usize, l2: usize) -> bool {
        self.blocks.iter().all(|b| b[l1 - 1] == b[l2 - 1])
    }
}

/// Two rows `l1 < l2` (1-based) of the `N x nd` matrix
/// `M[l, n(i-1)+j] = x^i_(j,l)` that are equal.
///
/// A collision means every element of the generated subgroup agrees at rows
/// `l1` and `l2` in every block, so the elements cannot generate
/// `A^N wr B` (for nontrivial `A`). It is guaranteed once `N > |A|^(nd)`.
pub fn row_collision_witness(elements: &[PowerWreathElement]) -> Result<Option<(usize, usize)>> {
    let first = elements
        .first()
        .ok_or_else(|| Error::Invalid("no elements".into()))?;
    let (n, rows) = (first.blocks.len(), first.rows());
    if elements.iter().any(|e| e.blocks.len() != n || e.rows() != rows) {
        return Err(Error::Shape("elements of different wreath products".into()));
    }
    let mut seen: BTreeMap<Vec<&Permutation>, usize> = BTreeMap::new();
    for l in 0..rows {
        let row: Vec<&Permutation> = elements
            .iter()
            .flat_map(|e| e.blocks.iter().map(move |b| &b[l]))
            .collect();
        if let Some(&earlier) = seen.get(&row) {
            return Ok(Some((earlier + 1, l + 1)));
        }
        seen.insert(row, l);
    }
    Ok(None)
}

/// Samples `samples` random words of length `length` in the elements and
/// their inverses; returns how many satisfy the row equality.
pub fn sample_collision_words(
    elements: &[PowerWreathElement],
    rows: (usize, usize),
    samples: usize,
    length: usize,
    rng: &mut impl RngCore,
) -> Result<usize> {
    let first = elements
        .first()
        .ok_or_else(|| Error::Invalid("no elements".into()))?;
    let letters: Vec<PowerWreathElement> = elements
        .iter()
        .cloned()
        .chain(elements.iter().map(PowerWreathElement::inverse))
        .collect();
    let degree = first.blocks[0][0].degree();
    let mut hits = 0;
    for _ in 0..samples {
        let mut w = PowerWreathElement::identity(first.blocks.len(), first.rows(), degree);
        for _ in 0..length {
            let pick = (rng.next_u64() % letters.len() as u64) as usize;
            w = w.multiply(&letters[pick])?;
        }
        if w.rows_agree(rows.0, rows.1) {
            hits += 1;
        }
    }
    Ok(hits)
}
