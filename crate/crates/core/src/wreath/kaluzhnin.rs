//! The rebracketing `A ⊛ (B ≀ C) ≅ (A ⊛ B) ⊛ C` as an explicit point bijection.

use alloc::vec::Vec;

use super::codec::TupleCodec;
use super::group::{build_exponentiation, build_perm_wreath};
use crate::perm::{PermGroup, Permutation};
use crate::{BigCount, Error, Result};

/// Point bijection from `{1..n1}^(n2·n3)` to `({1..n1}^n2)^n3`.
///
/// A left point is a tuple indexed by pairs `(b, c)` at position
/// `n2(c-1)+b`; it is read as the `n3`-tuple whose `c`-th entry is the block
/// `(F(1,c), ..., F(n2,c))`.
pub fn kaluzhnin_bijection(n1: usize, n2: usize, n3: usize, cap: usize) -> Result<Permutation> {
    let inner_len = n2
        .checked_mul(n3)
        .ok_or_else(|| Error::NotRepresentable("n2·n3".into()))?;
    let left = TupleCodec::new(n1, inner_len).map_err(|_| overflow(n1, inner_len, cap))?;
    if left.size() > cap {
        return Err(overflow(n1, inner_len, cap));
    }
    let block = TupleCodec::new(n1, n2)?;
    let outer = TupleCodec::new(block.size(), n3)?;
    let mut images = Vec::with_capacity(left.size());
    let mut blocks = alloc::vec![0usize; n3];
    for r in 1..=left.size() {
        let f = left.unrank(r)?;
        for (c, slot) in blocks.iter_mut().enumerate() {
            *slot = block.rank(&f[n2 * c..n2 * (c + 1)])?;
        }
        images.push(outer.rank(&blocks)?);
    }
    Permutation::from_images(&images)
}

fn overflow(n1: usize, e: usize, cap: usize) -> Error {
    Error::DegreeOverflow {
        degree: alloc::format!("{}", BigCount::from(n1).pow(e as u64)),
        cap,
    }
}

/// Why a conjugated generator is not in the target group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    /// 1-based index into the generators of `A ⊛ (B ≀ C)`.
    pub generator: usize,
    /// First point at which sifting through the target chain fails.
    pub point: usize,
}

#[derive(Debug, Clone)]
pub struct KaluzhninCertificate {
    pub degree: usize,
    /// Whether the bijection is the identity on flattened points.
    pub bijection_is_identity: bool,
    pub left_order: BigCount,
    pub right_order: BigCount,
    /// Per-generator membership of the conjugated generator in `(A ⊛ B) ⊛ C`.
    pub memberships: Vec<bool>,
    pub counterexample: Option<Counterexample>,
}

impl KaluzhninCertificate {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
            && self.memberships.iter().all(|&m| m)
            && self.left_order == self.right_order
    }
}

/// Conjugates every generator of `A ⊛ (B ≀ C)` by the rebracketing bijection
/// and checks membership in `(A ⊛ B) ⊛ C`, and compares the two orders.
pub fn kaluzhnin_check(
    a: &PermGroup,
    b: &PermGroup,
    c: &PermGroup,
    cap: usize,
    strict: bool,
) -> Result<KaluzhninCertificate> {
    let phi = kaluzhnin_bijection(a.degree(), b.degree(), c.degree(), cap)?;
    let left = build_exponentiation(a, &build_perm_wreath(b, c, cap, strict)?, cap, strict)?;
    let right = build_exponentiation(&build_exponentiation(a, b, cap, strict)?, c, cap, strict)?;
    let mut memberships = Vec::with_capacity(left.generators().len());
    let mut counterexample = None;
    for (i, g) in left.generators().iter().enumerate() {
        let moved = phi.conjugate(g);
        let witness = right.chain().non_membership_witness(&moved);
        memberships.push(witness.is_none());
        if let (Some(point), None) = (witness, &counterexample) {
            counterexample = Some(Counterexample {
                generator: i + 1,
                point,
            });
        }
    }
    Ok(KaluzhninCertificate {
        degree: phi.degree(),
        bijection_is_identity: phi.is_identity(),
        left_order: left.order(),
        right_order: right.order(),
        memberships,
        counterexample,
    })
}
