//! The lower bound `d(A^N wr B) >= max{(d(A^N) - d(A) - 1)/n, d(B)}` and
//! its oracles.

mod collision;
mod eulerian;

pub use collision::{row_collision_witness, sample_collision_words, PowerWreathElement};
pub use eulerian::{
    aut_order_plausible, count_automorphisms, d_of_simple_power, d_of_simple_power_with, eulerian_count,
    is_nonabelian_simple, min_generators, TUPLE_BUDGET,
};

use num_rational::Ratio;

use crate::perm::PermGroup;
use crate::{BigCount, Error, Result};

/// Groups with at most this many elements get a brute-force automorphism
/// count to cross-check the declared one.
pub const AUT_CROSSCHECK_LIMIT: u64 = 120;

#[derive(Debug, Clone)]
pub struct BoundInput {
    /// Simple group `A`.
    pub a: PermGroup,
    /// `N >= 1`.
    pub copies: u64,
    /// Perfect permutation group `B` of degree `n`.
    pub b: PermGroup,
    /// `|Aut A|`.
    pub aut_order: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: Ratio<i64>,
    /// `(d(A^N) - d(A) - 1) / n`.
    pub power_term: Ratio<i64>,
    pub d_power: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub n: usize,
    /// Brute-force `|Aut A|`, when `|A|` is small enough.
    pub aut_order_computed: Option<u64>,
}

impl LowerBound {
    /// Whether a generating set of the given size is consistent with the bound.
    pub fn admits(&self, count: usize) -> bool {
        Ratio::from_integer(count as i64) >= self.value
    }
}

/// Evaluates the bound, using `phi` for the generating-tuple counts of `A`.
pub fn lower_bound_with(
    input: &BoundInput,
    phi: impl FnMut(usize) -> Result<BigCount>,
) -> Result<LowerBound> {
    if input.copies == 0 {
        return Err(Error::Invalid("N must be at least 1".into()));
    }
    if !is_nonabelian_simple(&input.a, TUPLE_BUDGET)? {
        return Err(Error::Hypothesis {
            level: 0,
            what: "A is not a nonabelian simple group".into(),
        });
    }
    if !input.b.is_perfect() {
        return Err(Error::Hypothesis {
            level: 0,
            what: "B is not perfect".into(),
        });
    }
    let order_a = input.a.order().to_u64().expect("simplicity check enumerated A");
    if !aut_order_plausible(order_a, input.aut_order) {
        return Err(Error::Invalid(alloc::format!(
            "|Aut A| = {} does not divide {order_a}!",
            input.aut_order
        )));
    }
    let aut_order_computed = if order_a <= AUT_CROSSCHECK_LIMIT {
        let computed = count_automorphisms(&input.a, AUT_CROSSCHECK_LIMIT)?;
        if computed != input.aut_order {
            return Err(Error::Invalid(alloc::format!(
                "declared |Aut A| = {} but {computed} automorphisms were counted",
                input.aut_order
            )));
        }
        Some(computed)
    } else {
        None
    };
    let d_power = d_of_simple_power_with(input.copies, input.aut_order, phi)?;
    let d_a = min_generators(&input.a, TUPLE_BUDGET)?;
    let d_b = min_generators(&input.b, TUPLE_BUDGET)?;
    let n = input.b.degree();
    let power_term = Ratio::new(d_power as i64 - d_a as i64 - 1, n as i64);
    let value = power_term.max(Ratio::from_integer(d_b as i64));
    Ok(LowerBound {
        value,
        power_term,
        d_power,
        d_a,
        d_b,
        n,
        aut_order_computed,
    })
}

pub fn lower_bound(input: &BoundInput) -> Result<LowerBound> {
    let a = input.a.clone();
    lower_bound_with(input, |k| eulerian_count(&a, k, TUPLE_BUDGET))
}
