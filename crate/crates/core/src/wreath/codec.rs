use alloc::vec::Vec;

use crate::{Error, Result};

/// Lexicographic ranking of `{1..m}^n`, coordinate 1 most significant.
///
/// `rank((1,...,1)) = 1` and `rank((m,...,m)) = m^n`; `t` precedes `t'`
/// exactly when `rank(t) < rank(t')`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TupleCodec {
    m: usize,
    n: usize,
    size: usize,
}

impl TupleCodec {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::Invalid("alphabet size must be positive".into()));
        }
        let size = checked_pow(m, n).ok_or_else(|| {
            Error::NotRepresentable(alloc::format!("{m}^{n} does not fit in a machine word"))
        })?;
        Ok(TupleCodec { m, n, size })
    }

    pub fn alphabet(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Number of tuples, `m^n`.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.n {
            return Err(Error::Shape(alloc::format!(
                "tuple of length {} for codec of length {}",
                tuple.len(),
                self.n
            )));
        }
        let mut r = 0usize;
        for &t in tuple {
            if t == 0 || t > self.m {
                return Err(Error::PointOutOfRange {
                    point: t,
                    degree: self.m,
                });
            }
            r = r * self.m + (t - 1);
        }
        Ok(r + 1)
    }

    pub fn unrank(&self, rank: usize) -> Result<Vec<usize>> {
        if rank == 0 || rank > self.size {
            return Err(Error::PointOutOfRange {
                point: rank,
                degree: self.size,
            });
        }
        let mut r = rank - 1;
        let mut out = alloc::vec![0; self.n];
        for slot in out.iter_mut().rev() {
            *slot = r % self.m + 1;
            r /= self.m;
        }
        Ok(out)
    }

    /// Rank of the constant tuple `(i,...,i)`.
    pub fn diagonal(&self, i: usize) -> Result<usize> {
        self.rank(&alloc::vec![i; self.n])
    }
}

pub(crate) fn checked_pow(m: usize, n: usize) -> Option<usize> {
    let mut acc: usize = 1;
    for _ in 0..n {
        acc = acc.checked_mul(m)?;
    }
    Some(acc)
}

/// Whether `a` precedes `b` in lexicographic order.
pub fn precedes(a: &[usize], b: &[usize]) -> bool {
    a.iter()
        .zip(b)
        .find(|(x, y)| x != y)
        .is_some_and(|(x, y)| x < y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn extremes() {
        let c = TupleCodec::new(5, 5).unwrap();
        assert_eq!(c.rank(&[1, 1, 1, 1, 1]).unwrap(), 1);
        assert_eq!(c.rank(&[5, 5, 5, 5, 5]).unwrap(), 3125);
        assert_eq!(c.rank(&[1, 1, 1, 1, 2]).unwrap(), 2);
        assert_eq!(c.rank(&[2, 1, 1, 1, 1]).unwrap(), 626);
        assert_eq!(c.diagonal(3).unwrap(), 1 + 2 * 781);
        assert!(c.rank(&[1, 1, 1, 1, 6]).is_err());
        assert!(c.rank(&[1, 1]).is_err());
        assert!(c.unrank(0).is_err());
        assert!(TupleCodec::new(5, 3125).is_err());
        assert_eq!(TupleCodec::new(3, 0).unwrap().size(), 1);
    }

    proptest! {
        #[test]
        fn round_trip(m in 1usize..7, t in proptest::collection::vec(1usize..7, 0..8)) {
            let t: Vec<usize> = t.into_iter().map(|x| (x - 1) % m + 1).collect();
            let c = TupleCodec::new(m, t.len()).unwrap();
            let r = c.rank(&t).unwrap();
            prop_assert!(r >= 1 && r <= c.size());
            prop_assert_eq!(c.unrank(r).unwrap(), t);
        }

        #[test]
        fn monotone(m in 2usize..6, a in proptest::collection::vec(1usize..6, 5), b in proptest::collection::vec(1usize..6, 5)) {
            let a: Vec<usize> = a.into_iter().map(|x| (x - 1) % m + 1).collect();
            let b: Vec<usize> = b.into_iter().map(|x| (x - 1) % m + 1).collect();
            let c = TupleCodec::new(m, 5).unwrap();
            prop_assert_eq!(precedes(&a, &b), c.rank(&a).unwrap() < c.rank(&b).unwrap());
        }
    }
}
