//! Hypothesis checks on level groups, each backed by a re-checkable
//! certificate.

use alloc::string::String;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::perm::{PermGroup, Permutation};
use crate::wreath::{Action, Elem, Shape, StructuredGroup, TupleCodec};
use crate::{Error, Result};

/// Default bound on the order of groups whose elements are enumerated.
pub const SEARCH_ORDER_LIMIT: u64 = 100_000;

/// Points `i != j` with `St(i) != St(j)`, certified by `element`, which fixes
/// `i` and moves `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerWitness {
    pub i: usize,
    pub j: usize,
    pub element: Permutation,
}

impl StabilizerWitness {
    /// Re-checks the certificate by evaluation.
    pub fn verify(&self) -> bool {
        self.i != self.j && self.element.apply(self.i) == self.i && self.element.apply(self.j) != self.j
    }
}

/// Points `x = (1,...,1)` and `y`, equal to `x` except for a 2 at one
/// coordinate, of an exponentiation `A ⊛ B`, with a top element fixing `x`
/// and moving `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredWitness {
    pub x: usize,
    pub y: usize,
    pub coordinate: usize,
    pub element: Elem,
}

impl StructuredWitness {
    /// Uses the first generator of the top group moving `coordinate`
    /// (1-based). `None` if the inner degree is 1 or no generator moves it.
    pub fn for_exponentiation(g: &StructuredGroup, coordinate: usize) -> Result<Option<Self>> {
        let (m, n) = match g.shape() {
            Shape::Wreath {
                action: Action::Exp,
                base,
                top,
            } => match (base.degree_usize(), top.degree_usize()) {
                (Some(m), Some(n)) => (m, n),
                _ => return Err(Error::NotRepresentable("exponentiation degrees".into())),
            },
            _ => return Err(Error::Shape("not an exponentiation".into())),
        };
        if m < 2 || coordinate == 0 || coordinate > n {
            return Ok(None);
        }
        let codec = TupleCodec::new(m, n)?;
        let mut tuple = alloc::vec![1; n];
        tuple[coordinate - 1] = 2;
        let y = codec.rank(&tuple)?;
        let found = g.generators().iter().find(|e| {
            e.as_wreath().is_some_and(|w| {
                w.base().iter().all(Elem::is_identity) && w.top().apply(coordinate).is_ok_and(|c| c != coordinate)
            })
        });
        Ok(found.map(|e| StructuredWitness {
            x: 1,
            y,
            coordinate,
            element: e.clone(),
        }))
    }

    /// Re-checks the certificate by evaluating the element on both points.
    pub fn verify(&self) -> Result<bool> {
        Ok(self.x != self.y && self.element.apply(self.x)? == self.x && self.element.apply(self.y)? != self.y)
    }
}

/// Both phrasings of non-regularity.
#[derive(Debug, Clone)]
pub struct NonRegularity {
    /// Transitive with point stabilizers trivial (`|G| = degree`).
    pub regular: bool,
    /// First pair `(i, j)` in lexicographic order with different stabilizers.
    pub witness: Option<StabilizerWitness>,
}

/// Searches for `i, j` with `St(i) != St(j)`.
///
/// For each `i` in turn, the smallest point moved by a generator of `St(i)` is
/// a valid `j`.
pub fn check_non_regular(s: &PermGroup) -> Result<NonRegularity> {
    let regular = s.is_transitive() && s.order() == s.degree() as u64;
    let mut witness = None;
    for i in 1..=s.degree() {
        if let Some(w) = moved_by_stabilizer(s, i)?.into_iter().next() {
            witness = Some(StabilizerWitness { i, j: w.0, element: w.1 });
            break;
        }
        if s.is_transitive() {
            // All stabilizers are conjugate, so they are all trivial.
            break;
        }
    }
    Ok(NonRegularity { regular, witness })
}

/// For every point `j` moved by `St(i)`, one element of `St(i)` moving it.
fn moved_by_stabilizer(s: &PermGroup, i: usize) -> Result<Vec<(usize, Permutation)>> {
    let gens = s.stabilizer_generators(i)?;
    let mut out = Vec::new();
    for j in 1..=s.degree() {
        if let Some(g) = gens.iter().find(|g| g.apply(j) != j) {
            out.push((j, g.clone()));
        }
    }
    Ok(out)
}

/// Whether `St(i) != St(j)` for every pair `i != j`.
#[derive(Debug, Clone)]
pub struct StabilizerDistinctness {
    pub holds: bool,
    /// One witness per checked pair `(1, j)`, or per pair in the
    /// intransitive case.
    pub certificates: Vec<StabilizerWitness>,
    /// A pair with equal stabilizers, when `holds` is false.
    pub failure: Option<(usize, usize)>,
}

/// Checks that all point stabilizers are distinct.
///
/// For transitive groups it suffices that `St(1)` fixes only `1`, since the
/// other stabilizers are conjugates. `St(i) = St(j)` holds exactly when each
/// fixes the other point.
pub fn all_stabilizers_distinct(s: &PermGroup) -> Result<StabilizerDistinctness> {
    let n = s.degree();
    let sources: Vec<usize> = if s.is_transitive() { alloc::vec![1] } else { (1..=n).collect() };
    let mut moved: Vec<Vec<Option<Permutation>>> = Vec::new();
    for &i in &sources {
        let mut row = alloc::vec![None; n + 1];
        for (j, g) in moved_by_stabilizer(s, i)? {
            row[j] = Some(g);
        }
        moved.push(row);
    }
    let mut certificates = Vec::new();
    for (a, &i) in sources.iter().enumerate() {
        for j in 1..=n {
            if j == i {
                continue;
            }
            let forward = moved[a][j].clone().map(|element| StabilizerWitness { i, j, element });
            let backward = if s.is_transitive() {
                None
            } else {
                moved[j - 1][i].clone().map(|element| StabilizerWitness { i: j, j: i, element })
            };
            match forward.or(backward) {
                Some(w) => certificates.push(w),
                None => {
                    return Ok(StabilizerDistinctness {
                        holds: false,
                        certificates,
                        failure: Some((i, j)),
                    })
                }
            }
        }
    }
    Ok(StabilizerDistinctness {
        holds: true,
        certificates,
        failure: None,
    })
}

/// An element `sigma` and point `r` with `r^(sigma^2) != r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareMovingPair {
    pub sigma: Permutation,
    pub r: usize,
}

impl SquareMovingPair {
    pub fn verify(&self) -> bool {
        self.sigma.pow(2).apply(self.r) != self.r
    }

    /// `r^sigma`.
    pub fn r_sigma(&self) -> usize {
        self.sigma.apply(self.r)
    }
}

/// First element in chain-traversal order whose square moves a point, paired
/// with the smallest such point.
pub fn find_square_moving_pair(s: &PermGroup, limit: u64) -> Result<Option<SquareMovingPair>> {
    for sigma in s.elements(limit)? {
        let sq = sigma.pow(2);
        if let Some(r) = sq.first_moved() {
            return Ok(Some(SquareMovingPair { sigma, r }));
        }
    }
    Ok(None)
}

/// Generators `a, b` of a level group with fixed points `u` of `a` and `v`
/// of `b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecialPair {
    pub a: Permutation,
    pub b: Permutation,
    pub u: usize,
    pub v: usize,
    pub order_a: u64,
    pub order_b: u64,
}

impl SpecialPair {
    /// Re-checks everything except generation.
    pub fn verify_fixed_points(&self) -> bool {
        self.a.apply(self.u) == self.u && self.b.apply(self.v) == self.v
    }
}

/// Orders the pair's elements must be coprime to.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoprimeConstraints {
    pub a_coprime_to: Vec<u64>,
    pub b_coprime_to: Vec<u64>,
}

/// First ordered pair `(a, b)` in chain-traversal order with `<a, b> = S`,
/// both having fixed points and orders coprime to the constraints.
pub fn find_special_pair(
    s: &PermGroup,
    constraints: &CoprimeConstraints,
    limit: u64,
) -> Result<Option<SpecialPair>> {
    let mut pairs = special_pairs(s, constraints, limit)?;
    Ok(pairs.next())
}

/// All admissible pairs in search order, lazily.
pub(crate) fn special_pairs<'a>(
    s: &'a PermGroup,
    constraints: &'a CoprimeConstraints,
    limit: u64,
) -> Result<impl Iterator<Item = SpecialPair> + 'a> {
    let order = s.order();
    let candidates: Vec<(Permutation, u64, usize)> = s
        .elements(limit)?
        .into_iter()
        .filter_map(|g| {
            let o = g.order_u64()?;
            let u = *g.fixed_points().first()?;
            Some((g, o, u))
        })
        .collect();
    let coprime = |o: u64, to: &[u64]| to.iter().all(|&c| o.gcd(&c) == 1);
    let a_side: Vec<_> = candidates
        .iter()
        .filter(|c| coprime(c.1, &constraints.a_coprime_to))
        .cloned()
        .collect();
    let b_side: Vec<_> = candidates
        .into_iter()
        .filter(|c| coprime(c.1, &constraints.b_coprime_to))
        .collect();
    Ok(a_side.into_iter().flat_map(move |a| {
        let order = order.clone();
        b_side.clone().into_iter().filter_map(move |b| {
            let g = PermGroup::new(s.degree(), alloc::vec![a.0.clone(), b.0.clone()]).ok()?;
            (g.order() == order).then(|| SpecialPair {
                a: a.0.clone(),
                b: b.0.clone(),
                u: a.2,
                v: b.2,
                order_a: a.1,
                order_b: b.1,
            })
        })
    }))
}

/// Per-level findings.
#[derive(Debug, Clone)]
pub struct LevelHypotheses {
    pub level: usize,
    pub name: String,
    pub degree: usize,
    pub transitive: bool,
    /// `None` when not computed (structured levels report it from their
    /// constituents instead).
    pub perfect: Option<bool>,
    pub non_regular: Option<NonRegularity>,
    pub all_stabilizers_distinct: Option<StabilizerDistinctness>,
    pub square_moving: Option<SquareMovingPair>,
    pub special_pair: Option<SpecialPair>,
    /// Stabilizer witness of an exponentiation level, read off its structure.
    pub exponentiation_witness: Option<StructuredWitness>,
    pub notes: Vec<String>,
}

impl LevelHypotheses {
    /// Evaluates the per-group checks on a plain permutation level.
    pub fn evaluate(level: usize, name: &str, s: &PermGroup, limit: u64) -> Result<Self> {
        let square_moving = if s.order().to_u64().is_some_and(|o| o <= limit) {
            find_square_moving_pair(s, limit)?
        } else {
            None
        };
        Ok(LevelHypotheses {
            level,
            name: name.into(),
            degree: s.degree(),
            transitive: s.is_transitive(),
            perfect: Some(s.is_perfect()),
            non_regular: Some(check_non_regular(s)?),
            all_stabilizers_distinct: Some(all_stabilizers_distinct(s)?),
            square_moving,
            special_pair: None,
            exponentiation_witness: None,
            notes: Vec::new(),
        })
    }

    pub fn is_non_regular(&self) -> Option<bool> {
        self.non_regular.as_ref().map(|n| n.witness.is_some())
    }
}

/// Hypotheses across a tower, plus the gcd matrix of special-pair orders.
#[derive(Debug, Clone, Default)]
pub struct HypothesisReport {
    pub levels: Vec<LevelHypotheses>,
    /// `coprimality[i][j] = gcd(|a_(i+1)|, |b_(j+1)|)` when pairs were found.
    pub coprimality: Option<Vec<Vec<u64>>>,
    pub notes: Vec<String>,
}

impl HypothesisReport {
    /// Evaluates the per-level checks on every level group.
    pub fn for_groups<'a>(
        groups: impl IntoIterator<Item = (&'a str, &'a PermGroup)>,
        limit: u64,
    ) -> Result<Self> {
        let levels = groups
            .into_iter()
            .enumerate()
            .map(|(i, (name, g))| LevelHypotheses::evaluate(i + 1, name, g, limit))
            .collect::<Result<_>>()?;
        Ok(HypothesisReport {
            levels,
            coprimality: None,
            notes: Vec::new(),
        })
    }

    /// Attaches one special pair per level, in level order.
    pub fn record_pairs(&mut self, pairs: &[SpecialPair]) {
        for (l, p) in self.levels.iter_mut().zip(pairs) {
            l.special_pair = Some(p.clone());
        }
        self.coprimality = Some(
            pairs
                .iter()
                .map(|a| pairs.iter().map(|b| a.order_a.gcd(&b.order_b)).collect())
                .collect(),
        );
    }
}

pub(crate) fn gate(mode: crate::Mode, ok: bool, level: usize, what: &str, notes: &mut Vec<String>) -> Result<()> {
    if ok {
        return Ok(());
    }
    match mode {
        crate::Mode::Strict => Err(Error::Hypothesis {
            level,
            what: what.into(),
        }),
        crate::Mode::Lab => {
            notes.push(alloc::format!("level {level}: {what} (gate skipped in lab mode)"));
            Ok(())
        }
    }
}
