//! Regrouping a mixed tower into an iterated exponentiation of composite
//! levels `H_i`, using the rebracketing `A ⊛ (B ≀ C) ≅ (A ⊛ B) ⊛ C`.

use alloc::string::String;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use super::{build_tower, Tower, TowerSpec};
use crate::perm::Permutation;
use crate::wreath::{kaluzhnin_bijection, Action, Embedding, StructuredGroup, TupleCodec, MAX_COORDINATES};
use crate::{BigCount, Error, Mode, Result};

/// A composite level `H_i = (...(S_(k_i) ⊛ S_(k_i - 1)) ⊛ ...) ⊛ S_(k_(i-1)+1)`.
#[derive(Debug, Clone)]
pub struct HLevel {
    pub index: usize,
    /// Original levels absorbed into this one, `k_(i-1)+1 ..= k_i`.
    pub levels: RangeInclusive<usize>,
    pub group: StructuredGroup,
    /// Number of generators assembled from the constituent levels.
    pub generator_count: usize,
}

impl HLevel {
    pub fn span(&self) -> usize {
        self.levels.end() - self.levels.start() + 1
    }
}

/// Comparison of `G_(k_n)` with `H~_n`.
#[derive(Debug, Clone)]
pub struct RegroupComparison {
    pub n: usize,
    pub position: usize,
    pub g_degree: BigCount,
    pub g_order: BigCount,
    pub h_degree: BigCount,
    pub h_order: BigCount,
    pub conjugacy: ConjugacyCheck,
}

impl RegroupComparison {
    pub fn orders_match(&self) -> bool {
        self.g_degree == self.h_degree && self.g_order == self.h_order
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConjugacyCheck {
    /// Every conjugated generator of `G_(k_n)` lies in `H~_n` and the chain
    /// orders agree.
    Passed { chain_order: BigCount },
    Failed { generator: usize, reason: String },
    /// Degree above the cap: only the theoretical orders were compared.
    OrderCheckedOnly,
}

#[derive(Debug, Clone)]
pub struct Regrouping {
    pub positions: Vec<usize>,
    pub h_levels: Vec<HLevel>,
    /// The iterated exponentiation `H~_1, ..., H~_n`.
    pub h_tower: Vec<HTowerLevel>,
    pub comparisons: Vec<RegroupComparison>,
}

#[derive(Debug, Clone)]
pub struct HTowerLevel {
    pub degree: BigCount,
    pub order: BigCount,
    pub group: Option<StructuredGroup>,
}

/// Builds the `H_i` of a mixed tower that ends with an exponentiation level
/// and compares each `H~_n` with `G_(k_n)`.
pub fn regroup_mixed(spec: &TowerSpec, cap: usize, mode: Mode) -> Result<Regrouping> {
    let positions = regroup_positions(spec)?;
    let tower = build_tower(spec, spec.len(), cap, mode)?;
    let h_levels = composite_levels(spec, &positions)?;

    let mut h_tower: Vec<HTowerLevel> = Vec::new();
    for h in &h_levels {
        let next = match h_tower.last() {
            None => HTowerLevel {
                degree: h.group.degree()?,
                order: h.group.order().clone(),
                group: Some(h.group.clone()),
            },
            Some(below) => {
                let degree = h.group.degree()?.pow_big(&below.degree)?;
                let order = h.group.order().pow_big(&below.degree)? * below.order.clone();
                let materializable = below.degree.to_usize().is_some_and(|n| n <= MAX_COORDINATES);
                let group = match (&below.group, materializable) {
                    (Some(b), true) => Some(StructuredGroup::wreath(
                        Action::Exp,
                        &h.group,
                        b,
                        embedding_for(b),
                    )?),
                    _ => None,
                };
                HTowerLevel { degree, order, group }
            }
        };
        h_tower.push(next);
    }

    let mut comparisons = Vec::new();
    for (i, &k) in positions.iter().enumerate() {
        let g = tower.level(k).expect("position within tower");
        let h = &h_tower[i];
        let conjugacy = match (&g.flat, flatten_h(h, cap)?) {
            (Some(_), Some(_)) => conjugacy_check(&tower, &positions[..=i], h, cap)?,
            _ => ConjugacyCheck::OrderCheckedOnly,
        };
        comparisons.push(RegroupComparison {
            n: i + 1,
            position: k,
            g_degree: g.degree.clone(),
            g_order: g.order.clone(),
            h_degree: h.degree.clone(),
            h_order: h.order.clone(),
            conjugacy,
        });
    }
    Ok(Regrouping {
        positions,
        h_levels,
        h_tower,
        comparisons,
    })
}

/// The exp positions `k_1 < ... < k_n` of a spec of the regroupable shape:
/// at least one exp level, and the top level is one.
pub fn regroup_positions(spec: &TowerSpec) -> Result<Vec<usize>> {
    let positions = spec.exp_positions();
    match positions.last() {
        None => Err(Error::Shape("regrouping needs at least one exp level".into())),
        Some(&last) if last != spec.len() => Err(Error::Shape(alloc::format!(
            "regrouping needs the top level to be an exp level; levels {}..={} are imprimitive",
            last + 1,
            spec.len()
        ))),
        _ => Ok(positions),
    }
}

fn embedding_for(g: &StructuredGroup) -> Embedding {
    if g.is_transitive() {
        Embedding::FirstCoordinate
    } else {
        Embedding::EveryCoordinate
    }
}

fn flatten_h(h: &HTowerLevel, cap: usize) -> Result<Option<()>> {
    Ok(match &h.group {
        Some(g) if g.is_flattenable(cap) => Some(()),
        _ => None,
    })
}

/// `H_i` for each exp position, with generators assembled from the levels.
pub fn composite_levels(spec: &TowerSpec, positions: &[usize]) -> Result<Vec<HLevel>> {
    let mut out = Vec::with_capacity(positions.len());
    let mut prev = 0;
    for (i, &k) in positions.iter().enumerate() {
        let levels = spec.levels();
        let mut acc = StructuredGroup::from_perm_group(&levels[k - 1].group);
        for j in (prev + 1..k).rev() {
            let s = StructuredGroup::from_perm_group(&levels[j - 1].group);
            acc = StructuredGroup::wreath(Action::Exp, &acc, &s, embedding_for(&s))?;
        }
        let generator_count = acc.generators().len();
        out.push(HLevel {
            index: i + 1,
            levels: prev + 1..=k,
            group: acc,
            generator_count,
        });
        prev = k;
    }
    Ok(out)
}

/// Bijection from the points of `G_(k_n)` to those of `H~_n`, as a 0-based
/// table, composed from rebracketing steps and induced coordinate maps.
pub fn regroup_bijection(tower: &Tower, positions: &[usize], cap: usize) -> Result<Permutation> {
    let n = positions.len();
    let k_n = positions[n - 1];
    let degree_of = |k: usize| -> Result<usize> {
        tower
            .level(k)
            .and_then(|l| l.degree.to_usize())
            .filter(|&d| d <= cap)
            .ok_or_else(|| Error::DegreeOverflow {
                degree: tower
                    .level(k)
                    .map(|l| alloc::format!("{}", l.degree))
                    .unwrap_or_default(),
                cap,
            })
    };
    let total = degree_of(k_n)?;
    let mut phi = Permutation::identity(total);
    let levels = tower.spec().levels();
    let mut n1 = levels[k_n - 1].group.degree();
    let lower = if n >= 2 { positions[n - 2] + 1 } else { 2 };
    for i in (lower.max(2)..k_n).rev() {
        let n2 = levels[i - 1].group.degree();
        let n3 = degree_of(i - 1)?;
        let step = kaluzhnin_bijection(n1, n2, n3, cap)?;
        phi = phi.compose(&step)?;
        n1 = TupleCodec::new(n1, n2)?.size();
    }
    if n >= 2 {
        // Now at H_n ⊛ G_(k_(n-1)); relabel coordinates by the inner bijection.
        let inner = regroup_bijection(tower, &positions[..n - 1], cap)?;
        let codec = TupleCodec::new(n1, inner.degree())?;
        let mut images = Vec::with_capacity(total);
        let mut moved = alloc::vec![0usize; inner.degree()];
        for r in 1..=total {
            let f = codec.unrank(r)?;
            for (c, &v) in f.iter().enumerate() {
                moved[inner.apply(c + 1) - 1] = v;
            }
            images.push(codec.rank(&moved)?);
        }
        phi = phi.compose(&Permutation::from_images(&images)?)?;
    }
    Ok(phi)
}

fn conjugacy_check(
    tower: &Tower,
    positions: &[usize],
    h: &HTowerLevel,
    cap: usize,
) -> Result<ConjugacyCheck> {
    let k = *positions.last().expect("non-empty");
    let g = tower.level(k).and_then(|l| l.flat.as_ref()).expect("flattenable");
    let h_flat = h.group.as_ref().expect("materialized").flatten(cap)?;
    let phi = regroup_bijection(tower, positions, cap)?;
    for (i, x) in g.generators().iter().enumerate() {
        if let Some(point) = h_flat.chain().non_membership_witness(&phi.conjugate(x)) {
            return Ok(ConjugacyCheck::Failed {
                generator: i + 1,
                reason: alloc::format!("conjugated generator leaves H~ at point {point}"),
            });
        }
    }
    let (go, ho) = (g.order(), h_flat.order());
    if go != ho {
        return Ok(ConjugacyCheck::Failed {
            generator: 0,
            reason: alloc::format!("chain orders differ: {go} vs {ho}"),
        });
    }
    Ok(ConjugacyCheck::Passed { chain_order: go })
}
