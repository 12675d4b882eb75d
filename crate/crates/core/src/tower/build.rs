use alloc::vec::Vec;

use super::TowerSpec;
use crate::perm::PermGroup;
use crate::wreath::{Action, Elem, Embedding, Shape, StructuredGroup, MAX_COORDINATES};
use crate::{BigCount, Error, Mode, Result};

/// A realized tower level `G_k`.
#[derive(Debug, Clone)]
pub struct TowerLevel {
    pub index: usize,
    pub degree: BigCount,
    /// Theoretical order from the recurrence.
    pub order: BigCount,
    /// Structured generators; `None` when the base cannot be materialized.
    pub group: Option<StructuredGroup>,
    /// Flattened group, present when the degree is within the cap.
    pub flat: Option<PermGroup>,
}

impl TowerLevel {
    pub fn is_flattenable(&self) -> bool {
        self.flat.is_some()
    }

    pub fn shape(&self) -> Option<&Shape> {
        self.group.as_ref().map(StructuredGroup::shape)
    }
}

/// A realized chain of tower levels `G_1, ..., G_n`.
#[derive(Debug, Clone)]
pub struct Tower {
    spec: TowerSpec,
    levels: Vec<TowerLevel>,
    cap: usize,
}

impl Tower {
    pub fn spec(&self) -> &TowerSpec {
        &self.spec
    }

    pub fn levels(&self) -> &[TowerLevel] {
        &self.levels
    }

    /// Level `k`, 1-based.
    pub fn level(&self, k: usize) -> Option<&TowerLevel> {
        k.checked_sub(1).and_then(|i| self.levels.get(i))
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn top(&self) -> &TowerLevel {
        self.levels.last().expect("towers are non-empty")
    }

    pub fn cap(&self) -> usize {
        self.cap
    }
}

/// Builds levels `1..=depth` of the tower described by `spec`.
///
/// Strict mode requires every level group to be transitive. In lab mode a
/// non-transitive group below a level is handled by embedding the level's
/// generators at every coordinate.
pub fn build_tower(spec: &TowerSpec, depth: usize, cap: usize, mode: Mode) -> Result<Tower> {
    let spec = spec.truncate(depth)?;
    let mut levels: Vec<TowerLevel> = Vec::with_capacity(depth);
    for (i, level) in spec.levels().iter().enumerate() {
        let k = i + 1;
        let transitive = level.group.is_transitive();
        if mode == Mode::Strict && !transitive {
            return Err(Error::Hypothesis {
                level: k,
                what: alloc::format!("level group {} is not transitive", level.name),
            });
        }
        let s = StructuredGroup::from_perm_group(&level.group);
        let realized = if k == 1 {
            TowerLevel {
                index: 1,
                degree: BigCount::from(level.group.degree()),
                order: s.order().clone(),
                group: Some(s),
                flat: None,
            }
        } else {
            let below = &levels[i - 1];
            let action = spec.action(k);
            let m = BigCount::from(level.group.degree());
            let degree = match action {
                Action::Exp => m.pow_big(&below.degree)?,
                Action::Perm => m * below.degree.clone(),
            };
            let order = s.order().pow_big(&below.degree)? * below.order.clone();
            let materializable = below.degree.to_usize().is_some_and(|n| n <= MAX_COORDINATES);
            let group = match (&below.group, materializable) {
                (Some(below_group), true) => {
                    let embedding = if below_group.is_transitive() {
                        Embedding::FirstCoordinate
                    } else {
                        Embedding::EveryCoordinate
                    };
                    Some(StructuredGroup::wreath(action, &s, below_group, embedding)?)
                }
                _ => None,
            };
            TowerLevel {
                index: k,
                degree,
                order,
                group,
                flat: None,
            }
        };
        levels.push(realized);
    }
    for level in &mut levels {
        if level.degree.to_usize().is_some_and(|d| d <= cap) {
            if let Some(g) = &level.group {
                level.flat = Some(g.flatten(cap)?);
            }
        }
    }
    Ok(Tower { spec, levels, cap })
}

/// The projection `G_k -> G_(k-1)` on structured elements.
pub fn level_projection(tower: &Tower, k: usize, element: &Elem) -> Result<Elem> {
    if k < 2 || k > tower.depth() {
        return Err(Error::Invalid(alloc::format!(
            "projection needs 2 <= k <= {}, got {k}",
            tower.depth()
        )));
    }
    if let Some(shape) = tower.level(k).and_then(TowerLevel::shape) {
        if element.as_wreath().is_some() && &element.shape() != shape {
            return Err(Error::Shape(alloc::format!("element is not in level {k}")));
        }
    }
    element.project_top()
}
