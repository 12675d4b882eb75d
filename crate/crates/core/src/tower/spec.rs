use alloc::string::String;
use alloc::vec::Vec;

use crate::perm::PermGroup;
use crate::wreath::Action;
use crate::{Error, Result};

/// One level of a tower: a permutation group and how it is attached to the
/// tower below it.
#[derive(Debug, Clone)]
pub struct LevelSpec {
    pub name: String,
    pub group: PermGroup,
    /// Ignored when building level 1 (`G_1 = S_1`); at level 1 an `Exp` tag
    /// marks position 1 as an exponentiation position for regrouping.
    pub action: Option<Action>,
}

impl LevelSpec {
    pub fn new(name: impl Into<String>, group: PermGroup, action: Option<Action>) -> Self {
        LevelSpec {
            name: name.into(),
            group,
            action,
        }
    }
}

/// Declarative description of a mixed tower of type `(S, {k_n})`.
#[derive(Debug, Clone)]
pub struct TowerSpec {
    levels: Vec<LevelSpec>,
}

impl TowerSpec {
    pub fn new(levels: Vec<LevelSpec>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Invalid("a tower needs at least one level".into()));
        }
        for (k, l) in levels.iter().enumerate().skip(1) {
            if l.action.is_none() {
                return Err(Error::Invalid(alloc::format!(
                    "level {} needs an action (exp or perm)",
                    k + 1
                )));
            }
        }
        Ok(TowerSpec { levels })
    }

    /// Levels from an explicit list of exponentiation positions (1-based,
    /// strictly increasing); every other level above 1 uses the imprimitive
    /// action.
    pub fn with_exp_positions(groups: Vec<(String, PermGroup)>, positions: &[usize]) -> Result<Self> {
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Invalid("exp positions must be strictly increasing".into()));
        }
        if let Some(&bad) = positions.iter().find(|&&k| k == 0 || k > groups.len()) {
            return Err(Error::Invalid(alloc::format!(
                "exp position {bad} outside 1..={}",
                groups.len()
            )));
        }
        let levels = groups
            .into_iter()
            .enumerate()
            .map(|(i, (name, group))| {
                let action = if positions.contains(&(i + 1)) {
                    Some(Action::Exp)
                } else if i == 0 {
                    None
                } else {
                    Some(Action::Perm)
                };
                LevelSpec { name, group, action }
            })
            .collect();
        TowerSpec::new(levels)
    }

    /// The iterated exponentiation of the given groups (every level `Exp`).
    pub fn iterated_exponentiation(groups: Vec<(String, PermGroup)>) -> Result<Self> {
        let positions: Vec<usize> = (1..=groups.len()).collect();
        TowerSpec::with_exp_positions(groups, &positions)
    }

    pub fn levels(&self) -> &[LevelSpec] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Action joining level `k` (1-based, `k >= 2`) to the tower below.
    pub fn action(&self, k: usize) -> Action {
        self.levels[k - 1].action.unwrap_or(Action::Exp)
    }

    /// The positions `k_1 < k_2 < ...` of exponentiation levels.
    pub fn exp_positions(&self) -> Vec<usize> {
        self.levels
            .iter()
            .enumerate()
            .filter(|(_, l)| l.action == Some(Action::Exp))
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Largest gap between consecutive exp positions, counting from `k_0 = 0`.
    pub fn stride(&self) -> usize {
        let mut prev = 0;
        let mut stride = 0;
        for k in self.exp_positions() {
            stride = stride.max(k - prev);
            prev = k;
        }
        stride
    }

    /// Truncation to the first `depth` levels.
    pub fn truncate(&self, depth: usize) -> Result<TowerSpec> {
        if depth == 0 || depth > self.levels.len() {
            return Err(Error::Invalid(alloc::format!(
                "depth {depth} outside 1..={}",
                self.levels.len()
            )));
        }
        Ok(TowerSpec {
            levels: self.levels[..depth].to_vec(),
        })
    }
}
