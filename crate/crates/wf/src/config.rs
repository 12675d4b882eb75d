//! JSON configuration: catalog groups, towers, runs, and the iso and bound
//! checks, resolved against the built-in catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wreathgen_core::perm::{catalog, parse_permutation};
use wreathgen_core::schemes::Scheme;
use wreathgen_core::tower::{LevelSpec, TowerSpec};
use wreathgen_core::wreath::Action;
use wreathgen_core::{BigCount, Mode, PermGroup};

/// A resolution failure, located by a JSON pointer into the config.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub pointer: String,
    pub message: String,
}

impl ConfigError {
    pub fn new(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError {
            pointer: pointer.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pointer.is_empty() {
            write!(f, "config: {}", self.message)
        } else {
            write!(f, "config {}: {}", self.pointer, self.message)
        }
    }
}

impl std::error::Error for ConfigError {}

/// A count written either as a JSON number or as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Count {
    Number(u64),
    Decimal(String),
}

impl Count {
    pub fn to_big(&self) -> Option<BigCount> {
        match self {
            Count::Number(n) => Some(BigCount::from(*n)),
            Count::Decimal(s) => BigCount::parse_decimal(s),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionName {
    Exp,
    Perm,
}

impl From<ActionName> for Action {
    fn from(a: ActionName) -> Self {
        match a {
            ActionName::Exp => Action::Exp,
            ActionName::Perm => Action::Perm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum ModeName {
    Strict,
    Lab,
}

impl From<ModeName> for Mode {
    fn from(m: ModeName) -> Self {
        match m {
            ModeName::Strict => Mode::Strict,
            ModeName::Lab => Mode::Lab,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDecl {
    pub name: String,
    pub degree: usize,
    /// Image lists `[2,3,1]` or cycles `(1 2 3)`.
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Count>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_order: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelDecl {
    pub group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub action: Option<ActionName>,
}

/// Either explicit `levels`, or `groups` with `exp_positions`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerDecl {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub levels: Option<Vec<LevelDecl>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub groups: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exp_positions: Option<Vec<usize>>,
}

fn yes() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunDecl {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub tower: String,
    pub scheme: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    #[serde(default = "yes")]
    pub verify: bool,
    #[serde(default)]
    pub negative_controls: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<ModeName>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoDecl {
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundDecl {
    pub a: String,
    pub copies: u64,
    pub b: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default)]
    pub catalog: Vec<GroupDecl>,
    #[serde(default)]
    pub towers: Vec<TowerDecl>,
    #[serde(default)]
    pub runs: Vec<RunDecl>,
    #[serde(default)]
    pub iso: Vec<IsoDecl>,
    #[serde(default)]
    pub bounds: Vec<BoundDecl>,
}

#[derive(Debug, Clone)]
pub struct CatalogGroup {
    pub name: String,
    pub group: PermGroup,
    pub order: BigCount,
    pub aut_order: Option<u64>,
    pub d: Option<usize>,
    pub builtin: bool,
}

#[derive(Debug, Clone)]
pub struct Run {
    pub name: String,
    pub pointer: String,
    pub tower: String,
    pub scheme: Scheme,
    pub depth: usize,
    pub verify: bool,
    pub negative_controls: bool,
    pub mode: Option<Mode>,
}

#[derive(Debug, Clone)]
pub struct Resolved {
    pub catalog: BTreeMap<String, CatalogGroup>,
    pub towers: BTreeMap<String, TowerSpec>,
    pub runs: Vec<Run>,
    pub iso: Vec<IsoDecl>,
    pub bounds: Vec<BoundDecl>,
    /// SHA-256 of the config bytes, hex encoded.
    pub hash: String,
}

impl Resolved {
    pub fn group(&self, name: &str, pointer: &str) -> Result<&CatalogGroup, ConfigError> {
        self.catalog
            .get(name)
            .ok_or_else(|| ConfigError::new(pointer, format!("unknown group '{name}'")))
    }

    pub fn tower(&self, name: &str, pointer: &str) -> Result<&TowerSpec, ConfigError> {
        self.towers
            .get(name)
            .ok_or_else(|| ConfigError::new(pointer, format!("unknown tower '{name}'")))
    }
}

/// The built-in groups, each checked against its declared order.
pub fn builtin_catalog() -> Result<BTreeMap<String, CatalogGroup>, ConfigError> {
    let mut out = BTreeMap::new();
    for entry in catalog::BUILTIN {
        let pointer = format!("/builtin/{}", entry.name);
        let group = entry.group();
        let order = group.order();
        if order != entry.order {
            return Err(ConfigError::new(
                pointer,
                format!("declared order {} but chain order {order}", entry.order),
            ));
        }
        out.insert(
            entry.name.to_string(),
            CatalogGroup {
                name: entry.name.to_string(),
                group,
                order,
                aut_order: Some(entry.aut_order),
                d: Some(entry.d),
                builtin: true,
            },
        );
    }
    Ok(out)
}

pub fn parse_config(text: &str) -> Result<Config, ConfigError> {
    serde_json::from_str(text).map_err(|e| ConfigError::new("", format!("invalid JSON config: {e}")))
}

pub fn load(path: Option<&Path>) -> Result<Resolved, ConfigError> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| ConfigError::new("", format!("cannot read {}: {e}", p.display())))?,
        None => String::new(),
    };
    let config = if text.trim().is_empty() {
        Config::default()
    } else {
        parse_config(&text)?
    };
    resolve(&config, &text)
}

fn resolve_group(decl: &GroupDecl, pointer: &str) -> Result<CatalogGroup, ConfigError> {
    if decl.degree == 0 {
        return Err(ConfigError::new(format!("{pointer}/degree"), "degree must be positive"));
    }
    let gens = decl
        .generators
        .iter()
        .enumerate()
        .map(|(i, g)| {
            parse_permutation(g, Some(decl.degree))
                .map_err(|e| ConfigError::new(format!("{pointer}/generators/{i}"), e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let group = PermGroup::new(decl.degree, gens).map_err(|e| ConfigError::new(pointer, e.to_string()))?;
    let order = group.order();
    if let Some(declared) = &decl.order {
        let declared = declared
            .to_big()
            .ok_or_else(|| ConfigError::new(format!("{pointer}/order"), "not a decimal integer"))?;
        if declared != order {
            return Err(ConfigError::new(
                format!("{pointer}/order"),
                format!("declared order {declared} but chain order {order}"),
            ));
        }
    }
    Ok(CatalogGroup {
        name: decl.name.clone(),
        group,
        order,
        aut_order: decl.aut_order,
        d: decl.d,
        builtin: false,
    })
}

fn resolve_tower(
    decl: &TowerDecl,
    pointer: &str,
    catalog: &BTreeMap<String, CatalogGroup>,
) -> Result<TowerSpec, ConfigError> {
    let lookup = |name: &str, p: String| {
        catalog
            .get(name)
            .map(|g| g.group.clone())
            .ok_or_else(|| ConfigError::new(p, format!("unknown group '{name}'")))
    };
    let spec = match (&decl.levels, &decl.groups, &decl.exp_positions) {
        (Some(levels), None, None) => {
            let levels = levels
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let group = lookup(&l.group, format!("{pointer}/levels/{i}/group"))?;
                    if i > 0 && l.action.is_none() {
                        return Err(ConfigError::new(
                            format!("{pointer}/levels/{i}"),
                            "levels above the first need an action (exp or perm)",
                        ));
                    }
                    Ok(LevelSpec::new(l.group.clone(), group, l.action.map(Action::from)))
                })
                .collect::<Result<Vec<_>, _>>()?;
            TowerSpec::new(levels)
        }
        (None, Some(groups), positions) => {
            let groups = groups
                .iter()
                .enumerate()
                .map(|(i, g)| Ok((g.clone(), lookup(g, format!("{pointer}/groups/{i}"))?)))
                .collect::<Result<Vec<_>, ConfigError>>()?;
            match positions {
                Some(p) => TowerSpec::with_exp_positions(groups, p),
                None => TowerSpec::iterated_exponentiation(groups),
            }
        }
        _ => {
            return Err(ConfigError::new(
                pointer,
                "give either 'levels' or 'groups' (optionally with 'exp_positions')",
            ))
        }
    };
    spec.map_err(|e| ConfigError::new(pointer, e.to_string()))
}

pub fn resolve(config: &Config, text: &str) -> Result<Resolved, ConfigError> {
    let mut catalog = builtin_catalog()?;
    for (i, decl) in config.catalog.iter().enumerate() {
        let pointer = format!("/catalog/{i}");
        if catalog.contains_key(&decl.name) {
            return Err(ConfigError::new(
                format!("{pointer}/name"),
                format!("group '{}' is already defined", decl.name),
            ));
        }
        catalog.insert(decl.name.clone(), resolve_group(decl, &pointer)?);
    }
    let mut towers = BTreeMap::new();
    for (i, decl) in config.towers.iter().enumerate() {
        let pointer = format!("/towers/{i}");
        if towers.contains_key(&decl.name) {
            return Err(ConfigError::new(
                format!("{pointer}/name"),
                format!("tower '{}' is already defined", decl.name),
            ));
        }
        towers.insert(decl.name.clone(), resolve_tower(decl, &pointer, &catalog)?);
    }
    let mut runs = Vec::new();
    for (i, decl) in config.runs.iter().enumerate() {
        let pointer = format!("/runs/{i}");
        let spec: &TowerSpec = towers
            .get(&decl.tower)
            .ok_or_else(|| ConfigError::new(format!("{pointer}/tower"), format!("unknown tower '{}'", decl.tower)))?;
        let scheme = Scheme::parse(&decl.scheme).ok_or_else(|| {
            ConfigError::new(
                format!("{pointer}/scheme"),
                format!("unknown scheme '{}' (dgen, threegen, special, theoremB)", decl.scheme),
            )
        })?;
        let depth = decl.depth.unwrap_or(spec.len());
        if depth == 0 || depth > spec.len() {
            return Err(ConfigError::new(
                format!("{pointer}/depth"),
                format!("depth {depth} outside 1..={}", spec.len()),
            ));
        }
        runs.push(Run {
            name: decl.name.clone().unwrap_or_else(|| format!("{}:{}", decl.tower, scheme)),
            pointer,
            tower: decl.tower.clone(),
            scheme,
            depth,
            verify: decl.verify,
            negative_controls: decl.negative_controls,
            mode: decl.mode.map(Mode::from),
        });
    }
    for (i, iso) in config.iso.iter().enumerate() {
        for (field, name) in [("a", &iso.a), ("b", &iso.b), ("c", &iso.c)] {
            if !catalog.contains_key(name) {
                return Err(ConfigError::new(format!("/iso/{i}/{field}"), format!("unknown group '{name}'")));
            }
        }
    }
    for (i, bound) in config.bounds.iter().enumerate() {
        for (field, name) in [("a", &bound.a), ("b", &bound.b)] {
            if !catalog.contains_key(name) {
                return Err(ConfigError::new(format!("/bounds/{i}/{field}"), format!("unknown group '{name}'")));
            }
        }
        if bound.copies == 0 {
            return Err(ConfigError::new(format!("/bounds/{i}/copies"), "N must be at least 1"));
        }
    }
    Ok(Resolved {
        catalog,
        towers,
        runs,
        iso: config.iso.clone(),
        bounds: config.bounds.clone(),
        hash: hex::encode(Sha256::digest(text.as_bytes())),
    })
}
