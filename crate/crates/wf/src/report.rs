//! Machine-readable reports and their text rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use wreathgen_core::perm::{format_images, parse_permutation};
use wreathgen_core::schemes::{GeneratorSet, HypothesisReport, LevelHypotheses};
use wreathgen_core::wreath::{Action, Elem};
use wreathgen_core::{Error, Result};

pub const TOOL: &str = "wf";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub tool: String,
    pub version: String,
    /// SHA-256 of the config file bytes.
    pub config_hash: String,
    pub command: String,
    pub cap: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    /// PASS unless some entry failed.
    pub verdict: String,
    pub entries: Vec<Entry>,
}

impl Report {
    pub fn new(command: &str, config_hash: &str, cap: usize, mode: Option<String>, entries: Vec<Entry>) -> Self {
        let failed = entries.iter().any(|e| e.verdict() == "FAIL");
        Report {
            tool: TOOL.into(),
            version: env!("CARGO_PKG_VERSION").into(),
            config_hash: config_hash.into(),
            command: command.into(),
            cap,
            mode,
            verdict: if failed { "FAIL" } else { "PASS" }.into(),
            entries,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == "PASS"
    }

    /// The report with every timing zeroed, for comparisons.
    pub fn without_timings(&self) -> Report {
        let mut r = self.clone();
        for e in &mut r.entries {
            *e.elapsed_mut() = 0.0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            e.render(&mut out);
        }
        let _ = writeln!(out, "{}: {}", self.command, self.verdict);
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Entry {
    Tower(TowerEntry),
    Run(RunEntry),
    Iso(IsoEntry),
    Bound(BoundEntry),
    Hypotheses(HypothesesEntry),
}

impl Entry {
    pub fn verdict(&self) -> &str {
        match self {
            Entry::Tower(e) => &e.verdict,
            Entry::Run(e) => &e.verdict,
            Entry::Iso(e) => &e.verdict,
            Entry::Bound(e) => &e.verdict,
            Entry::Hypotheses(e) => &e.verdict,
        }
    }

    fn elapsed_mut(&mut self) -> &mut f64 {
        match self {
            Entry::Tower(e) => &mut e.elapsed_ms,
            Entry::Run(e) => &mut e.elapsed_ms,
            Entry::Iso(e) => &mut e.elapsed_ms,
            Entry::Bound(e) => &mut e.elapsed_ms,
            Entry::Hypotheses(e) => &mut e.elapsed_ms,
        }
    }

    fn render(&self, out: &mut String) {
        match self {
            Entry::Tower(t) => {
                let _ = writeln!(out, "tower {} ({})", t.tower, t.verdict);
                if let Some(e) = &t.error {
                    let _ = writeln!(out, "  error: {e}");
                }
                let _ = writeln!(out, "  {:>5}  {:>12}  {:>11}  order", "level", "degree", "flattenable");
                for l in &t.levels {
                    let check = match (&l.chain_order, l.flattenable) {
                        (Some(c), _) if c == &l.order => "  [chain order agrees]",
                        (Some(_), _) => "  [CHAIN ORDER DIFFERS]",
                        (None, _) => "",
                    };
                    let _ = writeln!(
                        out,
                        "  {:>5}  {:>12}  {:>11}  {}{}",
                        l.level,
                        abbreviate(&l.degree),
                        if l.flattenable { "yes" } else { "no" },
                        abbreviate(&l.order),
                        check
                    );
                }
            }
            Entry::Run(r) => {
                let _ = writeln!(out, "run {} [{} on {}, depth {}]: {}", r.name, r.scheme, r.tower, r.depth, r.verdict);
                if let Some(e) = &r.error {
                    let _ = writeln!(out, "  error: {e}");
                }
                if let Some(g) = &r.generators {
                    let bound = g.bound.map(|b| format!(", bound {b}")).unwrap_or_default();
                    let _ = writeln!(out, "  generators: {} (claimed {}{bound}), degree {}", g.count, g.claimed, abbreviate(&g.degree));
                }
                let _ = writeln!(out, "  theoretical order: {}", abbreviate(&r.theoretical_order));
                if let Some(c) = &r.computed_order {
                    let _ = writeln!(out, "  computed order:    {}", abbreviate(c));
                }
                if let Some(n) = &r.negative_controls {
                    let _ = writeln!(out, "  orders with one generator dropped: {}", n.join(", "));
                }
                if let Some(p) = &r.power_identities {
                    let _ = writeln!(out, "  power identities: beta1^p = b1^p {}, beta2^q = a1^q {}", p.beta1, p.beta2);
                }
                for n in &r.notes {
                    let _ = writeln!(out, "  note: {n}");
                }
            }
            Entry::Iso(i) => {
                let _ = writeln!(out, "iso {} ⊛ ({} ≀ {}) vs ({} ⊛ {}) ⊛ {}: {}", i.a, i.b, i.c, i.a, i.b, i.c, i.verdict);
                if let Some(e) = &i.error {
                    let _ = writeln!(out, "  error: {e}");
                }
                if let Some(d) = i.degree {
                    let _ = writeln!(out, "  degree {d}, orders {} / {}", i.left_order, i.right_order);
                    let _ = writeln!(out, "  memberships {}/{}", i.memberships.iter().filter(|&&m| m).count(), i.memberships.len());
                }
            }
            Entry::Bound(b) => {
                let _ = writeln!(out, "bound d({}^{} wr {}) >= {}: {}", b.a, b.copies, b.b, b.value, b.verdict);
                if let Some(e) = &b.error {
                    let _ = writeln!(out, "  error: {e}");
                }
                let _ = writeln!(
                    out,
                    "  d(A^N) = {}, d(A) = {}, d(B) = {}, n = {}, power term {}",
                    b.d_power, b.d_a, b.d_b, b.n, b.power_term
                );
            }
            Entry::Hypotheses(h) => {
                let _ = writeln!(out, "hypotheses for {}: {}", h.subject, h.verdict);
                for l in &h.levels {
                    let flag = |b: Option<bool>| match b {
                        Some(true) => "yes",
                        Some(false) => "no",
                        None => "-",
                    };
                    let _ = writeln!(
                        out,
                        "  level {} {} (degree {}): transitive {}, perfect {}, regular {}, non-regular witness {}, stabilizers distinct {}, square_moving {}",
                        l.level,
                        l.name,
                        l.degree,
                        flag(Some(l.transitive)),
                        flag(l.perfect),
                        flag(l.regular),
                        l.non_regular_witness
                            .as_ref()
                            .map(|w| format!("({}, {})", w.i, w.j))
                            .unwrap_or_else(|| "-".into()),
                        flag(l.all_stabilizers_distinct),
                        l.square_moving.as_ref().map(|s| format!("r = {}", s.r)).unwrap_or_else(|| "-".into()),
                    );
                }
            }
        }
    }
}

fn abbreviate(decimal: &str) -> String {
    if decimal.len() <= 40 {
        decimal.to_string()
    } else {
        format!("{}...{} ({} digits)", &decimal[..12], &decimal[decimal.len() - 6..], decimal.len())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerLevelRow {
    pub level: usize,
    pub action: String,
    pub degree: String,
    pub order: String,
    pub flattenable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chain_order: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerEntry {
    pub tower: String,
    pub stride: usize,
    pub levels: Vec<TowerLevelRow>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdict: String,
    pub elapsed_ms: f64,
}

/// A structured element: a permutation in image-list form, or a wreath
/// element with its base coordinates and top.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemJson {
    Perm(String),
    Wreath {
        action: String,
        base: Vec<ElemJson>,
        top: Box<ElemJson>,
    },
}

impl ElemJson {
    pub fn from_elem(e: &Elem) -> Self {
        match e {
            Elem::Perm(p) => ElemJson::Perm(format_images(p)),
            Elem::Wreath(w) => ElemJson::Wreath {
                action: action_name(w.action()).into(),
                base: w.base().iter().map(ElemJson::from_elem).collect(),
                top: Box::new(ElemJson::from_elem(w.top())),
            },
        }
    }

    pub fn to_elem(&self) -> Result<Elem> {
        match self {
            ElemJson::Perm(s) => Ok(Elem::Perm(parse_permutation(s, None)?)),
            ElemJson::Wreath { action, base, top } => {
                let action = match action.as_str() {
                    "exp" => Action::Exp,
                    "perm" => Action::Perm,
                    other => return Err(Error::Invalid(format!("unknown action '{other}'"))),
                };
                let base = base.iter().map(ElemJson::to_elem).collect::<Result<_>>()?;
                Elem::wreath(action, base, top.to_elem()?)
            }
        }
    }
}

pub fn action_name(a: Action) -> &'static str {
    match a {
        Action::Exp => "exp",
        Action::Perm => "perm",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorsJson {
    pub scheme: String,
    pub count: usize,
    pub claimed: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    pub degree: String,
    /// Flattened generators in image-list form, when within the cap.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub images: Option<Vec<String>>,
    pub structured: Vec<ElemJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relabelings: Vec<RelabelingJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RelabelingJson {
    pub level: usize,
    pub witness: (usize, usize),
    pub permutation: String,
}

impl GeneratorsJson {
    pub fn from_set(set: &GeneratorSet, cap: usize) -> Result<Self> {
        let images = if set.is_flattenable(cap) {
            Some(set.flatten(cap)?.iter().map(format_images).collect())
        } else {
            None
        };
        Ok(GeneratorsJson {
            scheme: set.scheme.name().into(),
            count: set.len(),
            claimed: set.claimed,
            bound: set.bound,
            degree: set.degree()?.to_decimal(),
            images,
            structured: set.elements.iter().map(ElemJson::from_elem).collect(),
            relabelings: set
                .relabelings
                .iter()
                .map(|r| RelabelingJson {
                    level: r.level,
                    witness: r.witness,
                    permutation: format_images(&r.permutation),
                })
                .collect(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PowerIdentitiesJson {
    pub p: u64,
    pub q: u64,
    pub beta1: bool,
    pub beta2: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flat: Option<(bool, bool)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunEntry {
    pub name: String,
    pub tower: String,
    pub scheme: String,
    pub depth: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypotheses: Option<HypothesesEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<GeneratorsJson>,
    pub theoretical_order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub computed_order: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub negative_controls: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub power_identities: Option<PowerIdentitiesJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdict: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoEntry {
    pub a: String,
    pub b: String,
    pub c: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    pub bijection_is_identity: bool,
    pub left_order: String,
    pub right_order: String,
    pub memberships: Vec<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdict: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundEntry {
    pub a: String,
    pub copies: u64,
    pub b: String,
    /// Exact rational, `p/q` or an integer.
    pub value: String,
    pub power_term: String,
    pub d_power: usize,
    pub d_a: usize,
    pub d_b: usize,
    pub n: usize,
    pub aut_order: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aut_order_computed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub verdict: String,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    pub i: usize,
    pub j: usize,
    pub element: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SquareMovingJson {
    pub sigma: String,
    pub r: usize,
    pub r_sigma: usize,
    pub r_sigma_squared: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecialPairJson {
    pub a: String,
    pub b: String,
    pub u: usize,
    pub v: usize,
    pub order_a: u64,
    pub order_b: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelHypothesesJson {
    pub level: usize,
    pub name: String,
    pub degree: usize,
    pub transitive: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perfect: Option<bool>,
    /// Transitive with trivial point stabilizers.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<bool>,
    /// Some `i, j` with `St(i) != St(j)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_regular: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub non_regular_witness: Option<WitnessJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all_stabilizers_distinct: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub equal_stabilizers: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub square_moving: Option<SquareMovingJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub special_pair: Option<SpecialPairJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponentiation_witness: Option<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl LevelHypothesesJson {
    pub fn from_level(l: &LevelHypotheses) -> Self {
        let witness = l.non_regular.as_ref().and_then(|n| n.witness.as_ref());
        LevelHypothesesJson {
            level: l.level,
            name: l.name.clone(),
            degree: l.degree,
            transitive: l.transitive,
            perfect: l.perfect,
            regular: l.non_regular.as_ref().map(|n| n.regular),
            non_regular: l.is_non_regular().or(l.exponentiation_witness.as_ref().map(|_| true)),
            non_regular_witness: witness.map(|w| WitnessJson {
                i: w.i,
                j: w.j,
                element: format_images(&w.element),
            }),
            all_stabilizers_distinct: l.all_stabilizers_distinct.as_ref().map(|s| s.holds),
            equal_stabilizers: l.all_stabilizers_distinct.as_ref().and_then(|s| s.failure),
            square_moving: l.square_moving.as_ref().map(|s| SquareMovingJson {
                sigma: format_images(&s.sigma),
                r: s.r,
                r_sigma: s.r_sigma(),
                r_sigma_squared: s.sigma.apply(s.r_sigma()),
            }),
            special_pair: l.special_pair.as_ref().map(|p| SpecialPairJson {
                a: format_images(&p.a),
                b: format_images(&p.b),
                u: p.u,
                v: p.v,
                order_a: p.order_a,
                order_b: p.order_b,
            }),
            exponentiation_witness: l.exponentiation_witness.as_ref().map(|w| (w.x, w.y)),
            notes: l.notes.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HypothesesEntry {
    pub subject: String,
    pub levels: Vec<LevelHypothesesJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coprimality: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub verdict: String,
    pub elapsed_ms: f64,
}

impl HypothesesEntry {
    /// PASS when every level is transitive, perfect and non-regular.
    pub fn from_report(subject: &str, r: &HypothesisReport, elapsed_ms: f64) -> Self {
        let standing = r.levels.iter().all(|l| {
            l.transitive
                && l.perfect != Some(false)
                && (l.is_non_regular() == Some(true) || l.exponentiation_witness.is_some())
        });
        HypothesesEntry {
            subject: subject.into(),
            levels: r.levels.iter().map(LevelHypothesesJson::from_level).collect(),
            coprimality: r.coprimality.clone(),
            notes: r.notes.clone(),
            verdict: if standing { "PASS" } else { "FAIL" }.into(),
            elapsed_ms,
        }
    }
}
