//! The generator constructions for iterated exponentiations.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use super::exptower::ExpTower;
use super::hypotheses::{
    find_special_pair, gate, special_pairs, CoprimeConstraints, HypothesisReport,
    LevelHypotheses, SquareMovingPair, SpecialPair, StructuredWitness, SEARCH_ORDER_LIMIT,
};
use crate::perm::{PermGroup, Permutation};
use crate::tower::{composite_levels, regroup_positions, Tower, TowerSpec};
use crate::wreath::{Action, Elem, Shape, StructuredGroup};
use crate::{BigCount, Error, Mode, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    Dgen,
    Threegen,
    Special,
    TheoremB,
}

impl Scheme {
    pub const ALL: [Scheme; 4] = [Scheme::Dgen, Scheme::Threegen, Scheme::Special, Scheme::TheoremB];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::Dgen => "dgen",
            Scheme::Threegen => "threegen",
            Scheme::Special => "special",
            Scheme::TheoremB => "theoremB",
        }
    }

    pub fn parse(name: &str) -> Option<Scheme> {
        Scheme::ALL.into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Conjugation of a level group moving a stabilizer witness `(i, j)` to
/// `(1, 2)`: the group used is `p^-1 S p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling {
    pub level: usize,
    pub witness: (usize, usize),
    pub permutation: Permutation,
}

/// Data specific to the two-generator construction.
#[derive(Debug, Clone)]
pub struct SpecialData {
    pub pairs: Vec<SpecialPair>,
    /// `p = |a_2| ... |a_n|`.
    pub p: u64,
    /// `q = |b_2| ... |b_n|`.
    pub q: u64,
    /// `b_1` and `a_1` lifted to the top level.
    pub b1: Elem,
    pub a1: Elem,
}

#[derive(Debug, Clone)]
pub struct GeneratorSet {
    pub scheme: Scheme,
    pub depth: usize,
    pub shape: Shape,
    pub elements: Vec<Elem>,
    /// Count promised by the construction.
    pub claimed: usize,
    /// How many of `elements` come from the bottom level.
    pub level1_count: usize,
    /// Upper bound on the count guaranteed by the construction, if any.
    pub bound: Option<usize>,
    pub theoretical_order: BigCount,
    pub relabelings: Vec<Relabeling>,
    pub square_moving: Vec<SquareMovingPair>,
    pub special: Option<SpecialData>,
    pub notes: Vec<String>,
    /// Level groups of the iterated exponentiation the set lives in.
    pub level_groups: Vec<StructuredGroup>,
}

impl GeneratorSet {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn degree(&self) -> Result<BigCount> {
        self.shape.degree()
    }

    pub fn is_flattenable(&self, cap: usize) -> bool {
        self.shape.degree_usize().is_some_and(|d| d <= cap)
    }

    pub fn flatten(&self, cap: usize) -> Result<Vec<Permutation>> {
        self.elements.iter().map(|e| e.flatten(cap)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SchemeOutput {
    pub hypotheses: HypothesisReport,
    pub set: GeneratorSet,
}

/// Level groups of an iterated exponentiation tower.
fn exp_levels(tower: &Tower) -> Result<Vec<(String, PermGroup)>> {
    let spec = tower.spec();
    for k in 2..=tower.depth() {
        if spec.action(k) != Action::Exp {
            return Err(Error::Shape(alloc::format!(
                "the construction needs an iterated exponentiation; level {k} is imprimitive"
            )));
        }
    }
    Ok(spec
        .levels()
        .iter()
        .take(tower.depth())
        .map(|l| (l.name.clone(), l.group.clone()))
        .collect())
}

fn transposition(n: usize, a: usize, b: usize) -> Permutation {
    if a == b {
        Permutation::identity(n)
    } else {
        Permutation::from_cycles(n, &[&[a, b]]).expect("points in range")
    }
}

/// Conjugates `s` so that the witness `(i, j)` becomes `(1, 2)`.
fn relabel(level: usize, s: &PermGroup, i: usize, j: usize) -> Result<(PermGroup, Option<Relabeling>)> {
    if (i, j) == (1, 2) {
        return Ok((s.clone(), None));
    }
    let n = s.degree();
    let first = transposition(n, 1, i);
    let p = first.compose(&transposition(n, 2, first.apply(j)))?;
    Ok((
        s.conjugate_by(&p)?,
        Some(Relabeling {
            level,
            witness: (i, j),
            permutation: p,
        }),
    ))
}

fn common_gates(h: &LevelHypotheses, mode: Mode, notes: &mut Vec<String>) -> Result<()> {
    gate(mode, h.transitive, h.level, "level group is not transitive", notes)?;
    gate(mode, h.perfect != Some(false), h.level, "level group is not perfect", notes)
}

/// Perm-level groups relabeled so that `St(1) != St(2)`.
fn normalized_levels(
    levels: &[(String, PermGroup)],
    report: &HypothesisReport,
    mode: Mode,
    notes: &mut Vec<String>,
) -> Result<(Vec<PermGroup>, Vec<Relabeling>)> {
    let mut groups = Vec::new();
    let mut relabelings = Vec::new();
    for ((_, s), h) in levels.iter().zip(&report.levels) {
        common_gates(h, mode, notes)?;
        let witness = h.non_regular.as_ref().and_then(|n| n.witness.as_ref());
        gate(mode, witness.is_some(), h.level, "all point stabilizers are equal", notes)?;
        match witness {
            Some(w) => {
                let (g, r) = relabel(h.level, s, w.i, w.j)?;
                groups.push(g);
                relabelings.extend(r);
            }
            None => groups.push(s.clone()),
        }
    }
    Ok((groups, relabelings))
}

fn perm_elems(g: &PermGroup) -> Vec<Elem> {
    g.generators().iter().cloned().map(Elem::Perm).collect()
}

/// Repeats the last generator until the list has length `d`.
fn pad(mut gens: Vec<Elem>, d: usize) -> Vec<Elem> {
    if let Some(last) = gens.last().cloned() {
        while gens.len() < d {
            gens.push(last.clone());
        }
    }
    gens
}

/// `alpha_j(1)` lifted to the top together with
/// `beta_j = (alpha_j(n) at 1) ... (alpha_j(2) at 1)`.
fn dgen_elements(t: &ExpTower, level1: &[Elem], alphas: &[Vec<Elem>], d: usize) -> Result<Vec<Elem>> {
    let n = t.depth();
    let mut out: Vec<Elem> = level1
        .iter()
        .map(|a| t.lift(a.clone(), 1, n))
        .collect::<Result<_>>()?;
    for j in 0..d {
        let factors = (2..=n)
            .rev()
            .map(|k| Ok((k, t.base_factor(k, &[(1, alphas[k - 2][j].clone())])?)))
            .collect::<Result<Vec<_>>>()?;
        out.push(t.lifted_product(&factors, n)?);
    }
    Ok(out)
}

/// The `d + d(S_1)` generators of an iterated exponentiation.
pub fn build_dgen(tower: &Tower, mode: Mode) -> Result<SchemeOutput> {
    let levels = exp_levels(tower)?;
    let mut report = HypothesisReport::for_groups(levels.iter().map(|(n, g)| (n.as_str(), g)), SEARCH_ORDER_LIMIT)?;
    let mut notes = Vec::new();
    let (groups, relabelings) = normalized_levels(&levels, &report, mode, &mut notes)?;
    let n = groups.len();
    let d = groups.iter().skip(1).map(|g| g.generators().len()).max().unwrap_or(0);
    let alphas: Vec<Vec<Elem>> = groups.iter().skip(1).map(|g| pad(perm_elems(g), d)).collect();
    let level1 = perm_elems(&groups[0]);
    let t = ExpTower::new(groups.iter().map(StructuredGroup::from_perm_group).collect())?;
    let elements = dgen_elements(&t, &level1, &alphas, d)?;
    report.notes.append(&mut notes.clone());
    Ok(SchemeOutput {
        hypotheses: report,
        set: GeneratorSet {
            scheme: Scheme::Dgen,
            depth: n,
            shape: t.shape(n).clone(),
            claimed: d + level1.len(),
            level1_count: level1.len(),
            bound: None,
            theoretical_order: t.order(n).clone(),
            elements,
            relabelings,
            square_moving: Vec::new(),
            special: None,
            notes,
            level_groups: t.groups.clone(),
        },
    })
}

/// Exactly two generators per level, padding or truncating in lab mode.
fn two_generators(k: usize, g: &PermGroup, mode: Mode, notes: &mut Vec<String>) -> Result<Vec<Elem>> {
    let gens = perm_elems(g);
    gate(mode, gens.len() == 2, k, "level group is not given by 2 generators", notes)?;
    let mut gens = pad(gens, 2);
    gens.truncate(2);
    if gens.len() < 2 {
        return Err(Error::Hypothesis {
            level: k,
            what: "level group has no generators".into(),
        });
    }
    Ok(gens)
}

/// Three generators: those of `S_1` and a single product placing
/// `alpha_1(k+1)` at `(r_k^sigma_k, ...)` and `alpha_2(k+1)` at `(r_k, ...)`.
pub fn build_threegen(tower: &Tower, mode: Mode) -> Result<SchemeOutput> {
    let levels = exp_levels(tower)?;
    let mut report = HypothesisReport::for_groups(levels.iter().map(|(n, g)| (n.as_str(), g)), SEARCH_ORDER_LIMIT)?;
    let mut notes = Vec::new();
    let n = levels.len();
    let mut gens = Vec::with_capacity(n);
    for ((_, s), h) in levels.iter().zip(&report.levels) {
        common_gates(h, mode, &mut notes)?;
        let distinct = h.all_stabilizers_distinct.as_ref().is_some_and(|c| c.holds);
        gate(mode, distinct, h.level, "two points have the same stabilizer", &mut notes)?;
        gens.push(two_generators(h.level, s, mode, &mut notes)?);
    }
    let mut square_moving = Vec::new();
    for h in report.levels.iter().take(n.saturating_sub(1)) {
        match &h.square_moving {
            Some(p) => square_moving.push(p.clone()),
            None => {
                return Err(Error::Hypothesis {
                    level: h.level,
                    what: "no element sigma and point r with r^(sigma^2) != r".into(),
                })
            }
        }
    }
    let t = ExpTower::new(levels.iter().map(|(_, g)| StructuredGroup::from_perm_group(g)).collect())?;
    let mut elements: Vec<Elem> = gens[0]
        .iter()
        .map(|a| t.lift(a.clone(), 1, n))
        .collect::<Result<_>>()?;
    if n >= 2 {
        let mut factors = Vec::new();
        for k in (2..=n).rev() {
            let p = &square_moving[k - 2];
            let placements = [
                (t.diagonal(k - 1, p.r_sigma())?, gens[k - 1][0].clone()),
                (t.diagonal(k - 1, p.r)?, gens[k - 1][1].clone()),
            ];
            factors.push((k, t.base_factor(k, &placements)?));
        }
        elements.push(t.lifted_product(&factors, n)?);
    }
    report.notes.append(&mut notes.clone());
    Ok(SchemeOutput {
        hypotheses: report,
        set: GeneratorSet {
            scheme: Scheme::Threegen,
            depth: n,
            shape: t.shape(n).clone(),
            claimed: if n >= 2 { 3 } else { 2 },
            level1_count: 2,
            bound: None,
            theoretical_order: t.order(n).clone(),
            elements,
            relabelings: Vec::new(),
            square_moving,
            special: None,
            notes,
            level_groups: t.groups.clone(),
        },
    })
}

/// Admissible pairs for every level: level-1 pairs in search order, each
/// followed by the first pairs of the other levels under the coprimality
/// constraints it imposes.
pub fn find_special_pairs(levels: &[PermGroup], limit: u64) -> Result<Vec<SpecialPair>> {
    let free = CoprimeConstraints::default();
    let mut tried: Vec<(u64, u64)> = Vec::new();
    for first in special_pairs(&levels[0], &free, limit)? {
        let key = (first.order_a, first.order_b);
        if tried.contains(&key) {
            continue;
        }
        tried.push(key);
        let constraints = CoprimeConstraints {
            a_coprime_to: alloc::vec![first.order_b],
            b_coprime_to: alloc::vec![first.order_a],
        };
        let mut pairs = alloc::vec![first.clone()];
        for s in &levels[1..] {
            match find_special_pair(s, &constraints, limit)? {
                Some(p) => pairs.push(p),
                None => break,
            }
        }
        if pairs.len() == levels.len() {
            return Ok(pairs);
        }
    }
    // Report the first level that fails for every admissible level-1 choice.
    let level = if tried.is_empty() { 1 } else { 2 };
    Err(Error::NoAdmissiblePair { level })
}

/// Two generators built from special pairs `(a_k, b_k)` with fixed points
/// `u_k`, `v_k`.
pub fn build_special(tower: &Tower, mode: Mode) -> Result<SchemeOutput> {
    let levels = exp_levels(tower)?;
    let mut report = HypothesisReport::for_groups(levels.iter().map(|(n, g)| (n.as_str(), g)), SEARCH_ORDER_LIMIT)?;
    let mut notes = Vec::new();
    for h in &report.levels {
        common_gates(h, mode, &mut notes)?;
    }
    let groups: Vec<PermGroup> = levels.iter().map(|(_, g)| g.clone()).collect();
    let pairs = find_special_pairs(&groups, SEARCH_ORDER_LIMIT)?;
    report.record_pairs(&pairs);
    let n = groups.len();
    let t = ExpTower::new(groups.iter().map(StructuredGroup::from_perm_group).collect())?;
    let perm = |p: &Permutation| Elem::Perm(p.clone());
    let mut f1 = Vec::new();
    let mut f2 = Vec::new();
    for k in (2..=n).rev() {
        let below = &pairs[k - 2];
        let here = &pairs[k - 1];
        let (pos_a, pos_b) = if k == 2 {
            (below.v, below.u)
        } else {
            (t.diagonal(k - 1, below.u)?, t.diagonal(k - 1, below.v)?)
        };
        f1.push((k, t.base_factor(k, &[(pos_a, perm(&here.a))])?));
        f2.push((k, t.base_factor(k, &[(pos_b, perm(&here.b))])?));
    }
    f1.push((1, perm(&pairs[0].b)));
    f2.push((1, perm(&pairs[0].a)));
    let beta1 = t.lifted_product(&f1, n)?;
    let beta2 = t.lifted_product(&f2, n)?;
    let p = pairs[1..].iter().map(|x| x.order_a).product();
    let q = pairs[1..].iter().map(|x| x.order_b).product();
    notes.push("gamma_2 is formed with mu^-1, pairing the v-diagonals with mu^-1".to_string());
    report.notes.append(&mut notes.clone());
    Ok(SchemeOutput {
        hypotheses: report,
        set: GeneratorSet {
            scheme: Scheme::Special,
            depth: n,
            shape: t.shape(n).clone(),
            claimed: 2,
            level1_count: 0,
            bound: None,
            theoretical_order: t.order(n).clone(),
            elements: alloc::vec![beta1, beta2],
            relabelings: Vec::new(),
            square_moving: Vec::new(),
            special: Some(SpecialData {
                p,
                q,
                b1: t.lift(perm(&pairs[0].b), 1, n)?,
                a1: t.lift(perm(&pairs[0].a), 1, n)?,
                pairs,
            }),
            notes,
            level_groups: t.groups.clone(),
        },
    })
}

/// Results of `beta_1^p = b_1^p` and `beta_2^q = a_1^q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerIdentities {
    pub structured: (bool, bool),
    /// Compared again as flattened permutations when within the cap.
    pub flat: Option<(bool, bool)>,
}

impl PowerIdentities {
    pub fn holds(&self) -> bool {
        self.structured == (true, true) && self.flat.is_none_or(|f| f == (true, true))
    }
}

pub fn power_identities(set: &GeneratorSet, cap: usize) -> Result<PowerIdentities> {
    let data = set
        .special
        .as_ref()
        .ok_or_else(|| Error::Invalid("power identities apply to the special scheme only".into()))?;
    let (b1, b2) = (&set.elements[0], &set.elements[1]);
    let structured = (
        b1.pow(data.p)? == data.b1.pow(data.p)?,
        b2.pow(data.q)? == data.a1.pow(data.q)?,
    );
    let flat = if set.is_flattenable(cap) {
        Some((
            b1.flatten(cap)?.pow(data.p) == data.b1.flatten(cap)?.pow(data.p),
            b2.flatten(cap)?.pow(data.q) == data.a1.flatten(cap)?.pow(data.q),
        ))
    } else {
        None
    };
    Ok(PowerIdentities { structured, flat })
}

/// Generators of the regrouped tower `H~_n` of a mixed tower, from the
/// `d`-generator construction over `H_1, ..., H_n`.
pub fn build_theorem_b(spec: &TowerSpec, mode: Mode) -> Result<SchemeOutput> {
    let positions = regroup_positions(spec)?;
    let h_levels = composite_levels(spec, &positions)?;
    let mut report = HypothesisReport::default();
    let mut notes = Vec::new();
    let mut groups: Vec<StructuredGroup> = Vec::new();
    let mut relabelings = Vec::new();
    for h in &h_levels {
        let constituents = &spec.levels()[h.levels.start() - 1..*h.levels.end()];
        let name = constituents
            .iter()
            .rev()
            .map(|l| l.name.as_str())
            .collect::<Vec<_>>()
            .join(" ⊛ ");
        if h.span() == 1 {
            let s = &constituents[0].group;
            let lh = LevelHypotheses::evaluate(h.index, &name, s, SEARCH_ORDER_LIMIT)?;
            common_gates(&lh, mode, &mut notes)?;
            let witness = lh.non_regular.as_ref().and_then(|n| n.witness.clone());
            gate(mode, witness.is_some(), h.index, "all point stabilizers are equal", &mut notes)?;
            let g = match witness {
                Some(w) => {
                    let (g, r) = relabel(h.index, s, w.i, w.j)?;
                    relabelings.extend(r);
                    g
                }
                None => s.clone(),
            };
            groups.push(StructuredGroup::from_perm_group(&g));
            report.levels.push(lh);
        } else {
            let transitive = h.group.is_transitive();
            let perfect = constituents.iter().all(|l| l.group.is_perfect());
            let first_coordinate = StructuredWitness::for_exponentiation(&h.group, 1)?;
            let last = h.group.shape().coordinates().unwrap_or(1);
            let normal = StructuredWitness::for_exponentiation(&h.group, last)?;
            let lh = LevelHypotheses {
                level: h.index,
                name,
                degree: h.group.shape().degree_usize().unwrap_or(0),
                transitive,
                perfect: Some(perfect),
                non_regular: None,
                all_stabilizers_distinct: None,
                square_moving: None,
                special_pair: None,
                exponentiation_witness: first_coordinate,
                notes: alloc::vec![
                    "perfect since every constituent level is perfect".to_string(),
                    "non-regular by the exponentiation witness; no search needed".to_string(),
                ],
            };
            common_gates(&lh, mode, &mut notes)?;
            gate(mode, normal.is_some(), h.index, "no top element moves the last coordinate", &mut notes)?;
            groups.push(h.group.clone());
            report.levels.push(lh);
        }
    }
    let n = groups.len();
    let level1: Vec<Elem> = groups[0].generators().to_vec();
    let d_prime = groups.iter().skip(1).map(|g| g.generators().len()).max().unwrap_or(0);
    let alphas: Vec<Vec<Elem>> = groups
        .iter()
        .skip(1)
        .map(|g| pad(g.generators().to_vec(), d_prime))
        .collect();
    let t = ExpTower::new(groups)?;
    let elements = dgen_elements(&t, &level1, &alphas, d_prime)?;
    let d = spec.levels().iter().map(|l| l.group.generators().len()).max().unwrap_or(0);
    let bound = 2 * spec.stride() * d;
    if elements.len() > bound {
        notes.push(alloc::format!("{} generators exceed 2md = {bound}", elements.len()));
    }
    report.notes.append(&mut notes.clone());
    Ok(SchemeOutput {
        hypotheses: report,
        set: GeneratorSet {
            scheme: Scheme::TheoremB,
            depth: n,
            shape: t.shape(n).clone(),
            claimed: level1.len() + d_prime,
            level1_count: level1.len(),
            bound: Some(bound),
            theoretical_order: t.order(n).clone(),
            elements,
            relabelings,
            square_moving: Vec::new(),
            special: None,
            notes,
            level_groups: t.groups.clone(),
        },
    })
}

/// Runs the named scheme on a tower spec truncated to `depth`.
pub fn build_scheme(scheme: Scheme, spec: &TowerSpec, depth: usize, cap: usize, mode: Mode) -> Result<SchemeOutput> {
    if scheme == Scheme::TheoremB {
        return build_theorem_b(&spec.truncate(depth)?, mode);
    }
    let tower = crate::tower::build_tower(spec, depth, cap, mode)?;
    match scheme {
        Scheme::Dgen => build_dgen(&tower, mode),
        Scheme::Threegen => build_threegen(&tower, mode),
        Scheme::Special => build_special(&tower, mode),
        Scheme::TheoremB => unreachable!(),
    }
}

/// Outcome of comparing the generated order with the theoretical one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// The top level is beyond the flattening cap.
    Skipped,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Skipped => "SKIPPED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub scheme: Scheme,
    pub count: usize,
    pub claimed: usize,
    pub theoretical_order: BigCount,
    pub computed_order: Option<BigCount>,
    pub verdict: Verdict,
    pub chain_base_length: Option<usize>,
    /// Whether every generator was checked to lie in the full tower group,
    /// which lets the chain stop once the theoretical order is reached.
    pub contained: bool,
}

impl VerificationReport {
    pub fn count_matches(&self) -> bool {
        self.count == self.claimed
    }
}

/// Flattens the set and compares the chain order of its closure with the
/// theoretical order of the tower.
pub fn verify_generation(set: &GeneratorSet, cap: usize) -> Result<VerificationReport> {
    let mut report = VerificationReport {
        scheme: set.scheme,
        count: set.len(),
        claimed: set.claimed,
        theoretical_order: set.theoretical_order.clone(),
        computed_order: None,
        verdict: Verdict::Skipped,
        chain_base_length: None,
        contained: false,
    };
    if !set.is_flattenable(cap) {
        return Ok(report);
    }
    let degree = set.shape.degree_usize().expect("flattenable");
    let t = ExpTower::new(set.level_groups.clone())?;
    report.contained = t.depth() == set.depth
        && t.shape(set.depth) == &set.shape
        && set.elements.iter().all(|x| t.contains(x, set.depth));
    let mut g = PermGroup::new(degree, set.flatten(cap)?)?;
    if report.contained {
        g = g.with_order_bound(set.theoretical_order.clone());
    }
    let order = g.order();
    report.verdict = if order == set.theoretical_order {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    report.chain_base_length = Some(g.chain().depth());
    report.computed_order = Some(order);
    Ok(report)
}

/// Chain orders of the closures with each generator left out in turn.
pub fn negative_controls(set: &GeneratorSet, cap: usize) -> Result<Vec<BigCount>> {
    let flat = set.flatten(cap)?;
    let degree = set.shape.degree_usize().expect("flattened");
    (0..flat.len())
        .map(|skip| {
            let gens = flat
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, g)| g.clone())
                .collect();
            Ok(PermGroup::new(degree, gens)?.order())
        })
        .collect()
}
