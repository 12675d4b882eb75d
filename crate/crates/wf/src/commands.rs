//! The subcommands, each producing a [`Report`].

use std::fs;
use std::path::Path;
use std::time::Instant;

use wreathgen_core::bounds::{eulerian_count, lower_bound_with, BoundInput, TUPLE_BUDGET};
use wreathgen_core::perm::format_images;
use wreathgen_core::schemes::{
    build_scheme, find_special_pairs, negative_controls, power_identities, verify_generation, HypothesisReport,
    Scheme, Verdict, SEARCH_ORDER_LIMIT,
};
use wreathgen_core::tower::{build_tower, TowerSpec};
use wreathgen_core::wreath::kaluzhnin_check;
use wreathgen_core::{BigCount, Mode};

use crate::cache::EulerianCache;
use crate::config::{BoundDecl, ConfigError, IsoDecl, Resolved, Run};
use crate::report::{
    action_name, BoundEntry, Entry, GeneratorsJson, HypothesesEntry, IsoEntry, PowerIdentitiesJson, Report,
    RunEntry, TowerEntry, TowerLevelRow,
};
use crate::CliError;

/// Shared state for one invocation.
pub struct Context {
    pub config: Resolved,
    pub cap: usize,
    /// Overrides the per-run mode when given on the command line.
    pub mode: Option<Mode>,
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::Strict => "strict",
        Mode::Lab => "lab",
    }
}

fn ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

impl Context {
    fn report(&self, command: &str, entries: Vec<Entry>) -> Report {
        Report::new(command, &self.config.hash, self.cap, self.mode.map(|m| mode_name(m).into()), entries)
    }

    fn effective_mode(&self, run: Option<Mode>) -> Mode {
        self.mode.or(run).unwrap_or_default()
    }

    fn selected_towers(&self, name: Option<&str>) -> Result<Vec<(String, TowerSpec)>, CliError> {
        match name {
            Some(n) => Ok(vec![(n.to_string(), self.config.tower(n, "/towers")?.clone())]),
            None if self.config.towers.is_empty() => {
                Err(CliError::Usage("no towers in the config; pass --config".into()))
            }
            None => Ok(self.config.towers.iter().map(|(k, v)| (k.clone(), v.clone())).collect()),
        }
    }

    /// Degree and order per level, with chain orders of flattenable levels.
    pub fn build(&self, tower: Option<&str>, depth: Option<usize>, check: bool) -> Result<Report, CliError> {
        let mut entries = Vec::new();
        for (name, spec) in self.selected_towers(tower)? {
            let start = Instant::now();
            let depth = depth.unwrap_or(spec.len()).min(spec.len());
            let mut entry = TowerEntry {
                tower: name.clone(),
                stride: spec.stride(),
                levels: Vec::new(),
                error: None,
                verdict: "PASS".into(),
                elapsed_ms: 0.0,
            };
            match build_tower(&spec, depth, self.cap, self.effective_mode(None)) {
                Ok(t) => {
                    for level in t.levels() {
                        let chain_order = match (&level.flat, check) {
                            (Some(g), true) => Some(g.order()),
                            _ => None,
                        };
                        if chain_order.as_ref().is_some_and(|c| c != &level.order) {
                            entry.verdict = "FAIL".into();
                        }
                        entry.levels.push(TowerLevelRow {
                            level: level.index,
                            action: if level.index == 1 {
                                "-".into()
                            } else {
                                action_name(spec.action(level.index)).into()
                            },
                            degree: level.degree.to_decimal(),
                            order: level.order.to_decimal(),
                            flattenable: level.is_flattenable(),
                            chain_order: chain_order.map(|c| c.to_decimal()),
                        });
                    }
                }
                Err(e) => {
                    entry.error = Some(format!("tower {name}: {e}"));
                    entry.verdict = "FAIL".into();
                }
            }
            entry.elapsed_ms = ms(start);
            entries.push(Entry::Tower(entry));
        }
        Ok(self.report("build", entries))
    }

    /// Builds a generator set and writes it to `out` as image lists and
    /// structured JSON.
    pub fn gens(
        &self,
        tower: &str,
        scheme: Scheme,
        depth: Option<usize>,
        out: Option<&Path>,
    ) -> Result<Report, CliError> {
        let spec = self.config.tower(tower, "/towers")?;
        let run = Run {
            name: format!("{tower}:{scheme}"),
            pointer: String::new(),
            tower: tower.into(),
            scheme,
            depth: depth.unwrap_or(spec.len()).min(spec.len()),
            verify: false,
            negative_controls: false,
            mode: None,
        };
        let entry = self.execute(&run)?;
        if let (Some(dir), Some(g)) = (out, &entry.generators) {
            fs::create_dir_all(dir)?;
            let stem: String = format!("{tower}.{scheme}")
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() || c == '.' || c == '-' { c } else { '_' })
                .collect();
            if let Some(images) = &g.images {
                fs::write(dir.join(format!("{stem}.perms")), images.join("\n") + "\n")?;
            }
            let json = serde_json::to_string_pretty(g).expect("generator sets serialize");
            fs::write(dir.join(format!("{stem}.json")), json + "\n")?;
        }
        Ok(self.report("gens", vec![Entry::Run(entry)]))
    }

    pub fn verify(&self, run: Option<&str>) -> Result<Report, CliError> {
        let runs: Vec<&Run> = match run {
            Some(name) => {
                let r = self
                    .config
                    .runs
                    .iter()
                    .find(|r| r.name == name)
                    .ok_or_else(|| ConfigError::new("/runs", format!("no run named '{name}'")))?;
                vec![r]
            }
            None => self.config.runs.iter().collect(),
        };
        if runs.is_empty() {
            return Err(CliError::Usage("no runs in the config; pass --config".into()));
        }
        let entries = runs
            .into_iter()
            .map(|r| self.execute(r).map(Entry::Run))
            .collect::<Result<_, _>>()?;
        Ok(self.report("verify", entries))
    }

    fn execute(&self, run: &Run) -> Result<RunEntry, CliError> {
        let start = Instant::now();
        let spec = self.config.tower(&run.tower, &format!("{}/tower", run.pointer))?;
        let mode = self.effective_mode(run.mode);
        let mut entry = RunEntry {
            name: run.name.clone(),
            tower: run.tower.clone(),
            scheme: run.scheme.name().into(),
            depth: run.depth,
            mode: mode_name(mode).into(),
            hypotheses: None,
            generators: None,
            theoretical_order: String::new(),
            computed_order: None,
            negative_controls: None,
            power_identities: None,
            notes: Vec::new(),
            error: None,
            verdict: "SKIPPED".into(),
            elapsed_ms: 0.0,
        };
        if let Err(e) = self.execute_into(run, spec, mode, &mut entry) {
            entry.error = Some(format!("run {}: {e}", run.name));
            entry.verdict = "FAIL".into();
        }
        entry.elapsed_ms = ms(start);
        Ok(entry)
    }

    fn execute_into(
        &self,
        run: &Run,
        spec: &TowerSpec,
        mode: Mode,
        entry: &mut RunEntry,
    ) -> wreathgen_core::Result<()> {
        let out = build_scheme(run.scheme, spec, run.depth, self.cap, mode)?;
        let set = &out.set;
        entry.hypotheses = Some(HypothesesEntry::from_report(&run.tower, &out.hypotheses, 0.0));
        entry.generators = Some(GeneratorsJson::from_set(set, self.cap)?);
        entry.theoretical_order = set.theoretical_order.to_decimal();
        entry.notes = set.notes.clone();
        let mut failed = false;
        if set.len() != set.claimed {
            entry.notes.push(format!("{} generators but {} claimed", set.len(), set.claimed));
            failed = true;
        }
        if set.bound.is_some_and(|b| set.len() > b) {
            failed = true;
        }
        if let Some(data) = &set.special {
            let p = power_identities(set, self.cap)?;
            failed |= !p.holds();
            entry.power_identities = Some(PowerIdentitiesJson {
                p: data.p,
                q: data.q,
                beta1: p.structured.0,
                beta2: p.structured.1,
                flat: p.flat,
            });
        }
        if !run.verify {
            entry.verdict = if failed { "FAIL" } else { "SKIPPED" }.into();
            return Ok(());
        }
        let v = verify_generation(set, self.cap)?;
        entry.computed_order = v.computed_order.as_ref().map(BigCount::to_decimal);
        if v.verdict != Verdict::Skipped && !v.contained {
            entry.notes.push("generators not confirmed inside the tower group; chain built without the order bound".into());
        }
        if run.negative_controls && v.verdict != Verdict::Skipped {
            let orders = negative_controls(set, self.cap)?;
            if orders.iter().any(|o| o == &set.theoretical_order) {
                entry.notes.push("dropping a generator does not shrink the group".into());
                failed = true;
            }
            entry.negative_controls = Some(orders.iter().map(BigCount::to_decimal).collect());
        }
        entry.verdict = match (v.verdict, failed) {
            (_, true) | (Verdict::Fail, _) => "FAIL",
            (Verdict::Pass, false) => "PASS",
            (Verdict::Skipped, false) => "SKIPPED",
        }
        .into();
        Ok(())
    }

    pub fn iso(&self, triples: &[IsoDecl]) -> Result<Report, CliError> {
        if triples.is_empty() {
            return Err(CliError::Usage("no iso triples; pass --a/--b/--c or a config with 'iso'".into()));
        }
        let strict = self.effective_mode(None) == Mode::Strict;
        let mut entries = Vec::new();
        for (i, t) in triples.iter().enumerate() {
            let start = Instant::now();
            let p = format!("/iso/{i}");
            let a = &self.config.group(&t.a, &format!("{p}/a"))?.group;
            let b = &self.config.group(&t.b, &format!("{p}/b"))?.group;
            let c = &self.config.group(&t.c, &format!("{p}/c"))?.group;
            let mut entry = IsoEntry {
                a: t.a.clone(),
                b: t.b.clone(),
                c: t.c.clone(),
                degree: None,
                bijection_is_identity: false,
                left_order: String::new(),
                right_order: String::new(),
                memberships: Vec::new(),
                counterexample: None,
                error: None,
                verdict: "FAIL".into(),
                elapsed_ms: 0.0,
            };
            match kaluzhnin_check(a, b, c, self.cap, strict) {
                Ok(cert) => {
                    entry.degree = Some(cert.degree);
                    entry.bijection_is_identity = cert.bijection_is_identity;
                    entry.left_order = cert.left_order.to_decimal();
                    entry.right_order = cert.right_order.to_decimal();
                    entry.counterexample = cert.counterexample.as_ref().map(|c| (c.generator, c.point));
                    entry.verdict = if cert.passed() { "PASS" } else { "FAIL" }.into();
                    entry.memberships = cert.memberships;
                }
                Err(e) => entry.error = Some(format!("iso {}/{}/{}: {e}", t.a, t.b, t.c)),
            }
            entry.elapsed_ms = ms(start);
            entries.push(Entry::Iso(entry));
        }
        Ok(self.report("iso", entries))
    }

    pub fn bound(&self, items: &[BoundDecl], cache: &mut EulerianCache) -> Result<Report, CliError> {
        if items.is_empty() {
            return Err(CliError::Usage("no bounds; pass --a/--copies/--b or a config with 'bounds'".into()));
        }
        let mut entries = Vec::new();
        for (i, item) in items.iter().enumerate() {
            let start = Instant::now();
            let p = format!("/bounds/{i}");
            let a = self.config.group(&item.a, &format!("{p}/a"))?;
            let b = self.config.group(&item.b, &format!("{p}/b"))?;
            let aut_order = a.aut_order.ok_or_else(|| {
                ConfigError::new(format!("{p}/a"), format!("group '{}' has no aut_order", item.a))
            })?;
            let input = BoundInput {
                a: a.group.clone(),
                copies: item.copies,
                b: b.group.clone(),
                aut_order,
            };
            let phi = |k: usize| -> wreathgen_core::Result<BigCount> {
                if let Some(c) = cache.get(&item.a, k) {
                    return Ok(c.clone());
                }
                let c = eulerian_count(&a.group, k, TUPLE_BUDGET)?;
                cache.insert(&item.a, k, c.clone());
                Ok(c)
            };
            let mut entry = BoundEntry {
                a: item.a.clone(),
                copies: item.copies,
                b: item.b.clone(),
                value: String::new(),
                power_term: String::new(),
                d_power: 0,
                d_a: 0,
                d_b: 0,
                n: b.group.degree(),
                aut_order,
                aut_order_computed: None,
                error: None,
                verdict: "FAIL".into(),
                elapsed_ms: 0.0,
            };
            match lower_bound_with(&input, phi) {
                Ok(lb) => {
                    entry.value = lb.value.to_string();
                    entry.power_term = lb.power_term.to_string();
                    entry.d_power = lb.d_power;
                    entry.d_a = lb.d_a;
                    entry.d_b = lb.d_b;
                    entry.aut_order_computed = lb.aut_order_computed;
                    entry.verdict = "PASS".into();
                }
                Err(e) => entry.error = Some(format!("bound {}^{} wr {}: {e}", item.a, item.copies, item.b)),
            }
            entry.elapsed_ms = ms(start);
            entries.push(Entry::Bound(entry));
        }
        cache.save()?;
        Ok(self.report("bound", entries))
    }

    /// Hypotheses of one catalog group or of every level of a tower.
    pub fn hypotheses(&self, group: Option<&str>, tower: Option<&str>) -> Result<Report, CliError> {
        let start = Instant::now();
        let (subject, levels): (String, Vec<(String, wreathgen_core::PermGroup)>) = match (group, tower) {
            (Some(g), None) => (g.into(), vec![(g.into(), self.config.group(g, "/catalog")?.group.clone())]),
            (None, Some(t)) => (
                t.into(),
                self.config
                    .tower(t, "/towers")?
                    .levels()
                    .iter()
                    .map(|l| (l.name.clone(), l.group.clone()))
                    .collect(),
            ),
            _ => return Err(CliError::Usage("pass exactly one of --group or --tower".into())),
        };
        let mut report = HypothesisReport::for_groups(levels.iter().map(|(n, g)| (n.as_str(), g)), SEARCH_ORDER_LIMIT)
            .map_err(|e| CliError::Usage(e.to_string()))?;
        let groups: Vec<_> = levels.iter().map(|(_, g)| g.clone()).collect();
        match find_special_pairs(&groups, SEARCH_ORDER_LIMIT) {
            Ok(pairs) => report.record_pairs(&pairs),
            Err(e) => report.notes.push(format!("special pairs: {e}")),
        }
        for l in &report.levels {
            if let Some(w) = l.non_regular.as_ref().and_then(|n| n.witness.as_ref()) {
                debug_assert!(w.verify(), "witness {} fails re-check", format_images(&w.element));
            }
        }
        let entry = HypothesesEntry::from_report(&subject, &report, ms(start));
        Ok(self.report("hypotheses", vec![Entry::Hypotheses(entry)]))
    }
}
