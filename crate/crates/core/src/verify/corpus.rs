use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::json;

use super::group_checks::{
    check_normal_complement_oracle, check_restriction_over_normal, check_restriction_p_prime_index,
    derived_subgroup, GroupContext,
};
use super::{
    check_almost_rational_height_zero, check_principal_nilpotency_degrees,
    check_qp_valued_degree_criterion, check_rational_degree_parity, CheckReport, Verdict,
    VerifyError,
};
use crate::arith::prime_divisors;
use crate::blocks::{self, BlockError};
use crate::groups::{default_cap, GroupFile};
use crate::tables::CharacterTable;

pub const TABLE_CHECKS: &[&str] = &["thmD", "thmE", "thm41", "conjF", "blocksum"];
pub const GROUP_CHECKS: &[&str] = &["thmC", "lemma21", "npc"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PrimeSelection {
    /// Only "dividing" is accepted: every prime dividing the group order.
    Named(String),
    List(Vec<u64>),
}

impl Default for PrimeSelection {
    fn default() -> Self {
        PrimeSelection::Named("dividing".into())
    }
}

/// Corpus configuration, read from TOML. Paths are relative to the config file; a
/// directory entry stands for every `.json` file in it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CorpusConfig {
    #[serde(default)]
    pub groups: Vec<PathBuf>,
    #[serde(default)]
    pub tables: Vec<PathBuf>,
    #[serde(default)]
    pub primes: PrimeSelection,
    #[serde(default = "default_checks")]
    pub checks: Vec<String>,
    pub cap: Option<usize>,
    #[serde(skip)]
    pub base: PathBuf,
}

fn default_checks() -> Vec<String> {
    ["thmD", "thm41", "conjF"].iter().map(|s| s.to_string()).collect()
}

impl CorpusConfig {
    pub fn from_toml(text: &str, base: &Path) -> Result<Self, VerifyError> {
        let mut cfg: CorpusConfig =
            toml::from_str(text).map_err(|e| VerifyError::Input(format!("corpus config: {e}")))?;
        cfg.base = base.to_path_buf();
        if let PrimeSelection::Named(s) = &cfg.primes {
            if s != "dividing" {
                return Err(VerifyError::Input(format!("unknown prime selection {s:?}")));
            }
        }
        if let PrimeSelection::List(ps) = &cfg.primes {
            if let Some(bad) = ps.iter().find(|&&p| !crate::arith::is_prime(p)) {
                return Err(VerifyError::Input(format!("{bad} is not a prime")));
            }
        }
        for c in &cfg.checks {
            if !TABLE_CHECKS.contains(&c.as_str()) && !GROUP_CHECKS.contains(&c.as_str()) {
                return Err(VerifyError::Input(format!("unknown check {c:?}")));
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, VerifyError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| VerifyError::Input(format!("{}: {e}", path.display())))?;
        Self::from_toml(&text, path.parent().unwrap_or(Path::new(".")))
    }

    /// A config over explicit files, for single runs from the command line.
    pub fn with_checks(checks: &[&str]) -> Self {
        CorpusConfig {
            groups: Vec::new(),
            tables: Vec::new(),
            primes: PrimeSelection::default(),
            checks: checks.iter().map(|s| s.to_string()).collect(),
            cap: None,
            base: PathBuf::from("."),
        }
    }

    fn expand(&self, entries: &[PathBuf]) -> Result<Vec<PathBuf>, String> {
        let mut out = Vec::new();
        for e in entries {
            let path = self.base.join(e);
            if path.is_dir() {
                let listing = std::fs::read_dir(&path).map_err(|err| format!("{}: {err}", path.display()))?;
                let mut files: Vec<PathBuf> = listing
                    .filter_map(|d| d.ok().map(|d| d.path()))
                    .filter(|p| p.extension().is_some_and(|x| x == "json"))
                    .collect();
                files.sort();
                out.extend(files);
            } else {
                out.push(path);
            }
        }
        Ok(out)
    }

    fn primes_for(&self, order: u64) -> Vec<u64> {
        match &self.primes {
            PrimeSelection::Named(_) => prime_divisors(order),
            PrimeSelection::List(ps) => {
                let mut ps = ps.clone();
                ps.sort_unstable();
                ps.dedup();
                ps
            }
        }
    }

    fn wants(&self, check: &str) -> bool {
        self.checks.iter().any(|c| c == check)
    }
}

/// Degree data of a non-principal block; informational only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exploration {
    pub group: String,
    pub p: u64,
    pub block: usize,
    pub defect: u32,
    pub degrees: Vec<u64>,
    pub equal_degrees: bool,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CorpusReport {
    pub reports: Vec<CheckReport>,
    pub exploration: Vec<Exploration>,
    pub errors: Vec<String>,
}

impl CorpusReport {
    pub fn inconsistencies(&self) -> usize {
        self.reports.iter().filter(|r| r.is_inconsistent()).count()
    }

    /// 0 when everything is consistent, 1 on any inconsistency, 2 on any input error.
    pub fn exit_code(&self) -> i32 {
        if !self.errors.is_empty() {
            2
        } else if self.inconsistencies() > 0 {
            1
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for r in &self.reports {
            out.push_str(&r.to_text());
            out.push('\n');
        }
        if !self.exploration.is_empty() {
            out.push_str("exploration (non-principal blocks, no verdict):\n");
            for e in &self.exploration {
                out.push_str(&format!(
                    "  {} p={} block {} defect {} degrees {:?}{}\n",
                    e.group,
                    e.p,
                    e.block,
                    e.defect,
                    e.degrees,
                    if e.equal_degrees { " equal" } else { "" }
                ));
            }
        }
        for e in &self.errors {
            out.push_str(&format!("error: {e}\n"));
        }
        let count = |v: Verdict| self.reports.iter().filter(|r| r.verdict == v).count();
        out.push_str(&format!(
            "{} report(s): {} consistent, {} inconsistent, {} inapplicable; {} error(s)\n",
            self.reports.len(),
            count(Verdict::Consistent),
            count(Verdict::Inconsistent),
            count(Verdict::Inapplicable),
            self.errors.len()
        ));
        out
    }
}

/// blocksum: v_p(Σ χ(1)²) = 2a − d(B) on every block, with the block_sum_invariant check.
pub fn check_block_sums(table: &CharacterTable, p: u64) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("blocksum", table.name(), p);
    let bp = blocks::block_partition(table, p)?;
    let mut bad = 0;
    for (b, block) in bp.blocks.iter().enumerate() {
        match blocks::block_sum_invariant(block, p, bp.a) {
            Ok(_) => {}
            Err(BlockError::InvariantViolation(msg)) => {
                bad += 1;
                report
                    .witnesses
                    .push(json!({"block": b, "defect": block.defect, "issue": msg}));
            }
            Err(e) => return Err(e.into()),
        }
    }
    let verdict = if bad == 0 {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    let narrative = format!("{} block(s), {bad} violating the block sum invariant", bp.blocks.len());
    Ok(report.conclude(verdict, narrative))
}

fn run_table_checks(
    cfg: &CorpusConfig,
    table: &CharacterTable,
    out: &mut CorpusReport,
) -> Result<(), VerifyError> {
    if cfg.wants("thmD") {
        out.reports.push(check_rational_degree_parity(table)?);
    }
    for p in cfg.primes_for(table.order()) {
        if cfg.wants("thmE") && p != 2 {
            out.reports.push(check_qp_valued_degree_criterion(table, p)?);
        }
        if cfg.wants("thm41") {
            out.reports.push(check_almost_rational_height_zero(table, p)?);
        }
        if cfg.wants("conjF") {
            let (r, exploration) = check_principal_nilpotency_degrees(table, p)?;
            out.reports.push(r);
            out.exploration.extend(exploration);
        }
        if cfg.wants("blocksum") {
            out.reports.push(check_block_sums(table, p)?);
        }
    }
    Ok(())
}

fn run_group_checks(
    cfg: &CorpusConfig,
    ctx: &GroupContext,
    out: &mut CorpusReport,
) -> Result<(), VerifyError> {
    run_table_checks(cfg, &ctx.table, out)?;
    let mut normals = Vec::new();
    normals.extend(ctx.normal.clone());
    let derived = derived_subgroup(&ctx.group);
    if !normals.contains(&derived) {
        normals.push(derived);
    }
    for p in cfg.primes_for(ctx.group.order()) {
        if cfg.wants("npc") {
            out.reports.push(check_normal_complement_oracle(ctx, p)?);
        }
        if cfg.wants("lemma21") {
            out.reports.push(check_restriction_p_prime_index(ctx, p)?);
        }
        if cfg.wants("thmC") {
            for n in &normals {
                out.reports.push(check_restriction_over_normal(ctx, n, p)?);
            }
        }
    }
    Ok(())
}

fn group_item(cfg: &CorpusConfig, path: &Path, cap: usize, out: &mut CorpusReport) -> Result<(), String> {
    let file = GroupFile::load(path).map_err(|e| e.to_string())?;
    let ctx = GroupContext::from_file(&file, cap).map_err(|e| format!("{}: {e}", path.display()))?;
    run_group_checks(cfg, &ctx, out).map_err(|e| format!("{}: {e}", path.display()))
}

fn table_item(cfg: &CorpusConfig, path: &Path, out: &mut CorpusReport) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let table = CharacterTable::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    run_table_checks(cfg, &table, out).map_err(|e| format!("{}: {e}", path.display()))
}

/// Runs the selected checks over every group and table file, in sorted file order and
/// ascending p. Load failures are collected as errors naming the file.
pub fn corpus_run(cfg: &CorpusConfig) -> CorpusReport {
    let mut out = CorpusReport::default();
    let cap = cfg.cap.unwrap_or_else(default_cap);
    match cfg.expand(&cfg.groups) {
        Ok(files) => {
            for path in files {
                if let Err(e) = group_item(cfg, &path, cap, &mut out) {
                    out.errors.push(e);
                }
            }
        }
        Err(e) => out.errors.push(e),
    }
    match cfg.expand(&cfg.tables) {
        Ok(files) => {
            for path in files {
                if let Err(e) = table_item(cfg, &path, &mut out) {
                    out.errors.push(e);
                }
            }
        }
        Err(e) => out.errors.push(e),
    }
    out
}
