//! Checkers for the principal-block statements over tables, groups and corpora. Every
//! check produces a [`CheckReport`] in a fixed JSON schema.

mod corpus;
mod group_checks;
mod star;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::blocks::{self, BlockError, BlockPartition};
use crate::groups::GroupError;
use crate::partitions::{prop37_construct, PartitionError};
use crate::rationality::{self, RationalityError};
use crate::tables::{CharacterTable, TableError};

pub use corpus::{check_block_sums, corpus_run, GROUP_CHECKS, TABLE_CHECKS, CorpusConfig, CorpusReport, Exploration, PrimeSelection};
pub use group_checks::{
    check_normal_complement_oracle, check_restriction_over_normal, check_restriction_p_prime_index,
    derived_subgroup, GroupContext,
};
pub use star::{
    check_condition_star, check_condition_star_in_group, extension_orbits, CharacterAction,
    StarField, StarInput,
};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Block(#[from] BlockError),
    #[error(transparent)]
    Rationality(#[from] RationalityError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("input error: {0}")]
    Input(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Consistent,
    Inconsistent,
    Inapplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Subject {
    pub group: String,
    pub p: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub subject: Subject,
    pub verdict: Verdict,
    pub witnesses: Vec<Value>,
    pub narrative: String,
}

impl CheckReport {
    fn new(check: &str, group: &str, p: u64) -> Self {
        CheckReport {
            check: check.to_string(),
            subject: Subject {
                group: group.to_string(),
                p,
            },
            verdict: Verdict::Consistent,
            witnesses: Vec::new(),
            narrative: String::new(),
        }
    }

    fn conclude(mut self, verdict: Verdict, narrative: String) -> Self {
        self.verdict = verdict;
        self.narrative = narrative;
        self
    }

    pub fn is_inconsistent(&self) -> bool {
        self.verdict == Verdict::Inconsistent
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports always serialize")
    }

    /// One line: check, subject, verdict, narrative.
    pub fn to_text(&self) -> String {
        let verdict = match self.verdict {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "INCONSISTENT",
            Verdict::Inapplicable => "inapplicable",
        };
        format!(
            "{:<8} {:<20} p={:<3} {:<13} {}",
            self.check, self.subject.group, self.subject.p, verdict, self.narrative
        )
    }
}

/// Both sides of a biconditional; the witness records which direction broke.
fn biconditional(lhs: bool, rhs: bool) -> Verdict {
    if lhs == rhs {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    }
}

fn complement_witness(table: &CharacterTable, p: u64) -> Result<Value, VerifyError> {
    let o = blocks::o_pprime_order(table, p)?;
    let order = table.order();
    Ok(json!({
        "o_pprime_order": o,
        "pprime_part": order / crate::arith::p_part(order, p),
    }))
}

/// Members of the principal block with degree > 1, prime-to-p degree and values in the
/// given field, as (row, degree, conductor).
fn small_field_p_prime_members(
    table: &CharacterTable,
    bp: &BlockPartition,
    p: u64,
    in_field: impl Fn(u64) -> bool,
) -> Vec<(usize, u64, u64)> {
    bp.principal_block()
        .members
        .iter()
        .filter(|m| m.degree > 1 && m.degree % p != 0)
        .filter_map(|m| {
            let c = rationality::character_conductor(table, m.row);
            in_field(c).then_some((m.row, m.degree, c))
        })
        .collect()
}

/// thmD: every nonlinear rational member of B_0 at p = 2 has even degree iff G has a
/// normal 2-complement.
pub fn check_rational_degree_parity(table: &CharacterTable) -> Result<CheckReport, VerifyError> {
    let p = 2;
    let report = CheckReport::new("thmD", table.name(), p);
    let bp = blocks::block_partition(table, p)?;
    let odd = small_field_p_prime_members(table, &bp, p, |c| c == 1);
    let lhs = odd.is_empty();
    let rhs = blocks::has_normal_p_complement(table, p)?;
    let verdict = biconditional(lhs, rhs);
    let mut report = report;
    for &(row, degree, _) in &odd {
        report.witnesses.push(json!({"row": row, "degree": degree, "rational": true}));
    }
    report.witnesses.push(complement_witness(table, p)?);
    let narrative = format!(
        "{} nonlinear rational odd-degree B0 member(s); normal 2-complement: {rhs}",
        odd.len()
    );
    Ok(report.conclude(verdict, narrative))
}

/// thmE: for odd p, p divides the degree of every nonlinear Q_p-valued member of B_0 iff G
/// has a normal p-complement.
pub fn check_qp_valued_degree_criterion(
    table: &CharacterTable,
    p: u64,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("thmE", table.name(), p);
    if p == 2 {
        return Ok(report.conclude(Verdict::Inapplicable, "p must be odd".into()));
    }
    let bp = blocks::block_partition(table, p)?;
    let bad = small_field_p_prime_members(table, &bp, p, |c| c == 1 || c == p);
    let lhs = bad.is_empty();
    let rhs = blocks::has_normal_p_complement(table, p)?;
    for &(row, degree, c) in &bad {
        report
            .witnesses
            .push(json!({"row": row, "degree": degree, "conductor": c}));
    }
    report.witnesses.push(complement_witness(table, p)?);
    let narrative = format!(
        "{} nonlinear Q_{p}-valued {p}'-degree B0 member(s); normal {p}-complement: {rhs}",
        bad.len()
    );
    Ok(report.conclude(biconditional(lhs, rhs), narrative))
}

/// thm41: every block has a height-zero almost p-rational member, uniquely iff the block
/// has defect zero. Also runs the A-invariance self-test and the congruence
/// p^d f ≡ Σ m_χ² (mod p) over the A-fixed height-zero members.
pub fn check_almost_rational_height_zero(
    table: &CharacterTable,
    p: u64,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("thm41", table.name(), p);
    let bp = blocks::block_partition(table, p)?;
    let orbits = match rationality::check_a_invariance(table, p) {
        Ok(o) => o,
        Err(RationalityError::InvariantViolation(msg)) => {
            report.witnesses.push(json!({"a_invariance": msg}));
            return Ok(report.conclude(Verdict::Inconsistent, "A-invariance self-test failed".into()));
        }
        Err(e) => return Err(e.into()),
    };
    let mut failures = 0;
    for (b, block) in bp.blocks.iter().enumerate() {
        let count = block
            .height_zero()
            .filter(|m| rationality::classify(table, m.row, p).almost_p_rational)
            .count();
        let existence = count >= 1;
        let uniqueness = (count == 1) == (block.defect == 0);
        let congruence = rationality::invariant_height_zero_congruence(block, p, bp.a, &orbits);
        let congruence_ok = congruence.is_ok();
        if !(existence && uniqueness && congruence_ok) {
            failures += 1;
            report.witnesses.push(json!({
                "block": b,
                "defect": block.defect,
                "rows": block.rows(),
                "almost_rational_height_zero": count,
                "congruence": congruence.err().map(|e| e.to_string()),
            }));
        }
    }
    let verdict = if failures == 0 {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    let narrative = format!(
        "{} block(s); {failures} violating existence, uniqueness or the congruence",
        bp.blocks.len()
    );
    Ok(report.conclude(verdict, narrative))
}

/// conjF (principal block): all height-zero almost p-rational members of B_0 share one
/// degree iff G has a normal p-complement. Degree data for the other blocks is returned
/// separately as exploration, with no verdict.
pub fn check_principal_nilpotency_degrees(
    table: &CharacterTable,
    p: u64,
) -> Result<(CheckReport, Vec<Exploration>), VerifyError> {
    let mut report = CheckReport::new("conjF", table.name(), p);
    let bp = blocks::block_partition(table, p)?;
    let degrees_of = |b: usize| -> Vec<u64> {
        let mut d: Vec<u64> = bp.blocks[b]
            .height_zero()
            .filter(|m| rationality::classify(table, m.row, p).almost_p_rational)
            .map(|m| m.degree)
            .collect();
        d.sort_unstable();
        d
    };
    let principal = degrees_of(bp.principal);
    let lhs = principal.windows(2).all(|w| w[0] == w[1]);
    let rhs = blocks::has_normal_p_complement(table, p)?;
    report
        .witnesses
        .push(json!({"principal_height_zero_almost_rational_degrees": principal}));
    report.witnesses.push(complement_witness(table, p)?);
    let exploration = (0..bp.blocks.len())
        .filter(|&b| b != bp.principal)
        .map(|b| {
            let degrees = degrees_of(b);
            Exploration {
                group: table.name().to_string(),
                p,
                block: b,
                defect: bp.blocks[b].defect,
                equal_degrees: degrees.windows(2).all(|w| w[0] == w[1]),
                degrees,
            }
        })
        .collect();
    let narrative = format!("B0 degrees equal: {lhs}; normal {p}-complement: {rhs}");
    Ok((report.conclude(biconditional(lhs, rhs), narrative), exploration))
}

/// prop37: the construction for A_n at every (n, p) in range, one report each.
pub fn check_prop37(n_max: u32, p_max: u64) -> Vec<CheckReport> {
    let mut out = Vec::new();
    for n in 5..=n_max {
        for p in (3..=p_max.min(n as u64)).filter(|&p| crate::arith::is_prime(p)) {
            let report = CheckReport::new("prop37", &format!("A{n}"), p);
            let r = match prop37_construct(n, p) {
                Ok(cert) => {
                    let narrative = format!("λ = {}, degree {}", cert.lambda, cert.degree);
                    let verdict = if cert.passes() {
                        Verdict::Consistent
                    } else {
                        Verdict::Inconsistent
                    };
                    let mut r = report.conclude(verdict, narrative);
                    r.witnesses.push(serde_json::to_value(&cert).expect("certificate serializes"));
                    r
                }
                Err(PartitionError::UnsupportedCase { .. }) => report.conclude(
                    Verdict::Inapplicable,
                    "no construction for this (n, p)".into(),
                ),
                Err(e) => {
                    let mut r = report.conclude(Verdict::Inconsistent, e.to_string());
                    r.witnesses.push(json!({"error": e.to_string()}));
                    r
                }
            };
            out.push(r);
        }
    }
    out
}
