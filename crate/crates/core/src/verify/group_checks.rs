use std::cell::RefCell;
use std::collections::BTreeMap;

use serde_json::json;

use super::{CheckReport, Verdict, VerifyError};
use crate::blocks::{self, BlockError, RestrictionOutcome};
use crate::groups::{GroupFile, PermGroup, Subgroup};
use crate::tables::{CharacterTable, FusionMap};

/// A group together with its computed table and the optional subgroup data of its input
/// file. Subgroup tables are computed on first use and cached by element set.
pub struct GroupContext {
    pub name: String,
    pub group: PermGroup,
    pub table: CharacterTable,
    pub normal: Option<Subgroup>,
    pub subgroups: Vec<(String, Subgroup)>,
    cache: RefCell<BTreeMap<Subgroup, (CharacterTable, FusionMap)>>,
}

impl GroupContext {
    pub fn new(
        name: &str,
        group: PermGroup,
        normal: Option<Subgroup>,
        subgroups: Vec<(String, Subgroup)>,
    ) -> Result<Self, VerifyError> {
        let table = group.character_table(name)?;
        if let Some(n) = &normal {
            if !group.is_subgroup(n) || !group.is_normal(n) {
                return Err(VerifyError::Input(format!(
                    "{name}: the supplied normal subgroup is not normal"
                )));
            }
        }
        Ok(GroupContext {
            name: name.to_string(),
            group,
            table,
            normal,
            subgroups,
            cache: RefCell::new(BTreeMap::new()),
        })
    }

    pub fn from_file(file: &GroupFile, cap: usize) -> Result<Self, VerifyError> {
        let group = file.build(cap)?;
        let normal = file.normal_in(&group)?;
        let subgroups = file
            .subgroups
            .iter()
            .map(|s| Ok((s.name.clone(), file.subgroup_in(&group, &s.generators)?)))
            .collect::<Result<Vec<_>, VerifyError>>()?;
        Self::new(&file.name, group, normal, subgroups)
    }

    /// Table of the subgroup on `set` and its fusion into the table of G.
    pub fn subgroup_table(&self, set: &[usize], label: &str) -> Result<(CharacterTable, FusionMap), VerifyError> {
        if let Some(hit) = self.cache.borrow().get(set) {
            return Ok(hit.clone());
        }
        let name = format!("{}:{label}", self.name);
        let entry = if set.len() as u64 == self.group.order() {
            let t = self.table.clone().with_name(name);
            let f = FusionMap::new(&t, &self.table, (0..t.num_classes()).collect())?;
            (t, f)
        } else {
            self.group.subgroup_fusion(set, &name, &self.table)?
        };
        self.cache.borrow_mut().insert(set.to_vec(), entry.clone());
        Ok(entry)
    }
}

/// [G, G] as the normal closure of the commutators of the generators.
pub fn derived_subgroup(g: &PermGroup) -> Subgroup {
    let gens = g.generator_indices();
    let mut seeds = Vec::new();
    for &a in &gens {
        for &b in &gens {
            let c = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            if c != 0 {
                seeds.push(c);
            }
        }
    }
    let mut h = g.generate(&seeds);
    loop {
        let m = g.mask(&h);
        let outside = h
            .iter()
            .flat_map(|&x| gens.iter().map(move |&s| (x, s)))
            .map(|(x, s)| g.conjugate(x, s))
            .find(|&y| !m[y]);
        match outside {
            Some(y) => {
                seeds.push(y);
                h = g.generate(&seeds);
            }
            None => return h,
        }
    }
}

/// Product set A·B.
fn product(g: &PermGroup, a: &[usize], b: &[usize]) -> Subgroup {
    let mut member = vec![false; g.order() as usize];
    for &x in a {
        for &y in b {
            member[g.mul(x, y)] = true;
        }
    }
    (0..member.len()).filter(|&i| member[i]).collect()
}

fn push_unique(list: &mut Vec<(String, Subgroup)>, label: &str, set: Subgroup) {
    if !list.iter().any(|(_, s)| *s == set) {
        list.push((label.to_string(), set));
    }
}

/// thmC: when V/N has a normal p-complement, every χ ∈ B_0(G) restricting irreducibly to
/// N restricts irreducibly into B_0(U) for each tested N ≤ U ≤ G. The tested U are N, V,
/// N·P for a Sylow p-subgroup P, G, and supplied subgroups containing N.
pub fn check_restriction_over_normal(
    ctx: &GroupContext,
    n: &[usize],
    p: u64,
) -> Result<CheckReport, VerifyError> {
    let g = &ctx.group;
    let mut report = CheckReport::new("thmC", &ctx.name, p);
    let (v, flag) = g.v_subgroup(n, p)?;
    report.witnesses.push(json!({
        "n_order": n.len(),
        "v_order": v.len(),
        "v_over_n_has_normal_p_complement": flag,
    }));
    if !flag {
        return Ok(report.conclude(
            Verdict::Inapplicable,
            format!("|N| = {}: V/N has no normal {p}-complement", n.len()),
        ));
    }
    let all: Subgroup = (0..g.order() as usize).collect();
    let sylow = g.sylow(&all, p);
    let mut levels = Vec::new();
    push_unique(&mut levels, "N", n.to_vec());
    push_unique(&mut levels, "V", v);
    push_unique(&mut levels, "NP", product(g, n, &sylow));
    push_unique(&mut levels, "G", all);
    for (label, s) in &ctx.subgroups {
        if n.iter().all(|&x| s.binary_search(&x).is_ok()) {
            push_unique(&mut levels, label, s.clone());
        }
    }

    let bp = blocks::block_partition(&ctx.table, p)?;
    let (n_table, n_fusion) = ctx.subgroup_table(n, "N")?;
    let mut tested = 0;
    let mut violations = 0;
    let mut level_data = Vec::new();
    for (label, set) in &levels {
        let (u_table, u_fusion) = ctx.subgroup_table(set, label)?;
        let bu = blocks::block_partition(&u_table, p)?;
        level_data.push((label, set, u_table, u_fusion, bu));
    }
    for &row in &bp.principal_block().rows() {
        if !n_table.is_irreducible_character(&ctx.table.restrict(row, &n_fusion)) {
            continue;
        }
        tested += 1;
        for (label, set, u_table, u_fusion, bu) in &level_data {
            let restricted = ctx.table.restrict(row, u_fusion);
            let issue = match u_table.irr().iter().position(|psi| *psi == restricted) {
                None => Some("reducible"),
                Some(sub) => (!bu.principal_block().contains(sub)).then_some("outside B0(U)"),
            };
            if let Some(issue) = issue {
                violations += 1;
                report.witnesses.push(json!({
                    "row": row,
                    "subgroup": label,
                    "subgroup_order": set.len(),
                    "issue": issue,
                }));
            }
        }
    }
    let names: Vec<&str> = levels.iter().map(|(l, _)| l.as_str()).collect();
    let narrative = format!(
        "|N| = {}; {tested} B0 character(s) irreducible on N, tested on {}; {violations} violation(s)",
        n.len(),
        names.join(",")
    );
    let verdict = if violations == 0 {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    Ok(report.conclude(verdict, narrative))
}

/// lemma21: for subgroups U of p′-index, an irreducible restriction of a B_0(G) character
/// lands in B_0(U). Tested on N_G(P), on N·P for the supplied normal subgroup, and on the
/// supplied subgroups of p′-index.
pub fn check_restriction_p_prime_index(
    ctx: &GroupContext,
    p: u64,
) -> Result<CheckReport, VerifyError> {
    let g = &ctx.group;
    let mut report = CheckReport::new("lemma21", &ctx.name, p);
    let order = g.order();
    let all: Subgroup = (0..order as usize).collect();
    let sylow = g.sylow(&all, p);
    let mut levels = Vec::new();
    push_unique(&mut levels, "NGP", g.normalizer(&sylow));
    if let Some(n) = &ctx.normal {
        push_unique(&mut levels, "NP", product(g, n, &sylow));
    }
    for (label, s) in &ctx.subgroups {
        push_unique(&mut levels, label, s.clone());
    }
    levels.retain(|(_, s)| !(order / s.len() as u64).is_multiple_of(p));

    let bp = blocks::block_partition(&ctx.table, p)?;
    let mut irreducible = 0;
    let mut violations = 0;
    for (label, set) in &levels {
        let (u_table, u_fusion) = ctx.subgroup_table(set, label)?;
        u_fusion.validate(&u_table, &ctx.table)?;
        let bu = blocks::block_partition(&u_table, p)?;
        for &row in &bp.principal_block().rows() {
            match blocks::restriction_in_blocks(&ctx.table, &bp, &u_table, &bu, &u_fusion, row) {
                Ok(r) => {
                    if let RestrictionOutcome::Irreducible { .. } = r.outcome {
                        irreducible += 1;
                    }
                }
                Err(BlockError::InvariantViolation(msg)) => {
                    violations += 1;
                    report.witnesses.push(json!({
                        "row": row,
                        "subgroup": label,
                        "subgroup_order": set.len(),
                        "issue": msg,
                    }));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    let names: Vec<&str> = levels.iter().map(|(l, _)| l.as_str()).collect();
    let narrative = format!(
        "{irreducible} irreducible restriction(s) to {{{}}}; {violations} outside B0(U)",
        names.join(",")
    );
    let verdict = if violations == 0 {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    Ok(report.conclude(verdict, narrative))
}

/// npc: the table-side normal p-complement test agrees with p′-closure in the group.
pub fn check_normal_complement_oracle(
    ctx: &GroupContext,
    p: u64,
) -> Result<CheckReport, VerifyError> {
    let mut report = CheckReport::new("npc", &ctx.name, p);
    let from_group = ctx.group.has_normal_p_complement(p);
    let from_table = blocks::has_normal_p_complement(&ctx.table, p)?;
    report.witnesses.push(json!({
        "group_side": from_group,
        "table_side": from_table,
        "o_pprime_order": blocks::o_pprime_order(&ctx.table, p)?,
    }));
    let narrative = format!("group side {from_group}, table side {from_table}");
    Ok(report.conclude(super::biconditional(from_group, from_table), narrative))
}
