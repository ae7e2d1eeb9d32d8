use serde::{Deserialize, Serialize};
use serde_json::json;

use super::{CheckReport, GroupContext, Verdict, VerifyError};
use crate::blocks;
use crate::groups::PermGroup;
use crate::rationality::character_conductor;
use crate::tables::{CharacterTable, FusionMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StarField {
    Rationals,
    Qp,
}

impl StarField {
    fn contains(self, conductor: u64, p: u64) -> bool {
        match self {
            StarField::Rationals => conductor == 1,
            StarField::Qp => conductor == 1 || conductor == p,
        }
    }
}

/// An orbit X ⊆ Irr(S) supplied by the caller, with optional tables of groups S ≤ T
/// (fused from S) in which extensions are sought.
pub struct StarInput<'a> {
    pub table: &'a CharacterTable,
    pub orbit: Vec<usize>,
    pub p: u64,
    pub field: StarField,
    pub extensions: Vec<(&'a CharacterTable, &'a FusionMap)>,
}

/// star: items (i) and (ii) of the condition from the table of S; item (iii) only when
/// extension tables are supplied, and reported as "unverified" otherwise.
pub fn check_condition_star(input: &StarInput) -> Result<CheckReport, VerifyError> {
    let (s, p) = (input.table, input.p);
    let mut report = CheckReport::new("star", s.name(), p);
    if input.orbit.is_empty() || input.orbit.iter().any(|&r| r >= s.irr().len()) {
        return Err(VerifyError::Input(format!(
            "orbit {:?} is not a nonempty set of rows of {}",
            input.orbit,
            s.name()
        )));
    }
    let b0 = blocks::principal_block(s, p)?;
    let item_i = !(input.orbit.len() as u64).is_multiple_of(p);
    let mut item_ii = true;
    for &row in &input.orbit {
        let degree = s.degree(row);
        let conductor = character_conductor(s, row);
        let ok = b0.contains(row)
            && degree > 1
            && degree % p != 0
            && input.field.contains(conductor, p);
        item_ii &= ok;
        report.witnesses.push(json!({
            "row": row,
            "degree": degree,
            "conductor": conductor,
            "in_principal_block": b0.contains(row),
            "item_ii": ok,
        }));
    }

    let item_iii = if input.extensions.is_empty() {
        "unverified"
    } else {
        let mut all_found = true;
        for &row in &input.orbit {
            let mut found = None;
            for (t, fusion) in &input.extensions {
                fusion.validate(s, t)?;
                let bt = blocks::principal_block(t, p)?;
                let hits: Vec<usize> = bt
                    .rows()
                    .into_iter()
                    .filter(|&r| {
                        t.restrict(r, fusion) == s.row(row)
                            && input.field.contains(character_conductor(t, r), p)
                    })
                    .collect();
                if !hits.is_empty() {
                    found = Some((t.name().to_string(), hits));
                    break;
                }
            }
            match found {
                Some((name, rows)) => report.witnesses.push(json!({
                    "row": row,
                    "extension_table": name,
                    "extension_rows": rows,
                })),
                None => {
                    all_found = false;
                    report.witnesses.push(json!({"row": row, "extension_table": null}));
                }
            }
        }
        if all_found {
            "verified"
        } else {
            "failed"
        }
    };
    report.witnesses.push(json!({
        "orbit_size": input.orbit.len(),
        "item_i": item_i,
        "item_ii": item_ii,
        "item_iii": item_iii,
    }));
    let verdict = if item_i && item_ii && item_iii != "failed" {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    let narrative = format!(
        "orbit of size {}: (i) {}, (ii) {}, (iii) {item_iii}",
        input.orbit.len(),
        if item_i { "holds" } else { "fails" },
        if item_ii { "holds" } else { "fails" },
    );
    Ok(report.conclude(verdict, narrative))
}

/// The conjugation action of T on Irr(S), for a normal subgroup S (element indices of T)
/// whose table was computed from `t.subgroup_group(s)`.
pub struct CharacterAction<'a> {
    t: &'a PermGroup,
    s_group: PermGroup,
    s_table: &'a CharacterTable,
}

impl<'a> CharacterAction<'a> {
    pub fn new(t: &'a PermGroup, s: &[usize], s_table: &'a CharacterTable) -> Result<Self, VerifyError> {
        if !t.is_subgroup(s) || !t.is_normal(s) {
            return Err(VerifyError::Input("S is not normal in T".into()));
        }
        Ok(CharacterAction {
            t,
            s_group: t.subgroup_group(s)?,
            s_table,
        })
    }

    /// Row permutation θ ↦ θ^g, with θ^g(x) = θ(g x g⁻¹).
    pub fn row_permutation(&self, g: usize) -> Result<Vec<usize>, VerifyError> {
        let (t, sg) = (self.t, &self.s_group);
        let data = sg.conjugacy_data();
        let class_perm: Vec<usize> = data
            .reps
            .iter()
            .map(|&r| {
                let in_t = t.index_of(sg.element(r)).expect("S lies in T");
                let image = t.element(t.conjugate(in_t, t.inv(g)));
                data.class_of[sg.index_of(image).expect("S is normal")]
            })
            .collect();
        (0..self.s_table.irr().len())
            .map(|row| {
                let moved: Vec<_> = class_perm
                    .iter()
                    .map(|&k| self.s_table.row(row)[k].clone())
                    .collect();
                self.s_table
                    .irr()
                    .iter()
                    .position(|r| *r == moved)
                    .ok_or_else(|| VerifyError::Input("class action does not permute Irr(S)".into()))
            })
            .collect()
    }

    /// Orbits on rows, each sorted, in order of least member.
    pub fn orbits(&self) -> Result<Vec<Vec<usize>>, VerifyError> {
        let rows = self.s_table.irr().len();
        let mut parent: Vec<usize> = (0..rows).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in self.t.generator_indices() {
            for (row, image) in self.row_permutation(g)?.into_iter().enumerate() {
                let (a, b) = (find(&mut parent, row), find(&mut parent, image));
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut orbits: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; rows];
        for row in 0..rows {
            let r = find(&mut parent, row);
            if slot[r] == usize::MAX {
                slot[r] = orbits.len();
                orbits.push(Vec::new());
            }
            orbits[slot[r]].push(row);
        }
        Ok(orbits)
    }

    /// The stabilizer T_θ as a sorted subgroup of T.
    pub fn stabilizer(&self, row: usize) -> Result<Vec<usize>, VerifyError> {
        let mut out = Vec::new();
        for g in 0..self.t.order() as usize {
            if self.row_permutation(g)?[row] == row {
                out.push(g);
            }
        }
        Ok(out)
    }

    pub fn s_group(&self) -> &PermGroup {
        &self.s_group
    }
}

/// Orbits of T on Irr(S); see [`CharacterAction`].
pub fn extension_orbits(
    t: &PermGroup,
    s: &[usize],
    s_table: &CharacterTable,
) -> Result<Vec<Vec<usize>>, VerifyError> {
    CharacterAction::new(t, s, s_table)?.orbits()
}

/// The condition for S ⊴ T computed from group data: orbits of T on Irr(S), and each
/// θ's extensions sought in the table of its stabilizer T_θ. With no orbit given, every
/// orbit meeting (i) and (ii) is reported; if none does, a single inconsistent report
/// lists the orbits.
pub fn check_condition_star_in_group(
    ctx: &GroupContext,
    s: &[usize],
    p: u64,
    field: StarField,
    orbit: Option<Vec<usize>>,
) -> Result<Vec<CheckReport>, VerifyError> {
    let s_group = ctx.group.subgroup_group(s)?;
    let s_table = s_group.character_table(&format!("{}:S", ctx.name))?;
    let action = CharacterAction::new(&ctx.group, s, &s_table)?;
    let orbits = action.orbits()?;
    let explicit = orbit.is_some();
    let selected = match orbit {
        Some(mut o) => {
            o.sort_unstable();
            vec![o]
        }
        None => orbits.clone(),
    };
    let mut stabilizers: Vec<(Vec<usize>, CharacterTable, FusionMap)> = Vec::new();
    let mut reports = Vec::new();
    for orbit in selected {
        for &row in &orbit {
            if row >= s_table.irr().len() {
                return Err(VerifyError::Input(format!("row {row} is out of range")));
            }
            let stab = action.stabilizer(row)?;
            if stabilizers.iter().any(|(set, _, _)| *set == stab) {
                continue;
            }
            let u = ctx.group.subgroup_group(&stab)?;
            let u_table = u.character_table(&format!("{}:T_{row}", ctx.name))?;
            let fusion = FusionMap::new(&s_table, &u_table, u.fusion_classes(action.s_group()))?;
            stabilizers.push((stab, u_table, fusion));
        }
        let input = StarInput {
            table: &s_table,
            orbit,
            p,
            field,
            extensions: stabilizers.iter().map(|(_, t, f)| (t, f)).collect(),
        };
        let report = check_condition_star(&input)?;
        let summary = report.witnesses.last().expect("star reports end with a summary");
        let candidate = summary["item_i"] == true && summary["item_ii"] == true;
        if explicit || candidate {
            reports.push(report);
        }
    }
    if reports.is_empty() {
        let mut report = CheckReport::new("star", s_table.name(), p);
        report.witnesses.push(json!({"orbits": orbits}));
        reports.push(report.conclude(
            Verdict::Inconsistent,
            format!("none of {} orbit(s) meets (i) and (ii)", orbits.len()),
        ));
    }
    Ok(reports)
}
