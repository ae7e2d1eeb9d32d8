use crate::groups::{named, Perm, PermGroup, DEFAULT_CAP};
use crate::tables::CharacterTable;

pub(crate) fn golden(name: &str) -> CharacterTable {
    let path = format!("{}/tests/data/golden/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    CharacterTable::from_json(&text).unwrap_or_else(|e| panic!("{path}: {e}"))
}

pub(crate) fn group(gens: Vec<Perm>) -> PermGroup {
    PermGroup::enumerate(gens, DEFAULT_CAP).unwrap()
}

/// A spread of small groups with their computed tables.
pub(crate) fn sample_groups() -> Vec<(String, PermGroup, CharacterTable)> {
    let families: Vec<(&str, Vec<Perm>)> = vec![
        ("C1", vec![Perm::identity(1)]),
        ("C4", named::cyclic(4)),
        ("C6", named::cyclic(6)),
        ("C8", named::cyclic(8)),
        ("C9", named::cyclic(9)),
        ("C2xC2", named::direct_product(&named::cyclic(2), &named::cyclic(2))),
        ("C3xS3", named::direct_product(&named::cyclic(3), &named::symmetric(3))),
        ("S3", named::symmetric(3)),
        ("D10", named::dihedral(5)),
        ("D8", named::dihedral(4)),
        ("Q8", named::dicyclic(2)),
        ("Dic3", named::dicyclic(3)),
        ("Q16", named::dicyclic(4)),
        ("A4", named::alternating(4)),
        ("S4", named::symmetric(4)),
        ("SL(2,3)", named::sl2_3()),
        ("A5", named::alternating(5)),
        ("S5", named::symmetric(5)),
    ];
    families
        .into_iter()
        .map(|(name, gens)| {
            let g = group(gens);
            let t = g.character_table(name).unwrap();
            (name.to_string(), g, t)
        })
        .collect()
}
