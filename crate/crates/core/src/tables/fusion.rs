use serde::{Deserialize, Serialize};

use super::{CharacterTable, TableError};

/// Class fusion of a subgroup table into a group table: H-class index ↦ G-class index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionMap {
    sub: String,
    #[serde(rename = "super")]
    sup: String,
    map: Vec<usize>,
}

impl FusionMap {
    /// Builds a fusion and checks it against both tables.
    pub fn new(
        sub: &CharacterTable,
        sup: &CharacterTable,
        map: Vec<usize>,
    ) -> Result<Self, TableError> {
        let f = FusionMap {
            sub: sub.name().to_string(),
            sup: sup.name().to_string(),
            map,
        };
        f.validate(sub, sup)?;
        Ok(f)
    }

    pub fn from_json(text: &str) -> Result<Self, TableError> {
        serde_json::from_str(text).map_err(|e| TableError::Schema(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("fusions always serialize")
    }

    pub fn sub_name(&self) -> &str {
        &self.sub
    }

    pub fn super_name(&self) -> &str {
        &self.sup
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// Index |G : H|.
    pub fn index(&self, sub: &CharacterTable, sup: &CharacterTable) -> u64 {
        sup.order() / sub.order()
    }

    /// Identity, element orders, power maps, and that every restricted irreducible
    /// decomposes with nonnegative integer multiplicities.
    pub fn validate(&self, sub: &CharacterTable, sup: &CharacterTable) -> Result<(), TableError> {
        let err = |m: String| Err(TableError::Fusion(m));
        if self.map.len() != sub.num_classes() {
            return err(format!(
                "map has {} entries, subgroup has {} classes",
                self.map.len(),
                sub.num_classes()
            ));
        }
        if !sup.order().is_multiple_of(sub.order()) {
            return err(format!(
                "subgroup order {} does not divide {}",
                sub.order(),
                sup.order()
            ));
        }
        if self.map[0] != 0 {
            return err("identity class must fuse to the identity".into());
        }
        for (h, &g) in self.map.iter().enumerate() {
            if g >= sup.num_classes() {
                return err(format!("class {h} maps to {g}, out of range"));
            }
            let (oh, og) = (sub.classes()[h].rep_order, sup.classes()[g].rep_order);
            if oh != og {
                return err(format!(
                    "class {h} of order {oh} fuses into class {g} of order {og}"
                ));
            }
            for (q, &img_h) in &sub.classes()[h].power_maps {
                if let Some(&img_g) = sup.classes()[g].power_maps.get(q) {
                    if self.map[img_h] != img_g {
                        return err(format!("fusion does not commute with the {q}-power map at class {h}"));
                    }
                }
            }
        }
        let mut fused_sizes = vec![0u64; sup.num_classes()];
        for (h, &g) in self.map.iter().enumerate() {
            fused_sizes[g] += sub.classes()[h].size;
        }
        for (g, &s) in fused_sizes.iter().enumerate() {
            // |H ∩ g^G| ≤ |g^G|
            if s > sup.classes()[g].size {
                return err(format!("more subgroup elements fuse into class {g} than it holds"));
            }
        }
        for row in 0..sup.irr().len() {
            let restricted = sup.restrict(row, self);
            for (j, m) in sub.decompose(&restricted).into_iter().enumerate() {
                let ok = m.to_integer().is_some_and(|v| v >= num_bigint::BigInt::from(0));
                if !ok {
                    return err(format!(
                        "restriction of row {row} has multiplicity {m} at subgroup row {j}"
                    ));
                }
            }
        }
        Ok(())
    }
}
