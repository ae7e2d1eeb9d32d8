use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{GroupError, Perm, PermGroup, Subgroup};

/// A named generating set, used for the optional subgroup list of a group file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedGenerators {
    pub name: String,
    pub generators: Vec<Vec<u32>>,
}

/// Group input file: generators as image lists on 0..degree, an optional normal subgroup
/// and optional further subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub normal: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subgroups: Vec<NamedGenerators>,
}

impl GroupFile {
    pub fn from_json(text: &str) -> Result<Self, GroupError> {
        serde_json::from_str(text).map_err(|e| GroupError::Input(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, GroupError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| GroupError::Input(format!("{}: {e}", path.display())))?;
        Self::from_json(&text).map_err(|e| GroupError::Input(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("group files always serialize")
    }

    fn perms(&self, gens: &[Vec<u32>]) -> Result<Vec<Perm>, GroupError> {
        let mut out = Vec::with_capacity(gens.len().max(1));
        for images in gens {
            if images.len() != self.degree {
                return Err(GroupError::Input(format!(
                    "generator of length {} in a group of degree {}",
                    images.len(),
                    self.degree
                )));
            }
            out.push(Perm::new(images.clone())?);
        }
        if out.is_empty() {
            out.push(Perm::identity(self.degree));
        }
        Ok(out)
    }

    pub fn build(&self, cap: usize) -> Result<PermGroup, GroupError> {
        PermGroup::enumerate(self.perms(&self.generators)?, cap)
    }

    /// The subgroup of `g` generated by the listed permutations.
    pub fn subgroup_in(&self, g: &PermGroup, gens: &[Vec<u32>]) -> Result<Subgroup, GroupError> {
        let idx = self
            .perms(gens)?
            .iter()
            .map(|p| {
                g.index_of(p).ok_or_else(|| {
                    GroupError::Input(format!("{p} is not an element of {}", self.name))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(g.generate(&idx))
    }

    pub fn normal_in(&self, g: &PermGroup) -> Result<Option<Subgroup>, GroupError> {
        self.normal
            .as_ref()
            .map(|gens| self.subgroup_in(g, gens))
            .transpose()
    }
}
