//! JSON group files.
//!
//! ```json
//! {"name": "s3", "kind": "permutation", "degree": 3, "generators": [[1,2,0],[1,0,2]]}
//! {"name": "z2", "kind": "cayley", "table": [[0,1],[1,0]]}
//! {"name": "d8", "kind": "named", "constructor": "dihedral:8"}
//! ```
//!
//! Each kind takes exactly its own fields; anything else is a schema error.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{named, perm, FiniteGroup};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Permutation,
    Cayley,
    Named,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub kind: GroupKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<u32>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constructor: Option<String>,
}

impl GroupFile {
    pub fn parse(file: &str, text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema {
            file: file.to_string(),
            field: "<document>".to_string(),
            msg: e.to_string(),
        })
    }

    pub fn load(path: &Path) -> Result<FiniteGroup> {
        let text = std::fs::read_to_string(path)?;
        let file = path.display().to_string();
        Self::parse(&file, &text)?.build(&file)
    }

    pub fn build(&self, file: &str) -> Result<FiniteGroup> {
        let schema = |field: &str, msg: String| Error::Schema {
            file: file.to_string(),
            field: field.to_string(),
            msg,
        };
        let allowed: &[&str] = match self.kind {
            GroupKind::Permutation => &["degree", "generators"],
            GroupKind::Cayley => &["table"],
            GroupKind::Named => &["constructor"],
        };
        let present = [
            ("degree", self.degree.is_some()),
            ("generators", self.generators.is_some()),
            ("table", self.table.is_some()),
            ("constructor", self.constructor.is_some()),
        ];
        for (field, is_set) in present {
            let wanted = allowed.contains(&field);
            if wanted && !is_set {
                return Err(schema(field, format!("required for kind {:?}", self.kind)));
            }
            if !wanted && is_set {
                return Err(schema(field, format!("not allowed for kind {:?}", self.kind)));
            }
        }
        let g = match self.kind {
            GroupKind::Permutation => {
                let degree = self.degree.unwrap();
                let gens = self.generators.as_ref().unwrap();
                for (i, g) in gens.iter().enumerate() {
                    if !perm::is_bijection(g, degree) {
                        return Err(schema(
                            &format!("generators[{i}]"),
                            format!("not a bijection on 0..{degree}"),
                        ));
                    }
                }
                FiniteGroup::from_generators(degree, gens)?
            }
            GroupKind::Cayley => FiniteGroup::from_cayley_table(&self.name, self.table.as_ref().unwrap())
                .map_err(|e| schema("table", e.to_string()))?,
            GroupKind::Named => named(self.constructor.as_ref().unwrap())?,
        };
        Ok(g.with_name(&self.name))
    }
}

/// Resolves a command-line group argument: an existing `.json` path is
/// loaded as a group file, anything else is treated as a named spec.
pub fn resolve_group(spec: &str) -> Result<FiniteGroup> {
    let path = Path::new(spec);
    if spec.ends_with(".json") || path.is_file() {
        GroupFile::load(path)
    } else {
        named(spec)
    }
}
