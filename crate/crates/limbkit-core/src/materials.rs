//! Material property catalog.
//!
//! The shipped defaults are standard handbook values for the three
//! materials used in the build (machined aluminum, commercial stainless
//! parts, printed ABS); they are configuration data, not physics, and can
//! be replaced wholesale by pointing the toolkit at a catalog file.

use crate::units::Stress;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MaterialError {
    #[error("unknown material {0:?}; known: {1}")]
    UnknownMaterial(String, String),
    #[error("failed to read material catalog {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("failed to parse material catalog: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("material {name:?}: {field} must be > 0, got {value}")]
    InvalidProperty {
        name: String,
        field: &'static str,
        value: f64,
    },
}

/// Elastic and strength properties of one catalog material.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialProps {
    pub name: String,
    pub youngs_modulus: Stress,
    pub yield_strength: Stress,
    pub density_kg_m3: f64,
}

#[derive(Debug, Deserialize)]
struct MaterialRecord {
    youngs_modulus_pa: f64,
    yield_strength_pa: f64,
    density_kg_m3: f64,
}

/// Catalog keyed by material name. Iteration order is the sorted key
/// order, so identical file bytes always yield identical catalogs.
#[derive(Debug, Clone, Default)]
pub struct MaterialCatalog {
    entries: BTreeMap<String, MaterialProps>,
}

/// Default catalog in the same format accepted from disk. Handbook values:
/// Al 6061-T6, generic 304-class stainless, and printed ABS.
pub const BUILTIN_CATALOG_TOML: &str = r#"
[al6061]
youngs_modulus_pa = 6.89e10
yield_strength_pa = 2.76e8
density_kg_m3 = 2700.0

[stainless]
youngs_modulus_pa = 1.93e11
yield_strength_pa = 2.15e8
density_kg_m3 = 8000.0

[abs]
youngs_modulus_pa = 2.0e9
yield_strength_pa = 4.0e7
density_kg_m3 = 1040.0
"#;

impl MaterialCatalog {
    /// The shipped handbook defaults.
    pub fn builtin() -> Self {
        Self::from_toml_str(BUILTIN_CATALOG_TOML)
            .expect("builtin material catalog must be valid")
    }

    pub fn from_toml_str(text: &str) -> Result<Self, MaterialError> {
        let records: BTreeMap<String, MaterialRecord> = toml::from_str(text)?;
        let mut entries = BTreeMap::new();
        for (name, rec) in records {
            if !(rec.youngs_modulus_pa > 0.0) {
                return Err(MaterialError::InvalidProperty {
                    name,
                    field: "youngs_modulus_pa",
                    value: rec.youngs_modulus_pa,
                });
            }
            if !(rec.yield_strength_pa > 0.0) {
                return Err(MaterialError::InvalidProperty {
                    name,
                    field: "yield_strength_pa",
                    value: rec.yield_strength_pa,
                });
            }
            let props = MaterialProps {
                name: name.clone(),
                youngs_modulus: Stress::pascals(rec.youngs_modulus_pa),
                yield_strength: Stress::pascals(rec.yield_strength_pa),
                density_kg_m3: rec.density_kg_m3,
            };
            entries.insert(name, props);
        }
        Ok(Self { entries })
    }

    pub fn from_path(path: &Path) -> Result<Self, MaterialError> {
        let text = std::fs::read_to_string(path).map_err(|source| MaterialError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::from_toml_str(&text)
    }

    pub fn lookup(&self, name: &str) -> Result<&MaterialProps, MaterialError> {
        self.entries.get(name).ok_or_else(|| {
            let known = self
                .entries
                .keys()
                .cloned()
                .collect::<Vec<_>>()
                .join(", ");
            MaterialError::UnknownMaterial(name.to_string(), known)
        })
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.keys().map(|s| s.as_str())
    }
}
