//! Bundled data assets and their validation.
//!
//! Every asset is compiled in. Setting `GDH_DATA_DIR` (or calling
//! [`DataSet::from_dir`]) replaces any asset found in that directory.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::diagram::HoleDiagram;
use crate::exactlat::{parse_rational, Rational};
use crate::liealg::AffineStructure;
use crate::orbnum::{CycleShape, ShapeClassInfo};

pub const DATA_DIR_ENV: &str = "GDH_DATA_DIR";

pub const SHAPES_FILE: &str = "co0_frame_shapes.json";
pub const TABLE2_FILE: &str = "table2_golden.json";
pub const TABLE1_FILE: &str = "table1_spurious.json";
pub const CENTRES_FILE: &str = "deep_hole_centres.json";

const SHAPES_JSON: &str = include_str!("../data/co0_frame_shapes.json");
const TABLE2_JSON: &str = include_str!("../data/table2_golden.json");
const TABLE1_JSON: &str = include_str!("../data/table1_spurious.json");
const CENTRES_JSON: &str = include_str!("../data/deep_hole_centres.json");

/// Structure string of the abelian row.
pub const ABELIAN: &str = "\\mathbb{C}^{24}";

#[derive(Debug, Error)]
pub enum DataError {
    #[error("{file}: {msg}")]
    Invalid { file: String, msg: String },
    #[error("{file}: {source}")]
    Io { file: String, source: std::io::Error },
}

fn invalid(file: &str, msg: impl Into<String>) -> DataError {
    DataError::Invalid { file: file.to_string(), msg: msg.into() }
}

/// One row of the table of generalised deep holes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRow {
    pub no: u32,
    pub label: String,
    pub structure: String,
    pub dim: i64,
    pub n: u64,
    /// `ρ(V(g^m))` for the divisors `m` of `n` in increasing order.
    pub rho: Vec<String>,
    pub phi: String,
    pub shape: CycleShape,
    pub rank: u32,
    pub doubling: bool,
    /// Set where the printed row is corrected.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

impl GoldenRow {
    pub fn is_abelian(&self) -> bool {
        self.structure == ABELIAN
    }

    pub fn affine_structure(&self) -> Option<AffineStructure> {
        AffineStructure::parse(&self.structure).ok()
    }

    pub fn diagram(&self) -> HoleDiagram {
        HoleDiagram::parse(&self.phi).expect("validated")
    }

    pub fn rho_values(&self) -> Vec<Rational> {
        self.rho.iter().map(|r| parse_rational(r).expect("validated")).collect()
    }
}

/// One spurious candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpuriousRow {
    pub shape: CycleShape,
    pub lifted_order: u64,
    pub rho: String,
    pub n: u64,
    pub structure: String,
    pub phi: String,
    pub norms: Vec<String>,
    /// Whether the lattice-norm argument alone rules the case out.
    pub eliminated_by_norms: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub erratum: Option<String>,
}

/// An explicit deep-hole centre of the Leech lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentreRecord {
    pub seed: String,
    pub diagram: String,
    /// Coordinates in the bundled Leech basis' ambient space.
    pub centre: Vec<String>,
}

impl CentreRecord {
    pub fn centre_vector(&self) -> Vec<Rational> {
        self.centre.iter().map(|x| parse_rational(x).expect("validated")).collect()
    }
}

#[derive(Clone, Debug)]
pub struct DataSet {
    pub shapes: Vec<ShapeClassInfo>,
    pub table2: Vec<GoldenRow>,
    pub table1: Vec<SpuriousRow>,
    pub centres: Vec<CentreRecord>,
}

fn parse<T: for<'de> Deserialize<'de>>(file: &str, text: &str) -> Result<T, DataError> {
    serde_json::from_str(text).map_err(|e| invalid(file, e.to_string()))
}

impl DataSet {
    pub fn bundled() -> Result<Self, DataError> {
        let d = DataSet {
            shapes: parse(SHAPES_FILE, SHAPES_JSON)?,
            table2: parse(TABLE2_FILE, TABLE2_JSON)?,
            table1: parse(TABLE1_FILE, TABLE1_JSON)?,
            centres: parse(CENTRES_FILE, CENTRES_JSON)?,
        };
        d.validate()?;
        Ok(d)
    }

    /// Bundled data with any asset present in `dir` replaced.
    pub fn from_dir(dir: &Path) -> Result<Self, DataError> {
        fn read<T: for<'de> Deserialize<'de>>(dir: &Path, file: &str, fallback: &str) -> Result<T, DataError> {
            let p = dir.join(file);
            if p.exists() {
                let text = fs::read_to_string(&p).map_err(|source| DataError::Io { file: p.display().to_string(), source })?;
                parse(&p.display().to_string(), &text)
            } else {
                parse(file, fallback)
            }
        }
        let d = DataSet {
            shapes: read(dir, SHAPES_FILE, SHAPES_JSON)?,
            table2: read(dir, TABLE2_FILE, TABLE2_JSON)?,
            table1: read(dir, TABLE1_FILE, TABLE1_JSON)?,
            centres: read(dir, CENTRES_FILE, CENTRES_JSON)?,
        };
        d.validate()?;
        Ok(d)
    }

    /// Honours `GDH_DATA_DIR`.
    pub fn load() -> Result<Self, DataError> {
        match std::env::var_os(DATA_DIR_ENV) {
            Some(dir) => Self::from_dir(Path::new(&dir)),
            None => Self::bundled(),
        }
    }

    pub fn shape_info(&self, s: &CycleShape) -> Option<&ShapeClassInfo> {
        self.shapes.iter().find(|i| &i.shape == s)
    }

    pub fn validate(&self) -> Result<(), DataError> {
        let mut seen = std::collections::BTreeSet::new();
        for info in &self.shapes {
            info.check().map_err(|m| invalid(SHAPES_FILE, m))?;
            if !seen.insert(info.shape.clone()) {
                return Err(invalid(SHAPES_FILE, format!("duplicate shape {}", info.shape)));
            }
        }
        for r in &self.table2 {
            let ctx = |m: String| invalid(TABLE2_FILE, format!("row {}: {m}", r.label));
            if !r.is_abelian() {
                AffineStructure::parse(&r.structure).map_err(|e| ctx(e.to_string()))?;
            }
            HoleDiagram::parse(&r.phi).map_err(|e| ctx(e.to_string()))?;
            for x in &r.rho {
                parse_rational(x).map_err(|e| ctx(e.to_string()))?;
            }
            if !seen.contains(&r.shape) {
                return Err(ctx(format!("shape {} missing from the catalog", r.shape)));
            }
        }
        for r in &self.table1 {
            let ctx = |m: String| invalid(TABLE1_FILE, format!("{}: {m}", r.structure));
            AffineStructure::parse(&r.structure).map_err(|e| ctx(e.to_string()))?;
            HoleDiagram::parse(&r.phi).map_err(|e| ctx(e.to_string()))?;
            parse_rational(&r.rho).map_err(|e| ctx(e.to_string()))?;
        }
        for c in &self.centres {
            let ctx = |m: String| invalid(CENTRES_FILE, format!("{}: {m}", c.seed));
            HoleDiagram::parse(&c.diagram).map_err(|e| ctx(e.to_string()))?;
            if c.centre.len() != 24 {
                return Err(ctx(format!("centre has {} coordinates", c.centre.len())));
            }
            for x in &c.centre {
                parse_rational(x).map_err(|e| ctx(e.to_string()))?;
            }
        }
        Ok(())
    }
}
