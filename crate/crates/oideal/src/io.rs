//! JSON shapes shared by the command line and the scenario reports.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use oideal_core::{parse_poly, parse_ring, Error, FPModule, PolyMatrix, Polynomial, Result, RingRef};

/// `{"ring": ..., "generators": n, "relations": rows}`; each row lists the
/// coefficients of one generator across the relation columns.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModuleFile {
    pub ring: String,
    pub generators: usize,
    #[serde(default)]
    pub relations: Vec<Vec<String>>,
}

/// Reads `@path` arguments from disk; other text is returned as is.
pub fn read_arg(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map_err(|e| Error::Invalid(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn parse_module(text: &str) -> Result<FPModule> {
    let file: ModuleFile =
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("bad module JSON: {e}")))?;
    let ring = parse_ring(&file.ring)?;
    module_from_file(&ring, &file)
}

pub fn module_from_file(ring: &RingRef, file: &ModuleFile) -> Result<FPModule> {
    if !file.relations.is_empty() && file.relations.len() != file.generators {
        return Err(Error::Invalid(format!(
            "{} relation rows for {} generators",
            file.relations.len(),
            file.generators
        )));
    }
    let ncols = file.relations.first().map_or(0, Vec::len);
    let mut rows = Vec::with_capacity(file.generators);
    for row in &file.relations {
        if row.len() != ncols {
            return Err(Error::Invalid("relation rows have different lengths".into()));
        }
        rows.push(row.iter().map(|s| parse_poly(ring, s)).collect::<Result<Vec<Polynomial>>>()?);
    }
    let m = if rows.is_empty() {
        PolyMatrix::zero(ring, file.generators, 0)
    } else {
        PolyMatrix::from_rows(ring, rows, ncols)?
    };
    FPModule::new(ring, file.generators, m)
}

pub fn module_json(m: &FPModule) -> Value {
    let file = ModuleFile {
        ring: m.ring().describe(),
        generators: m.ngens(),
        relations: m
            .relations()
            .rows()
            .iter()
            .map(|r| r.iter().map(|p| p.to_string()).collect())
            .collect(),
    };
    serde_json::to_value(file).expect("module serializes")
}
