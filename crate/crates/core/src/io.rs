//! JSON file formats.
//!
//! Rationals appear as strings (`"p/q"`, or `"p"` when the denominator is
//! 1) in every format; no floats are read or written anywhere.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::complex::{SimplicialComplex, SimplicialMap};
use crate::error::{Error, Result};
use crate::intersection::SubmanifoldInclusion;
use crate::lefschetz::ThetaMap;
use crate::matrix::RatMatrix;
use crate::rational::Rational;

/// `{"name": ..., "facets": [[v, ...], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub name: String,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexFile {
    pub fn to_complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_facets(self.name.clone(), &self.facets)
    }

    pub fn from_complex(complex: &SimplicialComplex) -> Self {
        ComplexFile {
            name: complex.name().to_string(),
            facets: complex.maximal_simplices(),
        }
    }
}

/// `{"domain": ..., "codomain": ..., "vertex_map": [w, ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub domain: String,
    pub codomain: String,
    pub vertex_map: Vec<usize>,
}

impl MapFile {
    /// Resolve domain and codomain by name against loaded complexes.
    pub fn to_map(
        &self,
        registry: &BTreeMap<String, Arc<SimplicialComplex>>,
    ) -> Result<SimplicialMap> {
        let lookup = |name: &str| {
            registry.get(name).cloned().ok_or_else(|| {
                Error::InvalidInput(format!("map references unknown complex `{name}`"))
            })
        };
        SimplicialMap::new(
            lookup(&self.domain)?,
            lookup(&self.codomain)?,
            self.vertex_map.clone(),
        )
    }
}

/// `{"betti": [...], "euler": "p/q"}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub euler: Rational,
}

/// `{"model": "thom-diagonal", "n": ..., "shift": ..., "blocks": [...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaFile {
    pub model: String,
    pub n: usize,
    pub shift: isize,
    pub blocks: Vec<ThetaBlockFile>,
}

/// One θ block: `{"degree": d, "matrix": [["p/q", ...], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ThetaBlockFile {
    pub degree: usize,
    pub matrix: Vec<Vec<Rational>>,
}

impl ThetaFile {
    pub fn to_theta(&self) -> Result<ThetaMap> {
        if self.model != "thom-diagonal" {
            return Err(Error::InvalidInput(format!(
                "unsupported θ model `{}`; expected `thom-diagonal`",
                self.model
            )));
        }
        let mut theta = ThetaMap::new(self.n, self.shift);
        for block in &self.blocks {
            let rows = block.matrix.len();
            let cols = block.matrix.first().map_or(0, Vec::len);
            if block.matrix.iter().any(|r| r.len() != cols) {
                return Err(Error::InvalidInput(format!(
                    "θ block at degree {} has ragged rows",
                    block.degree
                )));
            }
            let m = RatMatrix::from_fn(rows, cols, |i, j| block.matrix[i][j].clone());
            theta.insert_block(block.degree, m);
        }
        Ok(theta)
    }

    pub fn from_theta(theta: &ThetaMap) -> Self {
        let blocks = theta
            .blocks()
            .iter()
            .map(|(&degree, m)| ThetaBlockFile {
                degree,
                matrix: (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m[(i, j)].clone()).collect())
                    .collect(),
            })
            .collect();
        ThetaFile {
            model: "thom-diagonal".to_string(),
            n: theta.codim(),
            shift: theta.shift(),
            blocks,
        }
    }
}

/// `{"ambient": ..., "sub_facets": [[v, ...], ...]}`
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubcomplexFile {
    pub ambient: String,
    pub sub_facets: Vec<Vec<usize>>,
}

impl SubcomplexFile {
    pub fn to_inclusion(
        &self,
        registry: &BTreeMap<String, Arc<SimplicialComplex>>,
        sub_name: impl Into<String>,
    ) -> Result<SubmanifoldInclusion> {
        let ambient = registry.get(&self.ambient).cloned().ok_or_else(|| {
            Error::InvalidInput(format!("unknown ambient complex `{}`", self.ambient))
        })?;
        SubmanifoldInclusion::new(ambient, sub_name, &self.sub_facets)
    }
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::InvalidInput(format!("bad JSON in {}: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::InvalidInput(format!("serialize: {e}")))?;
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}
