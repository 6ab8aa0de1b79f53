//! JSON formats for fans and polytopes.
//!
//! Fan:        `{ "rank": n, "rays": [[int,…],…], "max_cones": [[idx,…],…], "name": "…" }`
//! V-polytope: `{ "vertices": [["p/q",…],…] }`
//! H-polytope: `{ "inequalities": [{ "normal": [int,…], "offset": "p/q" },…] }`
//!
//! Rationals are always written as strings; integer literals are accepted on input.

use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{self, QVec};
use crate::fan::{Fan, FanError};
use crate::fano::HPolytope;
use crate::geometry::{self, GeometryError, VPolytope};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("line {line}, column {column}, at `{field}`: {message}")]
    Json { line: usize, column: usize, field: String, message: String },
    #[error("invalid fan: {0}")]
    Fan(#[from] FanError),
    #[error("invalid polytope: {0}")]
    Polytope(#[from] GeometryError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

impl FanJson {
    pub fn into_fan(self) -> Result<Fan, FanError> {
        let fan = Fan::from_int_rays(self.rank, &self.rays, self.max_cones)?;
        Ok(match self.name {
            Some(n) => fan.with_name(n),
            None => fan,
        })
    }

    /// Rays must be integral; panics otherwise since `Fan` guarantees it.
    pub fn from_fan(f: &Fan) -> Self {
        let rays = f
            .rays()
            .iter()
            .map(|r| r.iter().map(|x| i64::try_from(x.to_integer()).expect("ray entry fits in i64")).collect())
            .collect();
        let max_cones = f.max_cones().iter().map(|c| c.ray_indices.clone()).collect();
        FanJson { rank: f.rank(), rays, max_cones, name: f.name().map(str::to_string) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VertexJson {
    pub vertices: Vec<RatRow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RatRow(#[serde(with = "exact::rat_vec_string")] pub QVec);

impl VertexJson {
    pub fn from_points(points: &[QVec]) -> Self {
        VertexJson { vertices: points.iter().cloned().map(RatRow).collect() }
    }

    pub fn points(&self) -> Vec<QVec> {
        self.vertices.iter().map(|r| r.0.clone()).collect()
    }

    pub fn into_polytope(self) -> Result<VPolytope, GeometryError> {
        geometry::convex_hull(&self.points())
    }
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T, IoError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        IoError::Json { line: inner.line(), column: inner.column(), field, message: inner.to_string() }
    })
}

pub fn parse_fan(text: &str) -> Result<Fan, IoError> {
    Ok(parse_json::<FanJson>(text)?.into_fan()?)
}

pub fn parse_vertices(text: &str) -> Result<VPolytope, IoError> {
    Ok(parse_json::<VertexJson>(text)?.into_polytope()?)
}

pub fn parse_inequalities(text: &str) -> Result<HPolytope, IoError> {
    parse_json(text)
}

pub fn fan_to_json(f: &Fan) -> String {
    serde_json::to_string_pretty(&FanJson::from_fan(f)).expect("serializable")
}

pub fn vertices_to_json(points: &[QVec]) -> String {
    serde_json::to_string_pretty(&VertexJson::from_points(points)).expect("serializable")
}

pub fn inequalities_to_json(h: &HPolytope) -> String {
    serde_json::to_string_pretty(h).expect("serializable")
}

pub fn read_to_string(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.display().to_string(), source })
}

/// What a JSON document turned out to describe.
#[derive(Debug, Clone)]
pub enum Document {
    Fan(Fan),
    Vertices(VPolytope),
}

/// Sniffs the top-level keys and parses accordingly.
pub fn parse_document(text: &str) -> Result<Document, IoError> {
    let probe: serde_json::Value = parse_json(text)?;
    if probe.get("vertices").is_some() {
        Ok(Document::Vertices(parse_vertices(text)?))
    } else {
        Ok(Document::Fan(parse_fan(text)?))
    }
}
