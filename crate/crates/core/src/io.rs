//! JSON curve sets and machine-readable reports.
//!
//! A curve set is `{"curves": [{"id": "a", "points": [[x, y], ...]}, ...]}`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{DepthError, Result};
use crate::geom::{Point, Polyline};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveEntry {
    pub id: String,
    pub points: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSetFile {
    pub curves: Vec<CurveEntry>,
}

/// Validated curves in file order.
#[derive(Clone, Debug, PartialEq)]
pub struct CurveSet {
    pub ids: Vec<String>,
    pub curves: Vec<Polyline>,
    /// Non-fatal notes such as collapsed repeated points.
    pub warnings: Vec<String>,
}

impl CurveSet {
    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|i| i == id)
    }
}

fn parse_error(path: impl Into<String>, message: impl Into<String>) -> DepthError {
    DepthError::Parse {
        path: path.into(),
        message: message.into(),
    }
}

pub fn parse_curve_set(bytes: &[u8]) -> Result<CurveSet> {
    let de = &mut serde_json::Deserializer::from_slice(bytes);
    let file: CurveSetFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        parse_error(
            if path == "." { "$".to_string() } else { path },
            e.into_inner().to_string(),
        )
    })?;
    let mut seen = HashSet::new();
    let mut set = CurveSet {
        ids: Vec::with_capacity(file.curves.len()),
        curves: Vec::with_capacity(file.curves.len()),
        warnings: Vec::new(),
    };
    for (i, entry) in file.curves.into_iter().enumerate() {
        let path = format!("curves[{i}]");
        if !seen.insert(entry.id.clone()) {
            return Err(parse_error(
                format!("{path}.id"),
                format!("duplicate id {:?}", entry.id),
            ));
        }
        if entry.points.is_empty() {
            return Err(parse_error(format!("{path}.points"), "curve has no points"));
        }
        let mut pts = Vec::with_capacity(entry.points.len());
        for (k, [x, y]) in entry.points.iter().copied().enumerate() {
            let p = Point::try_new(x, y)
                .map_err(|_| parse_error(format!("{path}.points[{k}]"), "non-finite coordinate"))?;
            pts.push(p);
        }
        let (poly, removed) =
            Polyline::collapsing(pts).map_err(|e| parse_error(format!("{path}.points"), e.to_string()))?;
        if removed > 0 {
            set.warnings.push(format!(
                "{path}.points ({}): collapsed {removed} repeated consecutive point(s)",
                entry.id
            ));
        }
        set.ids.push(entry.id);
        set.curves.push(poly);
    }
    Ok(set)
}

pub fn to_file(ids: &[String], curves: &[Polyline]) -> CurveSetFile {
    CurveSetFile {
        curves: ids
            .iter()
            .zip(curves)
            .map(|(id, c)| CurveEntry {
                id: id.clone(),
                points: c.vertices().iter().map(|p| [p.x, p.y]).collect(),
            })
            .collect(),
    }
}

pub fn serialize_curve_set(ids: &[String], curves: &[Polyline]) -> String {
    serde_json::to_string_pretty(&to_file(ids, curves)).expect("curve sets always serialize")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Exact,
    Mc,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DepthReport {
    /// Query id, or the inline query points.
    pub query: serde_json::Value,
    pub n: usize,
    pub depth_raw: f64,
    /// Normalized depth when the report was requested normalized, un-normalized otherwise.
    pub depth: f64,
    pub depth_normalized: f64,
    pub length: f64,
    pub intervals: usize,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub samples: Option<u64>,
}
