//! JSON documents for terrains and solutions.
//!
//! Terrain: `{"version":1,"vertices":[[x,y],...]}`.
//!
//! Solution: `{"side":"right","guards":[...],"assignment":{"i":"j",...},
//! "witnesses":[...],"visits":N}` with 1-based vertex numbers and assignment
//! keys in ascending numeric order.
//!
//! Both serializers emit compact JSON with a fixed field order, so equal
//! inputs give byte-identical text.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::DocumentError;
use crate::solver::{GuardSolution, Side};
use crate::terrain::{BuildMode, Terrain};

pub const TERRAIN_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TerrainDoc {
    pub version: u32,
    pub vertices: Vec<[i64; 2]>,
}

impl From<&Terrain> for TerrainDoc {
    fn from(t: &Terrain) -> Self {
        TerrainDoc {
            version: TERRAIN_VERSION,
            vertices: t.vertices().iter().map(|p| [p.x, p.y]).collect(),
        }
    }
}

impl TerrainDoc {
    pub fn into_terrain(self, mode: BuildMode) -> Result<Terrain, DocumentError> {
        if self.version != TERRAIN_VERSION {
            return Err(DocumentError::Version(self.version));
        }
        let coords: Vec<(i64, i64)> = self.vertices.iter().map(|v| (v[0], v[1])).collect();
        Ok(Terrain::build(&coords, mode)?)
    }
}

pub fn terrain_to_json(t: &Terrain) -> String {
    serde_json::to_string(&TerrainDoc::from(t)).expect("terrain documents always serialize")
}

pub fn terrain_from_json(text: &str, mode: BuildMode) -> Result<Terrain, DocumentError> {
    let doc: TerrainDoc = serde_json::from_str(text)?;
    doc.into_terrain(mode)
}

pub fn solution_to_json(sol: &GuardSolution) -> String {
    let list = |v: &mut String, xs: &[usize]| {
        v.push('[');
        for (k, x) in xs.iter().enumerate() {
            if k > 0 {
                v.push(',');
            }
            let _ = write!(v, "{}", x + 1);
        }
        v.push(']');
    };
    let mut s = String::with_capacity(64 + 16 * sol.assignment.len());
    let _ = write!(s, "{{\"side\":\"{}\",\"guards\":", sol.side.as_str());
    list(&mut s, &sol.guards);
    s.push_str(",\"assignment\":{");
    for (k, (w, g)) in sol.assignment.iter().enumerate() {
        if k > 0 {
            s.push(',');
        }
        let _ = write!(s, "\"{}\":\"{}\"", w + 1, g + 1);
    }
    s.push_str("},\"witnesses\":");
    list(&mut s, &sol.witnesses);
    let _ = write!(s, ",\"visits\":{}}}", sol.visits);
    s
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SolutionDoc {
    side: String,
    guards: Vec<usize>,
    assignment: BTreeMap<String, String>,
    witnesses: Vec<usize>,
    visits: u64,
}

fn zero_based(k: usize) -> Result<usize, DocumentError> {
    k.checked_sub(1)
        .ok_or_else(|| DocumentError::Field("vertex numbers start at 1".into()))
}

fn parse_vertex(s: &str) -> Result<usize, DocumentError> {
    let k: usize = s
        .parse()
        .map_err(|_| DocumentError::Field(format!("`{s}` is not a vertex number")))?;
    zero_based(k)
}

/// Parses a solution document. The `degenerate` flag is not part of the
/// document and comes back `false`.
pub fn solution_from_json(text: &str) -> Result<GuardSolution, DocumentError> {
    let doc: SolutionDoc = serde_json::from_str(text)?;
    let side: Side = doc.side.parse().map_err(DocumentError::Field)?;
    let mut guards = doc
        .guards
        .into_iter()
        .map(zero_based)
        .collect::<Result<Vec<_>, _>>()?;
    guards.sort_unstable();
    let assignment = doc
        .assignment
        .iter()
        .map(|(w, g)| Ok((parse_vertex(w)?, parse_vertex(g)?)))
        .collect::<Result<BTreeMap<_, _>, DocumentError>>()?;
    let witnesses = doc
        .witnesses
        .into_iter()
        .map(zero_based)
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GuardSolution {
        side,
        guards,
        assignment,
        witnesses,
        visits: doc.visits,
        degenerate: false,
    })
}
