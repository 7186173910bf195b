//! The `pmap v1` text format and its JSON mirror.
//!
//! ```text
//! n 4
//! rot 0: 1 2 3
//! ...
//! outer: 0 1
//! alpha 0: 3
//! ```
//!
//! Rotation lists are counterclockwise; `outer: v u` names the dart with the
//! outer face on its left. Alpha lines are optional but, if present, must
//! cover every vertex. A `surface: torus` line marks genus-one embeddings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{MapError, PlanarMap, Surface};

#[derive(Debug, Error)]
pub enum PmapError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
    #[error("alpha given for some vertices but not for vertex {0}")]
    MissingAlpha(usize),
    #[error("maps with parallel edges cannot be written as rotation lists")]
    MultiEdges,
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

fn syntax(line: usize, msg: impl Into<String>) -> PmapError {
    PmapError::Syntax { line, msg: msg.into() }
}

fn int(tok: &str, line: usize) -> Result<usize, PmapError> {
    tok.parse().map_err(|_| syntax(line, format!("expected an integer, found {tok:?}")))
}

/// Parses `pmap v1` text into a map and optional out-degree demands.
pub fn parse_pmap(text: &str) -> Result<(PlanarMap, Option<Vec<u32>>), PmapError> {
    let mut n: Option<usize> = None;
    let mut rot: Vec<Option<Vec<usize>>> = Vec::new();
    let mut outer = None;
    let mut alpha: Vec<Option<u32>> = Vec::new();
    let mut surface = Surface::Sphere;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("n ") {
            if n.is_some() {
                return Err(syntax(ln, "duplicate n line"));
            }
            let k = int(rest.trim(), ln)?;
            n = Some(k);
            rot = vec![None; k];
            alpha = vec![None; k];
            continue;
        }
        let k = n.ok_or_else(|| syntax(ln, "the n line must come first"))?;
        if let Some(rest) = line.strip_prefix("rot ") {
            let (head, tail) = rest.split_once(':').ok_or_else(|| syntax(ln, "missing ':'"))?;
            let v = int(head.trim(), ln)?;
            if v >= k {
                return Err(syntax(ln, format!("vertex {v} out of range")));
            }
            if rot[v].is_some() {
                return Err(syntax(ln, format!("duplicate rotation for {v}")));
            }
            let list = tail.split_whitespace().map(|t| int(t, ln)).collect::<Result<Vec<_>, _>>()?;
            rot[v] = Some(list);
        } else if let Some(rest) = line.strip_prefix("outer:") {
            let toks: Vec<_> = rest.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(syntax(ln, "outer needs two vertices"));
            }
            outer = Some((int(toks[0], ln)?, int(toks[1], ln)?));
        } else if let Some(rest) = line.strip_prefix("alpha ") {
            let (head, tail) = rest.split_once(':').ok_or_else(|| syntax(ln, "missing ':'"))?;
            let v = int(head.trim(), ln)?;
            if v >= k {
                return Err(syntax(ln, format!("vertex {v} out of range")));
            }
            alpha[v] = Some(int(tail.trim(), ln)? as u32);
        } else if let Some(rest) = line.strip_prefix("surface:") {
            surface = match rest.trim() {
                "sphere" => Surface::Sphere,
                "torus" => Surface::Torus,
                other => return Err(syntax(ln, format!("unknown surface {other:?}"))),
            };
        } else {
            return Err(syntax(ln, format!("unrecognised line {line:?}")));
        }
    }
    let n = n.ok_or_else(|| syntax(0, "missing n line"))?;
    let lists: Vec<Vec<usize>> = rot
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| syntax(0, format!("missing rotation for vertex {v}"))))
        .collect::<Result<_, _>>()?;
    let outer = outer.ok_or_else(|| syntax(0, "missing outer line"))?;
    let map = PlanarMap::build_map_on(&lists, outer, surface)?;
    let alpha = collect_alpha(n, &alpha)?;
    Ok((map, alpha))
}

fn collect_alpha(n: usize, alpha: &[Option<u32>]) -> Result<Option<Vec<u32>>, PmapError> {
    if alpha.iter().all(Option::is_none) {
        return Ok(None);
    }
    (0..n)
        .map(|v| alpha[v].ok_or(PmapError::MissingAlpha(v)))
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

/// Writes `pmap v1` text. Rotations start at each vertex's first dart, so
/// text produced by this function round-trips byte for byte.
pub fn write_pmap(map: &PlanarMap, alpha: Option<&[u32]>) -> Result<String, PmapError> {
    if map.has_multi_edges() {
        return Err(PmapError::MultiEdges);
    }
    let mut s = format!("n {}\n", map.vertex_count());
    for v in 0..map.vertex_count() {
        s.push_str(&format!("rot {v}:"));
        for w in map.neighbors(v) {
            s.push_str(&format!(" {w}"));
        }
        s.push('\n');
    }
    let od = map.outer_dart();
    s.push_str(&format!("outer: {} {}\n", map.origin(od), map.target(od)));
    if map.surface() == Surface::Torus {
        s.push_str("surface: torus\n");
    }
    if let Some(a) = alpha {
        for (v, x) in a.iter().enumerate() {
            s.push_str(&format!("alpha {v}: {x}\n"));
        }
    }
    Ok(s)
}

#[derive(Serialize, Deserialize)]
struct PmapJson {
    n: usize,
    rot: Vec<Vec<usize>>,
    outer: [usize; 2],
    #[serde(skip_serializing_if = "Option::is_none", default)]
    alpha: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    surface: Option<String>,
}

pub fn write_pmap_json(map: &PlanarMap, alpha: Option<&[u32]>) -> Result<serde_json::Value, PmapError> {
    if map.has_multi_edges() {
        return Err(PmapError::MultiEdges);
    }
    let od = map.outer_dart();
    let doc = PmapJson {
        n: map.vertex_count(),
        rot: map.rotation_lists(),
        outer: [map.origin(od), map.target(od)],
        alpha: alpha.map(<[u32]>::to_vec),
        surface: (map.surface() == Surface::Torus).then(|| "torus".to_string()),
    };
    Ok(serde_json::to_value(doc)?)
}

pub fn parse_pmap_json(text: &str) -> Result<(PlanarMap, Option<Vec<u32>>), PmapError> {
    let doc: PmapJson = serde_json::from_str(text)?;
    if doc.rot.len() != doc.n {
        return Err(syntax(0, format!("n is {} but {} rotations given", doc.n, doc.rot.len())));
    }
    let surface = match doc.surface.as_deref() {
        None | Some("sphere") => Surface::Sphere,
        Some("torus") => Surface::Torus,
        Some(other) => return Err(syntax(0, format!("unknown surface {other:?}"))),
    };
    let map = PlanarMap::build_map_on(&doc.rot, (doc.outer[0], doc.outer[1]), surface)?;
    if let Some(a) = &doc.alpha {
        if a.len() != doc.n {
            return Err(PmapError::MissingAlpha(a.len().min(doc.n)));
        }
    }
    Ok((map, doc.alpha))
}
