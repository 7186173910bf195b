use std::io::Read;

use orientcount::generators::Family;
use orientcount::planar_map::{parse_pmap, parse_pmap_json, PlanarMap, Vertex};

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

/// A map in pmap v1 text or its JSON mirror, with any demand it carries.
pub fn load_map(path: &str) -> Result<(PlanarMap, Option<Vec<u32>>), String> {
    let text = read_source(path)?;
    let parsed = if text.trim_start().starts_with('{') {
        parse_pmap_json(&text)
    } else {
        parse_pmap(&text)
    };
    parsed.map_err(|e| format!("{path}: {e}"))
}

/// Integers separated by whitespace or commas; `#` starts a comment.
pub fn parse_ints(text: &str) -> Result<Vec<u32>, String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c.is_whitespace() || c == ','))
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| format!("expected a non-negative integer, found {t:?}")))
        .collect()
}

/// The demand from `--alpha FILE`, `--alpha-inline LIST` or the map file,
/// in that order of preference.
pub fn resolve_alpha(
    map: &PlanarMap,
    embedded: Option<Vec<u32>>,
    file: Option<&str>,
    inline: Option<&str>,
) -> Result<Vec<u32>, String> {
    let alpha = match (file, inline) {
        (Some(_), Some(_)) => return Err("give either --alpha or --alpha-inline, not both".into()),
        (Some(f), None) => parse_ints(&read_source(f)?)?,
        (None, Some(s)) => parse_ints(s)?,
        (None, None) => embedded.ok_or("no demand: pass --alpha, --alpha-inline, or alpha lines in the map")?,
    };
    if alpha.len() != map.vertex_count() {
        return Err(format!(
            "demand has {} entries but the map has {} vertices",
            alpha.len(),
            map.vertex_count()
        ));
    }
    Ok(alpha)
}

pub fn check_vertex(map: &PlanarMap, v: Vertex, what: &str) -> Result<Vertex, String> {
    if v < map.vertex_count() {
        Ok(v)
    } else {
        Err(format!("{what} {v} is not a vertex (the map has {})", map.vertex_count()))
    }
}

/// Edges not on the outer face.
pub fn inner_active(map: &PlanarMap) -> Vec<bool> {
    let outer = map.outer_face();
    (0..map.edge_count())
        .map(|e| map.face_of(2 * e) != outer && map.face_of(2 * e + 1) != outer)
        .collect()
}

/// `a,b,c;d,e,f;...` into faces to stack into.
pub fn parse_stacking(text: &str) -> Result<Vec<[Vertex; 3]>, String> {
    text.split(';')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            let v = parse_ints(t)?;
            match v[..] {
                [a, b, c] => Ok([a as Vertex, b as Vertex, c as Vertex]),
                _ => Err(format!("stacking face {t:?} needs three vertices")),
            }
        })
        .collect()
}

pub const FAMILY_NAMES: [&str; 12] = [
    "grid",
    "torus-grid",
    "augmented-grid",
    "quad-grid",
    "tri-grid",
    "tri-torus",
    "augmented-tri-grid",
    "hex-grid",
    "augmented-hex-grid",
    "angle-grid",
    "stacked",
    "strip",
];

pub fn parse_family(name: &str, stacking: Option<&str>) -> Result<Family, String> {
    Ok(match name {
        "grid" => Family::Grid,
        "torus-grid" => Family::TorusGrid,
        "augmented-grid" => Family::AugmentedGrid,
        "quad-grid" => Family::QuadGrid,
        "tri-grid" => Family::TriGrid,
        "tri-torus" => Family::TriTorus,
        "augmented-tri-grid" => Family::AugmentedTriGrid,
        "hex-grid" => Family::HexGrid,
        "augmented-hex-grid" => Family::AugmentedHexGrid,
        "angle-grid" => Family::AngleGrid,
        "strip" => Family::Strip,
        "stacked" => Family::Stacked(parse_stacking(
            stacking.ok_or("the stacked family needs --stacking \"a,b,c;...\"")?,
        )?),
        _ => return Err(format!("unknown family {name:?}; expected one of {}", FAMILY_NAMES.join(", "))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_with_commas_and_comments() {
        assert_eq!(parse_ints("1, 2\n3 # four\n").unwrap(), vec![1, 2, 3]);
        assert!(parse_ints("1 x").is_err());
        assert!(parse_ints("-1").is_err());
    }

    #[test]
    fn stacking_faces() {
        assert_eq!(parse_stacking("0,1,2; 0,1,3").unwrap(), vec![[0, 1, 2], [0, 1, 3]]);
        assert!(parse_stacking("0,1").is_err());
    }

    #[test]
    fn every_family_name_parses() {
        for name in FAMILY_NAMES {
            let f = parse_family(name, Some("0,1,2")).unwrap();
            assert_eq!(f.cli_name(), name);
        }
        assert!(parse_family("stacked", None).is_err());
        assert!(parse_family("cube", None).is_err());
    }
}
