use orientcount::alpha_engine::EdgeOrientation;
use orientcount::planar_map::PlanarMap;
use serde_json::{Map, Value};

pub const SCHEMA: &str = "orientcount/1";

/// `x` rounded to 12 significant digits.
pub fn round12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(round12).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(a) => a.iter_mut().for_each(round_floats),
        Value::Object(o) => o.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// The JSON document for a command: the schema key, the body's fields and
/// `ms` when timing was asked for. Keys come out sorted.
pub fn document(body: Value, ms: Option<f64>) -> String {
    let mut obj = match body {
        Value::Object(o) => o,
        other => {
            let mut o = Map::new();
            o.insert("result".into(), other);
            o
        }
    };
    obj.insert("schema".into(), Value::from(SCHEMA));
    if let Some(ms) = ms {
        obj.insert("ms".into(), Value::from(ms));
    }
    let mut v = Value::Object(obj);
    round_floats(&mut v);
    serde_json::to_string_pretty(&v).expect("values serialise")
}

/// The map as a DOT graph; directed when an orientation is given.
pub fn map_dot(map: &PlanarMap, x: Option<&EdgeOrientation>) -> String {
    let (kind, arrow) = if x.is_some() { ("digraph", "->") } else { ("graph", "--") };
    let mut s = format!("{kind} map {{\n");
    for v in 0..map.vertex_count() {
        s.push_str(&format!("  {v};\n"));
    }
    for e in 0..map.edge_count() {
        let (u, v) = map.edge_ends(e);
        let (a, b) = match x {
            Some(x) if !x.forward(e) => (v, u),
            _ => (u, v),
        };
        s.push_str(&format!("  {a} {arrow} {b} [label=\"{e}\"];\n"));
    }
    s.push_str("}\n");
    s
}
