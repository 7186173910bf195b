//! Bipolar orientations, the angle-graph bijection, and the strip codec.

use std::collections::VecDeque;

use num_bigint::BigUint;

use super::StructError;
use crate::alpha_engine::{count_with, CountOptions, EdgeOrientation, Problem};
use crate::planar_map::{angle_graph, edge_of, Dart, PlanarMap, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BipolarOrientation {
    pub x: EdgeOrientation,
    pub s: Vertex,
    pub t: Vertex,
}

/// Which of the characterising properties an orientation has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BipolarReport {
    /// `s` is a source, `t` a sink, every other vertex has both in- and
    /// out-edges.
    pub sources_sinks: bool,
    /// No face boundary, the outer one included, is a directed cycle.
    pub no_facial_cycle: bool,
    /// At every other vertex the in- and out-edges form two bundles.
    pub bundles: bool,
    /// Every face boundary is two directed paths.
    pub face_paths: bool,
    /// Acyclic with `s` the only source and `t` the only sink.
    pub bipolar: bool,
}

fn is_source(map: &PlanarMap, x: &EdgeOrientation, v: Vertex) -> bool {
    map.darts_at(v).all(|d| x.along(d))
}

fn is_sink(map: &PlanarMap, x: &EdgeOrientation, v: Vertex) -> bool {
    map.darts_at(v).all(|d| !x.along(d))
}

/// Acyclic, with `s` the only source and `t` the only sink.
pub fn is_bipolar(map: &PlanarMap, x: &EdgeOrientation, s: Vertex, t: Vertex) -> bool {
    let n = map.vertex_count();
    for v in 0..n {
        if is_source(map, x, v) != (v == s) || is_sink(map, x, v) != (v == t) {
            return false;
        }
    }
    // Kahn's algorithm.
    let mut indeg = vec![0usize; n];
    for e in 0..map.edge_count() {
        indeg[x.head(map, e)] += 1;
    }
    let mut q: VecDeque<Vertex> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut done = 0;
    while let Some(u) = q.pop_front() {
        done += 1;
        for d in map.darts_at(u) {
            if x.along(d) {
                let w = map.target(d);
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    q.push_back(w);
                }
            }
        }
    }
    done == n
}

pub fn bipolar_report(map: &PlanarMap, b: &BipolarOrientation) -> BipolarReport {
    let (x, s, t) = (&b.x, b.s, b.t);
    let n = map.vertex_count();
    let sources_sinks = (0..n).all(|v| {
        if v == s {
            is_source(map, x, v)
        } else if v == t {
            is_sink(map, x, v)
        } else {
            !is_source(map, x, v) && !is_sink(map, x, v)
        }
    });
    let no_facial_cycle = (0..map.face_count()).all(|f| {
        let w = map.face_darts(f);
        !(w.iter().all(|&d| x.along(d)) || w.iter().all(|&d| !x.along(d)))
    });
    // Direction changes around a vertex, and along a face boundary.
    let changes = |seq: &[bool]| (0..seq.len()).filter(|&i| seq[i] != seq[(i + 1) % seq.len()]).count();
    let bundles = (0..n).filter(|&v| v != s && v != t).all(|v| {
        let dirs: Vec<bool> = map.darts_at(v).map(|d| x.along(d)).collect();
        changes(&dirs) == 2
    });
    let face_paths = (0..map.face_count()).all(|f| {
        let dirs: Vec<bool> = map.face_darts(f).iter().map(|&d| x.along(d)).collect();
        changes(&dirs) == 2
    });
    BipolarReport {
        sources_sinks,
        no_facial_cycle,
        bundles,
        face_paths,
        bipolar: is_bipolar(map, x, s, t),
    }
}

/// Properties (1) and (2): `s` source, `t` sink, every other vertex has in-
/// and out-edges, and no facial cycle is directed.
pub fn bipolar_check(map: &PlanarMap, b: &BipolarOrientation) -> bool {
    let r = bipolar_report(map, b);
    r.sources_sinks && r.no_facial_cycle
}

/// Every bipolar orientation with poles `s`, `t`, by search over edge
/// directions. Intended as an oracle on small maps.
pub fn enumerate_bipolar(map: &PlanarMap, s: Vertex, t: Vertex) -> Vec<EdgeOrientation> {
    let m = map.edge_count();
    let n = map.vertex_count();
    let mut out = Vec::new();
    let mut x = EdgeOrientation::new(m);
    // Undecided edges, in-edges and out-edges per vertex.
    let mut und: Vec<usize> = map.degrees();
    let mut ins = vec![0usize; n];
    let mut outs = vec![0usize; n];
    fn ok(v: Vertex, s: Vertex, t: Vertex, und: &[usize], ins: &[usize], outs: &[usize]) -> bool {
        if v == s {
            return ins[v] == 0;
        }
        if v == t {
            return outs[v] == 0;
        }
        und[v] > 0 || (ins[v] > 0 && outs[v] > 0)
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        e: usize,
        map: &PlanarMap,
        s: Vertex,
        t: Vertex,
        x: &mut EdgeOrientation,
        und: &mut [usize],
        ins: &mut [usize],
        outs: &mut [usize],
        out: &mut Vec<EdgeOrientation>,
    ) {
        if e == map.edge_count() {
            if is_bipolar(map, x, s, t) {
                out.push(x.clone());
            }
            return;
        }
        let (u, v) = map.edge_ends(e);
        for fwd in [true, false] {
            let (a, b) = if fwd { (u, v) } else { (v, u) };
            x.set(e, fwd);
            und[u] -= 1;
            und[v] -= 1;
            outs[a] += 1;
            ins[b] += 1;
            if ok(u, s, t, und, ins, outs) && ok(v, s, t, und, ins, outs) {
                go(e + 1, map, s, t, x, und, ins, outs, out);
            }
            und[u] += 1;
            und[v] += 1;
            outs[a] -= 1;
            ins[b] -= 1;
        }
    }
    if s != t && s < n && t < n {
        go(0, map, s, t, &mut x, &mut und, &mut ins, &mut outs, &mut out);
    }
    out
}

/// Demand on the angle graph: 2 everywhere except 0 at the poles.
pub fn angle_alpha(map: &PlanarMap, s: Vertex, t: Vertex) -> Vec<u32> {
    let mut a = vec![2; map.vertex_count() + map.face_count()];
    a[s] = 0;
    a[t] = 0;
    a
}

/// Number of bipolar orientations, counted as 2-orientations of the angle
/// graph.
pub fn count_bipolar(map: &PlanarMap, s: Vertex, t: Vertex, opts: CountOptions) -> Result<BigUint, StructError> {
    let ag = angle_graph(map);
    let p = Problem::from_map(&ag, &angle_alpha(map, s, t))?;
    Ok(count_with(&p, opts)?.count)
}

/// Angle-graph edge `d` stands for the angle between `d` and its
/// counterclockwise successor. It points from the vertex into the face when
/// the two edges of the angle have opposite directions at the vertex, and
/// from the face to the vertex otherwise.
pub fn bipolar_to_angle(
    map: &PlanarMap,
    x: &EdgeOrientation,
    s: Vertex,
    t: Vertex,
) -> Result<EdgeOrientation, StructError> {
    if !is_bipolar(map, x, s, t) {
        return Err(StructError::InvalidInput("orientation is not bipolar".into()));
    }
    let mut y = EdgeOrientation::new(map.dart_count());
    for d in 0..map.dart_count() {
        let mixed = x.along(d) != x.along(map.rot_next(d));
        y.set(d, mixed);
    }
    Ok(y)
}

/// Inverse of [`bipolar_to_angle`]. At each vertex the two angles pointing
/// into faces split the rotation into an in-bundle and an out-bundle; one
/// known edge fixes both, and directions spread from `s`.
pub fn angle_to_bipolar(
    map: &PlanarMap,
    y: &EdgeOrientation,
    s: Vertex,
    t: Vertex,
) -> Result<BipolarOrientation, StructError> {
    let n = map.vertex_count();
    if y.len() != map.dart_count() {
        return Err(StructError::Length {
            expected: map.dart_count(),
            got: y.len(),
        });
    }
    let invalid = |msg: String| StructError::InvalidInput(msg);
    // dir[e]: Some(true) when the edge points along dart 2e.
    let mut dir: Vec<Option<bool>> = vec![None; map.edge_count()];
    let mut done = vec![false; n];
    let mut q = VecDeque::new();
    let set = |dir: &mut Vec<Option<bool>>, d: Dart, along: bool| -> Result<bool, StructError> {
        let fwd = (d & 1 == 0) == along;
        match dir[edge_of(d)] {
            Some(f) if f != fwd => Err(invalid(format!("edge {} gets both directions", edge_of(d)))),
            Some(_) => Ok(false),
            None => {
                dir[edge_of(d)] = Some(fwd);
                Ok(true)
            }
        }
    };
    let along = |dir: &Vec<Option<bool>>, d: Dart| dir[edge_of(d)].map(|f| f == (d & 1 == 0));
    for d in map.darts_at(s) {
        set(&mut dir, d, true)?;
    }
    for d in map.darts_at(t) {
        set(&mut dir, d, false)?;
    }
    done[s] = true;
    done[t] = true;
    q.extend(map.darts_at(s).map(|d| map.target(d)));
    q.extend(map.darts_at(t).map(|d| map.target(d)));
    while let Some(v) = q.pop_front() {
        if done[v] {
            continue;
        }
        let darts: Vec<Dart> = map.darts_at(v).collect();
        let Some(k0) = darts.iter().position(|&d| along(&dir, d).is_some()) else {
            continue;
        };
        let switches = darts.iter().filter(|&&d| y.forward(d)).count();
        if switches != 2 {
            return Err(invalid(format!("vertex {v} has {switches} mixed angles")));
        }
        // Walk counterclockwise from a known dart; the direction flips after
        // every mixed angle.
        let len = darts.len();
        let mut cur = along(&dir, darts[k0]).unwrap();
        for i in 0..len {
            let d = darts[(k0 + i) % len];
            if set(&mut dir, d, cur)? {
                q.push_back(map.target(d));
            }
            if y.forward(d) {
                cur = !cur;
            }
        }
        done[v] = true;
    }
    if dir.iter().any(Option::is_none) {
        return Err(invalid("some edges were not reached".into()));
    }
    let x = EdgeOrientation::from_bools(&dir.iter().map(|d| d.unwrap()).collect::<Vec<_>>());
    let back = bipolar_to_angle(map, &x, s, t)?;
    if back != *y {
        return Err(invalid("angle orientation is not the image of a bipolar orientation".into()));
    }
    Ok(BipolarOrientation { x, s, t })
}

/// Inner edges of the strip `T_{2,l}` from left to right: the diagonal
/// leaving column 1, the vertical of column 2, the next diagonal, and so on.
pub fn strip_inner_edges(map: &PlanarMap, l: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let find = |u: Vertex, v: Vertex| edge_of(map.find_dart(u, v).expect("strip edge"));
    for j in 1..l {
        out.push(find(l + j - 1, j));
        if j + 1 < l {
            out.push(find(j, l + j));
        }
    }
    out
}

/// One bit per inner edge: 1 where the edge opposes the standard
/// orientation `b0`.
pub fn strip_encode(map: &PlanarMap, l: usize, b0: &EdgeOrientation, x: &EdgeOrientation) -> Vec<u8> {
    strip_inner_edges(map, l)
        .into_iter()
        .map(|e| (x.forward(e) != b0.forward(e)) as u8)
        .collect()
}

pub fn is_sparse(bits: &[u8]) -> bool {
    bits.windows(2).all(|w| w[0] + w[1] < 2) && bits.iter().all(|&b| b < 2)
}

pub fn strip_decode(map: &PlanarMap, l: usize, b0: &EdgeOrientation, bits: &[u8]) -> Result<EdgeOrientation, StructError> {
    let inner = strip_inner_edges(map, l);
    if bits.len() != inner.len() {
        return Err(StructError::Length {
            expected: inner.len(),
            got: bits.len(),
        });
    }
    if !is_sparse(bits) {
        return Err(StructError::NotSparse);
    }
    let mut x = b0.clone();
    for (&e, &b) in inner.iter().zip(bits) {
        if b == 1 {
            x.toggle(e);
        }
    }
    Ok(x)
}
