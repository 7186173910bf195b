//! Primal-dual completion of a suspended map.

use super::{is_three_connected, twin, Dart, EdgeId, FaceId, MapError, PlanarMap, Surface, Vertex};

/// What a vertex of the completion stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CompletionVertex {
    Primal(Vertex),
    /// Dual vertex of a bounded face.
    Dual(FaceId),
    /// Dual vertex `b_i` of the outer region between the rays of
    /// `a_{i+1}` and `a_{i+2}` (0-based `i`).
    Suspension(usize),
    /// Crossing of primal edge `e` with its dual edge.
    Edge(EdgeId),
    /// Crossing of the ray at `a_i` with the dual edge `b_{i+1} b_{i+2}`.
    Ray(usize),
    Infinity,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub map: PlanarMap,
    pub alpha: Vec<u32>,
    pub kind: Vec<CompletionVertex>,
    pub specials: [Vertex; 3],
    /// Completion vertex of each primal edge.
    pub edge_vertex: Vec<Vertex>,
    /// Completion vertex of each primal face (the outer face has none).
    pub face_vertex: Vec<Option<Vertex>>,
}

/// Superimposes the suspension of `map` at `specials` (outer vertices in
/// clockwise order) with its suspension dual. Returns the completion and its
/// out-degree demand: 3 on primal and dual vertices, 1 on crossing
/// vertices, 0 on the vertex at infinity.
///
/// Vertex order: primal vertices, duals of bounded faces, `b_1..b_3`, one
/// crossing per primal edge, the three ray crossings, and `v_inf` last.
pub fn completion(map: &PlanarMap, specials: [Vertex; 3]) -> Result<Completion, MapError> {
    if map.surface() != Surface::Sphere || map.has_multi_edges() || !is_three_connected(map) {
        return Err(MapError::NotThreeConnected);
    }
    let walk = map.outer_walk();
    let len = walk.len();
    let mut pos = vec![usize::MAX; map.vertex_count()];
    for (i, &d) in walk.iter().enumerate() {
        pos[map.origin(d)] = i;
    }
    if specials.iter().any(|&a| a >= map.vertex_count() || pos[a] == usize::MAX) {
        return Err(MapError::SpecialVerticesNotOnOuterFace);
    }
    let rel = |v: Vertex| (pos[v] + len - pos[specials[0]]) % len;
    if specials[0] == specials[1] || specials[1] == specials[2] || rel(specials[1]) >= rel(specials[2]) {
        return Err(MapError::SpecialVerticesNotOnOuterFace);
    }

    let n = map.vertex_count();
    let m = map.edge_count();
    let nd = map.dart_count();
    let outer = map.outer_face();
    let mut face_vertex = vec![None; map.face_count()];
    let mut kind: Vec<CompletionVertex> = (0..n).map(CompletionVertex::Primal).collect();
    for f in map.bounded_faces() {
        face_vertex[f] = Some(kind.len());
        kind.push(CompletionVertex::Dual(f));
    }
    let b0 = kind.len();
    kind.extend((0..3).map(CompletionVertex::Suspension));
    let x0 = kind.len();
    kind.extend((0..m).map(CompletionVertex::Edge));
    let y0 = kind.len();
    kind.extend((0..3).map(CompletionVertex::Ray));
    let vinf = kind.len();
    kind.push(CompletionVertex::Infinity);
    let total = kind.len();

    // Segment P_i of the outer walk: from a_{i+1} up to a_{i+2}.
    let mut segment = vec![usize::MAX; nd];
    let mut seg_darts: [Vec<Dart>; 3] = Default::default();
    for i in 0..3 {
        let (start, end) = (pos[specials[(i + 1) % 3]], pos[specials[(i + 2) % 3]]);
        let mut k = start;
        while k != end {
            segment[walk[k]] = i;
            seg_darts[i].push(walk[k]);
            k = (k + 1) % len;
        }
    }
    let side = |d: Dart| -> Vertex {
        let f = map.face_of(d);
        if f == outer {
            b0 + segment[d]
        } else {
            face_vertex[f].expect("bounded face")
        }
    };

    let mut ends: Vec<(Vertex, Vertex)> = Vec::with_capacity(4 * m + 15);
    let mut rot: Vec<Vec<Dart>> = vec![Vec::new(); total];
    let add = |ends: &mut Vec<(Vertex, Vertex)>, u: Vertex, v: Vertex| -> (Dart, Dart) {
        let e = ends.len();
        ends.push((u, v));
        (2 * e, 2 * e + 1)
    };
    // For each primal dart d: completion dart from origin(d) to the crossing
    // of its edge, and from the face on the left of d to that crossing.
    let mut from_vertex = vec![0; nd];
    let mut from_face = vec![0; nd];
    for e in 0..m {
        let d = 2 * e;
        let (u, v) = (map.origin(d), map.target(d));
        let x = x0 + e;
        let (xv, vx) = add(&mut ends, x, v);
        let (xl, lx) = add(&mut ends, x, side(d));
        let (xu, ux) = add(&mut ends, x, u);
        let (xr, rx) = add(&mut ends, x, side(twin(d)));
        rot[x] = vec![xv, xl, xu, xr];
        from_vertex[d] = ux;
        from_vertex[twin(d)] = vx;
        from_face[d] = lx;
        from_face[twin(d)] = rx;
    }
    let mut ray = [0; 3];
    let mut ray_at_y = [0; 3];
    for i in 0..3 {
        let (a, y) = add(&mut ends, specials[i], y0 + i);
        ray[i] = a;
        ray_at_y[i] = y;
    }
    for v in 0..n {
        rot[v] = map.darts_at(v).map(|d| from_vertex[d]).collect();
        if let Some(i) = specials.iter().position(|&a| a == v) {
            let d_out = walk[pos[v]];
            let p = map.darts_at(v).position(|d| d == d_out).expect("outer dart at special");
            rot[v].insert(p + 1, ray[i]);
        }
    }
    for f in map.bounded_faces() {
        rot[face_vertex[f].unwrap()] = map.face_darts(f).iter().map(|&d| from_face[d]).collect();
    }
    let mut y_to_b = [[0; 2]; 3];
    let mut b_to_y = [[0; 3]; 3];
    for i in 0..3 {
        for (k, off) in [1, 2].into_iter().enumerate() {
            let b = (i + off) % 3;
            let (yb, by) = add(&mut ends, y0 + i, b0 + b);
            y_to_b[i][k] = yb;
            b_to_y[b][i] = by;
        }
    }
    let mut inf_to_y = [0; 3];
    let mut y_to_inf = [0; 3];
    let mut inf_to_b = [0; 3];
    let mut b_to_inf = [0; 3];
    for i in 0..3 {
        let (vy, yv) = add(&mut ends, vinf, y0 + i);
        inf_to_y[i] = vy;
        y_to_inf[i] = yv;
        let (vb, bv) = add(&mut ends, vinf, b0 + i);
        inf_to_b[i] = vb;
        b_to_inf[i] = bv;
    }
    for i in 0..3 {
        let mut r: Vec<Dart> = seg_darts[i].iter().map(|&d| from_face[d]).collect();
        r.push(b_to_y[i][(i + 2) % 3]);
        r.push(b_to_inf[i]);
        r.push(b_to_y[i][(i + 1) % 3]);
        rot[b0 + i] = r;
        rot[y0 + i] = vec![y_to_inf[i], y_to_b[i][0], ray_at_y[i], y_to_b[i][1]];
    }
    rot[vinf] = vec![
        inf_to_y[0],
        inf_to_b[2],
        inf_to_y[1],
        inf_to_b[0],
        inf_to_y[2],
        inf_to_b[1],
    ];
    let cmap = PlanarMap::from_darts(total, ends, rot, inf_to_y[0], Surface::Sphere)?;
    let alpha = kind
        .iter()
        .map(|k| match k {
            CompletionVertex::Primal(_) | CompletionVertex::Dual(_) | CompletionVertex::Suspension(_) => 3,
            CompletionVertex::Edge(_) | CompletionVertex::Ray(_) => 1,
            CompletionVertex::Infinity => 0,
        })
        .collect();
    Ok(Completion {
        map: cmap,
        alpha,
        kind,
        specials,
        edge_vertex: (0..m).map(|e| x0 + e).collect(),
        face_vertex,
    })
}
