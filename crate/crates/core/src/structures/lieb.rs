//! Face 3-colorings of a grid-like quadrangulation and its inner
//! 2-orientations.
//!
//! Across an inner edge with faces `L` on the left and `R` on the right of
//! dart `d`, the edge points along `d` exactly when `c(R) = c(L) + 1 mod 3`.
//! Around an inner vertex of degree 4 the four steps sum to zero mod 3, so
//! two of them are `+1`: the vertex has out-degree 2.

use super::StructError;
use crate::alpha_engine::{EdgeOrientation, Problem};
use crate::planar_map::{edge_subgraph, twin, FaceId, PlanarMap, Vertex};

#[derive(Clone, Debug)]
pub struct LiebGrid {
    pub map: PlanarMap,
    /// Edges with bounded faces on both sides.
    pub inner_edge: Vec<bool>,
    /// Vertices off the outer face.
    pub inner_vertex: Vec<bool>,
    /// Bounded faces; colorings are indexed by position in this list.
    pub faces: Vec<FaceId>,
    face_index: Vec<Option<usize>>,
    /// Vertex of the input map behind each vertex.
    pub vertex_origin: Vec<Vertex>,
}

impl LiebGrid {
    pub fn face_index(&self, f: FaceId) -> Option<usize> {
        self.face_index[f]
    }
}

/// Removes `remove` (typically the outer-face vertex of an angle graph) and
/// checks that the rest is grid-like: every bounded face is a quadrangle and
/// every inner vertex has degree 4.
pub fn lieb_grid(quad: &PlanarMap, remove: Vertex) -> Result<LiebGrid, StructError> {
    let keep: Vec<bool> = (0..quad.edge_count())
        .map(|e| {
            let (u, v) = quad.edge_ends(e);
            u != remove && v != remove
        })
        .collect();
    let sub = edge_subgraph(quad, &keep)?;
    let map = sub.map;
    let outer = map.outer_face();
    let faces = map.bounded_faces();
    let mut face_index = vec![None; map.face_count()];
    for (i, &f) in faces.iter().enumerate() {
        if map.face_darts(f).len() != 4 {
            return Err(StructError::NotGridLike(format!("face {f} has {} sides", map.face_darts(f).len())));
        }
        face_index[f] = Some(i);
    }
    let inner_edge: Vec<bool> = (0..map.edge_count())
        .map(|e| map.face_of(2 * e) != outer && map.face_of(2 * e + 1) != outer)
        .collect();
    let on_outer = map.outer_vertices();
    let mut inner_vertex = vec![true; map.vertex_count()];
    for v in on_outer {
        inner_vertex[v] = false;
    }
    for v in 0..map.vertex_count() {
        if inner_vertex[v] && map.degree(v) != 4 {
            return Err(StructError::NotGridLike(format!("inner vertex {v} has degree {}", map.degree(v))));
        }
    }
    Ok(LiebGrid {
        map,
        inner_edge,
        inner_vertex,
        faces,
        face_index,
        vertex_origin: sub.vertex_origin,
    })
}

/// Inner 2-orientations: inner edges only, demand 2 at inner vertices and
/// none at outer ones.
pub fn lieb_problem(lg: &LiebGrid) -> Problem {
    let map = &lg.map;
    let mut edges = Vec::new();
    let mut ids = Vec::new();
    for e in 0..map.edge_count() {
        if lg.inner_edge[e] {
            edges.push(map.edge_ends(e));
            ids.push(e);
        }
    }
    let demand = lg.inner_vertex.iter().map(|&i| i.then_some(2)).collect();
    let mut p = Problem::new(map.vertex_count(), edges, demand);
    p.edge_ids = ids;
    p.map_edges = map.edge_count();
    p
}

/// The coloring of an inner 2-orientation with the first bounded face
/// colored `reference`.
pub fn coloring_from_orientation(lg: &LiebGrid, x: &EdgeOrientation, reference: u8) -> Result<Vec<u8>, StructError> {
    let map = &lg.map;
    for v in 0..map.vertex_count() {
        if lg.inner_vertex[v] {
            let out = map.darts_at(v).filter(|&d| x.along(d)).count();
            if out != 2 {
                return Err(StructError::InvalidInput(format!("inner vertex {v} has out-degree {out}")));
            }
        }
    }
    let nf = lg.faces.len();
    let mut color: Vec<Option<u8>> = vec![None; nf];
    if nf == 0 {
        return Ok(Vec::new());
    }
    color[0] = Some(reference % 3);
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        let c = color[i].unwrap();
        for &d in map.face_darts(lg.faces[i]) {
            // This face is on the left of d; the neighbour on its right.
            let Some(j) = lg.face_index[map.face_of(twin(d))] else { continue };
            let step = if x.along(d) { 1 } else { 2 };
            let cj = (c + step) % 3;
            match color[j] {
                None => {
                    color[j] = Some(cj);
                    stack.push(j);
                }
                Some(old) if old != cj => {
                    return Err(StructError::InvalidInput("colors disagree around a vertex".into()))
                }
                Some(_) => {}
            }
        }
    }
    color
        .into_iter()
        .map(|c| c.ok_or_else(|| StructError::NotGridLike("bounded faces are not connected".into())))
        .collect()
}

/// The inner 2-orientation of a proper face coloring. Outer edges stay
/// backward.
pub fn orientation_from_coloring(lg: &LiebGrid, colors: &[u8]) -> Result<EdgeOrientation, StructError> {
    let map = &lg.map;
    if colors.len() != lg.faces.len() {
        return Err(StructError::Length {
            expected: lg.faces.len(),
            got: colors.len(),
        });
    }
    let mut x = EdgeOrientation::new(map.edge_count());
    for e in 0..map.edge_count() {
        if !lg.inner_edge[e] {
            continue;
        }
        let d = 2 * e;
        let l = colors[lg.face_index[map.face_of(d)].unwrap()];
        let r = colors[lg.face_index[map.face_of(twin(d))].unwrap()];
        if l == r || l > 2 || r > 2 {
            return Err(StructError::InvalidInput(format!("faces across edge {e} share a color")));
        }
        x.set(e, r == (l + 1) % 3);
    }
    Ok(x)
}

/// Proper 3-colorings of the bounded faces, by backtracking.
pub fn count_face_colorings(lg: &LiebGrid) -> u64 {
    let map = &lg.map;
    let nf = lg.faces.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); nf];
    for e in 0..map.edge_count() {
        if lg.inner_edge[e] {
            let a = lg.face_index[map.face_of(2 * e)].unwrap();
            let b = lg.face_index[map.face_of(2 * e + 1)].unwrap();
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    fn go(i: usize, adj: &[Vec<usize>], color: &mut [u8]) -> u64 {
        if i == color.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..3 {
            if adj[i].iter().all(|&j| j >= i || color[j] != c) {
                color[i] = c;
                total += go(i + 1, adj, color);
            }
        }
        total
    }
    go(0, &adj, &mut vec![0; nf])
}
