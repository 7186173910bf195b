//! Named map families with fixed vertex numbering.
//!
//! Grid vertex `(i, j)` (1-based, row 1 on top) has index `(i-1)*l + (j-1)`.
//! Special vertices come after the grid vertices, and a vertex at infinity is
//! always the last index.

use std::collections::{BTreeSet, HashMap};

use thiserror::Error;

use crate::alpha_engine::EdgeOrientation;
use crate::planar_map::{
    angle_graph, attach_apex, attach_special_triangle, MapError, PlanarMap, Surface, Vertex,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    /// Square grid `G_{k,l}`.
    Grid,
    /// Square grid on the torus `G^T_{k,l}`.
    TorusGrid,
    /// `G*_{k,l}`: the grid inside a triangle `a1 a2 a3`.
    AugmentedGrid,
    /// `G^□_{k,l}`: the grid plus an apex joined to every other boundary vertex.
    QuadGrid,
    /// Triangular grid `T_{k,l}` with diagonals `(i,j)-(i-1,j+1)`.
    TriGrid,
    /// Triangular grid on the torus with helical identification.
    TriTorus,
    /// `T*_{k,l}`.
    AugmentedTriGrid,
    /// Filled hexagonal grid `H_{k,l}`.
    HexGrid,
    /// `H_{k,l}` inside a triangle `a1 a2 a3`.
    AugmentedHexGrid,
    /// Angle graph of `G_{k,l}`; the outer-face vertex is last. The demand
    /// has its two sinks at the snake poles.
    AngleGrid,
    /// Stacked triangulation grown from the triangle `0 1 2`.
    Stacked(Vec<[Vertex; 3]>),
    /// The strip `T_{2,l}`.
    Strip,
}

impl Family {
    pub fn cli_name(&self) -> &'static str {
        match self {
            Family::Grid => "grid",
            Family::TorusGrid => "torus-grid",
            Family::AugmentedGrid => "augmented-grid",
            Family::QuadGrid => "quad-grid",
            Family::TriGrid => "tri-grid",
            Family::TriTorus => "tri-torus",
            Family::AugmentedTriGrid => "augmented-tri-grid",
            Family::HexGrid => "hex-grid",
            Family::AugmentedHexGrid => "augmented-hex-grid",
            Family::AngleGrid => "angle-grid",
            Family::Stacked(_) => "stacked",
            Family::Strip => "strip",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySpec {
    pub family: Family,
    pub k: usize,
    pub l: usize,
}

impl FamilySpec {
    pub fn new(family: Family, k: usize, l: usize) -> Self {
        FamilySpec { family, k, l }
    }
}

#[derive(Debug, Error)]
pub enum GenError {
    #[error("bad parameters: {0}")]
    BadParameters(String),
    #[error("no bounded face with vertices {0:?}")]
    UnknownFace([Vertex; 3]),
    #[error("no canonical orientation is defined for {0}")]
    NoCanonicalDefined(&'static str),
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A generated map with its canonical out-degree demand, if any.
#[derive(Clone, Debug)]
pub struct Generated {
    pub map: PlanarMap,
    pub alpha: Option<Vec<u32>>,
    /// Edges the demand applies to; `None` means all edges. Triangulation
    /// 3-orientations leave the outer triangle out.
    pub active: Option<Vec<bool>>,
    /// Suspension vertices `a1 a2 a3` in clockwise order, when present.
    pub specials: Option<[Vertex; 3]>,
    /// Grid coordinates of grid vertices.
    pub coords: Vec<Option<(usize, usize)>>,
}

fn idx(l: usize, i: usize, j: usize) -> Vertex {
    (i - 1) * l + (j - 1)
}

fn check(k: usize, l: usize) -> Result<(), GenError> {
    if k < 2 || l < 2 {
        return Err(GenError::BadParameters(format!("k={k}, l={l}; both must be at least 2")));
    }
    Ok(())
}

fn grid_coords(k: usize, l: usize) -> Vec<Option<(usize, usize)>> {
    (1..=k).flat_map(|i| (1..=l).map(move |j| Some((i, j)))).collect()
}

fn grid_points(k: usize, l: usize) -> Vec<(f64, f64)> {
    (1..=k)
        .flat_map(|i| (1..=l).map(move |j| (j as f64, -(i as f64))))
        .collect()
}

fn grid_edges(k: usize, l: usize, diagonals: bool) -> Vec<(Vertex, Vertex)> {
    let mut e = Vec::new();
    for i in 1..=k {
        for j in 1..=l {
            if j < l {
                e.push((idx(l, i, j), idx(l, i, j + 1)));
            }
            if i < k {
                e.push((idx(l, i, j), idx(l, i + 1, j)));
            }
            if diagonals && i >= 2 && j < l {
                e.push((idx(l, i, j), idx(l, i - 1, j + 1)));
            }
        }
    }
    e
}

/// `G_{k,l}` or `T_{k,l}` as a straight-line drawing.
fn planar_grid(k: usize, l: usize, diagonals: bool) -> Result<PlanarMap, GenError> {
    Ok(PlanarMap::from_positions(&grid_points(k, l), &grid_edges(k, l, diagonals))?)
}

fn grid_corners(k: usize, l: usize) -> [Vertex; 3] {
    [idx(l, 1, 1), idx(l, 1, l), idx(l, k, l)]
}

/// Demand 3 everywhere except 0 at the specials, over the edges not on the
/// outer face.
fn triangulation_alpha(map: &PlanarMap, specials: [Vertex; 3]) -> (Vec<u32>, Vec<bool>) {
    let mut alpha = vec![3; map.vertex_count()];
    for a in specials {
        alpha[a] = 0;
    }
    let outer = map.outer_face();
    let active = (0..map.edge_count())
        .map(|e| map.face_of(2 * e) != outer && map.face_of(2 * e + 1) != outer)
        .collect();
    (alpha, active)
}

/// Demand of a triangular grid: 3 inside, 1 at `(1,1)`, `(1,l)`, `(k,l)`,
/// 2 elsewhere on the boundary.
pub fn tri_grid_alpha(k: usize, l: usize) -> Vec<u32> {
    let mut a = Vec::with_capacity(k * l);
    for i in 1..=k {
        for j in 1..=l {
            let corner = (i, j) == (1, 1) || (i, j) == (1, l) || (i, j) == (k, l);
            let boundary = i == 1 || i == k || j == 1 || j == l;
            a.push(if corner {
                1
            } else if boundary {
                2
            } else {
                3
            });
        }
    }
    a
}

pub fn generate(spec: &FamilySpec) -> Result<Generated, GenError> {
    let (k, l) = (spec.k, spec.l);
    let plain = |map: PlanarMap, alpha: Option<Vec<u32>>, coords| Generated {
        map,
        alpha,
        active: None,
        specials: None,
        coords,
    };
    match &spec.family {
        Family::Grid => {
            check(k, l)?;
            Ok(plain(planar_grid(k, l, false)?, None, grid_coords(k, l)))
        }
        Family::TriGrid => {
            check(k, l)?;
            Ok(plain(planar_grid(k, l, true)?, Some(tri_grid_alpha(k, l)), grid_coords(k, l)))
        }
        Family::Strip => {
            check(2, l)?;
            Ok(plain(planar_grid(2, l, true)?, None, grid_coords(2, l)))
        }
        Family::AugmentedGrid | Family::AugmentedTriGrid => {
            check(k, l)?;
            let tri = spec.family == Family::AugmentedTriGrid;
            let map = attach_special_triangle(&planar_grid(k, l, tri)?, grid_corners(k, l))?;
            let specials = [k * l, k * l + 1, k * l + 2];
            let (alpha, active) = triangulation_alpha(&map, specials);
            let mut coords = grid_coords(k, l);
            coords.extend([None, None, None]);
            Ok(Generated {
                map,
                alpha: Some(alpha),
                active: Some(active),
                specials: Some(specials),
                coords,
            })
        }
        Family::QuadGrid => {
            check(k, l)?;
            let g = planar_grid(k, l, false)?;
            let walk = g.outer_vertices();
            let start = walk.iter().position(|&v| v == 0).expect("corner on boundary");
            let attach: Vec<Vertex> = (0..walk.len())
                .filter(|i| i % 2 == 1)
                .map(|i| walk[(start + i) % walk.len()])
                .collect();
            let map = attach_apex(&g, &attach, 0)?;
            let mut alpha = vec![2; k * l + 1];
            alpha[0] = 0;
            alpha[k * l] = 0;
            let mut coords = grid_coords(k, l);
            coords.push(None);
            Ok(plain(map, Some(alpha), coords))
        }
        Family::TorusGrid => {
            check(k, l)?;
            let mut edges = Vec::new();
            for i in 1..=k {
                for j in 1..=l {
                    let v = idx(l, i, j);
                    edges.push((v, idx(l, i, j % l + 1), 1.0, 0.0));
                    edges.push((v, idx(l, i % k + 1, j), 0.0, -1.0));
                }
            }
            let map = PlanarMap::from_directions(k * l, &edges, 0, Surface::Torus)?;
            let alpha = map.degrees().iter().map(|&d| (d / 2) as u32).collect();
            Ok(plain(map, Some(alpha), grid_coords(k, l)))
        }
        Family::TriTorus => {
            check(k, l)?;
            // Helical identification makes the torus a circulant: position
            // p(i,j) = (j-1) - (i-1)l mod kl, with steps +1 (right), -l (down)
            // and +l+1 (up-right).
            let size = k * l;
            let pos = |i: usize, j: usize| ((j - 1) + size * l - (i - 1) * l) % size;
            let mut vertex_at = vec![0; size];
            for i in 1..=k {
                for j in 1..=l {
                    vertex_at[pos(i, j)] = idx(l, i, j);
                }
            }
            let mut edges = Vec::new();
            for p in 0..size {
                let v = vertex_at[p];
                edges.push((v, vertex_at[(p + 1) % size], 1.0, 0.0));
                edges.push((v, vertex_at[(p + size - l) % size], 0.0, -1.0));
                edges.push((v, vertex_at[(p + l + 1) % size], 1.0, 1.0));
            }
            let map = PlanarMap::from_directions(size, &edges, 0, Surface::Torus)?;
            let alpha = map.degrees().iter().map(|&d| (d / 2) as u32).collect();
            Ok(plain(map, Some(alpha), grid_coords(k, l)))
        }
        Family::HexGrid => {
            check(k, l)?;
            let h = hex_grid(k, l)?;
            let n = h.map.vertex_count();
            Ok(plain(h.map, None, vec![None; n]))
        }
        Family::AugmentedHexGrid => {
            check(k, l)?;
            let h = hex_grid(k, l)?;
            let n = h.map.vertex_count();
            let map = attach_special_triangle(&h.map, h.corners)?;
            let specials = [n, n + 1, n + 2];
            let (alpha, active) = triangulation_alpha(&map, specials);
            Ok(Generated {
                map,
                alpha: Some(alpha),
                active: Some(active),
                specials: Some(specials),
                coords: vec![None; n + 3],
            })
        }
        Family::AngleGrid => {
            check(k, l)?;
            let g = planar_grid(k, l, false)?;
            let map = angle_graph(&g);
            let (s, t) = snake_poles(k, l);
            let alpha = crate::structures::angle_alpha(&g, s, t);
            let mut coords = grid_coords(k, l);
            coords.resize(map.vertex_count(), None);
            Ok(plain(map, Some(alpha), coords))
        }
        Family::Stacked(seq) => {
            let map = stacked_triangulation(seq)?;
            let specials = [0, 1, 2];
            let (alpha, active) = triangulation_alpha(&map, specials);
            let n = map.vertex_count();
            Ok(Generated {
                map,
                alpha: Some(alpha),
                active: Some(active),
                specials: Some(specials),
                coords: vec![None; n],
            })
        }
    }
}

/// Filled hexagonal grid and the corners used to suspend it.
pub struct HexGrid {
    pub map: PlanarMap,
    pub corners: [Vertex; 3],
    pub hexagons: Vec<Hexagon>,
}

/// One filled hexagon. Corners `h[0..6]` are counterclockwise; the central
/// triangle `c[0] c[1] c[2]` has `c[i]` joined to `h[2i]` and `h[2i+1]`.
/// The hexagon sides `h1h2`, `h3h4`, `h5h0` lie on its three 4-faces.
#[derive(Clone, Debug)]
pub struct Hexagon {
    pub h: [Vertex; 6],
    pub c: [Vertex; 3],
}

impl Hexagon {
    /// Sides of the hexagon that bound one of its 4-faces.
    pub fn quad_sides(&self) -> [(Vertex, Vertex); 3] {
        [(self.h[1], self.h[2]), (self.h[3], self.h[4]), (self.h[5], self.h[0])]
    }

    /// The nine edges inside the hexagon.
    pub fn filling_edges(&self) -> Vec<(Vertex, Vertex)> {
        let c = self.c;
        let h = self.h;
        vec![
            (c[0], c[1]),
            (c[1], c[2]),
            (c[2], c[0]),
            (c[0], h[0]),
            (c[0], h[1]),
            (c[1], h[2]),
            (c[1], h[3]),
            (c[2], h[4]),
            (c[2], h[5]),
        ]
    }
}

/// Hexagons are laid out as a brick wall: row `r` of bricks spans lattice
/// rows `r` and `r+1`, and brick `j` of that row starts at column `r + 2j`.
pub fn hex_grid(k: usize, l: usize) -> Result<HexGrid, GenError> {
    check(k, l)?;
    let mut lattice: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut bricks = Vec::new();
    for r in 0..k {
        for j in 0..l {
            let s = r + 2 * j;
            let corners = [(r, s), (r + 1, s), (r + 1, s + 1), (r + 1, s + 2), (r, s + 2), (r, s + 1)];
            lattice.extend(corners);
            bricks.push((r, s, corners));
        }
    }
    let id: HashMap<(usize, usize), Vertex> = lattice.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut points: Vec<(f64, f64)> = lattice.iter().map(|&(r, c)| (c as f64, -(r as f64))).collect();
    let mut edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();
    let mut hexagons = Vec::new();
    for &(r, s, corners) in &bricks {
        let h: [Vertex; 6] = corners.map(|p| id[&p]);
        for i in 0..6 {
            let (a, b) = (h[i], h[(i + 1) % 6]);
            edges.insert((a.min(b), a.max(b)));
        }
        let base = points.len();
        let (x, y) = (s as f64, -(r as f64));
        points.push((x + 0.6, y - 0.5));
        points.push((x + 1.3, y - 0.7));
        points.push((x + 1.3, y - 0.3));
        hexagons.push(Hexagon {
            h,
            c: [base, base + 1, base + 2],
        });
    }
    let mut edge_list: Vec<(Vertex, Vertex)> = edges.into_iter().collect();
    for hx in &hexagons {
        edge_list.extend(hx.filling_edges());
    }
    let map = PlanarMap::from_positions(&points, &edge_list)?;
    let corners = [id[&(0, 0)], id[&(0, 2 * l)], id[&(k, k - 1 + 2 * l)]];
    Ok(HexGrid { map, corners, hexagons })
}

/// Grows a triangulation from the triangle `0 1 2` (outer face clockwise in
/// that order) by inserting a degree-3 vertex into each named face.
pub fn stacked_triangulation(sequence: &[[Vertex; 3]]) -> Result<PlanarMap, GenError> {
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 2, 1]];
    let mut n = 3;
    for choice in sequence {
        let mut want = *choice;
        want.sort_unstable();
        let pos = faces
            .iter()
            .position(|f| {
                let mut s = *f;
                s.sort_unstable();
                s == want
            })
            .ok_or(GenError::UnknownFace(*choice))?;
        let [a, b, c] = faces.remove(pos);
        let x = n;
        n += 1;
        faces.push([a, b, x]);
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }
    let mut all: Vec<Vec<Vertex>> = faces.iter().map(|f| f.to_vec()).collect();
    all.push(vec![0, 1, 2]);
    let outer = all.len() - 1;
    Ok(PlanarMap::from_faces(n, &all, outer)?)
}

/// The octahedron with outer triangle `0 1 2` in clockwise order.
pub fn octahedron() -> PlanarMap {
    let points = [(0.0, 10.0), (9.0, -5.0), (-9.0, -5.0), (0.0, -2.0), (-2.0, 1.0), (2.0, 1.0)];
    let edges = [
        (0, 1),
        (1, 2),
        (2, 0),
        (3, 4),
        (4, 5),
        (5, 3),
        (0, 4),
        (0, 5),
        (1, 5),
        (1, 3),
        (2, 3),
        (2, 4),
    ];
    PlanarMap::from_positions(&points, &edges).expect("octahedron drawing is planar")
}

/// `K4` drawn as a triangle `0 1 2` (clockwise) with `3` inside.
pub fn k4() -> PlanarMap {
    stacked_triangulation(&[[0, 1, 2]]).expect("one stacking step")
}

/// Canonical orientation of a family, relative to the numbering produced by
/// [`generate`]. Edges outside the family's active set are left backward.
pub fn canonical_orientation(spec: &FamilySpec) -> Result<EdgeOrientation, GenError> {
    let (k, l) = (spec.k, spec.l);
    let g = generate(spec)?;
    let map = &g.map;
    match &spec.family {
        Family::TriGrid | Family::AugmentedTriGrid => {
            let n_grid = k * l;
            let coord = |v: Vertex| (v / l + 1, v % l + 1);
            // Up, right and left-down; into the specials.
            let points_out = |u: Vertex, v: Vertex| -> Option<bool> {
                if u >= n_grid || v >= n_grid {
                    if u >= n_grid && v >= n_grid {
                        return None;
                    }
                    return Some(v >= n_grid);
                }
                let ((iu, ju), (iv, jv)) = (coord(u), coord(v));
                Some(if ju == jv {
                    iv + 1 == iu
                } else if iu == iv {
                    jv == ju + 1
                } else {
                    iv == iu + 1
                })
            };
            let mut x = EdgeOrientation::new(map.edge_count());
            for e in 0..map.edge_count() {
                let (u, v) = map.edge_ends(e);
                if let Some(fwd) = points_out(u, v) {
                    x.set(e, fwd);
                }
            }
            Ok(x)
        }
        Family::Strip => {
            let mut x = EdgeOrientation::new(map.edge_count());
            for e in 0..map.edge_count() {
                let (u, v) = map.edge_ends(e);
                let (iu, ju) = (u / l + 1, u % l + 1);
                let (iv, jv) = (v / l + 1, v % l + 1);
                let fwd = if iu == iv {
                    jv > ju
                } else if ju == jv {
                    iv > iu
                } else {
                    iv < iu
                };
                x.set(e, fwd);
            }
            Ok(x)
        }
        Family::AngleGrid => {
            let grid = planar_grid(k, l, false)?;
            let b = snake_bipolar(&grid, k, l);
            let (s, t) = snake_poles(k, l);
            Ok(crate::structures::bipolar_to_angle(&grid, &b, s, t)
                .expect("snake orientation is bipolar"))
        }
        _ => Err(GenError::NoCanonicalDefined(spec.family.cli_name())),
    }
}

/// Source and sink of the snake orientation of `G_{k,l}`.
pub fn snake_poles(k: usize, l: usize) -> (Vertex, Vertex) {
    let t = if k % 2 == 1 { idx(l, k, l) } else { idx(l, k, 1) };
    (0, t)
}

/// Bipolar orientation of `G_{k,l}` with odd rows pointing right, even rows
/// pointing left and every vertical edge pointing down.
pub fn snake_bipolar(grid: &PlanarMap, _k: usize, l: usize) -> EdgeOrientation {
    let mut x = EdgeOrientation::new(grid.edge_count());
    for e in 0..grid.edge_count() {
        let (u, v) = grid.edge_ends(e);
        let (iu, ju) = (u / l + 1, u % l + 1);
        let (iv, jv) = (v / l + 1, v % l + 1);
        let fwd = if iu == iv {
            if iu % 2 == 1 {
                jv > ju
            } else {
                jv < ju
            }
        } else {
            iv > iu
        };
        x.set(e, fwd);
    }
    x
}

/// The torus grid obtained from `G^□_{k,l}` by sending every apex edge to the
/// opposite boundary vertex (as an edge list, `k` and `l` even).
pub fn quad_grid_reassigned(k: usize, l: usize) -> Result<Vec<(Vertex, Vertex)>, GenError> {
    if k % 2 == 1 || l % 2 == 1 {
        return Err(GenError::BadParameters("k and l must be even".into()));
    }
    let g = generate(&FamilySpec::new(Family::QuadGrid, k, l))?;
    let apex = k * l;
    let mut out = Vec::new();
    for &(u, v) in g.map.edges() {
        if v != apex && u != apex {
            out.push((u, v));
            continue;
        }
        let w = if u == apex { v } else { u };
        let (i, j) = (w / l + 1, w % l + 1);
        let other = if i == 1 && j >= 2 {
            idx(l, k, j)
        } else if i == k && j >= 2 {
            idx(l, 1, j)
        } else if j == 1 && i >= 2 {
            idx(l, i, l)
        } else if j == l && i >= 2 {
            idx(l, i, 1)
        } else {
            return Err(GenError::BadParameters(format!("apex edge at ({i},{j}) has no rule")));
        };
        out.push((w, other));
    }
    Ok(out)
}
