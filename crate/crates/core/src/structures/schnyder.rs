//! Schnyder woods: axiom checks, color deduction on triangulations, and
//! counting through the primal-dual completion.

use std::collections::VecDeque;

use super::StructError;
use num_bigint::BigUint;

use crate::alpha_engine::{count_problem, count_with, CountOptions, CountResult, EdgeOrientation, Problem};
use crate::generators::{HexGrid, Hexagon};
use crate::planar_map::{attach_special_triangle, completion, edge_of, twin, Completion, Dart, FaceId, MapError, PlanarMap, Vertex};

/// Colors are `0, 1, 2` for the trees rooted at `specials[0..3]`. A dart
/// carries a color when its edge is directed along it in that color; a
/// bidirected edge has both darts colored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SchnyderWood {
    pub specials: [Vertex; 3],
    pub dart_color: Vec<Option<u8>>,
}

impl SchnyderWood {
    /// Underlying orientation: per edge, whether each dart is used.
    pub fn directions(&self) -> Vec<(bool, bool)> {
        self.dart_color
            .chunks(2)
            .map(|c| (c[0].is_some(), c[1].is_some()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchnyderViolation {
    /// Edge without a direction, or bidirected in a single color.
    W1 { edge: usize },
    /// Special vertex with a second outgoing edge in its own color.
    W2 { special: usize },
    /// Bad out-degrees, order, or incoming sector at a vertex.
    W3 { vertex: Vertex, reason: String },
    /// Bounded face whose boundary is a monochromatic directed cycle.
    W4 { face: FaceId },
}

/// Vertices of a triangular outer face in clockwise order, starting at the
/// origin of the outer dart.
pub fn outer_specials(map: &PlanarMap) -> Option<[Vertex; 3]> {
    let w = map.outer_walk();
    (w.len() == 3).then(|| [map.origin(w[0]), map.origin(w[1]), map.origin(w[2])])
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Item {
    Dart(Dart),
    Half,
}

/// Rotation at `v` (counterclockwise) with the half-edge of a special vertex
/// placed in its outer angle.
fn items(map: &PlanarMap, v: Vertex, special: bool) -> Vec<Item> {
    let mut it = Vec::with_capacity(map.degree(v) + 1);
    let outer = map.outer_face();
    let mut placed = !special;
    for d in map.darts_at(v) {
        it.push(Item::Dart(d));
        if !placed && map.face_of(d) == outer {
            it.push(Item::Half);
            placed = true;
        }
    }
    it
}

fn ccw_dist(from: usize, to: usize, len: usize) -> usize {
    (to + len - from) % len
}

/// Checks (W1)-(W4); an empty list means the wood is valid.
pub fn schnyder_check(map: &PlanarMap, wood: &SchnyderWood) -> Vec<SchnyderViolation> {
    let mut bad = Vec::new();
    if wood.dart_color.len() != map.dart_count() {
        bad.push(SchnyderViolation::W3 {
            vertex: 0,
            reason: "color vector has the wrong length".into(),
        });
        return bad;
    }
    for e in 0..map.edge_count() {
        match (wood.dart_color[2 * e], wood.dart_color[2 * e + 1]) {
            (None, None) => bad.push(SchnyderViolation::W1 { edge: e }),
            (Some(a), Some(b)) if a == b => bad.push(SchnyderViolation::W1 { edge: e }),
            (Some(a), _) | (_, Some(a)) if a > 2 => bad.push(SchnyderViolation::W1 { edge: e }),
            _ => {}
        }
    }
    for v in 0..map.vertex_count() {
        let sp = wood.specials.iter().position(|&a| a == v);
        if let Some(i) = sp {
            if map.darts_at(v).any(|d| wood.dart_color[d] == Some(i as u8)) {
                bad.push(SchnyderViolation::W2 { special: i });
                continue;
            }
        }
        if let Err(reason) = check_vertex(map, wood, v, sp) {
            bad.push(SchnyderViolation::W3 { vertex: v, reason });
        }
    }
    for f in map.bounded_faces() {
        let walk = map.face_darts(f);
        for dir in [false, true] {
            let col = |d: Dart| wood.dart_color[if dir { twin(d) } else { d }];
            if let Some(c) = col(walk[0]) {
                if walk.iter().all(|&d| col(d) == Some(c)) {
                    bad.push(SchnyderViolation::W4 { face: f });
                }
            }
        }
    }
    bad
}

fn check_vertex(map: &PlanarMap, wood: &SchnyderWood, v: Vertex, special: Option<usize>) -> Result<(), String> {
    let it = items(map, v, special.is_some());
    let len = it.len();
    let mut pos = [usize::MAX; 3];
    for (k, item) in it.iter().enumerate() {
        let c = match *item {
            Item::Half => special.unwrap() as u8,
            Item::Dart(d) => match wood.dart_color[d] {
                Some(c) => c,
                None => continue,
            },
        } as usize;
        if pos[c] != usize::MAX {
            return Err(format!("two outgoing edges of color {}", c + 1));
        }
        pos[c] = k;
    }
    if let Some(c) = pos.iter().position(|&p| p == usize::MAX) {
        return Err(format!("no outgoing edge of color {}", c + 1));
    }
    // Clockwise 0, 1, 2 reads 0, 2, 1 counterclockwise.
    if ccw_dist(pos[0], pos[2], len) > ccw_dist(pos[0], pos[1], len) {
        return Err("outgoing colors are not in clockwise order".into());
    }
    for (k, item) in it.iter().enumerate() {
        let Item::Dart(d) = *item else { continue };
        let Some(c) = wood.dart_color[twin(d)] else { continue };
        let c = c as usize;
        // Clockwise from e_{c+1} to e_{c-1} is counterclockwise from e_{c-1}.
        let (lo, hi) = (pos[(c + 2) % 3], pos[(c + 1) % 3]);
        if ccw_dist(lo, k, len) > ccw_dist(lo, hi, len) {
            return Err(format!("incoming edge of color {} outside its sector", c + 1));
        }
    }
    Ok(())
}

pub fn is_schnyder_wood(map: &PlanarMap, wood: &SchnyderWood) -> bool {
    schnyder_check(map, wood).is_empty()
}

/// The unique Schnyder wood of a plane triangulation inducing the given
/// 3-orientation of its inner edges. Each inner vertex picks one of three
/// rotations of colors over its outgoing edges; colors of incoming edges
/// follow from the sector they enter, and the search keeps every
/// consistent choice.
pub fn colors_from_3orientation(
    map: &PlanarMap,
    specials: [Vertex; 3],
    x: &EdgeOrientation,
) -> Result<SchnyderWood, StructError> {
    if !map.is_triangulation() {
        return Err(StructError::NotInnerTriangulation);
    }
    let outer = map.outer_face();
    let inner_edge = |e: usize| map.face_of(2 * e) != outer && map.face_of(2 * e + 1) != outer;
    let n = map.vertex_count();
    let special_of = |v: Vertex| specials.iter().position(|&a| a == v);
    // Outgoing darts of each inner vertex in counterclockwise order.
    let mut outs: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for v in 0..n {
        if special_of(v).is_some() {
            if map.darts_at(v).any(|d| inner_edge(edge_of(d)) && x.along(d)) {
                return Err(StructError::InvalidInput(format!("special vertex {v} has an outgoing inner edge")));
            }
            continue;
        }
        outs[v] = map.darts_at(v).filter(|&d| x.along(d)).collect();
        if outs[v].len() != 3 {
            return Err(StructError::InvalidInput(format!("vertex {v} has out-degree {}", outs[v].len())));
        }
    }
    // Color of an outgoing dart under rotation r: ccw order gets r, r-1, r+1.
    let out_color = |v: Vertex, r: u8, d: Dart| -> u8 {
        let k = outs[v].iter().position(|&o| o == d).unwrap() as u8;
        (r + [0, 2, 1][k as usize]) % 3
    };
    // Color of an incoming dart (leaving v) under rotation r: one more than
    // the color of the outgoing edge just clockwise of it.
    let in_color = |v: Vertex, r: u8, d: Dart| -> u8 {
        if let Some(i) = special_of(v) {
            return i as u8;
        }
        let mut p = map.rot_prev(d);
        while !x.along(p) {
            p = map.rot_prev(p);
        }
        (out_color(v, r, p) + 1) % 3
    };
    // Vertex order: breadth first from the specials.
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    let mut q: VecDeque<Vertex> = specials.iter().copied().collect();
    for &a in &specials {
        seen[a] = true;
    }
    while let Some(u) = q.pop_front() {
        if special_of(u).is_none() {
            order.push(u);
        }
        for w in map.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    let mut rot: Vec<Option<u8>> = vec![None; n];
    let consistent = |rot: &[Option<u8>], v: Vertex| -> bool {
        let r = rot[v].unwrap();
        for d in map.darts_at(v) {
            if !inner_edge(edge_of(d)) {
                continue;
            }
            let w = map.target(d);
            let rw = if special_of(w).is_some() { Some(0) } else { rot[w] };
            let Some(rw) = rw else { continue };
            let (tail, head, dd, rt, rh) = if x.along(d) { (v, w, d, r, rw) } else { (w, v, twin(d), rw, r) };
            if out_color(tail, rt, dd) != in_color(head, rh, twin(dd)) {
                return false;
            }
        }
        true
    };
    let mut solutions: Vec<Vec<Option<u8>>> = Vec::new();
    fn go(
        k: usize,
        order: &[Vertex],
        rot: &mut Vec<Option<u8>>,
        consistent: &dyn Fn(&[Option<u8>], Vertex) -> bool,
        out: &mut Vec<Vec<Option<u8>>>,
    ) {
        if out.len() > 1 {
            return;
        }
        if k == order.len() {
            out.push(rot.clone());
            return;
        }
        let v = order[k];
        for r in 0..3 {
            rot[v] = Some(r);
            if consistent(rot, v) {
                go(k + 1, order, rot, consistent, out);
            }
        }
        rot[v] = None;
    }
    go(0, &order, &mut rot, &consistent, &mut solutions);
    let mut woods = Vec::new();
    for sol in solutions {
        let mut dart_color = vec![None; map.dart_count()];
        for v in 0..n {
            if let Some(r) = sol[v] {
                for &d in &outs[v] {
                    dart_color[d] = Some(out_color(v, r, d));
                }
            }
        }
        // Outer edges are bidirected: a_i -> a_j in color j.
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    if let Some(d) = map.find_dart(specials[i], specials[j]) {
                        dart_color[d] = Some(j as u8);
                    }
                }
            }
        }
        let wood = SchnyderWood { specials, dart_color };
        if is_schnyder_wood(map, &wood) {
            woods.push(wood);
        }
    }
    match woods.len() {
        0 => Err(StructError::NoColoring),
        1 => Ok(woods.pop().unwrap()),
        _ => Err(StructError::MultipleColorings),
    }
}

/// Number of Schnyder woods of a 3-connected map: α_S-orientations of the
/// completion.
pub fn schnyder_count_via_completion(
    map: &PlanarMap,
    specials: [Vertex; 3],
    opts: CountOptions,
) -> Result<CountResult, StructError> {
    let c = completion(map, specials)?;
    let p = Problem::from_map(&c.map, &c.alpha)?;
    Ok(count_with(&p, opts)?)
}

/// Visits every Schnyder wood of a small suspended map by direct search over
/// the colored outgoing edges at each vertex. Returns the number visited;
/// stops early once `limit` woods are found.
pub fn enumerate_schnyder_woods<F>(
    map: &PlanarMap,
    specials: [Vertex; 3],
    limit: usize,
    mut visit: F,
) -> Result<usize, StructError>
where
    F: FnMut(&SchnyderWood),
{
    let n = map.vertex_count();
    let walk = map.outer_walk();
    if specials.iter().any(|&a| a >= n || !walk.iter().any(|&d| map.origin(d) == a)) {
        return Err(MapError::SpecialVerticesNotOnOuterFace.into());
    }
    let special_of = |v: Vertex| specials.iter().position(|&a| a == v);
    // Candidate colorings of the outgoing darts at each vertex.
    let mut options: Vec<Vec<Vec<(Dart, u8)>>> = Vec::with_capacity(n);
    for v in 0..n {
        let darts: Vec<Dart> = map.darts_at(v).collect();
        let d = darts.len();
        let mut opts = Vec::new();
        match special_of(v) {
            None => {
                for a in 0..d {
                    for b in a + 1..d {
                        for c in b + 1..d {
                            for r in 0..3u8 {
                                opts.push(vec![(darts[a], r), (darts[b], (r + 2) % 3), (darts[c], (r + 1) % 3)]);
                            }
                        }
                    }
                }
            }
            Some(i) => {
                // Counterclockwise from the half-edge: color i-1, then i+1.
                let it = items(map, v, true);
                let h = it.iter().position(|x| *x == Item::Half).unwrap();
                let after: Vec<Dart> = (1..it.len())
                    .map(|k| match it[(h + k) % it.len()] {
                        Item::Dart(d) => d,
                        Item::Half => unreachable!(),
                    })
                    .collect();
                let i = i as u8;
                for a in 0..after.len() {
                    for b in a + 1..after.len() {
                        opts.push(vec![(after[a], (i + 2) % 3), (after[b], (i + 1) % 3)]);
                    }
                }
            }
        }
        options.push(opts);
    }
    let mut order = Vec::new();
    let mut seen = vec![false; n];
    let mut q = VecDeque::from([specials[0]]);
    seen[specials[0]] = true;
    while let Some(u) = q.pop_front() {
        order.push(u);
        for w in map.neighbors(u) {
            if !seen[w] {
                seen[w] = true;
                q.push_back(w);
            }
        }
    }
    let mut state = Enum {
        map,
        specials,
        options: &options,
        order: &order,
        color: vec![None; map.dart_count()],
        assigned: vec![false; n],
        found: 0,
        limit,
    };
    state.go(0, &mut visit);
    Ok(state.found)
}

struct Enum<'a> {
    map: &'a PlanarMap,
    specials: [Vertex; 3],
    options: &'a [Vec<Vec<(Dart, u8)>>],
    order: &'a [Vertex],
    color: Vec<Option<u8>>,
    assigned: Vec<bool>,
    found: usize,
    limit: usize,
}

impl Enum<'_> {
    fn local_ok(&self, v: Vertex) -> bool {
        let map = self.map;
        let wood = SchnyderWood {
            specials: self.specials,
            dart_color: self.color.clone(),
        };
        let sp = self.specials.iter().position(|&a| a == v);
        for d in map.darts_at(v) {
            let w = map.target(d);
            if !self.assigned[w] {
                continue;
            }
            match (self.color[d], self.color[twin(d)]) {
                (None, None) => return false,
                (Some(a), Some(b)) if a == b => return false,
                _ => {}
            }
            let wsp = self.specials.iter().position(|&a| a == w);
            if let Some(c) = self.color[d] {
                if !sector_ok(map, &wood, w, wsp, twin(d), c) {
                    return false;
                }
            }
            if let Some(c) = self.color[twin(d)] {
                if !sector_ok(map, &wood, v, sp, d, c) {
                    return false;
                }
            }
        }
        true
    }

    fn go<F: FnMut(&SchnyderWood)>(&mut self, k: usize, visit: &mut F) {
        if self.found >= self.limit {
            return;
        }
        if k == self.order.len() {
            let wood = SchnyderWood {
                specials: self.specials,
                dart_color: self.color.clone(),
            };
            if is_schnyder_wood(self.map, &wood) {
                self.found += 1;
                visit(&wood);
            }
            return;
        }
        let v = self.order[k];
        for opt in &self.options[v] {
            for &(d, c) in opt {
                self.color[d] = Some(c);
            }
            self.assigned[v] = true;
            if self.local_ok(v) {
                self.go(k + 1, visit);
            }
            self.assigned[v] = false;
            for &(d, _) in opt {
                self.color[d] = None;
            }
        }
    }
}

/// Whether the dart `d` (leaving `v`, carrying an incoming edge of color
/// `c`) lies in the sector of color `c` at `v`.
fn sector_ok(map: &PlanarMap, wood: &SchnyderWood, v: Vertex, special: Option<usize>, d: Dart, c: u8) -> bool {
    let it = items(map, v, special.is_some());
    let len = it.len();
    let mut pos = [usize::MAX; 3];
    for (k, item) in it.iter().enumerate() {
        let col = match *item {
            Item::Half => Some(special.unwrap() as u8),
            Item::Dart(x) => wood.dart_color[x],
        };
        if let Some(col) = col {
            pos[col as usize] = k;
        }
    }
    let k = it.iter().position(|x| *x == Item::Dart(d)).unwrap();
    let c = c as usize;
    let (lo, hi) = (pos[(c + 2) % 3], pos[(c + 1) % 3]);
    if lo == usize::MAX || hi == usize::MAX {
        return true;
    }
    ccw_dist(lo, k, len) <= ccw_dist(lo, hi, len)
}

/// Local flip problem of one filled hexagon inside the completion of the
/// augmented hexagonal grid.
///
/// The hexagon owns the completion edges at the crossing vertices of its
/// nine filling edges and of its three 4-face sides. Owned edges are free;
/// every other completion edge is fixed pointing away from the primal or
/// dual vertex it touches, which is the orientation the neighbouring
/// hexagons see. Each hexagon corner keeps out-degree one on the owned
/// edges, so that its three hexagons share its demand of three.
pub fn hexagon_local_problem(map: &PlanarMap, c: &Completion, hex: &Hexagon) -> Result<Problem, StructError> {
    let edge = |u: Vertex, v: Vertex| {
        map.find_dart(u, v)
            .map(edge_of)
            .ok_or_else(|| StructError::InvalidInput(format!("hexagon edge {u}-{v} is missing")))
    };
    let mut owned_primal = Vec::new();
    for (u, v) in hex.filling_edges().into_iter().chain(hex.quad_sides()) {
        owned_primal.push(edge(u, v)?);
    }
    let cm = &c.map;
    let mut owned = vec![false; cm.edge_count()];
    for &e in &owned_primal {
        for d in cm.darts_at(c.edge_vertex[e]) {
            owned[edge_of(d)] = true;
        }
    }
    let mut local: Vec<Option<usize>> = vec![None; cm.vertex_count()];
    let mut verts = Vec::new();
    let mut edges = Vec::new();
    let mut ids = Vec::new();
    for e in (0..cm.edge_count()).filter(|&e| owned[e]) {
        let (u, v) = cm.edge_ends(e);
        for w in [u, v] {
            if local[w].is_none() {
                local[w] = Some(verts.len());
                verts.push(w);
            }
        }
        edges.push((local[u].unwrap(), local[v].unwrap()));
        ids.push(e);
    }
    let demand = verts
        .iter()
        .map(|&w| {
            if hex.h.contains(&w) {
                return Some(1);
            }
            let fixed_out = cm.darts_at(w).filter(|&d| !owned[edge_of(d)]).count() as u32;
            Some(c.alpha[w].saturating_sub(fixed_out))
        })
        .collect();
    let mut p = Problem::new(verts.len(), edges, demand);
    p.edge_ids = ids;
    p.map_edges = cm.edge_count();
    Ok(p)
}

/// Number of local orientations of hexagon `index` of `H_{k,l}`.
pub fn hexagon_local_count(grid: &HexGrid, index: usize) -> Result<BigUint, StructError> {
    let hex = grid
        .hexagons
        .get(index)
        .ok_or_else(|| StructError::InvalidInput(format!("no hexagon {index}")))?;
    let n = grid.map.vertex_count();
    let map = attach_special_triangle(&grid.map, grid.corners)?;
    let c = completion(&map, [n, n + 1, n + 2])?;
    let p = hexagon_local_problem(&map, &c, hex)?;
    Ok(count_problem(&p))
}
