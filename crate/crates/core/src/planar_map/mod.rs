//! Combinatorial embeddings stored as rotation systems over darts.
//!
//! Edge `e` owns darts `2e` (its canonical direction) and `2e + 1`. Each dart
//! knows its origin and its counterclockwise neighbours in the rotation at
//! that origin. The face on the left of dart `d` is traversed by
//! `face_next(d) = rot_prev(twin(d))`, which walks bounded faces
//! counterclockwise and the outer face clockwise.

mod completion;
mod pmap;

pub use completion::{completion, Completion, CompletionVertex};
pub use pmap::{parse_pmap, parse_pmap_json, write_pmap, write_pmap_json, PmapError};

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

pub type Vertex = usize;
pub type Dart = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

/// The reversal of a dart.
#[inline]
pub fn twin(d: Dart) -> Dart {
    d ^ 1
}

#[inline]
pub fn edge_of(d: Dart) -> EdgeId {
    d >> 1
}

/// Surface an embedding lives on. Torus embeddings are only produced by the
/// torus grid generators and are never validated against Euler's formula for
/// the sphere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surface {
    Sphere,
    Torus,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MapError {
    #[error("adjacency is not symmetric: {0} lists {1} but not vice versa")]
    NonSymmetricAdjacency(Vertex, Vertex),
    #[error("Euler's formula fails: n={n}, m={m}, f={f}")]
    EulerViolation { n: usize, m: usize, f: usize },
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(Vertex),
    #[error("dart {0}->{1} does not exist")]
    MissingDart(Vertex, Vertex),
    #[error("parallel edges between {0} and {1}")]
    MultiEdge(Vertex, Vertex),
    #[error("map is disconnected")]
    Disconnected,
    #[error("map has no edges")]
    NoEdges,
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("map is not 3-connected")]
    NotThreeConnected,
    #[error("special vertices are not on the outer face in clockwise order")]
    SpecialVerticesNotOnOuterFace,
}

#[derive(Clone, Debug)]
pub struct PlanarMap {
    n: usize,
    ends: Vec<(Vertex, Vertex)>,
    next: Vec<Dart>,
    prev: Vec<Dart>,
    first: Vec<Dart>,
    face_of: Vec<FaceId>,
    faces: Vec<Vec<Dart>>,
    outer_dart: Dart,
    surface: Surface,
    multi_edges: bool,
    labels: Option<Vec<String>>,
}

impl PlanarMap {
    /// Builds a map from explicit darts. `ends[e]` gives the endpoints of
    /// edge `e` (dart `2e` runs from `ends[e].0` to `ends[e].1`) and
    /// `rotations[v]` lists the darts leaving `v` in counterclockwise order.
    pub fn from_darts(
        n: usize,
        ends: Vec<(Vertex, Vertex)>,
        rotations: Vec<Vec<Dart>>,
        outer_dart: Dart,
        surface: Surface,
    ) -> Result<Self, MapError> {
        let m = ends.len();
        if m == 0 {
            return Err(MapError::NoEdges);
        }
        if rotations.len() != n {
            return Err(MapError::InvalidRotation(format!(
                "{} rotations for {} vertices",
                rotations.len(),
                n
            )));
        }
        for &(u, v) in &ends {
            if u >= n {
                return Err(MapError::VertexOutOfRange(u));
            }
            if v >= n {
                return Err(MapError::VertexOutOfRange(v));
            }
            if u == v {
                return Err(MapError::LoopEdge(u));
            }
        }
        let nd = 2 * m;
        let mut next = vec![usize::MAX; nd];
        let mut prev = vec![usize::MAX; nd];
        let mut first = vec![usize::MAX; n];
        for (v, rot) in rotations.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d >= nd {
                    return Err(MapError::InvalidRotation(format!("dart {d} out of range")));
                }
                let o = if d & 1 == 0 { ends[d >> 1].0 } else { ends[d >> 1].1 };
                if o != v {
                    return Err(MapError::InvalidRotation(format!(
                        "dart {d} listed at {v} but leaves {o}"
                    )));
                }
                if next[d] != usize::MAX {
                    return Err(MapError::InvalidRotation(format!("dart {d} listed twice")));
                }
                let nx = rot[(i + 1) % rot.len()];
                next[d] = nx;
                prev[nx] = d;
            }
            if let Some(&d) = rot.first() {
                first[v] = d;
            }
        }
        if next.iter().any(|&x| x == usize::MAX) {
            return Err(MapError::InvalidRotation("some dart is missing from the rotations".into()));
        }
        if outer_dart >= nd {
            return Err(MapError::InvalidRotation(format!("outer dart {outer_dart} out of range")));
        }
        let mut map = PlanarMap {
            n,
            ends,
            next,
            prev,
            first,
            face_of: Vec::new(),
            faces: Vec::new(),
            outer_dart,
            surface,
            multi_edges: false,
            labels: None,
        };
        if map.first.iter().any(|&d| d == usize::MAX) || !map.is_connected() {
            return Err(MapError::Disconnected);
        }
        map.compute_faces();
        let f = map.faces.len();
        let chi = n as i64 - m as i64 + f as i64;
        let expected = match surface {
            Surface::Sphere => 2,
            Surface::Torus => 0,
        };
        if chi != expected {
            return Err(MapError::EulerViolation { n, m, f });
        }
        let mut seen = HashMap::with_capacity(m);
        for &(u, v) in &map.ends {
            let key = (u.min(v), u.max(v));
            if seen.insert(key, ()).is_some() {
                map.multi_edges = true;
                break;
            }
        }
        Ok(map)
    }

    /// Builds a simple map from per-vertex counterclockwise neighbour lists.
    /// The outer face is the face on the left of the dart `outer.0 -> outer.1`.
    pub fn build_map(rotation_lists: &[Vec<Vertex>], outer: (Vertex, Vertex)) -> Result<Self, MapError> {
        PlanarMap::build_map_on(rotation_lists, outer, Surface::Sphere)
    }

    pub fn build_map_on(
        rotation_lists: &[Vec<Vertex>],
        outer: (Vertex, Vertex),
        surface: Surface,
    ) -> Result<Self, MapError> {
        let n = rotation_lists.len();
        let mut edge_id: HashMap<(Vertex, Vertex), EdgeId> = HashMap::new();
        let mut ends = Vec::new();
        for (u, nbrs) in rotation_lists.iter().enumerate() {
            for &v in nbrs {
                if v >= n {
                    return Err(MapError::VertexOutOfRange(v));
                }
                if v == u {
                    return Err(MapError::LoopEdge(u));
                }
                if u < v {
                    if edge_id.contains_key(&(u, v)) {
                        return Err(MapError::MultiEdge(u, v));
                    }
                    edge_id.insert((u, v), ends.len());
                    ends.push((u, v));
                }
            }
        }
        let mut rotations = vec![Vec::new(); n];
        for (u, nbrs) in rotation_lists.iter().enumerate() {
            for &v in nbrs {
                let key = (u.min(v), u.max(v));
                let e = *edge_id.get(&key).ok_or(MapError::NonSymmetricAdjacency(u, v))?;
                if !rotation_lists[v].contains(&u) {
                    return Err(MapError::NonSymmetricAdjacency(u, v));
                }
                if u > v && rotation_lists[u].iter().filter(|&&w| w == v).count() > 1 {
                    return Err(MapError::MultiEdge(v, u));
                }
                rotations[u].push(if u < v { 2 * e } else { 2 * e + 1 });
            }
        }
        let (a, b) = outer;
        if a >= n || b >= n {
            return Err(MapError::MissingDart(a, b));
        }
        let e = *edge_id.get(&(a.min(b), a.max(b))).ok_or(MapError::MissingDart(a, b))?;
        let od = if a < b { 2 * e } else { 2 * e + 1 };
        PlanarMap::from_darts(n, ends, rotations, od, surface)
    }

    /// Builds a map from direction vectors. `edges[e] = (u, v, dx, dy)` means
    /// the edge leaves `u` in direction `(dx, dy)`; rotations are obtained by
    /// sorting directions counterclockwise. Used for straight-line drawings
    /// and for torus grids, where wrap edges carry their local direction.
    pub fn from_directions(
        n: usize,
        edges: &[(Vertex, Vertex, f64, f64)],
        outer_dart: Dart,
        surface: Surface,
    ) -> Result<Self, MapError> {
        let mut at: Vec<Vec<(f64, Dart)>> = vec![Vec::new(); n];
        let mut ends = Vec::with_capacity(edges.len());
        for (e, &(u, v, dx, dy)) in edges.iter().enumerate() {
            if u >= n || v >= n {
                return Err(MapError::VertexOutOfRange(u.max(v)));
            }
            ends.push((u, v));
            at[u].push((dy.atan2(dx), 2 * e));
            at[v].push(((-dy).atan2(-dx), 2 * e + 1));
        }
        let rotations = at
            .into_iter()
            .map(|mut l| {
                l.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
                l.into_iter().map(|(_, d)| d).collect()
            })
            .collect();
        PlanarMap::from_darts(n, ends, rotations, outer_dart, surface)
    }

    /// Straight-line drawing: rotations from point positions, outer face
    /// located from the leftmost point.
    pub fn from_positions(points: &[(f64, f64)], edges: &[(Vertex, Vertex)]) -> Result<Self, MapError> {
        let dir: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (u, v, points[v].0 - points[u].0, points[v].1 - points[u].1))
            .collect();
        let provisional = PlanarMap::from_directions(points.len(), &dir, 0, Surface::Sphere)?;
        let left = (0..points.len())
            .min_by(|&a, &b| {
                points[a]
                    .partial_cmp(&points[b])
                    .expect("finite coordinates")
            })
            .expect("non-empty");
        // The unbounded face touches the leftmost point in the angle that
        // contains the direction pointing straight left.
        let angle = |d: Dart| {
            let (u, v) = (provisional.origin(d), provisional.target(d));
            (points[v].1 - points[u].1).atan2(points[v].0 - points[u].0)
        };
        let mut outer = None;
        for d in provisional.darts_at(left) {
            let a = angle(d);
            let mut b = angle(provisional.rot_next(d));
            if b <= a {
                b += 2.0 * std::f64::consts::PI;
            }
            let mut t = std::f64::consts::PI;
            if t < a {
                t += 2.0 * std::f64::consts::PI;
            }
            if provisional.degree(left) == 1 || (a < t && t < b) {
                outer = Some(d);
                break;
            }
        }
        let outer = outer.ok_or_else(|| MapError::InvalidRotation("no outer angle found".into()))?;
        Ok(provisional.with_outer_dart(outer))
    }

    /// Builds a simple map from its face boundaries. Every face is listed as
    /// its traversal with the face on the left: bounded faces counterclockwise,
    /// the outer face (index `outer`) clockwise.
    pub fn from_faces(n: usize, faces: &[Vec<Vertex>], outer: usize) -> Result<Self, MapError> {
        let mut edge_id: HashMap<(Vertex, Vertex), EdgeId> = HashMap::new();
        let mut ends = Vec::new();
        let dart = |edge_id: &mut HashMap<(Vertex, Vertex), EdgeId>, ends: &mut Vec<(Vertex, Vertex)>, u: Vertex, v: Vertex| {
            let key = (u.min(v), u.max(v));
            let e = *edge_id.entry(key).or_insert_with(|| {
                ends.push(key);
                ends.len() - 1
            });
            if u < v {
                2 * e
            } else {
                2 * e + 1
            }
        };
        let mut succ: HashMap<Dart, Dart> = HashMap::new();
        for face in faces {
            let k = face.len();
            if k < 2 {
                return Err(MapError::InvalidRotation("face with fewer than two vertices".into()));
            }
            for i in 0..k {
                let (u, v, w) = (face[i], face[(i + 1) % k], face[(i + 2) % k]);
                if u >= n || v >= n || w >= n {
                    return Err(MapError::VertexOutOfRange(u.max(v).max(w)));
                }
                if u == v {
                    return Err(MapError::LoopEdge(u));
                }
                let vw = dart(&mut edge_id, &mut ends, v, w);
                let vu = dart(&mut edge_id, &mut ends, v, u);
                if succ.insert(vw, vu).is_some() {
                    return Err(MapError::InvalidRotation(format!("dart {v}->{w} used by two faces")));
                }
            }
        }
        let nd = 2 * ends.len();
        let mut rotations = vec![Vec::new(); n];
        let mut placed = vec![false; nd];
        for d in 0..nd {
            if placed[d] {
                continue;
            }
            let v = if d & 1 == 0 { ends[d >> 1].0 } else { ends[d >> 1].1 };
            if !rotations[v].is_empty() {
                return Err(MapError::InvalidRotation(format!("vertex {v} is not a disk")));
            }
            let mut x = d;
            loop {
                placed[x] = true;
                rotations[v].push(x);
                x = *succ
                    .get(&x)
                    .ok_or_else(|| MapError::InvalidRotation(format!("dart {x} lies on no face")))?;
                if x == d {
                    break;
                }
            }
        }
        let of = &faces[outer];
        let od = dart(&mut edge_id, &mut ends, of[0], of[1]);
        PlanarMap::from_darts(n, ends, rotations, od, Surface::Sphere)
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for d in self.darts_at(v) {
                let w = self.target(d);
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.n
    }

    fn compute_faces(&mut self) {
        let nd = self.next.len();
        self.face_of = vec![usize::MAX; nd];
        self.faces.clear();
        for d in 0..nd {
            if self.face_of[d] != usize::MAX {
                continue;
            }
            let id = self.faces.len();
            let mut walk = Vec::new();
            let mut x = d;
            while self.face_of[x] == usize::MAX {
                self.face_of[x] = id;
                walk.push(x);
                x = self.face_next(x);
            }
            self.faces.push(walk);
        }
    }

    /// Same map with a different dart marking the outer face.
    pub fn with_outer_dart(mut self, d: Dart) -> Self {
        assert!(d < self.next.len());
        self.outer_dart = d;
        self
    }

    pub fn with_outer_face(self, f: FaceId) -> Self {
        let d = self.faces[f][0];
        self.with_outer_dart(d)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.n);
        self.labels = Some(labels);
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.ends.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn dart_count(&self) -> usize {
        self.next.len()
    }

    pub fn surface(&self) -> Surface {
        self.surface
    }

    pub fn has_multi_edges(&self) -> bool {
        self.multi_edges
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn origin(&self, d: Dart) -> Vertex {
        let (u, v) = self.ends[d >> 1];
        if d & 1 == 0 {
            u
        } else {
            v
        }
    }

    #[inline]
    pub fn target(&self, d: Dart) -> Vertex {
        self.origin(twin(d))
    }

    pub fn edge_ends(&self, e: EdgeId) -> (Vertex, Vertex) {
        self.ends[e]
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.ends
    }

    #[inline]
    pub fn rot_next(&self, d: Dart) -> Dart {
        self.next[d]
    }

    #[inline]
    pub fn rot_prev(&self, d: Dart) -> Dart {
        self.prev[d]
    }

    /// Next dart along the face on the left of `d`.
    #[inline]
    pub fn face_next(&self, d: Dart) -> Dart {
        self.prev[twin(d)]
    }

    /// Face on the left of `d`.
    #[inline]
    pub fn face_of(&self, d: Dart) -> FaceId {
        self.face_of[d]
    }

    pub fn face_darts(&self, f: FaceId) -> &[Dart] {
        &self.faces[f]
    }

    pub fn face_vertices(&self, f: FaceId) -> Vec<Vertex> {
        self.faces[f].iter().map(|&d| self.origin(d)).collect()
    }

    pub fn outer_dart(&self) -> Dart {
        self.outer_dart
    }

    pub fn outer_face(&self) -> FaceId {
        self.face_of[self.outer_dart]
    }

    /// Outer face traversal (clockwise around the map) starting at the
    /// outer dart.
    pub fn outer_walk(&self) -> Vec<Dart> {
        let mut walk = vec![self.outer_dart];
        let mut d = self.face_next(self.outer_dart);
        while d != self.outer_dart {
            walk.push(d);
            d = self.face_next(d);
        }
        walk
    }

    /// Bounded faces in increasing id order.
    pub fn bounded_faces(&self) -> Vec<FaceId> {
        let o = self.outer_face();
        (0..self.faces.len()).filter(|&f| f != o).collect()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.darts_at(v).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Darts leaving `v` in counterclockwise order.
    pub fn darts_at(&self, v: Vertex) -> DartsAt<'_> {
        DartsAt {
            map: self,
            start: self.first[v],
            cur: Some(self.first[v]),
        }
    }

    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        self.darts_at(v).map(|d| self.target(d)).collect()
    }

    /// Some dart from `u` to `v`.
    pub fn find_dart(&self, u: Vertex, v: Vertex) -> Option<Dart> {
        if u >= self.n {
            return None;
        }
        self.darts_at(u).find(|&d| self.target(d) == v)
    }

    pub fn rotation_lists(&self) -> Vec<Vec<Vertex>> {
        (0..self.n).map(|v| self.neighbors(v)).collect()
    }

    pub fn rotation_darts(&self) -> Vec<Vec<Dart>> {
        (0..self.n).map(|v| self.darts_at(v).collect()).collect()
    }

    /// Vertex sets are simple adjacency lists; multi-edges repeat neighbours.
    pub fn adjacency(&self) -> Vec<Vec<Vertex>> {
        self.rotation_lists()
    }

    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> PlanarMap {
        let rotations = (0..self.n)
            .map(|v| {
                let mut r: Vec<Dart> = self.darts_at(v).collect();
                r.reverse();
                r
            })
            .collect();
        PlanarMap::from_darts(self.n, self.ends.clone(), rotations, twin(self.outer_dart), self.surface)
            .expect("mirror of a valid map is valid")
    }

    /// Outer face boundary vertices in traversal order, each once.
    pub fn outer_vertices(&self) -> Vec<Vertex> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for d in self.outer_walk() {
            let v = self.origin(d);
            if !seen[v] {
                seen[v] = true;
                out.push(v);
            }
        }
        out
    }

    pub fn is_bipartite(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        side[0] = 0;
        let mut q = VecDeque::from([0]);
        while let Some(v) = q.pop_front() {
            for w in self.neighbors(v) {
                if side[w] == u8::MAX {
                    side[w] = 1 - side[v];
                    q.push_back(w);
                } else if side[w] == side[v] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_triangulation(&self) -> bool {
        self.faces.iter().all(|f| f.len() == 3) && !self.multi_edges
    }

    /// All bounded faces are triangles.
    pub fn is_inner_triangulation(&self) -> bool {
        let o = self.outer_face();
        !self.multi_edges && self.faces.iter().enumerate().all(|(i, f)| i == o || f.len() == 3)
    }
}

pub struct DartsAt<'a> {
    map: &'a PlanarMap,
    start: Dart,
    cur: Option<Dart>,
}

impl Iterator for DartsAt<'_> {
    type Item = Dart;
    fn next(&mut self) -> Option<Dart> {
        let d = self.cur?;
        let nx = self.map.next[d];
        self.cur = if nx == self.start { None } else { Some(nx) };
        Some(d)
    }
}

impl PartialEq for PlanarMap {
    /// Identical dart numbering, rotations and outer face.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
            && self.ends == other.ends
            && self.next == other.next
            && self.surface == other.surface
            && self.outer_face_darts_equal(other)
    }
}

impl PlanarMap {
    fn outer_face_darts_equal(&self, other: &Self) -> bool {
        let mut a = self.faces[self.outer_face()].clone();
        let mut b = other.faces[other.outer_face()].clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

/// Rotation-system isomorphism. When `respect_outer` is set the outer face
/// must be mapped onto the outer face.
pub fn isomorphic(a: &PlanarMap, b: &PlanarMap, respect_outer: bool) -> bool {
    if a.n != b.n || a.edge_count() != b.edge_count() || a.face_count() != b.face_count() {
        return false;
    }
    let anchor = a.outer_dart;
    let candidates: Vec<Dart> = if respect_outer {
        b.faces[b.outer_face()].clone()
    } else {
        (0..b.dart_count()).collect()
    };
    candidates.into_iter().any(|c| dart_map_from(a, b, anchor, c).is_some())
}

/// Extends `anchor -> image` to a full rotation-preserving dart bijection.
pub fn dart_map_from(a: &PlanarMap, b: &PlanarMap, anchor: Dart, image: Dart) -> Option<Vec<Dart>> {
    let nd = a.dart_count();
    if nd != b.dart_count() {
        return None;
    }
    let mut phi = vec![usize::MAX; nd];
    let mut used = vec![false; nd];
    let mut vmap = vec![usize::MAX; a.n];
    let mut stack = vec![(anchor, image)];
    while let Some((x, y)) = stack.pop() {
        if phi[x] != usize::MAX {
            if phi[x] != y {
                return None;
            }
            continue;
        }
        if used[y] {
            return None;
        }
        let (ox, oy) = (a.origin(x), b.origin(y));
        if vmap[ox] == usize::MAX {
            vmap[ox] = oy;
        } else if vmap[ox] != oy {
            return None;
        }
        phi[x] = y;
        used[y] = true;
        stack.push((a.rot_next(x), b.rot_next(y)));
        stack.push((twin(x), twin(y)));
    }
    if phi.iter().any(|&y| y == usize::MAX) {
        return None;
    }
    let mut vused = vec![false; b.n];
    for &w in &vmap {
        if w == usize::MAX || vused[w] {
            return None;
        }
        vused[w] = true;
    }
    Some(phi)
}

/// Vertex-pair deletion test. Complete graphs on at most three vertices count
/// as 3-connected so that a triangle can be suspended.
pub fn is_three_connected(map: &PlanarMap) -> bool {
    let n = map.n;
    let adj = simple_adjacency(map);
    if n <= 3 {
        return (0..n).all(|v| adj[v].len() == n - 1);
    }
    let connected_without = |x: Vertex, y: Vertex| {
        let start = (0..n).find(|&v| v != x && v != y).expect("n >= 4");
        let mut seen = vec![false; n];
        seen[x] = true;
        seen[y] = true;
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == n - 2
    };
    for x in 0..n {
        for y in x + 1..n {
            if !connected_without(x, y) {
                return false;
            }
        }
    }
    true
}

pub(crate) fn simple_adjacency(map: &PlanarMap) -> Vec<Vec<Vertex>> {
    (0..map.n)
        .map(|v| {
            let mut l = map.neighbors(v);
            l.sort_unstable();
            l.dedup();
            l
        })
        .collect()
}

/// The dual map. Dual vertex `F` corresponds to face `F`; dual edge `e`
/// crosses primal edge `e`, and dual dart `d` runs from the face on the right
/// of primal dart `d` to the face on its left.
pub fn dual(map: &PlanarMap) -> Result<PlanarMap, MapError> {
    let m = map.edge_count();
    let ends: Vec<_> = (0..m)
        .map(|e| (map.face_of(2 * e + 1), map.face_of(2 * e)))
        .collect();
    let rotations: Vec<Vec<Dart>> = map
        .faces
        .iter()
        .map(|walk| walk.iter().map(|&d| twin(d)).collect())
        .collect();
    // Outer face of the dual: the one around the origin of the primal outer dart.
    let v = map.origin(map.outer_dart);
    let d = map.first[v];
    let probe = PlanarMap::from_darts(map.face_count(), ends.clone(), rotations.clone(), 0, map.surface)?;
    let target_face = probe.face_of(d);
    Ok(probe.with_outer_face(target_face))
}

/// Angle graph: vertices `0..n` are the primal vertices, then one vertex
/// per face in face order, except that the outer face comes last.
/// Edge `d` joins `origin(d)` to the face on the left of `d`; it represents
/// the angle between `d` and its counterclockwise successor.
pub fn angle_graph(map: &PlanarMap) -> PlanarMap {
    let n = map.n;
    let nd = map.dart_count();
    let total = n + map.face_count();
    let outer = map.outer_face();
    let face_vertex = |f: FaceId| match f {
        f if f == outer => total - 1,
        f if f == map.face_count() - 1 => n + outer,
        f => n + f,
    };
    let ends: Vec<_> = (0..nd).map(|d| (map.origin(d), face_vertex(map.face_of(d)))).collect();
    let mut rotations: Vec<Vec<Dart>> = (0..n)
        .map(|v| map.darts_at(v).map(|d| 2 * d).collect())
        .collect();
    rotations.resize(total, Vec::new());
    for (f, walk) in map.faces.iter().enumerate() {
        rotations[face_vertex(f)] = walk.iter().map(|&d| 2 * d + 1).collect();
    }
    let probe = PlanarMap::from_darts(total, ends, rotations, 0, map.surface)
        .expect("angle graph of a valid map is valid");
    // Outer face: the quadrangle of the primal outer dart's edge that
    // contains the outer face vertex.
    let od = map.outer_dart;
    let fo = total - 1;
    let x = 2 * od + 1; // angle edge dart from outer face vertex to origin(od)
    debug_assert_eq!(probe.origin(x), fo);
    let f = [probe.face_of(x), probe.face_of(twin(x))]
        .into_iter()
        .find(|&f| probe.face_vertices(f).contains(&map.target(od)))
        .unwrap_or(probe.face_of(x));
    probe.with_outer_face(f)
}

/// Subdivides every edge once. Edge `e` becomes edges `2e` (origin side)
/// and `2e + 1`, the new vertex is `n + e`, and it gets demand 1.
pub fn subdivide(map: &PlanarMap, alpha: &[u32]) -> (PlanarMap, Vec<u32>) {
    let n = map.n;
    let m = map.edge_count();
    let mut ends = Vec::with_capacity(2 * m);
    for e in 0..m {
        let (u, v) = map.ends[e];
        ends.push((u, n + e));
        ends.push((n + e, v));
    }
    // Primal dart 2e (u->v) becomes new dart 4e (u->w); primal dart 2e+1
    // (v->u) becomes new dart 2(2e+1)+1 = 4e+3 (v->w).
    let image = |d: Dart| if d & 1 == 0 { 2 * d } else { 2 * d + 1 };
    let mut rotations: Vec<Vec<Dart>> = (0..n).map(|v| map.darts_at(v).map(image).collect()).collect();
    for e in 0..m {
        rotations.push(vec![4 * e + 1, 4 * e + 2]);
    }
    let sub = PlanarMap::from_darts(n + m, ends, rotations, image(map.outer_dart), map.surface)
        .expect("subdivision of a valid map is valid");
    let mut a = alpha.to_vec();
    a.extend(std::iter::repeat(1).take(m));
    (sub, a)
}

/// Result of keeping a subset of edges.
#[derive(Clone, Debug)]
pub struct SubMap {
    pub map: PlanarMap,
    /// Old vertex of each new vertex.
    pub vertex_origin: Vec<Vertex>,
    /// Old edge of each new edge.
    pub edge_origin: Vec<EdgeId>,
}

/// Keeps the edges flagged in `keep` and the vertices they touch. The
/// remaining graph must be connected; the outer face is the face that
/// contains the old outer face.
pub fn edge_subgraph(map: &PlanarMap, keep: &[bool]) -> Result<SubMap, MapError> {
    let m = map.edge_count();
    assert_eq!(keep.len(), m);
    let mut new_v = vec![usize::MAX; map.n];
    let mut vertex_origin = Vec::new();
    let mut new_e = vec![usize::MAX; m];
    let mut edge_origin = Vec::new();
    let mut ends = Vec::new();
    for e in 0..m {
        if !keep[e] {
            continue;
        }
        let (u, v) = map.ends[e];
        for x in [u, v] {
            if new_v[x] == usize::MAX {
                new_v[x] = vertex_origin.len();
                vertex_origin.push(x);
            }
        }
        new_e[e] = edge_origin.len();
        edge_origin.push(e);
        ends.push((new_v[u], new_v[v]));
    }
    if ends.is_empty() {
        return Err(MapError::NoEdges);
    }
    let rotations: Vec<Vec<Dart>> = vertex_origin
        .iter()
        .map(|&v| {
            map.darts_at(v)
                .filter(|&d| keep[edge_of(d)])
                .map(|d| 2 * new_e[edge_of(d)] + (d & 1))
                .collect()
        })
        .collect();
    let probe = PlanarMap::from_darts(vertex_origin.len(), ends, rotations, 0, map.surface)?;
    // Regions: old faces merged across deleted edges.
    let mut uf = UnionFind::new(map.face_count());
    for e in 0..m {
        if !keep[e] {
            uf.union(map.face_of(2 * e), map.face_of(2 * e + 1));
        }
    }
    let outer_region = uf.find(map.outer_face());
    let od = (0..probe.dart_count())
        .find(|&d| {
            let old = 2 * edge_origin[edge_of(d)] + (d & 1);
            uf.find(map.face_of(old)) == outer_region
        })
        .expect("some kept dart borders the outer region");
    Ok(SubMap {
        map: probe.with_outer_dart(od),
        vertex_origin,
        edge_origin,
    })
}

/// Removes the listed edges; see [`edge_subgraph`].
pub fn delete_edges(map: &PlanarMap, edges: &[EdgeId]) -> Result<SubMap, MapError> {
    let mut keep = vec![true; map.edge_count()];
    for &e in edges {
        keep[e] = false;
    }
    edge_subgraph(map, &keep)
}

/// Adds a vertex in the outer face adjacent to `attach`, which must be outer
/// vertices listed in outer traversal order. The new vertex gets index `n`;
/// the new outer face is the one containing `outer_with` and the new vertex.
pub fn attach_apex(map: &PlanarMap, attach: &[Vertex], outer_with: Vertex) -> Result<PlanarMap, MapError> {
    let n = map.n;
    let walk = map.outer_walk();
    let mut out_dart = vec![usize::MAX; n];
    for &d in &walk {
        let v = map.origin(d);
        if out_dart[v] != usize::MAX {
            return Err(MapError::InvalidRotation(format!("vertex {v} repeats on the outer face")));
        }
        out_dart[v] = d;
    }
    let mut ends = map.ends.clone();
    let mut rotations = map.rotation_darts();
    let mut apex_rot = Vec::new();
    for &v in attach {
        if out_dart[v] == usize::MAX {
            return Err(MapError::SpecialVerticesNotOnOuterFace);
        }
        let e = ends.len();
        ends.push((v, n));
        let pos = rotations[v].iter().position(|&d| d == out_dart[v]).expect("dart at v");
        rotations[v].insert(pos + 1, 2 * e);
        apex_rot.push(2 * e + 1);
    }
    rotations.push(apex_rot);
    let probe = PlanarMap::from_darts(n + 1, ends, rotations, map.outer_dart, map.surface)?;
    let f = (0..probe.face_count())
        .find(|&f| {
            let vs = probe.face_vertices(f);
            vs.contains(&n) && vs.contains(&outer_with)
        })
        .ok_or(MapError::SpecialVerticesNotOnOuterFace)?;
    Ok(probe.with_outer_face(f))
}

/// Adds a triangle `a1 a2 a3` around the map. `corners = [p, q, r]` are outer
/// vertices in clockwise order; `a1` is joined to the outer path `p..q`,
/// `a2` to `q..r` and `a3` to `r..p` (endpoints included). The specials get
/// indices `n, n+1, n+2` and the outer face becomes `a1 a2 a3`.
pub fn attach_special_triangle(map: &PlanarMap, corners: [Vertex; 3]) -> Result<PlanarMap, MapError> {
    let n = map.n;
    let walk = map.outer_walk();
    let verts: Vec<Vertex> = walk.iter().map(|&d| map.origin(d)).collect();
    let len = verts.len();
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in verts.iter().enumerate() {
        if pos[v] != usize::MAX {
            return Err(MapError::InvalidRotation(format!("vertex {v} repeats on the outer face")));
        }
        pos[v] = i;
    }
    let mut idx = [0; 3];
    for (k, &c) in corners.iter().enumerate() {
        if pos[c] == usize::MAX {
            return Err(MapError::SpecialVerticesNotOnOuterFace);
        }
        idx[k] = pos[c];
    }
    let rel = |i: usize| (i + len - idx[0]) % len;
    if !(rel(idx[1]) < rel(idx[2])) || idx[0] == idx[1] || idx[1] == idx[2] {
        return Err(MapError::SpecialVerticesNotOnOuterFace);
    }
    // Arcs: special s is joined to the walk vertices from corner s to corner s+1.
    let mut arcs: [Vec<Vertex>; 3] = Default::default();
    for s in 0..3 {
        let (from, to) = (idx[s], idx[(s + 1) % 3]);
        let mut i = from;
        loop {
            arcs[s].push(verts[i]);
            if i == to {
                break;
            }
            i = (i + 1) % len;
        }
    }
    let mut ends = map.ends.clone();
    let mut rotations = map.rotation_darts();
    let mut special_rot: [Vec<Dart>; 3] = Default::default();
    // Darts inserted into each outer angle, in counterclockwise order after
    // the outer dart: the special of the following arc comes first.
    let mut inserts: Vec<Vec<Dart>> = vec![Vec::new(); n];
    for s in 0..3 {
        for (j, &v) in arcs[s].iter().enumerate() {
            let e = ends.len();
            ends.push((v, n + s));
            special_rot[s].push(2 * e + 1);
            if j == 0 {
                // start corner of arc s: also on arc s-1; arc s comes first
                inserts[v].insert(0, 2 * e);
            } else {
                inserts[v].push(2 * e);
            }
        }
    }
    for v in 0..n {
        if inserts[v].is_empty() {
            continue;
        }
        let od = walk[pos[v]];
        let p = rotations[v].iter().position(|&d| d == od).expect("outer dart at v");
        let tail = rotations[v].split_off(p + 1);
        rotations[v].extend(inserts[v].iter().copied());
        rotations[v].extend(tail);
    }
    let tri: Vec<usize> = (0..3)
        .map(|s| {
            let e = ends.len();
            ends.push((n + s, n + (s + 1) % 3));
            e
        })
        .collect();
    // rotation of a_s: its arc, then a_{s+1}, then a_{s-1}
    for s in 0..3 {
        let to_next = 2 * tri[s];
        let to_prev = 2 * tri[(s + 2) % 3] + 1;
        special_rot[s].push(to_next);
        special_rot[s].push(to_prev);
    }
    for r in special_rot {
        rotations.push(r);
    }
    PlanarMap::from_darts(n + 3, ends, rotations, 2 * tri[0], map.surface)
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}
