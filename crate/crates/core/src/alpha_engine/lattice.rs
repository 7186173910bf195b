//! The flip lattice of α-orientations.
//!
//! Essential cycles are the face walks of the map restricted to its
//! non-rigid edges, minus the outer walk of each component. Flipping an
//! essential cycle from clockwise to counterclockwise moves up; the number
//! of such flips of each cycle from the minimum gives a height vector, and
//! meet and join are the componentwise minimum and maximum of heights.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use super::{
    components, rigid_problem_edges, Chirality, EdgeOrientation, EngineError, FlipCycle,
    Problem,
};
use crate::planar_map::{edge_of, twin, Dart, EdgeId, PlanarMap, UnionFind};

#[derive(Clone, Copy, Debug)]
pub struct LatticeOptions {
    /// Refuse to build lattices with more elements than this.
    pub cap: usize,
    /// Meet and join tables are stored up to this many elements.
    pub table_cap: usize,
    /// Order and distributivity are checked on all pairs and triples up to
    /// this many elements.
    pub exhaustive_cap: usize,
}

impl Default for LatticeOptions {
    fn default() -> Self {
        LatticeOptions {
            cap: 100_000,
            table_cap: 1000,
            exhaustive_cap: 80,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Lattice {
    pub elements: Vec<EdgeOrientation>,
    /// Essential cycles as counterclockwise walks.
    pub cycles: Vec<FlipCycle>,
    pub heights: Vec<Vec<u32>>,
    /// `(lower, upper, cycle)`: `upper` is `lower` with the cycle turned
    /// from clockwise to counterclockwise.
    pub covers: Vec<(usize, usize, usize)>,
    pub min: usize,
    pub max: usize,
    /// Edges with one direction throughout, as `(edge, forward)`.
    pub rigid: Vec<(EdgeId, bool)>,
    by_height: HashMap<Vec<u32>, usize>,
    meet_table: Option<Vec<Vec<u32>>>,
    join_table: Option<Vec<Vec<u32>>>,
}

impl Lattice {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.heights[a].iter().zip(&self.heights[b]).all(|(x, y)| x <= y)
    }

    pub fn meet(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.meet_table {
            return t[a][b] as usize;
        }
        self.combine(a, b, u32::min).expect("meet exists")
    }

    pub fn join(&self, a: usize, b: usize) -> usize {
        if let Some(t) = &self.join_table {
            return t[a][b] as usize;
        }
        self.combine(a, b, u32::max).expect("join exists")
    }

    fn combine(&self, a: usize, b: usize, f: fn(u32, u32) -> u32) -> Option<usize> {
        let h: Vec<u32> = self.heights[a].iter().zip(&self.heights[b]).map(|(&x, &y)| f(x, y)).collect();
        self.by_height.get(&h).copied()
    }

    pub fn index_of(&self, x: &EdgeOrientation) -> Option<usize> {
        self.elements.iter().position(|y| y == x)
    }

    /// Hasse diagram in DOT, edges from lower to upper element.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph lattice {\n  rankdir=BT;\n");
        for (i, x) in self.elements.iter().enumerate() {
            let mut attrs = format!("label=\"{}\"", x.to_bit_string());
            if i == self.min {
                attrs.push_str(", shape=box");
            }
            if i == self.max {
                attrs.push_str(", shape=doublecircle");
            }
            let _ = writeln!(s, "  n{i} [{attrs}];");
        }
        for &(a, b, c) in &self.covers {
            let _ = writeln!(s, "  n{a} -> n{b} [label=\"c{c}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// Face walks of the map restricted to `keep`, skipping each component's
/// outer walk. Walks run counterclockwise around their region.
pub(crate) fn bounded_walks(map: &PlanarMap, keep: &[bool]) -> Vec<Vec<Dart>> {
    let nd = map.dart_count();
    let kept = |d: Dart| keep[edge_of(d)];
    let rot_prev_kept = |d: Dart| {
        let mut x = map.rot_prev(d);
        while !kept(x) {
            x = map.rot_prev(x);
        }
        x
    };
    let mut walk_of = vec![usize::MAX; nd];
    let mut walks: Vec<Vec<Dart>> = Vec::new();
    for d0 in 0..nd {
        if !kept(d0) || walk_of[d0] != usize::MAX {
            continue;
        }
        let id = walks.len();
        let mut w = Vec::new();
        let mut d = d0;
        loop {
            walk_of[d] = id;
            w.push(d);
            d = rot_prev_kept(twin(d));
            if d == d0 {
                break;
            }
        }
        walks.push(w);
    }
    // Component of each walk, by the vertices it touches.
    let edges: Vec<_> = (0..map.edge_count()).filter(|&e| keep[e]).map(|e| map.edge_ends(e)).collect();
    let comp = components(map.vertex_count(), &edges);
    let mut by_comp: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, w) in walks.iter().enumerate() {
        by_comp.entry(comp[map.origin(w[0])]).or_default().push(i);
    }
    let mut outer = vec![false; walks.len()];
    for (&c, ws) in &by_comp {
        // Regions of this component alone: original faces merged across
        // every edge outside it.
        let mut uf = UnionFind::new(map.face_count());
        for e in 0..map.edge_count() {
            let inside = keep[e] && comp[map.edge_ends(e).0] == c;
            if !inside {
                uf.union(map.face_of(2 * e), map.face_of(2 * e + 1));
            }
        }
        let out = uf.find(map.outer_face());
        for &i in ws {
            if uf.find(map.face_of(walks[i][0])) == out {
                outer[i] = true;
            }
        }
    }
    walks
        .into_iter()
        .zip(outer)
        .filter(|(_, o)| !o)
        .map(|(w, _)| w)
        .collect()
}

/// Essential cycles of an α-orientation problem, with the rigid edges
/// found by flow.
pub fn essential_cycles(
    map: &PlanarMap,
    alpha: &[u32],
    active: Option<&[bool]>,
) -> Result<(Vec<FlipCycle>, Vec<(EdgeId, bool)>), EngineError> {
    let p = Problem::with_active(map, alpha, active)?;
    let rigid: Vec<(EdgeId, bool)> = rigid_problem_edges(&p)?
        .into_iter()
        .map(|(i, f)| (p.edge_ids[i], f))
        .collect();
    let mut keep = vec![false; map.edge_count()];
    for &e in &p.edge_ids {
        keep[e] = true;
    }
    for &(e, _) in &rigid {
        keep[e] = false;
    }
    Ok((ccw_cycles(map, &keep), rigid))
}

fn ccw_cycles(map: &PlanarMap, keep: &[bool]) -> Vec<FlipCycle> {
    if !keep.iter().any(|&k| k) {
        return Vec::new();
    }
    bounded_walks(map, keep)
        .into_iter()
        .map(|darts| FlipCycle {
            darts,
            chirality: Chirality::Ccw,
        })
        .collect()
}

pub fn lattice(map: &PlanarMap, alpha: &[u32]) -> Result<Lattice, EngineError> {
    lattice_with(map, alpha, None, LatticeOptions::default())
}

/// Builds the lattice on the edges flagged in `active` (all if `None`) and
/// checks its axioms.
pub fn lattice_with(
    map: &PlanarMap,
    alpha: &[u32],
    active: Option<&[bool]>,
    opts: LatticeOptions,
) -> Result<Lattice, EngineError> {
    let p = Problem::with_active(map, alpha, active)?;
    let mut sols = Vec::new();
    let visited = super::enumerate_problem(&p, |d| {
        sols.push(d.to_vec());
        if sols.len() > opts.cap {
            super::Visit::Stop
        } else {
            super::Visit::Continue
        }
    });
    if visited.is_err() {
        return Err(EngineError::CapExceeded(opts.cap));
    }
    if sols.is_empty() {
        return Err(EngineError::Infeasible);
    }
    let elements: Vec<EdgeOrientation> = sols.iter().map(|d| p.to_orientation(d, None)).collect();
    let mut rigid = Vec::new();
    let mut keep = vec![false; map.edge_count()];
    for (i, &e) in p.edge_ids.iter().enumerate() {
        let f = sols[0][i];
        if sols.iter().all(|s| s[i] == f) {
            rigid.push((e, f));
        } else {
            keep[e] = true;
        }
    }
    let cycles = ccw_cycles(map, &keep);
    build(elements, cycles, rigid, opts)
}

fn violation(msg: impl Into<String>) -> EngineError {
    EngineError::LatticeViolation(msg.into())
}

fn build(
    elements: Vec<EdgeOrientation>,
    cycles: Vec<FlipCycle>,
    rigid: Vec<(EdgeId, bool)>,
    opts: LatticeOptions,
) -> Result<Lattice, EngineError> {
    let n = elements.len();
    let k = cycles.len();
    let index: HashMap<&EdgeOrientation, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let ccw_in = |x: &EdgeOrientation, c: &FlipCycle| c.darts.iter().all(|&d| x.along(d));
    let cw_in = |x: &EdgeOrientation, c: &FlipCycle| c.darts.iter().all(|&d| !x.along(d));

    let mut up: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    let mut covers = Vec::new();
    let mut has_down = vec![false; n];
    for (a, x) in elements.iter().enumerate() {
        for (c, cyc) in cycles.iter().enumerate() {
            if cw_in(x, cyc) {
                let mut y = x.clone();
                for &d in &cyc.darts {
                    y.toggle(edge_of(d));
                }
                let b = *index
                    .get(&y)
                    .ok_or_else(|| violation(format!("flip of cycle {c} leaves the solution set")))?;
                up[a].push((b, c));
                covers.push((a, b, c));
                has_down[b] = true;
            }
        }
    }
    let mins: Vec<usize> = (0..n)
        .filter(|&a| !cycles.iter().any(|c| ccw_in(&elements[a], c)))
        .collect();
    let maxs: Vec<usize> = (0..n)
        .filter(|&a| !cycles.iter().any(|c| cw_in(&elements[a], c)))
        .collect();
    if mins.len() != 1 {
        return Err(violation(format!("{} minimal elements", mins.len())));
    }
    if maxs.len() != 1 {
        return Err(violation(format!("{} maximal elements", maxs.len())));
    }
    let (min, max) = (mins[0], maxs[0]);
    for a in 0..n {
        if (a == min) == has_down[a] {
            return Err(violation(format!("element {a} has inconsistent lower covers")));
        }
    }

    let mut heights: Vec<Option<Vec<u32>>> = vec![None; n];
    heights[min] = Some(vec![0; k]);
    let mut q = VecDeque::from([min]);
    while let Some(a) = q.pop_front() {
        let ha = heights[a].clone().unwrap();
        for &(b, c) in &up[a] {
            let mut hb = ha.clone();
            hb[c] += 1;
            match &heights[b] {
                Some(h) if *h != hb => return Err(violation(format!("element {b} reached with two heights"))),
                Some(_) => {}
                None => {
                    heights[b] = Some(hb);
                    q.push_back(b);
                }
            }
        }
    }
    let heights: Vec<Vec<u32>> = heights
        .into_iter()
        .enumerate()
        .map(|(i, h)| h.ok_or_else(|| violation(format!("element {i} unreachable from the minimum"))))
        .collect::<Result<_, _>>()?;
    let by_height: HashMap<Vec<u32>, usize> = heights.iter().cloned().enumerate().map(|(i, h)| (h, i)).collect();
    if by_height.len() != n {
        return Err(violation("two elements share a height vector"));
    }

    let mut lat = Lattice {
        elements,
        cycles,
        heights,
        covers,
        min,
        max,
        rigid,
        by_height,
        meet_table: None,
        join_table: None,
    };

    if n <= opts.table_cap {
        let mut meet = vec![vec![0u32; n]; n];
        let mut join = vec![vec![0u32; n]; n];
        for a in 0..n {
            for b in a..n {
                let m = lat
                    .combine(a, b, u32::min)
                    .ok_or_else(|| violation(format!("no meet for {a}, {b}")))?;
                let j = lat
                    .combine(a, b, u32::max)
                    .ok_or_else(|| violation(format!("no join for {a}, {b}")))?;
                meet[a][b] = m as u32;
                meet[b][a] = m as u32;
                join[a][b] = j as u32;
                join[b][a] = j as u32;
            }
        }
        lat.meet_table = Some(meet);
        lat.join_table = Some(join);
    }
    if n <= opts.exhaustive_cap {
        check_exhaustive(&lat, &up)?;
    }
    Ok(lat)
}

/// Height order equals reachability along covers, meet and join are the
/// greatest lower and least upper bounds, and meet distributes over join.
fn check_exhaustive(lat: &Lattice, up: &[Vec<(usize, usize)>]) -> Result<(), EngineError> {
    let n = lat.len();
    let mut reach = vec![vec![false; n]; n];
    for (a, row) in reach.iter_mut().enumerate() {
        let mut q = VecDeque::from([a]);
        row[a] = true;
        while let Some(x) = q.pop_front() {
            for &(y, _) in &up[x] {
                if !row[y] {
                    row[y] = true;
                    q.push_back(y);
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            if reach[a][b] != lat.leq(a, b) {
                return Err(violation(format!("order mismatch between {a} and {b}")));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let (m, j) = (lat.meet(a, b), lat.join(a, b));
            for c in 0..n {
                if reach[c][a] && reach[c][b] && !reach[c][m] {
                    return Err(violation(format!("{m} is not the greatest lower bound of {a}, {b}")));
                }
                if reach[a][c] && reach[b][c] && !reach[j][c] {
                    return Err(violation(format!("{j} is not the least upper bound of {a}, {b}")));
                }
                if lat.meet(a, lat.join(b, c)) != lat.join(lat.meet(a, b), lat.meet(a, c)) {
                    return Err(violation(format!("distributivity fails at {a}, {b}, {c}")));
                }
            }
        }
    }
    Ok(())
}
