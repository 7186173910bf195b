//! Feasibility, enumeration, exact counting, rigid edges, cycle flips and
//! the flip lattice of α-orientations.
//!
//! Everything runs on a [`Problem`]: a list of edges, each to be directed one
//! way or the other, and an optional demanded out-degree per vertex. Map
//! level entry points build the problem from a map, a demand vector and an
//! optional mask of the edges that take part.

mod flow;
mod frontier;
mod lattice;
mod search;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use thiserror::Error;

use crate::planar_map::{edge_of, twin, Dart, EdgeId, MapError, PlanarMap, UnionFind, Vertex};

pub use lattice::{essential_cycles, lattice, lattice_with, Lattice, LatticeOptions};
pub use search::Visit;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("demand vector has length {got}, expected {expected}")]
    DemandLength { got: usize, expected: usize },
    #[error("demand {alpha} at vertex {v} exceeds its degree {degree}")]
    DemandExceedsDegree { v: Vertex, alpha: u32, degree: usize },
    #[error("no orientation meets the demands")]
    Infeasible,
    #[error("cycle is not directed in the orientation")]
    CycleNotDirected,
    #[error("darts do not form a simple closed walk: {0}")]
    NotACycle(String),
    #[error("more than {0} orientations")]
    CapExceeded(usize),
    #[error("lattice structure violated: {0}")]
    LatticeViolation(String),
    #[error("visitor aborted the enumeration")]
    VisitorAbort,
    #[error("brute force limited to {cap} edges, got {m}")]
    TooManyEdges { m: usize, cap: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// One direction bit per map edge: set when the edge points along its
/// canonical dart `2e`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeOrientation {
    bits: Vec<u64>,
    m: usize,
}

impl EdgeOrientation {
    /// All edges backward.
    pub fn new(m: usize) -> Self {
        EdgeOrientation {
            bits: vec![0; m.div_ceil(64)],
            m,
        }
    }

    pub fn from_bools(forward: &[bool]) -> Self {
        let mut x = EdgeOrientation::new(forward.len());
        for (e, &f) in forward.iter().enumerate() {
            x.set(e, f);
        }
        x
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.m == 0
    }

    #[inline]
    pub fn forward(&self, e: EdgeId) -> bool {
        self.bits[e >> 6] >> (e & 63) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, e: EdgeId, forward: bool) {
        if forward {
            self.bits[e >> 6] |= 1 << (e & 63);
        } else {
            self.bits[e >> 6] &= !(1 << (e & 63));
        }
    }

    #[inline]
    pub fn toggle(&mut self, e: EdgeId) {
        self.bits[e >> 6] ^= 1 << (e & 63);
    }

    /// Whether the edge of `d` is directed along `d`.
    #[inline]
    pub fn along(&self, d: Dart) -> bool {
        self.forward(edge_of(d)) == (d & 1 == 0)
    }

    /// Directs the edge of `d` along `d`.
    pub fn set_along(&mut self, d: Dart) {
        self.set(edge_of(d), d & 1 == 0);
    }

    pub fn tail(&self, map: &PlanarMap, e: EdgeId) -> Vertex {
        let (u, v) = map.edge_ends(e);
        if self.forward(e) {
            u
        } else {
            v
        }
    }

    pub fn head(&self, map: &PlanarMap, e: EdgeId) -> Vertex {
        let (u, v) = map.edge_ends(e);
        if self.forward(e) {
            v
        } else {
            u
        }
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.m).map(|e| self.forward(e)).collect()
    }

    /// Out-degrees counting only edges flagged in `active` (all if `None`).
    pub fn out_degrees(&self, map: &PlanarMap, active: Option<&[bool]>) -> Vec<u32> {
        let mut out = vec![0; map.vertex_count()];
        for e in 0..map.edge_count() {
            if active.is_none_or(|a| a[e]) {
                out[self.tail(map, e)] += 1;
            }
        }
        out
    }

    /// Bit string, one character per edge (`1` = forward).
    pub fn to_bit_string(&self) -> String {
        (0..self.m).map(|e| if self.forward(e) { '1' } else { '0' }).collect()
    }
}

/// An orientation problem on an abstract multigraph.
#[derive(Clone, Debug)]
pub struct Problem {
    pub n: usize,
    /// Problem edge `i` runs from `edges[i].0` to `edges[i].1` when forward.
    pub edges: Vec<(Vertex, Vertex)>,
    pub demand: Vec<Option<u32>>,
    /// Map edge behind each problem edge.
    pub edge_ids: Vec<EdgeId>,
    /// Edge count of the underlying map.
    pub map_edges: usize,
}

impl Problem {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>, demand: Vec<Option<u32>>) -> Self {
        let m = edges.len();
        Problem {
            n,
            edges,
            demand,
            edge_ids: (0..m).collect(),
            map_edges: m,
        }
    }

    pub fn from_map(map: &PlanarMap, alpha: &[u32]) -> Result<Self, EngineError> {
        Problem::with_active(map, alpha, None)
    }

    /// Problem on the edges flagged in `active`; demands are checked against
    /// the degrees within that edge set.
    pub fn with_active(map: &PlanarMap, alpha: &[u32], active: Option<&[bool]>) -> Result<Self, EngineError> {
        if alpha.len() != map.vertex_count() {
            return Err(EngineError::DemandLength {
                got: alpha.len(),
                expected: map.vertex_count(),
            });
        }
        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        for e in 0..map.edge_count() {
            if active.is_none_or(|a| a[e]) {
                edges.push(map.edge_ends(e));
                edge_ids.push(e);
            }
        }
        let p = Problem {
            n: map.vertex_count(),
            edges,
            demand: alpha.iter().map(|&a| Some(a)).collect(),
            edge_ids,
            map_edges: map.edge_count(),
        };
        let deg = p.degrees();
        for (v, &a) in alpha.iter().enumerate() {
            if a as usize > deg[v] {
                return Err(EngineError::DemandExceedsDegree { v, alpha: a, degree: deg[v] });
            }
        }
        Ok(p)
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n];
        for &(u, v) in &self.edges {
            d[u] += 1;
            d[v] += 1;
        }
        d
    }

    pub fn incidence(&self) -> Vec<Vec<usize>> {
        let mut inc = vec![Vec::new(); self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            inc[u].push(i);
            inc[v].push(i);
        }
        inc
    }

    /// Quick necessary conditions: demands within degrees and, when every
    /// vertex is constrained, total demand equal to the edge count.
    pub fn obviously_infeasible(&self) -> bool {
        let deg = self.degrees();
        if self
            .demand
            .iter()
            .enumerate()
            .any(|(v, a)| a.is_some_and(|a| a as usize > deg[v]))
        {
            return true;
        }
        if self.demand.iter().all(Option::is_some) {
            let total: usize = self.demand.iter().map(|a| a.unwrap() as usize).sum();
            return total != self.m();
        }
        false
    }

    /// Removes the given problem edges with fixed directions, lowering the
    /// demand of their tails. `None` if some demand would go negative.
    pub fn fix_edges(&self, fixed: &[(usize, bool)]) -> Option<Problem> {
        let mut drop = vec![false; self.m()];
        let mut demand = self.demand.clone();
        for &(i, fwd) in fixed {
            drop[i] = true;
            let (u, v) = self.edges[i];
            let tail = if fwd { u } else { v };
            if let Some(a) = demand[tail].as_mut() {
                if *a == 0 {
                    return None;
                }
                *a -= 1;
            }
        }
        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        for i in 0..self.m() {
            if !drop[i] {
                edges.push(self.edges[i]);
                edge_ids.push(self.edge_ids[i]);
            }
        }
        Some(Problem {
            n: self.n,
            edges,
            demand,
            edge_ids,
            map_edges: self.map_edges,
        })
    }

    /// Converts per-problem-edge directions into a map orientation; edges
    /// outside the problem stay backward unless `base` supplies them.
    pub fn to_orientation(&self, dirs: &[bool], base: Option<&EdgeOrientation>) -> EdgeOrientation {
        let mut x = base.cloned().unwrap_or_else(|| EdgeOrientation::new(self.map_edges));
        for (i, &f) in dirs.iter().enumerate() {
            x.set(self.edge_ids[i], f);
        }
        x
    }

    pub fn satisfied_by(&self, dirs: &[bool]) -> bool {
        let mut out = vec![0u32; self.n];
        for (i, &(u, v)) in self.edges.iter().enumerate() {
            out[if dirs[i] { u } else { v }] += 1;
        }
        self.demand
            .iter()
            .zip(&out)
            .all(|(a, &o)| a.is_none_or(|a| a == o))
    }
}

/// Checks a demand vector against a map: right length, within degrees.
pub fn check_spec(map: &PlanarMap, alpha: &[u32]) -> Result<(), EngineError> {
    Problem::from_map(map, alpha).map(|_| ())
}

/// Whether at least one α-orientation exists (flow between edges and
/// demand slots).
pub fn feasible(map: &PlanarMap, alpha: &[u32]) -> bool {
    match Problem::from_map(map, alpha) {
        Ok(p) => problem_feasible(&p),
        Err(_) => false,
    }
}

pub fn problem_feasible(p: &Problem) -> bool {
    find_orientation(p).is_some()
}

/// Some orientation meeting the demands, as per-problem-edge directions.
pub fn find_orientation(p: &Problem) -> Option<Vec<bool>> {
    if p.obviously_infeasible() {
        return None;
    }
    if p.demand.iter().all(Option::is_some) {
        flow::orient(p)
    } else {
        let mut found = None;
        search::Search::new(p).run(&mut |dirs: &[bool]| {
            found = Some(dirs.to_vec());
            Visit::Stop
        });
        found
    }
}

/// Visits every α-orientation of the map exactly once.
pub fn enumerate<F>(map: &PlanarMap, alpha: &[u32], mut visitor: F) -> Result<u64, EngineError>
where
    F: FnMut(&EdgeOrientation) -> Visit,
{
    let p = Problem::from_map(map, alpha)?;
    enumerate_problem(&p, |dirs| visitor(&p.to_orientation(dirs, None)))
}

/// Visits every solution of a problem as per-problem-edge directions.
/// Returns the number of solutions visited, or `VisitorAbort` if the
/// visitor stopped early.
pub fn enumerate_problem<F>(p: &Problem, mut visitor: F) -> Result<u64, EngineError>
where
    F: FnMut(&[bool]) -> Visit,
{
    if p.obviously_infeasible() {
        return Ok(0);
    }
    let mut seen = 0u64;
    let mut aborted = false;
    search::Search::new(p).run(&mut |dirs: &[bool]| {
        seen += 1;
        let v = visitor(dirs);
        if v == Visit::Stop {
            aborted = true;
        }
        v
    });
    if aborted {
        Err(EngineError::VisitorAbort)
    } else {
        Ok(seen)
    }
}

/// All solutions of a problem, materialised.
pub fn all_orientations(p: &Problem) -> Vec<Vec<bool>> {
    let mut out = Vec::new();
    let _ = enumerate_problem(p, |d| {
        out.push(d.to_vec());
        Visit::Continue
    });
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CountMethod {
    /// Depth-first search with unit propagation, one leaf per orientation.
    Search,
    /// Dynamic programming over a vertex frontier.
    Frontier,
}

#[derive(Clone, Copy, Debug)]
pub struct CountOptions {
    pub method: CountMethod,
    pub threads: usize,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            method: CountMethod::Frontier,
            threads: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CountResult {
    pub count: BigUint,
    /// Search nodes, or frontier states summed over all steps.
    pub nodes: u64,
    pub rigid_edges: Option<usize>,
    pub method: CountMethod,
    pub elapsed: Duration,
}

impl CountResult {
    pub fn to_u64(&self) -> Option<u64> {
        self.count.to_u64()
    }
}

/// Exact number of α-orientations.
pub fn count(map: &PlanarMap, alpha: &[u32]) -> Result<CountResult, EngineError> {
    count_with(&Problem::from_map(map, alpha)?, CountOptions::default())
}

pub fn count_problem(p: &Problem) -> BigUint {
    count_with(p, CountOptions::default()).expect("count").count
}

pub fn count_with(p: &Problem, opts: CountOptions) -> Result<CountResult, EngineError> {
    let start = Instant::now();
    let (count, nodes) = if p.obviously_infeasible() {
        (BigUint::zero(), 0)
    } else {
        match opts.method {
            CountMethod::Search => search::count(p, opts.threads.max(1)),
            CountMethod::Frontier => frontier::count(p),
        }
    };
    Ok(CountResult {
        count,
        nodes,
        rigid_edges: None,
        method: opts.method,
        elapsed: start.elapsed(),
    })
}

/// Exhaustive count over all `2^m` orientations of the problem's edges.
pub fn brute_force_count(p: &Problem, cap: usize) -> Result<u64, EngineError> {
    let m = p.m();
    if m > cap {
        return Err(EngineError::TooManyEdges { m, cap });
    }
    let mut total = 0;
    let mut dirs = vec![false; m];
    for mask in 0u64..(1u64 << m) {
        for (i, d) in dirs.iter_mut().enumerate() {
            *d = mask >> i & 1 == 1;
        }
        if p.satisfied_by(&dirs) {
            total += 1;
        }
    }
    Ok(total)
}

/// Edges with the same direction in every solution, as
/// `(problem edge, forward)`. Each edge is tested by forcing it the other
/// way and re-running the flow.
pub fn rigid_problem_edges(p: &Problem) -> Result<Vec<(usize, bool)>, EngineError> {
    let base = find_orientation(p).ok_or(EngineError::Infeasible)?;
    let mut rigid = Vec::new();
    for i in 0..p.m() {
        let flipped = p.fix_edges(&[(i, !base[i])]);
        let free = flipped.is_some_and(|q| problem_feasible(&q));
        if !free {
            rigid.push((i, base[i]));
        }
    }
    Ok(rigid)
}

/// Rigid edges of an α-orientation problem on a map, as `(edge, forward)`.
pub fn rigid_edges(map: &PlanarMap, alpha: &[u32]) -> Result<Vec<(EdgeId, bool)>, EngineError> {
    let p = Problem::from_map(map, alpha)?;
    Ok(rigid_problem_edges(&p)?
        .into_iter()
        .map(|(i, f)| (p.edge_ids[i], f))
        .collect())
}

/// The problem with every rigid edge fixed and removed.
pub fn without_rigid(p: &Problem) -> Result<(Problem, Vec<(usize, bool)>), EngineError> {
    let rigid = rigid_problem_edges(p)?;
    let q = p.fix_edges(&rigid).expect("rigid directions are feasible");
    Ok((q, rigid))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Chirality {
    /// Interior on the right.
    Cw,
    /// Interior on the left.
    Ccw,
}

/// A simple closed walk of darts with its chirality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FlipCycle {
    pub darts: Vec<Dart>,
    pub chirality: Chirality,
}

impl FlipCycle {
    /// Validates the walk and derives its chirality from the embedding.
    pub fn new(map: &PlanarMap, darts: Vec<Dart>) -> Result<Self, EngineError> {
        if darts.is_empty() {
            return Err(EngineError::NotACycle("empty".into()));
        }
        let k = darts.len();
        let mut seen_v = std::collections::HashSet::new();
        let mut seen_e = std::collections::HashSet::new();
        for i in 0..k {
            let (d, nx) = (darts[i], darts[(i + 1) % k]);
            if d >= map.dart_count() {
                return Err(EngineError::NotACycle(format!("dart {d} out of range")));
            }
            if map.target(d) != map.origin(nx) {
                return Err(EngineError::NotACycle(format!("dart {d} does not meet dart {nx}")));
            }
            if !seen_v.insert(map.origin(d)) || !seen_e.insert(edge_of(d)) {
                return Err(EngineError::NotACycle("walk is not simple".into()));
            }
        }
        let chirality = chirality_of(map, &darts);
        Ok(FlipCycle { darts, chirality })
    }

    /// Boundary of a face in traversal order: counterclockwise for bounded
    /// faces, clockwise for the outer face.
    pub fn facial(map: &PlanarMap, f: usize) -> Self {
        let darts = map.face_darts(f).to_vec();
        let chirality = if f == map.outer_face() {
            Chirality::Cw
        } else {
            Chirality::Ccw
        };
        FlipCycle { darts, chirality }
    }

    pub fn reversed(&self) -> Self {
        FlipCycle {
            darts: self.darts.iter().rev().map(|&d| twin(d)).collect(),
            chirality: match self.chirality {
                Chirality::Cw => Chirality::Ccw,
                Chirality::Ccw => Chirality::Cw,
            },
        }
    }

    /// Whether every dart agrees with the orientation.
    pub fn directed_in(&self, x: &EdgeOrientation) -> bool {
        self.darts.iter().all(|&d| x.along(d))
    }
}

/// Left side of a closed walk is the interior unless the faces on its left,
/// merged across edges off the walk, contain the outer face.
fn chirality_of(map: &PlanarMap, darts: &[Dart]) -> Chirality {
    let mut on = vec![false; map.edge_count()];
    for &d in darts {
        on[edge_of(d)] = true;
    }
    let mut uf = UnionFind::new(map.face_count());
    for e in 0..map.edge_count() {
        if !on[e] {
            uf.union(map.face_of(2 * e), map.face_of(2 * e + 1));
        }
    }
    let outer = uf.find(map.outer_face());
    if uf.find(map.face_of(darts[0])) == outer {
        Chirality::Cw
    } else {
        Chirality::Ccw
    }
}

/// Reverses a directed cycle. Out-degrees are unchanged.
pub fn flip(x: &EdgeOrientation, cycle: &FlipCycle) -> Result<EdgeOrientation, EngineError> {
    if !cycle.directed_in(x) {
        return Err(EngineError::CycleNotDirected);
    }
    let mut y = x.clone();
    for &d in &cycle.darts {
        y.toggle(edge_of(d));
    }
    Ok(y)
}

/// Whether `x` meets the demands on the active edges.
pub fn is_alpha_orientation(map: &PlanarMap, alpha: &[u32], x: &EdgeOrientation, active: Option<&[bool]>) -> bool {
    x.out_degrees(map, active) == alpha
}

/// Connected components of the subgraph made of the given problem edges.
pub(crate) fn components(n: usize, edges: &[(Vertex, Vertex)]) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    (0..n).map(|v| uf.find(v)).collect()
}
