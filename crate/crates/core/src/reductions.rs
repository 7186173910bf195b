//! Counting through reductions: α-orientations as f-factors of the
//! subdivided map, f-factors as perfect matchings of a blown-up bipartite
//! graph, permanents, spanning trees, and 2-factors of `K_{i,i}`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::alpha_engine::{count_problem, EngineError, Problem};
use crate::planar_map::{subdivide, PlanarMap, UnionFind, Vertex};

/// Largest side handled by the inclusion-exclusion permanent.
pub const PERMANENT_CAP: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("{what} of size {size} exceeds the limit {cap}")]
    SizeExceeded { what: &'static str, size: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph is not bipartite")]
    NotBipartite,
    #[error("invalid factor spec: {0}")]
    InvalidSpec(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Bipartite graph on `left` and `right` vertices; edges go from a left
/// index to a right index. Parallel edges count separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    pub left: usize,
    pub right: usize,
    pub edges: Vec<(usize, usize)>,
}

impl BipartiteGraph {
    pub fn new(left: usize, right: usize, edges: Vec<(usize, usize)>) -> Self {
        assert!(
            edges.iter().all(|&(a, b)| a < left && b < right),
            "edge endpoint out of range"
        );
        BipartiteGraph { left, right, edges }
    }

    pub fn complete(a: usize, b: usize) -> Self {
        let edges = (0..a).flat_map(|i| (0..b).map(move |j| (i, j))).collect();
        BipartiteGraph::new(a, b, edges)
    }

    /// Splits an abstract graph along a 2-coloring.
    pub fn from_graph(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, ReductionError> {
        let side = two_coloring(n, edges).ok_or(ReductionError::NotBipartite)?;
        let mut index = vec![0; n];
        let (mut l, mut r) = (0, 0);
        for v in 0..n {
            if side[v] {
                index[v] = r;
                r += 1;
            } else {
                index[v] = l;
                l += 1;
            }
        }
        let e = edges
            .iter()
            .map(|&(u, v)| if side[u] { (index[v], index[u]) } else { (index[u], index[v]) })
            .collect();
        Ok(BipartiteGraph::new(l, r, e))
    }

    /// Entry `(i, j)` is the number of edges between left `i` and right `j`.
    pub fn biadjacency(&self) -> Vec<Vec<u32>> {
        let mut a = vec![vec![0; self.right]; self.left];
        for &(i, j) in &self.edges {
            a[i][j] += 1;
        }
        a
    }

    fn left_adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.left];
        for &(i, j) in &self.edges {
            adj[i].push(j);
        }
        adj
    }
}

/// `false`/`true` sides of a proper 2-coloring, if one exists.
pub fn two_coloring(n: usize, edges: &[(Vertex, Vertex)]) -> Option<Vec<bool>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v) in edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    for start in 0..n {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(false);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let su = side[u].unwrap();
            for &w in &adj[u] {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        stack.push(w);
                    }
                    Some(sw) if sw == su => return None,
                    Some(_) => {}
                }
            }
        }
    }
    Some(side.into_iter().map(Option::unwrap).collect())
}

/// The subdivided map `M'` with `f = α'`: the original vertices keep their
/// demand and every edge vertex gets 1. An edge of `M'` belongs to the
/// factor exactly when it is directed from an original vertex to an edge
/// vertex.
pub fn alpha_to_f_factor(map: &PlanarMap, alpha: &[u32]) -> (PlanarMap, Vec<u32>) {
    subdivide(map, alpha)
}

/// Number of spanning subgraphs with degree `f(v)` at every vertex, by
/// backtracking over the edges.
pub fn f_factor_count(n: usize, edges: &[(Vertex, Vertex)], f: &[u32]) -> Result<u64, ReductionError> {
    if f.len() != n {
        return Err(ReductionError::InvalidSpec(format!("{} values for {n} vertices", f.len())));
    }
    // remaining[v]: edges still needed; left[v]: undecided edges at v.
    let mut left = vec![0u32; n];
    for &(u, v) in edges {
        left[u] += 1;
        left[v] += 1;
    }
    if (0..n).any(|v| f[v] > left[v]) {
        return Ok(0);
    }
    fn go(i: usize, edges: &[(Vertex, Vertex)], need: &mut [u32], left: &mut [u32]) -> u64 {
        if i == edges.len() {
            return need.iter().all(|&x| x == 0) as u64;
        }
        let (u, v) = edges[i];
        left[u] -= 1;
        left[v] -= 1;
        let mut total = 0;
        // Skip the edge.
        if need[u] <= left[u] && need[v] <= left[v] {
            total += go(i + 1, edges, need, left);
        }
        // Take it.
        if need[u] > 0 && need[v] > 0 && u != v {
            need[u] -= 1;
            need[v] -= 1;
            total += go(i + 1, edges, need, left);
            need[u] += 1;
            need[v] += 1;
        }
        left[u] += 1;
        left[v] += 1;
        total
    }
    let mut need = f.to_vec();
    Ok(go(0, edges, &mut need, &mut left))
}

/// The blown-up graph and the number of perfect matchings of it that map to
/// one f-factor.
#[derive(Clone, Debug)]
pub struct Blowup {
    pub graph: BipartiteGraph,
    pub multiplier: BigUint,
}

fn factorial(k: u64) -> BigUint {
    (1..=k).fold(BigUint::one(), |acc, i| acc * i)
}

/// Replaces each vertex `v` by `d(v)` ports, one per incident edge,
/// completely joined to `d(v) - f(v)` new vertices. Perfect matchings of the
/// result are the f-factors, each `∏ (d(v) - f(v))!` times. A vertex with
/// `f(v) = 1` and `d(v) <= 2` is kept as is; its gadget would contribute a
/// factor of 1.
pub fn tutte_blowup(n: usize, edges: &[(Vertex, Vertex)], f: &[u32]) -> Result<Blowup, ReductionError> {
    if f.len() != n {
        return Err(ReductionError::InvalidSpec(format!("{} values for {n} vertices", f.len())));
    }
    let side = two_coloring(n, edges).ok_or(ReductionError::NotBipartite)?;
    let mut deg = vec![0u32; n];
    for &(u, v) in edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    if let Some(v) = (0..n).find(|&v| f[v] > deg[v]) {
        return Err(ReductionError::InvalidSpec(format!(
            "f({v}) = {} exceeds degree {}",
            f[v], deg[v]
        )));
    }
    // New vertices with their side.
    let mut sides: Vec<bool> = Vec::new();
    let keep = |v: Vertex| f[v] == 1 && deg[v] <= 2;
    let mut plain = vec![usize::MAX; n];
    for v in 0..n {
        if keep(v) {
            plain[v] = sides.len();
            sides.push(side[v]);
        }
    }
    let mut new_edges = Vec::new();
    let mut multiplier = BigUint::one();
    // Port of vertex v for its k-th incident edge.
    let mut ports: Vec<Vec<usize>> = vec![Vec::new(); n];
    for v in 0..n {
        if keep(v) {
            continue;
        }
        let spare = (deg[v] - f[v]) as usize;
        multiplier *= factorial(spare as u64);
        let first_port = sides.len();
        for _ in 0..deg[v] {
            ports[v].push(sides.len());
            sides.push(side[v]);
        }
        let first_spare = sides.len();
        for _ in 0..spare {
            sides.push(!side[v]);
        }
        for p in first_port..first_spare {
            for s in first_spare..first_spare + spare {
                new_edges.push((p, s));
            }
        }
    }
    let mut used = vec![0usize; n];
    let mut rep = |v: Vertex| {
        if keep(v) {
            plain[v]
        } else {
            used[v] += 1;
            ports[v][used[v] - 1]
        }
    };
    for &(u, v) in edges {
        let a = rep(u);
        let b = rep(v);
        new_edges.push((a, b));
    }
    let mut index = vec![0; sides.len()];
    let (mut l, mut r) = (0, 0);
    for (i, &s) in sides.iter().enumerate() {
        if s {
            index[i] = r;
            r += 1;
        } else {
            index[i] = l;
            l += 1;
        }
    }
    let oriented = new_edges
        .into_iter()
        .map(|(a, b)| if sides[a] { (index[b], index[a]) } else { (index[a], index[b]) })
        .collect();
    Ok(Blowup {
        graph: BipartiteGraph::new(l, r, oriented),
        multiplier,
    })
}

/// Ryser's inclusion-exclusion over column subsets, visited in Gray-code
/// order inside fixed blocks that run in parallel.
pub fn permanent(a: &[Vec<u32>]) -> Result<BigUint, ReductionError> {
    let n = a.len();
    if a.iter().any(|row| row.len() != n) {
        return Err(ReductionError::InvalidSpec("matrix is not square".into()));
    }
    if n > PERMANENT_CAP {
        return Err(ReductionError::SizeExceeded {
            what: "permanent",
            size: n,
            cap: PERMANENT_CAP,
        });
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    let high = n.saturating_sub(12).min(10);
    let low = n - high;
    let total: BigInt = (0u64..1 << high)
        .into_par_iter()
        .map(|block| ryser_block(a, block << low, low))
        .reduce(BigInt::zero, |x, y| x + y);
    // The empty set contributes zero, so the sign fix is (-1)^n.
    let perm = if n % 2 == 1 { -total } else { total };
    Ok(perm.to_biguint().expect("permanent of a non-negative matrix"))
}

/// Sum over subsets `base | g` for the `2^low` Gray codes `g`, of
/// `(-1)^|S| ∏_i Σ_{j∈S} a_ij`.
fn ryser_block(a: &[Vec<u32>], base: u64, low: usize) -> BigInt {
    let n = a.len();
    let mut sums: Vec<i64> = (0..n)
        .map(|i| (0..n).filter(|&j| base >> j & 1 == 1).map(|j| a[i][j] as i64).sum())
        .collect();
    let mut set = base;
    let mut fast: i128 = 0;
    let mut slow = BigInt::zero();
    let add = |set: u64, sums: &[i64], fast: &mut i128, slow: &mut BigInt| {
        if set == 0 {
            return;
        }
        let neg = set.count_ones() % 2 == 1;
        let mut p: Option<i128> = Some(1);
        for &s in sums {
            p = p.and_then(|p| p.checked_mul(s as i128));
            if p == Some(0) {
                return;
            }
        }
        match p {
            Some(p) => {
                let p = if neg { -p } else { p };
                match fast.checked_add(p) {
                    Some(x) => *fast = x,
                    None => {
                        *slow += BigInt::from(*fast) + BigInt::from(p);
                        *fast = 0;
                    }
                }
            }
            None => {
                let mut big = BigInt::one();
                for &s in sums {
                    big *= s;
                }
                if neg {
                    *slow -= big;
                } else {
                    *slow += big;
                }
            }
        }
    };
    add(set, &sums, &mut fast, &mut slow);
    for g in 1u64..(1u64 << low) {
        let j = g.trailing_zeros() as usize;
        let bit = 1u64 << j;
        let sign = if set & bit == 0 { 1 } else { -1 };
        set ^= bit;
        for i in 0..n {
            sums[i] += sign * a[i][j] as i64;
        }
        add(set, &sums, &mut fast, &mut slow);
    }
    slow + BigInt::from(fast)
}

/// Perfect matchings through the permanent of the biadjacency matrix.
pub fn perfect_matching_count(g: &BipartiteGraph) -> Result<BigUint, ReductionError> {
    if g.left != g.right {
        return Ok(BigUint::zero());
    }
    permanent(&g.biadjacency())
}

/// Perfect matchings by direct backtracking.
pub fn perfect_matching_brute(g: &BipartiteGraph) -> BigUint {
    if g.left != g.right {
        return BigUint::zero();
    }
    let adj = g.left_adjacency();
    fn go(i: usize, adj: &[Vec<usize>], taken: &mut [bool]) -> BigUint {
        if i == adj.len() {
            return BigUint::one();
        }
        let mut total = BigUint::zero();
        for &j in &adj[i] {
            if !taken[j] {
                taken[j] = true;
                total += go(i + 1, adj, taken);
                taken[j] = false;
            }
        }
        total
    }
    go(0, &adj, &mut vec![false; g.right])
}

/// Maximum matching by augmenting paths; `mate[i]` is the right partner of
/// left vertex `i`.
fn maximum_matching(g: &BipartiteGraph) -> Vec<Option<usize>> {
    let adj = g.left_adjacency();
    let mut mate_right: Vec<Option<usize>> = vec![None; g.right];
    fn augment(i: usize, adj: &[Vec<usize>], seen: &mut [bool], mate_right: &mut [Option<usize>]) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if mate_right[j].is_none_or(|k| augment(k, adj, seen, mate_right)) {
                mate_right[j] = Some(i);
                return true;
            }
        }
        false
    }
    for i in 0..g.left {
        let mut seen = vec![false; g.right];
        augment(i, &adj, &mut seen, &mut mate_right);
    }
    let mut mate = vec![None; g.left];
    for (j, m) in mate_right.iter().enumerate() {
        if let Some(i) = m {
            mate[*i] = Some(j);
        }
    }
    mate
}

/// Whether exactly one perfect matching exists: find one, then look for a
/// cycle alternating between non-matching edges (left to right) and
/// matching edges (right to left).
pub fn unique_perfect_matching(left: usize, right: usize, edges: &[(usize, usize)]) -> bool {
    if left != right {
        return false;
    }
    let g = BipartiteGraph::new(left, right, edges.to_vec());
    let mate = maximum_matching(&g);
    if mate.iter().any(Option::is_none) {
        return false;
    }
    let mut mate_right = vec![0; right];
    for (i, m) in mate.iter().enumerate() {
        mate_right[m.unwrap()] = i;
    }
    // Directed graph on left vertices: i -> mate_right[j] for every
    // non-matching edge (i, j). A parallel copy of a matching edge is a
    // 2-cycle by itself.
    let mut seen_matching = vec![false; left];
    let mut succ = vec![Vec::new(); left];
    for &(i, j) in edges {
        if mate[i] == Some(j) && !seen_matching[i] {
            seen_matching[i] = true;
            continue;
        }
        succ[i].push(mate_right[j]);
    }
    // Cycle detection by iterative DFS with three colors.
    let mut state = vec![0u8; left];
    for start in 0..left {
        if state[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        state[start] = 1;
        while let Some(&mut (v, ref mut k)) = stack.last_mut() {
            if *k < succ[v].len() {
                let w = succ[v][*k];
                *k += 1;
                match state[w] {
                    0 => {
                        state[w] = 1;
                        stack.push((w, 0));
                    }
                    1 => return false,
                    _ => {}
                }
            } else {
                state[v] = 2;
                stack.pop();
            }
        }
    }
    true
}

/// Every stage of the chain from α-orientations to perfect matchings.
#[derive(Clone, Debug, Serialize)]
pub struct MatchingChain {
    pub subdivided_vertices: usize,
    pub subdivided_edges: usize,
    pub blowup_left: usize,
    pub blowup_right: usize,
    pub multiplier: String,
    pub matchings: String,
    /// `matchings / multiplier`.
    pub implied_count: String,
    pub divides: bool,
    /// Count from the orientation engine, for comparison.
    pub direct_count: String,
}

pub fn matching_chain(map: &PlanarMap, alpha: &[u32]) -> Result<MatchingChain, ReductionError> {
    let p = Problem::from_map(map, alpha)?;
    let (sub, f) = alpha_to_f_factor(map, alpha);
    let blow = tutte_blowup(sub.vertex_count(), sub.edges(), &f)?;
    let pm = perfect_matching_count(&blow.graph)?;
    let divides = (&pm % &blow.multiplier).is_zero();
    Ok(MatchingChain {
        subdivided_vertices: sub.vertex_count(),
        subdivided_edges: sub.edge_count(),
        blowup_left: blow.graph.left,
        blowup_right: blow.graph.right,
        multiplier: blow.multiplier.to_string(),
        implied_count: (&pm / &blow.multiplier).to_string(),
        matchings: pm.to_string(),
        divides,
        direct_count: count_problem(&p).to_string(),
    })
}

/// Spanning trees by the matrix-tree theorem: fraction-free elimination
/// on the Laplacian with the last row and column removed. Loops are
/// ignored and parallel edges count with multiplicity.
pub fn spanning_tree_count(n: usize, edges: &[(Vertex, Vertex)]) -> Result<BigUint, ReductionError> {
    if n == 0 {
        return Err(ReductionError::Disconnected);
    }
    let mut uf = UnionFind::new(n);
    for &(u, v) in edges {
        uf.union(u, v);
    }
    let root = uf.find(0);
    if (1..n).any(|v| uf.find(v) != root) {
        return Err(ReductionError::Disconnected);
    }
    let size = n - 1;
    let mut a = vec![vec![BigInt::zero(); size]; size];
    for &(u, v) in edges {
        if u == v {
            continue;
        }
        for (x, y) in [(u, v), (v, u)] {
            if x < size {
                a[x][x] += 1;
                if y < size {
                    a[x][y] -= 1;
                }
            }
        }
    }
    Ok(bareiss_determinant(a).abs().to_biguint().expect("non-negative"))
}

/// Determinant by Bareiss elimination with row pivoting.
pub fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = 1;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    if sign < 0 {
        -det
    } else {
        det
    }
}

/// The `k x l` grid graph with vertex `(i, j)` at `(i-1)*l + (j-1)`.
pub fn grid_graph(k: usize, l: usize) -> (usize, Vec<(Vertex, Vertex)>) {
    let mut e = Vec::new();
    for i in 0..k {
        for j in 0..l {
            if j + 1 < l {
                e.push((i * l + j, i * l + j + 1));
            }
            if i + 1 < k {
                e.push((i * l + j, (i + 1) * l + j));
            }
        }
    }
    (k * l, e)
}

/// `G_{2k-1,2l-1}` without its corner `(2k-1, 1)`, vertices renumbered.
pub fn grid_minus_corner(k: usize, l: usize) -> (usize, Vec<(Vertex, Vertex)>) {
    let (rows, cols) = (2 * k - 1, 2 * l - 1);
    let (n, edges) = grid_graph(rows, cols);
    let corner = (rows - 1) * cols;
    let re = |v: Vertex| if v > corner { v - 1 } else { v };
    let kept = edges
        .into_iter()
        .filter(|&(u, v)| u != corner && v != corner)
        .map(|(u, v)| (re(u), re(v)))
        .collect();
    (n - 1, kept)
}

/// `∏_{i=1}^{k} ∏_{j=1}^{l} (4 - 2cos(πi/k) - 2cos(πj/l))`, as printed.
pub fn grid_matching_product(k: usize, l: usize) -> f64 {
    let mut p = 1.0;
    for i in 1..=k {
        for j in 1..=l {
            let a = std::f64::consts::PI * i as f64 / k as f64;
            let b = std::f64::consts::PI * j as f64 / l as f64;
            p *= 4.0 - 2.0 * a.cos() - 2.0 * b.cos();
        }
    }
    p
}

/// The printed product next to the two exact counts it is meant to give.
#[derive(Clone, Debug, Serialize)]
pub struct GridProductReport {
    pub k: usize,
    pub l: usize,
    pub product: f64,
    pub spanning_trees: String,
    pub matchings: String,
    /// Spanning trees of `G_{k,l}` equal matchings of the cornered grid.
    pub exact_agree: bool,
    /// The printed product rounds to the spanning tree count.
    pub product_agrees: bool,
}

pub fn grid_product_report(k: usize, l: usize) -> Result<GridProductReport, ReductionError> {
    let (n, e) = grid_graph(k, l);
    let trees = spanning_tree_count(n, &e)?;
    let (cn, ce) = grid_minus_corner(k, l);
    let pm = perfect_matching_count(&BipartiteGraph::from_graph(cn, &ce)?)?;
    let product = grid_matching_product(k, l);
    let product_agrees = trees.to_f64().is_some_and(|t| (product - t).abs() < 0.5);
    Ok(GridProductReport {
        k,
        l,
        product,
        exact_agree: trees == pm,
        spanning_trees: trees.to_string(),
        matchings: pm.to_string(),
        product_agrees,
    })
}

/// 2-factors of `K_{i,i}`: all of them, those through the edge `e0 = (0, 0)`
/// and those avoiding it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoFactorStats {
    pub i: usize,
    pub c: u64,
    pub a: u64,
    pub b: u64,
}

impl TwoFactorStats {
    /// `a = 2c/i` and `b = (1 - 2/i)c`, checked in integers.
    pub fn identities_hold(&self) -> bool {
        let (i, c, a, b) = (self.i as u64, self.c, self.a, self.b);
        a * i == 2 * c && b * i == (i - 2) * c && a + b == c
    }

    /// `a/b = 2/(i-2)`, checked in integers.
    pub fn ratio_holds(&self) -> bool {
        self.a * (self.i as u64 - 2) == 2 * self.b
    }
}

pub const TWO_FACTOR_CAP: usize = 5;

pub fn two_factor_stats(i: usize) -> Result<TwoFactorStats, ReductionError> {
    if i > TWO_FACTOR_CAP {
        return Err(ReductionError::SizeExceeded {
            what: "K_{i,i}",
            size: i,
            cap: TWO_FACTOR_CAP,
        });
    }
    if i < 3 {
        return Err(ReductionError::InvalidSpec(format!("i = {i}; need i >= 3")));
    }
    // Each left vertex picks two right neighbours; right degrees capped at 2.
    fn go(v: usize, i: usize, right: &mut [u8], with_e0: bool, out: &mut (u64, u64)) {
        if v == i {
            if right.iter().all(|&d| d == 2) {
                out.0 += 1;
                if with_e0 {
                    out.1 += 1;
                }
            }
            return;
        }
        for x in 0..i {
            for y in x + 1..i {
                if right[x] < 2 && right[y] < 2 {
                    right[x] += 1;
                    right[y] += 1;
                    go(v + 1, i, right, with_e0 || (v == 0 && x == 0), out);
                    right[x] -= 1;
                    right[y] -= 1;
                }
            }
        }
    }
    let mut out = (0, 0);
    go(0, i, &mut vec![0; i], false, &mut out);
    Ok(TwoFactorStats {
        i,
        c: out.0,
        a: out.1,
        b: out.0 - out.1,
    })
}
