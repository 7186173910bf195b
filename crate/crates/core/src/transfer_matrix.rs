//! Transfer matrices for alternating Eulerian orientations of torus grids.
//!
//! A column state records the horizontal edges of one edge column of
//! `G^T_{2k,2l}`, bit `r` set when the edge in row `r` points right; only
//! states with `k` right edges occur. Rows are numbered top to bottom and
//! the vertical edge `r` joins rows `r` and `r + 1 mod 2k`, so edge `2k-1`
//! is the wrap-around edge. It points up when it runs from row 0 to row
//! `2k-1`.

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

/// Largest column height.
pub const MAX_TWO_K: usize = 12;

/// `8√3/9`: growth per vertex of Eulerian orientations of the square grid.
pub const LIEB_CONSTANT: f64 = 1.539_600_717_8;
/// `3√3/2`: growth per vertex of Eulerian orientations of the triangular grid.
pub const BAXTER_CONSTANT: f64 = 2.598_076_211_4;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TransferError {
    #[error("column height {0} must be even and between 2 and {max}", max = MAX_TWO_K)]
    SizeExceeded(usize),
    #[error("matrix is not primitive")]
    NotPrimitive,
    #[error("no convergence after {iterations} iterations (interval [{lower}, {upper}])")]
    NoConvergence { iterations: usize, lower: f64, upper: f64 },
}

/// Square non-negative integer matrix in compressed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub dim: usize,
    /// `(column, value)` pairs of each row, columns increasing.
    pub rows: Vec<Vec<(usize, u64)>>,
}

impl SparseMatrix {
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.rows[i]
            .binary_search_by_key(&j, |&(c, _)| c)
            .map(|p| self.rows[i][p].1)
            .unwrap_or(0)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut rows = vec![Vec::new(); self.dim];
        for (i, row) in self.rows.iter().enumerate() {
            for &(j, v) in row {
                rows[j].push((i, v));
            }
        }
        SparseMatrix { dim: self.dim, rows }
    }

    pub fn multiply(&self, other: &SparseMatrix) -> SparseMatrix {
        let rows = (0..self.dim)
            .into_par_iter()
            .map(|i| {
                let mut acc = vec![0u64; self.dim];
                for &(k, a) in &self.rows[i] {
                    for &(j, b) in &other.rows[k] {
                        acc[j] += a * b;
                    }
                }
                acc.into_iter().enumerate().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        SparseMatrix { dim: self.dim, rows }
    }

    fn apply_f64(&self, v: &[f64], out: &mut [f64]) {
        for (i, row) in self.rows.iter().enumerate() {
            out[i] = row.iter().map(|&(j, a)| a as f64 * v[j]).sum();
        }
    }

    fn apply_big(&self, v: &[BigUint]) -> Vec<BigUint> {
        self.rows
            .iter()
            .map(|row| row.iter().fold(BigUint::zero(), |acc, &(j, a)| acc + &v[j] * a))
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.transpose() == *self
    }
}

/// `T_U`, `T_D` and `T = T_U T_D` for columns of height `2k`.
#[derive(Clone, Debug)]
pub struct Transfer {
    pub two_k: usize,
    /// States in increasing order of their bit patterns.
    pub states: Vec<u32>,
    pub up: SparseMatrix,
    pub down: SparseMatrix,
    pub t: SparseMatrix,
}

impl Transfer {
    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, x: u32) -> Option<usize> {
        self.states.binary_search(&x).ok()
    }

    /// Index of the alternating state with rows `0, 2, 4, ...` pointing right.
    pub fn alternating_index(&self) -> usize {
        self.state_index(alternating_state(self.two_k)).expect("alternating state has k right edges")
    }
}

/// Rows `0, 2, 4, ...` right.
pub fn alternating_state(two_k: usize) -> u32 {
    (0..two_k).filter(|r| r % 2 == 0).fold(0, |x, r| x | 1 << r)
}

/// Whether the column between states `x1` (left) and `x2` (right) can be
/// oriented with out-degree 2 everywhere and the wrap edge pointing up
/// (`up = true`) or down. With the wrap edge fixed, each vertex in turn
/// forces the next vertical edge, so there is at most one way.
pub fn column_ok(two_k: usize, x1: u32, x2: u32, up: bool) -> bool {
    let need = |r: usize| -> i32 {
        let from_left = (x1 >> r & 1 == 0) as i32;
        let to_right = (x2 >> r & 1) as i32;
        2 - from_left - to_right
    };
    // down[r]: vertical edge r runs from row r to row r+1. Row r sends out
    // edge r when it points down and edge r-1 when that one points up.
    let wrap_down = !up;
    let mut above_down = wrap_down;
    for r in 0..two_k - 1 {
        let down = need(r) - (!above_down) as i32;
        match down {
            0 | 1 => above_down = down == 1,
            _ => return false,
        }
    }
    need(two_k - 1) - (!above_down) as i32 == wrap_down as i32
}

pub fn build_transfer(two_k: usize) -> Result<Transfer, TransferError> {
    if two_k < 2 || two_k % 2 == 1 || two_k > MAX_TWO_K {
        return Err(TransferError::SizeExceeded(two_k));
    }
    let k = two_k / 2;
    let states: Vec<u32> = (0u32..1 << two_k).filter(|x| x.count_ones() as usize == k).collect();
    let build = |up: bool| {
        let rows = states
            .par_iter()
            .map(|&x1| {
                states
                    .iter()
                    .enumerate()
                    .filter(|&(_, &x2)| column_ok(two_k, x1, x2, up))
                    .map(|(j, _)| (j, 1))
                    .collect()
            })
            .collect();
        SparseMatrix { dim: states.len(), rows }
    };
    let up = build(true);
    let down = build(false);
    let t = up.multiply(&down);
    Ok(Transfer {
        two_k,
        states,
        up,
        down,
        t,
    })
}

/// Whether some power of the matrix is entrywise positive, by repeated
/// boolean squaring.
pub fn is_primitive(m: &SparseMatrix) -> bool {
    let n = m.dim;
    let words = n.div_ceil(64);
    let mut b: Vec<Vec<u64>> = m
        .rows
        .iter()
        .map(|row| {
            let mut bits = vec![0u64; words];
            for &(j, v) in row {
                if v > 0 {
                    bits[j / 64] |= 1 << (j % 64);
                }
            }
            bits
        })
        .collect();
    let full = |b: &[Vec<u64>]| {
        b.iter().all(|row| {
            (0..n).all(|j| row[j / 64] >> (j % 64) & 1 == 1)
        })
    };
    // Squaring t times reaches the power 2^t; a primitive n x n matrix has
    // a positive power at most (n-1)^2 + 1.
    let mut steps = 0;
    let limit = 2 * (usize::BITS - n.leading_zeros()) as usize + 2;
    while !full(&b) {
        if steps > limit {
            return false;
        }
        let next: Vec<Vec<u64>> = (0..n)
            .into_par_iter()
            .map(|i| {
                let mut row = vec![0u64; words];
                for k in 0..n {
                    if b[i][k / 64] >> (k % 64) & 1 == 1 {
                        for w in 0..words {
                            row[w] |= b[k][w];
                        }
                    }
                }
                row
            })
            .collect();
        b = next;
        steps += 1;
    }
    true
}

/// Dominant eigenvalue with a certified enclosure.
#[derive(Clone, Debug, Serialize)]
pub struct Eigen {
    pub lambda: f64,
    /// `min_i (Tv)_i / v_i`.
    pub lower: f64,
    /// `max_i (Tv)_i / v_i`.
    pub upper: f64,
    pub iterations: usize,
    /// `upper - lower` after each iteration.
    #[serde(skip)]
    pub widths: Vec<f64>,
}

pub const MAX_ITERATIONS: usize = 200_000;

/// Power iteration from the all-ones vector until the Collatz-Wielandt
/// interval has relative width below `tol`; the Rayleigh quotient is the
/// estimate.
pub fn dominant_eigenvalue(m: &SparseMatrix, tol: f64) -> Result<Eigen, TransferError> {
    if !is_primitive(m) {
        return Err(TransferError::NotPrimitive);
    }
    let n = m.dim;
    let mut v = vec![1.0; n];
    let mut w = vec![0.0; n];
    let mut widths = Vec::new();
    let (mut lower, mut upper) = (0.0, f64::INFINITY);
    for it in 1..=MAX_ITERATIONS {
        m.apply_f64(&v, &mut w);
        let mut lo = f64::INFINITY;
        let mut hi: f64 = 0.0;
        for i in 0..n {
            let r = w[i] / v[i];
            lo = lo.min(r);
            hi = hi.max(r);
        }
        lower = lo;
        upper = hi;
        widths.push(hi - lo);
        let vv: f64 = v.iter().map(|x| x * x).sum();
        let vw: f64 = v.iter().zip(&w).map(|(a, b)| a * b).sum();
        let rayleigh = vw / vv;
        if hi - lo <= tol * lo {
            return Ok(Eigen {
                lambda: rayleigh.clamp(lo, hi),
                lower: lo,
                upper: hi,
                iterations: it,
                widths,
            });
        }
        let norm = w.iter().cloned().fold(0.0, f64::max);
        for i in 0..n {
            v[i] = w[i] / norm;
        }
    }
    Err(TransferError::NoConvergence {
        iterations: MAX_ITERATIONS,
        lower,
        upper,
    })
}

/// `Λ_{2k}` of `T = T_U T_D`.
pub fn lambda(two_k: usize, tol: f64) -> Result<Eigen, TransferError> {
    dominant_eigenvalue(&build_transfer(two_k)?.t, tol)
}

/// `(Λ_a / Λ_b)^{1/(2(a-b))}`: `a - b` extra rows over the two columns of
/// `T` add `2(a - b)` vertices. Reported with its certified interval.
#[derive(Clone, Debug, Serialize)]
pub struct RatioBound {
    pub a: usize,
    pub b: usize,
    pub value: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn eigen_ratio(a: usize, b: usize, tol: f64) -> Result<RatioBound, TransferError> {
    let ea = lambda(a, tol)?;
    let eb = lambda(b, tol)?;
    let p = 1.0 / (2.0 * (a as f64 - b as f64));
    Ok(RatioBound {
        a,
        b,
        value: (ea.lambda / eb.lambda).powf(p),
        lower: (ea.lower / eb.upper).powf(p),
        upper: (ea.upper / eb.lower).powf(p),
    })
}

/// `⟨e_A, T^l e_A⟩`: alternating Eulerian orientations of `G^T_{2k,2l}`.
pub fn alternating_count(two_k: usize, l: usize) -> Result<BigUint, TransferError> {
    let tr = build_transfer(two_k)?;
    let a = tr.alternating_index();
    let mut v = vec![BigUint::zero(); tr.dim()];
    v[a] = BigUint::from(1u32);
    for _ in 0..l {
        v = tr.t.apply_big(&v);
    }
    Ok(v[a].clone())
}

/// Alternating Eulerian orientations of the `rows x cols` torus grid by
/// backtracking over the free edges. The horizontal wrap edges (between
/// the last and the first column) follow the alternating state, and the
/// vertical wrap edge of column `c` points up for even `c` and down for odd.
pub fn alternating_count_brute(rows: usize, cols: usize) -> u64 {
    let n = rows * cols;
    let at = |r: usize, c: usize| r * cols + c;
    // Edges as (from, to) for the forward direction: right or down.
    let mut edges = Vec::new();
    let mut fixed: Vec<Option<bool>> = Vec::new();
    let alt = alternating_state(rows);
    for r in 0..rows {
        for c in 0..cols {
            edges.push((at(r, c), at(r, (c + 1) % cols)));
            fixed.push((c == cols - 1).then_some(alt >> r & 1 == 1));
            edges.push((at(r, c), at((r + 1) % rows, c)));
            // Forward on the wrap edge runs from the last row to row 0: down.
            fixed.push((r == rows - 1).then_some(c % 2 == 1));
        }
    }
    let mut out = vec![0u32; n];
    let mut open = vec![0u32; n];
    let mut free = Vec::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        match fixed[i] {
            Some(true) => out[u] += 1,
            Some(false) => out[v] += 1,
            None => {
                open[u] += 1;
                open[v] += 1;
                free.push(i);
            }
        }
    }
    fn go(i: usize, free: &[usize], edges: &[(usize, usize)], out: &mut [u32], open: &mut [u32]) -> u64 {
        if i == free.len() {
            return out.iter().all(|&o| o == 2) as u64;
        }
        let (u, v) = edges[free[i]];
        open[u] -= 1;
        open[v] -= 1;
        let mut total = 0;
        for (tail, head) in [(u, v), (v, u)] {
            out[tail] += 1;
            if out[tail] <= 2 && out[head] + open[head] >= 2 && out[tail] + open[tail] >= 2 {
                total += go(i + 1, free, edges, out, open);
            }
            out[tail] -= 1;
        }
        open[u] += 1;
        open[v] += 1;
        total
    }
    go(0, &free, &edges, &mut out, &mut open)
}

/// Per-vertex rate `Λ_h^{1/(2h)}` for each column height `h`; one step of
/// `T` adds two columns, that is `2h` vertices.
pub fn growth_trend(heights: &[usize], tol: f64) -> Result<Vec<(usize, f64)>, TransferError> {
    heights
        .iter()
        .map(|&h| Ok((h, lambda(h, tol)?.lambda.powf(1.0 / (2 * h) as f64))))
        .collect()
}

/// Per-vertex rate of a count on `vertices` vertices.
pub fn per_vertex_rate(count: &BigUint, vertices: usize) -> f64 {
    let bits = count.bits() as f64;
    let log2 = if bits > 60.0 {
        let shift = bits as u64 - 53;
        (count >> shift).to_f64().unwrap().log2() + shift as f64
    } else {
        count.to_f64().unwrap().log2()
    };
    (log2 / vertices as f64).exp2()
}
