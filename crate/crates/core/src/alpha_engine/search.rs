//! Depth-first search with unit propagation.
//!
//! Whenever a vertex has already reached its demand, its undecided edges are
//! forced inward; whenever it needs all of its undecided edges, they are
//! forced outward. Branching follows a breadth-first edge order.

use std::collections::VecDeque;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::Problem;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Visit {
    Continue,
    Stop,
}

const UNSET: i8 = -1;

#[derive(Clone)]
pub(super) struct Search<'a> {
    p: &'a Problem,
    inc: Vec<Vec<usize>>,
    order: Vec<usize>,
    dir: Vec<i8>,
    out: Vec<u32>,
    und: Vec<u32>,
    trail: Vec<usize>,
    queue: Vec<usize>,
    pub(super) nodes: u64,
}

/// Edges in breadth-first order from vertex 0 (then from each further
/// unvisited vertex), each edge listed when its first endpoint is scanned.
pub(super) fn bfs_edge_order(p: &Problem, inc: &[Vec<usize>]) -> Vec<usize> {
    let mut seen_v = vec![false; p.n];
    let mut seen_e = vec![false; p.m()];
    let mut order = Vec::with_capacity(p.m());
    for root in 0..p.n {
        if seen_v[root] {
            continue;
        }
        seen_v[root] = true;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &i in &inc[u] {
                if !seen_e[i] {
                    seen_e[i] = true;
                    order.push(i);
                }
                let (a, b) = p.edges[i];
                let w = if a == u { b } else { a };
                if !seen_v[w] {
                    seen_v[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

impl<'a> Search<'a> {
    pub(super) fn new(p: &'a Problem) -> Self {
        let inc = p.incidence();
        let order = bfs_edge_order(p, &inc);
        let und = inc.iter().map(|l| l.len() as u32).collect();
        Search {
            p,
            inc,
            order,
            dir: vec![UNSET; p.m()],
            out: vec![0; p.n],
            und,
            trail: Vec::new(),
            queue: Vec::new(),
            nodes: 0,
        }
    }

    fn assign(&mut self, i: usize, fwd: bool) {
        let (u, v) = self.p.edges[i];
        self.dir[i] = fwd as i8;
        self.out[if fwd { u } else { v }] += 1;
        self.und[u] -= 1;
        self.und[v] -= 1;
        self.trail.push(i);
        self.queue.push(u);
        self.queue.push(v);
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().unwrap();
            let (u, v) = self.p.edges[i];
            let fwd = self.dir[i] == 1;
            self.out[if fwd { u } else { v }] -= 1;
            self.und[u] += 1;
            self.und[v] += 1;
            self.dir[i] = UNSET;
        }
    }

    /// Drains the queue; false on a violated demand.
    fn propagate(&mut self) -> bool {
        while let Some(v) = self.queue.pop() {
            let Some(a) = self.p.demand[v] else { continue };
            let (out, und) = (self.out[v], self.und[v]);
            if out > a || out + und < a {
                self.queue.clear();
                return false;
            }
            if und == 0 {
                continue;
            }
            // Either every undecided edge points in, or every one points out.
            let outward = out + und == a;
            if !outward && out != a {
                continue;
            }
            for k in 0..self.inc[v].len() {
                let i = self.inc[v][k];
                if self.dir[i] == UNSET {
                    let tail_is_v = outward;
                    let (x, _) = self.p.edges[i];
                    self.assign(i, (x == v) == tail_is_v);
                }
            }
        }
        true
    }

    /// Applies fixed decisions and propagates; false on conflict.
    pub(super) fn start(&mut self, fixed: &[(usize, bool)]) -> bool {
        self.queue.extend(0..self.p.n);
        if !self.propagate() {
            return false;
        }
        for &(i, fwd) in fixed {
            if self.dir[i] != UNSET {
                if (self.dir[i] == 1) != fwd {
                    return false;
                }
                continue;
            }
            self.assign(i, fwd);
            if !self.propagate() {
                return false;
            }
        }
        true
    }

    fn leaf(&self) -> Vec<bool> {
        self.dir.iter().map(|&d| d == 1).collect()
    }

    fn next_branch(&self, mut pos: usize) -> Option<(usize, usize)> {
        while pos < self.order.len() {
            let i = self.order[pos];
            if self.dir[i] == UNSET {
                return Some((pos, i));
            }
            pos += 1;
        }
        None
    }

    fn dfs<F: FnMut(&[bool]) -> Visit>(&mut self, pos: usize, visit: &mut F) -> Visit {
        self.nodes += 1;
        let Some((pos, i)) = self.next_branch(pos) else {
            return visit(&self.leaf());
        };
        for fwd in [false, true] {
            let mark = self.trail.len();
            self.assign(i, fwd);
            if self.propagate() && self.dfs(pos + 1, visit) == Visit::Stop {
                self.undo_to(mark);
                return Visit::Stop;
            }
            self.undo_to(mark);
        }
        Visit::Continue
    }

    /// Visits every solution.
    pub(super) fn run<F: FnMut(&[bool]) -> Visit>(mut self, visit: &mut F) -> u64 {
        if self.start(&[]) {
            self.dfs(0, visit);
        }
        self.nodes
    }

    fn count_from(&mut self, pos: usize) -> u64 {
        self.nodes += 1;
        let Some((pos, i)) = self.next_branch(pos) else {
            return 1;
        };
        let mut total = 0;
        for fwd in [false, true] {
            let mark = self.trail.len();
            self.assign(i, fwd);
            if self.propagate() {
                total += self.count_from(pos + 1);
            }
            self.undo_to(mark);
        }
        total
    }

    /// Branch decisions reaching `depth` levels of the tree, in tree order.
    /// Solutions found above that depth are counted directly.
    fn split(&mut self, pos: usize, depth: usize, prefix: &mut Vec<(usize, bool)>, tasks: &mut Vec<Vec<(usize, bool)>>) -> u64 {
        self.nodes += 1;
        let Some((pos, i)) = self.next_branch(pos) else {
            return 1;
        };
        if depth == 0 {
            tasks.push(prefix.clone());
            return 0;
        }
        let mut leaves = 0;
        for fwd in [false, true] {
            let mark = self.trail.len();
            self.assign(i, fwd);
            if self.propagate() {
                prefix.push((i, fwd));
                leaves += self.split(pos + 1, depth - 1, prefix, tasks);
                prefix.pop();
            }
            self.undo_to(mark);
        }
        leaves
    }
}

/// Counts solutions one leaf at a time. With several threads the tree is
/// cut at a fixed depth and the subtrees are counted independently; the
/// total does not depend on the thread count.
pub(super) fn count(p: &Problem, threads: usize) -> (BigUint, u64) {
    let mut s = Search::new(p);
    if !s.start(&[]) {
        return (BigUint::from(0u32), s.nodes);
    }
    if threads <= 1 {
        let c = s.count_from(0);
        return (BigUint::from(c), s.nodes);
    }
    let depth = (usize::BITS - (threads * 8).leading_zeros()) as usize;
    let mut tasks = Vec::new();
    let direct = s.split(0, depth, &mut Vec::new(), &mut tasks);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool");
    let parts: Vec<(u64, u64)> = pool.install(|| {
        tasks
            .par_iter()
            .map(|fixed| {
                let mut t = Search::new(p);
                if !t.start(fixed) {
                    return (0, t.nodes);
                }
                let c = t.count_from(0);
                (c, t.nodes)
            })
            .collect()
    });
    let total: u64 = direct + parts.iter().map(|x| x.0).sum::<u64>();
    let nodes = s.nodes + parts.iter().map(|x| x.1).sum::<u64>();
    (BigUint::from(total), nodes)
}
