//! Exact counting by dynamic programming over a vertex frontier.
//!
//! Vertices are introduced one at a time; introducing a vertex decides the
//! edges to previously introduced vertices. The state is the out-count of
//! every introduced vertex that still has undecided edges. A vertex leaves
//! the frontier once all its edges are decided and its count matches.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use num_bigint::BigUint;

use super::Problem;

/// Breadth-first vertex order from `root`, then from any unvisited vertex.
fn bfs_order(p: &Problem, adj: &[Vec<usize>], root: usize) -> Vec<usize> {
    let mut seen = vec![false; p.n];
    let mut order = Vec::with_capacity(p.n);
    for r in std::iter::once(root).chain(0..p.n) {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let mut q = VecDeque::from([r]);
        while let Some(u) = q.pop_front() {
            order.push(u);
            for &w in &adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
    }
    order
}

/// Largest number of constrained vertices alive at once under `order`.
fn max_frontier(p: &Problem, adj: &[Vec<usize>], order: &[usize]) -> usize {
    let mut pos = vec![0; p.n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    // A vertex is alive from its introduction until its last neighbour
    // is introduced.
    let mut delta = vec![0i64; p.n + 1];
    for &v in order {
        if p.demand[v].is_none() {
            continue;
        }
        let last = adj[v].iter().map(|&w| pos[w]).max().unwrap_or(0).max(pos[v]);
        if last > pos[v] {
            delta[pos[v]] += 1;
            delta[last] -= 1;
        }
    }
    let (mut cur, mut best) = (0i64, 0i64);
    for d in delta {
        cur += d;
        best = best.max(cur);
    }
    best as usize
}

fn choose_order(p: &Problem) -> Vec<usize> {
    let mut adj = vec![Vec::new(); p.n];
    for &(u, v) in &p.edges {
        adj[u].push(v);
        adj[v].push(u);
    }
    let mut roots = vec![0];
    if p.n > 0 {
        let first = bfs_order(p, &adj, 0);
        roots.push(*first.last().unwrap());
        let far = bfs_order(p, &adj, *first.last().unwrap());
        roots.push(*far.last().unwrap());
        let step = (p.n / 8).max(1);
        roots.extend((0..p.n).step_by(step));
        roots.push(p.n - 1);
    }
    roots.sort_unstable();
    roots.dedup();
    roots
        .into_iter()
        .filter(|&r| r < p.n)
        .map(|r| {
            let o = bfs_order(p, &adj, r);
            (max_frontier(p, &adj, &o), r, o)
        })
        .min_by_key(|(w, r, _)| (*w, *r))
        .map(|(_, _, o)| o)
        .unwrap_or_default()
}

trait Acc: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    /// `self += other`, false on overflow.
    fn add_checked(&mut self, other: &Self) -> bool;
    fn into_big(self) -> BigUint;
}

impl Acc for u128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add_checked(&mut self, other: &Self) -> bool {
        match self.checked_add(*other) {
            Some(s) => {
                *self = s;
                true
            }
            None => false,
        }
    }
    fn into_big(self) -> BigUint {
        BigUint::from(self)
    }
}

impl Acc for BigUint {
    fn zero() -> Self {
        BigUint::from(0u32)
    }
    fn one() -> Self {
        BigUint::from(1u32)
    }
    fn add_checked(&mut self, other: &Self) -> bool {
        *self += other;
        true
    }
    fn into_big(self) -> BigUint {
        self
    }
}

fn insert<K: Hash + Eq, A: Acc>(map: &mut HashMap<K, A>, key: K, val: &A) -> bool {
    match map.get_mut(&key) {
        Some(x) => x.add_checked(val),
        None => {
            map.insert(key, val.clone());
            true
        }
    }
}

/// `None` if the accumulator overflowed.
fn run<A: Acc>(p: &Problem, order: &[usize]) -> Option<(A, u64)> {
    let n = p.n;
    let mut pos = vec![0; n];
    for (k, &v) in order.iter().enumerate() {
        pos[v] = k;
    }
    let inc = p.incidence();
    let mut remaining: Vec<u32> = inc.iter().map(|l| l.len() as u32).collect();
    let mut slot = vec![usize::MAX; n];
    let mut frontier: Vec<usize> = Vec::new();
    let mut states: HashMap<Vec<u8>, A> = HashMap::from([(Vec::new(), A::one())]);
    let mut nodes = 0u64;

    for &w in order {
        if let Some(a) = p.demand[w] {
            if a as usize > inc[w].len() {
                return Some((A::zero(), nodes));
            }
            slot[w] = frontier.len();
            frontier.push(w);
            let mut next = HashMap::with_capacity(states.len());
            for (k, c) in states.drain() {
                let mut k = k;
                k.push(0);
                next.insert(k, c);
            }
            states = next;
        }
        // Decide the edges from w back to earlier vertices.
        for &i in &inc[w] {
            let (u, v) = p.edges[i];
            let x = if u == w { v } else { u };
            if pos[x] > pos[w] {
                continue;
            }
            remaining[w] -= 1;
            remaining[x] -= 1;
            let mut next: HashMap<Vec<u8>, A> = HashMap::with_capacity(states.len() * 2);
            for (k, c) in &states {
                // Forward means u is the tail.
                for tail in [u, v] {
                    let mut key = k.clone();
                    let mut ok = true;
                    if slot[tail] != usize::MAX {
                        let s = slot[tail];
                        key[s] += 1;
                        let a = p.demand[tail].unwrap();
                        if key[s] as u32 > a {
                            ok = false;
                        }
                    }
                    for y in [u, v] {
                        if slot[y] != usize::MAX {
                            let a = p.demand[y].unwrap();
                            if (key[slot[y]] as u32) + remaining[y] < a {
                                ok = false;
                            }
                        }
                    }
                    if ok && !insert(&mut next, key, c) {
                        return None;
                    }
                }
            }
            states = next;
            nodes += states.len() as u64;
            if states.is_empty() {
                return Some((A::zero(), nodes));
            }
        }
        // Retire every constrained vertex with no undecided edges left.
        let done: Vec<usize> = frontier.iter().copied().filter(|&y| remaining[y] == 0).collect();
        if !done.is_empty() {
            let keep: Vec<usize> = frontier.iter().copied().filter(|&y| remaining[y] != 0).collect();
            let mut next: HashMap<Vec<u8>, A> = HashMap::with_capacity(states.len());
            for (k, c) in &states {
                if done.iter().any(|&y| k[slot[y]] as u32 != p.demand[y].unwrap()) {
                    continue;
                }
                let key: Vec<u8> = keep.iter().map(|&y| k[slot[y]]).collect();
                if !insert(&mut next, key, c) {
                    return None;
                }
            }
            for &y in &done {
                slot[y] = usize::MAX;
            }
            for (s, &y) in keep.iter().enumerate() {
                slot[y] = s;
            }
            frontier = keep;
            states = next;
        }
    }
    let total = states.remove(&Vec::new());
    Some((total.unwrap_or_else(A::zero), nodes))
}

/// Count and the number of frontier states created along the way.
pub(super) fn count(p: &Problem) -> (BigUint, u64) {
    if p.degrees().iter().any(|&d| d > u8::MAX as usize) {
        return super::search::count(p, 1);
    }
    let order = choose_order(p);
    if let Some((c, nodes)) = run::<u128>(p, &order) {
        return (c.into_big(), nodes);
    }
    let (c, nodes) = run::<BigUint>(p, &order).expect("big integers do not overflow");
    (c, nodes)
}
