//! Max-flow (Dinic) between edges and vertex demand slots.

use std::collections::VecDeque;

use super::Problem;

struct Arc {
    to: usize,
    cap: u32,
}

struct Dinic {
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    level: Vec<i32>,
    iter: Vec<usize>,
}

impl Dinic {
    fn new(n: usize) -> Self {
        Dinic {
            arcs: Vec::new(),
            out: vec![Vec::new(); n],
            level: vec![0; n],
            iter: vec![0; n],
        }
    }

    fn add(&mut self, u: usize, v: usize, cap: u32) -> usize {
        let id = self.arcs.len();
        self.arcs.push(Arc { to: v, cap });
        self.out[u].push(id);
        self.arcs.push(Arc { to: u, cap: 0 });
        self.out[v].push(id + 1);
        id
    }

    fn bfs(&mut self, s: usize, t: usize) -> bool {
        self.level.iter_mut().for_each(|l| *l = -1);
        self.level[s] = 0;
        let mut q = VecDeque::from([s]);
        while let Some(u) = q.pop_front() {
            for &a in &self.out[u] {
                let v = self.arcs[a].to;
                if self.arcs[a].cap > 0 && self.level[v] < 0 {
                    self.level[v] = self.level[u] + 1;
                    q.push_back(v);
                }
            }
        }
        self.level[t] >= 0
    }

    fn dfs(&mut self, u: usize, t: usize, f: u32) -> u32 {
        if u == t {
            return f;
        }
        while self.iter[u] < self.out[u].len() {
            let a = self.out[u][self.iter[u]];
            let v = self.arcs[a].to;
            if self.arcs[a].cap > 0 && self.level[v] == self.level[u] + 1 {
                let d = self.dfs(v, t, f.min(self.arcs[a].cap));
                if d > 0 {
                    self.arcs[a].cap -= d;
                    self.arcs[a ^ 1].cap += d;
                    return d;
                }
            }
            self.iter[u] += 1;
        }
        0
    }

    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let mut total = 0;
        while self.bfs(s, t) {
            self.iter.iter_mut().for_each(|i| *i = 0);
            loop {
                let f = self.dfs(s, t, u32::MAX);
                if f == 0 {
                    break;
                }
                total += f as u64;
            }
        }
        total
    }
}

/// An orientation meeting every demand, if one exists. All demands must be
/// set. Each edge sends one unit to the endpoint that becomes its tail.
pub(super) fn orient(p: &Problem) -> Option<Vec<bool>> {
    let m = p.m();
    let (src, sink) = (m + p.n, m + p.n + 1);
    let mut g = Dinic::new(m + p.n + 2);
    let mut to_u = Vec::with_capacity(m);
    for (i, &(u, v)) in p.edges.iter().enumerate() {
        g.add(src, i, 1);
        to_u.push(g.add(i, m + u, 1));
        g.add(i, m + v, 1);
    }
    for v in 0..p.n {
        let a = p.demand[v].expect("all demands set");
        if a > 0 {
            g.add(m + v, sink, a);
        }
    }
    if g.max_flow(src, sink) != m as u64 {
        return None;
    }
    Some(to_u.iter().map(|&a| g.arcs[a].cap == 0).collect())
}
