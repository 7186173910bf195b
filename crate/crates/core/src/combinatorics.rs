//! Exact sequences (Fibonacci, Catalan, Baxter), sparse sequences, the
//! crossover recursion, and the closed-form upper bounds on orientation
//! counts, compared exactly against measured counts.

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::planar_map::{simple_adjacency, PlanarMap, Surface, UnionFind, Vertex};
use crate::transfer_matrix::{BAXTER_CONSTANT, LIEB_CONSTANT};

/// Memoized exact sequences, shared across threads.
struct Memo {
    values: RwLock<Vec<BigUint>>,
    next: fn(&[BigUint]) -> BigUint,
}

impl Memo {
    fn get(&self, n: usize) -> BigUint {
        if let Some(v) = self.values.read().unwrap().get(n) {
            return v.clone();
        }
        let mut w = self.values.write().unwrap();
        while w.len() <= n {
            let v = (self.next)(&w);
            w.push(v);
        }
        w[n].clone()
    }
}

fn fib_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Memo {
        values: RwLock::new(vec![BigUint::zero(), BigUint::one()]),
        next: |v| &v[v.len() - 1] + &v[v.len() - 2],
    })
}

fn catalan_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Memo {
        values: RwLock::new(vec![BigUint::one()]),
        // C_{n} = C_{n-1} * 2(2n-1) / (n+1)
        next: |v| {
            let n = v.len() as u64;
            &v[v.len() - 1] * (2 * (2 * n - 1)) / (n + 1)
        },
    })
}

fn baxter_memo() -> &'static Memo {
    static M: OnceLock<Memo> = OnceLock::new();
    M.get_or_init(|| Memo {
        values: RwLock::new(vec![BigUint::zero()]),
        next: |v| baxter_sum(v.len() as u64),
    })
}

/// `F_0 = 0`, `F_1 = F_2 = 1`.
pub fn fibonacci(n: usize) -> BigUint {
    fib_memo().get(n)
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    catalan_memo().get(n)
}

/// `B_n = Σ_k binom(n+1,k-1) binom(n+1,k) binom(n+1,k+1) / (binom(n+1,1) binom(n+1,2))`.
pub fn baxter(n: usize) -> BigUint {
    baxter_memo().get(n)
}

fn baxter_sum(n: u64) -> BigUint {
    if n == 0 {
        return BigUint::zero();
    }
    let b = |k: u64| binomial(BigUint::from(n + 1), BigUint::from(k));
    let num: BigUint = (1..=n).map(|k| b(k - 1) * b(k) * b(k + 1)).sum();
    num / (b(1) * b(2))
}

/// Schnyder woods summed over all triangulations on `n` vertices:
/// `C_{n+2} C_n - C_{n+1}^2`.
pub fn schnyder_total(n: usize) -> BigInt {
    BigInt::from(catalan(n + 2) * catalan(n)) - BigInt::from(catalan(n + 1).pow(2u32))
}

/// 0-1 sequences without two consecutive ones, as bit masks (bit `i-1` is
/// entry `i`), in increasing order.
pub fn sparse_sequences(n: usize) -> Vec<u64> {
    assert!(n < 64, "length {n} too large");
    (0u64..1 << n).filter(|x| x & (x >> 1) == 0).collect()
}

/// Element `p + q√5` of `Q(√5)`.
#[derive(Clone, Debug, PartialEq)]
struct QSqrt5(BigRational, BigRational);

impl QSqrt5 {
    fn mul(&self, o: &QSqrt5) -> QSqrt5 {
        let five = BigRational::from_integer(5.into());
        QSqrt5(&self.0 * &o.0 + five * &self.1 * &o.1, &self.0 * &o.1 + &self.1 * &o.0)
    }

    fn pow(&self, n: usize) -> QSqrt5 {
        let mut r = QSqrt5(BigRational::one(), BigRational::zero());
        for _ in 0..n {
            r = r.mul(self);
        }
        r
    }
}

/// Results of the Fibonacci identities at one index.
#[derive(Clone, Debug, Serialize)]
pub struct FibReport {
    pub n: usize,
    pub f_n: String,
    /// `F_n = (φ^n - (1-φ)^n)/√5`, evaluated in `Q(√5)`.
    pub closed_form: bool,
    /// `Σ_{i=0}^n F_i F_{n-i} = (n(F_{n+1} + F_{n-1}) - F_n)/5`.
    pub convolution: bool,
    /// `r_n(i) = F_i F_{n+1-i}` for `i = 1..n`.
    pub r: Vec<String>,
    /// `Σ_{i=1}^n r_n(i) = (2(n+1)F_n + nF_{n+1})/5`.
    pub r_sum: bool,
    /// Sparse sequences counted by listing them: `F_{n+2}` in total and
    /// `r_n(i)` with entry `i` set. Only run for `n <= 20`.
    pub enumeration: Option<bool>,
}

impl FibReport {
    pub fn all_hold(&self) -> bool {
        self.closed_form && self.convolution && self.r_sum && self.enumeration != Some(false)
    }
}

/// `F_{-1} = 1` extends the recursion one step back.
fn fib_signed(n: i64) -> BigUint {
    if n < 0 {
        BigUint::one()
    } else {
        fibonacci(n as usize)
    }
}

pub fn fib_suite(n: usize) -> FibReport {
    let f = |i: usize| fibonacci(i);
    let half = BigRational::new(1.into(), 2.into());
    let phi = QSqrt5(half.clone(), half.clone());
    let psi = QSqrt5(half.clone(), -half);
    let (a, b) = (phi.pow(n), psi.pow(n));
    let diff = QSqrt5(&a.0 - &b.0, &a.1 - &b.1);
    let closed_form = diff.0.is_zero() && diff.1 == BigRational::from_integer(BigInt::from(f(n)));

    let conv: BigUint = (0..=n).map(|i| f(i) * f(n - i)).sum();
    let rhs = BigUint::from(n) * (f(n + 1) + fib_signed(n as i64 - 1));
    let convolution = rhs >= f(n) && conv * 5u32 == rhs - f(n);

    let r: Vec<BigUint> = (1..=n).map(|i| f(i) * f(n + 1 - i)).collect();
    let r_total: BigUint = r.iter().sum();
    let r_sum = r_total * 5u32 == BigUint::from(2 * (n + 1)) * f(n) + BigUint::from(n) * f(n + 1);

    let enumeration = (n <= 20).then(|| {
        let seqs = sparse_sequences(n);
        let count_ok = BigUint::from(seqs.len()) == f(n + 2);
        let r_ok = (1..=n).all(|i| {
            let with = seqs.iter().filter(|&&s| s >> (i - 1) & 1 == 1).count();
            BigUint::from(with) == r[i - 1]
        });
        count_ok && r_ok
    });
    FibReport {
        n,
        f_n: f(n).to_string(),
        closed_form,
        convolution,
        r: r.iter().map(|x| x.to_string()).collect(),
        r_sum,
        enumeration,
    }
}

/// `x_0 = y_0 = 1`, `x_k = 4x_{k-1} + 2y_{k-1}`, `y_k = 4x_{k-1} + 3y_{k-1}`.
pub fn crossover(k: usize) -> Vec<(BigUint, BigUint)> {
    let mut out = vec![(BigUint::one(), BigUint::one())];
    for _ in 0..k {
        let (x, y) = out.last().unwrap();
        out.push((x * 4u32 + y * 2u32, x * 4u32 + y * 3u32));
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct CrossoverCertificate {
    pub k: usize,
    /// `x_j/y_j > x_{j+1}/y_{j+1}` for all `j < k`.
    pub decreasing: bool,
    /// `x_j/y_j > (1+√33)/8` for all `j <= k`, tested as `4x² - xy - 2y² > 0`.
    pub above_limit: bool,
}

pub fn crossover_certificate(k: usize) -> CrossoverCertificate {
    let seq = crossover(k);
    let decreasing = seq.windows(2).all(|w| &w[1].0 * &w[0].1 < &w[0].0 * &w[1].1);
    let above_limit = seq.iter().all(|(x, y)| {
        let (x, y) = (BigInt::from(x.clone()), BigInt::from(y.clone()));
        &x * &x * 4 - &x * &y - &y * &y * 2 > BigInt::zero()
    });
    CrossoverCertificate {
        k,
        decreasing,
        above_limit,
    }
}

/// `(1+√33)/8`, the limit of `x_k/y_k`.
pub fn crossover_limit() -> f64 {
    (1.0 + 33f64.sqrt()) / 8.0
}

/// The value `radicand^(1/root)`, kept exact.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundValue {
    pub radicand: BigRational,
    pub root: u32,
}

impl BoundValue {
    fn exact(r: BigRational) -> Self {
        BoundValue { radicand: r, root: 1 }
    }

    pub fn to_f64(&self) -> f64 {
        let (n, d) = (self.radicand.numer(), self.radicand.denom());
        let log2 = big_log2(n) - big_log2(d);
        (log2 / self.root as f64).exp2()
    }

    /// `count <= value`, exactly.
    pub fn dominates(&self, count: &BigUint) -> bool {
        let c = BigRational::from_integer(BigInt::from(count.pow(self.root)));
        c <= self.radicand
    }
}

fn big_log2(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits > 1000 {
        let shift = bits - 64;
        (x >> shift).to_f64().unwrap().log2() + shift as f64
    } else {
        x.to_f64().unwrap().log2()
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn two_pow(e: i64) -> BigRational {
    let p = BigRational::from_integer(BigInt::one() << e.unsigned_abs());
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

fn rpow(x: BigRational, e: usize) -> BigRational {
    Pow::pow(x, e)
}

/// One closed-form bound at one instance.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub n: usize,
    pub m: usize,
    pub i1: usize,
    pub i2: usize,
    pub degrees: Vec<usize>,
    pub value: f64,
    #[serde(skip)]
    pub exact: BoundValue,
    pub measured: Option<String>,
    pub dominates: Option<bool>,
}

impl BoundReport {
    fn new(name: &str, n: usize, m: usize, degrees: &[usize], exact: BoundValue) -> Self {
        BoundReport {
            name: name.to_string(),
            n,
            m,
            i1: 0,
            i2: 0,
            degrees: degrees.to_vec(),
            value: exact.to_f64(),
            exact,
            measured: None,
            dominates: None,
        }
    }

    pub fn with_measured(mut self, count: &BigUint) -> Self {
        self.dominates = Some(self.exact.dominates(count));
        self.measured = Some(count.to_string());
        self
    }
}

pub const EXACT_INDEPENDENT_SET_LIMIT: usize = 25;

/// Independent set maximizing the total weight of its members; exact by
/// branch and bound up to [`EXACT_INDEPENDENT_SET_LIMIT`] vertices,
/// greedy beyond. Vertices with non-positive weight are never taken.
pub fn max_weight_independent_set(adj: &[Vec<Vertex>], weight: &[f64]) -> Vec<Vertex> {
    let n = adj.len();
    let candidates: Vec<Vertex> = {
        let mut c: Vec<Vertex> = (0..n).filter(|&v| weight[v] > 0.0).collect();
        c.sort_by(|&a, &b| weight[b].total_cmp(&weight[a]));
        c
    };
    if n > EXACT_INDEPENDENT_SET_LIMIT {
        let mut blocked = vec![false; n];
        let mut set = Vec::new();
        for v in candidates {
            if !blocked[v] {
                set.push(v);
                blocked[v] = true;
                for &w in &adj[v] {
                    blocked[w] = true;
                }
            }
        }
        set.sort_unstable();
        return set;
    }
    struct Bb<'a> {
        adj: &'a [Vec<Vertex>],
        weight: &'a [f64],
        order: Vec<Vertex>,
        best: f64,
        best_set: Vec<Vertex>,
    }
    impl Bb<'_> {
        fn go(&mut self, i: usize, blocked: &mut Vec<u32>, cur: &mut Vec<Vertex>, value: f64) {
            let rest: f64 = self.order[i..].iter().filter(|&&v| blocked[v] == 0).map(|&v| self.weight[v]).sum();
            if value + rest <= self.best + 1e-12 {
                if value > self.best {
                    self.best = value;
                    self.best_set = cur.clone();
                }
                return;
            }
            if i == self.order.len() {
                self.best = value;
                self.best_set = cur.clone();
                return;
            }
            let v = self.order[i];
            if blocked[v] == 0 {
                blocked[v] += 1;
                for &w in self.adj[v].iter() {
                    blocked[w] += 1;
                }
                cur.push(v);
                self.go(i + 1, blocked, cur, value + self.weight[v]);
                cur.pop();
                blocked[v] -= 1;
                for &w in self.adj[v].iter() {
                    blocked[w] -= 1;
                }
            }
            self.go(i + 1, blocked, cur, value);
        }
    }
    let mut bb = Bb {
        adj,
        weight,
        order: candidates,
        best: 0.0,
        best_set: Vec::new(),
    };
    bb.go(0, &mut vec![0; n], &mut Vec::new(), 0.0);
    let mut set = bb.best_set;
    set.sort_unstable();
    set
}

/// Number of edges in a spanning forest.
fn forest_size(n: usize, edges: &[(Vertex, Vertex)]) -> usize {
    let mut uf = UnionFind::new(n);
    let mut size = 0;
    for &(u, v) in edges {
        if uf.find(u) != uf.find(v) {
            uf.union(u, v);
            size += 1;
        }
    }
    size
}

/// Bounds on the α-orientations of `map` over the `active` edges: the
/// spanning-forest bound `2^{m-|A|}`, the independent-set bound
/// `2^{2n-4-|I_2|} ∏_{I_1} binom(d, α) / 2^{d-1}` and its worst case
/// `3.73^n`. Triangulations with a Schnyder demand add `3.56^n`;
/// quadrangulations with a 2-orientation demand add `1.91^n`. All but the
/// first need the active edges to form a simple plane graph on at least
/// three vertices.
pub fn alpha_bounds(map: &PlanarMap, alpha: &[u32], active: Option<&[bool]>) -> Vec<BoundReport> {
    let n_all = map.vertex_count();
    let edges: Vec<(Vertex, Vertex)> = (0..map.edge_count())
        .filter(|&e| active.is_none_or(|a| a[e]))
        .map(|e| map.edge_ends(e))
        .collect();
    let m = edges.len();
    let mut deg = vec![0usize; n_all];
    for &(u, v) in &edges {
        deg[u] += 1;
        deg[v] += 1;
    }
    let mut out = Vec::new();
    let forest = forest_size(n_all, &edges);
    out.push(BoundReport::new(
        "spanning-forest 2^(m-|A|)",
        n_all,
        m,
        &deg,
        BoundValue::exact(two_pow((m - forest) as i64)),
    ));

    // Independent-set bound on the non-isolated part, when it is a simple
    // connected planar graph on at least 3 vertices.
    let used: Vec<Vertex> = (0..n_all).filter(|&v| deg[v] > 0).collect();
    let n = used.len();
    let simple = {
        let mut seen: Vec<(Vertex, Vertex)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        seen.sort_unstable();
        let len = seen.len();
        seen.dedup();
        seen.len() == len && edges.iter().all(|&(u, v)| u != v)
    };
    let planar_simple = map.surface() == Surface::Sphere && simple && n >= 3;
    if planar_simple && forest == n - 1 {
        let mut adj = vec![Vec::new(); n_all];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let factor = |v: Vertex| -> BigRational {
            let d = deg[v];
            if d == 2 {
                rat(1, 2)
            } else if alpha[v] as usize > d {
                BigRational::zero()
            } else {
                BigRational::from_integer(binomial(BigInt::from(d), BigInt::from(alpha[v]))) * two_pow(1 - d as i64)
            }
        };
        // Weight -log2 of the factor; an impossible demand makes the bound 0.
        let weight: Vec<f64> = (0..n_all)
            .map(|v| match deg[v] {
                0 | 1 => 0.0,
                _ => factor(v).to_f64().map_or(0.0, |f| if f > 0.0 { -f.log2() } else { 1e9 }),
            })
            .collect();
        let set = max_weight_independent_set(&adj, &weight);
        let i2 = set.iter().filter(|&&v| deg[v] == 2).count();
        let i1 = set.len() - i2;
        let mut value = two_pow(2 * n as i64 - 4 - i2 as i64);
        for &v in &set {
            if deg[v] != 2 {
                value *= factor(v);
            }
        }
        let mut r = BoundReport::new("independent-set product", n, m, &deg, BoundValue::exact(value));
        r.i1 = i1;
        r.i2 = i2;
        out.push(r);
    }
    // 2^{2n-4} (3/4)^{n/4} and 3.73^n, for any simple planar map and demand.
    let n4 = n_all;
    if !planar_simple {
        return out;
    }
    out.push(BoundReport::new(
        "2^(2n-4)(3/4)^(n/4)",
        n4,
        m,
        &deg,
        BoundValue {
            radicand: rpow(two_pow(2 * n4 as i64 - 4), 4) * rpow(rat(3, 4), n4),
            root: 4,
        },
    ));
    out.push(BoundReport::new("3.73^n", n4, m, &deg, BoundValue::exact(rpow(rat(373, 100), n4))));

    if is_schnyder_setting(map, alpha) {
        out.push(BoundReport::new(
            "2^(2n-4)(5/8)^(n/4)",
            n4,
            m,
            &deg,
            BoundValue {
                radicand: rpow(two_pow(2 * n4 as i64 - 4), 4) * rpow(rat(5, 8), n4),
                root: 4,
            },
        ));
        out.push(BoundReport::new("3.56^n", n4, m, &deg, BoundValue::exact(rpow(rat(356, 100), n4))));
    }
    if is_two_orientation_setting(map, alpha) {
        out.push(BoundReport::new("2^n", n4, m, &deg, BoundValue::exact(two_pow(n4 as i64))));
        out.push(BoundReport::new(
            "2^n(3/4)^(n/6)",
            n4,
            m,
            &deg,
            BoundValue {
                radicand: rpow(two_pow(n4 as i64), 6) * rpow(rat(3, 4), n4),
                root: 6,
            },
        ));
        out.push(BoundReport::new("1.91^n", n4, m, &deg, BoundValue::exact(rpow(rat(191, 100), n4))));
    }
    out
}

/// Triangulation with three outer vertices of demand 0 and 3 elsewhere.
pub fn is_schnyder_setting(map: &PlanarMap, alpha: &[u32]) -> bool {
    if !map.is_triangulation() || alpha.len() != map.vertex_count() {
        return false;
    }
    let outer = map.outer_vertices();
    let zeros: Vec<Vertex> = (0..alpha.len()).filter(|&v| alpha[v] == 0).collect();
    zeros.len() == 3 && zeros.iter().all(|v| outer.contains(v)) && alpha.iter().all(|&a| a == 0 || a == 3)
}

/// Quadrangulation with two non-adjacent outer vertices of demand 0 and 2
/// elsewhere.
pub fn is_two_orientation_setting(map: &PlanarMap, alpha: &[u32]) -> bool {
    if alpha.len() != map.vertex_count() || (0..map.face_count()).any(|f| map.face_darts(f).len() != 4) {
        return false;
    }
    let zeros: Vec<Vertex> = (0..alpha.len()).filter(|&v| alpha[v] == 0).collect();
    let outer = map.outer_vertices();
    zeros.len() == 2
        && zeros.iter().all(|v| outer.contains(v))
        && map.find_dart(zeros[0], zeros[1]).is_none()
        && alpha.iter().all(|&a| a == 0 || a == 2)
}

/// Bounds on bipolar orientations of an inner triangulation with poles
/// `s`, `t`: the number of sign vectors `2^{f-1}`, the same with the
/// vertex-local exclusions over an independent set of `V - {s,t}`,
/// `4^{n-1} 2^{-f_∞} (31/32)^{(n-2)/4}` and `3.97^n`.
pub fn bipolar_bounds(map: &PlanarMap, s: Vertex, t: Vertex) -> Vec<BoundReport> {
    let n = map.vertex_count();
    let m = map.edge_count();
    let deg = map.degrees();
    let f = map.face_count();
    let f_inf = map.face_darts(map.outer_face()).len();
    let mut out = vec![BoundReport::new(
        "sign vectors 2^(f-1)",
        n,
        m,
        &deg,
        BoundValue::exact(two_pow(f as i64 - 1)),
    )];
    let adj = simple_adjacency(map);
    let weight: Vec<f64> = (0..n)
        .map(|v| {
            if v == s || v == t || deg[v] < 2 {
                0.0
            } else {
                -(1.0 - (1.0 - deg[v] as f64).exp2()).log2()
            }
        })
        .collect();
    let set = max_weight_independent_set(&adj, &weight);
    let mut refined = two_pow(f as i64 - 1);
    for &v in &set {
        refined *= BigRational::one() - two_pow(1 - deg[v] as i64);
    }
    let mut r = BoundReport::new("sign vectors with local exclusions", n, m, &deg, BoundValue::exact(refined));
    r.i1 = set.len();
    out.push(r);
    out.push(BoundReport::new(
        "4^(n-1)2^(-f_inf)(31/32)^((n-2)/4)",
        n,
        m,
        &deg,
        BoundValue {
            radicand: rpow(two_pow(2 * n as i64 - 2 - f_inf as i64), 4) * rpow(rat(31, 32), n.saturating_sub(2)),
            root: 4,
        },
    ));
    out.push(BoundReport::new("3.97^n", n, m, &deg, BoundValue::exact(rpow(rat(397, 100), n))));
    out
}

/// `binom(d, ⌊d/2⌋) / 2^{d-1} <= 3/4`, exactly.
pub fn central_ratio_below_three_quarters(d: u64) -> bool {
    let c = binomial(BigUint::from(d), BigUint::from(d / 2));
    c * 4u32 <= BigUint::from(3u32) << (d - 1)
}

/// `binom(d, 3) 2^{1-d} <= 5/8`, exactly.
pub fn schnyder_ratio_below_five_eighths(d: u64) -> bool {
    let c = binomial(BigUint::from(d), BigUint::from(3u32));
    c * 8u32 * 2u32 <= BigUint::from(5u32) << d
}

/// `2^{2n-4}(3/4)^{n/4} <= 3.73^n` through logarithms; the left side is
/// `(4 (3/4)^{1/4})^n / 16`.
pub fn corollary_constant_holds(n: u64) -> bool {
    let lhs = (2 * n as i64 - 4) as f64 + n as f64 / 4.0 * (0.75f64).log2();
    let rhs = n as f64 * 3.73f64.log2();
    lhs <= rhs
}

/// A growth constant with where it comes from.
#[derive(Clone, Debug, Serialize)]
pub struct Constant {
    pub name: &'static str,
    pub value: f64,
    pub provenance: &'static str,
}

pub fn formula_constants() -> Vec<Constant> {
    vec![
        Constant {
            name: "lieb",
            value: LIEB_CONSTANT,
            provenance: "Eulerian orientations of the square grid, (8√3/9)^(kl)",
        },
        Constant {
            name: "baxter",
            value: BAXTER_CONSTANT,
            provenance: "Eulerian orientations of the triangular grid, (3√3/2)^(kl)",
        },
        Constant {
            name: "spanning-trees-low",
            value: 5.02,
            provenance: "maximum number of spanning trees of planar graphs, lower growth",
        },
        Constant {
            name: "spanning-trees-high",
            value: 5.34,
            provenance: "maximum number of spanning trees of planar graphs, upper growth",
        },
        Constant {
            name: "grid-matchings",
            value: 0.29f64.exp(),
            provenance: "perfect matchings of the k x l grid, e^(0.29 kl)",
        },
        Constant {
            name: "crossover-limit",
            value: crossover_limit(),
            provenance: "limit of x_k/y_k, (1+√33)/8",
        },
        Constant {
            name: "eigen-ratio",
            value: 1.537,
            provenance: "(Λ10/Λ8)^(1/4) lower bound for alternating orientations",
        },
        Constant {
            name: "fibonacci-density",
            value: 1.0 / (5f64.sqrt() * (1.0 + 5f64.sqrt()) / 2.0),
            provenance: "limit of Σ r_n(i) / (n F_{n+2})",
        },
    ]
}

/// Catalan-based Schnyder totals and Baxter numbers for `1..=n`.
#[derive(Clone, Debug, Serialize)]
pub struct SequenceRow {
    pub n: usize,
    pub catalan: String,
    pub schnyder_total: String,
    pub baxter: String,
}

pub fn sequence_table(n: usize) -> Vec<SequenceRow> {
    (1..=n)
        .map(|i| SequenceRow {
            n: i,
            catalan: catalan(i).to_string(),
            schnyder_total: schnyder_total(i).to_string(),
            baxter: baxter(i).to_string(),
        })
        .collect()
}
