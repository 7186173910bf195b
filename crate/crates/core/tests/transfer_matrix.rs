use num_bigint::BigUint;
use orientcount::alpha_engine::{count, count_problem, Problem};
use orientcount::generators::{generate, Family, FamilySpec};
use orientcount::transfer_matrix::*;
use proptest::prelude::*;

/// Ways to orient the vertical edges of one column so every vertex has
/// out-degree 2, by trying all `2^{2k}` choices. Vertical edge `r` joins
/// rows `r` and `r+1 mod 2k`; bit set means it points from `r` to `r+1`.
/// The wrap edge `2k-1` is up when it points from row 0 to row `2k-1`.
fn oracle_column(two_k: usize, x1: u32, x2: u32, up: bool) -> u64 {
    (0u32..1 << two_k)
        .filter(|&v| {
            let wrap_down = v >> (two_k - 1) & 1 == 1;
            if wrap_down == up {
                return false;
            }
            (0..two_k).all(|r| {
                let from_left = x1 >> r & 1 == 0; // left edge points left: out
                let to_right = x2 >> r & 1 == 1;
                let below = v >> r & 1 == 1;
                let above = v >> ((r + two_k - 1) % two_k) & 1 == 0;
                from_left as u32 + to_right as u32 + below as u32 + above as u32 == 2
            })
        })
        .count() as u64
}

fn states(two_k: usize) -> Vec<u32> {
    (0u32..1 << two_k).filter(|x| x.count_ones() as usize * 2 == two_k).collect()
}

/// Alternating orientations of the `rows x cols` torus through the
/// orientation engine: the wrap edges are fixed and the rest have demand
/// `2 - (fixed out-edges)`.
fn engine_alternating(rows: usize, cols: usize) -> BigUint {
    let at = |r: usize, c: usize| r * cols + c;
    let alt = alternating_state(rows);
    let n = rows * cols;
    let mut fixed_out = vec![0u32; n];
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let (u, v) = (at(r, c), at(r, (c + 1) % cols));
            if c == cols - 1 {
                fixed_out[if alt >> r & 1 == 1 { u } else { v }] += 1;
            } else {
                edges.push((u, v));
            }
            let (u, v) = (at(r, c), at((r + 1) % rows, c));
            if r == rows - 1 {
                // Wrap edge of column c is up for even c: from row 0.
                fixed_out[if c % 2 == 0 { v } else { u }] += 1;
            } else {
                edges.push((u, v));
            }
        }
    }
    if fixed_out.iter().any(|&o| o > 2) {
        return BigUint::from(0u32);
    }
    let demand = fixed_out.iter().map(|&o| Some(2 - o)).collect();
    count_problem(&Problem::new(n, edges, demand))
}

#[test]
fn dimensions_are_central_binomials() {
    for (two_k, want) in [(2, 2), (4, 6), (6, 20), (8, 70)] {
        let t = build_transfer(two_k).unwrap();
        assert_eq!(t.dim(), want);
        assert_eq!(t.states, states(two_k));
    }
}

#[test]
fn entries_match_the_column_oracle() {
    for two_k in [2, 4, 6] {
        let t = build_transfer(two_k).unwrap();
        for (i, &x1) in t.states.iter().enumerate() {
            for (j, &x2) in t.states.iter().enumerate() {
                assert_eq!(t.up.get(i, j), oracle_column(two_k, x1, x2, true), "U {x1:b} {x2:b}");
                assert_eq!(t.down.get(i, j), oracle_column(two_k, x1, x2, false), "D {x1:b} {x2:b}");
                assert_eq!(column_ok(two_k, x1, x2, true), t.up.get(i, j) == 1);
            }
        }
    }
}

#[test]
fn symmetry_identities() {
    for two_k in [2, 4, 6, 8, 10] {
        let t = build_transfer(two_k).unwrap();
        assert_eq!(t.up, t.down.transpose());
        assert!(t.t.is_symmetric());
        assert_eq!(t.t, t.up.multiply(&t.down));
        for i in 0..t.dim() {
            assert_eq!(t.up.get(i, i), 1);
            assert_eq!(t.down.get(i, i), 1);
            assert!(t.t.get(i, i) > 0);
        }
    }
}

#[test]
fn size_limits() {
    assert_eq!(build_transfer(14).unwrap_err(), TransferError::SizeExceeded(14));
    assert_eq!(build_transfer(5).unwrap_err(), TransferError::SizeExceeded(5));
    assert_eq!(build_transfer(0).unwrap_err(), TransferError::SizeExceeded(0));
}

#[test]
fn non_primitive_matrix_is_rejected() {
    let swap = SparseMatrix { dim: 2, rows: vec![vec![(1, 1)], vec![(0, 1)]] };
    assert!(!is_primitive(&swap));
    assert_eq!(dominant_eigenvalue(&swap, 1e-9).unwrap_err(), TransferError::NotPrimitive);
    let ones = SparseMatrix { dim: 2, rows: vec![vec![(0, 1), (1, 1)], vec![(0, 1), (1, 1)]] };
    let e = dominant_eigenvalue(&ones, 1e-12).unwrap();
    assert!((e.lambda - 2.0).abs() < 1e-9);
}

#[test]
fn eigenvalue_of_a_known_matrix() {
    // [[2,1],[1,1]] has dominant eigenvalue (3+√5)/2.
    let m = SparseMatrix { dim: 2, rows: vec![vec![(0, 2), (1, 1)], vec![(0, 1), (1, 1)]] };
    let e = dominant_eigenvalue(&m, 1e-12).unwrap();
    let want = (3.0 + 5f64.sqrt()) / 2.0;
    assert!((e.lambda - want).abs() < 1e-9);
    assert!(e.lower <= want + 1e-12 && want <= e.upper + 1e-12);
}

#[test]
fn lambda_eight_and_ten() {
    let l8 = lambda(8, 1e-9).unwrap();
    let l10 = lambda(10, 1e-9).unwrap();
    for (e, want) in [(&l8, 418.2717), (&l10, 2335.8714)] {
        assert!(((e.lambda - want) / want).abs() < 1e-3, "{} vs {want}", e.lambda);
        assert!(e.lower <= e.lambda && e.lambda <= e.upper);
        assert!((e.upper - e.lower) / e.lower <= 1e-9);
        // The certificate interval never widens by more than rounding.
        for w in e.widths.windows(2) {
            assert!(w[1] <= w[0] * (1.0 + 1e-9) + 1e-9);
        }
    }
    let r = eigen_ratio(10, 8, 1e-9).unwrap();
    let direct = (l10.lambda / l8.lambda).powf(0.25);
    assert!((r.value - direct).abs() < 1e-12);
    assert!(r.lower >= 1.537 && r.upper < 1.538, "{r:?}");
    assert!(r.lower <= r.value && r.value <= r.upper);
}

#[test]
fn root_of_lambda_is_non_decreasing() {
    let roots: Vec<f64> = [4, 6, 8, 10]
        .iter()
        .map(|&h| lambda(h, 1e-10).unwrap().lambda.powf(2.0 / h as f64))
        .collect();
    for w in roots.windows(2) {
        assert!(w[1] >= w[0] - 1e-9, "{roots:?}");
    }
}

#[test]
fn alternating_counts_match_brute_force() {
    for (two_k, l) in [(2, 2), (2, 3), (4, 2), (4, 3), (6, 2)] {
        let c = alternating_count(two_k, l).unwrap();
        let brute = alternating_count_brute(two_k, 2 * l);
        assert_eq!(c, brute.into(), "2k={two_k} l={l}");
        assert_eq!(c, engine_alternating(two_k, 2 * l), "2k={two_k} l={l}");
    }
}

#[test]
fn transposed_torus_has_the_same_count() {
    assert_eq!(alternating_count(4, 3).unwrap(), alternating_count(6, 2).unwrap());
    assert_eq!(alternating_count(4, 4).unwrap(), alternating_count(8, 2).unwrap());
}

#[test]
fn alternating_count_is_below_the_two_orientations() {
    // Alternating orientations of the (k-2) x (l-2) torus embed into the
    // 2-orientations of the k x l quadrangulated grid.
    for (k, l) in [(4, 4), (6, 6), (6, 8), (8, 8)] {
        let c = alternating_count(k - 2, (l - 2) / 2).unwrap();
        let g = generate(&FamilySpec::new(Family::QuadGrid, k, l)).unwrap();
        let two = count(&g.map, &g.alpha.unwrap()).unwrap().count;
        assert!(c <= two, "{k}x{l}: {c} > {two}");
    }
}

#[test]
fn growth_trend_and_rates() {
    let t = growth_trend(&[4, 6, 8, 10], 1e-9).unwrap();
    assert_eq!(t.iter().map(|x| x.0).collect::<Vec<_>>(), vec![4, 6, 8, 10]);
    for (h, rate) in &t {
        let direct = lambda(*h, 1e-9).unwrap().lambda.powf(1.0 / (2 * h) as f64);
        assert!((rate - direct).abs() < 1e-12);
        assert!(*rate > 1.0 && *rate < LIEB_CONSTANT + 0.3);
    }
    assert!((per_vertex_rate(&BigUint::from(16u32), 4) - 2.0).abs() < 1e-12);
    let big = BigUint::from(3u32).pow(1000);
    assert!((per_vertex_rate(&big, 1000) - 3.0).abs() < 1e-9);
}

#[test]
fn stored_constants() {
    assert!((LIEB_CONSTANT - 8.0 * 3f64.sqrt() / 9.0).abs() < 1e-9);
    assert!((BAXTER_CONSTANT - 3.0 * 3f64.sqrt() / 2.0).abs() < 1e-9);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn alternating_state_has_half_right(k in 1usize..7) {
        let two_k = 2 * k;
        let x = alternating_state(two_k);
        prop_assert_eq!(x.count_ones() as usize, k);
        prop_assert!(build_transfer(two_k).unwrap().state_index(x).is_some());
    }

    #[test]
    fn powers_of_t_count_paths(a in 0usize..6, b in 0usize..6, p in 1usize..4) {
        // (T^p)_{ab} by repeated products equals the sum over intermediate
        // states.
        let t = build_transfer(4).unwrap().t;
        let mut m = t.clone();
        for _ in 1..p {
            m = m.multiply(&t);
        }
        let mut v = vec![0u64; 6];
        v[b] = 1;
        for _ in 0..p {
            v = (0..6).map(|i| (0..6).map(|j| t.get(i, j) * v[j]).sum()).collect();
        }
        prop_assert_eq!(m.get(a, b), v[a]);
    }
}
