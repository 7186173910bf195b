use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use orientcount::alpha_engine::*;
use orientcount::fixtures::{random_alpha_instance, random_stacked, random_triangulation};
use orientcount::generators::*;
use orientcount::planar_map::*;
use orientcount::structures::{count_bipolar, enumerate_schnyder_woods, outer_specials};
use proptest::prelude::*;

fn triangle() -> PlanarMap {
    PlanarMap::build_map(&[vec![1, 2], vec![2, 0], vec![0, 1]], (0, 2)).unwrap()
}

/// Plain backtracking over edges with degree bounds; no propagation.
fn oracle_count(n: usize, edges: &[(Vertex, Vertex)], alpha: &[u32]) -> u64 {
    fn go(i: usize, edges: &[(Vertex, Vertex)], alpha: &[u32], out: &mut [u32], left: &mut [u32]) -> u64 {
        if i == edges.len() {
            return (out == alpha) as u64;
        }
        let (u, v) = edges[i];
        left[u] -= 1;
        left[v] -= 1;
        let mut total = 0;
        for tail in [u, v] {
            out[tail] += 1;
            let ok = [u, v].iter().all(|&w| out[w] <= alpha[w] && out[w] + left[w] >= alpha[w]);
            if ok {
                total += go(i + 1, edges, alpha, out, left);
            }
            out[tail] -= 1;
        }
        left[u] += 1;
        left[v] += 1;
        total
    }
    let mut left = vec![0u32; n];
    for &(u, v) in edges {
        left[u] += 1;
        left[v] += 1;
    }
    go(0, edges, alpha, &mut vec![0; n], &mut left)
}

fn map_oracle(map: &PlanarMap, alpha: &[u32], active: Option<&[bool]>) -> u64 {
    let edges: Vec<_> = (0..map.edge_count())
        .filter(|&e| active.is_none_or(|a| a[e]))
        .map(|e| map.edge_ends(e))
        .collect();
    oracle_count(map.vertex_count(), &edges, alpha)
}

fn inner_active(map: &PlanarMap) -> Vec<bool> {
    let outer = map.outer_face();
    (0..map.edge_count())
        .map(|e| map.face_of(2 * e) != outer && map.face_of(2 * e + 1) != outer)
        .collect()
}

fn schnyder_alpha(map: &PlanarMap) -> (Vec<u32>, [Vertex; 3]) {
    let sp = outer_specials(map).unwrap();
    let mut alpha = vec![3; map.vertex_count()];
    for a in sp {
        alpha[a] = 0;
    }
    (alpha, sp)
}

#[test]
fn feasibility_on_the_triangle() {
    let t = triangle();
    assert!(feasible(&t, &[1, 1, 1]));
    assert!(feasible(&t, &[2, 1, 0]));
    assert!(!feasible(&t, &[3, 0, 0]));
    assert!(!feasible(&t, &[1, 1, 0]));
}

#[test]
fn triangle_has_two_cyclic_orientations() {
    let t = triangle();
    let mut seen = Vec::new();
    enumerate(&t, &[1, 1, 1], |x| {
        seen.push(x.clone());
        Visit::Continue
    })
    .unwrap();
    assert_eq!(seen.len(), 2);
    assert_ne!(seen[0], seen[1]);
    assert_eq!(count(&t, &[1, 1, 1]).unwrap().count, 2u32.into());
}

#[test]
fn quad_grid_two_orientations_match_the_oracle() {
    for (k, l) in [(3, 3), (3, 4), (4, 4)] {
        let g = generate(&FamilySpec::new(Family::QuadGrid, k, l)).unwrap();
        let alpha = g.alpha.unwrap();
        let want = map_oracle(&g.map, &alpha, None);
        assert!(want > 0);
        assert_eq!(count(&g.map, &alpha).unwrap().count, want.into());
    }
}

#[test]
fn octahedron_three_orientations_equal_schnyder_woods() {
    let oct = octahedron();
    let (alpha, sp) = schnyder_alpha(&oct);
    let active = inner_active(&oct);
    let p = Problem::with_active(&oct, &alpha, Some(&active)).unwrap();
    let mut woods = 0;
    enumerate_schnyder_woods(&oct, sp, 1000, |_| woods += 1).unwrap();
    assert_eq!(count_problem(&p), BigUint::from(woods as u64));
    assert_eq!(map_oracle(&oct, &alpha, Some(&active)), woods as u64);
}

#[test]
fn stacked_triangulations_have_one_three_orientation() {
    for seed in 0..10 {
        let m = random_stacked(6, seed);
        let (alpha, _) = schnyder_alpha(&m);
        let active = inner_active(&m);
        let p = Problem::with_active(&m, &alpha, Some(&active)).unwrap();
        assert_eq!(count_problem(&p), 1u32.into());
    }
}

#[test]
fn strip_t25_has_f9_bipolar_orientations() {
    let g = generate(&FamilySpec::new(Family::Strip, 2, 5)).unwrap();
    let c = count_bipolar(&g.map, 0, 9, CountOptions::default()).unwrap();
    assert_eq!(c, 34u32.into());
}

#[test]
fn infeasible_demand_counts_zero() {
    let m = k4();
    for alpha in [[3, 3, 0, 0], [3, 3, 3, 3], [0, 0, 0, 6]] {
        let p = Problem::new(4, m.edges().to_vec(), alpha.iter().map(|&a| Some(a)).collect());
        assert_eq!(count_problem(&p), 0u32.into());
    }
}

#[test]
fn rigid_edges_small_cases() {
    assert!(rigid_edges(&triangle(), &[1, 1, 1]).unwrap().is_empty());
    let path = PlanarMap::build_map(&[vec![1], vec![0, 2], vec![1]], (0, 1)).unwrap();
    let r = rigid_edges(&path, &[1, 1, 0]).unwrap();
    assert_eq!(r.len(), 2);
    for (e, fwd) in r {
        let (u, v) = path.edge_ends(e);
        let tail = if fwd { u } else { v };
        let head = if fwd { v } else { u };
        assert_eq!(head, tail + 1);
    }
    assert_eq!(rigid_edges(&triangle(), &[3, 0, 0]).unwrap_err(), EngineError::DemandExceedsDegree { v: 0, alpha: 3, degree: 2 });
    assert_eq!(rigid_edges(&triangle(), &[2, 1, 1]).unwrap_err(), EngineError::Infeasible);
}

#[test]
fn non_rigid_part_of_the_grid_completion_is_the_cornerless_grid() {
    let g = generate(&FamilySpec::new(Family::AugmentedGrid, 4, 4)).unwrap();
    let c = completion(&g.map, g.specials.unwrap()).unwrap();
    let rigid: HashSet<EdgeId> = rigid_edges(&c.map, &c.alpha).unwrap().into_iter().map(|(e, _)| e).collect();
    let keep: Vec<bool> = (0..c.map.edge_count()).map(|e| !rigid.contains(&e)).collect();
    let free = edge_subgraph(&c.map, &keep).unwrap().map;

    let big = generate(&FamilySpec::new(Family::Grid, 7, 7)).unwrap().map;
    let corner = 6 * 7; // (7,1)
    let keep: Vec<bool> = (0..big.edge_count())
        .map(|e| {
            let (u, v) = big.edge_ends(e);
            u != corner && v != corner
        })
        .collect();
    let want = edge_subgraph(&big, &keep).unwrap().map;
    assert_eq!((free.vertex_count(), free.edge_count()), (48, 82));
    assert!(isomorphic(&free, &want, false) || isomorphic(&free, &want.mirror(), false));
}

#[test]
fn flipping_the_triangle() {
    let t = triangle();
    let sols: Vec<EdgeOrientation> = {
        let mut v = Vec::new();
        enumerate(&t, &[1, 1, 1], |x| {
            v.push(x.clone());
            Visit::Continue
        })
        .unwrap();
        v
    };
    let inner = t.bounded_faces()[0];
    let c = FlipCycle::facial(&t, inner);
    assert_eq!(c.chirality, Chirality::Ccw);
    let (ccw, cw) = if c.directed_in(&sols[0]) { (&sols[0], &sols[1]) } else { (&sols[1], &sols[0]) };
    let r = c.reversed();
    assert_eq!(r.chirality, Chirality::Cw);
    assert_eq!(&flip(cw, &r).unwrap(), ccw);
    assert_eq!(&flip(&flip(cw, &r).unwrap(), &c).unwrap(), cw);
    assert_eq!(flip(cw, &c).unwrap_err(), EngineError::CycleNotDirected);
}

#[test]
fn facial_flips_on_the_triangular_grid_keep_the_three_orientation() {
    let spec = FamilySpec::new(Family::AugmentedTriGrid, 4, 4);
    let g = generate(&spec).unwrap();
    let x = canonical_orientation(&spec).unwrap();
    let (alpha, active) = (g.alpha.unwrap(), g.active.unwrap());
    assert!(is_alpha_orientation(&g.map, &alpha, &x, Some(&active)));
    let mut flipped = 0;
    for f in g.map.bounded_faces() {
        let c = FlipCycle::facial(&g.map, f);
        if c.darts.iter().any(|&d| !active[edge_of(d)]) {
            continue;
        }
        if let Ok(y) = flip(&x, &c) {
            assert!(is_alpha_orientation(&g.map, &alpha, &y, Some(&active)));
            assert_eq!(flip(&y, &c.reversed()).unwrap(), x);
            flipped += 1;
        }
    }
    assert!(flipped >= 9);
}

#[test]
fn flip_cycle_validation() {
    let m = octahedron();
    let f = m.bounded_faces()[0];
    let darts = m.face_darts(f).to_vec();
    assert!(FlipCycle::new(&m, darts.clone()).is_ok());
    assert!(FlipCycle::new(&m, vec![darts[0], darts[0]]).is_err());
    assert!(FlipCycle::new(&m, vec![darts[0], darts[2]]).is_err());
    let outer = FlipCycle::new(&m, m.outer_walk()).unwrap();
    assert_eq!(outer.chirality, Chirality::Cw);
    assert_eq!(FlipCycle::new(&m, darts).unwrap().chirality, Chirality::Ccw);
}

#[test]
fn triangle_lattice_is_a_chain_of_two() {
    let l = lattice(&triangle(), &[1, 1, 1]).unwrap();
    assert_eq!(l.len(), 2);
    assert_ne!(l.min, l.max);
    assert!(l.leq(l.min, l.max));
    assert_eq!(l.covers.len(), 1);
    assert!(l.to_dot().starts_with("digraph"));
}

#[test]
fn stacked_lattice_has_one_element() {
    let m = random_stacked(8, 4);
    let (alpha, _) = schnyder_alpha(&m);
    let active = inner_active(&m);
    let l = lattice_with(&m, &alpha, Some(&active), LatticeOptions::default()).unwrap();
    assert_eq!(l.len(), 1);
    assert_eq!(l.min, l.max);
}

/// Checks lattice axioms from the order alone: meet and join are the
/// greatest lower and least upper bounds, and they distribute.
fn check_lattice(l: &Lattice) {
    let n = l.len();
    for a in 0..n {
        assert!(l.leq(l.min, a) && l.leq(a, l.max));
        for b in 0..n {
            let m = l.meet(a, b);
            let j = l.join(a, b);
            assert!(l.leq(m, a) && l.leq(m, b) && l.leq(a, j) && l.leq(b, j));
            for c in 0..n {
                if l.leq(c, a) && l.leq(c, b) {
                    assert!(l.leq(c, m));
                }
                if l.leq(a, c) && l.leq(b, c) {
                    assert!(l.leq(j, c));
                }
                if n <= 60 {
                    assert_eq!(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
                }
            }
        }
    }
    // Covers connect everything.
    let mut adj = vec![Vec::new(); n];
    for &(a, b, _) in &l.covers {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; n];
    let mut q = VecDeque::from([0]);
    seen[0] = true;
    while let Some(a) = q.pop_front() {
        for &b in &adj[a] {
            if !seen[b] {
                seen[b] = true;
                q.push_back(b);
            }
        }
    }
    assert!(seen.iter().all(|&s| s));
}

#[test]
fn quad_grid_lattice_is_distributive() {
    let g = generate(&FamilySpec::new(Family::QuadGrid, 4, 4)).unwrap();
    let alpha = g.alpha.unwrap();
    let l = lattice(&g.map, &alpha).unwrap();
    assert_eq!(l.len() as u64, map_oracle(&g.map, &alpha, None));
    check_lattice(&l);
}

#[test]
fn lattice_cap_is_enforced() {
    let g = generate(&FamilySpec::new(Family::QuadGrid, 4, 4)).unwrap();
    let opts = LatticeOptions { cap: 3, ..LatticeOptions::default() };
    assert_eq!(
        lattice_with(&g.map, &g.alpha.unwrap(), None, opts).unwrap_err(),
        EngineError::CapExceeded(3)
    );
}

#[test]
fn torus_counts_agree_across_methods() {
    for (fam, k, l) in [(Family::TorusGrid, 3, 3), (Family::TorusGrid, 3, 4), (Family::TriTorus, 3, 3)] {
        let g = generate(&FamilySpec::new(fam, k, l)).unwrap();
        let alpha = g.alpha.unwrap();
        let p = Problem::from_map(&g.map, &alpha).unwrap();
        let want = oracle_count(p.n, &p.edges, &alpha);
        for method in [CountMethod::Search, CountMethod::Frontier] {
            for threads in [1, 3] {
                let c = count_with(&p, CountOptions { method, threads }).unwrap();
                assert_eq!(c.count, want.into());
            }
        }
    }
}

#[test]
fn brute_force_cap() {
    let g = generate(&FamilySpec::new(Family::QuadGrid, 4, 4)).unwrap();
    let p = Problem::from_map(&g.map, &g.alpha.unwrap()).unwrap();
    assert!(matches!(brute_force_count(&p, 18), Err(EngineError::TooManyEdges { .. })));
    let t = Problem::from_map(&triangle(), &[1, 1, 1]).unwrap();
    assert_eq!(brute_force_count(&t, 18).unwrap(), 2);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn count_matches_oracles(seed in 0u64..10_000) {
        let (map, alpha) = random_alpha_instance(seed, 12);
        let p = Problem::from_map(&map, &alpha).unwrap();
        let brute = brute_force_count(&p, 18).unwrap();
        prop_assert_eq!(brute, oracle_count(p.n, &p.edges, &alpha));
        for method in [CountMethod::Search, CountMethod::Frontier] {
            for threads in [1, 4] {
                let c = count_with(&p, CountOptions { method, threads }).unwrap();
                prop_assert_eq!(c.count, BigUint::from(brute));
            }
        }
        prop_assert_eq!(all_orientations(&p).len() as u64, brute);
    }

    #[test]
    fn every_enumerated_orientation_is_valid_and_distinct(seed in 0u64..10_000) {
        let (map, alpha) = random_alpha_instance(seed, 12);
        let mut seen = HashSet::new();
        enumerate(&map, &alpha, |x| {
            assert!(is_alpha_orientation(&map, &alpha, x, None));
            assert!(seen.insert(x.clone()));
            Visit::Continue
        }).unwrap();
    }

    #[test]
    fn rigid_edges_match_enumeration(seed in 0u64..10_000) {
        let (map, alpha) = random_alpha_instance(seed, 12);
        let p = Problem::from_map(&map, &alpha).unwrap();
        let sols = all_orientations(&p);
        let want: Vec<(usize, bool)> = (0..p.m())
            .filter(|&i| sols.iter().all(|s| s[i] == sols[0][i]))
            .map(|i| (i, sols[0][i]))
            .collect();
        prop_assert_eq!(rigid_problem_edges(&p).unwrap(), want);
    }

    #[test]
    fn outgoing_cuts_are_forced(seed in 0u64..10_000) {
        let (map, alpha) = random_alpha_instance(seed, 12);
        let p = Problem::from_map(&map, &alpha).unwrap();
        let sols = all_orientations(&p);
        let n = p.n;
        for w in 1u32..(1 << n) - 1 {
            let inside = |v: Vertex| w >> v & 1 == 1;
            let cut: Vec<usize> = (0..p.m()).filter(|&i| inside(p.edges[i].0) != inside(p.edges[i].1)).collect();
            let out_of_w = |s: &Vec<bool>, i: usize| {
                let (u, v) = p.edges[i];
                let tail = if s[i] { u } else { v };
                inside(tail)
            };
            if cut.iter().all(|&i| out_of_w(&sols[0], i)) {
                prop_assert!(sols.iter().all(|s| cut.iter().all(|&i| out_of_w(s, i))));
            }
        }
    }

    #[test]
    fn flips_stay_inside_and_lattice_holds(seed in 0u64..10_000) {
        let (map, alpha) = random_alpha_instance(seed, 12);
        let l = lattice(&map, &alpha).unwrap();
        check_lattice(&l);
        for &(a, b, c) in &l.covers {
            let up = flip(&l.elements[a], &l.cycles[c].reversed()).unwrap();
            prop_assert_eq!(&up, &l.elements[b]);
            prop_assert!(is_alpha_orientation(&map, &alpha, &up, None));
        }
    }

    #[test]
    fn three_orientations_of_random_triangulations(n in 4usize..10, seed in 0u64..1000) {
        let m = random_triangulation(n, seed, 6);
        let (alpha, _) = schnyder_alpha(&m);
        let active = inner_active(&m);
        let p = Problem::with_active(&m, &alpha, Some(&active)).unwrap();
        prop_assert_eq!(count_problem(&p), BigUint::from(map_oracle(&m, &alpha, Some(&active))));
    }
}
