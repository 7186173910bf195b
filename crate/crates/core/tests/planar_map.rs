use orientcount::alpha_engine::{count_problem, Problem};
use orientcount::fixtures::{random_alpha_instance, random_triangulation};
use orientcount::generators::{generate, k4, octahedron, Family, FamilySpec};
use orientcount::planar_map::*;
use proptest::prelude::*;

fn triangle() -> PlanarMap {
    PlanarMap::build_map(&[vec![1, 2], vec![2, 0], vec![0, 1]], (0, 2)).unwrap()
}

fn grid(k: usize, l: usize) -> PlanarMap {
    generate(&FamilySpec::new(Family::Grid, k, l)).unwrap().map
}

/// Orientation count by trying all `2^m` direction vectors.
fn brute_count(map: &PlanarMap, alpha: &[u32]) -> u64 {
    let m = map.edge_count();
    (0u64..1 << m)
        .filter(|bits| {
            let mut out = vec![0u32; map.vertex_count()];
            for e in 0..m {
                let (u, v) = map.edge_ends(e);
                out[if bits >> e & 1 == 1 { u } else { v }] += 1;
            }
            out == alpha
        })
        .count() as u64
}

fn euler_holds(map: &PlanarMap) -> bool {
    map.vertex_count() + map.face_count() == map.edge_count() + 2
}

#[test]
fn triangle_counts() {
    let t = triangle();
    assert_eq!((t.vertex_count(), t.edge_count(), t.face_count()), (3, 3, 2));
    assert!(t.is_triangulation());
}

#[test]
fn k4_counts() {
    let m = k4();
    assert_eq!((m.vertex_count(), m.edge_count(), m.face_count()), (4, 6, 4));
    assert!(m.face_darts(m.outer_face()).len() == 3);
}

#[test]
fn rotation_of_k5_on_the_torus_is_rejected() {
    // Vertex i sees i+1, i+2, i+3, i+4 in this cyclic order; as a sphere
    // embedding this gives too few faces.
    let rot: Vec<Vec<Vertex>> = (0..5).map(|i| (1..5).map(|s| (i + s) % 5).collect()).collect();
    match PlanarMap::build_map(&rot, (0, 1)) {
        Err(MapError::EulerViolation { n: 5, m: 10, f }) => assert_ne!(f, 7),
        other => panic!("expected an Euler violation, got {other:?}"),
    }
}

#[test]
fn asymmetric_adjacency_and_loops_are_rejected() {
    let r = PlanarMap::build_map(&[vec![1, 2], vec![0], vec![0, 1]], (0, 1));
    assert!(matches!(r, Err(MapError::NonSymmetricAdjacency(..))));
    let r = PlanarMap::build_map(&[vec![0, 1], vec![0]], (0, 1));
    assert!(matches!(r, Err(MapError::LoopEdge(0))));
}

#[test]
fn dart_structure() {
    let m = octahedron();
    for d in 0..m.dart_count() {
        assert_eq!(twin(twin(d)), d);
        assert_ne!(twin(d), d);
        assert_eq!(m.origin(twin(d)), m.target(d));
        assert_eq!(m.rot_prev(m.rot_next(d)), d);
        assert_eq!(m.origin(m.rot_next(d)), m.origin(d));
        assert!(m.face_darts(m.face_of(d)).contains(&d));
    }
    let total: usize = (0..m.face_count()).map(|f| m.face_darts(f).len()).sum();
    assert_eq!(total, m.dart_count());
    assert_eq!(m.degrees().iter().sum::<usize>(), 2 * m.edge_count());
}

#[test]
fn dual_of_triangle_is_a_triple_edge() {
    let d = dual(&triangle()).unwrap();
    assert_eq!((d.vertex_count(), d.edge_count()), (2, 3));
    assert!(d.has_multi_edges());
}

#[test]
fn k4_is_self_dual() {
    let d = dual(&k4()).unwrap();
    assert!(isomorphic(&d, &k4(), false));
}

#[test]
fn dual_of_four_cycle() {
    let d = dual(&grid(2, 2)).unwrap();
    assert_eq!((d.vertex_count(), d.edge_count()), (2, 4));
}

#[test]
fn double_dual_is_isomorphic() {
    for m in [k4(), octahedron(), grid(3, 3), grid(2, 4), random_triangulation(8, 3, 5)] {
        let dd = dual(&dual(&m).unwrap()).unwrap();
        assert!(isomorphic(&dd, &m, false));
    }
}

#[test]
fn angle_graph_of_triangle() {
    let a = angle_graph(&triangle());
    assert_eq!((a.vertex_count(), a.edge_count()), (5, 6));
    assert!((0..a.face_count()).all(|f| a.face_darts(f).len() == 4));
}

#[test]
fn angle_graph_is_a_bipartite_quadrangulation() {
    for m in [k4(), octahedron(), grid(4, 5), random_triangulation(9, 7, 8)] {
        let a = angle_graph(&m);
        assert!(a.is_bipartite());
        assert_eq!(a.edge_count(), 2 * m.edge_count());
        assert!((0..a.face_count()).all(|f| a.face_darts(f).len() == 4));
        let deg = a.degrees();
        for v in 0..m.vertex_count() {
            assert_eq!(deg[v], m.degree(v));
        }
        // Face vertices in face order with the outer face last.
        let n = m.vertex_count();
        let outer = m.outer_face();
        let mut sizes: Vec<usize> = (0..m.face_count()).filter(|&f| f != outer).map(|f| m.face_darts(f).len()).collect();
        sizes.push(m.face_darts(outer).len());
        assert_eq!(&deg[n..], &sizes[..]);
        assert!(euler_holds(&a));
    }
}

#[test]
fn k4_completion() {
    let m = k4();
    let specials: [Vertex; 3] = {
        let w = m.outer_walk();
        [m.origin(w[0]), m.origin(w[1]), m.origin(w[2])]
    };
    let c = completion(&m, specials).unwrap();
    // 4 primal, 3 bounded-face duals, 3 b_i, 6 edge crossings, 3 ray
    // crossings, v_inf.
    assert_eq!(c.map.vertex_count(), 4 + 3 + 3 + 6 + 3 + 1);
    assert_eq!(c.alpha.iter().map(|&a| a as usize).sum::<usize>(), c.map.edge_count());
    check_completion(&c);
}

fn check_completion(c: &Completion) {
    let deg = c.map.degrees();
    for (v, kind) in c.kind.iter().enumerate() {
        match kind {
            CompletionVertex::Edge(_) | CompletionVertex::Ray(_) => {
                assert_eq!(deg[v], 4);
                assert_eq!(c.alpha[v], 1);
            }
            CompletionVertex::Infinity => {
                assert_eq!(deg[v], 6);
                assert_eq!(c.alpha[v], 0);
            }
            _ => assert_eq!(c.alpha[v], 3),
        }
    }
    assert_eq!(c.alpha.iter().map(|&a| a as usize).sum::<usize>(), c.map.edge_count());
    assert!(euler_holds(&c.map));
}

#[test]
fn completion_rejects_bad_input() {
    let g = grid(3, 3);
    assert_eq!(completion(&g, [0, 2, 8]).unwrap_err(), MapError::NotThreeConnected);
    let m = octahedron();
    let inner = (0..6).find(|v| !m.outer_vertices().contains(v)).unwrap();
    let outer = m.outer_vertices();
    assert_eq!(
        completion(&m, [outer[0], outer[1], inner]).unwrap_err(),
        MapError::SpecialVerticesNotOnOuterFace
    );
}

#[test]
fn completion_of_augmented_grids() {
    for (k, l) in [(2, 2), (3, 3), (4, 4)] {
        let g = generate(&FamilySpec::new(Family::AugmentedGrid, k, l)).unwrap();
        let c = completion(&g.map, g.specials.unwrap()).unwrap();
        check_completion(&c);
    }
}

#[test]
fn subdivided_triangle() {
    let t = triangle();
    let (s, a) = subdivide(&t, &[1, 1, 1]);
    assert_eq!((s.vertex_count(), s.edge_count()), (6, 6));
    assert_eq!(a, vec![1; 6]);
    assert!(s.is_bipartite());
    assert_eq!(brute_count(&s, &a), 2);
    assert_eq!(brute_count(&t, &[1, 1, 1]), 2);
}

#[test]
fn subdividing_an_infeasible_demand() {
    let m = k4();
    let alpha = [3, 3, 0, 1];
    let (s, a) = subdivide(&m, &alpha);
    assert_eq!((s.vertex_count(), s.edge_count()), (10, 12));
    assert_eq!(brute_count(&m, &alpha), 0);
    assert_eq!(count_problem(&Problem::from_map(&s, &a).unwrap()), 0u32.into());
}

#[test]
fn pmap_round_trip_text_and_json() {
    for m in [k4(), octahedron(), grid(3, 4), random_triangulation(9, 5, 6)] {
        let alpha: Vec<u32> = m.degrees().iter().map(|&d| (d / 2) as u32).collect();
        let text = write_pmap(&m, Some(&alpha)).unwrap();
        let (back, a) = parse_pmap(&text).unwrap();
        assert_eq!(write_pmap(&back, a.as_deref()).unwrap(), text);
        assert_eq!(a.as_deref(), Some(&alpha[..]));
        assert!(isomorphic(&back, &m, true));
        let json = write_pmap_json(&m, None).unwrap().to_string();
        let (back, a) = parse_pmap_json(&json).unwrap();
        assert!(a.is_none());
        assert_eq!(write_pmap_json(&back, None).unwrap().to_string(), json);
    }
}

#[test]
fn pmap_errors() {
    assert!(parse_pmap("n 3\nrot 0: 1 2\nrot 1: 2 0\nouter: 0 2\n").is_err());
    assert!(parse_pmap("n x\n").is_err());
    assert!(parse_pmap("n 3\nrot 0: 1 2\nrot 1: 2 0\nrot 2: 0 1\nouter: 0 1\n").is_ok());
}

#[test]
fn three_connectivity() {
    assert!(is_three_connected(&k4()));
    assert!(is_three_connected(&octahedron()));
    assert!(!is_three_connected(&grid(3, 3)));
    let g = generate(&FamilySpec::new(Family::AugmentedGrid, 3, 3)).unwrap();
    assert!(is_three_connected(&g.map));
}

#[test]
fn mirror_flips_chirality() {
    let m = random_triangulation(7, 2, 3);
    let mm = m.mirror();
    assert!(isomorphic(&mm.mirror(), &m, true));
    assert_eq!(mm.face_count(), m.face_count());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_triangulations_are_valid(n in 4usize..12, seed in 0u64..1000, flips in 0usize..20) {
        let m = random_triangulation(n, seed, flips);
        prop_assert!(m.is_triangulation());
        prop_assert!(euler_holds(&m));
        prop_assert_eq!(m.edge_count(), 3 * n - 6);
        prop_assert!(is_three_connected(&m));
    }

    #[test]
    fn subdivision_preserves_counts(seed in 0u64..500) {
        let (m, alpha) = random_alpha_instance(seed, 10);
        let (s, a) = subdivide(&m, &alpha);
        prop_assert_eq!(s.vertex_count(), m.vertex_count() + m.edge_count());
        prop_assert_eq!(s.edge_count(), 2 * m.edge_count());
        prop_assert!(s.is_bipartite());
        prop_assert_eq!(&a[..m.vertex_count()], &alpha[..]);
        prop_assert_eq!(brute_count(&s, &a), brute_count(&m, &alpha));
    }

    #[test]
    fn completion_invariants(n in 4usize..10, seed in 0u64..300) {
        let m = random_triangulation(n, seed, 4);
        let w = m.outer_walk();
        let c = completion(&m, [m.origin(w[0]), m.origin(w[1]), m.origin(w[2])]).unwrap();
        check_completion(&c);
        // Primal and dual vertices: n + (f-1) + 3; crossings m + 3; v_inf.
        prop_assert_eq!(c.map.vertex_count(), n + (m.face_count() - 1) + 3 + m.edge_count() + 3 + 1);
    }

    #[test]
    fn pmap_round_trip(n in 4usize..12, seed in 0u64..1000) {
        let m = random_triangulation(n, seed, 5);
        let text = write_pmap(&m, None).unwrap();
        let (back, _) = parse_pmap(&text).unwrap();
        prop_assert_eq!(write_pmap(&back, None).unwrap(), text);
    }
}
