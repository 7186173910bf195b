//! Seeded random instances shared by the tests, the acceptance suite and
//! the `verify` command. Every instance is a pure function of its seed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::alpha_engine::EdgeOrientation;
use crate::generators::stacked_triangulation;
use crate::planar_map::{edge_subgraph, PlanarMap, Vertex};

/// Seeds of the stacked triangulations on `4..=9` vertices.
pub const STACKED_SEEDS: [u64; 6] = [11, 12, 13, 14, 15, 16];
/// Seeds of the small random triangulations.
pub const TRIANGULATION_SEEDS: [u64; 5] = [101, 102, 103, 104, 105];
/// Seeds of the random `(map, α)` instances.
pub const ALPHA_SEEDS: [u64; 5] = [201, 202, 203, 204, 205];

/// Faces to stack into, grown from the triangle `0 1 2`, for a
/// triangulation on `n >= 3` vertices.
pub fn random_stacking(n: usize, seed: u64) -> Vec<[Vertex; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut faces: Vec<[Vertex; 3]> = vec![[0, 1, 2]];
    let mut seq = Vec::new();
    for x in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces.swap_remove(i);
        seq.push([a, b, c]);
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    seq
}

pub fn random_stacked(n: usize, seed: u64) -> PlanarMap {
    stacked_triangulation(&random_stacking(n, seed)).expect("stacking sequence names existing faces")
}

/// A stacked triangulation on `n` vertices followed by `flips` random
/// flips of inner edges; the outer triangle `0 1 2` is kept.
pub fn random_triangulation(n: usize, seed: u64, flips: usize) -> PlanarMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let map = random_stacked(n, seed);
    let outer = map.outer_face();
    let mut faces: Vec<Vec<Vertex>> = map.bounded_faces().iter().map(|&f| map.face_vertices(f)).collect();
    let outer_cycle = map.face_vertices(outer);
    let has_edge = |faces: &[Vec<Vertex>], a: Vertex, b: Vertex| {
        faces.iter().any(|f| (0..3).any(|i| (f[i], f[(i + 1) % 3]) == (a, b) || (f[i], f[(i + 1) % 3]) == (b, a)))
            || (0..3).any(|i| {
                let (p, q) = (outer_cycle[i], outer_cycle[(i + 1) % 3]);
                (p, q) == (a, b) || (p, q) == (b, a)
            })
    };
    for _ in 0..flips {
        // Pick a bounded face and one of its sides shared with another
        // bounded face.
        let fi = rng.gen_range(0..faces.len());
        let side = rng.gen_range(0..3);
        let (u, v, a) = (faces[fi][side], faces[fi][(side + 1) % 3], faces[fi][(side + 2) % 3]);
        let Some(gi) = faces
            .iter()
            .position(|g| (0..3).any(|i| g[i] == v && g[(i + 1) % 3] == u))
        else {
            continue;
        };
        let g = &faces[gi];
        let b = *g.iter().find(|&&w| w != u && w != v).unwrap();
        if has_edge(&faces, a, b) {
            continue;
        }
        // Triangles (u, v, a) and (v, u, b) become (a, u, b) and (b, v, a).
        faces[fi] = vec![a, u, b];
        faces[gi] = vec![b, v, a];
    }
    let mut all = faces;
    all.push(outer_cycle);
    let outer = all.len() - 1;
    PlanarMap::from_faces(n, &all, outer).expect("flips keep a triangulation")
}

/// A connected planar map with at most `max_edges` edges, cut out of a
/// random triangulation, with the demand of a random orientation of it.
pub fn random_alpha_instance(seed: u64, max_edges: usize) -> (PlanarMap, Vec<u32>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(5..=6);
    let tri = random_triangulation(n, seed, 4);
    let mut keep = vec![true; tri.edge_count()];
    let mut order: Vec<usize> = (0..tri.edge_count()).collect();
    order.shuffle(&mut rng);
    let target = rng.gen_range(n..=max_edges.min(tri.edge_count()));
    let mut kept = tri.edge_count();
    for e in order {
        if kept <= target {
            break;
        }
        keep[e] = false;
        if edge_subgraph(&tri, &keep).is_ok_and(|s| s.map.vertex_count() == n) {
            kept -= 1;
        } else {
            keep[e] = true;
        }
    }
    let map = edge_subgraph(&tri, &keep).expect("kept edges are connected").map;
    let bits: Vec<bool> = (0..map.edge_count()).map(|_| rng.gen()).collect();
    let alpha = EdgeOrientation::from_bools(&bits).out_degrees(&map, None);
    (map, alpha)
}
