//! Sign vectors of bipolar orientations on inner triangulations.
//!
//! A bounded triangle is `+` when its direct source-sink edge has the
//! triangle on its left, i.e. when exactly one dart of its counterclockwise
//! boundary agrees with the orientation.

use std::fmt;

use super::bipolar::is_bipolar;
use super::StructError;
use crate::alpha_engine::EdgeOrientation;
use crate::planar_map::{edge_of, twin, Dart, FaceId, PlanarMap, Vertex};
use crate::reductions::unique_perfect_matching;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

pub fn signs_to_string(signs: &[Sign]) -> String {
    signs.iter().map(|s| s.to_string()).collect()
}

pub fn parse_signs(text: &str) -> Result<Vec<Sign>, StructError> {
    text.chars()
        .map(|c| match c {
            '+' => Ok(Sign::Plus),
            '-' | '\u{2212}' => Ok(Sign::Minus),
            other => Err(StructError::InvalidInput(format!("unexpected sign character {other:?}"))),
        })
        .collect()
}

fn check_poles(map: &PlanarMap, s: Vertex, t: Vertex) -> Result<(), StructError> {
    let outer = map.outer_vertices();
    if s == t || !outer.contains(&s) || !outer.contains(&t) {
        return Err(StructError::BadPoles(s, t));
    }
    Ok(())
}

/// One sign per bounded face, in the order of [`PlanarMap::bounded_faces`].
pub fn sign_encode(map: &PlanarMap, x: &EdgeOrientation) -> Result<Vec<Sign>, StructError> {
    if !map.is_inner_triangulation() {
        return Err(StructError::NotInnerTriangulation);
    }
    Ok(map
        .bounded_faces()
        .into_iter()
        .map(|f| {
            let agree = map.face_darts(f).iter().filter(|&&d| x.along(d)).count();
            if agree == 1 {
                Sign::Plus
            } else {
                Sign::Minus
            }
        })
        .collect())
}

/// Recovers the bipolar orientation with poles `s`, `t` from its signs.
/// The outer boundary is oriented as two paths from `s` to `t` and the
/// edges at the poles are fixed; then the
/// vertex rule (a run of unknown edges between two outgoing edges at a
/// vertex that already has an incoming edge is outgoing) and the face rule
/// (a triangle with two known edges gets its third from its sign) run until
/// nothing changes.
pub fn sign_decode(map: &PlanarMap, s: Vertex, t: Vertex, signs: &[Sign]) -> Result<EdgeOrientation, StructError> {
    if !map.is_inner_triangulation() {
        return Err(StructError::NotInnerTriangulation);
    }
    check_poles(map, s, t)?;
    let faces = map.bounded_faces();
    if signs.len() != faces.len() {
        return Err(StructError::Length {
            expected: faces.len(),
            got: signs.len(),
        });
    }
    let m = map.edge_count();
    let mut dir: Vec<Option<bool>> = vec![None; m];
    let along = |dir: &[Option<bool>], d: Dart| dir[edge_of(d)].map(|f| f == (d & 1 == 0));
    let set = |dir: &mut [Option<bool>], d: Dart| dir[edge_of(d)] = Some(d & 1 == 0);

    // Outer walk is clockwise; from s to t along it, and against it on the
    // other side.
    let walk = map.outer_walk();
    let k = walk.len();
    let ps = walk.iter().position(|&d| map.origin(d) == s).unwrap();
    let mut i = ps;
    let mut forward = true;
    for _ in 0..k {
        let d = walk[i];
        if map.origin(d) == t {
            forward = false;
        }
        set(&mut dir, if forward { d } else { twin(d) });
        i = (i + 1) % k;
    }

    // Every edge leaves the source and enters the sink.
    for d in map.darts_at(s) {
        set(&mut dir, d);
    }
    for d in map.darts_at(t) {
        set(&mut dir, twin(d));
    }

    let mut face_sign = vec![None; map.face_count()];
    for (f, &sg) in faces.iter().zip(signs) {
        face_sign[*f] = Some(sg);
    }
    loop {
        let mut changed = false;
        // Vertex rule.
        for v in 0..map.vertex_count() {
            if v == s || v == t {
                continue;
            }
            let darts: Vec<Dart> = map.darts_at(v).collect();
            let states: Vec<Option<bool>> = darts.iter().map(|&d| along(&dir, d)).collect();
            if !states.contains(&Some(false)) || !states.contains(&Some(true)) {
                continue;
            }
            let len = darts.len();
            for a in 0..len {
                if states[a] != Some(true) {
                    continue;
                }
                // Run of unknowns after an outgoing edge, ended by another
                // outgoing edge.
                let mut b = (a + 1) % len;
                let mut run = Vec::new();
                while states[b].is_none() {
                    run.push(darts[b]);
                    b = (b + 1) % len;
                }
                if !run.is_empty() && states[b] == Some(true) {
                    for d in run {
                        set(&mut dir, d);
                    }
                    changed = true;
                    break;
                }
            }
        }
        // Face rule.
        for &f in &faces {
            let walk = map.face_darts(f);
            let known: Vec<Option<bool>> = walk.iter().map(|&d| along(&dir, d)).collect();
            let unknown: Vec<usize> = (0..3).filter(|&i| known[i].is_none()).collect();
            if unknown.len() != 1 {
                continue;
            }
            let agree = known.iter().filter(|&&k| k == Some(true)).count();
            let target = if face_sign[f] == Some(Sign::Plus) { 1 } else { 2 };
            let d = walk[unknown[0]];
            // The unknown dart must add exactly the missing agreement.
            match target as isize - agree as isize {
                0 => set(&mut dir, twin(d)),
                1 => set(&mut dir, d),
                _ => return Err(StructError::AxiomViolation(format!("face {f} cannot carry its sign"))),
            }
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let open = dir.iter().filter(|d| d.is_none()).count();
    if open > 0 {
        return Err(StructError::Stalled(open));
    }
    let x = EdgeOrientation::from_bools(&dir.iter().map(|d| d.unwrap()).collect::<Vec<_>>());
    if !is_bipolar(map, &x, s, t) {
        return Err(StructError::AxiomViolation("decoded orientation is not bipolar".into()));
    }
    if sign_encode(map, &x)? != signs {
        return Err(StructError::AxiomViolation("decoded orientation has other signs".into()));
    }
    Ok(x)
}

/// Extends bounded-face signs to all faces (indexed by face id): the outer
/// face gets the sign opposite to the bounded face on the edge `st`.
pub fn full_signs(map: &PlanarMap, s: Vertex, t: Vertex, bounded: &[Sign]) -> Result<Vec<Sign>, StructError> {
    let faces = map.bounded_faces();
    if bounded.len() != faces.len() {
        return Err(StructError::Length {
            expected: faces.len(),
            got: bounded.len(),
        });
    }
    let d = map
        .find_dart(s, t)
        .ok_or_else(|| StructError::InvalidInput(format!("no edge between {s} and {t}")))?;
    let outer = map.outer_face();
    let inner_face = if map.face_of(d) == outer { map.face_of(twin(d)) } else { map.face_of(d) };
    if map.face_of(d) != outer && map.face_of(twin(d)) != outer {
        return Err(StructError::InvalidInput("edge st is not on the outer face".into()));
    }
    let mut all = vec![Sign::Plus; map.face_count()];
    let mut inner_sign = Sign::Plus;
    for (&f, &sg) in faces.iter().zip(bounded) {
        all[f] = sg;
        if f == inner_face {
            inner_sign = sg;
        }
    }
    all[outer] = inner_sign.flip();
    Ok(all)
}

/// Whether both halves of the reduced angle graph (vertices other than the
/// poles together with the faces of one sign) have a unique perfect
/// matching. `signs` is indexed by face id and covers the outer face.
pub fn sign_validity_matching(map: &PlanarMap, s: Vertex, t: Vertex, signs: &[Sign]) -> bool {
    if signs.len() != map.face_count() {
        return false;
    }
    let verts: Vec<Vertex> = (0..map.vertex_count()).filter(|&v| v != s && v != t).collect();
    let mut vindex = vec![usize::MAX; map.vertex_count()];
    for (i, &v) in verts.iter().enumerate() {
        vindex[v] = i;
    }
    [Sign::Plus, Sign::Minus].into_iter().all(|want| {
        let faces: Vec<FaceId> = (0..map.face_count()).filter(|&f| signs[f] == want).collect();
        let mut findex = vec![usize::MAX; map.face_count()];
        for (i, &f) in faces.iter().enumerate() {
            findex[f] = i;
        }
        let mut edges = Vec::new();
        for d in 0..map.dart_count() {
            let (v, f) = (map.origin(d), map.face_of(d));
            if vindex[v] != usize::MAX && findex[f] != usize::MAX {
                edges.push((vindex[v], findex[f]));
            }
        }
        edges.sort_unstable();
        edges.dedup();
        unique_perfect_matching(verts.len(), faces.len(), &edges)
    })
}

/// Whether bounded-face signs come from a bipolar orientation with poles
/// `s`, `t`. The matching test is symmetric under flipping every sign, which
/// exchanges the poles; the triangle on the edge `st` separates the two,
/// since it is `+` exactly when it lies left of `s -> t`. Only defined for
/// triangulations.
pub fn sign_vector_valid(map: &PlanarMap, s: Vertex, t: Vertex, bounded: &[Sign]) -> Result<bool, StructError> {
    if !map.is_triangulation() {
        return Err(StructError::InvalidInput("the matching criterion needs a triangulation".into()));
    }
    check_poles(map, s, t)?;
    let all = full_signs(map, s, t, bounded)?;
    let d = map.find_dart(s, t).expect("full_signs checked the edge st");
    let outer = map.outer_face();
    let expected = if map.face_of(d) == outer { Sign::Minus } else { Sign::Plus };
    let st_face = if map.face_of(d) == outer { map.face_of(twin(d)) } else { map.face_of(d) };
    Ok(all[st_face] == expected && sign_validity_matching(map, s, t, &all))
}
