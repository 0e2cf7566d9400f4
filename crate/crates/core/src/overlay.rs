//! Overlay of drawn curves on an embedded graph.
//!
//! Inside every face the curve pieces are realised as straight chords of a
//! convex polygon whose corners are the crossing points on the face
//! boundary, which fixes where curves cross each other. The result is again
//! a combinatorial map of the same surface.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::curve::DrawnCurve;
use crate::error::{Error, Result};
use crate::surface::{CombinatorialSurface, Edge, EdgeKind, Side, VertexId};
use crate::weight::Weight;

#[derive(Clone, Debug)]
pub struct Arrangement {
    pub base: CombinatorialSurface,
    pub inserted_curves: Vec<DrawnCurve>,
    pub overlay: CombinatorialSurface,
    /// Vertices where two curve pieces cross.
    pub crossing_vertices: Vec<VertexId>,
    /// Number of points where a curve crosses an edge of the graph.
    pub graph_crossings: usize,
}

impl Arrangement {
    /// Vertices plus edges of the overlay plus graph crossings.
    pub fn complexity(&self) -> usize {
        self.overlay.num_vertices() + self.overlay.num_edges() + self.graph_crossings
    }
}

type Pt = (i128, i128);

fn orient(a: Pt, b: Pt, c: Pt) -> i128 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

/// Endpoint of a chord: a crossing point seen from one side, or a free end.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Point { point: usize, side: i8 },
    Free,
}

struct Chord {
    face: usize,
    ends: [End; 2],
    geo: [Pt; 2],
    name: String,
}

pub fn overlay(s: &CombinatorialSurface, curves: &[DrawnCurve]) -> Result<Arrangement> {
    for c in curves {
        c.validate(s)?;
    }
    // crossing points, ordered along each edge from u to v by (curve, step)
    let mut on_edge: Vec<Vec<usize>> = vec![Vec::new(); s.num_edges()];
    let mut point_edge = Vec::new();
    let mut point_id: HashMap<(usize, usize), usize> = HashMap::new();
    for (ci, c) in curves.iter().enumerate() {
        for (i, st) in c.steps.iter().enumerate() {
            point_id.insert((ci, i), point_edge.len());
            on_edge[st.edge].push(point_edge.len());
            point_edge.push(st.edge);
        }
    }
    let mut rank = vec![0usize; point_edge.len()];
    for list in &on_edge {
        for (r, &p) in list.iter().enumerate() {
            rank[p] = r;
        }
    }

    // chord endpoints as atoms of their face polygon
    let mut chords: Vec<Chord> = Vec::new();
    for (ci, c) in curves.iter().enumerate() {
        let n = c.steps.len();
        if n == 0 {
            continue;
        }
        let pt = |i: usize| point_id[&(ci, i)];
        let mut push = |face: usize, a: End, b: End, j: usize| {
            chords.push(Chord { face, ends: [a, b], geo: [(0, 0); 2], name: format!("c{ci}.{j}") });
        };
        if !c.closed {
            push(c.steps[0].face, End::Free, End::Point { point: pt(0), side: c.steps[0].side }, 0);
        }
        for i in 0..n {
            if i + 1 == n && !c.closed {
                let face = c.landing(s, i);
                push(face, End::Point { point: pt(i), side: -c.steps[i].side }, End::Free, i + 1);
            } else {
                let j = (i + 1) % n;
                push(
                    c.steps[j].face,
                    End::Point { point: pt(i), side: -c.steps[i].side },
                    End::Point { point: pt(j), side: c.steps[j].side },
                    i + 1,
                );
            }
        }
    }

    // geometric positions on a convex arc, traced so that increasing index
    // turns clockwise, matching the traced orientation of the face
    let atom_index = |p: usize, side: i8| -> usize {
        let e = point_edge[p];
        let sd = Side { edge: e, sign: side };
        let f = s.face_of_side(sd);
        let slot = s.slot_of_side(sd);
        let mut off = 0;
        for k in 0..slot {
            off += on_edge[s.side_at(f, k).edge].len();
        }
        let t = s.faces[f].walk[slot];
        let n = on_edge[e].len();
        off + if t.forward() { rank[p] } else { n - 1 - rank[p] }
    };
    let atom_pos = |k: usize| -> Pt {
        let k = k as i128;
        (-4 * k, 16 * k * k)
    };
    let atoms_in_face = |f: usize| -> usize { s.sides_of_face(f).map(|sd| on_edge[sd.edge].len()).sum() };
    for ch in &mut chords {
        let n_atoms = atoms_in_face(ch.face);
        let mut anchor = None;
        for (k, end) in ch.ends.iter().enumerate() {
            if let End::Point { point, side } = *end {
                let a = atom_index(point, side);
                ch.geo[k] = atom_pos(a);
                anchor = Some(a);
            }
        }
        let a = anchor.expect("chord has a point end");
        for (k, end) in ch.ends.iter().enumerate() {
            if *end == End::Free {
                let (x, y) = if a + 1 < n_atoms {
                    let x = -4 * a as i128 - 2;
                    (x, x * x + 2)
                } else if a > 0 {
                    let x = -4 * a as i128 + 2;
                    (x, x * x + 2)
                } else {
                    (1, 5)
                };
                ch.geo[k] = (x, y);
            }
        }
    }

    // chord crossings
    let mut on_chord: Vec<Vec<(i128, i128, usize)>> = vec![Vec::new(); chords.len()];
    let mut crossings: Vec<[usize; 2]> = Vec::new();
    let mut by_face: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, ch) in chords.iter().enumerate() {
        by_face.entry(ch.face).or_default().push(i);
    }
    let mut faces: Vec<_> = by_face.into_iter().collect();
    faces.sort();
    for (_, list) in &faces {
        for (x, &i) in list.iter().enumerate() {
            for &j in &list[x + 1..] {
                let [a, b] = chords[i].geo;
                let [c, d] = chords[j].geo;
                let (o1, o2, o3, o4) = (orient(a, b, c), orient(a, b, d), orient(c, d, a), orient(c, d, b));
                if o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0 {
                    if (o1 == 0 && o2 == 0) || (o1.signum() != o2.signum() && o3.signum() != o4.signum()) {
                        return Err(Error::Invalid("curves are not in general position".into()));
                    }
                    continue;
                }
                if o1.signum() != o2.signum() && o3.signum() != o4.signum() {
                    let id = crossings.len();
                    crossings.push([i, j]);
                    // parameter along each chord as a fraction num/den with den > 0
                    let (n1, d1) = norm(o3, o3 - o4);
                    let (n2, d2) = norm(o1, o1 - o2);
                    on_chord[i].push((n1, d1, id));
                    on_chord[j].push((n2, d2, id));
                }
            }
        }
    }
    for list in &mut on_chord {
        list.sort_by(|x, y| (x.0 * y.1).cmp(&(y.0 * x.1)));
        if list.windows(2).any(|w| w[0].0 * w[1].1 == w[1].0 * w[0].1) {
            return Err(Error::Invalid("three curve pieces meet at a point".into()));
        }
    }

    // assemble the overlay map; original vertices keep their indices
    let nv0 = s.num_vertices();
    let mut vertex_names = s.vertex_names.clone();
    for (p, &e) in point_edge.iter().enumerate() {
        vertex_names.push(format!("{}@{}", s.edges[e].name, p));
    }
    let cross_v0 = vertex_names.len();
    for i in 0..crossings.len() {
        vertex_names.push(format!("x{i}"));
    }
    let mut free_v = HashMap::new();
    for (i, ch) in chords.iter().enumerate() {
        for (k, end) in ch.ends.iter().enumerate() {
            if *end == End::Free {
                free_v.insert((i, k), vertex_names.len());
                vertex_names.push(format!("end{i}.{k}"));
            }
        }
    }
    let mut edges: Vec<Edge> = Vec::new();
    let mut rotations: Vec<Vec<usize>> = vec![Vec::new(); vertex_names.len()];
    // per point: darts towards u, v, side -1 chord, side +1 chord
    let mut point_darts = vec![[usize::MAX; 4]; point_edge.len()];
    let mut first_last = vec![(usize::MAX, usize::MAX); s.num_edges()];
    for (e, edge) in s.edges.iter().enumerate() {
        let pts = &on_edge[e];
        let mut prev = edge.u;
        for k in 0..=pts.len() {
            let next = if k < pts.len() { nv0 + pts[k] } else { edge.v };
            let id = edges.len();
            let name = if pts.is_empty() { edge.name.clone() } else { format!("{}#{k}", edge.name) };
            edges.push(Edge {
                name,
                u: prev,
                v: next,
                weight: edge.weight,
                sign: if k == pts.len() { edge.sign } else { 1 },
                kind: edge.kind,
            });
            if k == 0 {
                first_last[e].0 = 2 * id;
            } else {
                point_darts[pts[k - 1]][1] = 2 * id;
            }
            if k == pts.len() {
                first_last[e].1 = 2 * id + 1;
            } else {
                point_darts[pts[k]][0] = 2 * id + 1;
            }
            prev = next;
        }
    }
    for v in 0..nv0 {
        rotations[v] = s.rotations[v]
            .iter()
            .map(|&d| if d % 2 == 0 { first_last[d / 2].0 } else { first_last[d / 2].1 })
            .collect();
    }
    let mut cross_darts: Vec<Vec<(usize, (Pt, Pt))>> = vec![Vec::new(); crossings.len()];
    for (i, ch) in chords.iter().enumerate() {
        let frame = |k: usize| -> i8 {
            match ch.ends[k] {
                End::Point { point, side } => s.face_frame(Side { edge: point_edge[point], sign: side }),
                End::Free => 1,
            }
        };
        let vert = |k: usize| -> usize {
            match ch.ends[k] {
                End::Point { point, .. } => nv0 + point,
                End::Free => free_v[&(i, k)],
            }
        };
        let mut seq: Vec<(usize, i8)> = vec![(vert(0), frame(0))];
        for &(_, _, x) in &on_chord[i] {
            seq.push((cross_v0 + x, 1));
        }
        seq.push((vert(1), frame(1)));
        let m = seq.len() - 1;
        for k in 0..m {
            let id = edges.len();
            edges.push(Edge {
                name: format!("{}#{k}", ch.name),
                u: seq[k].0,
                v: seq[k + 1].0,
                weight: Weight::ZERO,
                sign: seq[k].1 * seq[k + 1].1,
                kind: EdgeKind::Regular,
            });
            for (dart, at, pos) in [(2 * id, k, 0usize), (2 * id + 1, k + 1, 1usize)] {
                let endpoint = if at == 0 {
                    Some(0)
                } else if at == m {
                    Some(1)
                } else {
                    None
                };
                match endpoint {
                    Some(end) => match ch.ends[end] {
                        End::Point { point, side } => {
                            point_darts[point][if side < 0 { 2 } else { 3 }] = dart;
                        }
                        End::Free => rotations[seq[at].0].push(dart),
                    },
                    None => {
                        let x = on_chord[i][at - 1].2;
                        // direction of travel along the chord out of the crossing
                        let towards_end = pos == 0;
                        cross_darts[x].push((dart, chord_dir(&chords[i], towards_end)));
                    }
                }
            }
        }
    }
    for (p, d) in point_darts.iter().enumerate() {
        rotations[nv0 + p] = vec![d[1], d[2], d[0], d[3]];
    }
    for (x, darts) in cross_darts.iter().enumerate() {
        let mut ds: Vec<(usize, Pt)> = darts.iter().map(|&(d, dir)| (d, dir_vec(dir))).collect();
        let base = ds[0].1;
        ds.sort_by(|a, b| angle_cmp(base, a.1, b.1));
        rotations[cross_v0 + x] = ds.into_iter().map(|(d, _)| d).collect();
    }
    let overlay = CombinatorialSurface::from_parts(vertex_names, edges, rotations, s.terminals.clone())?;
    Ok(Arrangement {
        base: s.clone(),
        inserted_curves: curves.to_vec(),
        overlay,
        crossing_vertices: (cross_v0..cross_v0 + crossings.len()).collect(),
        graph_crossings: point_edge.len(),
    })
}

fn norm(n: i128, d: i128) -> (i128, i128) {
    if d < 0 {
        (-n, -d)
    } else {
        (n, d)
    }
}

fn chord_dir(ch: &Chord, towards_end: bool) -> (Pt, Pt) {
    if towards_end {
        (ch.geo[0], ch.geo[1])
    } else {
        (ch.geo[1], ch.geo[0])
    }
}

fn dir_vec(dir: (Pt, Pt)) -> Pt {
    (dir.1 .0 - dir.0 .0, dir.1 .1 - dir.0 .1)
}

fn half(base: Pt, v: Pt) -> u8 {
    let cross = base.0 * v.1 - base.1 * v.0;
    let dot = base.0 * v.0 + base.1 * v.1;
    if cross > 0 || (cross == 0 && dot > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting at `base`.
fn angle_cmp(base: Pt, a: Pt, b: Pt) -> Ordering {
    let (ha, hb) = (half(base, a), half(base, b));
    if ha != hb {
        return ha.cmp(&hb);
    }
    let cross = a.0 * b.1 - a.1 * b.0;
    0.cmp(&cross)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::Crossing;
    use crate::surface::fixtures::*;

    fn closed_loop(s: &CombinatorialSurface, names: &[&str], first_sign: i8) -> DrawnCurve {
        let mut sides = Vec::new();
        let e0 = s.edge_by_name(names[0]).unwrap();
        let mut side = Side { edge: e0, sign: first_sign };
        sides.push(side);
        for name in &names[1..] {
            let f = s.face_of_side(side.opposite());
            let e = s.edge_by_name(name).unwrap();
            side = [1i8, -1].into_iter().map(|sg| Side { edge: e, sign: sg }).find(|sd| s.face_of_side(*sd) == f).unwrap();
            sides.push(side);
        }
        DrawnCurve::from_sides(s, &sides, true).unwrap()
    }

    #[test]
    fn no_curves_gives_the_same_map() {
        let s = CombinatorialSurface::build(&torus_grid()).unwrap();
        let a = overlay(&s, &[]).unwrap();
        assert_eq!(a.overlay.num_vertices(), s.num_vertices());
        assert_eq!(a.overlay.num_edges(), s.num_edges());
        assert_eq!(a.overlay.num_faces(), s.num_faces());
        assert!(a.crossing_vertices.is_empty());
    }

    #[test]
    fn meridian_and_longitude_cross_once() {
        let s = CombinatorialSurface::build(&torus_grid()).unwrap();
        // a horizontal and a vertical closed curve on the torus grid
        let h = closed_loop(&s, &["v00", "v01"], 1);
        let v = closed_loop(&s, &["h00", "h10"], 1);
        let a = overlay(&s, &[h, v]).unwrap();
        assert_eq!(a.overlay.euler_characteristic(), s.euler_characteristic());
        assert_eq!(a.crossing_vertices.len(), 1);
        for &x in &a.crossing_vertices {
            assert_eq!(a.overlay.rotations[x].len(), 4);
        }
        assert_eq!(a.graph_crossings, 4);
    }

    #[test]
    fn open_curve_keeps_euler_characteristic() {
        let s = CombinatorialSurface::build(&tetrahedron()).unwrap();
        let e = s.edge_by_name("ab").unwrap();
        let c = DrawnCurve::open(vec![Crossing { face: s.face_of_side(Side { edge: e, sign: 1 }), edge: e, side: 1 }]);
        let a = overlay(&s, &[c]).unwrap();
        assert_eq!(a.overlay.euler_characteristic(), 2);
        assert_eq!(a.overlay.num_vertices(), 4 + 1 + 2);
    }
}
