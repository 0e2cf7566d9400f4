//! Graphs cellularly embedded on surfaces, given by signed rotation systems.
//!
//! Edge `e` has two darts: `2e` is its end at `u`, `2e + 1` its end at `v`.
//! Every vertex carries a local orientation; the rotation of a vertex lists
//! its darts counterclockwise in that orientation, and the sign of an edge
//! tells whether the orientations of its endpoints agree along it.
//!
//! Terminals are carved out: a terminal of degree `d` becomes `d` vertices
//! joined by `d` uncrossable boundary edges around a new *hole* face.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::weight::{Scale, Weight};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;
pub type Dart = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum EdgeKind {
    Regular,
    /// Part of the boundary circle left by carving out a terminal.
    Boundary { terminal: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub u: VertexId,
    pub v: VertexId,
    pub weight: Weight,
    pub sign: i8,
    pub kind: EdgeKind,
}

impl Edge {
    pub fn is_boundary(&self) -> bool {
        matches!(self.kind, EdgeKind::Boundary { .. })
    }
}

/// One step of a face boundary walk: leave the vertex of `dart` along its
/// edge, with local orientation `orient` at that vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Traversal {
    pub dart: Dart,
    pub orient: i8,
}

impl Traversal {
    pub fn edge(&self) -> EdgeId {
        self.dart / 2
    }

    /// `true` when the edge is walked from `u` to `v`.
    pub fn forward(&self) -> bool {
        self.dart % 2 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    /// Boundary walk in traced order.
    pub walk: Vec<Traversal>,
    /// Set when the face is the hole of a carved terminal.
    pub hole_of: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Terminal {
    pub name: String,
    pub hole: FaceId,
    /// Degree-one vertices created on the boundary, in rotation order.
    pub boundary_vertices: Vec<VertexId>,
}

/// A side of an edge: `+1` or `-1`, see [`side_of`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Side {
    pub edge: EdgeId,
    pub sign: i8,
}

impl Side {
    pub fn opposite(self) -> Side {
        Side { edge: self.edge, sign: -self.sign }
    }

    fn index(self) -> usize {
        if self.sign > 0 {
            0
        } else {
            1
        }
    }
}

#[derive(Clone, Debug)]
pub struct CombinatorialSurface {
    pub vertex_names: Vec<String>,
    pub edges: Vec<Edge>,
    pub rotations: Vec<Vec<Dart>>,
    pub faces: Vec<Face>,
    pub terminals: Vec<Terminal>,
    pub orientable: bool,
    pub scale: Scale,
    dart_pos: Vec<usize>,
    side_face: Vec<[FaceId; 2]>,
    side_slot: Vec<[usize; 2]>,
    units: Vec<i64>,
}

/// Rotation-system description used to build a surface.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    /// Per vertex, the cyclic order of incident edge ends, named by edge id.
    /// A loop appears twice; its first occurrence is the `u` end.
    pub rotations: BTreeMap<String, Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub u: String,
    pub v: String,
    pub w: Weight,
    #[serde(default = "default_sign")]
    pub sign: i8,
}

fn default_sign() -> i8 {
    1
}

/// Side of an edge crossed by the traversal `t`.
pub fn side_of(t: Traversal, sign: i8) -> i8 {
    if t.forward() {
        t.orient
    } else {
        -t.orient * sign
    }
}

impl CombinatorialSurface {
    /// Builds and validates a surface from a rotation-system description.
    pub fn build(spec: &SurfaceSpec) -> Result<Self> {
        let mut vindex = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if vindex.insert(v.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate vertex {v:?}")));
            }
        }
        let mut eindex = HashMap::new();
        let mut edges = Vec::with_capacity(spec.edges.len());
        for (i, e) in spec.edges.iter().enumerate() {
            if eindex.insert(e.id.clone(), i).is_some() {
                return Err(Error::Invalid(format!("duplicate edge {:?}", e.id)));
            }
            let u = *vindex.get(&e.u).ok_or_else(|| Error::UnknownVertex(e.u.clone()))?;
            let v = *vindex.get(&e.v).ok_or_else(|| Error::UnknownVertex(e.v.clone()))?;
            if !e.w.is_positive() {
                return Err(Error::NonPositiveWeight(e.id.clone()));
            }
            if e.sign != 1 && e.sign != -1 {
                return Err(Error::Invalid(format!("edge {:?} sign must be +1 or -1", e.id)));
            }
            edges.push(Edge { name: e.id.clone(), u, v, weight: e.w, sign: e.sign, kind: EdgeKind::Regular });
        }
        let mut rotations = vec![Vec::new(); spec.vertices.len()];
        let mut seen = vec![false; 2 * edges.len()];
        for (vname, ends) in &spec.rotations {
            let v = *vindex.get(vname).ok_or_else(|| Error::UnknownVertex(vname.clone()))?;
            for end in ends {
                let e = *eindex.get(end).ok_or_else(|| Error::UnknownEdge(end.clone()))?;
                let edge = &edges[e];
                let dart = if edge.u == v && !seen[2 * e] {
                    2 * e
                } else if edge.v == v && !seen[2 * e + 1] {
                    2 * e + 1
                } else if edge.u == v || edge.v == v {
                    return Err(Error::DuplicateEdgeEnd(end.clone()));
                } else {
                    return Err(Error::Invalid(format!("edge {end:?} is not incident to vertex {vname:?}")));
                };
                seen[dart] = true;
                rotations[v].push(dart);
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::DanglingEdgeEnd(edges[d / 2].name.clone()));
        }
        Self::from_parts(spec.vertices.clone(), edges, rotations, Vec::new())
    }

    pub(crate) fn from_parts(
        vertex_names: Vec<String>,
        edges: Vec<Edge>,
        rotations: Vec<Vec<Dart>>,
        terminals: Vec<Terminal>,
    ) -> Result<Self> {
        let mut dart_pos = vec![usize::MAX; 2 * edges.len()];
        for rot in &rotations {
            for (i, &d) in rot.iter().enumerate() {
                dart_pos[d] = i;
            }
        }
        let scale = Scale::for_weights(edges.iter().filter(|e| !e.is_boundary()).map(|e| &e.weight));
        let units = edges.iter().map(|e| if e.is_boundary() { 0 } else { scale.units(e.weight) }).collect();
        let mut s = CombinatorialSurface {
            vertex_names,
            edges,
            rotations,
            faces: Vec::new(),
            terminals,
            orientable: true,
            scale,
            dart_pos,
            side_face: Vec::new(),
            side_slot: Vec::new(),
            units,
        };
        s.check_connected()?;
        s.trace_faces();
        s.orientable = s.compute_orientable();
        Ok(s)
    }

    pub fn vertex_of(&self, d: Dart) -> VertexId {
        let e = &self.edges[d / 2];
        if d % 2 == 0 {
            e.u
        } else {
            e.v
        }
    }

    fn rot_step(&self, d: Dart, forward: bool) -> Dart {
        let v = self.vertex_of(d);
        let rot = &self.rotations[v];
        let i = self.dart_pos[d];
        if forward {
            rot[(i + 1) % rot.len()]
        } else {
            rot[(i + rot.len() - 1) % rot.len()]
        }
    }

    /// Next step of a face walk.
    pub fn next_traversal(&self, t: Traversal) -> Traversal {
        let e = t.edge();
        let arrive = t.dart ^ 1;
        let orient = t.orient * self.edges[e].sign;
        Traversal { dart: self.rot_step(arrive, orient > 0), orient }
    }

    fn check_connected(&self) -> Result<()> {
        let n = self.vertex_names.len();
        if n == 0 {
            return Err(Error::Invalid("empty graph".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push(e.v);
            adj[e.v].push(e.u);
        }
        let mut seen = vec![false; n];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(x) = q.pop_front() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    q.push_back(y);
                }
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::Disconnected)
        }
    }

    fn trace_faces(&mut self) {
        let m = self.edges.len();
        self.side_face = vec![[usize::MAX; 2]; m];
        self.side_slot = vec![[usize::MAX; 2]; m];
        let mut faces = Vec::new();
        for e in 0..m {
            for sign in [1i8, -1] {
                let side = Side { edge: e, sign };
                if self.side_face[e][side.index()] != usize::MAX {
                    continue;
                }
                let start = Traversal { dart: 2 * e, orient: sign };
                let fid = faces.len();
                let mut walk = Vec::new();
                let mut t = start;
                loop {
                    let s = Side { edge: t.edge(), sign: side_of(t, self.edges[t.edge()].sign) };
                    debug_assert_eq!(self.side_face[s.edge][s.index()], usize::MAX, "edge side traced twice");
                    self.side_face[s.edge][s.index()] = fid;
                    self.side_slot[s.edge][s.index()] = walk.len();
                    walk.push(t);
                    t = self.next_traversal(t);
                    if t == start {
                        break;
                    }
                }
                faces.push(Face { walk, hole_of: None });
            }
        }
        self.faces = faces;
        self.mark_holes();
    }

    fn mark_holes(&mut self) {
        for ti in 0..self.terminals.len() {
            let hole = self
                .faces
                .iter()
                .position(|f| {
                    f.walk.iter().all(|t| self.edges[t.edge()].kind == EdgeKind::Boundary { terminal: ti })
                })
                .expect("carved terminal has a hole face");
            self.faces[hole].hole_of = Some(ti);
            self.terminals[ti].hole = hole;
        }
    }

    fn compute_orientable(&self) -> bool {
        let n = self.vertex_names.len();
        let mut flip = vec![0i8; n];
        flip[0] = 1;
        let mut q = VecDeque::from([0]);
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            adj[e.u].push((e.v, e.sign));
            adj[e.v].push((e.u, e.sign));
        }
        while let Some(x) = q.pop_front() {
            for &(y, s) in &adj[x] {
                let want = flip[x] * s;
                if flip[y] == 0 {
                    flip[y] = want;
                    q.push_back(y);
                } else if flip[y] != want {
                    return false;
                }
            }
        }
        true
    }

    pub fn num_vertices(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Number of boundary components `t`.
    pub fn num_boundaries(&self) -> usize {
        self.terminals.len()
    }

    /// `V - E + F` with hole faces excluded.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
            - self.num_boundaries() as i64
    }

    /// Euler genus `g`, so that `chi = 2 - g - t`.
    pub fn euler_genus(&self) -> usize {
        (2 - self.euler_characteristic() - self.num_boundaries() as i64) as usize
    }

    pub fn is_hole(&self, f: FaceId) -> bool {
        self.faces[f].hole_of.is_some()
    }

    pub fn interior_faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len()).filter(|&f| !self.is_hole(f))
    }

    pub fn face_of_side(&self, s: Side) -> FaceId {
        self.side_face[s.edge][s.index()]
    }

    /// Position of the side within its face walk.
    pub fn slot_of_side(&self, s: Side) -> usize {
        self.side_slot[s.edge][s.index()]
    }

    pub fn side_at(&self, f: FaceId, slot: usize) -> Side {
        let t = self.faces[f].walk[slot];
        Side { edge: t.edge(), sign: side_of(t, self.edges[t.edge()].sign) }
    }

    pub fn sides_of_face(&self, f: FaceId) -> impl Iterator<Item = Side> + '_ {
        (0..self.faces[f].walk.len()).map(move |i| self.side_at(f, i))
    }

    /// Whether the traced orientations of the two faces of `e` agree across it.
    pub fn orientation_compatible(&self, e: EdgeId) -> bool {
        let a = self.faces[self.side_face[e][0]].walk[self.side_slot[e][0]];
        let b = self.faces[self.side_face[e][1]].walk[self.side_slot[e][1]];
        a.forward() != b.forward()
    }

    /// Traversal that walks the given side.
    pub fn traversal_of_side(&self, s: Side) -> Traversal {
        self.faces[self.face_of_side(s)].walk[self.slot_of_side(s)]
    }

    /// Relation between the traced orientation of the face bounded by `s`
    /// and the local orientation at the `u` end of its edge.
    pub fn face_frame(&self, s: Side) -> i8 {
        let t = self.traversal_of_side(s);
        if t.forward() {
            t.orient
        } else {
            t.orient * self.edges[s.edge].sign
        }
    }

    /// Integer weight of an edge in units of [`CombinatorialSurface::scale`].
    pub fn units(&self, e: EdgeId) -> i64 {
        self.units[e]
    }

    pub fn edge_by_name(&self, name: &str) -> Option<EdgeId> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn vertex_by_name(&self, name: &str) -> Option<VertexId> {
        self.vertex_names.iter().position(|v| v == name)
    }

    pub fn regular_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len()).filter(|&e| !self.edges[e].is_boundary())
    }

    /// Degree counting only regular (non-boundary) edges.
    pub fn graph_degree(&self, v: VertexId) -> usize {
        self.rotations[v].iter().filter(|&&d| !self.edges[d / 2].is_boundary()).count()
    }

    /// Name of the terminal whose carving produced vertex `v`, if any.
    pub fn terminal_of_vertex(&self, v: VertexId) -> Option<usize> {
        self.terminals.iter().position(|t| t.boundary_vertices.contains(&v))
    }

    /// Removes a small disk around each terminal.
    pub fn carve_terminals(&self, terminals: &[String]) -> Result<CombinatorialSurface> {
        if !self.terminals.is_empty() {
            return Err(Error::Invalid("surface already carved".into()));
        }
        let mut tv = Vec::new();
        for name in terminals {
            let v = self.vertex_by_name(name).ok_or_else(|| Error::UnknownVertex(name.clone()))?;
            if tv.contains(&v) {
                return Err(Error::Invalid(format!("terminal {name:?} listed twice")));
            }
            if self.rotations[v].is_empty() {
                return Err(Error::IsolatedTerminal(name.clone()));
            }
            tv.push(v);
        }
        let mut vertex_names = self.vertex_names.clone();
        let mut edges = self.edges.clone();
        let mut rotations = self.rotations.clone();
        let mut out_terms = Vec::new();
        for (ti, (&v, name)) in tv.iter().zip(terminals).enumerate() {
            let rot = rotations[v].clone();
            let d = rot.len();
            // the first dart stays on v, the others move to fresh vertices
            let mut ws = vec![v];
            for i in 1..d {
                ws.push(vertex_names.len());
                vertex_names.push(format!("{name}#{i}"));
                rotations.push(Vec::new());
            }
            vertex_names[v] = format!("{name}#0");
            for (i, &dart) in rot.iter().enumerate() {
                let e = &mut edges[dart / 2];
                if dart % 2 == 0 {
                    e.u = ws[i];
                } else {
                    e.v = ws[i];
                }
            }
            let first_b = edges.len();
            for i in 0..d {
                edges.push(Edge {
                    name: format!("{name}~{i}"),
                    u: ws[i],
                    v: ws[(i + 1) % d],
                    weight: Weight::ZERO,
                    sign: 1,
                    kind: EdgeKind::Boundary { terminal: ti },
                });
            }
            for i in 0..d {
                let b_out = 2 * (first_b + i);
                let b_in = 2 * (first_b + (i + d - 1) % d) + 1;
                rotations[ws[i]] = if d == 1 { vec![rot[0], b_out, b_out + 1] } else { vec![rot[i], b_out, b_in] };
            }
            out_terms.push(Terminal { name: name.clone(), hole: usize::MAX, boundary_vertices: ws });
        }
        Self::from_parts(vertex_names, edges, rotations, out_terms)
    }

    /// Faces reachable across regular edges from `f`, with the crossed side.
    pub fn dual_neighbors(&self, f: FaceId) -> impl Iterator<Item = (Side, FaceId)> + '_ {
        self.sides_of_face(f)
            .filter(|s| !self.edges[s.edge].is_boundary())
            .map(move |s| (s, self.face_of_side(s.opposite())))
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn spec(vertices: &[&str], edges: &[(&str, &str, &str, i64, i8)], rot: &[(&str, &[&str])]) -> SurfaceSpec {
        SurfaceSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|&(id, u, v, w, sign)| EdgeSpec {
                    id: id.into(),
                    u: u.into(),
                    v: v.into(),
                    w: Weight::from_int(w),
                    sign,
                })
                .collect(),
            rotations: rot
                .iter()
                .map(|(v, ends)| (v.to_string(), ends.iter().map(|s| s.to_string()).collect()))
                .collect(),
        }
    }

    pub fn tetrahedron() -> SurfaceSpec {
        spec(
            &["a", "b", "c", "d"],
            &[
                ("ab", "a", "b", 1, 1),
                ("ac", "a", "c", 1, 1),
                ("ad", "a", "d", 1, 1),
                ("bc", "b", "c", 1, 1),
                ("bd", "b", "d", 1, 1),
                ("cd", "c", "d", 1, 1),
            ],
            &[
                ("a", &["ab", "ac", "ad"]),
                ("b", &["ab", "bd", "bc"]),
                ("c", &["ac", "bc", "cd"]),
                ("d", &["ad", "cd", "bd"]),
            ],
        )
    }

    /// 2x2 square grid on the torus: 4 vertices, 8 edges, 4 faces.
    pub fn torus_grid() -> SurfaceSpec {
        spec(
            &["00", "01", "10", "11"],
            &[
                ("h00", "00", "01", 1, 1),
                ("h01", "01", "00", 2, 1),
                ("h10", "10", "11", 3, 1),
                ("h11", "11", "10", 1, 1),
                ("v00", "00", "10", 2, 1),
                ("v10", "10", "00", 1, 1),
                ("v01", "01", "11", 1, 1),
                ("v11", "11", "01", 3, 1),
            ],
            &[
                ("00", &["h00", "v00", "h01", "v10"]),
                ("01", &["h01", "v01", "h00", "v11"]),
                ("10", &["h10", "v10", "h11", "v00"]),
                ("11", &["h11", "v11", "h10", "v01"]),
            ],
        )
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn tetrahedron_is_a_sphere() {
        let s = CombinatorialSurface::build(&tetrahedron()).unwrap();
        assert_eq!(s.num_faces(), 4);
        assert_eq!(s.euler_characteristic(), 2);
        assert_eq!(s.euler_genus(), 0);
        assert!(s.orientable);
    }

    #[test]
    fn twisted_loop_is_projective_plane() {
        let s = CombinatorialSurface::build(&spec(&["x"], &[("l", "x", "x", 1, -1)], &[("x", &["l", "l"])])).unwrap();
        assert_eq!(s.num_faces(), 1);
        assert_eq!(s.euler_characteristic(), 1);
        assert_eq!(s.euler_genus(), 1);
        assert!(!s.orientable);
    }

    #[test]
    fn theta_graph_on_sphere() {
        let s = CombinatorialSurface::build(&spec(
            &["p", "q"],
            &[("x", "p", "q", 1, 1), ("y", "p", "q", 1, 1), ("z", "p", "q", 1, 1)],
            &[("p", &["x", "y", "z"]), ("q", &["x", "z", "y"])],
        ))
        .unwrap();
        assert_eq!(s.num_faces(), 3);
        assert_eq!(s.euler_genus(), 0);
    }

    #[test]
    fn torus_grid_has_genus_two() {
        let s = CombinatorialSurface::build(&torus_grid()).unwrap();
        assert_eq!(s.num_faces(), 4);
        assert_eq!(s.euler_genus(), 2);
        assert!(s.orientable);
    }

    #[test]
    fn every_side_in_exactly_one_face() {
        let s = CombinatorialSurface::build(&torus_grid()).unwrap();
        let total: usize = s.faces.iter().map(|f| f.walk.len()).sum();
        assert_eq!(total, 2 * s.num_edges());
    }

    #[test]
    fn build_errors() {
        let mut sp = tetrahedron();
        sp.rotations.get_mut("a").unwrap().pop();
        assert!(matches!(CombinatorialSurface::build(&sp), Err(Error::DanglingEdgeEnd(_))));
        let mut sp = tetrahedron();
        sp.rotations.get_mut("a").unwrap().push("zz".into());
        assert!(matches!(CombinatorialSurface::build(&sp), Err(Error::UnknownEdge(_))));
        let mut sp = tetrahedron();
        sp.edges[0].w = Weight::ZERO;
        assert!(matches!(CombinatorialSurface::build(&sp), Err(Error::NonPositiveWeight(_))));
    }

    #[test]
    fn carving_three_terminals_on_sphere() {
        let s = CombinatorialSurface::build(&tetrahedron()).unwrap();
        let c = s.carve_terminals(&["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(c.num_boundaries(), 3);
        assert_eq!(c.euler_genus(), 0);
        assert_eq!(c.euler_characteristic(), -1);
        for t in &c.terminals {
            assert_eq!(c.faces[t.hole].walk.len(), 3);
            for &v in &t.boundary_vertices {
                assert_eq!(c.graph_degree(v), 1);
            }
        }
    }

    #[test]
    fn carving_degree_five_terminal() {
        // wheel with 5 spokes
        let rim = ["r0", "r1", "r2", "r3", "r4"];
        let mut verts = vec!["h"];
        verts.extend(rim);
        let mut edges = Vec::new();
        let names: Vec<String> = (0..5).map(|i| format!("s{i}")).collect();
        let rnames: Vec<String> = (0..5).map(|i| format!("c{i}")).collect();
        for i in 0..5 {
            edges.push((names[i].as_str(), "h", rim[i], 1, 1));
            edges.push((rnames[i].as_str(), rim[i], rim[(i + 1) % 5], 1, 1));
        }
        let hub: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let rims: Vec<Vec<&str>> = (0..5)
            .map(|i| vec![names[i].as_str(), rnames[(i + 4) % 5].as_str(), rnames[i].as_str()])
            .collect();
        let mut rot: Vec<(&str, &[&str])> = vec![("h", &hub)];
        for i in 0..5 {
            rot.push((rim[i], &rims[i]));
        }
        let s = CombinatorialSurface::build(&spec(&verts, &edges, &rot)).unwrap();
        assert_eq!(s.euler_genus(), 0);
        let c = s.carve_terminals(&["h".into()]).unwrap();
        let t = &c.terminals[0];
        assert_eq!(t.boundary_vertices.len(), 5);
        assert_eq!(c.faces[t.hole].walk.len(), 5);
        assert!(t.boundary_vertices.iter().all(|&v| c.graph_degree(v) == 1));
        assert_eq!(c.euler_characteristic(), 1);
    }

    #[test]
    fn torus_with_one_terminal() {
        let s = CombinatorialSurface::build(&torus_grid()).unwrap();
        let c = s.carve_terminals(&["00".into()]).unwrap();
        assert_eq!(c.euler_genus(), 2);
        assert_eq!(c.num_boundaries(), 1);
        assert_eq!(c.euler_characteristic(), -1);
    }

    #[test]
    fn carving_errors() {
        let s = CombinatorialSurface::build(&tetrahedron()).unwrap();
        assert!(matches!(s.carve_terminals(&["zz".into()]), Err(Error::UnknownVertex(_))));
    }
}
