//! Greedy system of arcs and its arrangement with the embedded graph.
//!
//! Arcs are dual curves from hole to hole: a shortest path down a dual
//! shortest-path tree grown from the holes, one crossing of a leftover
//! edge, and a shortest path back up. Arcs sharing a tree branch run as
//! parallel strands. Inside each face every strand piece joins the side
//! towards the tree root to some other side, so the pieces form a fan that
//! splits the face into *regions*; regions are the faces of the
//! arrangement and the nodes of all shortest-path searches.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use crate::curve::{Crossing, DrawnCurve};
use crate::error::{Error, Result};
use crate::surface::{CombinatorialSurface, EdgeId, FaceId, Side};
use crate::word::{Letter, Word};

pub type RegionId = usize;
pub type LinkId = usize;

/// What a step between two adjacent regions crosses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// Edge of the graph, between the crossing points `gap - 1` and `gap`.
    Graph { edge: EdgeId, gap: usize },
    /// Piece of an arc between its crossings `piece` and `piece + 1`.
    Arc { arc: usize, piece: usize },
}

/// Dual edge of the arrangement. Walking from `a` to `b` crosses a graph
/// edge from its side `+1` to `-1`, or an arc from its left to its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Link {
    pub kind: LinkKind,
    pub a: RegionId,
    pub b: RegionId,
    pub units: i64,
}

/// One step of a walk in the arrangement: a link and its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Step {
    pub link: LinkId,
    pub forward: bool,
}

#[derive(Clone, Debug)]
pub struct Region {
    pub face: FaceId,
    /// Links incident to the region, with the direction that leaves it.
    pub steps: Vec<Step>,
}

/// A point where an arc crosses an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ArcPoint {
    pub arc: usize,
    /// Index of the crossing along the arc.
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct Arc {
    /// Crossed sides in order: first and last are boundary edges.
    pub crossings: Vec<Side>,
    /// The leftover edge closing the arc.
    pub leftover: EdgeId,
    pub units: i64,
    /// Face frame relative to the left side of the arc, per piece.
    pub frames: Vec<i8>,
}

impl Arc {
    /// Hole at the start of the arc and the one at its end.
    pub fn holes(&self, s: &CombinatorialSurface) -> (usize, usize) {
        let first = s.face_of_side(self.crossings[0]);
        let last = s.face_of_side(self.crossings[self.crossings.len() - 1].opposite());
        (s.faces[first].hole_of.expect("arc starts on a hole"), s.faces[last].hole_of.expect("arc ends on a hole"))
    }
}

#[derive(Clone, Debug)]
pub struct ArcSystem {
    pub surface: CombinatorialSurface,
    pub arcs: Vec<Arc>,
    /// Arc crossing points on each edge, ordered from `u` to `v`.
    pub points: Vec<Vec<ArcPoint>>,
    pub regions: Vec<Region>,
    pub links: Vec<Link>,
    /// First region of every face; hole faces have none.
    pub face_regions: Vec<Vec<RegionId>>,
    /// Links of every graph edge, indexed by gap.
    pub edge_links: Vec<Vec<LinkId>>,
    /// Links of every arc, indexed by piece.
    pub arc_links: Vec<Vec<LinkId>>,
    /// Region of every gap of every edge side, indexed by side (`+1` first)
    /// then gap; empty for sides in holes.
    pub gap_regions: Vec<[Vec<RegionId>; 2]>,
    /// Orientation of every region relative to a fixed base region, taken
    /// along paths that avoid the arcs.
    pub region_frame: Vec<i8>,
    /// `-1` when crossing the arc reverses orientation.
    pub arc_character: Vec<i8>,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Key(i64, u32);

/// Builds the greedy system of arcs of a carved surface.
pub fn greedy_system_of_arcs(s: &CombinatorialSurface) -> Result<ArcSystem> {
    let t = s.num_boundaries();
    if t == 0 {
        return Err(Error::Invalid("the surface has no boundary".into()));
    }
    let g = s.euler_genus();
    if g + t < 2 {
        return Err(Error::Invalid("a disk has an empty system of arcs".into()));
    }
    let nf = s.num_faces();
    // dual shortest-path tree from the holes
    let mut dist = vec![i64::MAX; nf];
    let mut depth = vec![u32::MAX; nf];
    let mut parent: Vec<Option<Side>> = vec![None; nf];
    let mut heap = BinaryHeap::new();
    for f in s.interior_faces() {
        for sd in s.sides_of_face(f) {
            if s.edges[sd.edge].is_boundary() && Key(0, 1) < Key(dist[f], depth[f]) {
                dist[f] = 0;
                depth[f] = 1;
                parent[f] = Some(sd);
            }
        }
        if dist[f] == 0 {
            heap.push(Reverse((Key(0, 1), f)));
        }
    }
    let mut done = vec![false; nf];
    while let Some(Reverse((key, f))) = heap.pop() {
        if done[f] || key != Key(dist[f], depth[f]) {
            continue;
        }
        done[f] = true;
        for (sd, h) in s.dual_neighbors(f) {
            if s.is_hole(h) || done[h] {
                continue;
            }
            let nk = Key(dist[f] + s.units(sd.edge), depth[f] + 1);
            if nk < Key(dist[h], depth[h]) {
                dist[h] = nk.0;
                depth[h] = nk.1;
                parent[h] = Some(sd.opposite());
                heap.push(Reverse((nk, h)));
            }
        }
    }
    if s.interior_faces().any(|f| !done[f]) {
        return Err(Error::Disconnected);
    }
    let mut tree_edge = vec![false; s.num_edges()];
    for f in s.interior_faces() {
        tree_edge[parent[f].expect("reached").edge] = true;
    }

    let path_up = |mut f: FaceId| -> Vec<Side> {
        // sides crossed when walking from f up to the hole
        let mut out = Vec::new();
        loop {
            let p = parent[f].expect("interior face");
            out.push(p);
            if s.edges[p.edge].is_boundary() {
                return out;
            }
            f = s.face_of_side(p.opposite());
        }
    };
    let inner = |e: EdgeId| [1i8, -1].map(|sign| Side { edge: e, sign }).into_iter().find(|sd| !s.is_hole(s.face_of_side(*sd)));
    let arc_through = |e: EdgeId| -> Vec<Side> {
        if s.edges[e].is_boundary() {
            let sd = inner(e).expect("boundary edge has an inner side");
            let mut crossings = vec![sd.opposite()];
            crossings.extend(path_up(s.face_of_side(sd)));
            return crossings;
        }
        let plus = Side { edge: e, sign: 1 };
        let mut crossings: Vec<Side> = path_up(s.face_of_side(plus)).into_iter().rev().map(|sd| sd.opposite()).collect();
        crossings.push(plus);
        crossings.extend(path_up(s.face_of_side(plus.opposite())));
        crossings
    };
    let arc_len = |e: EdgeId| {
        if s.edges[e].is_boundary() {
            let f = s.face_of_side(inner(e).expect("boundary edge has an inner side"));
            return (dist[f], depth[f]);
        }
        let a = s.face_of_side(Side { edge: e, sign: 1 });
        let b = s.face_of_side(Side { edge: e, sign: -1 });
        (dist[a] + s.units(e) + dist[b], depth[a] + depth[b])
    };

    // shortest arcs first, kept while the uncrossed edges stay connected
    let mut cand: Vec<EdgeId> = (0..s.num_edges()).filter(|&e| !tree_edge[e]).collect();
    cand.sort_by_key(|&e| (arc_len(e), e));
    let mut crossed = vec![0u32; s.num_edges()];
    let mut arcs = Vec::new();
    for &e in &cand {
        if arcs.len() == g + t - 1 {
            break;
        }
        let crossings = arc_through(e);
        for sd in &crossings {
            crossed[sd.edge] += 1;
        }
        if uncrossed_connected(s, &crossed) {
            let units = crossings.iter().map(|sd| s.units(sd.edge)).sum();
            arcs.push(Arc { crossings, leftover: e, units, frames: Vec::new() });
        } else {
            for sd in &crossings {
                crossed[sd.edge] -= 1;
            }
        }
    }
    if arcs.len() != g + t - 1 {
        return Err(Error::Invalid(format!("expected {} arcs, found {}", g + t - 1, arcs.len())));
    }
    let sys = arrange(s.clone(), arcs, &parent, &depth);
    if !sys.is_disk_connected() || sys.cut_euler_characteristic() != 1 {
        return Err(Error::Invalid("the arcs do not cut the surface into a disk".into()));
    }
    Ok(sys)
}

/// Whether the vertices stay connected through edges no arc crosses.
fn uncrossed_connected(s: &CombinatorialSurface, crossed: &[u32]) -> bool {
    let n = s.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for (e, ed) in s.edges.iter().enumerate() {
        if crossed[e] == 0 {
            adj[ed.u].push(ed.v);
            adj[ed.v].push(ed.u);
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|x| x)
}

/// Orders the strands along every edge and builds the regions.
fn arrange(s: CombinatorialSurface, mut arcs: Vec<Arc>, parent: &[Option<Side>], depth: &[u32]) -> ArcSystem {
    let ne = s.num_edges();
    let nf = s.num_faces();
    // pieces per face: (arc, index of the crossing entering the face)
    let mut pieces: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nf];
    for (k, a) in arcs.iter().enumerate() {
        for i in 0..a.crossings.len() - 1 {
            pieces[s.face_of_side(a.crossings[i].opposite())].push((k, i));
        }
    }
    let mut order: Vec<FaceId> = s.interior_faces().collect();
    order.sort_by_key(|&f| (Reverse(depth[f]), f));
    let mut points: Vec<Vec<ArcPoint>> = vec![Vec::new(); ne];
    for (k, a) in arcs.iter().enumerate() {
        let i = a.crossings.iter().position(|sd| sd.edge == a.leftover).expect("leftover crossing");
        points[a.leftover].push(ArcPoint { arc: k, index: i });
    }
    for &f in &order {
        let p = parent[f].expect("interior face");
        let pslot = s.slot_of_side(p);
        let walk = &s.faces[f].walk;
        let n = walk.len();
        let mut seq: Vec<(ArcPoint, Side)> = Vec::new();
        for d in 1..n {
            let slot = (pslot + d) % n;
            let sd = s.side_at(f, slot);
            let is_child = parent[s.face_of_side(sd.opposite())] == Some(sd.opposite());
            let is_leftover = arcs.iter().any(|a| a.leftover == sd.edge);
            if !is_child && !is_leftover {
                continue;
            }
            let mut on_side = points[sd.edge].clone();
            if !walk[slot].forward() {
                on_side.reverse();
            }
            seq.extend(on_side.into_iter().map(|q| (q, sd)));
        }
        // partners on the parent side: nested chords, so in increasing position
        let mut parent_seq: Vec<ArcPoint> = Vec::new();
        for (q, side) in seq.iter().rev() {
            // the piece leaves f through this side when the crossing does
            let a = &arcs[q.arc];
            let pi = if a.crossings[q.index] == *side { q.index - 1 } else { q.index + 1 };
            debug_assert_eq!(a.crossings[pi].edge, p.edge);
            parent_seq.push(ArcPoint { arc: q.arc, index: pi });
        }
        if !walk[pslot].forward() {
            parent_seq.reverse();
        }
        points[p.edge] = parent_seq;
        debug_assert_eq!(points[p.edge].len(), pieces[f].len());
    }

    // arc frames: transported across each crossed edge
    for a in arcs.iter_mut() {
        let c = &a.crossings;
        let mut frames = Vec::with_capacity(c.len() - 1);
        let first = s.traversal_of_side(c[0].opposite());
        let mut sigma: i8 = if first.forward() { -1 } else { 1 };
        frames.push(sigma);
        for i in 1..c.len() - 1 {
            let before = s.traversal_of_side(c[i]).forward();
            let after = s.traversal_of_side(c[i].opposite()).forward();
            if before == after {
                sigma = -sigma;
            }
            frames.push(sigma);
        }
        a.frames = frames;
    }

    build_regions(s, arcs, points, parent)
}

/// Face into which crossing `i` of the arc leads.
fn entering(s: &CombinatorialSurface, a: &Arc, i: usize) -> FaceId {
    s.face_of_side(a.crossings[i].opposite())
}

fn build_regions(s: CombinatorialSurface, arcs: Vec<Arc>, points: Vec<Vec<ArcPoint>>, parent: &[Option<Side>]) -> ArcSystem {
    let nf = s.num_faces();
    let ne = s.num_edges();
    let mut regions: Vec<Region> = Vec::new();
    let mut face_regions = vec![Vec::new(); nf];
    let mut links: Vec<Link> = Vec::new();
    let mut arc_links: Vec<Vec<LinkId>> = arcs.iter().map(|a| vec![usize::MAX; a.crossings.len() - 1]).collect();
    // region of every (side, gap)
    let mut gap_region: Vec<[Vec<RegionId>; 2]> = (0..ne).map(|_| [Vec::new(), Vec::new()]).collect();
    let sidx = |sd: Side| if sd.sign > 0 { 0 } else { 1 };
    for f in s.interior_faces() {
        let p = parent[f].expect("interior face");
        let pslot = s.slot_of_side(p);
        let walk = &s.faces[f].walk;
        let n = walk.len();
        // atoms in increasing position, parent side first
        // (slot offset, rank within the side) identifies a boundary position
        let side_atoms = |slot: usize| -> Vec<ArcPoint> {
            let sd = s.side_at(f, slot);
            let mut v = points[sd.edge].clone();
            if !walk[slot].forward() {
                v.reverse();
            }
            v
        };
        let on_p = side_atoms(pslot);
        let k = on_p.len();
        let base = regions.len();
        for _ in 0..=k {
            regions.push(Region { face: f, steps: Vec::new() });
        }
        face_regions[f] = (base..=base + k).collect();
        // position of the other end of chord j, as (slot offset, rank)
        let mut other_pos: Vec<(usize, usize)> = Vec::with_capacity(k);
        for q in &on_p {
            let a = &arcs[q.arc];
            // the piece inside f touching this parent point
            let (oi, piece) = if q.index + 1 < a.crossings.len() && entering(&s, a, q.index) == f {
                (q.index + 1, q.index)
            } else {
                (q.index - 1, q.index - 1)
            };
            let osd = if oi == piece { a.crossings[oi].opposite() } else { a.crossings[oi] };
            let oslot = s.slot_of_side(osd);
            let atoms = side_atoms(oslot);
            let rank = atoms.iter().position(|x| x.arc == q.arc && x.index == oi).expect("partner point");
            other_pos.push(((oslot + n - pslot) % n, rank));
            let _ = piece;
        }
        // chords are sorted by parent position; their other ends must decrease
        debug_assert!(other_pos.windows(2).all(|w| w[0] > w[1]), "strands cross inside a face");
        for d in 0..n {
            let slot = (pslot + d) % n;
            let sd = s.side_at(f, slot);
            let cnt = points[sd.edge].len();
            let mut regs = vec![0; cnt + 1];
            for (g, r) in regs.iter_mut().enumerate() {
                // gap g in u->v order, as a rank in traversal order
                let rank_gap = if walk[slot].forward() { g } else { cnt - g };
                let j = if d == 0 {
                    rank_gap
                } else {
                    // number of chords whose other end lies after this gap
                    other_pos.iter().filter(|&&(o, r)| o > d || (o == d && r >= rank_gap)).count()
                };
                *r = base + j;
            }
            gap_region[sd.edge][sidx(sd)] = regs;
        }
        // arc links: chord j between regions j and j + 1
        for (j, q) in on_p.iter().enumerate() {
            let a = &arcs[q.arc];
            let from_parent = q.index + 1 < a.crossings.len() && entering(&s, a, q.index) == f;
            let piece = if from_parent { q.index } else { q.index - 1 };
            // the region swept from the start of the piece to its end
            let inc = if from_parent { base + j + 1 } else { base + j };
            let other = if inc == base + j { base + j + 1 } else { base + j };
            let (left, right) = if a.frames[piece] > 0 { (inc, other) } else { (other, inc) };
            arc_links[q.arc][piece] = links.len();
            links.push(Link { kind: LinkKind::Arc { arc: q.arc, piece }, a: left, b: right, units: 0 });
        }
    }
    let mut edge_links = vec![Vec::new(); ne];
    for e in s.regular_edges() {
        for g in 0..=points[e].len() {
            edge_links[e].push(links.len());
            links.push(Link {
                kind: LinkKind::Graph { edge: e, gap: g },
                a: gap_region[e][0][g],
                b: gap_region[e][1][g],
                units: s.units(e),
            });
        }
    }
    for (id, l) in links.iter().enumerate() {
        regions[l.a].steps.push(Step { link: id, forward: true });
        regions[l.b].steps.push(Step { link: id, forward: false });
    }
    let mut sys = ArcSystem {
        surface: s,
        arcs,
        points,
        regions,
        links,
        face_regions,
        edge_links,
        arc_links,
        gap_regions: gap_region,
        region_frame: Vec::new(),
        arc_character: Vec::new(),
    };
    sys.compute_frames();
    sys
}

impl ArcSystem {
    pub fn num_arcs(&self) -> usize {
        self.arcs.len()
    }

    pub fn num_regions(&self) -> usize {
        self.regions.len()
    }

    /// Region reached from `r` by `step`, which must leave `r`.
    pub fn across(&self, step: Step) -> RegionId {
        let l = &self.links[step.link];
        if step.forward {
            l.b
        } else {
            l.a
        }
    }

    pub fn source(&self, step: Step) -> RegionId {
        let l = &self.links[step.link];
        if step.forward {
            l.a
        } else {
            l.b
        }
    }

    /// Letter recorded by a step across an arc.
    pub fn letter(&self, step: Step) -> Option<Letter> {
        match self.links[step.link].kind {
            LinkKind::Arc { arc, .. } => Some(Letter::new(arc, step.forward)),
            LinkKind::Graph { .. } => None,
        }
    }

    fn compute_frames(&mut self) {
        let s = &self.surface;
        let mut frame = vec![0i8; self.regions.len()];
        let mut q = VecDeque::new();
        for start in 0..self.regions.len() {
            if frame[start] != 0 {
                continue;
            }
            frame[start] = 1;
            q.push_back(start);
            while let Some(r) = q.pop_front() {
                for st in &self.regions[r].steps {
                    let l = &self.links[st.link];
                    let LinkKind::Graph { edge, .. } = l.kind else { continue };
                    let next = self.across(*st);
                    let f = frame[r] * if s.orientation_compatible(edge) { 1 } else { -1 };
                    if frame[next] == 0 {
                        frame[next] = f;
                        q.push_back(next);
                    }
                }
            }
        }
        self.arc_character = (0..self.arcs.len())
            .map(|k| {
                let l = &self.links[self.arc_links[k][0]];
                frame[l.a] * frame[l.b]
            })
            .collect();
        self.region_frame = frame;
    }

    /// Whether the regions stay connected without crossing an arc, that is
    /// whether the surface cut along the arcs is connected.
    pub fn is_disk_connected(&self) -> bool {
        let mut seen = vec![false; self.regions.len()];
        let mut q = VecDeque::from([0]);
        seen[0] = true;
        while let Some(r) = q.pop_front() {
            for st in &self.regions[r].steps {
                if matches!(self.links[st.link].kind, LinkKind::Graph { .. }) {
                    let n = self.across(*st);
                    if !seen[n] {
                        seen[n] = true;
                        q.push_back(n);
                    }
                }
            }
        }
        seen.iter().all(|&x| x)
    }

    /// Euler characteristic of the surface cut along the arcs: the regions,
    /// graph-edge pieces and vertices of the cut surface.
    pub fn cut_euler_characteristic(&self) -> i64 {
        let s = &self.surface;
        // cutting along an arc adds its crossings as new vertices on each
        // side, doubles its pieces as edges and splits each crossed edge
        let crossings: usize = self.arcs.iter().map(|a| a.crossings.len()).sum();
        let pieces: usize = self.arcs.iter().map(|a| a.crossings.len() - 1).sum();
        let v = s.num_vertices() + 2 * crossings;
        let e = s.num_edges() + crossings + 2 * pieces;
        let f = self.regions.len();
        v as i64 - e as i64 + f as i64
    }

    /// Orientation-reversal character of a word: product of the arc characters.
    pub fn word_character(&self, w: &Word) -> i8 {
        w.letters().iter().map(|l| self.arc_character[l.arc()]).product()
    }

    /// Cyclic order of arc endpoints around each hole, following the traced
    /// orientation of the hole face: `(arc, at_start)` entries.
    pub fn hole_rotations(&self) -> Vec<Vec<(usize, bool)>> {
        let s = &self.surface;
        let mut out = vec![Vec::new(); s.num_boundaries()];
        for (ti, term) in s.terminals.iter().enumerate() {
            let hole = term.hole;
            for slot in 0..s.faces[hole].walk.len() {
                let sd = s.side_at(hole, slot);
                let mut pts = self.points[sd.edge].clone();
                if !s.faces[hole].walk[slot].forward() {
                    pts.reverse();
                }
                for p in pts {
                    out[ti].push((p.arc, p.index == 0));
                }
            }
        }
        out
    }

    /// Whether, at one end of an arc, its left side comes before the
    /// endpoint in the traced order around the hole.
    pub fn left_before(&self, arc: usize, at_start: bool) -> bool {
        let s = &self.surface;
        let a = &self.arcs[arc];
        let (index, piece) = if at_start { (0, 0) } else { (a.crossings.len() - 1, a.crossings.len() - 2) };
        let b = a.crossings[index].edge;
        let inner = [1i8, -1].map(|sign| Side { edge: b, sign }).into_iter().find(|sd| !s.is_hole(s.face_of_side(*sd))).expect("inner side");
        let pos = self.points[b].iter().position(|p| p.arc == arc && p.index == index).expect("endpoint");
        let gaps = &self.gap_regions[b][if inner.sign > 0 { 0 } else { 1 }];
        let left = self.links[self.arc_links[arc][piece]].a;
        debug_assert!(gaps[pos] == left || gaps[pos + 1] == left);
        let left_has_u = gaps[pos] == left && gaps[pos + 1] != left;
        let hole_forward = s.traversal_of_side(inner.opposite()).forward();
        left_has_u == hole_forward
    }

    /// Boundary of the cut-open disk as a cyclic sequence of arc sides and
    /// hole segments.
    pub fn disk_boundary(&self) -> Result<Vec<BoundaryPiece>> {
        let rot = self.hole_rotations();
        let n = self.arcs.len();
        if n == 0 {
            return Ok(Vec::new());
        }
        let find = |arc: usize, at_start: bool| -> (usize, usize) {
            for (h, r) in rot.iter().enumerate() {
                if let Some(i) = r.iter().position(|&e| e == (arc, at_start)) {
                    return (h, i);
                }
            }
            unreachable!("every arc end lies on a hole")
        };
        // start on the left side of arc 0, walking from its start to its end
        let mut out = Vec::new();
        let (mut arc, mut left, mut from_start) = (0usize, true, true);
        for _ in 0..2 * n {
            out.push(BoundaryPiece::ArcSide { arc, left, from_start });
            let at_start = !from_start;
            let (h, i) = find(arc, at_start);
            // the side we are on lies before the endpoint iff it equals the
            // side listed first; leave the endpoint away from the arc
            let before = self.left_before(arc, at_start) == left;
            let len = rot[h].len();
            let j = if before { (i + len - 1) % len } else { (i + 1) % len };
            out.push(BoundaryPiece::Hole { hole: h, from: rot[h][i], to: rot[h][j] });
            let (narc, nstart) = rot[h][j];
            // arriving from before the next endpoint when walking forwards
            let arrive_before = !before;
            let nleft = self.left_before(narc, nstart) == arrive_before;
            arc = narc;
            left = nleft;
            from_start = nstart;
            if arc == 0 && left && from_start {
                break;
            }
        }
        let sides = out.iter().filter(|p| matches!(p, BoundaryPiece::ArcSide { .. })).count();
        if sides != 2 * n || !(arc == 0 && left && from_start) {
            return Err(Error::Invalid("the cut surface boundary is not a single cycle".into()));
        }
        Ok(out)
    }

    /// Curve on the surface obtained by forgetting arc crossings.
    pub fn project(&self, w: &Walk) -> DrawnCurve {
        let s = &self.surface;
        let mut steps = Vec::new();
        for st in &w.steps {
            if let LinkKind::Graph { edge, .. } = self.links[st.link].kind {
                let side = if st.forward { 1 } else { -1 };
                let face = s.face_of_side(Side { edge, sign: side });
                steps.push(Crossing { face, edge, side });
            }
        }
        DrawnCurve { steps, closed: w.closed }
    }

    /// Arrangement walk following a surface curve, crossing every edge at
    /// its first gap and moving between regions of a face across strands.
    pub fn lift(&self, c: &DrawnCurve, start: Option<RegionId>) -> Result<Walk> {
        let s = &self.surface;
        c.validate(s)?;
        if c.steps.is_empty() {
            let r = start.ok_or(Error::Invalid("empty curve needs a start region".into()))?;
            return Ok(Walk { start: r, steps: Vec::new(), closed: c.closed });
        }
        let first_face = c.steps[0].face;
        let r0 = start.unwrap_or(self.face_regions[first_face][0]);
        if self.regions[r0].face != first_face {
            return Err(Error::BadCurve(0));
        }
        let mut steps = Vec::new();
        let mut cur = r0;
        for st in &c.steps {
            let link = self.edge_links[st.edge][0];
            let l = &self.links[link];
            let (from, forward) = if st.side > 0 { (l.a, true) } else { (l.b, false) };
            self.move_within_face(cur, from, &mut steps);
            steps.push(Step { link, forward });
            cur = self.across(Step { link, forward });
        }
        if c.closed {
            self.move_within_face(cur, r0, &mut steps);
        }
        Ok(Walk { start: r0, steps, closed: c.closed })
    }

    /// Appends the strand crossings leading from region `a` to region `b`
    /// of the same face.
    fn move_within_face(&self, a: RegionId, b: RegionId, steps: &mut Vec<Step>) {
        let mut cur = a;
        while cur != b {
            let next = if b > cur { cur + 1 } else { cur - 1 };
            let st = self.regions[cur]
                .steps
                .iter()
                .find(|st| matches!(self.links[st.link].kind, LinkKind::Arc { .. }) && self.across(**st) == next)
                .copied()
                .expect("adjacent regions share a strand");
            steps.push(st);
            cur = next;
        }
    }

    pub fn walk_units(&self, w: &Walk) -> i64 {
        w.steps.iter().map(|st| self.links[st.link].units).sum()
    }

    /// Sequence of arc crossings, unreduced.
    pub fn walk_word(&self, w: &Walk) -> Word {
        Word(w.steps.iter().filter_map(|st| self.letter(*st)).collect())
    }

    pub fn arc_crossings(&self, w: &Walk) -> usize {
        w.steps.iter().filter(|st| self.letter(**st).is_some()).count()
    }

    pub fn walk_end(&self, w: &Walk) -> RegionId {
        w.steps.last().map(|st| self.across(*st)).unwrap_or(w.start)
    }

    /// Orientation character of a closed walk: `-1` if it is one-sided.
    pub fn walk_character(&self, w: &Walk) -> i8 {
        self.word_character(&self.walk_word(w))
    }
}

/// Piece of the boundary of the cut-open disk.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BoundaryPiece {
    /// One side of an arc, traversed from its start when `from_start`.
    ArcSide { arc: usize, left: bool, from_start: bool },
    /// Stretch of a hole between two arc ends `(arc, at_start)`.
    Hole { hole: usize, from: (usize, bool), to: (usize, bool) },
}

/// A walk through regions of the arrangement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: RegionId,
    pub steps: Vec<Step>,
    pub closed: bool,
}

impl Walk {
    pub fn validate(&self, sys: &ArcSystem) -> Result<()> {
        let mut cur = self.start;
        for (i, st) in self.steps.iter().enumerate() {
            if st.link >= sys.links.len() || sys.source(*st) != cur {
                return Err(Error::BadCurve(i));
            }
            cur = sys.across(*st);
        }
        if self.closed && cur != self.start {
            return Err(Error::BadCurve(self.steps.len()));
        }
        Ok(())
    }

    pub fn reversed(&self, sys: &ArcSystem) -> Walk {
        Walk {
            start: sys.walk_end(self),
            steps: self.steps.iter().rev().map(|st| Step { link: st.link, forward: !st.forward }).collect(),
            closed: self.closed,
        }
    }

    /// Regions visited, including the start (and, for closed walks, not
    /// repeating it at the end).
    pub fn regions(&self, sys: &ArcSystem) -> Vec<RegionId> {
        let mut out = vec![self.start];
        for st in &self.steps {
            out.push(sys.across(*st));
        }
        if self.closed {
            out.pop();
        }
        out
    }
}
