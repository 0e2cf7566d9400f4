//! Candidate topologies: small graphs drawn on the surface, up to isotopy,
//! encoded through their overlay with the system of arcs.
//!
//! Inside the cut-open disk a drawn graph is a set of pairwise disjoint
//! pieces, each joining some of the points where the graph crosses arcs.
//! A piece joining two points is a plain segment; a piece joining three or
//! more is a star whose centre is a vertex. Gluing the two sides of every
//! arc reassembles the graph. Enumerating noncrossing partitions of the
//! crossing points into blocks of size at least two therefore enumerates
//! overlays; we keep those in minimal position (no piece joins two
//! consecutive points on one side of an arc) whose faces all contain a hole.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arcs::{ArcSystem, BoundaryPiece};
use crate::error::Result;
use crate::word::{Letter, Word};

/// The boundary of the cut-open disk with the arc characters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskModel {
    pub genus: usize,
    pub holes: usize,
    pub arcs: usize,
    /// `-1` for arcs whose crossing reverses orientation.
    pub character: Vec<i8>,
    /// Cyclic boundary: `(arc, left, from_start)` sides, with the hole met
    /// right after each side.
    pub sides: Vec<(usize, bool, bool, usize)>,
}

impl DiskModel {
    pub fn from_arcs(sys: &ArcSystem) -> Result<Self> {
        let bd = sys.disk_boundary()?;
        let mut sides = Vec::new();
        for w in bd.chunks(2) {
            let (BoundaryPiece::ArcSide { arc, left, from_start }, BoundaryPiece::Hole { hole, .. }) = (w[0], w[1]) else {
                unreachable!("boundary alternates between arc sides and holes")
            };
            sides.push((arc, left, from_start, hole));
        }
        Ok(DiskModel {
            genus: sys.surface.euler_genus(),
            holes: sys.surface.num_boundaries(),
            arcs: sys.num_arcs(),
            character: sys.arc_character.clone(),
            sides,
        })
    }

    pub fn complexity(&self) -> usize {
        self.genus + self.holes
    }
}

/// Enumeration bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bounds {
    pub kappa: usize,
    /// Crossings with one arc, further capped by `kappa * (g + t)`.
    pub per_arc: usize,
    /// Crossings with all arcs together.
    pub total: usize,
    /// Stop after this many topologies.
    pub limit: usize,
}

impl Bounds {
    pub fn new(kappa: usize) -> Self {
        Bounds { kappa, per_arc: 4, total: 8, limit: usize::MAX }
    }

    fn size(&self, m: &DiskModel) -> usize {
        self.kappa * m.complexity()
    }
}

/// Atom of the disk boundary once crossing counts are fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Atom {
    /// Crossing `idx` of `arc`, seen from one side.
    Point { arc: usize, idx: usize, left: bool },
    /// Stretch of an arc side between crossings `m - 1` and `m`.
    Gap { arc: usize, m: usize, left: bool },
    Hole(usize),
}

fn atoms(m: &DiskModel, counts: &[usize]) -> Vec<Atom> {
    let mut out = Vec::new();
    for &(arc, left, from_start, hole) in &m.sides {
        let n = counts[arc];
        if from_start {
            for i in 0..n {
                out.push(Atom::Gap { arc, m: i, left });
                out.push(Atom::Point { arc, idx: i, left });
            }
            out.push(Atom::Gap { arc, m: n, left });
        } else {
            for i in (0..n).rev() {
                out.push(Atom::Gap { arc, m: i + 1, left });
                out.push(Atom::Point { arc, idx: i, left });
            }
            out.push(Atom::Gap { arc, m: 0, left });
        }
        out.push(Atom::Hole(hole));
    }
    out
}

/// End of an edge at a vertex: the crossing point of its first segment.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TopoEdge {
    pub u: usize,
    pub v: usize,
    /// Arc crossings from `u` to `v`.
    pub word: Word,
    /// Product of the characters of the crossed arcs.
    pub sign: i8,
}

/// A candidate topology: a graph drawn on the surface, given by its
/// vertices with their rotations and its edges with their crossing words.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Topology {
    pub edges: Vec<TopoEdge>,
    /// Per vertex, the cyclic order of incident edge ends `(edge, at_u)`.
    pub rotations: Vec<Vec<(usize, bool)>>,
    /// Crossings with each arc.
    pub crossings: Vec<usize>,
    pub faces: usize,
    pub kappa: usize,
    /// The noncrossing partition of boundary points defining the overlay.
    pub blocks: Vec<Vec<usize>>,
    /// Tree drawn in each piece with three or more points.
    pub pieces: Vec<String>,
}

impl Topology {
    pub fn num_vertices(&self) -> usize {
        self.rotations.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rotations[v].len()
    }

    /// Sorted edge list with crossing words, prefixed by crossing counts.
    pub fn canonical_form(&self) -> String {
        let mut es: Vec<String> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (format!("{}{}", e.u, e.word), format!("{}{}", e.v, e.word.inverse()));
                if a <= b {
                    a
                } else {
                    b
                }
            })
            .collect();
        es.sort();
        let mut out = String::new();
        let _ = write!(out, "{:?}|{}", self.crossings, es.join(","));
        let _ = write!(out, "|{:?}|{}", self.blocks, self.pieces.join(","));
        out
    }

    /// Connected components as vertex lists.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.num_vertices();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for s in 0..n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![s];
            comp[s] = id;
            let mut vs = Vec::new();
            while let Some(v) = stack.pop() {
                vs.push(v);
                for &(e, at_u) in &self.rotations[v] {
                    let w = if at_u { self.edges[e].v } else { self.edges[e].u };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            vs.sort();
            out.push(vs);
        }
        out
    }
}

/// Builds the topology of a partition, or `None` if it is not a candidate.
fn evaluate(
    m: &DiskModel,
    b: &Bounds,
    counts: &[usize],
    atoms: &[Atom],
    points: &[usize],
    blocks: &[Vec<usize>],
    forbidden: &dyn Fn(usize, usize) -> bool,
) -> Vec<Topology> {
    let np = points.len();
    let mut block_of = vec![0usize; np];
    for (i, bl) in blocks.iter().enumerate() {
        for &p in bl {
            block_of[p] = i;
        }
    }
    // point index by (arc, idx, left)
    let mut index: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
    for (i, &a) in points.iter().enumerate() {
        if let Atom::Point { arc, idx, left } = atoms[a] {
            index.insert((arc, idx, left), i);
        }
    }
    let mirror = |p: usize| -> (usize, Letter) {
        let Atom::Point { arc, idx, left } = atoms[points[p]] else { unreachable!() };
        (index[&(arc, idx, !left)], Letter::new(arc, left))
    };

    // faces: intervals between consecutive points, glued inside blocks and
    // across arc gaps
    let mut uf: Vec<usize> = (0..np).collect();
    fn find(uf: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while uf[r] != r {
            r = uf[r];
        }
        let mut y = x;
        while uf[y] != r {
            let n = uf[y];
            uf[y] = r;
            y = n;
        }
        r
    }
    let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(uf, a), find(uf, b));
        if ra != rb {
            uf[ra] = rb;
        }
    };
    // interval i runs from point i to point i + 1
    for bl in blocks {
        for (j, &p) in bl.iter().enumerate() {
            let pred = bl[(j + bl.len() - 1) % bl.len()];
            // the interval ending at p continues after the block's previous point
            union(&mut uf, (p + np - 1) % np, pred);
        }
    }
    let mut gap_owner: BTreeMap<(usize, usize, bool), usize> = BTreeMap::new();
    let mut has_hole = vec![false; np];
    let first = points[0];
    let na = atoms.len();
    for k in 0..na {
        let a = (first + k) % na;
        // interval owning atom a: the last point at or before it
        let owner = points.partition_point(|&q| q <= a);
        let owner = if owner == 0 { np - 1 } else { owner - 1 };
        match atoms[a] {
            Atom::Gap { arc, m, left } => {
                gap_owner.insert((arc, m, left), owner);
            }
            Atom::Hole(_) => has_hole[owner] = true,
            Atom::Point { .. } => {}
        }
    }
    for (&(arc, mm, left), &o) in &gap_owner {
        if left {
            union(&mut uf, o, gap_owner[&(arc, mm, false)]);
        }
    }
    let mut face_hole: BTreeMap<usize, bool> = BTreeMap::new();
    for i in 0..np {
        let r = find(&mut uf, i);
        *face_hole.entry(r).or_insert(false) |= has_hole[i];
    }
    if face_hole.values().any(|&h| !h) {
        return Vec::new();
    }
    let faces = face_hole.len();

    // edges between pieces follow segments and crossings
    let stars: Vec<usize> = (0..blocks.len()).filter(|&i| blocks[i].len() >= 3).collect();
    let mut used = vec![false; np];
    let follow = |start: usize, used: &mut Vec<bool>| -> (usize, Vec<Letter>) {
        let mut p = start;
        let mut letters = Vec::new();
        loop {
            used[p] = true;
            let (q, l) = mirror(p);
            letters.push(l);
            used[q] = true;
            let bl = &blocks[block_of[q]];
            if bl.len() >= 3 {
                return (q, letters);
            }
            p = if bl[0] == q { bl[1] } else { bl[0] };
            if p == start {
                return (usize::MAX, letters);
            }
        }
    };
    let mut spokes = Vec::new();
    for &bi in &stars {
        for &p in &blocks[bi] {
            if !used[p] {
                let (q, letters) = follow(p, &mut used);
                spokes.push((p, q, Word(letters)));
            }
        }
    }
    let mut loops = Vec::new();
    for p in 0..np {
        if !used[p] {
            loops.push(Word(follow(p, &mut used).1));
        }
    }
    let size = b.size(m);
    let base_edges = spokes.len() + loops.len();
    if stars.len() + loops.len() > size || base_edges > size {
        return Vec::new();
    }
    let sign_of = |w: &Word| -> i8 { w.letters().iter().map(|l| m.character[l.arc()]).product() };
    let shapes: Vec<Vec<Piece>> = stars.iter().map(|&bi| plane_trees(&blocks[bi])).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; stars.len()];
    'combos: loop {
        let extra: usize = choice.iter().zip(&shapes).map(|(&c, sh)| sh[c].inner_edges()).sum();
        if stars.len() + extra + loops.len() <= size && base_edges + extra <= size {
            let mut rotations: Vec<Vec<(usize, bool)>> = Vec::new();
            let mut edges: Vec<TopoEdge> = Vec::new();
            let mut attach: BTreeMap<usize, usize> = BTreeMap::new();
            let mut layouts = Vec::new();
            for (si, &c) in choice.iter().enumerate() {
                layouts.push(shapes[si][c].place(rotations.len(), &mut attach));
                rotations.extend(std::iter::repeat_with(Vec::new).take(shapes[si][c].inner_edges() + 1));
            }
            let mut ends: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
            for (p, q, w) in &spokes {
                let e = edges.len();
                edges.push(TopoEdge { u: attach[p], v: attach[q], word: w.clone(), sign: sign_of(w) });
                ends.insert(*p, (e, true));
                ends.insert(*q, (e, false));
            }
            let mut tree_ends: BTreeMap<(usize, usize), (usize, bool)> = BTreeMap::new();
            for lay in &layouts {
                for (v, items) in lay {
                    for it in items {
                        if let Item::Down(c) = *it {
                            let e = edges.len();
                            edges.push(TopoEdge { u: *v, v: c, word: Word::empty(), sign: 1 });
                            tree_ends.insert((*v, c), (e, true));
                            tree_ends.insert((c, *v), (e, false));
                        }
                    }
                }
            }
            let mut ok = true;
            for lay in &layouts {
                for (v, items) in lay {
                    // a degree-three vertex between consecutive points of one
                    // arc side can be pushed across it
                    if items.len() == 3 {
                        for i in 0..3 {
                            if let (Item::Leaf(x), Item::Leaf(y)) = (items[i], items[(i + 1) % 3]) {
                                ok &= !forbidden(x, y);
                            }
                        }
                    }
                    rotations[*v] = items
                        .iter()
                        .map(|it| match *it {
                            Item::Leaf(p) => ends[&p],
                            Item::Down(c) => tree_ends[&(*v, c)],
                            Item::Up(pa) => tree_ends[&(*v, pa)],
                        })
                        .collect();
                }
            }
            for w in &loops {
                let v = rotations.len();
                let e = edges.len();
                edges.push(TopoEdge { u: v, v, word: w.clone(), sign: sign_of(w) });
                rotations.push(vec![(e, true), (e, false)]);
            }
            if ok {
                let pieces = choice.iter().zip(&shapes).map(|(&c, sh)| sh[c].to_string()).collect();
                out.push(Topology { edges, rotations, crossings: counts.to_vec(), faces, kappa: b.kappa, blocks: blocks.to_vec(), pieces });
            }
        }
        for i in 0..choice.len() {
            choice[i] += 1;
            if choice[i] < shapes[i].len() {
                continue 'combos;
            }
            choice[i] = 0;
        }
        break;
    }
    out
}

/// Item in the rotation of a tree vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Item {
    Leaf(usize),
    Down(usize),
    Up(usize),
}

/// Plane tree inside one piece: leaves are boundary points in order and
/// every inner vertex has degree at least three.
#[derive(Clone, Debug, PartialEq, Eq)]
enum Piece {
    Leaf(usize),
    Inner(Vec<Piece>),
}

impl Piece {
    #[cfg(test)]
    fn leaves(&self) -> Vec<usize> {
        match self {
            Piece::Leaf(x) => vec![*x],
            Piece::Inner(cs) => cs.iter().flat_map(Piece::leaves).collect(),
        }
    }

    fn inner_edges(&self) -> usize {
        match self {
            Piece::Leaf(_) => 0,
            Piece::Inner(cs) => cs.iter().map(|c| matches!(c, Piece::Inner(_)) as usize + c.inner_edges()).sum(),
        }
    }

    /// Numbers inner vertices from `base` and lists their rotations. The
    /// root is an inner vertex whose children follow the first leaf.
    fn place(&self, base: usize, attach: &mut BTreeMap<usize, usize>) -> Vec<(usize, Vec<Item>)> {
        fn go(p: &Piece, v: usize, parent: Option<usize>, next: &mut usize, attach: &mut BTreeMap<usize, usize>, out: &mut Vec<(usize, Vec<Item>)>) {
            let Piece::Inner(cs) = p else { unreachable!() };
            let mut items: Vec<Item> = parent.map(Item::Up).into_iter().collect();
            let slot = out.len();
            out.push((v, Vec::new()));
            for c in cs {
                match c {
                    Piece::Leaf(x) => {
                        attach.insert(*x, v);
                        items.push(Item::Leaf(*x));
                    }
                    Piece::Inner(_) => {
                        let w = *next;
                        *next += 1;
                        items.push(Item::Down(w));
                        go(c, w, Some(v), next, attach, out);
                    }
                }
            }
            out[slot].1 = items;
        }
        let mut out = Vec::new();
        let mut next = base + 1;
        go(self, base, None, &mut next, attach, &mut out);
        out
    }
}

impl std::fmt::Display for Piece {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Piece::Leaf(x) => write!(f, "{x}"),
            Piece::Inner(cs) => {
                write!(f, "(")?;
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// All plane trees on the given leaves in cyclic order.
fn plane_trees(leaves: &[usize]) -> Vec<Piece> {
    // rooted at the vertex of the first leaf; the rest hang below it
    below(&leaves[1..])
        .into_iter()
        .map(|p| match p {
            Piece::Inner(mut cs) => {
                cs.insert(0, Piece::Leaf(leaves[0]));
                Piece::Inner(cs)
            }
            Piece::Leaf(_) => unreachable!(),
        })
        .collect()
}

/// Inner vertices with at least two children covering `leaves` in order.
fn below(leaves: &[usize]) -> Vec<Piece> {
    fn parts(leaves: &[usize], proper: bool) -> Vec<Vec<Piece>> {
        // sequences of subtrees covering the leaves, each leaf or inner
        if leaves.is_empty() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let last = if proper { leaves.len() - 1 } else { leaves.len() };
        for k in 1..=last {
            let heads: Vec<Piece> = if k == 1 { vec![Piece::Leaf(leaves[0])] } else { below(&leaves[..k]) };
            for tail in parts(&leaves[k..], false) {
                for h in &heads {
                    let mut v = vec![h.clone()];
                    v.extend(tail.iter().cloned());
                    out.push(v);
                }
            }
        }
        out
    }
    parts(leaves, true).into_iter().filter(|cs| cs.len() >= 2).map(Piece::Inner).collect()
}

/// Calls `f` on every noncrossing partition of `0..n` into blocks of size
/// at least two, skipping two-point blocks that form a forbidden pair.
fn noncrossing_partitions(n: usize, forbidden: &dyn Fn(usize, usize) -> bool, max_stars: usize, f: &mut dyn FnMut(&[Vec<usize>]) -> bool) {
    fn rec(
        pending: &mut Vec<(usize, usize)>,
        blocks: &mut Vec<Vec<usize>>,
        stars: usize,
        forbidden: &dyn Fn(usize, usize) -> bool,
        max_stars: usize,
        f: &mut dyn FnMut(&[Vec<usize>]) -> bool,
    ) -> bool {
        let Some((lo, hi)) = pending.pop() else {
            return f(blocks);
        };
        if lo == hi {
            let go = rec(pending, blocks, stars, forbidden, max_stars, f);
            pending.push((lo, hi));
            return go;
        }
        // choose the block of `lo` as an increasing sequence in (lo, hi)
        let mut block = vec![lo];
        fn choose(
            block: &mut Vec<usize>,
            hi: usize,
            pending: &mut Vec<(usize, usize)>,
            blocks: &mut Vec<Vec<usize>>,
            stars: usize,
            forbidden: &dyn Fn(usize, usize) -> bool,
            max_stars: usize,
            f: &mut dyn FnMut(&[Vec<usize>]) -> bool,
        ) -> bool {
            let last = *block.last().unwrap();
            if block.len() >= 2 {
                // close the block: the rest (last, hi) stays pending
                let ns = stars + usize::from(block.len() >= 3);
                let closing_ok = block.len() > 2 || !forbidden(block[0], block[1]);
                if ns <= max_stars && closing_ok && (hi - last - 1 == 0 || hi - last - 1 >= 2) {
                    let mut added = Vec::new();
                    for w in block.windows(2) {
                        added.push((w[0] + 1, w[1]));
                    }
                    added.push((last + 1, hi));
                    let n0 = pending.len();
                    pending.extend(added.into_iter().rev());
                    blocks.push(block.clone());
                    let go = rec(pending, blocks, ns, forbidden, max_stars, f);
                    blocks.pop();
                    pending.truncate(n0);
                    if !go {
                        return false;
                    }
                }
            }
            for nxt in last + 1..hi {
                let inner = nxt - last - 1;
                if inner == 1 {
                    continue;
                }
                block.push(nxt);
                let go = choose(block, hi, pending, blocks, stars, forbidden, max_stars, f);
                block.pop();
                if !go {
                    return false;
                }
            }
            true
        }
        let go = choose(&mut block, hi, pending, blocks, stars, forbidden, max_stars, f);
        pending.push((lo, hi));
        go
    }
    let mut pending = vec![(0, n)];
    let mut blocks = Vec::new();
    rec(&mut pending, &mut blocks, 0, forbidden, max_stars, f);
}

/// Crossing-count vectors within the bounds, in a fixed order.
fn count_vectors(m: &DiskModel, b: &Bounds) -> Vec<Vec<usize>> {
    let cap = b.per_arc.min(b.size(m));
    let mut out = vec![vec![]];
    for _ in 0..m.arcs {
        let mut next = Vec::new();
        for v in &out {
            for c in 0..=cap {
                let mut x = v.clone();
                x.push(c);
                if x.iter().sum::<usize>() <= b.total {
                    next.push(x);
                }
            }
        }
        out = next;
    }
    out.retain(|v| v.iter().sum::<usize>() > 0);
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

fn forbidden_pairs<'a>(atoms: &'a [Atom], points: &'a [usize]) -> impl Fn(usize, usize) -> bool + 'a {
    move |i: usize, j: usize| {
        // consecutive points on the same arc side bound a bigon
        let np = points.len();
        if (i + 1) % np != j && (j + 1) % np != i {
            return false;
        }
        let (Atom::Point { arc: a1, left: l1, .. }, Atom::Point { arc: a2, left: l2, .. }) = (atoms[points[i]], atoms[points[j]]) else {
            unreachable!()
        };
        let (x, y) = if (i + 1) % np == j { (points[i], points[j]) } else { (points[j], points[i]) };
        let between = if y > x { y - x - 1 } else { atoms.len() - x - 1 + y };
        a1 == a2 && l1 == l2 && between == 1
    }
}

/// All candidate topologies within the bounds, in a fixed order.
pub fn enumerate_candidate_topologies(m: &DiskModel, b: &Bounds) -> Vec<Topology> {
    let mut out = Vec::new();
    for counts in count_vectors(m, b) {
        let at = atoms(m, &counts);
        let points: Vec<usize> = (0..at.len()).filter(|&i| matches!(at[i], Atom::Point { .. })).collect();
        let forbidden = forbidden_pairs(&at, &points);
        noncrossing_partitions(points.len(), &forbidden, b.size(m), &mut |blocks| {
            out.extend(evaluate(m, b, &counts, &at, &points, blocks, &forbidden));
            out.len() < b.limit
        });
        if out.len() >= b.limit {
            out.truncate(b.limit);
            break;
        }
    }
    out
}

/// Non-contractible closed crossing words with at most `bound` crossings
/// per arc, one per unoriented free homotopy class, shortest first.
pub fn enumerate_cycle_layouts(arcs: usize, bound: usize) -> Vec<Word> {
    fn rec(arcs: usize, bound: usize, cur: &mut Vec<Letter>, counts: &mut Vec<usize>, out: &mut Vec<Word>) {
        if !cur.is_empty() && cur[0] != cur[cur.len() - 1].inverse() {
            let w = Word(cur.clone());
            if w.conjugacy_key() == w {
                out.push(w);
            }
        }
        for arc in 0..arcs {
            if counts[arc] == bound {
                continue;
            }
            for fwd in [true, false] {
                let l = Letter::new(arc, fwd);
                if cur.last().is_some_and(|&p| p == l.inverse()) {
                    continue;
                }
                cur.push(l);
                counts[arc] += 1;
                rec(arcs, bound, cur, counts, out);
                counts[arc] -= 1;
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(arcs, bound, &mut Vec::new(), &mut vec![0; arcs], &mut out);
    out.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    out
}

/// A good layout: groups of portal lifts, each to be joined by one tree,
/// and closed words, each to be realized by one cycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layout<L> {
    pub groups: Vec<Vec<L>>,
    pub cycles: Vec<Word>,
}

/// All layouts choosing at most `max_leaves` of the lifts, grouped into at
/// most `max_trees` groups of size two or more, together with at most
/// `max_cycles` of the cycle words; the empty layout is left out.
pub fn enumerate_good_layouts<L: Clone>(lifts: &[L], words: &[Word], max_leaves: usize, max_trees: usize, max_cycles: usize) -> Vec<Layout<L>> {
    fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for i in 0..n {
            let grown: Vec<Vec<usize>> = out.iter().filter(|s| s.len() < max).map(|s| [s.clone(), vec![i]].concat()).collect();
            out.extend(grown);
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        out
    }
    fn groupings(items: &[usize], max_groups: usize) -> Vec<Vec<Vec<usize>>> {
        // set partitions into blocks of size at least two
        let Some((&first, rest)) = items.split_first() else {
            return vec![Vec::new()];
        };
        if max_groups == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        for mates in subsets(rest.len(), rest.len()) {
            if mates.is_empty() {
                continue;
            }
            let block: Vec<usize> = std::iter::once(first).chain(mates.iter().map(|&i| rest[i])).collect();
            let left: Vec<usize> = rest.iter().enumerate().filter(|(i, _)| !mates.contains(i)).map(|(_, &x)| x).collect();
            for mut g in groupings(&left, max_groups - 1) {
                g.insert(0, block.clone());
                out.push(g);
            }
        }
        out
    }
    let mut out = Vec::new();
    for chosen in subsets(lifts.len(), max_leaves) {
        for grouping in groupings(&chosen, max_trees) {
            for cyc in subsets(words.len(), max_cycles) {
                if grouping.is_empty() && cyc.is_empty() {
                    continue;
                }
                out.push(Layout {
                    groups: grouping.iter().map(|b| b.iter().map(|&i| lifts[i].clone()).collect()).collect(),
                    cycles: cyc.iter().map(|&i| words[i].clone()).collect(),
                });
            }
        }
    }
    out
}

/// Independent enumeration for testing: all set partitions, filtered.
pub fn enumerate_candidate_topologies_brute(m: &DiskModel, b: &Bounds) -> Vec<Topology> {
    let mut out = Vec::new();
    for counts in count_vectors(m, b).into_iter().rev() {
        let at = atoms(m, &counts);
        let points: Vec<usize> = (0..at.len()).filter(|&i| matches!(at[i], Atom::Point { .. })).collect();
        let n = points.len();
        let forbidden = forbidden_pairs(&at, &points);
        let mut rgs = vec![0usize; n];
        loop {
            let nb = rgs.iter().max().map_or(0, |x| x + 1);
            let mut blocks = vec![Vec::new(); nb];
            for (i, &c) in rgs.iter().enumerate() {
                blocks[c].push(i);
            }
            let sizes_ok = blocks.iter().all(|bl| bl.len() >= 2);
            let interleaved = |x: &Vec<usize>, y: &Vec<usize>| {
                x.iter().any(|&a| x.iter().any(|&c| a < c && y.iter().any(|&q| a < q && q < c) && y.iter().any(|&q| q < a || q > c)))
            };
            let crossing = (0..nb).any(|x| (0..nb).any(|y| x != y && interleaved(&blocks[x], &blocks[y])));
            let bigon = blocks.iter().any(|bl| bl.len() == 2 && forbidden(bl[0], bl[1]));
            let stars = blocks.iter().filter(|bl| bl.len() >= 3).count();
            if sizes_ok && !crossing && !bigon && stars <= b.size(m) {
                out.extend(evaluate(m, b, &counts, &at, &points, &blocks, &forbidden));
            }
            if !next_rgs(&mut rgs) {
                break;
            }
        }
    }
    out
}

/// Advances a restricted growth string; false once exhausted.
fn next_rgs(rgs: &mut [usize]) -> bool {
    for i in (1..rgs.len()).rev() {
        let maxp = rgs[..i].iter().max().copied().unwrap_or(0);
        if rgs[i] <= maxp {
            rgs[i] += 1;
            rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::tests::{grid_system, planar_system};
    use crate::fixtures::GridKind;
    use std::collections::BTreeSet;

    fn forms(ts: &[Topology]) -> BTreeSet<String> {
        ts.iter().map(Topology::canonical_form).collect()
    }

    fn check(m: &DiskModel, ts: &[Topology]) {
        let size = m.complexity() * ts.first().map_or(1, |t| t.kappa);
        for t in ts {
            assert!(t.num_vertices() <= size && t.edges.len() <= size);
            assert!(t.faces >= 1 && t.faces <= m.holes);
            for v in 0..t.num_vertices() {
                assert!(t.degree(v) >= 2);
                if t.degree(v) == 2 {
                    // only vertices placed on closed curves
                    let (e, _) = t.rotations[v][0];
                    assert_eq!(t.edges[e].u, t.edges[e].v);
                }
            }
            for e in &t.edges {
                assert!(e.u != e.v || !e.word.is_empty());
                let sign: i8 = e.word.letters().iter().map(|l| m.character[l.arc()]).product();
                assert_eq!(sign, e.sign);
            }
        }
        assert_eq!(forms(ts).len(), ts.len(), "duplicates");
    }

    #[test]
    fn plane_tree_counts() {
        // trees with n ordered leaves and no degree-two vertex
        for (n, want) in [(3, 1), (4, 3), (5, 11), (6, 45)] {
            let leaves: Vec<usize> = (0..n).collect();
            let ts = plane_trees(&leaves);
            assert_eq!(ts.len(), want, "{n} leaves");
            assert!(ts.iter().all(|t| t.leaves() == leaves));
        }
    }

    #[test]
    fn cycle_words() {
        let one = enumerate_cycle_layouts(1, 1);
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].len(), 1);
        // brute force: every word up to the length bound, reduced to its class
        for (arcs, bound) in [(2, 1), (2, 2), (3, 1)] {
            let fast = enumerate_cycle_layouts(arcs, bound);
            assert!(fast.iter().all(|w| !w.cyclically_reduced().is_empty()));
            let mut brute = BTreeSet::new();
            let alphabet: Vec<Letter> = (0..arcs).flat_map(|a| [Letter::new(a, true), Letter::new(a, false)]).collect();
            let mut frontier = vec![Vec::new()];
            for _ in 0..arcs * bound {
                let mut next = Vec::new();
                for w in &frontier {
                    for &l in &alphabet {
                        let mut x: Vec<Letter> = w.clone();
                        x.push(l);
                        let k = Word(x.clone()).conjugacy_key();
                        if !k.is_empty() && k.arc_counts(arcs).iter().all(|&c| c <= bound) {
                            brute.insert(k);
                        }
                        next.push(x);
                    }
                }
                frontier = next;
            }
            assert_eq!(fast.iter().cloned().collect::<BTreeSet<_>>(), brute, "{arcs} arcs, bound {bound}");
            assert_eq!(fast.len(), brute.len());
        }
    }

    #[test]
    fn layout_counts_match_closed_form() {
        fn binom(n: usize, k: usize) -> usize {
            (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
        }
        // partitions of n items into b blocks of size at least two
        fn s2(n: usize, b: usize) -> usize {
            match (n, b) {
                (0, 0) => 1,
                (_, 0) | (0, _) | (1, _) => 0,
                _ => b * s2(n - 1, b) + (n - 1) * s2(n - 2, b - 1),
            }
        }
        let words = enumerate_cycle_layouts(1, 1);
        let lifts: Vec<usize> = (0..6).collect();
        for (leaves, trees, cycles) in [(0, 0, 1), (2, 1, 0), (4, 2, 1), (5, 2, 1), (6, 3, 0)] {
            let got = enumerate_good_layouts(&lifts, &words, leaves, trees, cycles);
            let trees_count: usize = (0..=leaves).map(|k| binom(6, k) * (0..=trees).map(|b| s2(k, b)).sum::<usize>()).sum();
            let cycle_count: usize = (0..=cycles).map(|c| binom(words.len(), c)).sum();
            assert_eq!(got.len(), trees_count * cycle_count - 1, "{leaves} {trees} {cycles}");
            assert!(got.iter().all(|l| l.groups.iter().all(|g| g.len() >= 2)));
        }
        let pure = enumerate_good_layouts(&lifts, &words, 0, 0, 1);
        assert_eq!(pure.len(), 1);
        assert!(pure[0].groups.is_empty() && pure[0].cycles.len() == 1);
    }

    #[test]
    fn annulus_has_only_its_core() {
        let sys = planar_system(2, 2);
        let m = DiskModel::from_arcs(&sys).unwrap();
        let ts = enumerate_candidate_topologies(&m, &Bounds::new(1));
        check(&m, &ts);
        assert_eq!(ts.len(), 1);
        assert_eq!(ts[0].edges.len(), 1);
        assert_eq!(ts[0].edges[0].word.len(), 1);
    }

    #[test]
    fn fast_and_brute_enumerations_agree() {
        let b = Bounds { kappa: 1, per_arc: 3, total: 5, limit: usize::MAX };
        for sys in [planar_system(3, 3), planar_system(4, 4), grid_system(1, GridKind::Projective, 1), grid_system(2, GridKind::Torus, 1)] {
            let m = DiskModel::from_arcs(&sys).unwrap();
            let fast = enumerate_candidate_topologies(&m, &b);
            let brute = enumerate_candidate_topologies_brute(&m, &b);
            check(&m, &fast);
            assert!(!fast.is_empty());
            assert_eq!(forms(&fast), forms(&brute), "g={} t={}", m.genus, m.holes);
        }
    }

    #[test]
    fn pants_topologies() {
        let sys = planar_system(3, 3);
        let m = DiskModel::from_arcs(&sys).unwrap();
        let one = enumerate_candidate_topologies(&m, &Bounds::new(1));
        let two = enumerate_candidate_topologies(&m, &Bounds::new(2));
        check(&m, &one);
        check(&m, &two);
        assert!(forms(&one).is_subset(&forms(&two)));
        let capped = enumerate_candidate_topologies(&m, &Bounds { limit: 5, ..Bounds::new(2) });
        assert_eq!(forms(&capped), forms(&two[..5]));
        // every graph type on a pair of pants shows up
        let shapes: BTreeSet<(usize, usize, usize, usize)> = one
            .iter()
            .map(|t| (t.num_vertices(), t.edges.len(), t.edges.iter().filter(|e| e.u == e.v).count(), t.components().len()))
            .collect();
        for want in [(1, 1, 1, 1), (2, 2, 2, 2), (1, 2, 2, 1), (2, 3, 2, 1), (2, 3, 0, 1)] {
            assert!(shapes.contains(&want), "{want:?} missing from {shapes:?}");
        }
        eprintln!("pants: {} at kappa 1, {} at kappa 2", one.len(), two.len());
    }
}
