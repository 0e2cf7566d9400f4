//! Finite pieces of covering spaces built from copies of the cut-open disk,
//! and shortest curves inside them.
//!
//! A copy is labelled by the group element (a reduced word in the arcs)
//! reached from the base copy; crossing arc letter `l` from copy `c` leads
//! to copy `c·l`. Universal regions glue copies along a tree. Annular
//! regions glue the copies of one period of a closed word into a cycle;
//! the closing gluing is the *seam*, and the winding number of a closed
//! walk counts its signed seam crossings.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::arcs::{ArcSystem, LinkKind, RegionId, Step, Walk};
use crate::error::{Error, Result};
use crate::word::{Letter, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoverKind {
    Universal,
    Annulus,
    Moebius,
}

/// Identification of two copies along a lift of an arc.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gluing {
    pub from: usize,
    pub letter: Letter,
    pub to: usize,
    /// `1` on the seam of an annular region, else `0`.
    pub winding: i32,
}

/// A node of a region: a region of the arrangement in one copy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node {
    pub copy: usize,
    pub region: RegionId,
}

#[derive(Clone, Debug)]
pub struct CoverRegion {
    pub kind: CoverKind,
    pub copies: Vec<Word>,
    pub gluings: Vec<Gluing>,
    /// For annular regions, the cyclically reduced period, rotated so the
    /// seam follows its last letter.
    pub word: Word,
    moves: HashMap<(usize, Letter), (usize, i32)>,
}

/// Lexicographic cost of a walk: length in units, then arc crossings.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cost {
    pub units: i64,
    pub crossings: u32,
}

impl Cost {
    pub fn of_step(sys: &ArcSystem, st: Step) -> Cost {
        let l = &sys.links[st.link];
        match l.kind {
            LinkKind::Graph { .. } => Cost { units: l.units, crossings: 0 },
            LinkKind::Arc { .. } => Cost { units: 0, crossings: 1 },
        }
    }

    pub fn add(self, o: Cost) -> Cost {
        Cost { units: self.units + o.units, crossings: self.crossings + o.crossings }
    }
}

/// A walk in a region, with the nodes it passes through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegionWalk {
    pub start: Node,
    pub steps: Vec<Step>,
    pub closed: bool,
    pub cost: Cost,
}

impl RegionWalk {
    /// The walk on the surface, forgetting copies.
    pub fn project(&self) -> Walk {
        Walk { start: self.start.region, steps: self.steps.clone(), closed: self.closed }
    }

    pub fn nodes(&self, sys: &ArcSystem, r: &CoverRegion) -> Vec<Node> {
        let mut out = vec![self.start];
        let mut cur = self.start;
        for st in &self.steps {
            cur = r.cross(sys, cur, *st).expect("walk stays inside its region").0;
            out.push(cur);
        }
        out
    }
}

impl CoverRegion {
    fn with_copies(kind: CoverKind, copies: Vec<Word>, gluings: Vec<Gluing>, word: Word) -> Self {
        let mut moves = HashMap::new();
        for g in &gluings {
            moves.insert((g.from, g.letter), (g.to, g.winding));
            moves.insert((g.to, g.letter.inverse()), (g.from, -g.winding));
        }
        CoverRegion { kind, copies, gluings, word, moves }
    }

    /// Universal region spanned by the given copy labels, which must be
    /// reduced and closed under taking prefixes.
    pub fn universal_from_copies(copies: Vec<Word>) -> Self {
        let index: HashMap<&Word, usize> = copies.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut gluings = Vec::new();
        for (i, w) in copies.iter().enumerate() {
            if let Some((&last, prefix)) = w.letters().split_last() {
                let from = index[&Word(prefix.to_vec())];
                gluings.push(Gluing { from, letter: last, to: i, winding: 0 });
            }
        }
        Self::with_copies(CoverKind::Universal, copies, gluings, Word::empty())
    }

    /// All copies within `radius` letters of the base copy.
    pub fn ball(arcs: usize, radius: usize) -> Self {
        let mut copies = vec![Word::empty()];
        let mut frontier = vec![Word::empty()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &frontier {
                for a in 0..arcs {
                    for fw in [true, false] {
                        let l = Letter::new(a, fw);
                        if w.letters().last() == Some(&l.inverse()) {
                            continue;
                        }
                        let mut x = w.clone();
                        x.0.push(l);
                        next.push(x);
                    }
                }
            }
            copies.extend(next.iter().cloned());
            frontier = next;
        }
        Self::universal_from_copies(copies)
    }

    pub fn num_copies(&self) -> usize {
        self.copies.len()
    }

    pub fn copy_of(&self, w: &Word) -> Option<usize> {
        self.copies.iter().position(|c| c == w)
    }

    /// Node reached by `st` from `n`, with the winding change; `None` when
    /// the step leaves the region.
    pub fn cross(&self, sys: &ArcSystem, n: Node, st: Step) -> Option<(Node, i32)> {
        if sys.source(st) != n.region {
            return None;
        }
        let region = sys.across(st);
        match sys.letter(st) {
            None => Some((Node { copy: n.copy, region }, 0)),
            Some(l) => self.moves.get(&(n.copy, l)).map(|&(copy, w)| (Node { copy, region }, w)),
        }
    }

    /// Steps leaving `n` that stay inside the region.
    pub fn neighbors<'a>(&'a self, sys: &'a ArcSystem, n: Node) -> impl Iterator<Item = (Step, Node, i32)> + 'a {
        sys.regions[n.region].steps.iter().filter_map(move |&st| self.cross(sys, n, st).map(|(m, w)| (st, m, w)))
    }

    pub fn num_nodes(&self, sys: &ArcSystem) -> usize {
        self.copies.len() * sys.num_regions()
    }

    pub fn nodes<'a>(&'a self, sys: &'a ArcSystem) -> impl Iterator<Item = Node> + 'a {
        (0..self.copies.len()).flat_map(move |copy| (0..sys.num_regions()).map(move |region| Node { copy, region }))
    }

    /// Plain-text dump: one line per copy, then one line per gluing.
    pub fn dump(&self, sys: &ArcSystem) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "kind {:?} copies {} word {}", self.kind, self.copies.len(), self.word);
        for (i, w) in self.copies.iter().enumerate() {
            let _ = writeln!(out, "copy {i} label {w} regions {}", sys.num_regions());
        }
        for g in &self.gluings {
            let _ = writeln!(out, "glue {} -{}-> {} winding {}", g.from, g.letter, g.to, g.winding);
        }
        out
    }

    /// Lifts a surface walk starting in the given copy.
    pub fn lift(&self, sys: &ArcSystem, w: &Walk, copy: usize) -> Result<RegionWalk> {
        let mut cur = Node { copy, region: w.start };
        let start = cur;
        let mut cost = Cost::default();
        for (i, st) in w.steps.iter().enumerate() {
            cur = self.cross(sys, cur, *st).ok_or(Error::BadCurve(i))?.0;
            cost = cost.add(Cost::of_step(sys, *st));
        }
        Ok(RegionWalk { start, steps: w.steps.clone(), closed: w.closed, cost })
    }
}

/// Region of the universal cover visited by a path with the given word.
pub fn relevant_region_universal(sys: &ArcSystem, word: &Word) -> Result<CoverRegion> {
    if let Some(l) = word.letters().iter().find(|l| l.arc() >= sys.num_arcs()) {
        return Err(Error::Invalid(format!("letter {l} names a missing arc")));
    }
    let mut copies = vec![Word::empty()];
    let mut cur = Word::empty();
    for &l in word.letters() {
        cur.push_reduced(l);
        if !copies.contains(&cur) {
            copies.push(cur.clone());
        }
    }
    Ok(CoverRegion::universal_from_copies(copies))
}

/// Region of the annular cover of a closed word: one period of the
/// cyclically reduced word, with the period's ends identified.
pub fn annular_region(sys: &ArcSystem, word: &Word) -> Result<CoverRegion> {
    if let Some(l) = word.letters().iter().find(|l| l.arc() >= sys.num_arcs()) {
        return Err(Error::Invalid(format!("letter {l} names a missing arc")));
    }
    let w = word.cyclically_reduced();
    if w.is_empty() {
        return Err(Error::Contractible);
    }
    // the seam follows the first occurrence of the smallest arc
    let k = w.len();
    let pos = (0..k).min_by_key(|&i| (w.0[i].arc(), i)).expect("non-empty");
    let rotated = Word((1..=k).map(|d| w.0[(pos + d) % k]).collect());
    let mut copies = Vec::with_capacity(k);
    let mut cur = Word::empty();
    for i in 0..k {
        copies.push(cur.clone());
        cur.0.push(rotated.0[i]);
    }
    let gluings = (0..k)
        .map(|i| Gluing { from: i, letter: rotated.0[i], to: (i + 1) % k, winding: i32::from(i + 1 == k) })
        .collect();
    let kind = if sys.word_character(&w) < 0 { CoverKind::Moebius } else { CoverKind::Annulus };
    Ok(CoverRegion::with_copies(kind, copies, gluings, rotated))
}

/// Lexicographic Dijkstra over `(node, winding)` states of a region.
struct Search<'a> {
    sys: &'a ArcSystem,
    region: &'a CoverRegion,
    best: HashMap<(Node, i32), Cost>,
    prev: HashMap<(Node, i32), ((Node, i32), Step)>,
}

impl<'a> Search<'a> {
    fn new(sys: &'a ArcSystem, region: &'a CoverRegion) -> Self {
        Search { sys, region, best: HashMap::new(), prev: HashMap::new() }
    }

    /// Runs until `target` is settled (or everything when `None`); returns
    /// its cost.
    fn run(&mut self, sources: &[Node], target: Option<&dyn Fn(Node, i32) -> bool>) -> Option<((Node, i32), Cost)> {
        let mut heap = BinaryHeap::new();
        for &s in sources {
            self.best.insert((s, 0), Cost::default());
            heap.push(Reverse((Cost::default(), s, 0)));
        }
        let mut done: HashMap<(Node, i32), ()> = HashMap::new();
        while let Some(Reverse((c, n, w))) = heap.pop() {
            if done.contains_key(&(n, w)) || self.best.get(&(n, w)) != Some(&c) {
                continue;
            }
            done.insert((n, w), ());
            if let Some(t) = target {
                if t(n, w) {
                    return Some(((n, w), c));
                }
            }
            for (st, m, dw) in self.region.neighbors(self.sys, n) {
                let nc = c.add(Cost::of_step(self.sys, st));
                let key = (m, w + dw);
                if done.contains_key(&key) {
                    continue;
                }
                if self.best.get(&key).is_none_or(|&b| nc < b) {
                    self.best.insert(key, nc);
                    self.prev.insert(key, ((n, w), st));
                    heap.push(Reverse((nc, m, w + dw)));
                }
            }
        }
        None
    }

    fn path_to(&self, mut key: (Node, i32)) -> (Node, Vec<Step>) {
        let mut steps = Vec::new();
        while let Some(&(p, st)) = self.prev.get(&key) {
            steps.push(st);
            key = p;
        }
        steps.reverse();
        (key.0, steps)
    }
}

/// Shortest walk in the region between two nodes.
pub fn shortest_path_in_region(sys: &ArcSystem, r: &CoverRegion, from: &[Node], to: &dyn Fn(Node) -> bool) -> Result<RegionWalk> {
    let mut s = Search::new(sys, r);
    let ((end, w), cost) = s.run(from, Some(&|n, _| to(n))).ok_or(Error::Unreachable)?;
    let (start, steps) = s.path_to((end, w));
    Ok(RegionWalk { start, steps, closed: false, cost })
}

/// Distances from the sources to every node of the region.
pub fn distances_in_region(sys: &ArcSystem, r: &CoverRegion, from: &[Node]) -> HashMap<Node, Cost> {
    let mut s = Search::new(sys, r);
    s.run(from, None);
    let mut out: HashMap<Node, Cost> = HashMap::new();
    for ((n, _), c) in s.best {
        let e = out.entry(n).or_insert(c);
        if c < *e {
            *e = c;
        }
    }
    out
}

/// Shortest path homotopic to `p` with fixed endpoints.
pub fn shortest_homotopic_path(sys: &ArcSystem, p: &Walk) -> Result<Walk> {
    if p.closed {
        return Err(Error::Invalid("expected an open walk".into()));
    }
    p.validate(sys)?;
    let word = sys.walk_word(p);
    let r = relevant_region_universal(sys, &word)?;
    let target = Node { copy: r.copy_of(&word.reduced()).expect("end copy"), region: sys.walk_end(p) };
    let w = shortest_path_in_region(sys, &r, &[Node { copy: 0, region: p.start }], &|n| n == target)?;
    Ok(w.project())
}

/// Shortest closed walk of winding one through one of the given nodes.
fn shortest_winding_one(sys: &ArcSystem, r: &CoverRegion, starts: &[Node]) -> Result<RegionWalk> {
    let mut best: Option<RegionWalk> = None;
    for &v in starts {
        let mut s = Search::new(sys, r);
        let bound = best.as_ref().map(|b| b.cost);
        let found = s.run(&[v], Some(&|n, w| n == v && w == 1));
        if let Some((key, cost)) = found {
            if bound.is_none_or(|b| cost < b) {
                let (start, steps) = s.path_to(key);
                best = Some(RegionWalk { start, steps, closed: true, cost });
            }
        }
    }
    best.ok_or(Error::Unreachable)
}

/// Nodes on the copy-0 side of the seam.
pub fn seam_nodes(sys: &ArcSystem, r: &CoverRegion) -> Vec<Node> {
    let last = *r.word.letters().last().expect("annular region");
    let mut out: Vec<Node> = sys.arc_links[last.arc()]
        .iter()
        .map(|&l| {
            let link = &sys.links[l];
            // crossing `last` forwards lands on the right side
            let region = if last.is_forward() { link.b } else { link.a };
            Node { copy: 0, region }
        })
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Signed number of seam crossings of a closed region walk.
pub fn seam_crossings(sys: &ArcSystem, r: &CoverRegion, w: &RegionWalk) -> (i32, usize) {
    let mut cur = w.start;
    let (mut net, mut total) = (0, 0);
    for st in &w.steps {
        let (m, dw) = r.cross(sys, cur, *st).expect("walk stays inside its region");
        if dw != 0 {
            net += dw;
            total += 1;
        }
        cur = m;
    }
    (net, total)
}

fn check_annular(r: &CoverRegion, kind: CoverKind) -> Result<()> {
    if r.kind != kind {
        return Err(Error::WrongRegionKind(format!("{:?}", r.kind)));
    }
    Ok(())
}

/// Shortest non-contractible closed curve of an annular region.
pub fn shortest_noncontractible_annulus(sys: &ArcSystem, r: &CoverRegion) -> Result<RegionWalk> {
    check_annular(r, CoverKind::Annulus)?;
    shortest_winding_one(sys, r, &seam_nodes(sys, r))
}

/// Shortest one-sided closed curve of a Möbius region, the class that stays
/// non-contractible once the boundary is capped off. It is a shortest path
/// between the two lifts of a node in the double cover, which is the
/// winding-one search below. A boundary-parallel curve can be shorter.
pub fn shortest_noncontractible_moebius(sys: &ArcSystem, r: &CoverRegion) -> Result<RegionWalk> {
    check_annular(r, CoverKind::Moebius)?;
    shortest_winding_one(sys, r, &seam_nodes(sys, r))
}

/// Shortest closed curve of winding one through the given node.
pub fn shortest_cycle_through_face(sys: &ArcSystem, r: &CoverRegion, f: Node) -> Result<RegionWalk> {
    if r.kind == CoverKind::Universal {
        return Err(Error::WrongRegionKind(format!("{:?}", r.kind)));
    }
    if f.copy >= r.num_copies() || f.region >= sys.num_regions() {
        return Err(Error::Invalid("node outside the region".into()));
    }
    shortest_winding_one(sys, r, &[f])
}

/// Shortest closed curve freely homotopic to the closed word.
pub fn shortest_homotopic_cycle(sys: &ArcSystem, word: &Word) -> Result<RegionWalk> {
    let r = annular_region(sys, word)?;
    shortest_winding_one(sys, &r, &seam_nodes(sys, &r))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::arcs::greedy_system_of_arcs;
    use crate::fixtures::{grid_instance, GridKind};
    use crate::instance::Instance;
    use crate::oracle::{random_planar_instance, GenConfig};

    pub(crate) fn planar_system(seed: u64, terminals: usize) -> ArcSystem {
        let cfg = GenConfig { vertices: 9, terminals, ..GenConfig::default() };
        let inst = Instance::new(random_planar_instance(seed, &cfg).unwrap()).unwrap();
        greedy_system_of_arcs(&inst.carved).unwrap()
    }

    pub(crate) fn grid_system(seed: u64, kind: GridKind, terminals: usize) -> ArcSystem {
        let mut spec = grid_instance(seed, 3, 3, kind, terminals.max(2), 0.7, 9).unwrap();
        spec.terminals.truncate(terminals);
        spec.pairs.clear();
        let inst = Instance::new(spec).unwrap();
        greedy_system_of_arcs(&inst.carved).unwrap()
    }

    #[test]
    fn universal_region_sizes() {
        let sys = planar_system(1, 3);
        let a = Letter::new(0, true);
        let b = Letter::new(1, false);
        assert_eq!(relevant_region_universal(&sys, &Word::empty()).unwrap().num_copies(), 1);
        let r = relevant_region_universal(&sys, &Word(vec![a, b, a])).unwrap();
        assert_eq!(r.num_copies(), 4);
        assert_eq!(r.gluings.len(), 3);
        assert!(relevant_region_universal(&sys, &Word(vec![Letter::new(5, true)])).is_err());
    }

    #[test]
    fn annular_region_of_single_crossing() {
        let sys = planar_system(2, 2);
        let r = annular_region(&sys, &Word(vec![Letter::new(0, true)])).unwrap();
        assert_eq!(r.kind, CoverKind::Annulus);
        assert_eq!(r.num_copies(), 1);
        assert_eq!(r.gluings, vec![Gluing { from: 0, letter: Letter::new(0, true), to: 0, winding: 1 }]);
        assert_eq!(annular_region(&sys, &Word(vec![Letter::new(0, true), Letter::new(0, false)])).unwrap_err(), Error::Contractible);
    }

    #[test]
    fn one_sided_word_gives_moebius_region() {
        let sys = grid_system(0, GridKind::Projective, 1);
        let k = sys.arc_character.iter().position(|&c| c < 0).unwrap();
        let r = annular_region(&sys, &Word(vec![Letter::new(k, true)])).unwrap();
        assert_eq!(r.kind, CoverKind::Moebius);
        let c = shortest_noncontractible_moebius(&sys, &r).unwrap();
        assert_eq!(seam_crossings(&sys, &r, &c), (1, 1));
        assert!(c.project().validate(&sys).is_ok());
    }

    #[test]
    fn homotopic_path_is_idempotent_and_not_longer() {
        for seed in 0..10 {
            let sys = planar_system(seed, 3);
            let n = sys.num_regions();
            let start = (seed as usize * 7) % n;
            // a random walk of 12 steps
            let mut cur = start;
            let mut steps = Vec::new();
            let mut x = seed as usize + 3;
            for _ in 0..12 {
                let opts = &sys.regions[cur].steps;
                x = x.wrapping_mul(1103515245).wrapping_add(12345) % (1 << 31);
                let st = opts[x % opts.len()];
                steps.push(st);
                cur = sys.across(st);
            }
            let p = Walk { start, steps, closed: false };
            let q = shortest_homotopic_path(&sys, &p).unwrap();
            assert!(sys.walk_units(&q) <= sys.walk_units(&p));
            assert_eq!(sys.walk_word(&q).reduced(), sys.walk_word(&p).reduced());
            let q2 = shortest_homotopic_path(&sys, &q).unwrap();
            assert_eq!(sys.walk_units(&q2), sys.walk_units(&q));
            assert_eq!(sys.walk_word(&q2), sys.walk_word(&q));
        }
    }

    #[test]
    fn homotopic_cycle_keeps_its_class() {
        let sys = grid_system(4, GridKind::Torus, 1);
        let w = Word(vec![Letter::new(0, true), Letter::new(1, true)]);
        let c = shortest_homotopic_cycle(&sys, &w).unwrap();
        let got = sys.walk_word(&c.project());
        assert_eq!(got.cyclically_reduced().conjugacy_key(), w.conjugacy_key());
        assert!(got.len() <= w.len());
    }
}
