//! Cycles of a candidate topology and greedy exhaustive families of
//! pairwise non-crossing cycles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::topologies::Topology;
use crate::word::Word;

/// Simple cycle of a topology as a closed sequence of oriented edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleInTopology {
    /// `(edge, forward)` steps; forward goes from `u` to `v`.
    pub steps: Vec<(usize, bool)>,
    pub vertices: Vec<usize>,
    /// Closed crossing word, reduced.
    pub word: Word,
    /// Product of the edge signs.
    pub sign: i8,
}

impl CycleInTopology {
    fn new(t: &Topology, steps: Vec<(usize, bool)>) -> Self {
        let mut vertices = Vec::new();
        let mut word = Word::empty();
        let mut sign = 1;
        for &(e, fwd) in &steps {
            let ed = &t.edges[e];
            vertices.push(if fwd { ed.u } else { ed.v });
            let w = if fwd { ed.word.clone() } else { ed.word.inverse() };
            word = word.mul(&w);
            sign *= ed.sign;
        }
        CycleInTopology { steps, vertices, word, sign }
    }

    pub fn edge_ids(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.steps.iter().map(|s| s.0).collect();
        v.sort();
        v
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn is_one_sided(&self) -> bool {
        self.sign < 0
    }

    /// Edge ends used by the cycle at step `i`'s start vertex: the arriving
    /// end of the previous step and the leaving end of step `i`.
    fn darts_at(&self, i: usize) -> ((usize, bool), (usize, bool)) {
        let n = self.steps.len();
        let (pe, pf) = self.steps[(i + n - 1) % n];
        let (e, f) = self.steps[i];
        ((pe, !pf), (e, f))
    }
}

/// All simple cycles, each once, ordered by length then edge ids.
pub fn cycles_of(t: &Topology) -> Vec<CycleInTopology> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut out = Vec::new();
    let n = t.num_vertices();
    for s in 0..n {
        // paths from s through vertices above s, closing back at s
        let mut stack: Vec<(usize, bool)> = Vec::new();
        let mut on = vec![false; n];
        on[s] = true;
        fn dfs(
            t: &Topology,
            s: usize,
            v: usize,
            on: &mut Vec<bool>,
            stack: &mut Vec<(usize, bool)>,
            seen: &mut BTreeSet<Vec<usize>>,
            out: &mut Vec<CycleInTopology>,
        ) {
            for &(e, at_u) in &t.rotations[v] {
                if stack.iter().any(|x| x.0 == e) {
                    continue;
                }
                let ed = &t.edges[e];
                let w = if at_u { ed.v } else { ed.u };
                // a loop is walked from its u end only
                if ed.u == ed.v && !at_u {
                    continue;
                }
                stack.push((e, at_u));
                if w == s {
                    let mut key: Vec<usize> = stack.iter().map(|x| x.0).collect();
                    key.sort();
                    if seen.insert(key) {
                        out.push(CycleInTopology::new(t, stack.clone()));
                    }
                } else if w > s && !on[w] {
                    on[w] = true;
                    dfs(t, s, w, on, stack, seen, out);
                    on[w] = false;
                }
                stack.pop();
            }
        }
        dfs(t, s, s, &mut on, &mut stack, &mut seen, &mut out);
    }
    out.sort_by_key(|c| (c.len(), c.edge_ids()));
    out
}

/// Whether the two cycles cross at some component of their intersection:
/// after contracting the component to a vertex, their four emanating
/// pieces alternate in its rotation.
pub fn cycles_cross(t: &Topology, c1: &CycleInTopology, c2: &CycleInTopology) -> bool {
    if c1.edge_ids() == c2.edge_ids() {
        return false;
    }
    let e2: BTreeSet<usize> = c2.steps.iter().map(|s| s.0).collect();
    let v2: BTreeSet<usize> = c2.vertices.iter().copied().collect();
    let n = c1.len();
    let shared_edge = |i: usize| e2.contains(&c1.steps[i].0);
    let shared_vertex = |i: usize| v2.contains(&c1.vertices[i]);
    // components are maximal runs of c1 over shared vertices and edges;
    // start scanning just after a vertex or edge not shared with c2
    let Some(start) = (0..n).find(|&i| !shared_edge(i)) else {
        return false;
    };
    let pos2: BTreeMap<usize, usize> = c2.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut covered = 0;
    while covered < n {
        let a = (start + 1 + covered) % n;
        if !shared_vertex(a) {
            covered += 1;
            continue;
        }
        // run of c1 from vertex a over shared edges
        let mut len = 0;
        while shared_edge((a + len) % n) {
            len += 1;
        }
        if crosses_at(t, c1, c2, a, (a + len) % n, len, &pos2) {
            return true;
        }
        covered += len + 1;
    }
    false
}

/// Alternation test at the component of c1 from step `a` to vertex `b`.
fn crosses_at(t: &Topology, c1: &CycleInTopology, c2: &CycleInTopology, a: usize, b: usize, len: usize, pos2: &BTreeMap<usize, usize>) -> bool {
    let n = c1.len();
    // c1 arrives at a and leaves b
    let (in1, _) = c1.darts_at(a);
    let (_, out1) = c1.darts_at(b);
    // c2 is at a and b too; its outer darts are those not on the path
    let path: BTreeSet<usize> = (0..len).map(|k| c1.steps[(a + k) % n].0).collect();
    let ja = pos2[&c1.vertices[a]];
    let jb = pos2[&c1.vertices[b]];
    let pick = |j: usize| -> (usize, bool) {
        let (x, y) = c2.darts_at(j);
        if path.contains(&x.0) {
            y
        } else {
            x
        }
    };
    let (o2a, o2b) = if len == 0 { c2.darts_at(ja) } else { (pick(ja), pick(jb)) };
    // merged rotation: a's ends after the path end, then b's ends after it,
    // with b's order reversed when the path flips orientation
    let va = c1.vertices[a];
    let vb = c1.vertices[b];
    let mut merged: Vec<(usize, bool)> = Vec::new();
    if len == 0 {
        merged.extend(t.rotations[va].iter().copied());
    } else {
        let pa = c1.steps[a % n];
        let pb = c1.steps[(a + len - 1) % n];
        let end_a = (pa.0, pa.1);
        let end_b = (pb.0, !pb.1);
        let sign: i8 = (0..len).map(|k| t.edges[c1.steps[(a + k) % n].0].sign).product();
        let ra = &t.rotations[va];
        let ia = ra.iter().position(|&d| d == end_a).expect("path end at a");
        for k in 1..ra.len() {
            merged.push(ra[(ia + k) % ra.len()]);
        }
        let rb = &t.rotations[vb];
        let ib = rb.iter().position(|&d| d == end_b).expect("path end at b");
        for k in 1..rb.len() {
            let idx = if sign > 0 { (ib + k) % rb.len() } else { (ib + rb.len() - k) % rb.len() };
            merged.push(rb[idx]);
        }
    }
    let pos = |d: (usize, bool)| merged.iter().position(|&x| x == d).expect("dart in merged rotation");
    let (p1, q1, p2, q2) = (pos(in1), pos(out1), pos(o2a), pos(o2b));
    let between = |x: usize| {
        let (lo, hi) = if p1 < q1 { (p1, q1) } else { (q1, p1) };
        lo < x && x < hi
    };
    between(p2) != between(q2)
}

/// Greedy maximal family of pairwise non-crossing cycles.
pub fn exhaustive_family(t: &Topology) -> Vec<CycleInTopology> {
    let mut fam: Vec<CycleInTopology> = Vec::new();
    for c in cycles_of(t) {
        if fam.iter().all(|f| !cycles_cross(t, f, &c)) {
            fam.push(c);
        }
    }
    fam
}

/// For a two-sided cycle, whether other edges leave it on both sides.
pub fn incident_on_both_sides(t: &Topology, c: &CycleInTopology) -> bool {
    if c.is_one_sided() {
        return false;
    }
    let mut sides = [false; 2];
    let mut sigma: i8 = 1;
    for i in 0..c.len() {
        let (din, dout) = c.darts_at(i);
        let rot = &t.rotations[c.vertices[i]];
        let k = rot.len();
        let io = rot.iter().position(|&d| d == dout).expect("leaving end");
        let mut side = 0;
        for s in 1..k {
            let idx = if sigma > 0 { (io + s) % k } else { (io + k - s) % k };
            let d = rot[idx];
            if d == din {
                side = 1;
            } else {
                sides[side] = true;
            }
        }
        sigma *= t.edges[c.steps[i].0].sign;
    }
    sides[0] && sides[1]
}
