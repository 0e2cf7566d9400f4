//! Minimum Steiner trees by the Dreyfus–Wagner dynamic program, and trees
//! connecting groups of portal lifts in the universal cover.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::sync::Mutex;

use crate::arcs::{ArcSystem, RegionId, Step};
use crate::cover::{Cost, CoverRegion, Node};
use crate::error::{Error, Result};
use crate::word::Word;

/// Default cap on the number of terminals.
pub const DEFAULT_TERMINAL_CAP: usize = 12;

/// Undirected graph with lexicographic costs; edges carry a caller tag.
#[derive(Clone, Debug, Default)]
pub struct SteinerGraph {
    pub adj: Vec<Vec<(usize, Cost, usize)>>,
}

impl SteinerGraph {
    pub fn new(n: usize) -> Self {
        SteinerGraph { adj: vec![Vec::new(); n] }
    }

    pub fn add_edge(&mut self, u: usize, v: usize, c: Cost, tag: usize) {
        self.adj[u].push((v, c, tag));
        self.adj[v].push((u, c, tag));
    }

    pub fn num_nodes(&self) -> usize {
        self.adj.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SteinerTree {
    pub cost: Cost,
    /// Edges as `(u, v, tag)` with `u < v`, sorted.
    pub edges: Vec<(usize, usize, usize)>,
}

#[derive(Clone, Copy)]
enum Back {
    Leaf,
    Merge(u32),
    Edge(usize, usize),
}

/// Minimum Steiner tree spanning `terminals`.
pub fn dreyfus_wagner(g: &SteinerGraph, terminals: &[usize], cap: usize) -> Result<SteinerTree> {
    let mut ts: Vec<usize> = terminals.to_vec();
    ts.sort();
    ts.dedup();
    if ts.len() > cap {
        return Err(Error::Invalid(format!("{} terminals exceed the cap of {cap}", ts.len())));
    }
    if ts.iter().any(|&t| t >= g.num_nodes()) {
        return Err(Error::Invalid("terminal outside the graph".into()));
    }
    if ts.len() <= 1 {
        return Ok(SteinerTree { cost: Cost::default(), edges: Vec::new() });
    }
    let n = g.num_nodes();
    let k = ts.len();
    let full = (1u32 << k) - 1;
    let inf = Cost { units: i64::MAX, crossings: u32::MAX };
    let size = (1usize << k) * n;
    let mut dp = vec![inf; size];
    let mut back = vec![Back::Leaf; size];
    for (i, &t) in ts.iter().enumerate() {
        dp[(1 << i) * n + t] = Cost::default();
    }
    let mut masks: Vec<u32> = (1..=full).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut heap: BinaryHeap<Reverse<(Cost, usize)>> = BinaryHeap::new();
    for s in masks {
        let so = s as usize * n;
        if s.count_ones() > 1 {
            // merge two subtrees at a node; the lowest terminal stays in `a`
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            let mut sub = rest;
            loop {
                let a = low | sub;
                if a != s {
                    let (ao, bo) = (a as usize * n, (s ^ a) as usize * n);
                    for v in 0..n {
                        let (x, y) = (dp[ao + v], dp[bo + v]);
                        if x.units == i64::MAX || y.units == i64::MAX {
                            continue;
                        }
                        let c = x.add(y);
                        if c < dp[so + v] {
                            dp[so + v] = c;
                            back[so + v] = Back::Merge(a);
                        }
                    }
                }
                if sub == 0 {
                    break;
                }
                sub = (sub - 1) & rest;
            }
        }
        // grow along shortest paths
        let row = &mut dp[so..so + n];
        let brow = &mut back[so..so + n];
        heap.clear();
        heap.extend((0..n).filter(|&v| row[v] != inf).map(|v| Reverse((row[v], v))));
        while let Some(Reverse((c, v))) = heap.pop() {
            if c > row[v] {
                continue;
            }
            for &(w, wc, tag) in &g.adj[v] {
                let nc = c.add(wc);
                if nc < row[w] {
                    row[w] = nc;
                    brow[w] = Back::Edge(v, tag);
                    heap.push(Reverse((nc, w)));
                }
            }
        }
    }
    let root = ts[0];
    if dp[full as usize * n + root] == inf {
        return Err(Error::Unreachable);
    }
    let mut edges = BTreeSet::new();
    let mut stack = vec![(full, root)];
    while let Some((s, v)) = stack.pop() {
        match back[s as usize * n + v] {
            Back::Leaf => {}
            Back::Merge(a) => {
                stack.push((a, v));
                stack.push((s ^ a, v));
            }
            Back::Edge(u, tag) => {
                edges.insert((u.min(v), u.max(v), tag));
                stack.push((s, u));
            }
        }
    }
    Ok(SteinerTree { cost: dp[full as usize * n + root], edges: edges.into_iter().collect() })
}

/// Exhaustive Steiner tree: the cheapest minimum spanning tree over all
/// node sets containing the terminals. Exponential; for testing.
pub fn brute_force_steiner(g: &SteinerGraph, terminals: &[usize]) -> Option<Cost> {
    let n = g.num_nodes();
    let tset: BTreeSet<usize> = terminals.iter().copied().collect();
    let others: Vec<usize> = (0..n).filter(|v| !tset.contains(v)).collect();
    let mut best: Option<Cost> = None;
    for mask in 0u64..(1u64 << others.len()) {
        let mut inside = vec![false; n];
        for &t in &tset {
            inside[t] = true;
        }
        for (i, &v) in others.iter().enumerate() {
            if mask >> i & 1 == 1 {
                inside[v] = true;
            }
        }
        // Prim on the induced subgraph
        let start = *tset.iter().next()?;
        let mut seen = vec![false; n];
        let mut total = Cost::default();
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((Cost::default(), start)));
        let mut count = 0;
        while let Some(Reverse((c, v))) = heap.pop() {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            count += 1;
            total = total.add(c);
            for &(w, wc, _) in &g.adj[v] {
                if inside[w] && !seen[w] {
                    heap.push(Reverse((wc, w)));
                }
            }
        }
        let want = inside.iter().filter(|&&x| x).count();
        if count == want && best.is_none_or(|b| total < b) {
            best = Some(total);
        }
    }
    best
}

/// A lift of a point: a region in the copy labelled by a reduced word.
pub type Lift = (Word, RegionId);

/// Translates a group so its smallest member-relative form is canonical.
pub fn normalize_group(group: &[Lift]) -> Vec<Lift> {
    group
        .iter()
        .map(|(w0, _)| {
            let inv = w0.inverse();
            let mut v: Vec<Lift> = group.iter().map(|(w, r)| (inv.mul(w), *r)).collect();
            v.sort();
            v.dedup();
            v
        })
        .min()
        .unwrap_or_default()
}

/// Universal-cover region spanned by the prefixes of the given copy words
/// and everything within `margin` letters of them.
pub fn region_around(arcs: usize, words: &[Word], margin: usize) -> CoverRegion {
    let mut copies: BTreeSet<Word> = BTreeSet::new();
    for w in words {
        for i in 0..=w.len() {
            copies.insert(Word(w.0[..i].to_vec()));
        }
    }
    let mut frontier: Vec<Word> = copies.iter().cloned().collect();
    for _ in 0..margin {
        let mut next = Vec::new();
        for w in &frontier {
            for a in 0..arcs {
                for fwd in [true, false] {
                    let x = w.mul(&Word(vec![crate::word::Letter::new(a, fwd)]));
                    if copies.insert(x.clone()) {
                        next.push(x);
                    }
                }
            }
        }
        frontier = next;
    }
    let mut list: Vec<Word> = copies.into_iter().collect();
    list.sort_by(|a, b| (a.len(), &a.0).cmp(&(b.len(), &b.0)));
    CoverRegion::universal_from_copies(list)
}

/// Steiner tree of a group of lifts, as arrangement steps on the surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectedTree {
    pub cost: Cost,
    /// Links used, each once per use in the cover.
    pub steps: Vec<Step>,
}

/// Minimum Steiner tree connecting the lifts inside the region around them.
pub fn steiner_tree_of_lifts(sys: &ArcSystem, group: &[Lift], margin: usize, cap: usize) -> Result<ProjectedTree> {
    let words: Vec<Word> = group.iter().map(|(w, _)| w.clone()).collect();
    let region = region_around(sys.num_arcs(), &words, margin);
    let nodes: Vec<Node> = region.nodes(sys).collect();
    let index: HashMap<Node, usize> = nodes.iter().enumerate().map(|(i, &n)| (n, i)).collect();
    let mut g = SteinerGraph::new(nodes.len());
    let mut tags: Vec<Step> = Vec::new();
    for (i, &n) in nodes.iter().enumerate() {
        for (st, m, _) in region.neighbors(sys, n) {
            let j = index[&m];
            // each link once, from its forward end
            if st.forward {
                g.add_edge(i, j, Cost::of_step(sys, st), tags.len());
                tags.push(st);
            }
        }
    }
    let mut terms = Vec::new();
    for (w, r) in group {
        let copy = region.copy_of(w).ok_or_else(|| Error::Invalid(format!("lift copy {w} outside the region")))?;
        terms.push(index[&Node { copy, region: *r }]);
    }
    let t = dreyfus_wagner(&g, &terms, cap)?;
    Ok(ProjectedTree { cost: t.cost, steps: t.edges.iter().map(|&(_, _, tag)| tags[tag]).collect() })
}

/// Steiner trees for many groups, cached by normalized group.
pub struct SteinerCache<'a> {
    sys: &'a ArcSystem,
    margin: usize,
    cap: usize,
    cache: Mutex<HashMap<Vec<Lift>, Option<ProjectedTree>>>,
}

impl<'a> SteinerCache<'a> {
    pub fn new(sys: &'a ArcSystem, margin: usize, cap: usize) -> Self {
        SteinerCache { sys, margin, cap, cache: Mutex::new(HashMap::new()) }
    }

    /// Number of distinct groups solved so far.
    pub fn solved(&self) -> usize {
        self.cache.lock().expect("cache lock").len()
    }

    pub fn tree(&self, group: &[Lift]) -> Option<ProjectedTree> {
        let key = normalize_group(group);
        if let Some(t) = self.cache.lock().expect("cache lock").get(&key) {
            return t.clone();
        }
        let t = steiner_tree_of_lifts(self.sys, &key, self.margin, self.cap).ok();
        self.cache.lock().expect("cache lock").insert(key, t.clone());
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::tests::planar_system;
    use crate::cover::distances_in_region;
    use crate::word::Letter;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(units: i64) -> Cost {
        Cost { units, crossings: 0 }
    }

    #[test]
    fn small_cases() {
        // path 0-1-2: two terminals give the path
        let mut g = SteinerGraph::new(3);
        g.add_edge(0, 1, c(2), 0);
        g.add_edge(1, 2, c(3), 1);
        let t = dreyfus_wagner(&g, &[0, 2], 12).unwrap();
        assert_eq!(t.cost, c(5));
        assert_eq!(t.edges.len(), 2);
        // star with a cheap centre beats pairwise paths
        let mut s = SteinerGraph::new(4);
        for (i, w) in [(1, 1), (2, 2), (3, 4)] {
            s.add_edge(0, i, c(w), i);
        }
        s.add_edge(1, 2, c(10), 7);
        let t = dreyfus_wagner(&s, &[1, 2, 3], 12).unwrap();
        assert_eq!(t.cost, c(7));
        let mut d = SteinerGraph::new(2);
        d.adj[0].clear();
        assert_eq!(dreyfus_wagner(&d, &[0, 1], 12), Err(Error::Unreachable));
    }

    #[test]
    fn matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for case in 0..30 {
            let n = rng.gen_range(5..=15);
            let mut g = SteinerGraph::new(n);
            for v in 1..n {
                let u = rng.gen_range(0..v);
                g.add_edge(u, v, c(rng.gen_range(1..=9)), 0);
            }
            for _ in 0..n {
                let (u, v) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if u != v {
                    g.add_edge(u, v, c(rng.gen_range(1..=9)), 0);
                }
            }
            let k = rng.gen_range(2..=7.min(n));
            let mut ts: Vec<usize> = (0..n).collect();
            for i in 0..k {
                let j = rng.gen_range(i..n);
                ts.swap(i, j);
            }
            ts.truncate(k);
            let dw = dreyfus_wagner(&g, &ts, 12).unwrap();
            assert_eq!(Some(dw.cost), brute_force_steiner(&g, &ts), "case {case}");
            // terminal order does not matter
            let mut rev = ts.clone();
            rev.reverse();
            assert_eq!(dreyfus_wagner(&g, &rev, 12).unwrap().cost, dw.cost);
            // the tree's edges add up to its cost
            let sum: i64 = dw.edges.iter().map(|&(u, v, _)| g.adj[u].iter().filter(|e| e.0 == v).map(|e| e.1.units).min().unwrap()).sum();
            assert_eq!(sum, dw.cost.units);
        }
    }

    #[test]
    fn two_lifts_give_the_homotopic_shortest_path() {
        let sys = planar_system(3, 3);
        let a = Letter::new(0, true);
        let (r0, r1) = (0, sys.num_regions() - 1);
        let t = steiner_tree_of_lifts(&sys, &[(Word::empty(), r0), (Word(vec![a]), r1)], 1, 12).unwrap();
        let region = region_around(sys.num_arcs(), &[Word(vec![a])], 1);
        let d = distances_in_region(&sys, &region, &[Node { copy: 0, region: r0 }]);
        let target = Node { copy: region.copy_of(&Word(vec![a])).unwrap(), region: r1 };
        assert_eq!(t.cost, d[&target]);
    }

    #[test]
    fn groups_normalize_under_translation() {
        let a = Letter::new(0, true);
        let b = Letter::new(1, false);
        let g1 = vec![(Word::empty(), 3), (Word(vec![a]), 5)];
        let g2 = vec![(Word(vec![b]), 3), (Word(vec![b, a]), 5)];
        assert_eq!(normalize_group(&g1), normalize_group(&g2));
    }
}
