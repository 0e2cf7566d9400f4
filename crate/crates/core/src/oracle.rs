//! Exact minimum multicuts by branch and bound, validity checks and
//! reproducible random planar instances.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceSpec};
use crate::surface::EdgeSpec;
use crate::weight::Weight;

pub const DEFAULT_ORACLE_CAP: usize = 22;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactResult {
    pub weight: Weight,
    pub cut_edges: Vec<String>,
}

/// Union-find over the vertices of the input graph.
struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a] = b;
        }
    }
}

/// True iff removing `removed` separates every pair of the instance.
pub fn separates(inst: &Instance, removed: &[bool]) -> bool {
    let g = &inst.surface;
    let mut dsu = Dsu::new(g.num_vertices());
    for (e, edge) in g.edges.iter().enumerate() {
        if !removed[e] {
            dsu.union(edge.u, edge.v);
        }
    }
    inst.pairs.iter().all(|&(a, b)| dsu.find(inst.terminal_vertices[a]) != dsu.find(inst.terminal_vertices[b]))
}

pub fn validate_multicut(inst: &Instance, edges: &[String]) -> Result<bool> {
    let ids = inst.edge_ids(edges)?;
    let mut removed = vec![false; inst.num_graph_edges()];
    for e in ids {
        removed[e] = true;
    }
    Ok(separates(inst, &removed))
}

struct Search<'a> {
    inst: &'a Instance,
    units: Vec<i64>,
    best: i64,
    best_set: Vec<usize>,
}

const INF: i64 = i64::MAX / 4;

impl Search<'_> {
    /// Maximum flow between two vertices; kept edges have infinite capacity
    /// and removed ones are absent.
    fn max_flow(&self, state: &[i8], s: usize, t: usize, limit: i64) -> i64 {
        let g = &self.inst.surface;
        let n = g.num_vertices();
        let m = g.num_edges();
        // residual capacities per (edge, direction)
        let mut cap = vec![[0i64; 2]; m];
        let mut adj = vec![Vec::new(); n];
        for (e, edge) in g.edges.iter().enumerate() {
            if state[e] < 0 || edge.u == edge.v {
                continue;
            }
            let c = if state[e] > 0 { INF } else { self.units[e] };
            cap[e] = [c, c];
            adj[edge.u].push((e, 0usize));
            adj[edge.v].push((e, 1usize));
        }
        let mut flow = 0;
        while flow < limit {
            let mut prev = vec![None; n];
            let mut seen = vec![false; n];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                if x == t {
                    break;
                }
                for &(e, dir) in &adj[x] {
                    let y = if dir == 0 { g.edges[e].v } else { g.edges[e].u };
                    if !seen[y] && cap[e][dir] > 0 {
                        seen[y] = true;
                        prev[y] = Some((e, dir));
                        q.push_back(y);
                    }
                }
            }
            if !seen[t] {
                break;
            }
            let mut bottleneck = INF;
            let mut y = t;
            while let Some((e, dir)) = prev[y] {
                bottleneck = bottleneck.min(cap[e][dir]);
                y = if dir == 0 { g.edges[e].u } else { g.edges[e].v };
            }
            let mut y = t;
            while let Some((e, dir)) = prev[y] {
                cap[e][dir] -= bottleneck;
                cap[e][1 - dir] += bottleneck;
                y = if dir == 0 { g.edges[e].u } else { g.edges[e].v };
            }
            flow += bottleneck;
        }
        flow
    }

    /// A path between the endpoints of some unseparated pair, as edge list.
    fn violated_path(&self, state: &[i8]) -> Option<Vec<usize>> {
        let g = &self.inst.surface;
        for &(a, b) in &self.inst.pairs {
            let (s, t) = (self.inst.terminal_vertices[a], self.inst.terminal_vertices[b]);
            let mut prev: Vec<Option<(usize, usize)>> = vec![None; g.num_vertices()];
            let mut seen = vec![false; g.num_vertices()];
            seen[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &d in &g.rotations[x] {
                    let e = d / 2;
                    if state[e] < 0 {
                        continue;
                    }
                    let y = g.vertex_of(d ^ 1);
                    if !seen[y] {
                        seen[y] = true;
                        prev[y] = Some((e, x));
                        q.push_back(y);
                    }
                }
            }
            if seen[t] {
                let mut path = Vec::new();
                let mut y = t;
                while let Some((e, x)) = prev[y] {
                    path.push(e);
                    y = x;
                }
                path.reverse();
                return Some(path);
            }
        }
        None
    }

    fn lower_bound(&self, state: &[i8], cost: i64) -> i64 {
        let mut lb = cost;
        for &(a, b) in &self.inst.pairs {
            let (s, t) = (self.inst.terminal_vertices[a], self.inst.terminal_vertices[b]);
            let f = self.max_flow(state, s, t, self.best - cost + 1);
            lb = lb.max(cost + f);
        }
        lb
    }

    fn better(&self, cost: i64, set: &[usize]) -> bool {
        cost < self.best || (cost == self.best && set < self.best_set.as_slice())
    }

    fn run(&mut self, state: &mut Vec<i8>, cost: i64) {
        if self.lower_bound(state, cost) > self.best {
            return;
        }
        let Some(path) = self.violated_path(state) else {
            let mut set: Vec<usize> = (0..state.len()).filter(|&e| state[e] < 0).collect();
            set.sort();
            if self.better(cost, &set) {
                self.best = cost;
                self.best_set = set;
            }
            return;
        };
        let free: Vec<usize> = path.into_iter().filter(|&e| state[e] == 0).collect();
        // branch i removes free[i] and keeps free[..i]
        for (i, &e) in free.iter().enumerate() {
            state[e] = -1;
            self.run(state, cost + self.units[e]);
            state[e] = 1;
            if i + 1 == free.len() {
                break;
            }
        }
        for &e in &free {
            state[e] = 0;
        }
    }
}

/// Exact minimum multicut of the input graph.
pub fn exact_multicut(inst: &Instance, cap: usize) -> Result<ExactResult> {
    let g = &inst.surface;
    if g.num_edges() > cap {
        return Err(Error::AboveCap { edges: g.num_edges(), cap });
    }
    let units: Vec<i64> = (0..g.num_edges()).map(|e| g.units(e)).collect();
    let all: i64 = units.iter().sum();
    let mut search = Search { inst, units, best: all + 1, best_set: Vec::new() };
    let mut state = vec![0i8; g.num_edges()];
    search.run(&mut state, 0);
    let mut names: Vec<String> = search.best_set.iter().map(|&e| g.edges[e].name.clone()).collect();
    names.sort();
    Ok(ExactResult { weight: g.scale.weight(search.best), cut_edges: names })
}

/// Minimum multicut by trying every edge subset; for testing only.
pub fn exhaustive_multicut(inst: &Instance) -> Weight {
    let g = &inst.surface;
    let m = g.num_edges();
    assert!(m <= 24, "exhaustive search is limited to 24 edges");
    let mut best = i64::MAX;
    let mut removed = vec![false; m];
    for mask in 0u32..(1u32 << m) {
        let mut cost = 0;
        for (e, r) in removed.iter_mut().enumerate() {
            *r = mask >> e & 1 == 1;
            if *r {
                cost += g.units(e);
            }
        }
        if cost < best && separates(inst, &removed) {
            best = cost;
        }
    }
    g.scale.weight(best)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub vertices: usize,
    pub terminals: usize,
    /// Probability that a given pair of terminals must be separated.
    pub pair_density: f64,
    pub weight_min: i64,
    pub weight_max: i64,
    /// Random edges are deleted, keeping the graph connected, until at most
    /// this many remain.
    pub max_edges: Option<usize>,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { vertices: 8, terminals: 3, pair_density: 0.7, weight_min: 1, weight_max: 16, max_edges: Some(20) }
    }
}

/// Deterministic planar instance: a stacked triangulation with random
/// edge deletions, integer weights, random terminals and pairs.
pub fn random_planar_instance(seed: u64, cfg: &GenConfig) -> Result<InstanceSpec> {
    if cfg.vertices < 3 || cfg.terminals < 2 || cfg.terminals > cfg.vertices {
        return Err(Error::Invalid("need at least 3 vertices and 2 <= terminals <= vertices".into()));
    }
    if cfg.weight_min < 1 || cfg.weight_max < cfg.weight_min {
        return Err(Error::Invalid("weights must satisfy 1 <= min <= max".into()));
    }
    if !(0.0..=1.0).contains(&cfg.pair_density) {
        return Err(Error::Invalid("pair density must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = vec![(0, 1), (1, 2), (2, 0)];
    let mut rot: Vec<Vec<usize>> = vec![vec![0, 2], vec![1, 0], vec![2, 1]];
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    let edge_between = |edges: &[(usize, usize)], a: usize, b: usize| {
        edges.iter().position(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a)).expect("triangle edge")
    };
    for x in 3..cfg.vertices {
        let fi = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[fi];
        let base = edges.len();
        edges.extend([(x, a), (x, b), (x, c)]);
        rot.push(vec![base, base + 1, base + 2]);
        for (v, next, new) in [(a, b, base), (b, c, base + 1), (c, a, base + 2)] {
            let e = edge_between(&edges[..base], v, next);
            let pos = rot[v].iter().position(|&d| d == e).expect("edge in rotation");
            rot[v].insert(pos + 1, new);
        }
        faces.swap_remove(fi);
        faces.extend([[a, b, x], [b, c, x], [c, a, x]]);
    }
    let mut alive = vec![true; edges.len()];
    if let Some(max) = cfg.max_edges {
        let mut order: Vec<usize> = (0..edges.len()).collect();
        order.shuffle(&mut rng);
        let mut count = edges.len();
        for e in order {
            if count <= max {
                break;
            }
            alive[e] = false;
            if connected(cfg.vertices, &edges, &alive) {
                count -= 1;
            } else {
                alive[e] = true;
            }
        }
    }
    let mut names = vec![String::new(); edges.len()];
    let mut k = 0;
    for e in 0..edges.len() {
        if alive[e] {
            names[e] = format!("e{k}");
            k += 1;
        }
    }
    let vname = |v: usize| format!("v{v}");
    let mut spec_edges = Vec::new();
    for (e, &(u, v)) in edges.iter().enumerate() {
        if alive[e] {
            let w = rng.gen_range(cfg.weight_min..=cfg.weight_max);
            spec_edges.push(EdgeSpec { id: names[e].clone(), u: vname(u), v: vname(v), w: Weight::from_int(w), sign: 1 });
        }
    }
    let mut rotations = BTreeMap::new();
    for (v, r) in rot.iter().enumerate() {
        rotations.insert(vname(v), r.iter().filter(|&&e| alive[e]).map(|&e| names[e].clone()).collect());
    }
    let mut vs: Vec<usize> = (0..cfg.vertices).collect();
    vs.shuffle(&mut rng);
    let mut terms: Vec<usize> = vs[..cfg.terminals].to_vec();
    terms.sort();
    let mut pairs = Vec::new();
    for i in 0..terms.len() {
        for j in i + 1..terms.len() {
            if rng.gen_bool(cfg.pair_density) {
                pairs.push([vname(terms[i]), vname(terms[j])]);
            }
        }
    }
    if pairs.is_empty() {
        pairs.push([vname(terms[0]), vname(terms[1])]);
    }
    Ok(InstanceSpec {
        vertices: (0..cfg.vertices).map(vname).collect(),
        edges: spec_edges,
        rotations,
        terminals: terms.into_iter().map(vname).collect(),
        pairs,
        seed: Some(seed),
    })
}

fn connected(n: usize, edges: &[(usize, usize)], alive: &[bool]) -> bool {
    let mut dsu = Dsu::new(n);
    for (e, &(u, v)) in edges.iter().enumerate() {
        if alive[e] {
            dsu.union(u, v);
        }
    }
    let r = dsu.find(0);
    (1..n).all(|v| dsu.find(v) == r)
}
