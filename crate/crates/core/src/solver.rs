//! Main algorithm: candidate topologies, skeleta and portals, layouts,
//! Steiner forests plus homotopic cycles, validity filter, minimum.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use log::{debug, info};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arcs::{greedy_system_of_arcs, ArcSystem, LinkKind, RegionId, Step};
use crate::cover::shortest_homotopic_cycle;
use crate::error::{Error, Result};
use crate::instance::Instance;
use crate::oracle::{exact_multicut, separates, DEFAULT_ORACLE_CAP};
use crate::skeleton::{place_portals, range_choices, Ratio64, SkeletonBuilder, SkeletonParams};
use crate::steiner::{Lift, SteinerCache, DEFAULT_TERMINAL_CAP};
use crate::surface::EdgeId;
use crate::topologies::{enumerate_candidate_topologies, Bounds, DiskModel, Topology};
use crate::weight::Weight;
use crate::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub epsilon: Ratio64,
    pub kappa_init: usize,
    pub kappa_cap: usize,
    /// Largest edge count for the exact fallback.
    pub oracle_cap: usize,
    /// Worker threads; `0` lets the pool decide.
    pub jobs: usize,
    /// Topologies kept per multiplier, in enumeration order.
    pub max_topologies: usize,
    /// Portal choices tried per component, over all its portal sets.
    pub max_layouts: usize,
    /// Layouts per multiplier; checked between fixed batches of topologies
    /// so the cut-off does not depend on scheduling. Topologies made of
    /// cycles only are still drawn after it is spent.
    pub layout_budget: usize,
    /// Options kept per non-cycle component when a topology has several.
    pub top_k: usize,
    pub steiner_margin: usize,
    pub terminal_cap: usize,
    pub certificate: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            epsilon: Ratio64::new(1, 2),
            kappa_init: 2,
            kappa_cap: 8,
            oracle_cap: DEFAULT_ORACLE_CAP,
            jobs: 0,
            max_topologies: 2000,
            max_layouts: 4096,
            layout_budget: 30_000,
            top_k: 8,
            steiner_margin: 0,
            terminal_cap: DEFAULT_TERMINAL_CAP,
            certificate: false,
        }
    }
}

impl SolverConfig {
    pub fn with_epsilon(epsilon: Ratio64) -> Self {
        SolverConfig { epsilon, ..SolverConfig::default() }
    }

    fn check(&self) -> Result<()> {
        if self.epsilon <= Ratio64::zero() {
            return Err(Error::Invalid("epsilon must be positive".into()));
        }
        if self.kappa_init == 0 || self.kappa_init > self.kappa_cap {
            return Err(Error::Invalid("need 0 < kappa_init <= kappa_cap".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub topologies: usize,
    pub skeleta: usize,
    pub layouts: usize,
    pub candidates: usize,
    pub valid: usize,
    pub steiner_trees: usize,
}

impl Stats {
    fn add(&mut self, o: &Stats) {
        self.topologies += o.topologies;
        self.skeleta += o.skeleta;
        self.layouts += o.layouts;
        self.candidates += o.candidates;
        self.valid += o.valid;
        self.steiner_trees += o.steiner_trees;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PieceKind {
    Cycle,
    Tree,
}

/// One component of a drawn candidate: a homotopic cycle or a projected
/// Steiner tree, as the links it uses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrawnPiece {
    pub kind: PieceKind,
    pub steps: Vec<Step>,
    /// Crossing word of a cycle, or the copy words of a tree's lifts.
    pub words: Vec<Word>,
}

impl DrawnPiece {
    pub fn units(&self, sys: &ArcSystem) -> i64 {
        self.steps.iter().map(|st| sys.links[st.link].units).sum()
    }

    /// Crossed graph edges in step order, with multiplicity.
    pub fn crossed(&self, sys: &ArcSystem) -> Vec<EdgeId> {
        self.steps
            .iter()
            .filter_map(|st| match sys.links[st.link].kind {
                LinkKind::Graph { edge, .. } => Some(edge),
                LinkKind::Arc { .. } => None,
            })
            .collect()
    }
}

/// A drawn graph made of pieces, with its crossed edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Candidate {
    pub pieces: Vec<DrawnPiece>,
    pub edges: BTreeSet<EdgeId>,
    /// Drawn length in units, multiplicity kept.
    pub units: i64,
}

/// Union of projected trees and cycles.
pub fn assemble_candidate(sys: &ArcSystem, forest: &[DrawnPiece], cycles: &[DrawnPiece]) -> Candidate {
    let pieces: Vec<DrawnPiece> = forest.iter().chain(cycles).cloned().collect();
    let edges = pieces.iter().flat_map(|p| p.crossed(sys)).collect();
    let units = pieces.iter().map(|p| p.units(sys)).sum();
    Candidate { pieces, edges, units }
}

/// True iff deleting the crossed edges separates every pair.
pub fn is_multicut_dual(inst: &Instance, edges: &BTreeSet<EdgeId>) -> bool {
    let mut removed = vec![false; inst.num_graph_edges()];
    for &e in edges {
        removed[e] = true;
    }
    separates(inst, &removed)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatePiece {
    pub kind: PieceKind,
    pub words: Vec<String>,
    /// Crossed edge ids in drawing order, with multiplicity.
    pub crossings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub topology: usize,
    pub pieces: Vec<CertificatePiece>,
}

impl Certificate {
    /// Edge ids crossed by the recorded pieces.
    pub fn crossed_edges(&self) -> BTreeSet<String> {
        self.pieces.iter().flat_map(|p| p.crossings.iter().cloned()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Source {
    /// The pairs are already separated.
    Trivial,
    Candidates,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MulticutSolution {
    pub weight: Weight,
    pub cut_edges: Vec<String>,
    pub epsilon: String,
    pub kappa: usize,
    pub source: Source,
    pub stats: Stats,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

impl MulticutSolution {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("solution serializes")
    }
}

/// Immutable context shared by all topologies at one multiplier.
struct Ctx<'a> {
    sys: &'a ArcSystem,
    cfg: &'a SolverConfig,
    params: SkeletonParams,
    builder: SkeletonBuilder<'a>,
    steiner: SteinerCache<'a>,
    cycles: Mutex<HashMap<Word, Option<Arc<DrawnPiece>>>>,
    g: usize,
    t: usize,
}

impl Ctx<'_> {
    fn cycle(&self, word: &Word) -> Option<Arc<DrawnPiece>> {
        let key = word.oriented_conjugacy_key();
        if let Some(c) = self.cycles.lock().expect("cycle lock").get(&key) {
            return c.clone();
        }
        let c = shortest_homotopic_cycle(self.sys, &key).ok().map(|w| {
            let walk = w.project();
            let word = self.sys.walk_word(&walk).reduced();
            Arc::new(DrawnPiece { kind: PieceKind::Cycle, steps: walk.steps, words: vec![word] })
        });
        self.cycles.lock().expect("cycle lock").insert(key, c.clone());
        c
    }

    /// Distinct portal region sets over the skeleta of a topology.
    fn portal_sets(&self, topo: &Topology, ti: usize) -> Vec<Vec<RegionId>> {
        let count = self.params.range_count(self.g + self.t);
        let mut sets = BTreeSet::new();
        for rc in range_choices(self.builder.ranged_cycles(topo), count) {
            match self.builder.build_one(topo, ti, &rc) {
                Ok(sk) => {
                    let mut r = place_portals(self.sys, &sk, &self.params, self.g, self.t).regions();
                    r.sort();
                    sets.insert(r);
                }
                Err(e) => debug!("skeleton of topology {ti} failed: {e}"),
            }
        }
        sets.into_iter().collect()
    }

    /// Steiner-tree options of one non-cycle component.
    fn tree_options(&self, topo: &Topology, comp: &[usize], sets: &[Vec<RegionId>], stats: &mut Stats) -> Vec<Candidate> {
        let (copy, cut) = spanning_tree(topo, comp);
        let mut best: BTreeMap<BTreeSet<EdgeId>, Candidate> = BTreeMap::new();
        let mut tried = 0;
        'sets: for regions in sets {
            // per non-tree edge: (region, prefix length)
            let choices: Vec<Vec<(RegionId, usize)>> = cut
                .iter()
                .map(|&e| {
                    let len = topo.edges[e].word.len();
                    regions.iter().flat_map(|&r| (0..=len).map(move |j| (r, j))).collect()
                })
                .collect();
            let mut idx = vec![0usize; cut.len()];
            loop {
                if tried >= self.cfg.max_layouts {
                    debug!("layout cap reached for a component");
                    break 'sets;
                }
                tried += 1;
                stats.layouts += 1;
                let mut group: Vec<Lift> = Vec::new();
                for (k, &e) in cut.iter().enumerate() {
                    let (r, j) = choices[k][idx[k]];
                    let te = &topo.edges[e];
                    let w = te.word.letters();
                    let head = Word(w[..j].to_vec());
                    let tail = Word(w[j..].to_vec()).inverse();
                    group.push((copy[&te.u].mul(&head), r));
                    group.push((copy[&te.v].mul(&tail), r));
                }
                if let Some(tree) = self.steiner.tree(&group) {
                    let piece = DrawnPiece {
                        kind: PieceKind::Tree,
                        steps: tree.steps,
                        words: group.iter().map(|(w, _)| w.clone()).collect(),
                    };
                    let edges: BTreeSet<EdgeId> = piece.crossed(self.sys).into_iter().collect();
                    let units = tree.cost.units;
                    let better = best.get(&edges).is_none_or(|o| units < o.units);
                    if better {
                        best.insert(edges.clone(), Candidate { pieces: vec![piece], edges, units });
                    }
                }
                if !advance(&mut idx, &choices) {
                    break;
                }
            }
        }
        best.into_values().collect()
    }

    /// Candidates drawn for one topology.
    fn candidates(&self, topo: &Topology, ti: usize, trees: bool) -> (Vec<(usize, Candidate)>, Stats) {
        let mut stats = Stats { topologies: 1, ..Stats::default() };
        let mut per_comp: Vec<Vec<Candidate>> = Vec::new();
        let mut tree_comps = Vec::new();
        for comp in topo.components() {
            let loops: Vec<usize> = (0..topo.edges.len()).filter(|&e| topo.edges[e].u == comp[0]).collect();
            if comp.len() == 1 && topo.degree(comp[0]) == 2 && loops.len() == 1 {
                let Some(c) = self.cycle(&topo.edges[loops[0]].word) else {
                    debug!("topology {ti} has a cycle without a homotopic representative");
                    return (Vec::new(), stats);
                };
                let edges = c.crossed(self.sys).into_iter().collect();
                let units = c.units(self.sys);
                per_comp.push(vec![Candidate { pieces: vec![(*c).clone()], edges, units }]);
            } else {
                // filled once the portal sets are known
                tree_comps.push(per_comp.len());
                per_comp.push(Vec::new());
            }
        }
        if !tree_comps.is_empty() {
            if !trees {
                return (Vec::new(), stats);
            }
            let sets = self.portal_sets(topo, ti);
            stats.skeleta += sets.len();
            let comps = topo.components();
            let many = tree_comps.len() > 1;
            for &k in &tree_comps {
                let mut opts = self.tree_options(topo, &comps[k], &sets, &mut stats);
                if many {
                    opts.sort_by(|a, b| (a.units, &a.edges).cmp(&(b.units, &b.edges)));
                    opts.truncate(self.cfg.top_k);
                }
                if opts.is_empty() {
                    return (Vec::new(), stats);
                }
                per_comp[k] = opts;
            }
        }
        // product of component options
        let mut out: Vec<Candidate> = vec![Candidate { pieces: Vec::new(), edges: BTreeSet::new(), units: 0 }];
        for opts in &per_comp {
            let mut next = Vec::with_capacity(out.len() * opts.len());
            for a in &out {
                for b in opts {
                    let mut pieces = a.pieces.clone();
                    pieces.extend(b.pieces.iter().cloned());
                    let edges = a.edges.union(&b.edges).copied().collect();
                    next.push(Candidate { pieces, edges, units: a.units + b.units });
                }
            }
            out = next;
        }
        (out.into_iter().map(|o| (ti, o)).collect(), stats)
    }
}

/// Copy word of every vertex of a component along a BFS spanning tree, and
/// the non-tree edges.
fn spanning_tree(topo: &Topology, comp: &[usize]) -> (HashMap<usize, Word>, Vec<usize>) {
    let mut copy: HashMap<usize, Word> = HashMap::new();
    let mut tree_edges = BTreeSet::new();
    copy.insert(comp[0], Word::empty());
    let mut queue = std::collections::VecDeque::from([comp[0]]);
    while let Some(v) = queue.pop_front() {
        for &(e, at_u) in &topo.rotations[v] {
            let te = &topo.edges[e];
            let (w, word) = if at_u { (te.v, te.word.clone()) } else { (te.u, te.word.inverse()) };
            if !copy.contains_key(&w) {
                let cw = copy[&v].mul(&word);
                copy.insert(w, cw);
                tree_edges.insert(e);
                queue.push_back(w);
            }
        }
    }
    let mut cut: Vec<usize> = (0..topo.edges.len()).filter(|e| copy.contains_key(&topo.edges[*e].u) && !tree_edges.contains(e)).collect();
    cut.sort();
    (copy, cut)
}

/// Odometer step over the choice lists; false once exhausted.
fn advance(idx: &mut [usize], choices: &[Vec<(RegionId, usize)>]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < choices[k].len() {
            return true;
        }
        idx[k] = 0;
    }
    false
}

fn weight_of(inst: &Instance, edges: &BTreeSet<EdgeId>) -> Weight {
    edges.iter().map(|&e| inst.edge_weight(e)).sum()
}

/// Sorted edge ids of a set, the tie-break key.
fn names(inst: &Instance, edges: &BTreeSet<EdgeId>) -> Vec<String> {
    let mut v: Vec<String> = edges.iter().map(|&e| inst.surface.edges[e].name.clone()).collect();
    v.sort();
    v
}

/// Topologies per parallel batch.
const BATCH: usize = 8;

/// Outcome of one multiplier.
struct Round {
    best: Option<(Weight, Vec<String>, usize, Candidate)>,
    stats: Stats,
}

fn run_round(inst: &Instance, sys: &ArcSystem, cfg: &SolverConfig, kappa: usize) -> Result<Round> {
    let model = DiskModel::from_arcs(sys)?;
    let mut bounds = Bounds::new(kappa);
    bounds.limit = cfg.max_topologies;
    let topos = enumerate_candidate_topologies(&model, &bounds);
    let params = SkeletonParams::new(cfg.epsilon);
    let ctx = Ctx {
        sys,
        cfg,
        params,
        builder: SkeletonBuilder::new(sys, params),
        steiner: SteinerCache::new(sys, cfg.steiner_margin, cfg.terminal_cap),
        cycles: Mutex::new(HashMap::new()),
        g: inst.surface.euler_genus(),
        t: inst.spec.terminals.len(),
    };
    let mut stats = Stats::default();
    let mut distinct: BTreeMap<BTreeSet<EdgeId>, (usize, Candidate)> = BTreeMap::new();
    let mut trees = true;
    for (bi, batch) in topos.chunks(BATCH).enumerate() {
        if trees && stats.layouts >= cfg.layout_budget {
            info!("layout budget spent after {} of {} topologies; cycles only from here", bi * BATCH, topos.len());
            trees = false;
        }
        let per_topo: Vec<(Vec<(usize, Candidate)>, Stats)> =
            batch.par_iter().enumerate().map(|(i, topo)| ctx.candidates(topo, bi * BATCH + i, trees)).collect();
        for (cands, s) in per_topo {
            stats.add(&s);
            for (ti, o) in cands {
                distinct.entry(o.edges.clone()).or_insert((ti, o));
            }
        }
    }
    stats.candidates = distinct.len();
    stats.steiner_trees = ctx.steiner.solved();
    let valid: Vec<(Weight, Vec<String>, usize, Candidate)> = distinct
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|(_, o)| is_multicut_dual(inst, &o.edges))
        .map(|(ti, o)| (weight_of(inst, &o.edges), names(inst, &o.edges), ti, o))
        .collect();
    stats.valid = valid.len();
    let best = valid.into_iter().min_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    Ok(Round { best, stats })
}

fn certificate(inst: &Instance, sys: &ArcSystem, ti: usize, o: &Candidate) -> Certificate {
    let pieces = o
        .pieces
        .iter()
        .map(|p| CertificatePiece {
            kind: p.kind,
            words: p.words.iter().map(|w| w.to_string()).collect(),
            crossings: p.crossed(sys).into_iter().map(|e| inst.surface.edges[e].name.clone()).collect(),
        })
        .collect();
    Certificate { topology: ti, pieces }
}

/// Statistics of one multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundTrace {
    pub kappa: usize,
    pub stats: Stats,
    pub best: Option<Weight>,
}

/// Per-stage statistics of a run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub vertices: usize,
    pub edges: usize,
    pub genus: usize,
    pub orientable: bool,
    pub terminals: usize,
    pub pairs: usize,
    pub arcs: usize,
    pub regions: usize,
    pub rounds: Vec<RoundTrace>,
    pub solution: MulticutSolution,
}

/// Approximate minimum multicut, escalating the multiplier and falling back
/// to the exact oracle when no candidate is valid.
pub fn solve(inst: &Instance, cfg: &SolverConfig) -> Result<MulticutSolution> {
    solve_traced(inst, cfg, &mut Vec::new()).map(|(s, _)| s)
}

/// Runs the solver and reports every stage.
pub fn trace(inst: &Instance, cfg: &SolverConfig) -> Result<Trace> {
    let mut rounds = Vec::new();
    let (solution, sys) = solve_traced(inst, cfg, &mut rounds)?;
    Ok(Trace {
        vertices: inst.surface.num_vertices(),
        edges: inst.surface.num_edges(),
        genus: inst.surface.euler_genus(),
        orientable: inst.surface.orientable,
        terminals: inst.spec.terminals.len(),
        pairs: inst.pairs.len(),
        arcs: sys.as_ref().map_or(0, |s| s.num_arcs()),
        regions: sys.as_ref().map_or(0, |s| s.num_regions()),
        rounds,
        solution,
    })
}

fn solve_traced(inst: &Instance, cfg: &SolverConfig, rounds: &mut Vec<RoundTrace>) -> Result<(MulticutSolution, Option<ArcSystem>)> {
    cfg.check()?;
    let eps = format!("{}", cfg.epsilon);
    if is_multicut_dual(inst, &BTreeSet::new()) {
        let s = MulticutSolution {
            weight: Weight::ZERO,
            cut_edges: Vec::new(),
            epsilon: eps,
            kappa: 0,
            source: Source::Trivial,
            stats: Stats::default(),
            certificate: cfg.certificate.then(|| Certificate { topology: 0, pieces: Vec::new() }),
        };
        return Ok((s, None));
    }
    let sys = greedy_system_of_arcs(&inst.carved)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(cfg.jobs).build().map_err(|e| Error::Invalid(e.to_string()))?;
    let mut total = Stats::default();
    let mut kappa = cfg.kappa_init;
    while kappa <= cfg.kappa_cap {
        let round = pool.install(|| run_round(inst, &sys, cfg, kappa))?;
        total.add(&round.stats);
        rounds.push(RoundTrace { kappa, stats: round.stats, best: round.best.as_ref().map(|b| b.0) });
        if let Some((weight, cut_edges, ti, o)) = round.best {
            info!("solved at kappa {kappa} with weight {weight}");
            let certificate = cfg.certificate.then(|| certificate(inst, &sys, ti, &o));
            let s = MulticutSolution { weight, cut_edges, epsilon: eps, kappa, source: Source::Candidates, stats: total, certificate };
            return Ok((s, Some(sys)));
        }
        info!("no valid candidate at kappa {kappa}");
        kappa *= 2;
    }
    if inst.surface.num_edges() <= cfg.oracle_cap {
        info!("falling back to the exact oracle");
        let ex = exact_multicut(inst, cfg.oracle_cap)?;
        let s = MulticutSolution {
            weight: ex.weight,
            cut_edges: ex.cut_edges,
            epsilon: eps,
            kappa: kappa / 2,
            source: Source::Oracle,
            stats: total,
            certificate: None,
        };
        return Ok((s, Some(sys)));
    }
    Err(Error::NoCandidate(format!(
        "kappa cap {} reached after {} topologies and {} candidates",
        cfg.kappa_cap, total.topologies, total.candidates
    )))
}

/// Skeleta of the topologies at the initial multiplier, with their portals.
pub fn skeleta_report(inst: &Instance, cfg: &SolverConfig) -> Result<serde_json::Value> {
    cfg.check()?;
    let sys = greedy_system_of_arcs(&inst.carved)?;
    let model = DiskModel::from_arcs(&sys)?;
    let mut bounds = Bounds::new(cfg.kappa_init);
    bounds.limit = cfg.max_topologies;
    let topos = enumerate_candidate_topologies(&model, &bounds);
    let params = SkeletonParams::new(cfg.epsilon);
    let (skeleta, built) = SkeletonBuilder::new(&sys, params).build_all(&topos);
    let (g, t) = (inst.surface.euler_genus(), inst.spec.terminals.len());
    let list: Vec<serde_json::Value> = skeleta
        .iter()
        .map(|sk| {
            let mut v = sk.to_json(&sys);
            let portals = place_portals(&sys, sk, &params, g, t);
            v["portals"] = serde_json::to_value(&portals).expect("portals serialize");
            v
        })
        .collect();
    Ok(serde_json::json!({
        "epsilon": format!("{}", cfg.epsilon),
        "kappa": cfg.kappa_init,
        "arcs": sys.num_arcs(),
        "topologies": topos.len(),
        "built": built,
        "skeleta": list,
    }))
}

/// Parses a positive epsilon given as a decimal or a fraction.
pub fn epsilon_from_str(s: &str) -> Result<Ratio64> {
    let w: Weight = s.parse()?;
    if w.0 <= Ratio64::zero() || w.0 > Ratio64::one() * 1000 {
        return Err(Error::Invalid(format!("epsilon {s:?} out of range")));
    }
    Ok(w.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{random_planar_instance, validate_multicut, GenConfig};

    pub(crate) const PATH: &str = r#"{
        "vertices": ["a", "x", "b"],
        "edges": [{"id": "ax", "u": "a", "v": "x", "w": "3"}, {"id": "xb", "u": "x", "v": "b", "w": "1"}],
        "rotations": {"a": ["ax"], "x": ["ax", "xb"], "b": ["xb"]},
        "terminals": ["a", "b"],
        "pairs": [["a", "b"]]
    }"#;

    const STAR: &str = r#"{
        "vertices": ["c", "p", "q", "r"],
        "edges": [{"id": "cp", "u": "c", "v": "p", "w": "1"}, {"id": "cq", "u": "c", "v": "q", "w": "2"},
                  {"id": "cr", "u": "c", "v": "r", "w": "4"}],
        "rotations": {"c": ["cp", "cq", "cr"], "p": ["cp"], "q": ["cq"], "r": ["cr"]},
        "terminals": ["p", "q", "r"],
        "pairs": [["p", "q"], ["p", "r"], ["q", "r"]]
    }"#;

    fn ids(inst: &Instance, names: &[&str]) -> BTreeSet<EdgeId> {
        names.iter().map(|n| inst.surface.edge_by_name(n).unwrap()).collect()
    }

    /// Separation by enumerating every simple path between each pair.
    fn separated_by_paths(inst: &Instance, cut: &BTreeSet<EdgeId>) -> bool {
        let g = &inst.surface;
        fn dfs(g: &crate::surface::CombinatorialSurface, cut: &BTreeSet<EdgeId>, v: usize, t: usize, seen: &mut Vec<bool>) -> bool {
            if v == t {
                return true;
            }
            seen[v] = true;
            for (e, edge) in g.edges.iter().enumerate() {
                if cut.contains(&e) {
                    continue;
                }
                let w = if edge.u == v { edge.v } else if edge.v == v { edge.u } else { continue };
                if !seen[w] && dfs(g, cut, w, t, seen) {
                    return true;
                }
            }
            seen[v] = false;
            false
        }
        inst.pairs.iter().all(|&(a, b)| {
            let mut seen = vec![false; g.num_vertices()];
            !dfs(g, cut, inst.terminal_vertices[a], inst.terminal_vertices[b], &mut seen)
        })
    }

    #[test]
    fn multicut_dual_examples() {
        let inst = Instance::from_json(PATH).unwrap();
        assert!(is_multicut_dual(&inst, &ids(&inst, &["xb"])));
        assert!(!is_multicut_dual(&inst, &BTreeSet::new()));
    }

    #[test]
    fn multicut_dual_matches_path_enumeration() {
        let cfg = GenConfig { vertices: 6, max_edges: Some(12), ..GenConfig::default() };
        for seed in 0..20 {
            let inst = Instance::new(random_planar_instance(seed, &cfg).unwrap()).unwrap();
            let m = inst.num_graph_edges();
            for mask in (0u32..1 << m).step_by(7) {
                let cut: BTreeSet<EdgeId> = (0..m).filter(|e| mask >> e & 1 == 1).collect();
                assert_eq!(is_multicut_dual(&inst, &cut), separated_by_paths(&inst, &cut), "seed {seed} mask {mask}");
            }
        }
    }

    #[test]
    fn assembled_candidates_union_their_pieces() {
        let inst = Instance::from_json(STAR).unwrap();
        let sys = greedy_system_of_arcs(&inst.carved).unwrap();
        let cycles: Vec<DrawnPiece> = (0..sys.num_arcs())
            .map(|a| {
                let w = Word(vec![crate::word::Letter::new(a, true)]);
                let c = shortest_homotopic_cycle(&sys, &w).unwrap().project();
                DrawnPiece { kind: PieceKind::Cycle, steps: c.steps, words: vec![w] }
            })
            .collect();
        let one = assemble_candidate(&sys, &[], &cycles[..1]);
        assert_eq!(one.pieces, cycles[..1].to_vec());
        let both = assemble_candidate(&sys, &[], &cycles);
        let union: BTreeSet<EdgeId> = cycles.iter().flat_map(|c| c.crossed(&sys)).collect();
        assert_eq!(both.edges, union);
        assert_eq!(both.units, cycles.iter().map(|c| c.units(&sys)).sum::<i64>());
    }

    #[test]
    fn path_and_star() {
        let cfg = SolverConfig { certificate: true, ..SolverConfig::default() };
        let inst = Instance::from_json(PATH).unwrap();
        let s = solve(&inst, &cfg).unwrap();
        assert_eq!(s.weight, Weight::from_int(1));
        assert_eq!(s.cut_edges, vec!["xb".to_string()]);
        let inst = Instance::from_json(STAR).unwrap();
        let s = solve(&inst, &cfg).unwrap();
        assert_eq!(s.weight, exact_multicut(&inst, 22).unwrap().weight);
        assert_eq!(s.weight, Weight::from_int(3));
        assert_eq!(s.cut_edges, vec!["cp".to_string(), "cq".to_string()]);
    }

    #[test]
    fn already_separated_pairs_cost_nothing() {
        let text = PATH.replace(r#""pairs": [["a", "b"]]"#, r#""pairs": []"#);
        let inst = Instance::from_json(&text).unwrap();
        let s = solve(&inst, &SolverConfig::default()).unwrap();
        assert_eq!((s.weight, s.source), (Weight::ZERO, Source::Trivial));
    }

    #[test]
    fn certificates_reproduce_the_cut() {
        let cfg = SolverConfig { certificate: true, ..SolverConfig::default() };
        let gen = GenConfig { vertices: 6, max_edges: Some(12), ..GenConfig::default() };
        for seed in 0..3 {
            let inst = Instance::new(random_planar_instance(seed, &gen).unwrap()).unwrap();
            let s = solve(&inst, &cfg).unwrap();
            assert!(validate_multicut(&inst, &s.cut_edges).unwrap());
            if s.source == Source::Candidates {
                let cert = s.certificate.unwrap();
                assert_eq!(cert.crossed_edges(), s.cut_edges.iter().cloned().collect());
            }
        }
    }

    #[test]
    fn rejects_bad_config() {
        let inst = Instance::from_json(PATH).unwrap();
        let cfg = SolverConfig { epsilon: Ratio64::zero(), ..SolverConfig::default() };
        assert!(matches!(solve(&inst, &cfg), Err(Error::Invalid(_))));
        let cfg = SolverConfig { kappa_init: 4, kappa_cap: 2, ..SolverConfig::default() };
        assert!(matches!(solve(&inst, &cfg), Err(Error::Invalid(_))));
        assert_eq!(epsilon_from_str("0.5").unwrap(), Ratio64::new(1, 2));
        assert!(epsilon_from_str("0").is_err());
    }
}
