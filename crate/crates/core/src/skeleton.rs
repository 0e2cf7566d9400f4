//! Skeleta: short curves near every family cycle of a candidate topology,
//! one set per choice of length ranges, and portals placed along them.

use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use log::debug;
use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arcs::{ArcSystem, RegionId, Walk};
use crate::cover::{
    annular_region, seam_nodes, shortest_cycle_through_face, shortest_homotopic_cycle, shortest_noncontractible_annulus,
    shortest_path_in_region, CoverKind, CoverRegion, Node, RegionWalk,
};
use crate::error::{Error, Result};
use crate::exhaustive::{exhaustive_family, incident_on_both_sides};
use crate::topologies::Topology;
use crate::word::Word;

pub type Ratio64 = Ratio<i64>;

/// Constants of the skeleton and portal construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkeletonParams {
    pub epsilon: Ratio64,
    pub c_range: Ratio64,
    pub c_portal: Ratio64,
}

impl SkeletonParams {
    pub fn new(epsilon: Ratio64) -> Self {
        SkeletonParams { epsilon, c_range: Ratio64::one(), c_portal: Ratio64::one() }
    }

    /// Number of length ranges per two-sided cycle: `l + 1` for the least
    /// `l` with `(1 + eps)^(l + 1) >= c_range (g + t) / eps`.
    pub fn range_count(&self, complexity: usize) -> usize {
        let base = Ratio::<i128>::new(*self.epsilon.numer() as i128, *self.epsilon.denom() as i128) + Ratio::<i128>::one();
        let target = Ratio::<i128>::new(*self.c_range.numer() as i128 * complexity as i128, *self.c_range.denom() as i128)
            / Ratio::<i128>::new(*self.epsilon.numer() as i128, *self.epsilon.denom() as i128);
        let mut pow = base;
        let mut k = 1;
        while pow < target {
            pow *= base;
            k += 1;
        }
        k
    }

    /// Whether `units < (1 + eps)^(r + 1) * base`.
    fn below_range_top(&self, units: i64, base: i64, r: usize) -> bool {
        let (p, q) = (*self.epsilon.numer() as i128 + *self.epsilon.denom() as i128, *self.epsilon.denom() as i128);
        let (mut lhs, mut rhs) = (units as i128, base as i128);
        for _ in 0..=r {
            lhs = lhs.saturating_mul(q);
            rhs = rhs.saturating_mul(p);
        }
        lhs < rhs
    }
}

/// Length range per two-sided family cycle, in family order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RangeChoice(pub Vec<usize>);

/// All range choices for `cycles` two-sided cycles with `count` ranges each.
pub fn range_choices(cycles: usize, count: usize) -> Vec<RangeChoice> {
    let mut out = vec![Vec::new()];
    for _ in 0..cycles {
        out = out.into_iter().flat_map(|v: Vec<usize>| (0..count).map(move |r| [v.clone(), vec![r]].concat())).collect();
    }
    out.into_iter().map(RangeChoice).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveRole {
    /// A shortest one-sided cycle.
    OneSided,
    /// Leftmost short cycle along the transversal.
    First,
    /// Rightmost short cycle along the transversal.
    Last,
    /// Shortest path between the two.
    Connector,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkeletonCurve {
    pub role: CurveRole,
    /// Index of the family cycle the curve belongs to.
    pub cycle: usize,
    pub walk: Walk,
    pub units: i64,
    pub word: Word,
}

#[derive(Clone, Debug)]
pub struct Skeleton {
    pub curves: Vec<SkeletonCurve>,
    pub units: i64,
    pub topology: usize,
    pub ranges: RangeChoice,
    /// Family cycles left out because they are contractible.
    pub skipped: Vec<usize>,
}

impl Skeleton {
    fn key(&self) -> Vec<(bool, RegionId, Vec<crate::arcs::Step>)> {
        let mut k: Vec<_> = self.curves.iter().map(|c| (c.walk.closed, c.walk.start, c.walk.steps.clone())).collect();
        k.sort();
        k.dedup();
        k
    }

    pub fn to_json(&self, sys: &ArcSystem) -> serde_json::Value {
        let s = &sys.surface;
        let curves: Vec<serde_json::Value> = self
            .curves
            .iter()
            .map(|c| {
                let drawn = sys.project(&c.walk);
                let crossed: Vec<&str> = drawn.steps.iter().map(|st| s.edges[st.edge].name.as_str()).collect();
                serde_json::json!({
                    "role": c.role,
                    "cycle": c.cycle,
                    "closed": c.walk.closed,
                    "length": s.scale.weight(c.units),
                    "word": c.word.to_string(),
                    "crossings": crossed,
                })
            })
            .collect();
        serde_json::json!({
            "topology": self.topology,
            "ranges": self.ranges.0,
            "length": s.scale.weight(self.units),
            "skipped_contractible": self.skipped,
            "curves": curves,
        })
    }
}

/// Per free homotopy class: the annular region, its shortest cycle and the
/// shortest cycles through each face along the seam.
struct CycleData {
    region: CoverRegion,
    shortest: RegionWalk,
    through: Vec<RegionWalk>,
}

/// Builds skeleta, caching the per-class cover computations.
pub struct SkeletonBuilder<'a> {
    sys: &'a ArcSystem,
    params: SkeletonParams,
    cache: Mutex<HashMap<Word, Option<Arc<CycleData>>>>,
}

impl<'a> SkeletonBuilder<'a> {
    pub fn new(sys: &'a ArcSystem, params: SkeletonParams) -> Self {
        SkeletonBuilder { sys, params, cache: Mutex::new(HashMap::new()) }
    }

    pub fn params(&self) -> SkeletonParams {
        self.params
    }

    fn cycle_data(&self, w: &Word) -> Option<Arc<CycleData>> {
        let key = w.conjugacy_key();
        if let Some(d) = self.cache.lock().expect("cache lock").get(&key) {
            return d.clone();
        }
        let sys = self.sys;
        let d = annular_region(sys, &key).ok().filter(|r| r.kind == CoverKind::Annulus).and_then(|region| {
            let shortest = shortest_noncontractible_annulus(sys, &region).ok()?;
            // faces along the seam, in order along its arc
            let through = seam_nodes_in_order(sys, &region)
                .into_iter()
                .map(|n| shortest_cycle_through_face(sys, &region, n))
                .collect::<Result<Vec<_>>>()
                .ok()?;
            Some(Arc::new(CycleData { region, shortest, through }))
        });
        self.cache.lock().expect("cache lock").insert(key, d.clone());
        d
    }

    /// Number of two-sided, non-contractible cycles in the family.
    pub fn ranged_cycles(&self, topo: &Topology) -> usize {
        exhaustive_family(topo).iter().filter(|c| !c.is_one_sided() && !c.word.cyclically_reduced().is_empty()).count()
    }

    pub fn build_one(&self, topo: &Topology, topo_id: usize, rc: &RangeChoice) -> Result<Skeleton> {
        let sys = self.sys;
        let fam = exhaustive_family(topo);
        let mut curves = Vec::new();
        let mut skipped = Vec::new();
        let mut ranged = 0;
        for (ci, c) in fam.iter().enumerate() {
            if c.word.cyclically_reduced().is_empty() {
                debug!("skipping contractible family cycle {ci} of topology {topo_id}");
                skipped.push(ci);
                continue;
            }
            if c.is_one_sided() {
                let g = shortest_homotopic_cycle(sys, &c.word)?;
                curves.push(curve(sys, CurveRole::OneSided, ci, g.project()));
                continue;
            }
            let r = *rc.0.get(ranged).ok_or_else(|| Error::Invalid("range choice too short".into()))?;
            ranged += 1;
            let d = self.cycle_data(&c.word).ok_or(Error::Unreachable)?;
            if d.through.is_empty() {
                return Err(Error::Invalid("no faces along the transversal".into()));
            }
            let base = d.shortest.cost.units;
            let ok = |w: &RegionWalk| w.cost.units == base || self.params.below_range_top(w.cost.units, base, r);
            let first = d.through.iter().position(ok).expect("the shortest cycle is eligible");
            let last = d.through.iter().rposition(ok).expect("the shortest cycle is eligible");
            let (g1, g2) = (&d.through[first], &d.through[last]);
            curves.push(curve(sys, CurveRole::First, ci, g1.project()));
            if g2 != g1 {
                curves.push(curve(sys, CurveRole::Last, ci, g2.project()));
            }
            if incident_on_both_sides(topo, c) {
                let from = g1.nodes(sys, &d.region);
                let to: BTreeSet<Node> = g2.nodes(sys, &d.region).into_iter().collect();
                let p = shortest_path_in_region(sys, &d.region, &from, &|n| to.contains(&n))?;
                if !p.steps.is_empty() {
                    curves.push(curve(sys, CurveRole::Connector, ci, p.project()));
                }
            }
        }
        let units = curves.iter().map(|c| c.units).sum();
        Ok(Skeleton { curves, units, topology: topo_id, ranges: rc.clone(), skipped })
    }

    /// Skeleta of all topologies and range choices, identical ones merged.
    /// Returns them with the number built before merging.
    pub fn build_all(&self, topos: &[Topology]) -> (Vec<Skeleton>, usize) {
        let count = self.params.range_count(self.sys.surface.euler_genus() + self.sys.surface.num_boundaries());
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let mut built = 0;
        for (ti, t) in topos.iter().enumerate() {
            for rc in range_choices(self.ranged_cycles(t), count) {
                built += 1;
                match self.build_one(t, ti, &rc) {
                    Ok(sk) => {
                        if seen.insert(sk.key()) {
                            out.push(sk);
                        }
                    }
                    Err(e) => debug!("skeleton for topology {ti} failed: {e}"),
                }
            }
        }
        (out, built)
    }
}

fn curve(sys: &ArcSystem, role: CurveRole, cycle: usize, walk: Walk) -> SkeletonCurve {
    let units = sys.walk_units(&walk);
    let word = sys.walk_word(&walk).reduced();
    SkeletonCurve { role, cycle, walk, units, word }
}

/// Seam nodes ordered along the seam's arc.
fn seam_nodes_in_order(sys: &ArcSystem, r: &CoverRegion) -> Vec<Node> {
    let last = *r.word.letters().last().expect("annular region");
    let mut out: Vec<Node> = Vec::new();
    for &l in &sys.arc_links[last.arc()] {
        let link = &sys.links[l];
        let region = if last.is_forward() { link.b } else { link.a };
        let n = Node { copy: 0, region };
        if !out.contains(&n) {
            out.push(n);
        }
    }
    debug_assert_eq!(out.iter().copied().collect::<BTreeSet<_>>(), seam_nodes(sys, r).into_iter().collect());
    out
}

/// A point on a skeleton curve: the region reached after `index` steps.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Portal {
    pub curve: usize,
    pub index: usize,
    pub region: RegionId,
    /// Distance from the start of the curve, in weight units.
    pub position: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PortalSet {
    /// Spacing in weight units.
    pub spacing: f64,
    pub portals: Vec<Portal>,
}

impl PortalSet {
    /// Distinct regions holding portals, in first-seen order.
    pub fn regions(&self) -> Vec<RegionId> {
        let mut seen = BTreeSet::new();
        self.portals.iter().filter(|p| seen.insert(p.region)).map(|p| p.region).collect()
    }
}

/// Places `ceil(|e| / 2s)` evenly spaced portals on every curve, with
/// spacing `s = c_portal * eps * |sk| / (g + t)^2`; zero-length curves get
/// their endpoints.
pub fn place_portals(sys: &ArcSystem, sk: &Skeleton, params: &SkeletonParams, g: usize, t: usize) -> PortalSet {
    let gt2 = ((g + t) * (g + t)) as i64;
    let spacing = params.c_portal * params.epsilon * Ratio64::from_integer(sk.units) / Ratio64::from_integer(gt2);
    let mut portals = Vec::new();
    for (ci, c) in sk.curves.iter().enumerate() {
        let regions: Vec<RegionId> = {
            let mut v = vec![c.walk.start];
            v.extend(c.walk.steps.iter().map(|st| sys.across(*st)));
            v
        };
        let mut prefix = vec![0i64];
        for st in &c.walk.steps {
            prefix.push(prefix.last().unwrap() + sys.links[st.link].units);
        }
        if c.units == 0 || spacing.is_zero() {
            portals.push(Portal { curve: ci, index: 0, region: regions[0], position: 0.0 });
            if !c.walk.closed && regions.len() > 1 {
                let last = regions.len() - 1;
                portals.push(Portal { curve: ci, index: last, region: regions[last], position: c.units as f64 });
            }
            continue;
        }
        let len = Ratio64::from_integer(c.units);
        let count = (len / (spacing * 2)).ceil().to_integer().max(1);
        for i in 0..count {
            // position (2i + 1) |e| / (2 count); node of the last prefix at or before it
            let pos = Ratio64::new((2 * i + 1) * c.units, 2 * count);
            let index = prefix.iter().rposition(|&p| Ratio64::from_integer(p) <= pos).unwrap_or(0);
            portals.push(Portal { curve: ci, index, region: regions[index], position: pos.to_f64().unwrap_or(0.0) });
        }
    }
    PortalSet { spacing: spacing.to_f64().unwrap_or(0.0), portals }
}
