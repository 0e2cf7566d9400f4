//! Multicut instances and their JSON form.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{CombinatorialSurface, EdgeSpec, SurfaceSpec};
use crate::weight::Weight;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub vertices: Vec<String>,
    pub edges: Vec<EdgeSpec>,
    pub rotations: BTreeMap<String, Vec<String>>,
    pub terminals: Vec<String>,
    pub pairs: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl InstanceSpec {
    pub fn surface_spec(&self) -> SurfaceSpec {
        SurfaceSpec { vertices: self.vertices.clone(), edges: self.edges.clone(), rotations: self.rotations.clone() }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    /// Same instance with every weight multiplied by `factor`.
    pub fn scaled(&self, factor: i64) -> InstanceSpec {
        let mut out = self.clone();
        for e in &mut out.edges {
            e.w = e.w * factor;
        }
        out
    }
}

/// A validated instance: the embedded graph before and after carving.
#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub surface: CombinatorialSurface,
    pub carved: CombinatorialSurface,
    /// Terminal vertex of the uncarved surface, per terminal index.
    pub terminal_vertices: Vec<usize>,
    /// Pairs of terminal indices to be separated.
    pub pairs: Vec<(usize, usize)>,
}

impl Instance {
    pub fn new(spec: InstanceSpec) -> Result<Self> {
        let surface = CombinatorialSurface::build(&spec.surface_spec())?;
        let carved = surface.carve_terminals(&spec.terminals)?;
        let terminal_vertices: Vec<usize> =
            spec.terminals.iter().map(|t| surface.vertex_by_name(t).expect("carving checked terminals")).collect();
        let index = |name: &str| -> Result<usize> {
            spec.terminals
                .iter()
                .position(|t| t == name)
                .ok_or_else(|| Error::Invalid(format!("pair mentions {name:?}, which is not a terminal")))
        };
        let mut pairs = Vec::new();
        for [a, b] in &spec.pairs {
            let (i, j) = (index(a)?, index(b)?);
            if i == j {
                return Err(Error::Invalid(format!("pair ({a:?}, {b:?}) repeats a terminal")));
            }
            let p = (i.min(j), i.max(j));
            if !pairs.contains(&p) {
                pairs.push(p);
            }
        }
        pairs.sort();
        Ok(Instance { spec, surface, carved, terminal_vertices, pairs })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Self::new(InstanceSpec::from_json(text)?)
    }

    pub fn edge_weight(&self, e: usize) -> Weight {
        self.surface.edges[e].weight
    }

    /// Indices of edges of the uncarved graph with the given ids.
    pub fn edge_ids(&self, names: &[String]) -> Result<Vec<usize>> {
        names.iter().map(|n| self.surface.edge_by_name(n).ok_or_else(|| Error::UnknownEdge(n.clone()))).collect()
    }

    /// Carving keeps edge indices of the original graph, so an edge of the
    /// carved surface below this bound is the same edge of the input.
    pub fn num_graph_edges(&self) -> usize {
        self.surface.num_edges()
    }
}
