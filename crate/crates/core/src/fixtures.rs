//! Hand-built embedded graphs of positive genus: square grids whose
//! opposite sides are glued straight or with a twist.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::InstanceSpec;
use crate::surface::{EdgeSpec, SurfaceSpec};
use crate::weight::Weight;

/// How the sides of the grid are glued.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// Both pairs straight.
    Torus,
    /// Top and bottom glued with a twist.
    Klein,
    /// Both pairs twisted.
    Projective,
}

impl GridKind {
    pub fn euler_genus(self) -> usize {
        match self {
            GridKind::Torus | GridKind::Klein => 2,
            GridKind::Projective => 1,
        }
    }
}

fn name(i: usize, j: usize) -> String {
    format!("g{i}_{j}")
}

/// Grid with `rows x cols` vertices. Vertex `(i, j)` has a horizontal edge
/// `h{i}_{j}` to its east neighbour and a vertical edge `v{i}_{j}` to its
/// south neighbour; rotations list east, south, west, north. Twisted
/// gluings mirror the far side and flip the edge sign.
pub fn wrapped_grid(rows: usize, cols: usize, kind: GridKind, mut weight: impl FnMut(&str) -> i64) -> Result<SurfaceSpec> {
    if rows < 2 || cols < 2 {
        return Err(Error::Invalid("a wrapped grid needs at least 2 rows and 2 columns".into()));
    }
    let twist_cols = kind == GridKind::Projective;
    let twist_rows = kind != GridKind::Torus;
    let mut edges = Vec::new();
    let mut rot: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut west: BTreeMap<String, String> = BTreeMap::new();
    let mut north: BTreeMap<String, String> = BTreeMap::new();
    for i in 0..rows {
        for j in 0..cols {
            let (ei, ej, hs) = if j + 1 < cols {
                (i, j + 1, 1)
            } else if twist_cols {
                (rows - 1 - i, 0, -1)
            } else {
                (i, 0, 1)
            };
            let h = format!("h{i}_{j}");
            edges.push(EdgeSpec { id: h.clone(), u: name(i, j), v: name(ei, ej), w: Weight::from_int(weight(&h)), sign: hs });
            west.insert(name(ei, ej), h);
            let (si, sj, vs) = if i + 1 < rows {
                (i + 1, j, 1)
            } else if twist_rows {
                (0, cols - 1 - j, -1)
            } else {
                (0, j, 1)
            };
            let v = format!("v{i}_{j}");
            edges.push(EdgeSpec { id: v.clone(), u: name(i, j), v: name(si, sj), w: Weight::from_int(weight(&v)), sign: vs });
            north.insert(name(si, sj), v);
        }
    }
    for i in 0..rows {
        for j in 0..cols {
            let n = name(i, j);
            rot.insert(n.clone(), vec![format!("h{i}_{j}"), format!("v{i}_{j}"), west[&n].clone(), north[&n].clone()]);
        }
    }
    let vertices = (0..rows).flat_map(|i| (0..cols).map(move |j| name(i, j))).collect();
    Ok(SurfaceSpec { vertices, edges, rotations: rot })
}

/// Random-weight grid instance with `terminals` random terminals and each
/// terminal pair kept with probability `pair_density` (at least one pair).
pub fn grid_instance(seed: u64, rows: usize, cols: usize, kind: GridKind, terminals: usize, pair_density: f64, max_weight: i64) -> Result<InstanceSpec> {
    if terminals < 2 || terminals > rows * cols {
        return Err(Error::Invalid("need between 2 and rows*cols terminals".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = wrapped_grid(rows, cols, kind, |_| rng.gen_range(1..=max_weight))?;
    let mut names = spec.vertices.clone();
    names.shuffle(&mut rng);
    let mut terms: Vec<String> = names.into_iter().take(terminals).collect();
    terms.sort();
    let mut pairs = Vec::new();
    for a in 0..terms.len() {
        for b in a + 1..terms.len() {
            if rng.gen_bool(pair_density) {
                pairs.push([terms[a].clone(), terms[b].clone()]);
            }
        }
    }
    if pairs.is_empty() {
        pairs.push([terms[0].clone(), terms[1].clone()]);
    }
    Ok(InstanceSpec {
        vertices: spec.vertices,
        edges: spec.edges,
        rotations: spec.rotations,
        terminals: terms,
        pairs,
        seed: Some(seed),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Instance;
    use crate::surface::CombinatorialSurface;

    #[test]
    fn grids_have_expected_genus() {
        for kind in [GridKind::Torus, GridKind::Klein, GridKind::Projective] {
            for (r, c) in [(2, 2), (3, 3), (2, 4), (3, 4)] {
                let s = CombinatorialSurface::build(&wrapped_grid(r, c, kind, |_| 1).unwrap()).unwrap();
                assert_eq!(s.euler_genus(), kind.euler_genus(), "{kind:?} {r}x{c}");
                assert_eq!(s.orientable, kind == GridKind::Torus);
            }
        }
    }

    #[test]
    fn grid_instances_are_deterministic() {
        let a = grid_instance(3, 3, 3, GridKind::Projective, 3, 0.7, 9).unwrap();
        let b = grid_instance(3, 3, 3, GridKind::Projective, 3, 0.7, 9).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        Instance::new(a).unwrap();
    }
}
