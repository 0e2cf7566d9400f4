//! Curves drawn on a surface in general position with its graph, stored as
//! walks through the faces of the embedding.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{CombinatorialSurface, EdgeId, FaceId, Side};
use crate::weight::Weight;

/// Leaving `face` across `edge` through the side of `edge` that bounds `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Crossing {
    pub face: FaceId,
    pub edge: EdgeId,
    pub side: i8,
}

impl Crossing {
    pub fn side(&self) -> Side {
        Side { edge: self.edge, sign: self.side }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DrawnCurve {
    pub steps: Vec<Crossing>,
    pub closed: bool,
}

impl DrawnCurve {
    pub fn open(steps: Vec<Crossing>) -> Self {
        DrawnCurve { steps, closed: false }
    }

    pub fn closed(steps: Vec<Crossing>) -> Self {
        DrawnCurve { steps, closed: true }
    }

    /// Builds a curve from a start face and a sequence of crossed sides.
    pub fn from_sides(s: &CombinatorialSurface, sides: &[Side], closed: bool) -> Result<Self> {
        let steps = sides.iter().map(|&side| Crossing { face: s.face_of_side(side), edge: side.edge, side: side.sign }).collect();
        let c = DrawnCurve { steps, closed };
        c.validate(s)?;
        Ok(c)
    }

    /// Checks that consecutive steps are joined by face adjacency.
    pub fn validate(&self, s: &CombinatorialSurface) -> Result<()> {
        for (i, st) in self.steps.iter().enumerate() {
            if st.edge >= s.num_edges() || st.face >= s.num_faces() || (st.side != 1 && st.side != -1) {
                return Err(Error::BadCurve(i));
            }
            if s.edges[st.edge].is_boundary() || s.face_of_side(st.side()) != st.face {
                return Err(Error::BadCurve(i));
            }
            if i > 0 && self.landing(s, i - 1) != st.face {
                return Err(Error::BadCurve(i));
            }
        }
        if self.closed && !self.steps.is_empty() && self.landing(s, self.steps.len() - 1) != self.steps[0].face {
            return Err(Error::BadCurve(self.steps.len() - 1));
        }
        Ok(())
    }

    /// Face entered by step `i`.
    pub fn landing(&self, s: &CombinatorialSurface, i: usize) -> FaceId {
        s.face_of_side(self.steps[i].side().opposite())
    }

    pub fn start_face(&self) -> Option<FaceId> {
        self.steps.first().map(|c| c.face)
    }

    pub fn end_face(&self, s: &CombinatorialSurface) -> Option<FaceId> {
        (!self.steps.is_empty()).then(|| self.landing(s, self.steps.len() - 1))
    }

    pub fn reversed(&self, s: &CombinatorialSurface) -> DrawnCurve {
        let steps = (0..self.steps.len())
            .rev()
            .map(|i| {
                let st = self.steps[i];
                Crossing { face: self.landing(s, i), edge: st.edge, side: -st.side }
            })
            .collect();
        DrawnCurve { steps, closed: self.closed }
    }

    /// Concatenation of two open curves, the first ending where the second starts.
    pub fn concat(&self, s: &CombinatorialSurface, other: &DrawnCurve) -> Result<DrawnCurve> {
        if let (Some(end), Some(start)) = (self.end_face(s), other.start_face()) {
            if end != start {
                return Err(Error::BadCurve(self.steps.len()));
            }
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(DrawnCurve { steps, closed: false })
    }

    pub fn crossed_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.steps.iter().map(|c| c.edge)
    }

    /// Length in integer units of the surface scale.
    pub fn units(&self, s: &CombinatorialSurface) -> i64 {
        self.steps.iter().map(|c| s.units(c.edge)).sum()
    }
}

/// Total weight of the graph edges crossed by `c`, counted with multiplicity.
pub fn curve_length(s: &CombinatorialSurface, c: &DrawnCurve) -> Result<Weight> {
    for (i, st) in c.steps.iter().enumerate() {
        if st.edge >= s.num_edges() {
            return Err(Error::BadCurve(i));
        }
    }
    Ok(c.steps.iter().map(|st| s.edges[st.edge].weight).sum())
}
