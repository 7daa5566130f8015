use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, Polytope};

use super::{Dissection, MixedCell};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub vertices: Vec<Point>,
    pub summands: Vec<Vec<Point>>,
    pub removed: Vec<usize>,
}

/// Serializable form of a [`Dissection`]; facet indices refer to the sorted
/// facet list that [`Polytope::hull`] rebuilds from the vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionJson {
    pub target: Vec<Point>,
    pub cells: Vec<CellJson>,
}

impl From<&Dissection> for DissectionJson {
    fn from(d: &Dissection) -> Self {
        DissectionJson {
            target: d.target.vertices().to_vec(),
            cells: d
                .cells
                .iter()
                .map(|c| CellJson {
                    vertices: c.cell.vertices().to_vec(),
                    summands: c.summands.iter().map(|s| s.vertices().to_vec()).collect(),
                    removed: c.removed.iter().copied().collect(),
                })
                .collect(),
        }
    }
}

impl DissectionJson {
    pub fn to_dissection(&self) -> Result<Dissection> {
        let target = Polytope::hull(&self.target)?;
        let cells = self
            .cells
            .iter()
            .map(|c| {
                let summands: Vec<Polytope> = c.summands.iter().map(|s| Polytope::hull(s)).collect::<Result<_>>()?;
                let mut cell = MixedCell::new(summands)?;
                if cell.cell.vertices() != c.vertices.as_slice() {
                    return Err(Error::Parse("cell vertices disagree with the sum of its summands".into()));
                }
                let removed: BTreeSet<usize> = c.removed.iter().copied().collect();
                cell.removed = crate::lattice::HalfOpenPolytope::new(cell.cell.clone(), removed)?.removed().clone();
                Ok(cell)
            })
            .collect::<Result<_>>()?;
        Ok(Dissection { target, cells })
    }
}
