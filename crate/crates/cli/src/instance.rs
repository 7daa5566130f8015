use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use mixval::geometry::LatticeTag;
use mixval::{Error, Point, Polytope, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeEntry {
    pub name: String,
    pub vertices: Vec<Point>,
}

/// Input file: named vertex lists in `Z^dim` or `Q^dim`, with optional
/// containment pairs `(P_i, Q_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub lattice: LatticeTag,
    pub dim: usize,
    pub polytopes: Vec<PolytopeEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairs: Option<Vec<(String, String)>>,
}

impl Instance {
    /// Reads and validates an instance, returning it with the SHA-256 of the
    /// file bytes.
    pub fn load(path: &Path) -> Result<(Instance, String)> {
        let bytes = std::fs::read(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        let inst = Self::parse(&bytes)?;
        Ok((inst, crate::report::digest(&bytes)))
    }

    pub fn parse(bytes: &[u8]) -> Result<Instance> {
        let inst: Instance = serde_json::from_slice(bytes).map_err(|e| Error::Parse(e.to_string()))?;
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parse("dim must be positive".into()));
        }
        let mut names = BTreeSet::new();
        for p in &self.polytopes {
            if !names.insert(p.name.as_str()) {
                return Err(Error::Parse(format!("duplicate polytope name '{}'", p.name)));
            }
            if p.vertices.is_empty() {
                return Err(Error::Parse(format!("polytope '{}' has no vertices", p.name)));
            }
            for v in &p.vertices {
                if v.dim() != self.dim {
                    return Err(Error::Parse(format!("vertex {v} of '{}' has arity {} but dim = {}", p.name, v.dim(), self.dim)));
                }
                if self.lattice == LatticeTag::Integer && !v.is_integral() {
                    return Err(Error::Parse(format!("vertex {v} of '{}' is not integral but lattice is Z", p.name)));
                }
            }
        }
        for (a, b) in self.pairs.iter().flatten() {
            for n in [a, b] {
                if !names.contains(n.as_str()) {
                    return Err(Error::Parse(format!("pair refers to unknown polytope '{n}'")));
                }
            }
        }
        Ok(())
    }

    fn by_name(&self, name: &str) -> Result<Polytope> {
        let entry = self.polytopes.iter().find(|p| p.name == name).expect("validated name");
        Polytope::hull(&entry.vertices).map_err(|e| Error::Parse(format!("'{name}': {e}")))
    }

    pub fn polytopes(&self) -> Result<Vec<Polytope>> {
        self.polytopes.iter().map(|p| self.by_name(&p.name)).collect()
    }

    /// The tuples `(P_1..P_r)` and `(Q_1..Q_r)` from the pairs, if given.
    pub fn pair_tuples(&self) -> Result<Option<(Vec<Polytope>, Vec<Polytope>)>> {
        let Some(pairs) = &self.pairs else { return Ok(None) };
        let inner = pairs.iter().map(|(a, _)| self.by_name(a)).collect::<Result<_>>()?;
        let outer = pairs.iter().map(|(_, b)| self.by_name(b)).collect::<Result<_>>()?;
        Ok(Some((inner, outer)))
    }
}
