//! Toric fan data: parsing, validation and the derived intersection theory.
//!
//! A [`Fan`] is the raw combinatorial input. [`ToricContext::new`] checks
//! smoothness and completeness, fixes a basis cone and computes the
//! `D_l · Psi_k` pairing matrix, the first Chern class and an ample grading.

mod context;
mod polytope;
mod seidel;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::gcd_i64;

pub use context::{CurveClass, DiscClass, SemiFano, ToricContext, WallClass};
pub use polytope::Facet;
pub use seidel::SeidelSign;

/// An element of the lattice `N = Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LatticeVector(pub Vec<i64>);

impl LatticeVector {
    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    /// True when the coordinates are coprime (the zero vector is not primitive).
    pub fn is_primitive(&self) -> bool {
        self.0.iter().fold(0, |g, &x| gcd_i64(g, x)) == 1
    }

    pub fn dot(&self, other: &[i64]) -> i64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<i64>> for LatticeVector {
    fn from(v: Vec<i64>) -> Self {
        LatticeVector(v)
    }
}

/// On-disk fan schema. Integers only; indices are 0-based.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanDocument {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis_cone: Option<usize>,
    /// Walls (as ray-index sets) whose curve classes give the reporting
    /// coordinates of Novikov variables. Must form a Z-basis of H_2.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve_basis: Option<Vec<Vec<usize>>>,
}

/// A simplicial fan given by primitive rays and maximal cones.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<LatticeVector>,
    max_cones: Vec<Vec<usize>>,
    labels: Option<Vec<String>>,
    basis_cone: Option<usize>,
    curve_basis: Option<Vec<Vec<usize>>>,
}

impl Fan {
    /// Builds a fan, checking the structural (schema-level) constraints.
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        Fan::from_document(FanDocument {
            dim,
            rays,
            max_cones,
            labels: None,
            basis_cone: None,
            curve_basis: None,
        })
    }

    pub fn from_document(doc: FanDocument) -> Result<Fan> {
        let FanDocument {
            dim,
            rays,
            max_cones,
            labels,
            basis_cone,
            curve_basis,
        } = doc;
        if dim == 0 {
            return Err(Error::Malformed("dim must be positive".into()));
        }
        if rays.is_empty() {
            return Err(Error::Malformed("no rays".into()));
        }
        let rays: Vec<LatticeVector> = rays.into_iter().map(LatticeVector).collect();
        for (i, r) in rays.iter().enumerate() {
            if r.dim() != dim {
                return Err(Error::Malformed(format!(
                    "ray {i} has {} coordinates, expected {dim}",
                    r.dim()
                )));
            }
            if !r.is_primitive() {
                return Err(Error::NonPrimitiveRay {
                    index: i,
                    coords: r.0.clone(),
                });
            }
            if let Some(j) = rays[..i].iter().position(|s| s == r) {
                return Err(Error::DuplicateRay {
                    first: j,
                    second: i,
                });
            }
        }
        for (c, cone) in max_cones.iter().enumerate() {
            if cone.len() != dim {
                return Err(Error::Malformed(format!(
                    "cone {c} has {} rays, expected {dim}",
                    cone.len()
                )));
            }
            for (pos, &i) in cone.iter().enumerate() {
                if i >= rays.len() {
                    return Err(Error::ConeIndexOutOfRange { cone: c, index: i });
                }
                if cone[..pos].contains(&i) {
                    return Err(Error::Malformed(format!("cone {c} repeats ray {i}")));
                }
            }
        }
        if let Some(labels) = &labels {
            if labels.len() != rays.len() {
                return Err(Error::Malformed(format!(
                    "{} labels for {} rays",
                    labels.len(),
                    rays.len()
                )));
            }
        }
        if let Some(b) = basis_cone {
            if b >= max_cones.len() {
                return Err(Error::BasisCone(b));
            }
        }
        if let Some(walls) = &curve_basis {
            for w in walls {
                if w.len() + 1 != dim || w.iter().any(|&i| i >= rays.len()) {
                    return Err(Error::Malformed(format!("bad curve_basis wall {w:?}")));
                }
            }
        }
        Ok(Fan {
            dim,
            rays,
            max_cones,
            labels,
            basis_cone,
            curve_basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_rays(&self) -> usize {
        self.rays.len()
    }

    pub fn rays(&self) -> &[LatticeVector] {
        &self.rays
    }

    pub fn ray(&self, l: usize) -> &LatticeVector {
        &self.rays[l]
    }

    pub fn max_cones(&self) -> &[Vec<usize>] {
        &self.max_cones
    }

    /// Label of ray `l`; defaults to its 1-based position.
    pub fn label(&self, l: usize) -> String {
        match &self.labels {
            Some(labels) => labels[l].clone(),
            None => format!("{}", l + 1),
        }
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn basis_cone(&self) -> Option<usize> {
        self.basis_cone
    }

    pub fn curve_basis(&self) -> Option<&[Vec<usize>]> {
        self.curve_basis.as_deref()
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Fan> {
        if labels.len() != self.rays.len() {
            return Err(Error::Malformed("label count mismatch".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn to_document(&self) -> FanDocument {
        FanDocument {
            dim: self.dim,
            rays: self.rays.iter().map(|r| r.0.clone()).collect(),
            max_cones: self.max_cones.clone(),
            labels: self.labels.clone(),
            basis_cone: self.basis_cone,
            curve_basis: self.curve_basis.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("fan documents always serialize")
    }
}

/// Parses a fan document (JSON). Floating point numbers are rejected.
pub fn parse_fan(document: &str) -> Result<Fan> {
    let doc: FanDocument =
        serde_json::from_str(document).map_err(|e| Error::Malformed(e.to_string()))?;
    Fan::from_document(doc)
}
