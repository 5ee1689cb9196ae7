//! Faces of the fan polytope `conv{v_1, .., v_m}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ToricContext;
use crate::error::{Error, Result};
use crate::linalg::{nullspace, primitive_integer};
use crate::lp::{self, Constraint, Outcome, Relation};

/// A facet `{x : <normal, x> = offset}` of the fan polytope, with
/// `<normal, v> <= offset` for every ray and `offset > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: BigInt,
    /// Rays lying on the facet, sorted.
    pub rays: Vec<usize>,
}

fn big(x: i64) -> BigRational {
    BigRational::from_integer(x.into())
}

fn subsets(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, m, k, &mut Vec::new(), &mut out);
    out
}

impl ToricContext {
    fn require_small_dim(&self) -> Result<()> {
        if self.dim() > 3 {
            Err(Error::UnsupportedDimension(self.dim()))
        } else {
            Ok(())
        }
    }

    /// All facets of the fan polytope, found by scanning `n`-subsets of rays.
    pub fn facets(&self) -> Result<Vec<Facet>> {
        self.require_small_dim()?;
        let n = self.dim();
        let m = self.num_rays();
        let mut out: Vec<Facet> = Vec::new();
        for subset in subsets(m, n) {
            let rows: Vec<Vec<BigRational>> = subset
                .iter()
                .map(|&i| {
                    let mut row: Vec<BigRational> =
                        self.fan().ray(i).coords().iter().map(|&x| big(x)).collect();
                    row.push(big(-1));
                    row
                })
                .collect();
            let kernel = nullspace(&rows, n + 1);
            if kernel.len() != 1 {
                continue;
            }
            let mut v = primitive_integer(&kernel[0]);
            if v[n].is_zero() {
                continue;
            }
            if v[n].is_negative() {
                v.iter_mut().for_each(|x| *x = -x.clone());
            }
            let (normal, offset) = (v[..n].to_vec(), v[n].clone());
            let value = |l: usize| -> BigInt {
                normal
                    .iter()
                    .zip(self.fan().ray(l).coords())
                    .map(|(a, &x)| a * BigInt::from(x))
                    .sum()
            };
            if (0..m).any(|l| value(l) > offset) {
                continue;
            }
            if out.iter().any(|f| f.normal == normal && f.offset == offset) {
                continue;
            }
            let rays = (0..m).filter(|&l| value(l) == offset).collect();
            out.push(Facet {
                normal,
                offset,
                rays,
            });
        }
        Ok(out)
    }

    /// True iff `v_l` is not a convex combination of the other rays.
    pub fn is_vertex(&self, l: usize) -> Result<bool> {
        self.check_ray(l)?;
        let n = self.dim();
        let others: Vec<usize> = (0..self.num_rays()).filter(|&i| i != l).collect();
        let mut constraints: Vec<Constraint> = (0..n)
            .map(|i| Constraint {
                coeffs: others
                    .iter()
                    .map(|&j| big(self.fan().ray(j).coords()[i]))
                    .collect(),
                relation: Relation::Eq,
                rhs: big(self.fan().ray(l).coords()[i]),
            })
            .collect();
        constraints.push(Constraint {
            coeffs: vec![BigRational::one(); others.len()],
            relation: Relation::Eq,
            rhs: BigRational::one(),
        });
        let objective = vec![BigRational::zero(); others.len()];
        Ok(matches!(
            lp::maximize(others.len(), &constraints, &objective, false),
            Outcome::Infeasible
        ))
    }

    /// Rays on the smallest face of the fan polytope containing `v_l`.
    pub fn minimal_face(&self, l: usize) -> Result<Vec<usize>> {
        self.check_ray(l)?;
        let mut face: BTreeSet<usize> = (0..self.num_rays()).collect();
        for f in self.facets()? {
            if f.rays.contains(&l) {
                face.retain(|r| f.rays.contains(r));
            }
        }
        Ok(face.into_iter().collect())
    }
}
