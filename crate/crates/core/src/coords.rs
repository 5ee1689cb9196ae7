//! Reporting coordinates for Novikov variables.
//!
//! Internally every class is written in the `Psi_k` basis. A fan document
//! may instead name walls whose curve classes form a Z-basis of `H_2`; the
//! monomial `q^d` is then reported as `prod q_i^{a_i}` with `d = sum a_i C_i`.
//! The change is unimodular and degree preserving, so truncation is
//! unaffected.

use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::fan::ToricContext;
use crate::linalg::integer_inverse;
use crate::series::{Exponent, Grading, QSeries, SubstitutionMap};

#[derive(Debug, Clone)]
pub struct CurveCoordinates {
    // columns: basis classes in Psi coordinates
    basis: Vec<Vec<i64>>,
    // rows: Psi -> display
    inverse: Vec<Vec<i64>>,
    grading: Arc<Grading>,
    walls: Option<Vec<Vec<usize>>>,
}

fn apply(m: &[Vec<i64>], e: &[i32]) -> Exponent {
    m.iter()
        .map(|row| row.iter().zip(e).map(|(a, &x)| a * x as i64).sum::<i64>() as i32)
        .collect()
}

impl CurveCoordinates {
    /// The `Psi_k` coordinates themselves.
    pub fn psi(ctx: &ToricContext) -> CurveCoordinates {
        let r = ctx.num_vars();
        let id: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
            .collect();
        CurveCoordinates {
            basis: id.clone(),
            inverse: id,
            grading: ctx.grading().clone(),
            walls: None,
        }
    }

    /// Coordinates from the fan's `curve_basis`, or `Psi` when absent.
    pub fn for_context(ctx: &ToricContext) -> Result<CurveCoordinates> {
        match ctx.fan().curve_basis() {
            None => Ok(CurveCoordinates::psi(ctx)),
            Some(walls) => CurveCoordinates::from_walls(ctx, walls),
        }
    }

    pub fn from_walls(ctx: &ToricContext, walls: &[Vec<usize>]) -> Result<CurveCoordinates> {
        let r = ctx.num_vars();
        if walls.len() != r {
            return Err(Error::Malformed(format!(
                "curve_basis has {} walls, need {r}",
                walls.len()
            )));
        }
        let mut classes = Vec::with_capacity(r);
        for w in walls {
            let wall = ctx.wall(w).ok_or_else(|| {
                Error::Malformed(format!("curve_basis entry {w:?} is not a wall"))
            })?;
            classes.push(wall.class.0.clone());
        }
        let basis: Vec<Vec<i64>> = (0..r)
            .map(|k| classes.iter().map(|c| c[k]).collect())
            .collect();
        let inverse = integer_inverse(&basis).ok_or_else(|| {
            Error::Malformed("curve_basis classes do not form a Z-basis of H_2".into())
        })?;
        // w' = M^T w keeps degrees: w' · a = w · (M a)
        let weights: Vec<BigRational> = classes
            .iter()
            .map(|c| ctx.degree(&crate::fan::CurveClass(c.clone())))
            .collect();
        Ok(CurveCoordinates {
            basis,
            inverse,
            grading: Arc::new(Grading::new(&weights)),
            walls: Some(walls.to_vec()),
        })
    }

    pub fn is_psi(&self) -> bool {
        self.walls.is_none()
    }

    pub fn walls(&self) -> Option<&[Vec<usize>]> {
        self.walls.as_deref()
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn to_display_exponent(&self, e: &[i32]) -> Exponent {
        apply(&self.inverse, e)
    }

    pub fn from_display_exponent(&self, a: &[i32]) -> Exponent {
        apply(&self.basis, a)
    }

    pub fn to_display(&self, f: &QSeries) -> QSeries {
        if self.is_psi() {
            return f.clone();
        }
        f.map_exponents(&self.grading, |e| self.to_display_exponent(e))
    }

    pub fn from_display(&self, f: &QSeries, psi_grading: &Arc<Grading>) -> QSeries {
        if self.is_psi() {
            return f.clone();
        }
        f.map_exponents(psi_grading, |a| self.from_display_exponent(a))
    }

    /// Unit factors of a substitution map in display coordinates: the image
    /// of the `i`-th display variable is `q_i` times the `i`-th entry.
    pub fn map_units(&self, s: &SubstitutionMap) -> Result<Vec<QSeries>> {
        if self.is_psi() {
            return Ok(s.units().to_vec());
        }
        let r = self.basis.len();
        (0..r)
            .map(|i| {
                let e: Exponent = self.basis.iter().map(|row| row[i] as i32).collect();
                Ok(self.to_display(&s.monomial_factor(&e)?))
            })
            .collect()
    }
}
