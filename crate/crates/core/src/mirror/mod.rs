//! Hypergeometric series, mirror maps and open Gromov–Witten generating
//! functions of semi-Fano toric manifolds.

mod engine;
mod enumerate;

use serde::Serialize;

use crate::coords::CurveCoordinates;
use crate::series::{Exponent, QSeries, SeriesRecord};

pub use engine::MirrorEngine;
pub use enumerate::enumerate_classes;

/// An `H^2(X)`-valued series: one coefficient per toric divisor `D_l`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorSeries {
    coeffs: Vec<QSeries>,
}

impl DivisorSeries {
    pub fn new(coeffs: Vec<QSeries>) -> DivisorSeries {
        DivisorSeries { coeffs }
    }

    pub fn coeffs(&self) -> &[QSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, l: usize) -> &QSeries {
        &self.coeffs[l]
    }

    pub fn num_divisors(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(QSeries::is_zero)
    }

    /// Image in `H^2(X)` written in the basis dual to `Psi_k`:
    /// `sum_l c_l D_l -> (sum_l c_l P[l][k])_k`.
    pub fn project(&self, psi: &[Vec<i64>]) -> Vec<QSeries> {
        let r = psi.first().map_or(0, Vec::len);
        (0..r)
            .map(|k| {
                let mut acc = self.coeffs[0].scale(&crate::series::int(0));
                for (l, c) in self.coeffs.iter().enumerate() {
                    if psi[l][k] != 0 {
                        acc = &acc + &c.scale(&crate::series::int(psi[l][k]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map(&self, f: impl Fn(&QSeries) -> QSeries) -> DivisorSeries {
        DivisorSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// Which Hori–Vafa superpotential: the plain one or the one after the
/// coordinate change `z_p -> exp(g_p) z_p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoriVafaForm {
    Plain,
    Tilde,
}

/// One term `q^{q_monomial} · series · z^{z_exponent}` of a potential.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PotentialTerm {
    pub ray: usize,
    pub z_exponent: Vec<i64>,
    pub q_monomial: Exponent,
    pub series: QSeries,
}

impl PotentialTerm {
    /// The full coefficient of `z^{z_exponent}`.
    pub fn coefficient(&self) -> QSeries {
        self.series.shift(&self.q_monomial)
    }
}

/// Laurent polynomial in the torus variables with series coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Potential {
    pub terms: Vec<PotentialTerm>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PotentialRecord {
    pub z_exponent: Vec<i64>,
    pub coefficient: SeriesRecord,
}

impl Potential {
    pub fn term(&self, ray: usize) -> Option<&PotentialTerm> {
        self.terms.iter().find(|t| t.ray == ray)
    }

    pub fn to_records(&self, coords: &CurveCoordinates) -> Vec<PotentialRecord> {
        self.terms
            .iter()
            .map(|t| PotentialRecord {
                z_exponent: t.z_exponent.clone(),
                coefficient: coords.to_display(&t.coefficient()).to_record(),
            })
            .collect()
    }

    /// Text form such as `z1 + (1 + q1)·z2 + q1·z1^-1 z2^2`.
    pub fn render(&self, coords: &CurveCoordinates, prefix: &str) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| {
                let c = coords.to_display(&t.coefficient());
                let z: Vec<String> = t
                    .z_exponent
                    .iter()
                    .enumerate()
                    .filter(|(_, &x)| x != 0)
                    .map(|(i, &x)| match x {
                        1 => format!("z{}", i + 1),
                        _ => format!("z{}^{x}", i + 1),
                    })
                    .collect();
                let z = z.join(" ");
                let text = c.render(prefix);
                if c.len() == 1 && c.constant_term() == crate::series::int(1) {
                    z
                } else if c.len() == 1 && !text.starts_with('-') && !text.contains('·') {
                    format!("{text}·{z}")
                } else {
                    format!("({text})·{z}")
                }
            })
            .collect();
        parts.join(" + ")
    }
}
