//! Exact two-phase simplex over the rationals (Bland's rule).
//!
//! Used for the handful of small feasibility and optimisation problems the
//! fan machinery needs: ample weights and fan-polytope vertex tests.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Relation {
    #[allow(dead_code)]
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub(crate) struct Constraint {
    pub coeffs: Vec<BigRational>,
    pub relation: Relation,
    pub rhs: BigRational,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Optimal {
        value: BigRational,
        point: Vec<BigRational>,
    },
    Infeasible,
    Unbounded,
}

/// Maximizes `objective · x` subject to `constraints`.
///
/// With `free = true` the variables are unrestricted in sign, otherwise `x >= 0`.
pub(crate) fn maximize(
    num_vars: usize,
    constraints: &[Constraint],
    objective: &[BigRational],
    free: bool,
) -> Outcome {
    // Column layout: structural (doubled when free), one slack per inequality,
    // one artificial per row.
    let structural = if free { 2 * num_vars } else { num_vars };
    let slacks = constraints
        .iter()
        .filter(|c| c.relation != Relation::Eq)
        .count();
    let rows = constraints.len();
    let art0 = structural + slacks;
    let width = art0 + rows;

    let mut tab = Tableau {
        a: Vec::with_capacity(rows),
        basis: Vec::with_capacity(rows),
    };
    let mut slack_col = structural;
    for (i, c) in constraints.iter().enumerate() {
        let mut row = vec![BigRational::zero(); width + 1];
        for (j, x) in c.coeffs.iter().enumerate() {
            row[j] = x.clone();
            if free {
                row[num_vars + j] = -x.clone();
            }
        }
        match c.relation {
            Relation::Le => {
                row[slack_col] = BigRational::one();
                slack_col += 1;
            }
            Relation::Ge => {
                row[slack_col] = -BigRational::one();
                slack_col += 1;
            }
            Relation::Eq => {}
        }
        row[width] = c.rhs.clone();
        if c.rhs.is_negative() {
            for x in row.iter_mut() {
                *x = -x.clone();
            }
        }
        row[art0 + i] = BigRational::one();
        tab.a.push(row);
        tab.basis.push(art0 + i);
    }

    // Phase 1: drive the artificials to zero.
    let mut cost = vec![BigRational::zero(); width];
    for c in cost.iter_mut().skip(art0) {
        *c = -BigRational::one();
    }
    if tab.optimize(&cost, width).is_err() {
        unreachable!("phase one objective is bounded");
    }
    if tab.value(&cost).is_negative() {
        return Outcome::Infeasible;
    }
    // Pivot remaining (zero-level) artificials out of the basis, dropping
    // redundant rows.
    let mut r = 0;
    while r < tab.a.len() {
        if tab.basis[r] >= art0 {
            match (0..art0).find(|&c| !tab.a[r][c].is_zero()) {
                Some(c) => {
                    tab.pivot(r, c);
                    r += 1;
                }
                None => {
                    tab.a.remove(r);
                    tab.basis.remove(r);
                }
            }
        } else {
            r += 1;
        }
    }

    // Phase 2 on the structural and slack columns only.
    let mut cost = vec![BigRational::zero(); width];
    for (j, x) in objective.iter().enumerate() {
        cost[j] = x.clone();
        if free {
            cost[num_vars + j] = -x.clone();
        }
    }
    if tab.optimize(&cost, art0).is_err() {
        return Outcome::Unbounded;
    }
    let mut full = vec![BigRational::zero(); width];
    for (r, &b) in tab.basis.iter().enumerate() {
        full[b] = tab.a[r][width].clone();
    }
    let point: Vec<BigRational> = (0..num_vars)
        .map(|j| {
            if free {
                &full[j] - &full[num_vars + j]
            } else {
                full[j].clone()
            }
        })
        .collect();
    let value = objective
        .iter()
        .zip(&point)
        .fold(BigRational::zero(), |acc, (c, x)| acc + c * x);
    Outcome::Optimal { value, point }
}

struct Tableau {
    a: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
}

struct Unbounded;

impl Tableau {
    fn rhs_col(&self) -> usize {
        self.a[0].len() - 1
    }

    fn value(&self, cost: &[BigRational]) -> BigRational {
        if self.a.is_empty() {
            return BigRational::zero();
        }
        let rhs = self.rhs_col();
        self.basis
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (r, &b)| {
                acc + &cost[b] * &self.a[r][rhs]
            })
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.a[r][c].recip();
        for x in self.a[r].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = self.a[r].clone();
        for (i, row) in self.a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &f * p;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Maximizes `cost` over columns `< allowed`.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> Result<(), Unbounded> {
        if self.a.is_empty() {
            return Ok(());
        }
        let rhs = self.rhs_col();
        loop {
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let reduced = self
                    .basis
                    .iter()
                    .enumerate()
                    .fold(cost[j].clone(), |acc, (r, &b)| {
                        acc - &cost[b] * &self.a[r][j]
                    });
                reduced.is_positive()
            });
            let Some(j) = entering else {
                return Ok(());
            };
            let mut best: Option<(usize, BigRational)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][j].is_positive() {
                    continue;
                }
                let ratio = &self.a[r][rhs] / &self.a[r][j];
                let better = match &best {
                    None => true,
                    Some((br, bv)) => {
                        ratio < *bv || (ratio == *bv && self.basis[r] < self.basis[*br])
                    }
                };
                if better {
                    best = Some((r, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, j),
                None => return Err(Unbounded),
            }
        }
    }
}
