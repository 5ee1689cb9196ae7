//! Independent check of `g_l` through the I-function.
//!
//! Each class `d` contributes
//! `I_d = prod_l prod_{s <= 0}(D_l + s z) / prod_{s <= D_l·d}(D_l + s z)`,
//! expanded here in the algebra `Q[zeta, zeta^-1][D_1..D_m] / (D_a D_b)`
//! with `zeta = 1/z`. The `zeta^1` coefficient of the divisor-linear part,
//! summed over classes, must equal `-sum_l g_l D_l`.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::{CurveClass, ToricContext};
use crate::mirror::{enumerate_classes, DivisorSeries};
use crate::series::{int, QSeries, Rational};

type Laurent = BTreeMap<i32, Rational>;

fn laurent_mul(a: &Laurent, b: &Laurent) -> Laurent {
    let mut out = Laurent::new();
    for (i, x) in a {
        for (j, y) in b {
            *out.entry(i + j).or_insert_with(Rational::zero) += x * y;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn laurent_add(a: &mut Laurent, b: &Laurent) {
    for (i, x) in b {
        *a.entry(*i).or_insert_with(Rational::zero) += x;
    }
    a.retain(|_, c| !c.is_zero());
}

/// `scalar + sum_l linear_l D_l` with Laurent coefficients in `zeta`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotentLaurent {
    pub scalar: BTreeMap<i32, Rational>,
    pub linear: Vec<BTreeMap<i32, Rational>>,
}

impl NilpotentLaurent {
    pub fn one(m: usize) -> Self {
        NilpotentLaurent {
            scalar: Laurent::from([(0, Rational::one())]),
            linear: vec![Laurent::new(); m],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_empty() && self.linear.iter().all(BTreeMap::is_empty)
    }

    /// Products of two divisor symbols vanish.
    pub fn mul(&self, other: &Self) -> Self {
        let linear = self
            .linear
            .iter()
            .zip(&other.linear)
            .map(|(a, b)| {
                let mut x = laurent_mul(&self.scalar, b);
                laurent_add(&mut x, &laurent_mul(a, &other.scalar));
                x
            })
            .collect();
        NilpotentLaurent {
            scalar: laurent_mul(&self.scalar, &other.scalar),
            linear,
        }
    }

    /// `c zeta^k + e zeta^j D_l`.
    fn factor(
        m: usize,
        scalar: Option<(i32, Rational)>,
        l: usize,
        linear: (i32, Rational),
    ) -> Self {
        let mut lin = vec![Laurent::new(); m];
        lin[l].insert(linear.0, linear.1);
        NilpotentLaurent {
            scalar: scalar.into_iter().collect(),
            linear: lin,
        }
    }

    /// Coefficient of `zeta^k D_l`.
    pub fn linear_coeff(&self, l: usize, k: i32) -> Rational {
        self.linear[l]
            .get(&k)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }
}

/// The `d`-th term of the I-function, to first order in divisors.
pub fn i_d_term(ctx: &ToricContext, d: &CurveClass) -> Result<NilpotentLaurent> {
    if ctx.chern(d) != 0 {
        return Err(Error::Precondition(format!(
            "class {:?} has c1 = {}",
            d.comps(),
            ctx.chern(d)
        )));
    }
    let m = ctx.num_rays();
    let mut acc = NilpotentLaurent::one(m);
    for (l, &k) in ctx.pairings(d).iter().enumerate() {
        if k > 0 {
            // (D + s z)^{-1} = zeta / s - D zeta^2 / s^2
            for s in 1..=k {
                let s = int(s);
                let f =
                    NilpotentLaurent::factor(m, Some((1, s.recip())), l, (2, -(&s * &s).recip()));
                acc = acc.mul(&f);
            }
        } else if k < 0 {
            // D (D - z)(D - 2z)...(D + (k+1) z); each s != 0 factor is s/zeta + D
            acc = acc.mul(&NilpotentLaurent::factor(m, None, l, (0, Rational::one())));
            for s in (k + 1)..0 {
                let f = NilpotentLaurent::factor(m, Some((-1, int(s))), l, (0, Rational::one()));
                acc = acc.mul(&f);
            }
        }
        if acc.is_zero() {
            break;
        }
    }
    Ok(acc)
}

/// `sum_d q̌^d [zeta^1] I_d` over every class indexing some `g_l`.
pub fn i_one_over_z(ctx: &ToricContext, order: &Rational) -> Result<DivisorSeries> {
    ctx.require_semi_fano()?;
    let m = ctx.num_rays();
    let mut classes = BTreeSet::new();
    for l in 0..m {
        classes.extend(enumerate_classes(ctx, l, order)?);
    }
    let mut per_divisor: Vec<Vec<(Vec<i32>, Rational)>> = vec![Vec::new(); m];
    for d in &classes {
        let term = i_d_term(ctx, d)?;
        for (l, terms) in per_divisor.iter_mut().enumerate() {
            let c = term.linear_coeff(l, 1);
            if !c.is_zero() {
                terms.push((d.exponent(), c));
            }
        }
    }
    Ok(DivisorSeries::new(
        per_divisor
            .into_iter()
            .map(|terms| QSeries::from_terms(ctx.grading(), order.clone(), terms))
            .collect(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ctx(name: &str) -> ToricContext {
        ToricContext::new(fixtures::fan(name).unwrap(), None).unwrap()
    }

    #[test]
    fn hirzebruch_fiber_term() {
        let c = ctx("f2");
        let t = i_d_term(&c, &CurveClass(vec![1, 0])).unwrap();
        assert!(t.scalar.is_empty());
        assert_eq!(t.linear[1], Laurent::from([(1, int(-1))]));
        for l in [0, 2, 3] {
            assert!(t.linear[l].is_empty());
        }
    }

    #[test]
    fn zero_class_is_one() {
        let c = ctx("f2");
        assert_eq!(
            i_d_term(&c, &CurveClass(vec![0, 0])).unwrap(),
            NilpotentLaurent::one(4)
        );
    }

    #[test]
    fn two_negative_pairings_vanish() {
        let c = ctx("chain3");
        // pairings of C1 + C3 are negative on D1 and D3
        let d = c.class_from_pairings(&[-2, 2, -2, 1, 0, 0, 0, 1]).unwrap();
        assert_eq!(c.chern(&d), 0);
        assert!(i_d_term(&c, &d).unwrap().is_zero());
    }

    #[test]
    fn positive_chern_number_is_rejected() {
        let c = ctx("f2");
        assert!(i_d_term(&c, &CurveClass(vec![0, 1])).is_err());
    }
}
