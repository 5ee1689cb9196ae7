use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::{CurveClass, ToricContext};
use crate::linalg::integer_inverse;

/// All classes `d` with `c1·d = 0`, `D_l·d <= -1`, `D_p·d >= 0` for `p != l`
/// and `w·d <= order`, in canonical order.
///
/// Pick a maximal cone `sigma` containing `v_l`. Every ray outside `sigma`
/// pairs nonnegatively with `d`, and those pairings determine the rest
/// through `sum_p (D_p·d) v_p = 0`. Rewriting the ample weight as a divisor
/// supported off `sigma` turns `w·d <= order` into a bounded knapsack over
/// the outside pairings, which is scanned exhaustively.
pub fn enumerate_classes(
    ctx: &ToricContext,
    l: usize,
    order: &BigRational,
) -> Result<Vec<CurveClass>> {
    ctx.check_ray(l)?;
    let n = ctx.dim();
    let m = ctx.num_rays();
    let fan = ctx.fan();
    let sigma = fan
        .max_cones()
        .iter()
        .find(|c| c.contains(&l))
        .expect("validated fans use every ray")
        .clone();
    let rows: Vec<Vec<i64>> = sigma
        .iter()
        .map(|&i| fan.ray(i).coords().to_vec())
        .collect();
    let inv = integer_inverse(&rows).expect("unimodular cone");
    let dual: Vec<Vec<i64>> = (0..n)
        .map(|p| (0..n).map(|i| inv[i][p]).collect())
        .collect();

    let mut a = vec![BigRational::zero(); m];
    for (k, &e) in ctx.extra().iter().enumerate() {
        a[e] = ctx.ample_weight()[k].clone();
    }
    // u = -sum_{p in sigma} a_p nu_p, then a' = a + <u, v>
    let mut u = vec![BigRational::zero(); n];
    for (p, &r) in sigma.iter().enumerate() {
        for i in 0..n {
            u[i] -= &a[r] * BigRational::from_integer(dual[p][i].into());
        }
    }
    let outside: Vec<usize> = (0..m).filter(|q| !sigma.contains(q)).collect();
    let shifted: Vec<BigRational> = outside
        .iter()
        .map(|&q| {
            let pair: BigRational = (0..n)
                .map(|i| &u[i] * BigRational::from_integer(fan.ray(q).coords()[i].into()))
                .sum();
            &a[q] + pair
        })
        .collect();
    if shifted.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition(
            "ample weight is not strictly convex on the chosen cone".into(),
        ));
    }
    if order.is_negative() {
        return Ok(Vec::new());
    }
    let scale = shifted
        .iter()
        .fold(order.denom().clone(), |acc, x| acc.lcm(x.denom()));
    let scale_q = BigRational::from_integer(scale);
    let weights: Vec<i64> = shifted
        .iter()
        .map(|x| (x * &scale_q).to_integer().to_i64().expect("weight fits"))
        .collect();
    let bound: i64 = (order * &scale_q)
        .floor()
        .to_integer()
        .to_i64()
        .unwrap_or(i64::MAX);

    let mut found = Vec::new();
    let mut y_out = vec![0i64; outside.len()];
    let mut visit = |y_out: &[i64]| {
        let mut y = vec![0i64; m];
        let mut s = vec![0i64; n];
        for (j, &q) in outside.iter().enumerate() {
            y[q] = y_out[j];
            for (si, vi) in s.iter_mut().zip(fan.ray(q).coords()) {
                *si += y_out[j] * vi;
            }
        }
        for (p, &r) in sigma.iter().enumerate() {
            y[r] = -dual[p].iter().zip(&s).map(|(a, b)| a * b).sum::<i64>();
        }
        if y[l] > -1 || y.iter().sum::<i64>() != 0 {
            return;
        }
        if sigma.iter().any(|&r| r != l && y[r] < 0) {
            return;
        }
        found.push(
            ctx.class_from_pairings(&y)
                .expect("relation holds by construction"),
        );
    };
    scan(&weights, bound, 0, &mut y_out, &mut visit);
    found.sort_by(|a, b| {
        let (da, db) = (ctx.degree(a), ctx.degree(b));
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    Ok(found)
}

fn scan(weights: &[i64], budget: i64, j: usize, y: &mut [i64], visit: &mut impl FnMut(&[i64])) {
    if j == weights.len() {
        visit(y);
        return;
    }
    let mut k = 0;
    while k * weights[j] <= budget {
        y[j] = k;
        scan(weights, budget - k * weights[j], j + 1, y, visit);
        k += 1;
    }
    y[j] = 0;
}

/// `n!` as a big integer.
pub(crate) fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, k| acc * k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn projective_plane_has_no_classes() {
        let c = ToricContext::new(crate::fixtures::fan("p2").unwrap(), None).unwrap();
        for l in 0..3 {
            assert!(enumerate_classes(&c, l, &q(12)).unwrap().is_empty());
        }
    }

    #[test]
    fn hirzebruch_two_multiples_of_the_fiber() {
        let c = ToricContext::new(
            parse_fan(
                r#"{"dim":2,"rays":[[1,0],[0,1],[-1,2],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
            )
            .unwrap(),
            None,
        )
        .unwrap();
        let got = enumerate_classes(&c, 1, &q(3)).unwrap();
        assert_eq!(
            got,
            vec![
                CurveClass(vec![1, 0]),
                CurveClass(vec![2, 0]),
                CurveClass(vec![3, 0])
            ]
        );
        for l in [0, 2, 3] {
            assert!(enumerate_classes(&c, l, &q(6)).unwrap().is_empty());
        }
    }

    #[test]
    fn factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
