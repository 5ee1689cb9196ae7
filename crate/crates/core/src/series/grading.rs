use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::Exponent;

/// Linear degree function `e -> w · e` on exponent vectors.
///
/// Weights are rational; internally they are scaled by the lcm of their
/// denominators so that degrees are compared as integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    weights: Vec<BigRational>,
    scale: i64,
    int_weights: Vec<i64>,
}

impl Grading {
    pub fn new(weights: &[BigRational]) -> Grading {
        let scale = weights
            .iter()
            .fold(BigInt::one(), |acc, w| acc.lcm(w.denom()));
        let int_weights = weights
            .iter()
            .map(|w| {
                (w * BigRational::from_integer(scale.clone()))
                    .to_integer()
                    .to_i64()
                    .expect("grading weight fits in i64")
            })
            .collect();
        Grading {
            weights: weights.to_vec(),
            scale: scale.to_i64().expect("grading scale fits in i64"),
            int_weights,
        }
    }

    /// Total-degree grading.
    pub fn uniform(num_vars: usize) -> Grading {
        Grading::new(&vec![BigRational::one(); num_vars])
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn degree(&self, e: &Exponent) -> BigRational {
        BigRational::new(self.int_degree(e).into(), self.scale.into())
    }

    pub(crate) fn int_degree(&self, e: &[i32]) -> i64 {
        self.int_weights
            .iter()
            .zip(e)
            .map(|(&w, &x)| w * x as i64)
            .sum()
    }

    /// Largest integer degree allowed at truncation order `order`.
    pub(crate) fn cap(&self, order: &BigRational) -> i64 {
        let scaled = order * BigRational::from_integer(self.scale.into());
        scaled
            .floor()
            .to_integer()
            .to_i64()
            .expect("order fits in i64")
    }

    pub(crate) fn cap_to_order(&self, cap: i64) -> BigRational {
        BigRational::new(cap.into(), self.scale.into())
    }

    /// True when every weight is positive (then each degree bounds finitely
    /// many nonnegative exponents).
    pub fn is_positive(&self) -> bool {
        self.weights.iter().all(|w| w.is_positive())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn rational_weights_scale_to_integers() {
        let g = Grading::new(&[q(1, 2), q(1, 3)]);
        assert_eq!(g.int_degree(&[1, 1]), 5);
        assert_eq!(g.degree(&vec![1, 1]), q(5, 6));
        assert_eq!(g.cap(&q(1, 1)), 6);
        assert_eq!(g.cap(&q(7, 5)), 8);
    }
}
