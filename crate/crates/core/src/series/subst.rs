use std::collections::HashMap;
use std::sync::Arc;

use num_traits::One;

use super::{mul_terms, Grading, QSeries, Rational, Term};
use crate::error::{Error, Result};

/// Coordinate change `x_k -> x_k · u_k(x)` with unit factors `u_k(0) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubstitutionMap {
    units: Vec<QSeries>,
}

impl SubstitutionMap {
    pub fn new(units: Vec<QSeries>) -> Result<SubstitutionMap> {
        let Some(first) = units.first() else {
            return Ok(SubstitutionMap { units });
        };
        if units.len() != first.num_vars() {
            return Err(Error::Shape(format!(
                "{} unit factors for {} variables",
                units.len(),
                first.num_vars()
            )));
        }
        for u in &units {
            if u.grading() != first.grading() {
                return Err(Error::Shape("unit factors in different rings".into()));
            }
            if !u.constant_term().is_one() {
                return Err(Error::Precondition(
                    "unit factor without constant term 1".into(),
                ));
            }
            u.check_unit_support()?;
        }
        Ok(SubstitutionMap { units })
    }

    pub fn identity(grading: &Arc<Grading>, order: Rational) -> SubstitutionMap {
        SubstitutionMap {
            units: (0..grading.num_vars())
                .map(|_| QSeries::one(grading, order.clone()))
                .collect(),
        }
    }

    pub fn num_vars(&self) -> usize {
        self.units.len()
    }

    pub fn units(&self) -> &[QSeries] {
        &self.units
    }

    pub fn unit(&self, k: usize) -> &QSeries {
        &self.units[k]
    }

    fn cap(&self) -> i64 {
        self.units.iter().map(|u| u.cap()).min().unwrap_or(i64::MAX)
    }

    /// The image of `x_k`, i.e. `x_k · u_k`.
    pub fn component(&self, k: usize) -> QSeries {
        let mut e = vec![0; self.num_vars()];
        e[k] = 1;
        self.units[k].shift(&e).truncate(self.units[k].order())
    }

    pub fn is_identity(&self) -> bool {
        self.units
            .iter()
            .all(|u| u.len() == 1 && u.constant_term().is_one())
    }

    /// `prod_k u_k^{e_k}`, so that the image of `x^e` is `x^e` times this.
    pub fn monomial_factor(&self, e: &[i32]) -> Result<QSeries> {
        let mut out: Option<QSeries> = None;
        for (k, &x) in e.iter().enumerate() {
            if x != 0 {
                let p = self.units[k].pow(x as i64)?;
                out = Some(match out {
                    None => p,
                    Some(o) => &o * &p,
                });
            }
        }
        Ok(out.unwrap_or_else(|| {
            let u = &self.units[0];
            QSeries::one(u.grading(), u.order().clone())
        }))
    }

    /// `f(x · u(x))`, truncated to the smaller of the two orders.
    pub fn apply(&self, f: &QSeries) -> Result<QSeries> {
        Ok(self.apply_all(&[f])?.pop().expect("one input, one output"))
    }

    /// Applies the map to several series, sharing the cached unit powers.
    pub fn apply_all(&self, fs: &[&QSeries]) -> Result<Vec<QSeries>> {
        if self.units.is_empty() {
            return Ok(fs.iter().map(|f| (*f).clone()).collect());
        }
        for f in fs {
            f.check_shape(&self.units[0])?;
        }
        let cap = fs.iter().map(|f| f.cap()).fold(self.cap(), i64::min);
        let n = self.num_vars();
        // u_k^j for every exponent j occurring in some input
        let mut powers: Vec<HashMap<i32, Vec<Term>>> = vec![HashMap::new(); n];
        for k in 0..n {
            let exps = fs
                .iter()
                .flat_map(|f| f.terms.iter().map(move |t| t.exp[k]));
            let (lo, hi) = exps.fold((0, 0), |(lo, hi), j| (lo.min(j), hi.max(j)));
            if lo == 0 && hi == 0 {
                continue;
            }
            let u = self.units[k].truncate_cap(cap);
            let mut p = u.terms.clone();
            for j in 1..=hi {
                if j > 1 {
                    p = mul_terms(&p, &u.terms, cap);
                }
                powers[k].insert(j, p.clone());
            }
            if lo < 0 {
                let inv = u.inverse()?;
                let mut p = inv.terms.clone();
                for j in 1..=-lo {
                    if j > 1 {
                        p = mul_terms(&p, &inv.terms, cap);
                    }
                    powers[k].insert(-j, p.clone());
                }
            }
        }
        let unit = vec![Term {
            deg: 0,
            exp: vec![0; n],
            coeff: Rational::one(),
        }];
        let mut out = Vec::with_capacity(fs.len());
        for f in fs {
            let mut sorted: Vec<&Term> = f.terms.iter().filter(|t| t.deg <= cap).collect();
            sorted.sort_by(|a, b| a.exp.cmp(&b.exp));
            let mut acc: HashMap<Vec<i32>, (i64, Rational)> = HashMap::new();
            descend(&sorted, 0, &unit, &powers, cap, &mut acc);
            out.push(f.with_terms(cap, super::canonical(acc)).truncate_cap(cap));
        }
        Ok(out)
    }

    /// `self ∘ inner`: first `inner`, then `self`, as maps on coordinates.
    pub fn compose(&self, inner: &SubstitutionMap) -> Result<SubstitutionMap> {
        let units = self
            .units
            .iter()
            .zip(&inner.units)
            .map(|(u, v)| Ok(v * &inner.apply(u)?))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubstitutionMap { units })
    }

    /// The compositional inverse, by fixed-point iteration
    /// `v_k <- 1 / (u_k ∘ v)` at increasing precision.
    pub fn revert(&self) -> Result<SubstitutionMap> {
        let Some(first) = self.units.first() else {
            return Ok(self.clone());
        };
        let cap = self.cap();
        let step = self.units.iter().filter_map(|u| u.min_positive_deg()).min();
        let Some(step) = step else {
            return Ok(self.clone());
        };
        let grading = first.grading().clone();
        let mut v = SubstitutionMap {
            units: (0..self.num_vars())
                .map(|_| QSeries::one(&grading, first.order().clone()).truncate_cap(step - 1))
                .collect(),
        };
        // after t rounds v is exact below degree (t + 1) * step
        let mut correct = step - 1;
        while correct < cap {
            let target = (correct + step).min(cap);
            let truncated: Vec<QSeries> =
                self.units.iter().map(|u| u.truncate_cap(target)).collect();
            let lifted = SubstitutionMap {
                units: v.units.iter().map(|x| x.with_cap(target)).collect(),
            };
            let refs: Vec<&QSeries> = truncated.iter().collect();
            let units = lifted
                .apply_all(&refs)?
                .iter()
                .map(QSeries::inverse)
                .collect::<Result<Vec<_>>>()?;
            v = SubstitutionMap { units };
            correct = target;
        }
        let units = v
            .units
            .into_iter()
            .zip(&self.units)
            .map(|(x, u)| x.with_order(u.order().clone()))
            .collect();
        Ok(SubstitutionMap { units })
    }
}

fn descend(
    terms: &[&Term],
    k: usize,
    partial: &[Term],
    powers: &[HashMap<i32, Vec<Term>>],
    cap: i64,
    acc: &mut HashMap<Vec<i32>, (i64, Rational)>,
) {
    let n = powers.len();
    if k == n {
        for t in terms {
            for p in partial {
                let deg = t.deg + p.deg;
                if deg > cap {
                    break;
                }
                let exp: Vec<i32> = t.exp.iter().zip(&p.exp).map(|(a, b)| a + b).collect();
                super::accumulate(acc, exp, deg, &t.coeff * &p.coeff);
            }
        }
        return;
    }
    let mut start = 0;
    while start < terms.len() {
        let j = terms[start].exp[k];
        let mut end = start;
        while end < terms.len() && terms[end].exp[k] == j {
            end += 1;
        }
        let group = &terms[start..end];
        let min_deg = group.iter().map(|t| t.deg).min().expect("nonempty group");
        let room = cap - min_deg;
        if j == 0 {
            descend(group, k + 1, partial, powers, cap, acc);
        } else {
            let next = mul_terms(partial, &powers[k][&j], room);
            descend(group, k + 1, &next, powers, cap, acc);
        }
        start = end;
    }
}

impl QSeries {
    /// Same terms with a different truncation cap, keeping everything the
    /// lower of the two caps allows.
    pub(crate) fn with_cap(&self, cap: i64) -> QSeries {
        let terms: Vec<Term> = self
            .terms
            .iter()
            .filter(|t| t.deg <= cap)
            .cloned()
            .collect();
        QSeries {
            grading: self.grading.clone(),
            order: self.grading.cap_to_order(cap),
            cap,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::int;

    fn g1() -> Arc<Grading> {
        Arc::new(Grading::uniform(1))
    }

    #[test]
    fn revert_one_plus_x() {
        let g = g1();
        let u = QSeries::from_terms(&g, int(4), [(vec![0], int(1)), (vec![1], int(1))]);
        let s = SubstitutionMap::new(vec![u]).unwrap();
        let t = s.revert().unwrap();
        let expected = [1, -1, 2, -5, 14];
        for (k, c) in expected.iter().enumerate() {
            assert_eq!(t.unit(0).coeff(&[k as i32]), int(*c));
        }
        assert!(s.compose(&t).unwrap().is_identity());
        assert!(t.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn identity_maps() {
        let g = Arc::new(Grading::uniform(2));
        let id = SubstitutionMap::identity(&g, int(5));
        assert!(id.revert().unwrap().is_identity());
        let f = QSeries::from_terms(&g, int(5), [(vec![1, 2], int(3)), (vec![0, 1], int(-1))]);
        assert_eq!(id.apply(&f).unwrap(), f);
    }

    #[test]
    fn monomial_image() {
        let g = Arc::new(Grading::uniform(2));
        let u0 = QSeries::from_terms(&g, int(4), [(vec![0, 0], int(1)), (vec![0, 1], int(2))]);
        let u1 = QSeries::from_terms(&g, int(4), [(vec![0, 0], int(1)), (vec![1, 0], int(-1))]);
        let s = SubstitutionMap::new(vec![u0.clone(), u1.clone()]).unwrap();
        let e = vec![1, 2];
        let f = QSeries::monomial(&g, int(4), e.clone(), int(1));
        let expected = (&u0 * &u1.pow(2).unwrap()).shift(&e).truncate(&int(4));
        assert_eq!(s.apply(&f).unwrap(), expected);
        assert_eq!(
            s.monomial_factor(&e).unwrap().shift(&e).truncate(&int(4)),
            expected
        );
    }

    #[test]
    fn negative_exponents_substitute_through_inverses() {
        let g = Arc::new(Grading::new(&[int(2), int(1)]));
        // x1 x2^-1 has degree 1
        let u1 = QSeries::from_terms(&g, int(3), [(vec![0, 0], int(1)), (vec![0, 1], int(1))]);
        let s = SubstitutionMap::new(vec![QSeries::one(&g, int(3)), u1.clone()]).unwrap();
        let f = QSeries::monomial(&g, int(3), vec![1, -1], int(1));
        let got = s.apply(&f).unwrap();
        let expected = u1.inverse().unwrap().shift(&[1, -1]).truncate(&int(3));
        assert_eq!(got, expected);
    }

    #[test]
    fn rejects_non_units() {
        let g = g1();
        let u = QSeries::from_terms(&g, int(4), [(vec![0], int(2))]);
        assert!(SubstitutionMap::new(vec![u]).is_err());
    }
}
