//! Truncated multivariate power series over exact rationals.
//!
//! A [`QSeries`] stores finitely many terms `c · x^e` whose degree under a
//! shared [`Grading`] does not exceed the truncation order. Exponents are
//! integer vectors and may have negative entries (curve classes need not be
//! nonnegative in every coordinate); the grading decides what is "small".

mod grading;
mod record;
mod subst;

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use grading::Grading;
pub use record::{RationalRecord, SeriesRecord, TermRecord};
pub use subst::SubstitutionMap;

pub type Rational = BigRational;
pub type Exponent = Vec<i32>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Term {
    pub deg: i64,
    pub exp: Exponent,
    pub coeff: Rational,
}

/// Truncated power series `sum c_e x^e` with `w · e <= order`.
#[derive(Clone)]
pub struct QSeries {
    grading: Arc<Grading>,
    order: Rational,
    cap: i64,
    // sorted by (deg, exp), no zero coefficients
    terms: Vec<Term>,
}

impl PartialEq for QSeries {
    fn eq(&self, other: &Self) -> bool {
        self.cap == other.cap && self.terms == other.terms && self.grading == other.grading
    }
}

impl Eq for QSeries {}

impl fmt::Debug for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSeries({}, deg <= {})", self, self.order)
    }
}

pub(crate) fn int(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

fn add_exp(a: &[i32], b: &[i32]) -> Exponent {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn canonical(map: HashMap<Exponent, (i64, Rational)>) -> Vec<Term> {
    let mut terms: Vec<Term> = map
        .into_iter()
        .filter(|(_, (_, c))| !c.is_zero())
        .map(|(exp, (deg, coeff))| Term { deg, exp, coeff })
        .collect();
    terms.sort_unstable_by(|a, b| (a.deg, &a.exp).cmp(&(b.deg, &b.exp)));
    terms
}

fn accumulate(map: &mut HashMap<Exponent, (i64, Rational)>, exp: Exponent, deg: i64, c: Rational) {
    match map.get_mut(&exp) {
        Some(slot) => slot.1 += c,
        None => {
            map.insert(exp, (deg, c));
        }
    }
}

/// Product of two canonical term lists, dropping degrees above `cap`.
pub(crate) fn mul_terms(a: &[Term], b: &[Term], cap: i64) -> Vec<Term> {
    let mut map: HashMap<Exponent, (i64, Rational)> = HashMap::new();
    for ta in a {
        for tb in b {
            let deg = ta.deg + tb.deg;
            if deg > cap {
                break;
            }
            accumulate(
                &mut map,
                add_exp(&ta.exp, &tb.exp),
                deg,
                &ta.coeff * &tb.coeff,
            );
        }
    }
    canonical(map)
}

impl QSeries {
    pub fn zero(grading: &Arc<Grading>, order: Rational) -> QSeries {
        let cap = grading.cap(&order);
        QSeries {
            grading: grading.clone(),
            order,
            cap,
            terms: Vec::new(),
        }
    }

    pub fn constant(grading: &Arc<Grading>, order: Rational, c: Rational) -> QSeries {
        QSeries::monomial(grading, order, vec![0; grading.num_vars()], c)
    }

    pub fn one(grading: &Arc<Grading>, order: Rational) -> QSeries {
        QSeries::constant(grading, order, Rational::one())
    }

    /// `c · x^e`, or zero if `e` lies beyond the order.
    pub fn monomial(grading: &Arc<Grading>, order: Rational, e: Exponent, c: Rational) -> QSeries {
        QSeries::from_terms(grading, order, [(e, c)])
    }

    /// The variable `x_k`.
    pub fn variable(grading: &Arc<Grading>, order: Rational, k: usize) -> QSeries {
        let mut e = vec![0; grading.num_vars()];
        e[k] = 1;
        QSeries::monomial(grading, order, e, Rational::one())
    }

    /// Sums the given terms and truncates. Panics on a wrong exponent length.
    pub fn from_terms(
        grading: &Arc<Grading>,
        order: Rational,
        terms: impl IntoIterator<Item = (Exponent, Rational)>,
    ) -> QSeries {
        let cap = grading.cap(&order);
        let mut map = HashMap::new();
        for (e, c) in terms {
            assert_eq!(e.len(), grading.num_vars(), "exponent length");
            let deg = grading.int_degree(&e);
            if deg <= cap {
                accumulate(&mut map, e, deg, c);
            }
        }
        QSeries {
            grading: grading.clone(),
            order,
            cap,
            terms: canonical(map),
        }
    }

    fn with_terms(&self, cap: i64, terms: Vec<Term>) -> QSeries {
        let order = if cap == self.cap {
            self.order.clone()
        } else {
            self.grading.cap_to_order(cap)
        };
        QSeries {
            grading: self.grading.clone(),
            order,
            cap,
            terms,
        }
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn num_vars(&self) -> usize {
        self.grading.num_vars()
    }

    pub fn order(&self) -> &Rational {
        &self.order
    }

    pub(crate) fn cap(&self) -> i64 {
        self.cap
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical (graded-lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter().map(|t| (&t.exp, &t.coeff))
    }

    pub fn coeff(&self, e: &[i32]) -> Rational {
        let deg = self.grading.int_degree(e);
        self.terms
            .binary_search_by(|t| (t.deg, t.exp.as_slice()).cmp(&(deg, e)))
            .map(|i| self.terms[i].coeff.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.num_vars()])
    }

    /// True when `x^e` is within the truncation order.
    pub fn covers(&self, e: &[i32]) -> bool {
        self.grading.int_degree(e) <= self.cap
    }

    /// Smallest positive term degree (as an integer-scaled degree).
    pub(crate) fn min_positive_deg(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.deg).find(|&d| d > 0)
    }

    fn check_shape(&self, other: &QSeries) -> Result<()> {
        if self.grading == other.grading {
            Ok(())
        } else {
            Err(Error::Shape(format!(
                "series in {} and {} variables (or different gradings)",
                self.num_vars(),
                other.num_vars()
            )))
        }
    }

    /// Truncates to a lower order (a higher order leaves the series as is,
    /// but records the new bound only when lowering).
    pub fn truncate(&self, order: &Rational) -> QSeries {
        let cap = self.grading.cap(order);
        if cap >= self.cap {
            return self.clone();
        }
        self.truncate_cap(cap)
    }

    pub(crate) fn truncate_cap(&self, cap: i64) -> QSeries {
        if cap >= self.cap {
            return self.with_terms(cap.min(self.cap), self.terms.clone());
        }
        let terms = self
            .terms
            .iter()
            .filter(|t| t.deg <= cap)
            .cloned()
            .collect();
        self.with_terms(cap, terms)
    }

    /// Same terms, reinterpreted at another order. Terms above the new
    /// order are dropped; raising the order asserts that the missing
    /// coefficients are exactly zero.
    pub fn with_order(&self, order: Rational) -> QSeries {
        let cap = self.grading.cap(&order);
        QSeries {
            grading: self.grading.clone(),
            order,
            cap,
            terms: self
                .terms
                .iter()
                .filter(|t| t.deg <= cap)
                .cloned()
                .collect(),
        }
    }

    pub fn checked_add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_shape(other)?;
        let cap = self.cap.min(other.cap);
        let mut map = HashMap::new();
        for t in self.terms.iter().chain(&other.terms) {
            if t.deg <= cap {
                accumulate(&mut map, t.exp.clone(), t.deg, t.coeff.clone());
            }
        }
        Ok(self.lower_with(other, cap, canonical(map)))
    }

    pub fn checked_sub(&self, other: &QSeries) -> Result<QSeries> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_shape(other)?;
        let cap = self.cap.min(other.cap);
        Ok(self.lower_with(other, cap, mul_terms(&self.terms, &other.terms, cap)))
    }

    fn lower_with(&self, other: &QSeries, cap: i64, terms: Vec<Term>) -> QSeries {
        if cap == self.cap {
            self.with_terms(cap, terms)
        } else {
            other.with_terms(cap, terms)
        }
    }

    pub fn scale(&self, c: &Rational) -> QSeries {
        if c.is_zero() {
            return self.with_terms(self.cap, Vec::new());
        }
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                deg: t.deg,
                exp: t.exp.clone(),
                coeff: &t.coeff * c,
            })
            .collect();
        self.with_terms(self.cap, terms)
    }

    /// Multiplies by `x^e`. The order shifts by `deg(e)`, so no information
    /// is lost.
    pub fn shift(&self, e: &[i32]) -> QSeries {
        let d = self.grading.int_degree(e);
        let terms = self
            .terms
            .iter()
            .map(|t| Term {
                deg: t.deg + d,
                exp: add_exp(&t.exp, e),
                coeff: t.coeff.clone(),
            })
            .collect();
        let cap = self.cap + d;
        QSeries {
            grading: self.grading.clone(),
            order: &self.order + self.grading.degree(&e.to_vec()),
            cap,
            terms,
        }
    }

    /// Applies `x_k d/dx_k`.
    pub fn theta(&self, k: usize) -> QSeries {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.exp[k] != 0)
            .map(|t| Term {
                deg: t.deg,
                exp: t.exp.clone(),
                coeff: &t.coeff * int(t.exp[k] as i64),
            })
            .collect();
        self.with_terms(self.cap, terms)
    }

    /// The grading Euler operator `sum_k w_k x_k d/dx_k`, in scaled integer
    /// units.
    fn euler(&self) -> QSeries {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.deg != 0)
            .map(|t| Term {
                deg: t.deg,
                exp: t.exp.clone(),
                coeff: &t.coeff * int(t.deg),
            })
            .collect();
        self.with_terms(self.cap, terms)
    }

    /// Relabels exponents through a linear map and changes grading; used for
    /// coordinate changes that preserve degrees.
    pub fn map_exponents(
        &self,
        grading: &Arc<Grading>,
        f: impl Fn(&Exponent) -> Exponent,
    ) -> QSeries {
        QSeries::from_terms(
            grading,
            self.order.clone(),
            self.terms.iter().map(|t| (f(&t.exp), t.coeff.clone())),
        )
    }

    fn check_unit_support(&self) -> Result<()> {
        let zero = vec![0; self.num_vars()];
        if self.terms.iter().any(|t| t.deg <= 0 && t.exp != zero) {
            return Err(Error::Precondition(
                "series has a non-constant term of non-positive degree".into(),
            ));
        }
        Ok(())
    }

    /// Terms grouped by integer degree, for degree-by-degree recurrences.
    fn by_degree(terms: &[Term], cap: i64) -> Vec<Vec<&Term>> {
        let mut levels: Vec<Vec<&Term>> = vec![Vec::new(); (cap.max(0) + 1) as usize];
        for t in terms {
            if t.deg >= 1 && t.deg <= cap {
                levels[t.deg as usize].push(t);
            }
        }
        levels
    }

    /// Solves `deg(e) · r_e = sum_{a+b=e} f_a r_b` degree by degree (with
    /// `r_0 = init`), where `f` only has positive-degree terms. With `f`
    /// the Euler derivative of `g` this yields `init · exp(g)`.
    fn euler_recurrence(&self, f: &[Term], init: Rational, divide_by_deg: bool) -> Vec<Term> {
        let cap = self.cap;
        let zero = vec![0; self.num_vars()];
        if cap < 0 {
            return Vec::new();
        }
        let f_levels = QSeries::by_degree(f, cap);
        let mut levels: Vec<Vec<Term>> = vec![Vec::new(); (cap + 1) as usize];
        levels[0].push(Term {
            deg: 0,
            exp: zero,
            coeff: init,
        });
        for d in 1..=cap {
            let mut map = HashMap::new();
            for da in 1..=d {
                for ta in &f_levels[da as usize] {
                    for tb in &levels[(d - da) as usize] {
                        accumulate(
                            &mut map,
                            add_exp(&ta.exp, &tb.exp),
                            d,
                            &ta.coeff * &tb.coeff,
                        );
                    }
                }
            }
            let mut level = canonical(map);
            if divide_by_deg {
                let dd = int(d);
                level.iter_mut().for_each(|t| t.coeff /= &dd);
            }
            levels[d as usize] = level;
        }
        levels.into_iter().flatten().collect()
    }

    /// `exp(f)`; requires zero constant term.
    pub fn exp(&self) -> Result<QSeries> {
        if !self.constant_term().is_zero() {
            return Err(Error::ExpConstantTerm);
        }
        self.check_unit_support()?;
        let de = self.euler();
        let terms = self.euler_recurrence(&de.terms, Rational::one(), true);
        Ok(self.with_terms(self.cap, terms))
    }

    /// Multiplicative inverse; requires a nonzero constant term.
    pub fn inverse(&self) -> Result<QSeries> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::Precondition(
                "inverse of a series without constant term".into(),
            ));
        }
        self.check_unit_support()?;
        // g = 1/u: g_e = -(1/c) sum_{a != 0} u_a g_{e-a}
        let scale = -c.recip();
        let h: Vec<Term> = self
            .terms
            .iter()
            .filter(|t| t.deg > 0)
            .map(|t| Term {
                deg: t.deg,
                exp: t.exp.clone(),
                coeff: &t.coeff * &scale,
            })
            .collect();
        let terms = self.euler_recurrence(&h, c.recip(), false);
        Ok(self.with_terms(self.cap, terms))
    }

    /// `log(u)`; requires constant term 1.
    pub fn log(&self) -> Result<QSeries> {
        if !self.constant_term().is_one() {
            return Err(Error::LogConstantTerm);
        }
        self.check_unit_support()?;
        let p = &self.euler() * &self.inverse()?;
        let terms = p
            .terms
            .into_iter()
            .map(|t| Term {
                coeff: t.coeff / int(t.deg),
                ..t
            })
            .collect();
        Ok(self.with_terms(self.cap, terms))
    }

    /// Integer power; negative powers need an invertible series.
    pub fn pow(&self, k: i64) -> Result<QSeries> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut result = QSeries::one(&self.grading, self.order.clone());
        let mut b = base;
        let mut e = k.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        Ok(result)
    }

    /// Renders with variables named `{prefix}1, {prefix}2, ...`.
    pub fn render(&self, prefix: &str) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let mono: Vec<String> = t
                .exp
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(k, &x)| {
                    if x == 1 {
                        format!("{prefix}{}", k + 1)
                    } else {
                        format!("{prefix}{}^{x}", k + 1)
                    }
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono.join(" "));
            } else {
                out.push_str(&format!("{abs}·{}", mono.join(" ")));
            }
        }
        out
    }
}

impl fmt::Display for QSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

impl Neg for &QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        self.scale(&-Rational::one())
    }
}

impl Neg for QSeries {
    type Output = QSeries;
    fn neg(self) -> QSeries {
        -&self
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics when the operands live in different series rings.
        impl $trait<&QSeries> for &QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                self.$checked(rhs).expect("series shape mismatch")
            }
        }

        impl $trait<QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: QSeries) -> QSeries {
                (&self).$method(&rhs)
            }
        }

        impl $trait<&QSeries> for QSeries {
            type Output = QSeries;
            fn $method(self, rhs: &QSeries) -> QSeries {
                (&self).$method(rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);
