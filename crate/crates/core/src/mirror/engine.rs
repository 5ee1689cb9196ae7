use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::enumerate::{enumerate_classes, factorial};
use super::{DivisorSeries, HoriVafaForm, Potential, PotentialTerm};
use crate::error::{Error, Result};
use crate::fan::{CurveClass, DiscClass, ToricContext};
use crate::series::{int, Exponent, Grading, QSeries, Rational, SubstitutionMap};

/// Computes and caches every series attached to a semi-Fano context at a
/// fixed truncation order.
///
/// All caches are write-once, so an engine can be shared between threads.
pub struct MirrorEngine {
    ctx: Arc<ToricContext>,
    order: Rational,
    classes: Vec<Vec<CurveClass>>,
    g: Vec<OnceLock<QSeries>>,
    mirror: OnceLock<SubstitutionMap>,
    inverse: OnceLock<SubstitutionMap>,
    pulled: Vec<OnceLock<QSeries>>,
    delta: Vec<OnceLock<QSeries>>,
}

fn sign(k: i64) -> BigInt {
    if k.rem_euclid(2) == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

impl MirrorEngine {
    pub fn new(ctx: Arc<ToricContext>, order: Rational) -> Result<MirrorEngine> {
        ctx.require_semi_fano()?;
        if !order.is_positive() {
            return Err(Error::Precondition("order must be positive".into()));
        }
        let m = ctx.num_rays();
        let classes = (0..m)
            .map(|l| enumerate_classes(&ctx, l, &order))
            .collect::<Result<Vec<_>>>()?;
        Ok(MirrorEngine {
            ctx,
            order,
            classes,
            g: (0..m).map(|_| OnceLock::new()).collect(),
            mirror: OnceLock::new(),
            inverse: OnceLock::new(),
            pulled: (0..m).map(|_| OnceLock::new()).collect(),
            delta: (0..m).map(|_| OnceLock::new()).collect(),
        })
    }

    pub fn context(&self) -> &Arc<ToricContext> {
        &self.ctx
    }

    pub fn order(&self) -> &Rational {
        &self.order
    }

    pub fn grading(&self) -> &Arc<Grading> {
        self.ctx.grading()
    }

    fn zero(&self) -> QSeries {
        QSeries::zero(self.grading(), self.order.clone())
    }

    fn one(&self) -> QSeries {
        QSeries::one(self.grading(), self.order.clone())
    }

    /// Classes indexing `g_l`.
    pub fn classes(&self, l: usize) -> Result<&[CurveClass]> {
        self.ctx.check_ray(l)?;
        Ok(&self.classes[l])
    }

    fn series_over(&self, l: usize, coeff: impl Fn(&[i64]) -> Rational) -> QSeries {
        let terms = self.classes[l].iter().map(|d| {
            let y = self.ctx.pairings(d);
            (d.exponent(), coeff(&y))
        });
        QSeries::from_terms(self.grading(), self.order.clone(), terms)
    }

    fn hypergeometric(&self, l: usize, y: &[i64]) -> Rational {
        let num = sign(y[l]) * factorial(-y[l] - 1);
        let den: BigInt = y
            .iter()
            .enumerate()
            .filter(|&(p, _)| p != l)
            .map(|(_, &k)| factorial(k))
            .product();
        Rational::new(num, den)
    }

    /// `g_l(q̌) = sum_d (-1)^{D_l·d} (-D_l·d - 1)! / prod_{p != l} (D_p·d)! q̌^d`.
    pub fn g(&self, l: usize) -> Result<&QSeries> {
        self.ctx.check_ray(l)?;
        Ok(self.g[l].get_or_init(|| self.series_over(l, |y| self.hypergeometric(l, y))))
    }

    fn g_unchecked(&self, l: usize) -> &QSeries {
        self.g(l).expect("ray index in range")
    }

    /// `g^{Psi_k} = sum_l (D_l·Psi_k) g_l`.
    pub fn g_psi(&self, k: usize) -> Result<QSeries> {
        if k >= self.ctx.num_vars() {
            return Err(Error::Precondition(format!("no Novikov variable {k}")));
        }
        Ok(self.combine(|l| self.ctx.psi_matrix()[l][k]))
    }

    fn combine(&self, weight: impl Fn(usize) -> i64) -> QSeries {
        let mut acc = self.zero();
        for l in 0..self.ctx.num_rays() {
            let c = weight(l);
            if c != 0 {
                acc = &acc + &self.g_unchecked(l).scale(&int(c));
            }
        }
        acc
    }

    /// `g_{i,j}`: the `g_i` sum weighted by `D_j·d`.
    pub fn g_ij(&self, i: usize, j: usize) -> Result<QSeries> {
        self.ctx.check_ray(i)?;
        self.ctx.check_ray(j)?;
        Ok(self.series_over(i, |y| self.hypergeometric(i, y) * int(y[j])))
    }

    /// `q_k = q̌_k exp(-g^{Psi_k}(q̌))`.
    pub fn mirror_map(&self) -> &SubstitutionMap {
        self.mirror.get_or_init(|| {
            let units = (0..self.ctx.num_vars())
                .map(|k| {
                    (-self.g_psi(k).expect("k in range"))
                        .exp()
                        .expect("g has no constant term")
                })
                .collect();
            SubstitutionMap::new(units).expect("exponentials are units")
        })
    }

    /// `q̌(q)`, the compositional inverse of the mirror map.
    pub fn inverse_mirror_map(&self) -> &SubstitutionMap {
        self.inverse.get_or_init(|| {
            self.mirror_map()
                .revert()
                .expect("mirror map is invertible")
        })
    }

    /// `f(q̌(q))`.
    pub fn pullback(&self, f: &QSeries) -> Result<QSeries> {
        self.inverse_mirror_map().apply(f)
    }

    /// `g_l(q̌(q))`.
    pub fn g_pulled(&self, l: usize) -> Result<&QSeries> {
        self.ctx.check_ray(l)?;
        Ok(self.pulled[l].get_or_init(|| self.pullback(self.g_unchecked(l)).expect("same ring")))
    }

    /// `delta_l(q) = exp(g_l(q̌(q))) - 1`.
    pub fn delta(&self, l: usize) -> Result<&QSeries> {
        let pulled = self.g_pulled(l)?;
        Ok(self.delta[l].get_or_init(|| &pulled.exp().expect("no constant term") - &self.one()))
    }

    fn check_disc(&self, beta: &DiscClass) -> Result<()> {
        self.ctx.check_ray(beta.ray)?;
        if beta.curve.comps().len() != self.ctx.num_vars() {
            return Err(Error::Shape("curve class length".into()));
        }
        let mu = beta.maslov(&self.ctx);
        if mu != 2 {
            return Err(Error::MaslovIndex(mu));
        }
        let deg = self.ctx.degree(&beta.curve);
        if deg > self.order {
            return Err(Error::OutOfOrder {
                degree: deg.to_string(),
                order: self.order.to_string(),
            });
        }
        Ok(())
    }

    /// One-point open invariant `n_1(beta_l + alpha)`: the `q^alpha`
    /// coefficient of `1 + delta_l`.
    pub fn open_gw(&self, beta: &DiscClass) -> Result<Rational> {
        self.check_disc(beta)?;
        if beta.curve.is_zero() {
            return Ok(Rational::one());
        }
        Ok(self.delta(beta.ray)?.coeff(&beta.curve.exponent()))
    }

    /// `n_{1,1}(beta; D_i, [pt]) = (D_i·beta) n_1(beta)`.
    pub fn open_gw_divisor(&self, beta: &DiscClass, i: usize) -> Result<Rational> {
        self.ctx.check_ray(i)?;
        let n1 = self.open_gw(beta)?;
        let pairing = i64::from(i == beta.ray) + self.ctx.pairing(i, &beta.curve);
        Ok(n1 * int(pairing))
    }

    fn var_exponent(&self, l: usize) -> Exponent {
        let mut e = vec![0; self.ctx.num_vars()];
        if let Some(k) = self.ctx.var_of_ray(l) {
            e[k] = 1;
        }
        e
    }

    /// `W = sum_l (1 + delta_l) Z_l` with `Z_l = q_{l-n} z^{v_l}` off the basis cone.
    pub fn disc_potential(&self) -> Potential {
        let terms = (0..self.ctx.num_rays())
            .map(|l| PotentialTerm {
                ray: l,
                z_exponent: self.ctx.ray_coords(l),
                q_monomial: self.var_exponent(l),
                series: &self.one() + self.delta(l).expect("ray in range"),
            })
            .collect();
        Potential { terms }
    }

    /// Hori–Vafa superpotential in the `q` coordinates.
    pub fn hori_vafa(&self, form: HoriVafaForm) -> Potential {
        let inverse = self.inverse_mirror_map();
        let pull_exp = |f: QSeries| {
            inverse
                .apply(&f.exp().expect("no constant term"))
                .expect("same ring")
        };
        let basis = self.ctx.basis();
        let terms = (0..self.ctx.num_rays())
            .map(|l| {
                let z = self.ctx.ray_coords(l);
                let q_unit = match self.ctx.var_of_ray(l) {
                    Some(k) => inverse.unit(k).clone(),
                    None => self.one(),
                };
                let series = match form {
                    HoriVafaForm::Plain => q_unit,
                    HoriVafaForm::Tilde => {
                        let mut exponent = self.zero();
                        for (p, &b) in basis.iter().enumerate() {
                            if z[p] != 0 {
                                exponent = &exponent + &self.g_unchecked(b).scale(&int(z[p]));
                            }
                        }
                        &q_unit * &pull_exp(exponent)
                    }
                };
                PotentialTerm {
                    ray: l,
                    z_exponent: z,
                    q_monomial: self.var_exponent(l),
                    series,
                }
            })
            .collect();
        Potential { terms }
    }

    /// `B_j = D_j - sum_i g_{i,j}(q̌(q)) D_i`.
    pub fn batyrev_element(&self, j: usize) -> Result<DivisorSeries> {
        self.ctx.check_ray(j)?;
        let coeffs = (0..self.ctx.num_rays())
            .map(|i| {
                let g = self.pullback(&self.g_ij(i, j)?)?;
                Ok(if i == j { &self.one() - &g } else { -g })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(DivisorSeries::new(coeffs))
    }

    /// `S°_j = exp(-g_j(q̌(q))) B_j`.
    pub fn seidel_element(&self, j: usize) -> Result<DivisorSeries> {
        let b = self.batyrev_element(j)?;
        let factor = (-self.g_pulled(j)?).exp()?;
        Ok(b.map(|c| &factor * c))
    }

    /// `Â_{D_i} f = sum_k (D_i·Psi_k) q_k d f / d q_k`.
    pub fn divisor_derivative(&self, i: usize, f: &QSeries) -> Result<QSeries> {
        self.ctx.check_ray(i)?;
        let mut acc = f.scale(&Rational::zero());
        for (k, &a) in self.ctx.psi_matrix()[i].iter().enumerate() {
            if a != 0 {
                acc = &acc + &f.theta(k).scale(&int(a));
            }
        }
        Ok(acc)
    }

    /// Unit factors `exp(-g_l(q̌))` of the extended mirror map.
    pub fn extended_mirror_factors(&self) -> Vec<QSeries> {
        (0..self.ctx.num_rays())
            .map(|l| (-self.g_unchecked(l)).exp().expect("no constant term"))
            .collect()
    }
}
