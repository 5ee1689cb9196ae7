//! Property checks shared by `check-all` and the test suites.

use std::sync::Arc;

use crate::error::Result;
use crate::fan::{SeidelSign, ToricContext};
use crate::mirror::{HoriVafaForm, MirrorEngine};
use crate::oracle::i_one_over_z;
use crate::series::QSeries;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckOutcome {
    fn new(name: &'static str, failures: Vec<String>, ok: impl Into<String>) -> Self {
        match failures.first() {
            None => CheckOutcome {
                name,
                passed: true,
                detail: ok.into(),
            },
            Some(first) => CheckOutcome {
                name,
                passed: false,
                detail: if failures.len() == 1 {
                    first.clone()
                } else {
                    format!("{first} (and {} more)", failures.len() - 1)
                },
            },
        }
    }
}

fn diff(a: &QSeries, b: &QSeries) -> Option<String> {
    let d = a - b;
    let first = d.terms().next();
    first.map(|(e, c)| format!("differ at exponent {e:?} by {c}"))
}

/// `P` has the identity below the basis rows and `c1` is its column sum.
pub fn psi_matrix(ctx: &ToricContext) -> CheckOutcome {
    let mut failures = Vec::new();
    let p = ctx.psi_matrix();
    for (r, &e) in ctx.extra().iter().enumerate() {
        for k in 0..ctx.num_vars() {
            if p[e][k] != i64::from(r == k) {
                failures.push(format!("P[{e}][{k}] = {}", p[e][k]));
            }
        }
    }
    for (k, &c) in ctx.c1().iter().enumerate() {
        let sum: i64 = p.iter().map(|row| row[k]).sum();
        if sum != c {
            failures.push(format!("c1[{k}] = {c}, column sum {sum}"));
        }
    }
    for (p_idx, &b) in ctx.basis().iter().enumerate() {
        for (k, &e) in ctx.extra().iter().enumerate() {
            let expected = -ctx.fan().ray(e).dot(&ctx.dual_basis()[p_idx]);
            if p[b][k] != expected {
                failures.push(format!("P[{b}][{k}] = {}, expected {expected}", p[b][k]));
            }
        }
    }
    CheckOutcome::new(
        "psi-matrix",
        failures,
        "identity block and c1 column sums hold",
    )
}

/// The ample weight is strictly positive on every wall class.
pub fn wall_positivity(ctx: &ToricContext) -> CheckOutcome {
    let failures = ctx
        .walls()
        .iter()
        .filter(|w| !num_traits::Signed::is_positive(&ctx.degree(&w.class)))
        .map(|w| format!("wall {:?} has degree {}", w.wall, ctx.degree(&w.class)))
        .collect();
    CheckOutcome::new(
        "ample-weight",
        failures,
        format!("positive on all {} walls", ctx.walls().len()),
    )
}

/// Non-vertex rays lie on a face with at least two other rays.
pub fn faces(ctx: &ToricContext) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for l in 0..ctx.num_rays() {
        if !ctx.is_vertex(l)? {
            let face = ctx.minimal_face(l)?;
            if !face.contains(&l) || face.len() < 3 {
                failures.push(format!("ray {} has minimal face {face:?}", l + 1));
            }
        }
    }
    Ok(CheckOutcome::new(
        "faces",
        failures,
        "non-vertex rays sit inside faces",
    ))
}

/// Every Seidel-space fan is smooth and complete with the expected shape.
pub fn seidel_fans(ctx: &ToricContext) -> CheckOutcome {
    let mut failures = Vec::new();
    for j in 0..ctx.num_rays() {
        for sign in [SeidelSign::Plus, SeidelSign::Minus] {
            let checked = ctx
                .seidel_fan(j, sign)
                .and_then(|f| ToricContext::new(f, None));
            match checked {
                Ok(e) if e.num_rays() == ctx.num_rays() + 2 && e.dim() == ctx.dim() + 1 => {}
                Ok(_) => failures.push(format!("ray {} {sign}: wrong shape", j + 1)),
                Err(err) => failures.push(format!("ray {} {sign}: {err}", j + 1)),
            }
        }
    }
    CheckOutcome::new("seidel-fans", failures, "all Seidel spaces validate")
}

/// Changing the basis cone does not change divisor pairings of walls.
pub fn relabeling(ctx: &ToricContext) -> Result<CheckOutcome> {
    let mut failures = Vec::new();
    for c in 0..ctx.fan().max_cones().len() {
        let other = ToricContext::new(ctx.fan().clone(), Some(c))?;
        for (a, b) in ctx.walls().iter().zip(other.walls()) {
            if ctx.pairings(&a.class) != other.pairings(&b.class)
                || ctx.chern(&a.class) != other.chern(&b.class)
            {
                failures.push(format!("basis cone {c}, wall {:?}", a.wall));
            }
        }
    }
    Ok(CheckOutcome::new(
        "relabeling",
        failures,
        "pairings independent of basis cone",
    ))
}

/// `mirror ∘ inverse` and `inverse ∘ mirror` are the identity.
pub fn round_trip(e: &MirrorEngine) -> Result<CheckOutcome> {
    let s = e.mirror_map();
    let t = e.inverse_mirror_map();
    let mut failures = Vec::new();
    if !s.compose(t)?.is_identity() {
        failures.push("mirror ∘ inverse is not the identity".to_string());
    }
    if !t.compose(s)?.is_identity() {
        failures.push("inverse ∘ mirror is not the identity".to_string());
    }
    Ok(CheckOutcome::new(
        "round-trip",
        failures,
        "both compositions are the identity",
    ))
}

/// The I-function 1/z coefficient equals `-sum_l g_l D_l`.
pub fn oracle(e: &MirrorEngine) -> Result<CheckOutcome> {
    let ctx = e.context();
    let i = i_one_over_z(ctx, e.order())?;
    let mut failures = Vec::new();
    for l in 0..ctx.num_rays() {
        let neg_g = -e.g(l)?.clone();
        if let Some(d) = diff(i.coeff(l), &neg_g) {
            failures.push(format!("D{}: {d}", l + 1));
        }
    }
    Ok(CheckOutcome::new(
        "oracle",
        failures,
        "I-function agrees with -Σ g_l D_l",
    ))
}

/// `q_k prod_l (1 + delta_l)^{P[l][k]}` is the inverse mirror map.
pub fn product_identity(e: &MirrorEngine) -> Result<CheckOutcome> {
    let ctx = e.context();
    let inverse = e.inverse_mirror_map();
    let mut failures = Vec::new();
    for k in 0..ctx.num_vars() {
        let mut prod = QSeries::one(e.grading(), e.order().clone());
        for l in 0..ctx.num_rays() {
            let p = ctx.psi_matrix()[l][k];
            if p != 0 {
                let unit = &QSeries::one(e.grading(), e.order().clone()) + e.delta(l)?;
                prod = &prod * &unit.pow(p)?;
            }
        }
        if let Some(d) = diff(&prod, inverse.unit(k)) {
            failures.push(format!("variable {}: {d}", k + 1));
        }
    }
    Ok(CheckOutcome::new(
        "product-identity",
        failures,
        "inverse mirror map equals the delta product",
    ))
}

/// `Â_i G_k = G_{k,i} + sum_l (Â_i G_l) G_{k,l}` with `G = g(q̌(q))`.
pub fn divisor_identity(e: &MirrorEngine) -> Result<CheckOutcome> {
    let ctx = e.context();
    let m = ctx.num_rays();
    let mut failures = Vec::new();
    let pulled: Vec<&QSeries> = (0..m).map(|l| e.g_pulled(l)).collect::<Result<_>>()?;
    let mut g_kl = Vec::with_capacity(m);
    for k in 0..m {
        let row = (0..m)
            .map(|l| e.pullback(&e.g_ij(k, l)?))
            .collect::<Result<Vec<_>>>()?;
        g_kl.push(row);
    }
    for i in 0..m {
        let derivs: Vec<QSeries> = pulled
            .iter()
            .map(|g| e.divisor_derivative(i, g))
            .collect::<Result<_>>()?;
        for k in 0..m {
            let mut rhs = g_kl[k][i].clone();
            for l in 0..m {
                if !derivs[l].is_zero() && !g_kl[k][l].is_zero() {
                    rhs = &rhs + &(&derivs[l] * &g_kl[k][l]);
                }
            }
            if let Some(d) = diff(&derivs[k], &rhs) {
                failures.push(format!("i = {}, k = {}: {d}", i + 1, k + 1));
            }
        }
    }
    Ok(CheckOutcome::new(
        "divisor-identity",
        failures,
        "derivatives of g agree with g_{i,j}",
    ))
}

/// `log((1 + delta_l) exp(-g_l(q̌(q)))) = 0`.
pub fn log_identity(e: &MirrorEngine) -> Result<CheckOutcome> {
    let ctx = e.context();
    let mut failures = Vec::new();
    for l in 0..ctx.num_rays() {
        let one = QSeries::one(e.grading(), e.order().clone());
        let a = (&(&one + e.delta(l)?) * &(-e.g_pulled(l)?).exp()?).log()?;
        let first = a
            .terms()
            .next()
            .map(|(ex, c)| format!("A_{} has {c} at {ex:?}", l + 1));
        failures.extend(first);
    }
    Ok(CheckOutcome::new(
        "log-identity",
        failures,
        "A_l vanishes for every ray",
    ))
}

/// The disc potential equals the transformed Hori–Vafa potential.
pub fn potentials_agree(e: &MirrorEngine) -> CheckOutcome {
    let w = e.disc_potential();
    let hv = e.hori_vafa(HoriVafaForm::Tilde);
    let mut failures = Vec::new();
    for (a, b) in w.terms.iter().zip(&hv.terms) {
        if a.z_exponent != b.z_exponent {
            failures.push(format!("ray {}: z exponents differ", a.ray + 1));
        } else if let Some(d) = diff(&a.coefficient(), &b.coefficient()) {
            failures.push(format!("ray {}: {d}", a.ray + 1));
        }
    }
    CheckOutcome::new(
        "potentials",
        failures,
        "disc potential equals tilde Hori–Vafa",
    )
}

/// `delta_l` only involves classes supported on the minimal face of `v_l`,
/// and `g_l` vanishes at vertices.
pub fn support(e: &MirrorEngine) -> Result<CheckOutcome> {
    let ctx = e.context();
    let mut failures = Vec::new();
    for l in 0..ctx.num_rays() {
        let face = ctx.minimal_face(l)?;
        for (ex, _) in e.delta(l)?.terms() {
            let d = crate::fan::CurveClass(ex.iter().map(|&x| x as i64).collect());
            for i in (0..ctx.num_rays()).filter(|i| !face.contains(i)) {
                if ctx.pairing(i, &d) != 0 {
                    failures.push(format!("delta_{} term {ex:?} pairs with D{}", l + 1, i + 1));
                }
            }
        }
        if ctx.is_vertex(l)? && !e.g(l)?.is_zero() {
            failures.push(format!("g_{} is nonzero at a vertex", l + 1));
        }
    }
    Ok(CheckOutcome::new(
        "support",
        failures,
        "delta_l lives on minimal faces",
    ))
}

/// When every wall has positive Chern number, all corrections vanish.
pub fn fano_triviality(e: &MirrorEngine) -> Result<Option<CheckOutcome>> {
    let ctx = e.context();
    if ctx.walls().iter().any(|w| ctx.chern(&w.class) <= 0) {
        return Ok(None);
    }
    let mut failures = Vec::new();
    for l in 0..ctx.num_rays() {
        if !e.g(l)?.is_zero() || !e.delta(l)?.is_zero() {
            failures.push(format!("ray {} has nonzero corrections", l + 1));
        }
    }
    if !e.mirror_map().is_identity() {
        failures.push("mirror map is not the identity".into());
    }
    Ok(Some(CheckOutcome::new(
        "fano-triviality",
        failures,
        "g, delta and the mirror map are trivial",
    )))
}

/// Every applicable check, in a fixed order.
pub fn all(ctx: &Arc<ToricContext>, engine: Option<&MirrorEngine>) -> Result<Vec<CheckOutcome>> {
    let small = ctx.dim() <= 3;
    let mut out = vec![psi_matrix(ctx), wall_positivity(ctx)];
    if small {
        out.push(faces(ctx)?);
    }
    out.push(seidel_fans(ctx));
    out.push(relabeling(ctx)?);
    if let Some(e) = engine {
        if let Some(c) = fano_triviality(e)? {
            out.push(c);
        }
        out.push(round_trip(e)?);
        out.push(oracle(e)?);
        out.push(product_identity(e)?);
        out.push(log_identity(e)?);
        out.push(divisor_identity(e)?);
        out.push(potentials_agree(e));
        if small {
            out.push(support(e)?);
        }
    }
    Ok(out)
}
