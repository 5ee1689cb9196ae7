//! The `toricmirror` command line interface.

use std::io::Write;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::checks::{self, CheckOutcome};
use crate::coords::CurveCoordinates;
use crate::error::{Error, Result};
use crate::fan::{parse_fan, CurveClass, DiscClass, SeidelSign, ToricContext};
use crate::mirror::{enumerate_classes, DivisorSeries, HoriVafaForm, MirrorEngine, Potential};
use crate::oracle::i_one_over_z;
use crate::series::{QSeries, Rational, SubstitutionMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Validate,
    Walls,
    Semifano,
    G,
    Gij,
    Mirror,
    InverseMirror,
    Delta,
    Gw,
    Potential,
    HoriVafa,
    Batyrev,
    SeidelElement,
    SeidelFan,
    OracleCheck,
    CheckAll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SignArg {
    Plus,
    Minus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Plain,
    Tilde,
}

/// Exact open Gromov–Witten invariants and mirror maps of toric manifolds.
#[derive(Debug, Parser)]
#[command(name = "toricmirror", version)]
pub struct RunConfig {
    #[arg(value_enum)]
    pub command: Command,
    /// Fan document (JSON).
    #[arg(long)]
    pub fan: String,
    /// Truncation order in ample-weight degree, e.g. `8` or `7/2`.
    #[arg(long)]
    pub order: Option<String>,
    /// Ray, 1-based or by label.
    #[arg(long)]
    pub ray: Option<String>,
    #[arg(long)]
    pub i: Option<String>,
    #[arg(long)]
    pub j: Option<String>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Maximal cone (0-based) spanning the basis of N.
    #[arg(long)]
    pub basis_cone: Option<usize>,
    #[arg(long)]
    pub show_permutation: bool,
    #[arg(long, value_enum, default_value = "minus")]
    pub sign: SignArg,
    #[arg(long, value_enum, default_value = "plain")]
    pub form: FormArg,
    /// Curve class for `gw`, comma separated, in reporting coordinates.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    /// Divisor for the divisor-equation form of `gw`.
    #[arg(long)]
    pub divisor: Option<String>,
    /// Raise the order until the ray has at least this many classes.
    #[arg(long)]
    pub min_classes: Option<usize>,
    /// Report Novikov variables in the Psi basis even if the fan names a
    /// curve basis.
    #[arg(long)]
    pub psi_coords: bool,
}

enum Failure {
    Error(Error),
    Property(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Parses `N` or `p/q` into a positive rational.
pub fn parse_order(s: &str) -> Result<Rational> {
    let bad = || Error::Precondition(format!("invalid order {s:?}"));
    let q = match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Rational::new(BigInt::from_str(n.trim()).map_err(|_| bad())?, d)
        }
        None => Rational::from_integer(BigInt::from_str(s.trim()).map_err(|_| bad())?),
    };
    if !q.is_positive() {
        return Err(Error::Precondition("order must be positive".into()));
    }
    Ok(q)
}

fn divisor_name(ctx: &ToricContext, l: usize) -> String {
    match ctx.fan().labels() {
        Some(labels) => labels[l].clone(),
        None => format!("D{}", l + 1),
    }
}

/// Resolves a ray argument: a label, or a 1-based index.
pub fn parse_ray(ctx: &ToricContext, s: &str) -> Result<usize> {
    if let Some(labels) = ctx.fan().labels() {
        if let Some(l) = labels.iter().position(|x| x == s) {
            return Ok(l);
        }
    }
    match s.parse::<usize>() {
        Ok(k) if k >= 1 && k <= ctx.num_rays() => Ok(k - 1),
        _ => Err(Error::Precondition(format!("unknown ray {s:?}"))),
    }
}

struct Session<'a, W: Write> {
    cfg: &'a RunConfig,
    ctx: Arc<ToricContext>,
    coords: CurveCoordinates,
    out: &'a mut W,
}

impl<'a, W: Write> Session<'a, W> {
    fn line(&mut self, s: impl AsRef<str>) -> Outcome {
        writeln!(self.out, "{}", s.as_ref())
            .map_err(|e| Failure::Error(Error::Precondition(format!("write failed: {e}"))))
    }

    fn json(&mut self, v: Value) -> Outcome {
        let text = serde_json::to_string_pretty(&v).expect("values serialize");
        self.line(text)
    }

    fn text(&self) -> bool {
        self.cfg.format == Format::Text
    }

    fn ray_arg(&self, arg: &Option<String>, name: &str) -> Result<usize> {
        let s = arg
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("--{name} is required")))?;
        parse_ray(&self.ctx, s)
    }

    fn ray(&self) -> Result<usize> {
        self.ray_arg(&self.cfg.ray, "ray")
    }

    fn order(&self) -> Result<Rational> {
        let s = self
            .cfg
            .order
            .as_ref()
            .ok_or_else(|| Error::Precondition("--order is required".into()))?;
        parse_order(s)
    }

    /// The order, raised by whole units until `l` indexes enough classes.
    fn order_for(&self, l: Option<usize>) -> Result<Rational> {
        let mut order = self.order()?;
        if let (Some(k), Some(l)) = (self.cfg.min_classes, l) {
            let mut tries = 0;
            while enumerate_classes(&self.ctx, l, &order)?.len() < k {
                tries += 1;
                if tries > 64 {
                    return Err(Error::Precondition(format!(
                        "fewer than {k} classes below order {order}"
                    )));
                }
                order += Rational::from_integer(1.into());
            }
        }
        Ok(order)
    }

    fn engine(&self, l: Option<usize>) -> Result<MirrorEngine> {
        MirrorEngine::new(self.ctx.clone(), self.order_for(l)?)
    }

    fn show(&self, f: &QSeries, prefix: &str) -> String {
        self.coords.to_display(f).render(prefix)
    }

    fn record(&self, f: &QSeries) -> Value {
        serde_json::to_value(self.coords.to_display(f).to_record()).expect("records serialize")
    }

    fn series(&mut self, name: String, f: &QSeries, prefix: &str) -> Outcome {
        if self.text() {
            let s = format!("{name} = {}", self.show(f, prefix));
            self.line(s)
        } else {
            let v = json!({ "name": name, "series": self.record(f) });
            self.json(v)
        }
    }

    fn map(&mut self, s: &SubstitutionMap, target: &str, source: &str) -> Outcome {
        let units = self.coords.map_units(s)?;
        if self.text() {
            for (k, u) in units.iter().enumerate() {
                let line = format!(
                    "{target}{} = {source}{}·({})",
                    k + 1,
                    k + 1,
                    u.render(source)
                );
                self.line(line)?;
            }
            Ok(())
        } else {
            let v: Vec<Value> = units
                .iter()
                .enumerate()
                .map(|(k, u)| {
                    json!({
                        "variable": k + 1,
                        "unit": serde_json::to_value(u.to_record()).expect("records serialize"),
                    })
                })
                .collect();
            self.json(json!({ "target": target, "source": source, "units": v }))
        }
    }

    fn potential(&mut self, name: &str, w: &Potential) -> Outcome {
        if self.text() {
            let s = format!("{name} = {}", w.render(&self.coords, "q"));
            self.line(s)
        } else {
            let v = serde_json::to_value(w.to_records(&self.coords)).expect("records serialize");
            self.json(json!({ "name": name, "terms": v }))
        }
    }

    fn divisor_series(&mut self, name: String, b: &DivisorSeries) -> Outcome {
        if self.text() {
            let mut parts = Vec::new();
            for (l, c) in b.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    parts.push(format!(
                        "({})·{}",
                        self.show(c, "q"),
                        divisor_name(&self.ctx, l)
                    ));
                }
            }
            let body = if parts.is_empty() {
                "0".to_string()
            } else {
                parts.join(" + ")
            };
            self.line(format!("{name} = {body}"))
        } else {
            let coeffs: Vec<Value> = b.coeffs().iter().map(|c| self.record(c)).collect();
            self.json(json!({ "name": name, "coefficients": coeffs }))
        }
    }

    fn report_checks(&mut self, outcomes: &[CheckOutcome]) -> Outcome {
        for c in outcomes {
            let status = if c.passed { "PASS" } else { "FAIL" };
            self.line(format!("{status} {}: {}", c.name, c.detail))?;
            if !c.passed {
                return Err(Failure::Property(c.name.to_string()));
            }
        }
        Ok(())
    }

    fn run(&mut self) -> Outcome {
        let ctx = self.ctx.clone();
        let m = ctx.num_rays();
        if self.cfg.show_permutation {
            let perm: Vec<String> = ctx
                .basis_perm()
                .iter()
                .map(|&i| divisor_name(&ctx, i))
                .collect();
            self.line(format!("permutation: {}", perm.join(" ")))?;
        }
        match self.cfg.command {
            Command::Validate => {
                let basis: Vec<String> =
                    ctx.basis().iter().map(|&i| divisor_name(&ctx, i)).collect();
                if self.text() {
                    self.line(format!(
                        "valid: dim {}, {} rays, {} cones, basis cone {} ({})",
                        ctx.dim(),
                        m,
                        ctx.fan().max_cones().len(),
                        ctx.basis_cone(),
                        basis.join(" ")
                    ))?;
                    for l in 0..m {
                        let row = format!("{:?}", ctx.psi_matrix()[l]);
                        self.line(format!("P[{}] = {row}", divisor_name(&ctx, l)))?;
                    }
                    self.line(format!("c1 = {:?}", ctx.c1()))?;
                    let w: Vec<String> = ctx.ample_weight().iter().map(|x| x.to_string()).collect();
                    self.line(format!("ample weight = [{}]", w.join(", ")))
                } else {
                    let w: Vec<String> = ctx.ample_weight().iter().map(|x| x.to_string()).collect();
                    self.json(json!({
                        "dim": ctx.dim(),
                        "rays": m,
                        "basis_cone": ctx.basis_cone(),
                        "basis_perm": ctx.basis_perm(),
                        "psi_matrix": ctx.psi_matrix(),
                        "c1": ctx.c1(),
                        "ample_weight": w,
                    }))
                }
            }
            Command::Walls => {
                let mut rows = Vec::new();
                for w in ctx.walls() {
                    let class = self.coords.to_display_exponent(&w.class.exponent());
                    rows.push((w, class, ctx.chern(&w.class)));
                }
                if !self.text() {
                    let v: Vec<Value> = rows
                        .iter()
                        .map(|(w, class, c1)| {
                            json!({ "wall": w.wall, "pairings": w.pairings, "class": class, "c1": c1 })
                        })
                        .collect();
                    return self.json(Value::Array(v));
                }
                for (w, class, c1) in rows {
                    let labels: Vec<String> =
                        w.wall.iter().map(|&i| divisor_name(&ctx, i)).collect();
                    self.line(format!(
                        "wall {}: pairings {:?}, class {:?}, c1 = {c1}",
                        labels.join(" "),
                        w.pairings,
                        class
                    ))?;
                }
                Ok(())
            }
            Command::Semifano => {
                let s = ctx.semi_fano_check();
                let witness = s.witness.as_ref().map(|w| {
                    let labels: Vec<String> =
                        w.wall.iter().map(|&i| divisor_name(&ctx, i)).collect();
                    (labels.join(" "), w.pairings.clone(), ctx.chern(&w.class))
                });
                if self.text() {
                    match witness {
                        None => self.line("semi-Fano: yes"),
                        Some((wall, pairings, c1)) => self.line(format!(
                            "semi-Fano: no (wall {wall}, pairings {pairings:?}, c1 = {c1})"
                        )),
                    }
                } else {
                    self.json(json!({
                        "semi_fano": s.holds,
                        "witness": witness.map(|(wall, pairings, c1)| json!({"wall": wall, "pairings": pairings, "c1": c1})),
                    }))
                }
            }
            Command::G => {
                let l = self.ray()?;
                let e = self.engine(Some(l))?;
                self.series(format!("g_{}", l + 1), e.g(l)?, "qv")
            }
            Command::Gij => {
                let i = self.ray_arg(&self.cfg.i, "i")?;
                let j = self.ray_arg(&self.cfg.j, "j")?;
                let e = self.engine(Some(i))?;
                self.series(format!("g_{},{}", i + 1, j + 1), &e.g_ij(i, j)?, "qv")
            }
            Command::Mirror => {
                let e = self.engine(None)?;
                self.map(e.mirror_map(), "q", "qv")
            }
            Command::InverseMirror => {
                let e = self.engine(None)?;
                self.map(e.inverse_mirror_map(), "qv", "q")
            }
            Command::Delta => {
                let l = self.ray()?;
                let e = self.engine(Some(l))?;
                self.series(format!("delta_{}", l + 1), e.delta(l)?, "q")
            }
            Command::Gw => {
                let l = self.ray()?;
                let alpha = self.alpha()?;
                let e = self.engine(Some(l))?;
                let beta = DiscClass {
                    ray: l,
                    curve: alpha,
                };
                let (name, value) = match &self.cfg.divisor {
                    None => ("n1", e.open_gw(&beta)?),
                    Some(d) => {
                        let i = parse_ray(&ctx, d)?;
                        ("n11", e.open_gw_divisor(&beta, i)?)
                    }
                };
                if self.text() {
                    self.line(format!("{name} = {value}"))
                } else {
                    self.json(json!({ "name": name, "value": value.to_string() }))
                }
            }
            Command::Potential => {
                let e = self.engine(None)?;
                self.potential("W", &e.disc_potential())
            }
            Command::HoriVafa => {
                let e = self.engine(None)?;
                let (form, name) = match self.cfg.form {
                    FormArg::Plain => (HoriVafaForm::Plain, "W_HV"),
                    FormArg::Tilde => (HoriVafaForm::Tilde, "W~_HV"),
                };
                self.potential(name, &e.hori_vafa(form))
            }
            Command::Batyrev => {
                let arg = self.cfg.j.clone().or_else(|| self.cfg.ray.clone());
                let j = self.ray_arg(&arg, "ray")?;
                let e = self.engine(None)?;
                self.divisor_series(format!("B_{}", j + 1), &e.batyrev_element(j)?)
            }
            Command::SeidelElement => {
                let j = self.ray()?;
                let e = self.engine(None)?;
                self.divisor_series(format!("S_{}", j + 1), &e.seidel_element(j)?)
            }
            Command::SeidelFan => {
                let j = self.ray()?;
                let sign = match self.cfg.sign {
                    SignArg::Plus => SeidelSign::Plus,
                    SignArg::Minus => SeidelSign::Minus,
                };
                let fan = ctx.seidel_fan(j, sign)?;
                ToricContext::new(fan.clone(), None)?;
                self.line(fan.to_json())
            }
            Command::OracleCheck => {
                let e = self.engine(None)?;
                let i = i_one_over_z(&ctx, e.order())?;
                if !self.text() {
                    let coeffs: Vec<Value> = i.coeffs().iter().map(|c| self.record(c)).collect();
                    self.json(json!({ "name": "I_1/z", "coefficients": coeffs }))?;
                }
                let outcome = checks::oracle(&e)?;
                self.report_checks(&[outcome])
            }
            Command::CheckAll => {
                let engine = match ctx.is_semi_fano() {
                    true => Some(self.engine(None)?),
                    false => None,
                };
                if engine.is_none() {
                    self.line("note: not semi-Fano, series checks skipped")?;
                }
                let outcomes = checks::all(&ctx, engine.as_ref())?;
                self.report_checks(&outcomes)
            }
        }
    }

    fn alpha(&self) -> Result<CurveClass> {
        let r = self.ctx.num_vars();
        let a: Vec<i32> = match &self.cfg.alpha {
            None => vec![0; r],
            Some(s) if s.trim().is_empty() => vec![0; r],
            Some(s) => s
                .split(',')
                .map(|x| x.trim().parse::<i32>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| Error::Precondition(format!("invalid --alpha {s:?}")))?,
        };
        if a.len() != r {
            return Err(Error::Precondition(format!("--alpha needs {r} entries")));
        }
        let e = self.coords.from_display_exponent(&a);
        Ok(CurveClass(e.into_iter().map(i64::from).collect()))
    }
}

/// Runs the tool; returns the process exit code (0 ok, 1 error, 2 failed
/// property check).
pub fn run<I, T, W, E>(args: I, out: &mut W, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    W: Write,
    E: Write,
{
    let cfg = match RunConfig::try_parse_from(args) {
        Ok(cfg) => cfg,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = write!(err, "{e}");
            return code;
        }
    };
    match execute(&cfg, out) {
        Ok(()) => 0,
        Err(Failure::Error(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Property(name)) => {
            let _ = writeln!(err, "property check failed: {name}");
            2
        }
    }
}

fn execute<W: Write>(cfg: &RunConfig, out: &mut W) -> Outcome {
    let text = std::fs::read_to_string(&cfg.fan)
        .map_err(|e| Error::Malformed(format!("{}: {e}", cfg.fan)))?;
    let fan = parse_fan(&text)?;
    let ctx = Arc::new(ToricContext::new(fan, cfg.basis_cone)?);
    let coords = if cfg.psi_coords {
        CurveCoordinates::psi(&ctx)
    } else {
        CurveCoordinates::for_context(&ctx)?
    };
    Session {
        cfg,
        ctx,
        coords,
        out,
    }
    .run()
}
