use std::collections::HashMap;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::Fan;
use crate::error::{Error, Result};
use crate::linalg::{det, integer_inverse};
use crate::lp::{self, Constraint, Outcome, Relation};
use crate::series::{Exponent, Grading};

/// A class in `H_2(X, Z)`, stored by its coordinates in the `Psi_k` basis.
///
/// Since `D_{n+r} · Psi_k = delta_{kr}`, the coordinates are also the
/// pairings of the class with the non-basis divisors, i.e. the exponents of
/// the Novikov monomial `q^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CurveClass(pub Vec<i64>);

impl CurveClass {
    pub fn zero(num_vars: usize) -> Self {
        CurveClass(vec![0; num_vars])
    }

    pub fn comps(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn exponent(&self) -> Exponent {
        self.0.iter().map(|&x| x as i32).collect()
    }

    pub fn scaled(&self, k: i64) -> CurveClass {
        CurveClass(self.0.iter().map(|x| x * k).collect())
    }

    pub fn plus(&self, other: &CurveClass) -> CurveClass {
        CurveClass(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

/// Disc class `beta_l + alpha` bounded by a Lagrangian torus fiber.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DiscClass {
    pub ray: usize,
    pub curve: CurveClass,
}

impl DiscClass {
    pub fn basic(ray: usize, num_vars: usize) -> Self {
        DiscClass {
            ray,
            curve: CurveClass::zero(num_vars),
        }
    }

    /// Maslov index `2 + 2 c1(alpha)`.
    pub fn maslov(&self, ctx: &ToricContext) -> i64 {
        2 + 2 * ctx.chern(&self.curve)
    }
}

/// Class of the toric curve attached to a wall of the fan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallClass {
    /// Sorted ray indices spanning the wall.
    pub wall: Vec<usize>,
    /// The two maximal cones meeting along the wall.
    pub cones: (usize, usize),
    /// `D_l · d` for every ray `l`.
    pub pairings: Vec<i64>,
    pub class: CurveClass,
}

/// Outcome of the semi-Fano test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SemiFano {
    pub holds: bool,
    /// First wall class with negative Chern number, when the test fails.
    pub witness: Option<WallClass>,
}

/// A validated smooth complete fan together with the data derived from a
/// choice of basis cone.
#[derive(Debug, Clone)]
pub struct ToricContext {
    fan: Fan,
    basis_cone: usize,
    basis: Vec<usize>,
    extra: Vec<usize>,
    dual_basis: Vec<Vec<i64>>,
    psi: Vec<Vec<i64>>,
    c1: Vec<i64>,
    walls: Vec<WallClass>,
    ample_weight: Vec<BigRational>,
    grading: Arc<Grading>,
}

impl ToricContext {
    /// Validates `fan` and fixes the basis cone (argument, then the
    /// document's `basis_cone`, then the first maximal cone).
    pub fn new(fan: Fan, basis_cone: Option<usize>) -> Result<ToricContext> {
        let n = fan.dim();
        let m = fan.num_rays();
        let cones = fan.max_cones();
        if cones.is_empty() {
            return Err(Error::Malformed("no maximal cones".into()));
        }
        for (c, cone) in cones.iter().enumerate() {
            let rows: Vec<Vec<i64>> = cone.iter().map(|&i| fan.ray(i).0.clone()).collect();
            let d = det(&rows);
            if d.abs() != 1 {
                return Err(Error::NonUnimodular { cone: c, det: d });
            }
        }
        if let Some(l) = (0..m).find(|l| !cones.iter().any(|c| c.contains(l))) {
            return Err(Error::UnusedRay(l));
        }

        // wall -> [(cone, opposite ray)], in order of first appearance
        let mut wall_order: Vec<Vec<usize>> = Vec::new();
        let mut incident: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (c, cone) in cones.iter().enumerate() {
            for (skip, &opp) in cone.iter().enumerate() {
                let mut wall: Vec<usize> = cone
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &r)| r)
                    .collect();
                wall.sort_unstable();
                let entry = incident.entry(wall.clone()).or_default();
                if entry.is_empty() {
                    wall_order.push(wall);
                }
                entry.push((c, opp));
            }
        }
        for wall in &wall_order {
            let count = incident[wall].len();
            if count != 2 {
                return Err(Error::WallSharing {
                    wall: wall.clone(),
                    count,
                });
            }
        }
        check_connected(cones.len(), wall_order.iter().map(|w| &incident[w]))?;

        let basis_cone = basis_cone.or(fan.basis_cone()).unwrap_or(0);
        if basis_cone >= cones.len() {
            return Err(Error::BasisCone(basis_cone));
        }
        let basis = cones[basis_cone].clone();
        let extra: Vec<usize> = (0..m).filter(|l| !basis.contains(l)).collect();
        let basis_rows: Vec<Vec<i64>> = basis.iter().map(|&i| fan.ray(i).0.clone()).collect();
        let inv = integer_inverse(&basis_rows).expect("unimodular cone");
        // nu_p = p-th column of the inverse of the row matrix of basis rays
        let dual_basis: Vec<Vec<i64>> = (0..n)
            .map(|p| (0..n).map(|i| inv[i][p]).collect())
            .collect();

        let mut psi = vec![vec![0i64; m - n]; m];
        for (k, &e) in extra.iter().enumerate() {
            psi[e][k] = 1;
            for (p, &b) in basis.iter().enumerate() {
                psi[b][k] = -fan.ray(e).dot(&dual_basis[p]);
            }
        }
        let c1: Vec<i64> = (0..m - n)
            .map(|k| psi.iter().map(|row| row[k]).sum())
            .collect();

        let mut ctx = ToricContext {
            fan,
            basis_cone,
            basis,
            extra,
            dual_basis,
            psi,
            c1,
            walls: Vec::new(),
            ample_weight: Vec::new(),
            grading: Arc::new(Grading::uniform(m - n)),
        };

        let mut walls = Vec::with_capacity(wall_order.len());
        for wall in wall_order {
            let inc = &incident[&wall];
            let (c0, u0) = inc[0];
            let (c1_, u1) = inc[1];
            walls.push(ctx.wall_class(wall, (c0, u0), (c1_, u1))?);
        }
        ctx.walls = walls;
        ctx.ample_weight = ample_weight(&ctx.walls, m - n)?;
        ctx.grading = Arc::new(Grading::new(&ctx.ample_weight));
        Ok(ctx)
    }

    /// Solves the wall relation `u + u' + sum a_i w_i = 0`.
    fn wall_class(
        &self,
        wall: Vec<usize>,
        (cone_a, u): (usize, usize),
        (cone_b, u_opp): (usize, usize),
    ) -> Result<WallClass> {
        let n = self.dim();
        let mut spanning: Vec<usize> = wall.clone();
        spanning.push(u_opp);
        let rows: Vec<Vec<i64>> = spanning
            .iter()
            .map(|&i| self.fan.ray(i).0.clone())
            .collect();
        let inv = integer_inverse(&rows).expect("unimodular cone");
        // coefficients of u in the basis `spanning`
        let target = &self.fan.ray(u).0;
        let coeffs: Vec<i64> = (0..n)
            .map(|j| (0..n).map(|i| target[i] * inv[i][j]).sum())
            .collect();
        if coeffs[n - 1] != -1 {
            return Err(Error::Malformed(format!(
                "cones {cone_a} and {cone_b} overlap across wall {wall:?}"
            )));
        }
        let mut pairings = vec![0i64; self.num_rays()];
        pairings[u] = 1;
        pairings[u_opp] = 1;
        for (i, &w) in wall.iter().enumerate() {
            pairings[w] = -coeffs[i];
        }
        let class = self
            .class_from_pairings(&pairings)
            .expect("wall relation is a linear relation among rays");
        Ok(WallClass {
            wall,
            cones: (cone_a, cone_b),
            pairings,
            class,
        })
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn dim(&self) -> usize {
        self.fan.dim()
    }

    pub fn num_rays(&self) -> usize {
        self.fan.num_rays()
    }

    /// Number of Novikov variables, `m - n`.
    pub fn num_vars(&self) -> usize {
        self.extra.len()
    }

    pub fn basis_cone(&self) -> usize {
        self.basis_cone
    }

    /// Rays spanning the basis cone, `v_1..v_n` after relabeling.
    pub fn basis(&self) -> &[usize] {
        &self.basis
    }

    /// Remaining rays; `extra()[k]` is the ray dual to `Psi_k`.
    pub fn extra(&self) -> &[usize] {
        &self.extra
    }

    /// Relabeling placing the basis cone first: internal position -> input ray.
    pub fn basis_perm(&self) -> Vec<usize> {
        self.basis.iter().chain(&self.extra).copied().collect()
    }

    pub fn var_of_ray(&self, l: usize) -> Option<usize> {
        self.extra.iter().position(|&e| e == l)
    }

    pub fn basis_position(&self, l: usize) -> Option<usize> {
        self.basis.iter().position(|&b| b == l)
    }

    pub fn dual_basis(&self) -> &[Vec<i64>] {
        &self.dual_basis
    }

    /// `P[l][k] = D_l · Psi_k`, rows indexed by input ray.
    pub fn psi_matrix(&self) -> &[Vec<i64>] {
        &self.psi
    }

    pub fn c1(&self) -> &[i64] {
        &self.c1
    }

    pub fn walls(&self) -> &[WallClass] {
        &self.walls
    }

    pub fn ample_weight(&self) -> &[BigRational] {
        &self.ample_weight
    }

    pub fn grading(&self) -> &Arc<Grading> {
        &self.grading
    }

    pub fn check_ray(&self, l: usize) -> Result<()> {
        if l < self.num_rays() {
            Ok(())
        } else {
            Err(Error::RayIndex(l))
        }
    }

    /// `<nu_p, v_l>` for each basis position `p`: the exponent of `z^{v_l}`.
    pub fn ray_coords(&self, l: usize) -> Vec<i64> {
        self.dual_basis
            .iter()
            .map(|nu| self.fan.ray(l).dot(nu))
            .collect()
    }

    pub fn pairing(&self, l: usize, d: &CurveClass) -> i64 {
        self.psi[l].iter().zip(&d.0).map(|(a, b)| a * b).sum()
    }

    pub fn pairings(&self, d: &CurveClass) -> Vec<i64> {
        (0..self.num_rays()).map(|l| self.pairing(l, d)).collect()
    }

    /// Chern number `c1(d) = sum_l D_l · d`.
    pub fn chern(&self, d: &CurveClass) -> i64 {
        self.c1.iter().zip(&d.0).map(|(a, b)| a * b).sum()
    }

    /// Ample-weighted degree `w · d`.
    pub fn degree(&self, d: &CurveClass) -> BigRational {
        self.grading.degree(&d.exponent())
    }

    /// The class with the given divisor pairings, if they satisfy the linear
    /// relation `sum_l y_l v_l = 0`.
    pub fn class_from_pairings(&self, pairings: &[i64]) -> Option<CurveClass> {
        if pairings.len() != self.num_rays() {
            return None;
        }
        let n = self.dim();
        let balanced = (0..n).all(|i| {
            pairings
                .iter()
                .enumerate()
                .map(|(l, y)| y * self.fan.ray(l).0[i])
                .sum::<i64>()
                == 0
        });
        if !balanced {
            return None;
        }
        Some(CurveClass(
            self.extra.iter().map(|&e| pairings[e]).collect(),
        ))
    }

    pub fn semi_fano_check(&self) -> SemiFano {
        let witness = self
            .walls
            .iter()
            .find(|w| self.chern(&w.class) < 0)
            .cloned();
        SemiFano {
            holds: witness.is_none(),
            witness,
        }
    }

    pub fn is_semi_fano(&self) -> bool {
        self.semi_fano_check().holds
    }

    pub fn require_semi_fano(&self) -> Result<()> {
        match self.semi_fano_check().witness {
            None => Ok(()),
            Some(w) => Err(Error::NotSemiFano {
                c1: self.chern(&w.class),
                wall: w.wall,
            }),
        }
    }

    /// The wall with the given (unordered) ray set.
    pub fn wall(&self, rays: &[usize]) -> Option<&WallClass> {
        let mut key = rays.to_vec();
        key.sort_unstable();
        self.walls.iter().find(|w| w.wall == key)
    }
}

fn check_connected<'a>(
    cones: usize,
    walls: impl Iterator<Item = &'a Vec<(usize, usize)>>,
) -> Result<()> {
    let mut parent: Vec<usize> = (0..cones).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for inc in walls {
        let a = find(&mut parent, inc[0].0);
        let b = find(&mut parent, inc[1].0);
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    if (0..cones).all(|c| find(&mut parent, c) == root) {
        Ok(())
    } else {
        Err(Error::Disconnected)
    }
}

/// Strictly positive functional on wall classes: minimizes the total wall
/// degree subject to every wall having degree at least one.
fn ample_weight(walls: &[WallClass], num_vars: usize) -> Result<Vec<BigRational>> {
    if num_vars == 0 {
        return Ok(Vec::new());
    }
    let q = |x: i64| BigRational::from_integer(x.into());
    let constraints: Vec<Constraint> = walls
        .iter()
        .map(|w| Constraint {
            coeffs: w.class.0.iter().map(|&x| q(x)).collect(),
            relation: Relation::Ge,
            rhs: BigRational::one(),
        })
        .collect();
    let mut objective = vec![BigRational::zero(); num_vars];
    for w in walls {
        for (o, &x) in objective.iter_mut().zip(&w.class.0) {
            *o -= q(x);
        }
    }
    match lp::maximize(num_vars, &constraints, &objective, true) {
        Outcome::Optimal { point, .. } => Ok(point),
        Outcome::Infeasible => Err(Error::NonProjective),
        // Only possible when the wall classes do not span H_2; any feasible
        // point still works, so fall back to a pure feasibility solve.
        Outcome::Unbounded => {
            match lp::maximize(
                num_vars,
                &constraints,
                &vec![BigRational::zero(); num_vars],
                true,
            ) {
                Outcome::Optimal { point, .. } => Ok(point),
                _ => Err(Error::NonProjective),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    fn ctx(src: &str) -> ToricContext {
        ToricContext::new(parse_fan(src).unwrap(), None).unwrap()
    }

    const F2: &str =
        r#"{"dim":2,"rays":[[1,0],[0,1],[-1,2],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#;
    const P2: &str = r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2],[2,0]]}"#;

    #[test]
    fn hirzebruch_two_pairing_matrix() {
        let c = ctx(F2);
        assert_eq!(
            c.psi_matrix(),
            &[vec![1, 0], vec![-2, 1], vec![1, 0], vec![0, 1]]
        );
        assert_eq!(c.c1(), &[0, 2]);
        assert_eq!(c.basis(), &[0, 1]);
        assert_eq!(c.extra(), &[2, 3]);
    }

    #[test]
    fn projective_plane_pairing_matrix() {
        let c = ctx(P2);
        assert_eq!(c.psi_matrix(), &[vec![1], vec![1], vec![1]]);
        assert_eq!(c.c1(), &[3]);
        for w in c.walls() {
            assert_eq!(w.class, CurveClass(vec![1]));
        }
        assert_eq!(c.walls().len(), 3);
    }

    #[test]
    fn incomplete_fan_is_rejected() {
        let fan = parse_fan(r#"{"dim":2,"rays":[[1,0],[0,1],[-1,-1]],"max_cones":[[0,1],[1,2]]}"#)
            .unwrap();
        let err = ToricContext::new(fan, None).unwrap_err();
        assert!(err.to_string().contains("shared by 1 cone"), "{err}");
    }

    #[test]
    fn singular_cone_is_rejected() {
        let fan =
            parse_fan(r#"{"dim":2,"rays":[[1,0],[1,2],[-1,-1]],"max_cones":[[0,1],[1,2],[2,0]]}"#)
                .unwrap();
        assert!(matches!(
            ToricContext::new(fan, None),
            Err(Error::NonUnimodular { cone: 0, det: 2 })
        ));
    }

    #[test]
    fn hirzebruch_two_wall_classes() {
        let c = ctx(F2);
        let w = c.wall(&[1]).unwrap();
        assert_eq!(w.pairings, vec![1, -2, 1, 0]);
        assert_eq!(w.class, CurveClass(vec![1, 0]));
        let w = c.wall(&[0]).unwrap();
        assert_eq!(w.pairings, vec![0, 1, 0, 1]);
        assert_eq!(w.class, CurveClass(vec![0, 1]));
        for w in c.walls() {
            assert_eq!(c.pairings(&w.class), w.pairings);
        }
    }

    #[test]
    fn ample_weight_is_positive_on_walls() {
        for src in [F2, P2] {
            let c = ctx(src);
            for w in c.walls() {
                assert!(c.degree(&w.class) > BigRational::zero());
            }
        }
        assert_eq!(
            ctx(F2).ample_weight(),
            &[BigRational::one(), BigRational::one()]
        );
    }

    #[test]
    fn semi_fano_detection() {
        assert!(ctx(F2).semi_fano_check().holds);
        assert!(ctx(P2).semi_fano_check().holds);
        let f3 = ctx(
            r#"{"dim":2,"rays":[[1,0],[0,1],[-1,3],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
        );
        let check = f3.semi_fano_check();
        assert!(!check.holds);
        let w = check.witness.unwrap();
        assert_eq!(w.pairings, vec![1, -3, 1, 0]);
        assert_eq!(f3.chern(&w.class), -1);
        assert!(f3.require_semi_fano().is_err());
    }

    #[test]
    fn maslov_index_of_disc_classes() {
        let c = ctx(F2);
        assert_eq!(DiscClass::basic(1, 2).maslov(&c), 2);
        let d = DiscClass {
            ray: 1,
            curve: CurveClass(vec![0, 1]),
        };
        assert_eq!(d.maslov(&c), 6);
    }

    #[test]
    fn other_basis_cone_preserves_chern_numbers() {
        let a = ctx(F2);
        let b = ToricContext::new(parse_fan(F2).unwrap(), Some(2)).unwrap();
        assert_eq!(b.basis(), &[2, 3]);
        for (wa, wb) in a.walls().iter().zip(b.walls()) {
            assert_eq!(wa.wall, wb.wall);
            assert_eq!(wa.pairings, wb.pairings);
            assert_eq!(a.chern(&wa.class), b.chern(&wb.class));
        }
    }
}
