use std::fmt;
use std::str::FromStr;

use super::{Fan, ToricContext};
use crate::error::{Error, Result};

/// Which Seidel space: `E_j` uses `v_inf = (-1, v_j)`, `E_j^-` uses `(-1, -v_j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeidelSign {
    Plus,
    Minus,
}

impl FromStr for SeidelSign {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plus" | "+" => Ok(SeidelSign::Plus),
            "minus" | "-" => Ok(SeidelSign::Minus),
            _ => Err(Error::Precondition(format!("unknown sign {s:?}"))),
        }
    }
}

impl fmt::Display for SeidelSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeidelSign::Plus => "plus",
            SeidelSign::Minus => "minus",
        })
    }
}

impl ToricContext {
    /// Fan of the Seidel space over `P^1` attached to ray `j`.
    ///
    /// Rays are ordered `v_0, v_inf, (0, v_1), .., (0, v_m)`; cones are all
    /// `sigma + v_0` followed by all `sigma + v_inf`.
    pub fn seidel_fan(&self, j: usize, sign: SeidelSign) -> Result<Fan> {
        self.check_ray(j)?;
        let n = self.dim();
        let fan = self.fan();
        let mut v0 = vec![0i64; n + 1];
        v0[0] = 1;
        let s = match sign {
            SeidelSign::Plus => 1,
            SeidelSign::Minus => -1,
        };
        let mut vinf = vec![-1i64];
        vinf.extend(fan.ray(j).coords().iter().map(|x| s * x));
        let mut rays = vec![v0, vinf];
        for r in fan.rays() {
            let mut v = vec![0i64];
            v.extend_from_slice(r.coords());
            rays.push(v);
        }
        let mut cones = Vec::with_capacity(2 * fan.max_cones().len());
        for apex in [0usize, 1] {
            for sigma in fan.max_cones() {
                let mut cone = vec![apex];
                cone.extend(sigma.iter().map(|i| i + 2));
                cones.push(cone);
            }
        }
        let mut labels = vec!["v0".to_string(), "vinf".to_string()];
        labels.extend((0..fan.num_rays()).map(|l| fan.label(l)));
        Fan::new(n + 1, rays, cones)?.with_labels(labels)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::parse_fan;

    #[test]
    fn hirzebruch_two_minus_space() {
        let c = ToricContext::new(
            parse_fan(
                r#"{"dim":2,"rays":[[1,0],[0,1],[-1,2],[0,-1]],"max_cones":[[0,1],[1,2],[2,3],[3,0]]}"#,
            )
            .unwrap(),
            None,
        )
        .unwrap();
        let e = c.seidel_fan(1, SeidelSign::Minus).unwrap();
        let rays: Vec<Vec<i64>> = e.rays().iter().map(|r| r.0.clone()).collect();
        assert_eq!(
            rays,
            vec![
                vec![1, 0, 0],
                vec![-1, 0, -1],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![0, -1, 2],
                vec![0, 0, -1]
            ]
        );
        assert_eq!(e.max_cones().len(), 8);
        let ctx = ToricContext::new(e, None).unwrap();
        assert_eq!(ctx.num_rays(), 6);
    }

    #[test]
    fn projective_line_gives_first_hirzebruch_surface() {
        let c = ToricContext::new(
            parse_fan(r#"{"dim":1,"rays":[[1],[-1]],"max_cones":[[0],[1]]}"#).unwrap(),
            None,
        )
        .unwrap();
        for sign in [SeidelSign::Plus, SeidelSign::Minus] {
            let e = ToricContext::new(c.seidel_fan(0, sign).unwrap(), None).unwrap();
            // F_1 has a single (-1)-curve: exactly one wall class with c1 = 1
            let c1: Vec<i64> = e.walls().iter().map(|w| e.chern(&w.class)).collect();
            assert_eq!(c1.iter().filter(|&&x| x == 1).count(), 1, "{c1:?}");
            assert_eq!(e.dim(), 2);
        }
    }
}
