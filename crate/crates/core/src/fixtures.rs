//! Fans shipped with the crate.
//!
//! * `p2`, `p1xp1`: Fano surfaces, every series is trivial.
//! * `f2`: the Hirzebruch surface `F_2`.
//! * `chain3`: a semi-Fano surface with eight rays whose divisors
//!   `D1, D2, D3` form a chain of three `(-2)`-curves.

use crate::error::{Error, Result};
use crate::fan::{parse_fan, Fan};

pub const P2: &str = include_str!("../../../fixtures/p2.json");
pub const P1XP1: &str = include_str!("../../../fixtures/p1xp1.json");
pub const F2: &str = include_str!("../../../fixtures/f2.json");
pub const CHAIN3: &str = include_str!("../../../fixtures/chain3.json");

pub const NAMES: [&str; 4] = ["p2", "p1xp1", "f2", "chain3"];

pub fn source(name: &str) -> Option<&'static str> {
    match name {
        "p2" => Some(P2),
        "p1xp1" => Some(P1XP1),
        "f2" => Some(F2),
        "chain3" => Some(CHAIN3),
        _ => None,
    }
}

pub fn fan(name: &str) -> Result<Fan> {
    let src = source(name).ok_or_else(|| Error::Malformed(format!("no fixture named {name:?}")))?;
    parse_fan(src)
}
