//! The numerical obstruction `chi_top = 12 chi(O) - c1^3 / 8` for compact
//! contact threefolds, checked on catalog data.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactpoly::{rat, rat_frac, MultiPoly, Vars};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantsError {
    #[error("c1^3 = {0} is not divisible by 8")]
    NotContactCompatible(i64),
    #[error("no catalog entry named '{0}'")]
    UnknownName(String),
    #[error("bad catalog file: {0}")]
    Catalog(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldInvariants {
    pub name: String,
    pub chi_top: i64,
    #[serde(rename = "chi_O")]
    pub chi_o: i64,
    pub c1_cubed: i64,
}

impl ThreefoldInvariants {
    pub fn new(name: &str, chi_top: i64, chi_o: i64, c1_cubed: i64) -> Self {
        ThreefoldInvariants {
            name: name.to_string(),
            chi_top,
            chi_o,
            c1_cubed,
        }
    }
}

/// `chi_top = 12 chi(O) - c1^3 / 8`, exactly.
pub fn euler_identity_check(inv: &ThreefoldInvariants) -> Result<bool, InvariantsError> {
    if inv.c1_cubed % 8 != 0 {
        return Err(InvariantsError::NotContactCompatible(inv.c1_cubed));
    }
    Ok(inv.chi_top == 12 * inv.chi_o - inv.c1_cubed / 8)
}

/// CP^3, the flag threefold P(T CP^2), and CP^1 x A for an abelian surface A.
pub fn catalog() -> Vec<ThreefoldInvariants> {
    vec![
        ThreefoldInvariants::new("CP3", 4, 1, 64),
        ThreefoldInvariants::new("flag", 6, 1, 48),
        ThreefoldInvariants::new("CP1xA", 0, 0, 0),
    ]
}

fn canonical_name(name: &str) -> &str {
    match name {
        "P(T_CP2)" | "F12" | "F(1,2)" => "flag",
        other => other,
    }
}

/// Looks `name` up in `entries`, then in the built-in catalog.
pub fn lookup(name: &str, entries: &[ThreefoldInvariants]) -> Result<ThreefoldInvariants, InvariantsError> {
    let key = canonical_name(name);
    entries
        .iter()
        .find(|e| e.name == name || e.name == key)
        .cloned()
        .or_else(|| catalog().into_iter().find(|e| e.name == key))
        .ok_or_else(|| InvariantsError::UnknownName(name.to_string()))
}

/// Parses a JSON array of entries.
pub fn load_catalog(json: &str) -> Result<Vec<ThreefoldInvariants>, InvariantsError> {
    serde_json::from_str(json).map_err(|e| InvariantsError::Catalog(e.to_string()))
}

/// Single-field perturbations: `chi_top` and `chi_O` by one, `c1^3` by eight.
pub fn perturbations(inv: &ThreefoldInvariants) -> Vec<ThreefoldInvariants> {
    let mut out = Vec::new();
    for d in [-1, 1] {
        out.push(ThreefoldInvariants {
            chi_top: inv.chi_top + d,
            ..inv.clone()
        });
        out.push(ThreefoldInvariants {
            chi_o: inv.chi_o + d,
            ..inv.clone()
        });
        out.push(ThreefoldInvariants {
            c1_cubed: inv.c1_cubed + 8 * d,
            ..inv.clone()
        });
    }
    out
}

/// Symbolic check in `Q[c1, c2, c3]`: with `L = -c1/2`, the Porteous
/// relation `-c3 - c2 L - c1 L^2 - L^3` equals `-(c3 - 12 chi + c1^3/8)`
/// once `chi = c1 c2 / 24`.
pub fn symbolic_identity_check() -> bool {
    let v = Vars::new(["c1", "c2", "c3"]);
    let c1 = MultiPoly::var(&v, 0);
    let c2 = MultiPoly::var(&v, 1);
    let c3 = MultiPoly::var(&v, 2);
    let l = c1.scale(&rat_frac(-1, 2));
    let porteous = -&c3 - &c2 * &l - &c1 * &l.pow(2) - l.pow(3);
    let chi = (&c1 * &c2).scale(&rat_frac(1, 24));
    let identity = &c3 - &chi.scale(&rat(12)) + c1.pow(3).scale(&rat_frac(1, 8));
    (porteous + identity).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_passes() {
        for inv in catalog() {
            assert_eq!(euler_identity_check(&inv), Ok(true), "{}", inv.name);
            for p in perturbations(&inv) {
                assert_eq!(euler_identity_check(&p), Ok(false));
            }
        }
    }

    #[test]
    fn perturbed_cp3_fails() {
        assert_eq!(euler_identity_check(&ThreefoldInvariants::new("x", 4, 1, 72)), Ok(false));
        assert_eq!(
            euler_identity_check(&ThreefoldInvariants::new("x", 4, 1, 63)),
            Err(InvariantsError::NotContactCompatible(63))
        );
    }

    #[test]
    fn lookup_and_load() {
        assert_eq!(lookup("P(T_CP2)", &[]).unwrap().c1_cubed, 48);
        let extra = load_catalog(r#"[{"name":"X","chi_top":1,"chi_O":2,"c1_cubed":8}]"#).unwrap();
        assert_eq!(lookup("X", &extra).unwrap().chi_o, 2);
        assert!(matches!(lookup("nope", &extra), Err(InvariantsError::UnknownName(_))));
        assert!(load_catalog("{").is_err());
    }

    #[test]
    fn symbolic() {
        assert!(symbolic_identity_check());
    }
}
