//! Rule engine for the log-term coefficient `δ = 3 + h¹ − h⁰` of a knot
//! expression at a declared class of representations.
//!
//! Only the cases with a proof behind them are answered:
//!
//! - hyperbolic and torus knots at non-abelian representations are
//!   γ-regular, so `h¹ = h⁰ = 0` and `δ = 3`;
//! - any knot at an abelian representation whose meridian eigenvalue `a`
//!   keeps `Δ(a⁻²) ≠ 0` has `δ = 2`;
//! - `δ(K₁ # K₂) = δ(K₁) + δ(K₂) − 2`, or `δ(K₁) + δ(K₂)` when the
//!   representation is `±I` on the splitting annulus;
//! - a Whitehead-type satellite of a knot has `δ = 4` under four hypotheses
//!   on the representation, which the caller asserts;
//! - the Hopf link has `δ = 4`.
//!
//! Everything else is refused with an error rather than guessed.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::knotlang::{Atom, KnotExpr};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RepKind {
    AbelianNearIdentity,
    NonAbelian,
    /// A small deformation of the holonomy of a complete hyperbolic
    /// structure. Non-abelian for the purpose of every base rule.
    Holonomy,
}

impl RepKind {
    pub fn is_abelian(self) -> bool {
        matches!(self, RepKind::AbelianNearIdentity)
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepKind::AbelianNearIdentity => "abelian",
            RepKind::NonAbelian => "nonabelian",
            RepKind::Holonomy => "holonomy",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct RepClass {
    pub kind: RepKind,
    /// The representation is `±I` on the annulus of every connected sum.
    pub annulus_central: bool,
    /// Hypotheses (i)–(iv) of the satellite rule, asserted by the caller.
    /// They hold when the representation is a small deformation of the
    /// holonomy.
    pub satellite_hypotheses: [bool; 4],
}

impl RepClass {
    pub fn new(kind: RepKind) -> Self {
        Self {
            kind,
            annulus_central: false,
            satellite_hypotheses: [false; 4],
        }
    }

    pub fn with_annulus_central(mut self, central: bool) -> Self {
        self.annulus_central = central;
        self
    }

    pub fn with_satellite_hypotheses(mut self, hyp: [bool; 4]) -> Self {
        self.satellite_hypotheses = hyp;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaResult {
    pub delta: i32,
    pub h0: i32,
    pub h1_ker: i32,
    pub trace: Vec<String>,
}

impl DeltaResult {
    fn new(delta: i32, h0: i32, trace: Vec<String>) -> Self {
        Self {
            delta,
            h0,
            h1_ker: delta - 3 + h0,
            trace,
        }
    }
}

/// `d1 + d2 − 2`, or `d1 + d2` when the annulus representation is central.
pub fn delta_connected_sum(d1: i32, d2: i32, central: bool) -> i32 {
    if central {
        d1 + d2
    } else {
        d1 + d2 - 2
    }
}

/// `h⁰` is the dimension of the centralizer of the image: 0 for
/// non-abelian representations, 1 for abelian ones, 3 for central ones.
fn isotropy(rep: &RepClass, central: bool) -> i32 {
    match (rep.kind.is_abelian(), central) {
        (false, _) => 0,
        (true, false) => 1,
        (true, true) => 3,
    }
}

pub fn delta_rep(expr: &KnotExpr, rep: &RepClass) -> Result<DeltaResult> {
    let mut trace = Vec::new();
    let delta = walk(expr, rep, &mut trace)?;
    let central = matches!(expr, KnotExpr::ConnectedSum(_)) && rep.annulus_central;
    if matches!(expr, KnotExpr::Atom(Atom::Hopf)) {
        // h⁰(T×I) = 0, h¹ = 1 on the product neighbourhood of the torus
        return Ok(DeltaResult::new(delta, 0, trace));
    }
    Ok(DeltaResult::new(delta, isotropy(rep, central), trace))
}

fn walk(expr: &KnotExpr, rep: &RepClass, trace: &mut Vec<String>) -> Result<i32> {
    match expr {
        KnotExpr::Atom(Atom::Hopf) => {
            trace.push("hopf-link".into());
            Ok(4)
        }
        KnotExpr::Atom(atom) if rep.kind.is_abelian() => {
            trace.push(format!("abelian-lemma({atom})"));
            Ok(2)
        }
        KnotExpr::Atom(Atom::Unknot) => Err(Error::NoRule(
            "the unknot group is ℤ and has no non-abelian representations".into(),
        )),
        KnotExpr::Atom(atom) => {
            debug_assert!(atom.is_hyperbolic() || atom.is_torus_knot());
            trace.push(format!("gamma-regular({atom})"));
            Ok(3)
        }
        KnotExpr::Satellite { .. } if rep.kind.is_abelian() => {
            trace.push(format!("abelian-lemma({expr})"));
            Ok(2)
        }
        KnotExpr::Satellite { companion, .. } => {
            if !companion.is_knot() {
                return Err(Error::Structural("satellite companions must be knots".into()));
            }
            if let Some(i) = rep.satellite_hypotheses.iter().position(|h| !h) {
                return Err(Error::RuleNotDerivable(format!(
                    "satellite hypothesis ({}) is not asserted for {expr}",
                    ["i", "ii", "iii", "iv"][i]
                )));
            }
            trace.push(format!("satellite-lemma({expr})"));
            Ok(4)
        }
        KnotExpr::ConnectedSum(parts) => {
            if let Some(p) = parts.iter().find(|p| !p.is_knot()) {
                return Err(Error::Structural(format!("`#` operand {p} is not a knot")));
            }
            let mut acc: Option<i32> = None;
            for part in parts {
                let d = walk(part, rep, trace)?;
                acc = Some(match acc {
                    None => d,
                    Some(prev) => {
                        trace.push(if rep.annulus_central {
                            "connected-sum-central".into()
                        } else {
                            "connected-sum".into()
                        });
                        delta_connected_sum(prev, d, rep.annulus_central)
                    }
                });
            }
            Ok(acc.expect("connected sums have at least two operands"))
        }
    }
}
