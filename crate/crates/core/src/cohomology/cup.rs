use std::sync::Arc;

use serde::Serialize;

use crate::brackets::{bracket_delta, bracket_wedge, is_derivation};
use crate::error::{Error, Result};
use crate::grading::Multidegree;
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::{AltMap, MultiMap};
use crate::scalar::{q, sign_q};
use crate::structures::BimoduleStructure;

/// Embeds a multiplication `ν : W × W → W` into `M^{(1,−1,0,…,0)}(E)`.
pub fn nu_on_suspension(e: &Arc<GradedSpace>, v_dim: usize, nu_w: &MultiMap) -> Result<MultiMap> {
    if nu_w.form() != 1 || !nu_w.weight().is_zero() {
        return Err(Error::Degree(format!("nu must have degree (1; 0) on W, got {}", nu_w.degree())));
    }
    if e.dim() != v_dim + nu_w.space().dim() || e.n() != nu_w.space().n() + 1 {
        return Err(Error::SpaceMismatch);
    }
    let mut w = vec![0; e.n()];
    w[0] = -1;
    let entries = nu_w.entries().iter().map(|(k, v)| {
        let key = k.iter().map(|i| i + v_dim).collect();
        (key, Coords::from_pairs(v.iter().map(|(o, x)| (o + v_dim, x.clone()))))
    });
    MultiMap::from_entries(e, 1, Multidegree(w), entries)
}

/// As [`nu_on_suspension`], for a graded symmetric `ν`; it becomes alternating on `E`.
pub fn nu_alternating(e: &Arc<GradedSpace>, v_dim: usize, nu_w: &MultiMap) -> Result<AltMap> {
    let m = nu_on_suspension(e, v_dim, nu_w)?;
    AltMap::canonicalize(&m).map_err(|_| Error::NotAlternating("nu is not graded symmetric".into()))
}

/// `C₁ • C₂ = [C₁,[C₂,ν]^Δ]^Δ`.
pub fn cup_product_delta(c1: &MultiMap, c2: &MultiMap, nu: &MultiMap) -> Result<MultiMap> {
    bracket_delta(c1, &bracket_delta(c2, nu)?)
}

/// `C₁ • C₂ = [C₁,[C₂,ν]^∧]^∧`.
pub fn cup_product_wedge(c1: &AltMap, c2: &AltMap, nu: &AltMap) -> Result<AltMap> {
    bracket_wedge(c1, &bracket_wedge(c2, nu)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Compatibility {
    /// `[P,ν]^Δ = 0`.
    pub by_bracket: bool,
    /// The three expanded identities.
    pub by_equations: bool,
    pub witness: Option<String>,
    /// Whether every `λ(X) − ρ(X)` is a derivation of `ν`.
    pub derivation_family: bool,
}

/// Tests `[P,ν]^Δ = 0` against, for `X ∈ V`, `Y₁,Y₂ ∈ W`:
/// `λ(X)ν(Y₁,Y₂) = ν(λ(X)Y₁,Y₂)`,
/// `ν(Y₁,λ(X)Y₂) = (−1)^{⟨x,y₁⟩} ν(ρ(X)Y₁,Y₂)`,
/// `ρ(X)ν(Y₁,Y₂) = (−1)^{⟨x,y₁⟩} ν(Y₁,ρ(X)Y₂)`.
pub fn check_p_nu_compat(b: &BimoduleStructure, nu_w: &MultiMap) -> Result<Compatibility> {
    if !GradedSpace::same(nu_w.space(), &b.w) {
        return Err(Error::SpaceMismatch);
    }
    let s = b.to_structure()?;
    let nu = nu_on_suspension(&s.e, s.v_dim, nu_w)?;
    let by_bracket = bracket_delta(&s.p, &nu)?.is_zero();
    let v = &b.v;
    let w = &b.w;
    let mul = |a: &Coords, c: &Coords| nu_w.evaluate_coords(&[a, c]);
    let mut witness = None;
    'scan: for x in 0..v.dim() {
        for y1 in 0..w.dim() {
            for y2 in 0..w.dim() {
                let (e1, e2) = (Coords::unit(y1), Coords::unit(y2));
                let sg = sign_q(v.degree(x).odd_with(w.degree(y1)));
                let prod = mul(&e1, &e2);
                let checks = [
                    (b.lam[x].apply(&prod), mul(&b.lam[x].apply(&e1), &e2), "lambda"),
                    (mul(&e1, &b.lam[x].apply(&e2)), mul(&b.rho[x].apply(&e1), &e2).scaled(&sg), "middle"),
                    (b.rho[x].apply(&prod), mul(&e1, &b.rho[x].apply(&e2)).scaled(&sg), "rho"),
                ];
                for (l, r, what) in checks {
                    if l != r {
                        witness = Some(format!("{what} identity fails on ({},{},{})", v.name(x), w.name(y1), w.name(y2)));
                        break 'scan;
                    }
                }
            }
        }
    }
    let mut derivation_family = true;
    for x in 0..v.dim() {
        let d = b.lam[x].add_scaled(&b.rho[x], &q(-1))?;
        if !is_derivation(&d, nu_w)? {
            derivation_family = false;
        }
    }
    Ok(Compatibility { by_bracket, by_equations: witness.is_none(), witness, derivation_family })
}
