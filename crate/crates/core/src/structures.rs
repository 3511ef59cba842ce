//! Recognition of algebraic structures as square-zero elements.
//!
//! Every check here runs twice: once through a bracket (`[μ,μ] = 0`) and
//! once through a brute-force scan of the defining axioms on basis tuples.
//! The two verdicts must agree; a disagreement is an internal error.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::brackets::{bracket_delta, bracket_wedge, graded_commutator, GradedEndo};
use crate::error::{Error, Result};
use crate::grading::Multidegree;
use crate::gspace::{disjoint_names, suspend, Coords, GradedSpace};
use crate::multimap::{AltMap, MultiMap};
use crate::scalar::sign_q;

/// Outcome of a two-route structure check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub by_bracket: bool,
    pub by_axioms: bool,
    /// First basis tuple on which an axiom fails, by basis names.
    pub witness: Option<String>,
}

impl Recognition {
    pub fn agree(&self) -> bool {
        self.by_bracket == self.by_axioms
    }

    /// The common verdict, or an invariant error if the routes disagree.
    pub fn verdict(&self) -> Result<bool> {
        if self.agree() {
            Ok(self.by_bracket)
        } else {
            Err(Error::Invariant(format!(
                "bracket test says {} but axiom scan says {}",
                self.by_bracket, self.by_axioms
            )))
        }
    }
}

fn names(space: &GradedSpace, idx: &[usize]) -> String {
    let v: Vec<&str> = idx.iter().map(|&i| space.name(i)).collect();
    format!("({})", v.join(","))
}

/// `(V, μ)` with `μ` bilinear of weight zero.
#[derive(Clone, Debug)]
pub struct AlgebraStructure {
    pub space: Arc<GradedSpace>,
    pub mu: MultiMap,
}

impl AlgebraStructure {
    pub fn new(mu: MultiMap) -> Result<Self> {
        if mu.form() != 1 || !mu.weight().is_zero() {
            return Err(Error::Degree(format!(
                "multiplication must have degree (1; 0), got {}",
                mu.degree()
            )));
        }
        Ok(AlgebraStructure { space: mu.space().clone(), mu })
    }

    fn mul(&self, a: &Coords, b: &Coords) -> Coords {
        self.mu.evaluate_coords(&[a, b])
    }

    /// `[μ,μ]^Δ = 0` against `μ(μ(a,b),c) = μ(a,μ(b,c))` on basis triples.
    pub fn associativity(&self) -> Recognition {
        let by_bracket = bracket_delta(&self.mu, &self.mu).expect("same space").is_zero();
        let mut witness = None;
        let d = self.space.dim();
        'scan: for a in 0..d {
            for b in 0..d {
                for c in 0..d {
                    let (ea, eb, ec) = (Coords::unit(a), Coords::unit(b), Coords::unit(c));
                    let l = self.mul(&self.mul(&ea, &eb), &ec);
                    let r = self.mul(&ea, &self.mul(&eb, &ec));
                    if l != r {
                        witness = Some(names(&self.space, &[a, b, c]));
                        break 'scan;
                    }
                }
            }
        }
        Recognition { by_bracket, by_axioms: witness.is_none(), witness }
    }

    pub fn is_associative(&self) -> Result<bool> {
        self.associativity().verdict()
    }

    /// Requires `μ` graded anticommutative.
    pub fn as_alternating(&self) -> Result<AltMap> {
        AltMap::canonicalize(&self.mu)
    }

    /// `[μ,μ]^∧ = 0` against the graded Jacobi identity
    /// `[X,[Y,Z]] = [[X,Y],Z] + (−1)^{⟨x,y⟩}[Y,[X,Z]]` on basis triples.
    pub fn lie_check(&self) -> Result<Recognition> {
        let alt = self.as_alternating()?;
        let by_bracket = bracket_wedge(&alt, &alt)?.is_zero();
        let witness = jacobi_witness(&self.space, &self.mu);
        Ok(Recognition { by_bracket, by_axioms: witness.is_none(), witness })
    }

    pub fn is_graded_lie(&self) -> Result<bool> {
        self.lie_check()?.verdict()
    }

    /// The regular bimodule: `W = V`, `λ(X)Y = μ(X,Y)`, `ρ(X)Y = (−1)^{⟨x,y⟩} μ(Y,X)`.
    pub fn regular_bimodule(&self) -> Result<BimoduleStructure> {
        let w = Arc::new(disjoint_names(&self.space, &self.space)?);
        let d = self.space.dim();
        let mut lam = Vec::with_capacity(d);
        let mut rho = Vec::with_capacity(d);
        for x in 0..d {
            let deg = self.space.degree(x).clone();
            let ex = Coords::unit(x);
            let l = (0..d).map(|y| (y, self.mul(&ex, &Coords::unit(y))));
            lam.push(GradedEndo::new(&w, deg.clone(), l)?);
            let r = (0..d).map(|y| {
                let s = sign_q(self.space.degree(x).odd_with(self.space.degree(y)));
                (y, self.mul(&Coords::unit(y), &ex).scaled(&s))
            });
            rho.push(GradedEndo::new(&w, deg, r)?);
        }
        BimoduleStructure::new(self.mu.clone(), w, lam, rho)
    }
}

fn jacobi_witness(space: &Arc<GradedSpace>, mu: &MultiMap) -> Option<String> {
    let d = space.dim();
    let m = |a: &Coords, b: &Coords| mu.evaluate_coords(&[a, b]);
    for x in 0..d {
        for y in 0..d {
            for z in 0..d {
                let (ex, ey, ez) = (Coords::unit(x), Coords::unit(y), Coords::unit(z));
                let lhs = m(&ex, &m(&ey, &ez));
                let mut rhs = m(&m(&ex, &ey), &ez);
                let s = sign_q(space.degree(x).odd_with(space.degree(y)));
                rhs.add_scaled(&m(&ey, &m(&ex, &ez)), &s);
                if lhs != rhs {
                    return Some(names(space, &[x, y, z]));
                }
            }
        }
    }
    None
}

/// Shifts `V`-coordinates into the suspension (`offset = 0`) or `W`-coordinates (`offset = dim V`).
fn shift(c: &Coords, offset: usize) -> Coords {
    Coords::from_pairs(c.iter().map(|(i, x)| (i + offset, x.clone())))
}

fn endo_apply(family: &[GradedEndo], x: &Coords, y: &Coords) -> Coords {
    let mut out = Coords::default();
    for (i, c) in x.iter() {
        out.add_scaled(&family[i].apply(y), c);
    }
    out
}

fn check_family(v: &GradedSpace, w: &Arc<GradedSpace>, fam: &[GradedEndo], what: &str) -> Result<()> {
    if fam.len() != v.dim() {
        return Err(Error::Dimension { expected: v.dim(), got: fam.len() });
    }
    for (i, e) in fam.iter().enumerate() {
        if !GradedSpace::same(e.space(), w) {
            return Err(Error::SpaceMismatch);
        }
        if !e.is_zero() && e.degree() != v.degree(i) {
            return Err(Error::Degree(format!(
                "{what}({}) must have degree {} (weight 0)",
                v.name(i),
                v.degree(i)
            )));
        }
    }
    Ok(())
}

/// A bimodule `(W, λ, ρ)` over `(V, μ)`; `λ`, `ρ` are indexed by the basis of `V`.
#[derive(Clone, Debug)]
pub struct BimoduleStructure {
    pub v: Arc<GradedSpace>,
    pub w: Arc<GradedSpace>,
    pub mu: MultiMap,
    pub lam: Vec<GradedEndo>,
    pub rho: Vec<GradedEndo>,
}

/// The suspension `E` with the structure element on it.
#[derive(Clone, Debug)]
pub struct Suspended<T> {
    pub e: Arc<GradedSpace>,
    pub v_dim: usize,
    pub p: T,
}

impl BimoduleStructure {
    pub fn new(mu: MultiMap, w: Arc<GradedSpace>, lam: Vec<GradedEndo>, rho: Vec<GradedEndo>) -> Result<Self> {
        let v = mu.space().clone();
        AlgebraStructure::new(mu.clone())?;
        if v.n() != w.n() {
            return Err(Error::Dimension { expected: v.n(), got: w.n() });
        }
        check_family(&v, &w, &lam, "lambda")?;
        check_family(&v, &w, &rho, "rho")?;
        Ok(BimoduleStructure { v, w, mu, lam, rho })
    }

    /// `P = μ + λ + ρ` on `E`: `P(X₁,X₂) = μ(X₁,X₂)`, `P(X,Y) = λ(X)Y`,
    /// `P(Y,X) = (−1)^{⟨x,y⟩} ρ(X)Y`.
    pub fn to_structure(&self) -> Result<Suspended<MultiMap>> {
        let w = disjoint_names(&self.v, &self.w)?;
        let e = suspend(&self.v, &w)?;
        let vd = self.v.dim();
        let mut p = MultiMap::zero(&e, 1, Multidegree::zero(e.n()))?;
        for (key, val) in self.mu.entries() {
            p.add_entry(key.clone(), val)?;
        }
        for x in 0..vd {
            for y in 0..self.w.dim() {
                let l = self.lam[x].image(y);
                p.add_entry(vec![x, vd + y], &shift(&l, vd))?;
                let s = sign_q(self.v.degree(x).odd_with(self.w.degree(y)));
                let r = self.rho[x].image(y).scaled(&s);
                p.add_entry(vec![vd + y, x], &shift(&r, vd))?;
            }
        }
        Ok(Suspended { e, v_dim: vd, p })
    }

    /// The defining equations, scanned on basis tuples; returns the first failure.
    pub fn axiom_witness(&self) -> Option<String> {
        let alg = AlgebraStructure { space: self.v.clone(), mu: self.mu.clone() };
        if let Some(wit) = alg.associativity().witness {
            return Some(format!("associativity fails on {wit}"));
        }
        let vd = self.v.dim();
        for a in 0..vd {
            for b in 0..vd {
                let prod = self.mu.evaluate_coords(&[&Coords::unit(a), &Coords::unit(b)]);
                let s = sign_q(self.v.degree(a).odd_with(self.v.degree(b)));
                for y in 0..self.w.dim() {
                    let ey = Coords::unit(y);
                    let ll = endo_apply(&self.lam, &prod, &ey);
                    let lr = self.lam[a].apply(&self.lam[b].apply(&ey));
                    if ll != lr {
                        return Some(format!("lambda(mu(X1,X2)) on {}", names(&self.v, &[a, b])));
                    }
                    let rl = endo_apply(&self.rho, &prod, &ey);
                    let rr = self.rho[b].apply(&self.rho[a].apply(&ey)).scaled(&s);
                    if rl != rr {
                        return Some(format!("rho(mu(X1,X2)) on {}", names(&self.v, &[a, b])));
                    }
                    let cl = self.lam[a].apply(&self.rho[b].apply(&ey));
                    let cr = self.rho[b].apply(&self.lam[a].apply(&ey)).scaled(&s);
                    if cl != cr {
                        return Some(format!("lambda/rho commute on {}", names(&self.v, &[a, b])));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self) -> Result<Recognition> {
        let s = self.to_structure()?;
        let by_bracket = bracket_delta(&s.p, &s.p)?.is_zero();
        let witness = self.axiom_witness();
        Ok(Recognition { by_bracket, by_axioms: witness.is_none(), witness })
    }

    /// `[P,P]^Δ` split by which of its three argument slots carry `W`.
    /// Patterns with two or more `W` slots cannot be nonzero: their output
    /// would need `q = 2`.
    pub fn square_by_slot(&self) -> Result<BTreeMap<Vec<bool>, bool>> {
        let s = self.to_structure()?;
        let pp = bracket_delta(&s.p, &s.p)?;
        let d = decompose_m_e(&pp, s.v_dim)?;
        let mut out = BTreeMap::new();
        for mask in 0..8u8 {
            let pattern: Vec<bool> = (0..3).map(|i| mask & (4 >> i) != 0).collect();
            let nonzero = d.pieces.get(&pattern).is_some_and(|m| !m.is_zero());
            out.insert(pattern, nonzero);
        }
        Ok(out)
    }

    pub fn is_bimodule(&self) -> Result<bool> {
        self.check()?.verdict()
    }
}

/// Components of a homogeneous `C ∈ M^{(k,q,*)}(E)` split by which argument
/// slots carry `W`. For `q = 1` only the all-`V` pattern can be nonzero; for
/// `q = 0` the all-`V` pattern and the `k+1` single-`W` patterns.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub q: i64,
    pub pieces: BTreeMap<Vec<bool>, MultiMap>,
}

impl Decomposition {
    /// The `M^{(k,*)}(V)` part (`q = 0`, no `W` argument).
    pub fn algebra_part(&self) -> Option<&MultiMap> {
        if self.q != 0 {
            return None;
        }
        self.pieces.iter().find(|(p, _)| p.iter().all(|w| !w)).map(|(_, m)| m)
    }

    /// The `L(V,End W)` parts (`q = 0`), keyed by the slot holding `W`.
    pub fn slot_parts(&self) -> BTreeMap<usize, &MultiMap> {
        if self.q != 0 {
            return BTreeMap::new();
        }
        self.pieces
            .iter()
            .filter(|(p, _)| p.iter().filter(|w| **w).count() == 1)
            .map(|(p, m)| (p.iter().position(|w| *w).unwrap(), m))
            .collect()
    }

    /// The `L(V,W)` cochain (`q = 1`).
    pub fn cochain_part(&self) -> Option<&MultiMap> {
        if self.q != 1 {
            return None;
        }
        self.pieces.iter().find(|(p, _)| p.iter().all(|w| !w)).map(|(_, m)| m)
    }

    pub fn reassemble(&self, template: &MultiMap) -> Result<MultiMap> {
        let mut out = MultiMap::zero(template.space(), template.form(), template.weight().clone())?;
        for piece in self.pieces.values() {
            out = out.add(piece)?;
        }
        Ok(out)
    }
}

/// Splits a map on a suspension `E` (whose first `v_dim` basis vectors span `V`).
pub fn decompose_m_e(c: &MultiMap, v_dim: usize) -> Result<Decomposition> {
    if c.space().n() == 0 {
        return Err(Error::Degree("not a suspension: grading dimension 0".into()));
    }
    let q = c.weight().components()[0];
    let mut pieces: BTreeMap<Vec<bool>, MultiMap> = BTreeMap::new();
    for (key, val) in c.entries() {
        let pattern: Vec<bool> = key.iter().map(|&i| i >= v_dim).collect();
        let slot = match pieces.get_mut(&pattern) {
            Some(m) => m,
            None => pieces
                .entry(pattern)
                .or_insert(MultiMap::zero(c.space(), c.form(), c.weight().clone())?),
        };
        slot.add_entry(key.clone(), val)?;
    }
    if q > 1 && !pieces.is_empty() {
        return Err(Error::Invariant("nonzero component with q > 1".into()));
    }
    Ok(Decomposition { q, pieces })
}

/// A Lie module `(W, π)` over `g = (V, μ)`.
#[derive(Clone, Debug)]
pub struct LieModuleStructure {
    pub g: Arc<GradedSpace>,
    pub w: Arc<GradedSpace>,
    pub mu: AltMap,
    pub pi: Vec<GradedEndo>,
}

impl LieModuleStructure {
    pub fn new(mu: AltMap, w: Arc<GradedSpace>, pi: Vec<GradedEndo>) -> Result<Self> {
        let g = mu.space().clone();
        if mu.form() != 1 || !mu.weight().is_zero() {
            return Err(Error::Degree(format!("bracket must have degree (1; 0), got {}", mu.degree())));
        }
        if g.n() != w.n() {
            return Err(Error::Dimension { expected: g.n(), got: w.n() });
        }
        check_family(&g, &w, &pi, "pi")?;
        Ok(LieModuleStructure { g, w, mu, pi })
    }

    /// The adjoint module `W = g`, `π(X) = μ(X, ·)`.
    pub fn adjoint(mu: AltMap) -> Result<Self> {
        let g = mu.space().clone();
        let w = Arc::new(disjoint_names(&g, &g)?);
        let full = mu.expand();
        let mut pi = Vec::with_capacity(g.dim());
        for x in 0..g.dim() {
            let ex = Coords::unit(x);
            let imgs = (0..g.dim()).map(|y| (y, full.evaluate_coords(&[&ex, &Coords::unit(y)])));
            pi.push(GradedEndo::new(&w, g.degree(x).clone(), imgs)?);
        }
        Self::new(mu, w, pi)
    }

    /// The trivial module on `W`.
    pub fn trivial(mu: AltMap, w: Arc<GradedSpace>) -> Result<Self> {
        let g = mu.space().clone();
        let pi = (0..g.dim()).map(|x| GradedEndo::zero(&w, g.degree(x).clone())).collect();
        Self::new(mu, w, pi)
    }

    /// `P ∈ A^{(1,0)}(E)` with `P(X₁,X₂) = μ(X₁,X₂)` and `P(X,Y) = π(X)Y`.
    pub fn to_structure(&self) -> Result<Suspended<AltMap>> {
        let w = disjoint_names(&self.g, &self.w)?;
        let e = suspend(&self.g, &w)?;
        let vd = self.g.dim();
        let mut entries: Vec<(Vec<usize>, Coords)> =
            self.mu.entries().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        for x in 0..vd {
            for y in 0..self.w.dim() {
                entries.push((vec![x, vd + y], shift(&self.pi[x].image(y), vd)));
            }
        }
        let p = AltMap::from_canonical_entries(&e, 1, Multidegree::zero(e.n()), entries)?;
        Ok(Suspended { e, v_dim: vd, p })
    }

    /// Jacobi for `μ` and `π(μ(X₁,X₂)) = [π(X₁),π(X₂)]` on basis pairs.
    pub fn axiom_witness(&self) -> Option<String> {
        let full = self.mu.expand();
        if let Some(w) = jacobi_witness(&self.g, &full) {
            return Some(format!("Jacobi fails on {w}"));
        }
        for a in 0..self.g.dim() {
            for b in 0..self.g.dim() {
                let prod = full.evaluate_coords(&[&Coords::unit(a), &Coords::unit(b)]);
                let comm = graded_commutator(&self.pi[a], &self.pi[b]).expect("same space");
                for y in 0..self.w.dim() {
                    let ey = Coords::unit(y);
                    if endo_apply(&self.pi, &prod, &ey) != comm.apply(&ey) {
                        return Some(format!("pi(mu(X1,X2)) != [pi(X1),pi(X2)] on {}", names(&self.g, &[a, b])));
                    }
                }
            }
        }
        None
    }

    pub fn check(&self) -> Result<Recognition> {
        let s = self.to_structure()?;
        let by_bracket = bracket_wedge(&s.p, &s.p)?.is_zero();
        let witness = self.axiom_witness();
        Ok(Recognition { by_bracket, by_axioms: witness.is_none(), witness })
    }

    pub fn is_lie_module(&self) -> Result<bool> {
        self.check()?.verdict()
    }
}
