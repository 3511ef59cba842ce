//! Structures of degree θ in a finite-dimensional graded Lie algebra and
//! their formal deformations, truncated at a fixed order.

mod equivalence;

pub use equivalence::{
    equivalent_deformations_check, solve_equivalence_ode, EquivalenceReport, EquivalenceSeries,
};


use std::sync::Arc;

use num_traits::{One, Zero};

use crate::brackets::{bracket_wedge, i_insert, GradedEndo};
use crate::cohomology::{differential_matrix, element, AmbientComplex, SliceDegree, CHEVALLEY_CONSTANT};
use crate::error::{Error, Result};
use crate::grading::Multidegree;
use crate::gspace::{degree_of_coords, Coords, GradedSpace, Homogeneity};
use crate::multimap::{AltMap, Cochain, MultiMap};
use crate::scalar::{factorial, ratio, sign_q, Q};
use crate::structures::AlgebraStructure;

/// A graded Lie algebra `(𝓔, [,])` given by structure constants.
#[derive(Clone, Debug)]
pub struct Ambient {
    pub mu: AltMap,
}

impl Ambient {
    pub fn new(mu: AltMap) -> Result<Self> {
        if !AlgebraStructure::new(mu.expand())?.is_graded_lie()? {
            return Err(Error::NotAStructure("ambient bracket fails the graded Jacobi identity".into()));
        }
        Ok(Ambient { mu })
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.mu.space()
    }

    pub fn n(&self) -> usize {
        self.space().n()
    }

    pub fn bracket(&self, x: &Coords, y: &Coords) -> Coords {
        self.mu.evaluate_coords(&[x, y])
    }

    /// `ad T = [T, ·]` for `T` of degree `0`.
    pub fn ad(&self, t: &Coords) -> Result<GradedEndo> {
        let zero = Multidegree::zero(self.n());
        check_degree(self.space(), t, &zero, "ad T")?;
        let imgs = (0..self.space().dim()).map(|i| (i, self.bracket(t, &Coords::unit(i))));
        GradedEndo::new(self.space(), zero, imgs)
    }

    /// `𝔻` on `A(𝓔)`, normalized to agree with the explicit coboundary:
    /// `𝔻C = CHEVALLEY_CONSTANT · [[,],C]^∧`.
    pub fn d(&self, c: &AltMap) -> Result<AltMap> {
        Ok(bracket_wedge(&self.mu, c)?.scaled(&crate::scalar::q(CHEVALLEY_CONSTANT)))
    }

    pub fn d_cochain(&self, c: &Cochain<AltMap>) -> Result<Cochain<AltMap>> {
        let mut out = Cochain::zero();
        for comp in c.components() {
            out.push(self.d(comp)?)?;
        }
        Ok(out)
    }

    pub fn is_cocycle(&self, c: &Cochain<AltMap>) -> Result<bool> {
        Ok(self.d_cochain(c)?.is_zero())
    }
}

fn check_degree(space: &GradedSpace, x: &Coords, want: &Multidegree, what: &str) -> Result<()> {
    match degree_of_coords(space, x) {
        Homogeneity::Degree(d) if &d != want => {
            Err(Error::Degree(format!("{what} must have degree {want}, has {d}")))
        }
        Homogeneity::Inhomogeneous => Err(Error::Homogeneity(format!("{what} is not homogeneous"))),
        _ => Ok(()),
    }
}

/// `P ∈ 𝓔^θ` with `[P,P] = 0`.
#[derive(Clone, Debug)]
pub struct StructureTheta {
    pub ambient: Ambient,
    pub theta: Multidegree,
    pub p: Coords,
    /// Hypotheses that were not enforced.
    pub warnings: Vec<String>,
}

impl StructureTheta {
    /// Requires `⟨θ,θ⟩ + 1 ≡ 0 (mod 2)` when `n > 0`; for `n = 0` the
    /// condition cannot hold and is only reported.
    pub fn new(ambient: Ambient, theta: Multidegree, p: Coords) -> Result<Self> {
        if theta.len() != ambient.n() {
            return Err(Error::Dimension { expected: ambient.n(), got: theta.len() });
        }
        check_degree(ambient.space(), &p, &theta, "P")?;
        let mut warnings = Vec::new();
        if !theta.odd_with(&theta) {
            if ambient.n() == 0 {
                warnings.push("n = 0: parity condition <theta,theta>+1 = 0 mod 2 cannot hold; not enforced".into());
            } else {
                return Err(Error::Hypothesis(format!("<theta,theta> must be odd, theta = {theta}")));
            }
        }
        if !ambient.bracket(&p, &p).is_zero() {
            return Err(Error::NotAStructure("[P,P] != 0".into()));
        }
        Ok(StructureTheta { ambient, theta, p, warnings })
    }

    /// `∂_P X = [P,X]`.
    pub fn boundary(&self, x: &Coords) -> Coords {
        self.ambient.bracket(&self.p, x)
    }
}

/// `Σ_{k ≤ N} λᵏ c_k`, truncated at `N = coeffs.len() − 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<T> {
    pub coeffs: Vec<T>,
}

impl<T: Clone> FormalSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series has at least the constant term");
        FormalSeries { coeffs }
    }

    pub fn constant(c: T, n: usize, zero: T) -> Self {
        let mut coeffs = vec![zero; n + 1];
        coeffs[0] = c;
        FormalSeries { coeffs }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }
}

/// `∫₀^λ`: `λᵏ ↦ λ^{k+1}/(k+1)`, dropping what exceeds the truncation.
pub fn integrate(s: &FormalSeries<Coords>) -> FormalSeries<Coords> {
    let n = s.truncation();
    let mut coeffs = vec![Coords::default(); n + 1];
    for k in 0..n {
        coeffs[k + 1] = s.coeffs[k].scaled(&ratio(1, k as i64 + 1));
    }
    FormalSeries { coeffs }
}

/// Cauchy product of brackets, coefficient-wise.
pub fn series_bracket(
    amb: &Ambient,
    x: &FormalSeries<Coords>,
    y: &FormalSeries<Coords>,
) -> Result<FormalSeries<Coords>> {
    if x.truncation() != y.truncation() {
        return Err(Error::Truncation(x.truncation(), y.truncation()));
    }
    let n = x.truncation();
    let coeffs = (0..=n)
        .map(|k| {
            let mut acc = Coords::default();
            for i in 0..=k {
                acc.add_scaled(&amb.bracket(&x.coeffs[i], &y.coeffs[k - i]), &Q::one());
            }
            acc
        })
        .collect();
    Ok(FormalSeries { coeffs })
}

/// First order at which `[P_λ,P_λ]` is nonzero.
pub fn deformation_residual(amb: &Ambient, ps: &FormalSeries<Coords>) -> Result<Option<usize>> {
    let r = series_bracket(amb, ps, ps)?;
    Ok(r.coeffs.iter().position(|c| !c.is_zero()))
}

/// `P₀ = P`, every coefficient in `𝓔^θ`, and `[P_λ,P_λ] ≡ 0 mod λ^{N+1}`.
pub fn is_formal_deformation(ps: &FormalSeries<Coords>, st: &StructureTheta) -> Result<bool> {
    for (k, c) in ps.coeffs.iter().enumerate() {
        check_degree(st.ambient.space(), c, &st.theta, &format!("P_{k}"))?;
    }
    if ps.coeffs[0] != st.p {
        return Ok(false);
    }
    Ok(deformation_residual(&st.ambient, ps)?.is_none())
}

/// Evaluates a multilinear map on series arguments, truncating at `n`.
pub(crate) fn eval_series(c: &MultiMap, args: &[&[Coords]], n: usize) -> Vec<Coords> {
    let mut out = vec![Coords::default(); n + 1];
    for (key, val) in c.entries() {
        // scalar series Π_i args_i[·][key_i]
        let mut prod = vec![Q::zero(); n + 1];
        prod[0] = Q::one();
        for (slot, &b) in key.iter().enumerate() {
            let factor: Vec<Q> = (0..=n).map(|k| args[slot].get(k).map_or(Q::zero(), |a| a.get(b))).collect();
            let mut next = vec![Q::zero(); n + 1];
            for (i, p) in prod.iter().enumerate().filter(|(_, p)| !p.is_zero()) {
                for (j, f) in factor.iter().enumerate().take(n + 1 - i).filter(|(_, f)| !f.is_zero()) {
                    next[i + j] += p * f;
                }
            }
            prod = next;
            if prod.iter().all(|p| p.is_zero()) {
                break;
            }
        }
        for (k, p) in prod.iter().enumerate() {
            if !p.is_zero() {
                out[k].add_scaled(val, p);
            }
        }
    }
    out
}

/// `η(C)(X) = C(X,…,X)/(k+1)!`.
pub fn eta(c: &AltMap, x: &Coords) -> Result<Coords> {
    if c.form() < -1 {
        return Ok(Coords::default());
    }
    let arity = c.arity();
    let args: Vec<&Coords> = vec![x; arity];
    Ok(c.evaluate_coords(&args).scaled(&(Q::one() / factorial(arity))))
}

/// `η_P(C) = η(C)(P)`.
pub fn eta_p(c: &AltMap, st: &StructureTheta) -> Result<Coords> {
    eta(c, &st.p)
}

/// `η(C_λ)(X_λ)` for a series of cochains.
pub fn eta_series(
    cs: &FormalSeries<Cochain<AltMap>>,
    xs: &FormalSeries<Coords>,
) -> Result<FormalSeries<Coords>> {
    let n = xs.truncation();
    let mut coeffs = vec![Coords::default(); n + 1];
    for (a, ca) in cs.coeffs.iter().enumerate().take(n + 1) {
        for comp in ca.components() {
            if comp.form() < -1 {
                continue;
            }
            let args: Vec<&[Coords]> = vec![&xs.coeffs[..]; comp.arity()];
            let vals = eval_series(&comp.expand(), &args, n - a);
            let f = Q::one() / factorial(comp.arity());
            for (k, v) in vals.iter().enumerate() {
                coeffs[a + k].add_scaled(v, &f);
            }
        }
    }
    Ok(FormalSeries { coeffs })
}

/// Outcome of the two identities relating `η` to `𝔻` and `∂_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaIdentities {
    pub first: bool,
    /// Evaluated only when `𝔻C = 0`.
    pub second: Option<bool>,
}

/// Checks, for `k > 0` and `⟨x,x⟩` odd,
/// `η(𝔻C)(X) = (−1)^{⟨x,c⟩}[X,η(C)(X)] − ½ η(i([X,X])C)(X)` and, for a
/// cocycle `C`, `∂_P η_P(i(X)C) − η_P(i(∂_P X)C) = (−1)^{⟨θ,x+c⟩}[X,η_P(C)]`.
/// With the bracket conventions of this crate the second term enters with a
/// minus sign.
pub fn eta_identities_check(c: &AltMap, st: &StructureTheta, x: &Coords) -> Result<EtaIdentities> {
    let amb = &st.ambient;
    let space = amb.space();
    if !GradedSpace::same(c.space(), space) {
        return Err(Error::SpaceMismatch);
    }
    if c.form() <= 0 {
        return Err(Error::Hypothesis(format!("form degree must be > 0, got {}", c.form())));
    }
    let xd = match degree_of_coords(space, x) {
        Homogeneity::Degree(d) => d,
        _ => return Err(Error::Hypothesis("X must be homogeneous and nonzero".into())),
    };
    if !xd.odd_with(&xd) {
        return Err(Error::Hypothesis(format!("<x,x> must be odd, x = {xd}")));
    }
    let vec_of = |v: &Coords, d: &Multidegree| AltMap::from_canonical_entries(space, -1, d.clone(), [(vec![], v.clone())]);
    let cw = c.weight();

    let dc = amb.d(c)?;
    let lhs = eta(&dc, x)?;
    let xx = amb.bracket(x, x);
    let ixx = i_insert(&vec_of(&xx, &(&xd + &xd))?, c)?;
    let mut rhs = amb.bracket(x, &eta(c, x)?).scaled(&sign_q(xd.odd_with(cw)));
    rhs.add_scaled(&eta(&ixx, x)?, &ratio(-1, 2));
    let first = lhs == rhs;

    let second = if dc.is_zero() {
        let ix = i_insert(&vec_of(x, &xd)?, c)?;
        let dpx = st.boundary(x);
        let idpx = i_insert(&vec_of(&dpx, &(&xd + &st.theta))?, c)?;
        let mut l = st.boundary(&eta_p(&ix, st)?);
        l.add_scaled(&eta_p(&idpx, st)?, &-Q::one());
        let s = sign_q(st.theta.odd_with(&(&xd + cw)));
        let r = amb.bracket(x, &eta_p(c, st)?).scaled(&s);
        Some(l == r)
    } else {
        None
    };
    Ok(EtaIdentities { first, second })
}

/// A basis of the `𝔻`-cocycles in `A^{(form, weight)}(𝓔)`.
pub fn cocycle_basis(amb: &Ambient, form: i64, weight: &Multidegree) -> Result<Vec<AltMap>> {
    let cx = AmbientComplex { mu: amb.mu.clone() };
    let (src, _, m) = differential_matrix(&cx, &SliceDegree::new(form, weight.clone()))?;
    m.kernel().iter().map(|v| element(&cx, &src, v)).collect()
}

/// Checks that `C_λ` lies in `⊕_{kθ+c=0} A^{(k,c)}(𝓔)` and is a `𝔻`-cocycle.
fn check_deformation_cocycle(st: &StructureTheta, cs: &FormalSeries<Cochain<AltMap>>) -> Result<()> {
    for (order, c) in cs.coeffs.iter().enumerate() {
        for comp in c.components() {
            if !GradedSpace::same(comp.space(), st.ambient.space()) {
                return Err(Error::SpaceMismatch);
            }
            let want = st.theta.scale(-comp.form());
            if comp.weight() != &want {
                return Err(Error::Degree(format!(
                    "component of C_{order} has degree ({}; {}), needs k*theta + c = 0",
                    comp.form(),
                    comp.weight()
                )));
            }
        }
        if !st.ambient.is_cocycle(c)? {
            return Err(Error::NotACocycle { order, detail: "D C != 0".into() });
        }
    }
    Ok(())
}

/// The unique solution of `dP_λ/dλ + η(C_λ)(P_λ) = 0`, `P₀ = P`, mod `λ^{N+1}`:
/// `(m+1) P_{m+1} = −[λᵐ] η(C_λ)(P_λ)`.
pub fn solve_deformation(
    st: &StructureTheta,
    cs: &FormalSeries<Cochain<AltMap>>,
    n: usize,
) -> Result<FormalSeries<Coords>> {
    check_deformation_cocycle(st, cs)?;
    let ps = integrate_flow(st, cs, n)?;
    if let Some(order) = deformation_residual(&st.ambient, &ps)? {
        return Err(Error::Verification { order, detail: "[P_lambda,P_lambda] != 0".into() });
    }
    Ok(ps)
}

fn integrate_flow(st: &StructureTheta, cs: &FormalSeries<Cochain<AltMap>>, n: usize) -> Result<FormalSeries<Coords>> {
    let mut coeffs = vec![Coords::default(); n + 1];
    coeffs[0] = st.p.clone();
    for m in 0..n {
        let partial = FormalSeries { coeffs: coeffs[..=m].to_vec() };
        let e = eta_series(cs, &partial)?;
        coeffs[m + 1] = e.coeffs[m].scaled(&ratio(-1, m as i64 + 1));
    }
    Ok(FormalSeries { coeffs })
}

/// The deformation without the cocycle and residual checks; used to compare
/// against closed forms and to probe hypotheses.
pub fn solve_deformation_unchecked(
    st: &StructureTheta,
    cs: &FormalSeries<Cochain<AltMap>>,
    n: usize,
) -> Result<FormalSeries<Coords>> {
    integrate_flow(st, cs, n)
}
