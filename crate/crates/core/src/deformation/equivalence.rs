use std::sync::Arc;

use num_traits::One;

use super::{check_degree, eval_series, eta_series, solve_deformation, Ambient, FormalSeries, StructureTheta};
use crate::brackets::{i_insert, GradedEndo};
use crate::error::{Error, Result};
use crate::grading::Multidegree;
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::{sort_tuple, tuples, AltMap, Cochain};
use crate::scalar::{ratio, sign_q, Q};

/// `φ_λ = Σ λᵏ φ_k` with `φ_k` linear of degree `0`.
#[derive(Clone, Debug, PartialEq)]
pub struct EquivalenceSeries {
    pub phis: Vec<GradedEndo>,
}

fn compose_series(a: &[GradedEndo], b: &[GradedEndo], n: usize) -> Result<Vec<GradedEndo>> {
    let space = a[0].space().clone();
    let zero = Multidegree::zero(space.n());
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = GradedEndo::zero(&space, zero.clone());
        for i in 0..=k {
            if let (Some(x), Some(y)) = (a.get(i), b.get(k - i)) {
                acc = acc.add_scaled(&x.compose(y)?, &Q::one())?;
            }
        }
        out.push(acc);
    }
    Ok(out)
}

impl EquivalenceSeries {
    pub fn identity(space: &Arc<GradedSpace>, n: usize) -> Self {
        let zero = Multidegree::zero(space.n());
        let mut phis = vec![GradedEndo::zero(space, zero); n + 1];
        phis[0] = GradedEndo::identity(space);
        EquivalenceSeries { phis }
    }

    pub fn truncation(&self) -> usize {
        self.phis.len() - 1
    }

    pub fn compose(&self, other: &EquivalenceSeries) -> Result<EquivalenceSeries> {
        let n = self.truncation().min(other.truncation());
        Ok(EquivalenceSeries { phis: compose_series(&self.phis, &other.phis, n)? })
    }

    /// `φ_λ⁻¹` from `ψ∘φ = id`: `ψ₀ = id`, `ψ_k = −Σ_{i≥1} ψ_{k−i}∘φ_i`.
    pub fn inverse(&self) -> Result<EquivalenceSeries> {
        let space = self.phis[0].space().clone();
        if self.phis[0] != GradedEndo::identity(&space) {
            return Err(Error::Hypothesis("phi_0 must be the identity".into()));
        }
        let zero = Multidegree::zero(space.n());
        let mut psis = vec![GradedEndo::identity(&space)];
        for k in 1..=self.truncation() {
            let mut acc = GradedEndo::zero(&space, zero.clone());
            for i in 1..=k {
                acc = acc.add_scaled(&psis[k - i].compose(&self.phis[i])?, &-Q::one())?;
            }
            psis.push(acc);
        }
        Ok(EquivalenceSeries { phis: psis })
    }

    pub fn is_identity(&self) -> bool {
        let space = self.phis[0].space().clone();
        self.phis[0] == GradedEndo::identity(&space) && self.phis[1..].iter().all(|p| p.is_zero())
    }

    /// `φ_λ(X_λ)`.
    pub fn apply(&self, xs: &FormalSeries<Coords>) -> FormalSeries<Coords> {
        let n = xs.truncation().min(self.truncation());
        let coeffs = (0..=n)
            .map(|k| {
                let mut acc = Coords::default();
                for i in 0..=k {
                    acc.add_scaled(&self.phis[i].apply(&xs.coeffs[k - i]), &Q::one());
                }
                acc
            })
            .collect();
        FormalSeries { coeffs }
    }

    /// First order at which `φ_λ([X,Y]) ≠ [φ_λX, φ_λY]` on basis pairs.
    pub fn automorphism_defect(&self, amb: &Ambient) -> Option<usize> {
        let d = amb.space().dim();
        let n = self.truncation();
        let series = |c: Coords| FormalSeries::constant(c, n, Coords::default());
        let mut first: Option<usize> = None;
        for a in 0..d {
            for b in 0..d {
                let lhs = self.apply(&series(amb.bracket(&Coords::unit(a), &Coords::unit(b))));
                let pa = self.apply(&series(Coords::unit(a)));
                let pb = self.apply(&series(Coords::unit(b)));
                let rhs = super::series_bracket(amb, &pa, &pb).expect("equal truncations");
                if let Some(k) = (0..=n).find(|&k| lhs.coeffs[k] != rhs.coeffs[k]) {
                    first = Some(first.map_or(k, |f| f.min(k)));
                }
            }
        }
        first
    }

    /// Coefficients `0..=n` of `φ_λ^* X_λ = φ_λ ∘ X_λ ∘ (φ_λ⁻¹ ⊗ ⋯ ⊗ φ_λ⁻¹)`
    /// for a series `X_λ` of maps of one degree.
    pub fn pullback(&self, inverse: &EquivalenceSeries, xs: &[AltMap], n: usize) -> Result<Vec<AltMap>> {
        let Some(first) = xs.first() else {
            return Err(Error::Truncation(0, n));
        };
        let space = first.space().clone();
        let (form, weight) = (first.form(), first.weight().clone());
        if form < -1 {
            return (0..=n).map(|_| AltMap::zero(&space, form, weight.clone())).collect();
        }
        let expanded: Vec<_> = xs.iter().map(|x| x.expand()).collect();
        let arity = (form + 1) as usize;
        let mut entries: Vec<Vec<(Vec<usize>, Coords)>> = vec![Vec::new(); n + 1];
        for t in tuples(space.dim(), arity) {
            if t.windows(2).any(|w| w[0] > w[1]) || sort_tuple(&space, &t).is_none() {
                continue;
            }
            let args: Vec<Vec<Coords>> = t
                .iter()
                .map(|&i| (0..=n).map(|c| inverse.phis.get(c).map_or(Coords::default(), |p| p.image(i))).collect())
                .collect();
            let refs: Vec<&[Coords]> = args.iter().map(|a| a.as_slice()).collect();
            let mut inner = vec![Coords::default(); n + 1];
            for (b, x) in expanded.iter().enumerate().take(n + 1) {
                for (j, v) in eval_series(x, &refs, n - b).into_iter().enumerate() {
                    inner[b + j].add_scaled(&v, &Q::one());
                }
            }
            for m in 0..=n {
                let mut acc = Coords::default();
                for a in 0..=m {
                    if let Some(p) = self.phis.get(a) {
                        acc.add_scaled(&p.apply(&inner[m - a]), &Q::one());
                    }
                }
                entries[m].push((t.clone(), acc));
            }
        }
        entries
            .into_iter()
            .map(|e| AltMap::from_canonical_entries(&space, form, weight.clone(), e))
            .collect()
    }
}

fn endo_as_altmap(t: &GradedEndo) -> Result<AltMap> {
    AltMap::canonicalize(&t.to_multimap())
}

/// Solves `dφ_λ/dλ = φ_λ∘T_λ`, `φ₀ = id`, stepwise:
/// `(k+1)φ_{k+1} = Σ_{i+j=k} φ_i∘T_j`. Each `T_j` must be a `𝔻`-cocycle.
pub fn solve_equivalence_ode(amb: &Ambient, ts: &FormalSeries<GradedEndo>, n: usize) -> Result<EquivalenceSeries> {
    let zero = Multidegree::zero(amb.n());
    for (j, t) in ts.coeffs.iter().enumerate() {
        if !GradedSpace::same(t.space(), amb.space()) {
            return Err(Error::SpaceMismatch);
        }
        if !t.is_zero() && t.degree() != &zero {
            return Err(Error::Degree(format!("T_{j} must have degree 0")));
        }
        if !amb.d(&endo_as_altmap(t)?)?.is_zero() {
            return Err(Error::NotACocycle { order: j, detail: "D T != 0".into() });
        }
    }
    let phi = ode_steps(amb.space(), &ts.coeffs, n)?;
    if let Some(order) = phi.automorphism_defect(amb) {
        return Err(Error::Verification { order, detail: "phi is not a bracket automorphism".into() });
    }
    Ok(phi)
}

fn ode_steps(space: &Arc<GradedSpace>, ts: &[GradedEndo], n: usize) -> Result<EquivalenceSeries> {
    let zero = Multidegree::zero(space.n());
    let mut phis = vec![GradedEndo::identity(space)];
    for k in 0..n {
        let mut acc = GradedEndo::zero(space, zero.clone());
        for i in 0..=k {
            if let Some(t) = ts.get(k - i) {
                acc = acc.add_scaled(&phis[i].compose(t)?, &Q::one())?;
            }
        }
        phis.push(acc.scaled(&ratio(1, k as i64 + 1)));
    }
    Ok(EquivalenceSeries { phis })
}

/// The construction relating deformations of cohomologous cocycles.
#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub phi: EquivalenceSeries,
    /// `T_λ ∈ 𝓔⁰_λ` with `dφ_λ/dλ = φ_λ∘ad T_λ`.
    pub t: FormalSeries<Coords>,
    pub p: FormalSeries<Coords>,
    pub p_prime: FormalSeries<Coords>,
    /// `B_λ = Σ λᵏ ∫₀^λ φ_μ^*(i(T_μ)C_k) dμ`.
    pub b: FormalSeries<Cochain<AltMap>>,
    /// Whether `φ_λ^*C_λ = C'_λ + 𝔻(B_λ − A_λ)` mod `λ^{N+1}`.
    pub pullback_identity: bool,
}

fn pad(cs: &FormalSeries<Cochain<AltMap>>, n: usize) -> Vec<Cochain<AltMap>> {
    (0..=n).map(|k| cs.coeffs.get(k).cloned().unwrap_or_default()).collect()
}

/// For `C'_λ = C_λ + 𝔻A_λ`, solves `dφ_λ/dλ = φ_λ∘ad T_λ`,
/// `T_λ = φ_λ⁻¹(η(A_λ − B_λ)(P'_λ))` order by order (each component of
/// weight `d` signed by `(−1)^{⟨θ,d⟩}`) and checks
/// `φ_λ(P_λ) = P'_λ` mod `λ^{N+1}`.
pub fn equivalent_deformations_check(
    st: &StructureTheta,
    cs: &FormalSeries<Cochain<AltMap>>,
    a_s: &FormalSeries<Cochain<AltMap>>,
    n: usize,
) -> Result<EquivalenceReport> {
    let amb = &st.ambient;
    let space = amb.space().clone();
    let c = pad(cs, n);
    let a = pad(a_s, n);
    for (order, ak) in a.iter().enumerate() {
        for comp in ak.components() {
            let want = st.theta.scale(-(comp.form() + 1));
            if comp.weight() != &want {
                return Err(Error::Degree(format!(
                    "component of A_{order} has degree ({}; {}), needs (k-1; -k*theta)",
                    comp.form(),
                    comp.weight()
                )));
            }
        }
    }
    let mut c_prime = Vec::with_capacity(n + 1);
    for k in 0..=n {
        c_prime.push(c[k].add(&amb.d_cochain(&a[k])?)?);
    }
    let c_series = FormalSeries::new(c.clone());
    let cp_series = FormalSeries::new(c_prime.clone());
    let p = solve_deformation(st, &c_series, n)?;
    let p_prime = solve_deformation(st, &cp_series, n)?;

    let zero = Multidegree::zero(amb.n());
    let mut phi = EquivalenceSeries::identity(&space, 0);
    let mut t: Vec<Coords> = Vec::new();
    let mut b: Vec<Cochain<AltMap>> = Vec::new();
    let vec_of = |v: &Coords| AltMap::from_canonical_entries(&space, -1, zero.clone(), [(vec![], v.clone())]);
    for m in 0..=n {
        let psi = phi.inverse()?;
        // B_m = Σ_{k+j+1=m} [μʲ] φ_μ^*(i(T_μ)C_k) / (j+1)
        let mut bm = Cochain::zero();
        for k in 0..m {
            let j = m - 1 - k;
            for comp in c[k].components() {
                let xs: Vec<AltMap> = (0..=j).map(|i| i_insert(&vec_of(&t[i])?, comp)).collect::<Result<_>>()?;
                let pulled = phi.pullback(&psi, &xs, j)?;
                bm.push(pulled[j].scaled(&ratio(1, j as i64 + 1)))?;
            }
        }
        b.push(bm);
        // each component D of A − B enters as (−1)^{⟨θ,d⟩} D
        let mut diff: Vec<Cochain<AltMap>> = Vec::with_capacity(m + 1);
        for k in 0..=m {
            let mut signed = Cochain::zero();
            for comp in a[k].sub(&b[k])?.components() {
                signed.push(comp.scaled(&sign_q(st.theta.odd_with(comp.weight()))))?;
            }
            diff.push(signed);
        }
        let e = eta_series(&FormalSeries::new(diff), &FormalSeries::new(p_prime.coeffs[..=m].to_vec()))?;
        let mut tm = Coords::default();
        for i in 0..=m {
            tm.add_scaled(&psi.phis[i].apply(&e.coeffs[m - i]), &Q::one());
        }
        check_degree(&space, &tm, &zero, "T")?;
        t.push(tm);
        let ads: Vec<GradedEndo> = t.iter().map(|x| amb.ad(x)).collect::<Result<_>>()?;
        phi = ode_steps(&space, &ads, m + 1)?;
    }
    let phi = EquivalenceSeries { phis: phi.phis[..=n].to_vec() };
    let image = phi.apply(&p);
    if let Some(order) = (0..=n).find(|&k| image.coeffs[k] != p_prime.coeffs[k]) {
        return Err(Error::Verification { order, detail: "phi(P_lambda) != P'_lambda".into() });
    }
    let pullback_identity = pullback_identity(amb, &phi, &c, &c_prime, &a, &b, n)?;
    Ok(EquivalenceReport {
        phi,
        t: FormalSeries::new(t),
        p,
        p_prime,
        b: FormalSeries::new(b),
        pullback_identity,
    })
}

fn pullback_identity(
    amb: &Ambient,
    phi: &EquivalenceSeries,
    c: &[Cochain<AltMap>],
    c_prime: &[Cochain<AltMap>],
    a: &[Cochain<AltMap>],
    b: &[Cochain<AltMap>],
    n: usize,
) -> Result<bool> {
    let psi = phi.inverse()?;
    let mut lhs = vec![Cochain::zero(); n + 1];
    for (k, ck) in c.iter().enumerate() {
        for comp in ck.components() {
            let pulled = phi.pullback(&psi, std::slice::from_ref(comp), n - k)?;
            for (j, x) in pulled.into_iter().enumerate() {
                lhs[k + j].push(x)?;
            }
        }
    }
    for m in 0..=n {
        let rhs = c_prime[m].add(&amb.d_cochain(&b[m].sub(&a[m])?)?)?;
        if lhs[m] != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}
