use std::ops::Range;
use std::sync::Arc;

use super::{weights_of_form, Complex, SliceDegree};
use crate::brackets::{bracket_delta, bracket_wedge};
use crate::error::{Error, Result};
use crate::grading::{sum_degrees, Multidegree};
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::{tuples, AltMap, MultiMap};
use crate::scalar::sign_q;
use crate::structures::{AlgebraStructure, BimoduleStructure, LieModuleStructure};

/// `[P,C]^Δ = HOCHSCHILD_CONSTANT · (explicit coboundary of C)`.
pub const HOCHSCHILD_CONSTANT: i64 = -1;
/// `[P,C]^∧ = CHEVALLEY_CONSTANT · (explicit coboundary of C)`.
pub const CHEVALLEY_CONSTANT: i64 = -1;

fn to_w(c: &Coords, offset: usize) -> Coords {
    Coords::from_pairs(c.iter().map(|(i, x)| (i - offset, x.clone())))
}

fn from_w(c: &Coords, offset: usize) -> Coords {
    Coords::from_pairs(c.iter().map(|(i, x)| (i + offset, x.clone())))
}

fn check_cochain(e: &Arc<GradedSpace>, v_dim: usize, form: i64, weight: &Multidegree, keys: &mut dyn Iterator<Item = (&Vec<usize>, &Coords)>) -> Result<()> {
    if !GradedSpace::same(e, e) || form < -1 {
        return Err(Error::Degree(format!("cochains have form degree ≥ -1, got {form}")));
    }
    if weight.components().first() != Some(&1) {
        return Err(Error::Degree(format!("cochains are W-valued: weight must start with 1, got {weight}")));
    }
    for (k, v) in keys {
        if k.iter().any(|&i| i >= v_dim) || v.indices().any(|o| o < v_dim) {
            return Err(Error::Degree("cochain must take V arguments to W values".into()));
        }
    }
    Ok(())
}

fn label_slices<C: Complex>(c: &C, label: i64, form: i64) -> Result<Vec<SliceDegree>> {
    let _ = label;
    Ok(weights_of_form(c, form)?.into_iter().map(|w| SliceDegree::new(form, w)).collect())
}

/// Hochschild cochains `L(V,W)` inside `M(E)` with `δ_P = [P,·]^Δ`.
/// A cochain with `m` arguments has form degree `m − 1`.
#[derive(Clone, Debug)]
pub struct HochschildComplex {
    pub bimodule: BimoduleStructure,
    pub e: Arc<GradedSpace>,
    pub v_dim: usize,
    pub p: MultiMap,
}

impl HochschildComplex {
    pub fn new(b: BimoduleStructure) -> Result<Self> {
        if !b.is_bimodule()? {
            return Err(Error::NotAStructure("[P,P]^delta != 0: not a bimodule".into()));
        }
        let s = b.to_structure()?;
        Ok(HochschildComplex { bimodule: b, e: s.e, v_dim: s.v_dim, p: s.p })
    }

    pub fn check(&self, c: &MultiMap) -> Result<()> {
        if !GradedSpace::same(c.space(), &self.e) {
            return Err(Error::SpaceMismatch);
        }
        check_cochain(&self.e, self.v_dim, c.form(), c.weight(), &mut c.entries().iter())
    }

    /// `(δC)(X₀,…,X_m) = (−1)^{⟨c,x₀⟩} λ(X₀)C(X₁,…,X_m) − Σᵢ (−1)^i C(…,μ(Xᵢ,X_{i+1}),…)
    ///  + (−1)^{m+1+⟨x₀+⋯+x_{m−1}+c, x_m⟩} ρ(X_m)C(X₀,…,X_{m−1})`.
    pub fn explicit(&self, c: &MultiMap) -> Result<MultiMap> {
        self.check(c)?;
        let b = &self.bimodule;
        let v = &b.v;
        let m = c.arity();
        let cv = c.weight().tail();
        let vd = self.v_dim;
        let mut out = MultiMap::zero(&self.e, c.form() + 1, c.weight().clone())?;
        for t in tuples(vd, m + 1) {
            let units: Vec<Coords> = t.iter().map(|&i| Coords::unit(i)).collect();
            let refs: Vec<&Coords> = units.iter().collect();
            let x0 = v.degree(t[0]);
            let mut acc = Coords::default();
            let tail = to_w(&c.evaluate_coords(&refs[1..]), vd);
            acc.add_scaled(&b.lam[t[0]].apply(&tail), &sign_q(cv.odd_with(x0)));
            for i in 0..m {
                let prod = b.mu.evaluate_coords(&[refs[i], refs[i + 1]]);
                let mut args: Vec<&Coords> = refs[..i].to_vec();
                args.push(&prod);
                args.extend_from_slice(&refs[i + 2..]);
                acc.add_scaled(&to_w(&c.evaluate_coords(&args), vd), &-sign_q(i % 2 == 1));
            }
            let xm = v.degree(t[m]);
            let pre = &sum_degrees(v.n(), t[..m].iter().map(|&i| v.degree(i))) + &cv;
            let odd = (m + 1) % 2 == 1;
            let head = to_w(&c.evaluate_coords(&refs[..m]), vd);
            acc.add_scaled(&b.rho[t[m]].apply(&head), &sign_q(odd ^ pre.odd_with(xm)));
            out.add_entry(t, &from_w(&acc, vd))?;
        }
        Ok(out)
    }
}

impl Complex for HochschildComplex {
    type Elem = MultiMap;
    fn space(&self) -> &Arc<GradedSpace> {
        &self.e
    }
    fn arguments(&self) -> Range<usize> {
        0..self.v_dim
    }
    fn outputs(&self) -> Range<usize> {
        self.v_dim..self.e.dim()
    }
    fn shift(&self) -> SliceDegree {
        SliceDegree::new(1, Multidegree::zero(self.e.n()))
    }
    fn differential(&self, c: &MultiMap) -> Result<MultiMap> {
        self.check(c)?;
        bracket_delta(&self.p, c)
    }
    fn label(&self, d: &SliceDegree) -> i64 {
        d.form + 1
    }
    fn slices_of_label(&self, label: i64) -> Result<Vec<SliceDegree>> {
        label_slices(self, label, label - 1)
    }
}

/// Chevalley–Eilenberg cochains `Λ(g,W)` inside `A(E)` with `∂_P = [P,·]^∧`.
#[derive(Clone, Debug)]
pub struct ChevalleyComplex {
    pub module: LieModuleStructure,
    pub e: Arc<GradedSpace>,
    pub v_dim: usize,
    pub p: AltMap,
}

impl ChevalleyComplex {
    pub fn new(l: LieModuleStructure) -> Result<Self> {
        if !l.is_lie_module()? {
            return Err(Error::NotAStructure("[P,P]^wedge != 0: not a Lie module".into()));
        }
        let s = l.to_structure()?;
        Ok(ChevalleyComplex { module: l, e: s.e, v_dim: s.v_dim, p: s.p })
    }

    pub fn check(&self, c: &AltMap) -> Result<()> {
        if !GradedSpace::same(c.space(), &self.e) {
            return Err(Error::SpaceMismatch);
        }
        check_cochain(&self.e, self.v_dim, c.form(), c.weight(), &mut c.entries().iter())
    }

    /// `(∂C)(X₀,…,X_m) = Σᵢ (−1)^{αᵢ+⟨xᵢ,c⟩} π(Xᵢ)C(…,X̂ᵢ,…)
    ///  + Σ_{i<j} (−1)^{α_{ij}} C(μ(Xᵢ,X_j),…,X̂ᵢ,…,X̂_j,…)`
    /// with `αᵢ = ⟨xᵢ, x₀+⋯+x_{i−1}⟩ + i` and `α_{ij} = αᵢ + α_j + ⟨xᵢ,x_j⟩`.
    pub fn explicit(&self, c: &AltMap) -> Result<AltMap> {
        self.check(c)?;
        let l = &self.module;
        let g = &l.g;
        let m = c.arity();
        let cv = c.weight().tail();
        let vd = self.v_dim;
        let full = l.mu.expand();
        let mut out = MultiMap::zero(&self.e, c.form() + 1, c.weight().clone())?;
        for t in tuples(vd, m + 1) {
            let units: Vec<Coords> = t.iter().map(|&i| Coords::unit(i)).collect();
            let alpha: Vec<bool> = (0..=m)
                .map(|i| {
                    let pre = sum_degrees(g.n(), t[..i].iter().map(|&k| g.degree(k)));
                    g.degree(t[i]).odd_with(&pre) ^ (i % 2 == 1)
                })
                .collect();
            let mut acc = Coords::default();
            for i in 0..=m {
                let rest: Vec<&Coords> = (0..=m).filter(|&k| k != i).map(|k| &units[k]).collect();
                let val = to_w(&c.evaluate_coords(&rest), vd);
                let s = alpha[i] ^ g.degree(t[i]).odd_with(&cv);
                acc.add_scaled(&l.pi[t[i]].apply(&val), &sign_q(s));
            }
            for i in 0..=m {
                for j in i + 1..=m {
                    let prod = full.evaluate_coords(&[&units[i], &units[j]]);
                    let mut args: Vec<&Coords> = vec![&prod];
                    args.extend((0..=m).filter(|&k| k != i && k != j).map(|k| &units[k]));
                    let s = alpha[i] ^ alpha[j] ^ g.degree(t[i]).odd_with(g.degree(t[j]));
                    acc.add_scaled(&to_w(&c.evaluate_coords(&args), vd), &sign_q(s));
                }
            }
            out.add_entry(t, &from_w(&acc, vd))?;
        }
        AltMap::canonicalize(&out)
    }
}

impl Complex for ChevalleyComplex {
    type Elem = AltMap;
    fn space(&self) -> &Arc<GradedSpace> {
        &self.e
    }
    fn arguments(&self) -> Range<usize> {
        0..self.v_dim
    }
    fn outputs(&self) -> Range<usize> {
        self.v_dim..self.e.dim()
    }
    fn shift(&self) -> SliceDegree {
        SliceDegree::new(1, Multidegree::zero(self.e.n()))
    }
    fn differential(&self, c: &AltMap) -> Result<AltMap> {
        self.check(c)?;
        bracket_wedge(&self.p, c)
    }
    fn label(&self, d: &SliceDegree) -> i64 {
        d.form + 1
    }
    fn slices_of_label(&self, label: i64) -> Result<Vec<SliceDegree>> {
        label_slices(self, label, label - 1)
    }
}

/// `A(𝓔)` of a graded Lie algebra `(𝓔, μ)` with `𝔻 = [μ,·]^∧`.
#[derive(Clone, Debug)]
pub struct AmbientComplex {
    pub mu: AltMap,
}

impl AmbientComplex {
    pub fn new(mu: AltMap) -> Result<Self> {
        if !AlgebraStructure::new(mu.expand())?.is_graded_lie()? {
            return Err(Error::NotAStructure("[mu,mu]^wedge != 0: not a graded Lie algebra".into()));
        }
        Ok(AmbientComplex { mu })
    }
}

impl Complex for AmbientComplex {
    type Elem = AltMap;
    fn space(&self) -> &Arc<GradedSpace> {
        self.mu.space()
    }
    fn arguments(&self) -> Range<usize> {
        0..self.mu.space().dim()
    }
    fn outputs(&self) -> Range<usize> {
        0..self.mu.space().dim()
    }
    fn shift(&self) -> SliceDegree {
        SliceDegree::new(1, Multidegree::zero(self.mu.space().n()))
    }
    fn differential(&self, c: &AltMap) -> Result<AltMap> {
        bracket_wedge(&self.mu, c)
    }
    fn label(&self, d: &SliceDegree) -> i64 {
        d.form
    }
    fn slices_of_label(&self, label: i64) -> Result<Vec<SliceDegree>> {
        label_slices(self, label, label)
    }
}

/// `𝓔` itself with `∂_P X = [P,X]`, for a structure `P` of degree `θ`.
#[derive(Clone, Debug)]
pub struct AdjointComplex {
    pub mu: AltMap,
    pub p: Coords,
    pub theta: Multidegree,
}

impl AdjointComplex {
    pub fn new(mu: AltMap, p: Coords, theta: Multidegree) -> Result<Self> {
        let space = mu.space();
        for i in p.indices() {
            if space.degree(i) != &theta {
                return Err(Error::Homogeneity(format!("P has a component of degree {}", space.degree(i))));
            }
        }
        if !mu.evaluate_coords(&[&p, &p]).is_zero() {
            return Err(Error::NotAStructure("[P,P] != 0".into()));
        }
        Ok(AdjointComplex { mu, p, theta })
    }
}

impl Complex for AdjointComplex {
    type Elem = AltMap;
    fn space(&self) -> &Arc<GradedSpace> {
        self.mu.space()
    }
    fn arguments(&self) -> Range<usize> {
        0..0
    }
    fn outputs(&self) -> Range<usize> {
        0..self.mu.space().dim()
    }
    fn shift(&self) -> SliceDegree {
        SliceDegree::new(0, self.theta.clone())
    }
    fn differential(&self, c: &AltMap) -> Result<AltMap> {
        let x = c.entries().get(&vec![]).cloned().unwrap_or_default();
        let y = self.mu.evaluate_coords(&[&self.p, &x]);
        let w = c.weight() + &self.theta;
        AltMap::from_canonical_entries(self.mu.space(), -1, w, [(vec![], y)])
    }
    fn label(&self, _: &SliceDegree) -> i64 {
        0
    }
    fn slices_of_label(&self, label: i64) -> Result<Vec<SliceDegree>> {
        if label != 0 {
            return Ok(vec![]);
        }
        let mut ws: Vec<Multidegree> = self.mu.space().basis().iter().map(|b| b.degree.clone()).collect();
        ws.sort();
        ws.dedup();
        Ok(ws.into_iter().map(|w| SliceDegree::new(-1, w)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::{compute_cohomology, square};
    use crate::fixtures;
    use crate::random::{random_multimap_with_weight, rng};
    use crate::scalar::q;

    #[test]
    fn q_hochschild_dims() {
        let h = HochschildComplex::new(fixtures::q_bimodule()).unwrap();
        let r = compute_cohomology(&h, 0..=3).unwrap();
        let dims: Vec<usize> = r.dims().values().copied().collect();
        assert_eq!(dims, vec![1, 0, 0, 0]);
    }

    #[test]
    fn hochschild_constant_on_ext() {
        let b = fixtures::ext_algebra().regular_bimodule().unwrap();
        let h = HochschildComplex::new(b).unwrap();
        let mut r = rng(5);
        let mut seen = 0;
        for form in -1..=1 {
            for w in weights_of_form(&h, form).unwrap() {
                let c = random_multimap_with_weight(&mut r, &h.e, form, w, 0.7);
                let c = restrict(&c, h.v_dim);
                let lhs = h.differential(&c).unwrap();
                let rhs = h.explicit(&c).unwrap().scaled(&q(HOCHSCHILD_CONSTANT));
                assert_eq!(lhs, rhs, "form {form}");
                assert!(square(&h, &c).unwrap().is_zero());
                seen += usize::from(!lhs.is_zero());
            }
        }
        assert!(seen > 0);
    }

    fn restrict(c: &MultiMap, vd: usize) -> MultiMap {
        let entries = c
            .entries()
            .iter()
            .filter(|(k, _)| k.iter().all(|&i| i < vd))
            .map(|(k, v)| (k.clone(), Coords::from_pairs(v.iter().filter(|(o, _)| *o >= vd).map(|(o, x)| (o, x.clone())))));
        MultiMap::from_entries(c.space(), c.form(), c.weight().clone(), entries).unwrap()
    }

    #[test]
    fn sl2_and_abel() {
        let c = ChevalleyComplex::new(fixtures::sl2_adjoint()).unwrap();
        let r = compute_cohomology(&c, 0..=3).unwrap();
        assert_eq!(r.dims().values().copied().collect::<Vec<_>>(), vec![0; 4]);
        let a = ChevalleyComplex::new(fixtures::abel1_trivial()).unwrap();
        let r = compute_cohomology(&a, 0..=2).unwrap();
        assert_eq!(r.dims().values().copied().collect::<Vec<_>>(), vec![1, 1, 0]);
    }

    #[test]
    fn chevalley_constant_graded() {
        for l in [fixtures::sl2_adjoint(), LieModuleStructure::adjoint(fixtures::gl11_bracket()).unwrap()] {
            let ch = ChevalleyComplex::new(l).unwrap();
            let mut r = rng(9);
            let mut seen = 0;
            for form in -1..=1 {
                for w in weights_of_form(&ch, form).unwrap() {
                    let c = random_multimap_with_weight(&mut r, &ch.e, form, w, 0.7);
                    let c = crate::multimap::alternator(&restrict(&c, ch.v_dim));
                    let lhs = ch.differential(&c).unwrap();
                    let rhs = ch.explicit(&c).unwrap().scaled(&q(CHEVALLEY_CONSTANT));
                    assert_eq!(lhs, rhs, "form {form}");
                    assert!(square(&ch, &c).unwrap().is_zero());
                    seen += usize::from(!lhs.is_zero());
                }
            }
            assert!(seen > 0);
        }
    }
}
