//! Insertion operators and the two graded brackets.
//!
//! `[,]^Δ` lives on all multilinear maps `M(V)`, `[,]^∧` on the alternating
//! ones `A(V)`. Both are graded over `ℤ^{1+n}` by `(form, weight)`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::{sign_recursive, Multidegree, Permutation, TotalDegree};
use crate::gspace::{degree_of_coords, Coords, GradedSpace, Homogeneity, Vector};
use crate::multimap::{alternator, tuples, AltMap, Cochain, MultiMap};
use crate::scalar::{factorial, sign_q, Q};

/// A linear endomorphism `D` with `D(V^x) ⊆ V^{x+δ}`, stored by basis images.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedEndo {
    space: Arc<GradedSpace>,
    degree: Multidegree,
    images: BTreeMap<usize, Coords>,
}

impl GradedEndo {
    pub fn new(
        space: &Arc<GradedSpace>,
        degree: Multidegree,
        images: impl IntoIterator<Item = (usize, Coords)>,
    ) -> Result<Self> {
        if degree.len() != space.n() {
            return Err(Error::Dimension { expected: space.n(), got: degree.len() });
        }
        let mut out = GradedEndo { space: space.clone(), degree, images: BTreeMap::new() };
        for (i, img) in images {
            if img.is_zero() {
                continue;
            }
            let want = space.degree(i) + &out.degree;
            match degree_of_coords(space, &img) {
                Homogeneity::Degree(d) if d == want => {}
                _ => {
                    return Err(Error::Homogeneity(format!(
                        "image of {} must have degree {want}",
                        space.name(i)
                    )))
                }
            }
            let slot = out.images.entry(i).or_default();
            *slot = slot.add(&img);
        }
        out.images.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn zero(space: &Arc<GradedSpace>, degree: Multidegree) -> Self {
        GradedEndo { space: space.clone(), degree, images: BTreeMap::new() }
    }

    pub fn identity(space: &Arc<GradedSpace>) -> Self {
        GradedEndo {
            space: space.clone(),
            degree: Multidegree::zero(space.n()),
            images: (0..space.dim()).map(|i| (i, Coords::unit(i))).collect(),
        }
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn degree(&self) -> &Multidegree {
        &self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.images.is_empty()
    }

    pub fn image(&self, i: usize) -> Coords {
        self.images.get(&i).cloned().unwrap_or_default()
    }

    pub fn apply(&self, v: &Coords) -> Coords {
        let mut out = Coords::default();
        for (i, x) in v.iter() {
            if let Some(img) = self.images.get(&i) {
                out.add_scaled(img, x);
            }
        }
        out
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &GradedEndo) -> Result<GradedEndo> {
        if !GradedSpace::same(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|(&i, img)| (i, self.apply(img)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Ok(GradedEndo { space: self.space.clone(), degree: &self.degree + &other.degree, images })
    }

    /// `self + s·other`; zero operands of any degree are accepted.
    pub fn add_scaled(&self, other: &GradedEndo, s: &Q) -> Result<GradedEndo> {
        if !GradedSpace::same(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if other.is_zero() || s.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.scaled(s));
        }
        if self.degree != other.degree {
            return Err(Error::Degree(format!(
                "cannot add endomorphisms of degrees {} and {}",
                self.degree, other.degree
            )));
        }
        let mut out = self.clone();
        for (&i, img) in &other.images {
            let slot = out.images.entry(i).or_default();
            slot.add_scaled(img, s);
        }
        out.images.retain(|_, v| !v.is_zero());
        Ok(out)
    }

    pub fn scaled(&self, s: &Q) -> GradedEndo {
        let mut out = self.clone();
        out.images = self.images.iter().map(|(&i, v)| (i, v.scaled(s))).collect();
        out.images.retain(|_, v| !v.is_zero());
        out
    }

    /// The same map as an element of `M^{(0,δ)}(V)`.
    pub fn to_multimap(&self) -> MultiMap {
        let entries = self.images.iter().map(|(&i, v)| (vec![i], v.clone())).collect();
        MultiMap::with_entries(&self.space, 0, self.degree.clone(), entries)
    }

    pub fn from_multimap(m: &MultiMap) -> Result<GradedEndo> {
        if m.form() != 0 {
            return Err(Error::Degree(format!("form degree {} is not 0", m.form())));
        }
        GradedEndo::new(
            m.space(),
            m.weight().clone(),
            m.entries().iter().map(|(k, v)| (k[0], v.clone())),
        )
    }
}

/// `[D₁,D₂] = D₁∘D₂ − (−1)^{⟨δ₁,δ₂⟩} D₂∘D₁`.
pub fn graded_commutator(d1: &GradedEndo, d2: &GradedEndo) -> Result<GradedEndo> {
    let a = d1.compose(d2)?;
    let b = d2.compose(d1)?;
    let s = -sign_q(d1.degree.odd_with(&d2.degree));
    a.add_scaled(&b, &s)
}

/// Checks `D(X·Y) = D(X)·Y + (−1)^{⟨δ,x⟩} X·D(Y)` on all basis pairs.
pub fn is_derivation(d: &GradedEndo, mu: &MultiMap) -> Result<bool> {
    if mu.form() != 1 {
        return Err(Error::Degree("derivation check needs a bilinear map".into()));
    }
    if !GradedSpace::same(d.space(), mu.space()) {
        return Err(Error::SpaceMismatch);
    }
    let dim = mu.space().dim();
    for x in 0..dim {
        for y in 0..dim {
            let ex = Coords::unit(x);
            let ey = Coords::unit(y);
            let lhs = d.apply(&mu.evaluate_coords(&[&ex, &ey]));
            let dx = d.apply(&ex);
            let dy = d.apply(&ey);
            let mut rhs = mu.evaluate_coords(&[&dx, &ey]);
            let s = sign_q(d.degree().odd_with(mu.space().degree(x)));
            rhs.add_scaled(&mu.evaluate_coords(&[&ex, &dy]), &s);
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_same_space(a: &Arc<GradedSpace>, b: &Arc<GradedSpace>) -> Result<()> {
    if GradedSpace::same(a, b) {
        Ok(())
    } else {
        Err(Error::SpaceMismatch)
    }
}

/// The insertion operator:
/// `(j(K₁)K₂)(X₀,…) = Σᵢ (−1)^{k₁i + ⟨κ₁, κ₂+x₀+⋯+x_{i−1}⟩} K₂(X₀,…,K₁(Xᵢ,…,X_{i+k₁}),…)`.
pub fn j_insert(k1: &MultiMap, k2: &MultiMap) -> Result<MultiMap> {
    check_same_space(k1.space(), k2.space())?;
    let space = k1.space().clone();
    let form = k1.form() + k2.form();
    let weight = k1.weight() + k2.weight();
    let mut out = MultiMap::zero(&space, form.max(-2), weight)?;
    if form < -1 || k2.form() < 0 {
        return Ok(out);
    }
    // K₁ entries indexed by the basis vectors in their output
    let mut by_output: HashMap<usize, Vec<(&Vec<usize>, &Q)>> = HashMap::new();
    for (key, val) in k1.entries() {
        for (b, c) in val.iter() {
            by_output.entry(b).or_default().push((key, c));
        }
    }
    let n = space.n();
    let kappa1 = k1.weight();
    for (key2, val2) in k2.entries() {
        let mut prefix = k2.weight().clone();
        for (i, &b) in key2.iter().enumerate() {
            if let Some(list) = by_output.get(&b) {
                let odd = (k1.form() * i as i64).rem_euclid(2) == 1;
                let negative = odd ^ kappa1.odd_with(&prefix);
                for &(key1, c) in list {
                    let mut key = Vec::with_capacity(key2.len() + key1.len() - 1);
                    key.extend_from_slice(&key2[..i]);
                    key.extend_from_slice(key1);
                    key.extend_from_slice(&key2[i + 1..]);
                    let coeff = if negative { -c.clone() } else { c.clone() };
                    out.add_unchecked(key, val2, &coeff);
                }
            }
            prefix = if n == 0 { prefix } else { &prefix + space.degree(b) };
        }
    }
    Ok(out)
}

/// `[K₁,K₂]^Δ = j(K₁)K₂ − (−1)^{k₁k₂+⟨κ₁,κ₂⟩} j(K₂)K₁`.
pub fn bracket_delta(k1: &MultiMap, k2: &MultiMap) -> Result<MultiMap> {
    let a = j_insert(k1, k2)?;
    let b = j_insert(k2, k1)?;
    let s = -sign_q(k1.degree().odd_with(&k2.degree()));
    a.add_scaled(&b, &s)
}

fn insertion_factor(k1: i64, k2: i64) -> Q {
    let f = |k: i64| factorial((k + 1).max(0) as usize);
    f(k1 + k2) / (f(k1) * f(k2))
}

/// `i(K₁)K₂ = (k₁+k₂+1)!/((k₁+1)!(k₂+1)!) · α(j(K₁)K₂)`.
pub fn i_insert(k1: &AltMap, k2: &AltMap) -> Result<AltMap> {
    let j = j_insert(&k1.expand(), &k2.expand())?;
    if j.form() < -1 {
        return AltMap::zero(k1.space(), -2, j.weight().clone());
    }
    Ok(alternator(&j).scaled(&insertion_factor(k1.form(), k2.form())))
}

/// The closed form of `i(K₁)K₂` as a sum over all permutations:
/// `1/((k₁+1)! k₂!) Σ_σ s(σ,x) (−1)^{⟨κ₁,κ₂⟩} K₂(K₁(X_{σ0},…,X_{σk₁}), X_{σ(k₁+1)},…)`.
pub fn i_insert_explicit(k1: &AltMap, k2: &AltMap) -> Result<AltMap> {
    check_same_space(k1.space(), k2.space())?;
    let space = k1.space().clone();
    let form = k1.form() + k2.form();
    let weight = k1.weight() + k2.weight();
    if k2.form() < 0 || form < -1 {
        return AltMap::zero(&space, form.max(-2), weight);
    }
    let full1 = k1.expand();
    let full2 = k2.expand();
    let a1 = k1.arity();
    let total = (form + 1) as usize;
    let scale = sign_q(k1.weight().odd_with(k2.weight()))
        / (factorial(a1) * factorial(k2.form() as usize));
    let perms = Permutation::all(total);
    let mut out = MultiMap::zero(&space, form, weight)?;
    for u in tuples(space.dim(), total) {
        let xs: Vec<Multidegree> = u.iter().map(|&i| space.degree(i).clone()).collect();
        let mut acc = Coords::default();
        for sigma in &perms {
            let t = sigma.permute(&u);
            let inner = full1.get(&t[..a1]);
            if inner.is_zero() {
                continue;
            }
            let rest: Vec<Coords> = t[a1..].iter().map(|&i| Coords::unit(i)).collect();
            let mut args: Vec<&Coords> = vec![&inner];
            args.extend(rest.iter());
            let val = full2.evaluate_coords(&args);
            let s = sign_recursive(sigma, &xs)?;
            acc.add_scaled(&val, &sign_q(s < 0));
        }
        if !acc.is_zero() {
            out.add_entry(u, &acc.scaled(&scale))?;
        }
    }
    AltMap::canonicalize(&out)
}

/// `[K₁,K₂]^∧ = i(K₁)K₂ − (−1)^{⟨(k₁,κ₁),(k₂,κ₂)⟩} i(K₂)K₁`.
pub fn bracket_wedge(k1: &AltMap, k2: &AltMap) -> Result<AltMap> {
    let a = i_insert(k1, k2)?;
    let b = i_insert(k2, k1)?;
    let s = -sign_q(k1.degree().odd_with(&k2.degree()));
    a.add_scaled(&b, &s)
}

/// `[K₁,K₂]^∧` through the factorial-scaled alternation of `[K₁,K₂]^Δ`.
pub fn bracket_wedge_via_delta(k1: &AltMap, k2: &AltMap) -> Result<AltMap> {
    let d = bracket_delta(&k1.expand(), &k2.expand())?;
    if d.form() < -1 {
        return AltMap::zero(k1.space(), -2, d.weight().clone());
    }
    Ok(alternator(&d).scaled(&insertion_factor(k1.form(), k2.form())))
}

/// Bilinear extension of `[,]^Δ` to sums of components.
pub fn cochain_bracket_delta(a: &Cochain<MultiMap>, b: &Cochain<MultiMap>) -> Result<Cochain<MultiMap>> {
    let mut out = Cochain::zero();
    for x in a.components() {
        for y in b.components() {
            let z = bracket_delta(x, y)?;
            if z.form() >= -1 {
                out.push(z)?;
            }
        }
    }
    Ok(out)
}

/// Bilinear extension of `[,]^∧` to sums of components.
pub fn cochain_bracket_wedge(a: &Cochain<AltMap>, b: &Cochain<AltMap>) -> Result<Cochain<AltMap>> {
    let mut out = Cochain::zero();
    for x in a.components() {
        for y in b.components() {
            let z = bracket_wedge(x, y)?;
            if z.form() >= -1 {
                out.push(z)?;
            }
        }
    }
    Ok(out)
}

/// A multigraded Lie algebra `E` whose form degree `-1` part is `V`,
/// presented through its bracket.
pub trait LieOracle {
    type Elem: Clone;
    /// The space `V = E^{(-1,*)}`.
    fn base(&self) -> &Arc<GradedSpace>;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn embed(&self, v: &Vector) -> Result<Self::Elem>;
    /// Coordinates of an element of `E^{(-1,*)}`.
    fn extract(&self, e: &Self::Elem) -> Result<Coords>;
    fn degree(&self, e: &Self::Elem) -> TotalDegree;
}

/// `M(V)` with `[,]^Δ`.
pub struct DeltaAlgebra(pub Arc<GradedSpace>);

impl LieOracle for DeltaAlgebra {
    type Elem = MultiMap;
    fn base(&self) -> &Arc<GradedSpace> {
        &self.0
    }
    fn bracket(&self, a: &MultiMap, b: &MultiMap) -> Result<MultiMap> {
        bracket_delta(a, b)
    }
    fn embed(&self, v: &Vector) -> Result<MultiMap> {
        MultiMap::from_vector(v)
    }
    fn extract(&self, e: &MultiMap) -> Result<Coords> {
        Ok(e.as_vector()?.coords)
    }
    fn degree(&self, e: &MultiMap) -> TotalDegree {
        e.degree()
    }
}

/// `A(V)` with `[,]^∧`.
pub struct WedgeAlgebra(pub Arc<GradedSpace>);

impl LieOracle for WedgeAlgebra {
    type Elem = AltMap;
    fn base(&self) -> &Arc<GradedSpace> {
        &self.0
    }
    fn bracket(&self, a: &AltMap, b: &AltMap) -> Result<AltMap> {
        bracket_wedge(a, b)
    }
    fn embed(&self, v: &Vector) -> Result<AltMap> {
        AltMap::from_vector(v)
    }
    fn extract(&self, e: &AltMap) -> Result<Coords> {
        Ok(e.as_vector()?.coords)
    }
    fn degree(&self, e: &AltMap) -> TotalDegree {
        e.degree()
    }
}

/// The canonical morphism `ε : E → A(V)`.
///
/// Defined by `ε(X) = X` on `V` and `ε(Z)(X₀, X₁, …, X_k) = (−1)^{⟨x₀,z⟩} ε([X₀,Z])(X₁, …, X_k)`,
/// i.e. `i(X)∘ε = ε∘ad X`. Unrolled, `X₀` is the innermost argument:
/// `ε(Z)(X₀,…,X_k) = (−1)^{Σᵢ⟨xᵢ, z+x₀+⋯+x_{i−1}⟩} [X_k,[…,[X₀,Z]…]]`.
pub fn epsilon_morphism<L: LieOracle>(e: &L, z: &L::Elem) -> Result<AltMap> {
    let space = e.base().clone();
    let deg = e.degree(z);
    if deg.form < -1 {
        return Err(Error::Degree(format!("form degree {} below -1", deg.form)));
    }
    let arity = (deg.form + 1) as usize;
    let basis: Vec<L::Elem> =
        (0..space.dim()).map(|i| e.embed(&space.basis_vector(i))).collect::<Result<_>>()?;
    // (arguments so far, accumulated sign, current bracket)
    let mut layer: Vec<(Vec<usize>, bool, L::Elem)> = vec![(vec![], false, z.clone())];
    for _ in 0..arity {
        let mut next = Vec::with_capacity(layer.len() * space.dim());
        for (prefix, negative, inner) in &layer {
            let w = e.degree(inner).weight;
            for (i, x) in basis.iter().enumerate() {
                let mut key = prefix.clone();
                key.push(i);
                let s = *negative ^ space.degree(i).odd_with(&w);
                next.push((key, s, e.bracket(x, inner)?));
            }
        }
        layer = next;
    }
    let mut table = MultiMap::zero(&space, deg.form, deg.weight.clone())?;
    for (key, negative, value) in layer {
        let c = e.extract(&value)?;
        if c.is_zero() {
            continue;
        }
        table.add_entry(key, &c.scaled(&sign_q(negative))).map_err(|err| {
            Error::Degree(format!("bracket oracle broke homogeneity: {err}"))
        })?;
    }
    AltMap::canonicalize(&table)
}

/// `ε` restricted to `M^{(k,*)}(V)` is expected to be `(k+1)!·α`.
pub fn scaled_alternator(k: &MultiMap) -> AltMap {
    alternator(k).scaled(&factorial(k.arity()))
}
