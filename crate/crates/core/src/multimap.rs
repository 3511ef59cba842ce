//! Homogeneous multilinear maps `K ∈ M^{(k,κ)}(V)`, their sums, and the
//! graded-alternating maps `A(V)` in canonical sorted-tuple storage.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grading::{koszul_sign, sum_degrees, Multidegree, TotalDegree};
use crate::gspace::{degree_of_coords, Coords, GradedSpace, Homogeneity, Vector};
use crate::scalar::{factorial, sign_q, Q};

/// A `(k+1)`-linear map of form degree `k ≥ -1` and weight `κ`, stored by
/// basis index tuples. Form degree `-1` holds a single vector under the empty key.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiMap {
    space: Arc<GradedSpace>,
    form: i64,
    weight: Multidegree,
    entries: BTreeMap<Vec<usize>, Coords>,
}

impl MultiMap {
    /// The zero map. Form degree `-2` is accepted so that brackets of two
    /// vectors have somewhere to land; such maps can hold no entries.
    pub fn zero(space: &Arc<GradedSpace>, form: i64, weight: Multidegree) -> Result<Self> {
        if form < -2 {
            return Err(Error::Degree(format!("form degree {form} < -2")));
        }
        if weight.len() != space.n() {
            return Err(Error::Dimension { expected: space.n(), got: weight.len() });
        }
        Ok(MultiMap { space: space.clone(), form, weight, entries: BTreeMap::new() })
    }

    /// Builds a map from `(inputs, output)` pairs, validating homogeneity.
    pub fn from_entries(
        space: &Arc<GradedSpace>,
        form: i64,
        weight: Multidegree,
        entries: impl IntoIterator<Item = (Vec<usize>, Coords)>,
    ) -> Result<Self> {
        let mut m = Self::zero(space, form, weight)?;
        for (key, value) in entries {
            m.add_entry(key, &value)?;
        }
        Ok(m)
    }

    /// A vector of `V` seen as an element of `M^{(-1,x)}(V)`.
    pub fn from_vector(v: &Vector) -> Result<Self> {
        let weight = match v.degree() {
            Homogeneity::Degree(d) => d,
            Homogeneity::Any => Multidegree::zero(v.space.n()),
            Homogeneity::Inhomogeneous => {
                return Err(Error::Homogeneity("inhomogeneous vector".into()))
            }
        };
        Self::from_entries(&v.space, -1, weight, [(vec![], v.coords.clone())])
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        &self.space
    }

    pub fn form(&self) -> i64 {
        self.form
    }

    pub fn arity(&self) -> usize {
        (self.form + 1).max(0) as usize
    }

    pub fn weight(&self) -> &Multidegree {
        &self.weight
    }

    pub fn degree(&self) -> TotalDegree {
        TotalDegree::new(self.form, self.weight.clone())
    }

    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Coords> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &[usize]) -> Coords {
        self.entries.get(key).cloned().unwrap_or_default()
    }

    /// Expected output degree on a basis tuple.
    pub fn output_degree(&self, key: &[usize]) -> Multidegree {
        let s = sum_degrees(self.space.n(), key.iter().map(|&i| self.space.degree(i)));
        &s + &self.weight
    }

    /// Adds `value` to the entry at `key`.
    pub fn add_entry(&mut self, key: Vec<usize>, value: &Coords) -> Result<()> {
        if self.form < -1 {
            return Err(Error::Degree("form degree -2 maps are always zero".into()));
        }
        if key.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: key.len() });
        }
        if let Some(&bad) = key.iter().find(|&&i| i >= self.space.dim()) {
            return Err(Error::UnknownName(format!("basis index {bad}")));
        }
        if value.is_zero() {
            return Ok(());
        }
        let want = self.output_degree(&key);
        match degree_of_coords(&self.space, value) {
            Homogeneity::Degree(d) if d != want => {
                return Err(Error::Homogeneity(format!(
                    "entry {} has output degree {d}, expected {want}",
                    self.describe_key(&key)
                )))
            }
            Homogeneity::Inhomogeneous => {
                return Err(Error::Homogeneity(format!(
                    "entry {} is inhomogeneous",
                    self.describe_key(&key)
                )))
            }
            _ => {}
        }
        self.add_unchecked(key, value, &Q::one());
        Ok(())
    }

    pub(crate) fn add_unchecked(&mut self, key: Vec<usize>, value: &Coords, s: &Q) {
        let slot = self.entries.entry(key.clone()).or_default();
        slot.add_scaled(value, s);
        if slot.is_zero() {
            self.entries.remove(&key);
        }
    }

    pub fn describe_key(&self, key: &[usize]) -> String {
        let names: Vec<&str> = key.iter().map(|&i| self.space.name(i)).collect();
        format!("({})", names.join(","))
    }

    fn check_compatible(&self, other: &MultiMap) -> Result<()> {
        if !GradedSpace::same(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        if self.form != other.form || self.weight != other.weight {
            return Err(Error::Degree(format!(
                "cannot add maps of degrees {} and {}",
                self.degree(),
                other.degree()
            )));
        }
        Ok(())
    }

    /// `self + s·other`; a zero operand of any degree is accepted.
    pub fn add_scaled(&self, other: &MultiMap, s: &Q) -> Result<MultiMap> {
        if other.is_zero() || s.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() && (self.form != other.form || self.weight != other.weight) {
            return Ok(other.scaled(s));
        }
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_unchecked(k.clone(), v, s);
        }
        Ok(out)
    }

    pub fn add(&self, other: &MultiMap) -> Result<MultiMap> {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &MultiMap) -> Result<MultiMap> {
        self.add_scaled(other, &-Q::one())
    }

    pub fn scaled(&self, s: &Q) -> MultiMap {
        let mut out = MultiMap {
            space: self.space.clone(),
            form: self.form,
            weight: self.weight.clone(),
            entries: BTreeMap::new(),
        };
        if !s.is_zero() {
            for (k, v) in &self.entries {
                out.entries.insert(k.clone(), v.scaled(s));
            }
        }
        out
    }

    /// The vector held by a form degree `-1` map.
    pub fn as_vector(&self) -> Result<Vector> {
        if self.form != -1 {
            return Err(Error::Degree(format!("form degree {} is not -1", self.form)));
        }
        Ok(Vector::new(self.space.clone(), self.get(&[])))
    }

    /// Multilinear evaluation on sparse coordinates.
    pub fn evaluate_coords(&self, args: &[&Coords]) -> Coords {
        assert_eq!(args.len(), self.arity());
        let mut out = Coords::default();
        for (key, value) in &self.entries {
            let mut c = Q::one();
            for (a, &i) in args.iter().zip(key) {
                let x = a.get(i);
                if x.is_zero() {
                    c = Q::zero();
                    break;
                }
                c *= x;
            }
            out.add_scaled(value, &c);
        }
        out
    }

    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity() {
            return Err(Error::Arity { expected: self.arity(), got: args.len() });
        }
        if args.iter().any(|a| !GradedSpace::same(&a.space, &self.space)) {
            return Err(Error::SpaceMismatch);
        }
        let refs: Vec<&Coords> = args.iter().map(|a| &a.coords).collect();
        Ok(Vector::new(self.space.clone(), self.evaluate_coords(&refs)))
    }

    /// Re-checks the homogeneity invariant on every entry.
    pub fn audit(&self) -> Result<()> {
        for (k, v) in &self.entries {
            let want = self.output_degree(k);
            match degree_of_coords(&self.space, v) {
                Homogeneity::Degree(d) if d == want => {}
                Homogeneity::Any => {}
                _ => {
                    return Err(Error::Homogeneity(format!(
                        "entry {} violates degree {want}",
                        self.describe_key(k)
                    )))
                }
            }
        }
        Ok(())
    }

    pub(crate) fn with_entries(
        space: &Arc<GradedSpace>,
        form: i64,
        weight: Multidegree,
        entries: BTreeMap<Vec<usize>, Coords>,
    ) -> Self {
        MultiMap { space: space.clone(), form, weight, entries }
    }
}

/// Sorting data for a basis tuple: the sorted tuple `u` and the sign
/// `s(σ, x_u)` of the rearrangement with `t_p = u_{σ(p)}`.
/// Returns `None` if alternation forces the value on `t` to vanish.
pub(crate) fn sort_tuple(space: &GradedSpace, t: &[usize]) -> Option<(Vec<usize>, i32)> {
    let mut order: Vec<usize> = (0..t.len()).collect();
    order.sort_by_key(|&p| (t[p], p));
    let u: Vec<usize> = order.iter().map(|&p| t[p]).collect();
    for w in u.windows(2) {
        if w[0] == w[1] {
            let d = space.degree(w[0]);
            if !d.odd_with(d) {
                return None;
            }
        }
    }
    // sigma(p) = position of t_p in u
    let mut sigma = vec![0; t.len()];
    for (pos, &p) in order.iter().enumerate() {
        sigma[p] = pos;
    }
    let xs: Vec<Multidegree> = u.iter().map(|&i| space.degree(i).clone()).collect();
    Some((u, koszul_sign(&sigma, &xs)))
}

/// Product of factorials of the multiplicities in a sorted tuple.
fn stabilizer_order(u: &[usize]) -> Q {
    let mut acc = Q::one();
    let mut run = 1;
    for i in 1..=u.len() {
        if i < u.len() && u[i] == u[i - 1] {
            run += 1;
        } else {
            acc *= factorial(run);
            run = 1;
        }
    }
    acc
}

/// All distinct rearrangements `t` of a sorted tuple `u`.
fn rearrangements(u: &[usize]) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    if u.is_empty() {
        return vec![vec![]];
    }
    let mut out: Vec<Vec<usize>> = (0..u.len())
        .permutations(u.len())
        .map(|p| p.iter().map(|&i| u[i]).collect())
        .collect();
    out.sort();
    out.dedup();
    out
}

/// A graded-alternating map in canonical storage: entries only on
/// non-decreasing index tuples, none on tuples forced to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltMap {
    inner: MultiMap,
}

impl AltMap {
    pub fn zero(space: &Arc<GradedSpace>, form: i64, weight: Multidegree) -> Result<Self> {
        Ok(AltMap { inner: MultiMap::zero(space, form, weight)? })
    }

    /// Builds from canonical entries: each key is sorted first, picking up
    /// the multigraded sign; forced-zero keys are rejected.
    pub fn from_canonical_entries(
        space: &Arc<GradedSpace>,
        form: i64,
        weight: Multidegree,
        entries: impl IntoIterator<Item = (Vec<usize>, Coords)>,
    ) -> Result<Self> {
        let mut inner = MultiMap::zero(space, form, weight)?;
        for (key, value) in entries {
            if value.is_zero() {
                continue;
            }
            let (u, s) = sort_tuple(space, &key).ok_or_else(|| {
                Error::NotAlternating(format!("value on {} is forced to zero", inner.describe_key(&key)))
            })?;
            inner.add_entry(u, &value.scaled(&sign_q(s < 0)))?;
        }
        Ok(AltMap { inner })
    }

    pub fn from_vector(v: &Vector) -> Result<Self> {
        Ok(AltMap { inner: MultiMap::from_vector(v)? })
    }

    /// Verifies alternation and re-keys to sorted tuples.
    pub fn canonicalize(k: &MultiMap) -> Result<AltMap> {
        let space = k.space().clone();
        let mut canon = MultiMap::zero(&space, k.form(), k.weight().clone())?;
        for key in k.entries().keys() {
            if let Some((u, _)) = sort_tuple(&space, key) {
                if !canon.entries.contains_key(&u) {
                    let v = k.get(&u);
                    if !v.is_zero() {
                        canon.entries.insert(u, v);
                    }
                }
            }
        }
        let alt = AltMap { inner: canon };
        if alt.expand() != *k {
            let culprit = k
                .entries()
                .iter()
                .find(|(key, v)| alt.value_on(key) != **v)
                .map(|(key, _)| k.describe_key(key))
                .unwrap_or_else(|| "a missing permuted entry".into());
            return Err(Error::NotAlternating(format!("mismatch at {culprit}")));
        }
        Ok(alt)
    }

    pub fn space(&self) -> &Arc<GradedSpace> {
        self.inner.space()
    }

    pub fn form(&self) -> i64 {
        self.inner.form()
    }

    pub fn arity(&self) -> usize {
        self.inner.arity()
    }

    pub fn weight(&self) -> &Multidegree {
        self.inner.weight()
    }

    pub fn degree(&self) -> TotalDegree {
        self.inner.degree()
    }

    pub fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    /// Canonical entries (sorted keys).
    pub fn entries(&self) -> &BTreeMap<Vec<usize>, Coords> {
        self.inner.entries()
    }

    pub fn canonical(&self) -> &MultiMap {
        &self.inner
    }

    /// Value on an arbitrary basis tuple.
    pub fn value_on(&self, t: &[usize]) -> Coords {
        match sort_tuple(self.space(), t) {
            None => Coords::default(),
            Some((u, s)) => self.inner.get(&u).scaled(&sign_q(s < 0)),
        }
    }

    /// The full table over all index tuples.
    pub fn expand(&self) -> MultiMap {
        let space = self.space().clone();
        let mut out = BTreeMap::new();
        for (u, v) in self.inner.entries() {
            for t in rearrangements(u) {
                let (_, s) = sort_tuple(&space, &t).expect("canonical key is admissible");
                out.insert(t, v.scaled(&sign_q(s < 0)));
            }
        }
        MultiMap::with_entries(&space, self.form(), self.weight().clone(), out)
    }

    pub fn evaluate(&self, args: &[Vector]) -> Result<Vector> {
        self.expand().evaluate(args)
    }

    pub fn evaluate_coords(&self, args: &[&Coords]) -> Coords {
        self.expand().evaluate_coords(args)
    }

    pub fn add_scaled(&self, other: &AltMap, s: &Q) -> Result<AltMap> {
        Ok(AltMap { inner: self.inner.add_scaled(&other.inner, s)? })
    }

    pub fn add(&self, other: &AltMap) -> Result<AltMap> {
        self.add_scaled(other, &Q::one())
    }

    pub fn sub(&self, other: &AltMap) -> Result<AltMap> {
        self.add_scaled(other, &-Q::one())
    }

    pub fn scaled(&self, s: &Q) -> AltMap {
        AltMap { inner: self.inner.scaled(s) }
    }

    pub fn as_vector(&self) -> Result<Vector> {
        self.inner.as_vector()
    }
}

/// The multigraded alternator
/// `(αK)(X₀,…,X_k) = 1/(k+1)! Σ_σ s(σ,x) K(X_{σ0},…,X_{σk})`.
///
/// Computed per sorted tuple: every stored entry contributes once to the
/// sorted rearrangement of its key, with the stabilizer multiplicity.
pub fn alternator(k: &MultiMap) -> AltMap {
    let space = k.space().clone();
    let denom = factorial(k.arity());
    let mut out = MultiMap::with_entries(&space, k.form(), k.weight().clone(), BTreeMap::new());
    for (t, v) in k.entries() {
        if let Some((u, s)) = sort_tuple(&space, t) {
            let c = sign_q(s < 0) * stabilizer_order(&u) / &denom;
            out.add_unchecked(u, v, &c);
        }
    }
    AltMap { inner: out }
}

/// Reference alternator summing over all `(k+1)!` permutations on every
/// basis tuple. Quadratic in the table size; kept as an independent route.
pub fn alternator_by_permutations(k: &MultiMap) -> MultiMap {
    use crate::grading::{sign_recursive, Permutation};
    let space = k.space().clone();
    let perms = Permutation::all(k.arity());
    let denom = factorial(k.arity());
    let mut out = MultiMap::with_entries(&space, k.form(), k.weight().clone(), BTreeMap::new());
    for u in tuples(space.dim(), k.arity()) {
        let xs: Vec<Multidegree> = u.iter().map(|&i| space.degree(i).clone()).collect();
        for sigma in &perms {
            let t = sigma.permute(&u);
            let v = k.get(&t);
            if v.is_zero() {
                continue;
            }
            let s = sign_recursive(sigma, &xs).expect("sizes match");
            out.add_unchecked(u.clone(), &v, &(sign_q(s < 0) / &denom));
        }
    }
    out
}

/// All index tuples of the given length over `0..dim`.
pub fn tuples(dim: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        let mut next = Vec::with_capacity(out.len() * dim);
        for t in &out {
            for i in 0..dim {
                let mut s = t.clone();
                s.push(i);
                next.push(s);
            }
        }
        out = next;
    }
    out
}

/// Something with a total degree that can be summed with like-degree peers.
pub trait Component: Clone + PartialEq {
    fn total_degree(&self) -> TotalDegree;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Result<Self>;
    fn times(&self, s: &Q) -> Self;
}

impl Component for MultiMap {
    fn total_degree(&self) -> TotalDegree {
        self.degree()
    }
    fn is_zero(&self) -> bool {
        MultiMap::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn times(&self, s: &Q) -> Self {
        self.scaled(s)
    }
}

impl Component for AltMap {
    fn total_degree(&self) -> TotalDegree {
        self.degree()
    }
    fn is_zero(&self) -> bool {
        AltMap::is_zero(self)
    }
    fn plus(&self, other: &Self) -> Result<Self> {
        self.add(other)
    }
    fn times(&self, s: &Q) -> Self {
        self.scaled(s)
    }
}

/// A finite sum of homogeneous components with pairwise distinct degrees.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain<T: Component> {
    components: BTreeMap<TotalDegree, T>,
}

impl<T: Component> Default for Cochain<T> {
    fn default() -> Self {
        Cochain { components: BTreeMap::new() }
    }
}

impl<T: Component> Cochain<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_component(c: T) -> Self {
        let mut out = Self::default();
        out.push(c).expect("single component");
        out
    }

    /// Adds a component, merging with the one of equal degree and dropping zeros.
    pub fn push(&mut self, c: T) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        let d = c.total_degree();
        let merged = match self.components.remove(&d) {
            Some(old) => old.plus(&c)?,
            None => c,
        };
        if !merged.is_zero() {
            self.components.insert(d, merged);
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for c in other.components.values() {
            out.push(c.clone())?;
        }
        Ok(out)
    }

    pub fn scaled(&self, s: &Q) -> Self {
        let mut out = Self::default();
        for c in self.components.values() {
            out.push(c.times(s)).expect("distinct degrees");
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scaled(&-Q::one()))
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = &T> {
        self.components.values()
    }

    pub fn component(&self, d: &TotalDegree) -> Option<&T> {
        self.components.get(d)
    }
}
