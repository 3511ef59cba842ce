//! Finite-dimensional `ℤⁿ`-graded vector spaces over `ℚ`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::Multidegree;
use crate::scalar::Q;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    pub name: String,
    pub degree: Multidegree,
}

/// A graded space given by a basis of homogeneous vectors.
#[derive(Clone, Debug)]
pub struct GradedSpace {
    n: usize,
    basis: Vec<BasisVector>,
    index: HashMap<String, usize>,
}

impl PartialEq for GradedSpace {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.basis == other.basis
    }
}

impl Eq for GradedSpace {}

impl GradedSpace {
    pub fn new(n: usize, basis: Vec<(String, Multidegree)>) -> Result<Self> {
        let mut index = HashMap::new();
        let mut out = Vec::with_capacity(basis.len());
        for (i, (name, degree)) in basis.into_iter().enumerate() {
            if degree.len() != n {
                return Err(Error::Dimension { expected: n, got: degree.len() });
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateName(name));
            }
            out.push(BasisVector { name, degree });
        }
        Ok(GradedSpace { n, basis: out, index })
    }

    /// Convenience constructor from string slices and integer slices.
    pub fn build(n: usize, basis: &[(&str, &[i64])]) -> Result<Arc<Self>> {
        Self::new(
            n,
            basis.iter().map(|(s, d)| (s.to_string(), Multidegree(d.to_vec()))).collect(),
        )
        .map(Arc::new)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn degree(&self, i: usize) -> &Multidegree {
        &self.basis[i].degree
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Basis indices of the given degree.
    pub fn indices_of_degree(&self, d: &Multidegree) -> Vec<usize> {
        (0..self.dim()).filter(|&i| &self.basis[i].degree == d).collect()
    }

    pub fn basis_vector(self: &Arc<Self>, i: usize) -> Vector {
        Vector { space: self.clone(), coords: Coords::unit(i) }
    }

    pub fn zero_vector(self: &Arc<Self>) -> Vector {
        Vector { space: self.clone(), coords: Coords::default() }
    }

    pub fn same(a: &Arc<Self>, b: &Arc<Self>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// Sparse coordinates with respect to a basis; zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coords(BTreeMap<usize, Q>);

impl Coords {
    pub fn unit(i: usize) -> Self {
        let mut m = BTreeMap::new();
        m.insert(i, Q::from_integer(1.into()));
        Coords(m)
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, Q)>) -> Self {
        let mut c = Coords::default();
        for (i, x) in pairs {
            c.add_term(i, &x);
        }
        c
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.0.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Q)> {
        self.0.iter().map(|(&i, x)| (i, x))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, i: usize, x: &Q) {
        if x.is_zero() {
            return;
        }
        let slot = self.0.entry(i).or_insert_with(Q::zero);
        *slot += x;
        if slot.is_zero() {
            self.0.remove(&i);
        }
    }

    /// `self += s · other`
    pub fn add_scaled(&mut self, other: &Coords, s: &Q) {
        if s.is_zero() {
            return;
        }
        for (&i, x) in &other.0 {
            self.add_term(i, &(x * s));
        }
    }

    pub fn scaled(&self, s: &Q) -> Coords {
        if s.is_zero() {
            return Coords::default();
        }
        Coords(self.0.iter().map(|(&i, x)| (i, x * s)).collect())
    }

    pub fn sub(&self, other: &Coords) -> Coords {
        let mut out = self.clone();
        out.add_scaled(other, &-Q::from_integer(1.into()));
        out
    }

    pub fn add(&self, other: &Coords) -> Coords {
        let mut out = self.clone();
        out.add_scaled(other, &Q::from_integer(1.into()));
        out
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }
}

/// Degree of a vector: a single multidegree, no constraint (zero), or mixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Degree(Multidegree),
    Any,
    Inhomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vector {
    pub space: Arc<GradedSpace>,
    pub coords: Coords,
}

impl Vector {
    pub fn new(space: Arc<GradedSpace>, coords: Coords) -> Self {
        Vector { space, coords }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    pub fn degree(&self) -> Homogeneity {
        degree_of_coords(&self.space, &self.coords)
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        if !GradedSpace::same(&self.space, &other.space) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Vector { space: self.space.clone(), coords: self.coords.add(&other.coords) })
    }

    pub fn scaled(&self, s: &Q) -> Vector {
        Vector { space: self.space.clone(), coords: self.coords.scaled(s) }
    }
}

pub fn degree_of(v: &Vector) -> Homogeneity {
    v.degree()
}

pub(crate) fn degree_of_coords(space: &GradedSpace, c: &Coords) -> Homogeneity {
    let mut deg: Option<&Multidegree> = None;
    for i in c.indices() {
        let d = space.degree(i);
        match deg {
            None => deg = Some(d),
            Some(e) if e != d => return Homogeneity::Inhomogeneous,
            _ => {}
        }
    }
    match deg {
        Some(d) => Homogeneity::Degree(d.clone()),
        None => Homogeneity::Any,
    }
}

/// The `(1+n)`-graded space with `V` in form slot 0 and `W` in form slot 1.
///
/// Basis order is `V` then `W`; the new coordinate comes first.
pub fn suspend(v: &GradedSpace, w: &GradedSpace) -> Result<Arc<GradedSpace>> {
    if v.n() != w.n() {
        return Err(Error::Dimension { expected: v.n(), got: w.n() });
    }
    let basis = v
        .basis()
        .iter()
        .map(|b| (b.name.clone(), b.degree.prepend(0)))
        .chain(w.basis().iter().map(|b| (b.name.clone(), b.degree.prepend(1))))
        .collect();
    GradedSpace::new(v.n() + 1, basis).map(Arc::new)
}

/// Copies of `V` and `W` with disjoint names (`W` names get a prime when they clash).
pub fn disjoint_names(v: &GradedSpace, w: &GradedSpace) -> Result<GradedSpace> {
    let taken: std::collections::HashSet<&str> = v.basis().iter().map(|b| b.name.as_str()).collect();
    let basis = w
        .basis()
        .iter()
        .map(|b| {
            let mut name = b.name.clone();
            while taken.contains(name.as_str()) {
                name.push('\'');
            }
            (name, b.degree.clone())
        })
        .collect();
    GradedSpace::new(w.n(), basis)
}
