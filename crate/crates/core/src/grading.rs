//! Multidegrees, total degrees and multigraded signs of permutations.
//!
//! A permutation `σ` acts on an argument list by `σx = (x_{σ0}, …, x_{σk})`.
//! The sign `s(σ, x)` is the one picked up when rearranging homogeneous
//! elements of degrees `x` into the order `σx`, where every adjacent swap of
//! neighbours of degrees `a`, `b` contributes `-(-1)^{⟨a,b⟩}`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of `ℤⁿ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
pub struct Multidegree(pub Vec<i64>);

impl Multidegree {
    pub fn new(components: Vec<i64>) -> Self {
        Multidegree(components)
    }

    pub fn zero(n: usize) -> Self {
        Multidegree(vec![0; n])
    }

    /// The unit vector `e_i` in `ℤⁿ`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Multidegree(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Prepends one coordinate, giving an element of `ℤ^{1+n}`.
    pub fn prepend(&self, first: i64) -> Self {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(first);
        v.extend_from_slice(&self.0);
        Multidegree(v)
    }

    /// Drops the first coordinate.
    pub fn tail(&self) -> Self {
        Multidegree(self.0[1..].to_vec())
    }

    pub fn scale(&self, s: i64) -> Self {
        Multidegree(self.0.iter().map(|c| c * s).collect())
    }

    /// Parity of `⟨self, other⟩`, panicking on length mismatch.
    pub fn odd_with(&self, other: &Multidegree) -> bool {
        dot(self, other) & 1 == 1
    }

    pub fn checked_add(&self, other: &Multidegree) -> Result<Multidegree> {
        check_len(self, other)?;
        Ok(self + other)
    }
}

fn check_len(x: &Multidegree, y: &Multidegree) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::Dimension { expected: x.len(), got: y.len() });
    }
    Ok(())
}

fn dot(x: &Multidegree, y: &Multidegree) -> i64 {
    assert_eq!(x.len(), y.len(), "multidegree length mismatch");
    x.0.iter().zip(&y.0).map(|(a, b)| a * b).sum()
}

impl fmt::Display for Multidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Multidegree {
    type Output = Multidegree;
    fn add(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Multidegree {
    type Output = Multidegree;
    fn sub(self, rhs: &Multidegree) -> Multidegree {
        assert_eq!(self.len(), rhs.len(), "multidegree length mismatch");
        Multidegree(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Multidegree {
    type Output = Multidegree;
    fn neg(self) -> Multidegree {
        Multidegree(self.0.iter().map(|a| -a).collect())
    }
}

/// `⟨x, y⟩ = Σ xⁱyⁱ`.
pub fn inner_product(x: &Multidegree, y: &Multidegree) -> Result<i64> {
    check_len(x, y)?;
    Ok(dot(x, y))
}

pub fn sum_degrees<'a>(n: usize, it: impl IntoIterator<Item = &'a Multidegree>) -> Multidegree {
    let mut acc = vec![0; n];
    for d in it {
        for (a, c) in acc.iter_mut().zip(&d.0) {
            *a += c;
        }
    }
    Multidegree(acc)
}

/// A pair `(k, κ)`: form degree and weight, graded over `ℤ^{1+n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TotalDegree {
    pub form: i64,
    pub weight: Multidegree,
}

impl TotalDegree {
    pub fn new(form: i64, weight: Multidegree) -> Self {
        TotalDegree { form, weight }
    }

    pub fn inner(&self, other: &TotalDegree) -> i64 {
        self.form * other.form + dot(&self.weight, &other.weight)
    }

    pub fn odd_with(&self, other: &TotalDegree) -> bool {
        self.inner(other) & 1 == 1
    }

    pub fn as_multidegree(&self) -> Multidegree {
        self.weight.prepend(self.form)
    }
}

impl Add for &TotalDegree {
    type Output = TotalDegree;
    fn add(self, rhs: &TotalDegree) -> TotalDegree {
        TotalDegree { form: self.form + rhs.form, weight: &self.weight + &rhs.weight }
    }
}

impl fmt::Display for TotalDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.form, self.weight)
    }
}

/// A bijection of `{0, …, k}` stored as `i ↦ σ(i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Degree(format!("not a bijection: {images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(size: usize) -> Self {
        Permutation { images: (0..size).collect() }
    }

    /// The adjacent transposition `(i, i+1)`.
    pub fn adjacent(size: usize, i: usize) -> Self {
        let mut images: Vec<usize> = (0..size).collect();
        images.swap(i, i + 1);
        Permutation { images }
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    /// `(σ∘τ)(i) = σ(τ(i))`.
    pub fn compose(&self, tau: &Permutation) -> Permutation {
        assert_eq!(self.size(), tau.size());
        Permutation { images: tau.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.size()];
        for (i, &s) in self.images.iter().enumerate() {
            inv[s] = i;
        }
        Permutation { images: inv }
    }

    /// `σx = (x_{σ0}, …, x_{σk})`.
    pub fn permute<T: Clone>(&self, xs: &[T]) -> Vec<T> {
        self.images.iter().map(|&i| xs[i].clone()).collect()
    }

    /// Ordinary sign, via the cycle decomposition.
    pub fn parity_sign(&self) -> i32 {
        cycle_sign(&self.images)
    }

    /// All permutations of `size` symbols in lexicographic order.
    pub fn all(size: usize) -> Vec<Permutation> {
        use itertools::Itertools;
        (0..size)
            .permutations(size)
            .map(|images| Permutation { images })
            .collect()
    }
}

fn cycle_sign(images: &[usize]) -> i32 {
    let mut seen = vec![false; images.len()];
    let mut sign = 1;
    for start in 0..images.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = images[i];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

fn check_sizes(sigma: &Permutation, x: &[Multidegree]) -> Result<()> {
    if sigma.size() != x.len() {
        return Err(Error::Dimension { expected: sigma.size(), got: x.len() });
    }
    if let Some(first) = x.first() {
        if let Some(bad) = x.iter().find(|d| d.len() != first.len()) {
            return Err(Error::Dimension { expected: first.len(), got: bad.len() });
        }
    }
    Ok(())
}

/// Multigraded sign through a decomposition into adjacent transpositions.
///
/// The target arrangement is built left to right by bubbling each element
/// into place; every swap is evaluated against the list as currently permuted.
pub fn sign_recursive(sigma: &Permutation, x: &[Multidegree]) -> Result<i32> {
    check_sizes(sigma, x)?;
    Ok(koszul_sign(sigma.images(), x))
}

/// Kernel of [`sign_recursive`] without validation: sign of rearranging `x`
/// into `(x_{order[0]}, x_{order[1]}, …)`.
pub(crate) fn koszul_sign(order: &[usize], x: &[Multidegree]) -> i32 {
    let mut cur: Vec<usize> = (0..order.len()).collect();
    let mut sign = 1;
    for (p, &target) in order.iter().enumerate() {
        let mut q = p + cur[p..].iter().position(|&e| e == target).expect("bijection");
        while q > p {
            let (a, b) = (cur[q - 1], cur[q]);
            if !x[a].odd_with(&x[b]) {
                sign = -sign;
            }
            cur.swap(q - 1, q);
            q -= 1;
        }
    }
    sign
}

/// Multigraded sign from the block formula: the ordinary sign of `σ` times,
/// for every grading coordinate `j`, the sign of the permutation moving
/// blocks of lengths `|x_i^j|` into the order prescribed by `σ`.
pub fn sign_direct(sigma: &Permutation, x: &[Multidegree]) -> Result<i32> {
    check_sizes(sigma, x)?;
    let n = x.first().map_or(0, |d| d.len());
    let mut sign = sigma.parity_sign();
    for j in 0..n {
        let lengths: Vec<usize> = x.iter().map(|d| d.0[j].unsigned_abs() as usize).collect();
        let mut starts = Vec::with_capacity(lengths.len());
        let mut acc = 0;
        for &l in &lengths {
            starts.push(acc);
            acc += l;
        }
        let mut expanded = Vec::with_capacity(acc);
        for &block in sigma.images() {
            expanded.extend(starts[block]..starts[block] + lengths[block]);
        }
        sign *= cycle_sign(&expanded);
    }
    Ok(sign)
}

/// Checks `s(σ∘τ, x) = s(σ, x)·s(τ, σx)`.
pub fn compose_signs_check(sigma: &Permutation, tau: &Permutation, x: &[Multidegree]) -> bool {
    let st = sigma.compose(tau);
    let lhs = sign_recursive(&st, x);
    let sx = sigma.permute(x);
    match (lhs, sign_recursive(sigma, x), sign_recursive(tau, &sx)) {
        (Ok(l), Ok(a), Ok(b)) => l == a * b,
        _ => false,
    }
}
