//! Cochain complexes built from a structure element, and their cohomology.

mod complexes;
mod cup;

pub use complexes::{
    AdjointComplex, AmbientComplex, ChevalleyComplex, HochschildComplex, CHEVALLEY_CONSTANT,
    HOCHSCHILD_CONSTANT,
};
pub use cup::{
    check_p_nu_compat, cup_product_delta, cup_product_wedge, nu_alternating, nu_on_suspension,
    Compatibility,
};

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Range;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::grading::{sum_degrees, Multidegree};
use crate::gspace::{Coords, GradedSpace};
use crate::linalg::{extend_basis, Matrix};
use crate::multimap::{sort_tuple, AltMap, MultiMap};
use crate::scalar::Q;

/// Largest number of argument tuples scanned to enumerate one slice.
pub const TUPLE_LIMIT: usize = 2_000_000;
/// Largest slice dimension turned into a matrix.
pub const SLICE_LIMIT: usize = 4096;

/// A cochain type whose values can be addressed by `(argument tuple, output index)`.
pub trait SliceElem: Clone + Sized {
    const ALTERNATING: bool;
    fn slice_entries(&self) -> &BTreeMap<Vec<usize>, Coords>;
    fn assemble(
        space: &Arc<GradedSpace>,
        form: i64,
        weight: Multidegree,
        entries: Vec<(Vec<usize>, Coords)>,
    ) -> Result<Self>;
    fn elem_form(&self) -> i64;
    fn elem_weight(&self) -> &Multidegree;
}

impl SliceElem for MultiMap {
    const ALTERNATING: bool = false;
    fn slice_entries(&self) -> &BTreeMap<Vec<usize>, Coords> {
        self.entries()
    }
    fn assemble(
        space: &Arc<GradedSpace>,
        form: i64,
        weight: Multidegree,
        entries: Vec<(Vec<usize>, Coords)>,
    ) -> Result<Self> {
        MultiMap::from_entries(space, form, weight, entries)
    }
    fn elem_form(&self) -> i64 {
        self.form()
    }
    fn elem_weight(&self) -> &Multidegree {
        self.weight()
    }
}

impl SliceElem for AltMap {
    const ALTERNATING: bool = true;
    fn slice_entries(&self) -> &BTreeMap<Vec<usize>, Coords> {
        self.entries()
    }
    fn assemble(
        space: &Arc<GradedSpace>,
        form: i64,
        weight: Multidegree,
        entries: Vec<(Vec<usize>, Coords)>,
    ) -> Result<Self> {
        AltMap::from_canonical_entries(space, form, weight, entries)
    }
    fn elem_form(&self) -> i64 {
        self.form()
    }
    fn elem_weight(&self) -> &Multidegree {
        self.weight()
    }
}

/// A homogeneous component `(form, weight)` of a cochain space.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SliceDegree {
    pub form: i64,
    pub weight: Multidegree,
}

impl SliceDegree {
    pub fn new(form: i64, weight: Multidegree) -> Self {
        SliceDegree { form, weight }
    }

    pub fn shifted(&self, by: &SliceDegree) -> SliceDegree {
        SliceDegree { form: self.form + by.form, weight: &self.weight + &by.weight }
    }

    pub fn unshifted(&self, by: &SliceDegree) -> SliceDegree {
        SliceDegree { form: self.form - by.form, weight: &self.weight - &by.weight }
    }
}

/// A finite-dimensional graded complex with a differential of fixed degree.
pub trait Complex {
    type Elem: SliceElem;
    fn space(&self) -> &Arc<GradedSpace>;
    /// Basis indices allowed as arguments.
    fn arguments(&self) -> Range<usize>;
    /// Basis indices allowed as outputs.
    fn outputs(&self) -> Range<usize>;
    /// Degree of the differential.
    fn shift(&self) -> SliceDegree;
    fn differential(&self, c: &Self::Elem) -> Result<Self::Elem>;
    /// Cohomological degree of a slice, as reported to users.
    fn label(&self, d: &SliceDegree) -> i64;
    /// Slices of a cohomological degree.
    fn slices_of_label(&self, label: i64) -> Result<Vec<SliceDegree>>;
}

/// The basis of one slice: `(argument tuple, output index)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    pub degree: SliceDegree,
    pub keys: Vec<(Vec<usize>, usize)>,
}

impl Slice {
    pub fn dim(&self) -> usize {
        self.keys.len()
    }

    pub fn position(&self) -> BTreeMap<(&[usize], usize), usize> {
        self.keys.iter().enumerate().map(|(i, (t, o))| ((t.as_slice(), *o), i)).collect()
    }
}

fn arg_tuples(args: Range<usize>, len: usize, alternating: bool, space: &GradedSpace) -> Result<Vec<Vec<usize>>> {
    let width = args.len();
    let total = (width as f64).powi(len as i32);
    if total > TUPLE_LIMIT as f64 {
        return Err(Error::Resource(format!(
            "{width}^{len} argument tuples exceed the limit of {TUPLE_LIMIT}"
        )));
    }
    let mut out = Vec::new();
    let mut cur = vec![args.start; len];
    if width == 0 && len > 0 {
        return Ok(out);
    }
    loop {
        let keep = !alternating || (cur.windows(2).all(|w| w[0] <= w[1]) && sort_tuple(space, &cur).is_some());
        if keep {
            out.push(cur.clone());
        }
        let mut p = len;
        loop {
            if p == 0 {
                return Ok(out);
            }
            p -= 1;
            cur[p] += 1;
            if cur[p] < args.end {
                break;
            }
            cur[p] = args.start;
        }
    }
}

/// Enumerates the slice basis of a complex.
pub fn slice<C: Complex>(c: &C, d: &SliceDegree) -> Result<Slice> {
    let space = c.space();
    let mut keys = Vec::new();
    if d.form < -1 {
        return Ok(Slice { degree: d.clone(), keys });
    }
    let outs = c.outputs();
    for t in arg_tuples(c.arguments(), (d.form + 1) as usize, C::Elem::ALTERNATING, space)? {
        let want = &sum_degrees(space.n(), t.iter().map(|&i| space.degree(i))) + &d.weight;
        for o in space.indices_of_degree(&want) {
            if outs.contains(&o) {
                keys.push((t.clone(), o));
            }
        }
    }
    if keys.len() > SLICE_LIMIT {
        return Err(Error::Resource(format!(
            "slice (form {}, weight {}) has dimension {} > {SLICE_LIMIT}",
            d.form,
            d.weight,
            keys.len()
        )));
    }
    Ok(Slice { degree: d.clone(), keys })
}

/// All weights occurring among basis cochains of a form degree.
pub fn weights_of_form<C: Complex>(c: &C, form: i64) -> Result<Vec<Multidegree>> {
    let space = c.space();
    let mut set = BTreeSet::new();
    if form < -1 {
        return Ok(vec![]);
    }
    for t in arg_tuples(c.arguments(), (form + 1) as usize, C::Elem::ALTERNATING, space)? {
        let s = sum_degrees(space.n(), t.iter().map(|&i| space.degree(i)));
        for o in c.outputs() {
            set.insert(space.degree(o) - &s);
        }
    }
    Ok(set.into_iter().collect())
}

/// The element with the given coordinates in a slice basis.
pub fn element<C: Complex>(c: &C, s: &Slice, coords: &[Q]) -> Result<C::Elem> {
    let mut entries: BTreeMap<Vec<usize>, Coords> = BTreeMap::new();
    for ((t, o), x) in s.keys.iter().zip(coords) {
        if !x.is_zero() {
            entries.entry(t.clone()).or_default().add_term(*o, x);
        }
    }
    C::Elem::assemble(c.space(), s.degree.form, s.degree.weight.clone(), entries.into_iter().collect())
}

/// Coordinates of an element in a slice basis; errors if it has support outside the slice.
pub fn coordinates<C: Complex>(s: &Slice, e: &C::Elem) -> Result<Vec<Q>> {
    let pos = s.position();
    let mut v = vec![Q::zero(); s.dim()];
    if e.slice_entries().is_empty() {
        return Ok(v);
    }
    if e.elem_form() != s.degree.form || e.elem_weight() != &s.degree.weight {
        return Err(Error::Invariant(format!(
            "element of degree ({}; {}) outside slice ({}; {})",
            e.elem_form(),
            e.elem_weight(),
            s.degree.form,
            s.degree.weight
        )));
    }
    for (t, val) in e.slice_entries() {
        for (o, x) in val.iter() {
            match pos.get(&(t.as_slice(), o)) {
                Some(&i) => v[i] = x.clone(),
                None => {
                    return Err(Error::Invariant(format!("component ({t:?} -> {o}) outside the complex")))
                }
            }
        }
    }
    Ok(v)
}

/// Matrix of the differential from `d` to `d + shift`, columns indexed by the source basis.
pub fn differential_matrix<C: Complex>(c: &C, d: &SliceDegree) -> Result<(Slice, Slice, Matrix)> {
    let src = slice(c, d)?;
    let tgt = slice(c, &d.shifted(&c.shift()))?;
    let mut cols = Vec::with_capacity(src.dim());
    for i in 0..src.dim() {
        let mut unit = vec![Q::zero(); src.dim()];
        unit[i] = num_traits::One::one();
        let e = element(c, &src, &unit)?;
        let img = c.differential(&e)?;
        cols.push(coordinates::<C>(&tgt, &img)?);
    }
    let m = Matrix::from_columns(tgt.dim(), &cols);
    Ok((src, tgt, m))
}

/// Cohomology of one slice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SliceCohomology {
    pub degree: SliceDegree,
    pub label: i64,
    pub dim: usize,
    pub kernel: usize,
    pub image: usize,
    pub h: usize,
    pub basis: Vec<(Vec<usize>, usize)>,
    /// Cocycles spanning a complement of the coboundaries, in slice coordinates.
    pub representatives: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CohomologyResult {
    pub labels: Vec<i64>,
    pub slices: Vec<SliceCohomology>,
}

impl CohomologyResult {
    /// Total dimension per cohomological degree.
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        let mut out: BTreeMap<i64, usize> = self.labels.iter().map(|&l| (l, 0)).collect();
        for s in &self.slices {
            *out.entry(s.label).or_insert(0) += s.h;
        }
        out
    }
}

pub fn slice_cohomology<C: Complex>(c: &C, d: &SliceDegree) -> Result<SliceCohomology> {
    let (src, _, out) = differential_matrix(c, d)?;
    let (_, _, into) = differential_matrix(c, &d.unshifted(&c.shift()))?;
    let kernel_basis = out.kernel();
    let image = into.rank();
    let kernel = kernel_basis.len();
    if image > kernel {
        return Err(Error::Invariant(format!("image {image} exceeds kernel {kernel}: d² ≠ 0")));
    }
    let image_cols: Vec<Vec<Q>> = (0..into.cols())
        .map(|j| (0..into.rows()).map(|i| into.get(i, j).clone()).collect())
        .collect();
    let chosen = extend_basis(src.dim(), &image_cols, &kernel_basis);
    if chosen.len() != kernel - image {
        return Err(Error::Invariant("coboundaries not contained in cocycles".into()));
    }
    Ok(SliceCohomology {
        label: c.label(d),
        degree: d.clone(),
        dim: src.dim(),
        kernel,
        image,
        h: kernel - image,
        basis: src.keys.clone(),
        representatives: chosen.into_iter().map(|i| kernel_basis[i].clone()).collect(),
    })
}

/// Cohomology in every slice of the given cohomological degrees.
pub fn compute_cohomology<C: Complex>(c: &C, labels: impl IntoIterator<Item = i64>) -> Result<CohomologyResult> {
    let mut out = CohomologyResult::default();
    for l in labels {
        out.labels.push(l);
        for d in c.slices_of_label(l)? {
            out.slices.push(slice_cohomology(c, &d)?);
        }
    }
    Ok(out)
}

/// `d∘d` applied to an element; zero for a complex.
pub fn square<C: Complex>(c: &C, e: &C::Elem) -> Result<C::Elem> {
    c.differential(&c.differential(e)?)
}
