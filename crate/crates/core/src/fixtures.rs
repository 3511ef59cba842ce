//! Built-in example structures.
//!
//! The TOML files under `fixtures/` are generated from these constructors
//! and checked against them byte for byte.

use std::sync::Arc;

use crate::brackets::GradedEndo;
use crate::error::Result;
use crate::grading::Multidegree;
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::{AltMap, MultiMap};
use crate::scalar::q;
use crate::structures::{AlgebraStructure, BimoduleStructure, LieModuleStructure};

fn table(space: &Arc<GradedSpace>, rows: &[(&str, &str, &[(&str, i64)])]) -> Result<MultiMap> {
    let mut m = MultiMap::zero(space, 1, Multidegree::zero(space.n()))?;
    for (a, b, out) in rows {
        let mut c = Coords::default();
        for (name, x) in out.iter() {
            c.add_term(space.index_of(name)?, &q(*x));
        }
        m.add_entry(vec![space.index_of(a)?, space.index_of(b)?], &c)?;
    }
    Ok(m)
}

/// ℚ with `e·e = e`, ungraded.
pub fn q_algebra() -> AlgebraStructure {
    let v = GradedSpace::build(0, &[("e", &[])]).unwrap();
    AlgebraStructure::new(table(&v, &[("e", "e", &[("e", 1)])]).unwrap()).unwrap()
}

/// ℚ as a bimodule over itself.
pub fn q_bimodule() -> BimoduleStructure {
    q_algebra().regular_bimodule().unwrap()
}

/// The exterior algebra `ℚ[ξ]/(ξ²)` with `ξ` of degree 1.
pub fn ext_algebra() -> AlgebraStructure {
    let v = GradedSpace::build(1, &[("1", &[0]), ("xi", &[1])]).unwrap();
    let mu = table(
        &v,
        &[("1", "1", &[("1", 1)]), ("1", "xi", &[("xi", 1)]), ("xi", "1", &[("xi", 1)])],
    )
    .unwrap();
    AlgebraStructure::new(mu).unwrap()
}

/// 2×2 matrices over ℚ in the matrix-unit basis.
pub fn mat2_algebra() -> AlgebraStructure {
    let names = ["E11", "E12", "E21", "E22"];
    let basis: Vec<(&str, &[i64])> = names.iter().map(|n| (*n, &[][..])).collect();
    let v = GradedSpace::build(0, &basis).unwrap();
    let mut mu = MultiMap::zero(&v, 1, Multidegree(vec![])).unwrap();
    for (a, (i, j)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
        for (b, (k, l)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            if j == k {
                mu.add_entry(vec![a, b], &Coords::unit(2 * i + l)).unwrap();
            }
        }
    }
    AlgebraStructure::new(mu).unwrap()
}

fn lie(space: &Arc<GradedSpace>, rows: &[(&str, &str, &[(&str, i64)])]) -> AltMap {
    let m = table(space, rows).unwrap();
    let entries = m.entries().iter().map(|(k, v)| (k.clone(), v.clone()));
    AltMap::from_canonical_entries(space, 1, Multidegree::zero(space.n()), entries).unwrap()
}

/// sl₂ with `[h,e] = 2e`, `[h,f] = −2f`, `[e,f] = h`.
pub fn sl2_bracket() -> AltMap {
    let g = GradedSpace::build(0, &[("e", &[]), ("f", &[]), ("h", &[])]).unwrap();
    lie(&g, &[("e", "f", &[("h", 1)]), ("e", "h", &[("e", -2)]), ("f", "h", &[("f", 2)])])
}

/// The Heisenberg algebra `[x,y] = z`.
pub fn heis_bracket() -> AltMap {
    let g = GradedSpace::build(0, &[("x", &[]), ("y", &[]), ("z", &[])]).unwrap();
    lie(&g, &[("x", "y", &[("z", 1)])])
}

/// The one-dimensional abelian Lie algebra.
pub fn abel1_bracket() -> AltMap {
    let g = GradedSpace::build(0, &[("a", &[])]).unwrap();
    AltMap::zero(&g, 1, Multidegree(vec![])).unwrap()
}

pub fn sl2_adjoint() -> LieModuleStructure {
    LieModuleStructure::adjoint(sl2_bracket()).unwrap()
}

/// `ABEL1` acting trivially on a copy of ℚ.
pub fn abel1_trivial() -> LieModuleStructure {
    let w = GradedSpace::build(0, &[("w", &[])]).unwrap();
    LieModuleStructure::trivial(abel1_bracket(), w).unwrap()
}

/// `gl(1|1)`: endomorphisms of `ℚ ⊕ ℚ[−1]` under the graded commutator,
/// `E_ij` of degree `i − j`.
pub fn gl11_bracket() -> AltMap {
    gl_graded(&[0, 1])
}

/// Endomorphisms of `⊕ᵢ ℚ[−dᵢ]` under the graded commutator, `n = 1`,
/// with `E_ij` (sending basis vector `j` to `i`) of degree `dᵢ − d_j`.
pub fn gl_graded(degrees: &[i64]) -> AltMap {
    let r = degrees.len();
    let idx: Vec<(usize, usize)> = (0..r).flat_map(|i| (0..r).map(move |j| (i, j))).collect();
    let names: Vec<String> = idx.iter().map(|(i, j)| format!("E{i}{j}")).collect();
    let degs: Vec<[i64; 1]> = idx.iter().map(|&(i, j)| [degrees[i] - degrees[j]]).collect();
    let basis: Vec<(&str, &[i64])> = names.iter().zip(&degs).map(|(n, d)| (n.as_str(), &d[..])).collect();
    let g = GradedSpace::build(1, &basis).unwrap();
    let pos = |i: usize, j: usize| i * r + j;
    let mut m = MultiMap::zero(&g, 1, Multidegree(vec![0])).unwrap();
    for (a, &(i, j)) in idx.iter().enumerate() {
        for (b, &(k, l)) in idx.iter().enumerate() {
            let mut c = Coords::default();
            if j == k {
                c.add_term(pos(i, l), &q(1));
            }
            if l == i {
                let odd = ((degrees[i] - degrees[j]) * (degrees[k] - degrees[l])).rem_euclid(2) == 1;
                c.add_term(pos(k, j), &q(if odd { 1 } else { -1 }));
            }
            m.add_entry(vec![a, b], &c).unwrap();
        }
    }
    AltMap::canonicalize(&m).unwrap()
}

/// sl₂ with `[e,f] = e` instead of `h`; Jacobi fails on `(e,f,h)`.
pub fn sl2_perturbed_bracket() -> AltMap {
    let g = sl2_bracket().space().clone();
    lie(&g, &[("e", "f", &[("e", 1)]), ("e", "h", &[("e", -2)]), ("f", "h", &[("f", 2)])])
}

/// The exterior algebra with `1·1 = 2·1`; no longer associative.
pub fn ext_perturbed() -> AlgebraStructure {
    let a = ext_algebra();
    let mut mu = a.mu.clone();
    mu.add_entry(vec![0, 0], &Coords::unit(0)).unwrap();
    AlgebraStructure::new(mu).unwrap()
}

/// Every named fixture with its kind.
pub fn catalog() -> Vec<(&'static str, Fixture)> {
    vec![
        ("q", Fixture::Bimodule(q_bimodule())),
        ("ext", Fixture::Algebra(ext_algebra())),
        ("mat2", Fixture::Algebra(mat2_algebra())),
        ("sl2", Fixture::LieModule(sl2_adjoint())),
        ("heis", Fixture::Lie(heis_bracket())),
        ("abel1", Fixture::LieModule(abel1_trivial())),
        ("gl11", Fixture::Lie(gl11_bracket())),
    ]
}

#[derive(Clone, Debug)]
pub enum Fixture {
    Algebra(AlgebraStructure),
    Lie(AltMap),
    Bimodule(BimoduleStructure),
    LieModule(LieModuleStructure),
}

/// Scales `λ` by an integer, used for negative examples.
pub fn scale_family(f: &[GradedEndo], s: i64) -> Vec<GradedEndo> {
    f.iter().map(|e| e.scaled(&q(s))).collect()
}
