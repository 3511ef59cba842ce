//! Seeded generators for random graded spaces and homogeneous maps.
//!
//! Used by the property and acceptance suites; coefficients are small
//! integers so every computation stays exact and cheap.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::brackets::GradedEndo;
use crate::grading::{sum_degrees, Multidegree};
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::{alternator, tuples, AltMap, MultiMap};
use crate::scalar::q;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A space of dimension `1..=max_dim` over `ℤⁿ` with entries in `-1..=1`.
pub fn random_space(rng: &mut TestRng, n: usize, max_dim: usize) -> Arc<GradedSpace> {
    let dim = rng.gen_range(1..=max_dim);
    let basis = (0..dim)
        .map(|i| {
            let d = (0..n).map(|_| rng.gen_range(-1..=1)).collect();
            (format!("v{i}"), Multidegree(d))
        })
        .collect();
    Arc::new(GradedSpace::new(n, basis).expect("valid random space"))
}

/// A weight for which some basis tuple of the given arity has a possible output.
pub fn random_weight(rng: &mut TestRng, space: &GradedSpace, arity: usize) -> Multidegree {
    let t: Vec<usize> = (0..arity).map(|_| rng.gen_range(0..space.dim())).collect();
    let b = rng.gen_range(0..space.dim());
    let s = sum_degrees(space.n(), t.iter().map(|&i| space.degree(i)));
    space.degree(b) - &s
}

/// A random homogeneous map of the given form degree, weight and density.
pub fn random_multimap_with_weight(
    rng: &mut TestRng,
    space: &Arc<GradedSpace>,
    form: i64,
    weight: Multidegree,
    density: f64,
) -> MultiMap {
    let mut m = MultiMap::zero(space, form, weight).expect("valid degree");
    let arity = (form + 1) as usize;
    for t in tuples(space.dim(), arity) {
        let want = m.output_degree(&t);
        let outs = space.indices_of_degree(&want);
        let mut c = Coords::default();
        for o in outs {
            if rng.gen_bool(density) {
                let x: i64 = *[-2, -1, 1, 2].choose(rng).unwrap();
                c.add_term(o, &q(x));
            }
        }
        m.add_entry(t, &c).expect("homogeneous by construction");
    }
    m
}

pub fn random_multimap(rng: &mut TestRng, space: &Arc<GradedSpace>, form: i64) -> MultiMap {
    let w = random_weight(rng, space, (form + 1) as usize);
    random_multimap_with_weight(rng, space, form, w, 0.6)
}

pub fn random_altmap(rng: &mut TestRng, space: &Arc<GradedSpace>, form: i64) -> AltMap {
    alternator(&random_multimap(rng, space, form))
}

pub fn random_altmap_with_weight(
    rng: &mut TestRng,
    space: &Arc<GradedSpace>,
    form: i64,
    weight: Multidegree,
) -> AltMap {
    alternator(&random_multimap_with_weight(rng, space, form, weight, 0.6))
}

/// A random vector of the given degree (zero if no basis vector has it).
pub fn random_coords_of_degree(rng: &mut TestRng, space: &GradedSpace, d: &Multidegree) -> Coords {
    let mut c = Coords::default();
    for i in space.indices_of_degree(d) {
        c.add_term(i, &q(rng.gen_range(-2..=2)));
    }
    c
}

fn perturbation(rng: &mut TestRng, space: &GradedSpace, m: &MultiMap, key: &[usize]) -> Coords {
    let outs = space.indices_of_degree(&m.output_degree(key));
    let mut c = Coords::default();
    if let Some(&o) = outs.choose(rng) {
        c.add_term(o, &q(rng.gen_range(-1..=1)));
    }
    c
}

/// Adds entries in `{−1,0,1}` at `count` random homogeneous positions.
pub fn perturb_multimap(rng: &mut TestRng, m: &MultiMap, count: usize) -> MultiMap {
    let space = m.space().clone();
    let mut out = m.clone();
    for _ in 0..count {
        let key: Vec<usize> = (0..m.arity()).map(|_| rng.gen_range(0..space.dim())).collect();
        let c = perturbation(rng, &space, m, &key);
        out.add_entry(key, &c).expect("homogeneous by construction");
    }
    out
}

/// As [`perturb_multimap`], on canonical keys so the result stays alternating.
pub fn perturb_altmap(rng: &mut TestRng, m: &AltMap, count: usize) -> AltMap {
    let space = m.space().clone();
    let mut entries: Vec<(Vec<usize>, Coords)> =
        m.entries().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    let mut added = 0;
    while added < count {
        let mut key: Vec<usize> = (0..m.arity()).map(|_| rng.gen_range(0..space.dim())).collect();
        key.sort();
        if crate::multimap::sort_tuple(&space, &key).is_none() {
            continue;
        }
        let c = perturbation(rng, &space, m.canonical(), &key);
        entries.push((key, c));
        added += 1;
    }
    AltMap::from_canonical_entries(&space, m.form(), m.weight().clone(), entries).expect("canonical keys")
}

/// Adds `±1` or `0` to one random homogeneous matrix entry of one member of the family.
pub fn perturb_family(rng: &mut TestRng, fam: &[GradedEndo]) -> Vec<GradedEndo> {
    let mut out = fam.to_vec();
    if out.is_empty() {
        return out;
    }
    let i = rng.gen_range(0..out.len());
    let e = &out[i];
    let w = e.space().clone();
    if w.dim() == 0 {
        return out;
    }
    let y = rng.gen_range(0..w.dim());
    let target = w.degree(y) + e.degree();
    if let Some(&o) = w.indices_of_degree(&target).choose(rng) {
        let bump = GradedEndo::new(&w, e.degree().clone(), [(y, Coords::unit(o))]).expect("homogeneous");
        out[i] = e.add_scaled(&bump, &q(rng.gen_range(-1..=1))).expect("same space");
    }
    out
}
