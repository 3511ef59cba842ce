//! Criteria 6 to 8: differentials, cohomology dimensions, cup products.

use std::time::{Duration, Instant};

use multigraded::cohomology::*;
use multigraded::fixtures as fx;
use multigraded::grading::Multidegree;
use multigraded::gspace::Coords;
use multigraded::multimap::{AltMap, MultiMap};
use multigraded::random::*;
use multigraded::scalar::{q, Q};
use multigraded::structures::{BimoduleStructure, LieModuleStructure};
use num_traits::Zero;
use rand::Rng;

use super::oracles::{self, Dense, Table};
use super::{ensure, sgn, Outcome};

fn random_coords(r: &mut TestRng, len: usize) -> Vec<Q> {
    (0..len).map(|_| q(r.gen_range(-3..=3))).collect()
}

/// Random elements of every nonempty slice with form in `forms`.
fn samples<C: Complex>(c: &C, forms: std::ops::RangeInclusive<i64>, per_slice: usize, r: &mut TestRng) -> Result<Vec<C::Elem>, String> {
    let mut out = Vec::new();
    for form in forms {
        for w in weights_of_form(c, form).map_err(|e| e.to_string())? {
            let s = slice(c, &SliceDegree::new(form, w)).map_err(|e| e.to_string())?;
            if s.dim() == 0 {
                continue;
            }
            for _ in 0..per_slice {
                out.push(element(c, &s, &random_coords(r, s.dim())).map_err(|e| e.to_string())?);
            }
        }
    }
    Ok(out)
}

fn hochschild_fixtures() -> Result<Vec<(&'static str, BimoduleStructure, i64)>, String> {
    Ok(vec![
        ("q", fx::q_bimodule(), 3),
        ("ext", fx::ext_algebra().regular_bimodule().map_err(|e| e.to_string())?, 2),
        ("mat2", fx::mat2_algebra().regular_bimodule().map_err(|e| e.to_string())?, 1),
    ])
}

fn chevalley_fixtures() -> Result<Vec<(&'static str, LieModuleStructure, i64)>, String> {
    Ok(vec![
        ("sl2 adjoint", fx::sl2_adjoint(), 2),
        ("abel1 trivial", fx::abel1_trivial(), 1),
        ("heis adjoint", LieModuleStructure::adjoint(fx::heis_bracket()).map_err(|e| e.to_string())?, 2),
        ("gl11 adjoint", LieModuleStructure::adjoint(fx::gl11_bracket()).map_err(|e| e.to_string())?, 2),
    ])
}

// 6. Differentials square to zero and agree with the explicit formulas.
pub fn criterion_6() -> Outcome {
    let mut r = rng(606);
    let (mut squares, mut probes_h, mut probes_c) = (0, 0, 0);
    let hc = q(HOCHSCHILD_CONSTANT);
    let cc = q(CHEVALLEY_CONSTANT);
    for (name, b, top) in hochschild_fixtures()? {
        let c = HochschildComplex::new(b).map_err(|e| e.to_string())?;
        for x in samples(&c, -1..=top, 8, &mut r)? {
            ensure!(square(&c, &x).map_err(|e| e.to_string())?.is_zero(), "{name}: delta^2 != 0 on form {}", x.form());
            squares += 1;
            let ex = c.explicit(&x).map_err(|e| e.to_string())?;
            let d = c.differential(&x).map_err(|e| e.to_string())?;
            ensure!(d == ex.scaled(&hc), "{name}: [P,C] != {HOCHSCHILD_CONSTANT} * explicit on form {}", x.form());
            probes_h += usize::from(!ex.is_zero());
        }
    }
    for (name, l, top) in chevalley_fixtures()? {
        let c = ChevalleyComplex::new(l).map_err(|e| e.to_string())?;
        for x in samples(&c, -1..=top, 3, &mut r)? {
            ensure!(square(&c, &x).map_err(|e| e.to_string())?.is_zero(), "{name}: d^2 != 0 on form {}", x.form());
            squares += 1;
            let ex = c.explicit(&x).map_err(|e| e.to_string())?;
            let d = c.differential(&x).map_err(|e| e.to_string())?;
            ensure!(d == ex.scaled(&cc), "{name}: [P,C] != {CHEVALLEY_CONSTANT} * explicit on form {}", x.form());
            probes_c += usize::from(!ex.is_zero());
        }
    }
    for (name, mu) in [("sl2", fx::sl2_bracket()), ("heis", fx::heis_bracket()), ("gl11", fx::gl11_bracket())] {
        let c = AmbientComplex::new(mu).map_err(|e| e.to_string())?;
        for x in samples(&c, -1..=1, 2, &mut r)? {
            ensure!(square(&c, &x).map_err(|e| e.to_string())?.is_zero(), "{name} ambient: D^2 != 0");
            squares += 1;
        }
    }
    ensure!(probes_h >= 50 && probes_c >= 50, "too few nonzero probes: {probes_h} Hochschild, {probes_c} Chevalley");
    Ok(format!(
        "{squares} d^2 checks; constants {HOCHSCHILD_CONSTANT} (Hochschild, {probes_h} probes) and {CHEVALLEY_CONSTANT} (Chevalley, {probes_c} probes)"
    ))
}

pub fn dense_vec(c: &Coords, offset: usize, len: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); len];
    for (i, x) in c.iter() {
        v[i - offset] = x.clone();
    }
    v
}

pub fn mult_table(mu: &MultiMap) -> Table {
    let d = mu.space().dim();
    (0..d)
        .map(|a| (0..d).map(|b| dense_vec(&mu.evaluate_coords(&[&Coords::unit(a), &Coords::unit(b)]), 0, d)).collect())
        .collect()
}

/// `table[a][w]` is the image of `w` under the operator `a`.
pub fn action_table(fam: &[multigraded::brackets::GradedEndo], w_dim: usize) -> Table {
    fam.iter().map(|f| (0..w_dim).map(|w| dense_vec(&f.apply(&Coords::unit(w)), 0, w_dim)).collect()).collect()
}

fn transpose(t: &Table) -> Table {
    let (a, b) = (t.len(), t.first().map_or(0, |r| r.len()));
    (0..b).map(|j| (0..a).map(|i| t[i][j].clone()).collect()).collect()
}

fn flat(d: &Dense) -> Vec<Q> {
    d.values.iter().flatten().cloned().collect()
}

/// Dimensions of the textbook complex in degrees `0..=top`, by naive rank.
fn oracle_dims(basis: &dyn Fn(usize) -> Vec<Dense>, d: &dyn Fn(&Dense) -> Dense, top: usize) -> Vec<usize> {
    let ranks: Vec<usize> = (0..=top)
        .map(|k| oracles::rank(&basis(k).iter().map(|f| flat(&d(f))).collect::<Vec<_>>()))
        .collect();
    (0..=top).map(|k| basis(k).len() - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }).collect()
}

fn unit_cochains(d: usize, out: usize, k: usize) -> Vec<Dense> {
    let mut v = Vec::new();
    for t in oracles::all_tuples(d, k) {
        for o in 0..out {
            let mut f = Dense::zero(d, out, k);
            let idx = f.index(&t);
            f.values[idx][o] = q(1);
            v.push(f);
        }
    }
    v
}

fn alternating_cochains(d: usize, out: usize, k: usize) -> Vec<Dense> {
    let mut v = Vec::new();
    for t in oracles::all_tuples(d, k) {
        if !t.windows(2).all(|w| w[0] < w[1]) {
            continue;
        }
        for o in 0..out {
            let mut f = Dense::zero(d, out, k);
            for p in oracles::permutations(k) {
                let u: Vec<usize> = p.iter().map(|&i| t[i]).collect();
                let idx = f.index(&u);
                f.values[idx][o] = q(oracles::parity(&p));
            }
            v.push(f);
        }
    }
    v
}

fn main_dims<C: Complex>(c: &C, top: i64) -> Result<Vec<usize>, String> {
    let res = compute_cohomology(c, 0..=top).map_err(|e| e.to_string())?;
    Ok(res.dims().values().cloned().collect())
}

// 7. Cohomology dimensions against a naive oracle.
pub fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut lines = Vec::new();

    let b = fx::q_bimodule();
    let (vd, wd) = (b.v.dim(), b.w.dim());
    let (mu, left, right) = (mult_table(&b.mu), action_table(&b.lam, wd), transpose(&action_table(&b.rho, wd)));
    let main = main_dims(&HochschildComplex::new(b).map_err(|e| e.to_string())?, 3)?;
    let oracle = oracle_dims(&|k| unit_cochains(vd, wd, k), &|f| oracles::hochschild_textbook(&mu, &left, &right, f), 3);
    ensure!(main == oracle, "HH(Q): main {main:?}, oracle {oracle:?}");
    ensure!(main == vec![1, 0, 0, 0], "HH(Q) = {main:?}, expected [1, 0, 0, 0]");
    lines.push(format!("HH(Q) {main:?}"));

    for (name, l, top, want) in [
        ("H(sl2, ad)", fx::sl2_adjoint(), 3, vec![0, 0, 0, 0]),
        ("H(abel1, triv)", fx::abel1_trivial(), 2, vec![1, 1, 0]),
    ] {
        let (gd, wd) = (l.g.dim(), l.w.dim());
        let (br, act) = (mult_table(&l.mu.expand()), action_table(&l.pi, wd));
        let main = main_dims(&ChevalleyComplex::new(l).map_err(|e| e.to_string())?, top)?;
        let oracle = oracle_dims(&|k| alternating_cochains(gd, wd, k), &|f| oracles::chevalley_textbook(&br, &act, f), top as usize);
        ensure!(main == oracle, "{name}: main {main:?}, oracle {oracle:?}");
        ensure!(main == want, "{name} = {main:?}, expected {want:?}");
        lines.push(format!("{name} {main:?}"));
    }
    let took = start.elapsed();
    ensure!(took < Duration::from_secs(60), "took {took:?}, limit 60 s");
    Ok(format!("main path = oracle: {}", lines.join(", ")))
}

fn w_product(b: &BimoduleStructure) -> Result<MultiMap, String> {
    // the algebra's own product, copied onto W (regular bimodules only)
    let entries: Vec<(Vec<usize>, Coords)> = b.mu.entries().iter().map(|(k, v)| (k.clone(), v.clone())).collect();
    MultiMap::from_entries(&b.w, 1, Multidegree::zero(b.w.n()), entries).map_err(|e| e.to_string())
}

fn kernel_samples(c: &HochschildComplex, form: i64, r: &mut TestRng) -> Result<Vec<MultiMap>, String> {
    let mut out = Vec::new();
    for w in weights_of_form(c, form).map_err(|e| e.to_string())? {
        let (src, _, m) = differential_matrix(c, &SliceDegree::new(form, w)).map_err(|e| e.to_string())?;
        let ker = m.kernel();
        if ker.is_empty() {
            continue;
        }
        let mut v = vec![Q::zero(); src.dim()];
        for k in &ker {
            let s = q(r.gen_range(-2..=2));
            for (a, b) in v.iter_mut().zip(k) {
                *a += &s * b;
            }
        }
        out.push(element(c, &src, &v).map_err(|e| e.to_string())?);
    }
    Ok(out)
}

// 8. Cup products.
pub fn criterion_8() -> Outcome {
    let mut r = rng(808);
    let (mut comm, mut deriv, mut cocycles, mut compat_seen, mut incompat_seen) = (0, 0, 0, 0, 0);
    let mut cases: Vec<(&str, BimoduleStructure, MultiMap, i64)> = Vec::new();
    let qb = fx::q_bimodule();
    let unit = MultiMap::from_entries(&qb.w, 1, Multidegree::zero(qb.w.n()), [(vec![0, 0], Coords::unit(0))]).map_err(|e| e.to_string())?;
    cases.push(("q", qb.clone(), unit.clone(), 2));
    for (name, alg, top) in [("ext", fx::ext_algebra(), 1), ("mat2", fx::mat2_algebra(), 0)] {
        let b = alg.regular_bimodule().map_err(|e| e.to_string())?;
        let nu = w_product(&b)?;
        cases.push((name, b.clone(), nu.clone(), top));
        for i in 0..6 {
            cases.push((name, b.clone(), perturb_multimap(&mut r, &nu, 1 + i % 2), top));
        }
    }
    let mut bad_q = qb.clone();
    bad_q.lam = fx::scale_family(&bad_q.lam, 2);
    if bad_q.is_bimodule().map_err(|e| e.to_string())? {
        cases.push(("q rescaled", bad_q, unit, 2));
    }
    for (name, b, nu_w, top) in cases {
        let compat = check_p_nu_compat(&b, &nu_w).map_err(|e| e.to_string())?;
        let c = HochschildComplex::new(b).map_err(|e| e.to_string())?;
        let nu = nu_on_suspension(&c.e, c.v_dim, &nu_w).map_err(|e| e.to_string())?;
        let xs = samples(&c, -1..=top, 1, &mut r)?;
        let mut derivation_holds = true;
        for (i, c1) in xs.iter().enumerate() {
            for c2 in xs.iter().skip(i % 3).step_by(2) {
                let p12 = cup_product_delta(c1, c2, &nu).map_err(|e| e.to_string())?;
                let p21 = cup_product_delta(c2, c1, &nu).map_err(|e| e.to_string())?;
                ensure!(p12 == p21.scaled(&sgn(&c1.degree(), &c2.degree())), "{name}: graded commutativity fails");
                comm += 1;
                let lhs = c.differential(&p12).map_err(|e| e.to_string())?;
                let d1 = cup_product_delta(&c.differential(c1).map_err(|e| e.to_string())?, c2, &nu).map_err(|e| e.to_string())?;
                let d2 = cup_product_delta(c1, &c.differential(c2).map_err(|e| e.to_string())?, &nu).map_err(|e| e.to_string())?;
                let rhs = d1.add_scaled(&d2, &sgn(&c.p.degree(), &c1.degree())).map_err(|e| e.to_string())?;
                derivation_holds &= lhs == rhs;
                deriv += 1;
            }
        }
        ensure!(
            derivation_holds == compat.by_bracket,
            "{name}: derivation property {derivation_holds} but [P,nu] = 0 is {}",
            compat.by_bracket
        );
        ensure!(compat.by_bracket == compat.by_equations, "{name}: compatibility tests disagree");
        if compat.by_bracket {
            compat_seen += 1;
            let mut zs = Vec::new();
            for form in -1..=top {
                zs.extend(kernel_samples(&c, form, &mut r)?);
            }
            for z1 in &zs {
                for z2 in &zs {
                    let p = cup_product_delta(z1, z2, &nu).map_err(|e| e.to_string())?;
                    ensure!(c.differential(&p).map_err(|e| e.to_string())?.is_zero(), "{name}: product of cocycles is not a cocycle");
                    cocycles += 1;
                }
            }
        } else {
            incompat_seen += 1;
        }
    }
    ensure!(compat_seen > 0 && incompat_seen > 0, "need both compatible ({compat_seen}) and incompatible ({incompat_seen}) nu");

    // alternating version
    let l = fx::abel1_trivial();
    let c = ChevalleyComplex::new(l.clone()).map_err(|e| e.to_string())?;
    let nu_w = MultiMap::from_entries(&l.w, 1, Multidegree::zero(l.w.n()), [(vec![0, 0], Coords::unit(0))]).map_err(|e| e.to_string())?;
    let nu = nu_alternating(&c.e, c.v_dim, &nu_w).map_err(|e| e.to_string())?;
    let xs: Vec<AltMap> = samples(&c, -1..=1, 2, &mut r)?;
    for c1 in &xs {
        for c2 in &xs {
            let p12 = cup_product_wedge(c1, c2, &nu).map_err(|e| e.to_string())?;
            let p21 = cup_product_wedge(c2, c1, &nu).map_err(|e| e.to_string())?;
            ensure!(p12 == p21.scaled(&sgn(&c1.degree(), &c2.degree())), "abel1: alternating commutativity fails");
            ensure!(
                !(c.differential(c1).map_err(|e| e.to_string())?.is_zero() && c.differential(c2).map_err(|e| e.to_string())?.is_zero())
                    || c.differential(&p12).map_err(|e| e.to_string())?.is_zero(),
                "abel1: product of cocycles is not a cocycle"
            );
            comm += 1;
        }
    }
    Ok(format!(
        "{comm} commutativity, {deriv} derivation checks ({compat_seen} compatible / {incompat_seen} incompatible nu), {cocycles} cocycle products"
    ))
}
