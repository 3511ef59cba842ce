//! Criterion 9: formal deformations, their equivalences, and the η identities.

use std::collections::hash_map::{Entry, HashMap};

use multigraded::deformation::*;
use multigraded::fixtures as fx;
use multigraded::grading::Multidegree;
use multigraded::gspace::Coords;
use multigraded::multimap::{AltMap, Cochain};
use multigraded::random::{random_altmap_with_weight, rng, TestRng};
use multigraded::scalar::{factorial, q, Q};
use num_traits::One;
use rand::Rng;

use super::{ensure, Outcome};

struct Fixture {
    name: &'static str,
    st: StructureTheta,
    top_form: i64,
}

fn structure(name: &'static str, mu: AltMap, theta: Vec<i64>, p: &[(&str, i64)], top_form: i64) -> Result<Fixture, String> {
    let amb = Ambient::new(mu).map_err(|e| e.to_string())?;
    let p = Coords::from_pairs(p.iter().map(|(n, c)| (amb.space().index_of(n).unwrap(), q(*c))));
    let st = StructureTheta::new(amb, Multidegree(theta), p).map_err(|e| e.to_string())?;
    Ok(Fixture { name, st, top_form })
}

fn fixtures() -> Result<Vec<Fixture>, String> {
    Ok(vec![
        structure("gl11", fx::gl11_bracket(), vec![1], &[("E10", 1)], 2)?,
        structure("gl(0,1,2)", fx::gl_graded(&[0, 1, 2]), vec![1], &[("E10", 1)], 1)?,
        structure("gl(0,1,2) E21", fx::gl_graded(&[0, 1, 2]), vec![1], &[("E21", 1)], 1)?,
        structure("gl(0,0,1)", fx::gl_graded(&[0, 0, 1]), vec![1], &[("E20", 1), ("E21", 1)], 1)?,
        structure("sl2", fx::sl2_bracket(), vec![], &[("e", 1)], 2)?,
        structure("heis", fx::heis_bracket(), vec![], &[("x", 1)], 2)?,
    ])
}

fn random_combination(r: &mut TestRng, basis: &[AltMap], template: AltMap) -> AltMap {
    basis.iter().fold(template, |acc, b| acc.add_scaled(b, &q(r.gen_range(-2..=2))).unwrap())
}

/// `Σ_{i+j=m} [P_i,P_j]` for `m ≤ N`, computed directly.
fn residual(amb: &Ambient, ps: &[Coords]) -> Option<usize> {
    (0..ps.len()).find(|&m| {
        let mut acc = Coords::default();
        for i in 0..=m {
            acc.add_scaled(&amb.bracket(&ps[i], &ps[m - i]), &Q::one());
        }
        !acc.is_zero()
    })
}

struct Bases(HashMap<(i64, Multidegree), Vec<AltMap>>);

impl Bases {
    fn get(&mut self, amb: &Ambient, form: i64, w: &Multidegree) -> Result<&Vec<AltMap>, String> {
        Ok(match self.0.entry((form, w.clone())) {
            Entry::Occupied(o) => o.into_mut(),
            Entry::Vacant(v) => v.insert(cocycle_basis(amb, form, w).map_err(|e| e.to_string())?),
        })
    }
}

fn solve_part(r: &mut TestRng) -> Result<String, String> {
    const N: usize = 4;
    let mut done = Vec::new();
    for f in fixtures()? {
        let amb = &f.st.ambient;
        let mut bases = Bases(HashMap::new());
        let mut available = 0;
        for k in -1..=f.top_form {
            available += bases.get(amb, k, &f.st.theta.scale(-k))?.len();
        }
        if available == 0 {
            continue;
        }
        let mut moved = 0;
        for trial in 0..4 {
            let mut coeffs = Vec::new();
            for order in 0..=N {
                let mut c = Cochain::zero();
                if order % 2 == trial % 2 || order == 0 {
                    for k in -1..=f.top_form {
                        let w = f.st.theta.scale(-k);
                        let basis = bases.get(amb, k, &w)?.clone();
                        let z = AltMap::zero(amb.space(), k, w).map_err(|e| e.to_string())?;
                        c.push(random_combination(r, &basis, z)).map_err(|e| e.to_string())?;
                    }
                }
                coeffs.push(c);
            }
            let cs = FormalSeries::new(coeffs);
            let ps = solve_deformation(&f.st, &cs, N).map_err(|e| format!("{}: {e}", f.name))?;
            ensure!(ps.coeffs.len() == N + 1 && ps.coeffs[0] == f.st.p, "{}: bad constant term", f.name);
            ensure!(residual(amb, &ps.coeffs).is_none(), "{}: [P,P] != 0 at order {:?}", f.name, residual(amb, &ps.coeffs));
            ensure!(is_formal_deformation(&ps, &f.st).map_err(|e| e.to_string())?, "{}: not a formal deformation", f.name);
            moved += usize::from(ps.coeffs[1..].iter().any(|c| !c.is_zero()));
        }
        ensure!(moved > 0, "{}: every solved deformation was constant", f.name);
        done.push(format!("{} ({moved}/4 nonconstant)", f.name));
    }
    ensure!(done.len() >= 4, "too few fixtures with cocycles: {done:?}");
    Ok(format!("N=4 residual zero on {}", done.join(", ")))
}

fn closed_form_part() -> Result<String, String> {
    const N: usize = 6;
    let mut out = Vec::new();
    for (f, z) in [
        (structure("gl(0,0,1)", fx::gl_graded(&[0, 0, 1]), vec![1], &[("E20", 1), ("E21", 1)], 0)?, vec![("E00", 1), ("E01", 1)]),
        (structure("gl11", fx::gl11_bracket(), vec![1], &[("E10", 1)], 0)?, vec![("E00", 1)]),
        (structure("gl(0,1,2)", fx::gl_graded(&[0, 1, 2]), vec![1], &[("E10", 1)], 0)?, vec![("E00", 2), ("E11", -1), ("E22", 1)]),
    ] {
        let amb = &f.st.ambient;
        let zc = Coords::from_pairs(z.iter().map(|(n, c)| (amb.space().index_of(n).unwrap(), q(*c))));
        let entries = (0..amb.space().dim()).map(|i| (vec![i], amb.bracket(&zc, &Coords::unit(i))));
        let c = AltMap::from_canonical_entries(amb.space(), 0, Multidegree::zero(amb.n()), entries).map_err(|e| e.to_string())?;
        let mut coeffs = vec![Cochain::from_component(c)];
        coeffs.resize(N + 1, Cochain::zero());
        let ps = solve_deformation(&f.st, &FormalSeries::new(coeffs), N).map_err(|e| format!("{}: {e}", f.name))?;
        let mut power = f.st.p.clone();
        for m in 0..=N {
            let sign = if m % 2 == 0 { q(1) } else { q(-1) };
            let want = power.scaled(&(sign / factorial(m)));
            ensure!(ps.coeffs[m] == want, "{}: P_{m} differs from the closed form", f.name);
            power = amb.bracket(&zc, &power);
        }
        ensure!(!ps.coeffs[1].is_zero(), "{}: C(P) = 0, closed form is trivial", f.name);
        out.push(f.name);
    }
    Ok(format!("closed form exact to order 6 on {}", out.join(", ")))
}

fn equivalence_part(r: &mut TestRng) -> Result<String, String> {
    const N: usize = 3;
    let mut ok = 0;
    for f in [
        structure("gl(0,1,2)", fx::gl_graded(&[0, 1, 2]), vec![1], &[("E10", 1)], 1)?,
        structure("gl(0,0,1)", fx::gl_graded(&[0, 0, 1]), vec![1], &[("E20", 1), ("E21", 1)], 1)?,
        structure("gl11", fx::gl11_bracket(), vec![1], &[("E10", 1)], 1)?,
    ] {
        let amb = &f.st.ambient;
        let theta = &f.st.theta;
        let mut bases = Bases(HashMap::new());
        for trial in 0..3 {
            let mut cs = Vec::new();
            let mut a_s = Vec::new();
            for order in 0..=N {
                let mut c = Cochain::zero();
                let mut a = Cochain::zero();
                for k in 0..=1 {
                    if (order + k as usize + trial) % 2 == 0 {
                        let w = theta.scale(-k);
                        let basis = bases.get(amb, k, &w)?.clone();
                        c.push(random_combination(r, &basis, AltMap::zero(amb.space(), k, w).unwrap())).unwrap();
                    }
                    let aw = theta.scale(-(k + 1));
                    if order < N && (order + trial) % 3 != 2 {
                        a.push(random_altmap_with_weight(r, amb.space(), k, aw)).unwrap();
                    }
                }
                cs.push(c);
                a_s.push(a);
            }
            let rep = equivalent_deformations_check(&f.st, &FormalSeries::new(cs), &FormalSeries::new(a_s), N)
                .map_err(|e| format!("{} trial {trial}: {e}", f.name))?;
            ensure!(rep.phi.apply(&rep.p) == rep.p_prime, "{}: phi(P) != P'", f.name);
            ensure!(rep.phi.automorphism_defect(amb).is_none(), "{}: phi is not an automorphism", f.name);
            ensure!(rep.pullback_identity, "{}: phi*C != C' + D(B - A)", f.name);
            if rep.p != rep.p_prime {
                ok += 1;
            }
        }
    }
    ensure!(ok > 0, "no trial produced distinct P and P'");
    Ok(format!("phi(P) = P' mod lambda^4 on 9 pairs ({ok} with P != P')"))
}

fn eta_part(r: &mut TestRng) -> Result<String, String> {
    let sts: Vec<Fixture> = fixtures()?.into_iter().filter(|f| f.st.ambient.n() == 1).collect();
    let mut bases: Vec<Bases> = sts.iter().map(|_| Bases(HashMap::new())).collect();
    let (mut first, mut second, mut trials) = (0, 0, 0);
    while (first < 100 || second < 100) && trials < 2000 {
        trials += 1;
        let i = trials % sts.len();
        let st = &sts[i].st;
        let amb = &st.ambient;
        let form = if amb.space().dim() > 4 { 1 } else { r.gen_range(1..=2) };
        let w = Multidegree(vec![r.gen_range(-2..=2)]);
        let xd = Multidegree(vec![if r.gen_bool(0.5) { 1 } else { -1 }]);
        let x = Coords::from_pairs(amb.space().indices_of_degree(&xd).into_iter().map(|k| (k, q(r.gen_range(1..=2)))));
        if x.is_zero() {
            continue;
        }
        let c = random_altmap_with_weight(r, amb.space(), form, w.clone());
        let res = eta_identities_check(&c, st, &x).map_err(|e| e.to_string())?;
        ensure!(res.first, "{}: first identity fails (form {form}, weight {w})", sts[i].name);
        first += 1;
        let basis = bases[i].get(amb, form, &w)?.clone();
        let z = random_combination(r, &basis, AltMap::zero(amb.space(), form, w.clone()).unwrap());
        if z.is_zero() {
            continue;
        }
        let res = eta_identities_check(&z, st, &x).map_err(|e| e.to_string())?;
        ensure!(res.first && res.second == Some(true), "{}: second identity fails (form {form}, weight {w})", sts[i].name);
        second += 1;
    }
    ensure!(first >= 100 && second >= 100, "only {first}/{second} admissible inputs");
    Ok(format!("eta identities on {first} + {second} inputs"))
}

// 9. Deformations.
pub fn criterion_9() -> Outcome {
    let mut r = rng(909);
    let parts = [solve_part(&mut r)?, closed_form_part()?, equivalence_part(&mut r)?, eta_part(&mut r)?];
    Ok(parts.join("; "))
}
