//! Criteria 10 and 11: ungraded reductions and the command line.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use multigraded::brackets::{bracket_delta, bracket_wedge};
use multigraded::cli::{encode, exit_code, fixture_files, ProblemFile, EXIT_INPUT, EXIT_INVARIANT, EXIT_OK, EXIT_STRUCTURE};
use multigraded::cohomology::*;
use multigraded::error::Error;
use multigraded::fixtures as fx;
use multigraded::gspace::Coords;
use multigraded::random::*;
use multigraded::scalar::q;
use multigraded::structures::LieModuleStructure;
use rand::Rng;

use super::cochains::{action_table, dense_vec, mult_table};
use super::oracles::{self, Dense};
use super::{ensure, Outcome};

/// Entries with arguments in `0..d` and outputs in `offset..offset+out`.
fn dense(entries: &BTreeMap<Vec<usize>, Coords>, d: usize, offset: usize, out: usize, k: usize) -> Dense {
    let mut f = Dense::zero(d, out, k);
    for (t, v) in entries {
        let idx = f.index(t);
        f.values[idx] = dense_vec(v, offset, out);
    }
    f
}

// 10. Ungraded reductions.
pub fn criterion_10() -> Outcome {
    let mut r = rng(1010);
    let (mut g, mut nr, mut swapped_only) = (0, 0, 0);
    for case in 0..300 {
        let v = random_space(&mut r, 0, 3);
        let d = v.dim();
        let (k1, k2) = (r.gen_range(-1..=2), r.gen_range(-1..=2));
        let a = random_multimap(&mut r, &v, k1);
        let b = random_multimap(&mut r, &v, k2);
        let (da, db) = (dense(a.entries(), d, 0, d, a.arity()), dense(b.entries(), d, 0, d, b.arity()));
        let ours = bracket_delta(&a, &b).map_err(|e| e.to_string())?;
        if a.arity() + b.arity() == 0 {
            ensure!(ours.is_zero(), "bracket of two vectors must vanish");
            continue;
        }
        let ours = dense(ours.entries(), d, 0, d, a.arity() + b.arity() - 1);
        let theirs = oracles::gerstenhaber_bracket(&db, &da);
        ensure!(ours == theirs, "[a,b]^delta != [b,a]_G, case {case}");
        swapped_only += usize::from(ours != oracles::gerstenhaber_bracket(&da, &db));
        g += 1;

        let a = random_altmap(&mut r, &v, k1);
        let b = random_altmap(&mut r, &v, k2);
        let (ea, eb) = (a.expand(), b.expand());
        let ours = bracket_wedge(&a, &b).map_err(|e| e.to_string())?.expand();
        let ours = dense(ours.entries(), d, 0, d, a.arity() + b.arity() - 1);
        let theirs = oracles::nr_bracket(&dense(ea.entries(), d, 0, d, a.arity()), &dense(eb.entries(), d, 0, d, b.arity()));
        ensure!(ours == theirs, "[a,b]^wedge != Nijenhuis-Richardson bracket, case {case}");
        nr += 1;
    }

    let mut hoch = 0;
    for (name, b) in [("q", fx::q_bimodule()), ("mat2", fx::mat2_algebra().regular_bimodule().map_err(|e| e.to_string())?)] {
        let (vd, wd) = (b.v.dim(), b.w.dim());
        let (mu, left) = (mult_table(&b.mu), action_table(&b.lam, wd));
        let right_ops = action_table(&b.rho, wd);
        let right: oracles::Table = (0..wd).map(|w| (0..vd).map(|a| right_ops[a][w].clone()).collect()).collect();
        let c = HochschildComplex::new(b).map_err(|e| e.to_string())?;
        for form in -1..=2 {
            for w in weights_of_form(&c, form).map_err(|e| e.to_string())? {
                let s = slice(&c, &SliceDegree::new(form, w)).map_err(|e| e.to_string())?;
                for _ in 0..5 {
                    let coords: Vec<_> = (0..s.dim()).map(|_| q(r.gen_range(-3..=3))).collect();
                    let x = element(&c, &s, &coords).map_err(|e| e.to_string())?;
                    let k = x.arity();
                    let want = oracles::hochschild_textbook(&mu, &left, &right, &dense(x.entries(), vd, vd, wd, k));
                    let ex = c.explicit(&x).map_err(|e| e.to_string())?;
                    ensure!(dense(ex.entries(), vd, vd, wd, k + 1) == want, "{name}: Hochschild explicit != textbook, form {form}");
                    let dx = c.differential(&x).map_err(|e| e.to_string())?;
                    ensure!(dx == ex.scaled(&q(HOCHSCHILD_CONSTANT)), "{name}: differential constant");
                    hoch += 1;
                }
            }
        }
    }
    let mut ce = 0;
    for (name, l) in [
        ("sl2 adjoint", fx::sl2_adjoint()),
        ("heis adjoint", LieModuleStructure::adjoint(fx::heis_bracket()).map_err(|e| e.to_string())?),
        ("abel1 trivial", fx::abel1_trivial()),
    ] {
        let (gd, wd) = (l.g.dim(), l.w.dim());
        let (br, act) = (mult_table(&l.mu.expand()), action_table(&l.pi, wd));
        let c = ChevalleyComplex::new(l).map_err(|e| e.to_string())?;
        for form in -1..=2 {
            for w in weights_of_form(&c, form).map_err(|e| e.to_string())? {
                let s = slice(&c, &SliceDegree::new(form, w)).map_err(|e| e.to_string())?;
                for _ in 0..5 {
                    let coords: Vec<_> = (0..s.dim()).map(|_| q(r.gen_range(-3..=3))).collect();
                    let x = element(&c, &s, &coords).map_err(|e| e.to_string())?;
                    let k = x.arity();
                    let want = oracles::chevalley_textbook(&br, &act, &dense(x.expand().entries(), gd, gd, wd, k));
                    let ex = c.explicit(&x).map_err(|e| e.to_string())?;
                    ensure!(dense(ex.expand().entries(), gd, gd, wd, k + 1) == want, "{name}: Chevalley explicit != textbook, form {form}");
                    let dx = c.differential(&x).map_err(|e| e.to_string())?;
                    ensure!(dx == ex.scaled(&q(CHEVALLEY_CONSTANT)), "{name}: differential constant");
                    ce += 1;
                }
            }
        }
    }
    Ok(format!(
        "{g} Gerstenhaber cases (argument order swapped; {swapped_only} distinguish the orders), {nr} Nijenhuis-Richardson, {hoch} Hochschild + {ce} Chevalley textbook probes"
    ))
}

fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

fn run(args: &[&str]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_multigraded"))
        .args(args)
        .current_dir(fixture_dir())
        .env_remove("GRADED_NR_KMAX")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.status.code().unwrap_or(-1), out.stdout))
}

// 11. Command line.
pub fn criterion_11() -> Outcome {
    let mut trips = 0;
    for (name, file) in fixture_files() {
        let shipped = std::fs::read(fixture_dir().join(format!("{name}.toml"))).map_err(|e| format!("{name}: {e}"))?;
        let text = String::from_utf8(shipped.clone()).map_err(|e| e.to_string())?;
        let parsed = ProblemFile::parse(&text).map_err(|e| format!("{name}: {e}"))?;
        ensure!(parsed == file, "{name}: parsed file differs from constructor");
        ensure!(parsed.to_canonical_string().into_bytes() == shipped, "{name}: round trip not byte-identical");
        trips += 1;
    }

    let bad = std::env::temp_dir().join(format!("multigraded-acceptance-{}.toml", std::process::id()));
    std::fs::write(&bad, "n = 1\nbasis = [ { name = \"x\", degree = [1, 2] } ]\n").map_err(|e| e.to_string())?;
    let bad_path = bad.to_string_lossy().into_owned();
    let mut broken_q = fx::q_bimodule();
    broken_q.lam = fx::scale_family(&broken_q.lam, 2);
    let broken = bad.with_extension("broken.toml");
    std::fs::write(&broken, encode::bimodule("Q with doubled left action", &broken_q).to_canonical_string())
        .map_err(|e| e.to_string())?;
    let broken_path = broken.to_string_lossy().into_owned();
    let expectations: Vec<(Vec<&str>, i32)> = vec![
        (vec!["verify", "sl2.toml", "--kind", "lie"], EXIT_OK),
        (vec!["verify", "sl2_perturbed.toml", "--kind", "lie"], EXIT_STRUCTURE),
        (vec!["verify", "ext_perturbed.toml", "--kind", "assoc"], EXIT_STRUCTURE),
        (vec!["cohomology", &broken_path, "--theory", "hochschild"], EXIT_STRUCTURE),
        (vec!["verify", &bad_path, "--kind", "lie"], EXIT_INPUT),
        (vec!["verify", "missing.toml", "--kind", "lie"], EXIT_INPUT),
        (vec!["deform", "gl11_noncocycle.toml"], EXIT_INPUT),
        (vec!["bracket", "q.toml", "mu", "nosuchmap"], EXIT_INPUT),
        (vec!["deform", "gl11_deform.toml", "--order", "3"], EXIT_OK),
        (vec!["cohomology", "q.toml", "--theory", "hochschild", "--kmax", "3"], EXIT_OK),
    ];
    let mut codes = 0;
    for (args, want) in &expectations {
        let (got, _) = run(args)?;
        ensure!(got == *want, "{args:?}: exit {got}, expected {want}");
        codes += 1;
    }
    let _ = std::fs::remove_file(&bad);
    let _ = std::fs::remove_file(&broken);
    ensure!(exit_code(&Error::Invariant("d^2 != 0".into())) == EXIT_INVARIANT, "invariant errors must exit {EXIT_INVARIANT}");
    ensure!(
        exit_code(&Error::Verification { order: 2, detail: "residual".into() }) == EXIT_INVARIANT,
        "verification errors must exit {EXIT_INVARIANT}"
    );

    let mut repeats = 0;
    for args in [
        vec!["--format", "json", "verify", "mat2.toml", "--kind", "assoc"],
        vec!["--format", "json", "bracket", "ext_perturbed.toml", "mu", "mu"],
        vec!["--format", "json", "cohomology", "sl2.toml", "--theory", "chevalley", "--representatives"],
        vec!["--format", "json", "cohomology", "ext.toml", "--theory", "hochschild"],
        vec!["--format", "json", "deform", "gl11_deform.toml"],
        vec!["--format", "json", "signs", "1,0", "0,1", "1,1"],
        vec!["cohomology", "abel1.toml", "--theory", "chevalley"],
    ] {
        let first = run(&args)?;
        for _ in 0..2 {
            ensure!(run(&args)? == first, "{args:?}: output differs between runs");
        }
        if args[0] == "--format" {
            serde_json::from_slice::<serde_json::Value>(&first.1).map_err(|e| format!("{args:?}: not JSON: {e}"))?;
        }
        repeats += 1;
    }
    Ok(format!("{trips} byte-identical round trips, {codes} exit codes (+2 mapped), {repeats} reports stable over 3 runs"))
}
