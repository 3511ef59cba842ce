//! Problem files, reports and the commands behind the `multigraded` binary.

pub mod problem;
pub mod report;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::brackets::{bracket_delta, bracket_wedge};
use crate::cohomology::{compute_cohomology, AdjointComplex, ChevalleyComplex, CohomologyResult, Complex, HochschildComplex};
use crate::deformation::{series_bracket, solve_deformation};
use crate::error::{Error, Result};
use crate::grading::{sign_direct, sign_recursive, Multidegree, Permutation};
use crate::gspace::{Coords, GradedSpace};
use crate::multimap::MultiMap;
use crate::structures::{AlgebraStructure, Recognition};

pub use problem::{encode, ProblemFile};
pub use report::{Report, LEDGER};

/// Environment variable giving the default form-degree window.
pub const KMAX_VAR: &str = "GRADED_NR_KMAX";
pub const DEFAULT_KMAX: usize = 3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_STRUCTURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INVARIANT: i32 = 3;

pub fn default_kmax() -> Result<usize> {
    match std::env::var(KMAX_VAR) {
        Ok(s) => s.trim().parse().map_err(|_| Error::Parse(format!("{KMAX_VAR}={s:?} is not a non-negative integer"))),
        Err(_) => Ok(DEFAULT_KMAX),
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NotAStructure(_) => EXIT_STRUCTURE,
        Error::Invariant(_) | Error::Verification { .. } => EXIT_INVARIANT,
        _ => EXIT_INPUT,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Assoc,
    Lie,
    Bimodule,
    Liemodule,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Which {
    Delta,
    Wedge,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theory {
    Hochschild,
    Chevalley,
    Adjoint,
}

fn name_of(v: impl Serialize) -> String {
    serde_json::to_value(v).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default()
}

#[derive(Serialize)]
struct EntryOut {
    args: Vec<String>,
    value: Vec<(String, String)>,
}

fn entries_out(space: &GradedSpace, entries: &BTreeMap<Vec<usize>, Coords>) -> Vec<EntryOut> {
    entries
        .iter()
        .filter(|(_, v)| !v.is_zero())
        .map(|(k, v)| EntryOut {
            args: k.iter().map(|&i| space.name(i).to_string()).collect(),
            value: problem::encode::vector(space, v),
        })
        .collect()
}

fn render_vector(terms: &[(String, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    terms.iter().map(|(n, c)| format!("{c}*{n}")).collect::<Vec<_>>().join(" + ")
}

fn report_for(file: &ProblemFile, task: &str, args: &str, ledger: &[&str]) -> Report {
    Report::new(task, report::digest(&[&file.to_canonical_string(), task, args]), ledger)
}

fn apply_recognition(r: &mut Report, rec: &Recognition) -> Result<()> {
    r.set("by_bracket", rec.by_bracket);
    r.set("by_axioms", rec.by_axioms);
    r.set("witness", &rec.witness);
    let yes = rec.verdict()?;
    if yes {
        r.line("structure: YES (both tests)");
    } else {
        r.status = "no".into();
        r.exit_code = EXIT_STRUCTURE;
        r.line(format!("structure: NO, {}", rec.witness.as_deref().unwrap_or("bracket test fails")));
    }
    Ok(())
}

/// Bracket test and brute-force axiom test for the structure named in the file.
pub fn cmd_verify(file: &ProblemFile, kind: Kind) -> Result<Report> {
    let ledger: &[&str] = match kind {
        Kind::Assoc => &["koszul-sign", "total-degree", "bracket-delta"],
        Kind::Lie => &["koszul-sign", "total-degree", "bracket-wedge"],
        Kind::Bimodule => &["koszul-sign", "total-degree", "bracket-delta", "suspension", "bimodule-structure"],
        Kind::Liemodule => &["koszul-sign", "total-degree", "bracket-wedge", "suspension", "liemodule-structure"],
    };
    let mut r = report_for(file, "verify", &name_of(kind), ledger);
    r.set("kind", kind);
    let rec = match kind {
        Kind::Assoc => {
            let mut rec = file.algebra()?.associativity();
            rec.witness = rec.witness.map(|w| format!("associativity fails on {w}"));
            rec
        }
        Kind::Lie => {
            let name = &file.structure.as_ref().map(|x| x.mu.clone()).unwrap_or_default();
            let mu = match file.maps.iter().any(|m| &m.name == name && m.alternating) {
                true => file.altmap(name)?.expand(),
                false => file.algebra()?.mu,
            };
            match AlgebraStructure::new(mu)?.lie_check() {
                Ok(mut rec) => {
                    rec.witness = rec.witness.map(|w| format!("Jacobi fails on {w}"));
                    rec
                }
                Err(Error::NotAlternating(msg)) => Recognition {
                    by_bracket: false,
                    by_axioms: false,
                    witness: Some(format!("not alternating: {msg}")),
                },
                Err(e) => return Err(e),
            }
        }
        Kind::Bimodule => file.bimodule()?.check()?,
        Kind::Liemodule => file.lie_module()?.check()?,
    };
    apply_recognition(&mut r, &rec)?;
    Ok(r)
}

/// `[lhs, rhs]^Δ` or `[lhs, rhs]^∧` of two named maps on the basis space.
pub fn cmd_bracket(file: &ProblemFile, lhs: &str, rhs: &str, which: Which) -> Result<Report> {
    let ledger: &[&str] = match which {
        Which::Delta => &["koszul-sign", "total-degree", "bracket-delta"],
        Which::Wedge => &["koszul-sign", "total-degree", "bracket-wedge"],
    };
    let mut r = report_for(file, "bracket", &format!("{lhs}|{rhs}|{}", name_of(which)), ledger);
    let out: MultiMap = match which {
        Which::Delta => {
            let get = |n: &str| -> Result<MultiMap> {
                let alt = file.maps.iter().any(|m| m.name == n && m.alternating);
                if alt {
                    Ok(file.altmap(n)?.expand())
                } else {
                    file.multimap(n)
                }
            };
            bracket_delta(&get(lhs)?, &get(rhs)?)?
        }
        Which::Wedge => bracket_wedge(&file.altmap(lhs)?, &file.altmap(rhs)?)?.canonical().clone(),
    };
    let sym = if which == Which::Delta { "delta" } else { "wedge" };
    let entries = entries_out(out.space(), out.entries());
    r.set("which", which);
    r.set("form", out.form());
    r.set("weight", out.weight().components());
    r.set("zero", entries.is_empty());
    r.line(format!("[{lhs},{rhs}]^{sym}: degree ({}; {})", out.form(), out.weight()));
    if entries.is_empty() {
        r.line("  all entries zero");
    }
    for e in &entries {
        r.line(format!("  ({}) -> {}", e.args.join(","), render_vector(&e.value)));
    }
    r.set("entries", entries);
    Ok(r)
}

#[derive(Serialize)]
struct SliceOut {
    k: i64,
    weight: Vec<i64>,
    cochains: usize,
    cocycles: usize,
    coboundaries: usize,
    dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    representatives: Option<Vec<Vec<EntryOut>>>,
}

fn cohomology_rows<C: Complex>(
    c: &C,
    res: &CohomologyResult,
    suspended: bool,
    weights: &Option<Vec<Multidegree>>,
    representatives: bool,
) -> Vec<SliceOut> {
    let space = c.space();
    res.slices
        .iter()
        .filter_map(|s| {
            let w = if suspended { s.degree.weight.tail() } else { s.degree.weight.clone() };
            if weights.as_ref().is_some_and(|ws| !ws.contains(&w)) {
                return None;
            }
            let reps = representatives.then(|| {
                s.representatives
                    .iter()
                    .map(|v| {
                        let mut entries: BTreeMap<Vec<usize>, Coords> = BTreeMap::new();
                        for ((args, out), x) in s.basis.iter().zip(v) {
                            entries.entry(args.clone()).or_default().add_term(*out, x);
                        }
                        entries_out(space, &entries)
                    })
                    .collect()
            });
            Some(SliceOut {
                k: s.label,
                weight: w.components().to_vec(),
                cochains: s.dim,
                cocycles: s.kernel,
                coboundaries: s.image,
                dim: s.h,
                representatives: reps,
            })
        })
        .collect()
}

/// Cohomology dimensions per `(k, weight)`; `weights` restricts the rows shown
/// and the totals.
pub fn cmd_cohomology(
    file: &ProblemFile,
    theory: Theory,
    kmax: usize,
    weights: Option<Vec<Multidegree>>,
    representatives: bool,
) -> Result<Report> {
    let ledger: &[&str] = match theory {
        Theory::Hochschild => &["koszul-sign", "total-degree", "bracket-delta", "suspension", "bimodule-structure", "cochain-degree", "hochschild-constant"],
        Theory::Chevalley => &["koszul-sign", "total-degree", "bracket-wedge", "suspension", "liemodule-structure", "cochain-degree", "chevalley-constant"],
        Theory::Adjoint => &["koszul-sign", "total-degree", "adjoint-differential", "theta-parity"],
    };
    let wtext = weights.as_ref().map(|ws| ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(";")).unwrap_or_default();
    let mut r = report_for(file, "cohomology", &format!("{}|{kmax}|{wtext}|{representatives}", name_of(theory)), ledger);
    r.set("theory", theory);
    let labels: Vec<i64> = match theory {
        Theory::Adjoint => vec![0],
        _ => (0..=kmax as i64).collect(),
    };
    let refused = |r: &mut Report, what: &str, witness: Option<String>| {
        r.status = "refused".into();
        r.exit_code = EXIT_STRUCTURE;
        r.set("witness", &witness);
        r.line(format!("structure: NO, {what} check fails ({}); cohomology refused", witness.unwrap_or_default()));
    };
    let rows = match theory {
        Theory::Hochschild => {
            let b = file.bimodule()?;
            let rec = b.check()?;
            if !rec.verdict()? {
                refused(&mut r, "bimodule", rec.witness);
                return Ok(r);
            }
            let c = HochschildComplex::new(b)?;
            let res = compute_cohomology(&c, labels.clone())?;
            cohomology_rows(&c, &res, true, &weights, representatives)
        }
        Theory::Chevalley => {
            let l = file.lie_module()?;
            let rec = l.check()?;
            if !rec.verdict()? {
                refused(&mut r, "Lie module", rec.witness);
                return Ok(r);
            }
            let c = ChevalleyComplex::new(l)?;
            let res = compute_cohomology(&c, labels.clone())?;
            cohomology_rows(&c, &res, true, &weights, representatives)
        }
        Theory::Adjoint => {
            let st = file.structure_theta()?;
            for w in &st.warnings {
                r.line(format!("warning: {w}"));
            }
            r.set("warnings", &st.warnings);
            let c = AdjointComplex::new(st.ambient.mu.clone(), st.p.clone(), st.theta.clone())?;
            let res = compute_cohomology(&c, labels.clone())?;
            cohomology_rows(&c, &res, false, &weights, representatives)
        }
    };
    let mut totals: BTreeMap<i64, usize> = labels.iter().map(|&l| (l, 0)).collect();
    for row in &rows {
        *totals.entry(row.k).or_default() += row.dim;
    }
    let dims: Vec<usize> = totals.values().copied().collect();
    r.line(format!("{} cohomology, k = {}..{}", name_of(theory), labels[0], labels[labels.len() - 1]));
    r.line("k\tweight\tcochains\tcocycles\tcoboundaries\tdim");
    for row in &rows {
        let w = Multidegree(row.weight.clone());
        r.line(format!("{}\t{}\t{}\t{}\t{}\t{}", row.k, w, row.cochains, row.cocycles, row.coboundaries, row.dim));
        if let Some(reps) = &row.representatives {
            for (i, rep) in reps.iter().enumerate() {
                let body: Vec<String> =
                    rep.iter().map(|e| format!("({}) -> {}", e.args.join(","), render_vector(&e.value))).collect();
                r.line(format!("  rep {i}: {}", body.join("; ")));
            }
        }
    }
    r.line(format!("dims: {}", dims.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")));
    r.set("dims", &dims);
    r.set("slices", rows);
    Ok(r)
}

/// `P₀ … P_N` of the deformation driven by the file's cocycle series,
/// together with `[P_λ, P_λ]` mod `λ^{N+1}`.
pub fn cmd_deform(file: &ProblemFile, order: usize, kmax: usize) -> Result<Report> {
    let ledger = &["koszul-sign", "total-degree", "bracket-wedge", "d-normalization", "deformation-equation", "theta-parity"];
    let mut r = report_for(file, "deform", &format!("{order}|{kmax}"), ledger);
    let st = file.structure_theta()?;
    let cs = file.cocycle_series(order)?;
    for (k, c) in cs.coeffs.iter().enumerate() {
        for comp in c.components() {
            if comp.form() > kmax as i64 {
                return Err(Error::Hypothesis(format!(
                    "C_{k} has a component of form degree {} outside the window kmax = {kmax}",
                    comp.form()
                )));
            }
        }
    }
    for w in &st.warnings {
        r.line(format!("warning: {w}"));
    }
    r.set("warnings", &st.warnings);
    let ps = solve_deformation(&st, &cs, order)?;
    let residual = series_bracket(&st.ambient, &ps, &ps)?;
    let space = st.ambient.space().clone();
    let coeffs: Vec<Vec<(String, String)>> = ps.coeffs.iter().map(|c| problem::encode::vector(&space, c)).collect();
    let res: Vec<Vec<(String, String)>> = residual.coeffs.iter().map(|c| problem::encode::vector(&space, c)).collect();
    let zero = res.iter().all(|c| c.is_empty());
    r.line(format!("deformation, N = {order}"));
    for (m, c) in coeffs.iter().enumerate() {
        r.line(format!("P_{m} = {}", render_vector(c)));
    }
    r.line(format!("residual [P,P] mod lambda^{}: {}", order + 1, if zero { "zero" } else { "NONZERO" }));
    r.set("order", order);
    r.set("coefficients", coeffs);
    r.set("residual", res);
    r.set("residual_zero", zero);
    if !zero {
        r.status = "invariant".into();
        r.exit_code = EXIT_INVARIANT;
    }
    Ok(r)
}

/// Table of `s(σ, x)` over all permutations of the given degrees, both ways.
pub fn cmd_signs(degrees: &[Multidegree]) -> Result<Report> {
    if degrees.is_empty() || degrees.len() > 6 {
        return Err(Error::Parse(format!("signs: between 1 and 6 degrees, got {}", degrees.len())));
    }
    let n = degrees[0].len();
    if let Some(d) = degrees.iter().find(|d| d.len() != n) {
        return Err(Error::Parse(format!("signs: degree {d} has length {}, expected {n}", d.len())));
    }
    let args: Vec<String> = degrees.iter().map(|d| d.to_string()).collect();
    let mut r = Report::new("signs", report::digest(&[&args.join(";")]), &["koszul-sign"]);
    #[derive(Serialize)]
    struct Row {
        sigma: Vec<usize>,
        recursive: i32,
        direct: i32,
    }
    let mut rows = Vec::new();
    let mut agree = true;
    r.line(format!("x = {}", args.join(" ")));
    r.line("sigma\trecursive\tdirect");
    for sigma in Permutation::all(degrees.len()) {
        let a = sign_recursive(&sigma, degrees)?;
        let b = sign_direct(&sigma, degrees)?;
        agree &= a == b;
        r.line(format!("{:?}\t{a:+}\t{b:+}", sigma.images()));
        rows.push(Row { sigma: sigma.images().to_vec(), recursive: a, direct: b });
    }
    r.set("degrees", degrees.iter().map(|d| d.components().to_vec()).collect::<Vec<_>>());
    r.set("rows", rows);
    r.set("agree", agree);
    if !agree {
        r.status = "invariant".into();
        r.exit_code = EXIT_INVARIANT;
        r.line("recursive and direct signs DISAGREE");
    }
    Ok(r)
}

/// Parses `"1,0"` (or `""` for `n = 0`) into a multidegree.
pub fn parse_multidegree(s: &str) -> Result<Multidegree> {
    let s = s.trim().trim_start_matches('(').trim_end_matches(')');
    if s.is_empty() {
        return Ok(Multidegree(vec![]));
    }
    s.split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| Error::Parse(format!("bad multidegree component {p:?}"))))
        .collect::<Result<Vec<_>>>()
        .map(Multidegree)
}

/// Report for a failed command.
pub fn error_report(task: &str, e: &Error) -> Report {
    let mut r = Report::new(task, String::new(), &[]);
    r.status = "error".into();
    r.exit_code = exit_code(e);
    r.set("error", e.to_string());
    r.line(format!("error: {e}"));
    r
}

/// The problem files shipped in `fixtures/`, built from the constructors in
/// [`crate::fixtures`]; the files are these serialized canonically.
pub fn fixture_files() -> Vec<(&'static str, ProblemFile)> {
    use crate::brackets::GradedEndo;
    use crate::deformation::Ambient;
    use crate::fixtures as fx;
    use crate::multimap::AltMap;
    use problem::{encode, DeformSection, SeriesTerm};

    let gl11 = fx::gl11_bracket();
    let amb = Ambient::new(gl11.clone()).expect("gl(1|1) is a graded Lie algebra");
    let space = amb.space().clone();
    let idx = |n: &str| space.index_of(n).expect("gl(1|1) basis name");
    let ad = amb.ad(&Coords::unit(idx("E00"))).expect("degree 0 element");
    let ad = AltMap::canonicalize(&ad.to_multimap()).expect("linear maps are alternating");
    let bad = GradedEndo::new(&space, Multidegree(vec![0]), [(idx("E00"), Coords::unit(idx("E00")))])
        .expect("degree 0 map");
    let bad = AltMap::canonicalize(&bad.to_multimap()).expect("linear maps are alternating");
    let deform_file = |title: &str, c: &AltMap| {
        let mut f = encode::lie(title, &gl11);
        f.deform = Some(DeformSection {
            theta: vec![1],
            p: encode::vector(&space, &Coords::unit(idx("E10"))),
            order: Some(4),
            series: vec![SeriesTerm { power: 0, maps: vec!["c0".into()] }],
        });
        f.maps.push(encode::altmap("c0", c));
        f
    };
    vec![
        ("q", encode::bimodule("Q as a bimodule over itself", &fx::q_bimodule())),
        ("ext", encode::algebra("exterior algebra on one odd generator", &fx::ext_algebra())),
        ("ext_perturbed", encode::algebra("exterior algebra with 1*1 = 2*1", &fx::ext_perturbed())),
        ("mat2", encode::algebra("2x2 matrices", &fx::mat2_algebra())),
        ("sl2", encode::lie_module("sl2 with its adjoint module", &fx::sl2_adjoint())),
        ("sl2_perturbed", encode::lie("sl2 with [e,f] = e", &fx::sl2_perturbed_bracket())),
        ("heis", encode::lie("Heisenberg algebra", &fx::heis_bracket())),
        ("abel1", encode::lie_module("one-dimensional abelian, trivial module", &fx::abel1_trivial())),
        ("gl11_deform", deform_file("gl(1|1), P = E10, C = ad E00", &ad)),
        ("gl11_noncocycle", deform_file("gl(1|1), P = E10, C not a derivation", &bad)),
    ]
}
