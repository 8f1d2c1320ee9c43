//! One PASS/FAIL line per acceptance criterion, computed from a full `run all`
//! report on the shipped inputs plus a few independent recomputations.

use qdeform::cli::report::{CheckRow, VerificationReport};
use qdeform::cli::suites::{ambient_label, run_suite, shipped, Inputs, Options};
use qdeform::cocycles::{bicharacter_cocycle, enumerate_bicharacters, DualCocycle};
use qdeform::fqg::{FiniteGroup, FiniteQuantumGroup, Kind};
use qdeform::tensorkit::linalg::CMat;
use qdeform::twisted::TwistedGroupAlgebra;

const TOL_IDENTITY: f64 = 1e-10;
const TOL_SPAN: f64 = 1e-8;
const TOL_POINTWISE: f64 = 1e-9;
const TOL_TRANSLATION: f64 = 1e-12;
const COBOUNDARIES: usize = 100;
const KAHLERIAN_SAMPLES: usize = 10_000;

struct Rows<'a>(&'a VerificationReport);

impl<'a> Rows<'a> {
    /// Rows of `suite` whose scope is `scope` and whose check name starts
    /// with `check`.
    fn find(&self, suite: &str, scope: &str, check: &str) -> Vec<&'a CheckRow> {
        let prefix = format!("{suite} | {scope}");
        self.0
            .checks
            .iter()
            .filter(|r| {
                r.name.strip_prefix(&prefix).is_some_and(|rest| {
                    rest.split_once(": ").is_some_and(|(_, c)| c.starts_with(check))
                })
            })
            .collect()
    }

    fn suite(&self, suite: &str) -> Vec<&'a CheckRow> {
        let prefix = format!("{suite} | ");
        self.0.checks.iter().filter(|r| r.name.starts_with(&prefix)).collect()
    }
}

/// Every row present, passing, and within `tol`.
fn within(rows: &[&CheckRow], tol: f64) -> bool {
    !rows.is_empty() && rows.iter().all(|r| r.pass && r.defect <= tol)
}

fn scope(c: &DualCocycle) -> String {
    format!("{}/{}", ambient_label(&c.q), c.label)
}

/// `(a vs b)` at the end of an exact check name.
fn counts(name: &str) -> Option<(usize, usize)> {
    let inner = name.rsplit_once('(')?.1.strip_suffix(')')?;
    let (a, b) = inner.split_once(" vs ")?;
    Some((a.parse().ok()?, b.parse().ok()?))
}

fn center_by_solve(basis: &[CMat]) -> usize {
    let k = basis.len();
    let side = basis[0].nrows();
    let mut m = CMat::zeros(k * side * side, k);
    for (c, x) in basis.iter().enumerate() {
        for (j, y) in basis.iter().enumerate() {
            let comm = x * y - y * x;
            for (e, v) in comm.iter().enumerate() {
                m[(j * side * side + e, c)] = *v;
            }
        }
    }
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max).max(1.0);
    k - sv.iter().filter(|&&s| s > 1e-9 * top).count()
}

fn criterion1(rows: &Rows, inputs: &Inputs) -> Result<(), String> {
    let names = ["Z2", "Z3", "Z4", "Z2xZ2", "S3"];
    for g in names {
        for amb in [format!("C({g})"), format!("C*({g})")] {
            let pent = rows.find("pentagon", &amb, "pentagon of");
            if pent.len() != 3 || !within(&pent, TOL_IDENTITY) {
                return Err(format!("{amb}: pentagon rows {pent:?}"));
            }
            let cop = rows.find("duality", &amb, "coproduct via W equals via V");
            if !within(&cop, TOL_IDENTITY) {
                return Err(format!("{amb}: coproduct {cop:?}"));
            }
            let bid = rows.find("duality", &amb, "bidual equals the original");
            if !within(&bid, TOL_SPAN) {
                return Err(format!("{amb}: biduality {bid:?}"));
            }
        }
    }
    if inputs.groups.len() != 2 * names.len() {
        return Err(format!("{} quantum groups shipped", inputs.groups.len()));
    }
    Ok(())
}

fn criterion2(rows: &Rows, inputs: &Inputs) -> Result<(), String> {
    for factors in [&[2][..], &[3], &[4], &[2, 2]] {
        let g = FiniteGroup::abelian(factors).unwrap();
        let total = enumerate_bicharacters(&g).unwrap().len();
        let on_g: Vec<_> = inputs
            .cocycles
            .iter()
            .filter(|c| c.q.kind == Kind::GroupAlgebra && c.q.group.name == g.name)
            .collect();
        if on_g.len() != total {
            return Err(format!("{}: {} of {total} bicharacters shipped", g.name, on_g.len()));
        }
        for c in on_g {
            let s = scope(c);
            let all = rows.find("cocycle", &s, "");
            if all.is_empty() || !all.iter().all(|r| r.pass) {
                return Err(format!("{s}: cocycle checks fail"));
            }
            let rewritten = rows.find("cocycle", &s, "rewritten");
            if rewritten.len() != 2 || !within(&rewritten, TOL_IDENTITY) {
                return Err(format!("{s}: rewritten form {rewritten:?}"));
            }
        }
    }
    Ok(())
}

fn criterion3(rows: &Rows) -> Result<(), String> {
    let g = FiniteGroup::abelian(&[2, 2]).unwrap();
    let q = FiniteQuantumGroup::group_algebra(&g);
    let b = &enumerate_bicharacters(&g).unwrap()[0];
    let sigma = bicharacter_cocycle(&q, &b.table(), "sigma").unwrap();
    let t = TwistedGroupAlgebra::build(&sigma).map_err(|e| e.to_string())?;
    if t.span.dim() != 4 {
        return Err(format!("dimension {}", t.span.dim()));
    }
    let center = center_by_solve(&t.span.basis());
    if center != 1 {
        return Err(format!("center by linear solve {center}"));
    }
    let rel = t.translation_relation_defect().ok_or("no translation relations")?;
    if rel > TOL_TRANSLATION {
        return Err(format!("translation relations {rel:e}"));
    }
    // the report agrees for the shipped copy of the same bicharacter
    let s = "C*(Z2xZ2)/psi[0,0;1,0]";
    let dim = rows.find("twisted", s, "dimension");
    let cen = rows.find("twisted", s, "center dimension");
    let tr = rows.find("twisted", s, "twisted translation relations");
    match (dim.first(), cen.first()) {
        (Some(d), Some(c)) if counts(&d.name) == Some((4, 4)) && counts(&c.name) == Some((1, 1)) => {}
        _ => return Err(format!("report rows {dim:?} {cen:?}")),
    }
    if !within(&tr, TOL_TRANSLATION) {
        return Err(format!("report translation rows {tr:?}"));
    }
    Ok(())
}

fn criterion4(rows: &Rows, inputs: &Inputs) -> Result<(), String> {
    for c in &inputs.cocycles {
        let s = scope(c);
        for check in ["W^_Omega unitary", "W^_Omega pentagon", "W^_Omega implements", "ecocycle4 identity"] {
            let r = rows.find("cocycle", &s, check);
            if r.len() != 1 || !within(&r, TOL_IDENTITY) {
                return Err(format!("{s}: {check} {r:?}"));
            }
        }
    }
    Ok(())
}

fn criterion5(rows: &Rows, inputs: &Inputs) -> Result<(), String> {
    for c in &inputs.cocycles {
        let s = scope(c);
        let r = rows.find("twisted", &s, "quantization");
        if r.len() != 2 || !within(&r, TOL_IDENTITY) {
            return Err(format!("{s}: {r:?}"));
        }
    }
    Ok(())
}

fn criterion6(rows: &Rows, inputs: &Inputs) -> Result<(), String> {
    let need: [(&str, &str, &str, f64); 11] = [
        ("deform", "deformed", "A_Omega is a *-algebra", TOL_SPAN),
        ("deform", "fixed", "A_Omega equals the solved fixed points", TOL_SPAN),
        ("theorems", "ttwisted", "(a)", TOL_IDENTITY),
        ("theorems", "ttwisted", "(b)", TOL_IDENTITY),
        ("theorems", "ttwisted", "(c)", TOL_IDENTITY),
        ("theorems", "ttwisted", "(d)", TOL_SPAN),
        ("stages", "", "round trip: (A_Omega)_{Omega*}", TOL_SPAN),
        ("stages", "", "round trip: A_{Omega* Omega} = alpha(A)", TOL_SPAN),
        ("cohomology", "", "twisted cocycles verify", TOL_IDENTITY),
        ("cohomology", "", "Ad(u (x) 1) A_Omega = A_{Omega_u}", TOL_SPAN),
        ("cohomology", "", "eta_{Omega_u}", TOL_IDENTITY),
    ];
    if inputs.pairs.is_empty() {
        return Err("no shipped pairs".into());
    }
    for p in &inputs.pairs {
        for (suite, verifier, check, tol) in need {
            let sc = if verifier.is_empty() { p.label() } else { format!("{} {verifier}", p.label()) };
            let r = rows.find(suite, &sc, check);
            if !within(&r, tol) {
                return Err(format!("{sc}: {check} {r:?}"));
            }
        }
        let drawn = rows.find("cohomology", &p.label(), "random coboundaries drawn");
        if drawn.len() != 1 || counts(&drawn[0].name) != Some((COBOUNDARIES, COBOUNDARIES)) {
            return Err(format!("{}: coboundaries {drawn:?}", p.label()));
        }
    }
    for suite in ["deform", "theorems", "stages", "cohomology"] {
        if !rows.suite(suite).iter().all(|r| r.pass) {
            return Err(format!("{suite} has failing rows"));
        }
    }
    Ok(())
}

fn criterion7(rows: &Rows, inputs: &Inputs) -> Result<(), String> {
    let duals: Vec<_> = inputs.cocycles.iter().filter(|c| c.q.kind == Kind::GroupAlgebra).collect();
    if duals.is_empty() {
        return Err("no group-dual cocycles".into());
    }
    for c in duals {
        let s = scope(c);
        let n = c.q.n;
        let r = rows.find("twisted", &s, "regularity product span");
        match r.first() {
            Some(row) if r.len() == 1 && row.pass && counts(&row.name) == Some((n * n, n * n)) => {}
            _ => return Err(format!("{s}: {r:?}")),
        }
    }
    Ok(())
}

fn criterion8(rows: &Rows, opts: &Options) -> Result<(), String> {
    if opts.samples != KAHLERIAN_SAMPLES {
        return Err(format!("{} samples", opts.samples));
    }
    for d in [0, 1] {
        let s = format!("d={d}");
        for check in [
            "associativity",
            "x x^-1",
            "left translation has unit Jacobian",
            "right translation by g has Jacobian Delta(g)",
            "modular function is a homomorphism",
            "A(y^-1 x, y^-1) = A(x,y)",
            "S(y^-1 x, y^-1) = -S(x,y)",
            "conj K(y^-1 x, y^-1) = K(x,y)",
            "conj K_theta = K_-theta",
            "the tau factor has modulus 1",
            "K_tau / K equals the tau factor",
        ] {
            let r = rows.find("kahlerian", &s, check);
            if !within(&r, TOL_POINTWISE) {
                return Err(format!("{s}: {check} {r:?}"));
            }
        }
        let all = rows.find("kahlerian", &s, "");
        if !within(&all, TOL_POINTWISE) {
            return Err(format!("{s}: some row above tolerance"));
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let inputs = shipped();
    let opts = Options::default();
    assert_eq!(opts.coboundaries, COBOUNDARIES);
    let first = run_suite("all", &inputs, &opts).unwrap();
    let second = run_suite("all", &inputs, &opts).unwrap();
    let rows = Rows(&first);

    let results: Vec<(&str, Result<(), String>)> = vec![
        ("pentagon and duality", criterion1(&rows, &inputs)),
        ("cocycle machinery", criterion2(&rows, &inputs)),
        ("twisted algebra of sigma", criterion3(&rows)),
        ("deformed unitary", criterion4(&rows, &inputs)),
        ("quantization", criterion5(&rows, &inputs)),
        ("deformation theorems", criterion6(&rows, &inputs)),
        ("regularity", criterion7(&rows, &inputs)),
        ("kahlerian numerics", criterion8(&rows, &opts)),
        (
            "reproducibility",
            if first.to_json() == second.to_json() {
                Ok(())
            } else {
                Err("reports differ".into())
            },
        ),
    ];
    for (i, (what, r)) in results.iter().enumerate() {
        match r {
            Ok(()) => println!("criterion {}: PASS {what}", i + 1),
            Err(e) => println!("criterion {}: FAIL {what}: {e}", i + 1),
        }
    }
    println!("{} checks, worst defect {:e}", first.checks.len(), first.worst());
    assert!(results.iter().all(|(_, r)| r.is_ok()));
}
