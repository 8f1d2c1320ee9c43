//! Named verification suites over the shipped inputs or user files.

use super::report::VerificationReport;
use crate::checks::{Check, Tol, Tolerances};
use crate::cocycles::{
    bicharacter_cocycle, enumerate_bicharacters, random_dual_unitary, Bicharacter, DualCocycle,
};
use crate::deform::{
    deform, verify_cohomology_invariance, verify_dual_action_case, verify_stages, verify_ttwisted,
    verify_tva, CrossedProduct, GSystem, OpSystem,
};
use crate::fqg::{pentagon_defect, FiniteGroup, FiniteQuantumGroup, Kind};
use crate::kahlerian::{self, KahlerianConfig};
use crate::tensorkit::linalg::{self, CMat};
use crate::twisted::TwistedGroupAlgebra;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

/// Suites in report order; `all` runs every other one.
pub const SUITES: [&str; 10] = [
    "pentagon",
    "duality",
    "cocycle",
    "twisted",
    "deform",
    "theorems",
    "stages",
    "cohomology",
    "kahlerian",
    "all",
];

/// Verifier names accepted in a system file, with the suite running each.
pub const VERIFIERS: [(&str, &str); 10] = [
    ("system", "deform"),
    ("deformed", "deform"),
    ("action", "deform"),
    ("fixed", "deform"),
    ("crossed", "deform"),
    ("ttwisted", "theorems"),
    ("tva", "theorems"),
    ("dual-action", "theorems"),
    ("stages", "stages"),
    ("cohomology", "cohomology"),
];

pub const ALGEBRAS: [&str; 5] = [
    "translation",
    "trivial",
    "matrix",
    "dual-crossed-scalars",
    "dual-crossed-dual",
];

/// A G-system preset together with the cocycle deforming it.
#[derive(Clone, Debug)]
pub struct Pair {
    pub algebra: String,
    pub cocycle: DualCocycle,
    /// Empty means every verifier that applies.
    pub verify: Vec<String>,
}

impl Pair {
    fn new(algebra: &str, cocycle: &DualCocycle) -> Self {
        Self {
            algebra: algebra.to_string(),
            cocycle: cocycle.clone(),
            verify: Vec::new(),
        }
    }

    pub fn label(&self) -> String {
        let q = &self.cocycle.q;
        format!("{}/{}/{}", ambient_label(q), self.cocycle.label, self.algebra)
    }

    fn wants(&self, verifier: &str) -> bool {
        self.verify.is_empty() || self.verify.iter().any(|v| v == verifier)
    }
}

/// Everything a suite may range over.
#[derive(Clone, Debug, Default)]
pub struct Inputs {
    /// Quantum groups for the pentagon and duality suites.
    pub groups: Vec<FiniteQuantumGroup>,
    /// Cocycles for the cocycle and twisted suites.
    pub cocycles: Vec<DualCocycle>,
    pub pairs: Vec<Pair>,
    /// Dual crossed products checked against the dual action theorem alone.
    pub dual_cases: Vec<Pair>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub seed: u64,
    pub tolerances: Tolerances,
    /// Random coboundaries per pair in the cohomology suite.
    pub coboundaries: usize,
    pub kahlerian_d: Vec<usize>,
    pub theta: f64,
    pub samples: usize,
    pub half_width: f64,
}

impl Default for Options {
    fn default() -> Self {
        let k = KahlerianConfig::default();
        Self {
            seed: 7,
            tolerances: Tolerances::default(),
            coboundaries: 100,
            kahlerian_d: vec![0, 1],
            theta: k.theta,
            samples: k.samples,
            half_width: k.half_width,
        }
    }
}

pub fn ambient_label(q: &FiniteQuantumGroup) -> String {
    match q.kind {
        Kind::FunctionAlgebra => format!("C({})", q.group.name),
        Kind::GroupAlgebra => format!("C*({})", q.group.name),
    }
}

pub fn bicharacter_label(b: &Bicharacter) -> String {
    let rows: Vec<String> = b
        .exponents
        .iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("psi[{}]", rows.join(";"))
}

/// Every bicharacter cocycle of an abelian group, in enumeration order.
pub fn all_bicharacter_cocycles(g: &FiniteGroup) -> Vec<DualCocycle> {
    let q = FiniteQuantumGroup::group_algebra(g);
    enumerate_bicharacters(g)
        .expect("abelian group given by factors")
        .iter()
        .map(|b| bicharacter_cocycle(&q, &b.table(), &bicharacter_label(b)).expect("bicharacter"))
        .collect()
}

fn shipped_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::abelian(&[2, 2]).expect("klein"),
        FiniteGroup::s3(),
    ]
}

/// The default inputs: small groups in both pictures, every bicharacter of
/// the abelian ones, and the deformation pairs whose runtime fits the suite.
pub fn shipped() -> Inputs {
    let mut inputs = Inputs::default();
    for g in shipped_groups() {
        inputs.groups.push(FiniteQuantumGroup::function_algebra(&g));
        inputs.groups.push(FiniteQuantumGroup::group_algebra(&g));
    }
    let trivial_group = FiniteGroup::cyclic(1);
    inputs.cocycles.extend(all_bicharacter_cocycles(&trivial_group));
    for g in shipped_groups().iter().filter(|g| g.is_abelian()) {
        inputs.cocycles.extend(all_bicharacter_cocycles(g));
    }
    let s3 = FiniteQuantumGroup::function_algebra(&FiniteGroup::s3());
    inputs.cocycles.push(DualCocycle::trivial(&s3));

    // a nontrivial bicharacter per group, antisymmetric when one exists
    let pick = |factors: &[usize]| {
        let g = FiniteGroup::abelian(factors).expect("abelian");
        all_bicharacter_cocycles(&g)
            .into_iter()
            .find(|c| !is_trivial(c))
            .expect("nontrivial bicharacter")
    };
    let light = ["translation", "trivial", "matrix", "dual-crossed-scalars"];
    for (factors, algebras) in [
        (&[2][..], &ALGEBRAS[..]),
        (&[3][..], &ALGEBRAS[..]),
        (&[4][..], &light[..]),
        (&[2, 2][..], &light[..]),
    ] {
        let c = pick(factors);
        for a in algebras {
            inputs.pairs.push(Pair::new(a, &c));
        }
    }
    // the larger dual crossed products of the dual only feed the dual action
    // theorem; the full battery on them costs minutes
    for factors in [&[4][..], &[2, 2][..]] {
        inputs.dual_cases.push(Pair::new("dual-crossed-dual", &pick(factors)));
    }
    inputs.pairs.push(Pair::new("trivial", &DualCocycle::trivial(&s3)));
    inputs
}

pub fn is_trivial(c: &DualCocycle) -> bool {
    let m = c.omega.nrows();
    linalg::defect(&c.omega, &CMat::identity(m, m)) <= 1e-12
}

/// A check standing in for a computation that could not be carried out.
fn failed(name: &str, anchor: &'static str, err: impl std::fmt::Display) -> Check {
    Check::new(format!("{name} could not be built: {err}"), anchor, f64::NAN, Tol::Identity)
}

pub fn pentagon_checks(q: &FiniteQuantumGroup) -> Vec<Check> {
    let n = q.n;
    vec![
        Check::identity("pentagon of W", "pentagon", pentagon_defect(&q.w, n)),
        Check::identity("pentagon of W^", "pentagon", pentagon_defect(&q.what, n)),
        Check::identity("pentagon of V", "pentagon", pentagon_defect(&q.v, n)),
    ]
}

pub fn duality_checks(q: &FiniteQuantumGroup) -> Vec<Check> {
    let r = q.invariants();
    let bidual = q.dual().dual();
    vec![
        Check::identity("W unitary", "multiplicative-unitary", r.unitarity_w),
        Check::identity("W^ unitary", "multiplicative-unitary", r.unitarity_what),
        Check::identity("V unitary", "multiplicative-unitary", r.unitarity_v),
        Check::identity("coproduct via W equals via V", "coproduct", r.coproduct_agreement),
        Check::span("coproduct lands in M (x) M", "coproduct", r.coproduct_range),
        Check::identity("(J^ (x) J) W* (J^ (x) J) = W", "antipode", r.antipode),
        Check::span("slices of W span M^", "duality", r.dual_span),
        Check::identity("J involutive", "modular-conjugation", r.j_involution),
        Check::identity("J^ involutive", "modular-conjugation", r.jhat_involution),
        Check::span("W^op in M^ (x) M'", "duality", q.what_op_residual()),
        Check::span("bidual equals the original", "biduality", q.span_distance(&bidual)),
    ]
}

pub fn cocycle_checks(c: &DualCocycle) -> Vec<Check> {
    let r = c.verify();
    let mut out = vec![
        Check::identity("Omega unitary", "dual-cocycle", r.unitarity),
        Check::span("Omega in M^ (x) M^", "dual-cocycle", r.membership),
        Check::identity("cocycle identity", "dual-cocycle", r.identity),
        Check::identity("rewritten cocycle identity", "cocycle-rewritten", r.rewritten),
        Check::identity("rewritten identity via W^", "cocycle-rewritten", r.rewritten2),
        Check::identity(
            "deformed coproduct coassociative",
            "deformed-coproduct",
            c.deformed_coassociativity(),
        ),
    ];
    match c.dual_weight_gns() {
        Ok(d) => {
            let r = d.report(c);
            out.extend([
                Check::span("Lambda~ well defined", "dual-weight", r.well_defined),
                Check::identity("J~ involutive", "dual-weight", r.jtilde_involution),
                Check::identity("X = J~J unitary", "dual-weight", r.x_unitarity),
                Check::span("X in M^", "dual-weight", r.x_membership),
                Check::identity("W^_Omega unitary", "deformed-unitary", r.unitarity),
                Check::identity("W^_Omega pentagon", "deformed-unitary", r.pentagon),
                Check::identity("W^_Omega implements the deformed coproduct", "deformed-unitary", r.implements),
                Check::identity("ecocycle4 identity", "deformed-unitary", r.ecocycle4),
                Check::span(
                    "slices of W^_Omega Omega span J^ C*_r(G^;Omega) J^",
                    "deformed-unitary",
                    d.inverse_span_distance(c),
                ),
            ]);
        }
        Err(e) => out.push(failed("dual weight data", "dual-weight", e)),
    }
    out
}

/// Center dimension of the twisted algebra when it follows from the
/// cocycle alone: for a scalar cocycle on an abelian group, the number of
/// `s` with `Ω(s,t) = Ω(t,s)` for all `t`.
pub fn expected_center_dim(c: &DualCocycle) -> Option<usize> {
    let q = &c.q;
    let n = q.n;
    match q.kind {
        Kind::GroupAlgebra if q.group.is_abelian() => {
            let diag = (0..n * n).all(|i| {
                (0..n * n).all(|j| i == j || c.omega[(i, j)].norm() <= 1e-12)
            });
            if !diag {
                return None;
            }
            let w = |s: usize, t: usize| c.omega[(s * n + t, s * n + t)];
            Some(
                (0..n)
                    .filter(|&s| (0..n).all(|t| (w(s, t) - w(t, s)).norm() <= 1e-9))
                    .count(),
            )
        }
        Kind::FunctionAlgebra if is_trivial(c) => Some(n),
        _ => None,
    }
}

pub fn twisted_checks(c: &DualCocycle) -> Vec<Check> {
    let n = c.n();
    let t = match TwistedGroupAlgebra::build(c) {
        Ok(t) => t,
        Err(e) => return vec![failed("twisted algebra", "twisted-algebra", e)],
    };
    let r = t.report();
    let mut out = vec![
        Check::exact("dimension", "twisted-algebra", r.dim, n),
        Check::span("closed under products and adjoints", "twisted-algebra", r.closure),
    ];
    if let Some(z) = expected_center_dim(c) {
        out.push(Check::exact("center dimension", "twisted-algebra", r.center_dim, z));
    }
    if let Some(d) = t.translation_relation_defect() {
        out.push(Check::identity("twisted translation relations", "twisted-algebra", d));
    }
    out.extend([
        Check::span("beta lands in C*_r(G^;Omega) (x) M", "twisted-coaction", r.beta_range),
        Check::identity("beta on the generating unitary", "twisted-coaction", r.beta_on_generator),
        Check::identity("beta is a *-homomorphism", "twisted-coaction", r.beta_multiplicative),
        Check::identity("beta is a coaction", "twisted-coaction", r.beta_coaction),
        Check::span("W^ Omega* absorbed on the left", "twisted-coaction", r.left_stability),
        Check::span("W^ Omega* absorbed on the right", "twisted-coaction", r.right_stability),
        Check::span(
            "quantization spans C*_r(G^;Omega)",
            "quantization",
            t.quantization_span().distance(&t.span).unwrap_or(1.0),
        ),
        Check::identity("quantization is equivariant", "quantization", t.equivariance_defect()),
    ]);
    let reg = t.regularity();
    out.push(Check::exact("regularity product span", "regularity", reg.product_dim, reg.full_dim));
    // span{(K⊗1)ŴΩ*(1⊗K)} against all of K(H⊗H)
    out.push(Check::exact(
        "compact-operator condition",
        "regularity",
        reg.compact_condition_dim,
        reg.full_dim * reg.full_dim,
    ));
    let basis = t.span.basis();
    let weight = basis
        .iter()
        .map(|y| t.weight_norm_defect(y))
        .try_fold(0.0f64, |m, d| d.map(|d| m.max(d)));
    match weight {
        Ok(w) => out.push(Check::identity("dual weight is the average", "dual-weight", w)),
        Err(e) => out.push(failed("averaged weight", "dual-weight", e)),
    }
    out
}

fn system_for(p: &Pair) -> Result<GSystem, String> {
    GSystem::preset(&p.cocycle.q, &p.algebra).map_err(|e| e.to_string())
}

fn op_for(p: &Pair) -> Option<OpSystem> {
    let q = &p.cocycle.q;
    match p.algebra.as_str() {
        "dual-crossed-scalars" => Some(OpSystem::scalars(q)),
        "dual-crossed-dual" => Some(OpSystem::dual(q)),
        _ => None,
    }
}

pub fn deform_checks(p: &Pair) -> Vec<(String, Vec<Check>)> {
    let mut out = Vec::new();
    let s = match system_for(p) {
        Ok(s) => s,
        Err(e) => return vec![("system".into(), vec![failed("system", "g-algebra", e)])],
    };
    if p.wants("system") {
        out.push(("system".into(), s.report()));
    }
    let needs_d = ["deformed", "action", "fixed"].iter().any(|v| p.wants(v));
    if needs_d {
        match deform(&s, &p.cocycle) {
            Ok(d) => {
                if p.wants("deformed") {
                    let mut c = d.report();
                    c.push(Check::exact(
                        "dimension of A_Omega",
                        "deformed-algebra",
                        d.dim(),
                        s.a.dim(),
                    ));
                    out.push(("deformed".into(), c));
                }
                if p.wants("action") {
                    out.push(("action".into(), d.action_report()));
                }
                if p.wants("fixed") {
                    out.push(("fixed".into(), d.fixed_point_report()));
                }
            }
            Err(e) => out.push(("deformed".into(), vec![failed("A_Omega", "deformed-algebra", e)])),
        }
    }
    if p.wants("crossed") {
        out.push(("crossed".into(), CrossedProduct::build(&s).report(&s)));
    }
    out
}

pub fn theorem_checks(p: &Pair) -> Vec<(String, Vec<Check>)> {
    let mut out = Vec::new();
    if p.wants("ttwisted") || p.wants("tva") {
        match system_for(p).and_then(|s| deform(&s, &p.cocycle).map_err(|e| e.to_string())) {
            Ok(d) => {
                if p.wants("ttwisted") {
                    out.push(("ttwisted".into(), verify_ttwisted(&d)));
                }
                if p.wants("tva") {
                    out.push(("tva".into(), verify_tva(&d)));
                }
            }
            Err(e) => out.push(("ttwisted".into(), vec![failed("A_Omega", "twisted-double-crossed", e)])),
        }
    }
    if p.wants("dual-action") {
        if let Some(c) = dual_action_checks(p) {
            out.push(("dual-action".into(), c));
        }
    }
    out
}

fn dual_action_checks(p: &Pair) -> Option<Vec<Check>> {
    let op = op_for(p)?;
    let mut c = op.report();
    match verify_dual_action_case(&op, &p.cocycle) {
        Ok((_, more)) => c.extend(more),
        Err(e) => c.push(failed("dual action case", "dual-action-deformation", e)),
    }
    Some(c)
}

pub fn stage_checks(p: &Pair) -> Vec<Check> {
    let s = match system_for(p) {
        Ok(s) => s,
        Err(e) => return vec![failed("system", "stages", e)],
    };
    let c = &p.cocycle;
    let inverse = match c.dual_weight_gns() {
        Ok(d) => d.cocycle_on_deformed(c),
        Err(e) => return vec![failed("inverse cocycle", "stages", e)],
    };
    verify_stages(&s, c, &inverse).unwrap_or_else(|e| vec![failed("stages", "stages", e)])
}

pub fn cohomology_checks(p: &Pair, count: usize, rng: &mut ChaCha8Rng) -> Vec<Check> {
    let s = match system_for(p) {
        Ok(s) => s,
        Err(e) => return vec![failed("system", "cohomology-invariance", e)],
    };
    let us: Vec<CMat> = (0..count)
        .map(|_| random_dual_unitary(&s.q, rng))
        .collect();
    let mut out = verify_cohomology_invariance(&s, &p.cocycle, &us)
        .unwrap_or_else(|e| vec![failed("cohomology", "cohomology-invariance", e)]);
    out.push(Check::exact("random coboundaries drawn", "cohomology-invariance", us.len(), count));
    out
}

/// Seeded generator for the `i`th pair.
fn pair_rng(seed: u64, i: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i as u64);
    rng
}

fn run_one(suite: &str, inputs: &Inputs, opts: &Options, r: &mut VerificationReport) {
    match suite {
        "pentagon" => {
            for q in &inputs.groups {
                r.extend(&ambient_label(q), pentagon_checks(q));
            }
        }
        "duality" => {
            for q in &inputs.groups {
                r.extend(&ambient_label(q), duality_checks(q));
            }
        }
        "cocycle" => {
            for c in &inputs.cocycles {
                r.extend(&cocycle_scope(c), cocycle_checks(c));
            }
        }
        "twisted" => {
            for c in &inputs.cocycles {
                r.extend(&cocycle_scope(c), twisted_checks(c));
            }
        }
        "deform" | "theorems" => {
            for p in &inputs.pairs {
                let groups = if suite == "deform" {
                    deform_checks(p)
                } else {
                    theorem_checks(p)
                };
                for (v, checks) in groups {
                    r.extend(&format!("{} {v}", p.label()), checks);
                }
                note_skips(suite, p, r);
            }
            if suite == "theorems" {
                for p in &inputs.dual_cases {
                    match dual_action_checks(p) {
                        Some(c) => r.extend(&format!("{} dual-action", p.label()), c),
                        None => r.skip(format!("{}: dual-action needs a dual crossed product", p.label())),
                    }
                }
            }
        }
        "stages" => {
            for p in &inputs.pairs {
                if p.wants("stages") {
                    r.extend(&p.label(), stage_checks(p));
                }
                note_skips(suite, p, r);
            }
        }
        "cohomology" => {
            for (i, p) in inputs.pairs.iter().enumerate() {
                if p.wants("cohomology") {
                    let mut rng = pair_rng(opts.seed, i);
                    r.extend(&p.label(), cohomology_checks(p, opts.coboundaries, &mut rng));
                }
                note_skips(suite, p, r);
            }
        }
        "kahlerian" => {
            for &d in &opts.kahlerian_d {
                let cfg = KahlerianConfig {
                    d,
                    theta: opts.theta,
                    samples: opts.samples,
                    seed: opts.seed,
                    half_width: opts.half_width,
                };
                let scope = format!("d={d}");
                match kahlerian::verify(&cfg, None) {
                    Ok(c) => r.extend(&scope, c),
                    Err(e) => r.extend(&scope, vec![failed("kernel checks", "j-group-law", e)]),
                }
            }
        }
        other => unreachable!("unknown suite {other}"),
    }
}

fn note_skips(suite: &str, p: &Pair, r: &mut VerificationReport) {
    for (v, _) in VERIFIERS.iter().filter(|(_, s)| *s == suite) {
        if !p.wants(v) {
            r.skip(format!("{}: {v} not requested", p.label()));
        }
    }
    if suite == "theorems" && p.verify.iter().any(|v| v == "dual-action") && op_for(p).is_none() {
        r.skip(format!("{}: dual-action needs a dual crossed product", p.label()));
    }
}

fn cocycle_scope(c: &DualCocycle) -> String {
    format!("{}/{}", ambient_label(&c.q), c.label)
}

/// Run a suite; `all` runs the others on separate threads and concatenates
/// their checks in suite order.
pub fn run_suite(suite: &str, inputs: &Inputs, opts: &Options) -> Result<VerificationReport, String> {
    if !SUITES.contains(&suite) {
        return Err(format!("unknown suite `{suite}`; expected one of {}", SUITES.join(", ")));
    }
    let mut report = VerificationReport::new(suite, opts.seed, opts.tolerances);
    if suite != "all" {
        run_one(suite, inputs, opts, &mut report);
        return Ok(report);
    }
    let parts: Vec<VerificationReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = SUITES[..SUITES.len() - 1]
            .iter()
            .map(|s| {
                scope.spawn(move || {
                    let mut r = VerificationReport::new(s, opts.seed, opts.tolerances);
                    run_one(s, inputs, opts, &mut r);
                    r
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("suite thread")).collect()
    });
    for part in parts {
        for mut c in part.checks {
            c.name = format!("{} | {}", part.suite, c.name);
            report.checks.push(c);
        }
        report.skipped.extend(part.skipped);
    }
    Ok(report)
}
