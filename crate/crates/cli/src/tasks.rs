//! One handler per task. Each parses its fields, calls the library and
//! returns a status with a JSON result.

use crossmod::duskin::{
    coboundary_to_homotopy, cocycle_to_simplicial_map, duskin_nerve, homology, monoidal_diag_nerve,
    ordinary_nerve, ordinary_to_duskin_isomorphism, search_homotopy, verify_appendix_retraction,
    verify_homotopy, HomologyGroup, IdentityViolation, TruncatedSimplicialSet,
};
use crossmod::grpcore::{cohomology, validate_group, CoefficientKind};
use crossmod::obstr::{
    clock_shift_kernel, matrix_kernel_obstruction, perturbation_check, validate_extension,
    verify_exactness, MatrixKernel, Theta,
};
use crossmod::unitary::{
    check_exp_inequalities, check_sandwich, conjugation_invariance, d_tau, decompose_path,
    decomposition_battery, dlhs_delta, dlhs_path, el_tau, homomorphism_check,
    membership_consistency, su_tau_member, MatrixJson, Quadrature, Unitary, UnitaryPath,
};
use crossmod::xmod::{
    abelian_shift, are_cohomologous, cocycle_violations, compute_h1, validate_xmod, Cocycle1,
    CrossedModule,
};
use crossmod::Error;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::bundle::{
    self, BundleError, CocycleSpec, Common, ExtensionSpec, GroupSpec, ModuleSpec, XModSpec,
};
use crate::report::{round_sig, Status};

pub const TASKS: [&str; 12] = [
    "validate",
    "h-n",
    "h1",
    "h1-ff",
    "theta",
    "exact-check",
    "nerve",
    "homology",
    "appendix-check",
    "kernel-ob",
    "unitary-check",
    "decompose",
];

/// Residual bound for numeric invariance checks.
pub const NUMERIC_TOL: f64 = 1e-8;

pub enum Failure {
    Bundle(BundleError),
    Module(Error),
}

impl From<BundleError> for Failure {
    fn from(e: BundleError) -> Self {
        Failure::Bundle(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Module(e)
    }
}

pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub result: Value,
}

type Run = Result<Outcome, Failure>;

fn outcome(ok: bool, summary: impl Into<String>, result: impl Serialize) -> Run {
    Ok(Outcome {
        status: if ok { Status::Ok } else { Status::Violation },
        summary: summary.into(),
        result: serde_json::to_value(result).expect("results serialize"),
    })
}

fn fields<T: DeserializeOwned>(map: Map<String, Value>) -> Result<T, Failure> {
    Ok(bundle::parse(Value::Object(map), "")?)
}

pub fn dispatch(common: &Common, map: Map<String, Value>) -> Run {
    match common.task.as_str() {
        "validate" => validate(fields(map)?),
        "h-n" => h_n(common, fields(map)?),
        "h1" => h1(common, fields(map)?, false),
        "h1-ff" => h1(common, fields(map)?, true),
        "theta" => theta(common, fields(map)?),
        "exact-check" => exact_check(common, fields(map)?),
        "nerve" => nerve(common, fields(map)?),
        "homology" => homology_task(common, fields(map)?),
        "appendix-check" => appendix(common, fields(map)?),
        "kernel-ob" => kernel_ob(common, fields(map)?),
        "unitary-check" => unitary_check(common, fields(map)?),
        "decompose" => decompose(common, fields(map)?),
        other => Err(BundleError::at(
            "/task",
            format!(
                "unknown task `{other}`; expected one of {}",
                TASKS.join(", ")
            ),
        )
        .into()),
    }
}

/// Residuals in summaries.
fn sci(x: f64) -> String {
    format!("{x:.3e}")
}

fn first_violation<T: Serialize>(vs: &[T]) -> String {
    vs.first()
        .map(|v| serde_json::to_string(v).expect("violations serialize"))
        .unwrap_or_default()
}

fn violations_outcome<T: Serialize>(object: &str, vs: Vec<T>) -> Run {
    let summary = if vs.is_empty() {
        format!("{object} satisfies every law")
    } else {
        format!("{} violation(s), first {}", vs.len(), first_violation(&vs))
    };
    outcome(
        vs.is_empty(),
        summary,
        json!({"object": object, "valid": vs.is_empty(), "violations": vs}),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    #[allow(dead_code)]
    order: Option<usize>,
    mul: Vec<Vec<usize>>,
    #[serde(default)]
    #[allow(dead_code)]
    label: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawXMod {
    #[serde(rename = "H")]
    h: GroupSpec,
    #[serde(rename = "G")]
    g: GroupSpec,
    boundary: Vec<usize>,
    action: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    xmod0: XModSpec,
    xmod1: XModSpec,
    phi0: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCocycle {
    gamma: GroupSpec,
    xmod: XModSpec,
    alpha: Vec<usize>,
    u: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Validate {
    group: Option<RawGroup>,
    xmod: Option<RawXMod>,
    extension: Option<RawExtension>,
    cocycle: Option<RawCocycle>,
}

fn validate(p: Validate) -> Run {
    match (p.group, p.xmod, p.extension, p.cocycle) {
        (Some(g), None, None, None) => violations_outcome("group", validate_group(&g.mul)),
        (None, Some(x), None, None) => {
            let h = bundle::group(&x.h, "/xmod/H")?;
            let g = bundle::group(&x.g, "/xmod/G")?;
            let action: Vec<usize> = x.action.into_iter().flatten().collect();
            violations_outcome("xmod", validate_xmod(&h, &g, &x.boundary, &action))
        }
        (None, None, Some(e), None) => {
            let x0 = bundle::xmod(&e.xmod0, "/extension/xmod0")?;
            let x1 = bundle::xmod(&e.xmod1, "/extension/xmod1")?;
            violations_outcome("extension", validate_extension(&x0, &x1, &e.phi0))
        }
        (None, None, None, Some(c)) => {
            let gamma = bundle::group(&c.gamma, "/cocycle/gamma")?;
            let x = bundle::xmod(&c.xmod, "/cocycle/xmod")?;
            let n = gamma.order();
            if c.u.len() != n || c.u.iter().any(|r| r.len() != n) {
                return Err(
                    BundleError::at("/cocycle/u", format!("u must be a {n}x{n} table")).into(),
                );
            }
            let cocycle = Cocycle1 {
                alpha: c.alpha,
                u: c.u.into_iter().flatten().collect(),
            };
            violations_outcome("cocycle", cocycle_violations(&gamma, &x, &cocycle))
        }
        _ => Err(BundleError::at(
            "",
            "validate needs exactly one of group, xmod, extension, cocycle",
        )
        .into()),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HN {
    group: GroupSpec,
    module: ModuleSpec,
    n: usize,
}

fn h_n(c: &Common, p: HN) -> Run {
    let g = bundle::group(&p.group, "/group")?;
    let m = bundle::module(&p.module, "/module")?;
    let h = cohomology(&g, &m, p.n, &c.budget)?;
    let kind = match m.kind {
        CoefficientKind::FiniteAbelian => "finite-abelian",
        CoefficientKind::RationalCircle => "rational-circle",
    };
    let factors = h.invariant_factors().to_vec();
    outcome(
        true,
        format!(
            "H^{}({}, {}) has invariant factors {:?}",
            p.n,
            g.label(),
            module_label(&m.label, kind, &m.factors),
            factors
        ),
        json!({
            "group": g.label(),
            "module": {"kind": kind, "factors": m.factors, "label": m.label},
            "degree": p.n,
            "factors": factors,
            "order": h.order(),
        }),
    )
}

fn module_label(label: &str, kind: &str, factors: &[u64]) -> String {
    if !label.is_empty() {
        label.to_string()
    } else if kind == "rational-circle" {
        "Q/Z".into()
    } else {
        factors
            .iter()
            .map(|f| format!("Z{f}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct H1Task {
    gamma: GroupSpec,
    xmod: XModSpec,
    #[serde(default)]
    strict: bool,
    #[serde(default)]
    abelian_shift: bool,
}

fn h1(c: &Common, p: H1Task, ff: bool) -> Run {
    let gamma = bundle::group(&p.gamma, "/gamma")?;
    let x = bundle::xmod(&p.xmod, "/xmod")?;
    let h = compute_h1(&gamma, &x, ff, p.strict, &c.budget)?;
    let kind = if ff { "H1ff" } else { "H1" };
    if !p.abelian_shift {
        return outcome(
            true,
            format!(
                "{kind}({}, {}) has {} class(es)",
                gamma.label(),
                x.label(),
                h.len()
            ),
            json!({"h1": h}),
        );
    }
    if x.g().order() != 1 {
        return Err(
            BundleError::at("/xmod", "the abelian shift needs a crossed module H -> 1").into(),
        );
    }
    let shift = abelian_shift(&gamma, x.h(), &c.budget)?;
    let ok = shift.bijective && shift.basepoint_to_zero;
    outcome(
        ok,
        format!(
            "{kind} has {} class(es); shift to H^2 bijective: {}",
            h.len(),
            shift.bijective
        ),
        json!({"h1": h, "shift": shift}),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ThetaTask {
    gamma: GroupSpec,
    extension: ExtensionSpec,
    cocycle: Option<CocycleSpec>,
    #[serde(default)]
    lift_sweep: bool,
}

fn theta(c: &Common, p: ThetaTask) -> Run {
    let gamma = bundle::group(&p.gamma, "/gamma")?;
    let e = bundle::extension(&p.extension, "/extension")?;
    let cocycles = match &p.cocycle {
        Some(spec) => vec![bundle::cocycle(spec, &gamma, e.x1(), "/cocycle")?],
        None => compute_h1(&gamma, e.x1(), false, false, &c.budget)?
            .representatives()
            .cloned()
            .collect(),
    };
    let mut rows = Vec::new();
    let mut independent = true;
    let mut nonzero = 0;
    for cocycle in &cocycles {
        let t = Theta::new(&e, &gamma, cocycle, &c.budget)?;
        let class = t.class(&t.canonical_lift())?;
        nonzero += usize::from(!class.is_zero());
        let sweep = if p.lift_sweep {
            let s = t.lift_sweep(&c.budget)?;
            independent &= s.classes.len() == 1;
            Some(s)
        } else {
            None
        };
        rows.push(json!({"cocycle": cocycle, "theta": class, "lift_sweep": sweep}));
    }
    let mut summary = format!(
        "{} cocycle(s), {} with nonzero theta",
        cocycles.len(),
        nonzero
    );
    if p.lift_sweep {
        summary += if independent {
            "; every lift gives one class"
        } else {
            "; lifts disagree"
        };
    }
    outcome(independent, summary, json!({"classes": rows}))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Exact {
    gamma: GroupSpec,
    extension: ExtensionSpec,
}

fn exact_check(c: &Common, p: Exact) -> Run {
    let gamma = bundle::group(&p.gamma, "/gamma")?;
    let e = bundle::extension(&p.extension, "/extension")?;
    let r = verify_exactness(&e, &gamma, &c.budget)?;
    outcome(
        r.exact(),
        format!(
            "{} source and {} target classes; exact: {}",
            r.source_classes,
            r.target_classes,
            r.exact()
        ),
        r,
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct NerveTask {
    model: String,
    group: Option<GroupSpec>,
    xmod: Option<XModSpec>,
    gamma: Option<GroupSpec>,
    a: Option<CocycleSpec>,
    b: Option<CocycleSpec>,
    n: usize,
}

fn need<'a, T>(v: &'a Option<T>, at: &str, model: &str) -> Result<&'a T, Failure> {
    v.as_ref()
        .ok_or_else(|| BundleError::at(at, format!("model `{model}` needs this field")).into())
}

fn set_result(label: String, s: &TruncatedSimplicialSet) -> Run {
    let vs: Vec<IdentityViolation> = s.identity_violations();
    outcome(
        vs.is_empty(),
        format!(
            "{label}: simplex counts {:?}, {} identity violation(s)",
            s.counts,
            vs.len()
        ),
        json!({"label": label, "N": s.n, "counts": s.counts, "identity_violations": vs.len(), "first_violations": &vs[..vs.len().min(8)]}),
    )
}

fn nerve(c: &Common, p: NerveTask) -> Run {
    let m = p.model.as_str();
    match m {
        "ordinary" => {
            let g = bundle::group(need(&p.group, "/group", m)?, "/group")?;
            set_result(
                format!("N({})", g.label()),
                &ordinary_nerve(&g, p.n, &c.budget)?.set,
            )
        }
        "duskin" => {
            let x = bundle::xmod(need(&p.xmod, "/xmod", m)?, "/xmod")?;
            set_result(
                format!("duskin({})", x.label()),
                &duskin_nerve(&x, p.n, &c.budget)?.set,
            )
        }
        "diagonal" => {
            let x = bundle::xmod(need(&p.xmod, "/xmod", m)?, "/xmod")?;
            set_result(
                format!("diagonal({})", x.label()),
                &monoidal_diag_nerve(&x, p.n, &c.budget)?.set,
            )
        }
        "ordinary-vs-duskin" => {
            let g = bundle::group(need(&p.group, "/group", m)?, "/group")?;
            let r = ordinary_to_duskin_isomorphism(&g, p.n, &c.budget)?;
            outcome(
                r.holds(),
                format!(
                    "N({0}) -> duskin(1 -> {0}) up to {1}: isomorphism {2}",
                    g.label(),
                    p.n,
                    r.holds()
                ),
                r,
            )
        }
        "homotopy" => homotopy(c, &p),
        _ => Err(BundleError::at(
            "/model",
            "model must be ordinary, duskin, diagonal, ordinary-vs-duskin or homotopy",
        )
        .into()),
    }
}

/// Maps `N(Γ) -> N^D(x)` of two cocycles: a homotopy from a witness when
/// they are cohomologous, otherwise an exhaustive search that should fail.
fn homotopy(c: &Common, p: &NerveTask) -> Run {
    let m = "homotopy";
    let gamma = bundle::group(need(&p.gamma, "/gamma", m)?, "/gamma")?;
    let x = bundle::xmod(need(&p.xmod, "/xmod", m)?, "/xmod")?;
    let a = bundle::cocycle(need(&p.a, "/a", m)?, &gamma, &x, "/a")?;
    let b = bundle::cocycle(need(&p.b, "/b", m)?, &gamma, &x, "/b")?;
    let source = ordinary_nerve(&gamma, p.n, &c.budget)?;
    let target = duskin_nerve(&x, p.n, &c.budget)?;
    let f = cocycle_to_simplicial_map(&gamma, &x, &a, &source, &target)?;
    let g = cocycle_to_simplicial_map(&gamma, &x, &b, &source, &target)?;
    match are_cohomologous(&gamma, &x, &a, &b, false, &c.budget)? {
        Some(w) => {
            let h = coboundary_to_homotopy(&gamma, &x, &a, &b, &w, &source, &target)?;
            let violation = verify_homotopy(&h, &source.set, &target.set, &f, &g);
            outcome(
                violation.is_none(),
                format!(
                    "cohomologous; witness homotopy verified: {}",
                    violation.is_none()
                ),
                json!({"cohomologous": true, "witness": w, "homotopy_verified": violation.is_none(), "violation": violation}),
            )
        }
        None => {
            let s = search_homotopy(&source.set, &target.set, &f, &g, &c.budget)?;
            let found = s.homotopy.is_some();
            outcome(
                !found,
                format!(
                    "not cohomologous; exhaustive search over {} node(s) found a homotopy: {found}",
                    s.nodes
                ),
                json!({"cohomologous": false, "homotopy_found": found, "reversed": s.reversed, "nodes": s.nodes}),
            )
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HomologyTask {
    model: String,
    group: Option<GroupSpec>,
    xmod: Option<XModSpec>,
    max_degree: usize,
    n: Option<usize>,
}

fn factors_text(hs: &[HomologyGroup]) -> String {
    hs.iter()
        .map(|h| format!("H{}={:?}", h.degree, h.factors))
        .collect::<Vec<_>>()
        .join(" ")
}

fn homology_task(c: &Common, p: HomologyTask) -> Run {
    let n = p.n.unwrap_or(p.max_degree + 1);
    let m = p.model.as_str();
    let xmod_of = |p: &HomologyTask| -> Result<CrossedModule, Failure> {
        Ok(bundle::xmod(need(&p.xmod, "/xmod", m)?, "/xmod")?)
    };
    let (label, hs): (String, Vec<HomologyGroup>) = match m {
        "ordinary" => {
            let g = bundle::group(need(&p.group, "/group", m)?, "/group")?;
            (
                format!("N({})", g.label()),
                homology(
                    &ordinary_nerve(&g, n, &c.budget)?.set,
                    p.max_degree,
                    &c.budget,
                )?,
            )
        }
        "duskin" => {
            let x = xmod_of(&p)?;
            (
                format!("duskin({})", x.label()),
                homology(
                    &duskin_nerve(&x, n, &c.budget)?.set,
                    p.max_degree,
                    &c.budget,
                )?,
            )
        }
        "diagonal" => {
            let x = xmod_of(&p)?;
            (
                format!("diagonal({})", x.label()),
                homology(
                    &monoidal_diag_nerve(&x, n, &c.budget)?.set,
                    p.max_degree,
                    &c.budget,
                )?,
            )
        }
        "compare" => {
            let x = xmod_of(&p)?;
            let d = homology(
                &duskin_nerve(&x, n, &c.budget)?.set,
                p.max_degree,
                &c.budget,
            )?;
            let m = homology(
                &monoidal_diag_nerve(&x, n, &c.budget)?.set,
                p.max_degree,
                &c.budget,
            )?;
            let agree = d == m;
            return outcome(
                agree,
                format!(
                    "{}: duskin {} / diagonal {}; agree: {agree}",
                    x.label(),
                    factors_text(&d),
                    factors_text(&m)
                ),
                json!({"label": x.label(), "N": n, "duskin": d, "diagonal": m, "agree": agree}),
            );
        }
        _ => {
            return Err(BundleError::at(
                "/model",
                "model must be ordinary, duskin, diagonal or compare",
            )
            .into())
        }
    };
    outcome(
        true,
        format!("{label}: {}", factors_text(&hs)),
        json!({"label": label, "N": n, "homology": hs}),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AppendixTask {
    xmod: XModSpec,
    #[serde(default = "three")]
    n_max: usize,
    #[serde(default = "three")]
    m_max: usize,
}

fn three() -> usize {
    3
}

fn appendix(c: &Common, p: AppendixTask) -> Run {
    let x = bundle::xmod(&p.xmod, "/xmod")?;
    let r = verify_appendix_retraction(&x, p.n_max, p.m_max, &c.budget)?;
    outcome(
        r.passed(),
        format!(
            "{}: {} identities checked, {} failure(s)",
            r.label, r.identities_checked, r.failure_count
        ),
        r,
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct KernelTask {
    gamma: Option<GroupSpec>,
    matrices: Option<Vec<MatrixJson>>,
    clock_shift: Option<usize>,
    #[serde(default = "kernel_tol")]
    tol: f64,
    snap_denominator: Option<u64>,
    #[serde(default)]
    perturbations: usize,
}

fn kernel_tol() -> f64 {
    1e-9
}

fn kernel_ob(c: &Common, p: KernelTask) -> Run {
    let (gamma, mats) = match (&p.gamma, &p.matrices, p.clock_shift) {
        (Some(g), Some(m), None) => {
            let gamma = bundle::group(g, "/gamma")?;
            let k = MatrixKernel {
                mats: m.clone(),
                tol: p.tol,
            };
            (gamma, k.matrices()?)
        }
        (None, None, Some(n)) if (2..=7).contains(&n) => clock_shift_kernel(n),
        (None, None, Some(_)) => {
            return Err(BundleError::at("/clock_shift", "clock_shift supports 2..=7").into())
        }
        _ => {
            return Err(
                BundleError::at("", "kernel-ob needs gamma and matrices, or clock_shift").into(),
            )
        }
    };
    let o = matrix_kernel_obstruction(&gamma, &mats, p.tol, p.snap_denominator, &c.budget)?;
    let mut ok = true;
    let mut summary = format!(
        "class {} with coordinates {:?}; witness found: {}",
        if o.class.is_zero() { "zero" } else { "nonzero" },
        o.class.coordinates,
        o.witness.is_some()
    );
    let perturbed = if p.perturbations > 0 {
        let r = perturbation_check(
            &gamma,
            &mats,
            p.tol,
            p.snap_denominator,
            p.perturbations,
            c.seed,
            &c.budget,
        )?;
        ok = r.class_changes == 0 && r.max_omega_snap_residual < NUMERIC_TOL;
        summary += &format!(
            "; {} perturbation(s), {} class change(s)",
            r.count, r.class_changes
        );
        Some(r)
    } else {
        None
    };
    outcome(
        ok,
        summary,
        json!({"obstruction": o, "perturbations": perturbed}),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PathJson {
    ts: Vec<f64>,
    mats: Vec<MatrixJson>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct UnitaryTask {
    op: String,
    u: Option<MatrixJson>,
    v: Option<MatrixJson>,
    path: Option<PathJson>,
    #[serde(default)]
    quadrature: Quadrature,
    n_max: Option<usize>,
    trials: Option<usize>,
    epsilon: Option<f64>,
}

fn unitary_at(
    c: &Common,
    m: &Option<MatrixJson>,
    at: &str,
    op: &str,
) -> Result<Unitary<f64>, Failure> {
    Ok(Unitary::from_json(
        need(m, at, op)?,
        c.tolerances.unitarity,
    )?)
}

fn path_at(c: &Common, p: &Option<PathJson>, op: &str) -> Result<UnitaryPath<f64>, Failure> {
    let p = need(p, "/path", op)?;
    Ok(UnitaryPath::from_json_value(
        &p.ts,
        &p.mats,
        c.tolerances.unitarity,
    )?)
}

fn unitary_check(c: &Common, p: UnitaryTask) -> Run {
    let tol = &c.tolerances;
    let op = p.op.as_str();
    let n_max = |d: usize| p.n_max.unwrap_or(d);
    let trials = |d: usize| p.trials.unwrap_or(d);
    match op {
        "dlhs-path" => {
            let v = dlhs_path(&path_at(c, &p.path, op)?, p.quadrature, tol)?;
            outcome(true, format!("trace integral {}", round_sig(v.value)), v)
        }
        "dlhs-delta" => {
            let v = dlhs_delta(&unitary_at(c, &p.u, "/u", op)?, c.seed, tol)?;
            outcome(true, format!("class {} mod 1/{}{}", round_sig(v.value), v.n, v.snap.as_ref().map(|s| format!(" = {s}")).unwrap_or_default()), v)
        }
        "su-member" => {
            let m = su_tau_member(&unitary_at(c, &p.u, "/u", op)?, tol)?;
            outcome(true, format!("member: {}", m.member), m)
        }
        "el" => {
            let e = el_tau(&unitary_at(c, &p.u, "/u", op)?, tol)?;
            outcome(true, format!("exponential length {} ({:?})", round_sig(e.value), e.regime), e)
        }
        "d" => {
            let e = d_tau(&unitary_at(c, &p.u, "/u", op)?, &unitary_at(c, &p.v, "/v", op)?, tol)?;
            outcome(true, format!("distance {} ({:?})", round_sig(e.value), e.regime), e)
        }
        "exp-inequalities" => {
            let r = check_exp_inequalities(n_max(6), trials(10_000), c.seed)?;
            outcome(r.holds(), format!("{} pair(s), {} violation(s)", r.trials, r.violations), r)
        }
        "sandwich" => {
            let r = check_sandwich(n_max(4), trials(1000), p.epsilon.unwrap_or(1.0), c.seed, tol)?;
            outcome(r.holds(), format!("{} pair(s), {} violation(s)", r.trials, r.violations), r)
        }
        "homomorphism" => {
            let r = homomorphism_check(n_max(4), trials(1000), c.seed, tol)?;
            let ok = r.max_class_residual < NUMERIC_TOL && r.max_path_residual < NUMERIC_TOL;
            outcome(ok, format!("{} pair(s), max residual {}", r.pairs, sci(r.max_class_residual.max(r.max_path_residual))), r)
        }
        "membership" => {
            let r = membership_consistency(n_max(4), trials(1000), c.seed, tol)?;
            outcome(r.mismatches == 0, format!("{} sample(s), {} mismatch(es)", r.samples, r.mismatches), r)
        }
        "conjugation" => {
            let r = conjugation_invariance(n_max(4), trials(1000), c.seed, tol)?;
            let ok = r.exact_regime == r.samples && r.max_difference < tol.equality;
            outcome(ok, format!("{} sample(s), max difference {}", r.samples, sci(r.max_difference)), r)
        }
        "battery" => battery(c, &p),
        _ => Err(BundleError::at(
            "/op",
            "op must be dlhs-path, dlhs-delta, su-member, el, d, exp-inequalities, sandwich, homomorphism, membership, conjugation or battery",
        )
        .into()),
    }
}

/// Every randomized numeric check at its default size.
fn battery(c: &Common, p: &UnitaryTask) -> Run {
    let tol = &c.tolerances;
    let scale = |d: usize| p.trials.map_or(d, |t| t.min(d));
    let exp = check_exp_inequalities(6, scale(10_000), c.seed)?;
    let hom = homomorphism_check(4, scale(1000), c.seed, tol)?;
    let mem = membership_consistency(4, scale(1000), c.seed, tol)?;
    let sand = check_sandwich(4, scale(1000), 1.0, c.seed, tol)?;
    let conj = conjugation_invariance(4, scale(1000), c.seed, tol)?;
    let checks = [
        ("exp-inequalities", exp.holds()),
        (
            "homomorphism",
            hom.max_class_residual < NUMERIC_TOL && hom.max_path_residual < NUMERIC_TOL,
        ),
        ("membership", mem.mismatches == 0),
        ("sandwich", sand.holds()),
        (
            "conjugation",
            conj.exact_regime == conj.samples && conj.max_difference < tol.equality,
        ),
    ];
    let failed: Vec<&str> = checks.iter().filter(|c| !c.1).map(|c| c.0).collect();
    outcome(
        failed.is_empty(),
        if failed.is_empty() {
            "all numeric checks hold".to_string()
        } else {
            format!("failed: {}", failed.join(", "))
        },
        json!({
            "exp_inequalities": exp,
            "homomorphism": hom,
            "membership": mem,
            "sandwich": sand,
            "conjugation": conj,
        }),
    )
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RandomPaths {
    #[serde(default = "hundred")]
    paths: usize,
    #[serde(default = "four")]
    n_max: usize,
    #[serde(default = "sixty_four")]
    samples: usize,
}

fn hundred() -> usize {
    100
}

fn four() -> usize {
    4
}

fn sixty_four() -> usize {
    64
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DecomposeTask {
    path: Option<PathJson>,
    random: Option<RandomPaths>,
}

fn decompose(c: &Common, p: DecomposeTask) -> Run {
    let tol = &c.tolerances;
    match (&p.path, &p.random) {
        (Some(_), None) => {
            let d = decompose_path(&path_at(c, &p.path, "decompose")?, tol)?;
            outcome(
                d.holds(tol.equality),
                format!(
                    "reconstruction {} and det error {}",
                    sci(d.max_reconstruction_error),
                    sci(d.max_det_error)
                ),
                d,
            )
        }
        (None, Some(r)) => {
            let d = decomposition_battery(r.n_max, r.paths, r.samples, c.seed, tol)?;
            let ok = d.max_reconstruction_error < tol.equality
                && d.max_det_error < tol.equality
                && d.max_refinement_difference < NUMERIC_TOL;
            outcome(
                ok,
                format!(
                    "{} path(s): reconstruction {}, det {}, refinement {}",
                    d.paths,
                    sci(d.max_reconstruction_error),
                    sci(d.max_det_error),
                    sci(d.max_refinement_difference)
                ),
                d,
            )
        }
        _ => Err(BundleError::at("", "decompose needs exactly one of path or random").into()),
    }
}
