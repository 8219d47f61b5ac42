//! Central extensions of crossed modules, the boundary map `θ` into `H³`,
//! exactness checks, and lifting obstructions of matrix kernels.

mod kernel;

pub use kernel::{
    clock_shift_kernel, heisenberg_extension, matrix_group, matrix_kernel_obstruction,
    perturbation_check, KernelObstruction, MatrixKernel, PerturbationReport,
};

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{input, Error, Result};
use crate::grpcore::group::AbelianStructure;
use crate::grpcore::{
    bar_differential, cohomology, AbelianCoefficients, Cochain, CohomologyGroup, FiniteGroup,
};
use crate::xmod::{
    apply_witness, compute_h1, pushforward, Cocycle1, CrossedModule, Witness, XModMorphism,
};

/// `K -> (H0 -> G) -> (H1 -> G)` with `φ0: H0 -> H1` surjective and
/// `K = ker φ0` central in `H0`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(try_from = "ExtensionJson", into = "ExtensionJson")]
pub struct CentralXModExtension {
    x0: CrossedModule,
    x1: CrossedModule,
    phi0: Vec<usize>,
    kernel: Vec<usize>,
    /// `kpos[h] = Some(i)` when `h = kernel[i]`
    kpos: Vec<Option<usize>>,
    kstruct: AbelianStructure,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ExtensionJson {
    xmod0: CrossedModule,
    xmod1: CrossedModule,
    phi0: Vec<usize>,
}

impl TryFrom<ExtensionJson> for CentralXModExtension {
    type Error = Error;

    fn try_from(j: ExtensionJson) -> Result<Self> {
        CentralXModExtension::new(j.xmod0, j.xmod1, j.phi0)
    }
}

impl From<CentralXModExtension> for ExtensionJson {
    fn from(e: CentralXModExtension) -> Self {
        ExtensionJson {
            xmod0: e.x0,
            xmod1: e.x1,
            phi0: e.phi0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum ExtensionViolation {
    Shape { detail: String },
    DifferentG,
    Phi0NotHom { u: usize, v: usize },
    Phi0NotSurjective { missing: usize },
    BoundaryMismatch { u: usize },
    Phi0NotEquivariant { alpha: usize, u: usize },
    KernelNotCentral { k: usize, u: usize },
}

pub fn validate_extension(
    x0: &CrossedModule,
    x1: &CrossedModule,
    phi0: &[usize],
) -> Vec<ExtensionViolation> {
    let (h0, h1) = (x0.h(), x1.h());
    if phi0.len() != h0.order() || phi0.iter().any(|&y| y >= h1.order()) {
        return vec![ExtensionViolation::Shape {
            detail: format!(
                "phi0 must map {} elements into 0..{}",
                h0.order(),
                h1.order()
            ),
        }];
    }
    if x0.g() != x1.g() {
        return vec![ExtensionViolation::DifferentG];
    }
    let mut out = Vec::new();
    for u in h0.elements() {
        for v in h0.elements() {
            if phi0[h0.mul(u, v)] != h1.mul(phi0[u], phi0[v]) {
                out.push(ExtensionViolation::Phi0NotHom { u, v });
            }
        }
    }
    let mut hit = vec![false; h1.order()];
    for &y in phi0 {
        hit[y] = true;
    }
    if let Some(missing) = hit.iter().position(|h| !h) {
        out.push(ExtensionViolation::Phi0NotSurjective { missing });
    }
    for u in h0.elements() {
        if x0.bd(u) != x1.bd(phi0[u]) {
            out.push(ExtensionViolation::BoundaryMismatch { u });
        }
    }
    for a in x0.g().elements() {
        for u in h0.elements() {
            if phi0[x0.act(a, u)] != x1.act(a, phi0[u]) {
                out.push(ExtensionViolation::Phi0NotEquivariant { alpha: a, u });
            }
        }
    }
    for k in h0.elements().filter(|&k| phi0[k] == h1.identity()) {
        for u in h0.elements() {
            if h0.mul(k, u) != h0.mul(u, k) {
                out.push(ExtensionViolation::KernelNotCentral { k, u });
            }
        }
    }
    out
}

impl CentralXModExtension {
    pub fn new(x0: CrossedModule, x1: CrossedModule, phi0: Vec<usize>) -> Result<Self> {
        if let Some(v) = validate_extension(&x0, &x1, &phi0).first() {
            return input(format!("not a central extension of crossed modules: {v:?}"));
        }
        let kernel: Vec<usize> = x0
            .h()
            .elements()
            .filter(|&u| phi0[u] == x1.h().identity())
            .collect();
        let mut kpos = vec![None; x0.h().order()];
        for (i, &k) in kernel.iter().enumerate() {
            kpos[k] = Some(i);
        }
        let (kgroup, _) = x0.h().subgroup(&kernel, "K")?;
        let kstruct = kgroup.abelian_structure()?;
        Ok(CentralXModExtension {
            x0,
            x1,
            phi0,
            kernel,
            kpos,
            kstruct,
        })
    }

    pub fn x0(&self) -> &CrossedModule {
        &self.x0
    }

    pub fn x1(&self) -> &CrossedModule {
        &self.x1
    }

    pub fn phi0(&self) -> &[usize] {
        &self.phi0
    }

    /// Elements of `ker φ0` inside `H0`.
    pub fn kernel(&self) -> &[usize] {
        &self.kernel
    }

    /// Invariant factors of `ker φ0`.
    pub fn kernel_factors(&self) -> &[u64] {
        &self.kstruct.factors
    }

    /// `ker φ0` with trivial action.
    pub fn kernel_coefficients(&self) -> AbelianCoefficients {
        AbelianCoefficients::finite(&self.kstruct.factors)
    }

    /// `(φ0, id)` as a morphism of crossed modules.
    pub fn projection(&self) -> XModMorphism {
        XModMorphism {
            source: self.x0.clone(),
            target: self.x1.clone(),
            phi1: self.phi0.clone(),
            phi2: self.x0.g().elements().collect(),
        }
    }

    pub fn k_coords(&self, h: usize) -> Option<&[u64]> {
        self.kpos[h].map(|i| self.kstruct.to_coords(i))
    }

    pub fn k_element(&self, coords: &[u64]) -> usize {
        self.kernel[self.kstruct.from_coords(coords)]
    }

    /// The least preimage of each element of `H1`, with `1` over `1`.
    pub fn canonical_section(&self) -> Vec<usize> {
        let (h0, h1) = (self.x0.h(), self.x1.h());
        let mut s = vec![usize::MAX; h1.order()];
        for u in h0.elements() {
            if s[self.phi0[u]] == usize::MAX {
                s[self.phi0[u]] = u;
            }
        }
        s[h1.identity()] = h0.identity();
        s
    }

    /// Preimages under `φ0`, each sorted.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); self.x1.h().order()];
        for u in self.x0.h().elements() {
            f[self.phi0[u]].push(u);
        }
        f
    }
}

/// `ker φ0` with `g` acting as `α_g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedModule {
    pub label: String,
    pub coefficients: AbelianCoefficients,
}

impl InducedModule {
    pub fn factors(&self) -> &[u64] {
        &self.coefficients.factors
    }

    pub fn is_trivial_group(&self) -> bool {
        self.coefficients.factors.is_empty()
    }
}

fn module_label(factors: &[u64], action: &[Vec<Vec<i64>>], trivial: bool) -> String {
    let base = if factors.is_empty() {
        "0".to_string()
    } else {
        factors
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join("x")
    };
    if trivial {
        return base;
    }
    let tables: Vec<String> = action
        .iter()
        .map(|m| {
            m.iter()
                .map(|r| {
                    r.iter()
                        .map(|x| x.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .collect::<Vec<_>>()
                .join(";")
        })
        .collect();
    format!("{base}[{}]", tables.join("|"))
}

/// The `Γ`-module `ker φ0` with `g·k = α_g(k)`.
pub fn induced_module(
    e: &CentralXModExtension,
    gamma: &FiniteGroup,
    alpha: &[usize],
) -> Result<InducedModule> {
    let f = e.kstruct.factors.clone();
    if alpha.len() != gamma.order() {
        return input("alpha table does not match the group");
    }
    let mut action = Vec::with_capacity(gamma.order());
    for g in gamma.elements() {
        let mut m = vec![vec![0i64; f.len()]; f.len()];
        for j in 0..f.len() {
            let mut unit = vec![0u64; f.len()];
            unit[j] = 1;
            let k = e.k_element(&unit);
            let image = e.x0.act(alpha[g], k);
            let coords = e.k_coords(image).ok_or_else(|| {
                Error::Input(format!(
                    "α_{g} moves the kernel element {k} outside the kernel"
                ))
            })?;
            for (i, &c) in coords.iter().enumerate() {
                m[i][j] = c as i64;
            }
        }
        action.push(m);
    }
    let mut coefficients = AbelianCoefficients::finite_with_action(&f, action, "");
    let trivial = coefficients.has_trivial_action();
    if trivial {
        coefficients.action.clear();
    }
    coefficients.label = module_label(&f, &coefficients.action, trivial);
    if !f.is_empty() {
        coefficients.validate(gamma)?;
    }
    Ok(InducedModule {
        label: coefficients.label.clone(),
        coefficients,
    })
}

/// A class in `H³(Γ, ker φ0)` for an induced module.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionClass {
    pub module_label: String,
    pub invariant_factors: Vec<u64>,
    pub coordinates: Vec<u64>,
    pub representative: Cochain,
    #[serde(skip)]
    pub module: AbelianCoefficients,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(|&c| c == 0)
    }
}

/// The distinct classes reached by sweeping all lifts.
#[derive(Clone, Debug, Serialize)]
pub struct LiftSweep {
    pub lifts: u128,
    pub classes: Vec<Vec<u64>>,
}

/// `θ` for one cocycle: the induced module, its `H³`, and the class of
/// `ω_{g,h,k} = α_g(v_{h,k}) v_{g,hk} v_{gh,k}⁻¹ v_{g,h}⁻¹` for any lift `v` of `u`.
pub struct Theta<'a> {
    e: &'a CentralXModExtension,
    gamma: &'a FiniteGroup,
    c: Cocycle1,
    module: InducedModule,
    h3: Option<CohomologyGroup>,
}

impl<'a> Theta<'a> {
    pub fn new(
        e: &'a CentralXModExtension,
        gamma: &'a FiniteGroup,
        c: &Cocycle1,
        budget: &Budget,
    ) -> Result<Self> {
        if let Some(v) = crate::xmod::cocycle_violations(gamma, &e.x1, c).first() {
            return input(format!("not a normalized cocycle: {v:?}"));
        }
        let module = induced_module(e, gamma, &c.alpha)?;
        let h3 = if module.is_trivial_group() {
            None
        } else {
            Some(cohomology(gamma, &module.coefficients, 3, budget)?)
        };
        Ok(Theta {
            e,
            gamma,
            c: c.clone(),
            module,
            h3,
        })
    }

    pub fn module(&self) -> &InducedModule {
        &self.module
    }

    pub fn cohomology(&self) -> Option<&CohomologyGroup> {
        self.h3.as_ref()
    }

    /// Classes of `ω` over every lift of the `u` table.
    pub fn lift_sweep(&self, budget: &Budget) -> Result<LiftSweep> {
        let fibers = self.e.fibers();
        let sizes: Vec<usize> = self.c.u.iter().map(|&y| fibers[y].len()).collect();
        let total = sizes
            .iter()
            .try_fold(1u128, |acc, &s| acc.checked_mul(s as u128))
            .ok_or(Error::Overflow)?;
        crate::error::check_budget("lifts", total, budget.enumeration)?;
        let mut digits = vec![0usize; sizes.len()];
        let mut classes: BTreeSet<Vec<u64>> = BTreeSet::new();
        loop {
            let lift: Vec<usize> = self
                .c
                .u
                .iter()
                .zip(&digits)
                .map(|(&y, &d)| fibers[y][d])
                .collect();
            classes.insert(self.class(&lift)?.coordinates);
            let Some(pos) = digits.iter().zip(&sizes).position(|(&d, &s)| d + 1 < s) else {
                break;
            };
            digits[pos] += 1;
            digits[..pos].iter_mut().for_each(|d| *d = 0);
        }
        Ok(LiftSweep {
            lifts: total,
            classes: classes.into_iter().collect(),
        })
    }

    /// `v_{g,h}` = least preimage of `u_{g,h}`.
    pub fn canonical_lift(&self) -> Vec<usize> {
        let s = self.e.canonical_section();
        self.c.u.iter().map(|&y| s[y]).collect()
    }

    /// `ω` for a lift, as a cochain. Need not be normalized.
    pub fn omega(&self, lift: &[usize]) -> Result<Cochain> {
        let n = self.gamma.order();
        let (x0, h0) = (&self.e.x0, self.e.x0.h());
        if lift.len() != n * n
            || lift
                .iter()
                .zip(&self.c.u)
                .any(|(&v, &y)| v >= h0.order() || self.e.phi0[v] != y)
        {
            return input("lift does not map onto the u table");
        }
        let g = self.gamma;
        let mut bad = None;
        let z = Cochain::from_fn(g, &self.module.coefficients, 3, 1, |t| {
            let (a, b, k) = (t[0], t[1], t[2]);
            let w = h0.product_of(&[
                x0.act(self.c.alpha[a], lift[b * n + k]),
                lift[a * n + g.mul(b, k)],
                h0.inv(lift[g.mul(a, b) * n + k]),
                h0.inv(lift[a * n + b]),
            ]);
            match self.e.k_coords(w) {
                Some(c) => c.to_vec(),
                None => {
                    bad = Some((a, b, k));
                    vec![0; self.module.factors().len()]
                }
            }
        });
        if let Some((a, b, k)) = bad {
            return Err(Error::Internal(format!("ω at ({a},{b},{k}) leaves ker φ0")));
        }
        if !bar_differential(g, &self.module.coefficients, &z)?.is_zero() {
            return Err(Error::Internal("ω is not a 3-cocycle".into()));
        }
        Ok(z)
    }

    /// The class of `ω` for a lift. Unnormalized lifts are first divided by
    /// their values on degenerate pairs; the resulting change of `ω` is
    /// checked to be exactly the coboundary of those values.
    pub fn class(&self, lift: &[usize]) -> Result<ObstructionClass> {
        let n = self.gamma.order();
        let h0 = self.e.x0.h();
        let id = self.gamma.identity();
        let degenerate = |i: usize| i / n == id || i % n == id;
        let corr: Vec<usize> = lift
            .iter()
            .enumerate()
            .map(|(i, &v)| if degenerate(i) { v } else { h0.identity() })
            .collect();
        let normalized: Vec<usize> = lift
            .iter()
            .zip(&corr)
            .map(|(&v, &c)| h0.mul(v, h0.inv(c)))
            .collect();
        let z = self.omega(normalized.as_slice())?;
        if corr.iter().any(|&c| c != h0.identity()) {
            let raw = self.omega(lift)?;
            let cc = Cochain::from_fn(self.gamma, &self.module.coefficients, 2, 1, |t| {
                self.e
                    .k_coords(corr[t[0] * n + t[1]])
                    .map(|c| c.to_vec())
                    .unwrap_or_default()
            });
            let diff = raw.sub(&z)?;
            if bar_differential(self.gamma, &self.module.coefficients, &cc)? != diff {
                return Err(Error::Internal(
                    "normalizing the lift changed ω by a non-coboundary".into(),
                ));
            }
        }
        self.classify(z)
    }

    fn classify(&self, z: Cochain) -> Result<ObstructionClass> {
        let (invariant_factors, coordinates) = match &self.h3 {
            Some(h3) => (h3.invariant_factors().to_vec(), h3.classify(&z)?),
            None => (Vec::new(), Vec::new()),
        };
        Ok(ObstructionClass {
            module_label: self.module.label.clone(),
            invariant_factors,
            coordinates,
            representative: z,
            module: self.module.coefficients.clone(),
        })
    }
}

/// `θ(α, u)` using the least-preimage lift.
pub fn theta(
    e: &CentralXModExtension,
    gamma: &FiniteGroup,
    c: &Cocycle1,
    budget: &Budget,
) -> Result<ObstructionClass> {
    let t = Theta::new(e, gamma, c, budget)?;
    t.class(&t.canonical_lift())
}

/// Transport of `θ(c)` by `γ ∈ G`: the class of `γ(ω)` in the module of
/// `(γαγ⁻¹, γ(u))`.
pub fn conj_action(
    e: &CentralXModExtension,
    gamma: &FiniteGroup,
    c: &Cocycle1,
    o: &ObstructionClass,
    gm: usize,
    budget: &Budget,
) -> Result<ObstructionClass> {
    let wit = Witness {
        gamma: gm,
        w: vec![e.x1.h().identity(); gamma.order()],
    };
    let moved = apply_witness(gamma, &e.x1, c, &wit);
    let t = Theta::new(e, gamma, &moved, budget)?;
    let z = o.representative.map_values(&t.module.coefficients, |v| {
        let k = e.k_element(v);
        e.k_coords(e.x0.act(gm, k))
            .expect("the action preserves the central kernel")
            .to_vec()
    });
    if !bar_differential(gamma, &t.module.coefficients, &z)?.is_zero() {
        return Err(Error::Internal("transported ω is not a cocycle".into()));
    }
    t.classify(z)
}

/// One class of `H¹(Γ, H1 -> G)` with its module label, the labels of its
/// `G`-conjugate modules, and `θ`.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyEntry {
    pub class: usize,
    pub module_label: String,
    pub orbit_label: String,
    pub orbit: Vec<String>,
    pub theta: ObstructionClass,
}

/// The index set of the direct sum of `H³`s: module structures realized by
/// `H¹` classes, identified along `G`-conjugation.
pub fn sum_over_conjugacy(
    e: &CentralXModExtension,
    gamma: &FiniteGroup,
    budget: &Budget,
) -> Result<Vec<ConjugacyEntry>> {
    let h1 = compute_h1(gamma, &e.x1, false, false, budget)?;
    let mut out = Vec::new();
    for (i, c) in h1.representatives().enumerate() {
        let theta = theta(e, gamma, c, budget)?;
        let mut orbit = BTreeSet::new();
        for gm in e.x1.g().elements() {
            let wit = Witness {
                gamma: gm,
                w: vec![e.x1.h().identity(); gamma.order()],
            };
            let moved = apply_witness(gamma, &e.x1, c, &wit);
            orbit.insert(induced_module(e, gamma, &moved.alpha)?.label);
        }
        let orbit: Vec<String> = orbit.into_iter().collect();
        out.push(ConjugacyEntry {
            class: i,
            module_label: theta.module_label.clone(),
            orbit_label: orbit[0].clone(),
            orbit,
            theta,
        });
    }
    Ok(out)
}

/// Both exactness checks for `H²(Γ,K) -> H¹(Γ,𝒢0) -> H¹(Γ,𝒢1) -> ⊕H³`.
#[derive(Clone, Debug, Serialize)]
pub struct ExactnessReport {
    pub source_classes: usize,
    pub target_classes: usize,
    /// `θ` of each target class.
    pub theta: Vec<ObstructionClass>,
    /// Target classes hit by the pushforward.
    pub pushforward_image: Vec<usize>,
    /// Target classes with `θ = 0`.
    pub theta_kernel: Vec<usize>,
    pub middle_exact: bool,
    pub h2_factors: Vec<u64>,
    /// Source classes hit by `H²(Γ, K)`.
    pub h2_image: Vec<usize>,
    /// Source classes pushed to the basepoint.
    pub basepoint_preimage: Vec<usize>,
    pub left_exact: bool,
    /// Pushforward of each source class.
    pub pushforward_map: Vec<usize>,
    /// H² coordinates whose image is a given source class.
    pub h2_map: BTreeMap<String, usize>,
}

impl ExactnessReport {
    pub fn exact(&self) -> bool {
        self.middle_exact && self.left_exact
    }
}

pub fn verify_exactness(
    e: &CentralXModExtension,
    gamma: &FiniteGroup,
    budget: &Budget,
) -> Result<ExactnessReport> {
    let h1_0 = compute_h1(gamma, &e.x0, false, false, budget)?;
    let h1_1 = compute_h1(gamma, &e.x1, false, false, budget)?;
    let proj = e.projection();
    let n = gamma.order();

    let mut pushforward_map = Vec::with_capacity(h1_0.len());
    for c in h1_0.representatives() {
        let p = pushforward(&proj, gamma, c)?;
        let k = h1_1
            .class_of(&p)
            .ok_or_else(|| Error::Internal("pushforward left the enumerated cocycles".into()))?;
        pushforward_map.push(k);
    }
    let pushforward_image: Vec<usize> = pushforward_map
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let theta: Vec<ObstructionClass> = h1_1
        .representatives()
        .map(|c| self::theta(e, gamma, c, budget))
        .collect::<Result<_>>()?;
    let theta_kernel: Vec<usize> = theta
        .iter()
        .enumerate()
        .filter(|(_, o)| o.is_zero())
        .map(|(i, _)| i)
        .collect();

    let target_base = h1_1
        .basepoint
        .ok_or_else(|| Error::Internal("H1 has no basepoint".into()))?;
    let basepoint_preimage: Vec<usize> = pushforward_map
        .iter()
        .enumerate()
        .filter(|(_, &k)| k == target_base)
        .map(|(i, _)| i)
        .collect();
    let kc = e.kernel_coefficients();
    let mut h2_map = BTreeMap::new();
    let mut h2_factors = Vec::new();
    let mut h2_image = BTreeSet::new();
    if kc.factors.is_empty() {
        h2_image.insert(
            h1_0.basepoint
                .ok_or_else(|| Error::Internal("H1 has no basepoint".into()))?,
        );
    } else {
        let h2 = cohomology(gamma, &kc, 2, budget)?;
        h2_factors = h2.invariant_factors().to_vec();
        for coords in h2.all_coordinates() {
            let z = h2.representative(&coords)?;
            let c = Cocycle1 {
                alpha: vec![e.x0.g().identity(); n],
                u: (0..n * n)
                    .map(|i| e.k_element(z.get(&[i / n, i % n])))
                    .collect(),
            };
            let k = h1_0.class_of(&c).ok_or_else(|| {
                Error::Internal("image of an H2 class is not a normalized cocycle".into())
            })?;
            h2_map.insert(format!("{coords:?}"), k);
            h2_image.insert(k);
        }
    }
    let h2_image: Vec<usize> = h2_image.into_iter().collect();
    Ok(ExactnessReport {
        source_classes: h1_0.len(),
        target_classes: h1_1.len(),
        middle_exact: pushforward_image == theta_kernel,
        left_exact: h2_image == basepoint_preimage,
        theta,
        pushforward_image,
        theta_kernel,
        h2_factors,
        h2_image,
        basepoint_preimage,
        pushforward_map,
        h2_map,
    })
}

/// `Z/k -> Z/(k·m) -> Z/m` over `G`, with trivial boundaries, where each
/// element of `G` acts on `Z/(k·m)` through `signs`.
pub fn cyclic_extension(
    k: usize,
    m: usize,
    g: &FiniteGroup,
    signs: &[i64],
) -> Result<CentralXModExtension> {
    let big = k * m;
    let act = |order: usize| -> Vec<usize> {
        g.elements()
            .flat_map(|a| {
                (0..order).map(move |u| {
                    if signs[a] == 1 {
                        u
                    } else {
                        (order - u) % order
                    }
                })
            })
            .collect()
    };
    let x0 = CrossedModule::new(
        FiniteGroup::cyclic(big),
        g.clone(),
        vec![g.identity(); big],
        act(big),
    )?;
    let x1 = CrossedModule::new(
        FiniteGroup::cyclic(m),
        g.clone(),
        vec![g.identity(); m],
        act(m),
    )?;
    CentralXModExtension::new(x0, x1, (0..big).map(|u| u % m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::xmod::{are_cohomologous, enumerate_z1};

    fn b() -> Budget {
        Budget::default()
    }

    fn z2_z4_trivial() -> CentralXModExtension {
        cyclic_extension(2, 2, &FiniteGroup::trivial(), &[1]).unwrap()
    }

    fn z2_z4_inversion() -> CentralXModExtension {
        cyclic_extension(2, 2, &FiniteGroup::cyclic(2), &[1, -1]).unwrap()
    }

    #[test]
    fn extension_validation() {
        let e = z2_z4_trivial();
        assert_eq!(e.kernel(), &[0, 2]);
        assert_eq!(e.kernel_factors(), &[2]);
        let x0 = e.x0().clone();
        let x1 = e.x1().clone();
        assert!(CentralXModExtension::new(x0.clone(), x1.clone(), vec![0, 1, 1, 1]).is_err());
        assert!(CentralXModExtension::new(x0, x1, vec![0, 0, 0, 0]).is_err());
    }

    #[test]
    fn inversion_acts_trivially_on_two_torsion() {
        let e = z2_z4_inversion();
        let gamma = FiniteGroup::cyclic(2);
        let m = induced_module(&e, &gamma, &[0, 1]).unwrap();
        assert!(m.coefficients.action.is_empty());
        assert_eq!(m.label, "Z2");
    }

    #[test]
    fn theta_of_basepoint_is_zero() {
        let e = z2_z4_trivial();
        let gamma = FiniteGroup::cyclic(2);
        let t = theta(&e, &gamma, &Cocycle1::trivial(&gamma, e.x1()), &b()).unwrap();
        assert!(t.is_zero());
        assert_eq!(t.invariant_factors, vec![2]);
    }

    #[test]
    fn theta_is_the_bockstein() {
        let e = z2_z4_trivial();
        // on Z/2 the Bockstein kills H2: Sq1(x^2) = 0
        let gamma = FiniteGroup::cyclic(2);
        let c = Cocycle1::new(&gamma, e.x1(), vec![0, 0], vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert!(theta(&e, &gamma, &c, &b()).unwrap().is_zero());
        // on Z/2 x Z/2 the cup product xy has Sq1(xy) = x^2 y + x y^2 != 0
        let v = FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2));
        let u: Vec<Vec<usize>> = (0..4)
            .map(|g| (0..4).map(|h| (g / 2) * (h % 2)).collect())
            .collect();
        let c = Cocycle1::new(&v, e.x1(), vec![0; 4], u).unwrap();
        assert!(!theta(&e, &v, &c, &b()).unwrap().is_zero());
    }

    #[test]
    fn theta_independent_of_all_lifts() {
        let e = z2_z4_trivial();
        let gamma = FiniteGroup::cyclic(2);
        let fibers = e.fibers();
        for c in enumerate_z1(&gamma, e.x1(), &b()).unwrap() {
            let t = Theta::new(&e, &gamma, &c, &b()).unwrap();
            let base = t.class(&t.canonical_lift()).unwrap().coordinates;
            for mask in 0..16usize {
                let lift: Vec<usize> =
                    c.u.iter()
                        .enumerate()
                        .map(|(i, &y)| fibers[y][(mask >> i) & 1])
                        .collect();
                assert_eq!(t.class(&lift).unwrap().coordinates, base);
            }
            let sweep = t.lift_sweep(&b()).unwrap();
            assert_eq!(sweep.lifts, 16);
            assert_eq!(sweep.classes, vec![base]);
        }
    }

    #[test]
    fn exactness_for_small_cases() {
        for e in [z2_z4_trivial(), z2_z4_inversion()] {
            for gamma in [
                FiniteGroup::cyclic(2),
                FiniteGroup::cyclic(4),
                FiniteGroup::product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2)),
            ] {
                let r = verify_exactness(&e, &gamma, &b()).unwrap();
                assert!(r.exact(), "{r:?}");
            }
        }
    }

    #[test]
    fn trivial_kernel_is_exact() {
        let z2 = FiniteGroup::cyclic(2);
        let x = CrossedModule::abelian(z2.clone()).unwrap();
        let e = CentralXModExtension::new(x.clone(), x, vec![0, 1]).unwrap();
        let r = verify_exactness(&e, &z2, &b()).unwrap();
        assert!(r.exact());
        assert!(r.theta.iter().all(|o| o.is_zero()));
    }

    #[test]
    fn theta_transports_along_witnesses() {
        let e = z2_z4_inversion();
        let gamma = FiniteGroup::cyclic(2);
        let z1 = enumerate_z1(&gamma, e.x1(), &b()).unwrap();
        for a in &z1 {
            let ta = theta(&e, &gamma, a, &b()).unwrap();
            for gm in e.x1().g().elements() {
                let moved = conj_action(&e, &gamma, a, &ta, gm, &b()).unwrap();
                if gm == 0 {
                    assert_eq!(moved.coordinates, ta.coordinates);
                }
                let wit = Witness {
                    gamma: gm,
                    w: vec![0; 2],
                };
                let c = apply_witness(&gamma, e.x1(), a, &wit);
                assert_eq!(
                    theta(&e, &gamma, &c, &b()).unwrap().coordinates,
                    moved.coordinates
                );
            }
            for c in &z1 {
                if let Some(w) = are_cohomologous(&gamma, e.x1(), a, c, false, &b()).unwrap() {
                    let moved = conj_action(&e, &gamma, a, &ta, w.gamma, &b()).unwrap();
                    let tc = theta(&e, &gamma, c, &b()).unwrap();
                    assert_eq!(tc.module_label, moved.module_label);
                    assert_eq!(tc.coordinates, moved.coordinates);
                }
            }
        }
    }

    #[test]
    fn conjugacy_index_set() {
        let e = z2_z4_inversion();
        let gamma = FiniteGroup::cyclic(2);
        let entries = sum_over_conjugacy(&e, &gamma, &b()).unwrap();
        assert!(!entries.is_empty());
        assert!(entries.iter().all(|x| x.orbit.contains(&x.module_label)));
    }
}
