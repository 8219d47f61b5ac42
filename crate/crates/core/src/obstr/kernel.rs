//! Lifting obstructions of projective matrix kernels `Γ -> PU(n)` and
//! finite matrix groups.

use std::collections::HashMap;
use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::RngExt;
use serde::{Deserialize, Serialize};

use super::{CentralXModExtension, ObstructionClass};
use crate::budget::Budget;
use crate::error::{check_budget, input, Error, Result};
use crate::grpcore::{
    bar_differential, cohomology, AbelianCoefficients, Cochain, CohomologyGroup, FiniteGroup,
};
use crate::xmod::CrossedModule;

type CMat = DMatrix<Complex64>;

/// Unitaries `U_g`, one per group element, with `g ↦ [U_g]` a homomorphism
/// to `PU(n)`. Entries are `[re, im]` pairs.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixKernel {
    pub mats: Vec<Vec<Vec<[f64; 2]>>>,
    pub tol: f64,
}

impl MatrixKernel {
    pub fn from_matrices(mats: &[CMat], tol: f64) -> Self {
        MatrixKernel {
            mats: mats
                .iter()
                .map(|m| {
                    (0..m.nrows())
                        .map(|i| {
                            (0..m.ncols())
                                .map(|j| [m[(i, j)].re, m[(i, j)].im])
                                .collect()
                        })
                        .collect()
                })
                .collect(),
            tol,
        }
    }

    pub fn matrices(&self) -> Result<Vec<CMat>> {
        self.mats
            .iter()
            .enumerate()
            .map(|(g, rows)| {
                let n = rows.len();
                if n == 0 || rows.iter().any(|r| r.len() != n) {
                    return input(format!("matrix {g} is not square"));
                }
                Ok(CMat::from_fn(n, n, |i, j| {
                    Complex64::new(rows[i][j][0], rows[i][j][1])
                }))
            })
            .collect()
    }
}

/// The lifting obstruction of a matrix kernel in `H³(Γ, Q/Z)`.
#[derive(Clone, Debug, Serialize)]
pub struct KernelObstruction {
    pub dimension: usize,
    pub snap_denominator: u64,
    pub class: ObstructionClass,
    /// A normalized 2-cochain bounding the snapped `ω`.
    pub witness: Option<Cochain>,
    /// The scalar defect `U_g U_h = u_{g,h} U_{gh}` snapped to `(1/N)Z/Z`,
    /// when every phase snaps.
    pub defect: Option<Cochain>,
    /// Whether `d(defect) = ω` exactly.
    pub defect_bounds_omega: bool,
    pub max_unitarity_residual: f64,
    pub max_scalar_residual: f64,
    pub max_omega_snap_residual: f64,
}

/// Phase of a unit complex number in `[0, 1)`.
fn turns(z: Complex64) -> f64 {
    (z.arg() / (2.0 * PI)).rem_euclid(1.0)
}

/// Nearest point of `(1/den)Z/Z`, as a numerator, with its distance.
fn snap(x: f64, den: u64) -> (u64, f64) {
    let scaled = x.rem_euclid(1.0) * den as f64;
    let p = scaled.round();
    ((p as u64) % den, (scaled - p).abs() / den as f64)
}

pub fn matrix_kernel_obstruction(
    gamma: &FiniteGroup,
    mats: &[CMat],
    tol: f64,
    snap_denominator: Option<u64>,
    budget: &Budget,
) -> Result<KernelObstruction> {
    let h3 = cohomology(gamma, &AbelianCoefficients::circle(), 3, budget)?;
    obstruction_in(gamma, mats, tol, snap_denominator, &h3)
}

fn obstruction_in(
    gamma: &FiniteGroup,
    mats: &[CMat],
    tol: f64,
    snap_denominator: Option<u64>,
    h3: &CohomologyGroup,
) -> Result<KernelObstruction> {
    let ng = gamma.order();
    if mats.len() != ng {
        return input(format!("expected {ng} matrices, got {}", mats.len()));
    }
    let n = mats[0].nrows();
    if mats.iter().any(|m| m.nrows() != n || m.ncols() != n) {
        return input("matrices must share one square shape");
    }
    let den = snap_denominator.unwrap_or((n * ng) as u64);
    if den == 0 {
        return input("snap denominator must be positive");
    }
    let id = CMat::identity(n, n);
    let mut max_unitarity_residual: f64 = 0.0;
    for (g, m) in mats.iter().enumerate() {
        let r = (m.adjoint() * m - &id).norm();
        if r > tol {
            return input(format!("matrix {g} is not unitary: residual {r:.3e}"));
        }
        max_unitarity_residual = max_unitarity_residual.max(r);
    }
    // U_g U_h U_{gh}^* = u_{g,h} I
    let mut phase = vec![Complex64::new(1.0, 0.0); ng * ng];
    let mut max_scalar_residual: f64 = 0.0;
    for g in gamma.elements() {
        for h in gamma.elements() {
            let d = &mats[g] * &mats[h] * mats[gamma.mul(g, h)].adjoint();
            let lambda = d.trace() / Complex64::new(n as f64, 0.0);
            let r = (&d - &id * lambda).norm();
            if r > tol {
                return input(format!(
                    "U_{g} U_{h} U_{}^* is not scalar: residual {r:.3e}",
                    gamma.mul(g, h)
                ));
            }
            max_scalar_residual = max_scalar_residual.max(r);
            phase[g * ng + h] = lambda / lambda.norm();
        }
    }
    let u = |g: usize, h: usize| turns(phase[g * ng + h]);
    // ω = u_{h,k} + u_{g,hk} - u_{gh,k} - u_{g,h}, conjugation fixes scalars
    let omega = |g: usize, h: usize, k: usize| {
        u(h, k) + u(g, gamma.mul(h, k)) - u(gamma.mul(g, h), k) - u(g, h)
    };
    let circle = AbelianCoefficients::circle();
    let mut max_omega_snap_residual: f64 = 0.0;
    let z = Cochain::from_fn(gamma, &circle, 3, den, |t| {
        let w = omega(t[0], t[1], t[2]);
        let (p, r) = snap(w, den);
        max_omega_snap_residual = max_omega_snap_residual.max(r);
        vec![p]
    });
    if max_omega_snap_residual > tol {
        return Err(Error::Precision(format!(
            "ω does not snap to (1/{den})Z/Z: residual {max_omega_snap_residual:.3e}"
        )));
    }
    if !z.is_normalized(gamma.identity()) {
        return Err(Error::Precision("snapped ω is not normalized".into()));
    }
    let coordinates = h3.classify(&z)?;
    let witness = h3.is_coboundary(&z)?;

    // the defect itself, when it is finite of order dividing den
    let mut snapped = true;
    let defect = Cochain::from_fn(gamma, &circle, 2, den, |t| {
        let (p, r) = snap(u(t[0], t[1]), den);
        snapped &= r <= tol;
        vec![p]
    });
    let (defect, defect_bounds_omega) = if snapped {
        let ok = bar_differential(gamma, &circle, &defect)?.reduced_denom() == z.reduced_denom();
        (Some(defect.reduced_denom()), ok)
    } else {
        (None, false)
    };
    Ok(KernelObstruction {
        dimension: n,
        snap_denominator: den,
        class: ObstructionClass {
            module_label: "Q/Z".into(),
            invariant_factors: h3.invariant_factors().to_vec(),
            coordinates,
            representative: z.reduced_denom(),
            module: circle,
        },
        witness,
        defect,
        defect_bounds_omega,
        max_unitarity_residual,
        max_scalar_residual,
        max_omega_snap_residual,
    })
}

/// Clock `C = diag(1, ζ, ..., ζ^{n-1})` and shift `S e_j = e_{j+1}`.
fn clock_shift(n: usize) -> (CMat, CMat) {
    let zeta = Complex64::from_polar(1.0, 2.0 * PI / n as f64);
    let c = CMat::from_fn(n, n, |i, j| {
        if i == j {
            zeta.powu(i as u32)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let s = CMat::from_fn(n, n, |i, j| {
        if i == (j + 1) % n {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    (c, s)
}

/// Reruns the obstruction after multiplying every `U_g` by a random phase.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbationReport {
    pub count: usize,
    pub seed: u64,
    pub base_coordinates: Vec<u64>,
    pub class_changes: usize,
    pub max_omega_snap_residual: f64,
    pub max_scalar_residual: f64,
}

pub fn perturbation_check(
    gamma: &FiniteGroup,
    mats: &[CMat],
    tol: f64,
    snap_denominator: Option<u64>,
    count: usize,
    seed: u64,
    budget: &Budget,
) -> Result<PerturbationReport> {
    let h3 = cohomology(gamma, &AbelianCoefficients::circle(), 3, budget)?;
    let base = obstruction_in(gamma, mats, tol, snap_denominator, &h3)?;
    let mut report = PerturbationReport {
        count,
        seed,
        base_coordinates: base.class.coordinates.clone(),
        class_changes: 0,
        max_omega_snap_residual: 0.0,
        max_scalar_residual: 0.0,
    };
    for t in 0..count {
        let mut rng = crate::unitary::trial_rng(seed, t as u64);
        let moved: Vec<CMat> = mats
            .iter()
            .map(|m| m * Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)))
            .collect();
        let p = obstruction_in(gamma, &moved, tol, snap_denominator, &h3)?;
        if p.class.coordinates != report.base_coordinates {
            report.class_changes += 1;
        }
        report.max_omega_snap_residual = report
            .max_omega_snap_residual
            .max(p.max_omega_snap_residual);
        report.max_scalar_residual = report.max_scalar_residual.max(p.max_scalar_residual);
    }
    Ok(report)
}

/// `Z/n x Z/n -> PU(n)`, `(a, b) ↦ [C^a S^b]`, element `(a, b)` at index `a·n + b`.
pub fn clock_shift_kernel(n: usize) -> (FiniteGroup, Vec<CMat>) {
    let g = FiniteGroup::product(&FiniteGroup::cyclic(n), &FiniteGroup::cyclic(n));
    let (c, s) = clock_shift(n);
    let mats = (0..n * n)
        .map(|i| c.pow((i / n) as u32) * s.pow((i % n) as u32))
        .collect();
    (g, mats)
}

fn key(m: &CMat) -> Vec<i64> {
    m.iter()
        .flat_map(|z| [(z.re * 1e6).round() as i64, (z.im * 1e6).round() as i64])
        .collect()
}

fn find(elems: &[CMat], index: &HashMap<Vec<i64>, usize>, m: &CMat, tol: f64) -> Option<usize> {
    if let Some(&i) = index.get(&key(m)) {
        if (&elems[i] - m).norm() <= tol {
            return Some(i);
        }
    }
    elems.iter().position(|e| (e - m).norm() <= tol)
}

/// The finite group generated by unitary matrices, with the matrix of each
/// element. The identity comes first.
pub fn matrix_group(gens: &[CMat], tol: f64, limit: usize) -> Result<(FiniteGroup, Vec<CMat>)> {
    let n = gens
        .first()
        .map(|g| g.nrows())
        .ok_or_else(|| Error::Input("no generators".into()))?;
    let mut elems = vec![CMat::identity(n, n)];
    let mut index = HashMap::from([(key(&elems[0]), 0)]);
    let mut i = 0;
    while i < elems.len() {
        for g in gens {
            let p = &elems[i] * g;
            if find(&elems, &index, &p, tol).is_none() {
                check_budget("matrix group order", elems.len() as u128 + 1, limit as u128)?;
                index.insert(key(&p), elems.len());
                elems.push(p);
            }
        }
        i += 1;
    }
    let mut table = vec![vec![0; elems.len()]; elems.len()];
    for a in 0..elems.len() {
        for b in 0..elems.len() {
            let p = &elems[a] * &elems[b];
            table[a][b] = find(&elems, &index, &p, tol).ok_or_else(|| {
                Error::Precision("matrix products do not close up within tolerance".into())
            })?;
        }
    }
    Ok((FiniteGroup::from_table(table, "matrix group")?, elems))
}

/// `μ_n -> Heis(n) -> (Z/n)²` for odd `n`, where `Heis(n) ⊂ SU(n)` is
/// generated by clock and shift. As crossed modules:
/// `(Heis -> Q)` and `(Q -> Q)` with `Q = Heis/μ_n` acting by conjugation.
pub fn heisenberg_extension(n: usize) -> Result<(CentralXModExtension, Vec<CMat>)> {
    if n < 3 || n.is_multiple_of(2) {
        return input("clock and shift lie in SU(n) only for odd n >= 3");
    }
    let tol = 1e-9;
    let (c, s) = clock_shift(n);
    let (heis, mats) = matrix_group(&[c, s], tol, 100_000)?;
    let center: Vec<usize> = heis
        .elements()
        .filter(|&x| heis.elements().all(|y| heis.mul(x, y) == heis.mul(y, x)))
        .collect();
    let coset_min = |h: usize| {
        center
            .iter()
            .map(|&z| heis.mul(h, z))
            .min()
            .expect("center contains 1")
    };
    let mut reps: Vec<usize> = heis.elements().map(coset_min).collect();
    reps.sort_unstable();
    reps.dedup();
    let qpos: HashMap<usize, usize> = reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let proj: Vec<usize> = heis.elements().map(|h| qpos[&coset_min(h)]).collect();
    let table: Vec<Vec<usize>> = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| proj[heis.mul(a, b)]).collect())
        .collect();
    let q = FiniteGroup::from_table(table, &format!("Z{n}xZ{n}"))?;
    let action: Vec<usize> = reps
        .iter()
        .flat_map(|&r| heis.elements().map(move |h| (r, h)))
        .map(|(r, h)| heis.conj(r, h))
        .collect();
    let heis = heis.with_label(&format!("Heis({n})"));
    let x0 = CrossedModule::new(heis, q.clone(), proj.clone(), action)?;
    let x1 = CrossedModule::identity(q);
    Ok((CentralXModExtension::new(x0, x1, proj)?, mats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::obstr::theta;
    use crate::xmod::Cocycle1;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn snapping() {
        assert_eq!(snap(1.0 / 3.0 + 1e-12, 9).0, 3);
        assert_eq!(snap(-1e-12, 9).0, 0);
    }

    #[test]
    fn representation_has_zero_class() {
        let g = FiniteGroup::cyclic(3);
        let (_, mats) = clock_shift_kernel(3);
        // a ↦ C^a is a genuine representation of Z/3
        let reps: Vec<CMat> = (0..3).map(|a| mats[a * 3].clone()).collect();
        let o = matrix_kernel_obstruction(&g, &reps, 1e-9, None, &Budget::default()).unwrap();
        assert!(o.class.is_zero());
        assert!(o.defect_bounds_omega);
    }

    #[test]
    fn clock_shift_is_unobstructed_under_perturbation() {
        let (g, mats) = clock_shift_kernel(3);
        let o = matrix_kernel_obstruction(&g, &mats, 1e-9, None, &Budget::default()).unwrap();
        assert!(o.class.is_zero());
        assert!(o.witness.is_some());
        assert!(o.defect_bounds_omega);
        assert!(!o.defect.as_ref().unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let moved: Vec<CMat> = mats
            .iter()
            .map(|m| m * Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI)))
            .collect();
        let p = matrix_kernel_obstruction(&g, &moved, 1e-9, None, &Budget::default()).unwrap();
        assert_eq!(p.class.coordinates, o.class.coordinates);
        assert!(p.max_omega_snap_residual < 1e-8);
        assert!(p.defect.is_none());
        let r = perturbation_check(&g, &mats, 1e-9, None, 20, 8, &Budget::default()).unwrap();
        assert_eq!(r.class_changes, 0);
        assert!(r.max_omega_snap_residual < 1e-8);
    }

    #[test]
    fn non_scalar_defect_is_rejected() {
        let (g, mut mats) = clock_shift_kernel(3);
        mats[1][(0, 1)] += Complex64::new(1e-2, 0.0);
        assert!(matches!(
            matrix_kernel_obstruction(&g, &mats, 1e-6, None, &Budget::default()),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn heisenberg_extension_of_order_27() {
        let (e, mats) = heisenberg_extension(3).unwrap();
        assert_eq!(mats.len(), 27);
        assert_eq!(e.kernel_factors(), &[3]);
        let gamma = e.x1().g().clone();
        // α = id: Γ -> Q, u ≡ 1
        let c = Cocycle1 {
            alpha: gamma.elements().collect(),
            u: vec![gamma.identity(); 81],
        };
        let t = theta(&e, &gamma, &c, &Budget::default()).unwrap();
        assert!(t.is_zero());
    }
}
