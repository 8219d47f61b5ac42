//! Seeded randomized checks over many samples. Every trial draws from its
//! own stream of the master seed, so results do not depend on scheduling.

use num_complex::Complex;
use rand::RngExt;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    circle_distance, decompose_path, dlhs_delta, dlhs_path, el_tau, expm_i, random_hermitian,
    random_su, random_unitary, su_tau_member, trial_rng, Quadrature, Regime, Tolerances, Unitary,
    UnitaryPath,
};
use crate::error::{input, Result};

fn fold_max(xs: impl Iterator<Item = f64>) -> f64 {
    xs.fold(0.0, f64::max)
}

/// `Δ(uv) = Δ(u) + Δ(v)` in `ℝ/(1/n)ℤ`, and additivity of the trace
/// integral on pointwise products of paths.
#[derive(Clone, Debug, Serialize)]
pub struct HomomorphismReport {
    pub pairs: usize,
    pub max_class_residual: f64,
    pub max_path_residual: f64,
}

pub fn homomorphism_check(
    n_max: usize,
    pairs: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<HomomorphismReport> {
    check_sizes(n_max, pairs)?;
    let rows = (0..pairs)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(1..=n_max);
            let u = random_unitary::<f64>(n, &mut rng);
            let v = random_unitary::<f64>(n, &mut rng);
            let (a, b) = (dlhs_delta(&u, seed, tol)?, dlhs_delta(&v, seed, tol)?);
            let ab = dlhs_delta(&u.mul(&v), seed, tol)?;
            let class = circle_distance(ab.value, a.value + b.value, n);

            let h1 = random_hermitian::<f64>(n, 4.0, &mut rng);
            let h2 = random_hermitian::<f64>(n, 4.0, &mut rng);
            let p1 = UnitaryPath::sample(33, |s| {
                Unitary::trusted(expm_i(&(h1.mat() * Complex::new(s, 0.0))))
            });
            let p2 = UnitaryPath::sample(33, |s| {
                Unitary::trusted(expm_i(&(h2.mat() * Complex::new(s * s, 0.0))))
            });
            let sum = dlhs_path(&p1, Quadrature::SegmentExact, tol)?.value
                + dlhs_path(&p2, Quadrature::SegmentExact, tol)?.value;
            let prod = dlhs_path(&p1.pointwise(&p2)?, Quadrature::SegmentExact, tol)?.value;
            Ok((class, (prod - sum).abs()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(HomomorphismReport {
        pairs,
        max_class_residual: fold_max(rows.iter().map(|r| r.0)),
        max_path_residual: fold_max(rows.iter().map(|r| r.1)),
    })
}

/// Determinant-one membership against a vanishing class.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipReport {
    pub samples: usize,
    pub members: usize,
    pub mismatches: usize,
    /// Largest distance of the class from zero among members.
    pub max_member_class: f64,
    /// Smallest distance of the class from zero among non-members.
    pub min_non_member_class: f64,
}

/// Samples a mix of special unitaries, central roots of unity, scalars and
/// Haar unitaries.
pub fn membership_consistency(
    n_max: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<MembershipReport> {
    check_sizes(n_max, samples)?;
    let rows = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(1..=n_max);
            let u = match t % 4 {
                0 => random_su::<f64>(n, &mut rng),
                1 => Unitary::scalar(
                    n,
                    std::f64::consts::TAU * rng.random_range(0..n.max(1)) as f64 / n as f64,
                ),
                2 => Unitary::scalar(n, rng.random_range(0.0..std::f64::consts::TAU)),
                _ => random_unitary::<f64>(n, &mut rng),
            };
            let member = su_tau_member(&u, tol)?.member;
            let class = dlhs_delta(&u, seed, tol)?;
            let dist = circle_distance(class.value, 0.0, n);
            Ok((member, dist, member != (dist <= tol.branch)))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MembershipReport {
        samples,
        members: rows.iter().filter(|r| r.0).count(),
        mismatches: rows.iter().filter(|r| r.2).count(),
        max_member_class: fold_max(rows.iter().filter(|r| r.0).map(|r| r.1)),
        min_non_member_class: rows
            .iter()
            .filter(|r| !r.0)
            .map(|r| r.1)
            .fold(f64::INFINITY, f64::min),
    })
}

/// `el(v u v*) = el(u)` on exact-regime inputs.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugationReport {
    pub samples: usize,
    pub exact_regime: usize,
    pub max_difference: f64,
}

pub fn conjugation_invariance(
    n_max: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<ConjugationReport> {
    if n_max < 2 {
        return input("conjugation checks need n_max >= 2");
    }
    check_sizes(n_max, samples)?;
    let rows = (0..samples)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(2..=n_max);
            let r = rng.random_range(0.0..1.5);
            let u = random_hermitian::<f64>(n, r, &mut rng).trace_free().exp_i();
            let v = random_unitary::<f64>(n, &mut rng);
            let a = el_tau(&u, tol)?;
            let b = el_tau(&u.conjugate_by(&v), tol)?;
            Ok((
                a.regime == Regime::Exact && b.regime == Regime::Exact,
                (a.value - b.value).abs(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ConjugationReport {
        samples,
        exact_regime: rows.iter().filter(|r| r.0).count(),
        max_difference: fold_max(rows.iter().map(|r| r.1)),
    })
}

/// Decomposition of random sampled paths `t ↦ e^{ith_1} e^{it²h_2}`.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionReport {
    pub paths: usize,
    pub samples: usize,
    pub max_reconstruction_error: f64,
    pub max_det_error: f64,
    /// Pointwise distance between the decompositions of a path and of its refinement.
    pub max_refinement_difference: f64,
    /// Largest `|h(1)|`, to show the phase winds.
    pub max_winding: f64,
}

pub fn decomposition_battery(
    n_max: usize,
    paths: usize,
    samples: usize,
    seed: u64,
    tol: &Tolerances,
) -> Result<DecompositionReport> {
    check_sizes(n_max, paths)?;
    if samples < 2 {
        return input("paths need at least two samples");
    }
    let rows = (0..paths)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(1..=n_max);
            let h1 = random_hermitian::<f64>(n, rng.random_range(0.0..8.0), &mut rng);
            let h2 = random_hermitian::<f64>(n, rng.random_range(0.0..4.0), &mut rng);
            let f = UnitaryPath::sample(samples, |s| {
                Unitary::trusted(
                    expm_i(&(h1.mat() * Complex::new(s, 0.0)))
                        * expm_i(&(h2.mat() * Complex::new(s * s, 0.0))),
                )
            });
            let d = decompose_path(&f, tol)?;
            let r = decompose_path(&f.refine(tol)?, tol)?;
            let refinement = fold_max((0..d.h.len()).map(|k| {
                (d.h[k] - r.h[2 * k])
                    .abs()
                    .max(d.g[k].distance(&r.g[2 * k]))
            }));
            Ok((
                d.max_reconstruction_error.max(r.max_reconstruction_error),
                d.max_det_error.max(r.max_det_error),
                refinement,
                d.h.last().copied().unwrap_or(0.0).abs(),
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DecompositionReport {
        paths,
        samples,
        max_reconstruction_error: fold_max(rows.iter().map(|r| r.0)),
        max_det_error: fold_max(rows.iter().map(|r| r.1)),
        max_refinement_difference: fold_max(rows.iter().map(|r| r.2)),
        max_winding: fold_max(rows.iter().map(|r| r.3)),
    })
}

fn check_sizes(n_max: usize, count: usize) -> Result<()> {
    if n_max == 0 || count == 0 {
        return input("batteries need n_max >= 1 and at least one trial");
    }
    Ok(())
}
