use nalgebra::ComplexField;
use num_complex::Complex;
use rand::RngExt;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    det, expm_i, f64_of, log_unitary, op_norm, random_hermitian, re, trial_rng, CMatrix, Real,
    SelfAdjoint, Tolerances, Unitary,
};
use crate::error::{input, Error, Result};

/// A factorization `u = e^{ih_1}⋯e^{ih_k}` with `τ(h_j) = 0`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct Certificate<T: Real> {
    pub factors: Vec<SelfAdjoint<T>>,
    /// `‖e^{ih_1}⋯e^{ih_k} − u‖`.
    pub residual: f64,
    /// `"log"` when one trace-free logarithm suffices, `"two-step"` otherwise.
    pub route: &'static str,
}

impl<T: Real> Certificate<T> {
    pub fn length(&self) -> T {
        self.factors.iter().fold(T::zero(), |a, h| a + h.norm())
    }

    pub fn product(&self, n: usize) -> CMatrix<T> {
        self.factors
            .iter()
            .fold(CMatrix::identity(n, n), |acc, h| acc * expm_i(h.mat()))
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct Membership<T: Real> {
    pub member: bool,
    pub det: [f64; 2],
    pub certificate: Option<Certificate<T>>,
}

/// Whether `u` has determinant one, with a factorization into trace-free
/// exponentials when it does.
pub fn su_tau_member<T: Real>(u: &Unitary<T>, tol: &Tolerances) -> Result<Membership<T>> {
    let n = u.dim();
    let d = det(u.mat());
    let scale = tol.equality * n.max(1) as f64;
    if (f64_of(d.modulus()) - 1.0).abs() > scale {
        return input(format!("|det u| = {} is not 1", f64_of(d.modulus())));
    }
    let member = f64_of((d - Complex::new(T::one(), T::zero())).modulus()) <= scale;
    let det_json = [f64_of(d.re), f64_of(d.im)];
    if !member {
        return Ok(Membership {
            member,
            det: det_json,
            certificate: None,
        });
    }
    let l = log_unitary(u.mat(), tol)?;
    let h = l.hermitian();
    let k = (f64_of(l.turns()) * n as f64).round();
    let (factors, route) = if k == 0.0 {
        (vec![h.trace_free()], "log")
    } else {
        // τ(h) = 2πk/n; split off the scalar e^{ic} = e^{i·diag(c, …, c, c − 2πk)}.
        let c = re::<T>(std::f64::consts::TAU * k / n as f64);
        let shift = re::<T>(std::f64::consts::TAU * k);
        let diag = CMatrix::from_fn(n, n, |i, j| match (i == j, i + 1 == n) {
            (true, false) => Complex::new(c, T::zero()),
            (true, true) => Complex::new(c - shift, T::zero()),
            _ => Complex::new(T::zero(), T::zero()),
        });
        (
            vec![SelfAdjoint::hermitian_part(&diag), h.trace_free()],
            "two-step",
        )
    };
    let mut cert = Certificate {
        factors,
        residual: 0.0,
        route,
    };
    cert.residual = f64_of(op_norm(&(cert.product(n) - u.mat())));
    if cert.residual > scale {
        return Err(Error::Precision(format!(
            "certificate does not recompose u: residual {:e}",
            cert.residual
        )));
    }
    Ok(Membership {
        member,
        det: det_json,
        certificate: Some(cert),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// `el(u) = ‖log u‖`.
    Exact,
    /// An upper bound from the membership certificate.
    UpperBound,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ExpLength {
    pub value: f64,
    pub regime: Regime,
}

/// The exponential length of a determinant-one unitary.
pub fn el_tau<T: Real>(u: &Unitary<T>, tol: &Tolerances) -> Result<ExpLength> {
    let m = su_tau_member(u, tol)?;
    let Some(cert) = m.certificate else {
        return input("exponential length needs det u = 1");
    };
    let l = log_unitary(u.mat(), tol)?;
    let norm = f64_of(l.norm());
    let trace = f64_of(l.turns()).abs() * std::f64::consts::TAU;
    if l.shift == T::zero() && norm < std::f64::consts::PI - tol.branch && trace <= tol.equality {
        Ok(ExpLength {
            value: norm,
            regime: Regime::Exact,
        })
    } else {
        Ok(ExpLength {
            value: f64_of(cert.length()),
            regime: Regime::UpperBound,
        })
    }
}

/// `d(u, v) = el(u* v)`.
pub fn d_tau<T: Real>(u: &Unitary<T>, v: &Unitary<T>, tol: &Tolerances) -> Result<ExpLength> {
    el_tau(&u.adjoint().mul(v), tol)
}

/// Minimal slacks of `‖h_1 − h_2‖(1 − (‖h_1‖ + ‖h_2‖)/2) ≤ ‖e^{ih_1} − e^{ih_2}‖ ≤ ‖h_1 − h_2‖`.
#[derive(Clone, Debug, Serialize)]
pub struct ExpInequalityReport {
    pub trials: usize,
    pub n_max: usize,
    pub seed: u64,
    pub min_lower_slack: f64,
    pub min_upper_slack: f64,
    pub violations: usize,
    pub threshold: f64,
}

impl ExpInequalityReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
    }
}

pub const SLACK_THRESHOLD: f64 = -1e-9;

/// Samples pairs of self-adjoint matrices of norm at most one.
pub fn check_exp_inequalities(
    n_max: usize,
    trials: usize,
    seed: u64,
) -> Result<ExpInequalityReport> {
    if n_max == 0 || trials == 0 {
        return input("check_exp_inequalities needs n_max >= 1 and trials >= 1");
    }
    let slacks: Vec<(f64, f64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(1..=n_max);
            let (r1, r2): (f64, f64) = (rng.random(), rng.random());
            let h1 = random_hermitian::<f64>(n, r1, &mut rng);
            let h2 = if t % 16 == 0 {
                h1.clone()
            } else {
                random_hermitian::<f64>(n, r2, &mut rng)
            };
            let dh = op_norm(&(h1.mat() - h2.mat()));
            let de = op_norm(&(expm_i(h1.mat()) - expm_i(h2.mat())));
            let lower = de - dh * (1.0 - (h1.norm() + h2.norm()) / 2.0);
            (lower, dh - de)
        })
        .collect();
    let violations = slacks
        .iter()
        .filter(|(a, b)| *a < SLACK_THRESHOLD || *b < SLACK_THRESHOLD)
        .count();
    Ok(ExpInequalityReport {
        trials,
        n_max,
        seed,
        min_lower_slack: slacks.iter().map(|s| s.0).fold(f64::INFINITY, f64::min),
        min_upper_slack: slacks.iter().map(|s| s.1).fold(f64::INFINITY, f64::min),
        violations,
        threshold: SLACK_THRESHOLD,
    })
}

/// Minimal slacks of the four inequalities
/// `(1−ε)‖log u − log v‖ ≤ ‖u − v‖ ≤ d(u, v) ≤ (π/2)‖u − v‖ ≤ (π/2)‖log u − log v‖`
/// over `u, v` sampled from `{e^{ih} : τ(h) = 0, ‖h‖ < ε}`.
#[derive(Clone, Debug, Serialize)]
pub struct SandwichReport {
    pub trials: usize,
    pub n_max: usize,
    pub epsilon: f64,
    pub seed: u64,
    pub min_slacks: [f64; 4],
    pub exact_regime: usize,
    pub violations: usize,
    pub threshold: f64,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.violations == 0 && self.exact_regime == self.trials
    }
}

pub fn check_sandwich(
    n_max: usize,
    trials: usize,
    epsilon: f64,
    seed: u64,
    tol: &Tolerances,
) -> Result<SandwichReport> {
    if n_max < 2 || trials == 0 || !(epsilon > 0.0 && epsilon < std::f64::consts::FRAC_PI_2) {
        return input("check_sandwich needs n_max >= 2, trials >= 1 and 0 < epsilon < π/2");
    }
    let rows: Vec<Result<([f64; 4], bool)>> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t as u64);
            let n = rng.random_range(2..=n_max);
            let draw = |rng: &mut rand_chacha::ChaCha8Rng| {
                let r: f64 = rng.random::<f64>() * epsilon * (1.0 - 1e-6);
                let h = random_hermitian::<f64>(n, 1.0, rng).trace_free();
                let size = h.norm();
                let h = if size == 0.0 {
                    h
                } else {
                    SelfAdjoint::hermitian_part(&(h.mat() * Complex::new(r / size, 0.0)))
                };
                (h.exp_i(), h)
            };
            let (u, hu) = draw(&mut rng);
            let (v, hv) = draw(&mut rng);
            let dlog = op_norm(&(hu.mat() - hv.mat()));
            let duv = u.distance(&v);
            let d = d_tau(&u, &v, tol)?;
            let half_pi = std::f64::consts::FRAC_PI_2;
            Ok((
                [
                    duv - (1.0 - epsilon) * dlog,
                    d.value - duv,
                    half_pi * duv - d.value,
                    half_pi * (dlog - duv),
                ],
                d.regime == Regime::Exact,
            ))
        })
        .collect();
    let rows = rows.into_iter().collect::<Result<Vec<_>>>()?;
    let mut min_slacks = [f64::INFINITY; 4];
    for (s, _) in &rows {
        for i in 0..4 {
            min_slacks[i] = min_slacks[i].min(s[i]);
        }
    }
    Ok(SandwichReport {
        trials,
        n_max,
        epsilon,
        seed,
        min_slacks,
        exact_regime: rows.iter().filter(|r| r.1).count(),
        violations: rows
            .iter()
            .filter(|r| r.0.iter().any(|&x| x < SLACK_THRESHOLD))
            .count(),
        threshold: SLACK_THRESHOLD,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{random_su, random_unitary};
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{PI, TAU};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_is_a_member_with_zero_certificate() {
        let m = su_tau_member(&Unitary::<f64>::identity(3), &tol()).unwrap();
        assert!(m.member);
        let c = m.certificate.unwrap();
        assert_eq!(c.route, "log");
        assert!(c.length() < 1e-14);
        let e = el_tau(&Unitary::<f64>::identity(3), &tol()).unwrap();
        assert_eq!(
            e,
            ExpLength {
                value: 0.0,
                regime: Regime::Exact
            }
        );
    }

    #[test]
    fn scalars_off_the_lattice_are_not_members() {
        for n in 2..5 {
            let m = su_tau_member(&Unitary::<f64>::scalar(n, 0.4), &tol()).unwrap();
            assert!(!m.member);
            assert!(el_tau(&Unitary::<f64>::scalar(n, 0.4), &tol()).is_err());
        }
    }

    #[test]
    fn central_roots_of_unity_need_two_factors() {
        let u = Unitary::<f64>::scalar(3, TAU / 3.0);
        let m = su_tau_member(&u, &tol()).unwrap();
        let c = m.certificate.unwrap();
        assert_eq!(c.route, "two-step");
        assert!(c.residual < 1e-12);
        for h in &c.factors {
            assert!(h.tau().abs() < 1e-12);
        }
        assert_eq!(el_tau(&u, &tol()).unwrap().regime, Regime::UpperBound);
    }

    #[test]
    fn diagonal_rotation_has_length_theta() {
        for k in 0..20 {
            let theta = PI * k as f64 / 20.0;
            let e = el_tau(&Unitary::<f64>::diagonal(&[theta, -theta]), &tol()).unwrap();
            assert_eq!(e.regime, Regime::Exact);
            assert!((e.value - theta).abs() < 1e-12);
        }
    }

    #[test]
    fn non_unimodular_determinant_is_an_input_error() {
        let m = CMatrix::<f64>::identity(2, 2) * Complex::new(1.0, 1e-3);
        let u = Unitary::trusted(m);
        assert!(matches!(su_tau_member(&u, &tol()), Err(Error::Input(_))));
    }

    #[test]
    fn lemma_examples() {
        let r = check_exp_inequalities(6, 2000, 5).unwrap();
        assert!(r.holds(), "{r:?}");
        let s = check_sandwich(4, 200, 1.0, 6, &tol()).unwrap();
        assert!(s.holds(), "{s:?}");
    }

    #[test]
    fn chord_is_shorter_than_arc() {
        for k in 0..50 {
            let theta = 0.02 * k as f64;
            let h = CMatrix::<f64>::from_fn(2, 2, |i, j| {
                Complex::new(if i == 0 && j == 0 { theta } else { 0.0 }, 0.0)
            });
            let chord = op_norm(&(expm_i(&h) - CMatrix::identity(2, 2)));
            assert!(chord <= theta + 1e-15);
            assert!((chord - 2.0 * (theta / 2.0).sin()).abs() < 1e-14);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn random_su_elements_have_valid_certificates(seed in any::<u64>(), n in 1usize..6) {
            let mut rng = trial_rng(seed, 0);
            let u = random_su::<f64>(n, &mut rng);
            let m = su_tau_member(&u, &tol()).unwrap();
            prop_assert!(m.member);
            let c = m.certificate.unwrap();
            prop_assert!(op_norm(&(c.product(n) - u.mat())) < 1e-9);
            for h in &c.factors {
                prop_assert!(h.tau().abs() < 1e-12);
            }
        }

        #[test]
        fn length_is_conjugation_invariant(seed in any::<u64>(), n in 2usize..5) {
            let mut rng = trial_rng(seed, 0);
            let h = random_hermitian::<f64>(n, 1.2, &mut rng).trace_free();
            let u = h.exp_i();
            let v = random_unitary::<f64>(n, &mut rng);
            let a = el_tau(&u, &tol()).unwrap();
            let b = el_tau(&u.conjugate_by(&v), &tol()).unwrap();
            prop_assert_eq!(a.regime, Regime::Exact);
            prop_assert!((a.value - b.value).abs() < 1e-9);
            prop_assert!((a.value - h.norm()).abs() < 1e-9);
        }

        #[test]
        fn distance_is_a_metric_on_small_elements(seed in any::<u64>(), n in 2usize..5) {
            let mut rng = trial_rng(seed, 0);
            let pts: Vec<Unitary<f64>> = (0..3)
                .map(|_| random_hermitian::<f64>(n, 1.0, &mut rng).trace_free().exp_i())
                .collect();
            let d = |a: &Unitary<f64>, b: &Unitary<f64>| d_tau(a, b, &tol()).unwrap();
            let (ab, ba, bc, ac) = (d(&pts[0], &pts[1]), d(&pts[1], &pts[0]), d(&pts[1], &pts[2]), d(&pts[0], &pts[2]));
            prop_assert!((ab.value - ba.value).abs() < 1e-9);
            if ab.regime == Regime::Exact && bc.regime == Regime::Exact && ac.regime == Regime::Exact {
                prop_assert!(ac.value <= ab.value + bc.value + 1e-9);
            }
            prop_assert!(d(&pts[0], &pts[0]).value < 1e-9);
        }
    }
}
