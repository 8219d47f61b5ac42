use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use super::{
    f64_of, log_unitary, op_norm, random_hermitian, trial_rng, CMatrix, Real, Tolerances, Unitary,
    UnitaryPath,
};
use crate::error::{Error, Result};

/// How the trace integral along a sampled path is evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Quadrature {
    /// Exact on the geodesic interpolation: each segment contributes
    /// `τ(log(U_k* U_{k+1}))/(2πi)`.
    #[default]
    SegmentExact,
    /// Finite-difference integrand and composite trapezoid with one
    /// Richardson step, for densely sampled smooth paths.
    Sampled,
}

/// A real value of the trace integral.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TraceValue {
    pub value: f64,
    pub error_estimate: f64,
    pub quadrature: Quadrature,
}

/// A value in `ℝ/(1/n)ℤ`, reduced to `[0, 1/n)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircleValue {
    pub value: f64,
    /// The lattice is `(1/n)ℤ`.
    pub n: usize,
    /// The nearest fraction with denominator at most 1000, if within tolerance.
    pub snap: Option<String>,
    /// The lift along the default path before reduction.
    pub lift: f64,
    /// Scalar rotation used to move the spectrum off `−1`.
    pub branch_shift: f64,
    /// Circle distance between the default path and a random two-segment path.
    pub path_check_residual: f64,
}

impl CircleValue {
    pub fn is_zero(&self, tol: f64) -> bool {
        circle_distance(self.value, 0.0, self.n) <= tol
    }
}

/// Distance between `a` and `b` in `ℝ/(1/n)ℤ`.
pub fn circle_distance(a: f64, b: f64, n: usize) -> f64 {
    let p = 1.0 / n as f64;
    let d = (a - b).rem_euclid(p);
    d.min(p - d)
}

/// Turns of one geodesic segment, `τ(log(a* b))/(2πi)`.
fn segment_turns<T: Real>(a: &CMatrix<T>, b: &CMatrix<T>, k: usize, tol: &Tolerances) -> Result<T> {
    let jump = op_norm(&(b - a));
    if jump >= T::one() {
        return Err(Error::Sampling(format!(
            "‖U_{} − U_{}‖ = {:.3} is not below 1; refine the sampling",
            k + 1,
            k,
            f64_of(jump)
        )));
    }
    Ok(log_unitary(&(a.adjoint() * b), tol)?.turns())
}

/// Cumulative turns at every sample of the path.
pub(crate) fn cumulative_turns<T: Real>(path: &UnitaryPath<T>, tol: &Tolerances) -> Result<Vec<T>> {
    let mats = path.mats();
    let mut acc = vec![T::zero()];
    for k in 0..mats.len() - 1 {
        let step = segment_turns(mats[k].mat(), mats[k + 1].mat(), k, tol)?;
        let last = *acc.last().expect("nonempty");
        acc.push(last + step);
    }
    Ok(acc)
}

/// The trace integral `(1/2πi)∫τ(γ⁻¹γ')` along a sampled path.
pub fn dlhs_path<T: Real>(
    path: &UnitaryPath<T>,
    quadrature: Quadrature,
    tol: &Tolerances,
) -> Result<TraceValue> {
    match quadrature {
        Quadrature::SegmentExact => {
            let acc = cumulative_turns(path, tol)?;
            Ok(TraceValue {
                value: f64_of(*acc.last().expect("nonempty")),
                error_estimate: 0.0,
                quadrature,
            })
        }
        Quadrature::Sampled => sampled(path),
    }
}

fn sampled<T: Real>(path: &UnitaryPath<T>) -> Result<TraceValue> {
    let ts: Vec<f64> = path.ts().iter().map(|&t| f64_of(t)).collect();
    let mats = path.mats();
    let m = ts.len();
    if m < 3 {
        return Err(Error::Sampling(
            "sampled quadrature needs at least three samples".into(),
        ));
    }
    let n = path.dim() as f64;
    let uniform = ts
        .windows(2)
        .all(|w| ((w[1] - w[0]) * (m - 1) as f64 - 1.0).abs() < 1e-9);
    // Im τ(U_k* (U_hi − U_lo)) / (2π (t_hi − t_lo)), the trace of γ⁻¹γ' over 2πi.
    let quotient = |k: usize, lo: usize, hi: usize| {
        let z = (mats[k].mat().adjoint() * (mats[hi].mat() - mats[lo].mat())).trace();
        f64_of(z.im) / (std::f64::consts::TAU * n * (ts[hi] - ts[lo]))
    };
    let integrand: Vec<f64> = (0..m)
        .map(|k| {
            if uniform && k >= 2 && k + 2 < m {
                (4.0 * quotient(k, k - 1, k + 1) - quotient(k, k - 2, k + 2)) / 3.0
            } else {
                quotient(k, k.saturating_sub(1), (k + 1).min(m - 1))
            }
        })
        .collect();
    let trapezoid = |stride: usize| {
        let idx: Vec<usize> = (0..m)
            .step_by(stride)
            .chain(std::iter::once(m - 1))
            .collect();
        idx.windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| 0.5 * (integrand[w[0]] + integrand[w[1]]) * (ts[w[1]] - ts[w[0]]))
            .sum::<f64>()
    };
    let fine = trapezoid(1);
    let coarse = trapezoid(2);
    Ok(TraceValue {
        value: fine + (fine - coarse) / 3.0,
        error_estimate: (fine - coarse).abs() / 3.0,
        quadrature: Quadrature::Sampled,
    })
}

/// The class of `u` in `ℝ/(1/n)ℤ`.
///
/// The lift comes from the spectral logarithm. It is cross-checked along
/// `I → w → u` for a random `w = e^{ih}` drawn from `seed`.
pub fn dlhs_delta<T: Real>(u: &Unitary<T>, seed: u64, tol: &Tolerances) -> Result<CircleValue> {
    let n = u.dim();
    let l = log_unitary(u.mat(), tol)?;
    let lift = f64_of(l.turns());

    let mut rng = trial_rng(seed, 0);
    let w = random_hermitian::<T>(n, 2.0, &mut rng).exp_i();
    let first = log_unitary(w.mat(), tol)?.turns();
    let second = log_unitary(&(w.mat().adjoint() * u.mat()), tol)?.turns();
    let residual = circle_distance(f64_of(first + second), lift, n);
    if residual > tol.branch {
        return Err(Error::Precision(format!(
            "path independence check failed with residual {residual:e}"
        )));
    }

    let p = 1.0 / n as f64;
    let mut value = lift.rem_euclid(p);
    if p - value <= tol.equality {
        value = 0.0;
    }
    Ok(CircleValue {
        value,
        n,
        snap: snap(value, tol.equality),
        lift,
        branch_shift: f64_of(l.shift),
        path_check_residual: residual,
    })
}

/// The fraction with the smallest denominator up to 1000 within `tol` of `x`.
fn snap(x: f64, tol: f64) -> Option<String> {
    (1..=1000i64).find_map(|q| {
        let p = (x * q as f64).round();
        ((x - p / q as f64).abs() <= tol).then(|| Ratio::new(p as i64, q).to_string())
    })
}
