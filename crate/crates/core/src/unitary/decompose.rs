use nalgebra::ComplexField;
use num_complex::Complex;
use serde::Serialize;

use super::{
    cis, det, f64_of, op_norm, trace::cumulative_turns, Real, Tolerances, Unitary, UnitaryPath,
};
use crate::error::Result;

/// `f(t) = e^{2πi h(t)} g(t)` with `h(0) = 0` and `det g ≡ 1`.
#[derive(Clone, Debug, Serialize)]
#[serde(bound = "")]
pub struct Decomposition<T: Real> {
    pub ts: Vec<f64>,
    pub h: Vec<f64>,
    pub g: Vec<Unitary<T>>,
    pub max_reconstruction_error: f64,
    pub max_det_error: f64,
}

impl<T: Real> Decomposition<T> {
    pub fn holds(&self, tol: f64) -> bool {
        self.max_reconstruction_error < tol && self.max_det_error < tol
    }
}

/// Splits a path through the identity into a real phase and a determinant-one path.
///
/// `h` is the continuous lift of `arg det f` divided by `2πn`, tracked
/// segment by segment.
pub fn decompose_path<T: Real>(f: &UnitaryPath<T>, tol: &Tolerances) -> Result<Decomposition<T>> {
    let lift = cumulative_turns(f, tol)?;
    let two_pi = T::two_pi();
    let mut g = Vec::with_capacity(lift.len());
    let mut max_reconstruction_error = T::zero();
    let mut max_det_error = T::zero();
    for (fk, &hk) in f.mats().iter().zip(&lift) {
        let gk = fk.mat() * cis(-two_pi * hk);
        let back = &gk * cis(two_pi * hk);
        max_reconstruction_error = max_reconstruction_error.max(op_norm(&(back - fk.mat())));
        max_det_error = max_det_error.max((det(&gk) - Complex::new(T::one(), T::zero())).modulus());
        g.push(Unitary::trusted(gk));
    }
    Ok(Decomposition {
        ts: f.ts().iter().map(|&t| f64_of(t)).collect(),
        h: lift.into_iter().map(f64_of).collect(),
        g,
        max_reconstruction_error: f64_of(max_reconstruction_error),
        max_det_error: f64_of(max_det_error),
    })
}
