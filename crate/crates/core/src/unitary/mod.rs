//! Unitary matrices: the trace-determinant on paths and its class modulo
//! `(1/n)ℤ`, special unitary membership with explicit factorizations,
//! exponential length, and the splitting of unitary paths into a scalar
//! phase and a determinant-one part.

mod battery;
mod decompose;
mod length;
mod linalg;
mod sample;
mod trace;

pub use battery::{
    conjugation_invariance, decomposition_battery, homomorphism_check, membership_consistency,
    ConjugationReport, DecompositionReport, HomomorphismReport, MembershipReport,
};
pub use decompose::{decompose_path, Decomposition};
pub use length::{
    check_exp_inequalities, check_sandwich, d_tau, el_tau, su_tau_member, Certificate,
    ExpInequalityReport, ExpLength, Membership, Regime, SandwichReport, SLACK_THRESHOLD,
};
pub use linalg::{det, expm_i, log_unitary, op_norm, spectrum_args, unitary_eigen, UnitaryLog};
pub use sample::{master_rng, random_hermitian, random_su, random_unitary, trial_rng};
pub use trace::{circle_distance, dlhs_delta, dlhs_path, CircleValue, Quadrature, TraceValue};

use nalgebra::{DMatrix, RealField};
use num_complex::Complex;
use num_traits::{FromPrimitive, ToPrimitive};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{input, Result};

/// Real scalars the numeric layer is generic over.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync {}

impl<T: RealField + Copy + FromPrimitive + ToPrimitive + Send + Sync> Real for T {}

pub type CMatrix<T> = DMatrix<Complex<T>>;

/// Converts an `f64` constant into the scalar type.
#[inline]
pub(crate) fn re<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("every real scalar represents f64 constants")
}

#[inline]
pub(crate) fn f64_of<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

#[inline]
pub(crate) fn cis<T: Real>(theta: T) -> Complex<T> {
    Complex::new(theta.cos(), theta.sin())
}

/// Numerical tolerances shared by the unitary checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct Tolerances {
    /// Bound on `‖U*U − I‖` and `‖H − H*‖` for accepted inputs.
    pub unitarity: f64,
    /// Absolute bound for equality of operator norms and scalars.
    pub equality: f64,
    /// Distance from `−1` below which an eigenvalue counts as on the branch cut.
    pub branch: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            unitarity: 1e-10,
            equality: 1e-9,
            branch: 1e-8,
        }
    }
}

/// Rows of `[re, im]` pairs.
pub type MatrixJson = Vec<Vec<[f64; 2]>>;

pub fn matrix_from_json<T: Real>(rows: &MatrixJson) -> Result<CMatrix<T>> {
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return input("a matrix must be a nonempty square array of [re, im] pairs");
    }
    if rows.iter().flatten().flatten().any(|x| !x.is_finite()) {
        return input("matrix entries must be finite");
    }
    Ok(CMatrix::from_fn(n, n, |i, j| {
        Complex::new(re(rows[i][j][0]), re(rows[i][j][1]))
    }))
}

pub fn matrix_to_json<T: Real>(m: &CMatrix<T>) -> MatrixJson {
    (0..m.nrows())
        .map(|i| {
            (0..m.ncols())
                .map(|j| [f64_of(m[(i, j)].re), f64_of(m[(i, j)].im)])
                .collect()
        })
        .collect()
}

/// A unitary matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Unitary<T: Real> {
    mat: CMatrix<T>,
}

impl<T: Real> Unitary<T> {
    /// Accepts `mat` when it is square with `‖U*U − I‖ <= tol`.
    pub fn new(mat: CMatrix<T>, tol: f64) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return input("a unitary must be a nonempty square matrix");
        }
        let n = mat.nrows();
        let defect = op_norm(&(mat.adjoint() * &mat - CMatrix::<T>::identity(n, n)));
        if f64_of(defect) > tol {
            return input(format!(
                "matrix is not unitary: ‖U*U − I‖ = {:e}",
                f64_of(defect)
            ));
        }
        Ok(Unitary { mat })
    }

    /// Wraps a matrix known to be unitary up to rounding.
    pub(crate) fn trusted(mat: CMatrix<T>) -> Self {
        Unitary { mat }
    }

    pub fn identity(n: usize) -> Self {
        Unitary {
            mat: CMatrix::identity(n, n),
        }
    }

    /// `e^{iθ} I_n`.
    pub fn scalar(n: usize, theta: T) -> Self {
        Unitary {
            mat: CMatrix::identity(n, n) * cis(theta),
        }
    }

    /// `diag(e^{iθ_1}, …, e^{iθ_n})`.
    pub fn diagonal(thetas: &[T]) -> Self {
        let n = thetas.len();
        Unitary {
            mat: CMatrix::from_fn(n, n, |i, j| {
                if i == j {
                    cis(thetas[i])
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            }),
        }
    }

    pub fn mat(&self) -> &CMatrix<T> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Unitary {
            mat: self.mat.adjoint(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Unitary {
            mat: &self.mat * &other.mat,
        }
    }

    /// `v u v*`.
    pub fn conjugate_by(&self, v: &Self) -> Self {
        Unitary {
            mat: &v.mat * &self.mat * v.mat.adjoint(),
        }
    }

    pub fn distance(&self, other: &Self) -> T {
        op_norm(&(&self.mat - &other.mat))
    }

    pub fn to_json(&self) -> MatrixJson {
        matrix_to_json(&self.mat)
    }

    pub fn from_json(rows: &MatrixJson, tol: f64) -> Result<Self> {
        Self::new(matrix_from_json(rows)?, tol)
    }
}

impl<T: Real> Serialize for Unitary<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for Unitary<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows = MatrixJson::deserialize(d)?;
        Unitary::from_json(&rows, Tolerances::default().unitarity).map_err(serde::de::Error::custom)
    }
}

/// A self-adjoint matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SelfAdjoint<T: Real> {
    mat: CMatrix<T>,
}

impl<T: Real> SelfAdjoint<T> {
    pub fn new(mat: CMatrix<T>, tol: f64) -> Result<Self> {
        if !mat.is_square() || mat.nrows() == 0 {
            return input("a self-adjoint matrix must be nonempty and square");
        }
        let defect = op_norm(&(&mat - mat.adjoint()));
        if f64_of(defect) > tol {
            return input(format!(
                "matrix is not self-adjoint: ‖H − H*‖ = {:e}",
                f64_of(defect)
            ));
        }
        Ok(SelfAdjoint { mat })
    }

    /// The self-adjoint part `(m + m*)/2`.
    pub fn hermitian_part(mat: &CMatrix<T>) -> Self {
        let half = Complex::new(re::<T>(0.5), T::zero());
        SelfAdjoint {
            mat: (mat + mat.adjoint()) * half,
        }
    }

    pub fn zero(n: usize) -> Self {
        SelfAdjoint {
            mat: CMatrix::zeros(n, n),
        }
    }

    pub fn mat(&self) -> &CMatrix<T> {
        &self.mat
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    /// `e^{ih}`.
    pub fn exp_i(&self) -> Unitary<T> {
        Unitary::trusted(expm_i(&self.mat))
    }

    /// The normalized trace `τ(h) = tr(h)/n`.
    pub fn tau(&self) -> T {
        self.mat.trace().re / re::<T>(self.dim() as f64)
    }

    pub fn norm(&self) -> T {
        op_norm(&self.mat)
    }

    /// `h − τ(h)·I`.
    pub fn trace_free(&self) -> Self {
        let n = self.dim();
        let t = Complex::new(self.tau(), T::zero());
        SelfAdjoint {
            mat: &self.mat - CMatrix::<T>::identity(n, n) * t,
        }
    }

    pub fn to_json(&self) -> MatrixJson {
        matrix_to_json(&self.mat)
    }
}

impl<T: Real> Serialize for SelfAdjoint<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

/// A path `[0, 1] -> U(n)` through `γ(0) = I`, sampled at ascending times
/// and interpolated by `U_k exp(s·log(U_k* U_{k+1}))` between samples.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitaryPath<T: Real> {
    ts: Vec<T>,
    mats: Vec<Unitary<T>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PathJson {
    ts: Vec<f64>,
    mats: Vec<MatrixJson>,
}

impl<T: Real> UnitaryPath<T> {
    pub fn new(ts: Vec<T>, mats: Vec<Unitary<T>>, tol: f64) -> Result<Self> {
        if ts.len() != mats.len() || ts.len() < 2 {
            return input("a path needs at least two samples and one time per sample");
        }
        if ts[0] != T::zero() || *ts.last().expect("nonempty") != T::one() {
            return input("sample times must start at 0 and end at 1");
        }
        if ts.windows(2).any(|w| w[1] <= w[0]) {
            return input("sample times must be strictly increasing");
        }
        let n = mats[0].dim();
        if mats.iter().any(|m| m.dim() != n) {
            return input("all samples of a path must have the same dimension");
        }
        if f64_of(mats[0].distance(&Unitary::identity(n))) > tol {
            return input("a path must start at the identity");
        }
        Ok(UnitaryPath { ts, mats })
    }

    /// Samples `f(t_k)` on a uniform grid of `samples` points.
    pub fn sample(samples: usize, f: impl Fn(T) -> Unitary<T>) -> Self {
        let ts: Vec<T> = (0..samples)
            .map(|k| re::<T>(k as f64) / re::<T>((samples - 1) as f64))
            .collect();
        let mats = ts.iter().map(|&t| f(t)).collect();
        UnitaryPath { ts, mats }
    }

    pub fn ts(&self) -> &[T] {
        &self.ts
    }

    pub fn mats(&self) -> &[Unitary<T>] {
        &self.mats
    }

    pub fn dim(&self) -> usize {
        self.mats[0].dim()
    }

    /// The pointwise product with a path sampled at the same times.
    pub fn pointwise(&self, other: &Self) -> Result<Self> {
        if self.ts != other.ts || self.dim() != other.dim() {
            return input("pointwise products need equal sample times and dimensions");
        }
        Ok(UnitaryPath {
            ts: self.ts.clone(),
            mats: self
                .mats
                .iter()
                .zip(&other.mats)
                .map(|(a, b)| a.mul(b))
                .collect(),
        })
    }

    /// Inserts the geodesic midpoint into every segment.
    pub fn refine(&self, tol: &Tolerances) -> Result<Self> {
        let mut ts = Vec::with_capacity(2 * self.ts.len());
        let mut mats = Vec::with_capacity(2 * self.ts.len());
        for k in 0..self.ts.len() - 1 {
            ts.push(self.ts[k]);
            mats.push(self.mats[k].clone());
            let step = log_unitary(&(self.mats[k].mat.adjoint() * &self.mats[k + 1].mat), tol)?;
            let half = step.hermitian().mat * Complex::new(re::<T>(0.5), T::zero());
            ts.push((self.ts[k] + self.ts[k + 1]) * re::<T>(0.5));
            mats.push(Unitary::trusted(&self.mats[k].mat * expm_i(&half)));
        }
        ts.push(*self.ts.last().expect("nonempty"));
        mats.push(self.mats.last().expect("nonempty").clone());
        Ok(UnitaryPath { ts, mats })
    }

    pub fn from_json_value(ts: &[f64], mats: &[MatrixJson], tol: f64) -> Result<Self> {
        let mats = mats
            .iter()
            .map(|m| Unitary::from_json(m, tol))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ts.iter().map(|&t| re(t)).collect(), mats, tol)
    }
}

impl<T: Real> Serialize for UnitaryPath<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PathJson {
            ts: self.ts.iter().map(|&t| f64_of(t)).collect(),
            mats: self.mats.iter().map(|m| m.to_json()).collect(),
        }
        .serialize(s)
    }
}

impl<'de, T: Real> Deserialize<'de> for UnitaryPath<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let p = PathJson::deserialize(d)?;
        UnitaryPath::from_json_value(&p.ts, &p.mats, Tolerances::default().unitarity)
            .map_err(serde::de::Error::custom)
    }
}
