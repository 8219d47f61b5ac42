use nalgebra::{ComplexField, Schur, SymmetricEigen};
use num_complex::Complex;

use super::{cis, re, CMatrix, Real, SelfAdjoint, Tolerances};
use crate::error::{Error, Result};

/// The operator norm: the largest singular value.
pub fn op_norm<T: Real>(m: &CMatrix<T>) -> T {
    m.clone()
        .svd(false, false)
        .singular_values
        .iter()
        .fold(T::zero(), |a, &b| if b > a { b } else { a })
}

pub fn det<T: Real>(m: &CMatrix<T>) -> Complex<T> {
    m.clone().determinant()
}

/// `e^{ih}` for self-adjoint `h`, through its spectral decomposition.
pub fn expm_i<T: Real>(h: &CMatrix<T>) -> CMatrix<T> {
    let half = Complex::new(re::<T>(0.5), T::zero());
    let sym = (h + h.adjoint()) * half;
    let eig = SymmetricEigen::new(sym);
    let v = &eig.eigenvectors;
    let n = h.nrows();
    let d = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            cis(eig.eigenvalues[i])
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    v * d * v.adjoint()
}

/// Eigenvalue arguments of a unitary.
pub fn spectrum_args<T: Real>(u: &CMatrix<T>, tol: &Tolerances) -> Result<Vec<T>> {
    Ok(unitary_eigen(u, tol)?
        .1
        .iter()
        .map(|z| z.argument())
        .collect())
}

/// Weights `c` for diagonalizing `(U + U*)/2 + c(U − U*)/2i`. Two distinct
/// eigenvalues `e^{iθ}` collide only when `c = tan((θ_1 + θ_2)/2)`.
const MIXING: [f64; 4] = [
    0.414_213_562_4,
    -0.726_542_528,
    1.376_381_92,
    -3.077_683_537,
];

fn off_diagonal<T: Real>(d: &CMatrix<T>) -> T {
    let n = d.nrows();
    (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .fold(T::zero(), |a, (i, j)| a.max(d[(i, j)].modulus()))
}

/// `U = Q diag(λ) Q*` with `Q` unitary.
///
/// The complex Schur iteration stalls on clustered spectra, so a Hermitian
/// combination is diagonalized first and Schur is only a bounded fallback.
pub fn unitary_eigen<T: Real>(
    u: &CMatrix<T>,
    tol: &Tolerances,
) -> Result<(CMatrix<T>, Vec<Complex<T>>)> {
    let n = u.nrows();
    let half = Complex::new(re::<T>(0.5), T::zero());
    let re_part = (u + u.adjoint()) * half;
    let im_part = (u - u.adjoint()) * Complex::new(T::zero(), -re::<T>(0.5));
    let accept = re::<T>(tol.unitarity);
    let mut best: Option<(T, CMatrix<T>, CMatrix<T>)> = None;
    for &c in &MIXING {
        let a = &re_part + &im_part * Complex::new(re::<T>(c), T::zero());
        let a = (&a + a.adjoint()) * half;
        let Some(eig) = SymmetricEigen::try_new(a, T::default_epsilon(), 1000) else {
            continue;
        };
        let q = eig.eigenvectors;
        let d = q.adjoint() * u * &q;
        let off = off_diagonal(&d);
        if best.as_ref().is_none_or(|b| off < b.0) {
            best = Some((off, q, d));
        }
        if off <= accept {
            break;
        }
    }
    if let Some((_, q, d)) = best.filter(|b| b.0 <= accept) {
        return Ok((q, (0..n).map(|i| d[(i, i)]).collect()));
    }
    if let Some(schur) = Schur::try_new(u.clone(), T::default_epsilon(), 100 * n.max(10)) {
        let (q, t) = schur.unpack();
        if off_diagonal(&t) <= re::<T>(tol.unitarity.sqrt()) {
            return Ok((q, (0..n).map(|i| t[(i, i)]).collect()));
        }
    }
    Err(Error::Precision("could not diagonalize the unitary".into()))
}

/// A logarithm `log u = i·h` of a unitary.
///
/// When an eigenvalue lies within the branch tolerance of `−1`, `u` is first
/// rotated by the scalar `e^{iδ}` and `δ` is subtracted afterwards; `shift`
/// records `δ`, and is zero for the principal logarithm.
#[derive(Clone, Debug)]
pub struct UnitaryLog<T: Real> {
    pub log: CMatrix<T>,
    pub shift: T,
    pub args: Vec<T>,
}

impl<T: Real> UnitaryLog<T> {
    /// `h = −i·log u`.
    pub fn hermitian(&self) -> SelfAdjoint<T> {
        SelfAdjoint::hermitian_part(&(&self.log * Complex::new(T::zero(), -T::one())))
    }

    /// `τ(log u)/(2πi)`, exactly the sum of the eigenvalue arguments over `2πn`.
    pub fn turns(&self) -> T {
        let sum = self.args.iter().fold(T::zero(), |a, &b| a + b);
        sum / (T::two_pi() * re::<T>(self.args.len() as f64))
    }

    /// The largest absolute eigenvalue argument, which is `‖log u‖`.
    pub fn norm(&self) -> T {
        self.args.iter().fold(T::zero(), |a, &b| a.max(b.abs()))
    }
}

/// A logarithm of `u`, principal unless the spectrum touches `−1`.
pub fn log_unitary<T: Real>(u: &CMatrix<T>, tol: &Tolerances) -> Result<UnitaryLog<T>> {
    let (q, eig) = unitary_eigen(u, tol)?;
    let n = u.nrows();
    let branch = re::<T>(tol.branch);
    let near_cut = eig
        .iter()
        .any(|z| (*z + Complex::new(T::one(), T::zero())).modulus() < branch);
    let shift = if near_cut {
        rotation_off_cut(&eig)
    } else {
        T::zero()
    };
    let rot = cis(shift);
    let args: Vec<T> = eig.iter().map(|z| (*z * rot).argument() - shift).collect();
    let d = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            Complex::new(T::zero(), args[i])
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    let log = &q * d * q.adjoint();
    Ok(UnitaryLog { log, shift, args })
}

/// A rotation `δ` that moves `−1` into the middle of the widest gap of the spectrum.
fn rotation_off_cut<T: Real>(eig: &[Complex<T>]) -> T {
    let mut a: Vec<T> = eig.iter().map(|z| z.argument()).collect();
    a.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    let two_pi = T::two_pi();
    let mut best = (T::zero(), a[0] + two_pi - *a.last().expect("nonempty"));
    let mut mid = *a.last().expect("nonempty") + best.1 * re::<T>(0.5);
    for w in a.windows(2) {
        let gap = w[1] - w[0];
        if gap > best.1 {
            best = (w[0], gap);
            mid = w[0] + gap * re::<T>(0.5);
        }
    }
    T::pi() - mid
}
