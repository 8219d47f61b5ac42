use nalgebra::ComplexField;
use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{cis, linalg::op_norm, re, CMatrix, Real, SelfAdjoint, Unitary};

/// The master generator for a seed.
pub fn master_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// An independent stream per trial, so batch runs do not depend on scheduling.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn ginibre<T: Real>(n: usize, rng: &mut ChaCha8Rng) -> CMatrix<T> {
    CMatrix::from_fn(n, n, |_, _| {
        let a: f64 = StandardNormal.sample(rng);
        let b: f64 = StandardNormal.sample(rng);
        Complex::new(re(a), re(b))
    })
}

/// A self-adjoint matrix with operator norm exactly `norm`.
pub fn random_hermitian<T: Real>(n: usize, norm: f64, rng: &mut ChaCha8Rng) -> SelfAdjoint<T> {
    let g = ginibre::<T>(n, rng);
    let h = SelfAdjoint::hermitian_part(&g);
    let size = op_norm(h.mat());
    if size == T::zero() {
        return SelfAdjoint::zero(n);
    }
    let scale = Complex::new(re::<T>(norm) / size, T::zero());
    SelfAdjoint::hermitian_part(&(h.mat() * scale))
}

/// A Haar-distributed unitary, from the QR factorization of a Gaussian matrix.
pub fn random_unitary<T: Real>(n: usize, rng: &mut ChaCha8Rng) -> Unitary<T> {
    let qr = ginibre::<T>(n, rng).qr();
    let (q, r) = (qr.q(), qr.r());
    let phases = CMatrix::from_fn(n, n, |i, j| {
        if i == j {
            let d = r[(i, i)];
            let m = d.modulus();
            if m == T::zero() {
                Complex::new(T::one(), T::zero())
            } else {
                d.unscale(m)
            }
        } else {
            Complex::new(T::zero(), T::zero())
        }
    });
    Unitary::trusted(q * phases)
}

/// A Haar unitary with its determinant divided out.
pub fn random_su<T: Real>(n: usize, rng: &mut ChaCha8Rng) -> Unitary<T> {
    let u = random_unitary::<T>(n, rng);
    let phase = super::det(u.mat()).argument();
    let fix = cis(-phase / re::<T>(n as f64));
    Unitary::trusted(u.mat() * fix)
}
