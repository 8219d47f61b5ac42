//! Smith normal form over the integers, generic over the integer type.
//!
//! Arithmetic is checked: fixed-width types report [`Error::Overflow`] so
//! callers can retry with `BigInt`. See [`invariant_factors`].

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed, ToPrimitive};

use crate::error::{Error, Result};

pub trait SmithScalar:
    Clone
    + Integer
    + Signed
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + ToPrimitive
    + std::fmt::Debug
{
}

impl<T> SmithScalar for T where
    T: Clone
        + Integer
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + ToPrimitive
        + std::fmt::Debug
{
}

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<T>,
}

impl<T: SmithScalar> IntMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged matrix");
            data.extend(row);
        }
        IntMatrix {
            rows: r,
            cols: c,
            data,
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let prod = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    let cur = out.get(i, j).checked_add(&prod).ok_or(Error::Overflow)?;
                    out.set(i, j, cur);
                }
            }
        }
        Ok(out)
    }

    pub fn convert<U: SmithScalar>(&self) -> Option<IntMatrix<U>> {
        let data = self
            .data
            .iter()
            .map(|x| x.to_i128().and_then(U::from_i128))
            .collect::<Option<Vec<U>>>()?;
        Some(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] -= f * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, f: &T) -> Result<()> {
        for j in 0..self.cols {
            let s = &self.data[src * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let p = s.checked_mul(f).ok_or(Error::Overflow)?;
            let v = self.data[dst * self.cols + j]
                .checked_sub(&p)
                .ok_or(Error::Overflow)?;
            self.data[dst * self.cols + j] = v;
        }
        Ok(())
    }

    /// col[dst] -= f * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, f: &T) -> Result<()> {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + src];
            if s.is_zero() {
                continue;
            }
            let p = s.checked_mul(f).ok_or(Error::Overflow)?;
            let v = self.data[i * self.cols + dst]
                .checked_sub(&p)
                .ok_or(Error::Overflow)?;
            self.data[i * self.cols + dst] = v;
        }
        Ok(())
    }

    /// Replaces rows (a, b) by (x*ra + y*rb, z*ra + w*rb).
    fn row_mix(&mut self, a: usize, b: usize, x: &T, y: &T, z: &T, w: &T) -> Result<()> {
        for j in 0..self.cols {
            let ra = self.data[a * self.cols + j].clone();
            let rb = self.data[b * self.cols + j].clone();
            self.data[a * self.cols + j] = lin(x, &ra, y, &rb)?;
            self.data[b * self.cols + j] = lin(z, &ra, w, &rb)?;
        }
        Ok(())
    }

    /// Replaces cols (a, b) by (x*ca + y*cb, z*ca + w*cb).
    fn col_mix(&mut self, a: usize, b: usize, x: &T, y: &T, z: &T, w: &T) -> Result<()> {
        for i in 0..self.rows {
            let ca = self.data[i * self.cols + a].clone();
            let cb = self.data[i * self.cols + b].clone();
            self.data[i * self.cols + a] = lin(x, &ca, y, &cb)?;
            self.data[i * self.cols + b] = lin(z, &ca, w, &cb)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.data[r * self.cols + j].clone();
            self.data[r * self.cols + j] = v;
        }
    }

    fn negate_col(&mut self, c: usize) {
        for i in 0..self.rows {
            let v = -self.data[i * self.cols + c].clone();
            self.data[i * self.cols + c] = v;
        }
    }
}

fn lin<T: SmithScalar>(x: &T, a: &T, y: &T, b: &T) -> Result<T> {
    let p = x.checked_mul(a).ok_or(Error::Overflow)?;
    let q = y.checked_mul(b).ok_or(Error::Overflow)?;
    p.checked_add(&q).ok_or(Error::Overflow)
}

/// `P * A * Q = D` with `D` diagonal, nonnegative, `d_i | d_{i+1}`, zeros last.
#[derive(Clone, Debug)]
pub struct SmithForm<T> {
    pub diagonal: Vec<T>,
    pub left: Option<IntMatrix<T>>,
    pub left_inv: Option<IntMatrix<T>>,
    pub right: Option<IntMatrix<T>>,
}

impl<T: SmithScalar> SmithForm<T> {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }

    /// Diagonal entries greater than one.
    pub fn torsion(&self) -> Vec<T> {
        self.diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect()
    }
}

struct Tracker<T> {
    left: Option<IntMatrix<T>>,
    left_inv: Option<IntMatrix<T>>,
    right: Option<IntMatrix<T>>,
}

impl<T: SmithScalar> Tracker<T> {
    fn swap_rows(&mut self, a: usize, b: usize) {
        if let Some(p) = self.left.as_mut() {
            p.swap_rows(a, b);
        }
        if let Some(pi) = self.left_inv.as_mut() {
            pi.swap_cols(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if let Some(q) = self.right.as_mut() {
            q.swap_cols(a, b);
        }
    }

    fn row_sub(&mut self, dst: usize, src: usize, f: &T) -> Result<()> {
        if let Some(p) = self.left.as_mut() {
            p.row_sub(dst, src, f)?;
        }
        if let Some(pi) = self.left_inv.as_mut() {
            // inverse of (I - f e_dst e_src^T) applied on the right: col_src += f col_dst
            pi.col_sub(src, dst, &-f.clone())?;
        }
        Ok(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, f: &T) -> Result<()> {
        if let Some(q) = self.right.as_mut() {
            q.col_sub(dst, src, f)?;
        }
        Ok(())
    }

    /// Rows (t, i) replaced by (s*rt + u*ri, -(b/g)*rt + (a/g)*ri).
    fn row_bezout(&mut self, t: usize, i: usize, s: &T, u: &T, ag: &T, bg: &T) -> Result<()> {
        if let Some(p) = self.left.as_mut() {
            p.row_mix(t, i, s, u, &-bg.clone(), ag)?;
        }
        if let Some(pi) = self.left_inv.as_mut() {
            pi.col_mix(t, i, ag, bg, &-u.clone(), s)?;
        }
        Ok(())
    }

    fn col_bezout(&mut self, t: usize, j: usize, s: &T, u: &T, ag: &T, bg: &T) -> Result<()> {
        if let Some(q) = self.right.as_mut() {
            q.col_mix(t, j, s, u, &-bg.clone(), ag)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, r: usize) {
        if let Some(p) = self.left.as_mut() {
            p.negate_row(r);
        }
        if let Some(pi) = self.left_inv.as_mut() {
            pi.negate_col(r);
        }
    }
}

/// Computes the Smith normal form. With `track` set, the unimodular
/// transforms `P`, `P^-1` and `Q` are returned as well.
pub fn smith_normal_form<T: SmithScalar>(m: &IntMatrix<T>, track: bool) -> Result<SmithForm<T>> {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut tr = Tracker {
        left: track.then(|| IntMatrix::identity(r)),
        left_inv: track.then(|| IntMatrix::identity(r)),
        right: track.then(|| IntMatrix::identity(c)),
    };
    let k = r.min(c);
    let mut t = 0;
    while t < k {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let v = a.get(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if a.get(bi, bj).abs() <= v.abs() => {}
                    _ => best = Some((i, j)),
                }
                if v.abs().is_one() {
                    break;
                }
            }
            if best.is_some_and(|(bi, bj)| a.get(bi, bj).abs().is_one()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        tr.swap_rows(t, pi);
        a.swap_cols(t, pj);
        tr.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..r {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let p = a.get(t, t).clone();
                let b = a.get(i, t).clone();
                if b.is_multiple_of(&p) {
                    let q = b.div_floor(&p);
                    a.row_sub(i, t, &q)?;
                    tr.row_sub(i, t, &q)?;
                } else {
                    let eg = p.extended_gcd(&b);
                    let (g, s, u) = (eg.gcd, eg.x, eg.y);
                    let ag = p.div_floor(&g);
                    let bg = b.div_floor(&g);
                    a.row_mix(t, i, &s, &u, &-bg.clone(), &ag)?;
                    tr.row_bezout(t, i, &s, &u, &ag, &bg)?;
                    dirty = true;
                }
            }
            for j in t + 1..c {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let p = a.get(t, t).clone();
                let b = a.get(t, j).clone();
                if b.is_multiple_of(&p) {
                    let q = b.div_floor(&p);
                    a.col_sub(j, t, &q)?;
                    tr.col_sub(j, t, &q)?;
                } else {
                    let eg = p.extended_gcd(&b);
                    let (g, s, u) = (eg.gcd, eg.x, eg.y);
                    let ag = p.div_floor(&g);
                    let bg = b.div_floor(&g);
                    a.col_mix(t, j, &s, &u, &-bg.clone(), &ag)?;
                    tr.col_bezout(t, j, &s, &u, &ag, &bg)?;
                    dirty = true;
                }
            }
            if dirty {
                continue;
            }
            if track {
                // keep the divisibility chain with transforms intact
                let p = a.get(t, t).clone();
                let mut offender = None;
                'scan: for i in t + 1..r {
                    for j in t + 1..c {
                        if !a.get(i, j).is_multiple_of(&p) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                if let Some(i) = offender {
                    let minus_one = -T::one();
                    a.row_sub(t, i, &minus_one)?;
                    tr.row_sub(t, i, &minus_one)?;
                    continue;
                }
            }
            break;
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            tr.negate_row(t);
        }
        t += 1;
    }
    let mut diagonal: Vec<T> = (0..k).map(|i| a.get(i, i).clone()).collect();
    if !track {
        fix_divisibility(&mut diagonal);
    }
    Ok(SmithForm {
        diagonal,
        left: tr.left,
        left_inv: tr.left_inv,
        right: tr.right,
    })
}

/// Rewrites nonzero diagonal entries into a divisibility chain by gcd/lcm swaps.
fn fix_divisibility<T: SmithScalar>(d: &mut [T]) {
    let nz = d.iter().take_while(|x| !x.is_zero()).count();
    for i in 0..nz {
        for j in i + 1..nz {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
}

/// Rank and diagonal of the Smith form of an `i64` matrix, retrying with
/// `BigInt` if the fixed-width pass overflows.
pub fn invariant_factors(m: &IntMatrix<i64>) -> (usize, Vec<BigInt>) {
    match smith_normal_form(m, false) {
        Ok(s) => (
            s.rank(),
            s.diagonal.iter().map(|&d| BigInt::from(d)).collect(),
        ),
        Err(_) => {
            let big: IntMatrix<BigInt> = m.convert().expect("i64 always fits BigInt");
            let s = smith_normal_form(&big, false).expect("BigInt arithmetic cannot overflow");
            (s.rank(), s.diagonal)
        }
    }
}
