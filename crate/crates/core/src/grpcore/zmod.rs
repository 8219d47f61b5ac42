//! Linear algebra over `Z/E`.
//!
//! Cochain groups with coefficients of exponent `E` are `Z/E`-modules, so
//! kernels, images and linear systems are solved exactly modulo `E`.
//! Elimination uses integer-unimodular row and column operations reduced
//! mod `E`, which keeps the transforms invertible over `Z/E`.

use num_integer::Integer;

/// Largest modulus accepted, so that products fit in `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModMatrix {
    pub rows: usize,
    pub cols: usize,
    pub modulus: u64,
    pub data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(rows: usize, cols: usize, modulus: u64) -> Self {
        assert!((1..=MAX_MODULUS).contains(&modulus));
        ModMatrix {
            rows,
            cols,
            modulus,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize, modulus: u64) -> Self {
        let mut m = Self::zeros(n, n, modulus);
        for i in 0..n {
            m.data[i * n + i] = 1 % modulus;
        }
        m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.modulus;
    }

    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: i64) {
        let e = self.modulus as i64;
        let idx = i * self.cols + j;
        let cur = self.data[idx] as i64;
        self.data[idx] = (cur + v).rem_euclid(e) as u64;
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        let e = self.modulus;
        (0..self.rows).map(|i| dot(self.row(i), v, e)).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= f * row[src], touching columns `from..`.
    fn row_sub(&mut self, dst: usize, src: usize, f: u64, from: usize) {
        let e = self.modulus;
        let c = self.cols;
        let nf = (e - f % e) % e;
        for j in from..c {
            let s = self.data[src * c + j];
            if s != 0 {
                let d = &mut self.data[dst * c + j];
                *d = (*d + nf * s) % e;
            }
        }
    }

    /// col[dst] -= f * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, f: u64) {
        let e = self.modulus;
        let c = self.cols;
        let nf = (e - f % e) % e;
        for i in 0..self.rows {
            let s = self.data[i * c + src];
            if s != 0 {
                let d = &mut self.data[i * c + dst];
                *d = (*d + nf * s) % e;
            }
        }
    }

    /// Rows (a, b) replaced by (x*ra + y*rb, z*ra + w*rb).
    fn row_mix(&mut self, a: usize, b: usize, m: [u64; 4]) {
        let e = self.modulus;
        let c = self.cols;
        for j in 0..c {
            let ra = self.data[a * c + j];
            let rb = self.data[b * c + j];
            self.data[a * c + j] = (m[0] * ra % e + m[1] * rb % e) % e;
            self.data[b * c + j] = (m[2] * ra % e + m[3] * rb % e) % e;
        }
    }

    fn col_mix(&mut self, a: usize, b: usize, m: [u64; 4]) {
        let e = self.modulus;
        let c = self.cols;
        for i in 0..self.rows {
            let ca = self.data[i * c + a];
            let cb = self.data[i * c + b];
            self.data[i * c + a] = (m[0] * ca % e + m[1] * cb % e) % e;
            self.data[i * c + b] = (m[2] * ca % e + m[3] * cb % e) % e;
        }
    }
}

pub fn dot(a: &[u64], b: &[u64], e: u64) -> u64 {
    let mut acc: u64 = 0;
    for (x, y) in a.iter().zip(b) {
        if *x != 0 && *y != 0 {
            acc = (acc + x * y) % e;
        }
    }
    acc
}

pub fn modinv(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let eg = (a as i64).extended_gcd(&(m as i64));
    (eg.gcd == 1).then(|| eg.x.rem_euclid(m as i64) as u64)
}

/// Some `f` with `a*f = b (mod e)`, if one exists.
pub fn divide(b: u64, a: u64, e: u64) -> Option<u64> {
    let b = b % e;
    let g = a.gcd(&e);
    if !b.is_multiple_of(g) {
        return None;
    }
    let e2 = e / g;
    if e2 == 1 {
        return Some(0);
    }
    let inv = modinv((a / g) % e2, e2)?;
    Some((b / g) % e2 * inv % e2)
}

/// Order of the element `d` in `Z/e`.
pub fn additive_order(d: u64, e: u64) -> u64 {
    e / d.gcd(&e)
}

/// `P * A * Q = D` over `Z/E`.
#[derive(Clone, Debug)]
pub struct ModSmith {
    pub modulus: u64,
    pub rows: usize,
    pub cols: usize,
    pub diagonal: Vec<u64>,
    pub left: Option<ModMatrix>,
    pub right: Option<ModMatrix>,
}

/// Bezout 2x2 transform sending (p, b) to (gcd, 0), determinant one.
fn bezout(p: u64, b: u64, e: u64) -> [u64; 4] {
    let eg = (p as i64).extended_gcd(&(b as i64));
    let g = eg.gcd;
    let r = |x: i64| x.rem_euclid(e as i64) as u64;
    [r(eg.x), r(eg.y), r(-(b as i64 / g)), r(p as i64 / g)]
}

pub fn mod_smith(mut a: ModMatrix, track_left: bool, track_right: bool) -> ModSmith {
    let e = a.modulus;
    let (r, c) = (a.rows, a.cols);
    let mut left = track_left.then(|| ModMatrix::identity(r, e));
    let mut right = track_right.then(|| ModMatrix::identity(c, e));
    let k = r.min(c);
    let mut diagonal = Vec::with_capacity(k);
    for t in 0..k {
        // pivot generating the largest ideal, first found in row-major order
        let mut best: Option<(usize, usize, u64)> = None;
        'search: for i in t..r {
            let row = &a.data[i * c + t..(i + 1) * c];
            for (off, &v) in row.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let g = v.gcd(&e);
                if best.is_none_or(|(_, _, bg)| g < bg) {
                    best = Some((i, t + off, g));
                    if g == 1 {
                        break 'search;
                    }
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap_rows(t, pi);
        if let Some(p) = left.as_mut() {
            p.swap_rows(t, pi);
        }
        a.swap_cols(t, pj);
        if let Some(q) = right.as_mut() {
            q.swap_cols(t, pj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..r {
                let b = a.get(i, t);
                if b == 0 {
                    continue;
                }
                let p = a.get(t, t);
                match divide(b, p, e) {
                    Some(f) => {
                        a.row_sub(i, t, f, t);
                        if let Some(pm) = left.as_mut() {
                            pm.row_sub(i, t, f, 0);
                        }
                    }
                    None => {
                        let m = bezout(p, b, e);
                        a.row_mix(t, i, m);
                        if let Some(pm) = left.as_mut() {
                            pm.row_mix(t, i, m);
                        }
                        dirty = true;
                    }
                }
            }
            let mut col_clean = true;
            for j in t + 1..c {
                let b = a.get(t, j);
                if b == 0 {
                    continue;
                }
                let p = a.get(t, t);
                match divide(b, p, e) {
                    Some(f) => {
                        if col_clean {
                            // column t is zero off the pivot, so only a[t][j] moves
                            a.set(t, j, 0);
                        } else {
                            a.col_sub(j, t, f);
                        }
                        if let Some(q) = right.as_mut() {
                            q.col_sub(j, t, f);
                        }
                    }
                    None => {
                        let m = bezout(p, b, e);
                        a.col_mix(t, j, m);
                        col_clean = false;
                        if let Some(q) = right.as_mut() {
                            q.col_mix(t, j, m);
                        }
                        dirty = true;
                    }
                }
            }
            if !dirty {
                break;
            }
        }
        diagonal.push(a.get(t, t));
    }
    diagonal.resize(k, 0);
    ModSmith {
        modulus: e,
        rows: r,
        cols: c,
        diagonal,
        left,
        right,
    }
}

impl ModSmith {
    fn diag(&self, j: usize) -> u64 {
        self.diagonal.get(j).copied().unwrap_or(0)
    }

    /// Generators of the kernel of `A`. Needs the right transform.
    pub fn kernel(&self) -> Vec<Vec<u64>> {
        let q = self
            .right
            .as_ref()
            .expect("kernel needs the right transform");
        let e = self.modulus;
        let mut gens = Vec::new();
        for j in 0..self.cols {
            // d_j * y_j = 0 forces y_j into the multiples of the pivot's order
            let scale = additive_order(self.diag(j), e);
            if scale.is_multiple_of(e) {
                continue;
            }
            gens.push(q.column(j).iter().map(|&x| x * scale % e).collect());
        }
        gens
    }

    /// Some `x` with `A x = b`, if solvable. Needs both transforms.
    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        let p = self.left.as_ref().expect("solve needs the left transform");
        let q = self
            .right
            .as_ref()
            .expect("solve needs the right transform");
        let e = self.modulus;
        let y = p.mul_vec(b);
        let mut w = vec![0u64; self.cols];
        for (j, &yj) in y.iter().enumerate() {
            if j < self.cols {
                let d = self.diag(j);
                if d == 0 {
                    if yj != 0 {
                        return None;
                    }
                } else {
                    w[j] = divide(yj, d, e)?;
                }
            } else if yj != 0 {
                return None;
            }
        }
        Some(q.mul_vec(&w))
    }
}

/// Cyclic decomposition of the subgroup of `(Z/E)^r` spanned by some columns.
#[derive(Clone, Debug)]
pub struct SpanDecomposition {
    pub modulus: u64,
    /// Order of each cyclic summand, all greater than one.
    pub orders: Vec<u64>,
    /// Coefficients over the input columns producing each summand generator.
    pub combos: Vec<Vec<u64>>,
    rows: Vec<Vec<u64>>,
    pivots: Vec<u64>,
}

impl SpanDecomposition {
    pub fn new(columns: &ModMatrix) -> Self {
        let e = columns.modulus;
        let s = mod_smith(columns.clone(), true, true);
        let p = s.left.as_ref().unwrap();
        let q = s.right.as_ref().unwrap();
        let mut orders = Vec::new();
        let mut combos = Vec::new();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for j in 0..s.diagonal.len() {
            let d = s.diagonal[j];
            let ord = additive_order(d, e);
            if ord > 1 {
                orders.push(ord);
                combos.push(q.column(j));
                rows.push(p.row(j).to_vec());
                pivots.push(d);
            }
        }
        SpanDecomposition {
            modulus: e,
            orders,
            combos,
            rows,
            pivots,
        }
    }

    /// Rows of the left transform belonging to the summands.
    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn pivots(&self) -> &[u64] {
        &self.pivots
    }

    /// Coordinates of a vector of the span, one per summand.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let e = self.modulus;
        self.rows
            .iter()
            .zip(&self.pivots)
            .zip(&self.orders)
            .map(|((row, &d), &ord)| divide(dot(row, v, e), d, e).map(|c| c % ord))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_rows(rows: &[&[u64]], e: u64) -> ModMatrix {
        let mut m = ModMatrix::zeros(rows.len(), rows[0].len(), e);
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[test]
    fn divide_handles_zero_divisors() {
        assert_eq!(divide(4, 2, 6).map(|f| 2 * f % 6), Some(4));
        assert_eq!(divide(3, 2, 6), None);
        assert_eq!(divide(0, 0, 6), Some(0));
    }

    #[test]
    fn kernel_of_multiplication_by_two_mod_four() {
        let m = from_rows(&[&[2]], 4);
        let s = mod_smith(m, false, true);
        assert_eq!(s.kernel(), vec![vec![2]]);
    }

    proptest! {
        #[test]
        fn kernel_and_solve_are_exact(e in 2u64..13, data in proptest::collection::vec(0u64..12, 12), x in proptest::collection::vec(0u64..12, 4)) {
            let mut m = ModMatrix::zeros(3, 4, e);
            for (k, v) in data.iter().enumerate() {
                m.set(k / 4, k % 4, *v);
            }
            let s = mod_smith(m.clone(), true, true);
            for g in s.kernel() {
                prop_assert!(m.mul_vec(&g).iter().all(|&v| v == 0));
            }
            let x: Vec<u64> = x.iter().map(|v| v % e).collect();
            let b = m.mul_vec(&x);
            let sol = s.solve(&b).expect("consistent system");
            prop_assert_eq!(m.mul_vec(&sol), b);
            // the kernel generators plus one solution span every preimage: check count by brute force
            let kernel_size = {
                let mut count = 0u64;
                let mut v = vec![0u64; 4];
                loop {
                    if m.mul_vec(&v).iter().all(|&t| t == 0) { count += 1; }
                    let mut k = 0;
                    while k < 4 { v[k] += 1; if v[k] < e { break; } v[k] = 0; k += 1; }
                    if k == 4 { break; }
                }
                count
            };
            let span = SpanDecomposition::new(&{
                let gens = s.kernel();
                let mut km = ModMatrix::zeros(4, gens.len().max(1), e);
                for (j, g) in gens.iter().enumerate() { for i in 0..4 { km.set(i, j, g[i]); } }
                km
            });
            prop_assert_eq!(span.orders.iter().product::<u64>(), kernel_size);
        }
    }
}
