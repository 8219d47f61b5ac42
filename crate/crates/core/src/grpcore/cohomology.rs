//! `H^n(Γ, M)` from the normalized inhomogeneous bar complex.
//!
//! Finite coefficients of exponent `E` are handled as `Z/E`-modules: the
//! cochain space is `(Z/E)^N` modulo the relations `d_i e_i`, cocycles are
//! the kernel of the scaled differential, and the class group is the image
//! of the cocycles in the quotient by coboundaries plus relations.
//!
//! Circle coefficients `Q/Z` use the fact that every class in degree
//! `n >= 1` has a representative in `(1/m)Z/Z`, `m = |Γ|`, and that such a
//! cocycle bounds in `Q/Z` iff it bounds in `(1/(m·|Γ|))Z/Z`. The group is
//! the image of `H^n(Γ, (1/m)Z/Z)` in `H^n(Γ, (1/m²)Z/Z)`.

use num_integer::Integer;

use crate::budget::Budget;
use crate::error::{check_budget, input, Error, Result};
use crate::grpcore::cochain::{bar_differential, tuple_count, tuple_index, Cochain};
use crate::grpcore::coeff::{AbelianCoefficients, CoefficientKind, ModuleView};
use crate::grpcore::group::FiniteGroup;
use crate::grpcore::smith::{smith_normal_form, IntMatrix};
use crate::grpcore::zmod::{
    divide, dot, mod_smith, ModMatrix, ModSmith, SpanDecomposition, MAX_MODULUS,
};

/// Normalized tuples of a fixed length, in lexicographic order.
#[derive(Clone, Debug)]
struct Normalized {
    tuples: Vec<Vec<usize>>,
    pos: Vec<Option<usize>>,
}

impl Normalized {
    fn new(group: &FiniteGroup, degree: usize) -> Result<Self> {
        let n = group.order();
        let total = tuple_count(n, degree)?;
        let mut tuples = Vec::new();
        let mut pos = vec![None; total];
        for (idx, slot) in pos.iter_mut().enumerate() {
            let t = crate::grpcore::cochain::index_tuple(idx, degree, n);
            if !t.contains(&group.identity()) {
                *slot = Some(tuples.len());
                tuples.push(t);
            }
        }
        Ok(Normalized { tuples, pos })
    }

    fn position(&self, t: &[usize], order: usize) -> Option<usize> {
        self.pos[tuple_index(t, order)]
    }
}

/// Matrix of the lifted differential `C^n -> C^{n+1}` on normalized coordinates.
fn differential_matrix(
    group: &FiniteGroup,
    view: &ModuleView,
    n: usize,
    src: &Normalized,
    dst: &Normalized,
    e: u64,
) -> ModMatrix {
    let k = view.rank();
    let ord = group.order();
    let mut m = ModMatrix::zeros(dst.tuples.len() * k, src.tuples.len() * k, e);
    let mut merged = Vec::with_capacity(n);
    for (r, t) in dst.tuples.iter().enumerate() {
        if let Some(c) = src.position(&t[1..], ord) {
            for i in 0..k {
                for j in 0..k {
                    let a = if view.action.is_empty() {
                        i64::from(i == j)
                    } else {
                        view.action[t[0]][i][j]
                    };
                    if a != 0 {
                        m.add_to(r * k + i, c * k + j, a);
                    }
                }
            }
        }
        for i in 1..=n {
            merged.clear();
            merged.extend_from_slice(&t[..i - 1]);
            merged.push(group.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            if let Some(c) = src.position(&merged, ord) {
                let sign = if i % 2 == 1 { -1 } else { 1 };
                for x in 0..k {
                    m.add_to(r * k + x, c * k + x, sign);
                }
            }
        }
        if let Some(c) = src.position(&t[..n], ord) {
            let sign = if (n + 1) % 2 == 1 { -1 } else { 1 };
            for x in 0..k {
                m.add_to(r * k + x, c * k + x, sign);
            }
        }
    }
    m
}

/// Change of basis from independent cyclic summands to invariant factors.
#[derive(Clone, Debug)]
struct InvariantBasis {
    factors: Vec<u64>,
    conv: Vec<Vec<i64>>,
    back: Vec<Vec<i64>>,
}

impl InvariantBasis {
    fn new(orders: &[u64]) -> Result<Self> {
        let r = orders.len();
        if r == 0 {
            return Ok(InvariantBasis {
                factors: Vec::new(),
                conv: Vec::new(),
                back: Vec::new(),
            });
        }
        let mut d = IntMatrix::<i64>::zeros(r, r);
        for (i, &o) in orders.iter().enumerate() {
            d.set(i, i, o as i64);
        }
        let s = smith_normal_form(&d, true)?;
        let p = s.left.expect("tracked");
        let pi = s.left_inv.expect("tracked");
        let mut factors = Vec::new();
        let mut conv = Vec::new();
        let mut back = Vec::new();
        for i in 0..r {
            let f = s.diagonal[i];
            if f > 1 {
                factors.push(f as u64);
                conv.push((0..r).map(|l| *p.get(i, l)).collect());
                back.push((0..r).map(|l| *pi.get(l, i)).collect());
            }
        }
        Ok(InvariantBasis {
            factors,
            conv,
            back,
        })
    }

    fn convert(&self, raw: &[u64]) -> Vec<u64> {
        self.conv
            .iter()
            .zip(&self.factors)
            .map(|(row, &f)| {
                let mut acc: i128 = 0;
                for (a, &x) in row.iter().zip(raw) {
                    acc += *a as i128 * x as i128;
                }
                acc.rem_euclid(f as i128) as u64
            })
            .collect()
    }
}

/// Combination `Σ c_l v_l` of vectors over `Z/e`, with signed coefficients.
fn combine(vectors: &[Vec<u64>], coeffs: &[i64], len: usize, e: u64) -> Vec<u64> {
    let mut out = vec![0u64; len];
    for (v, &c) in vectors.iter().zip(coeffs) {
        let c = c.rem_euclid(e as i64) as u64;
        if c == 0 {
            continue;
        }
        for (o, &x) in out.iter_mut().zip(v) {
            *o = (*o + c * x) % e;
        }
    }
    out
}

/// Cohomology with coefficients in a finite module view.
#[derive(Clone, Debug)]
struct FiniteCoh {
    degree: usize,
    moduli: Vec<u64>,
    e: u64,
    norm: Normalized,
    norm_prev: Normalized,
    boundary: ModSmith,
    class_rows: Vec<Vec<u64>>,
    pivots: Vec<u64>,
    raw_orders: Vec<u64>,
    basis: InvariantBasis,
    /// Cocycle vectors, one per invariant factor.
    generators: Vec<Vec<u64>>,
}

impl FiniteCoh {
    fn new(group: &FiniteGroup, view: &ModuleView, degree: usize, budget: &Budget) -> Result<Self> {
        let k = view.rank();
        let e = view.exponent();
        if e > MAX_MODULUS {
            return input(format!("coefficient exponent {e} is too large"));
        }
        let norm = Normalized::new(group, degree)?;
        let norm_next = Normalized::new(group, degree + 1)?;
        let norm_prev = Normalized::new(group, degree - 1)?;
        let dim = norm.tuples.len() * k;
        let dim_next = norm_next.tuples.len() * k;
        let dim_prev = norm_prev.tuples.len() * k;
        check_budget(
            "coboundary matrix entries",
            dim as u128 * dim_next as u128,
            budget.matrix_entries,
        )?;

        // cocycles: kernel of the differential followed by the embedding ⊕Z/d_i -> (Z/E)^k
        let mut dn = differential_matrix(group, view, degree, &norm, &norm_next, e);
        for r in 0..dn.rows {
            let s = e / view.moduli[r % k];
            if s != 1 {
                for c in 0..dn.cols {
                    let v = dn.get(r, c);
                    if v != 0 {
                        dn.set(r, c, v * s);
                    }
                }
            }
        }
        let kernel = mod_smith(dn, false, true).kernel();

        // coboundaries plus the relations d_i e_i
        let dprev = differential_matrix(group, view, degree - 1, &norm_prev, &norm, e);
        let mut bm = ModMatrix::zeros(dim, dim_prev + dim, e);
        for r in 0..dim {
            for c in 0..dim_prev {
                bm.set(r, c, dprev.get(r, c));
            }
            bm.set(r, dim_prev + r, view.moduli[r % k]);
        }
        let boundary = mod_smith(bm, true, true);
        let p = boundary.left.as_ref().expect("tracked");
        let scale: Vec<u64> = (0..dim)
            .map(|j| {
                let b = boundary.diagonal.get(j).copied().unwrap_or(0);
                e / b.gcd(&e)
            })
            .collect();

        // image of the cocycles in the quotient, embedded in (Z/E)^dim
        let mut t = ModMatrix::zeros(dim, kernel.len().max(1), e);
        for (col, z) in kernel.iter().enumerate() {
            let pz = p.mul_vec(z);
            for j in 0..dim {
                t.set(j, col, pz[j] * scale[j] % e);
            }
        }
        let span = SpanDecomposition::new(&t);
        let mut class_rows = Vec::with_capacity(span.orders.len());
        for row in span.rows() {
            // row · diag(scale) · P
            let mut w = vec![0u64; dim];
            for (j, &rj) in row.iter().enumerate() {
                let c = rj * scale[j] % e;
                if c == 0 {
                    continue;
                }
                for (wi, &pji) in w.iter_mut().zip(p.row(j)) {
                    *wi = (*wi + c * pji) % e;
                }
            }
            class_rows.push(w);
        }
        let raw_generators: Vec<Vec<u64>> = span
            .combos
            .iter()
            .map(|combo| {
                let coeffs: Vec<i64> = combo.iter().map(|&x| x as i64).collect();
                combine(&kernel, &coeffs, dim, e)
            })
            .collect();
        let basis = InvariantBasis::new(&span.orders)?;
        let generators = basis
            .back
            .iter()
            .map(|coeffs| reduce_vec(&combine(&raw_generators, coeffs, dim, e), &view.moduli))
            .collect();
        Ok(FiniteCoh {
            degree,
            moduli: view.moduli.clone(),
            e,
            norm,
            norm_prev,
            boundary,
            class_rows,
            pivots: span.pivots().to_vec(),
            raw_orders: span.orders.clone(),
            basis,
            generators,
        })
    }

    fn k(&self) -> usize {
        self.moduli.len()
    }

    fn vector(&self, c: &Cochain, identity: usize) -> Result<Vec<u64>> {
        if !c.is_normalized(identity) {
            return input("cochain is not normalized");
        }
        let mut v = Vec::with_capacity(self.norm.tuples.len() * self.k());
        for t in &self.norm.tuples {
            v.extend_from_slice(c.get(t));
        }
        Ok(v)
    }

    fn cochain(
        &self,
        group: &FiniteGroup,
        module: &AbelianCoefficients,
        v: &[u64],
        degree: usize,
        denom: u64,
    ) -> Cochain {
        let norm = if degree == self.degree {
            &self.norm
        } else {
            &self.norm_prev
        };
        let k = self.k();
        let ord = group.order();
        Cochain::from_fn(group, module, degree, denom, |t| {
            match norm.position(t, ord) {
                Some(p) => v[p * k..(p + 1) * k].to_vec(),
                None => vec![0; k],
            }
        })
    }

    fn coords(&self, v: &[u64]) -> Result<Vec<u64>> {
        let e = self.e;
        let raw = self
            .class_rows
            .iter()
            .zip(&self.pivots)
            .zip(&self.raw_orders)
            .map(|((row, &piv), &ord)| {
                divide(dot(row, v, e), piv, e)
                    .map(|c| c % ord)
                    .ok_or_else(|| {
                        Error::Internal("cocycle outside the computed class group".into())
                    })
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(self.basis.convert(&raw))
    }

    /// Preimage under `d` of a cocycle vector, as a vector in degree `n-1`.
    fn solve(&self, v: &[u64]) -> Option<Vec<u64>> {
        let dim_prev = self.norm_prev.tuples.len() * self.k();
        let x = self.boundary.solve(v)?;
        Some(reduce_vec(&x[..dim_prev], &self.moduli))
    }
}

fn reduce_vec(v: &[u64], moduli: &[u64]) -> Vec<u64> {
    let k = moduli.len();
    v.iter()
        .enumerate()
        .map(|(i, &x)| x % moduli[i % k])
        .collect()
}

#[derive(Clone, Debug)]
struct CircleCoh {
    m: u64,
    big: FiniteCoh,
    span_rows: Vec<Vec<u64>>,
    span_pivots: Vec<u64>,
    raw_orders: Vec<u64>,
    embed_modulus: u64,
    big_factors: Vec<u64>,
    basis: InvariantBasis,
}

#[derive(Clone, Debug)]
enum Inner {
    Finite(Box<FiniteCoh>),
    Circle(Box<CircleCoh>),
}

/// A computed cohomology group with its classification data.
#[derive(Clone, Debug)]
pub struct CohomologyGroup {
    group: FiniteGroup,
    module: AbelianCoefficients,
    degree: usize,
    invariant_factors: Vec<u64>,
    representatives: Vec<Cochain>,
    budget: Budget,
    inner: Inner,
}

/// Computes `H^n(Γ, M)` for `1 <= n <= 4`.
pub fn cohomology(
    group: &FiniteGroup,
    module: &AbelianCoefficients,
    degree: usize,
    budget: &Budget,
) -> Result<CohomologyGroup> {
    if !(1..=4).contains(&degree) {
        return Err(Error::UnsupportedDegree(degree));
    }
    module.validate(group)?;
    match module.kind {
        CoefficientKind::FiniteAbelian => {
            let fc = FiniteCoh::new(group, &module.view(1), degree, budget)?;
            let representatives = fc
                .generators
                .iter()
                .map(|v| fc.cochain(group, module, v, degree, 1))
                .collect();
            Ok(CohomologyGroup {
                group: group.clone(),
                module: module.clone(),
                degree,
                invariant_factors: fc.basis.factors.clone(),
                representatives,
                budget: *budget,
                inner: Inner::Finite(Box::new(fc)),
            })
        }
        CoefficientKind::RationalCircle => {
            let m = group.order() as u64;
            let small = FiniteCoh::new(group, &module.view(m), degree, budget)?;
            let big = FiniteCoh::new(group, &module.view(m * m), degree, budget)?;
            let big_factors = big.basis.factors.clone();
            let embed_modulus = big_factors.iter().fold(1u64, |a, &f| a.lcm(&f));
            let mut t = ModMatrix::zeros(
                big_factors.len().max(1),
                small.generators.len().max(1),
                embed_modulus,
            );
            for (col, g) in small.generators.iter().enumerate() {
                let lifted: Vec<u64> = g.iter().map(|x| x * m).collect();
                let y = big.coords(&lifted)?;
                for (i, (&yi, &f)) in y.iter().zip(&big_factors).enumerate() {
                    t.set(i, col, yi * (embed_modulus / f));
                }
            }
            let span = SpanDecomposition::new(&t);
            let raw_generators: Vec<Vec<u64>> = span
                .combos
                .iter()
                .map(|combo| {
                    let coeffs: Vec<i64> = combo.iter().map(|&x| x as i64).collect();
                    combine(&small.generators, &coeffs, small.norm.tuples.len(), m)
                })
                .collect();
            let basis = InvariantBasis::new(&span.orders)?;
            let generators: Vec<Vec<u64>> = basis
                .back
                .iter()
                .map(|coeffs| combine(&raw_generators, coeffs, small.norm.tuples.len(), m))
                .collect();
            let representatives = generators
                .iter()
                .map(|v| small.cochain(group, module, v, degree, m).reduced_denom())
                .collect();
            let cc = CircleCoh {
                m,
                big,
                span_rows: span.rows().to_vec(),
                span_pivots: span.pivots().to_vec(),
                raw_orders: span.orders.clone(),
                embed_modulus,
                big_factors,
                basis: basis.clone(),
            };
            Ok(CohomologyGroup {
                group: group.clone(),
                module: module.clone(),
                degree,
                invariant_factors: basis.factors,
                representatives,
                budget: *budget,
                inner: Inner::Circle(Box::new(cc)),
            })
        }
    }
}

impl CohomologyGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn module(&self) -> &AbelianCoefficients {
        &self.module
    }

    /// `d_1 | d_2 | ... | d_k`, all greater than one. Empty for the zero group.
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// One normalized cocycle per invariant factor.
    pub fn representatives(&self) -> &[Cochain] {
        &self.representatives
    }

    pub fn order(&self) -> u128 {
        self.invariant_factors.iter().map(|&d| d as u128).product()
    }

    /// Every coordinate vector, in lexicographic order.
    pub fn all_coordinates(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// The cocycle `Σ c_i · rep_i`.
    pub fn representative(&self, coords: &[u64]) -> Result<Cochain> {
        if coords.len() != self.invariant_factors.len() {
            return input("coordinate vector has the wrong length");
        }
        let mut acc = Cochain::zero(&self.group, &self.module, self.degree);
        for (rep, &c) in self.representatives.iter().zip(coords) {
            acc = acc.add(&rep.scale(c))?;
        }
        Ok(acc.reduced_denom())
    }

    fn ensure_cocycle(&self, z: &Cochain) -> Result<()> {
        if z.degree() != self.degree {
            return input(format!(
                "expected a {}-cochain, got degree {}",
                self.degree,
                z.degree()
            ));
        }
        if !bar_differential(&self.group, &self.module, z)?.is_zero() {
            return Err(Error::NotCocycle(format!(
                "degree-{} cochain has nonzero coboundary",
                self.degree
            )));
        }
        Ok(())
    }

    /// Coordinates of the class of a normalized cocycle.
    pub fn classify(&self, z: &Cochain) -> Result<Vec<u64>> {
        self.ensure_cocycle(z)?;
        let id = self.group.identity();
        match &self.inner {
            Inner::Finite(fc) => fc.coords(&fc.vector(z, id)?),
            Inner::Circle(cc) => {
                let z = z.reduced_denom();
                let n = z.denom();
                if cc.m % n == 0 {
                    let lifted = z.with_denom(cc.m * cc.m)?;
                    cc.coords_in_big(&cc.big.vector(&lifted, id)?)
                } else {
                    self.classify_circle_general(&z)
                }
            }
        }
    }

    fn classify_circle_general(&self, z: &Cochain) -> Result<Vec<u64>> {
        let Inner::Circle(cc) = &self.inner else {
            unreachable!()
        };
        let id = self.group.identity();
        let level = z.denom().lcm(&cc.m) * cc.m;
        let fc = FiniteCoh::new(
            &self.group,
            &self.module.view(level),
            self.degree,
            &self.budget,
        )?;
        let target = fc.coords(&fc.vector(&z.with_denom(level)?, id)?)?;
        let reps: Vec<Vec<u64>> = self
            .representatives
            .iter()
            .map(|r| fc.coords(&fc.vector(&r.with_denom(level)?, id)?))
            .collect::<Result<_>>()?;
        check_budget("circle class search", self.order(), 1_000_000)?;
        let f = &fc.basis.factors;
        for coords in self.all_coordinates() {
            let mut acc = vec![0u64; f.len()];
            for (rep, &c) in reps.iter().zip(&coords) {
                for (i, slot) in acc.iter_mut().enumerate() {
                    *slot = (*slot + c * rep[i]) % f[i];
                }
            }
            if acc == target {
                return Ok(coords);
            }
        }
        Err(Error::Internal(
            "circle class not found among the computed classes".into(),
        ))
    }

    pub fn is_zero_class(&self, z: &Cochain) -> Result<bool> {
        Ok(self.classify(z)?.iter().all(|&c| c == 0))
    }

    /// A normalized `(n-1)`-cochain `w` with `dw = z`, if `z` bounds.
    pub fn is_coboundary(&self, z: &Cochain) -> Result<Option<Cochain>> {
        self.ensure_cocycle(z)?;
        let id = self.group.identity();
        match &self.inner {
            Inner::Finite(fc) => {
                let v = fc.vector(z, id)?;
                Ok(fc
                    .solve(&v)
                    .map(|w| fc.cochain(&self.group, &self.module, &w, self.degree - 1, 1)))
            }
            Inner::Circle(cc) => {
                let z = z.reduced_denom();
                // a bound at level d·m is also one at level m² when d | m
                let big = cc.m * cc.m;
                let level = if big % (z.denom() * cc.m) == 0 {
                    big
                } else {
                    z.denom() * cc.m
                };
                let owned;
                let fc = if level == big {
                    &cc.big
                } else {
                    owned = FiniteCoh::new(
                        &self.group,
                        &self.module.view(level),
                        self.degree,
                        &self.budget,
                    )?;
                    &owned
                };
                let v = fc.vector(&z.with_denom(level)?, id)?;
                Ok(fc.solve(&v).map(|w| {
                    fc.cochain(&self.group, &self.module, &w, self.degree - 1, level)
                        .reduced_denom()
                }))
            }
        }
    }
}

impl CircleCoh {
    fn coords_in_big(&self, v: &[u64]) -> Result<Vec<u64>> {
        let y = self.big.coords(v)?;
        let e = self.embed_modulus;
        let embedded: Vec<u64> = if y.is_empty() {
            vec![0]
        } else {
            y.iter()
                .zip(&self.big_factors)
                .map(|(&yi, &f)| yi * (e / f) % e)
                .collect()
        };
        let raw = self
            .span_rows
            .iter()
            .zip(&self.span_pivots)
            .zip(&self.raw_orders)
            .map(|((row, &piv), &ord)| {
                divide(dot(row, &embedded, e), piv, e)
                    .map(|c| c % ord)
                    .ok_or_else(|| Error::Internal("circle class outside the image".into()))
            })
            .collect::<Result<Vec<u64>>>()?;
        Ok(self.basis.convert(&raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n)
    }

    #[test]
    fn cyclic_groups_with_cyclic_coefficients() {
        let b = Budget::default();
        // H^n(Z/4, Z/2) = Z/2 in every positive degree
        for n in 1..=4 {
            let h = cohomology(&z(4), &AbelianCoefficients::finite(&[2]), n, &b).unwrap();
            assert_eq!(h.invariant_factors(), &[2], "degree {n}");
        }
        // H^2(Z/6, Z/4) = Z/gcd(6,4)
        let h = cohomology(&z(6), &AbelianCoefficients::finite(&[4]), 2, &b).unwrap();
        assert_eq!(h.invariant_factors(), &[2]);
    }

    #[test]
    fn klein_four_degree_two() {
        let v = FiniteGroup::product(&z(2), &z(2));
        let h = cohomology(
            &v,
            &AbelianCoefficients::finite(&[2]),
            2,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(h.invariant_factors(), &[2, 2, 2]);
        let h1 = cohomology(
            &v,
            &AbelianCoefficients::finite(&[2]),
            1,
            &Budget::default(),
        )
        .unwrap();
        assert_eq!(h1.invariant_factors(), &[2, 2]);
    }

    #[test]
    fn circle_coefficients_shift_integral_cohomology() {
        let b = Budget::default();
        for n in 2..=4 {
            let h2 = cohomology(&z(n), &AbelianCoefficients::circle(), 2, &b).unwrap();
            assert!(h2.invariant_factors().is_empty());
            let h3 = cohomology(&z(n), &AbelianCoefficients::circle(), 3, &b).unwrap();
            assert_eq!(h3.invariant_factors(), &[n as u64]);
        }
        let v = FiniteGroup::product(&z(2), &z(2));
        let h2 = cohomology(&v, &AbelianCoefficients::circle(), 2, &b).unwrap();
        assert_eq!(h2.invariant_factors(), &[2]);
    }

    #[test]
    fn twisted_coefficients() {
        // Z/2 acting on Z/4 by inversion: H^1 = {x : x + (-x)... } crossed homs, H^2 = Z/2
        let g = z(2);
        let m = AbelianCoefficients::finite_with_action(
            &[4],
            vec![vec![vec![1]], vec![vec![-1]]],
            "Z4(-)",
        );
        let h1 = cohomology(&g, &m, 1, &Budget::default()).unwrap();
        let h2 = cohomology(&g, &m, 2, &Budget::default()).unwrap();
        assert_eq!(h1.invariant_factors(), &[2]);
        assert_eq!(h2.invariant_factors(), &[2]);
    }

    #[test]
    fn classify_and_bound() {
        let g = z(2);
        let m = AbelianCoefficients::finite(&[2]);
        let h = cohomology(&g, &m, 2, &Budget::default()).unwrap();
        let c = Cochain::from_fn(&g, &m, 2, 1, |t| vec![(t[0] * t[1]) as u64]);
        assert_eq!(h.classify(&c).unwrap(), vec![1]);
        assert!(h.is_coboundary(&c).unwrap().is_none());
        let zero = Cochain::zero(&g, &m, 2);
        let w = h.is_coboundary(&zero).unwrap().unwrap();
        assert!(bar_differential(&g, &m, &w).unwrap().is_zero());
    }

    #[test]
    fn circle_classes_with_foreign_denominators() {
        let g = z(2);
        let m = AbelianCoefficients::circle();
        let h = cohomology(&g, &m, 2, &Budget::default()).unwrap();
        // 1/4 on (1,1) is the coboundary of w(1) = 1/8 ... it bounds since H^2 = 0
        let c = Cochain::from_fn(&g, &m, 2, 4, |t| vec![(t[0] * t[1]) as u64]);
        assert_eq!(h.classify(&c).unwrap(), Vec::<u64>::new());
        let w = h.is_coboundary(&c).unwrap().unwrap();
        assert_eq!(
            bar_differential(&g, &m, &w).unwrap().reduced_denom(),
            c.reduced_denom()
        );
    }
}
