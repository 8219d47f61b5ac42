//! Inhomogeneous cochains `Γ^n -> M` and the bar differential.

use num_integer::Integer;
use num_rational::Ratio;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::error::{input, Error, Result};
use crate::grpcore::coeff::{AbelianCoefficients, CoefficientKind, ModuleView};
use crate::grpcore::group::FiniteGroup;

/// A cochain stored on all of `Γ^n` in lexicographic tuple order.
///
/// Finite-abelian values are coordinate vectors. Circle values are stored
/// as numerators over a common denominator, i.e. in `(1/denom)Z/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    degree: usize,
    group_order: usize,
    kind: CoefficientKind,
    moduli: Vec<u64>,
    data: Vec<u64>,
}

/// Lexicographic index of a tuple.
pub fn tuple_index(tuple: &[usize], order: usize) -> usize {
    tuple.iter().fold(0, |acc, &g| acc * order + g)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(mut idx: usize, degree: usize, order: usize) -> Vec<usize> {
    let mut t = vec![0; degree];
    for slot in t.iter_mut().rev() {
        *slot = idx % order;
        idx /= order;
    }
    t
}

pub fn tuple_count(order: usize, degree: usize) -> Result<usize> {
    order
        .checked_pow(degree as u32)
        .ok_or_else(|| Error::Input("cochain space too large".into()))
}

impl Cochain {
    pub fn zero(group: &FiniteGroup, module: &AbelianCoefficients, degree: usize) -> Self {
        let moduli = match module.kind {
            CoefficientKind::FiniteAbelian => module.factors.clone(),
            CoefficientKind::RationalCircle => vec![1],
        };
        let len = group.order().pow(degree as u32) * moduli.len();
        Cochain {
            degree,
            group_order: group.order(),
            kind: module.kind,
            moduli,
            data: vec![0; len],
        }
    }

    /// A cochain valued in `view` (finite) or `(1/denom)Z/Z` (circle).
    pub fn from_fn(
        group: &FiniteGroup,
        module: &AbelianCoefficients,
        degree: usize,
        denom: u64,
        mut f: impl FnMut(&[usize]) -> Vec<u64>,
    ) -> Self {
        let view = module.view(denom);
        let n = group.order();
        let count = n.pow(degree as u32);
        let mut data = Vec::with_capacity(count * view.rank());
        for idx in 0..count {
            let t = index_tuple(idx, degree, n);
            let mut v = f(&t);
            assert_eq!(v.len(), view.rank());
            view.reduce(&mut v);
            data.extend(v);
        }
        Cochain {
            degree,
            group_order: n,
            kind: module.kind,
            moduli: view.moduli,
            data,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn kind(&self) -> CoefficientKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    /// Denominator of a circle cochain.
    pub fn denom(&self) -> u64 {
        match self.kind {
            CoefficientKind::RationalCircle => self.moduli[0],
            CoefficientKind::FiniteAbelian => 1,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn raw(&self) -> &[u64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len() / self.rank().max(1)
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn get(&self, tuple: &[usize]) -> &[u64] {
        let k = self.rank();
        let i = tuple_index(tuple, self.group_order);
        &self.data[i * k..(i + 1) * k]
    }

    pub fn get_index(&self, idx: usize) -> &[u64] {
        let k = self.rank();
        &self.data[idx * k..(idx + 1) * k]
    }

    pub fn set(&mut self, tuple: &[usize], value: &[u64]) {
        let k = self.rank();
        let i = tuple_index(tuple, self.group_order);
        for (slot, (&v, &d)) in self.data[i * k..(i + 1) * k]
            .iter_mut()
            .zip(value.iter().zip(&self.moduli))
        {
            *slot = v % d;
        }
    }

    /// Value of a circle cochain as a reduced fraction in `[0, 1)`.
    pub fn circle_value(&self, tuple: &[usize]) -> Ratio<i64> {
        Ratio::new(self.get(tuple)[0] as i64, self.moduli[0] as i64)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Zero whenever some entry of the tuple is the identity.
    pub fn is_normalized(&self, identity: usize) -> bool {
        let k = self.rank();
        (0..self.len()).all(|idx| {
            let t = index_tuple(idx, self.degree, self.group_order);
            !t.contains(&identity) || self.data[idx * k..(idx + 1) * k].iter().all(|&x| x == 0)
        })
    }

    /// The same circle cochain over a multiple of its denominator.
    pub fn with_denom(&self, denom: u64) -> Result<Self> {
        if self.kind != CoefficientKind::RationalCircle {
            return input("only circle cochains have a denominator");
        }
        let old = self.moduli[0];
        if !denom.is_multiple_of(old) {
            return input(format!("{denom} is not a multiple of {old}"));
        }
        let s = denom / old;
        Ok(Cochain {
            moduli: vec![denom],
            data: self.data.iter().map(|x| x * s).collect(),
            ..self.clone()
        })
    }

    /// Shrinks a circle cochain to the smallest denominator that represents it.
    pub fn reduced_denom(&self) -> Self {
        if self.kind != CoefficientKind::RationalCircle {
            return self.clone();
        }
        let d = self.moduli[0];
        let g = self.data.iter().fold(d, |acc, &x| acc.gcd(&x));
        Cochain {
            moduli: vec![d / g],
            data: self.data.iter().map(|x| x / g).collect(),
            ..self.clone()
        }
    }

    fn aligned(&self, other: &Self) -> Result<(Self, Self)> {
        if self.degree != other.degree
            || self.group_order != other.group_order
            || self.kind != other.kind
            || (self.kind == CoefficientKind::FiniteAbelian && self.moduli != other.moduli)
        {
            return input("cochains live in different groups");
        }
        if self.kind == CoefficientKind::RationalCircle {
            let l = self.moduli[0].lcm(&other.moduli[0]);
            Ok((self.with_denom(l)?, other.with_denom(l)?))
        } else {
            Ok((self.clone(), other.clone()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (mut a, b) = self.aligned(other)?;
        let k = a.rank();
        for (i, (x, y)) in a.data.iter_mut().zip(&b.data).enumerate() {
            let d = a.moduli[i % k];
            *x = (*x + y) % d;
        }
        Ok(a)
    }

    pub fn neg(&self) -> Self {
        let k = self.rank();
        let mut out = self.clone();
        for (i, x) in out.data.iter_mut().enumerate() {
            let d = self.moduli[i % k];
            *x = (d - *x % d) % d;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: u64) -> Self {
        let k = self.rank();
        let mut out = self.clone();
        for (i, x) in out.data.iter_mut().enumerate() {
            let d = self.moduli[i % k];
            *x = ((*x as u128 * s as u128) % d as u128) as u64;
        }
        out
    }

    fn view(&self, module: &AbelianCoefficients) -> ModuleView {
        module.view(self.denom())
    }

    /// Applies `f` to every value, keeping the degree.
    pub fn map_values(
        &self,
        module: &AbelianCoefficients,
        mut f: impl FnMut(&[u64]) -> Vec<u64>,
    ) -> Self {
        let k = self.rank();
        let view = self.view(module);
        let mut data = Vec::with_capacity(self.data.len());
        for chunk in self.data.chunks(k) {
            let mut v = f(chunk);
            view.reduce(&mut v);
            data.extend(v);
        }
        Cochain {
            data,
            ..self.clone()
        }
    }

    fn check_shape(&self, group: &FiniteGroup, module: &AbelianCoefficients) -> Result<()> {
        if self.group_order != group.order() || self.kind != module.kind {
            return input("cochain does not match the group or module");
        }
        if self.kind == CoefficientKind::FiniteAbelian && self.moduli != module.factors {
            return input("cochain does not match the module factors");
        }
        Ok(())
    }
}

/// `(dc)(g_1..g_{n+1}) = g_1·c(g_2..) + Σ (-1)^i c(..g_i g_{i+1}..) + (-1)^{n+1} c(g_1..g_n)`.
pub fn bar_differential(
    group: &FiniteGroup,
    module: &AbelianCoefficients,
    c: &Cochain,
) -> Result<Cochain> {
    c.check_shape(group, module)?;
    let view = c.view(module);
    let n = c.degree;
    let ord = group.order();
    let out = Cochain::from_fn(group, module, n + 1, c.denom(), |t| {
        let mut acc = view.act(t[0], c.get(&t[1..]));
        let mut merged = Vec::with_capacity(n);
        for i in 1..=n {
            merged.clear();
            merged.extend_from_slice(&t[..i - 1]);
            merged.push(group.mul(t[i - 1], t[i]));
            merged.extend_from_slice(&t[i + 1..]);
            let v = c.get(&merged);
            acc = if i % 2 == 1 {
                view.add(&acc, &view.neg(v))
            } else {
                view.add(&acc, v)
            };
        }
        let last = c.get(&t[..n]);
        if (n + 1) % 2 == 1 {
            view.add(&acc, &view.neg(last))
        } else {
            view.add(&acc, last)
        }
    });
    debug_assert_eq!(out.group_order, ord);
    Ok(out)
}

impl Serialize for Cochain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cochain", 3)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("kind", &self.kind)?;
        match self.kind {
            CoefficientKind::FiniteAbelian => {
                let vals: Vec<&[u64]> = self.data.chunks(self.rank().max(1)).collect();
                st.serialize_field("values", &vals)?;
            }
            CoefficientKind::RationalCircle => {
                let d = self.moduli[0] as i64;
                let vals: Vec<String> = self
                    .data
                    .iter()
                    .map(|&x| {
                        let r = Ratio::new(x as i64, d);
                        format!("{}/{}", r.numer(), r.denom())
                    })
                    .collect();
                st.serialize_field("values", &vals)?;
            }
        }
        st.end()
    }
}
