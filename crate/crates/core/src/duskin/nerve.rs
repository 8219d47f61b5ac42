use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::{build, codegeneracy, coface, IdentityViolation, Nerve, SimplexModel, SimplicialMap};
use crate::budget::Budget;
use crate::error::{check_budget, Result};
use crate::grpcore::FiniteGroup;
use crate::xmod::CrossedModule;

/// A strictly unital pseudofunctor `[n] -> 𝒢`.
///
/// `alpha` is a dense `(n+1)²` table and `u` a dense `(n+1)³` table; entries
/// whose indices are not strictly increasing hold the identity, which makes
/// every structure map a plain index action.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PSimplex {
    pub n: usize,
    alpha: Vec<u32>,
    u: Vec<u32>,
}

impl PSimplex {
    pub fn identity(n: usize, x: &CrossedModule) -> Self {
        PSimplex {
            n,
            alpha: vec![x.g().identity() as u32; (n + 1) * (n + 1)],
            u: vec![x.h().identity() as u32; (n + 1) * (n + 1) * (n + 1)],
        }
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> usize {
        self.alpha[i * (self.n + 1) + j] as usize
    }

    #[inline]
    pub fn u(&self, i: usize, j: usize, k: usize) -> usize {
        let m = self.n + 1;
        self.u[(i * m + j) * m + k] as usize
    }

    #[inline]
    pub fn set_a(&mut self, i: usize, j: usize, v: usize) {
        self.alpha[i * (self.n + 1) + j] = v as u32;
    }

    #[inline]
    pub fn set_u(&mut self, i: usize, j: usize, k: usize, v: usize) {
        let m = self.n + 1;
        self.u[(i * m + j) * m + k] = v as u32;
    }

    /// The pullback along a monotone `θ: [theta.len()-1] -> [n]`.
    pub fn act(&self, theta: &[usize]) -> PSimplex {
        let n = theta.len() - 1;
        let m = n + 1;
        let mut alpha = vec![0; m * m];
        let mut u = vec![0; m * m * m];
        for i in 0..m {
            for j in 0..m {
                alpha[i * m + j] = self.alpha[theta[i] * (self.n + 1) + theta[j]];
                for k in 0..m {
                    let s = self.n + 1;
                    u[(i * m + j) * m + k] = self.u[(theta[i] * s + theta[j]) * s + theta[k]];
                }
            }
        }
        PSimplex { n, alpha, u }
    }

    pub fn face(&self, i: usize) -> PSimplex {
        let theta: Vec<usize> = (0..self.n).map(|r| coface(i, r)).collect();
        self.act(&theta)
    }

    pub fn degeneracy(&self, j: usize) -> PSimplex {
        let theta: Vec<usize> = (0..self.n + 2).map(|r| codegeneracy(j, r)).collect();
        self.act(&theta)
    }

    /// The first failing relation, as a name and its vertex indices.
    pub fn violation(&self, x: &CrossedModule) -> Option<(&'static str, Vec<usize>)> {
        let (g, h) = (x.g(), x.h());
        let n = self.n;
        for i in 0..=n {
            if self.a(i, i) != g.identity() {
                return Some(("unit", vec![i]));
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    if g.mul(self.a(i, j), self.a(j, k))
                        != g.mul(x.bd(self.u(i, j, k)), self.a(i, k))
                    {
                        return Some(("composition", vec![i, j, k]));
                    }
                    for l in k + 1..=n {
                        let lhs = h.mul(x.act(self.a(i, j), self.u(j, k, l)), self.u(i, j, l));
                        let rhs = h.mul(self.u(i, j, k), self.u(i, k, l));
                        if lhs != rhs {
                            return Some(("associativity", vec![i, j, k, l]));
                        }
                    }
                }
            }
        }
        None
    }

    /// The edges `α_{i,i+1}`.
    pub fn spine(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.a(i, i + 1)).collect()
    }
}

impl Serialize for PSimplex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.n;
        let alpha: Vec<Vec<usize>> = (0..=n)
            .map(|i| (i + 1..=n).map(|j| self.a(i, j)).collect())
            .collect();
        let mut u = Vec::new();
        for i in 0..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    u.push([i, j, k, self.u(i, j, k)]);
                }
            }
        }
        let mut st = s.serialize_struct("PSimplex", 3)?;
        st.serialize_field("n", &n)?;
        st.serialize_field("alpha", &alpha)?;
        st.serialize_field("u", &u)?;
        st.end()
    }
}

/// A natural transformation between pseudofunctors `[n] -> 𝒢`, identity on objects.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NatTransform {
    pub source: PSimplex,
    pub target: PSimplex,
    #[serde(skip)]
    w: Vec<u32>,
}

impl NatTransform {
    /// The identity transformation of `x`.
    pub fn identity(x: &PSimplex, xm: &CrossedModule) -> Self {
        NatTransform {
            source: x.clone(),
            target: x.clone(),
            w: vec![xm.h().identity() as u32; (x.n + 1) * (x.n + 1)],
        }
    }

    /// A transformation with the given endpoints and components, unchecked.
    pub fn new(
        source: PSimplex,
        target: PSimplex,
        xm: &CrossedModule,
        w: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = source.n;
        let mut t = NatTransform::identity(&source, xm);
        t.target = target;
        for i in 0..=n {
            for j in i + 1..=n {
                t.w[i * (n + 1) + j] = w(i, j) as u32;
            }
        }
        t
    }

    /// Components `w_{ij}` for `i < j`, row by row.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.source.n;
        (0..=n)
            .map(|i| (i + 1..=n).map(|j| self.w(i, j)).collect())
            .collect()
    }

    /// The transformation out of `source` with components `w`, target forced.
    pub fn from_components(
        source: &PSimplex,
        xm: &CrossedModule,
        w: impl Fn(usize, usize) -> usize,
    ) -> Self {
        let n = source.n;
        let (g, h) = (xm.g(), xm.h());
        let mut t = NatTransform::identity(source, xm);
        for i in 0..=n {
            for j in i + 1..=n {
                t.w[i * (n + 1) + j] = w(i, j) as u32;
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                t.target
                    .set_a(i, j, g.mul(xm.bd(t.w(i, j)), source.a(i, j)));
            }
        }
        for i in 0..=n {
            for j in i + 1..=n {
                for k in j + 1..=n {
                    let lhs = h.mul(
                        h.mul(t.w(i, j), xm.act(source.a(i, j), t.w(j, k))),
                        source.u(i, j, k),
                    );
                    t.target.set_u(i, j, k, h.mul(lhs, h.inv(t.w(i, k))));
                }
            }
        }
        t
    }

    #[inline]
    pub fn w(&self, i: usize, j: usize) -> usize {
        self.w[i * (self.source.n + 1) + j] as usize
    }

    pub fn act(&self, theta: &[usize]) -> NatTransform {
        let n = theta.len() - 1;
        let s = self.source.n + 1;
        let mut w = vec![0; (n + 1) * (n + 1)];
        for i in 0..=n {
            for j in 0..=n {
                w[i * (n + 1) + j] = self.w[theta[i] * s + theta[j]];
            }
        }
        NatTransform {
            source: self.source.act(theta),
            target: self.target.act(theta),
            w,
        }
    }

    pub fn face(&self, i: usize) -> NatTransform {
        let theta: Vec<usize> = (0..self.source.n).map(|r| coface(i, r)).collect();
        self.act(&theta)
    }

    pub fn degeneracy(&self, j: usize) -> NatTransform {
        let theta: Vec<usize> = (0..self.source.n + 2).map(|r| codegeneracy(j, r)).collect();
        self.act(&theta)
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &NatTransform, xm: &CrossedModule) -> NatTransform {
        let h = xm.h();
        let mut w = self.w.clone();
        for (a, b) in w.iter_mut().zip(&next.w) {
            *a = h.mul(*b as usize, *a as usize) as u32;
        }
        NatTransform {
            source: self.source.clone(),
            target: next.target.clone(),
            w,
        }
    }

    /// The first failing naturality relation.
    pub fn violation(&self, xm: &CrossedModule) -> Option<(&'static str, Vec<usize>)> {
        let (g, h) = (xm.g(), xm.h());
        let (x0, x1) = (&self.source, &self.target);
        let n = x0.n;
        if x1.n != n {
            return Some(("dimension", vec![]));
        }
        for i in 0..=n {
            if self.w(i, i) != h.identity() {
                return Some(("unit", vec![i]));
            }
            for j in i + 1..=n {
                if x1.a(i, j) != g.mul(xm.bd(self.w(i, j)), x0.a(i, j)) {
                    return Some(("boundary", vec![i, j]));
                }
                for k in j + 1..=n {
                    let lhs = h.mul(
                        h.mul(self.w(i, j), xm.act(x0.a(i, j), self.w(j, k))),
                        x0.u(i, j, k),
                    );
                    if lhs != h.mul(x1.u(i, j, k), self.w(i, k)) {
                        return Some(("naturality", vec![i, j, k]));
                    }
                }
            }
        }
        None
    }
}

struct OrdinaryModel<'a> {
    g: &'a FiniteGroup,
}

impl SimplexModel for OrdinaryModel<'_> {
    type Simplex = Vec<usize>;

    fn simplices(
        &self,
        k: usize,
        lower: &[Vec<usize>],
        _budget: &Budget,
    ) -> Result<Vec<Vec<usize>>> {
        if k == 0 {
            return Ok(vec![Vec::new()]);
        }
        let mut out = Vec::with_capacity(lower.len() * self.g.order());
        for s in lower {
            for a in self.g.elements() {
                let mut t = s.clone();
                t.push(a);
                out.push(t);
            }
        }
        Ok(out)
    }

    fn face(&self, s: &Vec<usize>, i: usize) -> Vec<usize> {
        let k = s.len();
        let mut t = s.clone();
        if i == 0 {
            t.remove(0);
        } else if i == k {
            t.pop();
        } else {
            t[i - 1] = self.g.mul(s[i - 1], s[i]);
            t.remove(i);
        }
        t
    }

    fn degeneracy(&self, s: &Vec<usize>, j: usize) -> Vec<usize> {
        let mut t = s.clone();
        t.insert(j, self.g.identity());
        t
    }
}

/// The nerve of `g` through dimension `n`; `k`-simplices are `k`-tuples.
pub fn ordinary_nerve(g: &FiniteGroup, n: usize, budget: &Budget) -> Result<Nerve<Vec<usize>>> {
    check_budget(
        &format!("{n}-simplices of the nerve"),
        (g.order() as u128).saturating_pow(n as u32),
        budget.simplices,
    )?;
    build(&OrdinaryModel { g }, n, budget)
}

struct DuskinModel<'a> {
    x: &'a CrossedModule,
}

impl SimplexModel for DuskinModel<'_> {
    type Simplex = PSimplex;

    fn simplices(&self, k: usize, lower: &[PSimplex], budget: &Budget) -> Result<Vec<PSimplex>> {
        let x = self.x;
        let (g, h) = (x.g(), x.h());
        if k == 0 {
            return Ok(vec![PSimplex::identity(0, x)]);
        }
        let per =
            (g.order() as u128).saturating_mul((h.order() as u128).saturating_pow(k as u32 - 1));
        check_budget(
            &format!("{k}-simplex candidates"),
            per.saturating_mul(lower.len() as u128),
            budget.enumeration,
        )?;
        let mut out = Vec::new();
        for y in lower {
            let mut s = PSimplex::identity(k, x);
            for i in 0..k {
                for j in i + 1..k {
                    s.set_a(i, j, y.a(i, j));
                    for l in j + 1..k {
                        s.set_u(i, j, l, y.u(i, j, l));
                    }
                }
            }
            for a in g.elements() {
                s.set_a(k - 1, k, a);
                extend(x, &mut s, k, k as isize - 2, &mut out);
            }
            check_budget(
                &format!("{k}-simplices"),
                out.len() as u128,
                budget.simplices,
            )?;
        }
        Ok(out)
    }

    fn face(&self, s: &PSimplex, i: usize) -> PSimplex {
        s.face(i)
    }

    fn degeneracy(&self, s: &PSimplex, j: usize) -> PSimplex {
        s.degeneracy(j)
    }
}

/// Chooses `u_{i,k-1,k}` for `i` from `i` down to 0, deriving `α_{ik}` and
/// the remaining `u_{ijk}`, and keeps the completed simplex if every
/// relation through vertex `k` holds.
fn extend(x: &CrossedModule, s: &mut PSimplex, k: usize, i: isize, out: &mut Vec<PSimplex>) {
    let (g, h) = (x.g(), x.h());
    if i < 0 {
        if relations_through_last(x, s, k) {
            out.push(s.clone());
        }
        return;
    }
    let i = i as usize;
    for v in h.elements() {
        s.set_u(i, k - 1, k, v);
        let a = g.mul(g.inv(x.bd(v)), g.mul(s.a(i, k - 1), s.a(k - 1, k)));
        s.set_a(i, k, a);
        for j in i + 1..k - 1 {
            let inner = h.inv(x.act(s.a(i, j), s.u(j, k - 1, k)));
            s.set_u(i, j, k, h.mul(inner, h.mul(s.u(i, j, k - 1), v)));
        }
        extend(x, s, k, i as isize - 1, out);
    }
}

fn relations_through_last(x: &CrossedModule, s: &PSimplex, k: usize) -> bool {
    let (g, h) = (x.g(), x.h());
    for i in 0..k {
        for j in i + 1..k {
            if g.mul(s.a(i, j), s.a(j, k)) != g.mul(x.bd(s.u(i, j, k)), s.a(i, k)) {
                return false;
            }
            for l in j + 1..k {
                let lhs = h.mul(x.act(s.a(i, j), s.u(j, l, k)), s.u(i, j, k));
                if lhs != h.mul(s.u(i, j, l), s.u(i, l, k)) {
                    return false;
                }
            }
        }
    }
    true
}

/// The Duskin nerve of `x` through dimension `n`.
pub fn duskin_nerve(x: &CrossedModule, n: usize, budget: &Budget) -> Result<Nerve<PSimplex>> {
    build(&DuskinModel { x }, n, budget)
}

/// An element of the diagonal of the bisimplicial monoidal nerve in
/// dimension `k`: `k` slots, each a start object in `G` followed by `k`
/// morphisms in `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct DiagSimplex {
    pub k: usize,
    pub slots: Vec<Vec<u32>>,
}

struct DiagModel<'a> {
    x: &'a CrossedModule,
}

impl DiagModel<'_> {
    fn target(&self, start: u32, u: u32) -> u32 {
        self.x.g().mul(self.x.bd(u as usize), start as usize) as u32
    }

    /// Vertical face on one slot: drop or compose steps of the chain.
    fn vface(&self, slot: &[u32], i: usize) -> Vec<u32> {
        let m = slot.len() - 1;
        let mut t = slot.to_vec();
        if i == 0 {
            t[0] = self.target(slot[0], slot[1]);
            t.remove(1);
        } else if i == m {
            t.pop();
        } else {
            t[i] = self.x.h().mul(slot[i + 1] as usize, slot[i] as usize) as u32;
            t.remove(i + 1);
        }
        t
    }

    /// The horizontal composite of two slots with equally many steps.
    fn tensor(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let (g, h) = (self.x.g(), self.x.h());
        let mut out = Vec::with_capacity(a.len());
        out.push(g.mul(a[0] as usize, b[0] as usize) as u32);
        let mut oa = a[0];
        for r in 1..a.len() {
            out.push(h.mul(a[r] as usize, self.x.act(oa as usize, b[r] as usize)) as u32);
            oa = self.target(oa, a[r]);
        }
        out
    }
}

impl SimplexModel for DiagModel<'_> {
    type Simplex = DiagSimplex;

    fn simplices(
        &self,
        k: usize,
        _lower: &[DiagSimplex],
        budget: &Budget,
    ) -> Result<Vec<DiagSimplex>> {
        let (g, h) = (self.x.g(), self.x.h());
        let per_slot =
            (g.order() as u128).saturating_mul((h.order() as u128).saturating_pow(k as u32));
        check_budget(
            &format!("diagonal {k}-simplices"),
            per_slot.saturating_pow(k as u32),
            budget.simplices,
        )?;
        let mut slots: Vec<Vec<u32>> = vec![Vec::new()];
        for _ in 0..=k {
            slots = slots
                .into_iter()
                .flat_map(|s| {
                    let len = s.len();
                    let range = if len == 0 { g.order() } else { h.order() };
                    (0..range).map(move |v| {
                        let mut t = s.clone();
                        t.push(v as u32);
                        t
                    })
                })
                .collect();
        }
        let mut out: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|s| {
                    slots.iter().map(move |slot| {
                        let mut t = s.clone();
                        t.push(slot.clone());
                        t
                    })
                })
                .collect();
        }
        Ok(out
            .into_iter()
            .map(|slots| DiagSimplex { k, slots })
            .collect())
    }

    fn face(&self, s: &DiagSimplex, i: usize) -> DiagSimplex {
        let k = s.k;
        let vert: Vec<Vec<u32>> = s.slots.iter().map(|slot| self.vface(slot, i)).collect();
        let slots = if i == 0 {
            vert[1..].to_vec()
        } else if i == k {
            vert[..k - 1].to_vec()
        } else {
            let mut t = vert[..i - 1].to_vec();
            t.push(self.tensor(&vert[i - 1], &vert[i]));
            t.extend_from_slice(&vert[i + 1..]);
            t
        };
        DiagSimplex { k: k - 1, slots }
    }

    fn degeneracy(&self, s: &DiagSimplex, j: usize) -> DiagSimplex {
        let eh = self.x.h().identity() as u32;
        let mut slots: Vec<Vec<u32>> = s
            .slots
            .iter()
            .map(|slot| {
                let mut t = slot.clone();
                t.insert(j + 1, eh);
                t
            })
            .collect();
        let mut unit = vec![eh; s.k + 2];
        unit[0] = self.x.g().identity() as u32;
        slots.insert(j, unit);
        DiagSimplex { k: s.k + 1, slots }
    }
}

/// The diagonal of the bisimplicial set `(m, n) ↦ N_m((𝒢_⊗)ⁿ)` through
/// dimension `n`.
pub fn monoidal_diag_nerve(
    x: &CrossedModule,
    n: usize,
    budget: &Budget,
) -> Result<Nerve<DiagSimplex>> {
    build(&DiagModel { x }, n, budget)
}

/// Outcome of comparing the Duskin nerve of `(1 → G)` with the nerve of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub counts: Vec<usize>,
    pub bijective: bool,
    pub violation: Option<IdentityViolation>,
}

impl IsomorphismReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.violation.is_none()
    }
}

/// The spine projection `N^D(1 → G) -> N(G)`, checked to be a bijection in
/// every dimension that commutes with all faces and degeneracies.
pub fn ordinary_to_duskin_isomorphism(
    g: &FiniteGroup,
    n: usize,
    budget: &Budget,
) -> Result<IsomorphismReport> {
    let x = CrossedModule::of_group(g.clone());
    let dn = duskin_nerve(&x, n, budget)?;
    let on = ordinary_nerve(g, n, budget)?;
    let mut bijective = dn.set.counts == on.set.counts;
    let mut maps = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut hit = vec![false; on.set.counts[k]];
        let mut map = Vec::with_capacity(dn.set.counts[k]);
        for s in &dn.simplices[k] {
            match on.index_of(k, &s.spine()) {
                Some(y) => {
                    bijective &= !std::mem::replace(&mut hit[y], true);
                    map.push(y);
                }
                None => {
                    bijective = false;
                    map.push(0);
                }
            }
        }
        bijective &= hit.iter().all(|&b| b);
        maps.push(map);
    }
    let violation = SimplicialMap { maps }.violation(&dn.set, &on.set);
    Ok(IsomorphismReport {
        counts: dn.set.counts.clone(),
        bijective,
        violation,
    })
}
