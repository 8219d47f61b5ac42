//! Crossed modules `∂: H -> G` of finite groups and their morphisms.

mod cocycle;

pub use cocycle::{
    abelian_shift, apply_witness, are_cohomologous, cocycle_violations, compute_h1, enumerate_z1,
    pushforward, u_cochain, witness_holds, AbelianShift, Cocycle1, CocycleViolation, H1Class,
    Witness, H1,
};

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::grpcore::group::{FiniteGroup, GroupHom};

/// A crossed module: a homomorphism `∂: H -> G` and an action of `G` on `H`
/// by automorphisms with `∂(α(u)) = α∂(u)α⁻¹` and `∂(u)(v) = uvu⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "XModJson", into = "XModJson")]
pub struct CrossedModule {
    h: FiniteGroup,
    g: FiniteGroup,
    boundary: Vec<usize>,
    /// `action[a * |H| + u] = a(u)`
    action: Vec<usize>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct XModJson {
    #[serde(rename = "H")]
    h: FiniteGroup,
    #[serde(rename = "G")]
    g: FiniteGroup,
    boundary: Vec<usize>,
    action: Vec<Vec<usize>>,
}

impl TryFrom<XModJson> for CrossedModule {
    type Error = Error;

    fn try_from(j: XModJson) -> Result<Self> {
        let action = j.action.into_iter().flatten().collect();
        CrossedModule::new(j.h, j.g, j.boundary, action)
    }
}

impl From<CrossedModule> for XModJson {
    fn from(x: CrossedModule) -> Self {
        let nh = x.h.order();
        XModJson {
            action: x.action.chunks(nh).map(|r| r.to_vec()).collect(),
            h: x.h,
            g: x.g,
            boundary: x.boundary,
        }
    }
}

/// One failed crossed-module law with its witnessing elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum XModViolation {
    Shape { detail: String },
    BoundaryNotHom { u: usize, v: usize },
    ActionNotAutomorphism { alpha: usize, u: usize, v: usize },
    ActionNotBijective { alpha: usize },
    ActionNotHom { alpha: usize, beta: usize, u: usize },
    Equivariance { alpha: usize, u: usize },
    Peiffer { u: usize, v: usize },
}

/// Checks every crossed-module law on raw tables.
pub fn validate_xmod(
    h: &FiniteGroup,
    g: &FiniteGroup,
    boundary: &[usize],
    action: &[usize],
) -> Vec<XModViolation> {
    let (nh, ng) = (h.order(), g.order());
    if boundary.len() != nh || boundary.iter().any(|&x| x >= ng) {
        return vec![XModViolation::Shape {
            detail: format!("boundary must map {nh} elements into 0..{ng}"),
        }];
    }
    if action.len() != nh * ng || action.iter().any(|&x| x >= nh) {
        return vec![XModViolation::Shape {
            detail: format!("action must be a {ng}x{nh} table with entries below {nh}"),
        }];
    }
    let act = |a: usize, u: usize| action[a * nh + u];
    let bd = |u: usize| boundary[u];
    let mut out = Vec::new();
    for u in h.elements() {
        for v in h.elements() {
            if bd(h.mul(u, v)) != g.mul(bd(u), bd(v)) {
                out.push(XModViolation::BoundaryNotHom { u, v });
            }
        }
    }
    for a in g.elements() {
        let mut seen = vec![false; nh];
        for u in h.elements() {
            seen[act(a, u)] = true;
        }
        if seen.iter().any(|s| !s) {
            out.push(XModViolation::ActionNotBijective { alpha: a });
        }
        for u in h.elements() {
            for v in h.elements() {
                if act(a, h.mul(u, v)) != h.mul(act(a, u), act(a, v)) {
                    out.push(XModViolation::ActionNotAutomorphism { alpha: a, u, v });
                }
            }
        }
    }
    for a in g.elements() {
        for b in g.elements() {
            for u in h.elements() {
                if act(g.mul(a, b), u) != act(a, act(b, u)) {
                    out.push(XModViolation::ActionNotHom {
                        alpha: a,
                        beta: b,
                        u,
                    });
                }
            }
        }
    }
    if h.elements().any(|u| act(g.identity(), u) != u) {
        out.push(XModViolation::ActionNotHom {
            alpha: g.identity(),
            beta: g.identity(),
            u: h.elements()
                .find(|&u| act(g.identity(), u) != u)
                .unwrap_or(0),
        });
    }
    for a in g.elements() {
        for u in h.elements() {
            if bd(act(a, u)) != g.conj(a, bd(u)) {
                out.push(XModViolation::Equivariance { alpha: a, u });
            }
        }
    }
    for u in h.elements() {
        for v in h.elements() {
            if act(bd(u), v) != h.conj(u, v) {
                out.push(XModViolation::Peiffer { u, v });
            }
        }
    }
    out
}

impl CrossedModule {
    pub fn new(
        h: FiniteGroup,
        g: FiniteGroup,
        boundary: Vec<usize>,
        action: Vec<usize>,
    ) -> Result<Self> {
        if let Some(v) = validate_xmod(&h, &g, &boundary, &action).first() {
            return input(format!("not a crossed module: {v:?}"));
        }
        Ok(CrossedModule {
            h,
            g,
            boundary,
            action,
        })
    }

    /// `(H -> 1)` for an abelian `H`.
    pub fn abelian(h: FiniteGroup) -> Result<Self> {
        let nh = h.order();
        Self::new(h, FiniteGroup::trivial(), vec![0; nh], (0..nh).collect())
    }

    /// `(1 -> G)`.
    pub fn of_group(g: FiniteGroup) -> Self {
        let ng = g.order();
        Self::new(FiniteGroup::trivial(), g, vec![0], vec![0; ng])
            .expect("(1 -> G) is a crossed module")
    }

    /// `(G -> G)` by the identity, `G` acting by conjugation.
    pub fn identity(g: FiniteGroup) -> Self {
        let n = g.order();
        let action = (0..n * n).map(|k| g.conj(k / n, k % n)).collect();
        Self::new(g.clone(), g, (0..n).collect(), action).expect("identity crossed module")
    }

    /// Inclusion of a normal subgroup, `G` acting by conjugation.
    pub fn normal_inclusion(g: &FiniteGroup, normal: &[usize], label: &str) -> Result<Self> {
        let (n, incl) = g.subgroup(normal, label)?;
        let pos: std::collections::HashMap<usize, usize> =
            incl.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut action = Vec::with_capacity(g.order() * n.order());
        for a in g.elements() {
            for &x in &incl {
                match pos.get(&g.conj(a, x)) {
                    Some(&k) => action.push(k),
                    None => return input("subgroup is not normal"),
                }
            }
        }
        Self::new(n, g.clone(), incl, action)
    }

    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    #[inline]
    pub fn bd(&self, u: usize) -> usize {
        self.boundary[u]
    }

    #[inline]
    pub fn act(&self, a: usize, u: usize) -> usize {
        self.action[a * self.h.order() + u]
    }

    pub fn boundary_hom(&self) -> GroupHom {
        GroupHom {
            source: self.h.clone(),
            target: self.g.clone(),
            map: self.boundary.clone(),
        }
    }

    /// Elements of `G` in the image of `∂`.
    pub fn boundary_image(&self) -> Vec<bool> {
        let mut im = vec![false; self.g.order()];
        for &x in &self.boundary {
            im[x] = true;
        }
        im
    }

    /// `∂⁻¹(a)` for every `a`, each sorted.
    pub fn fibers(&self) -> Vec<Vec<usize>> {
        let mut f = vec![Vec::new(); self.g.order()];
        for u in self.h.elements() {
            f[self.boundary[u]].push(u);
        }
        f
    }

    pub fn label(&self) -> String {
        format!("({} -> {})", self.h.label(), self.g.label())
    }
}

/// A morphism of crossed modules `(φ1: H -> H', φ2: G -> G')`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XModMorphism {
    pub source: CrossedModule,
    pub target: CrossedModule,
    pub phi1: Vec<usize>,
    pub phi2: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum MorphismViolation {
    Shape { detail: String },
    Phi1NotHom { u: usize, v: usize },
    Phi2NotHom { a: usize, b: usize },
    BoundarySquare { u: usize },
    ActionCompatibility { alpha: usize, u: usize },
}

impl XModMorphism {
    pub fn new(
        source: CrossedModule,
        target: CrossedModule,
        phi1: Vec<usize>,
        phi2: Vec<usize>,
    ) -> Result<Self> {
        let m = XModMorphism {
            source,
            target,
            phi1,
            phi2,
        };
        if let Some(v) = m.violations().first() {
            return input(format!("not a crossed-module morphism: {v:?}"));
        }
        Ok(m)
    }

    pub fn violations(&self) -> Vec<MorphismViolation> {
        let (s, t) = (&self.source, &self.target);
        if self.phi1.len() != s.h.order()
            || self.phi2.len() != s.g.order()
            || self.phi1.iter().any(|&x| x >= t.h.order())
            || self.phi2.iter().any(|&x| x >= t.g.order())
        {
            return vec![MorphismViolation::Shape {
                detail: "component tables do not match the groups".into(),
            }];
        }
        let mut out = Vec::new();
        for u in s.h.elements() {
            for v in s.h.elements() {
                if self.phi1[s.h.mul(u, v)] != t.h.mul(self.phi1[u], self.phi1[v]) {
                    out.push(MorphismViolation::Phi1NotHom { u, v });
                }
            }
        }
        for a in s.g.elements() {
            for b in s.g.elements() {
                if self.phi2[s.g.mul(a, b)] != t.g.mul(self.phi2[a], self.phi2[b]) {
                    out.push(MorphismViolation::Phi2NotHom { a, b });
                }
            }
        }
        for u in s.h.elements() {
            if t.bd(self.phi1[u]) != self.phi2[s.bd(u)] {
                out.push(MorphismViolation::BoundarySquare { u });
            }
        }
        for a in s.g.elements() {
            for u in s.h.elements() {
                if self.phi1[s.act(a, u)] != t.act(self.phi2[a], self.phi1[u]) {
                    out.push(MorphismViolation::ActionCompatibility { alpha: a, u });
                }
            }
        }
        out
    }
}
