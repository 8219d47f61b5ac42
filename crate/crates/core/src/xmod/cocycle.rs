//! Nonabelian 1-cocycles `(α, u)` of `Γ` with values in a crossed module,
//! their equivalence, and the pointed sets `H¹` and `H¹_ff`.

use std::collections::{HashMap, VecDeque};

use serde::{Serialize, Serializer};

use super::{CrossedModule, XModMorphism};
use crate::budget::Budget;
use crate::error::{input, Error, Result};
use crate::grpcore::{cohomology, AbelianCoefficients, Cochain, FiniteGroup};

/// A normalized 1-cocycle. `u[g * |Γ| + h] = u_{g,h}`.
///
/// The derived order compares `alpha` first, then `u`: the lexicographic
/// order used for canonical representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cocycle1 {
    pub alpha: Vec<usize>,
    pub u: Vec<usize>,
}

impl Serialize for Cocycle1 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Tables<'a> {
            alpha: &'a [usize],
            u: Vec<&'a [usize]>,
        }
        let n = self.alpha.len().max(1);
        Tables {
            alpha: &self.alpha,
            u: self.u.chunks(n).collect(),
        }
        .serialize(s)
    }
}

impl Cocycle1 {
    /// `α ≡ 1`, `u ≡ 1`.
    pub fn trivial(gamma: &FiniteGroup, x: &CrossedModule) -> Self {
        let n = gamma.order();
        Cocycle1 {
            alpha: vec![x.g().identity(); n],
            u: vec![x.h().identity(); n * n],
        }
    }

    /// Builds a cocycle from tables and checks every law.
    pub fn new(
        gamma: &FiniteGroup,
        x: &CrossedModule,
        alpha: Vec<usize>,
        u: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let c = Cocycle1 {
            alpha,
            u: u.into_iter().flatten().collect(),
        };
        if let Some(v) = cocycle_violations(gamma, x, &c).first() {
            return input(format!("not a normalized cocycle: {v:?}"));
        }
        Ok(c)
    }

    #[inline]
    pub fn u_at(&self, n: usize, g: usize, h: usize) -> usize {
        self.u[g * n + h]
    }

    /// Whether `α_g ∉ ∂(H)` for every `g ≠ e`.
    pub fn is_ff(&self, gamma: &FiniteGroup, x: &CrossedModule) -> bool {
        let im = x.boundary_image();
        gamma
            .elements()
            .filter(|&g| g != gamma.identity())
            .all(|g| !im[self.alpha[g]])
    }
}

/// `(γ, w)` relating two cocycles. `w[gamma.identity()]` is always `1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub gamma: usize,
    pub w: Vec<usize>,
}

impl Witness {
    pub fn identity(gamma: &FiniteGroup, x: &CrossedModule) -> Self {
        Witness {
            gamma: x.g().identity(),
            w: vec![x.h().identity(); gamma.order()],
        }
    }

    /// The witness of `apply(apply(c, self), other)`.
    pub fn then(&self, other: &Witness, x: &CrossedModule) -> Witness {
        let h = x.h();
        Witness {
            gamma: x.g().mul(other.gamma, self.gamma),
            w: other
                .w
                .iter()
                .zip(&self.w)
                .map(|(&w2, &w1)| h.mul(w2, x.act(other.gamma, w1)))
                .collect(),
        }
    }

    /// The witness undoing `self`.
    pub fn inverse(&self, x: &CrossedModule) -> Witness {
        let gi = x.g().inv(self.gamma);
        Witness {
            gamma: gi,
            w: self.w.iter().map(|&w| x.act(gi, x.h().inv(w))).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum CocycleViolation {
    Shape { detail: String },
    Normalization { g: usize },
    Alpha { g: usize, h: usize },
    U { g: usize, h: usize, k: usize },
}

pub fn cocycle_violations(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    c: &Cocycle1,
) -> Vec<CocycleViolation> {
    let n = gamma.order();
    let (hg, gg) = (x.h(), x.g());
    if c.alpha.len() != n
        || c.u.len() != n * n
        || c.alpha.iter().any(|&a| a >= gg.order())
        || c.u.iter().any(|&v| v >= hg.order())
    {
        return vec![CocycleViolation::Shape {
            detail: format!("expected alpha of length {n} and a {n}x{n} u table"),
        }];
    }
    let e = gamma.identity();
    let mut out = Vec::new();
    if c.alpha[e] != gg.identity() {
        out.push(CocycleViolation::Normalization { g: e });
    }
    for g in gamma.elements() {
        if c.u_at(n, g, e) != hg.identity() || c.u_at(n, e, g) != hg.identity() {
            out.push(CocycleViolation::Normalization { g });
        }
    }
    for g in gamma.elements() {
        for h in gamma.elements() {
            let lhs = gg.mul(c.alpha[g], c.alpha[h]);
            let rhs = gg.mul(x.bd(c.u_at(n, g, h)), c.alpha[gamma.mul(g, h)]);
            if lhs != rhs {
                out.push(CocycleViolation::Alpha { g, h });
            }
        }
    }
    for g in gamma.elements() {
        for h in gamma.elements() {
            for k in gamma.elements() {
                if !u_law(gamma, x, c, g, h, k) {
                    out.push(CocycleViolation::U { g, h, k });
                }
            }
        }
    }
    out
}

/// `α_g(u_{h,k}) u_{g,hk} = u_{g,h} u_{gh,k}`
#[inline]
fn u_law(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    c: &Cocycle1,
    g: usize,
    h: usize,
    k: usize,
) -> bool {
    let n = gamma.order();
    let hg = x.h();
    let lhs = hg.mul(
        x.act(c.alpha[g], c.u_at(n, h, k)),
        c.u_at(n, g, gamma.mul(h, k)),
    );
    let rhs = hg.mul(c.u_at(n, g, h), c.u_at(n, gamma.mul(g, h), k));
    lhs == rhs
}

struct NodeCounter {
    what: &'static str,
    used: u128,
    limit: u128,
}

impl NodeCounter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Budget {
                what: self.what.into(),
                needed: self.used,
                limit: self.limit,
            });
        }
        Ok(())
    }
}

/// Every normalized cocycle, in lexicographic order.
///
/// The search assigns `α` then `u` entry by entry, checking each law as soon
/// as all its entries are known. Visited nodes count against
/// `budget.enumeration`.
pub fn enumerate_z1(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    budget: &Budget,
) -> Result<Vec<Cocycle1>> {
    let n = gamma.order();
    let e = gamma.identity();
    let (hg, gg) = (x.h(), x.g());
    let fibers = x.fibers();
    let im = x.boundary_image();
    let others: Vec<usize> = gamma.non_identity();
    let mut counter = NodeCounter {
        what: "Z1 enumeration nodes",
        used: 0,
        limit: budget.enumeration,
    };

    // alpha stage: position of g among `others`; pair (g,h) checked when the
    // last of g, h, gh is assigned
    let apos = |g: usize| others.iter().position(|&o| o == g);
    let mut alpha_checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); others.len()];
    for &g in &others {
        for &h in &others {
            let last = [apos(g), apos(h), apos(gamma.mul(g, h))]
                .into_iter()
                .flatten()
                .max()
                .expect("g is not e");
            alpha_checks[last].push((g, h));
        }
    }

    // u stage: variables (g,h) with g,h != e
    let vars: Vec<(usize, usize)> = others
        .iter()
        .flat_map(|&g| others.iter().map(move |&h| (g, h)))
        .collect();
    let upos = |g: usize, h: usize| -> Option<usize> {
        if g == e || h == e {
            None
        } else {
            vars.iter().position(|&v| v == (g, h))
        }
    };
    let mut u_checks: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); vars.len()];
    for &g in &others {
        for &h in &others {
            for &k in &others {
                let last = [
                    upos(h, k),
                    upos(g, gamma.mul(h, k)),
                    upos(g, h),
                    upos(gamma.mul(g, h), k),
                ]
                .into_iter()
                .flatten()
                .max()
                .expect("(h,k) is a variable");
                u_checks[last].push((g, h, k));
            }
        }
    }

    let mut out = Vec::new();
    let mut c = Cocycle1::trivial(gamma, x);
    let mut alphas = Vec::new();
    enumerate_alpha(
        gamma,
        gg,
        &im,
        &others,
        &alpha_checks,
        0,
        &mut c,
        &mut alphas,
        &mut counter,
    )?;
    for alpha in alphas {
        c.alpha = alpha;
        c.u = vec![hg.identity(); n * n];
        enumerate_u(
            gamma,
            x,
            &fibers,
            &vars,
            &u_checks,
            0,
            &mut c,
            &mut out,
            &mut counter,
        )?;
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_alpha(
    gamma: &FiniteGroup,
    gg: &FiniteGroup,
    im: &[bool],
    others: &[usize],
    checks: &[Vec<(usize, usize)>],
    pos: usize,
    c: &mut Cocycle1,
    out: &mut Vec<Vec<usize>>,
    counter: &mut NodeCounter,
) -> Result<()> {
    if pos == others.len() {
        out.push(c.alpha.clone());
        return Ok(());
    }
    let g = others[pos];
    for a in gg.elements() {
        counter.tick()?;
        c.alpha[g] = a;
        let ok = checks[pos].iter().all(|&(g, h)| {
            let d = gg.mul(
                gg.mul(c.alpha[g], c.alpha[h]),
                gg.inv(c.alpha[gamma.mul(g, h)]),
            );
            im[d]
        });
        if ok {
            enumerate_alpha(gamma, gg, im, others, checks, pos + 1, c, out, counter)?;
        }
    }
    c.alpha[g] = gg.identity();
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn enumerate_u(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    fibers: &[Vec<usize>],
    vars: &[(usize, usize)],
    checks: &[Vec<(usize, usize, usize)>],
    pos: usize,
    c: &mut Cocycle1,
    out: &mut Vec<Cocycle1>,
    counter: &mut NodeCounter,
) -> Result<()> {
    if pos == vars.len() {
        out.push(c.clone());
        return Ok(());
    }
    let n = gamma.order();
    let gg = x.g();
    let (g, h) = vars[pos];
    let target = gg.mul(
        gg.mul(c.alpha[g], c.alpha[h]),
        gg.inv(c.alpha[gamma.mul(g, h)]),
    );
    for &v in &fibers[target] {
        counter.tick()?;
        c.u[g * n + h] = v;
        if checks[pos]
            .iter()
            .all(|&(a, b, k)| u_law(gamma, x, c, a, b, k))
        {
            enumerate_u(gamma, x, fibers, vars, checks, pos + 1, c, out, counter)?;
        }
    }
    c.u[g * n + h] = x.h().identity();
    Ok(())
}

/// The cocycle `(α¹, u¹)` with `α¹_g = ∂(w_g) γ α_g γ⁻¹` and
/// `u¹_{g,h} = w_g γ(α_g(γ⁻¹(w_h)) u_{g,h}) w_{gh}⁻¹`.
pub fn apply_witness(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    c: &Cocycle1,
    wit: &Witness,
) -> Cocycle1 {
    let n = gamma.order();
    let (hg, gg) = (x.h(), x.g());
    let gi = gg.inv(wit.gamma);
    let alpha = gamma
        .elements()
        .map(|g| gg.mul(x.bd(wit.w[g]), gg.conj(wit.gamma, c.alpha[g])))
        .collect();
    let mut u = vec![hg.identity(); n * n];
    for g in gamma.elements() {
        for h in gamma.elements() {
            let inner = hg.mul(x.act(c.alpha[g], x.act(gi, wit.w[h])), c.u_at(n, g, h));
            let v = hg.mul(
                hg.mul(wit.w[g], x.act(wit.gamma, inner)),
                hg.inv(wit.w[gamma.mul(g, h)]),
            );
            u[g * n + h] = v;
        }
    }
    Cocycle1 { alpha, u }
}

/// Whether `wit` carries `a` to `b`.
pub fn witness_holds(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    a: &Cocycle1,
    b: &Cocycle1,
    wit: &Witness,
) -> bool {
    wit.w.len() == gamma.order()
        && wit.gamma < x.g().order()
        && wit.w.iter().all(|&w| w < x.h().order())
        && apply_witness(gamma, x, a, wit) == *b
}

/// The first witness carrying `a` to `b`: `γ` ascending, then `w`
/// lexicographic. With `strict` only `γ = e` is tried.
pub fn are_cohomologous(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    a: &Cocycle1,
    b: &Cocycle1,
    strict: bool,
    budget: &Budget,
) -> Result<Option<Witness>> {
    for c in [a, b] {
        if let Some(v) = cocycle_violations(gamma, x, c).first() {
            return input(format!("not a normalized cocycle: {v:?}"));
        }
    }
    let n = gamma.order();
    let e = gamma.identity();
    let (hg, gg) = (x.h(), x.g());
    let fibers = x.fibers();
    let others = gamma.non_identity();
    let pos = |g: usize| others.iter().position(|&o| o == g);
    // (g,h) is checked once w_g, w_h, w_gh are all assigned
    let mut checks: Vec<Vec<(usize, usize)>> = vec![Vec::new(); others.len()];
    for &g in &others {
        for &h in &others {
            let last = [pos(g), pos(h), pos(gamma.mul(g, h))]
                .into_iter()
                .flatten()
                .max()
                .expect("g is not e");
            checks[last].push((g, h));
        }
    }
    let mut counter = NodeCounter {
        what: "coboundary witness search nodes",
        used: 0,
        limit: budget.enumeration,
    };
    let gammas: Vec<usize> = if strict {
        vec![gg.identity()]
    } else {
        gg.elements().collect()
    };
    for gm in gammas {
        let gi = gg.inv(gm);
        let mut cands = Vec::with_capacity(others.len());
        let mut feasible = true;
        for &g in &others {
            let need = gg.mul(b.alpha[g], gg.inv(gg.conj(gm, a.alpha[g])));
            if fibers[need].is_empty() {
                feasible = false;
                break;
            }
            cands.push(&fibers[need]);
        }
        if !feasible {
            continue;
        }
        let mut w = vec![hg.identity(); n];
        let holds = |w: &[usize], g: usize, h: usize| {
            let inner = hg.mul(x.act(a.alpha[g], x.act(gi, w[h])), a.u_at(n, g, h));
            let v = hg.mul(hg.mul(w[g], x.act(gm, inner)), hg.inv(w[gamma.mul(g, h)]));
            v == b.u_at(n, g, h)
        };
        if search_w(&others, &cands, &checks, &holds, 0, &mut w, &mut counter)? {
            debug_assert_eq!(w[e], hg.identity());
            let wit = Witness { gamma: gm, w };
            debug_assert!(witness_holds(gamma, x, a, b, &wit));
            return Ok(Some(wit));
        }
    }
    Ok(None)
}

fn search_w(
    others: &[usize],
    cands: &[&Vec<usize>],
    checks: &[Vec<(usize, usize)>],
    holds: &dyn Fn(&[usize], usize, usize) -> bool,
    pos: usize,
    w: &mut Vec<usize>,
    counter: &mut NodeCounter,
) -> Result<bool> {
    if pos == others.len() {
        return Ok(true);
    }
    let g = others[pos];
    for &v in cands[pos] {
        counter.tick()?;
        w[g] = v;
        if checks[pos].iter().all(|&(a, b)| holds(w, a, b))
            && search_w(others, cands, checks, holds, pos + 1, w, counter)?
        {
            return Ok(true);
        }
    }
    Ok(false)
}

/// One class of `H¹` with its lexicographically least member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H1Class {
    pub representative: Cocycle1,
    pub size: usize,
    pub ff: bool,
}

/// The pointed set `H¹(Γ, ∂: H -> G)` or its ff part.
#[derive(Clone, Debug, Serialize)]
pub struct H1 {
    pub classes: Vec<H1Class>,
    /// Index of the class of the trivial cocycle; absent from the ff part.
    pub basepoint: Option<usize>,
    pub z1_count: usize,
    #[serde(skip)]
    index: HashMap<Cocycle1, usize>,
}

impl H1 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn ff_mask(&self) -> Vec<bool> {
        self.classes.iter().map(|c| c.ff).collect()
    }

    /// The class containing a cocycle of the enumerated set.
    pub fn class_of(&self, c: &Cocycle1) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn representatives(&self) -> impl Iterator<Item = &Cocycle1> {
        self.classes.iter().map(|c| &c.representative)
    }
}

/// Quotients `Z¹` by the gauge action. With `ff` only cocycles whose `α`
/// avoids `∂(H)` off the identity are kept; with `strict` only `γ = e`.
///
/// Orbits are closed under the generating moves `(γ, 1)` and
/// `(e, w)` with `w` supported on one element.
pub fn compute_h1(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    ff: bool,
    strict: bool,
    budget: &Budget,
) -> Result<H1> {
    let mut z1 = enumerate_z1(gamma, x, budget)?;
    if ff {
        z1.retain(|c| c.is_ff(gamma, x));
    }
    let z1_count = z1.len();
    let index_of: HashMap<Cocycle1, usize> = z1
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let (hg, gg) = (x.h(), x.g());
    let mut moves: Vec<Witness> = Vec::new();
    if !strict {
        for gm in gg.non_identity() {
            moves.push(Witness {
                gamma: gm,
                w: vec![hg.identity(); gamma.order()],
            });
        }
    }
    for g in gamma.non_identity() {
        for h in hg.non_identity() {
            let mut w = vec![hg.identity(); gamma.order()];
            w[g] = h;
            moves.push(Witness {
                gamma: gg.identity(),
                w,
            });
        }
    }
    let mut class = vec![usize::MAX; z1.len()];
    let mut classes = Vec::new();
    for start in 0..z1.len() {
        if class[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class[start] = id;
        let mut size = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            size += 1;
            for m in &moves {
                let next = apply_witness(gamma, x, &z1[i], m);
                let j = *index_of
                    .get(&next)
                    .ok_or_else(|| Error::Internal("gauge move left the cocycle set".into()))?;
                if class[j] == usize::MAX {
                    class[j] = id;
                    queue.push_back(j);
                }
            }
        }
        classes.push(H1Class {
            ff: z1[start].is_ff(gamma, x),
            representative: z1[start].clone(),
            size,
        });
    }
    let trivial = Cocycle1::trivial(gamma, x);
    let index: HashMap<Cocycle1, usize> = z1.into_iter().zip(class).collect();
    let basepoint = index.get(&trivial).copied();
    Ok(H1 {
        classes,
        basepoint,
        z1_count,
        index,
    })
}

/// `(φ2 ∘ α, φ1 ∘ u)`.
pub fn pushforward(m: &XModMorphism, gamma: &FiniteGroup, c: &Cocycle1) -> Result<Cocycle1> {
    let out = Cocycle1 {
        alpha: c.alpha.iter().map(|&a| m.phi2[a]).collect(),
        u: c.u.iter().map(|&v| m.phi1[v]).collect(),
    };
    if let Some(v) = cocycle_violations(gamma, &m.target, &out).first() {
        return Err(Error::Internal(format!(
            "pushforward is not a cocycle: {v:?}"
        )));
    }
    Ok(out)
}

/// The bijection `H¹(Γ, H -> 1) ≅ H²(Γ, H)` for abelian `H`.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianShift {
    /// Invariant factors of `H²(Γ, H)`.
    pub h2_factors: Vec<u64>,
    /// `H²` coordinates of each `H¹` class, in class order.
    pub class_coords: Vec<Vec<u64>>,
    /// The `H¹` class of each `H²` element, in coordinate order.
    pub inverse: Vec<(Vec<u64>, usize)>,
    pub basepoint_to_zero: bool,
    pub bijective: bool,
}

/// The `u`-table of a cocycle as an `H`-valued 2-cochain.
pub fn u_cochain(
    gamma: &FiniteGroup,
    h: &FiniteGroup,
    c: &Cocycle1,
) -> Result<(AbelianCoefficients, Cochain)> {
    let st = h.abelian_structure()?;
    let module = AbelianCoefficients::finite(&st.factors);
    let n = gamma.order();
    let z = Cochain::from_fn(gamma, &module, 2, 1, |t| {
        st.to_coords(c.u[t[0] * n + t[1]]).to_vec()
    });
    Ok((module, z))
}

pub fn abelian_shift(
    gamma: &FiniteGroup,
    h: &FiniteGroup,
    budget: &Budget,
) -> Result<AbelianShift> {
    if !h.is_abelian() {
        return input("abelian shift needs an abelian group");
    }
    let x = CrossedModule::abelian(h.clone())?;
    let h1 = compute_h1(gamma, &x, false, false, budget)?;
    let st = h.abelian_structure()?;
    if st.factors.is_empty() {
        // H trivial: both sides are a point
        return Ok(AbelianShift {
            h2_factors: Vec::new(),
            class_coords: vec![Vec::new(); h1.len()],
            inverse: vec![(Vec::new(), 0)],
            basepoint_to_zero: true,
            bijective: h1.len() == 1,
        });
    }
    let module = AbelianCoefficients::finite(&st.factors);
    let h2 = cohomology(gamma, &module, 2, budget)?;
    let mut class_coords = Vec::with_capacity(h1.len());
    for c in h1.representatives() {
        let (_, z) = u_cochain(gamma, h, c)?;
        class_coords.push(h2.classify(&z)?);
    }
    let n = gamma.order();
    let mut inverse = Vec::new();
    for coords in h2.all_coordinates() {
        let rep = h2.representative(&coords)?;
        if !rep.is_normalized(gamma.identity()) {
            return Err(Error::Internal(
                "H2 representative is not normalized".into(),
            ));
        }
        let u = (0..n * n)
            .map(|i| st.from_coords(rep.get(&[i / n, i % n])))
            .collect();
        let c = Cocycle1 {
            alpha: vec![0; n],
            u,
        };
        let k = h1.class_of(&c).ok_or_else(|| {
            Error::Internal("H2 representative is not a 1-cocycle of (H -> 1)".into())
        })?;
        inverse.push((coords, k));
    }
    let zero = vec![0u64; h2.invariant_factors().len()];
    let basepoint_to_zero = h1
        .basepoint
        .map(|b| class_coords[b] == zero)
        .unwrap_or(false);
    let mut seen = vec![false; h1.len()];
    let mut bijective = inverse.len() == h1.len();
    for (coords, k) in &inverse {
        bijective &= !seen[*k] && class_coords[*k] == *coords;
        seen[*k] = true;
    }
    Ok(AbelianShift {
        h2_factors: h2.invariant_factors().to_vec(),
        class_coords,
        inverse,
        basepoint_to_zero,
        bijective,
    })
}
