use serde::Serialize;

use super::{codegeneracy, duskin_nerve, NatTransform, PSimplex};
use crate::budget::Budget;
use crate::error::{check_budget, input, Result};
use crate::xmod::CrossedModule;

/// One failed identity, with the simplex where it fails.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixFailure {
    pub check: String,
    pub level: usize,
    pub indices: Vec<usize>,
    pub simplex: PSimplex,
    pub components: Option<Vec<Vec<usize>>>,
}

/// Result of checking the strictification functors and the deformation
/// data of the horizontal degeneracy on every chain through `n_max`, `m_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AppendixReport {
    pub label: String,
    pub n_max: usize,
    pub m_max: usize,
    /// Pseudofunctors `[n] -> 𝒢` per level.
    pub objects: Vec<usize>,
    /// Natural transformations per level.
    pub morphisms: Vec<u128>,
    /// Strict functors and strict transformations per level.
    pub strict: Vec<u128>,
    /// Chains of length `1..=m_max` per level, all covered by the check.
    pub chains_covered: Vec<u128>,
    /// Chains that were also checked one by one.
    pub chains_enumerated: Vec<u128>,
    pub identities_checked: u128,
    pub failure_count: u128,
    pub failures: Vec<AppendixFailure>,
}

impl AppendixReport {
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

const MAX_RECORDED: usize = 16;

struct Checker<'a> {
    x: &'a CrossedModule,
    checked: u128,
    failures: Vec<AppendixFailure>,
    count: u128,
}

impl Checker<'_> {
    fn record(&mut self, check: String, level: usize, indices: Vec<usize>, at: &NatTransform) {
        self.count += 1;
        if self.failures.len() < MAX_RECORDED {
            self.failures.push(AppendixFailure {
                check,
                level,
                indices,
                simplex: at.source.clone(),
                components: Some(at.components()),
            });
        }
    }

    fn record_object(&mut self, check: String, level: usize, indices: Vec<usize>, at: &PSimplex) {
        self.count += 1;
        if self.failures.len() < MAX_RECORDED {
            self.failures.push(AppendixFailure {
                check,
                level,
                indices,
                simplex: at.clone(),
                components: None,
            });
        }
    }

    fn expect(
        &mut self,
        ok: bool,
        check: &str,
        level: usize,
        indices: &[usize],
        at: &NatTransform,
    ) {
        self.checked += 1;
        if !ok {
            self.record(check.to_string(), level, indices.to_vec(), at);
        }
    }
}

/// The strict functor with edges `a_0, …, a_{n-1}`: `α_{ij} = a_i ⋯ a_{j-1}`, `u = 1`.
fn phi_object(x: &CrossedModule, edges: &[usize]) -> PSimplex {
    let n = edges.len();
    let g = x.g();
    let mut s = PSimplex::identity(n, x);
    for i in 0..=n {
        let mut acc = g.identity();
        for j in i + 1..=n {
            acc = g.mul(acc, edges[j - 1]);
            s.set_a(i, j, acc);
        }
    }
    s
}

/// The strict transformation with edge components `w` out of the strict
/// functor `edges`: `w_{ij} = w_{i,i+1} ∘_h ⋯ ∘_h w_{j-1,j}`.
fn phi_morphism(x: &CrossedModule, edges: &[usize], w: &[usize]) -> NatTransform {
    let n = edges.len();
    let (g, h) = (x.g(), x.h());
    let target: Vec<usize> = edges
        .iter()
        .zip(w)
        .map(|(&a, &u)| g.mul(x.bd(u), a))
        .collect();
    let mut comp = vec![vec![h.identity(); n + 1]; n + 1];
    for i in 0..=n {
        let (mut acc_a, mut acc_w) = (g.identity(), h.identity());
        for j in i + 1..=n {
            acc_w = h.mul(acc_w, x.act(acc_a, w[j - 1]));
            acc_a = g.mul(acc_a, edges[j - 1]);
            comp[i][j] = acc_w;
        }
    }
    NatTransform::new(phi_object(x, edges), phi_object(x, &target), x, |i, j| {
        comp[i][j]
    })
}

fn psi_morphism(t: &NatTransform) -> Vec<usize> {
    (0..t.source.n).map(|i| t.w(i, i + 1)).collect()
}

/// `η_x: x ⇒ ΦΨx` with `v_{i,i+1} = 1` and `v_{i..j} = v_{i..j-1} u_{i(j-1)j}`.
fn eta(x: &CrossedModule, p: &PSimplex) -> NatTransform {
    let n = p.n;
    let h = x.h();
    let mut v = vec![vec![h.identity(); n + 1]; n + 1];
    for i in 0..=n {
        for j in i + 2..=n {
            v[i][j] = h.mul(v[i][j - 1], p.u(i, j - 1, j));
        }
    }
    NatTransform::new(p.clone(), phi_object(x, &p.spine()), x, |i, j| v[i][j])
}

/// `μ_k v` on `[n+1]`: the target of `v` up to vertex `k`, its source after.
fn mu(x: &CrossedModule, k: usize, v: &NatTransform) -> PSimplex {
    let (x0, x1) = (&v.source, &v.target);
    let n = x0.n;
    let h = x.h();
    let sg = |i: usize| codegeneracy(k, i);
    let mut s = PSimplex::identity(n + 1, x);
    for i in 0..=n + 1 {
        for j in i + 1..=n + 1 {
            s.set_a(
                i,
                j,
                if j <= k {
                    x1.a(i, j)
                } else {
                    x0.a(sg(i), j - 1)
                },
            );
            for l in j + 1..=n + 1 {
                let u = if l <= k {
                    x1.u(i, j, l)
                } else if j <= k {
                    h.mul(v.w(i, j), x0.u(i, j, l - 1))
                } else {
                    x0.u(sg(i), j - 1, l - 1)
                };
                s.set_u(i, j, l, u);
            }
        }
    }
    s
}

/// `h_k v: μ_k v ⇒ s_k x¹`, the identity up to vertex `k` and `v` after.
fn h_k(x: &CrossedModule, k: usize, v: &NatTransform) -> NatTransform {
    let eh = x.h().identity();
    NatTransform::new(mu(x, k, v), v.target.degeneracy(k), x, |i, j| {
        if j <= k {
            eh
        } else {
            v.w(codegeneracy(k, i), j - 1)
        }
    })
}

type Chain = Vec<NatTransform>;

/// `H_k` on a chain `x⁰ ⇒ x¹ ⇒ ⋯`: `h_k v⁰` followed by `s_k v^r`.
fn big_h(x: &CrossedModule, k: usize, c: &[NatTransform]) -> Chain {
    let mut out = Vec::with_capacity(c.len());
    out.push(h_k(x, k, &c[0]));
    out.extend(c[1..].iter().map(|v| v.degeneracy(k)));
    out
}

fn face(c: &[NatTransform], i: usize) -> Chain {
    c.iter().map(|v| v.face(i)).collect()
}

fn degen(c: &[NatTransform], j: usize) -> Chain {
    c.iter().map(|v| v.degeneracy(j)).collect()
}

/// Checks the homotopy data on one chain of transformations at level `n`.
fn check_chain(ck: &mut Checker, c: &[NatTransform]) {
    let x = ck.x;
    let n = c[0].source.n;
    let v0 = &c[0];
    let hs: Vec<Chain> = (0..=n).map(|k| big_h(x, k, c)).collect();
    for (k, hc) in hs.iter().enumerate() {
        let hv = &hc[0];
        if let Some((what, idx)) = hv.source.violation(x) {
            let mut indices = vec![k];
            indices.extend(idx);
            ck.expect(
                false,
                &format!("mu_k is a pseudofunctor ({what})"),
                n,
                &indices,
                v0,
            );
        } else {
            ck.expect(true, "", n, &[], v0);
        }
        if let Some((what, idx)) = hv.violation(x) {
            let mut indices = vec![k];
            indices.extend(idx);
            ck.expect(false, &format!("h_k is natural ({what})"), n, &indices, v0);
        } else {
            ck.expect(true, "", n, &[], v0);
        }
    }
    ck.expect(
        hs[0][0].source == v0.source.degeneracy(0),
        "mu_0 v = s_0 x0",
        n,
        &[],
        v0,
    );
    ck.expect(hs[0][0] == v0.degeneracy(0), "h_0 v = s_0 v", n, &[], v0);
    ck.expect(face(&hs[0], 0) == c, "d_0 H_0 = id", n, &[], v0);
    ck.expect(
        hs[n][0].source.face(n + 1) == v0.target,
        "d_{n+1} mu_n v = x1",
        n,
        &[],
        v0,
    );
    let mut retracted = vec![NatTransform::identity(&v0.target, x)];
    retracted.extend(c[1..].iter().cloned());
    ck.expect(
        face(&hs[n], n + 1) == retracted,
        "d_{n+1} H_n = s_0 d_0",
        n,
        &[],
        v0,
    );
    let faces: Vec<Chain> = (0..=n)
        .map(|i| if n > 0 { face(c, i) } else { Vec::new() })
        .collect();
    for j in 0..=n {
        for i in 0..=n + 1 {
            let lhs = face(&hs[j], i);
            let (ok, name) = if i < j {
                (lhs == big_h(x, j - 1, &faces[i]), "d_i H_j = H_{j-1} d_i")
            } else if i == j && j > 0 {
                (lhs == face(&hs[j - 1], j), "d_j H_j = d_j H_{j-1}")
            } else if i > j + 1 {
                (lhs == big_h(x, j, &faces[i - 1]), "d_i H_j = H_j d_{i-1}")
            } else {
                continue;
            };
            ck.expect(ok, name, n, &[i, j], v0);
        }
        for i in 0..=n + 1 {
            let lhs = degen(&hs[j], i);
            let (ok, name) = if i <= j {
                (
                    lhs == big_h(x, j + 1, &degen(c, i)),
                    "s_i H_j = H_{j+1} s_i",
                )
            } else {
                (
                    lhs == big_h(x, j, &degen(c, i - 1)),
                    "s_i H_j = H_j s_{i-1}",
                )
            };
            ck.expect(ok, name, n, &[i, j], v0);
        }
    }
}

/// Every transformation out of `p`.
fn morphisms_from(x: &CrossedModule, p: &PSimplex) -> Vec<NatTransform> {
    let n = p.n;
    let pairs: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .collect();
    let ho = x.h().order();
    let total = ho.pow(pairs.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut w = vec![vec![0; n + 1]; n + 1];
            for &(i, j) in &pairs {
                w[i][j] = code % ho;
                code /= ho;
            }
            NatTransform::from_components(p, x, |i, j| w[i][j])
        })
        .collect()
}

fn strict_tuples(order: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t: Vec<usize>| {
                (0..order).map(move |a| {
                    let mut t = t.clone();
                    t.push(a);
                    t
                })
            })
            .collect();
    }
    out
}

/// Checks, through level `n_max` and chains of length `m_max`:
/// `Ψ∘Φ = id`; `η: id ⇒ ΦΨ` is natural; `μ_k v` and `h_k v` are valid; and
/// the `H_k` satisfy every simplicial homotopy identity between the identity
/// and `s_0 d_0` on chains.
///
/// `H_k` acts on the first link of a chain by `h_k` and on the others by
/// `s_k`, and faces and degeneracies act link by link. So every identity
/// holds on all chains once it holds on each one-link chain `(v)` and on
/// each chain `(id, v)`; those are checked for every transformation `v`.
/// Levels with at most `budget.chains` chains of a given length are also
/// checked chain by chain.
pub fn verify_appendix_retraction(
    x: &CrossedModule,
    n_max: usize,
    m_max: usize,
    budget: &Budget,
) -> Result<AppendixReport> {
    if n_max > 3 || m_max > 3 || m_max == 0 {
        return input("the appendix sweep supports 0 <= n <= 3 and 1 <= m <= 3");
    }
    let nerve = duskin_nerve(x, n_max, budget)?;
    let (go, ho) = (x.g().order() as u128, x.h().order() as u128);
    let mut ck = Checker {
        x,
        checked: 0,
        failures: Vec::new(),
        count: 0,
    };
    let mut report = AppendixReport {
        label: x.label(),
        n_max,
        m_max,
        objects: nerve.set.counts.clone(),
        morphisms: Vec::new(),
        strict: Vec::new(),
        chains_covered: Vec::new(),
        chains_enumerated: Vec::new(),
        identities_checked: 0,
        failure_count: 0,
        failures: Vec::new(),
    };
    for n in 0..=n_max {
        let per_object = ho.pow((n * (n + 1) / 2) as u32);
        let objects = nerve.simplices[n].len() as u128;
        check_budget(
            &format!("transformations at level {n}"),
            objects * per_object,
            budget.enumeration,
        )?;
        report.morphisms.push(objects * per_object);
        report.chains_covered.push(
            (1..=m_max as u32)
                .map(|m| objects * per_object.pow(m))
                .sum(),
        );

        let strict_count = go.pow(n as u32) * ho.pow(n as u32);
        check_budget(
            &format!("strict transformations at level {n}"),
            strict_count,
            budget.enumeration,
        )?;
        for edges in strict_tuples(x.g().order(), n) {
            let obj = phi_object(x, &edges);
            ck.checked += 1;
            if obj.spine() != edges {
                ck.record_object("Psi Phi = id on objects".into(), n, edges.clone(), &obj);
            }
            for w in strict_tuples(x.h().order(), n) {
                let t = phi_morphism(x, &edges, &w);
                let target: Vec<usize> = edges
                    .iter()
                    .zip(&w)
                    .map(|(&a, &u)| x.g().mul(x.bd(u), a))
                    .collect();
                ck.expect(
                    t.violation(x).is_none(),
                    "Phi of a transformation is natural",
                    n,
                    &w,
                    &t,
                );
                ck.expect(
                    t.target == phi_object(x, &target),
                    "Phi preserves targets",
                    n,
                    &w,
                    &t,
                );
                ck.expect(
                    psi_morphism(&t) == w,
                    "Psi Phi = id on transformations",
                    n,
                    &w,
                    &t,
                );
            }
        }
        report.strict.push(strict_count);

        let mut enumerated = 0u128;
        for p in &nerve.simplices[n] {
            let e = eta(x, p);
            if let Some((what, idx)) = e.violation(x) {
                ck.expect(false, &format!("eta is natural ({what})"), n, &idx, &e);
            } else {
                ck.expect(true, "", n, &[], &e);
            }
            let out = morphisms_from(x, p);
            for v in &out {
                let e1 = eta(x, &v.target);
                let phipsi = phi_morphism(x, &p.spine(), &psi_morphism(v));
                ck.expect(
                    e.then(&phipsi, x) == v.then(&e1, x),
                    "eta commutes with transformations",
                    n,
                    &[],
                    v,
                );
                check_chain(&mut ck, std::slice::from_ref(v));
                if m_max >= 2 {
                    check_chain(&mut ck, &[NatTransform::identity(p, x), v.clone()]);
                }
            }
        }
        for m in 1..=m_max as u32 {
            let count = objects * per_object.pow(m);
            if count > budget.chains {
                continue;
            }
            enumerated += count;
            for p in &nerve.simplices[n] {
                let mut chains: Vec<Chain> = vec![Vec::new()];
                for _ in 0..m {
                    chains = chains
                        .into_iter()
                        .flat_map(|c| {
                            let end = c.last().map_or_else(|| p.clone(), |v| v.target.clone());
                            morphisms_from(x, &end).into_iter().map(move |v| {
                                let mut c = c.clone();
                                c.push(v);
                                c
                            })
                        })
                        .collect();
                }
                for c in &chains {
                    check_chain(&mut ck, c);
                }
            }
        }
        report.chains_enumerated.push(enumerated);
    }
    report.identities_checked = ck.checked;
    report.failure_count = ck.count;
    report.failures = ck.failures;
    Ok(report)
}
