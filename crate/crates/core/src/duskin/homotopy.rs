use serde::Serialize;

use super::{IdentityViolation, Nerve, PSimplex, SimplicialMap, TruncatedSimplicialSet};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::grpcore::FiniteGroup;
use crate::xmod::{apply_witness, Cocycle1, CrossedModule, Witness};

/// The Duskin simplex of a chain `(g_1, …, g_n)` under a cocycle:
/// `α_{ij} = α_{g_{i+1}⋯g_j}` and `u_{ijk} = u_{g_{i+1}⋯g_j, g_{j+1}⋯g_k}`.
fn chain_simplex(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    c: &Cocycle1,
    chain: &[usize],
) -> PSimplex {
    let n = chain.len();
    let ord = gamma.order();
    let prod = prefix_products(gamma, chain);
    let mut s = PSimplex::identity(n, x);
    for i in 0..=n {
        for j in i + 1..=n {
            s.set_a(i, j, c.alpha[prod[i][j]]);
            for k in j + 1..=n {
                s.set_u(i, j, k, c.u_at(ord, prod[i][j], prod[j][k]));
            }
        }
    }
    s
}

/// `prod[i][j] = g_{i+1} ⋯ g_j`.
fn prefix_products(gamma: &FiniteGroup, chain: &[usize]) -> Vec<Vec<usize>> {
    let n = chain.len();
    let mut prod = vec![vec![gamma.identity(); n + 1]; n + 1];
    for i in 0..=n {
        for j in i + 1..=n {
            prod[i][j] = gamma.mul(prod[i][j - 1], chain[j - 1]);
        }
    }
    prod
}

fn lookup(target: &Nerve<PSimplex>, s: &PSimplex, what: &str) -> Result<usize> {
    target.index_of(s.n, s).ok_or_else(|| {
        Error::Internal(format!(
            "{what} produced a {}-simplex outside the Duskin nerve",
            s.n
        ))
    })
}

/// The map `N(Γ) -> N^D(x)` of a normalized cocycle, checked to commute with
/// every face and degeneracy.
pub fn cocycle_to_simplicial_map(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    c: &Cocycle1,
    source: &Nerve<Vec<usize>>,
    target: &Nerve<PSimplex>,
) -> Result<SimplicialMap> {
    let (eg, eh) = (x.g().identity(), x.h().identity());
    let ord = gamma.order();
    if c.alpha.len() != ord || c.u.len() != ord * ord {
        return Err(Error::Input(
            "cocycle tables do not match the group order".into(),
        ));
    }
    let normalized = c.alpha[gamma.identity()] == eg
        && gamma.elements().all(|g| {
            c.u_at(ord, g, gamma.identity()) == eh && c.u_at(ord, gamma.identity(), g) == eh
        });
    if !normalized {
        return Err(Error::NotCocycle("the cocycle is not normalized".into()));
    }
    let top = source.set.n.min(target.set.n);
    let mut maps = Vec::with_capacity(top + 1);
    for k in 0..=top {
        let mut m = Vec::with_capacity(source.set.counts[k]);
        for chain in &source.simplices[k] {
            let s = chain_simplex(gamma, x, c, chain);
            let y = target.index_of(k, &s).ok_or_else(|| {
                Error::NotCocycle(format!("the chain {chain:?} maps outside the Duskin nerve"))
            })?;
            m.push(y);
        }
        maps.push(m);
    }
    let map = SimplicialMap { maps };
    if let Some(v) = map.violation(&source.set, &target.set) {
        return Err(Error::Internal(format!(
            "cocycle map fails {} on {}-simplex {}",
            v.identity, v.dim, v.simplex
        )));
    }
    Ok(map)
}

/// Components `h_j: X_n -> Y_{n+1}` for `0 <= j <= n < N`, stored as
/// `maps[n][j][x]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialHomotopy {
    pub maps: Vec<Vec<Vec<usize>>>,
}

impl SimplicialHomotopy {
    /// The first failing identity of a homotopy from `f` to `g`:
    /// `d_0 h_0 = f`, `d_{n+1} h_n = g`, and the face and degeneracy
    /// relations wherever both sides lie inside the truncation.
    pub fn violation(
        &self,
        src: &TruncatedSimplicialSet,
        dst: &TruncatedSimplicialSet,
        f: &SimplicialMap,
        g: &SimplicialMap,
    ) -> Option<IdentityViolation> {
        let top = self.maps.len();
        let h = |n: usize, j: usize, x: usize| self.maps[n][j][x];
        for n in 0..top {
            for x in 0..src.counts[n] {
                let fail = |identity: String| {
                    Some(IdentityViolation {
                        identity,
                        dim: n,
                        simplex: x,
                    })
                };
                if dst.face(n + 1, 0, h(n, 0, x)) != f.maps[n][x] {
                    return fail("d0 h0 = f".into());
                }
                if dst.face(n + 1, n + 1, h(n, n, x)) != g.maps[n][x] {
                    return fail(format!("d{} h{n} = g", n + 1));
                }
                for j in 0..=n {
                    let y = h(n, j, x);
                    for i in 0..=n + 1 {
                        let lhs = dst.face(n + 1, i, y);
                        let rhs = if i < j {
                            h(n - 1, j - 1, src.face(n, i, x))
                        } else if i == j && j > 0 {
                            dst.face(n + 1, j, h(n, j - 1, x))
                        } else if i > j + 1 {
                            h(n - 1, j, src.face(n, i - 1, x))
                        } else {
                            continue;
                        };
                        if lhs != rhs {
                            return fail(format!("d{i} h{j}"));
                        }
                    }
                    if n + 1 < top {
                        for i in 0..=n + 1 {
                            let lhs = dst.degen(n + 1, i, y);
                            let rhs = if i <= j {
                                h(n + 1, j + 1, src.degen(n, i, x))
                            } else {
                                h(n + 1, j, src.degen(n, i - 1, x))
                            };
                            if lhs != rhs {
                                return fail(format!("s{i} h{j}"));
                            }
                        }
                    }
                }
            }
        }
        None
    }
}

/// Checks `h` as a homotopy from `f` to `g`.
pub fn verify_homotopy(
    h: &SimplicialHomotopy,
    src: &TruncatedSimplicialSet,
    dst: &TruncatedSimplicialSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
) -> Option<IdentityViolation> {
    h.violation(src, dst, f, g)
}

/// The first pair `g` or triple `(g, h)` where `wit` fails to carry `a` to `b`.
fn witness_failure(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    a: &Cocycle1,
    b: &Cocycle1,
    wit: &Witness,
) -> Option<String> {
    let ord = gamma.order();
    if wit.w.len() != ord || wit.gamma >= x.g().order() || wit.w.iter().any(|&w| w >= x.h().order())
    {
        return Some("witness tables are malformed".into());
    }
    let image = apply_witness(gamma, x, a, wit);
    for g in gamma.elements() {
        if image.alpha[g] != b.alpha[g] {
            return Some(format!("alpha relation fails at g = {g}"));
        }
    }
    for g in gamma.elements() {
        for h in gamma.elements() {
            if image.u[g * ord + h] != b.u[g * ord + h] {
                return Some(format!("u relation fails at (g, h) = ({g}, {h})"));
            }
        }
    }
    None
}

/// The homotopy from the map of `a` to the map of `b` given by a witness
/// `(γ, w)` with `b = (γ, w)·a`.
///
/// The simplex `h_j(x)` is the image of `(s_j x, ε_j)` under the
/// pseudofunctor on `C_Γ × I` that is `b` over the first vertex, `a` over
/// the second, and `γα^a_g` on edges crossing between them, with
/// compositors `w_g γ(u^a_{g,h})` and `γ(u^a_{g,h})` on crossing triangles.
pub fn coboundary_to_homotopy(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    a: &Cocycle1,
    b: &Cocycle1,
    wit: &Witness,
    source: &Nerve<Vec<usize>>,
    target: &Nerve<PSimplex>,
) -> Result<SimplicialHomotopy> {
    if let Some(why) = witness_failure(gamma, x, a, b, wit) {
        return Err(Error::InvalidWitness(why));
    }
    if target.set.n < source.set.n {
        return Err(Error::Input(
            "the Duskin nerve must be built at least as far as the source nerve".into(),
        ));
    }
    let (gg, hh) = (x.g(), x.h());
    let ord = gamma.order();
    let top = source.set.n;
    let mut maps = Vec::with_capacity(top);
    for n in 0..top {
        let mut level = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut comp = Vec::with_capacity(source.set.counts[n]);
            for chain in &source.simplices[n] {
                let mut labels = chain.clone();
                labels.insert(j, gamma.identity());
                // vertices 0..=j lie over b, the rest over a
                let over_a = |i: usize| i > j;
                let prod = prefix_products(gamma, &labels);
                let mut s = PSimplex::identity(n + 1, x);
                for i in 0..=n + 1 {
                    for k in i + 1..=n + 1 {
                        let p = prod[i][k];
                        let alpha = match (over_a(i), over_a(k)) {
                            (false, false) => b.alpha[p],
                            (true, true) => a.alpha[p],
                            _ => gg.mul(wit.gamma, a.alpha[p]),
                        };
                        s.set_a(i, k, alpha);
                        for l in k + 1..=n + 1 {
                            let (g1, g2) = (prod[i][k], prod[k][l]);
                            let ua = a.u_at(ord, g1, g2);
                            let u = match (over_a(i), over_a(k), over_a(l)) {
                                (false, false, false) => b.u_at(ord, g1, g2),
                                (true, true, true) => ua,
                                (false, false, true) => hh.mul(wit.w[g1], x.act(wit.gamma, ua)),
                                _ => x.act(wit.gamma, ua),
                            };
                            s.set_u(i, k, l, u);
                        }
                    }
                }
                comp.push(lookup(target, &s, "the witness homotopy")?);
            }
            level.push(comp);
        }
        maps.push(level);
    }
    let homotopy = SimplicialHomotopy { maps };
    let f = cocycle_to_simplicial_map(gamma, x, a, source, target)?;
    let g = cocycle_to_simplicial_map(gamma, x, b, source, target)?;
    if let Some(v) = homotopy.violation(&source.set, &target.set, &f, &g) {
        return Err(Error::Internal(format!(
            "witness homotopy fails {} on {}-simplex {}",
            v.identity, v.dim, v.simplex
        )));
    }
    Ok(homotopy)
}

/// The same homotopy data factored as `(γ, 1)` followed by `(e, w)`: returns
/// the intermediate cocycle `(γ, 1)·a` and one homotopy for each step.
pub fn coboundary_to_homotopy_via_conjugation(
    gamma: &FiniteGroup,
    x: &CrossedModule,
    a: &Cocycle1,
    b: &Cocycle1,
    wit: &Witness,
    source: &Nerve<Vec<usize>>,
    target: &Nerve<PSimplex>,
) -> Result<(Cocycle1, SimplicialHomotopy, SimplicialHomotopy)> {
    if let Some(why) = witness_failure(gamma, x, a, b, wit) {
        return Err(Error::InvalidWitness(why));
    }
    let outer = Witness {
        gamma: wit.gamma,
        w: vec![x.h().identity(); gamma.order()],
    };
    let inner = Witness {
        gamma: x.g().identity(),
        w: wit.w.clone(),
    };
    let mid = apply_witness(gamma, x, a, &outer);
    let first = coboundary_to_homotopy(gamma, x, a, &mid, &outer, source, target)?;
    let second = coboundary_to_homotopy(gamma, x, &mid, b, &inner, source, target)?;
    Ok((mid, first, second))
}

/// Outcome of an exhaustive search for a simplicial homotopy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopySearch {
    /// A homotopy, from `f` to `g` unless `reversed`.
    pub homotopy: Option<SimplicialHomotopy>,
    pub reversed: bool,
    pub nodes: u128,
}

#[derive(Clone, Copy)]
enum Op {
    Id,
    Face(usize),
    Degen(usize),
}

#[derive(Clone, Copy)]
struct Term {
    var: usize,
    op: Op,
}

struct Csp<'a> {
    dst: &'a TruncatedSimplicialSet,
    /// Dimension `n` of each variable's source simplex.
    dim: Vec<usize>,
    domains: Vec<Vec<usize>>,
    /// Constraints whose later variable is the key.
    checks: Vec<Vec<(Term, Term)>>,
    value: Vec<usize>,
    nodes: u128,
    limit: u128,
}

impl Csp<'_> {
    fn eval(&self, t: Term) -> usize {
        let y = self.value[t.var];
        let k = self.dim[t.var] + 1;
        match t.op {
            Op::Id => y,
            Op::Face(i) => self.dst.face(k, i, y),
            Op::Degen(i) => self.dst.degen(k, i, y),
        }
    }

    fn solve(&mut self, pos: usize) -> Result<bool> {
        if pos == self.value.len() {
            return Ok(true);
        }
        for vi in 0..self.domains[pos].len() {
            self.nodes += 1;
            if self.nodes > self.limit {
                return Err(Error::Budget {
                    what: "homotopy search nodes".into(),
                    needed: self.nodes,
                    limit: self.limit,
                });
            }
            self.value[pos] = self.domains[pos][vi];
            let ok = self.checks[pos]
                .iter()
                .all(|&(l, r)| self.eval(l) == self.eval(r));
            if ok && self.solve(pos + 1)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

fn search_one(
    src: &TruncatedSimplicialSet,
    dst: &TruncatedSimplicialSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
    top: usize,
    limit: u128,
) -> Result<(Option<SimplicialHomotopy>, u128)> {
    let mut ids = Vec::new();
    let mut index = vec![Vec::new(); top];
    let mut dim = Vec::new();
    for (n, level) in index.iter_mut().enumerate() {
        for j in 0..=n {
            let mut row = Vec::with_capacity(src.counts[n]);
            for x in 0..src.counts[n] {
                row.push(ids.len());
                ids.push((n, j, x));
                dim.push(n);
            }
            level.push(row);
        }
    }
    let var = |n: usize, j: usize, x: usize| index[n][j][x];
    let domains: Vec<Vec<usize>> = ids
        .iter()
        .map(|&(n, j, x)| {
            (0..dst.counts[n + 1])
                .filter(|&y| {
                    (j != 0 || dst.face(n + 1, 0, y) == f.maps[n][x])
                        && (j != n || dst.face(n + 1, n + 1, y) == g.maps[n][x])
                })
                .collect()
        })
        .collect();
    let mut checks = vec![Vec::new(); ids.len()];
    let mut add = |l: Term, r: Term| {
        let last = l.var.max(r.var);
        checks[last].push((l, r));
    };
    for &(n, j, x) in &ids {
        let me = var(n, j, x);
        for i in 0..=n + 1 {
            let lhs = Term {
                var: me,
                op: Op::Face(i),
            };
            if i < j {
                add(
                    lhs,
                    Term {
                        var: var(n - 1, j - 1, src.face(n, i, x)),
                        op: Op::Id,
                    },
                );
            } else if i == j && j > 0 {
                add(
                    lhs,
                    Term {
                        var: var(n, j - 1, x),
                        op: Op::Face(j),
                    },
                );
            } else if i > j + 1 {
                add(
                    lhs,
                    Term {
                        var: var(n - 1, j, src.face(n, i - 1, x)),
                        op: Op::Id,
                    },
                );
            }
        }
        if n + 1 < top {
            for i in 0..=n + 1 {
                let lhs = Term {
                    var: me,
                    op: Op::Degen(i),
                };
                let rhs = if i <= j {
                    var(n + 1, j + 1, src.degen(n, i, x))
                } else {
                    var(n + 1, j, src.degen(n, i - 1, x))
                };
                add(
                    lhs,
                    Term {
                        var: rhs,
                        op: Op::Id,
                    },
                );
            }
        }
    }
    let mut csp = Csp {
        dst,
        dim,
        domains,
        checks,
        value: vec![0; ids.len()],
        nodes: 0,
        limit,
    };
    if !csp.solve(0)? {
        return Ok((None, csp.nodes));
    }
    let maps = (0..top)
        .map(|n| {
            (0..=n)
                .map(|j| {
                    (0..src.counts[n])
                        .map(|x| csp.value[var(n, j, x)])
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok((Some(SimplicialHomotopy { maps }), csp.nodes))
}

/// Searches all assignments `h_j: X_n -> Y_{n+1}` (`n < N`) for a
/// simplicial homotopy between `f` and `g`, in either direction.
pub fn search_homotopy(
    src: &TruncatedSimplicialSet,
    dst: &TruncatedSimplicialSet,
    f: &SimplicialMap,
    g: &SimplicialMap,
    budget: &Budget,
) -> Result<HomotopySearch> {
    if dst.n < src.n {
        return Err(Error::Input(
            "the target must be built at least as far as the source".into(),
        ));
    }
    let top = src.n;
    let (found, nodes) = search_one(src, dst, f, g, top, budget.search_nodes)?;
    if found.is_some() {
        return Ok(HomotopySearch {
            homotopy: found,
            reversed: false,
            nodes,
        });
    }
    let (back, more) = search_one(
        src,
        dst,
        g,
        f,
        top,
        budget.search_nodes.saturating_sub(nodes),
    )?;
    Ok(HomotopySearch {
        homotopy: back,
        reversed: true,
        nodes: nodes + more,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{duskin_nerve, ordinary_nerve};
    use super::*;
    use crate::xmod::{are_cohomologous, enumerate_z1};

    fn setup(
        x: &CrossedModule,
        gamma: &FiniteGroup,
        n: usize,
    ) -> (Nerve<Vec<usize>>, Nerve<PSimplex>) {
        let b = Budget::default();
        (
            ordinary_nerve(gamma, n, &b).unwrap(),
            duskin_nerve(x, n, &b).unwrap(),
        )
    }

    #[test]
    fn every_cocycle_gives_a_simplicial_map() {
        let gamma = FiniteGroup::cyclic(2);
        for x in [
            CrossedModule::identity(FiniteGroup::cyclic(2)),
            CrossedModule::abelian(FiniteGroup::cyclic(2)).unwrap(),
            CrossedModule::identity(FiniteGroup::symmetric(3)),
        ] {
            let (src, dst) = setup(&x, &gamma, 3);
            for c in enumerate_z1(&gamma, &x, &Budget::default()).unwrap() {
                cocycle_to_simplicial_map(&gamma, &x, &c, &src, &dst).unwrap();
            }
        }
    }

    #[test]
    fn trivial_cocycle_maps_to_the_basepoint() {
        let gamma = FiniteGroup::cyclic(3);
        let x = CrossedModule::abelian(FiniteGroup::cyclic(2)).unwrap();
        let (src, dst) = setup(&x, &gamma, 3);
        let map = cocycle_to_simplicial_map(&gamma, &x, &Cocycle1::trivial(&gamma, &x), &src, &dst)
            .unwrap();
        for k in 0..=3 {
            let base = dst.index_of(k, &PSimplex::identity(k, &x)).unwrap();
            assert!(map.maps[k].iter().all(|&y| y == base));
        }
    }

    #[test]
    fn homomorphisms_give_nerve_maps() {
        let gamma = FiniteGroup::cyclic(2);
        let g = FiniteGroup::symmetric(3);
        let x = CrossedModule::of_group(g.clone());
        let (src, dst) = setup(&x, &gamma, 3);
        let ord = ordinary_nerve(&g, 3, &Budget::default()).unwrap();
        for c in enumerate_z1(&gamma, &x, &Budget::default()).unwrap() {
            let map = cocycle_to_simplicial_map(&gamma, &x, &c, &src, &dst).unwrap();
            for (k, level) in map.maps.iter().enumerate() {
                for (chain, &y) in src.simplices[k].iter().zip(level) {
                    let image: Vec<usize> = chain.iter().map(|&a| c.alpha[a]).collect();
                    assert_eq!(
                        dst.simplex(k, y).spine(),
                        ord.simplex(k, ord.index_of(k, &image).unwrap()).clone()
                    );
                }
            }
        }
    }

    #[test]
    fn identical_cocycles_give_a_constant_homotopy() {
        let gamma = FiniteGroup::cyclic(2);
        let x = CrossedModule::abelian(FiniteGroup::cyclic(2)).unwrap();
        let (src, dst) = setup(&x, &gamma, 3);
        for c in enumerate_z1(&gamma, &x, &Budget::default()).unwrap() {
            let h = coboundary_to_homotopy(
                &gamma,
                &x,
                &c,
                &c,
                &Witness::identity(&gamma, &x),
                &src,
                &dst,
            )
            .unwrap();
            let f = cocycle_to_simplicial_map(&gamma, &x, &c, &src, &dst).unwrap();
            for (n, level) in h.maps.iter().enumerate() {
                for (j, comp) in level.iter().enumerate() {
                    for (xi, &y) in comp.iter().enumerate() {
                        assert_eq!(y, dst.set.degen(n, j, f.maps[n][xi]));
                    }
                }
            }
        }
    }

    #[test]
    fn witnesses_give_homotopies_by_both_routes() {
        let b = Budget::default();
        for (gamma, x) in [
            (
                FiniteGroup::cyclic(2),
                CrossedModule::identity(FiniteGroup::cyclic(2)),
            ),
            (
                FiniteGroup::cyclic(2),
                CrossedModule::identity(FiniteGroup::symmetric(3)),
            ),
            (
                FiniteGroup::cyclic(3),
                CrossedModule::identity(FiniteGroup::symmetric(3)),
            ),
        ] {
            let (src, dst) = setup(&x, &gamma, 3);
            let z1 = enumerate_z1(&gamma, &x, &b).unwrap();
            for a in &z1 {
                for bb in &z1 {
                    let Some(wit) = are_cohomologous(&gamma, &x, a, bb, false, &b).unwrap() else {
                        continue;
                    };
                    coboundary_to_homotopy(&gamma, &x, a, bb, &wit, &src, &dst).unwrap();
                    let (mid, h1, h2) =
                        coboundary_to_homotopy_via_conjugation(&gamma, &x, a, bb, &wit, &src, &dst)
                            .unwrap();
                    let fa = cocycle_to_simplicial_map(&gamma, &x, a, &src, &dst).unwrap();
                    let fm = cocycle_to_simplicial_map(&gamma, &x, &mid, &src, &dst).unwrap();
                    let fb = cocycle_to_simplicial_map(&gamma, &x, bb, &src, &dst).unwrap();
                    assert_eq!(verify_homotopy(&h1, &src.set, &dst.set, &fa, &fm), None);
                    assert_eq!(verify_homotopy(&h2, &src.set, &dst.set, &fm, &fb), None);
                }
            }
        }
    }

    #[test]
    fn bad_witness_is_rejected_at_a_pair() {
        let gamma = FiniteGroup::cyclic(2);
        let x = CrossedModule::identity(FiniteGroup::cyclic(2));
        let (src, dst) = setup(&x, &gamma, 3);
        let a = Cocycle1::trivial(&gamma, &x);
        let wit = Witness {
            gamma: 0,
            w: vec![0, 1],
        };
        let err = coboundary_to_homotopy(&gamma, &x, &a, &a, &wit, &src, &dst).unwrap_err();
        assert_eq!(
            err,
            Error::InvalidWitness("alpha relation fails at g = 1".into())
        );
    }

    #[test]
    fn search_separates_classes() {
        let gamma = FiniteGroup::cyclic(2);
        let x = CrossedModule::abelian(FiniteGroup::cyclic(2)).unwrap();
        let (src, dst) = setup(&x, &gamma, 3);
        let b = Budget::default();
        let z1 = enumerate_z1(&gamma, &x, &b).unwrap();
        for a in &z1 {
            for c in &z1 {
                let fa = cocycle_to_simplicial_map(&gamma, &x, a, &src, &dst).unwrap();
                let fc = cocycle_to_simplicial_map(&gamma, &x, c, &src, &dst).unwrap();
                let found = search_homotopy(&src.set, &dst.set, &fa, &fc, &b).unwrap();
                let cohomologous = are_cohomologous(&gamma, &x, a, c, true, &b)
                    .unwrap()
                    .is_some();
                assert_eq!(found.homotopy.is_some(), cohomologous);
                if let Some(h) = found.homotopy {
                    let (l, r) = if found.reversed {
                        (&fc, &fa)
                    } else {
                        (&fa, &fc)
                    };
                    assert_eq!(verify_homotopy(&h, &src.set, &dst.set, l, r), None);
                }
            }
        }
    }
}
