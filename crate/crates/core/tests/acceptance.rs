//! Acceptance run. Each check compares the library against an oracle written
//! here from the definitions, and prints one PASS or FAIL line.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::f64::consts::TAU;
use std::time::Instant;

use crossmod::duskin::{
    coboundary_to_homotopy, cocycle_to_simplicial_map, duskin_nerve, homology, monoidal_diag_nerve,
    ordinary_nerve, ordinary_to_duskin_isomorphism, search_homotopy, verify_appendix_retraction,
    verify_homotopy, TruncatedSimplicialSet,
};
use crossmod::grpcore::{cohomology, AbelianCoefficients, FiniteGroup};
use crossmod::obstr::{
    clock_shift_kernel, cyclic_extension, matrix_kernel_obstruction, perturbation_check,
    verify_exactness, Theta,
};
use crossmod::unitary::{
    check_exp_inequalities, check_sandwich, conjugation_invariance, decompose_path,
    decomposition_battery, dlhs_delta, el_tau, homomorphism_check, membership_consistency,
    random_hermitian, random_su, random_unitary, su_tau_member, trial_rng, Regime, Tolerances,
    Unitary, UnitaryPath, SLACK_THRESHOLD,
};
use crossmod::xmod::{
    abelian_shift, are_cohomologous, cocycle_violations, compute_h1, enumerate_z1, Cocycle1,
    CrossedModule, Witness,
};
use crossmod::Budget;
use nalgebra::DMatrix;
use num_complex::Complex64;

type Check = Result<String, String>;
type CMat = DMatrix<Complex64>;
/// A cocycle `(α, u)` with `u` as residues.
type Pair = (Vec<usize>, Vec<u8>);
/// Name, time limit in seconds, and the check.
type Criterion = (&'static str, Option<f64>, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T>(r: crossmod::Result<T>) -> Result<T, String> {
    r.map_err(|e| format!("library error: {e}"))
}

const SEED: u64 = 20_240_917;

/// `Z/m_1 x ... x Z/m_r` with the first coordinate most significant.
#[derive(Clone, Debug)]
struct Ab {
    moduli: Vec<usize>,
}

impl Ab {
    fn new(moduli: &[usize]) -> Self {
        Ab {
            moduli: moduli.to_vec(),
        }
    }

    fn order(&self) -> usize {
        self.moduli.iter().product()
    }

    fn coords(&self, mut i: usize) -> Vec<usize> {
        let mut c = vec![0; self.moduli.len()];
        for (slot, &m) in c.iter_mut().zip(&self.moduli).rev() {
            *slot = i % m;
            i /= m;
        }
        c
    }

    fn index(&self, c: &[usize]) -> usize {
        c.iter()
            .zip(&self.moduli)
            .fold(0, |acc, (&x, &m)| acc * m + x % m)
    }

    fn add(&self, a: usize, b: usize) -> usize {
        let (x, y) = (self.coords(a), self.coords(b));
        self.index(&x.iter().zip(&y).map(|(p, q)| p + q).collect::<Vec<_>>())
    }

    fn group(&self) -> FiniteGroup {
        self.moduli
            .iter()
            .map(|&m| FiniteGroup::cyclic(m))
            .reduce(|a, b| FiniteGroup::product(&a, &b))
            .unwrap_or_else(FiniteGroup::trivial)
    }

    fn name(&self) -> String {
        self.moduli
            .iter()
            .map(|m| format!("Z{m}"))
            .collect::<Vec<_>>()
            .join("x")
    }
}

/// The library group with `ab`'s element numbering, or why not.
fn matching_group(ab: &Ab) -> Result<FiniteGroup, String> {
    let g = ab.group();
    ensure!(
        g.order() == ab.order() && g.identity() == 0,
        "{} has an unexpected numbering",
        ab.name()
    );
    for a in 0..ab.order() {
        for b in 0..ab.order() {
            ensure!(
                g.mul(a, b) == ab.add(a, b),
                "{} multiplies {a}, {b} unexpectedly",
                ab.name()
            );
        }
    }
    Ok(g)
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out
            .into_iter()
            .flat_map(|t| {
                (1..n).map(move |g| {
                    let mut t = t.clone();
                    t.push(g);
                    t
                })
            })
            .collect();
    }
    out
}

/// Normalized `k`-cochains of `Γ` in `Z/m`, indexed by non-identity tuples,
/// with the twisted coboundary `σ_{g_1}` on the first term.
struct Bar {
    gamma: Ab,
    m: usize,
    k: usize,
    vars: Vec<Vec<usize>>,
    pos: HashMap<Vec<usize>, usize>,
}

impl Bar {
    fn new(gamma: &Ab, m: usize, k: usize) -> Self {
        let vars = tuples(gamma.order(), k);
        let pos = vars
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, t)| (t, i))
            .collect();
        Bar {
            gamma: gamma.clone(),
            m,
            k,
            vars,
            pos,
        }
    }

    /// Signed terms `(sign, position)` of `(δf)(t)` for a `(k+1)`-tuple `t`.
    fn terms(&self, t: &[usize], sigma: &[i64]) -> Vec<(i64, usize)> {
        let k = self.k;
        let mut out = Vec::new();
        let mut push = |sign: i64, s: Vec<usize>| {
            if let Some(&p) = self.pos.get(&s) {
                out.push((sign, p));
            }
        };
        push(sigma[t[0]], t[1..].to_vec());
        for i in 0..k {
            let mut s = t[..i].to_vec();
            s.push(self.gamma.add(t[i], t[i + 1]));
            s.extend_from_slice(&t[i + 2..]);
            push(if (i + 1) % 2 == 0 { 1 } else { -1 }, s);
        }
        push(
            if (k + 1).is_multiple_of(2) { 1 } else { -1 },
            t[..k].to_vec(),
        );
        out
    }

    fn eval(&self, f: &[u8], terms: &[(i64, usize)]) -> u8 {
        let m = self.m as i64;
        terms
            .iter()
            .map(|&(s, p)| s * f[p] as i64)
            .sum::<i64>()
            .rem_euclid(m) as u8
    }

    fn coboundary(&self, f: &[u8], sigma: &[i64]) -> Vec<u8> {
        tuples(self.gamma.order(), self.k + 1)
            .iter()
            .map(|t| self.eval(f, &self.terms(t, sigma)))
            .collect()
    }

    /// Every cochain, by odometer.
    fn all(&self) -> Vec<Vec<u8>> {
        let len = self.vars.len();
        let mut out = Vec::new();
        let mut f = vec![0u8; len];
        loop {
            out.push(f.clone());
            let Some(p) = f.iter().position(|&x| (x as usize) + 1 < self.m) else {
                break;
            };
            f[p] += 1;
            f[..p].iter_mut().for_each(|x| *x = 0);
        }
        out
    }

    /// Every cocycle, by depth-first search checking each equation once its
    /// last entry is set.
    fn cocycles(&self, sigma: &[i64]) -> Vec<Vec<u8>> {
        let mut checks: Vec<Vec<Vec<(i64, usize)>>> = vec![Vec::new(); self.vars.len()];
        for t in tuples(self.gamma.order(), self.k + 1) {
            let terms = self.terms(&t, sigma);
            if let Some(last) = terms.iter().map(|&(_, p)| p).max() {
                checks[last].push(terms);
            }
        }
        let mut out = Vec::new();
        let mut f = vec![0u8; self.vars.len()];
        self.dfs(0, &mut f, &checks, &mut out);
        out
    }

    fn dfs(
        &self,
        p: usize,
        f: &mut Vec<u8>,
        checks: &[Vec<Vec<(i64, usize)>>],
        out: &mut Vec<Vec<u8>>,
    ) {
        if p == f.len() {
            out.push(f.clone());
            return;
        }
        for v in 0..self.m as u8 {
            f[p] = v;
            if checks[p].iter().all(|terms| self.eval(f, terms) == 0) {
                self.dfs(p + 1, f, checks, out);
            }
        }
        f[p] = 0;
    }
}

fn trivial_sigma(n: usize) -> Vec<i64> {
    vec![1; n]
}

/// `Z^k / B^k` with trivial coefficients `Z/m`: its order and, for each `d | m`,
/// the number of classes killed by `d`.
fn bar_cohomology(gamma: &Ab, m: usize, k: usize) -> (usize, Vec<(usize, usize)>) {
    let n = gamma.order();
    let sigma = trivial_sigma(n);
    let lower = Bar::new(gamma, m, k - 1);
    let upper = Bar::new(gamma, m, k);
    let b: HashSet<Vec<u8>> = lower
        .all()
        .iter()
        .map(|f| lower.coboundary(f, &sigma))
        .collect();
    let z = upper.cocycles(&sigma);
    let signature = (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| {
            let killed = z
                .iter()
                .filter(|c| {
                    b.contains(
                        &c.iter()
                            .map(|&x| ((x as usize * d) % m) as u8)
                            .collect::<Vec<_>>(),
                    )
                })
                .count();
            (d, killed / b.len())
        })
        .collect();
    (z.len() / b.len(), signature)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The same signature for `⊕ Z/f_i`.
fn signature_of(factors: &[u64], m: usize) -> Vec<(usize, usize)> {
    (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .map(|d| (d, factors.iter().map(|&f| gcd(d, f as usize)).product()))
        .collect()
}

fn budget() -> Budget {
    Budget::default()
}

fn classical_cohomology() -> Check {
    let mut notes = Vec::new();
    let cases: [(usize, usize, Option<usize>); 4] =
        [(2, 2, Some(2)), (2, 3, None), (3, 3, None), (4, 3, None)];
    for (n, k, finite) in cases {
        let ab = Ab::new(&[n]);
        let g = matching_group(&ab)?;
        let module = match finite {
            Some(m) => AbelianCoefficients::finite(&[m as u64]),
            None => AbelianCoefficients::circle(),
        };
        let h = lib(cohomology(&g, &module, k, &budget()))?;
        let factors = h.invariant_factors().to_vec();
        // Q/Z[n] = (1/n)Z/Z, so H^3(Z/n, Q/Z) ≅ H^3(Z/n, Z/n) through the periodic resolution
        let m = finite.unwrap_or(n);
        let (order, signature) = bar_cohomology(&ab, m, k);
        ensure!(
            signature == signature_of(&factors, m)
                && order as u64 == factors.iter().product::<u64>(),
            "H^{k}(Z{n}) library {factors:?}, enumeration order {order} signature {signature:?}"
        );
        let expected = vec![n as u64];
        ensure!(
            factors == expected,
            "H^{k}(Z{n}) is {factors:?}, expected {expected:?}"
        );
        notes.push(format!(
            "H^{k}(Z{n},{})={factors:?}",
            if finite.is_some() { "Z2" } else { "Q/Z" }
        ));
    }
    Ok(notes.join(" "))
}

fn abelian_shift_check() -> Check {
    let mut total = 0;
    for gamma_ab in [Ab::new(&[2]), Ab::new(&[3]), Ab::new(&[2, 2])] {
        let gamma = matching_group(&gamma_ab)?;
        for m in [2usize, 4] {
            let h_ab = Ab::new(&[m]);
            let h = matching_group(&h_ab)?;
            let x = lib(CrossedModule::abelian(h))?;
            let h1 = lib(compute_h1(&gamma, &x, false, false, &budget()))?;
            let shift = lib(abelian_shift(&gamma, x.h(), &budget()))?;

            let bar = Bar::new(&gamma_ab, m, 2);
            let lower = Bar::new(&gamma_ab, m, 1);
            let sigma = trivial_sigma(gamma_ab.order());
            let b: Vec<Vec<u8>> = lower
                .all()
                .iter()
                .map(|f| lower.coboundary(f, &sigma))
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect();
            let z = bar.cocycles(&sigma);
            let key = |c: &[u8]| -> Vec<u8> {
                b.iter()
                    .map(|d| {
                        c.iter()
                            .zip(d)
                            .map(|(&x, &y)| ((x as usize + y as usize) % m) as u8)
                            .collect::<Vec<u8>>()
                    })
                    .min()
                    .expect("B contains 0")
            };
            let classes: BTreeSet<Vec<u8>> = z.iter().map(|c| key(c)).collect();
            let (order, signature) = bar_cohomology(&gamma_ab, m, 2);
            let label = format!("{} with {}", gamma_ab.name(), h_ab.name());

            ensure!(
                h1.z1_count == z.len(),
                "{label}: {} cocycles, enumeration finds {}",
                h1.z1_count,
                z.len()
            );
            ensure!(
                h1.len() == classes.len() && order == classes.len(),
                "{label}: |H1| = {}, |H2| = {}",
                h1.len(),
                classes.len()
            );
            let n = gamma_ab.order();
            let hit: BTreeSet<Vec<u8>> = h1
                .representatives()
                .map(|c| {
                    key(&bar
                        .vars
                        .iter()
                        .map(|t| c.u[t[0] * n + t[1]] as u8)
                        .collect::<Vec<_>>())
                })
                .collect();
            ensure!(
                hit == classes,
                "{label}: H1 representatives do not hit every H2 class once"
            );
            ensure!(
                shift.bijective && shift.basepoint_to_zero,
                "{label}: library shift is not a pointed bijection"
            );
            ensure!(
                signature == signature_of(&shift.h2_factors, m),
                "{label}: H2 factors {:?}",
                shift.h2_factors
            );
            total += h1.len();
        }
    }
    Ok(format!("6 pairs, {total} classes matched"))
}

/// `Z/2 -> Z/4 -> Z/2` over `G` acting by `signs`, from the definitions.
struct BocksteinOracle {
    gamma: Ab,
    signs: Vec<i64>,
    /// `(α, u mod 2)` cocycles and their class.
    target: Vec<Pair>,
    target_class: HashMap<Pair, usize>,
    target_count: usize,
    source_count: usize,
    image: BTreeSet<usize>,
    b3: HashSet<Vec<u8>>,
    b3_vars: Vec<Vec<usize>>,
}

fn homomorphisms(gamma: &Ab, g_order: usize) -> Vec<Vec<usize>> {
    let n = gamma.order();
    let mut out = Vec::new();
    let mut a = vec![0usize; n];
    loop {
        if a[0] == 0
            && (0..n).all(|x| (0..n).all(|y| a[gamma.add(x, y)] == (a[x] + a[y]) % g_order))
        {
            out.push(a.clone());
        }
        let Some(p) = a.iter().position(|&v| v + 1 < g_order) else {
            break;
        };
        a[p] += 1;
        a[..p].iter_mut().for_each(|v| *v = 0);
    }
    out
}

/// Orbits of `(α, u)` under `u ↦ γ·u` and `u ↦ u + δ_α w`.
fn classes(
    gamma: &Ab,
    m: usize,
    signs: &[i64],
    cocycles: &[Pair],
) -> (HashMap<Pair, usize>, usize) {
    let n = gamma.order();
    let bar = Bar::new(gamma, m, 2);
    let index: HashMap<&Pair, usize> = cocycles.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut class = vec![usize::MAX; cocycles.len()];
    let mut count = 0;
    for start in 0..cocycles.len() {
        if class[start] != usize::MAX {
            continue;
        }
        class[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (alpha, u) = &cocycles[i];
            let mut next = Vec::new();
            for (g, &s) in signs.iter().enumerate() {
                if g > 0 {
                    next.push(
                        u.iter()
                            .map(|&v| ((s * v as i64).rem_euclid(m as i64)) as u8)
                            .collect::<Vec<_>>(),
                    );
                }
            }
            for g in 1..n {
                // w = δ_{g}: w(g) = 1
                let w = |x: usize| i64::from(x == g);
                next.push(
                    bar.vars
                        .iter()
                        .zip(u)
                        .map(|(t, &v)| {
                            let (a, b) = (t[0], t[1]);
                            let d = w(a) + signs[alpha[a]] * w(b) - w(gamma.add(a, b));
                            ((v as i64 + d).rem_euclid(m as i64)) as u8
                        })
                        .collect(),
                );
            }
            for u2 in next {
                let j = index[&(alpha.clone(), u2)];
                if class[j] == usize::MAX {
                    class[j] = count;
                    queue.push_back(j);
                }
            }
        }
        count += 1;
    }
    (cocycles.iter().cloned().zip(class).collect(), count)
}

impl BocksteinOracle {
    fn new(gamma: &Ab, signs: &[i64]) -> Self {
        let n = gamma.order();
        let homs = homomorphisms(gamma, signs.len());
        let all = |m: usize| -> Vec<Pair> {
            homs.iter()
                .flat_map(|alpha| {
                    let sigma: Vec<i64> = (0..n).map(|g| signs[alpha[g]]).collect();
                    Bar::new(gamma, m, 2)
                        .cocycles(&sigma)
                        .into_iter()
                        .map(move |u| (alpha.clone(), u))
                })
                .collect()
        };
        let target = all(2);
        let source = all(4);
        let (target_class, target_count) = classes(gamma, 2, signs, &target);
        let (_, source_count) = classes(gamma, 4, signs, &source);
        let image = source
            .iter()
            .map(|(a, u)| target_class[&(a.clone(), u.iter().map(|&v| v % 2).collect::<Vec<u8>>())])
            .collect();
        // K = {0, 2} carries the trivial action
        let lower = Bar::new(gamma, 2, 2);
        let sigma = trivial_sigma(n);
        let b3 = lower
            .all()
            .iter()
            .map(|f| lower.coboundary(f, &sigma))
            .collect();
        BocksteinOracle {
            gamma: gamma.clone(),
            signs: signs.to_vec(),
            target,
            target_class,
            target_count,
            source_count,
            image,
            b3,
            b3_vars: tuples(n, 3),
        }
    }

    /// `ω/2` for the lift `0 ↦ 0, 1 ↦ 1` of `u` into `Z/4`.
    fn omega(&self, alpha: &[usize], u: &[u8]) -> Result<Vec<u8>, String> {
        let n = self.gamma.order();
        let bar = Bar::new(&self.gamma, 2, 2);
        let s = |g: usize, h: usize| -> i64 {
            if g == 0 || h == 0 {
                0
            } else {
                u[bar.pos[&vec![g, h]]] as i64
            }
        };
        let mut out = Vec::new();
        for t in &self.b3_vars {
            let (g, h, k) = (t[0], t[1], t[2]);
            let w = (self.signs[alpha[g]] * s(h, k) + s(g, self.gamma.add(h, k))
                - s(self.gamma.add(g, h), k)
                - s(g, h))
            .rem_euclid(4);
            if w % 2 != 0 {
                return Err(format!("ω leaves the kernel at {t:?}"));
            }
            out.push((w / 2) as u8);
        }
        debug_assert_eq!(out.len(), (n - 1).pow(3));
        Ok(out)
    }

    fn is_coboundary(&self, z: &[u8]) -> bool {
        self.b3.contains(z)
    }
}

fn extension_setups() -> Vec<(&'static str, FiniteGroup, Vec<i64>)> {
    vec![
        ("G=1", FiniteGroup::trivial(), vec![1]),
        ("G=Z2 by inversion", FiniteGroup::cyclic(2), vec![1, -1]),
    ]
}

fn bockstein_exactness() -> Check {
    let mut notes = Vec::new();
    for (gname, g, signs) in extension_setups() {
        let e = lib(cyclic_extension(2, 2, &g, &signs))?;
        for gamma_ab in [Ab::new(&[2]), Ab::new(&[4]), Ab::new(&[2, 2])] {
            let gamma = matching_group(&gamma_ab)?;
            let label = format!("{gname}, Γ={}", gamma_ab.name());
            let oracle = BocksteinOracle::new(&gamma_ab, &signs);
            let mut zero_classes = BTreeSet::new();
            let mut status: HashMap<usize, bool> = HashMap::new();
            for (alpha, u) in &oracle.target {
                let zero = oracle.is_coboundary(&oracle.omega(alpha, u)?);
                let class = oracle.target_class[&(alpha.clone(), u.clone())];
                ensure!(
                    *status.entry(class).or_insert(zero) == zero,
                    "{label}: θ is not constant on a class"
                );
                if zero {
                    zero_classes.insert(class);
                }
            }
            ensure!(
                oracle.image == zero_classes,
                "{label}: oracle image {:?} differs from θ⁻¹(0) {zero_classes:?}",
                oracle.image
            );

            let report = lib(verify_exactness(&e, &gamma, &budget()))?;
            ensure!(
                report.exact(),
                "{label}: library reports a failure of exactness"
            );
            ensure!(
                report.target_classes == oracle.target_count
                    && report.source_classes == oracle.source_count,
                "{label}: library has {} and {} classes, oracle {} and {}",
                report.source_classes,
                report.target_classes,
                oracle.source_count,
                oracle.target_count
            );
            ensure!(
                report.theta_kernel.len() == zero_classes.len()
                    && report.pushforward_image.len() == oracle.image.len(),
                "{label}: kernel or image sizes differ"
            );

            let n = gamma_ab.order();
            let bar = Bar::new(&gamma_ab, 2, 2);
            for c in lib(compute_h1(&gamma, e.x1(), false, false, &budget()))?.representatives() {
                let t = lib(Theta::new(&e, &gamma, c, &budget()))?;
                let class = lib(t.class(&t.canonical_lift()))?;
                let u: Vec<u8> = bar
                    .vars
                    .iter()
                    .map(|v| c.u[v[0] * n + v[1]] as u8)
                    .collect();
                let ours = oracle.omega(&c.alpha, &u)?;
                let theirs: Vec<u8> = oracle
                    .b3_vars
                    .iter()
                    .map(|v| (class.representative.get(v)[0] % 2) as u8)
                    .collect();
                let diff: Vec<u8> = ours.iter().zip(&theirs).map(|(a, b)| a ^ b).collect();
                ensure!(
                    oracle.is_coboundary(&diff),
                    "{label}: θ({c:?}) is not the Bockstein class"
                );
                ensure!(
                    class.is_zero() == oracle.is_coboundary(&ours),
                    "{label}: θ({c:?}) zero-ness differs"
                );
            }
            notes.push(format!(
                "{label}: {}/{} classes, |θ⁻¹(0)|={}",
                oracle.source_count,
                oracle.target_count,
                zero_classes.len()
            ));
        }
    }
    Ok(notes.join("; "))
}

fn lift_independence() -> Check {
    let gamma_ab = Ab::new(&[2]);
    let gamma = matching_group(&gamma_ab)?;
    let mut notes = Vec::new();
    for (gname, g, signs) in extension_setups() {
        let e = lib(cyclic_extension(2, 2, &g, &signs))?;
        for c in lib(compute_h1(&gamma, e.x1(), false, false, &budget()))?.representatives() {
            let t = lib(Theta::new(&e, &gamma, c, &budget()))?;
            let sweep = lib(t.lift_sweep(&budget()))?;
            ensure!(
                sweep.lifts == 16 && sweep.classes.len() == 1,
                "{gname}: sweep {sweep:?} for {c:?}"
            );

            // every lift v ∈ {u, u + 2}, including degenerate entries
            let triple = |g: usize, h: usize, k: usize| (g * 2 + h) * 2 + k;
            let omega = |v: &[i64]| -> Vec<u8> {
                let mut out = vec![0u8; 8];
                for g in 0..2 {
                    for h in 0..2 {
                        for k in 0..2 {
                            let w = (signs[c.alpha[g]] * v[h * 2 + k] + v[g * 2 + (h + k) % 2]
                                - v[((g + h) % 2) * 2 + k]
                                - v[g * 2 + h])
                                .rem_euclid(4);
                            out[triple(g, h, k)] = (w / 2) as u8;
                        }
                    }
                }
                out
            };
            let coboundaries: HashSet<Vec<u8>> = (0..16u8)
                .map(|bits| {
                    let b = |g: usize, h: usize| (bits >> (g * 2 + h)) & 1;
                    let mut out = vec![0u8; 8];
                    for g in 0..2 {
                        for h in 0..2 {
                            for k in 0..2 {
                                out[triple(g, h, k)] =
                                    b(h, k) ^ b((g + h) % 2, k) ^ b(g, (h + k) % 2) ^ b(g, h);
                            }
                        }
                    }
                    out
                })
                .collect();
            let base: Vec<i64> = c.u.iter().map(|&x| x as i64).collect();
            let reference = omega(&base);
            for bits in 0..16usize {
                let v: Vec<i64> = base
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| x + 2 * ((bits >> i) & 1) as i64)
                    .collect();
                let d: Vec<u8> = omega(&v)
                    .iter()
                    .zip(&reference)
                    .map(|(a, b)| a ^ b)
                    .collect();
                ensure!(
                    coboundaries.contains(&d),
                    "{gname}: lift {v:?} changes the class"
                );
            }
            notes.push(format!("{gname} alpha={:?} u11={}", c.alpha, c.u[3]));
        }
    }
    Ok(format!("16 lifts, one class each: {}", notes.join(", ")))
}

/// The `(i, i+1)` edge of a `k`-simplex, as a 1-simplex index.
fn edge(s: &TruncatedSimplicialSet, k: usize, x: usize, i: usize) -> usize {
    let mut verts: Vec<usize> = (0..=k).collect();
    let (mut level, mut y) = (k, x);
    for v in (0..=k).rev() {
        if v != i && v != i + 1 {
            let p = verts.iter().position(|&w| w == v).expect("vertex present");
            y = s.faces[level][p][y];
            verts.remove(p);
            level -= 1;
        }
    }
    y
}

/// Checks `x ↦ (φ(edges of x))` against tuple faces and degeneracies.
fn nerve_iso(
    g: &FiniteGroup,
    s: &TruncatedSimplicialSet,
    n: usize,
    inverse: bool,
    reverse: bool,
) -> bool {
    let order = g.order();
    let phi1 = |e: usize| if inverse { g.inv(e) } else { e };
    let code = |t: &[usize]| t.iter().fold(0usize, |acc, &x| acc * order + x);
    let compose = |a: usize, b: usize| if reverse { g.mul(b, a) } else { g.mul(a, b) };
    let maps: Vec<Vec<Vec<usize>>> = (0..=n)
        .map(|k| {
            (0..s.counts[k])
                .map(|x| (0..k).map(|i| phi1(edge(s, k, x, i))).collect())
                .collect()
        })
        .collect();
    for k in 0..=n {
        let codes: HashSet<usize> = maps[k].iter().map(|t| code(t)).collect();
        if s.counts[k] != order.pow(k as u32) || codes.len() != s.counts[k] {
            return false;
        }
        for x in 0..s.counts[k] {
            let t = &maps[k][x];
            for i in 0..=k {
                if k == 0 {
                    break;
                }
                let mut f = t.clone();
                if i == 0 {
                    f.remove(0);
                } else if i == k {
                    f.pop();
                } else {
                    f[i - 1] = compose(t[i - 1], t[i]);
                    f.remove(i);
                }
                if maps[k - 1][s.faces[k][i][x]] != f {
                    return false;
                }
            }
            if k < n {
                for j in 0..=k {
                    let mut d = t.clone();
                    d.insert(j, g.identity());
                    if maps[k + 1][s.degens[k][j][x]] != d {
                        return false;
                    }
                }
            }
        }
    }
    true
}

fn duskin_degenerate() -> Check {
    let mut notes = Vec::new();
    for (name, g) in [
        ("Z2", FiniteGroup::cyclic(2)),
        ("S3", FiniteGroup::symmetric(3)),
    ] {
        let report = lib(ordinary_to_duskin_isomorphism(&g, 4, &budget()))?;
        ensure!(
            report.holds(),
            "{name}: library isomorphism fails: {report:?}"
        );
        let dn = lib(duskin_nerve(
            &CrossedModule::of_group(g.clone()),
            4,
            &budget(),
        ))?;
        let found = [(false, false), (true, false), (false, true), (true, true)]
            .into_iter()
            .find(|&(inv, rev)| nerve_iso(&g, &dn.set, 4, inv, rev));
        ensure!(
            found.is_some(),
            "{name}: no edge labelling identifies the Duskin nerve with tuples"
        );
        notes.push(format!("{name}: counts {:?}", dn.set.counts));
    }
    Ok(notes.join("; "))
}

const BIG_PRIMES: [u64; 2] = [1_000_000_007, 998_244_353];
const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

/// Rank mod `p` of `∂_k`, rows the `k`-simplices, by reduction against a pivot basis.
fn boundary_rank(s: &TruncatedSimplicialSet, k: usize, p: u64) -> usize {
    let cols = s.counts[k - 1];
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; cols];
    let mut rank = 0;
    for x in 0..s.counts[k] {
        let mut row = vec![0u64; cols];
        for i in 0..=k {
            let y = s.faces[k][i][x];
            row[y] = (row[y] + if i % 2 == 0 { 1 } else { p - 1 }) % p;
        }
        for c in 0..cols {
            if row[c] == 0 {
                continue;
            }
            match &basis[c] {
                Some(b) => {
                    let f = row[c];
                    for (r, &v) in row.iter_mut().zip(b).skip(c) {
                        *r = (*r + p - f * v % p) % p;
                    }
                }
                None => {
                    let inv = pow_mod(row[c], p - 2, p);
                    row.iter_mut().for_each(|v| *v = *v * inv % p);
                    basis[c] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Betti numbers and `p`-torsion ranks in degrees `0..=maxdeg` from ranks of
/// the boundary maps over `Q` and `F_p`.
#[derive(Debug, PartialEq)]
struct RankHomology {
    betti: Vec<usize>,
    torsion: Vec<BTreeMap<u64, usize>>,
}

fn rank_homology(s: &TruncatedSimplicialSet, maxdeg: usize) -> RankHomology {
    let rational = |k: usize| -> usize {
        if k == 0 {
            0
        } else {
            BIG_PRIMES
                .iter()
                .map(|&p| boundary_rank(s, k, p))
                .max()
                .expect("primes")
        }
    };
    let r: Vec<usize> = (0..=maxdeg + 1).map(rational).collect();
    let betti = (0..=maxdeg)
        .map(|k| s.counts[k] - r[k] - r[k + 1])
        .collect();
    let torsion = (0..=maxdeg)
        .map(|k| {
            SMALL_PRIMES
                .iter()
                .map(|&p| (p, r[k + 1] - boundary_rank(s, k + 1, p)))
                .collect()
        })
        .collect();
    RankHomology { betti, torsion }
}

fn rank_homology_of(factors: &[Vec<u64>]) -> RankHomology {
    RankHomology {
        betti: factors
            .iter()
            .map(|f| f.iter().filter(|&&x| x == 0).count())
            .collect(),
        torsion: factors
            .iter()
            .map(|f| {
                SMALL_PRIMES
                    .iter()
                    .map(|&p| (p, f.iter().filter(|&&x| x > 1 && x % p == 0).count()))
                    .collect()
            })
            .collect(),
    }
}

fn library_factors(s: &TruncatedSimplicialSet, maxdeg: usize) -> Result<Vec<Vec<u64>>, String> {
    Ok(lib(homology(s, maxdeg, &budget()))?
        .into_iter()
        .map(|h| h.factors)
        .collect())
}

fn eilenberg_maclane() -> Check {
    let mut notes = Vec::new();
    for m in [2u64, 3] {
        let x = lib(CrossedModule::abelian(FiniteGroup::cyclic(m as usize)))?;
        let s = lib(duskin_nerve(&x, 4, &budget()))?.set;
        let factors = library_factors(&s, 2)?;
        let expected = vec![vec![0], vec![], vec![m]];
        ensure!(
            factors == expected,
            "Z{m}: library homology {factors:?}, expected {expected:?}"
        );
        let oracle = rank_homology(&s, 2);
        ensure!(
            oracle == rank_homology_of(&expected),
            "Z{m}: rank oracle {oracle:?}"
        );
        notes.push(format!("Z{m}: H0=Z H1=0 H2=Z{m}"));
    }
    Ok(notes.join("; "))
}

fn small_xmods() -> Result<Vec<(String, CrossedModule)>, String> {
    Ok(vec![
        (
            "(Z2->1)".into(),
            lib(CrossedModule::abelian(FiniteGroup::cyclic(2)))?,
        ),
        (
            "(Z3->1)".into(),
            lib(CrossedModule::abelian(FiniteGroup::cyclic(3)))?,
        ),
        (
            "(1->Z2)".into(),
            CrossedModule::of_group(FiniteGroup::cyclic(2)),
        ),
        (
            "(Z2->id Z2)".into(),
            CrossedModule::identity(FiniteGroup::cyclic(2)),
        ),
    ])
}

fn diagonal_agreement() -> Check {
    let mut notes = Vec::new();
    for (name, x) in small_xmods()? {
        let d = lib(duskin_nerve(&x, 3, &budget()))?.set;
        let m = lib(monoidal_diag_nerve(&x, 3, &budget()))?.set;
        let (fd, fm) = (library_factors(&d, 2)?, library_factors(&m, 2)?);
        ensure!(fd == fm, "{name}: library homology {fd:?} against {fm:?}");
        let (od, om) = (rank_homology(&d, 2), rank_homology(&m, 2));
        ensure!(
            od == om && od == rank_homology_of(&fd),
            "{name}: rank oracle {od:?} / {om:?}, library {fd:?}"
        );
        notes.push(format!("{name} {fd:?}"));
    }
    Ok(notes.join("; "))
}

fn appendix_mechanics() -> Check {
    let mut notes = Vec::new();
    for (name, x) in small_xmods()?
        .into_iter()
        .filter(|(n, _)| n == "(Z2->1)" || n == "(Z2->id Z2)")
    {
        let r = lib(verify_appendix_retraction(&x, 3, 3, &budget()))?;
        ensure!(
            r.passed() && r.identities_checked > 0,
            "{name}: {} failures, first {:?}",
            r.failure_count,
            r.failures.first()
        );
        notes.push(format!("{name}: {} identities", r.identities_checked));
    }
    Ok(notes.join("; "))
}

/// `(e, w)` acting on `(α, u)`: `α'_g = ∂(w_g) α_g`, `u'_{g,h} = w_g α_g(w_h) u_{g,h} w_{gh}⁻¹`.
fn gauge(gamma: &FiniteGroup, x: &CrossedModule, c: &Cocycle1, w: &[usize]) -> Cocycle1 {
    let n = gamma.order();
    let h = x.h();
    let alpha = gamma
        .elements()
        .map(|g| x.g().mul(x.bd(w[g]), c.alpha[g]))
        .collect();
    let mut u = vec![h.identity(); n * n];
    for g in gamma.elements() {
        for k in gamma.elements() {
            let v = h.mul(h.mul(w[g], x.act(c.alpha[g], w[k])), c.u[g * n + k]);
            u[g * n + k] = h.mul(v, h.inv(w[gamma.mul(g, k)]));
        }
    }
    Cocycle1 { alpha, u }
}

fn normalized_functions(n: usize, m: usize) -> Vec<Vec<usize>> {
    (0..m.pow(n as u32 - 1))
        .map(|mut i| {
            let mut w = vec![0; n];
            for slot in w.iter_mut().skip(1) {
                *slot = i % m;
                i /= m;
            }
            w
        })
        .collect()
}

fn homotopies() -> Check {
    let mut pairs = 0;
    for gamma in [FiniteGroup::cyclic(2), FiniteGroup::cyclic(3)] {
        for (name, x) in small_xmods()?
            .into_iter()
            .filter(|(n, _)| n == "(Z2->1)" || n == "(Z2->id Z2)")
        {
            let src = lib(ordinary_nerve(&gamma, 3, &budget()))?;
            let dst = lib(duskin_nerve(&x, 3, &budget()))?;
            for a in lib(enumerate_z1(&gamma, &x, &budget()))? {
                let f = lib(cocycle_to_simplicial_map(&gamma, &x, &a, &src, &dst))?;
                for w in normalized_functions(gamma.order(), x.h().order()) {
                    let b = gauge(&gamma, &x, &a, &w);
                    ensure!(
                        cocycle_violations(&gamma, &x, &b).is_empty(),
                        "{name}: gauge image is not a cocycle"
                    );
                    let g = lib(cocycle_to_simplicial_map(&gamma, &x, &b, &src, &dst))?;
                    let ours = Witness {
                        gamma: x.g().identity(),
                        w: w.clone(),
                    };
                    let found = lib(are_cohomologous(&gamma, &x, &a, &b, true, &budget()))?;
                    ensure!(found.is_some(), "{name}: library misses the witness {w:?}");
                    for wit in [ours, found.expect("checked")] {
                        let h = lib(coboundary_to_homotopy(&gamma, &x, &a, &b, &wit, &src, &dst))?;
                        let bad = verify_homotopy(&h, &src.set, &dst.set, &f, &g);
                        ensure!(
                            bad.is_none(),
                            "{name}: homotopy for {wit:?} fails at {bad:?}"
                        );
                    }
                    pairs += 1;
                }
            }
        }
    }

    let gamma = FiniteGroup::cyclic(2);
    let x = lib(CrossedModule::abelian(FiniteGroup::cyclic(2)))?;
    let z1 = lib(enumerate_z1(&gamma, &x, &budget()))?;
    ensure!(
        z1.len() == 2,
        "expected two cocycles of Z2 in (Z2->1), found {}",
        z1.len()
    );
    let (a, b) = (&z1[0], &z1[1]);
    let orbit: Vec<Cocycle1> = normalized_functions(2, 2)
        .iter()
        .map(|w| gauge(&gamma, &x, a, w))
        .collect();
    ensure!(
        !orbit.contains(b),
        "oracle finds the two cocycles cohomologous"
    );
    ensure!(
        lib(are_cohomologous(&gamma, &x, a, b, false, &budget()))?.is_none(),
        "library finds a witness"
    );
    let src = lib(ordinary_nerve(&gamma, 3, &budget()))?;
    let dst = lib(duskin_nerve(&x, 3, &budget()))?;
    let f = lib(cocycle_to_simplicial_map(&gamma, &x, a, &src, &dst))?;
    let g = lib(cocycle_to_simplicial_map(&gamma, &x, b, &src, &dst))?;
    let search = lib(search_homotopy(&src.set, &dst.set, &f, &g, &budget()))?;
    ensure!(
        search.homotopy.is_none(),
        "search found a homotopy between non-cohomologous cocycles"
    );
    Ok(format!("{pairs} cohomologous pairs with verified homotopies; exhaustive search over {} nodes finds none", search.nodes))
}

/// `e^{A}` by scaling, Taylor series and squaring.
fn expm(a: &CMat) -> CMat {
    let norm = a.iter().map(|z| z.norm()).sum::<f64>();
    let squarings = norm.log2().ceil().max(0.0) as u32 + 1;
    let scaled = a / Complex64::new(2f64.powi(squarings as i32), 0.0);
    let n = a.nrows();
    let mut term = CMat::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

fn opnorm(a: &CMat) -> f64 {
    a.clone().singular_values().max()
}

fn times_i(h: &CMat) -> CMat {
    h * Complex64::new(0.0, 1.0)
}

fn circle(a: f64, b: f64, period: f64) -> f64 {
    let d = (a - b).rem_euclid(period);
    d.min(period - d)
}

fn numeric_battery() -> Check {
    let tol = Tolerances::default();
    let exp = lib(check_exp_inequalities(6, 10_000, SEED))?;
    ensure!(
        exp.holds()
            && exp.min_lower_slack >= SLACK_THRESHOLD
            && exp.min_upper_slack >= SLACK_THRESHOLD,
        "exponential inequalities: {exp:?}"
    );
    let hom = lib(homomorphism_check(4, 1000, SEED, &tol))?;
    ensure!(
        hom.max_class_residual < 1e-8 && hom.max_path_residual < 1e-8,
        "homomorphism: {hom:?}"
    );
    let mem = lib(membership_consistency(4, 1000, SEED, &tol))?;
    ensure!(mem.mismatches == 0, "membership: {mem:?}");
    let sand = lib(check_sandwich(4, 1000, 1.0, SEED, &tol))?;
    ensure!(sand.holds(), "sandwich: {sand:?}");
    let conj = lib(conjugation_invariance(4, 1000, SEED, &tol))?;
    ensure!(
        conj.exact_regime == conj.samples && conj.max_difference < 1e-9,
        "conjugation: {conj:?}"
    );

    // oracles: Taylor exponential, determinant phase, determinant one, spectral norm
    let mut worst_exp: f64 = f64::INFINITY;
    let mut worst_delta: f64 = 0.0;
    let mut worst_el: f64 = 0.0;
    for t in 0..1000u64 {
        let mut rng = trial_rng(SEED ^ 0x5eed, t);
        let n = 1 + (t as usize % 6);
        if t < 300 {
            let h1 = random_hermitian::<f64>(n, 1.0 - (t as f64) / 600.0, &mut rng);
            let h2 = random_hermitian::<f64>(n, (t as f64) / 300.0, &mut rng);
            let d = opnorm(&(h1.mat() - h2.mat()));
            let de = opnorm(&(expm(&times_i(h1.mat())) - expm(&times_i(h2.mat()))));
            let (n1, n2) = (opnorm(h1.mat()), opnorm(h2.mat()));
            worst_exp = worst_exp.min(d - de).min(de - d * (1.0 - (n1 + n2) / 2.0));

            if n >= 2 {
                let r = 3.0 * (t as f64 + 1.0) / 301.0;
                let h = random_hermitian::<f64>(n, 1.0, &mut rng).trace_free();
                let h = h.mat() * Complex64::new(r / opnorm(h.mat()), 0.0);
                let u = lib(Unitary::new(expm(&times_i(&h)), tol.unitarity))?;
                let el = lib(el_tau(&u, &tol))?;
                ensure!(
                    el.regime == Regime::Exact,
                    "el of a short trace-free exponential is not exact"
                );
                worst_el = worst_el.max((el.value - opnorm(&h)).abs());
            }
        }
        let u = random_unitary::<f64>(n, &mut rng);
        let delta = lib(dlhs_delta(&u, SEED, &tol))?;
        let phase = u.mat().determinant().arg() / (TAU * n as f64);
        worst_delta = worst_delta.max(circle(delta.value, phase, 1.0 / n as f64));

        let sample = match t % 4 {
            0 => random_su::<f64>(n, &mut rng),
            1 => Unitary::scalar(n, TAU * (t % 7) as f64 / n as f64),
            2 => Unitary::scalar(n, 0.1 + 6.0 * (t as f64) / 1000.0),
            _ => random_unitary::<f64>(n, &mut rng),
        };
        let det_one = (sample.mat().determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-8;
        ensure!(
            lib(su_tau_member(&sample, &tol))?.member == det_one,
            "membership differs from det = 1 at sample {t}"
        );
    }
    ensure!(
        worst_exp >= SLACK_THRESHOLD,
        "Taylor oracle slack {worst_exp:e}"
    );
    ensure!(
        worst_delta < 1e-8,
        "class differs from the determinant phase by {worst_delta:e}"
    );
    ensure!(
        worst_el < 1e-9,
        "el differs from the spectral norm by {worst_el:e}"
    );
    Ok(format!(
        "exp slacks {:.2e}/{:.2e} over {}; homomorphism {:.1e}; membership {} members; sandwich {:.2e}; conjugation {:.1e}; oracles {:.1e}/{:.1e}/{:.1e}",
        exp.min_lower_slack,
        exp.min_upper_slack,
        exp.trials,
        hom.max_class_residual.max(hom.max_path_residual),
        mem.members,
        sand.min_slacks.iter().copied().fold(f64::INFINITY, f64::min),
        conj.max_difference,
        worst_exp,
        worst_delta,
        worst_el
    ))
}

fn matrix_obstruction() -> Check {
    let (gamma, mats) = clock_shift_kernel(3);
    let o = lib(matrix_kernel_obstruction(
        &gamma,
        &mats,
        1e-9,
        None,
        &budget(),
    ))?;
    ensure!(
        o.class.is_zero(),
        "clock-shift class {:?} is not zero",
        o.class.coordinates
    );
    let w = o.witness.as_ref().ok_or("no coboundary witness")?;

    // ω from the matrices, and δw evaluated on it
    let n = gamma.order();
    let dim = mats[0].nrows() as f64;
    let u = |g: usize, h: usize| -> f64 {
        let d = &mats[g] * &mats[h] * mats[gamma.mul(g, h)].adjoint();
        (d.trace() / Complex64::new(dim, 0.0)).arg() / TAU
    };
    let wv = |g: usize, h: usize| w.get(&[g, h])[0] as f64 / w.denom() as f64;
    let mut worst: f64 = 0.0;
    for g in 0..n {
        for h in 0..n {
            for k in 0..n {
                let omega = u(h, k) + u(g, gamma.mul(h, k)) - u(gamma.mul(g, h), k) - u(g, h);
                let dw = wv(h, k) - wv(gamma.mul(g, h), k) + wv(g, gamma.mul(h, k)) - wv(g, h);
                worst = worst.max(circle(omega, dw, 1.0));
            }
        }
    }
    ensure!(worst < 1e-8, "δ(witness) differs from ω by {worst:e}");
    let p = lib(perturbation_check(
        &gamma,
        &mats,
        1e-9,
        None,
        100,
        SEED,
        &budget(),
    ))?;
    ensure!(
        p.class_changes == 0 && p.max_omega_snap_residual < 1e-8 && p.max_scalar_residual < 1e-8,
        "perturbations: {p:?}"
    );
    Ok(format!(
        "zero class, witness residual {worst:.1e}; 100 perturbations, residuals {:.1e}/{:.1e}",
        p.max_omega_snap_residual, p.max_scalar_residual
    ))
}

fn decomposition() -> Check {
    let tol = Tolerances::default();
    let d = lib(decomposition_battery(4, 100, 64, SEED, &tol))?;
    ensure!(
        d.max_reconstruction_error < 1e-9
            && d.max_det_error < 1e-9
            && d.max_refinement_difference < 1e-8,
        "battery: {d:?}"
    );

    // h(t) = (t tr h1 + t² tr h2)/(2πn) for t ↦ e^{ith1} e^{it²h2}
    let mut worst: f64 = 0.0;
    for t in 0..20u64 {
        let mut rng = trial_rng(SEED ^ 0xdec0, t);
        let n = 1 + (t as usize % 4);
        let h1 = random_hermitian::<f64>(n, 0.4 * t as f64, &mut rng);
        let h2 = random_hermitian::<f64>(n, 0.2 * t as f64, &mut rng);
        let f = |s: f64| {
            expm(&times_i(&(h1.mat() * Complex64::new(s, 0.0))))
                * expm(&times_i(&(h2.mat() * Complex64::new(s * s, 0.0))))
        };
        let ts: Vec<f64> = (0..64).map(|k| k as f64 / 63.0).collect();
        let mats = ts
            .iter()
            .map(|&s| Unitary::new(f(s), tol.unitarity))
            .collect::<crossmod::Result<Vec<_>>>();
        let path = lib(UnitaryPath::new(ts.clone(), lib(mats)?, tol.unitarity))?;
        let dec = lib(decompose_path(&path, &tol))?;
        let (tr1, tr2) = (h1.mat().trace().re, h2.mat().trace().re);
        for (k, &s) in ts.iter().enumerate() {
            let expected = (s * tr1 + s * s * tr2) / (TAU * n as f64);
            let g = dec.g[k].mat();
            let back = g * Complex64::from_polar(1.0, TAU * dec.h[k]);
            worst = worst
                .max((dec.h[k] - expected).abs())
                .max((g.determinant() - Complex64::new(1.0, 0.0)).norm())
                .max(opnorm(&(back - f(s))));
        }
    }
    ensure!(worst < 1e-9, "oracle residual {worst:e}");
    Ok(format!(
        "100 paths: reconstruction {:.1e}, det {:.1e}, refinement {:.1e}, winding up to {:.2}; oracle {worst:.1e}",
        d.max_reconstruction_error, d.max_det_error, d.max_refinement_difference, d.max_winding
    ))
}

fn main() {
    let checks: [Criterion; 12] = [
        ("classical cohomology", Some(60.0), classical_cohomology),
        ("abelian shift", Some(60.0), abelian_shift_check),
        ("exactness and Bockstein", Some(300.0), bockstein_exactness),
        ("lift independence", None, lift_independence),
        ("Duskin nerve of 1 -> G", Some(60.0), duskin_degenerate),
        ("K(Z/m, 2) homology", Some(300.0), eilenberg_maclane),
        (
            "Duskin and diagonal homology",
            Some(600.0),
            diagonal_agreement,
        ),
        ("retraction identities", Some(300.0), appendix_mechanics),
        ("cocycles and homotopies", Some(300.0), homotopies),
        ("unitary numerics", Some(120.0), numeric_battery),
        ("matrix obstruction", Some(60.0), matrix_obstruction),
        ("path decomposition", Some(60.0), decomposition),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in checks.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let slow = limit.is_some_and(|l| secs >= l);
        let bound = limit.map_or(String::new(), |l| format!(" of {l:.0} s"));
        let (tag, detail) = match (&outcome, slow) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over the time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("{tag} {:>2} {name} ({secs:.2} s{bound}): {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} check(s) failed");
        std::process::exit(1);
    }
}
