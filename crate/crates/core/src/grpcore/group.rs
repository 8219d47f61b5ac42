//! Finite groups as explicit multiplication tables.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{input, Error, Result};
use crate::grpcore::smith::{smith_normal_form, IntMatrix};

/// A finite group on the elements `0..order`.
///
/// Element order is the canonical order used by every enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "GroupJson", into = "GroupJson")]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    label: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GroupJson {
    order: usize,
    mul: Vec<Vec<usize>>,
    #[serde(default)]
    label: String,
}

impl TryFrom<GroupJson> for FiniteGroup {
    type Error = Error;

    fn try_from(j: GroupJson) -> Result<Self> {
        if j.mul.len() != j.order {
            return input(format!(
                "group table has {} rows, order is {}",
                j.mul.len(),
                j.order
            ));
        }
        FiniteGroup::from_table(j.mul, &j.label)
    }
}

impl From<FiniteGroup> for GroupJson {
    fn from(g: FiniteGroup) -> Self {
        GroupJson {
            order: g.order,
            mul: g.mul.chunks(g.order).map(|r| r.to_vec()).collect(),
            label: g.label,
        }
    }
}

/// One failed group axiom, with the elements that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "kebab-case")]
pub enum GroupViolation {
    Shape { rows: usize, expected: usize },
    Closure { a: usize, b: usize, value: usize },
    NoIdentity,
    NoInverse { element: usize },
    Associativity { a: usize, b: usize, c: usize },
}

/// Checks a multiplication table against the group axioms.
pub fn validate_group(table: &[Vec<usize>]) -> Vec<GroupViolation> {
    let n = table.len();
    let mut out = Vec::new();
    for row in table {
        if row.len() != n {
            out.push(GroupViolation::Shape {
                rows: row.len(),
                expected: n,
            });
            return out;
        }
    }
    for (a, row) in table.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            if v >= n {
                out.push(GroupViolation::Closure { a, b, value: v });
            }
        }
    }
    if !out.is_empty() || n == 0 {
        if n == 0 {
            out.push(GroupViolation::NoIdentity);
        }
        return out;
    }
    let identity = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x));
    let Some(e) = identity else {
        out.push(GroupViolation::NoIdentity);
        return out;
    };
    for x in 0..n {
        if !(0..n).any(|y| table[x][y] == e && table[y][x] == e) {
            out.push(GroupViolation::NoInverse { element: x });
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    out.push(GroupViolation::Associativity { a, b, c });
                    return out;
                }
            }
        }
    }
    out
}

impl FiniteGroup {
    /// Builds a group from a full table, rejecting anything that is not a group.
    pub fn from_table(table: Vec<Vec<usize>>, label: &str) -> Result<Self> {
        let v = validate_group(&table);
        if let Some(first) = v.first() {
            return input(format!("not a group: {first:?}"));
        }
        let n = table.len();
        let mul: Vec<usize> = table.into_iter().flatten().collect();
        Ok(Self::from_flat_unchecked(n, mul, label))
    }

    fn from_flat_unchecked(n: usize, mul: Vec<usize>, label: &str) -> Self {
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| mul[e * n + x] == x))
            .expect("validated table has an identity");
        let inverse = (0..n)
            .map(|x| {
                (0..n)
                    .find(|&y| mul[x * n + y] == identity)
                    .expect("validated table has inverses")
            })
            .collect();
        FiniteGroup {
            order: n,
            mul,
            identity,
            inverse,
            label: label.to_string(),
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with `k` as the residue `k`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let mul = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Self::from_flat_unchecked(n, mul, &format!("Z{n}"))
    }

    /// Direct product; `(a, b)` is element `a * |B| + b`.
    pub fn product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order, b.order);
        let n = na * nb;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let p = a.mul(x / nb, y / nb);
                let q = b.mul(x % nb, y % nb);
                mul[x * n + y] = p * nb + q;
            }
        }
        Self::from_flat_unchecked(n, mul, &format!("{}x{}", a.label, b.label))
    }

    /// The symmetric group on `k` letters, permutations in lexicographic order.
    /// Composition is `(p*q)(i) = p(q(i))`.
    pub fn symmetric(k: usize) -> Self {
        let perms = permutations(k);
        let index: HashMap<Vec<usize>, usize> = perms
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, p)| (p, i))
            .collect();
        let n = perms.len();
        let mut mul = vec![0; n * n];
        for (i, p) in perms.iter().enumerate() {
            for (j, q) in perms.iter().enumerate() {
                let r: Vec<usize> = (0..k).map(|x| p[q[x]]).collect();
                mul[i * n + j] = index[&r];
            }
        }
        Self::from_flat_unchecked(n, mul, &format!("S{k}"))
    }

    /// The dihedral group of order `2m`: `r^a s^b` is element `2a + b`.
    pub fn dihedral(m: usize) -> Self {
        let n = 2 * m;
        let mut mul = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let (a1, b1) = (x / 2, x % 2);
                let (a2, b2) = (y / 2, y % 2);
                // s r^a = r^-a s
                let a = if b1 == 0 {
                    (a1 + a2) % m
                } else {
                    (a1 + m - a2 % m) % m
                };
                let b = (b1 + b2) % 2;
                mul[x * n + y] = 2 * a + b;
            }
        }
        Self::from_flat_unchecked(n, mul, &format!("D{m}"))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    /// Elements other than the identity, in canonical order.
    pub fn non_identity(&self) -> Vec<usize> {
        self.elements().filter(|&x| x != self.identity).collect()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// Product of a word, left to right; the identity for the empty word.
    pub fn product_of(&self, word: &[usize]) -> usize {
        word.iter().fold(self.identity, |acc, &x| self.mul(acc, x))
    }

    /// The subgroup on `elements`, re-indexed in the given order, with its
    /// embedding back into `self`.
    pub fn subgroup(&self, elements: &[usize], label: &str) -> Result<(FiniteGroup, Vec<usize>)> {
        let pos: HashMap<usize, usize> =
            elements.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut table = Vec::with_capacity(elements.len());
        for &a in elements {
            let mut row = Vec::with_capacity(elements.len());
            for &b in elements {
                match pos.get(&self.mul(a, b)) {
                    Some(&k) => row.push(k),
                    None => return input("subset is not closed under multiplication"),
                }
            }
            table.push(row);
        }
        Ok((FiniteGroup::from_table(table, label)?, elements.to_vec()))
    }

    /// Invariant-factor decomposition of an abelian group.
    pub fn abelian_structure(&self) -> Result<AbelianStructure> {
        if !self.is_abelian() {
            return input(format!("group {} is not abelian", self.label));
        }
        let n = self.order;
        // relations e_a + e_b - e_ab among the free generators e_x
        let mut rels: Vec<Vec<i64>> = Vec::new();
        for a in 0..n {
            for b in a..n {
                let mut r = vec![0i64; n];
                r[a] += 1;
                r[b] += 1;
                r[self.mul(a, b)] -= 1;
                rels.push(r);
            }
        }
        // columns are relations
        let mut m = IntMatrix::zeros(n, rels.len());
        for (j, r) in rels.iter().enumerate() {
            for i in 0..n {
                m.set(i, j, r[i]);
            }
        }
        let s = smith_normal_form(&m, true)?;
        let p = s.left.expect("tracked");
        let mut factors = Vec::new();
        let mut keep = Vec::new();
        for i in 0..n {
            let d = s.diagonal.get(i).copied().unwrap_or(0);
            if d != 1 {
                // a zero pivot cannot happen for a finite group
                if d == 0 {
                    return Err(Error::Internal("free summand in a finite group".into()));
                }
                factors.push(d as u64);
                keep.push(i);
            }
        }
        let coords: Vec<Vec<u64>> = (0..n)
            .map(|x| {
                keep.iter()
                    .zip(&factors)
                    .map(|(&i, &d)| p.get(i, x).rem_euclid(d as i64) as u64)
                    .collect()
            })
            .collect();
        let index: HashMap<Vec<u64>, usize> = coords
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect();
        if index.len() != n {
            return Err(Error::Internal(
                "abelian coordinates are not injective".into(),
            ));
        }
        Ok(AbelianStructure {
            factors,
            coords,
            index,
        })
    }
}

/// An isomorphism between an abelian [`FiniteGroup`] and `Z/d_1 x ... x Z/d_k`.
#[derive(Clone, Debug)]
pub struct AbelianStructure {
    pub factors: Vec<u64>,
    coords: Vec<Vec<u64>>,
    index: HashMap<Vec<u64>, usize>,
}

impl AbelianStructure {
    pub fn to_coords(&self, x: usize) -> &[u64] {
        &self.coords[x]
    }

    pub fn from_coords(&self, c: &[u64]) -> usize {
        let reduced: Vec<u64> = c.iter().zip(&self.factors).map(|(v, d)| v % d).collect();
        self.index[&reduced]
    }
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                rec(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// A homomorphism given by its value table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupHom {
    pub source: FiniteGroup,
    pub target: FiniteGroup,
    pub map: Vec<usize>,
}

/// A pair of elements on which a map fails to be multiplicative.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub a: usize,
    pub b: usize,
}

impl GroupHom {
    pub fn new(source: FiniteGroup, target: FiniteGroup, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() || map.iter().any(|&x| x >= target.order()) {
            return input("homomorphism table has the wrong shape");
        }
        let h = GroupHom {
            source,
            target,
            map,
        };
        if let Some(v) = h.violations().first() {
            return input(format!(
                "not a homomorphism: f({} * {}) != f({}) * f({})",
                v.a, v.b, v.a, v.b
            ));
        }
        Ok(h)
    }

    pub fn violations(&self) -> Vec<HomViolation> {
        let mut out = Vec::new();
        for a in self.source.elements() {
            for b in self.source.elements() {
                if self.map[self.source.mul(a, b)] != self.target.mul(self.map[a], self.map[b]) {
                    out.push(HomViolation { a, b });
                }
            }
        }
        out
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.source
            .elements()
            .filter(|&x| self.map[x] == self.target.identity())
            .collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut im: Vec<usize> = self.map.clone();
        im.sort_unstable();
        im.dedup();
        im
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target.order()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}
