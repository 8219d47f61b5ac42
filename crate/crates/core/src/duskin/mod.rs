//! Truncated simplicial sets: nerves of groups and crossed modules, their
//! integral homology, maps and homotopies between them, and the deformation
//! data comparing the Duskin and monoidal models.

mod appendix;
mod homology;
mod homotopy;
mod nerve;

pub use appendix::{verify_appendix_retraction, AppendixFailure, AppendixReport};
pub use homology::{homology, HomologyGroup};
pub use homotopy::{
    coboundary_to_homotopy, coboundary_to_homotopy_via_conjugation, cocycle_to_simplicial_map,
    search_homotopy, verify_homotopy, HomotopySearch, SimplicialHomotopy,
};
pub use nerve::{
    duskin_nerve, monoidal_diag_nerve, ordinary_nerve, ordinary_to_duskin_isomorphism, DiagSimplex,
    NatTransform, PSimplex,
};

use std::collections::HashMap;
use std::hash::Hash;

use serde::Serialize;

use crate::budget::Budget;
use crate::error::{check_budget, Error, Result};

/// A simplicial set recorded through dimension `N`.
///
/// `faces[k][i][x]` is `d_i` of the `k`-simplex `x` (`1 <= k <= N`);
/// `degens[k][j][x]` is `s_j` of the `k`-simplex `x` (`k < N`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TruncatedSimplicialSet {
    #[serde(rename = "N")]
    pub n: usize,
    pub counts: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degens: Vec<Vec<Vec<usize>>>,
}

/// One failed simplicial identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityViolation {
    pub identity: String,
    pub dim: usize,
    pub simplex: usize,
}

impl TruncatedSimplicialSet {
    #[inline]
    pub fn face(&self, k: usize, i: usize, x: usize) -> usize {
        self.faces[k][i][x]
    }

    #[inline]
    pub fn degen(&self, k: usize, j: usize, x: usize) -> usize {
        self.degens[k][j][x]
    }

    /// Whether the `k`-simplex `x` is in the image of a degeneracy.
    pub fn degenerate_mask(&self, k: usize) -> Vec<bool> {
        let mut mask = vec![false; self.counts[k]];
        if k > 0 {
            for j in 0..k {
                for &y in &self.degens[k - 1][j] {
                    mask[y] = true;
                }
            }
        }
        mask
    }

    /// Checks every simplicial identity whose both sides lie within the truncation.
    pub fn identity_violations(&self) -> Vec<IdentityViolation> {
        let mut out = Vec::new();
        let mut fail = |identity: String, dim: usize, simplex: usize| {
            out.push(IdentityViolation {
                identity,
                dim,
                simplex,
            })
        };
        for k in 2..=self.n {
            for x in 0..self.counts[k] {
                for j in 1..=k {
                    for i in 0..j {
                        if self.face(k - 1, i, self.face(k, j, x))
                            != self.face(k - 1, j - 1, self.face(k, i, x))
                        {
                            fail(format!("d{i} d{j} = d{} d{i}", j - 1), k, x);
                        }
                    }
                }
            }
        }
        for k in 0..self.n {
            for x in 0..self.counts[k] {
                for j in 0..=k {
                    let y = self.degen(k, j, x);
                    for i in 0..=k + 1 {
                        let lhs = self.face(k + 1, i, y);
                        let ok = if i < j {
                            lhs == self.degen(k - 1, j - 1, self.face(k, i, x))
                        } else if i == j || i == j + 1 {
                            lhs == x
                        } else {
                            lhs == self.degen(k - 1, j, self.face(k, i - 1, x))
                        };
                        if !ok {
                            fail(format!("d{i} s{j}"), k, x);
                        }
                    }
                    if k + 1 < self.n {
                        for i in 0..=j {
                            if self.degen(k + 1, i, y)
                                != self.degen(k + 1, j + 1, self.degen(k, i, x))
                            {
                                fail(format!("s{i} s{j} = s{} s{i}", j + 1), k, x);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// A family of simplices closed under faces and degeneracies.
pub trait SimplexModel: Sync {
    type Simplex: Clone + Eq + Hash + Ord + Send + Sync;

    /// All `k`-simplices, given the `(k-1)`-simplices.
    fn simplices(
        &self,
        k: usize,
        lower: &[Self::Simplex],
        budget: &Budget,
    ) -> Result<Vec<Self::Simplex>>;
    fn face(&self, s: &Self::Simplex, i: usize) -> Self::Simplex;
    fn degeneracy(&self, s: &Self::Simplex, j: usize) -> Self::Simplex;
}

/// A truncated simplicial set together with its simplices.
#[derive(Clone, Debug)]
pub struct Nerve<S> {
    pub set: TruncatedSimplicialSet,
    pub simplices: Vec<Vec<S>>,
    index: Vec<HashMap<S, usize>>,
}

impl<S: Clone + Eq + Hash> Nerve<S> {
    pub fn index_of(&self, k: usize, s: &S) -> Option<usize> {
        self.index.get(k).and_then(|m| m.get(s).copied())
    }

    pub fn simplex(&self, k: usize, x: usize) -> &S {
        &self.simplices[k][x]
    }
}

/// Enumerates dimensions `0..=n` and tabulates faces and degeneracies.
pub fn build<M: SimplexModel>(model: &M, n: usize, budget: &Budget) -> Result<Nerve<M::Simplex>> {
    let mut simplices: Vec<Vec<M::Simplex>> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let lower: &[M::Simplex] = if k == 0 { &[] } else { &simplices[k - 1] };
        let mut s = model.simplices(k, lower, budget)?;
        check_budget(&format!("{k}-simplices"), s.len() as u128, budget.simplices)?;
        s.sort_unstable();
        simplices.push(s);
    }
    let index: Vec<HashMap<M::Simplex, usize>> = simplices
        .iter()
        .map(|v| v.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect())
        .collect();
    let lookup = |k: usize, s: &M::Simplex| -> Result<usize> {
        index[k]
            .get(s)
            .copied()
            .ok_or_else(|| Error::Internal(format!("a structure map leaves the {k}-simplices")))
    };
    let mut faces = vec![Vec::new()];
    for k in 1..=n {
        let mut fk = Vec::with_capacity(k + 1);
        for i in 0..=k {
            fk.push(
                simplices[k]
                    .iter()
                    .map(|s| lookup(k - 1, &model.face(s, i)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        faces.push(fk);
    }
    let mut degens = Vec::new();
    for k in 0..n {
        let mut dk = Vec::with_capacity(k + 1);
        for j in 0..=k {
            dk.push(
                simplices[k]
                    .iter()
                    .map(|s| lookup(k + 1, &model.degeneracy(s, j)))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        degens.push(dk);
    }
    Ok(Nerve {
        set: TruncatedSimplicialSet {
            n,
            counts: simplices.iter().map(|s| s.len()).collect(),
            faces,
            degens,
        },
        simplices,
        index,
    })
}

/// A dimensionwise map of truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicialMap {
    pub maps: Vec<Vec<usize>>,
}

impl SimplicialMap {
    /// The first face or degeneracy the map fails to commute with.
    pub fn violation(
        &self,
        src: &TruncatedSimplicialSet,
        dst: &TruncatedSimplicialSet,
    ) -> Option<IdentityViolation> {
        let n = src.n.min(dst.n).min(self.maps.len().saturating_sub(1));
        for k in 0..=n {
            for x in 0..src.counts[k] {
                let fx = self.maps[k][x];
                if k > 0 {
                    for i in 0..=k {
                        if self.maps[k - 1][src.face(k, i, x)] != dst.face(k, i, fx) {
                            return Some(IdentityViolation {
                                identity: format!("f d{i} = d{i} f"),
                                dim: k,
                                simplex: x,
                            });
                        }
                    }
                }
                if k < n {
                    for j in 0..=k {
                        if self.maps[k + 1][src.degen(k, j, x)] != dst.degen(k, j, fx) {
                            return Some(IdentityViolation {
                                identity: format!("f s{j} = s{j} f"),
                                dim: k,
                                simplex: x,
                            });
                        }
                    }
                }
            }
        }
        None
    }
}

/// `θ: [m] -> [k]` skipping `i`.
pub fn coface(i: usize, r: usize) -> usize {
    if r < i {
        r
    } else {
        r + 1
    }
}

/// `σ: [k+1] -> [k]` hitting `j` twice.
pub fn codegeneracy(j: usize, r: usize) -> usize {
    if r <= j {
        r
    } else {
        r - 1
    }
}
