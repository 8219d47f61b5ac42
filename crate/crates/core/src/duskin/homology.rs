use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::TruncatedSimplicialSet;
use crate::budget::Budget;
use crate::error::{check_budget, input, Error, Result};
use crate::grpcore::{invariant_factors, IntMatrix};

/// One integral homology group: torsion factors ascending, then a `0` for
/// each free summand.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub factors: Vec<u64>,
}

impl HomologyGroup {
    pub fn rank(&self) -> usize {
        self.factors.iter().filter(|&&f| f == 0).count()
    }

    pub fn torsion(&self) -> Vec<u64> {
        self.factors.iter().copied().filter(|&f| f != 0).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }
}

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct Reduction {
    pub rank: usize,
    pub torsion: Vec<u64>,
}

/// A sparse integer matrix stored by columns, with the row supports indexed.
struct Sparse {
    cols: Vec<HashMap<usize, i64>>,
    rows: Vec<HashSet<usize>>,
}

impl Sparse {
    fn new(nrows: usize, cols: Vec<HashMap<usize, i64>>) -> Self {
        let mut rows = vec![HashSet::new(); nrows];
        for (c, col) in cols.iter().enumerate() {
            for &r in col.keys() {
                rows[r].insert(c);
            }
        }
        Sparse { cols, rows }
    }

    /// `col[dst] -= f * col[src]`.
    fn axpy(&mut self, dst: usize, src: usize, f: i64) -> Result<()> {
        let entries: Vec<(usize, i64)> = self.cols[src].iter().map(|(&r, &v)| (r, v)).collect();
        for (r, v) in entries {
            let d = v.checked_mul(f).ok_or(Error::Overflow)?;
            let cur = self.cols[dst].get(&r).copied().unwrap_or(0);
            let new = cur.checked_sub(d).ok_or(Error::Overflow)?;
            if new == 0 {
                self.cols[dst].remove(&r);
                self.rows[r].remove(&dst);
            } else {
                self.cols[dst].insert(r, new);
                self.rows[r].insert(dst);
            }
        }
        Ok(())
    }

    fn remove_pivot(&mut self, r: usize, c: usize) {
        for &rr in self.cols[c].keys() {
            self.rows[rr].remove(&c);
        }
        self.cols[c].clear();
        for &cc in &self.rows[r] {
            self.cols[cc].remove(&r);
        }
        self.rows[r].clear();
    }

    /// Eliminates unit pivots, preferring short columns and short rows.
    fn eliminate_units(&mut self) -> Result<usize> {
        let mut rank = 0;
        loop {
            let mut order: Vec<usize> = (0..self.cols.len())
                .filter(|&c| !self.cols[c].is_empty())
                .collect();
            order.sort_by_key(|&c| self.cols[c].len());
            let mut progressed = false;
            for c in order {
                let pivot = self.cols[c]
                    .iter()
                    .filter(|(_, v)| v.abs() == 1)
                    .min_by_key(|(&r, _)| (self.rows[r].len(), r))
                    .map(|(&r, &v)| (r, v));
                let Some((r, p)) = pivot else { continue };
                let others: Vec<usize> =
                    self.rows[r].iter().copied().filter(|&cc| cc != c).collect();
                for cc in others {
                    let a = self.cols[cc][&r];
                    self.axpy(cc, c, a * p)?;
                }
                self.remove_pivot(r, c);
                rank += 1;
                progressed = true;
            }
            if !progressed {
                return Ok(rank);
            }
        }
    }
}

/// Rank and torsion of the matrix with `nrows` rows and the given sparse columns.
pub(crate) fn reduce(
    nrows: usize,
    cols: Vec<HashMap<usize, i64>>,
    budget: &Budget,
) -> Result<Reduction> {
    let mut m = Sparse::new(nrows, cols);
    let rank = m.eliminate_units()?;
    let live_cols: Vec<usize> = (0..m.cols.len())
        .filter(|&c| !m.cols[c].is_empty())
        .collect();
    if live_cols.is_empty() {
        return Ok(Reduction {
            rank,
            torsion: Vec::new(),
        });
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|&r| !m.rows[r].is_empty()).collect();
    check_budget(
        "dense remainder entries",
        (live_rows.len() as u128) * (live_cols.len() as u128),
        budget.matrix_entries,
    )?;
    let row_pos: HashMap<usize, usize> =
        live_rows.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let mut dense = IntMatrix::<i64>::zeros(live_rows.len(), live_cols.len());
    for (j, &c) in live_cols.iter().enumerate() {
        for (&r, &v) in &m.cols[c] {
            dense.set(row_pos[&r], j, v);
        }
    }
    let (r2, factors) = invariant_factors(&dense);
    let torsion = factors
        .iter()
        .filter(|f| **f > num_bigint::BigInt::from(1))
        .map(|f| u64::try_from(f).map_err(|_| Error::Overflow))
        .collect::<Result<Vec<u64>>>()?;
    Ok(Reduction {
        rank: rank + r2,
        torsion,
    })
}

/// Nondegenerate simplices of each dimension and their positions.
fn normalized_bases(s: &TruncatedSimplicialSet, top: usize) -> Vec<Vec<Option<usize>>> {
    (0..=top)
        .map(|k| {
            let mask = s.degenerate_mask(k);
            let mut next = 0;
            mask.iter()
                .map(|&d| {
                    if d {
                        None
                    } else {
                        next += 1;
                        Some(next - 1)
                    }
                })
                .collect()
        })
        .collect()
}

/// The normalized boundary `C_k -> C_{k-1}` as sparse columns.
fn boundary(
    s: &TruncatedSimplicialSet,
    bases: &[Vec<Option<usize>>],
    k: usize,
) -> Vec<HashMap<usize, i64>> {
    let mut cols = Vec::new();
    for x in 0..s.counts[k] {
        if bases[k][x].is_none() {
            continue;
        }
        let mut col: HashMap<usize, i64> = HashMap::new();
        for i in 0..=k {
            if let Some(r) = bases[k - 1][s.face(k, i, x)] {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                *col.entry(r).or_insert(0) += sign;
            }
        }
        col.retain(|_, v| *v != 0);
        cols.push(col);
    }
    cols
}

/// Integral homology in degrees `0..=maxdeg` of the normalized chain complex.
pub fn homology(
    s: &TruncatedSimplicialSet,
    maxdeg: usize,
    budget: &Budget,
) -> Result<Vec<HomologyGroup>> {
    if maxdeg + 1 > s.n {
        return input(format!(
            "homology through degree {maxdeg} needs simplices of dimension {}, the truncation is {}",
            maxdeg + 1,
            s.n
        ));
    }
    let bases = normalized_bases(s, maxdeg + 1);
    let dims: Vec<usize> = bases
        .iter()
        .map(|b| b.iter().filter(|x| x.is_some()).count())
        .collect();
    let mut reductions = vec![Reduction::default()];
    for k in 1..=maxdeg + 1 {
        check_budget(
            &format!("boundary matrix in degree {k}"),
            (dims[k] as u128) * (k as u128 + 1),
            budget.matrix_entries,
        )?;
        reductions.push(reduce(dims[k - 1], boundary(s, &bases, k), budget)?);
    }
    Ok((0..=maxdeg)
        .map(|k| {
            let free = dims[k] - reductions[k].rank - reductions[k + 1].rank;
            let mut factors = reductions[k + 1].torsion.clone();
            factors.sort_unstable();
            factors.extend(std::iter::repeat_n(0, free));
            HomologyGroup { degree: k, factors }
        })
        .collect())
}
