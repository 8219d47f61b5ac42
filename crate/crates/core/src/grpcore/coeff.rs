//! Coefficient modules for group cohomology.

use serde::{Deserialize, Serialize};

use crate::error::{input, Result};
use crate::grpcore::group::FiniteGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoefficientKind {
    /// `Z/d_1 x ... x Z/d_k` with an integer-matrix action.
    FiniteAbelian,
    /// `Q/Z`, acted on by signs.
    RationalCircle,
}

/// A `Γ`-module of coefficients.
///
/// For finite-abelian modules `action[g]` is a `k x k` integer matrix acting
/// on coordinate column vectors. For the rational circle `action[g]` is the
/// `1 x 1` matrix `[±1]`. An empty `action` means the trivial action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbelianCoefficients {
    pub kind: CoefficientKind,
    #[serde(default)]
    pub factors: Vec<u64>,
    #[serde(default)]
    pub action: Vec<Vec<Vec<i64>>>,
    #[serde(default)]
    pub label: String,
}

impl AbelianCoefficients {
    /// `Z/d_1 x ... x Z/d_k` with trivial action.
    pub fn finite(factors: &[u64]) -> Self {
        let label = factors
            .iter()
            .map(|d| format!("Z{d}"))
            .collect::<Vec<_>>()
            .join("x");
        AbelianCoefficients {
            kind: CoefficientKind::FiniteAbelian,
            factors: factors.to_vec(),
            action: Vec::new(),
            label,
        }
    }

    pub fn finite_with_action(factors: &[u64], action: Vec<Vec<Vec<i64>>>, label: &str) -> Self {
        AbelianCoefficients {
            kind: CoefficientKind::FiniteAbelian,
            factors: factors.to_vec(),
            action,
            label: label.to_string(),
        }
    }

    /// `Q/Z` with trivial action.
    pub fn circle() -> Self {
        AbelianCoefficients {
            kind: CoefficientKind::RationalCircle,
            factors: Vec::new(),
            action: Vec::new(),
            label: "Q/Z".into(),
        }
    }

    /// `Q/Z` where `g` acts by `signs[g]`.
    pub fn circle_with_signs(signs: &[i64]) -> Self {
        AbelianCoefficients {
            kind: CoefficientKind::RationalCircle,
            factors: Vec::new(),
            action: signs.iter().map(|&s| vec![vec![s]]).collect(),
            label: "Q/Z(signed)".into(),
        }
    }

    pub fn is_circle(&self) -> bool {
        self.kind == CoefficientKind::RationalCircle
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            CoefficientKind::FiniteAbelian => self.factors.len(),
            CoefficientKind::RationalCircle => 1,
        }
    }

    pub fn has_trivial_action(&self) -> bool {
        let k = self.rank();
        self.action.iter().all(|m| {
            (0..k).all(|i| {
                (0..k).all(|j| {
                    let want = i64::from(i == j);
                    match self.kind {
                        CoefficientKind::FiniteAbelian => {
                            (m[i][j] - want).rem_euclid(self.factors[i] as i64) == 0
                        }
                        CoefficientKind::RationalCircle => m[i][j] == want,
                    }
                })
            })
        })
    }

    /// Checks shapes, well-definedness and the action axioms against `group`.
    pub fn validate(&self, group: &FiniteGroup) -> Result<()> {
        let k = self.rank();
        if self.kind == CoefficientKind::FiniteAbelian && self.factors.iter().any(|&d| d < 2) {
            return input("invariant factors must be at least 2");
        }
        if self.kind == CoefficientKind::RationalCircle && !self.factors.is_empty() {
            return input("rational-circle coefficients take no factors");
        }
        if self.action.is_empty() {
            return Ok(());
        }
        if self.action.len() != group.order() {
            return input(format!(
                "action has {} matrices, group order is {}",
                self.action.len(),
                group.order()
            ));
        }
        for (g, m) in self.action.iter().enumerate() {
            if m.len() != k || m.iter().any(|r| r.len() != k) {
                return input(format!("action matrix for element {g} is not {k}x{k}"));
            }
            match self.kind {
                CoefficientKind::RationalCircle => {
                    if m[0][0].abs() != 1 {
                        return input("circle action must be by signs");
                    }
                }
                CoefficientKind::FiniteAbelian => {
                    // column j must have order dividing d_j
                    for i in 0..k {
                        for j in 0..k {
                            let di = self.factors[i] as i128;
                            if (m[i][j] as i128 * self.factors[j] as i128).rem_euclid(di) != 0 {
                                return input(format!(
                                    "action of element {g} is not well defined on Z/{}",
                                    self.factors[j]
                                ));
                            }
                        }
                    }
                }
            }
        }
        // signs are told apart in (1/3)Z/Z
        let view = self.view(3);
        let e = group.identity();
        for x in 0..k {
            let mut unit = vec![0u64; k];
            unit[x] = 1;
            if view.act(e, &unit) != unit {
                return input("identity does not act trivially");
            }
            for g in group.elements() {
                for h in group.elements() {
                    let lhs = view.act(g, &view.act(h, &unit));
                    let rhs = view.act(group.mul(g, h), &unit);
                    if lhs != rhs {
                        return input(format!("action is not multiplicative at ({g}, {h})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// The module as `⊕ Z/m_i` with the same action. Circle coefficients are
    /// viewed through the subgroup `(1/denom)Z/Z`.
    pub fn view(&self, denom: u64) -> ModuleView {
        match self.kind {
            CoefficientKind::FiniteAbelian => ModuleView {
                moduli: self.factors.clone(),
                action: self.action.clone(),
            },
            CoefficientKind::RationalCircle => ModuleView {
                moduli: vec![denom],
                action: self.action.clone(),
            },
        }
    }
}

/// `⊕ Z/m_i` with an integer-matrix action: the common working form of
/// finite-abelian coefficients and finite subgroups of `Q/Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleView {
    pub moduli: Vec<u64>,
    pub action: Vec<Vec<Vec<i64>>>,
}

impl ModuleView {
    pub fn rank(&self) -> usize {
        self.moduli.len()
    }

    pub fn exponent(&self) -> u64 {
        self.moduli
            .iter()
            .fold(1u64, |acc, &d| num_integer::lcm(acc, d))
    }

    pub fn reduce(&self, v: &mut [u64]) {
        for (x, &d) in v.iter_mut().zip(&self.moduli) {
            *x %= d;
        }
    }

    pub fn act(&self, g: usize, v: &[u64]) -> Vec<u64> {
        if self.action.is_empty() {
            return v.to_vec();
        }
        let m = &self.action[g];
        self.moduli
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut acc: i128 = 0;
                for (j, &x) in v.iter().enumerate() {
                    acc += m[i][j] as i128 * x as i128;
                }
                acc.rem_euclid(d as i128) as u64
            })
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(b)
            .zip(&self.moduli)
            .map(|((x, y), d)| (x + y) % d)
            .collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(x, d)| (d - x % d) % d)
            .collect()
    }

    pub fn scale(&self, a: &[u64], s: u64) -> Vec<u64> {
        a.iter()
            .zip(&self.moduli)
            .map(|(x, d)| ((*x as u128 * s as u128) % *d as u128) as u64)
            .collect()
    }
}
