//! Crystal structure on `Z^N` obtained by ultra-discretization, restricted
//! to the points where the tropicalized decoration is nonnegative.
//!
//! All sums over `k` run in reduced-word order, position `m = (j-1)n + i`.

mod graph;

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

pub use graph::{CrystalGraph, GraphEdge, GraphNode};

use crate::error::{Error, Result};
use crate::lattice::{DominantWeight, LatticePoint, Rank};
use crate::minors::{decoration_cached, DecorationPieces};

/// Default BFS node budget.
pub const DEFAULT_NODE_BUDGET: usize = 2_000_000;

/// Cartan matrix entry `a_{i,j}` of `D_n`.
pub fn cartan(n: Rank, i: usize, j: usize) -> Result<i64> {
    n.check_node(i)?;
    n.check_node(j)?;
    Ok(cartan_unchecked(n.get(), i, j))
}

pub(crate) fn cartan_unchecked(n: usize, i: usize, j: usize) -> i64 {
    let (lo, hi) = (i.min(j), i.max(j));
    if i == j {
        2
    } else if (lo, hi) == (n - 1, n) {
        0
    } else if hi - lo == 1 || (n >= 3 && (lo, hi) == (n - 2, n)) {
        -1
    } else {
        0
    }
}

/// `wt_i(x) = lambda_i - sum_k a_{i_k, i} x_k` for every node.
pub fn weight(n: Rank, lambda: &DominantWeight, x: &LatticePoint) -> Vec<i64> {
    let nn = n.get();
    let mut out = lambda.coeffs().to_vec();
    for (m, &xm) in x.coords().iter().enumerate() {
        if xm == 0 {
            continue;
        }
        let letter = n.word_letter(m);
        for (i, w) in out.iter_mut().enumerate() {
            *w -= cartan_unchecked(nn, letter, i + 1) * xm;
        }
    }
    out
}

/// Positions `m` with `i_m = i` and their potentials
/// `sum_{k<m} a_{i_k,i} x_k + x_m`.
fn potentials(n: Rank, x: &LatticePoint, i: usize) -> Vec<(usize, i64)> {
    let nn = n.get();
    let mut acc = 0;
    let mut out = Vec::with_capacity(nn - 1);
    for (m, &xm) in x.coords().iter().enumerate() {
        let letter = n.word_letter(m);
        if letter == i {
            out.push((m, acc + xm));
        }
        acc += cartan_unchecked(nn, letter, i) * xm;
    }
    out
}

/// `eps_i(x) = max_{i_m = i} (x_m + sum_{k>m} a_{i_k,i} x_k)`.
pub fn epsilon(n: Rank, x: &LatticePoint, i: usize) -> i64 {
    let nn = n.get();
    let coords = x.coords();
    let mut tail = 0;
    let mut best = i64::MIN;
    for m in (0..coords.len()).rev() {
        let letter = n.word_letter(m);
        if letter == i {
            best = best.max(coords[m] + tail);
        }
        tail += cartan_unchecked(nn, letter, i) * coords[m];
    }
    best
}

/// `B(lambda)` realized inside `Z^N` by the tropicalized decoration.
#[derive(Debug, Clone)]
pub struct Crystal {
    n: Rank,
    lambda: DominantWeight,
    decoration: Arc<DecorationPieces>,
}

impl Crystal {
    pub fn new(n: Rank, lambda: DominantWeight) -> Result<Self> {
        if lambda.len() != n.get() {
            return Err(Error::DimensionMismatch { expected: n.get(), got: lambda.len() });
        }
        Ok(Crystal { n, lambda, decoration: decoration_cached(n)? })
    }

    pub fn rank(&self) -> Rank {
        self.n
    }

    pub fn lambda(&self) -> &DominantWeight {
        &self.lambda
    }

    pub fn decoration(&self) -> &DecorationPieces {
        &self.decoration
    }

    pub fn contains(&self, x: &LatticePoint) -> bool {
        self.decoration.contains(&self.lambda, x)
    }

    pub fn weight(&self, x: &LatticePoint) -> Vec<i64> {
        weight(self.n, &self.lambda, x)
    }

    pub fn epsilon(&self, x: &LatticePoint, i: usize) -> i64 {
        epsilon(self.n, x, i)
    }

    /// `phi_i = wt_i + eps_i`.
    pub fn phi(&self, x: &LatticePoint, i: usize) -> i64 {
        self.weight(x)[i - 1] + self.epsilon(x, i)
    }

    fn gated(&self, x: LatticePoint) -> Option<LatticePoint> {
        self.contains(&x).then_some(x)
    }

    /// Increments the first position of minimal potential.
    pub fn apply_f(&self, x: &LatticePoint, i: usize) -> Option<LatticePoint> {
        let pots = potentials(self.n, x, i);
        let best = pots.iter().map(|&(_, z)| z).min()?;
        let (m, _) = *pots.iter().find(|&&(_, z)| z == best)?;
        let mut y = x.clone();
        y.coords_mut()[m] += 1;
        self.gated(y)
    }

    /// Decrements the last position of minimal potential.
    pub fn apply_e(&self, x: &LatticePoint, i: usize) -> Option<LatticePoint> {
        let pots = potentials(self.n, x, i);
        let best = pots.iter().map(|&(_, z)| z).min()?;
        let (m, _) = *pots.iter().rev().find(|&&(_, z)| z == best)?;
        let mut y = x.clone();
        y.coords_mut()[m] -= 1;
        self.gated(y)
    }

    /// `e_i^steps` in closed form: with potentials `Z_1, ..., Z_r` at the
    /// `i`-positions, the `t`-th one shifts by
    /// `min(min_{s<t}(steps+Z_s), min_{s>=t} Z_s) - min(min_{s<=t}(steps+Z_s), min_{s>t} Z_s)`.
    pub fn apply_e_power(&self, x: &LatticePoint, i: usize, steps: u32) -> Option<LatticePoint> {
        let pots = potentials(self.n, x, i);
        let r = pots.len();
        let steps = i64::from(steps);
        // prefix[t] = min_{s<t}(steps + Z_s), suffix[t] = min_{s>=t} Z_s
        let mut prefix = vec![i64::MAX; r + 1];
        for t in 0..r {
            prefix[t + 1] = prefix[t].min(steps + pots[t].1);
        }
        let mut suffix = vec![i64::MAX; r + 1];
        for t in (0..r).rev() {
            suffix[t] = suffix[t + 1].min(pots[t].1);
        }
        let mut y = x.clone();
        for (t, &(m, _)) in pots.iter().enumerate() {
            let before = prefix[t].min(suffix[t]);
            let after = prefix[t + 1].min(suffix[t + 1]);
            y.coords_mut()[m] += before - after;
        }
        self.gated(y)
    }

    /// Closure of the zero vector under all `f_i`.
    pub fn generate(&self, budget: usize) -> Result<CrystalGraph> {
        let n = self.n.get();
        let zero = LatticePoint::zero(self.n);
        let mut index: HashMap<LatticePoint, usize> = HashMap::from([(zero.clone(), 0)]);
        let mut points = vec![zero];
        let mut queue = VecDeque::from([0usize]);
        let mut raw_edges = Vec::new();
        while let Some(id) = queue.pop_front() {
            for i in 1..=n {
                let Some(y) = self.apply_f(&points[id], i) else { continue };
                let target = match index.get(&y) {
                    Some(&t) => t,
                    None => {
                        if points.len() >= budget {
                            return Err(Error::BudgetExceeded { budget, explored: points.len() });
                        }
                        let t = points.len();
                        index.insert(y.clone(), t);
                        points.push(y);
                        queue.push_back(t);
                        t
                    }
                };
                raw_edges.push((id, target, i));
            }
        }
        Ok(CrystalGraph::from_parts(self.n, &self.lambda, points, raw_edges, |x| self.weight(x)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tropical::VarIndex;

    fn rank(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    fn crystal(n: usize, lam: &[i64]) -> Crystal {
        Crystal::new(rank(n), DominantWeight::new(lam.to_vec()).unwrap()).unwrap()
    }

    #[test]
    fn cartan_d4() {
        let n = rank(4);
        assert_eq!(cartan(n, 3, 4).unwrap(), 0);
        assert_eq!(cartan(n, 2, 4).unwrap(), -1);
        assert_eq!(cartan(n, 4, 2).unwrap(), -1);
        let row: Vec<i64> = (1..=4).map(|j| cartan(n, 1, j).unwrap()).collect();
        assert_eq!(row, vec![2, -1, 0, 0]);
        assert!(cartan(n, 0, 1).is_err());
        assert!(cartan(n, 1, 5).is_err());
    }

    #[test]
    fn cartan_is_symmetric() {
        for n in 3..=8 {
            for i in 1..=n {
                for j in 1..=n {
                    assert_eq!(cartan(rank(n), i, j), cartan(rank(n), j, i));
                }
            }
        }
    }

    #[test]
    fn weight_and_epsilon_at_zero() {
        let c = crystal(4, &[1, 0, 2, 1]);
        let zero = LatticePoint::zero(rank(4));
        assert_eq!(c.weight(&zero), vec![1, 0, 2, 1]);
        for i in 1..=4 {
            assert_eq!(c.epsilon(&zero, i), 0);
        }
    }

    #[test]
    fn weight_and_epsilon_unit() {
        let n = rank(4);
        let c = crystal(4, &[1, 0, 0, 0]);
        let x = LatticePoint::unit(n, VarIndex::new(1, 1), 1).unwrap();
        assert_eq!(c.weight(&x)[0], -1);
        assert_eq!(c.epsilon(&x, 1), 1);
    }

    #[test]
    fn f_from_highest_weight() {
        let n = rank(4);
        let c = crystal(4, &[1, 0, 0, 0]);
        let zero = LatticePoint::zero(n);
        assert_eq!(c.apply_f(&zero, 1), Some(LatticePoint::unit(n, VarIndex::new(1, 1), 1).unwrap()));
        assert_eq!(c.apply_f(&zero, 2), None);
        for i in 1..=4 {
            assert_eq!(c.apply_e(&zero, i), None);
        }
    }

    #[test]
    fn e_power_examples() {
        let c = crystal(4, &[2, 0, 0, 0]);
        let zero = LatticePoint::zero(rank(4));
        let y = c.apply_f(&c.apply_f(&zero, 1).unwrap(), 1).unwrap();
        assert_eq!(c.apply_e_power(&y, 1, 2), Some(zero.clone()));
        assert_eq!(c.apply_e_power(&y, 1, 0), Some(y.clone()));
        assert_eq!(c.apply_e_power(&y, 1, 3), None);
    }

    #[test]
    fn trivial_weight_single_node() {
        let g = crystal(4, &[0, 0, 0, 0]).generate(DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(g.nodes.len(), 1);
        assert!(g.edges.is_empty());
    }

    #[test]
    fn vector_and_spin_sizes() {
        assert_eq!(crystal(4, &[1, 0, 0, 0]).generate(DEFAULT_NODE_BUDGET).unwrap().nodes.len(), 8);
        assert_eq!(crystal(4, &[0, 0, 0, 1]).generate(DEFAULT_NODE_BUDGET).unwrap().nodes.len(), 8);
    }

    #[test]
    fn budget_is_enforced() {
        let err = crystal(4, &[0, 1, 0, 0]).generate(5).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { budget: 5, explored: 5 });
    }
}
