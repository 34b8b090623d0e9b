//! Ranks, dominant weights and points of the ambient lattice `Z^N`, `N = n(n-1)`.
//!
//! Coordinates are doubly indexed as `x_i^(j)` with row `i` in `[1, n]` and
//! column `j` in `[1, n-1]`. The linear position is `(j-1)*n + i`, the
//! order of the cyclic reduced word `(1 2 ... n)^(n-1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tropical::VarIndex;

/// Rank `n` of `D_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "usize", into = "usize")]
pub struct Rank(usize);

impl Rank {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        Ok(Rank(n))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Length of the longest Weyl group element, `n(n-1)`.
    pub fn dim(self) -> usize {
        self.0 * (self.0 - 1)
    }

    /// 0-based linear position of `x_row^(col)`; caller guarantees the index is in range.
    pub fn position(self, v: VarIndex) -> usize {
        debug_assert!(v.in_range(self.0));
        (v.col as usize - 1) * self.0 + (v.row as usize - 1)
    }

    pub fn var_at(self, position: usize) -> VarIndex {
        VarIndex::new((position % self.0) as i32 + 1, (position / self.0) as i32 + 1)
    }

    /// Simple reflection index `i_m` of the reduced word at 0-based position `m`.
    pub fn word_letter(self, position: usize) -> usize {
        position % self.0 + 1
    }

    pub(crate) fn check_node(self, i: usize) -> Result<()> {
        if i == 0 || i > self.0 {
            return Err(Error::InvalidIndex { index: i, max: self.0 });
        }
        Ok(())
    }
}

impl TryFrom<usize> for Rank {
    type Error = Error;
    fn try_from(n: usize) -> Result<Self> {
        Rank::new(n)
    }
}

impl From<Rank> for usize {
    fn from(r: Rank) -> usize {
        r.0
    }
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `lambda = sum_i lambda_i Lambda_i` with all `lambda_i >= 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct DominantWeight(Vec<i64>);

impl DominantWeight {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        if let Some(&c) = coeffs.iter().find(|&&c| c < 0) {
            return Err(Error::NotDominant(c));
        }
        Ok(DominantWeight(coeffs))
    }

    pub fn zero(n: Rank) -> Self {
        DominantWeight(vec![0; n.get()])
    }

    /// Fundamental weight `Lambda_k`.
    pub fn fundamental(n: Rank, k: usize) -> Result<Self> {
        n.check_node(k)?;
        let mut v = vec![0; n.get()];
        v[k - 1] = 1;
        Ok(DominantWeight(v))
    }

    pub fn for_rank(coeffs: Vec<i64>, n: Rank) -> Result<Self> {
        if coeffs.len() != n.get() {
            return Err(Error::DimensionMismatch { expected: n.get(), got: coeffs.len() });
        }
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.0
    }

    /// `lambda_k` for 1-based `k`.
    pub fn get(&self, k: usize) -> i64 {
        self.0[k - 1]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }

    /// All dominant weights of rank `n` with `sum lambda_i <= level`.
    pub fn all_up_to_level(n: Rank, level: i64) -> Vec<Self> {
        fn rec(slot: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<DominantWeight>) {
            if slot == cur.len() {
                out.push(DominantWeight(cur.clone()));
                return;
            }
            for v in 0..=left {
                cur[slot] = v;
                rec(slot + 1, left - v, cur, out);
            }
            cur[slot] = 0;
        }
        let mut out = Vec::new();
        rec(0, level, &mut vec![0; n.get()], &mut out);
        out
    }
}

impl TryFrom<Vec<i64>> for DominantWeight {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        DominantWeight::new(v)
    }
}

impl From<DominantWeight> for Vec<i64> {
    fn from(w: DominantWeight) -> Vec<i64> {
        w.0
    }
}

/// Parses the comma-separated form `a,b,c,...` used on the command line.
impl FromStr for DominantWeight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| {
                let t = t.trim();
                t.parse::<i64>().map_err(|_| Error::Parse(format!("bad weight entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        DominantWeight::new(coeffs)
    }
}

impl fmt::Display for DominantWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// An integer point `x = (x_i^(j))` of `Z^N`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn zero(n: Rank) -> Self {
        LatticePoint(vec![0; n.dim()])
    }

    pub fn from_coords(n: Rank, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != n.dim() {
            return Err(Error::DimensionMismatch { expected: n.dim(), got: coords.len() });
        }
        Ok(LatticePoint(coords))
    }

    /// Point with a single nonzero coordinate.
    pub fn unit(n: Rank, v: VarIndex, value: i64) -> Result<Self> {
        if !v.in_range(n.get()) {
            return Err(Error::OutOfRange(v));
        }
        let mut p = Self::zero(n);
        p.0[n.position(v)] = value;
        Ok(p)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [i64] {
        &mut self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    /// `x_i^(j)`, with the convention that out-of-range indices read as 0.
    pub fn get(&self, n: Rank, v: VarIndex) -> i64 {
        if v.in_range(n.get()) {
            self.0[n.position(v)]
        } else {
            0
        }
    }

    pub fn max_abs(&self) -> i64 {
        self.0.iter().map(|c| c.abs()).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_rejects_small() {
        assert_eq!(Rank::new(1), Err(Error::InvalidRank(1)));
        assert_eq!(Rank::new(4).unwrap().dim(), 12);
    }

    #[test]
    fn positions_follow_reduced_word() {
        let n = Rank::new(4).unwrap();
        for m in 0..n.dim() {
            let v = n.var_at(m);
            assert_eq!(n.position(v), m);
            assert_eq!(v.row as usize, n.word_letter(m));
        }
        assert_eq!(n.position(VarIndex::new(1, 1)), 0);
        assert_eq!(n.position(VarIndex::new(4, 3)), 11);
    }

    #[test]
    fn weight_parsing() {
        let w: DominantWeight = "1, 0,2,0".parse().unwrap();
        assert_eq!(w.coeffs(), &[1, 0, 2, 0]);
        assert!("1,-1".parse::<DominantWeight>().is_err());
        assert!("1,,2".parse::<DominantWeight>().is_err());
        assert_eq!(w.to_string(), "1,0,2,0");
    }

    #[test]
    fn weights_by_level() {
        let n = Rank::new(4).unwrap();
        // C(4+2, 2) = 15 weights with sum <= 2
        assert_eq!(DominantWeight::all_up_to_level(n, 2).len(), 15);
    }
}
