use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{VarIndex, XVar};
use crate::error::{Error, Result};
use crate::lattice::{DominantWeight, LatticePoint, Rank};

/// `sum_k a_k lambda_k + sum b_v x_v` with integer coefficients.
///
/// Variable terms are always in range; the convention that `x_i^(j) = 0`
/// outside `[1,n]x[1,n-1]` is applied when terms are added.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AffineForm {
    n: Rank,
    lambda: Vec<i64>,
    vars: BTreeMap<VarIndex, i64>,
}

impl AffineForm {
    pub fn zero(n: Rank) -> Self {
        AffineForm { n, lambda: vec![0; n.get()], vars: BTreeMap::new() }
    }

    /// Builds a form from `(variable, coefficient)` pairs, dropping
    /// out-of-range variables.
    pub fn from_terms(n: Rank, terms: impl IntoIterator<Item = (VarIndex, i64)>) -> Self {
        let mut f = Self::zero(n);
        for (v, c) in terms {
            f.add_var(v, c);
        }
        f
    }

    pub fn rank(&self) -> Rank {
        self.n
    }

    /// Adds `coeff * x_v`; a no-op when `v` is out of range.
    pub fn add_var(&mut self, v: VarIndex, coeff: i64) {
        if coeff == 0 || !v.in_range(self.n.get()) {
            return;
        }
        let c = self.vars.entry(v).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.vars.remove(&v);
        }
    }

    /// Adds `coeff * lambda_k`, 1-based `k`.
    pub fn add_lambda(&mut self, k: usize, coeff: i64) {
        self.lambda[k - 1] += coeff;
    }

    pub fn with_lambda(mut self, k: usize, coeff: i64) -> Self {
        self.add_lambda(k, coeff);
        self
    }

    pub fn lambda_coeffs(&self) -> &[i64] {
        &self.lambda
    }

    pub fn var_coeffs(&self) -> impl Iterator<Item = (VarIndex, i64)> + '_ {
        self.vars.iter().map(|(&v, &c)| (v, c))
    }

    pub fn var_coeff(&self, v: VarIndex) -> i64 {
        self.vars.get(&v).copied().unwrap_or(0)
    }

    pub fn is_lambda_free(&self) -> bool {
        self.lambda.iter().all(|&c| c == 0)
    }

    /// Same variable part, no `lambda` terms.
    pub fn lambda_free(&self) -> Self {
        AffineForm { n: self.n, lambda: vec![0; self.n.get()], vars: self.vars.clone() }
    }

    /// Exact value at `(lambda, x)`.
    ///
    /// Panics if the shapes do not match the rank.
    pub fn eval(&self, lambda: &DominantWeight, x: &LatticePoint) -> i64 {
        assert_eq!(lambda.len(), self.n.get(), "weight length");
        assert_eq!(x.coords().len(), self.n.dim(), "point length");
        let l: i64 = self.lambda.iter().zip(lambda.coeffs()).map(|(a, b)| a * b).sum();
        let coords = x.coords();
        l + self.vars.iter().map(|(&v, &c)| c * coords[self.n.position(v)]).sum::<i64>()
    }

    /// Value of the `x`-part alone, i.e. at `lambda = 0`.
    pub fn eval_vars(&self, x: &LatticePoint) -> i64 {
        let coords = x.coords();
        self.vars.iter().map(|(&v, &c)| c * coords[self.n.position(v)]).sum()
    }
}

impl fmt::Display for AffineForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lambda_terms =
            self.lambda.iter().enumerate().filter(|(_, &c)| c != 0).map(|(k, &c)| (format!("λ_{}", k + 1), c));
        let var_terms = self.vars.iter().map(|(&v, &c)| (XVar(v).to_string(), c));
        let mut first = true;
        for (name, c) in lambda_terms.chain(var_terms) {
            let mag = c.unsigned_abs();
            match (first, c < 0) {
                (true, false) => {}
                (true, true) => f.write_str("-")?,
                (false, false) => f.write_str(" + ")?,
                (false, true) => f.write_str(" - ")?,
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            f.write_str(&name)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Minimum of finitely many affine forms; the pieces are deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TropicalForm {
    pieces: BTreeSet<AffineForm>,
}

impl TropicalForm {
    pub fn new(pieces: impl IntoIterator<Item = AffineForm>) -> Result<Self> {
        let pieces: BTreeSet<_> = pieces.into_iter().collect();
        if pieces.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(TropicalForm { pieces })
    }

    pub fn pieces(&self) -> impl Iterator<Item = &AffineForm> {
        self.pieces.iter()
    }

    pub fn piece_set(&self) -> &BTreeSet<AffineForm> {
        &self.pieces
    }

    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// Pointwise minimum of two tropical forms.
    pub fn min(&self, other: &TropicalForm) -> TropicalForm {
        TropicalForm { pieces: self.pieces.union(&other.pieces).cloned().collect() }
    }

    pub fn eval(&self, lambda: &DominantWeight, x: &LatticePoint) -> i64 {
        self.pieces.iter().map(|p| p.eval(lambda, x)).min().expect("nonempty")
    }
}

impl fmt::Display for TropicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.len() == 1 {
            return write!(f, "{}", self.pieces.first().unwrap());
        }
        f.write_str("min(")?;
        for (k, p) in self.pieces.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    #[test]
    fn eval_at_zero() {
        let n = rank(4);
        let f = AffineForm::from_terms(n, [(VarIndex::new(1, 1), 1)]);
        let t = TropicalForm::new([f]).unwrap();
        assert_eq!(t.eval(&DominantWeight::zero(n), &LatticePoint::zero(n)), 0);
    }

    #[test]
    fn eval_with_lambda() {
        let n = rank(4);
        let f = AffineForm::from_terms(n, [(VarIndex::new(1, 1), -1)]).with_lambda(1, 1);
        let x = LatticePoint::unit(n, VarIndex::new(1, 1), 1).unwrap();
        let lam = DominantWeight::fundamental(n, 1).unwrap();
        assert_eq!(f.eval(&lam, &x), 0);
        assert_eq!(f.to_string(), "λ_1 - x_1^(1)");
    }

    #[test]
    fn out_of_range_terms_drop() {
        let n = rank(4);
        let f = AffineForm::from_terms(n, [(VarIndex::new(0, 1), 1), (VarIndex::new(1, 1), -1)]);
        assert_eq!(f.to_string(), "-x_1^(1)");
        let g = AffineForm::from_terms(n, [(VarIndex::new(2, 4), 1)]);
        assert_eq!(g, AffineForm::zero(n));
        assert_eq!(g.to_string(), "0");
    }

    #[test]
    fn printer_orders_column_major() {
        let n = rank(4);
        let f =
            AffineForm::from_terms(n, [(VarIndex::new(1, 2), -1), (VarIndex::new(4, 1), 2), (VarIndex::new(2, 1), 1)]);
        assert_eq!(f.to_string(), "x_2^(1) + 2x_4^(1) - x_1^(2)");
    }

    #[test]
    fn pieces_deduplicate() {
        let n = rank(3);
        let f = AffineForm::from_terms(n, [(VarIndex::new(1, 1), 1)]);
        let t = TropicalForm::new([f.clone(), f]).unwrap();
        assert_eq!(t.len(), 1);
        assert!(TropicalForm::new(std::iter::empty()).is_err());
    }
}
