use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{AffineForm, CVar, TropicalForm, VarIndex};
use crate::error::{Error, Result};
use crate::lattice::Rank;

/// Sparse exponent vector. Zero exponents are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<VarIndex, i64>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(v: VarIndex) -> Self {
        Self::power(v, 1)
    }

    pub fn power(v: VarIndex, exp: i64) -> Self {
        let mut m = Monomial::one();
        m.mul_var(v, exp);
        m
    }

    pub fn from_exponents(it: impl IntoIterator<Item = (VarIndex, i64)>) -> Self {
        let mut m = Monomial::one();
        for (v, e) in it {
            m.mul_var(v, e);
        }
        m
    }

    pub fn mul_var(&mut self, v: VarIndex, exp: i64) {
        if exp == 0 {
            return;
        }
        let e = self.0.entry(v).or_insert(0);
        *e += exp;
        if *e == 0 {
            self.0.remove(&v);
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, v: VarIndex) -> i64 {
        self.0.get(&v).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (VarIndex, i64)> + '_ {
        self.0.iter().map(|(&v, &e)| (v, e))
    }

    pub fn inverse(&self) -> Self {
        Monomial(self.0.iter().map(|(&v, &e)| (v, -e)).collect())
    }

    pub fn all_in_range(&self, n: usize) -> bool {
        self.0.keys().all(|v| v.in_range(n))
    }

    pub fn xi(&self, n: usize) -> Self {
        Self::from_exponents(self.exponents().map(|(v, e)| (v.swap_spin_rows(n), e)))
    }

    /// `c_i^(j) -> (c_i^(n-j))^-1`.
    pub fn bar(&self, n: usize) -> Self {
        let n = n as i32;
        Self::from_exponents(self.exponents().map(|(v, e)| (VarIndex::new(v.row, n - v.col), -e)))
    }

    /// Exponent of `c_i^(j)` becomes the coefficient of `x_i^(j)`.
    pub fn tropicalize(&self, n: Rank) -> Result<AffineForm> {
        let mut form = AffineForm::zero(n);
        for (v, e) in self.exponents() {
            if !v.in_range(n.get()) {
                return Err(Error::OutOfRange(v));
            }
            form.add_var(v, e);
        }
        Ok(form)
    }
}

impl Mul for &Monomial {
    type Output = Monomial;
    fn mul(self, rhs: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, e) in rhs.exponents() {
            out.mul_var(v, e);
        }
        out
    }
}

/// Prints `c_2^(2)c_4^(1)/c_3^(2)`; factors sorted by row, then column.
impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<_> = self.exponents().collect();
        factors.sort_by_key(|(v, _)| v.row_major());
        let write_part = |f: &mut fmt::Formatter<'_>, positive: bool| -> fmt::Result {
            for &(v, e) in factors.iter().filter(|(_, e)| (*e > 0) == positive) {
                write!(f, "{}", CVar(v))?;
                if e.abs() != 1 {
                    write!(f, "^{}", e.abs())?;
                }
            }
            Ok(())
        };
        let has_num = factors.iter().any(|&(_, e)| e > 0);
        let has_den = factors.iter().any(|&(_, e)| e < 0);
        if has_num {
            write_part(f, true)?;
        } else {
            f.write_str("1")?;
        }
        if has_den {
            f.write_str("/")?;
            write_part(f, false)?;
        }
        Ok(())
    }
}

/// Laurent polynomial with strictly positive integer coefficients.
///
/// There is no zero polynomial: every value has at least one term, so the
/// ultra-discretization (a minimum over terms) is always defined.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly(BTreeMap<Monomial, BigUint>);

impl LaurentPoly {
    pub fn new(terms: impl IntoIterator<Item = (Monomial, BigUint)>) -> Result<Self> {
        let mut map: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (m, c) in terms {
            if c.is_zero() {
                return Err(Error::NonPositiveCoefficient);
            }
            *map.entry(m).or_default() += c;
        }
        if map.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(LaurentPoly(map))
    }

    /// Sum of monomials, each with coefficient one before merging.
    pub fn sum_of(monomials: impl IntoIterator<Item = Monomial>) -> Result<Self> {
        Self::new(monomials.into_iter().map(|m| (m, BigUint::one())))
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn monomial(m: Monomial) -> Self {
        LaurentPoly(BTreeMap::from([(m, BigUint::one())]))
    }

    pub fn var(v: VarIndex) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigUint)> {
        self.0.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.0.keys()
    }

    pub fn num_terms(&self) -> usize {
        self.0.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&BigUint> {
        self.0.get(m)
    }

    fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> Self {
        let mut map: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (m, c) in &self.0 {
            *map.entry(f(m)).or_default() += c;
        }
        LaurentPoly(map)
    }

    /// Swaps rows `n-1` and `n` in every variable.
    pub fn xi(&self, n: Rank) -> Self {
        self.map_monomials(|m| m.xi(n.get()))
    }

    /// `c_i^(j) -> (c_i^(n-j))^-1`; may leave the in-range window.
    pub fn bar(&self, n: Rank) -> Self {
        self.map_monomials(|m| m.bar(n.get()))
    }

    pub fn all_in_range(&self, n: Rank) -> bool {
        self.0.keys().all(|m| m.all_in_range(n.get()))
    }

    pub fn tropicalize(&self, n: Rank) -> Result<TropicalForm> {
        let pieces = self.0.keys().map(|m| m.tropicalize(n)).collect::<Result<Vec<_>>>()?;
        Ok(TropicalForm::new(pieces).expect("a LaurentPoly is never empty"))
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.0.clone();
        for (m, c) in &rhs.0 {
            *out.entry(m.clone()).or_default() += c;
        }
        LaurentPoly(out)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out: BTreeMap<Monomial, BigUint> = BTreeMap::new();
        for (a, ca) in &self.0 {
            for (b, cb) in &rhs.0 {
                *out.entry(a * b).or_default() += ca * cb;
            }
        }
        LaurentPoly(out)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, (m, c)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if c.is_one() {
                write!(f, "{m}")?;
            } else if m.is_one() {
                write!(f, "{c}")?;
            } else if m.exponents().any(|(_, e)| e > 0) {
                write!(f, "{c}{m}")?;
            } else {
                // "2/c_1^(1)" rather than "21/c_1^(1)"
                write!(f, "{c}/{}", m.inverse())?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(row: i32, col: i32) -> LaurentPoly {
        LaurentPoly::var(VarIndex::new(row, col))
    }

    fn n(k: usize) -> Rank {
        Rank::new(k).unwrap()
    }

    #[test]
    fn like_terms_merge() {
        let p = &c(1, 1) + &c(1, 1);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.to_string(), "2c_1^(1)");
    }

    #[test]
    fn empty_is_rejected() {
        assert_eq!(LaurentPoly::new(std::iter::empty()), Err(Error::EmptyPolynomial));
        assert_eq!(LaurentPoly::new([(Monomial::one(), BigUint::zero())]), Err(Error::NonPositiveCoefficient));
    }

    #[test]
    fn disjoint_supports_stay_apart() {
        let ratio =
            LaurentPoly::monomial(Monomial::from_exponents([(VarIndex::new(2, 1), 1), (VarIndex::new(1, 2), -1)]));
        let p = &c(1, 1) + &ratio;
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.to_string(), "c_1^(1) + c_2^(1)/c_1^(2)");
    }

    #[test]
    fn inverse_pair_cancels() {
        let inv = LaurentPoly::monomial(Monomial::power(VarIndex::new(1, 1), -1));
        let p = &c(1, 1) * &inv;
        assert_eq!(p, LaurentPoly::one());
        assert_eq!(p.to_string(), "1");
    }

    #[test]
    fn spin_numerator_product() {
        // c_{n-1}^(k) c_n^(k) for n = 5, k = 2
        let p = &c(4, 2) * &c(5, 2);
        let m = p.monomials().next().unwrap();
        assert_eq!(m.exponents().count(), 2);
        assert_eq!(p.to_string(), "c_4^(2)c_5^(2)");
    }

    #[test]
    fn distributivity() {
        let a = c(1, 1);
        let b = c(2, 3);
        let m = LaurentPoly::monomial(Monomial::from_exponents([(VarIndex::new(3, 1), 2), (VarIndex::new(1, 2), -1)]));
        assert_eq!(&(&a + &b) * &m, &(&a * &m) + &(&b * &m));
    }

    #[test]
    fn tropicalize_basic() {
        let ratio =
            LaurentPoly::monomial(Monomial::from_exponents([(VarIndex::new(2, 1), 1), (VarIndex::new(1, 2), -1)]));
        let t = (&c(1, 1) + &ratio).tropicalize(n(4)).unwrap();
        assert_eq!(t.to_string(), "min(x_1^(1), x_2^(1) - x_1^(2))");

        let t = (&c(1, 1) + &c(1, 1)).tropicalize(n(4)).unwrap();
        assert_eq!(t.to_string(), "x_1^(1)");

        let t = LaurentPoly::one().tropicalize(n(4)).unwrap();
        assert_eq!(t.pieces().next().unwrap(), &AffineForm::zero(n(4)));
    }

    #[test]
    fn tropicalize_rejects_boundary() {
        let p = c(5, 0);
        assert_eq!(p.tropicalize(n(5)), Err(Error::OutOfRange(VarIndex::new(5, 0))));
    }

    #[test]
    fn xi_swaps_spin_rows() {
        assert_eq!(c(4, 2).xi(n(5)), c(5, 2));
        assert_eq!(c(5, 2).xi(n(5)), c(4, 2));
        assert_eq!(c(1, 1).xi(n(5)), c(1, 1));
    }

    #[test]
    fn bar_examples() {
        let inv = |row, col| LaurentPoly::monomial(Monomial::power(VarIndex::new(row, col), -1));
        assert_eq!(c(4, 1).bar(n(5)), inv(4, 4));
        assert_eq!(inv(5, 5).bar(n(5)), c(5, 0));
        assert!(!c(5, 0).all_in_range(n(5)));
        assert_eq!(inv(4, 4).to_string(), "1/c_4^(4)");
    }

    #[test]
    fn coefficient_printing() {
        let inv = LaurentPoly::monomial(Monomial::power(VarIndex::new(1, 1), -2));
        let p = &(&inv + &inv) + &(&LaurentPoly::one() + &LaurentPoly::one());
        assert_eq!(p.to_string(), "2 + 2/c_1^(1)^2");
    }
}
