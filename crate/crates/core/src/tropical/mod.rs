//! Exact Laurent-polynomial algebra in the variables `c_i^(j)` and its
//! ultra-discretization into min-plus affine forms in `x_i^(j)`.
//!
//! Sums become minima, products become sums, numeric coefficients vanish.

mod affine;
mod laurent;
mod parse;

use std::cmp::Ordering;
use std::fmt;

pub use affine::{AffineForm, TropicalForm};
pub use laurent::{LaurentPoly, Monomial};

/// A doubly-indexed variable `c_row^(col)` / `x_row^(col)`.
///
/// Membership forms only ever use `row` in `[1, n]` and `col` in `[1, n-1]`.
/// Columns `0` and `n` show up transiently when the bar involution is
/// applied to boundary monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarIndex {
    pub row: i32,
    pub col: i32,
}

impl VarIndex {
    pub const fn new(row: i32, col: i32) -> Self {
        VarIndex { row, col }
    }

    pub fn in_range(self, n: usize) -> bool {
        let n = n as i32;
        (1..=n).contains(&self.row) && (1..n).contains(&self.col)
    }

    /// Swap of rows `n-1` and `n`; other rows are fixed.
    pub fn swap_spin_rows(self, n: usize) -> Self {
        let n = n as i32;
        match self.row {
            r if r == n - 1 => VarIndex::new(n, self.col),
            r if r == n => VarIndex::new(n - 1, self.col),
            _ => self,
        }
    }

    /// Row-major key, used for printing monomials.
    fn row_major(self) -> (i32, i32) {
        (self.row, self.col)
    }
}

/// Column-major: by `(col, row)`, the order of the linear positions.
impl Ord for VarIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.col, self.row).cmp(&(other.col, other.row))
    }
}

impl PartialOrd for VarIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VarIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^({})", self.row, self.col)
    }
}

pub(crate) struct CVar(pub VarIndex);
pub(crate) struct XVar(pub VarIndex);

impl fmt::Display for CVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c_{}", self.0)
    }
}

impl fmt::Display for XVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x_{}", self.0)
    }
}
