//! Closed forms of the generalized minors evaluated on the torus chart of
//! the cyclic reduced word `(1 2 ... n)^(n-1)`, and the decoration built
//! from them.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{DominantWeight, LatticePoint, Rank};
use crate::patterns::Label;
use crate::tropical::{AffineForm, LaurentPoly, Monomial, TropicalForm, VarIndex};

fn c(row: usize, col: usize) -> VarIndex {
    VarIndex::new(row as i32, col as i32)
}

fn ratio(num: &[VarIndex], den: &[VarIndex]) -> Monomial {
    Monomial::from_exponents(num.iter().map(|&v| (v, 1)).chain(den.iter().map(|&v| (v, -1))))
}

/// `Delta_{w0 Lambda_k, s_k Lambda_k}` on the chart.
pub fn minor_upper(n: Rank, k: usize) -> Result<LaurentPoly> {
    n.check_node(k)?;
    let nn = n.get();
    if k == nn - 1 {
        return Ok(LaurentPoly::var(c(nn - 1, nn - 1)));
    }
    if k == nn {
        return Ok(LaurentPoly::var(c(nn, nn - 1)));
    }
    let mut terms = vec![Monomial::var(c(1, k))];
    for i in 2..=nn - 2 {
        terms.push(ratio(&[c(i, k)], &[c(i - 1, k + 1)]));
    }
    terms.push(ratio(&[c(nn - 1, k), c(nn, k)], &[c(nn - 2, k + 1)]));
    terms.push(ratio(&[c(nn - 2, k + 1)], &[c(nn - 1, k + 1), c(nn, k + 1)]));
    terms.push(ratio(&[c(nn, k)], &[c(nn - 1, k + 1)]));
    terms.push(ratio(&[c(nn - 1, k)], &[c(nn, k + 1)]));
    for j in k + 2..nn {
        terms.push(ratio(&[c(nn + k - j - 1, j)], &[c(nn + k - j, j)]));
    }
    LaurentPoly::sum_of(terms)
}

/// `Delta_{w0 s_k Lambda_k, Lambda_k}` on the chart, for `k <= n-2`.
pub fn minor_lower_small(n: Rank, k: usize) -> Result<LaurentPoly> {
    if k == 0 || k + 2 > n.get() {
        return Err(Error::InvalidIndex { index: k, max: n.get().saturating_sub(2) });
    }
    let mut terms = vec![Monomial::power(c(1, k), -1)];
    for j in 1..k {
        terms.push(ratio(&[c(k - j, j)], &[c(k - j + 1, j)]));
    }
    LaurentPoly::sum_of(terms)
}

/// An element of the triangle set: row `l` holds `j_1^(l), ..., j_l^(l)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Triangle {
    rows: Vec<Vec<usize>>,
}

impl Triangle {
    /// Checks the interlacing inequalities; `rows[l-1][k-1] = j_k^(l)`.
    pub fn new(rows: Vec<Vec<usize>>, n: Rank) -> Result<Self> {
        let nn = n.get();
        if rows.len() != nn - 1 {
            return Err(Error::DimensionMismatch { expected: nn - 1, got: rows.len() });
        }
        for (l, row) in rows.iter().enumerate() {
            if row.len() != l + 1 || row.iter().any(|&v| v == 0 || v > nn) {
                return Err(Error::MalformedRow { row: l + 1 });
            }
        }
        for l in 0..nn.saturating_sub(2) {
            let (upper, lower) = (&rows[l], &rows[l + 1]);
            for k in 0..=l {
                if !(lower[k] <= upper[k] && upper[k] < lower[k + 1]) {
                    return Err(Error::MalformedRow { row: l + 1 });
                }
            }
        }
        Ok(Triangle { rows })
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    /// All entries `j_k^(l) = k+1`.
    pub fn highest(n: Rank) -> Self {
        Triangle { rows: (1..n.get()).map(|l| (2..=l + 1).collect()).collect() }
    }

    /// All entries `j_k^(l) = k`.
    pub fn lowest(n: Rank) -> Self {
        Triangle { rows: (1..n.get()).map(|l| (1..=l).collect()).collect() }
    }

    pub fn rank(&self) -> Rank {
        Rank::new(self.rows.len() + 1).expect("at least one row")
    }
}

/// Rows as in a staircase: `1`, `21`, `321`, ... (largest entry first).
impl fmt::Display for Triangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.rows.iter().flatten().any(|&v| v > 9);
        for (l, row) in self.rows.iter().enumerate() {
            if l > 0 {
                f.write_str("/")?;
            }
            for (k, v) in row.iter().rev().enumerate() {
                if wide && k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

/// Every triangle, generated bottom row first so that each partial
/// triangle extends.
pub fn enumerate_triangles(n: Rank) -> Vec<Triangle> {
    let nn = n.get();
    let mut out = Vec::new();
    // bottom row: n-1 strictly increasing values in [1, n]
    for skip in 1..=nn {
        let bottom: Vec<usize> = (1..=nn).filter(|&v| v != skip).collect();
        let mut rows = vec![Vec::new(); nn - 1];
        rows[nn - 2] = bottom;
        fill_upward(&mut rows, nn - 2, &mut out);
    }
    out.sort();
    out
}

fn fill_upward(rows: &mut Vec<Vec<usize>>, filled: usize, out: &mut Vec<Triangle>) {
    if filled == 0 {
        out.push(Triangle { rows: rows.clone() });
        return;
    }
    let lower = rows[filled].clone();
    let mut cur = vec![0; filled];
    fn choose(
        k: usize,
        lower: &[usize],
        cur: &mut Vec<usize>,
        rows: &mut Vec<Vec<usize>>,
        filled: usize,
        out: &mut Vec<Triangle>,
    ) {
        if k == cur.len() {
            rows[filled - 1] = cur.clone();
            fill_upward(rows, filled - 1, out);
            return;
        }
        for v in lower[k]..lower[k + 1] {
            cur[k] = v;
            choose(k + 1, lower, cur, rows, filled, out);
        }
    }
    choose(0, &lower, &mut cur, rows, filled, out);
}

/// Gap position of every row.
pub fn label(delta: &Triangle) -> Result<Label> {
    let mut s = Vec::with_capacity(delta.rows.len());
    for (l, row) in delta.rows.iter().enumerate() {
        // row l+1 is (1, 2, ..., j-1, j+1, ..., l+2) for a unique j
        let gap = row.iter().enumerate().position(|(m, &v)| v != m + 1).map_or(row.len() + 1, |m| m + 1);
        let ok = row.iter().enumerate().all(|(m, &v)| v == if m + 1 < gap { m + 1 } else { m + 2 });
        if !ok {
            return Err(Error::MalformedRow { row: l + 1 });
        }
        s.push(gap);
    }
    Label::new(s, delta.rank())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowType {
    I,
    II,
    III,
    IV,
}

/// Classification of row `k` from `(s_{k-1}, s_k, s_{k+1})`.
pub fn row_type(s: &Label, k: usize) -> RowType {
    let rises_in = s.at(k) == s.at(k - 1) + 1;
    let rises_out = s.at(k + 1) == s.at(k) + 1;
    match (rises_out, rises_in) {
        (true, false) => RowType::I,
        (false, false) => RowType::II,
        (true, true) => RowType::III,
        (false, true) => RowType::IV,
    }
}

/// Monomial of a label: type I rows give a variable, type IV rows its
/// inverse, the last row choosing between rows `n-1` and `n` by the parity
/// of `n + s_{n-1}`.
pub fn label_monomial(s: &Label) -> Monomial {
    let nn = s.rank();
    let mut m = Monomial::one();
    for k in 1..nn {
        let sk = s.at(k);
        let (even_row, odd_row) = if k == nn - 1 { (nn - 1, nn) } else { (k, k) };
        let same_parity = (nn + sk).is_multiple_of(2);
        match row_type(s, k) {
            RowType::I => m.mul_var(c(if same_parity { even_row } else { odd_row }, sk), 1),
            RowType::IV => m.mul_var(c(if same_parity { odd_row } else { even_row }, sk), -1),
            RowType::II | RowType::III => {}
        }
    }
    m
}

pub fn monomial(delta: &Triangle) -> Result<Monomial> {
    Ok(label_monomial(&label(delta)?))
}

/// `Delta_{w0 s_k Lambda_k, Lambda_k}` for the spin nodes `k = n-1, n`.
pub fn minor_lower_spin(n: Rank, k: usize) -> Result<LaurentPoly> {
    let nn = n.get();
    if k + 1 != nn && k != nn {
        return Err(Error::InvalidIndex { index: k, max: nn });
    }
    let lowest = Triangle::lowest(n);
    let mut terms = Vec::new();
    for delta in enumerate_triangles(n) {
        if delta == lowest {
            continue;
        }
        let m = monomial(&delta)?;
        let m = if k == nn { m.bar(nn) } else { m.xi(nn).bar(nn) };
        if let Some((v, _)) = m.exponents().find(|(v, _)| !v.in_range(nn)) {
            return Err(Error::OutOfRange(v));
        }
        terms.push(m);
    }
    LaurentPoly::sum_of(terms)
}

/// `Delta_{w0 s_k Lambda_k, Lambda_k}` for any node.
pub fn minor_lower(n: Rank, k: usize) -> Result<LaurentPoly> {
    n.check_node(k)?;
    if k + 2 <= n.get() {
        minor_lower_small(n, k)
    } else {
        minor_lower_spin(n, k)
    }
}

/// Tropicalized decoration: per node an upper piece and a lower piece,
/// the latter shifted by `lambda_i`.
#[derive(Debug, Clone)]
pub struct DecorationPieces {
    n: Rank,
    upper: Vec<TropicalForm>,
    lower: Vec<TropicalForm>,
}

impl DecorationPieces {
    pub fn rank(&self) -> Rank {
        self.n
    }

    pub fn upper(&self, k: usize) -> &TropicalForm {
        &self.upper[k - 1]
    }

    pub fn lower(&self, k: usize) -> &TropicalForm {
        &self.lower[k - 1]
    }

    /// Value of the tropicalized decoration at `(lambda, x)`.
    pub fn value(&self, lambda: &DominantWeight, x: &LatticePoint) -> i64 {
        let min_vars = |t: &TropicalForm| t.pieces().map(|p| p.eval_vars(x)).min().expect("nonempty");
        (1..=self.n.get())
            .map(|k| min_vars(self.upper(k)).min(lambda.get(k) + min_vars(self.lower(k))))
            .min()
            .expect("rank >= 2")
    }

    /// Same as `value(lambda, x) >= 0`, stopping at the first negative piece.
    pub fn contains(&self, lambda: &DominantWeight, x: &LatticePoint) -> bool {
        (1..=self.n.get()).all(|k| {
            self.upper(k).pieces().all(|p| p.eval_vars(x) >= 0)
                && self.lower(k).pieces().all(|p| lambda.get(k) + p.eval_vars(x) >= 0)
        })
    }

    /// The pieces as forms `f` with `f(lambda, x) >= 0` for members.
    pub fn constraints(&self) -> Vec<AffineForm> {
        let mut out: Vec<AffineForm> = self.upper.iter().flat_map(|t| t.pieces().cloned()).collect();
        for (k, t) in self.lower.iter().enumerate() {
            out.extend(t.pieces().map(|p| p.clone().with_lambda(k + 1, 1)));
        }
        out.sort();
        out.dedup();
        out
    }
}

/// Builds the tropicalized decoration for rank `n`.
pub fn decoration(n: Rank) -> Result<DecorationPieces> {
    let nodes = 1..=n.get();
    let upper = nodes.clone().map(|k| minor_upper(n, k)?.tropicalize(n)).collect::<Result<_>>()?;
    let lower = nodes.map(|k| minor_lower(n, k)?.tropicalize(n)).collect::<Result<_>>()?;
    Ok(DecorationPieces { n, upper, lower })
}

/// `min_k min(upper_k(x), lambda_k + lower_k(x)) >= 0`.
pub fn membership_decoration(n: Rank, lambda: &DominantWeight, x: &LatticePoint) -> Result<bool> {
    Ok(decoration_cached(n)?.contains(lambda, x))
}

/// Shared decoration per rank.
pub fn decoration_cached(n: Rank) -> Result<Arc<DecorationPieces>> {
    static CACHE: OnceLock<Mutex<HashMap<Rank, Arc<DecorationPieces>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(d) = cache.lock().unwrap_or_else(|e| e.into_inner()).get(&n) {
        return Ok(d.clone());
    }
    let built = Arc::new(decoration(n)?);
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    Ok(guard.entry(n).or_insert(built).clone())
}
