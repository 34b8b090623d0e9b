//! Admissible patterns, the linear forms they index, and the inequality
//! system cutting `B(lambda)` out of `Z^N` for the reversed cyclic word.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{DominantWeight, LatticePoint, Rank};
use crate::tropical::{AffineForm, VarIndex};

/// Strictly decreasing `0 < mu_l < ... < mu_1 < n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct AdmissiblePattern(Vec<usize>);

impl AdmissiblePattern {
    pub fn new(parts: Vec<usize>, n: Rank) -> Result<Self> {
        let ok = !parts.is_empty()
            && parts[0] < n.get()
            && *parts.last().unwrap() > 0
            && parts.windows(2).all(|w| w[0] > w[1]);
        if !ok {
            return Err(Error::InvalidPattern(parts));
        }
        Ok(AdmissiblePattern(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn last(&self) -> usize {
        *self.0.last().expect("patterns are nonempty")
    }
}

impl fmt::Display for AdmissiblePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// All of `M_n`, in decreasing lexicographic order.
pub fn enumerate_patterns(n: Rank) -> Vec<AdmissiblePattern> {
    let top = n.get() - 1;
    let mut out: Vec<AdmissiblePattern> = (1u64..(1 << top))
        .map(|mask| {
            let parts = (1..=top).rev().filter(|&m| mask & (1 << (m - 1)) != 0).collect();
            AdmissiblePattern(parts)
        })
        .collect();
    out.sort_by(|a, b| b.cmp(a));
    out
}

/// Label `(s_1, ..., s_{n-1})` of a triangle, with the boundary values
/// `s_0 = 1` and `s_n = s_{n-2} + 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Label(Vec<usize>);

impl Label {
    pub fn new(s: Vec<usize>, n: Rank) -> Result<Self> {
        if s.len() != n.get() - 1 {
            return Err(Error::DimensionMismatch { expected: n.get() - 1, got: s.len() });
        }
        let mut prev = 1;
        for (k, &v) in s.iter().enumerate() {
            if v == 0 || v > k + 2 || !(v == prev || v == prev + 1) {
                return Err(Error::Parse(format!("invalid label {s:?}")));
            }
            prev = v;
        }
        Ok(Label(s))
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len() + 1
    }

    /// `s_k` for `k` in `[0, n]`, boundary conventions included.
    pub fn at(&self, k: usize) -> usize {
        let n = self.rank();
        match k {
            0 => 1,
            k if k == n => {
                if n >= 2 {
                    self.at(n - 2) + 1
                } else {
                    1
                }
            }
            k => self.0[k - 1],
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        write!(f, ")")
    }
}

/// `F(mu) = reverse(K_n - U_{mu_1} - ... - U_{mu_l})` with
/// `K_n = (n, n-1, ..., 2)` and `U_m` the ones in the first `m` slots.
pub fn map_f(mu: &AdmissiblePattern, n: Rank) -> Label {
    let n = n.get();
    let mut v: Vec<usize> = (2..=n).rev().collect();
    for &m in mu.parts() {
        for slot in v.iter_mut().take(m) {
            *slot -= 1;
        }
    }
    v.reverse();
    Label(v)
}

/// Row of the substituted variable in `X` / `X'`: rows `n-1` and `n`
/// trade places in columns of the given parity.
fn twisted(n: usize, row: i64, col: i64, swap_parity: i64) -> VarIndex {
    let n = n as i64;
    let row = if col.rem_euclid(2) == swap_parity {
        match row {
            r if r == n - 1 => n,
            r if r == n => n - 1,
            r => r,
        }
    } else {
        row
    };
    VarIndex::new(row as i32, col as i32)
}

fn pattern_form(mu: &AdmissiblePattern, n: Rank, swap_parity: i64) -> AffineForm {
    let nn = n.get() as i64;
    let mut f = AffineForm::zero(n);
    for (k, &m) in mu.parts().iter().enumerate() {
        let (m, k) = (m as i64, k as i64 + 1);
        let col = m + k - 1;
        f.add_var(twisted(n.get(), nn - m - 1, col, swap_parity), 1);
        f.add_var(twisted(n.get(), nn - m, col, swap_parity), -1);
    }
    if mu.last() >= 2 {
        f.add_var(twisted(n.get(), nn, mu.len() as i64, swap_parity), 1);
    }
    f
}

/// `phi_mu`: the rows `n-1`, `n` swap in even columns.
pub fn phi_mu(mu: &AdmissiblePattern, n: Rank) -> AffineForm {
    pattern_form(mu, n, 0)
}

/// `phi'_mu`: the rows `n-1`, `n` swap in odd columns.
pub fn phi_prime_mu(mu: &AdmissiblePattern, n: Rank) -> AffineForm {
    pattern_form(mu, n, 1)
}

fn x(row: usize, col: usize) -> VarIndex {
    VarIndex::new(row as i32, col as i32)
}

/// `Xi_k`, the `lambda`-free inequalities attached to node `k`.
pub fn xi_set(n: Rank, k: usize) -> Result<BTreeSet<AffineForm>> {
    n.check_node(k)?;
    let nn = n.get();
    let form = |terms: &[(VarIndex, i64)]| AffineForm::from_terms(n, terms.iter().copied());
    let mut out = BTreeSet::new();
    if k == nn - 1 {
        out.insert(form(&[(x(nn - 1, nn - 1), 1)]));
        return Ok(out);
    }
    if k == nn {
        out.insert(form(&[(x(nn, nn - 1), 1)]));
        return Ok(out);
    }
    // i - 1 = 0 contributes nothing
    for i in 1..=nn - 2 {
        out.insert(form(&[(x(i, k), 1), (VarIndex::new(i as i32 - 1, k as i32 + 1), -1)]));
    }
    out.insert(form(&[(x(nn - 1, k), 1), (x(nn, k), 1), (x(nn - 2, k + 1), -1)]));
    out.insert(form(&[(x(nn - 2, k + 1), 1), (x(nn - 1, k + 1), -1), (x(nn, k + 1), -1)]));
    out.insert(form(&[(x(nn, k), 1), (x(nn - 1, k + 1), -1)]));
    out.insert(form(&[(x(nn - 1, k), 1), (x(nn, k + 1), -1)]));
    for j in k + 2..nn {
        out.insert(form(&[(x(nn + k - j - 1, j), 1), (x(nn + k - j, j), -1)]));
    }
    Ok(out)
}

/// `Xi'_k`, the forms `g` entering `lambda_k + g(x) >= 0`.
pub fn xi_prime_set(n: Rank, k: usize) -> Result<BTreeSet<AffineForm>> {
    n.check_node(k)?;
    let nn = n.get();
    if k == nn - 1 {
        return Ok(enumerate_patterns(n).iter().map(|mu| phi_mu(mu, n)).collect());
    }
    if k == nn {
        return Ok(enumerate_patterns(n).iter().map(|mu| phi_prime_mu(mu, n)).collect());
    }
    Ok((1..=k)
        .map(|j| {
            let hi = VarIndex::new((k - j) as i32, j as i32);
            let lo = VarIndex::new((k - j + 1) as i32, j as i32);
            AffineForm::from_terms(n, [(hi, 1), (lo, -1)])
        })
        .collect())
}

/// The full inequality system for a rank, materialized once.
#[derive(Debug, Clone)]
pub struct PolyhedralSystem {
    n: Rank,
    xi: Vec<BTreeSet<AffineForm>>,
    xi_prime: Vec<BTreeSet<AffineForm>>,
}

impl PolyhedralSystem {
    pub fn new(n: Rank) -> Self {
        let nodes = 1..=n.get();
        let xi = nodes.clone().map(|k| xi_set(n, k).expect("node in range")).collect();
        let xi_prime = nodes.map(|k| xi_prime_set(n, k).expect("node in range")).collect();
        PolyhedralSystem { n, xi, xi_prime }
    }

    /// Shared instance per rank.
    pub fn cached(n: Rank) -> Arc<Self> {
        static CACHE: OnceLock<Mutex<HashMap<Rank, Arc<PolyhedralSystem>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
        guard.entry(n).or_insert_with(|| Arc::new(PolyhedralSystem::new(n))).clone()
    }

    pub fn rank(&self) -> Rank {
        self.n
    }

    pub fn xi(&self, k: usize) -> &BTreeSet<AffineForm> {
        &self.xi[k - 1]
    }

    pub fn xi_prime(&self, k: usize) -> &BTreeSet<AffineForm> {
        &self.xi_prime[k - 1]
    }

    /// Every inequality as a form `f` with `f(lambda, x) >= 0`.
    pub fn constraints(&self) -> Vec<AffineForm> {
        let plain = self.xi.iter().flatten().cloned();
        let shifted = self
            .xi_prime
            .iter()
            .enumerate()
            .flat_map(|(k, set)| set.iter().map(move |g| g.clone().with_lambda(k + 1, 1)));
        let mut all: Vec<_> = plain.chain(shifted).collect();
        all.sort();
        all.dedup();
        all
    }

    pub fn contains(&self, lambda: &DominantWeight, x: &LatticePoint) -> bool {
        self.xi.iter().flatten().all(|f| f.eval_vars(x) >= 0)
            && self.xi_prime.iter().enumerate().all(|(k, set)| {
                let lk = lambda.get(k + 1);
                set.iter().all(|g| lk + g.eval_vars(x) >= 0)
            })
    }
}

/// `x` lies in the polyhedral realization of `B(lambda)`.
pub fn membership_polyhedral(n: Rank, lambda: &DominantWeight, x: &LatticePoint) -> bool {
    PolyhedralSystem::cached(n).contains(lambda, x)
}
