//! Independent checks: the Weyl dimension formula for `D_n`, exhaustive
//! lattice-point enumeration of both inequality systems, and the identity
//! between tropicalized triangle monomials and the pattern forms.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::crystal::{cartan_unchecked, Crystal, CrystalGraph};
use crate::error::{Error, Result};
use crate::lattice::{DominantWeight, LatticePoint, Rank};
use crate::minors::{decoration_cached, enumerate_triangles, label, monomial, Triangle};
use crate::patterns::{enumerate_patterns, map_f, phi_mu, phi_prime_mu, AdmissiblePattern, Label, PolyhedralSystem};
use crate::tropical::AffineForm;

/// Most mismatching points kept in a report.
pub const MAX_WITNESSES: usize = 10;

/// Default budget of search-tree nodes for box enumeration.
pub const DEFAULT_SEARCH_BUDGET: usize = 50_000_000;

/// `dim V(lambda) = prod_{alpha > 0} <lambda + rho, alpha> / <rho, alpha>`
/// over the roots `e_a +- e_b`, `a < b`, in doubled `eps`-coordinates.
pub fn weyl_dim(n: Rank, lambda: &DominantWeight) -> Result<BigUint> {
    let nn = n.get();
    if lambda.len() != nn {
        return Err(Error::DimensionMismatch { expected: nn, got: lambda.len() });
    }
    // 2*lambda in eps coordinates: Lambda_k = e_1+..+e_k (k <= n-2),
    // Lambda_{n-1} = (e_1+..+e_{n-1} - e_n)/2, Lambda_n = (e_1+..+e_n)/2.
    let mut lam2 = vec![0i64; nn];
    for k in 1..=nn.saturating_sub(2) {
        for slot in lam2.iter_mut().take(k) {
            *slot += 2 * lambda.get(k);
        }
    }
    for (a, slot) in lam2.iter_mut().enumerate() {
        let minus = if a + 1 == nn { -1 } else { 1 };
        *slot += minus * lambda.get(nn - 1) + lambda.get(nn);
    }
    let rho2: Vec<i64> = (0..nn).map(|a| 2 * (nn - 1 - a) as i64).collect();
    let mut prod = BigRational::one();
    for a in 0..nn {
        for b in a + 1..nn {
            for sign in [1, -1] {
                let num = (lam2[a] + rho2[a]) + sign * (lam2[b] + rho2[b]);
                let den = rho2[a] + sign * rho2[b];
                prod *= BigRational::new(BigInt::from(num), BigInt::from(den));
            }
        }
    }
    if !prod.is_integer() {
        return Err(Error::NonIntegralDimension(prod.to_string()));
    }
    prod.to_integer().to_biguint().ok_or_else(|| Error::NonIntegralDimension(prod.to_string()))
}

/// `c + sum a_v x_v >= 0` over dense positions.
#[derive(Debug, Clone)]
struct Linear {
    constant: i64,
    terms: Vec<(usize, i64)>,
}

fn compile(forms: &[AffineForm], n: Rank, lambda: &DominantWeight) -> Vec<Linear> {
    let zero = LatticePoint::zero(n);
    forms
        .iter()
        .map(|f| Linear {
            constant: f.eval(lambda, &zero),
            terms: f.var_coeffs().map(|(v, c)| (n.position(v), c)).collect(),
        })
        .collect()
}

fn div_floor(a: i64, b: i64) -> i64 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn div_ceil(a: i64, b: i64) -> i64 {
    -div_floor(-a, b)
}

/// Integer points of `{x in [lo, hi]^dim : every constraint >= 0}`, found
/// by depth-first search with interval bound propagation.
fn enumerate_box(cons: &[Linear], dim: usize, lo: i64, hi: i64, budget: usize) -> Result<Vec<Vec<i64>>> {
    struct Search<'a> {
        cons: &'a [Linear],
        budget: usize,
        visited: usize,
        out: Vec<Vec<i64>>,
    }

    impl Search<'_> {
        /// Tightens the bounds to a fixpoint; false if some constraint cannot hold.
        fn propagate(&self, lo: &mut [i64], hi: &mut [i64]) -> bool {
            loop {
                let mut changed = false;
                for c in self.cons {
                    let max: i64 = c.constant
                        + c.terms.iter().map(|&(v, a)| if a > 0 { a * hi[v] } else { a * lo[v] }).sum::<i64>();
                    if max < 0 {
                        return false;
                    }
                    for &(v, a) in &c.terms {
                        let rest = max - if a > 0 { a * hi[v] } else { a * lo[v] };
                        if a > 0 {
                            let need = div_ceil(-rest, a);
                            if need > lo[v] {
                                lo[v] = need;
                                changed = true;
                            }
                        } else {
                            let allow = div_floor(rest, -a);
                            if allow < hi[v] {
                                hi[v] = allow;
                                changed = true;
                            }
                        }
                        if lo[v] > hi[v] {
                            return false;
                        }
                    }
                }
                if !changed {
                    return true;
                }
            }
        }

        fn run(&mut self, mut lo: Vec<i64>, mut hi: Vec<i64>) -> Result<()> {
            self.visited += 1;
            if self.visited > self.budget {
                return Err(Error::BudgetExceeded { budget: self.budget, explored: self.out.len() });
            }
            if !self.propagate(&mut lo, &mut hi) {
                return Ok(());
            }
            let open = (0..lo.len()).filter(|&v| lo[v] < hi[v]).min_by_key(|&v| hi[v] - lo[v]);
            match open {
                None => self.out.push(lo),
                Some(v) => {
                    for value in lo[v]..=hi[v] {
                        let (mut l, mut h) = (lo.clone(), hi.clone());
                        l[v] = value;
                        h[v] = value;
                        self.run(l, h)?;
                    }
                }
            }
            Ok(())
        }
    }

    let mut s = Search { cons, budget, visited: 0, out: Vec::new() };
    s.run(vec![lo; dim], vec![hi; dim])?;
    s.out.sort();
    Ok(s.out)
}

/// All lattice points with coordinates in `[-bound, bound]` satisfying
/// `f(lambda, x) >= 0` for every form.
pub fn lattice_points(
    n: Rank,
    lambda: &DominantWeight,
    forms: &[AffineForm],
    bound: i64,
    budget: usize,
) -> Result<Vec<LatticePoint>> {
    let cons = compile(forms, n, lambda);
    Ok(enumerate_box(&cons, n.dim(), -bound, bound, budget)?
        .into_iter()
        .map(|c| LatticePoint::from_coords(n, c).expect("dimension matches"))
        .collect())
}

/// Per-coordinate bound `1 + (2n - 3) sum_i lambda_i`.
pub fn box_bound(n: Rank, lambda: &DominantWeight) -> i64 {
    1 + lambda.level() * (2 * n.get() as i64 - 3)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoincidenceReport {
    pub n: usize,
    pub lambda: Vec<i64>,
    pub box_bound: i64,
    pub box_certified: bool,
    pub decoration_members: usize,
    pub polyhedral_members: usize,
    pub bfs_nodes: usize,
    pub weyl_dimension: u64,
    pub witnesses: Vec<Vec<i64>>,
    pub success: bool,
}

/// Compares, inside `[-B, B]^N`, the decoration members, the polyhedral
/// members and the BFS closure of the zero vector, and checks the common
/// size against the Weyl dimension.
pub fn check_coincidence(n: Rank, lambda: &DominantWeight) -> Result<CoincidenceReport> {
    check_coincidence_with_budget(n, lambda, DEFAULT_SEARCH_BUDGET)
}

pub fn check_coincidence_with_budget(n: Rank, lambda: &DominantWeight, budget: usize) -> Result<CoincidenceReport> {
    let crystal = Crystal::new(n, lambda.clone())?;
    let deco = decoration_cached(n)?;
    let poly = PolyhedralSystem::cached(n);
    let bound = box_bound(n, lambda);

    let from_deco = lattice_points(n, lambda, &deco.constraints(), bound, budget)?;
    let from_poly = lattice_points(n, lambda, &poly.constraints(), bound, budget)?;
    let graph = crystal.generate(budget)?;
    let from_bfs: Vec<LatticePoint> = graph.points().collect();

    let mut witnesses = BTreeSet::new();
    // pointwise: every enumerated point is re-tested by both membership predicates
    for x in from_deco.iter().chain(&from_poly).chain(&from_bfs) {
        let in_box = x.max_abs() <= bound;
        if !in_box || deco.contains(lambda, x) != poly.contains(lambda, x) {
            witnesses.insert(x.clone());
        }
    }
    let sets: [BTreeSet<&LatticePoint>; 3] =
        [from_deco.iter().collect(), from_poly.iter().collect(), from_bfs.iter().collect()];
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        witnesses.extend(sets[a].symmetric_difference(&sets[b]).map(|&x| x.clone()));
    }
    let box_certified = from_deco.iter().chain(&from_poly).chain(&from_bfs).all(|x| x.max_abs() < bound);
    let weyl = weyl_dim(n, lambda)?.to_u64().ok_or_else(|| Error::NonIntegralDimension("too large".into()))?;
    let counts = [from_deco.len(), from_poly.len(), from_bfs.len()];
    let success = witnesses.is_empty() && box_certified && counts.iter().all(|&c| c as u64 == weyl);
    Ok(CoincidenceReport {
        n: n.get(),
        lambda: lambda.coeffs().to_vec(),
        box_bound: bound,
        box_certified,
        decoration_members: counts[0],
        polyhedral_members: counts[1],
        bfs_nodes: counts[2],
        weyl_dimension: weyl,
        witnesses: witnesses.into_iter().take(MAX_WITNESSES).map(LatticePoint::into_coords).collect(),
        success,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpinFormCheck {
    pub n: usize,
    pub patterns_checked: usize,
    pub holds: bool,
    pub offending: Vec<AdmissiblePattern>,
}

/// Triangle of every label, `delta_l` included.
pub fn triangles_by_label(n: Rank) -> Result<HashMap<Label, Triangle>> {
    enumerate_triangles(n).into_iter().map(|t| Ok((label(&t)?, t))).collect()
}

/// For every pattern `mu`, tropicalizing the barred monomial of the
/// triangle labelled `F(mu)` gives `phi'_mu`, and with `xi` applied first
/// gives `phi_mu`.
pub fn check_spin_forms(n: Rank) -> Result<SpinFormCheck> {
    if n.get() < 3 {
        return Err(Error::InvalidRank(n.get()));
    }
    let nn = n.get();
    let by_label = triangles_by_label(n)?;
    let patterns = enumerate_patterns(n);
    let mut offending = Vec::new();
    for mu in &patterns {
        let s = map_f(mu, n);
        let Some(delta) = by_label.get(&s) else {
            offending.push(mu.clone());
            continue;
        };
        let m = monomial(delta)?;
        let plain = m.bar(nn).tropicalize(n);
        let twisted = m.xi(nn).bar(nn).tropicalize(n);
        let ok = plain.as_ref().is_ok_and(|f| f == &phi_prime_mu(mu, n))
            && twisted.as_ref().is_ok_and(|f| f == &phi_mu(mu, n));
        if !ok {
            offending.push(mu.clone());
        }
    }
    Ok(SpinFormCheck { n: nn, patterns_checked: patterns.len(), holds: offending.is_empty(), offending })
}

/// Failure of one crystal axiom at one node.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: &'static str,
    pub x: Vec<i64>,
    pub i: usize,
}

/// Checks on every node of `graph` and every color: `e`/`f` reversibility,
/// the weight shift by the Cartan matrix, normality of `eps` and `phi`,
/// and `e^k` against `k`-fold `e` for `k <= eps + 1`.
pub fn axiom_violations(crystal: &Crystal, graph: &CrystalGraph) -> Vec<AxiomViolation> {
    let n = crystal.rank();
    let mut out = Vec::new();
    for x in graph.points() {
        let wt = crystal.weight(&x);
        for i in 1..=n.get() {
            let mut fail = |axiom| out.push(AxiomViolation { axiom, x: x.coords().to_vec(), i });
            if let Some(y) = crystal.apply_f(&x, i) {
                if crystal.apply_e(&y, i).as_ref() != Some(&x) {
                    fail("reversibility");
                }
                let wy = crystal.weight(&y);
                if (1..=n.get()).any(|j| wy[j - 1] != wt[j - 1] - cartan_unchecked(n.get(), j, i)) {
                    fail("weight shift");
                }
            }
            if let Some(y) = crystal.apply_e(&x, i) {
                if crystal.apply_f(&y, i).as_ref() != Some(&x) {
                    fail("reversibility");
                }
            }
            // e-string, compared step by step with the closed form
            let mut cur = x.clone();
            let mut len = 0i64;
            loop {
                let next = crystal.apply_e(&cur, i);
                if crystal.apply_e_power(&x, i, (len + 1) as u32) != next {
                    fail("e power");
                }
                match next {
                    Some(y) => {
                        cur = y;
                        len += 1;
                    }
                    None => break,
                }
            }
            if len != crystal.epsilon(&x, i) {
                fail("eps normality");
            }
            let mut cur = x.clone();
            let mut len = 0i64;
            while let Some(y) = crystal.apply_f(&cur, i) {
                cur = y;
                len += 1;
            }
            if len != crystal.phi(&x, i) {
                fail("phi normality");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rank(n: usize) -> Rank {
        Rank::new(n).unwrap()
    }

    fn w(v: &[i64]) -> DominantWeight {
        DominantWeight::new(v.to_vec()).unwrap()
    }

    #[test]
    fn weyl_small_cases() {
        assert_eq!(weyl_dim(rank(4), &w(&[0, 0, 0, 0])).unwrap(), 1u32.into());
        assert_eq!(weyl_dim(rank(4), &w(&[1, 0, 0, 0])).unwrap(), 8u32.into());
        assert_eq!(weyl_dim(rank(4), &w(&[0, 1, 0, 0])).unwrap(), 28u32.into());
        assert_eq!(weyl_dim(rank(4), &w(&[0, 0, 1, 0])).unwrap(), 8u32.into());
        assert_eq!(weyl_dim(rank(5), &w(&[0, 0, 0, 0, 1])).unwrap(), 16u32.into());
        assert_eq!(weyl_dim(rank(5), &w(&[0, 0, 1, 0, 0])).unwrap(), 120u32.into());
        assert!(weyl_dim(rank(4), &w(&[1, 0])).is_err());
    }

    #[test]
    fn weyl_spin_symmetry() {
        for n in 3..=8 {
            let r = rank(n);
            let a = weyl_dim(r, &DominantWeight::fundamental(r, n - 1).unwrap()).unwrap();
            let b = weyl_dim(r, &DominantWeight::fundamental(r, n).unwrap()).unwrap();
            assert_eq!(a, b);
            assert_eq!(a, BigUint::from(1u32) << (n - 1));
            let mut v = vec![0; n];
            v[0] = 1;
            v[n - 2] = 2;
            let mut u = v.clone();
            u.swap(n - 2, n - 1);
            assert_eq!(weyl_dim(r, &w(&v)).unwrap(), weyl_dim(r, &w(&u)).unwrap());
        }
    }

    #[test]
    fn weyl_vector_and_adjoint() {
        for n in 4..=9 {
            let r = rank(n);
            let vec_dim = weyl_dim(r, &DominantWeight::fundamental(r, 1).unwrap()).unwrap();
            assert_eq!(vec_dim, BigUint::from(2 * n));
            let adj = weyl_dim(r, &DominantWeight::fundamental(r, 2).unwrap()).unwrap();
            assert_eq!(adj, BigUint::from(n * (2 * n - 1)));
        }
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(div_floor(-3, 2), -2);
        assert_eq!(div_floor(3, 2), 1);
        assert_eq!(div_ceil(3, 2), 2);
        assert_eq!(div_ceil(-3, 2), -1);
        assert_eq!(div_floor(-3, -2), 1);
    }

    #[test]
    fn box_enumeration_matches_brute_force() {
        // x0 - x1 >= 0, 2 - x0 - x2 >= 0, x1 + x2 - 1 >= 0 in [-2, 2]^3
        let cons = vec![
            Linear { constant: 0, terms: vec![(0, 1), (1, -1)] },
            Linear { constant: 2, terms: vec![(0, -1), (2, -1)] },
            Linear { constant: -1, terms: vec![(1, 1), (2, 1)] },
        ];
        let got = enumerate_box(&cons, 3, -2, 2, 10_000).unwrap();
        let mut want = Vec::new();
        for a in -2..=2 {
            for b in -2..=2 {
                for c in -2..=2 {
                    let p = [a, b, c];
                    if cons.iter().all(|l| l.constant + l.terms.iter().map(|&(v, k)| k * p[v]).sum::<i64>() >= 0) {
                        want.push(p.to_vec());
                    }
                }
            }
        }
        assert_eq!(got, want);
    }

    #[test]
    fn coincidence_small() {
        let r = rank(4);
        let rep = check_coincidence(r, &w(&[1, 0, 0, 0])).unwrap();
        assert!(rep.success, "{rep:?}");
        assert_eq!(rep.bfs_nodes, 8);
        let rep = check_coincidence(r, &w(&[0, 0, 0, 0])).unwrap();
        assert!(rep.success);
        assert_eq!(rep.decoration_members, 1);
    }

    #[test]
    fn spin_forms_example_pattern() {
        let r = rank(5);
        let mu = AdmissiblePattern::new(vec![4, 3, 1], r).unwrap();
        let by_label = triangles_by_label(r).unwrap();
        let m = monomial(&by_label[&map_f(&mu, r)]).unwrap();
        assert_eq!(m.bar(5).tropicalize(r).unwrap(), phi_prime_mu(&mu, r));
        assert!(check_spin_forms(r).unwrap().holds);
    }

    #[test]
    fn spin_forms_need_rank_three() {
        assert!(check_spin_forms(rank(2)).is_err());
    }
}
