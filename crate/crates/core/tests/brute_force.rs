//! Exhaustive scan of `[0,3]^12` at `n = 4`: both membership predicates
//! agree pointwise and pick out exactly the generated crystal.

use std::collections::BTreeSet;

use dn_crystal::crystal::DEFAULT_NODE_BUDGET;
use dn_crystal::minors::decoration_cached;
use dn_crystal::{Crystal, DominantWeight, LatticePoint, PolyhedralSystem, Rank};

fn scan(lambda: &DominantWeight) -> BTreeSet<Vec<i64>> {
    let n = Rank::new(4).unwrap();
    let decoration = decoration_cached(n).unwrap();
    let polyhedral = PolyhedralSystem::cached(n);
    let mut found = BTreeSet::new();
    let mut coords = vec![0i64; n.dim()];
    loop {
        let x = LatticePoint::from_coords(n, coords.clone()).unwrap();
        let deco = decoration.contains(lambda, &x);
        assert_eq!(deco, polyhedral.contains(lambda, &x), "lambda={lambda} x={coords:?}");
        if deco {
            found.insert(coords.clone());
        }
        let Some(pos) = coords.iter().position(|&v| v < 3) else { break };
        coords[pos] += 1;
        coords[..pos].iter_mut().for_each(|v| *v = 0);
    }
    found
}

fn check(lambda: Vec<i64>) {
    let n = Rank::new(4).unwrap();
    let lambda = DominantWeight::new(lambda).unwrap();
    let found = scan(&lambda);
    let graph = Crystal::new(n, lambda.clone()).unwrap().generate(DEFAULT_NODE_BUDGET).unwrap();
    let nodes: BTreeSet<Vec<i64>> = graph.nodes.into_iter().map(|v| v.x).collect();
    assert!(nodes.iter().flatten().all(|&v| (0..=3).contains(&v)), "crystal leaves the scanned box");
    assert_eq!(found, nodes, "lambda={lambda}");
}

#[test]
fn trivial_weight() {
    let found = scan(&DominantWeight::zero(Rank::new(4).unwrap()));
    assert_eq!(found.into_iter().collect::<Vec<_>>(), vec![vec![0; 12]]);
}

#[test]
fn fundamental_1() {
    check(vec![1, 0, 0, 0]);
}

#[test]
fn fundamental_2() {
    check(vec![0, 1, 0, 0]);
}

#[test]
fn fundamental_3() {
    check(vec![0, 0, 1, 0]);
}

#[test]
fn fundamental_4() {
    check(vec![0, 0, 0, 1]);
}
