use std::collections::BTreeSet;

use dn_crystal::minors::{minor_lower, minor_upper};
use dn_crystal::patterns::{map_f, phi_prime_mu, AdmissiblePattern};
use dn_crystal::{LaurentPoly, Rank};

fn rank(n: usize) -> Rank {
    Rank::new(n).unwrap()
}

fn terms(p: &LaurentPoly) -> BTreeSet<String> {
    p.monomials().map(ToString::to_string).collect()
}

#[test]
fn spin_minor_rank_5() {
    let want: BTreeSet<String> = [
        "c_3^(1)/c_5^(1)",
        "c_2^(2)c_4^(1)/c_3^(2)",
        "c_1^(3)c_4^(1)/c_2^(3)",
        "c_4^(1)/c_1^(4)",
        "c_3^(2)/c_1^(4)c_4^(2)",
        "c_1^(3)c_3^(2)/c_2^(3)c_4^(2)",
        "c_2^(2)/c_4^(2)",
        "c_1^(3)c_5^(2)/c_3^(3)",
        "c_2^(3)c_5^(2)/c_1^(4)c_3^(3)",
        "c_5^(2)/c_2^(4)",
        "c_1^(3)/c_5^(3)",
        "c_2^(3)/c_1^(4)c_5^(3)",
        "c_3^(3)/c_2^(4)c_5^(3)",
        "c_4^(3)/c_3^(4)",
        "1/c_4^(4)",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    let p = minor_lower(rank(5), 5).unwrap();
    assert_eq!(p.num_terms(), 15);
    assert_eq!(terms(&p), want);
    assert!(p.terms().all(|(_, c)| *c == 1u32.into()));
}

#[test]
fn spin_minors_swap_under_xi() {
    for n in 3..=7 {
        let r = rank(n);
        assert_eq!(minor_lower(r, n).unwrap().xi(r), minor_lower(r, n - 1).unwrap());
        assert_eq!(minor_upper(r, n).unwrap().xi(r), minor_upper(r, n - 1).unwrap());
    }
}

#[test]
fn upper_minor_rank_4() {
    let p = minor_upper(rank(4), 1).unwrap();
    assert_eq!(p.num_terms(), 7);
    assert_eq!(minor_upper(rank(4), 3).unwrap().to_string(), "c_3^(3)");
}

#[test]
fn example_pattern_rank_5() {
    let r = rank(5);
    let mu = AdmissiblePattern::new(vec![4, 3, 1], r).unwrap();
    assert_eq!(map_f(&mu, r).to_string(), "(1,1,2,2)");
    assert_eq!(phi_prime_mu(&mu, r).to_string(), "x_3^(3) - x_5^(3) - x_2^(4)");
}

#[test]
fn printed_polynomials_parse_back() {
    for n in 3..=6 {
        let r = rank(n);
        for k in 1..=n {
            for p in [minor_upper(r, k).unwrap(), minor_lower(r, k).unwrap()] {
                assert_eq!(p.to_string().parse::<LaurentPoly>().unwrap(), p);
            }
        }
    }
}
