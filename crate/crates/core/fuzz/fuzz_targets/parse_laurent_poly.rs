#![no_main]

use dn_crystal::{LaurentPoly, Rank};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    let Ok(p) = s.parse::<LaurentPoly>() else { return };
    // whatever parses must print back to the same polynomial
    let again: LaurentPoly = p.to_string().parse().expect("printed form parses");
    assert_eq!(again, p);
    let _ = p.tropicalize(Rank::new(5).unwrap());
});
