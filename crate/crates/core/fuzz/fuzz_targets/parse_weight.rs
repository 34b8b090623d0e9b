#![no_main]

use dn_crystal::DominantWeight;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(w) = s.parse::<DominantWeight>() {
        assert!(w.coeffs().iter().all(|&c| c >= 0));
        assert_eq!(w.to_string().parse::<DominantWeight>().unwrap(), w);
    }
});
