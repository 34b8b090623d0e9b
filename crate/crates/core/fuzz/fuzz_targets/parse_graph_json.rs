#![no_main]

use dn_crystal::CrystalGraph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|s: &str| {
    if let Ok(g) = CrystalGraph::from_json(s) {
        // validated graphs survive a round trip and all exports
        assert_eq!(CrystalGraph::from_json(&g.to_json()).unwrap(), g);
        let _ = g.to_dot();
        let _ = g.to_text();
        let _ = g.points().count();
    }
});
