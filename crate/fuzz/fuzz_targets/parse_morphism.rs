#![no_main]

use fixgroups::text::{parse_endo, parse_morphism};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_morphism(s, None);
        if let Ok(phi) = parse_endo(s) {
            assert_eq!(phi.domain(), phi.codomain());
        }
    }
});
