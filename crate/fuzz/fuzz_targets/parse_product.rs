#![no_main]

use fixgroups::text::{parse_product_element, parse_product_endo, parse_product_group};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let (group, rest) = s.split_once('\0').unwrap_or((s, ""));
        if let Ok(g) = parse_product_group(group) {
            if g.rank() <= 16 {
                let _ = parse_product_element(&g, rest);
                let _ = parse_product_endo(&g, rest);
            }
        }
    }
});
