#![no_main]

use fixgroups::text::{parse_presentation, parse_presentation_word};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let (head, word) = s.split_once('\0').unwrap_or((s, ""));
        if let Ok(p) = parse_presentation(head) {
            let _ = parse_presentation_word(&p, word);
            let _ = p.to_string();
        }
    }
});
