#![no_main]

use fixgroups::text::parse_word;
use fixgroups::Alphabet;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        for rank in [1, 2, 30] {
            if let Ok(w) = parse_word(s, Alphabet::new(rank).unwrap()) {
                assert_eq!(parse_word(&w.to_string(), w.alphabet()).unwrap(), w);
            }
        }
    }
});
