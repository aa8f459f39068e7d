#![no_main]

use fixgroups::stallings::CoreGraph;
use fixgroups::text::parse_subgroup;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok((alphabet, gens)) = parse_subgroup(s, None) {
            if alphabet.rank() <= 8 && gens.iter().map(|w| w.len()).sum::<usize>() <= 256 {
                let graph = CoreGraph::from_generators(alphabet, &gens).unwrap();
                for g in &gens {
                    assert!(graph.contains(g).unwrap());
                }
            }
        }
    }
});
