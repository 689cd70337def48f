#![no_main]

use entbound::io::parse_graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        // A graph that parses must also color or report an odd cycle, never panic.
        if let Ok(g) = parse_graph(s) {
            let _ = g.two_color();
        }
    }
});
