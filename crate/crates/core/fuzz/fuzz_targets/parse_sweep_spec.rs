#![no_main]

use entbound::io::parse_sweep_spec;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        let _ = parse_sweep_spec(s);
    }
});
