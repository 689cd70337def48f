#![no_main]

use entbound::bounds::max_entropy;
use entbound::io::parse_measurements;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(a) = parse_measurements(s) {
            assert!(max_entropy(&a) >= 0.0);
        }
    }
});
