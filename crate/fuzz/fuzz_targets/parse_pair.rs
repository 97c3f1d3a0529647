#![no_main]

use libfuzzer_sys::fuzz_target;
use teichray::pair::analyze;
use teichray::wire::parse_pair;

fuzz_target!(|data: &[u8]| {
    if let Ok((d1, d2)) = parse_pair(data) {
        let _ = analyze(&d1, &d2);
    }
});
