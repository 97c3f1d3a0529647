#![no_main]

use libfuzzer_sys::fuzz_target;
use teichray::rational::{format_rational, parse_rational};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(r) = parse_rational(s) {
        // the canonical form parses back to the same value
        let text = format_rational(&r);
        assert_eq!(parse_rational(&text).unwrap(), r);
    }
});
