#![no_main]

use libfuzzer_sys::fuzz_target;
use teichray::wire::parse_foliation;

fuzz_target!(|data: &[u8]| {
    let _ = parse_foliation(data);
});
