#![no_main]

use libfuzzer_sys::fuzz_target;
use teichray::wire::{parse_ray, ray_to_string};

fuzz_target!(|data: &[u8]| {
    if let Ok(d) = parse_ray(data) {
        let text = ray_to_string(&d);
        let back = parse_ray(text.as_bytes()).expect("emitted rays re-parse");
        assert_eq!(back, d);
        assert_eq!(ray_to_string(&back), text);
    }
});
