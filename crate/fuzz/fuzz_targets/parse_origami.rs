#![no_main]

use libfuzzer_sys::fuzz_target;
use teichray::origami::{core_intersections, ray_data, CylinderDirection};
use teichray::wire::parse_origami;

fuzz_target!(|data: &[u8]| {
    if let Ok(o) = parse_origami(data) {
        if o.n() <= 256 {
            let _ = ray_data(&o, CylinderDirection::Vertical);
            let _ = core_intersections(&o);
            let _ = o.cone_data();
        }
    }
});
