#![no_main]

use framing::flat::OneCylinderSurface;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(s) = OneCylinderSurface::from_json(&v) {
        assert_eq!(OneCylinderSurface::from_json(&s.to_json()).unwrap(), s);
    }
});
