#![no_main]

use framing::FramedSurface;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(f) = FramedSurface::from_json(&v) {
        let back = FramedSurface::from_json(&f.to_json()).expect("own output parses");
        assert_eq!(back, f);
        let _ = framing::arf::arf(&f);
    }
});
