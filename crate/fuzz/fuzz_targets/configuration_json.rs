#![no_main]

use framing::configurations::{complementary_regions, is_e_arboreal_spanning, Configuration};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(v) = serde_json::from_slice::<serde_json::Value>(data) else {
        return;
    };
    if let Ok(c) = Configuration::from_json(&v) {
        let _ = complementary_regions(&c);
        let _ = is_e_arboreal_spanning(&c);
    }
});
