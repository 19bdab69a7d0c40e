#![no_main]

use framing::strata::{components, framed_to_absolute_surjective};
use framing::PartitionKappa;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(k) = text.parse::<PartitionKappa>() {
        assert_eq!(k.to_string().parse::<PartitionKappa>().unwrap(), k);
        if k.genus() <= 12 && k.len() <= 12 {
            let _ = components(&k);
            let _ = framed_to_absolute_surjective(&k);
        }
    }
});
