#![no_main]

use framing::flat::parse_q;
use framing::HalfInt;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = text.parse::<HalfInt>() {
        assert_eq!(v.to_string().parse::<HalfInt>().unwrap(), v);
    }
    let _ = parse_q(text);
});
