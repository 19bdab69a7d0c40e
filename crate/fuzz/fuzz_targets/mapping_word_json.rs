#![no_main]

use framing::twist_engine::{EngineState, MappingWord};
use framing::{FramedSurface, HalfInt, SurfaceType};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(word) = serde_json::from_slice::<MappingWord>(data) else {
        return;
    };
    let s = SurfaceType::new(2, 2);
    let f = FramedSurface::new(
        s,
        vec![-3, -1],
        vec![0, 1, -1, 2],
        vec![HalfInt::half_plus(0)],
    )
    .unwrap();
    let _ = EngineState::new(f).apply_word(&word);
});
