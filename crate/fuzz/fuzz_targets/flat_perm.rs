#![no_main]

use framing::flat::{blowup_boundary, parse_perm, turning_wn, OneCylinderSurface};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(perm) = parse_perm(text) else {
        return;
    };
    if perm.len() > 64 {
        return;
    }
    let lengths = vec![1; perm.len()];
    let s = OneCylinderSurface::with_unit_height(perm, &lengths)
        .expect("parsed permutations are valid");
    assert_eq!(s.kappa().iter().sum::<u32>() as usize + 2, 2 * s.genus());
    for (i, z) in s.zeros().iter().enumerate() {
        if z.order > 0 {
            let path = blowup_boundary(&s, i + 1).unwrap();
            let _ = turning_wn(&path, &s);
        }
    }
});
