#![no_main]

use autoreal::beta::IntPoly;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = IntPoly::parse_json(text) else {
        return;
    };
    let printed = serde_json::to_string(
        &p.coeffs()
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>(),
    )
    .unwrap();
    assert_eq!(
        IntPoly::parse_json(&printed).expect("serialized polynomial reparses"),
        p
    );
    let pp = p.primitive_part();
    assert_eq!(pp.degree(), p.degree());
});
