#![no_main]

use autoreal::cobham::MorphicRepr;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = MorphicRepr::parse_json(text) else {
        return;
    };
    let again = serde_json::to_string(&m.to_json()).unwrap();
    let back = MorphicRepr::parse_json(&again).expect("serialized morphic word reparses");
    assert_eq!(m.sequence_prefix(256), back.sequence_prefix(256));
});
