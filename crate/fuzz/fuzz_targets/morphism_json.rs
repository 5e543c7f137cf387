#![no_main]

use autoreal::words::{Letter, Morphism};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(m) = Morphism::parse_json(text) else {
        return;
    };
    let again = serde_json::to_string(&m.to_json()).unwrap();
    let back = Morphism::parse_json(&again).expect("serialized morphism reparses");
    let a = m.fixed_point_prefix(Letter(0), 256);
    let b = back.fixed_point_prefix(Letter(0), 256);
    assert_eq!(a.is_ok(), b.is_ok());
    if let (Ok(a), Ok(b)) = (a, b) {
        assert_eq!(a.letters(), b.letters());
    }
});
