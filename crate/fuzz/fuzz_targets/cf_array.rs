#![no_main]

use autoreal::contfrac::{convergents, parse_integer_array, CfWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let parsed = parse_integer_array(text);
    let Ok(cf) = CfWord::parse_json(text) else {
        return;
    };
    assert!(parsed.is_ok());
    let c = convergents(&cf, 32);
    // consecutive convergents have determinant +-1
    for w in c.windows(2) {
        let det = &w[1].0 * &w[0].1 - &w[0].0 * &w[1].1;
        assert!(det == 1.into() || det == (-1).into());
    }
});
