#![no_main]

use autoreal::automaton::Dfao;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(a) = Dfao::parse_json(text) else {
        return;
    };
    let again = serde_json::to_string(&a.to_json()).unwrap();
    let b = Dfao::parse_json(&again).expect("serialized automaton reparses");
    if a.num_states() > 64 {
        return;
    }
    let min = a.minimize();
    assert!(min.num_states() <= a.num_states());
    for n in 0..64 {
        assert_eq!(a.eval_name(n), b.eval_name(n));
        assert_eq!(a.eval_name(n), min.eval_name(n));
    }
});
