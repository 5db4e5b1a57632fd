#![no_main]

use coxeter_quandle::engine::{Engine, EngineConfig};
use coxeter_quandle::graph::catalog;
use libfuzzer_sys::fuzz_target;
use std::sync::LazyLock;

static ENGINE: LazyLock<Engine> = LazyLock::new(|| {
    let config = EngineConfig { max_orbit_states: 2_000, ..EngineConfig::default() };
    Engine::word(catalog("B4").unwrap(), config)
});

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let engine = &*ENGINE;
    let Ok(word) = engine.matrix().parse_word(text) else {
        return;
    };
    // parsing round-trips through formatting
    let formatted = engine.matrix().format_word(&word);
    assert_eq!(engine.matrix().parse_word(&formatted).unwrap(), word);
    if word.len() > 64 {
        return;
    }
    // canonicalization (budgeted) is idempotent and class-preserving
    let Ok(canon) = engine.canonicalize(&word) else {
        return;
    };
    assert!(canon.length() <= word.len());
    let again = engine.canonicalize(canon.word()).expect("canonical word re-canonicalizes");
    assert_eq!(again, canon);
    if let Ok(equal) = engine.words_equal(&word, canon.word()) {
        assert!(equal);
    }
});
