#![no_main]

use coxeter_quandle::graph::{catalog, parse_graph};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(name) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(matrix) = catalog(name) else {
        return;
    };
    // the alias form must agree with the direct lookup
    let via_alias = parse_graph(&format!("coxeter {name}")).expect("alias parses");
    assert_eq!(via_alias, matrix);
    assert!(matrix.rank() >= 1 && matrix.rank() <= 255);
});
