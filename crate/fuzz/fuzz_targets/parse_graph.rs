#![no_main]

use coxeter_quandle::graph::{odd_components, parse_graph, Bond};
use coxeter_quandle::rootsys::BilinearForm;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(matrix) = parse_graph(text) else {
        return;
    };
    // accepted matrices must satisfy the validated invariants
    let n = matrix.rank() as u8;
    assert!(n > 0);
    for i in 0..n {
        assert_eq!(matrix.bond(i, i), Bond::Finite(1));
        for j in 0..n {
            assert_eq!(matrix.bond(i, j), matrix.bond(j, i));
            if i != j {
                assert!(!matches!(matrix.bond(i, j), Bond::Finite(m) if m < 2));
            }
        }
    }
    // downstream structure stays consistent on anything that parses
    let odd = odd_components(&matrix);
    assert!(odd.count >= 1 && odd.count <= matrix.rank());
    assert!(odd.representatives.windows(2).all(|w| w[0] < w[1]));
    for (g, &class) in odd.class_of.iter().enumerate() {
        assert!(class < odd.count, "generator {g} has class {class}");
    }
    let form = BilinearForm::new(&matrix);
    for i in 0..matrix.rank() {
        assert_eq!(form.entry(i, i), 1.0);
    }
    // the echoed JSON must reparse to the same matrix
    let echoed = parse_graph(&matrix.to_json().to_string()).expect("echo reparses");
    assert_eq!(echoed, matrix);
});
