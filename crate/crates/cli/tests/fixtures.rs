//! The checked-in fixtures are the library's examples, canonically encoded.
//! `UPDATE_FIXTURES=1` rewrites them.

use std::path::Path;

use hodgeworks::format::{encode_diagram, encode_mhs, to_json};
use hodgeworks::hodge::{examples::*, *};
use hodgeworks::{Field, Gaussian as G, Matrix};

fn expected() -> Vec<(&'static str, String)> {
    let diagram = |d: &hodgeworks::diagrams::Diagram<G>| to_json(&encode_diagram(d, true));
    let single = |n: i32, k: i32| diagram(&MhsComplex::single(n, tate::<G>(k)).to_diagram().unwrap());
    let t = tate::<G>(0);
    let two_term = MhsComplex::new(
        0,
        vec![MixedHodgeStructure::direct_sum(&[&t, &t]), t.clone()],
        vec![Matrix::from_rows(2, vec![vec![G::from_int(1), G::from_int(0)]])],
    )
    .unwrap();
    vec![
        ("p1.json", diagram(&p1_model())),
        ("p1-ahc.json", diagram(&p1_model().decalage_w())),
        ("mh0-control.json", diagram(&negative_control(Axiom::Mh0))),
        ("mh1-control.json", diagram(&negative_control(Axiom::Mh1))),
        ("mh2-control.json", diagram(&negative_control(Axiom::Mh2))),
        ("q0.json", to_json(&encode_mhs(&tate::<G>(0)))),
        ("q1.json", to_json(&encode_mhs(&tate::<G>(-1)))),
        ("q0-deg0.json", single(0, 0)),
        ("q0-deg1.json", single(1, 0)),
        ("q1-deg0.json", single(0, -1)),
        ("two-term.json", diagram(&two_term.to_diagram().unwrap())),
    ]
}

#[test]
fn fixtures_are_current() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let update = std::env::var_os("UPDATE_FIXTURES").is_some();
    for (name, text) in expected() {
        let path = dir.join(name);
        if update {
            std::fs::write(&path, &text).unwrap();
        }
        assert_eq!(std::fs::read_to_string(&path).unwrap(), text, "{name}");
    }
}
