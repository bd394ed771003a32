use super::*;
use crate::diagrams::ZigzagShape;
use crate::filtered::FilteredComplex;
use crate::hodge::examples::p1_model;
use crate::{random, Gaussian, Rational};

#[test]
fn complex_round_trip() {
    let mut rng = random::rng(4);
    for _ in 0..40 {
        let k = random::filtered_complex::<Rational>(&mut rng, Default::default(), true);
        let text = to_json(&encode_complex(&k, true));
        let doc: ComplexDoc = from_json(&text, "$").unwrap();
        let back = decode_complex::<Rational>(&doc, "$").unwrap();
        assert_eq!(back, k);
        assert_eq!(to_json(&encode_complex(&back, true)), text);
    }
}

#[test]
fn diagram_round_trip() {
    let mut rng = random::rng(9);
    let shape = ZigzagShape::zigzag(2).unwrap();
    for _ in 0..10 {
        let d = random::diagram::<Gaussian>(&mut rng, &shape, Default::default());
        let text = to_json(&encode_diagram(&d, true));
        let back = decode_diagram::<Gaussian>(&from_json(&text, "$").unwrap(), "$").unwrap();
        assert_eq!(back, d);
    }
    let p1 = p1_model::<Gaussian>();
    let back = decode_diagram::<Gaussian>(&encode_diagram(&p1, true), "$").unwrap();
    assert_eq!(back, p1);
}

#[test]
fn mhs_round_trip() {
    let mut rng = random::rng(2);
    for _ in 0..10 {
        let h = random::mhs::<Gaussian>(&mut rng, 3);
        let text = to_json(&encode_mhs(&h));
        let back = decode_mhs::<Gaussian>(&from_json(&text, "$").unwrap(), "$").unwrap();
        assert_eq!(back, h);
    }
}

#[test]
fn hand_written_file() {
    let text = r#"{
        "format": "hodgeworks-complex v1",
        "field": "rational",
        "degrees": {"0": 2, "1": 1},
        "differential": {"0": [[1, "1/2"]]},
        "filtrations": {
            "G": {"direction": "decreasing", "levels": {"0": {"0": [[1, 0], [0, 1]], "1": [[1]]}, "1": {"0": [[1, -2]]}}}
        }
    }"#;
    let k: FilteredComplex<Rational> = decode_complex(&from_json(text, "$").unwrap(), "$").unwrap();
    assert_eq!(k.level(0, 1, 0).dim(), 1);
    assert_eq!(k.level(0, 2, 0).dim(), 0);
    assert_eq!(k.level(0, 1, 1).dim(), 0);
    assert_eq!(k.page(0, 1).total_dim(), 1);
}

#[test]
fn omitted_levels_fill_from_above() {
    // generators at level 2 are also in level 1; level 0 is everything
    let text = r#"{"degrees": {"0": 2}, "filtrations": {"F": {"direction": "decreasing",
        "levels": {"0": {"0": [[1, 0], [0, 1]]}, "2": {"0": [[1, 1]]}}}}}"#;
    let k: FilteredComplex<Rational> = decode_complex(&from_json(text, "$").unwrap(), "$").unwrap();
    assert_eq!(k.level(0, 1, 0), k.level(0, 2, 0));
    assert_eq!(k.level(0, 1, 0).dim(), 1);
}

#[test]
fn errors_carry_a_path() {
    let bad = r#"{"degrees": {"0": 1, "1": 1}, "differential": {"0": [[1, 2]]}}"#;
    let e = decode_complex::<Rational>(&from_json(bad, "$").unwrap(), "$").unwrap_err();
    assert!(e.to_string().contains("$.differential.0"), "{e}");
    let e = from_json::<ComplexDoc>("{\"degrees\": ", "$").unwrap_err();
    assert!(e.to_string().contains("line 1"), "{e}");
    let non_exhaustive = r#"{"degrees": {"0": 2}, "filtrations": {"F": {"direction": "decreasing",
        "levels": {"0": {"0": [[1, 0]]}}}}}"#;
    assert!(decode_complex::<Rational>(&from_json(non_exhaustive, "$").unwrap(), "$").is_err());
    let d2 = r#"{"degrees": {"0": 1, "1": 1, "2": 1}, "differential": {"0": [[1]], "1": [[1]]}}"#;
    assert!(decode_complex::<Rational>(&from_json(d2, "$").unwrap(), "$").is_err());
}
