//! Diagram fixtures through the encoder and back.

use threepage::encoder::encode_diagram;
use threepage::fixtures::{HOPF, TREFOIL, W_G};
use threepage::pages::{decode, to_link_diagram};
use threepage::planar::{planar_diagram, PlanarMarkedDiagram};
use threepage::surface::{
    euler_characteristic, kauffman_bracket, normalized_bracket, resolve, same_up_to_orientation, ResolutionSign,
};
use threepage::word::{parse_word, Word};

fn fixture(name: &str) -> PlanarMarkedDiagram {
    let path = format!("{}/fixtures/{name}.json", env!("CARGO_MANIFEST_DIR"));
    let d = PlanarMarkedDiagram::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    d.validate().unwrap();
    d
}

fn curves(w: &Word) -> usize {
    decode(w).unwrap().component_count()
}

fn check_classical(d: &PlanarMarkedDiagram) -> Word {
    let w = encode_diagram(d).unwrap();
    let (pd, pw) = (d.to_link_diagram().unwrap(), to_link_diagram(&w).unwrap());
    assert_eq!(curves(&w), d.component_count().unwrap());
    assert_eq!(w.singular_count(), 0);
    assert_eq!(pw.crossing_count(), pd.crossing_count());
    assert_eq!(kauffman_bracket(&pw).unwrap(), kauffman_bracket(&pd).unwrap());
    let (a, b) = (normalized_bracket(&pw).unwrap(), normalized_bracket(&pd).unwrap());
    assert!(same_up_to_orientation(&a, &b), "{a} vs {b}");
    w
}

#[test]
fn unknot() {
    let w = check_classical(&fixture("unknot"));
    assert_eq!(w, parse_word("a1 c1").unwrap());
}

#[test]
fn trefoil_and_hopf() {
    assert_eq!(check_classical(&fixture("trefoil")), parse_word(TREFOIL).unwrap());
    assert_eq!(check_classical(&fixture("hopf")), parse_word(HOPF).unwrap());
}

#[test]
fn encoding_is_deterministic() {
    let d = fixture("spun_trefoil");
    assert_eq!(encode_diagram(&d).unwrap(), encode_diagram(&d).unwrap());
}

#[test]
fn spun_trefoil_matches_the_word_fixture() {
    let d = fixture("spun_trefoil");
    let w = encode_diagram(&d).unwrap();
    let g = parse_word(W_G).unwrap();
    assert_eq!(d.singular_count(), 2);
    assert_eq!(w.singular_count(), g.singular_count());
    assert_eq!(curves(&w), curves(&g));
    assert_eq!(euler_characteristic(&w), euler_characteristic(&g));
    for sign in [ResolutionSign::Positive, ResolutionSign::Negative] {
        let (rw, rg) = (resolve(&w, sign), resolve(&g, sign));
        assert_eq!(curves(&rw), curves(&rg));
        let (bw, bg) = (
            normalized_bracket(&to_link_diagram(&rw).unwrap()).unwrap(),
            normalized_bracket(&to_link_diagram(&rg).unwrap()).unwrap(),
        );
        assert!(same_up_to_orientation(&bw, &bg));
    }
    // the fixture is the projection of the word
    assert_eq!(planar_diagram(&g).unwrap(), d);
}

#[test]
fn words_survive_projection_and_encoding() {
    for text in [TREFOIL, HOPF, W_G, "a1 x1 c1", "a0 a1 b2 b0 c1 c2 a1 c1"] {
        let w = parse_word(text).unwrap();
        let d = planar_diagram(&w).unwrap();
        let e = encode_diagram(&d).unwrap();
        assert_eq!(curves(&e), curves(&w), "{text}");
        assert_eq!(e.singular_count(), w.singular_count(), "{text}");
        assert_eq!(euler_characteristic(&e), euler_characteristic(&w), "{text}");
    }
}
