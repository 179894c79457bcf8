//! Encoding planar marked diagrams, given as JSON, into words.
//!
//! ```bash
//! cargo run --example encode
//! cargo run --example encode -- path/to/diagram.json
//! ```

use threepage::encoder::encode_diagram;
use threepage::fixtures::W_G;
use threepage::pages::decode;
use threepage::planar::PlanarMarkedDiagram;
use threepage::surface::euler_characteristic;
use threepage::word::parse_word;

const FIXTURES: [(&str, &str); 3] = [
    ("unknot", include_str!("../fixtures/unknot.json")),
    ("trefoil", include_str!("../fixtures/trefoil.json")),
    ("spun trefoil", include_str!("../fixtures/spun_trefoil.json")),
];

fn show(name: &str, text: &str) {
    let d = PlanarMarkedDiagram::from_json(text).expect("valid JSON");
    d.validate().expect("valid diagram");
    let w = encode_diagram(&d).expect("encodes");
    let g = decode(&w).expect("encodings decode");
    println!("{name}: {} crossings, {} singular points", d.crossing_count(), d.singular_count());
    println!("  {w}");
    println!(
        "  {} letters, {} curves, chi {}",
        w.len(),
        g.component_count(),
        euler_characteristic(&w).unwrap()
    );
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        let text = std::fs::read_to_string(&path).expect("readable file");
        show(&path, &text);
        return;
    }
    for (name, text) in FIXTURES {
        show(name, text);
    }
    let wg = parse_word(W_G).unwrap();
    println!("word fixture: {} letters, chi {}", wg.len(), euler_characteristic(&wg).unwrap());
}
