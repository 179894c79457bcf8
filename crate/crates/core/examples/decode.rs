//! Decoding a word into arcs in the three pages, singular points and curves.
//!
//! ```bash
//! cargo run --example decode
//! ```

use threepage::fixtures::{TREFOIL, W_G, W_G_PRINTED};
use threepage::pages::{decode, local_picture, Page};
use threepage::word::parse_word;

fn main() {
    for (name, text) in [("trefoil", TREFOIL), ("spun trefoil", W_G)] {
        let w = parse_word(text).expect("fixture parses");
        let g = decode(&w).expect("fixture decodes");
        println!("{name}: {w}");
        for page in [Page::P0, Page::P1, Page::P2] {
            let arcs: Vec<String> = g
                .arcs
                .iter()
                .filter(|a| a.page == page)
                .map(|a| format!("{}-{}", a.left.point, a.right.point))
                .collect();
            println!("  {page}: {}", arcs.join(" "));
        }
        println!("  curves {}, singular points {}", g.component_count(), g.singular_count());
        for s in &g.singular_points {
            let pic = local_picture(w[s.point]);
            println!("  {} at {}: branches {:?}", w[s.point], s.point, pic.branches);
        }
    }

    let printed = parse_word(W_G_PRINTED).expect("parses");
    println!("printed word: {}", decode(&printed).unwrap_err());
}
