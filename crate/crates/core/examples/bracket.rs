//! Kauffman bracket, writhe and linking numbers of classical words.
//!
//! ```bash
//! cargo run --example bracket
//! ```

use threepage::fixtures::{unlink, HOPF, TREFOIL};
use threepage::pages::to_link_diagram;
use threepage::surface::{kauffman_bracket, linking_matrix, normalized_bracket};
use threepage::word::{parse_word, Word};

fn main() {
    let words: [(&str, Word); 3] = [
        ("trefoil", parse_word(TREFOIL).unwrap()),
        ("hopf", parse_word(HOPF).unwrap()),
        ("2-unlink", unlink(2)),
    ];
    for (name, w) in words {
        let d = match to_link_diagram(&w) {
            Ok(d) => d,
            Err(e) => {
                println!("{name}: {e}");
                continue;
            }
        };
        println!("{name}: {w}");
        println!("  crossings {}, writhe {}", d.crossing_count(), d.writhe());
        println!("  <D>       {}", kauffman_bracket(&d).unwrap());
        println!("  normalized {}", normalized_bracket(&d).unwrap());
        println!("  linking   {:?}", linking_matrix(&d));
    }
}
