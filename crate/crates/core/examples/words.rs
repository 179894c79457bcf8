//! Parsing, printing and rotating words.
//!
//! ```bash
//! cargo run --example words
//! ```

use threepage::word::{parse_word, Letter};

fn main() {
    let w = parse_word("a1  b1 x1\td1 c1").expect("valid word");
    println!("word      {w}");
    println!("length    {}", w.len());
    println!("singular  {}", w.singular_count());
    println!("rotated   {}", w.rotate(1));

    let alphabet: Vec<String> = Letter::all().map(|l| l.to_string()).collect();
    println!("alphabet  {}", alphabet.join(" "));

    match parse_word("a1 e4") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected  {e}"),
    }
}
