use geoconj::words::{cyclic_reduce, free_reduce};
use geoconj::Alphabet;

fn main() -> geoconj::Result<()> {
    let a = Alphabet::new("ab")?;
    for text in ["abBA", "abbA", "aabAA", "1"] {
        let w = a.parse_word(text)?;
        let (conjugator, core) = cyclic_reduce(&w);
        println!(
            "{text:>6}: reduced {}, equal to u⁻¹ {} u with u = {}",
            a.render(&free_reduce(&w)),
            a.render(&core),
            a.render(&conjugator)
        );
    }
    Ok(())
}
