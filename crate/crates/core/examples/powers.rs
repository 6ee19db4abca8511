use geoconj::conjugates::alpha_powers;
use geoconj::{Alphabet, Nfa};

fn main() -> geoconj::Result<()> {
    let a = Alphabet::new("ab")?;
    let k = Nfa::word(&a, &a.parse_word("b")?);
    let u = a.parse_word("ab")?;
    let g = alpha_powers(&k, &u)?;
    println!("conjugates of b by powers of ab, up to length 9:");
    for w in g.enumerate(9) {
        println!("  {}", a.render(&w));
    }
    Ok(())
}
