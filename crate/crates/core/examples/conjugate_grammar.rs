use geoconj::automata::star;
use geoconj::conjugates::alpha;
use geoconj::{Alphabet, Nfa};

fn main() -> geoconj::Result<()> {
    let a = Alphabet::new("ab")?;
    let word = |s: &str| a.parse_word(s).map(|w| Nfa::word(&a, &w));
    let k = word("b")?;
    let l = star(&word("a")?);
    let result = alpha(&k, &l)?;
    println!("{} branches", result.branches.len());
    println!("conjugates of b by a* up to length 7:");
    for w in result.grammar.enumerate(7) {
        println!("  {}", a.render(&w));
    }
    let cnf = result.grammar.to_cnf();
    for probe in ["AAbaa", "abA"] {
        println!("{probe} generated: {}", cnf.accepts(&a.parse_word(probe)?));
    }
    Ok(())
}
