use geoconj::automata::{concat, star};
use geoconj::free_subsets::{benois_saturate, rational_membership};
use geoconj::{Alphabet, Nfa};

fn main() -> geoconj::Result<()> {
    let a = Alphabet::new("ab")?;
    let word = |s: &str| a.parse_word(s).map(|w| Nfa::word(&a, &w));
    let l = concat(&word("ab")?, &star(&word("Ba")?))?;
    let reduced = benois_saturate(&l);
    println!("reduced words of ab(Ba)* up to length 6:");
    for w in reduced.enumerate(6) {
        println!("  {}", a.render(&w));
    }
    let g = a.parse_word("aBBbaBbBa")?;
    println!(
        "{} in the subset: {}",
        a.render(&g),
        rational_membership(&g, &l)
    );
    println!("\n{}", reduced.to_text());
    Ok(())
}
