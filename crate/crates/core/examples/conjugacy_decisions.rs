use geoconj::automata::star;
use geoconj::conjugates::{dgcp, gcp};
use geoconj::oracles::dgcp_witness_search;
use geoconj::{Alphabet, Nfa};

fn main() -> geoconj::Result<()> {
    let a = Alphabet::new("ab")?;
    let word = |s: &str| a.parse_word(s).map(|w| Nfa::word(&a, &w));
    let univ = Nfa::universal(&a);
    let cases = [
        ("conjugators F", univ.clone(), word("b")?, word("abA")?),
        (
            "conjugators b*",
            star(&word("b")?),
            word("ab")?,
            word("ba")?,
        ),
        (
            "conjugators (a⁻¹)*",
            star(&word("A")?),
            word("Aba")?,
            word("b")?,
        ),
    ];
    for (name, k0, k1, k2) in &cases {
        let yes = dgcp(k0, k1, k2)?;
        print!("{name}: {}", if yes { "YES" } else { "NO" });
        if let Some(w) = dgcp_witness_search(k0, k1, k2, 4) {
            print!(
                " (u = {}, x = {}, y = {})",
                a.render(&w.u),
                a.render(&w.x),
                a.render(&w.y)
            );
        }
        println!();
    }
    let x = a.parse_word("aabA")?;
    println!(
        "aabA conjugate into (ab)* by F: {}",
        gcp(&x, &star(&word("ab")?), &univ)?
    );
    Ok(())
}
