use geoconj::automata::star;
use geoconj::grammar::{cfg_intersect_regular, cfg_reverse, pumped_language, PumpMode};
use geoconj::{Alphabet, Cfg, Nfa};

fn main() -> geoconj::Result<()> {
    let g = Cfg::parse("alphabet: a,b\nS -> a S b | 1\n")?;
    let a = g.alphabet().clone();
    let show = |g: &Cfg, n| {
        g.enumerate(n)
            .iter()
            .map(|w| a.render(w))
            .collect::<Vec<_>>()
            .join(" ")
    };
    println!("aⁿbⁿ: {}", show(&g, 6));
    println!("reversed: {}", show(&cfg_reverse(&g), 6));
    let a_star_b =
        Nfa::parse("alphabet: a,b\nstates: 2\ninitial: 0\nfinal: 1\nedge: 0 a 0\nedge: 0 b 1\n")?;
    println!("∩ a*b: {}", show(&cfg_intersect_regular(&g, &a_star_b)?, 6));
    let cnf = g.to_cnf();
    println!(
        "CNF has {} rules; aabb accepted: {}",
        cnf.num_rules(),
        cnf.accepts(&a.parse_word("aabb")?)
    );
    let u = Alphabet::new("ab")?.parse_word("a")?;
    let v = Alphabet::new("ab")?.parse_word("A")?;
    let p = pumped_language(
        &u,
        &v,
        &star(&Nfa::word(&a, &a.parse_word("b")?)),
        PumpMode::Equal,
    )?;
    println!("aⁿ b* a⁻ⁿ: {}", show(&p, 4));
    print!("\n{}", g.to_text());
    Ok(())
}
