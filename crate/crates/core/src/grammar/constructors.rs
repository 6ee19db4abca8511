use super::{cfg_intersect_regular, cfg_substitute, Cfg, Substitution, Sym};
use crate::automata::{concat, letter_inverse, Nfa};
use crate::error::Result;
use crate::words::{Term, Word};

/// ⋃_{u ∈ L} u⁻¹ K u as a language over Ã (no free reduction).
pub fn conjugator_language(k: &Nfa, l: &Nfa) -> Result<Cfg> {
    let a = l.alphabet();
    k.check_same_alphabet(l)?;
    // S -> x S x⁻¹ | $
    let mut g = Cfg::new(a);
    for x in a.letters() {
        g.add_rule(0, vec![Sym::letter(x), Sym::N(0), Sym::letter(x.inverse())]);
    }
    g.add_rule(0, vec![Sym::T(Term::Marker)]);
    let mut marker = Nfa::with_states(a.clone(), 2);
    marker.add_marker(0, 1);
    marker.set_initial(0);
    marker.set_final(1);
    let frame = concat(&concat(&letter_inverse(l), &marker)?, l)?;
    let marked = cfg_intersect_regular(&g, &frame)?;
    cfg_substitute(&marked, Substitution::Regular(k))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum PumpMode {
    /// ⋃ uⁿ L vⁿ
    Equal,
    /// ⋃_{m ≤ n} u^m L vⁿ
    LeftLe,
    /// ⋃_{m ≤ n} uⁿ L v^m
    RightLe,
}

pub fn pumped_language(u: &Word, v: &Word, l: &Nfa, mode: PumpMode) -> Result<Cfg> {
    let a = l.alphabet();
    a.validate(u)?;
    a.validate(v)?;
    let mut g = Cfg::new(a);
    let core = g.add_nonterminal("T");
    let base = g.import(&Cfg::from_nfa(l));
    let word = |w: &Word| w.iter().map(|&x| Sym::letter(x)).collect::<Vec<_>>();
    // T -> u T v | L
    let mut body = word(u);
    body.push(Sym::N(core));
    body.extend(word(v));
    g.add_rule(core, body);
    g.add_rule(core, vec![Sym::N(base)]);
    match mode {
        PumpMode::Equal => g.add_rule(0, vec![Sym::N(core)]),
        PumpMode::LeftLe => {
            // S -> T | S v
            g.add_rule(0, vec![Sym::N(core)]);
            let mut body = vec![Sym::N(0)];
            body.extend(word(v));
            g.add_rule(0, body);
        }
        PumpMode::RightLe => {
            // S -> T | u S
            g.add_rule(0, vec![Sym::N(core)]);
            let mut body = word(u);
            body.push(Sym::N(0));
            g.add_rule(0, body);
        }
    }
    Ok(g.trim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::star;
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn word(s: &str) -> Nfa {
        Nfa::word(&ab(), &ab().parse_word(s).unwrap())
    }

    fn render(g: &Cfg, n: usize) -> Vec<String> {
        g.enumerate(n).iter().map(|w| ab().render(w)).collect()
    }

    #[test]
    fn conjugator_single() {
        assert_eq!(
            render(&conjugator_language(&word("b"), &word("a")).unwrap(), 6),
            vec!["Aba"]
        );
    }

    #[test]
    fn conjugator_star() {
        let g = conjugator_language(&word("b"), &star(&word("a"))).unwrap();
        assert_eq!(render(&g, 7), vec!["b", "Aba", "AAbaa", "AAAbaaa"]);
    }

    #[test]
    fn conjugator_empty_l() {
        let g = conjugator_language(&word("b"), &Nfa::empty_language(&ab())).unwrap();
        assert!(g.is_empty());
    }

    #[test]
    fn pumping() {
        let w = |s: &str| ab().parse_word(s).unwrap();
        let eq = pumped_language(&w("a"), &w("A"), &word("b"), PumpMode::Equal).unwrap();
        assert!(eq.member(&w("aabAA")));
        assert!(!eq.member(&w("aabA")));
        let le = pumped_language(&w("a"), &w("b"), &Nfa::epsilon(&ab()), PumpMode::LeftLe).unwrap();
        assert!(le.member(&w("bb")));
        assert!(!le.member(&w("aab")));
        assert_eq!(render(&le, 3), vec!["1", "b", "ab", "bb", "abb", "bbb"]);
        let ri =
            pumped_language(&w("a"), &w("b"), &Nfa::epsilon(&ab()), PumpMode::RightLe).unwrap();
        assert_eq!(render(&ri, 3), vec!["1", "a", "aa", "ab", "aaa", "aab"]);
        let l = star(&word("ab"));
        for mode in [PumpMode::Equal, PumpMode::LeftLe, PumpMode::RightLe] {
            let g = pumped_language(&Word::empty(), &Word::empty(), &l, mode).unwrap();
            assert_eq!(g.enumerate(6), l.enumerate(6));
        }
    }
}
