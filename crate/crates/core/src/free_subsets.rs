//! Rational subsets of a free group F(A), represented by automata over Ã.

use std::collections::BTreeSet;

use crate::automata::{self, intersect, letter_inverse, minimal, reduced_acceptor, trim, Nfa};
use crate::error::Result;
use crate::words::{free_reduce, Letter, Term};

/// Automaton for the reduced words representing elements of L(π), i.e. L̄.
///
/// ε-edges p → q are added while there are edges p -x-> r, an ε-path r ⇝ s
/// and s -x⁻¹-> q; the saturated machine is then intersected with the
/// reduced-word acceptor and trimmed.
pub fn benois_saturate(l: &Nfa) -> Nfa {
    let mut n = l.clone();
    let size = n.num_states();
    loop {
        let closure: Vec<Vec<bool>> = (0..size)
            .map(|p| {
                let mut row = vec![false; size];
                for s in n.eps_closure([p]) {
                    row[s] = true;
                }
                row
            })
            .collect();
        let mut added = Vec::new();
        for (p, lp, r) in n.edges() {
            let Some(Term::Letter(x)) = lp else { continue };
            for s in (0..size).filter(|&s| closure[r][s]) {
                for &(ls, q) in n.out_edges(s) {
                    if ls == Some(Term::Letter(x.inverse())) && !closure[p][q] {
                        added.push((p, q));
                    }
                }
            }
        }
        if added.is_empty() {
            break;
        }
        for (p, q) in added {
            n.add_eps(p, q);
        }
    }
    let red = reduced_acceptor(n.alphabet());
    trim(&intersect(&n, &red).expect("same alphabet"))
}

/// Minimal (deterministic, trim) automaton of L̄.
pub fn reduced_minimal(l: &Nfa) -> Nfa {
    minimal(&benois_saturate(l))
}

/// Does the word represent an element of L(π)?
pub fn rational_membership(g: &[Letter], l: &Nfa) -> bool {
    benois_saturate(l).accepts(&free_reduce(g))
}

fn first_letters(n: &Nfa) -> BTreeSet<Letter> {
    let n = trim(&automata::remove_epsilon(n));
    n.initial()
        .iter()
        .flat_map(|&i| {
            n.out_edges(i)
                .iter()
                .filter_map(|e| e.0.and_then(Term::letter))
        })
        .collect()
}

/// A pair (x, x⁻¹) with some word of K̄ ending in x and some word of L̄
/// starting with x⁻¹, if one exists.
pub fn reduced_product_obstruction(k: &Nfa, l: &Nfa) -> Option<(Letter, Letter)> {
    let last = first_letters(&letter_inverse(&benois_saturate(k)));
    let first = first_letters(&benois_saturate(l));
    // last letters of K̄ are the inverses of first letters of K̄⁻¹
    last.iter()
        .map(|x| x.inverse())
        .find(|x| first.contains(&x.inverse()))
        .map(|x| (x, x.inverse()))
}

/// True iff the product K L is reduced: K̄ L̄ contains only reduced words.
pub fn is_reduced_product(k: &Nfa, l: &Nfa) -> bool {
    reduced_product_obstruction(k, l).is_none()
}

/// Decides K π ∩ L π = ∅.
pub fn rational_intersection_empty(k: &Nfa, l: &Nfa) -> Result<bool> {
    Ok(intersect(&benois_saturate(k), &benois_saturate(l))?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{concat, equivalent, star, union};
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn word(s: &str) -> Nfa {
        Nfa::word(&ab(), &ab().parse_word(s).unwrap())
    }

    fn lang(n: &Nfa, k: usize) -> Vec<String> {
        n.enumerate(k).iter().map(|w| ab().render(w)).collect()
    }

    #[test]
    fn saturate_single_word() {
        assert_eq!(lang(&benois_saturate(&word("abBa")), 6), vec!["aa"]);
    }

    #[test]
    fn saturate_cancelling_star() {
        assert_eq!(lang(&benois_saturate(&star(&word("aA"))), 6), vec!["1"]);
    }

    #[test]
    fn saturate_mixed_powers() {
        // a*(a⁻¹)*: reduce every word up to length 8 and compare
        let l = concat(&star(&word("a")), &star(&word("A"))).unwrap();
        let mut expected: Vec<String> = l
            .enumerate(8)
            .iter()
            .map(|w| free_reduce(w))
            .filter(|r| r.len() <= 4)
            .map(|r| ab().render(&r))
            .collect();
        expected.sort_by(|a, b| crate::words::shortlex(a.as_bytes(), b.as_bytes()));
        expected.dedup();
        let got = lang(&benois_saturate(&l), 4);
        let mut got_sorted = got.clone();
        got_sorted.sort_by(|a, b| crate::words::shortlex(a.as_bytes(), b.as_bytes()));
        assert_eq!(got_sorted, expected);
        let target = union(&star(&word("a")), &star(&word("A"))).unwrap();
        assert!(equivalent(&benois_saturate(&l), &target).unwrap());
    }

    #[test]
    fn membership() {
        let a = ab();
        assert!(rational_membership(
            &a.parse_word("aA").unwrap(),
            &Nfa::epsilon(&a)
        ));
        assert!(!rational_membership(
            &a.parse_word("a").unwrap(),
            &star(&word("ab"))
        ));
        assert!(rational_membership(
            &a.parse_word("abAa").unwrap(),
            &word("ab")
        ));
    }

    #[test]
    fn reduced_products() {
        assert!(is_reduced_product(&word("ab"), &word("a")));
        assert_eq!(
            reduced_product_obstruction(&word("ab"), &word("B")),
            Some((ab().letter('b').unwrap(), ab().letter('B').unwrap()))
        );
        let k = union(&word("ab"), &word("a")).unwrap();
        assert!(!is_reduced_product(&k, &word("Ab")));
        // ε never obstructs
        assert!(is_reduced_product(&Nfa::epsilon(&ab()), &word("a")));
    }

    #[test]
    fn intersections() {
        assert!(!rational_intersection_empty(&word("a"), &word("aAa")).unwrap());
        let astar = star(&word("a"));
        let bstar = star(&word("b"));
        assert!(!rational_intersection_empty(&astar, &bstar).unwrap());
        let aplus = concat(&word("a"), &astar).unwrap();
        let bplus = concat(&word("b"), &bstar).unwrap();
        assert!(rational_intersection_empty(&aplus, &bplus).unwrap());
    }
}
