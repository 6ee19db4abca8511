//! Brute-force reference implementations used by the property and acceptance
//! tests. They enumerate instead of constructing, so they share no code
//! with the grammar and transducer constructions they check.

use std::collections::{BTreeSet, HashMap};

use rand::Rng;

use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::free_subsets::benois_saturate;
use crate::vfree::{NormalForm, VfStructure};
use crate::words::{free_reduce, invert, shortlex, Alphabet, Word};

const BALL_LIMIT: usize = 5_000_000;

/// All reduced words of length ≤ n, in shortlex order.
pub fn free_ball(alphabet: &Alphabet, n: usize) -> Result<Vec<Word>> {
    let k = alphabet.size();
    let mut total: usize = 1;
    let mut layer: usize = 1;
    for i in 1..=n {
        layer = layer.saturating_mul(if i == 1 { k } else { k - 1 });
        total = total.saturating_add(layer);
    }
    if total > BALL_LIMIT {
        return Err(Error::Budget {
            budget: BALL_LIMIT,
            what: format!("free ball of radius {n}"),
        });
    }
    let mut out = vec![Word::empty()];
    let mut start = 0;
    for _ in 0..n {
        let end = out.len();
        for i in start..end {
            for x in alphabet.letters() {
                if out[i].last() == Some(&x.inverse()) {
                    continue;
                }
                let w = out[i].concat(&[x]);
                out.push(w);
            }
        }
        start = end;
    }
    Ok(out)
}

/// { free_reduce(u⁻¹ v u) : u ∈ L̄, |u| ≤ len_u, v ∈ K̄, |v| ≤ len_v }.
pub fn alpha_oracle(k: &Nfa, l: &Nfa, len_u: usize, len_v: usize) -> BTreeSet<Word> {
    let us = benois_saturate(l).enumerate(len_u);
    let vs = benois_saturate(k).enumerate(len_v);
    let mut out = BTreeSet::new();
    for u in &us {
        let ui = invert(u);
        for v in &vs {
            let w: Word = ui.iter().chain(v.iter()).chain(u.iter()).copied().collect();
            out.insert(free_reduce(&w).into_word());
        }
    }
    out
}

/// { w reduced : |w| ≤ max_len, free_reduce(u w u⁻¹) ∈ K̄ for some u ∈ us },
/// i.e. the short conjugates u⁻¹ v u of K̄ by the given words.
pub fn short_conjugates(k: &Nfa, us: &[Word], max_len: usize) -> Result<BTreeSet<Word>> {
    let kbar = benois_saturate(k);
    let mut out = BTreeSet::new();
    for w in free_ball(k.alphabet(), max_len)? {
        let hit = us.iter().any(|u| {
            let x: Word = u
                .iter()
                .chain(w.iter())
                .chain(invert(u).iter())
                .copied()
                .collect();
            kbar.accepts(free_reduce(&x).as_word())
        });
        if hit {
            out.insert(w);
        }
    }
    Ok(out)
}

/// x ∈ K1 and y ∈ K2 with x = u⁻¹ y u, u ∈ K0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub u: Word,
    pub x: Word,
    pub y: Word,
}

/// First witness in shortlex order of (u, y), with |u|, |y| ≤ bound.
pub fn dgcp_witness_search(k0: &Nfa, k1: &Nfa, k2: &Nfa, bound: usize) -> Option<Witness> {
    let us = benois_saturate(k0).enumerate(bound);
    let ys = benois_saturate(k2).enumerate(bound);
    let target = benois_saturate(k1);
    for u in &us {
        let ui = invert(u);
        for y in &ys {
            let w: Word = ui.iter().chain(y.iter()).chain(u.iter()).copied().collect();
            let x = free_reduce(&w).into_word();
            if target.accepts(&x) {
                return Some(Witness {
                    u: u.clone(),
                    x,
                    y: y.clone(),
                });
            }
        }
    }
    None
}

/// Random automaton with `states` states (state 0 initial), one to three
/// outgoing edges per state and occasional ε-edges.
pub fn random_nfa(rng: &mut impl Rng, alphabet: &Alphabet, states: usize) -> Nfa {
    let states = states.max(1);
    let mut n = Nfa::with_states(alphabet.clone(), states);
    n.set_initial(0);
    for p in 0..states {
        if rng.gen_bool(0.4) {
            n.set_final(p);
        }
        for _ in 0..rng.gen_range(1..=3) {
            let q = rng.gen_range(0..states);
            if rng.gen_bool(0.1) {
                n.add_eps(p, q);
            } else {
                let x = alphabet
                    .letters()
                    .nth(rng.gen_range(0..alphabet.size()))
                    .unwrap();
                n.add_edge(p, x, q);
            }
        }
    }
    if n.finals().is_empty() {
        n.set_final(rng.gen_range(0..states));
    }
    n
}

/// A group element of a ball together with all of its geodesic words.
#[derive(Clone, Debug)]
pub struct BallElement {
    pub element: NormalForm,
    pub length: usize,
    pub geodesics: Vec<Word>,
}

/// Every element of geodesic length ≤ n over B̃, by plain breadth-first
/// search on normal forms, with the exact set of geodesic words of each.
pub fn vf_ball(s: &VfStructure, n: usize, budget: usize) -> Result<Vec<BallElement>> {
    let b = s.generators();
    let mut index: HashMap<NormalForm, usize> = HashMap::new();
    let mut ball = vec![BallElement {
        element: s.identity(),
        length: 0,
        geodesics: vec![Word::empty()],
    }];
    index.insert(s.identity(), 0);
    let mut start = 0;
    for len in 1..=n {
        let end = ball.len();
        for i in start..end {
            for x in b.letters() {
                let g = s.mul(&ball[i].element, &s.letter_element(x));
                let extended: Vec<Word> =
                    ball[i].geodesics.iter().map(|w| w.concat(&[x])).collect();
                match index.get(&g) {
                    Some(&j) if ball[j].length == len => ball[j].geodesics.extend(extended),
                    Some(_) => {}
                    None => {
                        if ball.len() >= budget {
                            return Err(Error::Budget {
                                budget,
                                what: format!("ball of radius {n}"),
                            });
                        }
                        index.insert(g.clone(), ball.len());
                        ball.push(BallElement {
                            element: g,
                            length: len,
                            geodesics: extended,
                        });
                    }
                }
            }
        }
        start = end;
    }
    for e in &mut ball {
        e.geodesics.sort_by(|a, b| shortlex(a, b));
        e.geodesics.dedup();
    }
    Ok(ball)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::star;
    use rand::SeedableRng;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn word(s: &str) -> Nfa {
        Nfa::word(&ab(), &ab().parse_word(s).unwrap())
    }

    #[test]
    fn ball_counts() {
        assert_eq!(free_ball(&ab(), 0).unwrap().len(), 1);
        assert_eq!(free_ball(&ab(), 1).unwrap().len(), 5);
        assert_eq!(free_ball(&ab(), 3).unwrap().len(), 53);
        assert!(free_ball(&ab(), 40).is_err());
    }

    #[test]
    fn alpha_oracle_examples() {
        let a = ab();
        let got = alpha_oracle(&word("b"), &word("a"), 1, 1);
        assert_eq!(
            got.into_iter().map(|w| a.render(&w)).collect::<Vec<_>>(),
            vec!["Aba"]
        );
        let got = alpha_oracle(&word("b"), &star(&word("b")), 3, 3);
        assert_eq!(
            got.into_iter().map(|w| a.render(&w)).collect::<Vec<_>>(),
            vec!["b"]
        );
        assert!(alpha_oracle(&Nfa::empty_language(&a), &word("a"), 3, 3).is_empty());
    }

    #[test]
    fn witness_examples() {
        let a = ab();
        let univ = Nfa::universal(&a);
        let w = dgcp_witness_search(&univ, &word("b"), &word("abA"), 3).unwrap();
        assert_eq!(a.render(&w.u), "a");
        assert_eq!(a.render(&w.x), "b");
        assert!(dgcp_witness_search(&Nfa::epsilon(&a), &word("b"), &word("a"), 3).is_none());
        let w = dgcp_witness_search(&Nfa::epsilon(&a), &word("b"), &word("b"), 1).unwrap();
        assert_eq!(
            (a.render(&w.u).as_str(), a.render(&w.x).as_str()),
            ("1", "b")
        );
    }

    #[test]
    fn random_is_reproducible() {
        let mut r1 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let mut r2 = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        assert_eq!(
            random_nfa(&mut r1, &ab(), 3).to_text(),
            random_nfa(&mut r2, &ab(), 3).to_text()
        );
    }
}
