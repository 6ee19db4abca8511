use std::collections::{HashMap, VecDeque};

use super::{Dfa, Nfa};
use crate::error::Result;
use crate::words::{Alphabet, Letter};

/// Disjoint union of states; offsets `b`'s states by `a.num_states()`.
fn disjoint(a: &Nfa, b: &Nfa) -> (Nfa, usize) {
    let off = a.num_states();
    let mut out = a.clone();
    out.clear_initial();
    out.clear_finals();
    for _ in 0..b.num_states() {
        out.add_state();
    }
    for (p, l, q) in b.edges() {
        out.add_label(p + off, l, q + off);
    }
    (out, off)
}

pub fn union(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.check_same_alphabet(b)?;
    let (mut out, off) = disjoint(a, b);
    for &i in a.initial() {
        out.set_initial(i);
    }
    for &f in a.finals() {
        out.set_final(f);
    }
    for &i in b.initial() {
        out.set_initial(i + off);
    }
    for &f in b.finals() {
        out.set_final(f + off);
    }
    Ok(out)
}

pub fn concat(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.check_same_alphabet(b)?;
    let (mut out, off) = disjoint(a, b);
    for &i in a.initial() {
        out.set_initial(i);
    }
    for &f in a.finals() {
        for &i in b.initial() {
            out.add_eps(f, i + off);
        }
    }
    for &f in b.finals() {
        out.set_final(f + off);
    }
    Ok(out)
}

pub fn star(a: &Nfa) -> Nfa {
    let mut out = a.clone();
    out.clear_initial();
    out.clear_finals();
    let s = out.add_state();
    out.set_initial(s);
    out.set_final(s);
    for &i in a.initial() {
        out.add_eps(s, i);
    }
    for &f in a.finals() {
        out.add_eps(f, s);
    }
    out
}

pub fn reverse(a: &Nfa) -> Nfa {
    let mut out = Nfa::with_states(a.alphabet().clone(), a.num_states());
    for (p, l, q) in a.edges() {
        out.add_label(q, l, p);
    }
    for &i in a.initial() {
        out.set_final(i);
    }
    for &f in a.finals() {
        out.set_initial(f);
    }
    out
}

/// Recognizes { w⁻¹ : w ∈ L(a) }.
pub fn letter_inverse(a: &Nfa) -> Nfa {
    reverse(a).map_letters(Letter::inverse)
}

/// Same language without ε-edges (states are kept, then trimmed).
pub fn remove_epsilon(a: &Nfa) -> Nfa {
    if !a.has_epsilon() {
        return a.clone();
    }
    let mut out = Nfa::with_states(a.alphabet().clone(), a.num_states());
    for p in 0..a.num_states() {
        let cl = a.eps_closure([p]);
        for &q in &cl {
            for &(l, r) in a.out_edges(q) {
                if l.is_some() {
                    out.add_label(p, l, r);
                }
            }
            if a.finals().contains(&q) {
                out.set_final(p);
            }
        }
    }
    for &i in a.initial() {
        out.set_initial(i);
    }
    trim(&out)
}

/// Product construction over reachable pairs.
pub fn intersect(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.check_same_alphabet(b)?;
    let a = remove_epsilon(a);
    let b = remove_epsilon(b);
    let mut out = Nfa::new(a.alphabet().clone());
    let mut index: HashMap<(usize, usize), usize> = HashMap::new();
    let mut queue = VecDeque::new();
    for &i in a.initial() {
        for &j in b.initial() {
            let id = out.add_state();
            index.insert((i, j), id);
            out.set_initial(id);
            queue.push_back((i, j));
        }
    }
    while let Some((p, q)) = queue.pop_front() {
        let id = index[&(p, q)];
        if a.finals().contains(&p) && b.finals().contains(&q) {
            out.set_final(id);
        }
        for &(l1, p2) in a.out_edges(p) {
            for &(l2, q2) in b.out_edges(q) {
                if l1 != l2 {
                    continue;
                }
                let tgt = match index.get(&(p2, q2)) {
                    Some(&t) => t,
                    None => {
                        let t = out.add_state();
                        index.insert((p2, q2), t);
                        queue.push_back((p2, q2));
                        t
                    }
                };
                out.add_label(id, l1, tgt);
            }
        }
    }
    Ok(trim(&out))
}

/// L(a) ∖ L(b), as a ∩ complement(determinize(b)).
pub fn difference(a: &Nfa, b: &Nfa) -> Result<Nfa> {
    a.check_same_alphabet(b)?;
    let comp = Dfa::from_nfa(b).complement().to_nfa();
    intersect(a, &comp)
}

/// Subset construction; output is deterministic (no ε-edges, one initial state).
pub fn determinize(a: &Nfa) -> Nfa {
    Dfa::from_nfa(a).trim().to_nfa()
}

/// Minimal trim deterministic automaton, canonically numbered.
pub fn minimize(a: &Nfa) -> Nfa {
    Dfa::from_nfa(a).minimize().to_nfa()
}

/// Determinize, minimize and trim: the "minimal automaton" of L(a).
pub fn minimal(a: &Nfa) -> Nfa {
    minimize(a)
}

/// Keeps only states lying on some initial-to-final path.
pub fn trim(a: &Nfa) -> Nfa {
    let fwd = a.reachable_from(a.initial().iter().copied());
    let rev = reverse(a);
    let bwd = rev.reachable_from(a.finals().iter().copied());
    let keep: Vec<bool> = (0..a.num_states()).map(|q| fwd[q] && bwd[q]).collect();
    let mut map = vec![usize::MAX; a.num_states()];
    let mut out = Nfa::new(a.alphabet().clone());
    for q in 0..a.num_states() {
        if keep[q] {
            map[q] = out.add_state();
        }
    }
    for (p, l, q) in a.edges() {
        if keep[p] && keep[q] {
            out.add_label(map[p], l, map[q]);
        }
    }
    for &i in a.initial() {
        if keep[i] {
            out.set_initial(map[i]);
        }
    }
    for &f in a.finals() {
        if keep[f] {
            out.set_final(map[f]);
        }
    }
    out
}

/// Same machine with initial states `from` and final states `to` (L_{IJ}).
pub fn sub_language(a: &Nfa, from: &[usize], to: &[usize]) -> Result<Nfa> {
    a.check_states(from)?;
    a.check_states(to)?;
    let mut out = a.clone();
    out.clear_initial();
    out.clear_finals();
    for &i in from {
        out.set_initial(i);
    }
    for &f in to {
        out.set_final(f);
    }
    Ok(out)
}

/// Language equality via minimal DFAs.
pub fn equivalent(a: &Nfa, b: &Nfa) -> Result<bool> {
    a.check_same_alphabet(b)?;
    Ok(Dfa::from_nfa(a).minimize() == Dfa::from_nfa(b).minimize())
}

/// Recognizes Cyc(L) = { vu : uv ∈ L }.
///
/// For each guessed split state q the machine first reads v from q to a
/// final state, jumps to an initial state, then reads u back to q.
pub fn cyc_regular(a: &Nfa) -> Nfa {
    let a = trim(a);
    let n = a.num_states();
    let mut out = Nfa::with_states(a.alphabet().clone(), 2 * n * n);
    let id = |guess: usize, phase: usize, cur: usize| (guess * 2 + phase) * n + cur;
    for g in 0..n {
        out.set_initial(id(g, 0, g));
        out.set_final(id(g, 1, g));
        for phase in 0..2 {
            for (p, l, q) in a.edges() {
                out.add_label(id(g, phase, p), l, id(g, phase, q));
            }
        }
        for &f in a.finals() {
            for &i in a.initial() {
                out.add_eps(id(g, 0, f), id(g, 1, i));
            }
        }
    }
    trim(&out)
}

/// Accepts exactly the freely reduced words over Ã.
pub fn reduced_acceptor(alphabet: &Alphabet) -> Nfa {
    // state 0: nothing read; state 1 + i: last letter has index i
    let k = alphabet.size();
    let mut n = Nfa::with_states(alphabet.clone(), k + 1);
    n.set_initial(0);
    for s in 0..=k {
        n.set_final(s);
        for y in alphabet.letters() {
            if s > 0 && Letter::from_index(s - 1).inverse() == y {
                continue;
            }
            n.add_edge(s, y, 1 + y.index());
        }
    }
    n
}

/// Accepts the reduced words whose first letter is not the inverse of the last.
pub fn cyclically_reduced_acceptor(alphabet: &Alphabet) -> Nfa {
    // state 0: empty; state 1 + f*k + l: first letter f, last letter l
    let k = alphabet.size();
    let mut n = Nfa::with_states(alphabet.clone(), 1 + k * k);
    let st = |f: Letter, l: Letter| 1 + f.index() * k + l.index();
    n.set_initial(0);
    n.set_final(0);
    for f in alphabet.letters() {
        n.add_edge(0, f, st(f, f));
        for l in alphabet.letters() {
            if f != l.inverse() {
                n.set_final(st(f, l));
            }
            for y in alphabet.letters() {
                if y != l.inverse() {
                    n.add_edge(st(f, l), y, st(f, y));
                }
            }
        }
    }
    trim(&n)
}

/// L ∩ xÃ*, by a two-state lookahead product.
pub fn starts_with(a: &Nfa, x: Letter) -> Nfa {
    let mut f = Nfa::with_states(a.alphabet().clone(), 2);
    f.set_initial(0);
    f.set_final(1);
    f.add_edge(0, x, 1);
    for l in a.alphabet().letters() {
        f.add_edge(1, l, 1);
    }
    intersect(a, &f).expect("same alphabet")
}

/// L ∖ xÃ*.
pub fn not_starts_with(a: &Nfa, x: Letter) -> Nfa {
    let mut f = Nfa::with_states(a.alphabet().clone(), 2);
    f.set_initial(0);
    f.set_final(0);
    f.set_final(1);
    for l in a.alphabet().letters() {
        if l != x {
            f.add_edge(0, l, 1);
        }
        f.add_edge(1, l, 1);
    }
    intersect(a, &f).expect("same alphabet")
}

/// L ∩ Ã*x, by a two-state lookback product.
pub fn ends_with(a: &Nfa, x: Letter) -> Nfa {
    let mut f = Nfa::with_states(a.alphabet().clone(), 2);
    f.set_initial(0);
    f.set_final(1);
    for l in a.alphabet().letters() {
        f.add_edge(0, l, 0);
        f.add_edge(1, l, 0);
    }
    f.add_edge(0, x, 1);
    f.add_edge(1, x, 1);
    intersect(a, &f).expect("same alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Word;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn lang(n: &Nfa, k: usize) -> Vec<String> {
        n.enumerate(k)
            .iter()
            .map(|w| n.alphabet().render(w))
            .collect()
    }

    fn single(s: &str) -> Nfa {
        Nfa::word(&ab(), &ab().parse_word(s).unwrap())
    }

    #[test]
    fn letter_inverse_single_word() {
        assert_eq!(lang(&letter_inverse(&single("ab")), 3), vec!["BA"]);
    }

    #[test]
    fn difference_removes_empty_word() {
        let astar = Nfa::word_star(&ab(), &ab().parse_word("a").unwrap());
        let d = difference(&astar, &Nfa::epsilon(&ab())).unwrap();
        assert_eq!(lang(&d, 5), vec!["a", "aa", "aaa", "aaaa", "aaaaa"]);
    }

    #[test]
    fn minimize_two_equivalent_branches() {
        let n = union(&single("a"), &single("a")).unwrap();
        let m = minimize(&determinize(&n));
        assert_eq!(m.num_states(), 2);
        // bounded enumeration on both machines agrees
        assert_eq!(lang(&m, 4), lang(&n, 4));
        assert_eq!(lang(&m, 4), vec!["a"]);
    }

    #[test]
    fn sub_language_cases() {
        let a = ab();
        let n = Nfa::word_star(&a, &a.parse_word("ab").unwrap());
        let m = minimize(&n);
        let init: Vec<usize> = m.initial().iter().copied().collect();
        let fin: Vec<usize> = m.finals().iter().copied().collect();
        assert!(equivalent(&sub_language(&m, &init, &fin).unwrap(), &m).unwrap());
        // 2-state cycle, I = {q0}, J = {q1}: a(ba)*
        let q1 = 1 - init[0];
        let s = sub_language(&m, &init, &[q1]).unwrap();
        assert_eq!(lang(&s, 5), vec!["a", "aba", "ababa"]);
        // I = J = {q} with no loop at q
        let w = single("ab");
        assert_eq!(lang(&sub_language(&w, &[1], &[1]).unwrap(), 4), vec!["1"]);
        assert!(sub_language(&w, &[7], &[1]).is_err());
    }

    #[test]
    fn cyc_examples() {
        assert_eq!(lang(&cyc_regular(&single("ab")), 3), vec!["ab", "ba"]);
        assert_eq!(lang(&cyc_regular(&Nfa::epsilon(&ab())), 3), vec!["1"]);
        assert_eq!(
            lang(&cyc_regular(&single("aab")), 3),
            vec!["aab", "aba", "baa"]
        );
    }

    #[test]
    fn reduced_acceptors() {
        let a = ab();
        let r = reduced_acceptor(&a);
        let c = cyclically_reduced_acceptor(&a);
        let w = |s: &str| a.parse_word(s).unwrap();
        assert!(r.accepts(&w("abA")));
        assert!(!c.accepts(&w("abA")));
        assert!(!r.accepts(&w("aA")));
        assert!(!c.accepts(&w("aA")));
        assert!(c.accepts(&w("1")) && c.accepts(&w("a")));
        // brute force over all 4^3 words of length 3
        let all = Nfa::universal(&a).enumerate(3);
        let len3: Vec<&Word> = all.iter().filter(|w| w.len() == 3).collect();
        let reduced = len3.iter().filter(|w| w.is_reduced()).count();
        assert_eq!(reduced, 36);
        assert_eq!(
            r.enumerate(3).iter().filter(|w| w.len() == 3).count(),
            reduced
        );
        let cyc = len3
            .iter()
            .filter(|w| w.is_reduced() && w[0] != w[2].inverse())
            .count();
        assert_eq!(c.enumerate(3).iter().filter(|w| w.len() == 3).count(), cyc);
    }

    #[test]
    fn alphabet_mismatch() {
        let other = Nfa::epsilon(&Alphabet::new("abc").unwrap());
        assert!(union(&single("a"), &other).is_err());
        assert!(intersect(&single("a"), &other).is_err());
    }

    #[test]
    fn lookahead_filters() {
        let a = ab();
        let u = reduced_acceptor(&a);
        let x = a.letter('a').unwrap();
        assert!(starts_with(&u, x).enumerate(2).iter().all(|w| w[0] == x));
        assert!(ends_with(&u, x)
            .enumerate(2)
            .iter()
            .all(|w| *w.last().unwrap() == x));
        let ns = not_starts_with(&u, x);
        assert!(ns.accepts_empty());
        assert!(ns.enumerate(2).iter().all(|w| w.first() != Some(&x)));
    }
}
