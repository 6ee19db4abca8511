//! Grammars for the conjugate set α(K, L) = { u⁻¹ k u : k ∈ K, u ∈ L } of
//! rational subsets of a free group, and the doubly generalized conjugacy
//! problem with rational constraints.
//!
//! Every grammar produced here generates reduced words only, namely the
//! reduced representatives of α(K, L).

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::automata::{
    self, concat, cyclically_reduced_acceptor, difference, ends_with, intersect, letter_inverse,
    minimal, not_starts_with, reduced_acceptor, starts_with, sub_language, union, Nfa,
};
use crate::error::{Error, Result};
use crate::free_subsets::{benois_saturate, reduced_product_obstruction};
use crate::grammar::{cfg_intersect_regular, cfg_inverse, cfg_union_all, conjugator_language, Cfg};
use crate::words::{Alphabet, Letter, Word};

/// Where a top-level branch of an α grammar comes from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    /// {1}, present when 1 ∈ K and L ≠ ∅.
    Identity,
    /// Branch built with the right-reduced construction: conjugates by words of
    /// L_{qT} not starting with a⁻¹ of K-factors ending in a, for the listed (p', q').
    Right {
        a: Letter,
        q: usize,
        pairs: Vec<(usize, usize)>,
    },
    /// Same with the left-reduced construction: K-factors starting with a,
    /// conjugators not starting with a.
    Left {
        a: Letter,
        q: usize,
        pairs: Vec<(usize, usize)>,
    },
}

#[derive(Clone, Debug)]
pub struct Branch {
    pub origin: Origin,
    pub grammar: Cfg,
}

#[derive(Clone, Debug)]
pub struct AlphaResult {
    pub grammar: Cfg,
    pub branches: Vec<Branch>,
}

/// α(K, L) when both L⁻¹K and KL are reduced.
pub fn alpha_red(k: &Nfa, l: &Nfa) -> Result<Cfg> {
    k.check_same_alphabet(l)?;
    let (k, l) = (prepare(k), prepare(l));
    check_reduced(&letter_inverse(&l), &k, "L⁻¹K")?;
    check_reduced(&k, &l, "KL")?;
    Ok(red_core(&k, &l))
}

/// α(K, L) when KL is reduced.
pub fn alpha_rred(k: &Nfa, l: &Nfa) -> Result<Cfg> {
    k.check_same_alphabet(l)?;
    let (k, l) = (prepare(k), prepare(l));
    check_reduced(&k, &l, "KL")?;
    Ok(Builder::default().rred(&k, &l))
}

/// α(K, L) when L⁻¹K is reduced, as the inverse of α(K⁻¹, L).
pub fn alpha_lred(k: &Nfa, l: &Nfa) -> Result<Cfg> {
    k.check_same_alphabet(l)?;
    let (k, l) = (prepare(k), prepare(l));
    check_reduced(&letter_inverse(&l), &k, "L⁻¹K")?;
    Ok(Builder::default().lred(&k, &l))
}

/// α(K, L) for arbitrary rational K and L.
pub fn alpha(k: &Nfa, l: &Nfa) -> Result<AlphaResult> {
    k.check_same_alphabet(l)?;
    Ok(Builder::default().alpha(&prepare(k), &prepare(l)))
}

/// ⋃ₙ u⁻ⁿ K uⁿ.
pub fn alpha_powers(k: &Nfa, u: &Word) -> Result<Cfg> {
    k.alphabet().validate(u)?;
    Ok(alpha(k, &Nfa::word_star(k.alphabet(), u))?.grammar)
}

/// Is some element of K1 conjugate to an element of K2 by a conjugator in K0?
pub fn dgcp(k0: &Nfa, k1: &Nfa, k2: &Nfa) -> Result<bool> {
    k0.check_same_alphabet(k1)?;
    k0.check_same_alphabet(k2)?;
    let a = alpha(k2, k0)?;
    Ok(!cfg_intersect_regular(&a.grammar, &benois_saturate(k1))?.is_empty())
}

/// Is there z ∈ L0 with z⁻¹ x z ∈ K?
pub fn gcp(x: &Word, k: &Nfa, l0: &Nfa) -> Result<bool> {
    k.alphabet().validate(x)?;
    dgcp(l0, k, &Nfa::word(k.alphabet(), x))
}

/// Minimal automaton of the reduced representatives.
fn prepare(n: &Nfa) -> Nfa {
    let m = minimal(&benois_saturate(n));
    debug_assert!(automata::paths_are_reduced(&m));
    m
}

fn check_reduced(left: &Nfa, right: &Nfa, what: &str) -> Result<()> {
    match reduced_product_obstruction(left, right) {
        None => Ok(()),
        Some((x, y)) => {
            let a = left.alphabet();
            Err(Error::Precondition(format!(
                "product {what} is not reduced: a word ending in {} meets a word starting with {}",
                a.letter_char(x),
                a.letter_char(y)
            )))
        }
    }
}

fn without_empty_word(n: &Nfa) -> Nfa {
    minimal(&difference(n, &Nfa::epsilon(n.alphabet())).expect("same alphabet"))
}

fn identity(alphabet: &Alphabet) -> Cfg {
    Cfg::epsilon(alphabet)
}

/// Construction on reduced operands: conjugator_language, with 1 ∈ K
/// handled separately since u⁻¹u is not reduced.
fn red_core(k: &Nfa, l: &Nfa) -> Cfg {
    let a = k.alphabet();
    if k.is_empty() || l.is_empty() {
        return Cfg::empty(a);
    }
    let core = conjugator_language(&without_empty_word(k), l).expect("same alphabet");
    if k.accepts_empty() {
        cfg_union_all(a, [&core, &identity(a)]).expect("same alphabet")
    } else {
        core
    }
}

/// Transition table of a deterministic automaton.
fn delta(n: &Nfa) -> Vec<HashMap<Letter, usize>> {
    (0..n.num_states())
        .map(|p| {
            n.out_edges(p)
                .iter()
                .filter_map(|&(l, q)| l.and_then(|t| t.letter()).map(|x| (x, q)))
                .collect()
        })
        .collect()
}

fn key(n: &Nfa) -> String {
    minimal(n).to_text()
}

#[derive(Default)]
struct Builder {
    rred_memo: HashMap<(String, String), Cfg>,
}

impl Builder {
    /// α(K, L) with KL reduced; operands are reduced languages.
    fn rred(&mut self, k: &Nfa, l: &Nfa) -> Cfg {
        let alphabet = k.alphabet().clone();
        if k.is_empty() || l.is_empty() {
            return Cfg::empty(&alphabet);
        }
        let memo_key = (key(k), key(l));
        if let Some(g) = self.rred_memo.get(&memo_key) {
            return g.clone();
        }
        let l = minimal(l);
        let cyc = cyclically_reduced_acceptor(&alphabet);
        let outside = minimal(&difference(k, &cyc).expect("same alphabet"));
        let inside = without_empty_word(&intersect(k, &cyc).expect("same alphabet"));
        let mut parts = vec![red_core(&outside, &l)];
        if k.accepts_empty() {
            parts.push(identity(&alphabet));
        }
        if !inside.is_empty() {
            parts.push(rred_cyclic(&inside, &l));
        }
        let g = cfg_union_all(&alphabet, &parts).expect("same alphabet");
        self.rred_memo.insert(memo_key, g.clone());
        g
    }

    /// α(K, L) with L⁻¹K reduced.
    fn lred(&mut self, k: &Nfa, l: &Nfa) -> Cfg {
        cfg_inverse(&self.rred(&letter_inverse(k), l))
    }

    fn alpha(&mut self, k: &Nfa, l: &Nfa) -> AlphaResult {
        let alphabet = k.alphabet().clone();
        let mut branches = Vec::new();
        if !k.is_empty() && !l.is_empty() {
            if k.accepts_empty() {
                branches.push(Branch {
                    origin: Origin::Identity,
                    grammar: identity(&alphabet),
                });
            }
            let k1 = without_empty_word(k);
            if !k1.is_empty() {
                self.alpha_branches(&k1, l, &mut branches);
            }
        }
        let grammar =
            cfg_union_all(&alphabet, branches.iter().map(|b| &b.grammar)).expect("same alphabet");
        AlphaResult { grammar, branches }
    }

    fn alpha_branches(&mut self, kbar: &Nfa, lbar: &Nfa, branches: &mut Vec<Branch>) {
        let alphabet = kbar.alphabet().clone();
        let (a, ak) = (lbar, kbar); // minimal automata of L̄ and K̄
        let (q0, k0) = (single(a.initial()), single(ak.initial()));
        let da = delta(a);
        let dk = delta(ak);
        let finals_k: Vec<usize> = ak.finals().iter().copied().collect();
        let finals_l: Vec<usize> = a.finals().iter().copied().collect();

        // X = {(q, p', q')}
        let mut x: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        let nonempty_loopless: Vec<Vec<bool>> = (0..ak.num_states())
            .map(|p| {
                let succ = ak.out_edges(p).iter().map(|e| e.1);
                ak.reachable_from(succ)
            })
            .collect();
        #[allow(clippy::needless_range_loop)]
        for qq in 0..ak.num_states() {
            let b = minimal(&letter_inverse(
                &sub_language(ak, &[qq], &finals_k).expect("states"),
            ));
            if b.is_empty() {
                continue;
            }
            let db = delta(&b);
            let start = (q0, k0, single(b.initial()));
            let mut seen = HashSet::from([start]);
            let mut stack = vec![start];
            while let Some((q, p, s)) = stack.pop() {
                if b.finals().contains(&s) && nonempty_loopless[p][qq] {
                    x.entry(q).or_default().push((p, qq));
                }
                for (&letter, &q2) in &da[q] {
                    let (Some(&p2), Some(&s2)) = (dk[p].get(&letter), db[s].get(&letter)) else {
                        continue;
                    };
                    if seen.insert((q2, p2, s2)) {
                        stack.push((q2, p2, s2));
                    }
                }
            }
        }

        for (&q, pairs) in &x {
            let mut pairs = pairs.clone();
            pairs.sort_unstable();
            pairs.dedup();
            let w = sub_language(a, &[q], &finals_l).expect("states");
            let mut factor = Nfa::empty_language(&alphabet);
            for &(p, qq) in &pairs {
                factor = union(&factor, &sub_language(ak, &[p], &[qq]).expect("states"))
                    .expect("alphabet");
            }
            let factor = without_empty_word(&factor);
            for letter in alphabet.letters() {
                // Y_a
                let ky = minimal(&ends_with(&factor, letter));
                let ly = minimal(&not_starts_with(&w, letter.inverse()));
                if !ky.is_empty() && !ly.is_empty() {
                    let g = self.rred(&ky, &ly);
                    if !g.is_empty() {
                        branches.push(Branch {
                            origin: Origin::Right {
                                a: letter,
                                q,
                                pairs: pairs.clone(),
                            },
                            grammar: g,
                        });
                    }
                }
                // Z_a
                let kz = minimal(&starts_with(&factor, letter));
                let lz = minimal(&not_starts_with(&w, letter));
                if !kz.is_empty() && !lz.is_empty() {
                    let g = self.lred(&kz, &lz);
                    if !g.is_empty() {
                        branches.push(Branch {
                            origin: Origin::Left {
                                a: letter,
                                q,
                                pairs: pairs.clone(),
                            },
                            grammar: g,
                        });
                    }
                }
            }
        }
    }
}

fn single(s: &std::collections::BTreeSet<usize>) -> usize {
    debug_assert_eq!(s.len(), 1, "minimal automata have one initial state");
    *s.iter().next().expect("nonempty minimal automaton")
}

/// The cyclically reduced case: K ⊆ C, 1 ∉ K, KL reduced.
///
/// Enumerates the tuples (p₁, q₁, …, p_m, q_m, p_{m+1}, q′) with m < |Q|,
/// pruning every prefix whose v₁ or v₂ language is already empty, and
/// realizes each as w⁻¹ v₂ v₁ w.
fn rred_cyclic(k: &Nfa, l: &Nfa) -> Cfg {
    let alphabet = k.alphabet().clone();
    let (a, ak) = (minimal(l), minimal(k));
    let nq = a.num_states();
    let q0 = single(a.initial());
    let k0 = single(ak.initial());
    let finals_l: Vec<usize> = a.finals().iter().copied().collect();
    let finals_k: Vec<usize> = ak.finals().iter().copied().collect();
    let la = |p: usize, q: usize| sub_language(&a, &[p], &[q]).expect("states");

    // grouped by p_{m+1}: union of the v₂v₁ languages
    let mut acc: Vec<Nfa> = vec![Nfa::empty_language(&alphabet); nq];
    struct Search<'a> {
        nq: usize,
        la: &'a dyn Fn(usize, usize) -> Nfa,
        acc: &'a mut Vec<Nfa>,
        seen: HashMap<(usize, String, String), usize>,
    }
    impl Search<'_> {
        fn go(&mut self, m: usize, last_q: usize, v1: &Nfa, v2: &Nfa) {
            let remaining = self.nq - m;
            let k = (last_q, v1.to_text(), v2.to_text());
            if self.seen.get(&k).is_some_and(|&r| r >= remaining) {
                return;
            }
            self.seen.insert(k, remaining);
            for p in 0..self.nq {
                let v1n = minimal(&intersect(v1, &(self.la)(last_q, p)).expect("alphabet"));
                if v1n.is_empty() {
                    continue;
                }
                let piece = concat(v2, &v1n).expect("alphabet");
                self.acc[p] = union(&self.acc[p], &piece).expect("alphabet");
                if m + 1 < self.nq {
                    for q in 0..self.nq {
                        let v2n = minimal(&intersect(v2, &(self.la)(p, q)).expect("alphabet"));
                        if !v2n.is_empty() {
                            self.go(m + 1, q, &v1n, &v2n);
                        }
                    }
                }
            }
        }
    }
    let mut search = Search {
        nq,
        la: &la,
        acc: &mut acc,
        seen: HashMap::new(),
    };
    for qq in 0..ak.num_states() {
        let v1 = minimal(&sub_language(&ak, &[k0], &[qq]).expect("states"));
        let v2 = minimal(&sub_language(&ak, &[qq], &finals_k).expect("states"));
        if v1.is_empty() || v2.is_empty() {
            continue;
        }
        search.go(0, q0, &v1, &v2);
    }
    let mut parts = Vec::new();
    for (p, words) in acc.iter().enumerate() {
        if words.is_empty() {
            continue;
        }
        let w = sub_language(&a, &[p], &finals_l).expect("states");
        parts.push(conjugator_language(&minimal(words), &w).expect("alphabet"));
    }
    let all = cfg_union_all(&alphabet, &parts).expect("alphabet");
    cfg_intersect_regular(&all, &reduced_acceptor(&alphabet)).expect("alphabet")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::star;
    use crate::words::free_reduce;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn w(s: &str) -> Word {
        ab().parse_word(s).unwrap()
    }

    fn word(s: &str) -> Nfa {
        Nfa::word(&ab(), &w(s))
    }

    fn render(g: &Cfg, n: usize) -> Vec<String> {
        g.enumerate(n).iter().map(|x| ab().render(x)).collect()
    }

    #[test]
    fn red_examples() {
        assert_eq!(
            render(&alpha_red(&word("b"), &word("a")).unwrap(), 6),
            vec!["Aba"]
        );
        assert_eq!(
            render(&alpha_red(&word("ba"), &word("a")).unwrap(), 6),
            vec!["Abaa"]
        );
        assert!(alpha_red(&Nfa::empty_language(&ab()), &word("a"))
            .unwrap()
            .is_empty());
        let err = alpha_red(&word("ab"), &word("B")).unwrap_err();
        assert!(matches!(err, Error::Precondition(ref m) if m.contains('b') && m.contains('B')));
    }

    #[test]
    fn rred_examples() {
        let g = alpha_rred(&word("b"), &word("ba")).unwrap();
        assert!(g.member(&w("Aba")));
        let g = alpha_rred(&word("b"), &star(&word("b"))).unwrap();
        assert_eq!(render(&g, 6), vec!["b"]);
        assert!(alpha_rred(&Nfa::empty_language(&ab()), &word("a"))
            .unwrap()
            .is_empty());
        assert!(alpha_rred(&word("a"), &Nfa::empty_language(&ab()))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn lred_examples() {
        let g = alpha_lred(&word("b"), &word("Ab")).unwrap();
        assert!(g.member(&w("BabAb")));
        assert_eq!(
            render(&alpha_lred(&word("b"), &Nfa::epsilon(&ab())).unwrap(), 5),
            vec!["b"]
        );
    }

    #[test]
    fn main_examples() {
        let univ = Nfa::universal(&ab());
        let g = alpha(&word("b"), &univ).unwrap().grammar;
        assert!(g.member(&w("Aba")));
        assert!(g.member(&w("b")));
        assert!(!g.member(&w("ba")));
        let g = alpha(&word("ab"), &univ).unwrap().grammar;
        assert!(g.member(&w("ba")));
        assert_eq!(
            render(&alpha(&word("a"), &Nfa::epsilon(&ab())).unwrap().grammar, 5),
            vec!["a"]
        );
    }

    #[test]
    fn powers() {
        let g = alpha_powers(&word("b"), &w("a")).unwrap();
        assert_eq!(render(&g, 7), vec!["b", "Aba", "AAbaa", "AAAbaaa"]);
        let g = alpha_powers(&word("ab"), &Word::empty()).unwrap();
        assert_eq!(render(&g, 4), vec!["ab"]);
        assert_eq!(
            render(&alpha_powers(&word("a"), &w("a")).unwrap(), 5),
            vec!["a"]
        );
    }

    #[test]
    fn decision_examples() {
        let univ = Nfa::universal(&ab());
        assert!(dgcp(&univ, &word("b"), &word("abA")).unwrap());
        assert!(!dgcp(&Nfa::epsilon(&ab()), &word("b"), &word("abA")).unwrap());
        assert!(dgcp(&star(&word("a")), &word("Aba"), &word("b")).unwrap());
        assert!(gcp(&w("b"), &word("abA"), &univ).unwrap());
        assert!(!gcp(&w("a"), &word("b"), &univ).unwrap());
        assert!(gcp(&w("ab"), &word("ba"), &word("B")).unwrap());
    }

    #[test]
    fn words_are_reduced() {
        let k = union(&word("aB"), &star(&word("ba"))).unwrap();
        let l = star(&union(&word("a"), &word("B")).unwrap());
        let g = alpha(&k, &l).unwrap().grammar;
        for x in g.enumerate(6) {
            assert_eq!(free_reduce(&x).as_word(), &x);
        }
    }
}
