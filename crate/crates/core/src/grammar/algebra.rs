use std::collections::{HashMap, HashSet};

use super::{Cfg, Rule, Sym};
use crate::automata::{self, Nfa};
use crate::error::Result;
use crate::words::{Letter, Term};

pub fn cfg_union(a: &Cfg, b: &Cfg) -> Result<Cfg> {
    cfg_union_all(a.alphabet(), [a, b])
}

/// Union of any number of grammars over the same alphabet.
pub fn cfg_union_all<'a>(
    alphabet: &crate::words::Alphabet,
    parts: impl IntoIterator<Item = &'a Cfg>,
) -> Result<Cfg> {
    let mut out = Cfg::new(alphabet);
    for g in parts {
        g.check_same_alphabet(alphabet)?;
        let s = out.import(g);
        out.add_rule(0, vec![Sym::N(s)]);
    }
    Ok(out.trim())
}

pub fn cfg_reverse(g: &Cfg) -> Cfg {
    let mut out = g.clone();
    for r in &mut out.rules {
        r.body.reverse();
    }
    out
}

/// Applies a letter-to-letter homomorphism to every terminal (the marker is kept).
pub fn cfg_letter_map(g: &Cfg, f: impl Fn(Letter) -> Letter) -> Cfg {
    let mut out = g.clone();
    for r in &mut out.rules {
        for s in &mut r.body {
            if let Sym::T(Term::Letter(l)) = *s {
                *s = Sym::letter(f(l));
            }
        }
    }
    out
}

/// { w⁻¹ : w ∈ L(g) }: reversal followed by the sign flip.
pub fn cfg_inverse(g: &Cfg) -> Cfg {
    cfg_letter_map(&cfg_reverse(g), Letter::inverse)
}

/// Language substituted for the marker.
#[derive(Clone, Copy)]
pub enum Substitution<'a> {
    Regular(&'a Nfa),
    ContextFree(&'a Cfg),
}

/// Replaces every occurrence of the marker `$` by the given language.
pub fn cfg_substitute(g: &Cfg, sub: Substitution<'_>) -> Result<Cfg> {
    let sub_grammar = match sub {
        Substitution::Regular(n) => {
            g.check_same_alphabet(n.alphabet())?;
            Cfg::from_nfa(n)
        }
        Substitution::ContextFree(c) => {
            g.check_same_alphabet(c.alphabet())?;
            c.clone()
        }
    };
    if !g.has_marker() {
        log::warn!("substitution requested but the grammar has no marker; returning it unchanged");
        return Ok(g.clone());
    }
    let mut out = g.clone();
    let s = out.import(&sub_grammar);
    let own = g.rules.len();
    for r in out.rules.iter_mut().take(own) {
        for sym in &mut r.body {
            if *sym == Sym::T(Term::Marker) {
                *sym = Sym::N(s);
            }
        }
    }
    Ok(out.trim())
}

/// Bar-Hillel triple construction: nonterminals (p, A, q) deriving the words
/// that lead the automaton from p to q.
///
/// The grammar is first binarized; productive triples are found by a worklist
/// and only triples reachable from the start are emitted.
pub fn cfg_intersect_regular(g: &Cfg, n: &Nfa) -> Result<Cfg> {
    g.check_same_alphabet(n.alphabet())?;
    let g = g.trim();
    let nfa = automata::trim(&automata::remove_epsilon(n));
    if g.is_empty() || nfa.num_states() == 0 {
        return Ok(Cfg::empty(g.alphabet()));
    }
    let states = nfa.num_states();

    // binarize
    let mut nts = g.num_nonterminals();
    let mut rules: Vec<Rule> = Vec::new();
    for r in &g.rules {
        if r.body.len() <= 2 {
            rules.push(r.clone());
            continue;
        }
        let mut head = r.head;
        let k = r.body.len();
        for i in 0..k - 2 {
            let next = nts;
            nts += 1;
            rules.push(Rule {
                head,
                body: vec![r.body[i], Sym::N(next)],
            });
            head = next;
        }
        rules.push(Rule {
            head,
            body: vec![r.body[k - 2], r.body[k - 1]],
        });
    }

    // terminal pairs
    let mut term_from: HashMap<(Term, usize), Vec<usize>> = HashMap::new();
    let mut term_to: HashMap<(Term, usize), Vec<usize>> = HashMap::new();
    for (p, l, q) in nfa.edges() {
        let t = l.expect("ε removed");
        term_from.entry((t, p)).or_default().push(q);
        term_to.entry((t, q)).or_default().push(p);
    }

    struct Prod {
        set: HashSet<(usize, usize, usize)>,
        from: HashMap<(usize, usize), Vec<usize>>,
        to: HashMap<(usize, usize), Vec<usize>>,
    }
    impl Prod {
        fn insert(&mut self, p: usize, a: usize, q: usize) -> bool {
            if self.set.insert((p, a, q)) {
                self.from.entry((a, p)).or_default().push(q);
                self.to.entry((a, q)).or_default().push(p);
                true
            } else {
                false
            }
        }
    }
    let mut prod = Prod {
        set: HashSet::new(),
        from: HashMap::new(),
        to: HashMap::new(),
    };
    let from_of = |prod: &Prod, s: Sym, p: usize| -> Vec<usize> {
        match s {
            Sym::T(t) => term_from.get(&(t, p)).cloned().unwrap_or_default(),
            Sym::N(a) => prod.from.get(&(a, p)).cloned().unwrap_or_default(),
        }
    };
    let to_of = |prod: &Prod, s: Sym, q: usize| -> Vec<usize> {
        match s {
            Sym::T(t) => term_to.get(&(t, q)).cloned().unwrap_or_default(),
            Sym::N(a) => prod.to.get(&(a, q)).cloned().unwrap_or_default(),
        }
    };
    let is_prod = |prod: &Prod, s: Sym, p: usize, q: usize| -> bool {
        match s {
            Sym::T(t) => term_from.get(&(t, p)).is_some_and(|v| v.contains(&q)),
            Sym::N(a) => prod.set.contains(&(p, a, q)),
        }
    };

    let mut unit_of: Vec<Vec<usize>> = vec![Vec::new(); nts];
    let mut left_of: Vec<Vec<(usize, Sym)>> = vec![Vec::new(); nts];
    let mut right_of: Vec<Vec<(usize, Sym)>> = vec![Vec::new(); nts];
    let mut queue: Vec<(usize, usize, usize)> = Vec::new();
    let push = |prod: &mut Prod, queue: &mut Vec<_>, p, a, q| {
        if prod.insert(p, a, q) {
            queue.push((p, a, q));
        }
    };
    for r in &rules {
        match r.body.as_slice() {
            [] => {
                for p in 0..states {
                    push(&mut prod, &mut queue, p, r.head, p);
                }
            }
            [Sym::T(t)] => {
                for (&(t2, p), qs) in &term_from {
                    if t2 == *t {
                        for &q in qs {
                            push(&mut prod, &mut queue, p, r.head, q);
                        }
                    }
                }
            }
            [Sym::N(x)] => unit_of[*x].push(r.head),
            [x, y] => {
                if let Sym::N(xn) = x {
                    left_of[*xn].push((r.head, *y));
                }
                if let Sym::N(yn) = y {
                    right_of[*yn].push((r.head, *x));
                }
                if let (Sym::T(_), Sym::T(_)) = (x, y) {
                    for p in 0..states {
                        for r2 in from_of(&prod, *x, p) {
                            for q in from_of(&prod, *y, r2) {
                                push(&mut prod, &mut queue, p, r.head, q);
                            }
                        }
                    }
                }
            }
            _ => unreachable!("binarized"),
        }
    }
    while let Some((p, x, q)) = queue.pop() {
        for &a in &unit_of[x] {
            push(&mut prod, &mut queue, p, a, q);
        }
        for &(a, y) in &left_of[x] {
            for r in from_of(&prod, y, q) {
                push(&mut prod, &mut queue, p, a, r);
            }
        }
        for &(a, y) in &right_of[x] {
            for o in to_of(&prod, y, p) {
                push(&mut prod, &mut queue, o, a, q);
            }
        }
    }

    // emission, top-down from the start triples
    let mut by_head: Vec<Vec<&Rule>> = vec![Vec::new(); nts];
    for r in &rules {
        by_head[r.head].push(r);
    }
    let mut out = Cfg::new(g.alphabet());
    let mut ids: HashMap<(usize, usize, usize), usize> = HashMap::new();
    let mut stack: Vec<((usize, usize, usize), usize)> = Vec::new();
    let mut id_of = |out: &mut Cfg, stack: &mut Vec<_>, t: (usize, usize, usize)| -> usize {
        *ids.entry(t).or_insert_with(|| {
            let id = out.fresh();
            stack.push((t, id));
            id
        })
    };
    for &i in nfa.initial() {
        for &f in nfa.finals() {
            if prod.set.contains(&(i, g.start(), f)) {
                let id = id_of(&mut out, &mut stack, (i, g.start(), f));
                out.add_rule(0, vec![Sym::N(id)]);
            }
        }
    }
    while let Some(((p, a, q), head)) = stack.pop() {
        for r in &by_head[a] {
            match r.body.as_slice() {
                [] => {
                    if p == q {
                        out.add_rule(head, vec![]);
                    }
                }
                [s] => {
                    if is_prod(&prod, *s, p, q) {
                        let sym = match *s {
                            Sym::T(t) => Sym::T(t),
                            Sym::N(x) => Sym::N(id_of(&mut out, &mut stack, (p, x, q))),
                        };
                        out.add_rule(head, vec![sym]);
                    }
                }
                [x, y] => {
                    for mid in from_of(&prod, *x, p) {
                        if !is_prod(&prod, *y, mid, q) {
                            continue;
                        }
                        let sx = match *x {
                            Sym::T(t) => Sym::T(t),
                            Sym::N(n) => Sym::N(id_of(&mut out, &mut stack, (p, n, mid))),
                        };
                        let sy = match *y {
                            Sym::T(t) => Sym::T(t),
                            Sym::N(n) => Sym::N(id_of(&mut out, &mut stack, (mid, n, q))),
                        };
                        out.add_rule(head, vec![sx, sy]);
                    }
                }
                _ => unreachable!("binarized"),
            }
        }
    }
    Ok(out.trim())
}

#[cfg(test)]
mod tests {
    use super::super::tests::anbn;
    use super::*;
    use crate::automata::{concat, star};
    use crate::words::Alphabet;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn render(g: &Cfg, n: usize) -> Vec<String> {
        g.enumerate(n).iter().map(|w| ab().render(w)).collect()
    }

    #[test]
    fn reverse_anbn() {
        assert_eq!(
            render(&cfg_reverse(&anbn()), 8),
            vec!["1", "ba", "bbaa", "bbbaaa", "bbbbaaaa"]
        );
    }

    #[test]
    fn intersect_forces_singleton() {
        let a = ab();
        let astar_b = concat(
            &star(&Nfa::word(&a, &a.parse_word("a").unwrap())),
            &Nfa::word(&a, &a.parse_word("b").unwrap()),
        )
        .unwrap();
        let g = cfg_intersect_regular(&anbn(), &astar_b).unwrap();
        assert_eq!(render(&g, 8), vec!["ab"]);
    }

    #[test]
    fn substitute_marker() {
        // { u⁻¹ $ u : u ∈ {a}* } with $ -> {b}
        let a = ab();
        let mut g = Cfg::new(&a);
        let x = a.letter('a').unwrap();
        g.add_rule(0, vec![Sym::letter(x.inverse()), Sym::N(0), Sym::letter(x)]);
        g.add_rule(0, vec![Sym::T(Term::Marker)]);
        let b = Nfa::word(&a, &a.parse_word("b").unwrap());
        let s = cfg_substitute(&g, Substitution::Regular(&b)).unwrap();
        assert!(!s.has_marker());
        assert_eq!(render(&s, 5), vec!["b", "Aba", "AAbaa"]);
    }

    #[test]
    fn substitute_without_marker_is_noop() {
        let g = anbn();
        let b = Nfa::epsilon(&ab());
        let s = cfg_substitute(&g, Substitution::Regular(&b)).unwrap();
        assert_eq!(s.enumerate(6), g.enumerate(6));
    }

    #[test]
    fn union_and_inverse() {
        let g = cfg_union(&anbn(), &cfg_inverse(&anbn())).unwrap();
        assert_eq!(render(&g, 4), vec!["1", "ab", "BA", "aabb", "BBAA"]);
    }
}
