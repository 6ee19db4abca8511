//! Finite automata over a signed alphabet.
//!
//! An [`Nfa`] may carry ε-edges and edges labelled by the marker `$` (used
//! by the marked constructions in [`crate::grammar`]). All operations are pure
//! and return new machines.

mod dfa;
mod format;
mod ops;

use std::collections::BTreeSet;

pub use dfa::Dfa;
pub use ops::{
    concat, cyc_regular, cyclically_reduced_acceptor, determinize, difference, ends_with,
    equivalent, intersect, letter_inverse, minimal, minimize, not_starts_with, reduced_acceptor,
    remove_epsilon, reverse, star, starts_with, sub_language, trim, union,
};

use crate::error::{Error, Result};
use crate::words::{shortlex, Alphabet, Letter, Term, Word};

/// Edge label; `None` is ε.
pub type Label = Option<Term>;

#[derive(Clone, Debug)]
pub struct Nfa {
    alphabet: Alphabet,
    edges: Vec<Vec<(Label, usize)>>,
    initial: BTreeSet<usize>,
    finals: BTreeSet<usize>,
}

impl Nfa {
    /// Machine with no states (recognizes ∅).
    pub fn new(alphabet: Alphabet) -> Self {
        Nfa {
            alphabet,
            edges: Vec::new(),
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    pub fn with_states(alphabet: Alphabet, n: usize) -> Self {
        Nfa {
            alphabet,
            edges: vec![Vec::new(); n],
            initial: BTreeSet::new(),
            finals: BTreeSet::new(),
        }
    }

    pub fn empty_language(alphabet: &Alphabet) -> Self {
        Nfa::new(alphabet.clone())
    }

    /// Recognizes {ε}.
    pub fn epsilon(alphabet: &Alphabet) -> Self {
        Nfa::word(alphabet, &[])
    }

    /// Recognizes all of Ã*.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let mut n = Nfa::with_states(alphabet.clone(), 1);
        for l in alphabet.letters() {
            n.add_edge(0, l, 0);
        }
        n.initial.insert(0);
        n.finals.insert(0);
        n
    }

    /// Recognizes the single word `w`.
    pub fn word(alphabet: &Alphabet, w: &[Letter]) -> Self {
        let mut n = Nfa::with_states(alphabet.clone(), w.len() + 1);
        for (i, &l) in w.iter().enumerate() {
            n.add_edge(i, l, i + 1);
        }
        n.initial.insert(0);
        n.finals.insert(w.len());
        n
    }

    /// Recognizes a finite set of words.
    pub fn words<'a>(alphabet: &Alphabet, ws: impl IntoIterator<Item = &'a Word>) -> Self {
        ws.into_iter()
            .map(|w| Nfa::word(alphabet, w))
            .reduce(|a, b| union(&a, &b).expect("same alphabet"))
            .unwrap_or_else(|| Nfa::empty_language(alphabet))
    }

    /// Recognizes w* for a fixed word w.
    pub fn word_star(alphabet: &Alphabet, w: &[Letter]) -> Self {
        star(&Nfa::word(alphabet, w))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    pub fn initial(&self) -> &BTreeSet<usize> {
        &self.initial
    }

    pub fn finals(&self) -> &BTreeSet<usize> {
        &self.finals
    }

    pub fn out_edges(&self, p: usize) -> &[(Label, usize)] {
        &self.edges[p]
    }

    /// All edges as (source, label, target).
    pub fn edges(&self) -> impl Iterator<Item = (usize, Label, usize)> + '_ {
        self.edges
            .iter()
            .enumerate()
            .flat_map(|(p, es)| es.iter().map(move |&(l, q)| (p, l, q)))
    }

    pub fn add_state(&mut self) -> usize {
        self.edges.push(Vec::new());
        self.edges.len() - 1
    }

    pub fn add_edge(&mut self, p: usize, l: Letter, q: usize) {
        self.add_label(p, Some(Term::Letter(l)), q);
    }

    pub fn add_eps(&mut self, p: usize, q: usize) {
        self.add_label(p, None, q);
    }

    pub fn add_marker(&mut self, p: usize, q: usize) {
        self.add_label(p, Some(Term::Marker), q);
    }

    pub fn add_label(&mut self, p: usize, l: Label, q: usize) {
        if !self.edges[p].contains(&(l, q)) {
            self.edges[p].push((l, q));
        }
    }

    /// Appends a path labelled `w` from `p` to `q`, creating intermediate states.
    pub fn add_path(&mut self, p: usize, w: &[Letter], q: usize) {
        if w.is_empty() {
            self.add_eps(p, q);
            return;
        }
        let mut cur = p;
        for (i, &l) in w.iter().enumerate() {
            let next = if i + 1 == w.len() {
                q
            } else {
                self.add_state()
            };
            self.add_edge(cur, l, next);
            cur = next;
        }
    }

    pub fn set_initial(&mut self, p: usize) {
        self.initial.insert(p);
    }

    pub fn set_final(&mut self, p: usize) {
        self.finals.insert(p);
    }

    pub fn clear_initial(&mut self) {
        self.initial.clear();
    }

    pub fn clear_finals(&mut self) {
        self.finals.clear();
    }

    pub fn has_epsilon(&self) -> bool {
        self.edges().any(|(_, l, _)| l.is_none())
    }

    pub fn has_marker(&self) -> bool {
        self.edges().any(|(_, l, _)| l == Some(Term::Marker))
    }

    pub fn is_deterministic(&self) -> bool {
        if self.initial.len() > 1 || self.has_epsilon() {
            return false;
        }
        self.edges.iter().all(|es| {
            let mut labels: Vec<Label> = es.iter().map(|e| e.0).collect();
            labels.sort_unstable();
            labels.windows(2).all(|w| w[0] != w[1])
        })
    }

    /// ε-closure of a set of states, as a sorted vector.
    pub fn eps_closure(&self, start: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = Vec::new();
        for s in start {
            if !seen[s] {
                seen[s] = true;
                stack.push(s);
            }
        }
        while let Some(p) = stack.pop() {
            for &(l, q) in &self.edges[p] {
                if l.is_none() && !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        (0..self.num_states()).filter(|&i| seen[i]).collect()
    }

    fn step(&self, set: &[usize], t: Term) -> Vec<usize> {
        let mut next = BTreeSet::new();
        for &p in set {
            for &(l, q) in &self.edges[p] {
                if l == Some(t) {
                    next.insert(q);
                }
            }
        }
        self.eps_closure(next)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let terms: Vec<Term> = w.iter().map(|&l| Term::Letter(l)).collect();
        self.accepts_terms(&terms)
    }

    pub fn accepts_terms(&self, w: &[Term]) -> bool {
        let mut cur = self.eps_closure(self.initial.iter().copied());
        for &t in w {
            if cur.is_empty() {
                return false;
            }
            cur = self.step(&cur, t);
        }
        cur.iter().any(|p| self.finals.contains(p))
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepts_terms(&[])
    }

    /// True iff no final state is reachable from an initial state.
    pub fn is_empty(&self) -> bool {
        let reach = self.reachable_from(self.initial.iter().copied());
        !self.finals.iter().any(|&f| reach[f])
    }

    pub(crate) fn reachable_from(&self, start: impl IntoIterator<Item = usize>) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack: Vec<usize> = start.into_iter().collect();
        for &s in &stack {
            seen[s] = true;
        }
        while let Some(p) = stack.pop() {
            for &(_, q) in &self.edges[p] {
                if !seen[q] {
                    seen[q] = true;
                    stack.push(q);
                }
            }
        }
        seen
    }

    /// All accepted words over Ã of length ≤ `n`, in shortlex order, without duplicates.
    pub fn enumerate(&self, n: usize) -> Vec<Word> {
        self.enumerate_inner(n, false)
            .into_iter()
            .map(|w| {
                w.into_iter()
                    .map(|t| t.letter().expect("letters only"))
                    .collect()
            })
            .collect()
    }

    /// Like [`Nfa::enumerate`] but also follows marker edges (`$` sorts last).
    pub fn enumerate_terms(&self, n: usize) -> Vec<Vec<Term>> {
        self.enumerate_inner(n, true)
    }

    fn enumerate_inner(&self, n: usize, markers: bool) -> Vec<Vec<Term>> {
        let machine = trim(self);
        let mut symbols: Vec<Term> = machine.alphabet.letters().map(Term::Letter).collect();
        if markers {
            symbols.push(Term::Marker);
        }
        let mut out = Vec::new();
        let mut layer: Vec<(Vec<Term>, Vec<usize>)> = vec![(
            Vec::new(),
            machine.eps_closure(machine.initial.iter().copied()),
        )];
        for len in 0..=n {
            let mut next = Vec::new();
            for (w, set) in &layer {
                if set.is_empty() {
                    continue;
                }
                if set.iter().any(|p| machine.finals.contains(p)) {
                    out.push(w.clone());
                }
                if len < n {
                    for &t in &symbols {
                        let s = machine.step(set, t);
                        if !s.is_empty() {
                            let mut w2 = w.clone();
                            w2.push(t);
                            next.push((w2, s));
                        }
                    }
                }
            }
            layer = next;
        }
        out.sort_by(|a, b| shortlex(a, b));
        out
    }

    /// Re-indexes the machine over a superset alphabet.
    pub fn with_alphabet(&self, target: &Alphabet) -> Result<Nfa> {
        let mut out = self.clone();
        out.alphabet = target.clone();
        for es in &mut out.edges {
            for e in es.iter_mut() {
                if let Some(Term::Letter(l)) = e.0 {
                    e.0 = Some(Term::Letter(self.alphabet.translate(l, target)?));
                }
            }
        }
        Ok(out)
    }

    /// Applies a letter-to-letter map on every edge.
    pub fn map_letters(&self, f: impl Fn(Letter) -> Letter) -> Nfa {
        let mut out = self.clone();
        for es in &mut out.edges {
            for e in es.iter_mut() {
                if let Some(Term::Letter(l)) = e.0 {
                    e.0 = Some(Term::Letter(f(l)));
                }
            }
        }
        out
    }

    pub(crate) fn check_same_alphabet(&self, other: &Nfa) -> Result<()> {
        if self.alphabet != other.alphabet {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.alphabet.to_string(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_states<'a>(
        &self,
        states: impl IntoIterator<Item = &'a usize>,
    ) -> Result<()> {
        for &s in states {
            if s >= self.num_states() {
                return Err(Error::Malformed(format!(
                    "state {s} outside 0..{}",
                    self.num_states()
                )));
            }
        }
        Ok(())
    }
}

/// Every accepted path of a trim automaton for a reduced language is labelled
/// by a reduced word; this checks the local form of that property: no state
/// has an incoming x and an outgoing x⁻¹.
pub fn paths_are_reduced(n: &Nfa) -> bool {
    let t = trim(n);
    if t.has_epsilon() {
        return trim(&remove_epsilon(&t)).edges_reduced();
    }
    t.edges_reduced()
}

impl Nfa {
    fn edges_reduced(&self) -> bool {
        let mut incoming: Vec<BTreeSet<Letter>> = vec![BTreeSet::new(); self.num_states()];
        for (_, l, q) in self.edges() {
            if let Some(Term::Letter(l)) = l {
                incoming[q].insert(l);
            }
        }
        self.edges().all(|(p, l, _)| match l {
            Some(Term::Letter(l)) => !incoming[p].contains(&l.inverse()),
            _ => true,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    fn render(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| ab().render(w)).collect()
    }

    #[test]
    fn membership_and_emptiness() {
        let a = ab();
        let astar = Nfa::word_star(&a, &a.parse_word("a").unwrap());
        assert!(astar.accepts(&a.parse_word("aaa").unwrap()));
        assert!(!astar.accepts(&a.parse_word("ab").unwrap()));

        let mut unreachable = Nfa::with_states(a.clone(), 2);
        unreachable.set_initial(0);
        unreachable.set_final(1);
        unreachable.add_edge(1, a.letter('a').unwrap(), 0);
        assert!(unreachable.is_empty());
    }

    #[test]
    fn enumerate_cycle() {
        let a = ab();
        let n = Nfa::word_star(&a, &a.parse_word("ab").unwrap());
        assert_eq!(render(&n.enumerate(4)), vec!["1", "ab", "abab"]);
    }

    #[test]
    fn enumerate_is_shortlex_and_unique() {
        let a = ab();
        let n = union(&Nfa::universal(&a), &Nfa::universal(&a)).unwrap();
        let ws = n.enumerate(2);
        assert_eq!(ws.len(), 1 + 4 + 16);
        assert!(ws.windows(2).all(|p| p[0].shortlex_cmp(&p[1]).is_lt()));
    }

    #[test]
    fn reduced_path_check() {
        let a = ab();
        assert!(paths_are_reduced(&reduced_acceptor(&a)));
        assert!(!paths_are_reduced(&Nfa::universal(&a)));
    }
}
