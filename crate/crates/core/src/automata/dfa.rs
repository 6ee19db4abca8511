use std::collections::{BTreeSet, HashMap, VecDeque};

use super::Nfa;
use crate::words::{Alphabet, Letter, Term};

/// Partial deterministic automaton. Symbol `i < 2|A|` is the letter with index
/// `i`; the last symbol is the marker `$`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<Option<usize>>>,
    initial: usize,
    finals: Vec<bool>,
}

fn term_of(alphabet: &Alphabet, sym: usize) -> Term {
    if sym == alphabet.size() {
        Term::Marker
    } else {
        Term::Letter(Letter::from_index(sym))
    }
}

fn sym_of(alphabet: &Alphabet, t: Term) -> usize {
    match t {
        Term::Letter(l) => l.index(),
        Term::Marker => alphabet.size(),
    }
}

impl Dfa {
    /// Subset construction (ε-edges are closed over).
    pub fn from_nfa(n: &Nfa) -> Dfa {
        let alphabet = n.alphabet().clone();
        let width = alphabet.size() + 1;
        let start = n.eps_closure(n.initial().iter().copied());
        let mut index: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut sets = vec![start.clone()];
        index.insert(start, 0);
        let mut delta: Vec<Vec<Option<usize>>> = Vec::new();
        let mut i = 0;
        while i < sets.len() {
            let set = sets[i].clone();
            let mut row = vec![None; width];
            let mut targets: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); width];
            for &p in &set {
                for &(l, q) in n.out_edges(p) {
                    if let Some(t) = l {
                        targets[sym_of(&alphabet, t)].insert(q);
                    }
                }
            }
            for (sym, tg) in targets.into_iter().enumerate() {
                if tg.is_empty() {
                    continue;
                }
                let closed = n.eps_closure(tg);
                let id = match index.get(&closed) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len();
                        index.insert(closed.clone(), id);
                        sets.push(closed);
                        id
                    }
                };
                row[sym] = Some(id);
            }
            delta.push(row);
            i += 1;
        }
        let finals = sets
            .iter()
            .map(|s| s.iter().any(|p| n.finals().contains(p)))
            .collect();
        Dfa {
            alphabet,
            delta,
            initial: 0,
            finals,
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, q: usize) -> bool {
        self.finals[q]
    }

    pub fn next(&self, q: usize, t: Term) -> Option<usize> {
        self.delta[q][sym_of(&self.alphabet, t)]
    }

    fn width(&self) -> usize {
        self.alphabet.size() + 1
    }

    /// Adds a sink so that every transition is defined.
    pub fn complete(&self) -> Dfa {
        let mut d = self.clone();
        let sink = d.delta.len();
        let width = self.width();
        d.delta.push(vec![Some(sink); width]);
        d.finals.push(false);
        for row in &mut d.delta {
            for t in row.iter_mut() {
                if t.is_none() {
                    *t = Some(sink);
                }
            }
        }
        d
    }

    /// Complement relative to (Ã ∪ {$})*.
    pub fn complement(&self) -> Dfa {
        let mut d = self.complete();
        for f in &mut d.finals {
            *f = !*f;
        }
        d
    }

    /// Moore partition refinement; the result is trim (no dead states) and
    /// canonically numbered.
    pub fn minimize(&self) -> Dfa {
        let d = self.complete();
        let n = d.num_states();
        let mut class: Vec<usize> = d.finals.iter().map(|&f| f as usize).collect();
        let mut count = class.iter().collect::<BTreeSet<_>>().len();
        loop {
            let mut sig_index: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
            let mut next = vec![0; n];
            for q in 0..n {
                let sig: Vec<usize> = d.delta[q].iter().map(|t| class[t.unwrap()]).collect();
                let k = sig_index.len();
                next[q] = *sig_index.entry((class[q], sig)).or_insert(k);
            }
            let new_count = sig_index.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }
        let mut delta = vec![vec![None; d.width()]; count];
        let mut finals = vec![false; count];
        for q in 0..n {
            for (s, t) in d.delta[q].iter().enumerate() {
                delta[class[q]][s] = Some(class[t.unwrap()]);
            }
            finals[class[q]] = d.finals[q];
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: class[d.initial],
            finals,
        }
        .trim()
        .canonical()
    }

    /// Removes states that cannot reach a final state or cannot be reached.
    pub fn trim(&self) -> Dfa {
        let n = self.num_states();
        let mut fwd = vec![false; n];
        fwd[self.initial] = true;
        let mut stack = vec![self.initial];
        while let Some(p) = stack.pop() {
            for q in self.delta[p].iter().flatten() {
                if !fwd[*q] {
                    fwd[*q] = true;
                    stack.push(*q);
                }
            }
        }
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for p in 0..n {
            for q in self.delta[p].iter().flatten() {
                rev[*q].push(p);
            }
        }
        let mut bwd = self.finals.clone();
        let mut stack: Vec<usize> = (0..n).filter(|&q| bwd[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !bwd[p] {
                    bwd[p] = true;
                    stack.push(p);
                }
            }
        }
        let keep: Vec<bool> = (0..n).map(|q| fwd[q] && bwd[q]).collect();
        if !keep[self.initial] {
            // empty language: a single non-final state
            return Dfa {
                alphabet: self.alphabet.clone(),
                delta: vec![vec![None; self.width()]],
                initial: 0,
                finals: vec![false],
            };
        }
        let mut map = vec![usize::MAX; n];
        let mut k = 0;
        for q in 0..n {
            if keep[q] {
                map[q] = k;
                k += 1;
            }
        }
        let mut delta = vec![vec![None; self.width()]; k];
        let mut finals = vec![false; k];
        for q in (0..n).filter(|&q| keep[q]) {
            for (s, t) in self.delta[q].iter().enumerate() {
                if let Some(t) = t {
                    if keep[*t] {
                        delta[map[q]][s] = Some(map[*t]);
                    }
                }
            }
            finals[map[q]] = self.finals[q];
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: map[self.initial],
            finals,
        }
    }

    /// Renumbers states in breadth-first order from the initial state
    /// (symbols in increasing order), dropping unreachable states.
    pub fn canonical(&self) -> Dfa {
        let n = self.num_states();
        let mut map = vec![usize::MAX; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        map[self.initial] = 0;
        order.push(self.initial);
        while let Some(p) = queue.pop_front() {
            for q in self.delta[p].iter().flatten() {
                if map[*q] == usize::MAX {
                    map[*q] = order.len();
                    order.push(*q);
                    queue.push_back(*q);
                }
            }
        }
        let delta = order
            .iter()
            .map(|&q| self.delta[q].iter().map(|t| t.map(|t| map[t])).collect())
            .collect();
        let finals = order.iter().map(|&q| self.finals[q]).collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            delta,
            initial: 0,
            finals,
        }
    }

    pub fn is_empty_language(&self) -> bool {
        !self.trim().finals.iter().any(|&f| f)
    }

    pub fn to_nfa(&self) -> Nfa {
        let mut n = Nfa::with_states(self.alphabet.clone(), self.num_states());
        n.set_initial(self.initial);
        for q in 0..self.num_states() {
            if self.finals[q] {
                n.set_final(q);
            }
            for (s, t) in self.delta[q].iter().enumerate() {
                if let Some(t) = t {
                    n.add_label(q, Some(term_of(&self.alphabet, s)), *t);
                }
            }
        }
        n
    }
}
