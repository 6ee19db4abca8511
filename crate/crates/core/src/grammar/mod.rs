//! Context-free grammars over Ã, optionally using the marker terminal `$`.

mod algebra;
mod cnf;
mod constructors;
mod format;

use std::collections::{BTreeSet, HashSet};

pub use algebra::{
    cfg_intersect_regular, cfg_inverse, cfg_letter_map, cfg_reverse, cfg_substitute, cfg_union,
    cfg_union_all, Substitution,
};
pub use cnf::Cnf;
pub use constructors::{conjugator_language, pumped_language, PumpMode};

use crate::automata::{self, Nfa};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Term, Word};

/// A body symbol.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Sym {
    T(Term),
    N(usize),
}

impl Sym {
    pub fn letter(l: Letter) -> Sym {
        Sym::T(Term::Letter(l))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rule {
    pub head: usize,
    pub body: Vec<Sym>,
}

#[derive(Clone, Debug)]
pub struct Cfg {
    alphabet: Alphabet,
    names: Vec<String>,
    rules: Vec<Rule>,
    start: usize,
}

impl Cfg {
    /// Grammar with a single nonterminal `S` and no productions (empty language).
    pub fn new(alphabet: &Alphabet) -> Self {
        Cfg {
            alphabet: alphabet.clone(),
            names: vec!["S".into()],
            rules: Vec::new(),
            start: 0,
        }
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Cfg::new(alphabet)
    }

    /// Grammar for {ε}.
    pub fn epsilon(alphabet: &Alphabet) -> Self {
        let mut g = Cfg::new(alphabet);
        g.add_rule(0, vec![]);
        g
    }

    /// Right-linear grammar with one nonterminal per state.
    pub fn from_nfa(n: &Nfa) -> Self {
        let n = automata::trim(n);
        let mut g = Cfg::new(n.alphabet());
        let base = g.names.len();
        for _ in 0..n.num_states() {
            g.fresh();
        }
        for (p, l, q) in n.edges() {
            let body = match l {
                None => vec![Sym::N(base + q)],
                Some(t) => vec![Sym::T(t), Sym::N(base + q)],
            };
            g.add_rule(base + p, body);
        }
        for &f in n.finals() {
            g.add_rule(base + f, vec![]);
        }
        for &i in n.initial() {
            g.add_rule(0, vec![Sym::N(base + i)]);
        }
        g
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn set_start(&mut self, s: usize) {
        self.start = s;
    }

    pub fn num_nonterminals(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, n: usize) -> &str {
        &self.names[n]
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn add_nonterminal(&mut self, name: impl Into<String>) -> usize {
        self.names.push(name.into());
        self.names.len() - 1
    }

    /// New nonterminal with an automatic `[Nk]` name.
    pub fn fresh(&mut self) -> usize {
        let k = self.names.len();
        self.add_nonterminal(format!("[N{k}]"))
    }

    pub fn add_rule(&mut self, head: usize, body: Vec<Sym>) {
        self.rules.push(Rule { head, body });
    }

    /// Copies `other`'s nonterminals and rules into `self`; returns the index
    /// of `other`'s start symbol.
    pub fn import(&mut self, other: &Cfg) -> usize {
        let off = self.names.len();
        for _ in 0..other.names.len() {
            self.fresh();
        }
        for r in &other.rules {
            let body = r
                .body
                .iter()
                .map(|s| match *s {
                    Sym::N(n) => Sym::N(n + off),
                    t => t,
                })
                .collect();
            self.add_rule(r.head + off, body);
        }
        other.start + off
    }

    pub fn has_marker(&self) -> bool {
        self.rules
            .iter()
            .any(|r| r.body.contains(&Sym::T(Term::Marker)))
    }

    pub(crate) fn check_same_alphabet(&self, other: &Alphabet) -> Result<()> {
        if &self.alphabet != other {
            return Err(Error::AlphabetMismatch {
                left: self.alphabet.to_string(),
                right: other.to_string(),
            });
        }
        Ok(())
    }

    /// Nonterminals deriving at least one terminal string.
    pub fn generating(&self) -> Vec<bool> {
        let n = self.names.len();
        let mut gen = vec![false; n];
        let mut uses: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut missing: Vec<usize> = Vec::with_capacity(self.rules.len());
        let mut queue = Vec::new();
        for (ri, r) in self.rules.iter().enumerate() {
            let mut m = 0;
            for s in &r.body {
                if let Sym::N(x) = s {
                    uses[*x].push(ri);
                    m += 1;
                }
            }
            missing.push(m);
            if m == 0 && !gen[r.head] {
                gen[r.head] = true;
                queue.push(r.head);
            }
        }
        while let Some(x) = queue.pop() {
            for &ri in &uses[x] {
                missing[ri] -= 1;
                let h = self.rules[ri].head;
                if missing[ri] == 0 && !gen[h] {
                    gen[h] = true;
                    queue.push(h);
                }
            }
        }
        gen
    }

    /// Emptiness via the generating-nonterminal fixpoint.
    pub fn is_empty(&self) -> bool {
        !self.generating()[self.start]
    }

    /// Removes non-generating and unreachable nonterminals and duplicate rules.
    pub fn trim(&self) -> Cfg {
        let gen = self.generating();
        if !gen[self.start] {
            let mut g = Cfg::new(&self.alphabet);
            g.names[0] = self.names[self.start].clone();
            return g;
        }
        let useful: Vec<&Rule> = self
            .rules
            .iter()
            .filter(|r| gen[r.head] && r.body.iter().all(|s| !matches!(s, Sym::N(x) if !gen[*x])))
            .collect();
        let mut by_head: Vec<Vec<&Rule>> = vec![Vec::new(); self.names.len()];
        for r in &useful {
            by_head[r.head].push(r);
        }
        let mut map = vec![usize::MAX; self.names.len()];
        let mut order = vec![self.start];
        map[self.start] = 0;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for r in &by_head[x] {
                for s in &r.body {
                    if let Sym::N(y) = s {
                        if map[*y] == usize::MAX {
                            map[*y] = order.len();
                            order.push(*y);
                        }
                    }
                }
            }
            i += 1;
        }
        let mut out = Cfg {
            alphabet: self.alphabet.clone(),
            names: order.iter().map(|&x| self.names[x].clone()).collect(),
            rules: Vec::new(),
            start: 0,
        };
        let mut seen = HashSet::new();
        for &x in &order {
            for r in &by_head[x] {
                let body: Vec<Sym> = r
                    .body
                    .iter()
                    .map(|s| match *s {
                        Sym::N(y) => Sym::N(map[y]),
                        t => t,
                    })
                    .collect();
                let rule = Rule { head: map[x], body };
                if seen.insert(rule.clone()) {
                    out.rules.push(rule);
                }
            }
        }
        out.rename_auto();
        out
    }

    /// Gives every nonterminal except the start a fresh `[Nk]` name when
    /// names collide.
    fn rename_auto(&mut self) {
        let distinct: BTreeSet<&String> = self.names.iter().collect();
        if distinct.len() == self.names.len() {
            return;
        }
        for (k, name) in self.names.iter_mut().enumerate() {
            if k != self.start {
                *name = format!("[N{k}]");
            }
        }
    }

    pub fn to_cnf(&self) -> Cnf {
        Cnf::from_cfg(self)
    }

    /// Membership by CYK on the Chomsky normal form.
    pub fn member(&self, w: &[Letter]) -> bool {
        self.to_cnf().accepts(w)
    }

    /// All generated words over Ã of length ≤ `n`, in shortlex order.
    pub fn enumerate(&self, n: usize) -> Vec<Word> {
        self.to_cnf().enumerate(n)
    }

    /// All generated strings (marker included) of length ≤ `n`.
    pub fn enumerate_terms(&self, n: usize) -> Vec<Vec<Term>> {
        self.to_cnf().enumerate_terms(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new("ab").unwrap()
    }

    /// S -> a S b | 1
    pub(crate) fn anbn() -> Cfg {
        let a = ab();
        let mut g = Cfg::new(&a);
        let (x, y) = (a.letter('a').unwrap(), a.letter('b').unwrap());
        g.add_rule(0, vec![Sym::letter(x), Sym::N(0), Sym::letter(y)]);
        g.add_rule(0, vec![]);
        g
    }

    #[test]
    fn unproductive_start_is_empty() {
        let mut g = Cfg::new(&ab());
        g.add_rule(0, vec![Sym::N(0), Sym::letter(ab().letter('a').unwrap())]);
        assert!(g.is_empty());
        assert!(g.trim().rules().is_empty());
    }

    #[test]
    fn anbn_membership() {
        let g = anbn();
        let w = |s: &str| ab().parse_word(s).unwrap();
        assert!(g.member(&w("aabb")));
        assert!(g.member(&w("1")));
        assert!(!g.member(&w("abab")));
        let words: Vec<String> = g.enumerate(6).iter().map(|x| ab().render(x)).collect();
        assert_eq!(words, vec!["1", "ab", "aabb", "aaabbb"]);
    }

    #[test]
    fn nfa_roundtrip() {
        let a = ab();
        let n = automata::star(&Nfa::word(&a, &a.parse_word("ab").unwrap()));
        let g = Cfg::from_nfa(&n);
        assert_eq!(g.enumerate(6), n.enumerate(6));
    }
}
