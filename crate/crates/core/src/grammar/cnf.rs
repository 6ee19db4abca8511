//! Chomsky normal form, CYK membership and bounded enumeration.

use std::collections::{HashMap, HashSet};

use super::{Cfg, Rule, Sym};
use crate::words::{shortlex, Alphabet, Letter, Term, Word};

/// A grammar in Chomsky normal form: A → B C, A → t, plus a flag for ε.
#[derive(Clone, Debug)]
pub struct Cnf {
    alphabet: Alphabet,
    num_nonterminals: usize,
    start: usize,
    accepts_empty: bool,
    terminal_rules: Vec<(usize, Term)>,
    binary_rules: Vec<(usize, usize, usize)>,
    trace: Vec<String>,
}

impl Cnf {
    pub fn from_cfg(g: &Cfg) -> Cnf {
        let mut trace = Vec::new();
        let g = g.trim();
        trace.push(format!(
            "input: {} nonterminals, {} rules",
            g.num_nonterminals(),
            g.rules.len()
        ));
        let alphabet = g.alphabet.clone();
        let mut count = g.num_nonterminals();
        let mut fresh = || {
            count += 1;
            count - 1
        };

        // START
        let start = fresh();
        let mut rules: Vec<Rule> = g.rules.clone();
        rules.push(Rule {
            head: start,
            body: vec![Sym::N(g.start)],
        });

        // TERM
        let mut lifted: HashMap<Term, usize> = HashMap::new();
        let mut extra = Vec::new();
        for r in rules.iter_mut() {
            if r.body.len() < 2 {
                continue;
            }
            for s in r.body.iter_mut() {
                if let Sym::T(t) = *s {
                    let n = *lifted.entry(t).or_insert_with(|| {
                        let n = fresh();
                        extra.push(Rule {
                            head: n,
                            body: vec![Sym::T(t)],
                        });
                        n
                    });
                    *s = Sym::N(n);
                }
            }
        }
        rules.extend(extra);
        trace.push(format!("TERM: {} terminal nonterminals", lifted.len()));

        // BIN
        let mut binary: Vec<Rule> = Vec::with_capacity(rules.len());
        for r in rules {
            if r.body.len() <= 2 {
                binary.push(r);
                continue;
            }
            let mut head = r.head;
            let k = r.body.len();
            for i in 0..k - 2 {
                let next = fresh();
                binary.push(Rule {
                    head,
                    body: vec![r.body[i], Sym::N(next)],
                });
                head = next;
            }
            binary.push(Rule {
                head,
                body: vec![r.body[k - 2], r.body[k - 1]],
            });
        }
        trace.push(format!("BIN: {} rules", binary.len()));

        // DEL
        let n = count;
        let mut nullable = vec![false; n];
        loop {
            let mut changed = false;
            for r in &binary {
                if !nullable[r.head]
                    && r.body
                        .iter()
                        .all(|s| matches!(s, Sym::N(x) if nullable[*x]))
                {
                    nullable[r.head] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let accepts_empty = nullable[start];
        let mut del: HashSet<Rule> = HashSet::new();
        for r in &binary {
            match r.body.as_slice() {
                [] => {}
                [x] => {
                    del.insert(Rule {
                        head: r.head,
                        body: vec![*x],
                    });
                }
                [x, y] => {
                    del.insert(r.clone());
                    if matches!(x, Sym::N(a) if nullable[*a]) {
                        del.insert(Rule {
                            head: r.head,
                            body: vec![*y],
                        });
                    }
                    if matches!(y, Sym::N(b) if nullable[*b]) {
                        del.insert(Rule {
                            head: r.head,
                            body: vec![*x],
                        });
                    }
                }
                _ => unreachable!("binarized"),
            }
        }
        trace.push(format!(
            "DEL: {} nullable, {} rules",
            nullable.iter().filter(|&&b| b).count(),
            del.len()
        ));

        // UNIT
        let mut unit: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut proper: Vec<Vec<Rule>> = vec![Vec::new(); n];
        for r in del {
            match r.body.as_slice() {
                [Sym::N(b)] => {
                    if *b != r.head {
                        unit[r.head].push(*b)
                    }
                }
                _ => proper[r.head].push(r),
            }
        }
        let mut terminal_rules = HashSet::new();
        let mut binary_rules = HashSet::new();
        for a in 0..n {
            let mut seen = vec![a];
            let mut stack = vec![a];
            let mut mark: HashSet<usize> = HashSet::from([a]);
            while let Some(x) = stack.pop() {
                for &y in &unit[x] {
                    if mark.insert(y) {
                        seen.push(y);
                        stack.push(y);
                    }
                }
            }
            for b in seen {
                for r in &proper[b] {
                    match r.body.as_slice() {
                        [Sym::T(t)] => {
                            terminal_rules.insert((a, *t));
                        }
                        [Sym::N(x), Sym::N(y)] => {
                            binary_rules.insert((a, *x, *y));
                        }
                        _ => unreachable!("normalized body"),
                    }
                }
            }
        }
        let mut cnf = Cnf {
            alphabet,
            num_nonterminals: n,
            start,
            accepts_empty,
            terminal_rules: terminal_rules.into_iter().collect(),
            binary_rules: binary_rules.into_iter().collect(),
            trace,
        };
        cnf.terminal_rules.sort_unstable();
        cnf.binary_rules.sort_unstable();
        cnf.trace.push(format!(
            "UNIT: {} terminal rules, {} binary rules",
            cnf.terminal_rules.len(),
            cnf.binary_rules.len()
        ));
        cnf
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn accepts_empty(&self) -> bool {
        self.accepts_empty
    }

    pub fn num_rules(&self) -> usize {
        self.terminal_rules.len() + self.binary_rules.len()
    }

    /// Conversion steps with rule counts, for debugging.
    pub fn trace(&self) -> &[String] {
        &self.trace
    }

    pub fn is_empty(&self) -> bool {
        if self.accepts_empty {
            return false;
        }
        let mut gen = vec![false; self.num_nonterminals];
        for &(a, _) in &self.terminal_rules {
            gen[a] = true;
        }
        loop {
            let mut changed = false;
            for &(a, b, c) in &self.binary_rules {
                if !gen[a] && gen[b] && gen[c] {
                    gen[a] = true;
                    changed = true;
                }
            }
            if !changed {
                return !gen[self.start];
            }
        }
    }

    /// Reusable CYK recognizer.
    pub fn parser(&self) -> CykParser<'_> {
        CykParser::new(self)
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let terms: Vec<Term> = w.iter().map(|&l| Term::Letter(l)).collect();
        self.parser().accepts_terms(&terms)
    }

    pub fn enumerate(&self, n: usize) -> Vec<Word> {
        self.enumerate_filtered(n, false)
            .into_iter()
            .map(|w| {
                w.into_iter()
                    .map(|t| t.letter().expect("letters only"))
                    .collect()
            })
            .collect()
    }

    pub fn enumerate_terms(&self, n: usize) -> Vec<Vec<Term>> {
        self.enumerate_filtered(n, true)
    }

    /// Layered dynamic programming: strings of length ℓ derivable from each
    /// nonterminal, built from shorter ones.
    fn enumerate_filtered(&self, n: usize, markers: bool) -> Vec<Vec<Term>> {
        let nt = self.num_nonterminals;
        let mut layers: Vec<Vec<HashSet<Vec<Term>>>> = vec![vec![HashSet::new(); nt]; n + 1];
        if n >= 1 {
            for &(a, t) in &self.terminal_rules {
                if markers || t != Term::Marker {
                    layers[1][a].insert(vec![t]);
                }
            }
        }
        for len in 2..=n {
            let mut cur: Vec<HashSet<Vec<Term>>> = vec![HashSet::new(); nt];
            for &(a, b, c) in &self.binary_rules {
                for l1 in 1..len {
                    let (left, right) = (&layers[l1][b], &layers[len - l1][c]);
                    if left.is_empty() || right.is_empty() {
                        continue;
                    }
                    for s in left {
                        for t in right {
                            let mut w = s.clone();
                            w.extend_from_slice(t);
                            cur[a].insert(w);
                        }
                    }
                }
            }
            layers[len] = cur;
        }
        let mut out: Vec<Vec<Term>> = Vec::new();
        if self.accepts_empty {
            out.push(Vec::new());
        }
        for layer in layers.iter().skip(1) {
            out.extend(layer[self.start].iter().cloned());
        }
        out.sort_by(|a, b| shortlex(a, b));
        out
    }
}

/// CYK table with bitset cells.
pub struct CykParser<'a> {
    cnf: &'a Cnf,
    by_term: HashMap<Term, Vec<usize>>,
    by_left: Vec<Vec<(usize, usize)>>,
    words: usize,
}

impl<'a> CykParser<'a> {
    fn new(cnf: &'a Cnf) -> Self {
        let mut by_term: HashMap<Term, Vec<usize>> = HashMap::new();
        for &(a, t) in &cnf.terminal_rules {
            by_term.entry(t).or_default().push(a);
        }
        let mut by_left = vec![Vec::new(); cnf.num_nonterminals];
        for &(a, b, c) in &cnf.binary_rules {
            by_left[b].push((c, a));
        }
        CykParser {
            cnf,
            by_term,
            by_left,
            words: cnf.num_nonterminals.div_ceil(64),
        }
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        let terms: Vec<Term> = w.iter().map(|&l| Term::Letter(l)).collect();
        self.accepts_terms(&terms)
    }

    pub fn accepts_terms(&self, w: &[Term]) -> bool {
        let n = w.len();
        if n == 0 {
            return self.cnf.accepts_empty;
        }
        let words = self.words;
        // cell (len, i) covers w[i .. i + len]
        let idx = |len: usize, i: usize| (len - 1) * n + i;
        let mut table = vec![0u64; n * n * words];
        let set = |t: &mut [u64], cell: usize, a: usize| t[cell * words + a / 64] |= 1 << (a % 64);
        for (i, t) in w.iter().enumerate() {
            if let Some(heads) = self.by_term.get(t) {
                for &a in heads {
                    set(&mut table, idx(1, i), a);
                }
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let target = idx(len, i);
                for k in 1..len {
                    let left = idx(k, i);
                    let right = idx(len - k, i + k);
                    for wi in 0..words {
                        let mut bits = table[left * words + wi];
                        while bits != 0 {
                            let b = wi * 64 + bits.trailing_zeros() as usize;
                            bits &= bits - 1;
                            for &(c, a) in &self.by_left[b] {
                                if table[right * words + c / 64] >> (c % 64) & 1 == 1 {
                                    set(&mut table, target, a);
                                }
                            }
                        }
                    }
                }
            }
        }
        let s = self.cnf.start;
        table[idx(n, 0) * words + s / 64] >> (s % 64) & 1 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::super::tests::anbn;
    use crate::automata::Nfa;
    use crate::words::Alphabet;

    #[test]
    fn enumeration_matches_cyk_filter() {
        let g = anbn();
        let a = Alphabet::new("ab").unwrap();
        let cnf = g.to_cnf();
        let parser = cnf.parser();
        let filtered: Vec<_> = Nfa::universal(&a)
            .enumerate(5)
            .into_iter()
            .filter(|w| parser.accepts(w))
            .collect();
        assert_eq!(cnf.enumerate(5), filtered);
        assert!(cnf.trace().len() >= 4);
    }
}
