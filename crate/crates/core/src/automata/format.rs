//! Line-based text format and DOT export.
//!
//! ```text
//! alphabet: a,b          # optional; otherwise inferred from the edges
//! states: 2
//! initial: 0
//! final: 1
//! edge: 0 a 1
//! edge: 1 eps 0
//! ```

use std::fmt::Write as _;

use super::Nfa;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Term};

impl Nfa {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let a = self.alphabet();
        let syms: Vec<String> = a.symbols().iter().map(|c| c.to_string()).collect();
        writeln!(s, "alphabet: {}", syms.join(",")).unwrap();
        writeln!(s, "states: {}", self.num_states()).unwrap();
        writeln!(s, "initial: {}", join(self.initial().iter())).unwrap();
        writeln!(s, "final: {}", join(self.finals().iter())).unwrap();
        for (p, l, q) in self.edges() {
            let label = match l {
                None => "eps".to_string(),
                Some(t) => a.term_char(t).to_string(),
            };
            writeln!(s, "edge: {p} {label} {q}").unwrap();
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph nfa {\n  rankdir=LR;\n  __start [shape=point];\n");
        for q in 0..self.num_states() {
            let shape = if self.finals().contains(&q) {
                "doublecircle"
            } else {
                "circle"
            };
            writeln!(s, "  {q} [shape={shape}];").unwrap();
        }
        for &i in self.initial() {
            writeln!(s, "  __start -> {i};").unwrap();
        }
        for (p, l, q) in self.edges() {
            let label = match l {
                None => "ε".to_string(),
                Some(t) => self.alphabet().term_char(t).to_string(),
            };
            writeln!(s, "  {p} -> {q} [label=\"{label}\"];").unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn parse(text: &str) -> Result<Nfa> {
        let mut alphabet: Option<Alphabet> = None;
        let mut states: Option<usize> = None;
        let mut initial = Vec::new();
        let mut finals = Vec::new();
        let mut edges: Vec<(usize, usize, String, usize)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, rest) = line.split_once(':').ok_or_else(|| {
                Error::parse(line_no, format!("expected `key: value`, got {line:?}"))
            })?;
            let rest = rest.trim();
            match key.trim() {
                "alphabet" => {
                    alphabet = Some(
                        Alphabet::new(rest).map_err(|e| Error::parse(line_no, e.to_string()))?,
                    )
                }
                "states" => {
                    states = Some(
                        rest.parse()
                            .map_err(|_| Error::parse(line_no, "bad state count"))?,
                    )
                }
                "initial" => initial = parse_list(rest, line_no)?,
                "final" => finals = parse_list(rest, line_no)?,
                "edge" => {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    if parts.len() != 3 {
                        return Err(Error::parse(
                            line_no,
                            "edge needs `<src> <letter|eps|$> <dst>`",
                        ));
                    }
                    let p = parts[0]
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad source state"))?;
                    let q = parts[2]
                        .parse()
                        .map_err(|_| Error::parse(line_no, "bad target state"))?;
                    edges.push((line_no, p, parts[1].to_string(), q));
                }
                other => return Err(Error::parse(line_no, format!("unknown key {other:?}"))),
            }
        }
        let n = states.ok_or_else(|| Error::parse(0, "missing `states:` line"))?;
        let alphabet = match alphabet {
            Some(a) => a,
            None => {
                let mut chars: Vec<char> = edges
                    .iter()
                    .filter(|e| e.2.len() == 1 && e.2 != "$")
                    .map(|e| e.2.chars().next().unwrap().to_ascii_lowercase())
                    .collect();
                chars.sort_unstable();
                chars.dedup();
                if chars.is_empty() {
                    chars.push('a');
                }
                Alphabet::from_chars(chars)?
            }
        };
        let mut nfa = Nfa::with_states(alphabet.clone(), n);
        for (line_no, p, label, q) in edges {
            if p >= n || q >= n {
                return Err(Error::parse(
                    line_no,
                    format!("edge endpoint outside 0..{n}"),
                ));
            }
            let l = match label.as_str() {
                "eps" | "ε" => None,
                "$" => Some(Term::Marker),
                s if s.chars().count() == 1 => Some(Term::Letter(
                    alphabet
                        .letter(s.chars().next().unwrap())
                        .map_err(|e| Error::parse(line_no, e.to_string()))?,
                )),
                s => return Err(Error::parse(line_no, format!("bad edge label {s:?}"))),
            };
            nfa.add_label(p, l, q);
        }
        for i in initial {
            if i >= n {
                return Err(Error::parse(0, format!("initial state {i} outside 0..{n}")));
            }
            nfa.set_initial(i);
        }
        for f in finals {
            if f >= n {
                return Err(Error::parse(0, format!("final state {f} outside 0..{n}")));
            }
            nfa.set_final(f);
        }
        Ok(nfa)
    }
}

fn join<'a>(it: impl Iterator<Item = &'a usize>) -> String {
    it.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str, line: usize) -> Result<Vec<usize>> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Error::parse(line, format!("bad state {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        let text = "states: 2\ninitial: 0\nfinal: 1\nedge: 0 a 1\nedge: 1 eps 0\nedge: 1 B 1\n";
        let n = Nfa::parse(text).unwrap();
        assert_eq!(n.alphabet().symbols(), &['a', 'b']);
        let again = Nfa::parse(&n.to_text()).unwrap();
        assert_eq!(n.enumerate(4), again.enumerate(4));
        assert!(n.to_dot().contains("doublecircle"));
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Nfa::parse("initial: 0\n"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            Nfa::parse("states: 1\nedge: 0 a 3\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Nfa::parse("states: 1\nalphabet: a\nedge: 0 b 0\n").is_err());
    }
}
