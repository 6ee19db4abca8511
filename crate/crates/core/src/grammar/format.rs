//! Grammar text format, one production per line:
//!
//! ```text
//! alphabet: a,b          # optional; otherwise inferred from the terminals
//! S -> a S A | $
//! S -> [N1] b | 1        # `1` is the empty body
//! ```
//!
//! The head of the first production is the start symbol. A token that
//! appears as a head is a nonterminal; every other token is read as a
//! string of terminals (letters, upper case for inverses, and `$`).

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{Cfg, Sym};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Term};

impl Cfg {
    pub fn to_text(&self) -> String {
        let g = self.trim();
        let names: Vec<String> = (0..g.num_nonterminals())
            .map(|i| {
                let n = g.name(i);
                let single = n.chars().count() == 1;
                let clash = single
                    && n.chars().all(|c| {
                        c == '$'
                            || c == '1'
                            || g.alphabet().position(c.to_ascii_lowercase()).is_some()
                    });
                let bad = n.is_empty()
                    || n == "eps"
                    || n.contains(|c: char| c.is_whitespace() || c == '|' || c == '#')
                    || n.contains("->");
                if clash || bad {
                    format!("[N{i}]")
                } else {
                    n.to_string()
                }
            })
            .collect();
        let distinct: std::collections::HashSet<&String> = names.iter().collect();
        let names: Vec<String> = if distinct.len() == names.len() {
            names
        } else {
            (0..names.len()).map(|i| format!("[N{i}]")).collect()
        };
        let mut s = String::new();
        let syms: Vec<String> = g
            .alphabet()
            .symbols()
            .iter()
            .map(|c| c.to_string())
            .collect();
        writeln!(s, "alphabet: {}", syms.join(",")).unwrap();
        for head in 0..g.num_nonterminals() {
            let bodies: Vec<String> = g
                .rules()
                .iter()
                .filter(|r| r.head == head)
                .map(|r| {
                    if r.body.is_empty() {
                        return "1".to_string();
                    }
                    r.body
                        .iter()
                        .map(|sym| match *sym {
                            Sym::T(t) => g.alphabet().term_char(t).to_string(),
                            Sym::N(n) => names[n].clone(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .collect();
            if !bodies.is_empty() {
                writeln!(s, "{} -> {}", names[head], bodies.join(" | ")).unwrap();
            }
        }
        if g.rules().is_empty() {
            s.push_str("# empty language\n");
        }
        s
    }

    pub fn parse(text: &str) -> Result<Cfg> {
        let mut alphabet: Option<Alphabet> = None;
        let mut prods: Vec<(usize, String, Vec<Vec<String>>)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("alphabet:") {
                alphabet = Some(
                    Alphabet::new(rest.trim()).map_err(|e| Error::parse(line_no, e.to_string()))?,
                );
                continue;
            }
            let (head, rhs) = line
                .split_once("->")
                .ok_or_else(|| Error::parse(line_no, "expected `HEAD -> body | body`"))?;
            let head = head.trim();
            if head.is_empty() || head.contains(char::is_whitespace) {
                return Err(Error::parse(line_no, format!("bad head {head:?}")));
            }
            let bodies = rhs
                .split('|')
                .map(|b| b.split_whitespace().map(str::to_string).collect())
                .collect();
            prods.push((line_no, head.to_string(), bodies));
        }
        if prods.is_empty() {
            return match alphabet {
                Some(a) => Ok(Cfg::empty(&a)),
                None => Err(Error::parse(0, "no productions and no alphabet")),
            };
        }
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut heads = Vec::new();
        for (_, h, _) in &prods {
            if !index.contains_key(h) {
                index.insert(h.clone(), heads.len());
                heads.push(h.clone());
            }
        }
        let alphabet = match alphabet {
            Some(a) => a,
            None => {
                let mut chars: Vec<char> = prods
                    .iter()
                    .flat_map(|(_, _, bodies)| bodies.iter().flatten())
                    .filter(|t| !index.contains_key(*t) && !is_empty_token(t))
                    .flat_map(|t| t.chars())
                    .filter(|c| c.is_ascii_alphabetic())
                    .map(|c| c.to_ascii_lowercase())
                    .collect();
                chars.sort_unstable();
                chars.dedup();
                if chars.is_empty() {
                    chars.push('a');
                }
                Alphabet::from_chars(chars)?
            }
        };
        let mut g = Cfg::new(&alphabet);
        g.names = heads;
        for (line_no, h, bodies) in prods {
            for body in bodies {
                let mut syms = Vec::new();
                if !(body.len() == 1 && is_empty_token(&body[0])) {
                    for tok in &body {
                        if let Some(&n) = index.get(tok) {
                            syms.push(Sym::N(n));
                            continue;
                        }
                        if tok.starts_with('[') {
                            return Err(Error::parse(
                                line_no,
                                format!("nonterminal {tok} has no productions"),
                            ));
                        }
                        for c in tok.chars() {
                            let t = if c == '$' {
                                Term::Marker
                            } else {
                                Term::Letter(
                                    alphabet
                                        .letter(c)
                                        .map_err(|e| Error::parse(line_no, e.to_string()))?,
                                )
                            };
                            syms.push(Sym::T(t));
                        }
                    }
                }
                g.add_rule(index[&h], syms);
            }
        }
        Ok(g)
    }
}

fn is_empty_token(t: &str) -> bool {
    matches!(t, "1" | "ε" | "eps")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_template() {
        let g = Cfg::parse("S -> A S a | $\n").unwrap();
        assert!(g.has_marker());
        let a = g.alphabet().clone();
        let terms = g.enumerate_terms(3);
        let shown: Vec<String> = terms.iter().map(|t| a.render_terms(t)).collect();
        assert_eq!(shown, vec!["$", "A$a"]);
    }

    #[test]
    fn roundtrip_with_auto_names() {
        let g = Cfg::parse("alphabet: a,b\nS -> a [N1] | 1\n[N1] -> S b\n").unwrap();
        let text = g.to_text();
        let again = Cfg::parse(&text).unwrap();
        assert_eq!(g.enumerate(6), again.enumerate(6));
        assert_eq!(g.enumerate(4).len(), 3);
    }

    #[test]
    fn empty_language_round_trips() {
        let g = Cfg::empty(&Alphabet::new("ab").unwrap());
        let again = Cfg::parse(&g.to_text()).unwrap();
        assert!(again.is_empty());
        assert_eq!(again.alphabet(), g.alphabet());
        assert!(Cfg::parse("# nothing\n").is_err());
    }

    #[test]
    fn errors() {
        assert!(matches!(
            Cfg::parse("S a b\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(Cfg::parse("S -> [N4]\n").is_err());
        assert!(Cfg::parse("alphabet: a\nS -> b\n").is_err());
    }
}
