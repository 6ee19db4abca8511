//! The geodesic transducer and the rational languages Geo(K).

use std::collections::HashMap;
use std::fmt::Write as _;

use super::{geodesic_acceptor, Geometry, NormalForm, VfConfig, VfStructure};
use crate::automata::{intersect, minimal, remove_epsilon, trim, Nfa};
use crate::error::{Error, Result};
use crate::words::{invert, Letter, Word};

/// States are the shortlex geodesics of the elements of length ≤ K (state 0
/// is the empty word, initial and final); an edge w -c/u-> v has u geodesic,
/// |u| ≤ 2K + 1 and v representing u⁻¹ w c.
#[derive(Clone, Debug)]
pub struct GeoTransducer {
    alphabet: crate::words::Alphabet,
    k: usize,
    states: Vec<Word>,
    edges: Vec<(usize, Letter, Word, usize)>,
}

impl GeoTransducer {
    pub fn build(geo: &Geometry<'_>, k: usize) -> Result<GeoTransducer> {
        let s = geo.structure();
        let ball = geo.ball(k)?;
        let index: HashMap<NormalForm, usize> = ball
            .iter()
            .enumerate()
            .map(|(i, (g, _, _))| (g.clone(), i))
            .collect();
        let outputs: Vec<(Word, NormalForm)> = geo
            .geodesic_words(2 * k + 1)?
            .into_iter()
            .map(|u| {
                let inv = s.inverse(&geo.eval(&u).expect("generator word"));
                (u, inv)
            })
            .collect();
        let mut edges = Vec::new();
        for (i, (g, _, _)) in ball.iter().enumerate() {
            for c in geo.alphabet().letters() {
                let gc = s.mul(g, geo.letter_element(c));
                for (u, uinv) in &outputs {
                    if let Some(&j) = index.get(&s.mul(uinv, &gc)) {
                        edges.push((i, c, u.clone(), j));
                    }
                }
            }
        }
        Ok(GeoTransducer {
            alphabet: geo.alphabet().clone(),
            k,
            states: ball.into_iter().map(|e| e.2).collect(),
            edges,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn states(&self) -> &[Word] {
        &self.states
    }

    pub fn edges(&self) -> &[(usize, Letter, Word, usize)] {
        &self.edges
    }

    /// 𝔗(L): outputs of the runs from ε to ε whose input lies in L.
    pub fn apply(&self, l: &Nfa) -> Result<Nfa> {
        if l.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: l.alphabet().to_string(),
                right: self.alphabet.to_string(),
            });
        }
        let l = trim(&remove_epsilon(l));
        let t = self.states.len();
        let mut by_input: HashMap<(usize, Letter), Vec<(&Word, usize)>> = HashMap::new();
        for (p, c, u, q) in &self.edges {
            by_input.entry((*p, *c)).or_default().push((u, *q));
        }
        let mut out = Nfa::with_states(self.alphabet.clone(), l.num_states() * t);
        let id = |q: usize, w: usize| q * t + w;
        for (p, lab, q) in l.edges() {
            let Some(c) = lab.and_then(|x| x.letter()) else {
                continue;
            };
            for w in 0..t {
                if let Some(list) = by_input.get(&(w, c)) {
                    for &(u, v) in list {
                        out.add_path(id(p, w), u, id(q, v));
                    }
                }
            }
        }
        for &i in l.initial() {
            out.set_initial(id(i, 0));
        }
        for &f in l.finals() {
            out.set_final(id(f, 0));
        }
        Ok(trim(&out))
    }

    pub fn to_text(&self) -> String {
        let a = &self.alphabet;
        let mut s = String::new();
        let syms: Vec<String> = a.symbols().iter().map(|c| c.to_string()).collect();
        writeln!(s, "alphabet: {}", syms.join(",")).unwrap();
        writeln!(s, "ftc: {}", self.k).unwrap();
        for (i, w) in self.states.iter().enumerate() {
            writeln!(s, "state: {i} {}", a.render(w)).unwrap();
        }
        for (p, c, u, q) in &self.edges {
            writeln!(s, "edge: {p} {}|{} {q}", a.letter_char(*c), a.render(u)).unwrap();
        }
        s
    }
}

pub fn build_transducer(geo: &Geometry<'_>, cfg: &VfConfig) -> Result<GeoTransducer> {
    GeoTransducer::build(geo, cfg.ftc)
}

pub fn apply_transducer(t: &GeoTransducer, l: &Nfa) -> Result<Nfa> {
    t.apply(l)
}

/// Geo(L π) = Geo(G) ∩ 𝔗(L) for a language L of quasigeodesics over the
/// geometry's generators.
pub fn geo_of_quasigeodesics(geo: &Geometry<'_>, l: &Nfa, cfg: &VfConfig) -> Result<Nfa> {
    let acceptor = geodesic_acceptor(geo, cfg.cone_radius)?;
    let image = build_transducer(geo, cfg)?.apply(l)?;
    Ok(minimal(&intersect(&acceptor, &image)?))
}

/// Geo_B(Kπ) for a rational subset K given over B̃.
pub fn geo_of_rational(s: &VfStructure, k: &Nfa, cfg: &VfConfig) -> Result<Nfa> {
    let geo = Geometry::standard(s, cfg.budget);
    let nf = s.normal_form_language(k)?;
    geo_of_quasigeodesics(&geo, &nf, cfg)
}

/// Replaces every x-edge by a path labelled with the geodesic image of x
/// over the new generators (x⁻¹ by the inverse image).
///
/// `images[g]` is the image of the g-th generator of `from`. Returns the
/// converted automaton and N, the longest image.
pub fn change_generators(
    from: &Geometry<'_>,
    to: &Geometry<'_>,
    l: &Nfa,
    images: &[Word],
) -> Result<(Nfa, usize)> {
    if l.alphabet() != from.alphabet() {
        return Err(Error::AlphabetMismatch {
            left: l.alphabet().to_string(),
            right: from.alphabet().to_string(),
        });
    }
    if images.len() != from.alphabet().rank() {
        return Err(Error::Malformed(format!(
            "expected {} images, got {}",
            from.alphabet().rank(),
            images.len()
        )));
    }
    for (g, img) in images.iter().enumerate() {
        let x = Letter::new(g, false);
        let name = from.alphabet().letter_char(x);
        if &to.eval(img)? != from.letter_element(x) {
            return Err(Error::Validation(format!(
                "image of {name} does not represent {name}"
            )));
        }
        if !to.is_geodesic(img)? {
            return Err(Error::Validation(format!(
                "image {} of {name} is not geodesic",
                to.alphabet().render(img)
            )));
        }
    }
    let n = images.iter().map(|w| w.len()).max().unwrap_or(0);
    let mut out = Nfa::with_states(to.alphabet().clone(), l.num_states());
    for (p, lab, q) in l.edges() {
        match lab.and_then(|t| t.letter()) {
            None => out.add_eps(p, q),
            Some(x) => {
                let img = &images[x.generator()];
                let path = if x.is_inverse() {
                    invert(img)
                } else {
                    img.clone()
                };
                out.add_path(p, &path, q);
            }
        }
    }
    for &i in l.initial() {
        out.set_initial(i);
    }
    for &f in l.finals() {
        out.set_final(f);
    }
    Ok((trim(&out), n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfree::tests::dinf;
    use crate::vfree::DEFAULT_BUDGET;

    fn cfg() -> VfConfig {
        VfConfig {
            ftc: 1,
            cone_radius: 2,
            ..VfConfig::default()
        }
    }

    fn render(s: &VfStructure, n: &Nfa, k: usize) -> Vec<String> {
        n.enumerate(k)
            .iter()
            .map(|w| s.generators().render(w))
            .collect()
    }

    #[test]
    fn transducer_edges_are_sound() {
        let s = dinf();
        let geo = Geometry::standard(&s, DEFAULT_BUDGET);
        let t = build_transducer(&geo, &cfg()).unwrap();
        assert_eq!(t.states()[0], Word::empty());
        for (p, c, u, q) in t.edges() {
            let lhs = geo.eval(&t.states()[*p].concat(&[*c])).unwrap();
            let rhs = geo.eval(&u.concat(&t.states()[*q])).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn geo_examples() {
        let s = dinf();
        let g = s.generators();
        let one = |w: &str| Nfa::word(g, &g.parse_word(w).unwrap());
        let geo = Geometry::standard(&s, DEFAULT_BUDGET);
        let r = geo_of_quasigeodesics(&geo, &one("aaa"), &cfg()).unwrap();
        assert!(r.accepts(&g.parse_word("aaa").unwrap()));
        let r = geo_of_quasigeodesics(&geo, &one("bba"), &cfg()).unwrap();
        assert_eq!(render(&s, &r, 4), vec!["a"]);
        assert!(geo_of_rational(&s, &Nfa::empty_language(g), &cfg())
            .unwrap()
            .is_empty());
        let r = geo_of_rational(&s, &one("bab"), &cfg()).unwrap();
        assert_eq!(render(&s, &r, 5), vec!["A"]);
        let r = geo_of_rational(&s, &one("b"), &cfg()).unwrap();
        assert_eq!(render(&s, &r, 5), vec!["b", "B"]);
    }

    #[test]
    fn identity_change() {
        let s = dinf();
        let geo = Geometry::standard(&s, DEFAULT_BUDGET);
        let g = s.generators();
        let l = Nfa::word_star(g, &g.parse_word("ab").unwrap());
        let images: Vec<Word> = g
            .letters()
            .step_by(2)
            .map(|x| Word::from_letters(vec![x]))
            .collect();
        let (out, n) = change_generators(&geo, &geo, &l, &images).unwrap();
        assert_eq!(n, 1);
        assert_eq!(out.enumerate(6), l.enumerate(6));
    }
}
