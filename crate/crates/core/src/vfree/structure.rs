//! G = F b₁ ∪ … ∪ F b_m with twists φ_i(u) = b_i u b_i⁻¹ and a coset
//! multiplication table b_i b_j = u_ij b_k.
//!
//! ```text
//! free: a,b
//! cosets: e,t          # the first coset is the identity
//! phi t: a -> b, b -> a
//! mul t t = 1 @ e
//! ```

use std::fmt;

use crate::automata::{concat, remove_epsilon, trim, union, Nfa};
use crate::error::{Error, Result};
use crate::free_subsets::benois_saturate;
use crate::oracles::free_ball;
use crate::words::{free_reduce, invert, Alphabet, Letter, ReducedWord, Word};

/// v b_i with v freely reduced over Ã.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NormalForm {
    pub fpart: ReducedWord,
    pub coset: usize,
}

#[derive(Clone, Debug)]
pub struct VfStructure {
    free: Alphabet,
    coset_names: Vec<String>,
    gens: Alphabet,
    phi: Vec<Vec<Word>>,
    table: Vec<Vec<(Word, usize)>>,
    inverse: Vec<(Word, usize)>,
}

impl VfStructure {
    /// Parses and validates (φ invertibility checked on the ball of radius 4).
    pub fn parse(text: &str) -> Result<VfStructure> {
        let s = Self::parse_unchecked(text)?;
        s.validate(4)?;
        Ok(s)
    }

    /// Parses without the associativity and invertibility checks.
    pub fn parse_unchecked(text: &str) -> Result<VfStructure> {
        let mut free: Option<Alphabet> = None;
        let mut cosets: Option<Vec<String>> = None;
        let mut phis: Vec<(usize, String, String)> = Vec::new();
        let mut muls: Vec<(usize, String, String, String, String)> = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            let line_no = no + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("free:") {
                free = Some(
                    Alphabet::new(rest.trim()).map_err(|e| Error::parse(line_no, e.to_string()))?,
                );
            } else if let Some(rest) = line.strip_prefix("cosets:") {
                cosets = Some(
                    rest.split(',')
                        .map(|c| c.trim().to_string())
                        .filter(|c| !c.is_empty())
                        .collect(),
                );
            } else if let Some(rest) = line.strip_prefix("phi ") {
                let (name, maps) = rest
                    .split_once(':')
                    .ok_or_else(|| Error::parse(line_no, "expected `phi <coset>: a -> w, ...`"))?;
                phis.push((line_no, name.trim().to_string(), maps.to_string()));
            } else if let Some(rest) = line.strip_prefix("mul ") {
                let (lhs, rhs) = rest
                    .split_once('=')
                    .ok_or_else(|| Error::parse(line_no, "expected `mul x y = w @ z`"))?;
                let l: Vec<&str> = lhs.split_whitespace().collect();
                let (w, z) = rhs
                    .split_once('@')
                    .ok_or_else(|| Error::parse(line_no, "expected `mul x y = w @ z`"))?;
                if l.len() != 2 {
                    return Err(Error::parse(
                        line_no,
                        "expected two cosets on the left of `=`",
                    ));
                }
                muls.push((
                    line_no,
                    l[0].into(),
                    l[1].into(),
                    w.trim().into(),
                    z.trim().into(),
                ));
            } else {
                return Err(Error::parse(line_no, format!("unrecognized line {line:?}")));
            }
        }
        let free = free.ok_or_else(|| Error::parse(0, "missing `free:` line"))?;
        let cosets = cosets.unwrap_or_else(|| vec!["e".into()]);
        let m = cosets.len();
        let coset_of = |name: &str, line: usize| -> Result<usize> {
            cosets
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| Error::parse(line, format!("unknown coset {name:?}")))
        };
        let mut gen_chars = free.symbols().to_vec();
        for name in &cosets[1..] {
            let mut cs = name.chars();
            match (cs.next(), cs.next()) {
                (Some(c), None) if c.is_ascii_lowercase() && !gen_chars.contains(&c) => {
                    gen_chars.push(c)
                }
                _ => {
                    return Err(Error::Malformed(format!(
                        "coset {name:?} must be a single new lowercase letter"
                    )))
                }
            }
        }
        let gens = Alphabet::from_chars(gen_chars)?;

        let identity_images: Vec<Word> = (0..free.rank())
            .map(|g| Word::from_letters(vec![Letter::new(g, false)]))
            .collect();
        let mut phi = vec![identity_images; m];
        for (line, name, maps) in phis {
            let i = coset_of(&name, line)?;
            if i == 0 {
                return Err(Error::parse(line, "the identity coset has no twist"));
            }
            for part in maps.split(',').filter(|p| !p.trim().is_empty()) {
                let (x, img) = part.split_once("->").ok_or_else(|| {
                    Error::parse(line, format!("expected `a -> w`, got {part:?}"))
                })?;
                let x = x.trim();
                let g = match x.chars().collect::<Vec<_>>().as_slice() {
                    [c] if c.is_ascii_lowercase() => free.position(*c),
                    _ => None,
                }
                .ok_or_else(|| Error::parse(line, format!("{x:?} is not a free generator")))?;
                let w = free
                    .parse_word(img.trim())
                    .map_err(|e| Error::parse(line, e.to_string()))?;
                phi[i][g] = free_reduce(&w).into_word();
            }
        }
        let mut table: Vec<Vec<Option<(Word, usize)>>> = vec![vec![None; m]; m];
        for (j, cell) in table[0].iter_mut().enumerate() {
            *cell = Some((Word::empty(), j));
        }
        for (j, row) in table.iter_mut().enumerate() {
            row[0] = Some((Word::empty(), j));
        }
        for (line, x, y, w, z) in muls {
            let (i, j, k) = (
                coset_of(&x, line)?,
                coset_of(&y, line)?,
                coset_of(&z, line)?,
            );
            let u = free_reduce(
                &free
                    .parse_word(&w)
                    .map_err(|e| Error::parse(line, e.to_string()))?,
            )
            .into_word();
            if (i == 0 || j == 0) && table[i][j] != Some((u.clone(), k)) {
                return Err(Error::parse(
                    line,
                    "products with the identity coset are fixed",
                ));
            }
            table[i][j] = Some((u, k));
        }
        let mut full = Vec::with_capacity(m);
        for (i, row) in table.into_iter().enumerate() {
            let mut r = Vec::with_capacity(m);
            for (j, e) in row.into_iter().enumerate() {
                r.push(e.ok_or_else(|| {
                    Error::Malformed(format!("missing `mul {} {} = ...`", cosets[i], cosets[j]))
                })?);
            }
            full.push(r);
        }
        let mut s = VfStructure {
            free,
            coset_names: cosets,
            gens,
            phi,
            table: full,
            inverse: Vec::new(),
        };
        s.inverse = (0..m)
            .map(|i| {
                let j = (0..m).find(|&j| s.table[i][j].1 == 0).ok_or_else(|| {
                    Error::Validation(format!(
                        "coset {} has no inverse in the table",
                        s.coset_names[i]
                    ))
                })?;
                let u = invert(&s.table[i][j].0);
                Ok((s.apply_phi(j, &u).into_word(), j))
            })
            .collect::<Result<_>>()?;
        Ok(s)
    }

    /// Associativity on all triples of generators and their inverses,
    /// x x⁻¹ = 1, and invertibility of each φ_i on the ball of radius `radius`.
    pub fn validate(&self, radius: usize) -> Result<()> {
        let letters: Vec<NormalForm> = self
            .gens
            .letters()
            .map(|x| self.letter_element(x))
            .collect();
        for (xi, x) in letters.iter().enumerate() {
            let back = self.mul(x, &letters[xi ^ 1]);
            if back != self.identity() {
                return Err(Error::Validation(format!(
                    "{} times its inverse is not the identity",
                    self.gens.letter_char(Letter::from_index(xi))
                )));
            }
            for y in &letters {
                for z in &letters {
                    if self.mul(&self.mul(x, y), z) != self.mul(x, &self.mul(y, z)) {
                        return Err(Error::Validation(
                            "multiplication table is not associative".into(),
                        ));
                    }
                }
            }
        }
        let ball = free_ball(&self.free, radius)?;
        for i in 1..self.num_cosets() {
            for g in 0..self.free.rank() {
                let target = [Letter::new(g, false)];
                if !ball
                    .iter()
                    .any(|w| self.apply_phi(i, w).as_word().letters() == target)
                {
                    return Err(Error::Validation(format!(
                        "phi {}: no preimage of {} within radius {radius}",
                        self.coset_names[i],
                        self.free.letter_char(target[0])
                    )));
                }
            }
        }
        Ok(())
    }

    /// The free alphabet A.
    pub fn free_alphabet(&self) -> &Alphabet {
        &self.free
    }

    /// The standard generators B = A ∪ {b₂, …, b_m}; letters of A keep their indices.
    pub fn generators(&self) -> &Alphabet {
        &self.gens
    }

    pub fn num_cosets(&self) -> usize {
        self.coset_names.len()
    }

    pub fn coset_name(&self, i: usize) -> &str {
        &self.coset_names[i]
    }

    /// The letter b_i of B (None for the identity coset).
    pub fn coset_letter(&self, i: usize) -> Option<Letter> {
        (i > 0).then(|| Letter::new(self.free.rank() + i - 1, false))
    }

    pub fn twist(&self, i: usize, generator: usize) -> &Word {
        &self.phi[i][generator]
    }

    /// b_i b_j = u b_k as (u, k).
    pub fn product(&self, i: usize, j: usize) -> (&Word, usize) {
        let (u, k) = &self.table[i][j];
        (u, *k)
    }

    /// φ_i(w), freely reduced.
    pub fn apply_phi(&self, i: usize, w: &[Letter]) -> ReducedWord {
        let mut out = Vec::new();
        for &x in w {
            let img = &self.phi[i][x.generator()];
            if x.is_inverse() {
                out.extend(invert(img).iter());
            } else {
                out.extend(img.iter());
            }
        }
        free_reduce(&out)
    }

    pub fn identity(&self) -> NormalForm {
        NormalForm {
            fpart: ReducedWord::empty(),
            coset: 0,
        }
    }

    /// (v₁ b_i)(v₂ b_j) = v₁ φ_i(v₂) u_ij b_k.
    pub fn mul(&self, g: &NormalForm, h: &NormalForm) -> NormalForm {
        let (u, k) = &self.table[g.coset][h.coset];
        let mid = self.apply_phi(g.coset, &h.fpart);
        let w: Vec<Letter> = g
            .fpart
            .iter()
            .chain(mid.iter())
            .chain(u.iter())
            .copied()
            .collect();
        NormalForm {
            fpart: free_reduce(&w),
            coset: *k,
        }
    }

    pub fn inverse(&self, g: &NormalForm) -> NormalForm {
        let (w, j) = &self.inverse[g.coset];
        let binv = NormalForm {
            fpart: ReducedWord::new(w.clone()).expect("reduced"),
            coset: *j,
        };
        let vinv = NormalForm {
            fpart: free_reduce(&invert(&g.fpart)),
            coset: 0,
        };
        self.mul(&binv, &vinv)
    }

    /// The element represented by a single letter of B̃.
    pub fn letter_element(&self, x: Letter) -> NormalForm {
        let rank = self.free.rank();
        if x.generator() < rank {
            return NormalForm {
                fpart: free_reduce(&[x]),
                coset: 0,
            };
        }
        let i = x.generator() - rank + 1;
        if x.is_inverse() {
            let (w, j) = &self.inverse[i];
            NormalForm {
                fpart: ReducedWord::new(w.clone()).expect("reduced"),
                coset: *j,
            }
        } else {
            NormalForm {
                fpart: ReducedWord::empty(),
                coset: i,
            }
        }
    }

    /// Normal form of a word over B̃.
    pub fn normal_form(&self, w: &[Letter]) -> Result<NormalForm> {
        self.gens.validate(w)?;
        Ok(w.iter().fold(self.identity(), |g, &x| {
            self.mul(&g, &self.letter_element(x))
        }))
    }

    /// The word v b_i over B̃ (v alone for the identity coset).
    pub fn nf_word(&self, g: &NormalForm) -> Word {
        let mut w = g.fpart.as_word().clone();
        if let Some(b) = self.coset_letter(g.coset) {
            w.push(b);
        }
        w
    }

    /// "v @ name", e.g. `A @ b`.
    pub fn render_nf(&self, g: &NormalForm) -> String {
        format!(
            "{} @ {}",
            self.free.render(&g.fpart),
            self.coset_names[g.coset]
        )
    }

    pub fn vf_equal(&self, w1: &[Letter], w2: &[Letter]) -> Result<bool> {
        Ok(self.normal_form(w1)? == self.normal_form(w2)?)
    }

    /// C = max(M, N), at least 1.
    pub fn constant_c(&self) -> usize {
        let m = self
            .phi
            .iter()
            .flatten()
            .map(|w| w.len())
            .max()
            .unwrap_or(0);
        let n = self
            .table
            .iter()
            .flatten()
            .map(|(u, _)| u.len())
            .max()
            .unwrap_or(0);
        m.max(n).max(1)
    }

    /// Languages L_i over Ã with K π-equal to ⋃ L_i b_i.
    ///
    /// Product of K with the coset index: in coset j a free letter x emits
    /// φ_j(x), and a coset letter whose element is w b_r emits φ_j(w) u_jr
    /// and moves to coset k_jr.
    pub fn split_cosets(&self, k: &Nfa) -> Result<Vec<Nfa>> {
        if k.alphabet() != &self.gens {
            return Err(Error::AlphabetMismatch {
                left: k.alphabet().to_string(),
                right: self.gens.to_string(),
            });
        }
        let k = trim(&remove_epsilon(k));
        let m = self.num_cosets();
        let n = k.num_states();
        let id = |q: usize, j: usize| q * m + j;
        let mut base = Nfa::with_states(self.free.clone(), n * m);
        for (p, l, q) in k.edges() {
            let Some(x) = l.and_then(|t| t.letter()) else {
                continue;
            };
            let e = self.letter_element(x);
            for j in 0..m {
                let g = self.mul(
                    &NormalForm {
                        fpart: ReducedWord::empty(),
                        coset: j,
                    },
                    &e,
                );
                // the emitted free part is the product's free part, since the prefix is empty
                base.add_path(id(p, j), &g.fpart, id(q, g.coset));
            }
        }
        for &i in k.initial() {
            base.set_initial(id(i, 0));
        }
        Ok((0..m)
            .map(|c| {
                let mut li = base.clone();
                for &f in k.finals() {
                    li.set_final(id(f, c));
                }
                trim(&li)
            })
            .collect())
    }

    /// ⋃ᵢ L̄ᵢ bᵢ over B̃: the normal forms of the elements of Kπ.
    pub fn normal_form_language(&self, k: &Nfa) -> Result<Nfa> {
        let mut out = Nfa::empty_language(&self.gens);
        for (i, li) in self.split_cosets(k)?.iter().enumerate() {
            let sat = benois_saturate(li).with_alphabet(&self.gens)?;
            let part = match self.coset_letter(i) {
                None => sat,
                Some(b) => concat(&sat, &Nfa::word(&self.gens, &[b]))?,
            };
            out = union(&out, &part)?;
        }
        Ok(trim(&out))
    }
}

impl fmt::Display for VfStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let syms: Vec<String> = self.free.symbols().iter().map(|c| c.to_string()).collect();
        writeln!(f, "free: {}", syms.join(","))?;
        writeln!(f, "cosets: {}", self.coset_names.join(","))?;
        for i in 1..self.num_cosets() {
            let maps: Vec<String> = (0..self.free.rank())
                .map(|g| {
                    format!(
                        "{} -> {}",
                        self.free.symbols()[g],
                        self.free.render(&self.phi[i][g])
                    )
                })
                .collect();
            writeln!(f, "phi {}: {}", self.coset_names[i], maps.join(", "))?;
        }
        for i in 1..self.num_cosets() {
            for j in 1..self.num_cosets() {
                let (u, k) = &self.table[i][j];
                writeln!(
                    f,
                    "mul {} {} = {} @ {}",
                    self.coset_names[i],
                    self.coset_names[j],
                    self.free.render(u),
                    self.coset_names[*k]
                )?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfree::tests::{dinf, swap};

    fn nf(s: &VfStructure, w: &str) -> String {
        s.render_nf(
            &s.normal_form(&s.generators().parse_word(w).unwrap())
                .unwrap(),
        )
    }

    #[test]
    fn dinf_normal_forms() {
        let s = dinf();
        assert_eq!(nf(&s, "ba"), "A @ b");
        assert_eq!(nf(&s, "bb"), "1 @ e");
        assert_eq!(nf(&s, "aba"), "1 @ b");
        assert_eq!(nf(&s, "B"), "1 @ b");
        assert!(s.normal_form(&[Letter::new(5, false)]).is_err());
    }

    #[test]
    fn constants() {
        assert_eq!(dinf().constant_c(), 1);
        assert_eq!(swap().constant_c(), 1);
        let s = VfStructure::parse_unchecked(
            "free: a,b\ncosets: e,t\nphi t: a -> aba\nmul t t = 1 @ e\n",
        )
        .unwrap();
        assert_eq!(s.constant_c(), 3);
    }

    #[test]
    fn validation() {
        assert!(
            VfStructure::parse("free: a\ncosets: e,b\nphi b: a -> aa\nmul b b = 1 @ e\n").is_err()
        );
        assert!(VfStructure::parse("free: a\ncosets: e,b\nphi b: a -> A\n").is_err());
        // t² = a is inconsistent with φ_t(a) = a⁻¹
        assert!(
            VfStructure::parse("free: a\ncosets: e,t\nphi t: a -> A\nmul t t = a @ e\n").is_err()
        );
        let s = swap();
        assert!(VfStructure::parse(&s.to_string()).is_ok());
    }

    fn lang(s: &VfStructure, n: &Nfa, k: usize, alpha: &Alphabet) -> Vec<String> {
        let _ = s;
        n.enumerate(k).iter().map(|w| alpha.render(w)).collect()
    }

    #[test]
    fn split_examples() {
        let s = dinf();
        let g = s.generators();
        let words = |ws: &[&str]| {
            let v: Vec<Word> = ws.iter().map(|w| g.parse_word(w).unwrap()).collect();
            Nfa::words(g, &v)
        };
        let a = s.free_alphabet().clone();
        let parts = s.split_cosets(&words(&["ba"])).unwrap();
        assert!(benois_saturate(&parts[0]).is_empty());
        assert_eq!(lang(&s, &benois_saturate(&parts[1]), 4, &a), vec!["A"]);
        let parts = s.split_cosets(&words(&["a"])).unwrap();
        assert_eq!(lang(&s, &benois_saturate(&parts[0]), 4, &a), vec!["a"]);
        assert!(parts[1].is_empty());
        let parts = s.split_cosets(&words(&["b", "ab"])).unwrap();
        assert!(parts[0].is_empty());
        assert_eq!(lang(&s, &benois_saturate(&parts[1]), 4, &a), vec!["1", "a"]);
    }

    #[test]
    fn normal_form_language_examples() {
        let s = dinf();
        let g = s.generators().clone();
        let l = s
            .normal_form_language(&Nfa::word(&g, &g.parse_word("ba").unwrap()))
            .unwrap();
        assert_eq!(lang(&s, &l, 4, &g), vec!["Ab"]);
        assert!(s
            .normal_form_language(&Nfa::empty_language(&g))
            .unwrap()
            .is_empty());
        let astar = Nfa::word_star(&g, &g.parse_word("a").unwrap());
        assert_eq!(
            lang(&s, &s.normal_form_language(&astar).unwrap(), 4, &g),
            vec!["1", "a", "aa", "aaa", "aaaa"]
        );
    }
}
