//! Word metric of a virtually free group for a finite generating set, by
//! breadth-first search over the Cayley graph keyed by normal forms.

use std::cell::RefCell;
use std::collections::HashMap;

use num_rational::Ratio;

use super::{NormalForm, VfStructure};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

pub type Rational = Ratio<i64>;

/// Default BFS node budget.
pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Default)]
struct Ball {
    elems: Vec<NormalForm>,
    index: HashMap<NormalForm, usize>,
    dist: Vec<usize>,
    rep: Vec<Word>,
    radius: usize,
    layer_start: usize,
}

/// A structure together with a generating set and a memoized ball around 1.
///
/// The memo lives in a `RefCell`; a `Geometry` is meant to be used by one
/// task at a time.
pub struct Geometry<'s> {
    s: &'s VfStructure,
    alphabet: Alphabet,
    letters: Vec<NormalForm>,
    budget: usize,
    ball: RefCell<Ball>,
}

impl<'s> Geometry<'s> {
    /// The standard generating set B.
    pub fn standard(s: &'s VfStructure, budget: usize) -> Self {
        let alphabet = s.generators().clone();
        let letters = alphabet.letters().map(|x| s.letter_element(x)).collect();
        Self::build(s, alphabet, letters, budget)
    }

    /// A generating set Y given by names and words over B̃.
    pub fn with_generators(
        s: &'s VfStructure,
        gens: &[(char, Word)],
        budget: usize,
    ) -> Result<Self> {
        let alphabet = Alphabet::from_chars(gens.iter().map(|g| g.0).collect())?;
        let mut letters = Vec::new();
        for (_, w) in gens {
            let g = s.normal_form(w)?;
            letters.push(g.clone());
            letters.push(s.inverse(&g));
        }
        Ok(Self::build(s, alphabet, letters, budget))
    }

    fn build(
        s: &'s VfStructure,
        alphabet: Alphabet,
        letters: Vec<NormalForm>,
        budget: usize,
    ) -> Self {
        let mut ball = Ball::default();
        ball.elems.push(s.identity());
        ball.index.insert(s.identity(), 0);
        ball.dist.push(0);
        ball.rep.push(Word::empty());
        Geometry {
            s,
            alphabet,
            letters,
            budget,
            ball: RefCell::new(ball),
        }
    }

    pub fn structure(&self) -> &'s VfStructure {
        self.s
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letter_element(&self, x: Letter) -> &NormalForm {
        &self.letters[x.index()]
    }

    pub fn eval(&self, w: &[Letter]) -> Result<NormalForm> {
        self.alphabet.validate(w)?;
        Ok(w.iter().fold(self.s.identity(), |g, &x| {
            self.s.mul(&g, &self.letters[x.index()])
        }))
    }

    /// Grows the memoized ball to radius `r`.
    pub fn ensure_radius(&self, r: usize) -> Result<()> {
        let mut b = self.ball.borrow_mut();
        while b.radius < r {
            let (start, end) = (b.layer_start, b.elems.len());
            if start == end {
                // the whole group has been enumerated
                b.radius = r;
                break;
            }
            let next = b.radius + 1;
            for i in start..end {
                for x in self.alphabet.letters() {
                    let g = self.s.mul(&b.elems[i], &self.letters[x.index()]);
                    if b.index.contains_key(&g) {
                        continue;
                    }
                    if b.elems.len() >= self.budget {
                        return Err(Error::Budget {
                            budget: self.budget,
                            what: format!("Cayley ball of radius {next}"),
                        });
                    }
                    let rep = b.rep[i].concat(&[x]);
                    let id = b.elems.len();
                    b.index.insert(g.clone(), id);
                    b.elems.push(g);
                    b.dist.push(next);
                    b.rep.push(rep);
                }
            }
            b.layer_start = end;
            b.radius = next;
        }
        Ok(())
    }

    fn lookup(&self, g: &NormalForm, bound: Option<usize>) -> Result<usize> {
        loop {
            let radius = {
                let b = self.ball.borrow();
                if let Some(&i) = b.index.get(g) {
                    return Ok(i);
                }
                if b.layer_start == b.elems.len() && b.radius > 0 {
                    return Err(Error::Validation(
                        "element not reachable from the generators".into(),
                    ));
                }
                b.radius
            };
            if bound.is_some_and(|m| radius >= m) {
                return Err(Error::Validation(format!(
                    "element not found within radius {radius}"
                )));
            }
            self.ensure_radius(radius + 1)?;
        }
    }

    /// Geodesic length of an element.
    pub fn length_of(&self, g: &NormalForm) -> Result<usize> {
        let i = self.lookup(g, None)?;
        Ok(self.ball.borrow().dist[i])
    }

    /// Geodesic length of the element of a word over the generators.
    pub fn length(&self, w: &[Letter]) -> Result<usize> {
        let g = self.eval(w)?;
        let i = self.lookup(&g, Some(w.len()))?;
        Ok(self.ball.borrow().dist[i])
    }

    pub fn distance(&self, g: &NormalForm, h: &NormalForm) -> Result<usize> {
        self.length_of(&self.s.mul(&self.s.inverse(g), h))
    }

    /// Shortlex-least geodesic word of an element.
    pub fn rep_of(&self, g: &NormalForm) -> Result<Word> {
        let i = self.lookup(g, None)?;
        Ok(self.ball.borrow().rep[i].clone())
    }

    pub fn rep(&self, w: &[Letter]) -> Result<Word> {
        self.rep_of(&self.eval(w)?)
    }

    pub fn is_geodesic(&self, w: &[Letter]) -> Result<bool> {
        Ok(self.length(w)? == w.len())
    }

    /// Elements of length ≤ r with their lengths and shortlex geodesics, in BFS order.
    pub fn ball(&self, r: usize) -> Result<Vec<(NormalForm, usize, Word)>> {
        self.ensure_radius(r)?;
        let b = self.ball.borrow();
        Ok((0..b.elems.len())
            .filter(|&i| b.dist[i] <= r)
            .map(|i| (b.elems[i].clone(), b.dist[i], b.rep[i].clone()))
            .collect())
    }

    /// All geodesic words of length ≤ n, in shortlex order.
    pub fn geodesic_words(&self, n: usize) -> Result<Vec<Word>> {
        self.ensure_radius(n)?;
        let mut out = vec![(Word::empty(), self.s.identity())];
        let mut start = 0;
        for len in 1..=n {
            let end = out.len();
            for i in start..end {
                for x in self.alphabet.letters() {
                    let g = self.s.mul(&out[i].1, &self.letters[x.index()]);
                    if self.length_of(&g)? == len {
                        let w = out[i].0.concat(&[x]);
                        out.push((w, g));
                    }
                }
            }
            start = end;
        }
        Ok(out.into_iter().map(|p| p.0).collect())
    }

    /// All geodesic words of one element.
    pub fn geodesics_of(&self, g: &NormalForm) -> Result<Vec<Word>> {
        let n = self.length_of(g)?;
        let mut out = Vec::new();
        let mut stack = vec![(Word::empty(), self.s.identity())];
        while let Some((w, h)) = stack.pop() {
            if w.len() == n {
                out.push(w);
                continue;
            }
            for x in self.alphabet.letters() {
                let h2 = self.s.mul(&h, &self.letters[x.index()]);
                if self.length_of(&h2)? == w.len() + 1 && self.distance(&h2, g)? == n - w.len() - 1
                {
                    stack.push((w.concat(&[x]), h2));
                }
            }
        }
        out.sort_by(|a, b| a.shortlex_cmp(b));
        Ok(out)
    }

    /// j − i ≤ λ·d(w^{[i]}, w^{[j]}) + ε for all 0 ≤ i ≤ j ≤ |w|.
    pub fn quasigeodesic_check(
        &self,
        w: &[Letter],
        lambda: Rational,
        epsilon: Rational,
    ) -> Result<bool> {
        self.alphabet.validate(w)?;
        for i in 0..w.len() {
            let mut g = self.s.identity();
            for j in i + 1..=w.len() {
                g = self.s.mul(&g, &self.letters[w[j - 1].index()]);
                let lookup = self.lookup(&g, Some(j - i))?;
                let d = self.ball.borrow().dist[lookup];
                if Rational::from_integer((j - i) as i64)
                    > lambda * Rational::from_integer(d as i64) + epsilon
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// (g|h)_p = ½(d(p,g) + d(p,h) − d(g,h)).
    pub fn gromov_product(
        &self,
        g: &NormalForm,
        h: &NormalForm,
        p: &NormalForm,
    ) -> Result<Rational> {
        let s = self.distance(p, g)? + self.distance(p, h)?;
        let d = self.distance(g, h)?;
        Ok(Rational::new(s as i64 - d as i64, 2))
    }

    /// Smallest K admitting a monotone h: {0..|v|} → {0..|u|} with h(0) = 0,
    /// h(|v|) = |u|, d(v^{[i]}, u^{[h(i)]}) ≤ K and h(i) − h(i−1) ≤ 2K + 1.
    pub fn fellow_constant(&self, v: &[Letter], u: &[Letter]) -> Result<usize> {
        let pv = self.prefixes(v)?;
        let pu = self.prefixes(u)?;
        let mut d = vec![vec![0usize; pu.len()]; pv.len()];
        for (i, a) in pv.iter().enumerate() {
            for (j, b) in pu.iter().enumerate() {
                d[i][j] = self.distance(a, b)?;
            }
        }
        let feasible = |k: usize| -> bool {
            let mut reach = vec![false; pu.len()];
            reach[0] = d[0][0] <= k;
            for row in d.iter().skip(1) {
                let mut next = vec![false; pu.len()];
                for j in 0..pu.len() {
                    if row[j] > k {
                        continue;
                    }
                    let lo = j.saturating_sub(2 * k + 1);
                    next[j] = (lo..=j).any(|p| reach[p]);
                }
                reach = next;
            }
            reach[pu.len() - 1]
        };
        let mut k = 0;
        while !feasible(k) {
            k += 1;
        }
        Ok(k)
    }

    fn prefixes(&self, w: &[Letter]) -> Result<Vec<NormalForm>> {
        self.alphabet.validate(w)?;
        let mut out = vec![self.s.identity()];
        for &x in w {
            let g = self.s.mul(out.last().unwrap(), &self.letters[x.index()]);
            out.push(g);
        }
        Ok(out)
    }

    /// Checks the fellow-traveler constant on every (λ, ε)-quasigeodesic of
    /// length ≤ radius against every geodesic of the same element.
    pub fn fellow_traveler_validate(
        &self,
        lambda: Rational,
        epsilon: Rational,
        k: usize,
        radius: usize,
    ) -> Result<FellowReport> {
        let mut report = FellowReport {
            k,
            pairs: 0,
            minimal_k: 0,
            violations: Vec::new(),
        };
        let mut layer = vec![Word::empty()];
        let mut words = vec![Word::empty()];
        for _ in 0..radius {
            let mut next = Vec::new();
            for w in &layer {
                for x in self.alphabet.letters() {
                    next.push(w.concat(&[x]));
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        let mut geodesics: HashMap<NormalForm, Vec<Word>> = HashMap::new();
        for v in words {
            if !self.quasigeodesic_check(&v, lambda, epsilon)? {
                continue;
            }
            let g = self.eval(&v)?;
            if !geodesics.contains_key(&g) {
                let gs = self.geodesics_of(&g)?;
                geodesics.insert(g.clone(), gs);
            }
            for u in &geodesics[&g] {
                report.pairs += 1;
                let needed = self.fellow_constant(&v, u)?;
                report.minimal_k = report.minimal_k.max(needed);
                if needed > k {
                    report.violations.push((v.clone(), u.clone()));
                }
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug)]
pub struct FellowReport {
    pub k: usize,
    /// (quasigeodesic, geodesic) pairs examined.
    pub pairs: usize,
    /// Smallest constant that works for every pair examined.
    pub minimal_k: usize,
    /// Pairs that need a constant larger than `k`.
    pub violations: Vec<(Word, Word)>,
}

impl FellowReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfree::tests::dinf;

    #[test]
    fn dinf_lengths() {
        let s = dinf();
        let g = Geometry::standard(&s, DEFAULT_BUDGET);
        let w = |x: &str| s.generators().parse_word(x).unwrap();
        assert!(s.vf_equal(&w("bab"), &w("A")).unwrap());
        assert_eq!(g.length(&w("aa")).unwrap(), 2);
        assert_eq!(s.generators().render(&g.rep(&w("bab")).unwrap()), "A");
        assert_eq!(g.ball(1).unwrap().len(), 4);
    }

    #[test]
    fn quasigeodesics() {
        let s = dinf();
        let g = Geometry::standard(&s, DEFAULT_BUDGET);
        let w = |x: &str| s.generators().parse_word(x).unwrap();
        let one = Rational::from_integer(1);
        let zero = Rational::from_integer(0);
        assert!(g.quasigeodesic_check(&w("aaa"), one, zero).unwrap());
        assert!(!g.quasigeodesic_check(&w("bb"), one, zero).unwrap());
        assert!(!g.quasigeodesic_check(&w("aba"), one, zero).unwrap());
        assert!(g
            .quasigeodesic_check(&w("aba"), Rational::from_integer(3), zero)
            .unwrap());
    }

    #[test]
    fn gromov() {
        let s = dinf();
        let g = Geometry::standard(&s, DEFAULT_BUDGET);
        let e = |x: &str| {
            s.normal_form(&s.generators().parse_word(x).unwrap())
                .unwrap()
        };
        let one = s.identity();
        assert_eq!(
            g.gromov_product(&e("ab"), &e("ab"), &one).unwrap(),
            Rational::from_integer(2)
        );
        assert_eq!(
            g.gromov_product(&e("a"), &e("A"), &one).unwrap(),
            Rational::from_integer(0)
        );
        assert_eq!(
            g.gromov_product(&e("aa"), &e("a"), &one).unwrap(),
            Rational::from_integer(1)
        );
    }

    #[test]
    fn fellow_traveling() {
        let s = dinf();
        let g = Geometry::standard(&s, DEFAULT_BUDGET);
        let one = Rational::from_integer(1);
        let zero = Rational::from_integer(0);
        assert!(g.fellow_traveler_validate(one, zero, 4, 4).unwrap().ok());
        let r = g.fellow_traveler_validate(one, zero, 0, 4).unwrap();
        assert!(r.pairs > 0);
        assert_eq!(r.ok(), r.minimal_k == 0);
    }
}
