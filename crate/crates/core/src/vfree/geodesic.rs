//! Acceptor of all geodesic words, built from cone types.
//!
//! The state of a geodesic word is the set of extensions of length ≤ r that
//! keep it geodesic (its r-cone fingerprint). This presumes that the
//! fingerprint determines the full cone type; the result is therefore
//! compared against breadth-first search on every word of length ≤ r + 2.

use std::collections::HashMap;

use super::{Geometry, NormalForm};
use crate::automata::Nfa;
use crate::error::{Error, Result};
use crate::words::Word;

const MAX_CONE_STATES: usize = 10_000;

/// All words of length ≤ n over the generators, shortlex order.
pub(crate) fn all_words(geo: &Geometry<'_>, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut start = 0;
    for _ in 0..n {
        let end = out.len();
        for i in start..end {
            for x in geo.alphabet().letters() {
                let w = out[i].concat(&[x]);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn fingerprint(
    geo: &Geometry<'_>,
    g: &NormalForm,
    exts: &[(Word, NormalForm)],
) -> Result<Vec<bool>> {
    let s = geo.structure();
    let base = geo.length_of(g)?;
    exts.iter()
        .map(|(z, e)| Ok(geo.length_of(&s.mul(g, e))? == base + z.len()))
        .collect()
}

/// Deterministic acceptor of Geo(G) for the geometry's generators.
pub fn geodesic_acceptor(geo: &Geometry<'_>, cone_radius: usize) -> Result<Nfa> {
    let s = geo.structure();
    let r = cone_radius.max(1);
    let exts: Vec<(Word, NormalForm)> = all_words(geo, r)
        .into_iter()
        .map(|z| {
            let e = geo.eval(&z).expect("generator word");
            (z, e)
        })
        .collect();
    // position of each single letter in `exts`
    let letter_pos: Vec<usize> = geo.alphabet().letters().map(|x| 1 + x.index()).collect();

    let mut states: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut reps: Vec<(NormalForm, Vec<bool>)> = Vec::new();
    let id_fp = fingerprint(geo, &s.identity(), &exts)?;
    states.insert(id_fp.clone(), 0);
    reps.push((s.identity(), id_fp));
    let mut nfa = Nfa::with_states(geo.alphabet().clone(), 1);
    nfa.set_initial(0);
    nfa.set_final(0);
    let mut i = 0;
    while i < reps.len() {
        let (g, fp) = reps[i].clone();
        for x in geo.alphabet().letters() {
            if !fp[letter_pos[x.index()]] {
                continue;
            }
            let h = s.mul(&g, geo.letter_element(x));
            let fh = fingerprint(geo, &h, &exts)?;
            let target = match states.get(&fh) {
                Some(&t) => t,
                None => {
                    if reps.len() >= MAX_CONE_STATES {
                        return Err(Error::Budget {
                            budget: MAX_CONE_STATES,
                            what: "cone types".into(),
                        });
                    }
                    let t = nfa.add_state();
                    nfa.set_final(t);
                    states.insert(fh.clone(), t);
                    reps.push((h, fh));
                    t
                }
            };
            nfa.add_edge(i, x, target);
        }
        i += 1;
    }
    validate_acceptor(geo, &nfa, r + 2)?;
    Ok(nfa)
}

/// Compares the acceptor with BFS geodesic lengths on all words of length ≤ n.
pub fn validate_acceptor(geo: &Geometry<'_>, acceptor: &Nfa, n: usize) -> Result<()> {
    for w in all_words(geo, n) {
        let geodesic = geo.is_geodesic(&w)?;
        if acceptor.accepts(&w) != geodesic {
            return Err(Error::Validation(format!(
                "cone-type acceptor disagrees with BFS on {} (geodesic: {geodesic}); increase cone_radius",
                geo.alphabet().render(&w)
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfree::tests::{dinf, swap};
    use crate::vfree::DEFAULT_BUDGET;

    #[test]
    fn dinf_geodesics() {
        let s = dinf();
        let geo = Geometry::standard(&s, DEFAULT_BUDGET);
        let acc = geodesic_acceptor(&geo, 2).unwrap();
        let w = |x: &str| s.generators().parse_word(x).unwrap();
        assert!(acc.accepts(&w("aaa")));
        assert!(!acc.accepts(&w("abb")));
        assert!(!acc.accepts(&w("aAb")));
        assert_eq!(acc.accepts(&w("Ab")), geo.is_geodesic(&w("Ab")).unwrap());
        validate_acceptor(&geo, &acc, 6).unwrap();
    }

    #[test]
    fn swap_geodesics() {
        let s = swap();
        let geo = Geometry::standard(&s, DEFAULT_BUDGET);
        let acc = geodesic_acceptor(&geo, 2).unwrap();
        validate_acceptor(&geo, &acc, 5).unwrap();
    }
}
