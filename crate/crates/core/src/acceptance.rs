//! The acceptance suite: ten oracle-based checks at desk scale, shared by the
//! `acceptance` test target and `geoconj check --suite acceptance`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{concat, equivalent, star, union, Nfa};
use crate::conjugates::{alpha, alpha_powers, dgcp};
use crate::free_subsets::benois_saturate;
use crate::oracles::{alpha_oracle, dgcp_witness_search, random_nfa, short_conjugates, vf_ball};
use crate::vfree::{
    change_generators, geo_of_rational, geodesic_acceptor, Geometry, NormalForm, Rational,
    VfConfig, VfStructure,
};
use crate::words::{free_reduce, invert, Alphabet, Word};

/// Seed of the random corpus.
pub const SEED: u64 = 0x5eed_2024;

/// Words this suite accepts without a conjugator witness of length ≤ 12,
/// each backed by a longer witness checked by hand. Empty on the seeded corpus.
pub const SOUNDNESS_WHITELIST: &[&str] = &[];

const BENOIS_LIMIT: Duration = Duration::from_secs(30);
const COMPLETENESS_LIMIT: Duration = Duration::from_secs(180);
const DGCP_LIMIT: Duration = Duration::from_secs(120);
const LENGTH_C_LIMIT: Duration = Duration::from_secs(60);
const TRANSDUCER_LIMIT: Duration = Duration::from_secs(120);

pub const DINF: &str = include_str!("../data/dinf.vf");
pub const SWAP: &str = include_str!("../data/swap.vf");

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let limit = self
            .limit
            .map(|l| format!(" / limit {}s", l.as_secs()))
            .unwrap_or_default();
        write!(
            f,
            "[{}] {:>2} {} ({:.1}s{}): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            limit,
            self.detail
        )
    }
}

type Check = fn(u64) -> Result<String, String>;

pub fn criteria() -> Vec<(usize, &'static str, Check, Option<Duration>)> {
    vec![
        (
            1,
            "benois exactness",
            benois_exactness as Check,
            Some(BENOIS_LIMIT),
        ),
        (
            2,
            "alpha completeness",
            alpha_completeness,
            Some(COMPLETENESS_LIMIT),
        ),
        (3, "alpha soundness", alpha_soundness, None),
        (4, "dgcp decisions", dgcp_decisions, Some(DGCP_LIMIT)),
        (5, "powers", powers, None),
        (
            6,
            "normal form length bound",
            length_c,
            Some(LENGTH_C_LIMIT),
        ),
        (
            7,
            "normal forms are quasigeodesic",
            normal_forms_quasigeodesic,
            None,
        ),
        (
            8,
            "geodesics of rational subsets",
            transducer_geodesics,
            Some(TRANSDUCER_LIMIT),
        ),
        (9, "generator change", generator_change, None),
        (
            10,
            "gromov product and concatenations",
            gromov_concatenation,
            None,
        ),
    ]
}

pub fn run(id: usize, seed: u64) -> Option<Outcome> {
    let (id, name, check, limit) = criteria().into_iter().find(|c| c.0 == id)?;
    let start = Instant::now();
    let result = check(seed);
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            detail = format!("over the time limit; {detail}");
        }
    }
    Some(Outcome {
        id,
        name,
        passed,
        detail,
        elapsed,
        limit,
    })
}

pub fn run_all(seed: u64) -> Vec<Outcome> {
    criteria().iter().filter_map(|c| run(c.0, seed)).collect()
}

fn ab() -> Alphabet {
    Alphabet::new("ab").expect("alphabet")
}

fn word(s: &str) -> Nfa {
    Nfa::word(&ab(), &ab().parse_word(s).expect("word"))
}

fn rng(seed: u64, id: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ id.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

/// The random (K, L) pairs shared by the completeness and soundness checks.
pub fn alpha_corpus(seed: u64) -> Vec<(Nfa, Nfa)> {
    let mut r = rng(seed, 2);
    (0..25)
        .map(|_| {
            let k = sized_nfa(&mut r, &ab(), 3);
            let l = sized_nfa(&mut r, &ab(), 3);
            (k, l)
        })
        .collect()
}

fn benois_exactness(seed: u64) -> Result<String, String> {
    let a = ab();
    let mut expected_last = Nfa::with_states(a.clone(), 5);
    let l = |c| a.letter(c).expect("letter");
    expected_last.set_initial(0);
    expected_last.add_edge(0, l('a'), 1);
    expected_last.add_edge(1, l('b'), 2);
    expected_last.add_edge(1, l('a'), 3);
    expected_last.add_edge(3, l('B'), 4);
    expected_last.add_edge(4, l('a'), 3);
    expected_last.set_final(2);
    expected_last.set_final(3);
    let cases: Vec<(&str, Nfa, Nfa)> = vec![
        ("a b b⁻¹ a", word("abBa"), word("aa")),
        ("(a a⁻¹)*", star(&word("aA")), Nfa::epsilon(&a)),
        (
            "a*(a⁻¹)*",
            concat(&star(&word("a")), &star(&word("A"))).map_err(err)?,
            union(&star(&word("a")), &star(&word("A"))).map_err(err)?,
        ),
        ("(a b b⁻¹)*", star(&word("abB")), star(&word("a"))),
        (
            "a b (b⁻¹ a)*",
            concat(&word("ab"), &star(&word("Ba"))).map_err(err)?,
            expected_last,
        ),
    ];
    for (name, input, expected) in &cases {
        ensure(
            equivalent(&benois_saturate(input), expected).map_err(err)?,
            || format!("curated case {name} differs from the expected automaton"),
        )?;
    }
    let mut r = rng(seed, 1);
    for i in 0..50 {
        let n = sized_nfa(&mut r, &a, 4);
        let sat = benois_saturate(&n);
        for u in n.enumerate(8) {
            ensure(sat.accepts(&free_reduce(&u)), || {
                format!("random #{i}: reduction of {} missing", a.render(&u))
            })?;
        }
        let words = sat.enumerate(8);
        for w in &words {
            ensure(w.is_reduced(), || {
                format!("random #{i}: {} not reduced", a.render(w))
            })?;
        }
        ensure(benois_saturate(&sat).enumerate(8) == words, || {
            format!("random #{i}: not idempotent")
        })?;
    }
    Ok("5 curated cases, 50 random automata".into())
}

fn alpha_completeness(seed: u64) -> Result<String, String> {
    let a = ab();
    let mut checked = 0usize;
    for (i, (k, l)) in alpha_corpus(seed).iter().enumerate() {
        let g = alpha(k, l).map_err(err)?.grammar.to_cnf();
        let parser = g.parser();
        let targets: BTreeSet<Word> = alpha_oracle(k, l, 5, 5);
        for w in &targets {
            checked += 1;
            ensure(parser.accepts(w), || {
                format!("pair #{i}: {} not generated", a.render(w))
            })?;
        }
    }
    Ok(format!("25 pairs, {checked} conjugates generated"))
}

/// Some u ∈ L̄ with |u| ≤ bound and free_reduce(u w u⁻¹) ∈ K̄.
fn has_witness(w: &Word, kbar: &Nfa, lbar_words: &[Word]) -> bool {
    lbar_words.iter().any(|u| {
        let x: Word = u
            .iter()
            .chain(w.iter())
            .chain(invert(u).iter())
            .copied()
            .collect();
        kbar.accepts(&free_reduce(&x))
    })
}

fn alpha_soundness(seed: u64) -> Result<String, String> {
    let a = ab();
    let mut reports = Vec::new();
    let mut checked = 0usize;
    for (i, (k, l)) in alpha_corpus(seed).iter().enumerate() {
        let words = alpha(k, l).map_err(err)?.grammar.enumerate(5);
        let (kbar, lbar) = (benois_saturate(k), benois_saturate(l));
        let short = lbar.enumerate(4);
        let mut long: Option<Vec<Word>> = None;
        for w in words {
            checked += 1;
            if has_witness(&w, &kbar, &short) {
                continue;
            }
            let long = long.get_or_insert_with(|| lbar.enumerate(12));
            if !has_witness(&w, &kbar, long)
                && !SOUNDNESS_WHITELIST.contains(&a.render(&w).as_str())
            {
                reports.push(format!("pair #{i}: {}", a.render(&w)));
            }
        }
    }
    ensure(reports.is_empty(), || {
        format!("unwitnessed words: {}", reports.join(", "))
    })?;
    Ok(format!("{checked} grammar words witnessed"))
}

fn dgcp_decisions(seed: u64) -> Result<String, String> {
    let a = ab();
    let univ = Nfa::universal(&a);
    let eps = Nfa::epsilon(&a);
    let cases: Vec<(&str, Nfa, Nfa, Nfa, bool)> = vec![
        (
            "b ~ a b a⁻¹ in F",
            univ.clone(),
            word("b"),
            word("abA"),
            true,
        ),
        (
            "only the identity conjugator",
            eps.clone(),
            word("b"),
            word("abA"),
            false,
        ),
        (
            "conjugator in a*",
            star(&word("a")),
            word("Aba"),
            word("b"),
            true,
        ),
        (
            "a and b are not conjugate",
            univ.clone(),
            word("a"),
            word("b"),
            false,
        ),
        (
            "conjugator restricted to {b}",
            word("b"),
            word("b"),
            word("abA"),
            false,
        ),
        (
            "conjugator in (a⁻¹)*",
            star(&word("A")),
            word("Aba"),
            word("b"),
            false,
        ),
        (
            "cyclic permutation",
            univ.clone(),
            word("ab"),
            word("ba"),
            true,
        ),
        (
            "a is no conjugate of a power of ab",
            univ.clone(),
            star(&word("ab")),
            word("a"),
            false,
        ),
        (
            "conjugator in b*",
            star(&word("b")),
            word("ab"),
            word("ba"),
            true,
        ),
        (
            "aabb and abab",
            univ.clone(),
            word("aabb"),
            word("abab"),
            false,
        ),
    ];
    for (name, k0, k1, k2, expected) in &cases {
        let got = dgcp(k0, k1, k2).map_err(err)?;
        ensure(got == *expected, || {
            format!("{name}: expected {expected}, got {got}")
        })?;
    }
    let mut r = rng(seed, 4);
    let mut witnessed = 0;
    for i in 0..50 {
        let k0 = sized_nfa(&mut r, &a, 2);
        let k1 = sized_nfa(&mut r, &a, 2);
        let k2 = sized_nfa(&mut r, &a, 2);
        let decided = dgcp(&k0, &k1, &k2).map_err(err)?;
        if let Some(w) = dgcp_witness_search(&k0, &k1, &k2, 4) {
            witnessed += 1;
            ensure(decided, || {
                format!(
                    "random #{i}: witness u = {} found but dgcp says no",
                    a.render(&w.u)
                )
            })?;
        }
    }
    Ok(format!(
        "10 curated, 50 random ({witnessed} with bounded witnesses)"
    ))
}

fn powers(seed: u64) -> Result<String, String> {
    let a = ab();
    let mut r = rng(seed, 5);
    let cases = [
        (word("b"), a.parse_word("a").expect("word")),
        (random_nfa(&mut r, &a, 2), a.parse_word("ab").expect("word")),
    ];
    let mut sizes = Vec::new();
    for (i, (k, u)) in cases.iter().enumerate() {
        let got: BTreeSet<Word> = alpha_powers(k, u)
            .map_err(err)?
            .enumerate(6)
            .into_iter()
            .collect();
        let mut powers = vec![Word::empty()];
        for n in 1..=4 {
            powers.push(powers[n - 1].concat(u));
        }
        let oracle = short_conjugates(k, &powers, 6).map_err(err)?;
        ensure(got == oracle, || {
            let show =
                |s: &BTreeSet<Word>| s.iter().map(|w| a.render(w)).collect::<Vec<_>>().join(" ");
            format!(
                "case {i}: grammar {{{}}} vs oracle {{{}}}",
                show(&got),
                show(&oracle)
            )
        })?;
        sizes.push(got.len());
    }
    Ok(format!(
        "exact equality ({} and {} words)",
        sizes[0], sizes[1]
    ))
}

fn structures() -> Result<(VfStructure, VfStructure), String> {
    Ok((
        VfStructure::parse(DINF).map_err(err)?,
        VfStructure::parse(SWAP).map_err(err)?,
    ))
}

fn all_words(alpha: &Alphabet, n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut start = 0;
    for _ in 0..n {
        let end = out.len();
        for i in start..end {
            for x in alpha.letters() {
                let w = out[i].concat(&[x]);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

fn length_c(seed: u64) -> Result<String, String> {
    let (dinf, swap) = structures()?;
    let check = |s: &VfStructure, w: &Word| -> Result<(), String> {
        let nf = s.nf_word(&s.normal_form(w).map_err(err)?);
        ensure(nf.len() <= s.constant_c() * w.len(), || {
            format!(
                "|nf({})| = {} > {}·{}",
                s.generators().render(w),
                nf.len(),
                s.constant_c(),
                w.len()
            )
        })
    };
    let exhaustive = all_words(dinf.generators(), 8);
    for w in &exhaustive {
        check(&dinf, w)?;
    }
    let mut r = rng(seed, 6);
    let g = swap.generators();
    for _ in 0..10_000 {
        let len = r.gen_range(0..=8);
        let w: Word = (0..len)
            .map(|_| g.letters().nth(r.gen_range(0..g.size())).expect("letter"))
            .collect();
        check(&swap, &w)?;
    }
    Ok(format!(
        "{} exhaustive words, 10000 sampled",
        exhaustive.len()
    ))
}

fn normal_forms_quasigeodesic(_seed: u64) -> Result<String, String> {
    let (dinf, swap) = structures()?;
    let mut total = 0;
    for s in [&dinf, &swap] {
        let geo = Geometry::standard(s, crate::vfree::DEFAULT_BUDGET);
        let c = Rational::from_integer(s.constant_c() as i64);
        let nfl = s
            .normal_form_language(&Nfa::universal(s.generators()))
            .map_err(err)?;
        for w in nfl.enumerate(8) {
            total += 1;
            ensure(
                geo.quasigeodesic_check(&w, c, Rational::from_integer(0))
                    .map_err(err)?,
                || {
                    format!(
                        "{} is not a ({c}, 0)-quasigeodesic",
                        s.generators().render(&w)
                    )
                },
            )?;
        }
    }
    Ok(format!("{total} normal forms"))
}

/// Configuration for D∞, validated before use.
pub fn dinf_config(s: &VfStructure) -> Result<VfConfig, String> {
    let cfg = VfConfig::parse(include_str!("../data/dinf.cfg")).map_err(err)?;
    let geo = Geometry::standard(s, cfg.budget);
    let c = Rational::from_integer(s.constant_c() as i64);
    let report = geo
        .fellow_traveler_validate(c, Rational::from_integer(0), cfg.ftc, 6)
        .map_err(err)?;
    ensure(report.ok(), || {
        format!("ftc {} too small, need {}", cfg.ftc, report.minimal_k)
    })?;
    geodesic_acceptor(&geo, cfg.cone_radius).map_err(err)?;
    Ok(cfg)
}

fn transducer_geodesics(seed: u64) -> Result<String, String> {
    let (s, _) = structures()?;
    let cfg = dinf_config(&s)?;
    let g = s.generators().clone();
    let w = |x: &str| Nfa::word(&g, &g.parse_word(x).expect("word"));
    let mut coset = star(&union(&w("a"), &w("A")).map_err(err)?);
    coset = concat(&coset, &w("b")).map_err(err)?;
    let mut r = rng(seed, 8);
    let cases = vec![
        ("a*", star(&w("a"))),
        ("{b}", w("b")),
        ("{bab}", w("bab")),
        ("F b", coset),
        ("random", random_nfa(&mut r, &g, 2)),
    ];
    let ball = vf_ball(&s, 6, cfg.budget).map_err(err)?;
    let mut compared = 0;
    for (name, k) in &cases {
        let got: BTreeSet<Word> = geo_of_rational(&s, k, &cfg)
            .map_err(err)?
            .enumerate(6)
            .into_iter()
            .collect();
        let parts = s.split_cosets(k).map_err(err)?;
        let sat: Vec<Nfa> = parts.iter().map(benois_saturate).collect();
        let member = |e: &NormalForm| sat[e.coset].accepts(&e.fpart);
        let mut expected = BTreeSet::new();
        for b in &ball {
            if member(&b.element) {
                expected.extend(b.geodesics.iter().cloned());
            }
        }
        // the membership test must at least contain every short word of K
        for v in k.enumerate(8) {
            let e = s.normal_form(&v).map_err(err)?;
            ensure(member(&e), || {
                format!("{name}: membership misses {}", g.render(&v))
            })?;
        }
        ensure(got == expected, || {
            let diff: Vec<String> = got
                .symmetric_difference(&expected)
                .map(|x| g.render(x))
                .collect();
            format!("{name}: geodesic sets differ on {}", diff.join(" "))
        })?;
        compared += got.len();
    }
    Ok(format!(
        "5 subsets, {compared} geodesics, ftc = {}, cone radius = {}",
        cfg.ftc, cfg.cone_radius
    ))
}

fn generator_change(_seed: u64) -> Result<String, String> {
    let (s, _) = structures()?;
    let x = Geometry::standard(&s, crate::vfree::DEFAULT_BUDGET);
    let b = s.generators();
    let y = Geometry::with_generators(
        &s,
        &[
            ('c', b.parse_word("ab").expect("word")),
            ('b', b.parse_word("b").expect("word")),
        ],
        crate::vfree::DEFAULT_BUDGET,
    )
    .map_err(err)?;
    let yw = |w: &str| y.alphabet().parse_word(w).expect("word");
    let geo_x = geodesic_acceptor(&x, 2).map_err(err)?;
    let (converted, n) = change_generators(&x, &y, &geo_x, &[yw("cB"), yw("b")]).map_err(err)?;
    let lambda = Rational::from_integer((n * n) as i64);
    let epsilon = Rational::from_integer((2 * n * n * n) as i64);
    let words = converted.enumerate(8);
    for w in &words {
        ensure(
            y.quasigeodesic_check(w, lambda, epsilon).map_err(err)?,
            || format!("{} fails ({lambda}, {epsilon})", y.alphabet().render(w)),
        )?;
    }
    Ok(format!(
        "N = {n}, {} converted words checked against ({lambda}, {epsilon})",
        words.len()
    ))
}

fn gromov_concatenation(_seed: u64) -> Result<String, String> {
    let (s, _) = structures()?;
    let geo = Geometry::standard(&s, crate::vfree::DEFAULT_BUDGET);
    let ball = geo.ball(4).map_err(err)?;
    let one = s.identity();
    let mut geodesics: HashMap<NormalForm, Vec<Word>> = HashMap::new();
    for (g, _, _) in &ball {
        geodesics.insert(g.clone(), geo.geodesics_of(g).map_err(err)?);
        let inv = s.inverse(g);
        let gi = geo.geodesics_of(&inv).map_err(err)?;
        geodesics.insert(inv, gi);
    }
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for (u, _, ru) in &ball {
        let uinv = s.inverse(u);
        for (v, _, rv) in &ball {
            let product = geo.gromov_product(u, v, &one).map_err(err)?;
            for p in 0..=2i64 {
                checked += 1;
                let small = product <= Rational::from_integer(p);
                let mut some = false;
                'search: for alpha in &geodesics[&uinv] {
                    for beta in &geodesics[v] {
                        let path = alpha.concat(beta);
                        if geo
                            .quasigeodesic_check(
                                &path,
                                Rational::from_integer(1),
                                Rational::from_integer(2 * p),
                            )
                            .map_err(err)?
                        {
                            some = true;
                            break 'search;
                        }
                    }
                }
                if small != some {
                    mismatches.push(format!(
                        "u = {}, v = {}, p = {p}: (u|v) = {product}, concatenation {}",
                        b_render(&s, ru),
                        b_render(&s, rv),
                        if some { "passes" } else { "fails" }
                    ));
                }
            }
        }
    }
    ensure(mismatches.is_empty(), || {
        format!(
            "{} of {checked} cases disagree, e.g. {}",
            mismatches.len(),
            mismatches[0]
        )
    })?;
    Ok(format!("{checked} (u, v, p) cases agree"))
}

fn b_render(s: &VfStructure, w: &Word) -> String {
    s.generators().render(w)
}

fn sized_nfa(r: &mut ChaCha8Rng, a: &Alphabet, max_states: usize) -> Nfa {
    let n = r.gen_range(1..=max_states);
    random_nfa(r, a, n)
}
