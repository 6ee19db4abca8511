use geoconj::vfree::{
    change_generators, geodesic_acceptor, Geometry, Rational, VfStructure, DEFAULT_BUDGET,
};

fn main() -> geoconj::Result<()> {
    let s = VfStructure::parse(include_str!("../data/dinf.vf"))?;
    let b = s.generators();
    let x = Geometry::standard(&s, DEFAULT_BUDGET);
    let y = Geometry::with_generators(
        &s,
        &[('c', b.parse_word("ab")?), ('b', b.parse_word("b")?)],
        DEFAULT_BUDGET,
    )?;
    let images = [
        y.alphabet().parse_word("cB")?,
        y.alphabet().parse_word("b")?,
    ];
    let (converted, n) = change_generators(&x, &y, &geodesic_acceptor(&x, 2)?, &images)?;
    let (lambda, epsilon) = (
        Rational::from_integer((n * n) as i64),
        Rational::from_integer((2 * n * n * n) as i64),
    );
    println!("N = {n}; converted geodesics up to length 4:");
    for w in converted.enumerate(4) {
        let ok = y.quasigeodesic_check(&w, lambda, epsilon)?;
        println!(
            "  {:<5} ({lambda}, {epsilon})-quasigeodesic: {ok}",
            y.alphabet().render(&w)
        );
    }
    Ok(())
}
