use geoconj::automata::star;
use geoconj::vfree::{
    build_transducer, geo_of_rational, geodesic_acceptor, Geometry, VfConfig, VfStructure,
};
use geoconj::Nfa;

fn main() -> geoconj::Result<()> {
    let s = VfStructure::parse(include_str!("../data/dinf.vf"))?;
    let cfg = VfConfig::parse(include_str!("../data/dinf.cfg"))?;
    let g = s.generators();
    let geo = Geometry::standard(&s, cfg.budget);
    let acceptor = geodesic_acceptor(&geo, cfg.cone_radius)?;
    println!("geodesic acceptor: {} states", acceptor.num_states());
    let t = build_transducer(&geo, &cfg)?;
    println!(
        "transducer: {} states, {} edges",
        t.states().len(),
        t.edges().len()
    );
    let k = star(&Nfa::word(g, &g.parse_word("ba")?));
    let geo_k = geo_of_rational(&s, &k, &cfg)?;
    println!("geodesics of (ba)* up to length 4:");
    for w in geo_k.enumerate(4) {
        println!("  {}", g.render(&w));
    }
    Ok(())
}
