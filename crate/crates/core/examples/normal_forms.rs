use geoconj::vfree::VfStructure;

fn main() -> geoconj::Result<()> {
    let s = VfStructure::parse(include_str!("../data/dinf.vf"))?;
    let g = s.generators();
    println!("D∞ with C = {}", s.constant_c());
    for text in ["ba", "bab", "abab", "bb", "aBa"] {
        let w = g.parse_word(text)?;
        println!("{text:>5} = {}", s.render_nf(&s.normal_form(&w)?));
    }
    let t = VfStructure::parse(include_str!("../data/swap.vf"))?;
    let w = t.generators().parse_word("tatb")?;
    println!(
        "in F(a,b) ⋊ Z/2: tatb = {}",
        t.render_nf(&t.normal_form(&w)?)
    );
    Ok(())
}
