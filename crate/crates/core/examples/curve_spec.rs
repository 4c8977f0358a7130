// Define a curve in the spec-file format, or take one from the catalog.

use bertrand_curves::curve::{catalog_ref, parse_spec, CATALOG_NAMES};

const SPEC: &str = r#"
# a conical spiral
name = "conical spiral"
param = "u"
x = "u*cos(u)"
y = "u*sin(u)"
z = "u"
domain = 0.5 6.0
"#;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = parse_spec(SPEC)?;
    println!("{} on {:?}", c.label(), c.domain());
    println!("arclength = {:.12}", c.arclength_between(c.domain().0, c.domain().1)?);
    println!("digest {}", c.digest());
    print!("{}", c.to_spec());

    println!("catalog: {}", CATALOG_NAMES.join(", "));
    let h = catalog_ref("circular-helix:2,1")?;
    println!("{} speed {:.12}", h.label(), h.speed(0.0)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
