// Parse a component expression, differentiate it with jets and print it back.

use bertrand_curves::expr::Expression;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let e = Expression::parse("sin(t)^2/2 - t^-1")?;
    println!("parsed:   {e}");
    let j = e.eval_jet(0.7)?;
    println!("value {:.12}  d1 {:.12}  d2 {:.12}  d3 {:.12}", j.v, j.d1, j.d2, j.d3);

    // errors carry byte offsets
    for bad in ["2 t", "sqrt(t, 1)", "foo(t)"] {
        println!("{bad:>12} -> {}", Expression::parse(bad).unwrap_err());
    }
    let log = Expression::parse("log(t - 1)")?;
    println!("{}", log.eval(0.5).unwrap_err());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().unwrap();
}
