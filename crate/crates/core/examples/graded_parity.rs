use eqcat::dg::graded::{Construction, GradedSwap};
use eqcat::Field;

fn main() -> eqcat::Result<()> {
    let gs = GradedSwap::new(Field::Prime(5))?;
    let samples = gs.sample(100, 12, 7)?;
    for c in samples.iter().filter(|c| matches!(c, Construction::Induced(_))).take(3) {
        let p = gs.parity(c)?;
        println!("{c:?}\n  dims {:?}  euler0 {}", p.dims, p.euler0);
    }
    let r = gs.sample_report(&samples)?;
    println!("{}", serde_json::to_string_pretty(&r).unwrap());
    Ok(())
}
