use eqcat::lincat::presentation::Presentation;
use eqcat::Field;

fn main() -> eqcat::Result<()> {
    let f = Field::Rational;
    let mut quiver = Presentation::a2_quiver(f);
    let report = quiver.validate()?;
    println!("A2 path category: {} equations checked, {} violations", report.checked, report.violations.len());

    // Make a ∘ id_1 = 2a, which breaks the right unit law and associativity.
    quiver.perturb((0, 0, 1), 0, 0, vec![(0, f.from_i64(2))]);
    let report = quiver.validate()?;
    for v in &report.violations {
        println!("violation: {v:?}");
    }
    Ok(())
}
