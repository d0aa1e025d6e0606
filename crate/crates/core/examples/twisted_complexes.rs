use std::sync::Arc;

use eqcat::dg::presentation::DgPresentation;
use eqcat::dg::twisted::Pretr;
use eqcat::lincat::presentation::Presentation;
use eqcat::Field;

fn main() -> eqcat::Result<()> {
    // The path category 1 -> 2 as a DG category concentrated in degree 0.
    let f = Field::Rational;
    let pre = Pretr::new(Arc::new(DgPresentation::new(Presentation::a2_quiver(f))));
    let (x1, x2) = (pre.object(0, 0), pre.object(1, 0));

    let a = vec![f.one()];
    let cone = pre.cone(&x1, &x2, &a)?;
    pre.validate(&cone)?;
    println!("Cone(a) has entries {:?}", cone.entries);
    for t in [&x1, &x2] {
        println!("  H*(Hom({:?}, Cone a)) = {:?}", t.entries, pre.hom_cohomology_dims(t, &cone));
    }

    // The cone of an identity is contractible.
    let id = pre.identity(&x1);
    let contractible = pre.cone(&x1, &x1, &id)?;
    println!("H*(End(Cone 1)) = {:?}", pre.hom_cohomology_dims(&contractible, &contractible));

    let shifted = pre.shift(&cone, 1);
    println!("Cone(a)[1] has entries {:?}", shifted.entries);
    Ok(())
}
