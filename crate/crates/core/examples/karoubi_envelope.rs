use std::sync::Arc;

use eqcat::instances::even_dimensional;
use eqcat::karoubi::{idempotent_completeness, karoubi_envelope};
use eqcat::lincat::category::Category;
use eqcat::lincat::envelope::{Envelope, Obj};
use eqcat::lincat::presentation::Presentation;
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    let f = Field::Prime(5);
    let vect: Arc<dyn Category> = Arc::new(Envelope::new(Arc::new(Presentation::ground_field(f))));
    let lines = [Obj::base(&[]), Obj::base(&[0]), Obj::base(&[0, 0])];
    println!("k-vect, dims <= 2: {:?}", idempotent_completeness(&vect, &lines, Budget::default(), 0)?);

    let even = even_dimensional(f)?;
    let c = even.action.category();
    println!("even dims: {:?}", idempotent_completeness(c, &even.objects, Budget::default(), 0)?);

    let env = karoubi_envelope(c, &even.objects, Budget::default())?;
    let report = env.presentation.presentation.validate()?;
    println!(
        "completion on the listed objects: {} retracts, presentation valid = {}",
        env.objects.len(),
        report.passes()
    );
    Ok(())
}
