use eqcat::dg::graded::{missed, GradedSwap};
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    let gs = GradedSwap::new(Field::Prime(5))?;
    for with_v0 in [true, false] {
        let r = gs.comparison(with_v0, Budget::default(), 1)?;
        println!("generators include V0: {with_v0}");
        println!("  split unit: {}", r.split_unit.passes());
        println!("  after splitting idempotents: {:?}", r.completed.verdict());
        println!("  before: {:?}, missed targets {:?}", r.uncompleted.verdict(), missed(&r.uncompleted));
        for k in 0..2 {
            println!("  simple {k}: hit before {} after {}", r.simple_hit(false, k), r.simple_hit(true, k));
        }
    }
    Ok(())
}
