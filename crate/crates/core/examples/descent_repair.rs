use eqcat::descent::comodule_descent;
use eqcat::instances::even_dimensional;
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    // Even-dimensional vector spaces with a trivial Z/2 action. Comodules over p_* p^* include
    // k^2 with the swap, whose eigenlines are odd-dimensional and so not in the category.
    let inst = even_dimensional(Field::Prime(5))?;
    let r = comodule_descent(&inst, Budget::default(), 1)?;
    println!("{} comodules on {} equivariant objects", r.comodules.len(), r.equivariant_objects.len());
    println!("before completion: {:?}", r.comparison.verdict());
    if let Some((w, why)) = &r.witness {
        println!("  missed: {w:?}\n  because {why}");
    }
    println!("after completion: {:?} with {} retracts", r.repaired.verdict(), r.repaired_sources.len());
    if let Some(s) = &r.repair_source {
        println!("  the witness is hit by {s:?}");
    }
    Ok(())
}
