use eqcat::dg::graded::GradedSwap;
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    // Z/3-graded spaces V0, V1, V2 with Z/2 swapping V1 and V2, and M_i = V0 + Cone(1_{V_i}).
    let gs = GradedSwap::new(Field::Prime(5))?;
    let r = gs.shift_closure(Budget::default(), 1)?;
    println!("structures on M1, M2: {:?}", r.structures_on_m);
    println!("structures on V0: {}", r.structures_on_v0);
    for o in &r.objects {
        println!("  {:<20} structures {:>2}  like V0: {}", o.name, o.structures, o.quasi_isomorphic_to_v0);
    }
    println!(
        "{} equivariant objects searched, {} isomorphic to (V0, 1); (V0[-1], 1) listed: {}",
        r.searched, r.isomorphic_to_v0, r.shifted_present
    );
    Ok(())
}
