use eqcat::descent::equivariant_representatives;
use eqcat::equivar::Equivariantization;
use eqcat::instances::{cyclic_z3, trivial_z2};
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    for inst in [trivial_z2(Field::Prime(5))?, cyclic_z3(Field::Prime(7))?] {
        let eq = Equivariantization::new(inst.action.clone())?;
        let reps = equivariant_representatives(&eq, &inst.objects, Budget::default(), 0)?;
        println!("{}: {} equivariant objects up to isomorphism", inst.name, reps.len());

        let forget_induce = eq.forget_induce().check(&reps, &inst.objects)?;
        let induce_forget = eq.induce_forget().check(&inst.objects, &reps)?;
        let units = eq.check_unit_counit_identities(&inst.objects, &reps)?;
        println!("  forget -| induce: {} checks, ok = {}", forget_induce.checked, forget_induce.passes());
        println!("  induce -| forget: {} checks, ok = {}", induce_forget.checked, induce_forget.passes());
        println!("  eps . eta' = 1 and eps' . eta = |G|: ok = {}", units.passes());
    }
    Ok(())
}
