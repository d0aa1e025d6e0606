use eqcat::descent::equivariant_representatives;
use eqcat::equivar::Equivariantization;
use eqcat::instances::trivial_z2;
use eqcat::lincat::equivalence::check_equivalence;
use eqcat::monadic::comodule_structures;
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    let inst = trivial_z2(Field::Prime(5))?;
    let eq = Equivariantization::new(inst.action.clone())?;
    let comonad = eq.forget_induce().comonad();

    // Every coaction on 0, k and k^2, found by exhaustive search.
    let mut comodules = Vec::new();
    for c in &inst.objects {
        let found = comodule_structures(&*comonad, c, Budget::default())?;
        println!("{c:?}: {} comodule structures", found.found.len());
        comodules.extend(found.found);
    }

    let sources = equivariant_representatives(&eq, &inst.objects, Budget::default(), 0)?;
    let cmp = &eq.comparisons()[0];
    let cert = check_equivalence(&*cmp.functor, &*cmp.source, &*cmp.target, &sources, &comodules, Budget::default(), 0)?;
    println!("{}: {:?}", cmp.name, cert.verdict());
    println!("{}", serde_json::to_string_pretty(&cert.summary()["misses"]).unwrap());
    Ok(())
}
