use eqcat::descent::equivariant_representatives;
use eqcat::instances::cyclic_z3;
use eqcat::lincat::category::find_iso;
use eqcat::lincat::functor::Functor;
use eqcat::reversion::Reversion;
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    // F_7 has cube roots of unity, so the dual of Z/3 has three characters.
    let inst = cyclic_z3(Field::Prime(7))?;
    let r = Reversion::new(inst.action.clone(), inst.objects.clone(), Budget::default(), 0)?;
    for (chi, values) in r.dual.characters.iter().enumerate() {
        let v: Vec<String> = values.iter().map(|s| s.to_string()).collect();
        println!("chi_{chi} = ({})", v.join(", "));
    }
    println!("gamma = {:?}", r.gamma.iter().map(|row| row.iter().map(|s| s.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());

    let eq_objs = equivariant_representatives(&r.eq, &inst.objects, Budget::default(), 0)?;
    let checks = r.check_isomorphisms(&eq_objs)?;
    println!("beta and gamma are comonad isomorphisms: {}", checks.passes());

    let sources: Vec<_> = inst.objects.iter().map(|c| r.lift(c)).collect::<eqcat::Result<_>>()?;
    let cert = r.certify(&sources, Budget::default(), 0)?;
    println!("(C^G)^dual -> C: {:?}", cert.verdict());
    for (c, s) in inst.objects.iter().zip(&sources) {
        let back = r.functor.map_obj(s)?;
        let iso = find_iso(&*r.eq.base, &back, c, Budget::default(), 0)?;
        println!("  {c:?} comes back up to isomorphism: {}", iso.is_found());
    }
    Ok(())
}
