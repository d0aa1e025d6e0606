use eqcat::equivar::{check_equivariant, equivariant_structures, structure};
use eqcat::instances::swap_z2;
use eqcat::{Budget, Field};

fn main() -> eqcat::Result<()> {
    // Z/2 swapping two objects X1 and X2 with no maps between them.
    let inst = swap_z2(Field::Prime(5))?;
    for x in &inst.objects {
        let found = equivariant_structures(&*inst.action, x, Budget::default())?;
        println!("{x:?}: {} structures (complete: {})", found.found.len(), found.complete);
        for s in &found.found {
            let (f, thetas) = structure(s)?;
            let report = check_equivariant(&*inst.action, f, thetas)?;
            let coords: Vec<String> = thetas[1].coords.iter().map(|c| c.to_string()).collect();
            println!("  theta_g = [{}]  cocycle checks passed: {}", coords.join(" "), report.passes());
        }
    }
    Ok(())
}
