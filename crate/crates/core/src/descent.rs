//! Whether objects descend along `p_* ⊣ p^*`: the comparison functor into comodules over
//! `p_* p^*`, its essential image, and the repair by idempotent completion.

use std::sync::Arc;

use crate::action::Action;
use crate::equivar::{equivariant_structures, Equivariantization};
use crate::error::Result;
use crate::instances::Instance;
use crate::karoubi::{idempotents, KaroubiAction, KaroubiCat};
use crate::lincat::category::{find_iso, Category};
use crate::lincat::envelope::{Mor, Obj};
use crate::lincat::equivalence::{check_equivalence, EquivalenceCertificate, EssentialImage};
use crate::monadic::comodule_structures;
use crate::search::{Budget, Search};

/// Keeps one object from each isomorphism class, in order of first appearance.
pub fn iso_representatives(c: &dyn Category, objects: &[Obj], budget: Budget, seed: u64) -> Result<Vec<Obj>> {
    let mut reps: Vec<Obj> = Vec::new();
    for x in objects {
        let mut known = false;
        for r in &reps {
            match find_iso(c, r, x, budget, seed)? {
                Search::Found(_) => {
                    known = true;
                    break;
                }
                Search::NoneFound(_) => {}
                Search::BudgetExceeded { .. } => return Err(budget.exceeded("sorting objects into isomorphism classes")),
            }
        }
        if !known {
            reps.push(x.clone());
        }
    }
    Ok(reps)
}

/// All equivariant structures on the listed objects, one per isomorphism class.
pub fn equivariant_representatives(eq: &Equivariantization, objects: &[Obj], budget: Budget, seed: u64) -> Result<Vec<Obj>> {
    let mut all = Vec::new();
    for x in objects {
        let e = equivariant_structures(&*eq.action, x, budget)?;
        if !e.complete {
            return Err(budget.exceeded("equivariant structures"));
        }
        all.extend(e.found);
    }
    iso_representatives(&*eq.equivariant, &all, budget, seed)
}

/// `X ↦ (X, 1)` pushed through equivariant and comodule data.
pub fn embed_structured(base: &dyn Category, x: &Obj) -> Obj {
    match x {
        Obj::Equivariant(f, t) => Obj::Equivariant(Box::new(embed_structured(base, f)), t.clone()),
        Obj::Comodule(f, h) => Obj::Comodule(Box::new(embed_structured(base, f)), h.clone()),
        Obj::Module(f, a) => Obj::Module(Box::new(embed_structured(base, f)), a.clone()),
        other => Obj::Retract(Box::new(other.clone()), base.identity(other)),
    }
}

pub struct DescentReport {
    /// Equivariant objects the comodules were enumerated on.
    pub equivariant_objects: Vec<Obj>,
    /// Every comodule over `p_* p^*` on those objects.
    pub comodules: Vec<Obj>,
    pub comparison: EquivalenceCertificate,
    /// The first comodule certified to be outside the essential image, with the reason.
    pub witness: Option<(Obj, String)>,
    /// Sources in the idempotent completion, one per isomorphism class of retract.
    pub repaired_sources: Vec<Obj>,
    pub repaired: EquivalenceCertificate,
    /// The retract hitting the witness after completion.
    pub repair_source: Option<Obj>,
}

/// Runs the comparison `C → (C^G)_{T(p_*,p^*)}` on the listed objects, then again after
/// replacing `C` by its idempotent completion.
pub fn comodule_descent(inst: &Instance, budget: Budget, seed: u64) -> Result<DescentReport> {
    let eq = Equivariantization::new(inst.action.clone())?;
    let equivariant_objects = equivariant_representatives(&eq, &inst.objects, budget, seed)?;
    let comonad = eq.induce_forget().comonad();
    let mut comodules = Vec::new();
    for x in &equivariant_objects {
        let e = comodule_structures(&*comonad, x, budget)?;
        if !e.complete {
            return Err(budget.exceeded("comodule structures"));
        }
        comodules.extend(e.found);
    }
    let cmp = &eq.comparisons()[2];
    let comparison = check_equivalence(&*cmp.functor, &*cmp.source, &*cmp.target, &inst.objects, &comodules, budget, seed)?;
    let witness = comparison.essential.iter().zip(&comodules).find_map(|(e, m)| match e {
        EssentialImage::Miss(r) => Some((m.clone(), r.clone())),
        _ => None,
    });

    let kar_action: Arc<dyn Action> = Arc::new(KaroubiAction::new(inst.action.clone()));
    let kar = kar_action.category().clone();
    let base = inst.action.category();
    let mut retracts = Vec::new();
    for x in &inst.objects {
        let ps = idempotents(&**base, x, budget)?;
        if !ps.complete {
            return Err(budget.exceeded("idempotents"));
        }
        retracts.extend(ps.found.into_iter().map(|p| Obj::Retract(Box::new(x.clone()), p)));
    }
    let repaired_sources = iso_representatives(&*kar, &retracts, budget, seed)?;
    let kar_eq = Equivariantization::new(kar_action)?;
    let kcmp = &kar_eq.comparisons()[2];
    let targets: Vec<Obj> = comodules.iter().map(|m| embed_structured(&**base, m)).collect();
    let repaired = check_equivalence(
        &*kcmp.functor,
        &*kcmp.source,
        &*kcmp.target,
        &repaired_sources,
        &targets,
        budget,
        seed,
    )?;
    let repair_source = witness.as_ref().and_then(|(w, _)| {
        let i = comodules.iter().position(|m| m == w)?;
        match &repaired.essential[i] {
            EssentialImage::Hit { source, .. } => Some(repaired_sources[*source].clone()),
            _ => None,
        }
    });
    Ok(DescentReport {
        equivariant_objects,
        comodules,
        comparison,
        witness,
        repaired_sources,
        repaired,
        repair_source,
    })
}

/// Rank of an idempotent `p` on `X` in a matrix category, read off from `dim End(X, p) = rank²`.
pub fn idempotent_rank(kar: &KaroubiCat, x: &Obj, p: &Mor) -> Result<Option<usize>> {
    let r = Obj::Retract(Box::new(x.clone()), p.clone());
    let d = kar.hom_dim(&r, &r)?;
    Ok((0..=d).find(|k| k * k == d))
}
