//! Homotopy categories of twisted complexes with the induced action, their idempotent
//! completions, and the comparison from completed equivariant homotopy categories to
//! equivariant objects in completed homotopy categories.

use std::sync::Arc;

use crate::action::{Action, PresentedAction};
use crate::descent::iso_representatives;
use crate::dg::equivariant::{DgEquivariant, EquivariantPresentation, EquivariantPretr};
use crate::dg::presentation::{DgPresentation, H0};
use crate::dg::twisted::TwistedComplex;
use crate::equivar::{equivariant_structures, EquivariantCat};
use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::karoubi::{idempotents, karoubi_envelope, KaroubiAction, KaroubiCat, KaroubiEnvelope};
use crate::lincat::category::{find_iso, Category, Iso};
use crate::lincat::envelope::{Envelope, Mor, Obj};
use crate::lincat::equivalence::{check_equivalence, EquivalenceCertificate};
use crate::lincat::functor::{CheckReport, Functor};
use crate::search::{Budget, Search};

/// `H⁰` of the full DG subcategory on a list of twisted complexes closed under the action,
/// with the action it inherits.
pub struct HomotopyCategory {
    pub complexes: Vec<TwistedComplex>,
    pub dg: DgPresentation,
    pub h0: H0,
    pub envelope: Envelope,
    pub action: Arc<PresentedAction>,
}

impl HomotopyCategory {
    pub fn new(ep: &EquivariantPretr, complexes: &[TwistedComplex], names: &[String]) -> Result<Self> {
        let p = &ep.pretr;
        let group = ep.action.group();
        let n = complexes.len();
        let index = |t: &TwistedComplex| complexes.iter().position(|c| c == t);
        let perm: Vec<Vec<usize>> = group
            .elements()
            .map(|g| {
                complexes
                    .iter()
                    .enumerate()
                    .map(|(i, t)| {
                        index(&ep.action.phi(g, t))
                            .ok_or_else(|| Error::Input(format!("φ_{g} of complex {i} is not in the list")))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let dg = p.materialize(complexes, names)?;
        let h0 = dg.h0()?;
        let envelope = Envelope::new(Arc::new(h0.presentation.clone()));
        let field = p.field();
        let mut mor_map = Vec::new();
        for g in group.elements() {
            let mut per_g = Vec::with_capacity(n * n);
            for i in 0..n {
                for j in 0..n {
                    let (gi, gj) = (perm[g][i], perm[g][j]);
                    let images = h0.classes[i * n + j]
                        .representatives
                        .iter()
                        .map(|r| {
                            let v = ep.action.phi_mor(p, g, &complexes[i], &complexes[j], r);
                            let coords = h0
                                .class(gi, gj, &v)
                                .ok_or_else(|| Error::Structural(format!("φ_{g} does not preserve cycles on ({i},{j})")))?;
                            Ok(Mor { field, src: vec![gi], tgt: vec![gj], coords })
                        })
                        .collect::<Result<Vec<_>>>()?;
                    per_g.push(images);
                }
            }
            mor_map.push(per_g);
        }
        let obj_map = perm.iter().map(|pg| pg.iter().map(|&x| vec![x]).collect()).collect();
        let eps = group
            .elements()
            .map(|g| {
                group
                    .elements()
                    .map(|h| (0..n).map(|x| envelope.identity(&[perm[group.mul(h, g)][x]])).collect())
                    .collect()
            })
            .collect();
        let action = PresentedAction::new(envelope.clone(), group.clone(), obj_map, mor_map, eps)?;
        Ok(HomotopyCategory {
            complexes: complexes.to_vec(),
            dg,
            h0,
            envelope,
            action: Arc::new(action),
        })
    }

    pub fn index(&self, t: &TwistedComplex) -> Option<usize> {
        self.complexes.iter().position(|c| c == t)
    }

    /// The class of a closed degree-0 morphism between listed complexes.
    pub fn class(&self, i: usize, j: usize, f: &[Scalar]) -> Result<Mor> {
        let coords = self
            .h0
            .class(i, j, f)
            .ok_or_else(|| Error::Input(format!("not a closed degree-0 morphism from {i} to {j}")))?;
        Ok(Mor {
            field: self.envelope.field(),
            src: vec![i],
            tgt: vec![j],
            coords,
        })
    }

    pub fn category(&self) -> Arc<dyn Category> {
        self.action.category().clone()
    }

    /// The action extended to the idempotent completion.
    pub fn completed_action(&self) -> Arc<KaroubiAction> {
        Arc::new(KaroubiAction::new(self.action.clone()))
    }

    /// Every retract of every listed complex in the homotopy category.
    pub fn perf(&self, budget: Budget) -> Result<KaroubiEnvelope> {
        let objects: Vec<Obj> = (0..self.complexes.len()).map(|i| Obj::base(&[i])).collect();
        karoubi_envelope(&self.category(), &objects, budget)
    }
}

/// `H⁰` of the full subcategory of the equivariant DG category on listed objects whose
/// underlying complexes are listed in a [`HomotopyCategory`].
pub struct EquivariantHomotopy {
    pub objects: Vec<DgEquivariant>,
    pub presentation: EquivariantPresentation,
    pub h0: H0,
    pub envelope: Envelope,
    /// Position of each underlying complex in the homotopy category's list.
    pub underlying: Vec<usize>,
}

impl EquivariantHomotopy {
    pub fn new(ep: &EquivariantPretr, hc: &HomotopyCategory, objects: &[DgEquivariant], names: &[String]) -> Result<Self> {
        let underlying = objects
            .iter()
            .enumerate()
            .map(|(i, e)| hc.index(&e.complex).ok_or_else(|| Error::Input(format!("complex of object {i} is not listed"))))
            .collect::<Result<Vec<_>>>()?;
        let presentation = ep.materialize(objects, names)?;
        let h0 = presentation.dg.h0()?;
        let envelope = Envelope::new(Arc::new(h0.presentation.clone()));
        Ok(EquivariantHomotopy {
            objects: objects.to_vec(),
            presentation,
            h0,
            envelope,
            underlying,
        })
    }

    pub fn category(&self) -> Arc<dyn Category> {
        Arc::new(self.envelope.clone())
    }
}

/// `(F, θ) ↦ (p^* F, [θ])`, extended to retracts: the composite of the comparison functor into
/// comodules with the inverse of the equivalence from equivariant objects to comodules.
pub struct HomotopyComparison {
    pub homotopy: Arc<HomotopyCategory>,
    pub equivariant: Arc<EquivariantHomotopy>,
    pub source: Arc<KaroubiCat>,
    pub target_action: Arc<KaroubiAction>,
    pub target: Arc<EquivariantCat>,
    totals: Vec<Vec<usize>>,
    thetas: Vec<Vec<Mor>>,
}

impl HomotopyComparison {
    pub fn new(
        ep: &EquivariantPretr,
        complexes: &[TwistedComplex],
        objects: &[DgEquivariant],
    ) -> Result<Self> {
        let names: Vec<String> = (0..complexes.len()).map(|i| format!("T{i}")).collect();
        let homotopy = Arc::new(HomotopyCategory::new(ep, complexes, &names)?);
        let enames: Vec<String> = (0..objects.len()).map(|i| format!("E{i}")).collect();
        let equivariant = Arc::new(EquivariantHomotopy::new(ep, &homotopy, objects, &enames)?);
        let group = ep.action.group();
        let mut thetas = Vec::new();
        for (e, &u) in objects.iter().zip(&equivariant.underlying) {
            let mut per = Vec::new();
            for g in group.elements() {
                let gu = homotopy
                    .index(&ep.action.phi(g, &e.complex))
                    .ok_or_else(|| Error::Input("list is not closed under the action".into()))?;
                per.push(homotopy.class(u, gu, &e.thetas[g])?);
            }
            thetas.push(per);
        }
        let totals = complexes
            .iter()
            .map(|s| complexes.iter().map(|t| ep.pretr.layout(s, t).total).collect())
            .collect();
        let target_action = homotopy.completed_action();
        let target = Arc::new(EquivariantCat::new(target_action.clone())?);
        Ok(HomotopyComparison {
            source: Arc::new(KaroubiCat::new(equivariant.category())),
            target_action,
            target,
            totals,
            thetas,
            homotopy,
            equivariant,
        })
    }

    fn forget_block(&self, ei: usize, ej: usize, c: &[Scalar]) -> Result<Mor> {
        let eh = &self.equivariant;
        let m = eh.objects.len();
        let reps = &eh.h0.classes[ei * m + ej].representatives;
        let field = self.homotopy.envelope.field();
        let dim = eh.presentation.dg.linear.dim(ei, ej);
        let mut cycle = vec![field.zero(); dim];
        for (coef, r) in c.iter().zip(reps) {
            for (o, s) in cycle.iter_mut().zip(r) {
                *o = &*o + &(coef * s);
            }
        }
        let (ui, uj) = (eh.underlying[ei], eh.underlying[ej]);
        let v = eh.presentation.underlying(ei, ej, &cycle, self.totals[ui][uj]);
        self.homotopy.class(ui, uj, &v)
    }

    /// `p^*` on morphisms of the equivariant homotopy category.
    pub fn forget(&self, f: &Mor) -> Result<Mor> {
        let env = &self.homotopy.envelope;
        let u = &self.equivariant.underlying;
        let src: Vec<Vec<usize>> = f.src.iter().map(|&i| vec![u[i]]).collect();
        let tgt: Vec<Vec<usize>> = f.tgt.iter().map(|&j| vec![u[j]]).collect();
        let mut blocks = Vec::new();
        for (b, &ej) in f.tgt.iter().enumerate() {
            for (a, &ei) in f.src.iter().enumerate() {
                blocks.push(self.forget_block(ei, ej, self.equivariant.envelope.block(f, b, a))?);
            }
        }
        let n = f.src.len();
        Ok(env.matrix(&src, &tgt, |j, i| Some(blocks[j * n + i].clone())))
    }

    fn structured(&self, x: &Obj) -> Result<(Obj, Vec<usize>, Mor)> {
        let Obj::Retract(inner, p) = x else {
            return Err(Error::Input(format!("expected a retract, got {}", x.kind())));
        };
        let Obj::Sum(es) = &**inner else {
            return Err(Error::Input("expected a retract of a formal sum".into()));
        };
        let u: Vec<usize> = es.iter().map(|&e| self.equivariant.underlying[e]).collect();
        Ok((Obj::Sum(u), es.clone(), self.forget(p)?))
    }

    /// The homotopy comparison applied to `Retract(Sum(es), p)`.
    pub fn image(&self, x: &Obj) -> Result<Obj> {
        let (b, es, p) = self.structured(x)?;
        let env = &self.homotopy.envelope;
        let action = &self.homotopy.action;
        let group = action.group();
        let mut thetas = Vec::new();
        for g in group.elements() {
            let gb = action.phi_obj(g, &b)?;
            let theta = if es.is_empty() {
                env.zero(&[], &[])
            } else {
                env.block_diag(&es.iter().map(|&e| self.thetas[e][g].clone()).collect::<Vec<_>>())
            };
            let gp = action.phi_mor(g, &b, &b, &p)?;
            thetas.push(env.compose(&gp, &env.compose(&theta, &p)));
            debug_assert_eq!(gb.underlying(), thetas[g].tgt.as_slice());
        }
        Ok(Obj::Equivariant(Box::new(Obj::Retract(Box::new(b), p)), thetas))
    }

    /// Objects `(Sum([i]), 1)` of the equivariant homotopy category.
    pub fn uncompleted_sources(&self) -> Vec<Obj> {
        (0..self.equivariant.objects.len()).map(|i| self.source.embed(&Obj::base(&[i]))).collect()
    }

    /// One retract per isomorphism class among all retracts of the listed equivariant objects.
    pub fn completed_sources(&self, budget: Budget, seed: u64) -> Result<Vec<Obj>> {
        let base = self.equivariant.category();
        let mut retracts = Vec::new();
        for i in 0..self.equivariant.objects.len() {
            let x = Obj::base(&[i]);
            let ps = idempotents(&*base, &x, budget)?;
            if !ps.complete {
                return Err(budget.exceeded("idempotents of an equivariant homotopy object"));
            }
            retracts.extend(ps.found.into_iter().map(|p| Obj::Retract(Box::new(x.clone()), p)));
        }
        iso_representatives(&*self.source, &retracts, budget, seed)
    }

    /// Adds the direct sums of all pairs of nonzero objects.
    pub fn with_pairwise_sums(&self, objects: &[Obj]) -> Result<Vec<Obj>> {
        let mut out = objects.to_vec();
        let nonzero: Vec<&Obj> = objects
            .iter()
            .filter(|x| !self.source.identity(x).is_zero())
            .collect();
        for (a, x) in nonzero.iter().enumerate() {
            for y in &nonzero[a..] {
                out.push(self.source.direct_sum(&[(*x).clone(), (*y).clone()])?);
            }
        }
        Ok(out)
    }

    /// Every equivariant structure on every retract of the listed complexes, one per
    /// isomorphism class.
    pub fn targets(&self, budget: Budget, seed: u64) -> Result<Vec<Obj>> {
        let base = self.homotopy.category();
        let kar = self.target_action.category().clone();
        let mut retracts = Vec::new();
        for j in 0..self.homotopy.complexes.len() {
            let x = Obj::base(&[j]);
            let ps = idempotents(&*base, &x, budget)?;
            if !ps.complete {
                return Err(budget.exceeded("idempotents of a homotopy object"));
            }
            retracts.extend(ps.found.into_iter().map(|p| Obj::Retract(Box::new(x.clone()), p)));
        }
        let retracts = iso_representatives(&*kar, &retracts, budget, seed)?;
        let mut all = Vec::new();
        for r in &retracts {
            let s = equivariant_structures(&*self.target_action, r, budget)?;
            if !s.complete {
                return Err(budget.exceeded("equivariant structures on a retract"));
            }
            all.extend(s.found);
        }
        iso_representatives(&*self.target, &all, budget, seed)
    }

    pub fn certify(&self, sources: &[Obj], targets: &[Obj], budget: Budget, seed: u64) -> Result<EquivalenceCertificate> {
        check_equivalence(self, &*self.source, &*self.target, sources, targets, budget, seed)
    }

    /// Whether `p^* M` is isomorphic in the completed homotopy category to one of the listed
    /// complexes `candidates`, with the isomorphism found.
    pub fn qg_membership(&self, m: &Obj, candidates: &[usize], budget: Budget, seed: u64) -> Result<Search<(usize, Iso)>> {
        let (b, _, p) = self.structured(m)?;
        let x = Obj::Retract(Box::new(b), p);
        let kar = self.target_action.category();
        let mut tried = 0;
        let mut reasons = Vec::new();
        for (k, &c) in candidates.iter().enumerate() {
            let y = Obj::Retract(Box::new(Obj::base(&[c])), self.homotopy.envelope.identity(&[c]));
            match find_iso(&**kar, &x, &y, budget, seed.wrapping_add(k as u64))? {
                Search::Found(iso) => return Ok(Search::Found((c, iso))),
                Search::NoneFound(r) => reasons.push(format!("complex {c}: {r}")),
                Search::BudgetExceeded { tried: t } => tried += t.max(1),
            }
        }
        Ok(if tried > 0 {
            Search::BudgetExceeded { tried }
        } else {
            Search::NoneFound(reasons.join("; "))
        })
    }

    /// The split-unit check on every listed equivariant object.
    pub fn check_split_unit(&self, ep: &EquivariantPretr) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        for e in &self.equivariant.objects {
            report.merge(ep.check_split_unit(e)?);
        }
        Ok(report)
    }
}

impl Functor for HomotopyComparison {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        self.image(x)
    }

    fn map_mor(&self, _x: &Obj, _y: &Obj, f: &Mor) -> Result<Mor> {
        self.forget(f)
    }
}
