//! Equivariant objects for a group action, the forgetful and induction functors between a
//! category and its equivariantization, and the comparison functors of the two adjunctions
//! they form.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::action::{unit_iso, Action};
use crate::error::{Error, Result};
use crate::lincat::category::Category;
use crate::lincat::envelope::{combination, Envelope, Mor, Obj};
use crate::lincat::functor::{CheckReport, Component, Functor};
use crate::monadic::{kernel_subspace, Adjunction, ComoduleCat, ModuleCat};
use crate::search::{enumerate_coefficients, Budget, Enumeration};

type HomCache = Mutex<HashMap<(Obj, Obj), Vec<Mor>>>;

/// The category `C^G` of equivariant objects `(F, θ)` with `θ_g : F → φ_g F`.
pub struct EquivariantCat {
    action: Arc<dyn Action>,
    cache: HomCache,
}

impl EquivariantCat {
    pub fn new(action: Arc<dyn Action>) -> Result<Self> {
        action.group().require_invertible_order(action.category().field())?;
        Ok(EquivariantCat {
            action,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn action(&self) -> &Arc<dyn Action> {
        &self.action
    }

    fn parts<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a [Mor])> {
        match x {
            Obj::Equivariant(f, t) if t.len() == self.action.group().order() => Ok((f, t)),
            _ => Err(Error::Input(format!("expected an equivariant object, got {}", x.kind()))),
        }
    }
}

impl Category for EquivariantCat {
    fn envelope(&self) -> &Envelope {
        self.action.category().envelope()
    }

    fn identity(&self, x: &Obj) -> Mor {
        self.action.category().identity(x.inner().unwrap_or(x))
    }

    fn hom_basis(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        let ((a, ta), (b, tb)) = (self.parts(x)?, self.parts(y)?);
        let key = (x.clone(), y.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let base = self.action.category();
        let basis = base.hom_basis(a, b)?;
        let out = kernel_subspace(base.field(), &basis, |f| {
            let mut v = Vec::new();
            for g in self.action.group().elements() {
                let lhs = base.compose(&self.action.phi_mor(g, a, b, f)?, &ta[g]);
                let rhs = base.compose(&tb[g], f);
                v.extend(lhs.sub(&rhs).coords);
            }
            Ok(v)
        })?;
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    fn direct_sum(&self, xs: &[Obj]) -> Result<Obj> {
        let base = self.action.category();
        let inners: Vec<Obj> = xs.iter().map(|x| self.parts(x).map(|p| p.0.clone())).collect::<Result<_>>()?;
        let sum = base.direct_sum(&inners)?;
        let mut thetas = Vec::new();
        for g in self.action.group().elements() {
            let gsum = self.action.phi_obj(g, &sum)?;
            let mut th = base.zero_mor(&sum, &gsum);
            for (i, x) in xs.iter().enumerate() {
                let (f, t) = self.parts(x)?;
                let inj = self.action.phi_mor(g, f, &sum, &base.injection(&inners, i)?)?;
                th = th.add(&base.compose(&inj, &base.compose(&t[g], &base.projection(&inners, i)?)));
            }
            thetas.push(th);
        }
        Ok(Obj::Equivariant(Box::new(sum), thetas))
    }

    fn contains(&self, x: &Obj) -> bool {
        matches!(x, Obj::Equivariant(f, t)
            if t.len() == self.action.group().order() && self.action.category().contains(f))
    }

    fn name(&self) -> String {
        format!("equivariant objects in {}", self.action.category().name())
    }
}

/// Checks that `θ` is an equivariant structure on `f`: each `θ_g ∈ Hom(F, φ_g F)` is
/// invertible, `ε_{g,h}(F) ∘ φ_g(θ_h) ∘ θ_g = θ_{hg}`, and `θ_e` is the unit isomorphism.
pub fn check_equivariant(action: &dyn Action, f: &Obj, thetas: &[Mor]) -> Result<CheckReport> {
    let cat = &**action.category();
    let group = action.group();
    let mut report = CheckReport::default();
    if thetas.len() != group.order() {
        return Err(Error::Input(format!(
            "need {} structure maps, got {}",
            group.order(),
            thetas.len()
        )));
    }
    let mut typed = true;
    for g in group.elements() {
        let gf = action.phi_obj(g, f)?;
        let ok = cat.is_morphism(f, &gf, &thetas[g])?;
        report.record(ok, || format!("θ_{} has the wrong type", group.name(g)));
        typed &= ok;
        if ok {
            let inv = cat.inverse(f, &gf, &thetas[g])?.is_some();
            report.record(inv, || format!("θ_{} is not invertible", group.name(g)));
        }
    }
    if !typed {
        return Ok(report);
    }
    for g in group.elements() {
        for h in group.elements() {
            let lhs = cocycle_product(action, f, &thetas[g], &thetas[h], g, h)?;
            let ok = lhs == thetas[group.mul(h, g)];
            report.record(ok, || {
                format!("ε ∘ φ_{}(θ_{}) ∘ θ_{} ≠ θ_hg", group.name(g), group.name(h), group.name(g))
            });
        }
    }
    let u = unit_iso(action, f)?;
    report.record(thetas[group.identity()] == u, || "θ_e is not the unit isomorphism".into());
    Ok(report)
}

/// `ε_{g,h}(F) ∘ φ_g(θ_h) ∘ θ_g`.
fn cocycle_product(action: &dyn Action, f: &Obj, theta_g: &Mor, theta_h: &Mor, g: usize, h: usize) -> Result<Mor> {
    let cat = &**action.category();
    let hf = action.phi_obj(h, f)?;
    let gth = action.phi_mor(g, f, &hf, theta_h)?;
    Ok(cat.compose(&action.eps(g, h, f)?, &cat.compose(&gth, theta_g)))
}

/// All equivariant structures on `f`. Structure maps are chosen on a generating set of the
/// group and propagated by the cocycle identity; every completed candidate is then checked.
pub fn equivariant_structures(action: &dyn Action, f: &Obj, budget: Budget) -> Result<Enumeration<Obj>> {
    let cat = &**action.category();
    let group = action.group();
    let gens = group.generators();
    let mut bases = Vec::new();
    let mut zeros = Vec::new();
    for &s in &gens {
        let sf = action.phi_obj(s, f)?;
        bases.push(cat.hom_basis(f, &sf)?);
        zeros.push(cat.zero_mor(f, &sf));
    }
    let d: usize = bases.iter().map(Vec::len).sum();
    let unit = unit_iso(action, f)?;
    enumerate_coefficients(cat.field(), d, budget, |coeffs| {
        let mut known: Vec<Option<Mor>> = vec![None; group.order()];
        known[group.identity()] = Some(unit.clone());
        let mut offset = 0;
        for (k, &s) in gens.iter().enumerate() {
            let n = bases[k].len();
            let th = if n == 0 {
                zeros[k].clone()
            } else {
                combination(&coeffs[offset..offset + n], &bases[k])
            };
            offset += n;
            if let Some(prev) = &known[s] {
                if *prev != th {
                    return Ok(None);
                }
            }
            known[s] = Some(th);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for g in group.elements() {
                for h in group.elements() {
                    let hg = group.mul(h, g);
                    if known[hg].is_some() {
                        continue;
                    }
                    if let (Some(tg), Some(th)) = (&known[g], &known[h]) {
                        known[hg] = Some(cocycle_product(action, f, tg, th, g, h)?);
                        changed = true;
                    }
                }
            }
        }
        let thetas: Vec<Mor> = match known.into_iter().collect::<Option<Vec<_>>>() {
            Some(t) => t,
            None => return Ok(None),
        };
        let report = check_equivariant(action, f, &thetas)?;
        Ok(report.passes().then(|| Obj::Equivariant(Box::new(f.clone()), thetas)))
    })
}

/// The structure maps of an equivariant object.
pub fn structure(x: &Obj) -> Result<(&Obj, &[Mor])> {
    match x {
        Obj::Equivariant(f, t) => Ok((f, t)),
        _ => Err(Error::Input(format!("expected an equivariant object, got {}", x.kind()))),
    }
}

/// `p^*`: forgets the equivariant structure.
pub struct Forget;

impl Functor for Forget {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        Ok(structure(x)?.0.clone())
    }

    fn map_mor(&self, _: &Obj, _: &Obj, f: &Mor) -> Result<Mor> {
        Ok(f.clone())
    }
}

/// `p_*`: `F ↦ (⊕_h φ_h F, ξ)` where the `(h, hg)` block of `ξ_g` is `ε_{g,h}(F)⁻¹`.
pub struct Induce {
    action: Arc<dyn Action>,
    cache: Mutex<HashMap<Obj, Obj>>,
}

impl Induce {
    pub fn new(action: Arc<dyn Action>) -> Self {
        Induce {
            action,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn summands(&self, f: &Obj) -> Result<Vec<Obj>> {
        self.action.group().elements().map(|h| self.action.phi_obj(h, f)).collect()
    }

    fn build(&self, f: &Obj) -> Result<Obj> {
        let cat = &**self.action.category();
        let group = self.action.group();
        let parts = self.summands(f)?;
        let sum = cat.direct_sum(&parts)?;
        let mut xis = Vec::new();
        for g in group.elements() {
            let gparts: Vec<Obj> = parts.iter().map(|p| self.action.phi_obj(g, p)).collect::<Result<_>>()?;
            let gsum = self.action.phi_obj(g, &sum)?;
            if cat.direct_sum(&gparts)? != gsum {
                return Err(Error::Structural(format!(
                    "φ_{} does not preserve the chosen direct sum of {f:?}",
                    group.name(g)
                )));
            }
            let mut xi = cat.zero_mor(&sum, &gsum);
            for h in group.elements() {
                let hg = group.mul(h, g);
                let e = self.action.eps(g, h, f)?;
                let einv = cat.inverse(&gparts[h], &parts[hg], &e)?.ok_or_else(|| {
                    Error::Structural(format!("ε_({},{}) is not invertible", group.name(g), group.name(h)))
                })?;
                let term = cat.compose(
                    &cat.injection(&gparts, h)?,
                    &cat.compose(&einv, &cat.projection(&parts, hg)?),
                );
                xi = xi.add(&term);
            }
            xis.push(xi);
        }
        Ok(Obj::Equivariant(Box::new(sum), xis))
    }
}

impl Functor for Induce {
    fn map_obj(&self, f: &Obj) -> Result<Obj> {
        if let Some(v) = self.cache.lock().expect("cache lock").get(f) {
            return Ok(v.clone());
        }
        let out = self.build(f)?;
        self.cache.lock().expect("cache lock").insert(f.clone(), out.clone());
        Ok(out)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let cat = &**self.action.category();
        let (px, py) = (self.summands(x)?, self.summands(y)?);
        let mut out = cat.zero_mor(&cat.direct_sum(&px)?, &cat.direct_sum(&py)?);
        for h in self.action.group().elements() {
            let hf = self.action.phi_mor(h, x, y, f)?;
            let term = cat.compose(&cat.injection(&py, h)?, &cat.compose(&hf, &cat.projection(&px, h)?));
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// `C`, `C^G`, and the functors and transformations relating them.
#[derive(Clone)]
pub struct Equivariantization {
    pub action: Arc<dyn Action>,
    pub base: Arc<dyn Category>,
    pub equivariant: Arc<dyn Category>,
    pub induce: Arc<dyn Functor>,
    pub forget: Arc<dyn Functor>,
}

impl Equivariantization {
    pub fn new(action: Arc<dyn Action>) -> Result<Self> {
        let equivariant: Arc<dyn Category> = Arc::new(EquivariantCat::new(action.clone())?);
        Ok(Equivariantization {
            base: action.category().clone(),
            induce: Arc::new(Induce::new(action.clone())),
            forget: Arc::new(Forget),
            equivariant,
            action,
        })
    }

    fn order_scalar(&self) -> crate::field::Scalar {
        self.base.field().from_i64(self.action.group().order() as i64)
    }

    /// `η(𝔉) = (θ_h)_h : 𝔉 → p_* p^* 𝔉`.
    pub fn eta(&self) -> Component {
        let base = self.base.clone();
        let action = self.action.clone();
        Arc::new(move |x: &Obj| {
            let (f, thetas) = structure(x)?;
            let parts: Vec<Obj> = action.group().elements().map(|h| action.phi_obj(h, f)).collect::<Result<_>>()?;
            let mut out = base.zero_mor(f, &base.direct_sum(&parts)?);
            for h in action.group().elements() {
                out = out.add(&base.compose(&base.injection(&parts, h)?, &thetas[h]));
            }
            Ok(out)
        })
    }

    /// `ε(F) = u(F)⁻¹ ∘ pr_e : p^* p_* F → F`.
    pub fn eps(&self) -> Component {
        let base = self.base.clone();
        let action = self.action.clone();
        Arc::new(move |f: &Obj| {
            let e = action.group().identity();
            let parts: Vec<Obj> = action.group().elements().map(|h| action.phi_obj(h, f)).collect::<Result<_>>()?;
            let u = unit_iso(&*action, f)?;
            let uinv = base
                .inverse(f, &parts[e], &u)?
                .ok_or_else(|| Error::Structural("unit isomorphism is not invertible".into()))?;
            Ok(base.compose(&uinv, &base.projection(&parts, e)?))
        })
    }

    /// `η'(F) = in_e ∘ u(F) : F → p^* p_* F`.
    pub fn eta_prime(&self) -> Component {
        let base = self.base.clone();
        let action = self.action.clone();
        Arc::new(move |f: &Obj| {
            let e = action.group().identity();
            let parts: Vec<Obj> = action.group().elements().map(|h| action.phi_obj(h, f)).collect::<Result<_>>()?;
            Ok(base.compose(&base.injection(&parts, e)?, &unit_iso(&*action, f)?))
        })
    }

    /// `ε'(𝔉) = (θ_h⁻¹)_h : p_* p^* 𝔉 → 𝔉`.
    pub fn eps_prime(&self) -> Component {
        let base = self.base.clone();
        let action = self.action.clone();
        Arc::new(move |x: &Obj| {
            let (f, thetas) = structure(x)?;
            let parts: Vec<Obj> = action.group().elements().map(|h| action.phi_obj(h, f)).collect::<Result<_>>()?;
            let mut out = base.zero_mor(&base.direct_sum(&parts)?, f);
            for h in action.group().elements() {
                let inv = base
                    .inverse(f, &parts[h], &thetas[h])?
                    .ok_or_else(|| Error::Input("structure map is not invertible".into()))?;
                out = out.add(&base.compose(&inv, &base.projection(&parts, h)?));
            }
            Ok(out)
        })
    }

    /// `ε'/|G|`, a natural retraction of `η`.
    pub fn averaged_eps_prime(&self) -> Component {
        let e = self.eps_prime();
        let s = self.order_scalar().inv().expect("|G| is invertible");
        Arc::new(move |x: &Obj| Ok(e(x)?.scale(&s)))
    }

    /// `p^* ⊣ p_*`, an adjunction `C^G ⇄ C`.
    pub fn forget_induce(&self) -> Arc<Adjunction> {
        Arc::new(Adjunction {
            source: self.equivariant.clone(),
            target: self.base.clone(),
            left: self.forget.clone(),
            right: self.induce.clone(),
            unit: self.eta(),
            counit: self.eps(),
        })
    }

    /// `p_* ⊣ p^*`, an adjunction `C ⇄ C^G`.
    pub fn induce_forget(&self) -> Arc<Adjunction> {
        Arc::new(Adjunction {
            source: self.base.clone(),
            target: self.equivariant.clone(),
            left: self.induce.clone(),
            right: self.forget.clone(),
            unit: self.eta_prime(),
            counit: self.eps_prime(),
        })
    }

    /// Checks `ε ∘ η' = 1` on `cs` and `ε' ∘ η = |G|` on `equivariant_objects`.
    pub fn check_unit_counit_identities(&self, cs: &[Obj], equivariant_objects: &[Obj]) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        let (eps, eta_p) = (self.eps(), self.eta_prime());
        for c in cs {
            let lhs = self.base.compose(&eps(c)?, &eta_p(c)?);
            report.record(lhs == self.base.identity(c), || format!("ε ∘ η' ≠ 1 at {c:?}"));
        }
        let (eps_p, eta) = (self.eps_prime(), self.eta());
        let n = self.order_scalar();
        for x in equivariant_objects {
            let lhs = self.base.compose(&eps_p(x)?, &eta(x)?);
            let rhs = self.equivariant.identity(x).scale(&n);
            report.record(lhs == rhs, || format!("ε' ∘ η ≠ |G| at {x:?}"));
        }
        Ok(report)
    }

    /// The four comparison functors, in the order
    /// `C^G → C_T(p^*,p_*)`, `C^G → C^S(p_*,p^*)`, `C → (C^G)_T(p_*,p^*)`, `C → (C^G)^S(p^*,p_*)`.
    pub fn comparisons(&self) -> [Comparison; 4] {
        let fi = self.forget_induce();
        let inf = self.induce_forget();
        [
            Comparison {
                name: "equivariant objects to comodules over p*p_*",
                functor: Arc::new(fi.comodule_comparison()),
                source: self.equivariant.clone(),
                target: Arc::new(ComoduleCat::new(fi.comonad())),
            },
            Comparison {
                name: "equivariant objects to modules over p*p_*",
                functor: Arc::new(inf.module_comparison()),
                source: self.equivariant.clone(),
                target: Arc::new(ModuleCat::new(inf.monad())),
            },
            Comparison {
                name: "objects to comodules over p_*p*",
                functor: Arc::new(inf.comodule_comparison()),
                source: self.base.clone(),
                target: Arc::new(ComoduleCat::new(inf.comonad())),
            },
            Comparison {
                name: "objects to modules over p_*p*",
                functor: Arc::new(fi.module_comparison()),
                source: self.base.clone(),
                target: Arc::new(ModuleCat::new(fi.monad())),
            },
        ]
    }
}

/// A comparison functor together with its source and target categories.
#[derive(Clone)]
pub struct Comparison {
    pub name: &'static str,
    pub functor: Arc<dyn Functor>,
    pub source: Arc<dyn Category>,
    pub target: Arc<dyn Category>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::PresentedAction;
    use crate::field::Field;
    use crate::group::Group;
    use crate::lincat::presentation::Presentation;
    use crate::monadic::{check_comodule, check_comonad};

    fn trivial_z2() -> Equivariantization {
        let env = Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(5))));
        let a = PresentedAction::trivial(env, Group::cyclic(2)).unwrap();
        Equivariantization::new(Arc::new(a)).unwrap()
    }

    #[test]
    fn induced_object_is_equivariant() {
        let eq = trivial_z2();
        let k = Obj::base(&[0]);
        let (f, xi) = match eq.induce.map_obj(&k).unwrap() {
            Obj::Equivariant(f, xi) => (*f, xi),
            _ => unreachable!(),
        };
        assert!(check_equivariant(&*eq.action, &f, &xi).unwrap().passes());
    }

    #[test]
    fn adjunctions_hold() {
        let eq = trivial_z2();
        let k = Obj::base(&[0]);
        let kk = Obj::base(&[0, 0]);
        let objs_g = equivariant_structures(&*eq.action, &k, Budget::default()).unwrap().found;
        assert_eq!(objs_g.len(), 2);
        let fi = eq.forget_induce();
        assert!(fi.check(&objs_g, &[k.clone(), kk.clone()]).unwrap().passes());
        let inf = eq.induce_forget();
        assert!(inf.check(&[k.clone(), kk.clone()], &objs_g).unwrap().passes());
        assert!(check_comonad(&*fi.comonad(), &[k.clone()]).unwrap().passes());
        let ids = eq.check_unit_counit_identities(&[k.clone(), kk], &objs_g).unwrap();
        assert!(ids.passes(), "{ids:?}");
        let phi = fi.comodule_comparison();
        for x in &objs_g {
            let Obj::Comodule(c, h) = phi.map_obj(x).unwrap() else { unreachable!() };
            assert!(check_comodule(&*fi.comonad(), &c, &h).unwrap().passes());
        }
    }
}
