//! The idempotent completion of a category and the induced group action on it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::action::Action;
use crate::error::{Error, Result};
use crate::group::Group;
use crate::lincat::category::{find_iso, materialize, Category, Iso, Materialized};
use crate::lincat::envelope::{combination, Envelope, Mor, Obj};
use crate::lincat::functor::{CheckReport, Functor};
use crate::monadic::{Comonad, Monad};
use crate::matrix::Matrix;
use crate::search::{enumerate_coefficients, Budget, Enumeration, Search};

/// Objects `Retract(X, p)` with `p` idempotent; `Hom((X,p),(Y,q)) = q ∘ Hom(X,Y) ∘ p`.
pub struct KaroubiCat {
    base: Arc<dyn Category>,
    cache: Mutex<HashMap<(Obj, Obj), Vec<Mor>>>,
}

impl KaroubiCat {
    pub fn new(base: Arc<dyn Category>) -> Self {
        KaroubiCat {
            base,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn base(&self) -> &Arc<dyn Category> {
        &self.base
    }

    /// `X ↦ (X, 1)`.
    pub fn embed(&self, x: &Obj) -> Obj {
        Obj::Retract(Box::new(x.clone()), self.base.identity(x))
    }

    /// `(X, p)`, after checking that `p` is an idempotent endomorphism of `X`.
    pub fn retract(&self, x: &Obj, p: &Mor) -> Result<Obj> {
        if !is_idempotent(&*self.base, x, p)? {
            return Err(Error::Input(format!("not an idempotent on {x:?}")));
        }
        Ok(Obj::Retract(Box::new(x.clone()), p.clone()))
    }

    fn parts<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a Mor)> {
        match x {
            Obj::Retract(b, p) => Ok((b, p)),
            _ => Err(Error::Input(format!("expected a retract, got {}", x.kind()))),
        }
    }
}

pub fn is_idempotent(c: &dyn Category, x: &Obj, p: &Mor) -> Result<bool> {
    Ok(c.is_morphism(x, x, p)? && c.compose(p, p) == *p)
}

impl Category for KaroubiCat {
    fn envelope(&self) -> &Envelope {
        self.base.envelope()
    }

    fn identity(&self, x: &Obj) -> Mor {
        match x {
            Obj::Retract(_, p) => p.clone(),
            _ => self.base.identity(x),
        }
    }

    fn hom_basis(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        let ((a, p), (b, q)) = (self.parts(x)?, self.parts(y)?);
        let key = (x.clone(), y.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let basis = self.base.hom_basis(a, b)?;
        let out = if basis.is_empty() {
            Vec::new()
        } else {
            let spanning: Vec<Vec<_>> = basis
                .iter()
                .map(|f| self.base.compose(q, &self.base.compose(f, p)).coords)
                .collect();
            let field = self.field();
            // Row-reduce the spanning set, then express the reduced rows back as morphisms.
            let reduced = Matrix::span_basis(field, &spanning);
            let template = &basis[0];
            reduced
                .into_iter()
                .map(|coords| Mor {
                    coords,
                    ..template.clone()
                })
                .collect()
        };
        self.cache.lock().expect("cache lock").insert(key, out.clone());
        Ok(out)
    }

    fn direct_sum(&self, xs: &[Obj]) -> Result<Obj> {
        let inners: Vec<Obj> = xs.iter().map(|x| self.parts(x).map(|p| p.0.clone())).collect::<Result<_>>()?;
        let sum = self.base.direct_sum(&inners)?;
        let mut p = self.base.zero_mor(&sum, &sum);
        for (i, x) in xs.iter().enumerate() {
            let (_, pi) = self.parts(x)?;
            let term = self.base.compose(
                &self.base.injection(&inners, i)?,
                &self.base.compose(pi, &self.base.projection(&inners, i)?),
            );
            p = p.add(&term);
        }
        Ok(Obj::Retract(Box::new(sum), p))
    }

    fn contains(&self, x: &Obj) -> bool {
        matches!(x, Obj::Retract(b, _) if self.base.contains(b))
    }

    fn name(&self) -> String {
        format!("idempotent completion of {}", self.base.name())
    }
}

/// `X ↦ (X, 1)` as a functor.
pub struct Embed(pub Arc<dyn Category>);

impl Functor for Embed {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        Ok(Obj::Retract(Box::new(x.clone()), self.0.identity(x)))
    }

    fn map_mor(&self, _: &Obj, _: &Obj, f: &Mor) -> Result<Mor> {
        Ok(f.clone())
    }
}

/// The action `φ̄_g(X, p) = (φ_g X, φ_g p)` with `ε̄ = φ_{hg}(p) ∘ ε(X) ∘ φ_g φ_h(p)`.
pub struct KaroubiAction {
    inner: Arc<dyn Action>,
    cat: Arc<dyn Category>,
}

impl KaroubiAction {
    pub fn new(inner: Arc<dyn Action>) -> Self {
        let cat: Arc<dyn Category> = Arc::new(KaroubiCat::new(inner.category().clone()));
        KaroubiAction { inner, cat }
    }

    fn parts<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a Mor)> {
        match x {
            Obj::Retract(b, p) => Ok((b, p)),
            _ => Err(Error::Input(format!("expected a retract, got {}", x.kind()))),
        }
    }
}

impl Action for KaroubiAction {
    fn group(&self) -> &Group {
        self.inner.group()
    }

    fn category(&self) -> &Arc<dyn Category> {
        &self.cat
    }

    fn phi_obj(&self, g: usize, x: &Obj) -> Result<Obj> {
        let (b, p) = self.parts(x)?;
        Ok(Obj::Retract(
            Box::new(self.inner.phi_obj(g, b)?),
            self.inner.phi_mor(g, b, b, p)?,
        ))
    }

    fn phi_mor(&self, g: usize, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let ((a, _), (b, _)) = (self.parts(x)?, self.parts(y)?);
        self.inner.phi_mor(g, a, b, f)
    }

    fn eps(&self, g: usize, h: usize, x: &Obj) -> Result<Mor> {
        let (b, p) = self.parts(x)?;
        let base = self.inner.category();
        let hg = self.inner.group().mul(h, g);
        let hb = self.inner.phi_obj(h, b)?;
        let ghp = self.inner.phi_mor(g, &hb, &hb, &self.inner.phi_mor(h, b, b, p)?)?;
        let hgp = self.inner.phi_mor(hg, b, b, p)?;
        Ok(base.compose(&hgp, &base.compose(&self.inner.eps(g, h, b)?, &ghp)))
    }
}

/// `S̄(X, p) = (SX, S(p))` with `η̄ = S(p) ∘ η_X ∘ p` and `μ̄ = S(p) ∘ μ_X ∘ SS(p)`.
pub struct KaroubiMonad {
    inner: Arc<dyn Monad>,
    cat: Arc<dyn Category>,
}

impl KaroubiMonad {
    pub fn new(inner: Arc<dyn Monad>) -> Self {
        let cat: Arc<dyn Category> = Arc::new(KaroubiCat::new(inner.category().clone()));
        KaroubiMonad { inner, cat }
    }
}

fn retract_parts(x: &Obj) -> Result<(&Obj, &Mor)> {
    match x {
        Obj::Retract(b, p) => Ok((b, p)),
        _ => Err(Error::Input(format!("expected a retract, got {}", x.kind()))),
    }
}

impl Monad for KaroubiMonad {
    fn category(&self) -> &Arc<dyn Category> {
        &self.cat
    }

    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        let (b, p) = retract_parts(x)?;
        Ok(Obj::Retract(Box::new(self.inner.map_obj(b)?), self.inner.map_mor(b, b, p)?))
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let ((a, _), (b, _)) = (retract_parts(x)?, retract_parts(y)?);
        self.inner.map_mor(a, b, f)
    }

    fn unit(&self, x: &Obj) -> Result<Mor> {
        let (b, p) = retract_parts(x)?;
        let base = self.inner.category();
        let sp = self.inner.map_mor(b, b, p)?;
        Ok(base.compose(&sp, &base.compose(&self.inner.unit(b)?, p)))
    }

    fn mult(&self, x: &Obj) -> Result<Mor> {
        let (b, p) = retract_parts(x)?;
        let base = self.inner.category();
        let sb = self.inner.map_obj(b)?;
        let sp = self.inner.map_mor(b, b, p)?;
        let ssp = self.inner.map_mor(&sb, &sb, &sp)?;
        Ok(base.compose(&sp, &base.compose(&self.inner.mult(b)?, &ssp)))
    }
}

/// `T̄(X, p) = (TX, T(p))` with `ε̄ = p ∘ ε_X ∘ T(p)` and `δ̄ = TT(p) ∘ δ_X ∘ T(p)`.
pub struct KaroubiComonad {
    inner: Arc<dyn Comonad>,
    cat: Arc<dyn Category>,
}

impl KaroubiComonad {
    pub fn new(inner: Arc<dyn Comonad>) -> Self {
        let cat: Arc<dyn Category> = Arc::new(KaroubiCat::new(inner.category().clone()));
        KaroubiComonad { inner, cat }
    }
}

impl Comonad for KaroubiComonad {
    fn category(&self) -> &Arc<dyn Category> {
        &self.cat
    }

    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        let (b, p) = retract_parts(x)?;
        Ok(Obj::Retract(Box::new(self.inner.map_obj(b)?), self.inner.map_mor(b, b, p)?))
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let ((a, _), (b, _)) = (retract_parts(x)?, retract_parts(y)?);
        self.inner.map_mor(a, b, f)
    }

    fn counit(&self, x: &Obj) -> Result<Mor> {
        let (b, p) = retract_parts(x)?;
        let base = self.inner.category();
        let tp = self.inner.map_mor(b, b, p)?;
        Ok(base.compose(p, &base.compose(&self.inner.counit(b)?, &tp)))
    }

    fn comult(&self, x: &Obj) -> Result<Mor> {
        let (b, p) = retract_parts(x)?;
        let base = self.inner.category();
        let tb = self.inner.map_obj(b)?;
        let tp = self.inner.map_mor(b, b, p)?;
        let ttp = self.inner.map_mor(&tb, &tb, &tp)?;
        Ok(base.compose(&ttp, &base.compose(&self.inner.comult(b)?, &tp)))
    }
}

/// `F̄(X, p)` is the listed object of the target through which `F(p)` splits, and
/// `F̄(f) = s_Y ∘ F(f) ∘ i_X`; on objects `(X, 1)` it is `F` itself.
pub struct ExtendedFunctor {
    inner: Arc<dyn Functor>,
    source: Arc<dyn Category>,
    target: Arc<dyn Category>,
    candidates: Vec<Obj>,
    budget: Budget,
    seed: u64,
    cache: Mutex<HashMap<Obj, (Obj, Mor, Mor)>>,
}

impl ExtendedFunctor {
    /// `source` is the category `F` is defined on; `candidates` are the objects of the target
    /// allowed as splittings.
    pub fn new(
        inner: Arc<dyn Functor>,
        source: Arc<dyn Category>,
        target: Arc<dyn Category>,
        candidates: Vec<Obj>,
        budget: Budget,
        seed: u64,
    ) -> Self {
        ExtendedFunctor {
            inner,
            source,
            target,
            candidates,
            budget,
            seed,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// `(F̄(X,p), i, s)` with `s ∘ i = 1` and `i ∘ s = F(p)`.
    pub fn splitting(&self, x: &Obj) -> Result<(Obj, Mor, Mor)> {
        let (b, p) = retract_parts(x)?;
        let fb = self.inner.map_obj(b)?;
        if *p == self.source.identity(b) {
            let id = self.target.identity(&fb);
            return Ok((fb, id.clone(), id));
        }
        if let Some(v) = self.cache.lock().expect("cache lock").get(x) {
            return Ok(v.clone());
        }
        let fp = self.inner.map_mor(b, b, p)?;
        let out = match split_idempotent(&self.target, &fb, &fp, &self.candidates, self.budget, self.seed)? {
            Search::Found(s) => (self.candidates[s.candidate].clone(), s.inclusion, s.retraction),
            Search::NoneFound(reason) => {
                return Err(Error::Precondition(format!(
                    "the image {fp:?} of the idempotent does not split in the target: {reason}"
                )))
            }
            Search::BudgetExceeded { .. } => return Err(self.budget.exceeded("splitting an image idempotent")),
        };
        self.cache.lock().expect("cache lock").insert(x.clone(), out.clone());
        Ok(out)
    }
}

impl Functor for ExtendedFunctor {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        Ok(self.splitting(x)?.0)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let ((a, _), (b, _)) = (retract_parts(x)?, retract_parts(y)?);
        let (_, ix, _) = self.splitting(x)?;
        let (_, _, sy) = self.splitting(y)?;
        let ff = self.inner.map_mor(a, b, f)?;
        Ok(self.target.compose(&sy, &self.target.compose(&ff, &ix)))
    }
}

/// Checks that an extended monad agrees with the original on embedded objects and on every
/// basis morphism between them.
pub fn restricts_to_monad(inner: &dyn Monad, extended: &dyn Monad, objects: &[Obj]) -> Result<CheckReport> {
    let base = inner.category();
    let embed = |x: &Obj| Obj::Retract(Box::new(x.clone()), base.identity(x));
    let mut report = CheckReport::default();
    for x in objects {
        let ex = embed(x);
        report.record(extended.map_obj(&ex)? == embed(&inner.map_obj(x)?), || format!("object {x:?}"));
        report.record(extended.unit(&ex)? == inner.unit(x)?, || format!("unit at {x:?}"));
        report.record(extended.mult(&ex)? == inner.mult(x)?, || format!("multiplication at {x:?}"));
        for y in objects {
            for f in base.hom_basis(x, y)? {
                let same = extended.map_mor(&ex, &embed(y), &f)? == inner.map_mor(x, y, &f)?;
                report.record(same, || format!("morphism {f:?}"));
            }
        }
    }
    Ok(report)
}

/// The comonad counterpart of [`restricts_to_monad`].
pub fn restricts_to_comonad(inner: &dyn Comonad, extended: &dyn Comonad, objects: &[Obj]) -> Result<CheckReport> {
    let base = inner.category();
    let embed = |x: &Obj| Obj::Retract(Box::new(x.clone()), base.identity(x));
    let mut report = CheckReport::default();
    for x in objects {
        let ex = embed(x);
        report.record(extended.map_obj(&ex)? == embed(&inner.map_obj(x)?), || format!("object {x:?}"));
        report.record(extended.counit(&ex)? == inner.counit(x)?, || format!("counit at {x:?}"));
        report.record(extended.comult(&ex)? == inner.comult(x)?, || format!("comultiplication at {x:?}"));
        for y in objects {
            for f in base.hom_basis(x, y)? {
                let same = extended.map_mor(&ex, &embed(y), &f)? == inner.map_mor(x, y, &f)?;
                report.record(same, || format!("morphism {f:?}"));
            }
        }
    }
    Ok(report)
}

/// Checks that an extended action agrees with the original on embedded objects: functors,
/// morphisms and coherence maps.
pub fn restricts_to_action(inner: &dyn Action, extended: &dyn Action, objects: &[Obj]) -> Result<CheckReport> {
    let base = inner.category();
    let embed = |x: &Obj| Obj::Retract(Box::new(x.clone()), base.identity(x));
    let mut report = CheckReport::default();
    let group = inner.group();
    for x in objects {
        let ex = embed(x);
        for g in group.elements() {
            let same = extended.phi_obj(g, &ex)? == embed(&inner.phi_obj(g, x)?);
            report.record(same, || format!("φ_{g} on {x:?}"));
            for h in group.elements() {
                let same = extended.eps(g, h, &ex)? == inner.eps(g, h, x)?;
                report.record(same, || format!("ε_{{{g},{h}}} at {x:?}"));
            }
            for y in objects {
                for f in base.hom_basis(x, y)? {
                    let same = extended.phi_mor(g, &ex, &embed(y), &f)? == inner.phi_mor(g, x, y, &f)?;
                    report.record(same, || format!("φ_{g} on {f:?}"));
                }
            }
        }
    }
    Ok(report)
}

/// Checks `F̄(X, 1) = F(X)` and `F̄(f) = F(f)` on the listed objects.
pub fn restricts_to_functor(
    inner: &dyn Functor,
    extended: &dyn Functor,
    source: &dyn Category,
    objects: &[Obj],
) -> Result<CheckReport> {
    let embed = |x: &Obj| Obj::Retract(Box::new(x.clone()), source.identity(x));
    let mut report = CheckReport::default();
    for x in objects {
        let ex = embed(x);
        report.record(extended.map_obj(&ex)? == inner.map_obj(x)?, || format!("object {x:?}"));
        for y in objects {
            for f in source.hom_basis(x, y)? {
                let same = extended.map_mor(&ex, &embed(y), &f)? == inner.map_mor(x, y, &f)?;
                report.record(same, || format!("morphism {f:?}"));
            }
        }
    }
    Ok(report)
}

/// A splitting `X' --i--> X --s--> X'` of `p` with `s ∘ i = 1` and `i ∘ s = p`.
#[derive(Clone, Debug, PartialEq)]
pub struct Splitting {
    pub candidate: usize,
    pub inclusion: Mor,
    pub retraction: Mor,
}

/// Looks for a splitting of the idempotent `p` on `x` through one of `candidates`.
pub fn split_idempotent(
    base: &Arc<dyn Category>,
    x: &Obj,
    p: &Mor,
    candidates: &[Obj],
    budget: Budget,
    seed: u64,
) -> Result<Search<Splitting>> {
    let kar = KaroubiCat::new(base.clone());
    let target = kar.retract(x, p)?;
    let mut tried = 0;
    let mut reasons = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        match find_iso(&kar, &kar.embed(c), &target, budget, seed.wrapping_add(i as u64))? {
            Search::Found(Iso { forward, backward }) => {
                return Ok(Search::Found(Splitting {
                    candidate: i,
                    inclusion: forward,
                    retraction: backward,
                }))
            }
            Search::NoneFound(r) => reasons.push(format!("candidate {i}: {r}")),
            Search::BudgetExceeded { tried: t } => tried += t.max(1),
        }
    }
    Ok(if tried > 0 {
        Search::BudgetExceeded { tried }
    } else {
        Search::NoneFound(reasons.join("; "))
    })
}

/// All idempotent endomorphisms of `x`.
pub fn idempotents(c: &dyn Category, x: &Obj, budget: Budget) -> Result<Enumeration<Mor>> {
    let basis = c.hom_basis(x, x)?;
    if basis.is_empty() {
        return Ok(Enumeration {
            found: vec![c.zero_mor(x, x)],
            complete: true,
            tried: 1,
        });
    }
    enumerate_coefficients(c.field(), basis.len(), budget, |coeffs| {
        let p = combination(coeffs, &basis);
        Ok((c.compose(&p, &p) == p).then_some(p))
    })
}

/// Outcome of checking that every idempotent on the listed objects splits within the list.
#[derive(Clone, Debug, PartialEq)]
pub enum Completeness {
    Complete { idempotents: usize },
    /// Idempotent `p` on object `object` does not split through any listed object.
    NotSplit { object: usize, idempotent: Mor, reason: String },
    Unknown { reason: String },
}

pub fn idempotent_completeness(
    c: &Arc<dyn Category>,
    objects: &[Obj],
    budget: Budget,
    seed: u64,
) -> Result<Completeness> {
    let mut count = 0;
    for (i, x) in objects.iter().enumerate() {
        let ps = idempotents(&**c, x, budget)?;
        if !ps.complete {
            return Ok(Completeness::Unknown {
                reason: format!("idempotents of object {i} not enumerated within budget"),
            });
        }
        for p in ps.found {
            count += 1;
            match split_idempotent(c, x, &p, objects, budget, seed)? {
                Search::Found(_) => {}
                Search::NoneFound(reason) => {
                    return Ok(Completeness::NotSplit {
                        object: i,
                        idempotent: p,
                        reason,
                    })
                }
                Search::BudgetExceeded { .. } => {
                    return Ok(Completeness::Unknown {
                        reason: format!("splitting an idempotent of object {i} exceeded the budget"),
                    })
                }
            }
        }
    }
    Ok(Completeness::Complete { idempotents: count })
}

/// The idempotent completion restricted to all retracts `(X, p)` of the listed objects.
pub struct KaroubiEnvelope {
    pub category: Arc<KaroubiCat>,
    pub objects: Vec<Obj>,
    pub presentation: Materialized,
}

/// Enumerates every idempotent on the listed objects and presents the full subcategory of the
/// completion on the resulting retracts.
pub fn karoubi_envelope(c: &Arc<dyn Category>, objects: &[Obj], budget: Budget) -> Result<KaroubiEnvelope> {
    let kar = Arc::new(KaroubiCat::new(c.clone()));
    let mut retracts = Vec::new();
    let mut names = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        let ps = idempotents(&**c, x, budget)?;
        if !ps.complete {
            return Err(budget.exceeded(format!("idempotents of object {i}")));
        }
        for (k, p) in ps.found.into_iter().enumerate() {
            retracts.push(Obj::Retract(Box::new(x.clone()), p));
            names.push(format!("X{i}.p{k}"));
        }
    }
    let presentation = materialize(&*kar, &retracts, &names)?;
    Ok(KaroubiEnvelope {
        category: kar,
        objects: retracts,
        presentation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::lincat::presentation::Presentation;

    fn env() -> Arc<dyn Category> {
        Arc::new(Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(5)))))
    }

    #[test]
    fn projector_splits_through_line() {
        let c = env();
        let k2 = Obj::base(&[0, 0]);
        let f = Field::Prime(5);
        let p = Mor {
            field: f,
            src: vec![0, 0],
            tgt: vec![0, 0],
            coords: vec![f.one(), f.zero(), f.zero(), f.zero()],
        };
        let s = split_idempotent(&c, &k2, &p, &[Obj::base(&[0])], Budget::default(), 0).unwrap();
        let s = s.found().unwrap();
        assert_eq!(c.compose(&s.retraction, &s.inclusion), c.identity(&Obj::base(&[0])));
        assert_eq!(c.compose(&s.inclusion, &s.retraction), p);
        let miss = split_idempotent(&c, &k2, &p, &[k2.clone()], Budget::default(), 0).unwrap();
        assert!(miss.is_none_found());
    }

    #[test]
    fn idempotents_of_k2_over_f5() {
        let c = env();
        let ps = idempotents(&*c, &Obj::base(&[0, 0]), Budget::default()).unwrap();
        assert!(ps.complete);
        // 0, 1, and the rank-one idempotents: one per (line, complement) pair, 6·5 = 30.
        assert_eq!(ps.found.len(), 32);
    }

    #[test]
    fn hom_in_completion() {
        let c = env();
        let kar = KaroubiCat::new(c.clone());
        let f = Field::Prime(5);
        let p = Mor {
            field: f,
            src: vec![0, 0],
            tgt: vec![0, 0],
            coords: vec![f.one(), f.zero(), f.zero(), f.zero()],
        };
        let x = kar.retract(&Obj::base(&[0, 0]), &p).unwrap();
        assert_eq!(kar.hom_dim(&x, &x).unwrap(), 1);
        assert_eq!(kar.hom_dim(&x, &kar.embed(&Obj::base(&[0, 0]))).unwrap(), 2);
    }
}

#[cfg(test)]
mod extension_tests {
    use super::*;
    use crate::action::PresentedAction;
    use crate::equivar::Equivariantization;
    use crate::field::Field;
    use crate::lincat::functor::IdentityFunctor;
    use crate::lincat::presentation::Presentation;
    use crate::monadic::{check_comonad, check_monad};

    fn trivial_z2() -> Equivariantization {
        let env = Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(5))));
        let a = PresentedAction::trivial(env, crate::group::Group::cyclic(2)).unwrap();
        Equivariantization::new(Arc::new(a)).unwrap()
    }

    fn diag10() -> Mor {
        let f = Field::Prime(5);
        Mor {
            field: f,
            src: vec![0, 0],
            tgt: vec![0, 0],
            coords: vec![f.one(), f.zero(), f.zero(), f.zero()],
        }
    }

    fn lines() -> Vec<Obj> {
        vec![Obj::base(&[]), Obj::base(&[0]), Obj::base(&[0, 0])]
    }

    #[test]
    fn extended_monad_and_comonad_restrict_exactly() {
        let eq = trivial_z2();
        let monad = eq.induce_forget().monad();
        let comonad = eq.forget_induce().comonad();
        let cs = lines();
        let km = KaroubiMonad::new(monad.clone());
        assert!(restricts_to_monad(&*monad, &km, &cs).unwrap().passes());
        let kc = KaroubiComonad::new(comonad.clone());
        assert!(restricts_to_comonad(&*comonad, &kc, &cs).unwrap().passes());
        let kar = KaroubiCat::new(eq.base.clone());
        let mut objs: Vec<Obj> = cs.iter().map(|c| kar.embed(c)).collect();
        objs.push(kar.retract(&cs[2], &diag10()).unwrap());
        assert!(check_monad(&km, &objs).unwrap().passes());
        assert!(check_comonad(&kc, &objs).unwrap().passes());
    }

    #[test]
    fn extended_trivial_action_is_trivial() {
        let eq = trivial_z2();
        let ka = KaroubiAction::new(eq.action.clone());
        let cs = lines();
        assert!(restricts_to_action(&*eq.action, &ka, &cs).unwrap().passes());
        let env = karoubi_envelope(&eq.base, &cs, Budget::default()).unwrap();
        for x in &env.objects {
            for g in 0..2 {
                assert_eq!(ka.phi_obj(g, x).unwrap(), *x);
            }
        }
    }

    #[test]
    fn extended_identity_splits_every_retract() {
        let c: Arc<dyn Category> = Arc::new(Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(5)))));
        let cs = lines();
        let ext = ExtendedFunctor::new(Arc::new(IdentityFunctor), c.clone(), c.clone(), cs.clone(), Budget::default(), 1);
        assert!(restricts_to_functor(&IdentityFunctor, &ext, &*c, &cs).unwrap().passes());
        let env = karoubi_envelope(&c, &cs, Budget::default()).unwrap();
        assert_eq!(env.objects.len(), 1 + 2 + 32);
        for x in &env.objects {
            let (y, i, s) = ext.splitting(x).unwrap();
            assert_eq!(c.compose(&s, &i), c.identity(&y));
        }
        assert!(env.presentation.presentation.validate().unwrap().violations.is_empty());
    }

    #[test]
    fn missing_splitting_names_the_idempotent() {
        let c: Arc<dyn Category> = Arc::new(Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(5)))));
        let k2 = Obj::base(&[0, 0]);
        let ext = ExtendedFunctor::new(Arc::new(IdentityFunctor), c.clone(), c.clone(), vec![k2.clone()], Budget::default(), 1);
        let err = ext.map_obj(&Obj::Retract(Box::new(k2), diag10())).unwrap_err();
        assert!(matches!(err, Error::Precondition(_)));
    }
}
