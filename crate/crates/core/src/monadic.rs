//! Adjunctions, their comonads and monads, categories of comodules and modules, and the
//! comparison functors into them.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::lincat::category::Category;
use crate::lincat::envelope::{combination, Envelope, Mor, Obj};
use crate::lincat::functor::{check_natural, CheckReport, Component, Functor};
use crate::matrix::Matrix;
use crate::search::{enumerate_coefficients, Budget, Enumeration};

/// `L ⊣ R` with `L : B → C`, `R : C → B`, unit `η : 1 ⇒ RL`, counit `ε : LR ⇒ 1`.
#[derive(Clone)]
pub struct Adjunction {
    pub source: Arc<dyn Category>,
    pub target: Arc<dyn Category>,
    pub left: Arc<dyn Functor>,
    pub right: Arc<dyn Functor>,
    pub unit: Component,
    pub counit: Component,
}

struct Composed(Arc<dyn Functor>, Arc<dyn Functor>);

impl Functor for Composed {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        self.1.map_obj(&self.0.map_obj(x)?)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let (fx, fy) = (self.0.map_obj(x)?, self.0.map_obj(y)?);
        self.1.map_mor(&fx, &fy, &self.0.map_mor(x, y, f)?)
    }
}

struct Ident;

impl Functor for Ident {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        Ok(x.clone())
    }

    fn map_mor(&self, _: &Obj, _: &Obj, f: &Mor) -> Result<Mor> {
        Ok(f.clone())
    }
}

impl Adjunction {
    /// Triangle identities and naturality of unit and counit on the given objects.
    pub fn check(&self, bs: &[Obj], cs: &[Obj]) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        let (b, c) = (&*self.source, &*self.target);
        for x in bs {
            let lx = self.left.map_obj(x)?;
            let rlx = self.right.map_obj(&lx)?;
            let lhs = c.compose(&(self.counit)(&lx)?, &self.left.map_mor(x, &rlx, &(self.unit)(x)?)?);
            report.record(lhs == c.identity(&lx), || format!("εL ∘ Lη ≠ 1 at {x:?}"));
        }
        for y in cs {
            let ry = self.right.map_obj(y)?;
            let lry = self.left.map_obj(&ry)?;
            let lhs = b.compose(&self.right.map_mor(&lry, y, &(self.counit)(y)?)?, &(self.unit)(&ry)?);
            report.record(lhs == b.identity(&ry), || format!("Rε ∘ ηR ≠ 1 at {y:?}"));
        }
        let rl = Composed(self.left.clone(), self.right.clone());
        let lr = Composed(self.right.clone(), self.left.clone());
        report.merge(check_natural(b, b, &Ident, &rl, &self.unit, bs)?);
        report.merge(check_natural(c, c, &lr, &Ident, &self.counit, cs)?);
        Ok(report)
    }

    pub fn comonad(self: &Arc<Self>) -> Arc<dyn Comonad> {
        Arc::new(AdjunctionComonad(self.clone()))
    }

    pub fn monad(self: &Arc<Self>) -> Arc<dyn Monad> {
        Arc::new(AdjunctionMonad(self.clone()))
    }

    /// `B → C_T`, `b ↦ (Lb, L(η_b))`.
    pub fn comodule_comparison(self: &Arc<Self>) -> ComoduleComparison {
        ComoduleComparison(self.clone())
    }

    /// `C → B^S`, `c ↦ (Rc, R(ε_c))`.
    pub fn module_comparison(self: &Arc<Self>) -> ModuleComparison {
        ModuleComparison(self.clone())
    }

    /// Checks `Q^* Φ = L` on `bs` and `Φ R = Q_*` on `cs` exactly, where `Q^*` forgets the
    /// coaction and `Q_* c = (Tc, δ_c)` is the cofree comodule.
    pub fn check_comparison_identities(self: &Arc<Self>, bs: &[Obj], cs: &[Obj]) -> Result<CheckReport> {
        let mut report = CheckReport::default();
        let phi = self.comodule_comparison();
        let t = self.comonad();
        for b in bs {
            let img = phi.map_obj(b)?;
            let lb = self.left.map_obj(b)?;
            report.record(img.inner() == Some(&lb), || format!("Q*Φ ≠ L at {b:?}"));
        }
        for c in cs {
            let img = phi.map_obj(&self.right.map_obj(c)?)?;
            let cofree = Obj::Comodule(Box::new(t.map_obj(c)?), t.comult(c)?);
            report.record(img == cofree, || format!("ΦR ≠ Q_* at {c:?}"));
        }
        Ok(report)
    }
}

pub trait Comonad: Send + Sync {
    fn category(&self) -> &Arc<dyn Category>;
    fn map_obj(&self, c: &Obj) -> Result<Obj>;
    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor>;
    /// `ε_c : Tc → c`.
    fn counit(&self, c: &Obj) -> Result<Mor>;
    /// `δ_c : Tc → TTc`.
    fn comult(&self, c: &Obj) -> Result<Mor>;
}

pub trait Monad: Send + Sync {
    fn category(&self) -> &Arc<dyn Category>;
    fn map_obj(&self, b: &Obj) -> Result<Obj>;
    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor>;
    /// `η_b : b → Sb`.
    fn unit(&self, b: &Obj) -> Result<Mor>;
    /// `μ_b : SSb → Sb`.
    fn mult(&self, b: &Obj) -> Result<Mor>;
}

pub struct AdjunctionComonad(pub Arc<Adjunction>);

impl Comonad for AdjunctionComonad {
    fn category(&self) -> &Arc<dyn Category> {
        &self.0.target
    }

    fn map_obj(&self, c: &Obj) -> Result<Obj> {
        self.0.left.map_obj(&self.0.right.map_obj(c)?)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let (rx, ry) = (self.0.right.map_obj(x)?, self.0.right.map_obj(y)?);
        self.0.left.map_mor(&rx, &ry, &self.0.right.map_mor(x, y, f)?)
    }

    fn counit(&self, c: &Obj) -> Result<Mor> {
        (self.0.counit)(c)
    }

    fn comult(&self, c: &Obj) -> Result<Mor> {
        let rc = self.0.right.map_obj(c)?;
        let rlrc = self.0.right.map_obj(&self.0.left.map_obj(&rc)?)?;
        self.0.left.map_mor(&rc, &rlrc, &(self.0.unit)(&rc)?)
    }
}

pub struct AdjunctionMonad(pub Arc<Adjunction>);

impl Monad for AdjunctionMonad {
    fn category(&self) -> &Arc<dyn Category> {
        &self.0.source
    }

    fn map_obj(&self, b: &Obj) -> Result<Obj> {
        self.0.right.map_obj(&self.0.left.map_obj(b)?)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let (lx, ly) = (self.0.left.map_obj(x)?, self.0.left.map_obj(y)?);
        self.0.right.map_mor(&lx, &ly, &self.0.left.map_mor(x, y, f)?)
    }

    fn unit(&self, b: &Obj) -> Result<Mor> {
        (self.0.unit)(b)
    }

    fn mult(&self, b: &Obj) -> Result<Mor> {
        let lb = self.0.left.map_obj(b)?;
        let lrlb = self.0.left.map_obj(&self.0.right.map_obj(&lb)?)?;
        self.0.right.map_mor(&lrlb, &lb, &(self.0.counit)(&lb)?)
    }
}

/// Counit laws, coassociativity and naturality of `ε`, `δ` on the given objects.
pub fn check_comonad(t: &dyn Comonad, objects: &[Obj]) -> Result<CheckReport> {
    let cat = &**t.category();
    let mut report = CheckReport::default();
    for c in objects {
        let tc = t.map_obj(c)?;
        let ttc = t.map_obj(&tc)?;
        let d = t.comult(c)?;
        let id = cat.identity(&tc);
        let l = cat.compose(&t.counit(&tc)?, &d);
        report.record(l == id, || format!("ε_T ∘ δ ≠ 1 at {c:?}"));
        let r = cat.compose(&t.map_mor(&tc, c, &t.counit(c)?)?, &d);
        report.record(r == id, || format!("T(ε) ∘ δ ≠ 1 at {c:?}"));
        let a = cat.compose(&t.comult(&tc)?, &d);
        let b = cat.compose(&t.map_mor(&tc, &ttc, &d)?, &d);
        report.record(a == b, || format!("δ not coassociative at {c:?}"));
    }
    for x in objects {
        for y in objects {
            for f in cat.hom_basis(x, y)? {
                let (tx, ty) = (t.map_obj(x)?, t.map_obj(y)?);
                let tf = t.map_mor(x, y, &f)?;
                let nat_e = cat.compose(&t.counit(y)?, &tf) == cat.compose(&f, &t.counit(x)?);
                report.record(nat_e, || format!("ε not natural at {f:?}"));
                let ttf = t.map_mor(&tx, &ty, &tf)?;
                let nat_d = cat.compose(&t.comult(y)?, &tf) == cat.compose(&ttf, &t.comult(x)?);
                report.record(nat_d, || format!("δ not natural at {f:?}"));
            }
        }
    }
    Ok(report)
}

/// Unit laws, associativity and naturality of `η`, `μ` on the given objects.
pub fn check_monad(s: &dyn Monad, objects: &[Obj]) -> Result<CheckReport> {
    let cat = &**s.category();
    let mut report = CheckReport::default();
    for b in objects {
        let sb = s.map_obj(b)?;
        let ssb = s.map_obj(&sb)?;
        let m = s.mult(b)?;
        let id = cat.identity(&sb);
        let l = cat.compose(&m, &s.unit(&sb)?);
        report.record(l == id, || format!("μ ∘ η_S ≠ 1 at {b:?}"));
        let r = cat.compose(&m, &s.map_mor(b, &sb, &s.unit(b)?)?);
        report.record(r == id, || format!("μ ∘ S(η) ≠ 1 at {b:?}"));
        let a = cat.compose(&m, &s.mult(&sb)?);
        let c = cat.compose(&m, &s.map_mor(&ssb, &sb, &m)?);
        report.record(a == c, || format!("μ not associative at {b:?}"));
    }
    for x in objects {
        for y in objects {
            for f in cat.hom_basis(x, y)? {
                let (sx, sy) = (s.map_obj(x)?, s.map_obj(y)?);
                let sf = s.map_mor(x, y, &f)?;
                let nat_e = cat.compose(&sf, &s.unit(x)?) == cat.compose(&s.unit(y)?, &f);
                report.record(nat_e, || format!("η not natural at {f:?}"));
                let ssf = s.map_mor(&sx, &sy, &sf)?;
                let nat_m = cat.compose(&sf, &s.mult(x)?) == cat.compose(&s.mult(y)?, &ssf);
                report.record(nat_m, || format!("μ not natural at {f:?}"));
            }
        }
    }
    Ok(report)
}

type HomCache = Mutex<HashMap<(Obj, Obj), Vec<Mor>>>;

fn cached(cache: &HomCache, x: &Obj, y: &Obj, compute: impl FnOnce() -> Result<Vec<Mor>>) -> Result<Vec<Mor>> {
    let key = (x.clone(), y.clone());
    if let Some(v) = cache.lock().expect("cache lock").get(&key) {
        return Ok(v.clone());
    }
    let v = compute()?;
    cache.lock().expect("cache lock").insert(key, v.clone());
    Ok(v)
}

/// Solves for the subspace of `Hom(x, y)` (given by `basis`) on which `constraint` vanishes.
pub(crate) fn kernel_subspace(
    field: crate::field::Field,
    basis: &[Mor],
    mut constraint: impl FnMut(&Mor) -> Result<Vec<crate::field::Scalar>>,
) -> Result<Vec<Mor>> {
    if basis.is_empty() {
        return Ok(Vec::new());
    }
    let cols: Vec<Vec<_>> = basis.iter().map(&mut constraint).collect::<Result<_>>()?;
    let rows = cols[0].len();
    if rows == 0 {
        return Ok(basis.to_vec());
    }
    let m = Matrix::from_columns(field, rows, &cols);
    Ok(m.nullspace().iter().map(|c| combination(c, basis)).collect())
}

/// Comodules over a comonad: objects `Comodule(c, h)` with `h : c → Tc`.
pub struct ComoduleCat {
    comonad: Arc<dyn Comonad>,
    cache: HomCache,
}

impl ComoduleCat {
    pub fn new(comonad: Arc<dyn Comonad>) -> Self {
        ComoduleCat {
            comonad,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn comonad(&self) -> &Arc<dyn Comonad> {
        &self.comonad
    }

    fn parts<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a Mor)> {
        match x {
            Obj::Comodule(c, h) => Ok((c, h)),
            _ => Err(Error::Input(format!("expected a comodule, got {}", x.kind()))),
        }
    }

    /// The cofree comodule `(Tc, δ_c)`.
    pub fn cofree(&self, c: &Obj) -> Result<Obj> {
        Ok(Obj::Comodule(Box::new(self.comonad.map_obj(c)?), self.comonad.comult(c)?))
    }
}

impl Category for ComoduleCat {
    fn envelope(&self) -> &Envelope {
        self.comonad.category().envelope()
    }

    fn identity(&self, x: &Obj) -> Mor {
        self.comonad.category().identity(x.inner().unwrap_or(x))
    }

    fn hom_basis(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        let ((c, h), (d, k)) = (self.parts(x)?, self.parts(y)?);
        cached(&self.cache, x, y, || {
            let base = self.comonad.category();
            let basis = base.hom_basis(c, d)?;
            kernel_subspace(base.field(), &basis, |f| {
                let tf = self.comonad.map_mor(c, d, f)?;
                Ok(base.compose(&tf, h).sub(&base.compose(k, f)).coords)
            })
        })
    }

    fn direct_sum(&self, xs: &[Obj]) -> Result<Obj> {
        let base = self.comonad.category();
        let inners: Vec<Obj> = xs.iter().map(|x| self.parts(x).map(|p| p.0.clone())).collect::<Result<_>>()?;
        let sum = base.direct_sum(&inners)?;
        let tsum = self.comonad.map_obj(&sum)?;
        let mut coact = base.zero_mor(&sum, &tsum);
        for (i, x) in xs.iter().enumerate() {
            let (c, h) = self.parts(x)?;
            let inj = base.injection(&inners, i)?;
            let t_inj = self.comonad.map_mor(c, &sum, &inj)?;
            let term = base.compose(&t_inj, &base.compose(h, &base.projection(&inners, i)?));
            coact = coact.add(&term);
        }
        Ok(Obj::Comodule(Box::new(sum), coact))
    }

    fn contains(&self, x: &Obj) -> bool {
        matches!(x, Obj::Comodule(c, _) if self.comonad.category().contains(c))
    }

    fn name(&self) -> String {
        format!("comodules over a comonad on {}", self.comonad.category().name())
    }
}

/// Checks that `h : c → Tc` is a coaction.
pub fn check_comodule(t: &dyn Comonad, c: &Obj, h: &Mor) -> Result<CheckReport> {
    let cat = &**t.category();
    let tc = t.map_obj(c)?;
    let mut report = CheckReport::default();
    let typed = cat.is_morphism(c, &tc, h)?;
    report.record(typed, || "coaction has the wrong type".into());
    if !typed {
        return Ok(report);
    }
    let counit = cat.compose(&t.counit(c)?, h);
    report.record(counit == cat.identity(c), || "ε ∘ h ≠ 1".into());
    let lhs = cat.compose(&t.comult(c)?, h);
    let rhs = cat.compose(&t.map_mor(c, &tc, h)?, h);
    report.record(lhs == rhs, || "δ ∘ h ≠ T(h) ∘ h".into());
    Ok(report)
}

/// All coactions on `c`: the affine space cut out by the counit law, filtered by
/// coassociativity.
pub fn comodule_structures(t: &dyn Comonad, c: &Obj, budget: Budget) -> Result<Enumeration<Obj>> {
    let cat = &**t.category();
    let tc = t.map_obj(c)?;
    let basis = cat.hom_basis(c, &tc)?;
    let target = cat.identity(c);
    let eps = t.counit(c)?;
    let field = cat.field();
    let (particular, directions) = if basis.is_empty() {
        let z = cat.zero_mor(c, &tc);
        if !target.is_zero() {
            return Ok(Enumeration {
                found: Vec::new(),
                complete: true,
                tried: 0,
            });
        }
        (z, Vec::new())
    } else {
        let cols: Vec<Vec<_>> = basis.iter().map(|b| cat.compose(&eps, b).coords).collect();
        let m = Matrix::from_columns(field, target.coords.len(), &cols);
        let Some(p) = m.solve(&target.coords) else {
            return Ok(Enumeration {
                found: Vec::new(),
                complete: true,
                tried: 0,
            });
        };
        let dirs: Vec<Mor> = m.nullspace().iter().map(|v| combination(v, &basis)).collect();
        (combination(&p, &basis), dirs)
    };
    let comult = t.comult(c)?;
    enumerate_coefficients(field, directions.len(), budget, |coeffs| {
        let h = if directions.is_empty() {
            particular.clone()
        } else {
            particular.add(&combination(coeffs, &directions))
        };
        let lhs = cat.compose(&comult, &h);
        let rhs = cat.compose(&t.map_mor(c, &tc, &h)?, &h);
        Ok((lhs == rhs).then(|| Obj::Comodule(Box::new(c.clone()), h)))
    })
}

/// Modules over a monad: objects `Module(b, a)` with `a : Sb → b`.
pub struct ModuleCat {
    monad: Arc<dyn Monad>,
    cache: HomCache,
}

impl ModuleCat {
    pub fn new(monad: Arc<dyn Monad>) -> Self {
        ModuleCat {
            monad,
            cache: Mutex::new(HashMap::new()),
        }
    }

    fn parts<'a>(&self, x: &'a Obj) -> Result<(&'a Obj, &'a Mor)> {
        match x {
            Obj::Module(b, a) => Ok((b, a)),
            _ => Err(Error::Input(format!("expected a module, got {}", x.kind()))),
        }
    }
}

impl Category for ModuleCat {
    fn envelope(&self) -> &Envelope {
        self.monad.category().envelope()
    }

    fn identity(&self, x: &Obj) -> Mor {
        self.monad.category().identity(x.inner().unwrap_or(x))
    }

    fn hom_basis(&self, x: &Obj, y: &Obj) -> Result<Vec<Mor>> {
        let ((b, a), (c, a2)) = (self.parts(x)?, self.parts(y)?);
        cached(&self.cache, x, y, || {
            let base = self.monad.category();
            let basis = base.hom_basis(b, c)?;
            kernel_subspace(base.field(), &basis, |f| {
                let sf = self.monad.map_mor(b, c, f)?;
                Ok(base.compose(f, a).sub(&base.compose(a2, &sf)).coords)
            })
        })
    }

    fn direct_sum(&self, xs: &[Obj]) -> Result<Obj> {
        let base = self.monad.category();
        let inners: Vec<Obj> = xs.iter().map(|x| self.parts(x).map(|p| p.0.clone())).collect::<Result<_>>()?;
        let sum = base.direct_sum(&inners)?;
        let ssum = self.monad.map_obj(&sum)?;
        let mut act = base.zero_mor(&ssum, &sum);
        for (i, x) in xs.iter().enumerate() {
            let (b, a) = self.parts(x)?;
            let pr = base.projection(&inners, i)?;
            let s_pr = self.monad.map_mor(&sum, b, &pr)?;
            let term = base.compose(&base.injection(&inners, i)?, &base.compose(a, &s_pr));
            act = act.add(&term);
        }
        Ok(Obj::Module(Box::new(sum), act))
    }

    fn contains(&self, x: &Obj) -> bool {
        matches!(x, Obj::Module(b, _) if self.monad.category().contains(b))
    }

    fn name(&self) -> String {
        format!("modules over a monad on {}", self.monad.category().name())
    }
}

/// Checks that `a : Sb → b` is an action.
pub fn check_module(s: &dyn Monad, b: &Obj, a: &Mor) -> Result<CheckReport> {
    let cat = &**s.category();
    let sb = s.map_obj(b)?;
    let mut report = CheckReport::default();
    let typed = cat.is_morphism(&sb, b, a)?;
    report.record(typed, || "action has the wrong type".into());
    if !typed {
        return Ok(report);
    }
    report.record(cat.compose(a, &s.unit(b)?) == cat.identity(b), || "a ∘ η ≠ 1".into());
    let lhs = cat.compose(a, &s.mult(b)?);
    let rhs = cat.compose(a, &s.map_mor(&sb, b, a)?);
    report.record(lhs == rhs, || "a ∘ μ ≠ a ∘ S(a)".into());
    Ok(report)
}

pub struct ComoduleComparison(pub Arc<Adjunction>);

impl Functor for ComoduleComparison {
    fn map_obj(&self, b: &Obj) -> Result<Obj> {
        let lb = self.0.left.map_obj(b)?;
        let rlb = self.0.right.map_obj(&lb)?;
        let coact = self.0.left.map_mor(b, &rlb, &(self.0.unit)(b)?)?;
        Ok(Obj::Comodule(Box::new(lb), coact))
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        self.0.left.map_mor(x, y, f)
    }
}

pub struct ModuleComparison(pub Arc<Adjunction>);

impl Functor for ModuleComparison {
    fn map_obj(&self, c: &Obj) -> Result<Obj> {
        let rc = self.0.right.map_obj(c)?;
        let lrc = self.0.left.map_obj(&rc)?;
        let act = self.0.right.map_mor(&lrc, c, &(self.0.counit)(c)?)?;
        Ok(Obj::Module(Box::new(rc), act))
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        self.0.right.map_mor(x, y, f)
    }
}

/// Relabels comodules along a natural isomorphism `α : T ⇒ T'`: `(c, h) ↦ (c, α_c ∘ h)`.
pub struct TransportComodules {
    pub alpha: Component,
    pub category: Arc<dyn Category>,
}

impl Functor for TransportComodules {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        match x {
            Obj::Comodule(c, h) => Ok(Obj::Comodule(c.clone(), self.category.compose(&(self.alpha)(c)?, h))),
            _ => Err(Error::Input(format!("expected a comodule, got {}", x.kind()))),
        }
    }

    fn map_mor(&self, _: &Obj, _: &Obj, f: &Mor) -> Result<Mor> {
        Ok(f.clone())
    }
}

struct ComonadFunctor(Arc<dyn Comonad>);

impl Functor for ComonadFunctor {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        self.0.map_obj(x)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        self.0.map_mor(x, y, f)
    }
}

/// Checks that `α : T ⇒ T'` is a natural isomorphism of comonads:
/// `ε' ∘ α = ε` and `δ' ∘ α = T'(α) ∘ α_T ∘ δ`.
pub fn check_comonad_iso(
    t: &Arc<dyn Comonad>,
    t2: &Arc<dyn Comonad>,
    alpha: &Component,
    objects: &[Obj],
) -> Result<CheckReport> {
    let cat = &**t.category();
    let mut report = check_natural(
        cat,
        cat,
        &ComonadFunctor(t.clone()),
        &ComonadFunctor(t2.clone()),
        alpha,
        objects,
    )?;
    for c in objects {
        let (tc, t2c) = (t.map_obj(c)?, t2.map_obj(c)?);
        let a = alpha(c)?;
        report.record(cat.inverse(&tc, &t2c, &a)?.is_some(), || format!("α not invertible at {c:?}"));
        let counit = cat.compose(&t2.counit(c)?, &a) == t.counit(c)?;
        report.record(counit, || format!("ε' ∘ α ≠ ε at {c:?}"));
        let lhs = cat.compose(&t2.comult(c)?, &a);
        let t2a = t2.map_mor(&tc, &t2c, &a)?;
        let rhs = cat.compose(&t2a, &cat.compose(&alpha(&tc)?, &t.comult(c)?));
        report.record(lhs == rhs, || format!("δ' ∘ α ≠ T'(α) ∘ α_T ∘ δ at {c:?}"));
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq)]
pub enum SplitUnit {
    /// The given candidate `σ : RL ⇒ 1` is natural and satisfies `σ ∘ η = 1`.
    Natural,
    /// Each unit component has a retraction, but no natural candidate was supplied.
    Objectwise(Vec<Mor>),
    /// The unit at this object has no retraction.
    NotSplit(usize),
}

/// Whether the unit of `adj` is a split monomorphism on the given objects.
pub fn split_unit(adj: &Adjunction, objects: &[Obj], candidate: Option<&Component>) -> Result<SplitUnit> {
    let b = &*adj.source;
    if let Some(sigma) = candidate {
        let rl = Composed(adj.left.clone(), adj.right.clone());
        let nat = check_natural(b, b, &rl, &Ident, sigma, objects)?;
        let retracts = objects
            .iter()
            .map(|x| Ok(b.compose(&sigma(x)?, &(adj.unit)(x)?) == b.identity(x)))
            .collect::<Result<Vec<bool>>>()?;
        if nat.passes() && retracts.iter().all(|&r| r) {
            return Ok(SplitUnit::Natural);
        }
    }
    let mut sections = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        let rlx = adj.right.map_obj(&adj.left.map_obj(x)?)?;
        let eta = (adj.unit)(x)?;
        let basis = b.hom_basis(&rlx, x)?;
        let id = b.identity(x);
        if basis.is_empty() {
            if id.is_zero() {
                sections.push(b.zero_mor(&rlx, x));
                continue;
            }
            return Ok(SplitUnit::NotSplit(i));
        }
        let cols: Vec<Vec<_>> = basis.iter().map(|s| b.compose(s, &eta).coords).collect();
        let m = Matrix::from_columns(b.field(), id.coords.len(), &cols);
        match m.solve(&id.coords) {
            Some(c) => sections.push(combination(&c, &basis)),
            None => return Ok(SplitUnit::NotSplit(i)),
        }
    }
    Ok(SplitUnit::Objectwise(sections))
}
