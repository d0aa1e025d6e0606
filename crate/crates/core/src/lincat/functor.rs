//! Linear functors and natural transformations, checked on finite lists of objects.

use std::sync::Arc;

use serde::Serialize;

use crate::error::Result;
use crate::lincat::category::Category;
use crate::lincat::envelope::{Mor, Obj};

pub trait Functor: Send + Sync {
    fn map_obj(&self, x: &Obj) -> Result<Obj>;

    /// Image of `f : x → y`.
    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor>;
}

/// Components of a natural transformation, indexed by source objects.
pub type Component = Arc<dyn Fn(&Obj) -> Result<Mor> + Send + Sync>;

/// Outcome of a finite check: how many instances were examined and which ones failed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl CheckReport {
    pub fn passes(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn record(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures.push(failure());
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.checked += other.checked;
        self.failures.extend(other.failures);
    }
}

pub struct IdentityFunctor;

impl Functor for IdentityFunctor {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        Ok(x.clone())
    }

    fn map_mor(&self, _: &Obj, _: &Obj, f: &Mor) -> Result<Mor> {
        Ok(f.clone())
    }
}

/// `second ∘ first`.
pub struct Composite {
    pub first: Arc<dyn Functor>,
    pub second: Arc<dyn Functor>,
}

impl Functor for Composite {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        self.second.map_obj(&self.first.map_obj(x)?)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        let (fx, fy) = (self.first.map_obj(x)?, self.first.map_obj(y)?);
        self.second.map_mor(&fx, &fy, &self.first.map_mor(x, y, f)?)
    }
}

/// Checks that `functor` preserves identities, lands in Hom spaces of `tgt`, and preserves
/// composition of basis morphisms among `objects`.
pub fn check_functor(
    functor: &dyn Functor,
    src: &dyn Category,
    tgt: &dyn Category,
    objects: &[Obj],
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let images: Vec<Obj> = objects.iter().map(|x| functor.map_obj(x)).collect::<Result<_>>()?;
    for (x, fx) in objects.iter().zip(&images) {
        let fid = functor.map_mor(x, x, &src.identity(x))?;
        report.record(fid == tgt.identity(fx), || format!("identity of {x:?} not preserved"));
    }
    let mut bases = Vec::new();
    for (i, x) in objects.iter().enumerate() {
        let mut row = Vec::new();
        for (j, y) in objects.iter().enumerate() {
            let basis = src.hom_basis(x, y)?;
            let mut mapped = Vec::new();
            for f in &basis {
                let ff = functor.map_mor(x, y, f)?;
                let ok = tgt.is_morphism(&images[i], &images[j], &ff)?;
                report.record(ok, || format!("image of {f:?} is not a morphism {i} → {j}"));
                mapped.push(ff);
            }
            row.push((basis, mapped));
        }
        bases.push(row);
    }
    let n = objects.len();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let (fs, ffs) = &bases[x][y];
                let (gs, fgs) = &bases[y][z];
                for (f, ff) in fs.iter().zip(ffs) {
                    for (g, fg) in gs.iter().zip(fgs) {
                        let lhs = functor.map_mor(&objects[x], &objects[z], &src.compose(g, f))?;
                        let rhs = tgt.compose(fg, ff);
                        report.record(lhs == rhs, || {
                            format!("composition {g:?} ∘ {f:?} not preserved ({x},{y},{z})")
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Checks that `alpha : F ⇒ G` has components in the right Hom spaces and is natural with
/// respect to basis morphisms among `objects`.
pub fn check_natural(
    src: &dyn Category,
    tgt: &dyn Category,
    f: &dyn Functor,
    g: &dyn Functor,
    alpha: &Component,
    objects: &[Obj],
) -> Result<CheckReport> {
    let mut report = CheckReport::default();
    let mut comps = Vec::new();
    for x in objects {
        let a = alpha(x)?;
        let ok = tgt.is_morphism(&f.map_obj(x)?, &g.map_obj(x)?, &a)?;
        report.record(ok, || format!("component at {x:?} has the wrong type"));
        comps.push(a);
    }
    for (i, x) in objects.iter().enumerate() {
        for (j, y) in objects.iter().enumerate() {
            for m in src.hom_basis(x, y)? {
                let lhs = tgt.compose(&comps[j], &f.map_mor(x, y, &m)?);
                let rhs = tgt.compose(&g.map_mor(x, y, &m)?, &comps[i]);
                report.record(lhs == rhs, || format!("naturality fails for {m:?}"));
            }
        }
    }
    Ok(report)
}
