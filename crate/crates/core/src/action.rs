//! Finite group actions on linear categories, with coherence isomorphisms.
//!
//! Actions are right actions: `ε_{g,h} : φ_g ∘ φ_h ⇒ φ_{hg}`, where `hg` is the product in
//! the group table. The coherence condition at `X` is
//! `ε_{f,hg}(X) ∘ φ_f(ε_{g,h}(X)) = ε_{gf,h}(X) ∘ ε_{f,g}(φ_h X)`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::Group;
use crate::lincat::category::Category;
use crate::lincat::envelope::{combination, Envelope, Mor, Obj};
use crate::lincat::functor::{check_functor, CheckReport, Functor};
use crate::matrix::Matrix;

pub trait Action: Send + Sync {
    fn group(&self) -> &Group;

    fn category(&self) -> &Arc<dyn Category>;

    fn phi_obj(&self, g: usize, x: &Obj) -> Result<Obj>;

    /// `φ_g(f)` for `f : x → y`.
    fn phi_mor(&self, g: usize, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor>;

    /// `ε_{g,h}(x) : φ_g φ_h x → φ_{hg} x`.
    fn eps(&self, g: usize, h: usize, x: &Obj) -> Result<Mor>;
}

/// `φ_g` as a functor.
pub struct PhiFunctor {
    pub action: Arc<dyn Action>,
    pub g: usize,
}

impl Functor for PhiFunctor {
    fn map_obj(&self, x: &Obj) -> Result<Obj> {
        self.action.phi_obj(self.g, x)
    }

    fn map_mor(&self, x: &Obj, y: &Obj, f: &Mor) -> Result<Mor> {
        self.action.phi_mor(self.g, x, y, f)
    }
}

/// An action on the additive envelope of a presentation, given on presented objects and
/// basis morphisms and extended additively.
#[derive(Clone)]
pub struct PresentedAction {
    env: Envelope,
    cat: Arc<dyn Category>,
    group: Group,
    obj_map: Vec<Vec<Vec<usize>>>,
    mor_map: Vec<Vec<Vec<Mor>>>,
    eps: Vec<Vec<Vec<Mor>>>,
}

impl PresentedAction {
    /// `obj_map[g][x]` is the sum `φ_g X_x`; `mor_map[g][x * n + y]` lists the images of the
    /// basis of `hom(x, y)`; `eps[g][h][x]` is `ε_{g,h}(X_x)`.
    pub fn new(
        env: Envelope,
        group: Group,
        obj_map: Vec<Vec<Vec<usize>>>,
        mor_map: Vec<Vec<Vec<Mor>>>,
        eps: Vec<Vec<Vec<Mor>>>,
    ) -> Result<Self> {
        group.require_invertible_order(env.field())?;
        let pres = env.presentation().clone();
        let n = pres.num_objects();
        let order = group.order();
        if obj_map.len() != order || obj_map.iter().any(|m| m.len() != n) {
            return Err(Error::Input("object map must list φ_g X for every g and X".into()));
        }
        if obj_map.iter().flatten().flatten().any(|&x| x >= n) {
            return Err(Error::Input("object map refers to an unknown object".into()));
        }
        if mor_map.len() != order || mor_map.iter().any(|m| m.len() != n * n) {
            return Err(Error::Input("morphism map must cover every Hom space".into()));
        }
        for g in 0..order {
            for x in 0..n {
                for y in 0..n {
                    let images = &mor_map[g][x * n + y];
                    if images.len() != pres.dim(x, y) {
                        return Err(Error::Input(format!(
                            "φ_{g} needs {} basis images on hom({x},{y})",
                            pres.dim(x, y)
                        )));
                    }
                    if images
                        .iter()
                        .any(|m| m.src != obj_map[g][x] || m.tgt != obj_map[g][y] || m.field != env.field())
                    {
                        return Err(Error::Input(format!("φ_{g} image on hom({x},{y}) has the wrong type")));
                    }
                }
            }
        }
        if eps.len() != order || eps.iter().any(|e| e.len() != order || e.iter().any(|v| v.len() != n)) {
            return Err(Error::Input("ε must be given for every g, h and object".into()));
        }
        let action = PresentedAction {
            cat: Arc::new(env.clone()),
            env,
            group,
            obj_map,
            mor_map,
            eps,
        };
        for g in 0..order {
            for h in 0..order {
                for x in 0..n {
                    let xo = Obj::base(&[x]);
                    let src = action.phi_obj(g, &action.phi_obj(h, &xo)?)?;
                    let tgt = action.phi_obj(action.group.mul(h, g), &xo)?;
                    let e = &action.eps[g][h][x];
                    if e.src != src.underlying() || e.tgt != tgt.underlying() {
                        return Err(Error::Input(format!("ε_{{{g},{h}}} at object {x} has the wrong type")));
                    }
                }
            }
        }
        Ok(action)
    }

    /// A strict action permuting presented objects, `perm[g][x] = g·x`, carrying the `k`-th
    /// basis vector of `hom(x, y)` to the `k`-th basis vector of `hom(gx, gy)`.
    pub fn from_permutation(env: Envelope, group: Group, perm: Vec<Vec<usize>>) -> Result<Self> {
        let pres = env.presentation().clone();
        let n = pres.num_objects();
        if perm.len() != group.order() || perm.iter().any(|p| p.len() != n || p.iter().any(|&x| x >= n)) {
            return Err(Error::Input("permutation table has the wrong shape".into()));
        }
        let obj_map: Vec<Vec<Vec<usize>>> =
            perm.iter().map(|p| p.iter().map(|&x| vec![x]).collect()).collect();
        let mut mor_map = Vec::new();
        for p in &perm {
            let mut per_g = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    if pres.dim(x, y) != pres.dim(p[x], p[y]) {
                        return Err(Error::Input(format!(
                            "permutation does not preserve dim hom({x},{y})"
                        )));
                    }
                    per_g.push(env.basis(&[p[x]], &[p[y]]));
                }
            }
            mor_map.push(per_g);
        }
        let mut eps = Vec::new();
        for g in group.elements() {
            let mut per_g = Vec::new();
            for h in group.elements() {
                let mut per_h = Vec::new();
                for x in 0..n {
                    let (a, b) = (perm[g][perm[h][x]], perm[group.mul(h, g)][x]);
                    if a != b {
                        return Err(Error::Input(format!(
                            "permutation is not a right action: φ_{g}φ_{h} X{x} ≠ φ_{{hg}} X{x}"
                        )));
                    }
                    per_h.push(env.identity(&[a]));
                }
                per_g.push(per_h);
            }
            eps.push(per_g);
        }
        PresentedAction::new(env, group, obj_map, mor_map, eps)
    }

    pub fn trivial(env: Envelope, group: Group) -> Result<Self> {
        let n = env.presentation().num_objects();
        let perm = vec![(0..n).collect(); group.order()];
        PresentedAction::from_permutation(env, group, perm)
    }

    /// Replaces `ε_{g,h}(X_x)`; the result is not re-validated as a coherent action.
    pub fn with_eps(mut self, g: usize, h: usize, x: usize, e: Mor) -> Result<Self> {
        let old = &self.eps[g][h][x];
        if old.src != e.src || old.tgt != e.tgt {
            return Err(Error::Input("replacement ε has the wrong type".into()));
        }
        self.eps[g][h][x] = e;
        Ok(self)
    }

    pub fn envelope(&self) -> &Envelope {
        &self.env
    }

    fn base_of(&self, x: &Obj) -> Result<Vec<usize>> {
        match x {
            Obj::Sum(xs) => Ok(xs.clone()),
            _ => Err(Error::Input(format!("presented actions act on formal sums, got {}", x.kind()))),
        }
    }
}

impl Action for PresentedAction {
    fn group(&self) -> &Group {
        &self.group
    }

    fn category(&self) -> &Arc<dyn Category> {
        &self.cat
    }

    fn phi_obj(&self, g: usize, x: &Obj) -> Result<Obj> {
        let xs = self.base_of(x)?;
        Ok(Obj::Sum(xs.iter().flat_map(|&i| self.obj_map[g][i].clone()).collect()))
    }

    fn phi_mor(&self, g: usize, _x: &Obj, _y: &Obj, f: &Mor) -> Result<Mor> {
        let n = self.env.presentation().num_objects();
        let src: Vec<Vec<usize>> = f.src.iter().map(|&i| self.obj_map[g][i].clone()).collect();
        let tgt: Vec<Vec<usize>> = f.tgt.iter().map(|&j| self.obj_map[g][j].clone()).collect();
        Ok(self.env.matrix(&src, &tgt, |j, i| {
            let images = &self.mor_map[g][f.src[i] * n + f.tgt[j]];
            if images.is_empty() {
                return None;
            }
            Some(combination(self.env.block(f, j, i), images))
        }))
    }

    fn eps(&self, g: usize, h: usize, x: &Obj) -> Result<Mor> {
        let xs = self.base_of(x)?;
        if xs.is_empty() {
            return Ok(self.env.zero(&[], &[]));
        }
        let blocks: Vec<Mor> = xs.iter().map(|&i| self.eps[g][h][i].clone()).collect();
        Ok(self.env.block_diag(&blocks))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleFailure {
    pub triple: (usize, usize, usize),
    pub object: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub functoriality: CheckReport,
    pub coherence_maps: CheckReport,
    pub cocycle_checked: usize,
    pub cocycle_failures: Vec<CocycleFailure>,
}

impl ActionReport {
    pub fn passes(&self) -> bool {
        self.functoriality.passes() && self.coherence_maps.passes() && self.cocycle_failures.is_empty()
    }
}

/// Checks functoriality of every `φ_g`, that every `ε_{g,h}` is a natural isomorphism, and
/// the cocycle condition at every triple, on the given objects.
pub fn check_action(action: &Arc<dyn Action>, objects: &[Obj]) -> Result<ActionReport> {
    let cat = &**action.category();
    let group = action.group();
    let mut report = ActionReport::default();
    for g in group.elements() {
        let phi = PhiFunctor {
            action: action.clone(),
            g,
        };
        report.functoriality.merge(check_functor(&phi, cat, cat, objects)?);
    }
    for g in group.elements() {
        for h in group.elements() {
            let hg = group.mul(h, g);
            let mut comps = Vec::new();
            for x in objects {
                let src = action.phi_obj(g, &action.phi_obj(h, x)?)?;
                let tgt = action.phi_obj(hg, x)?;
                let e = action.eps(g, h, x)?;
                let typed = cat.is_morphism(&src, &tgt, &e)?;
                report.coherence_maps.record(typed, || {
                    format!("ε_({},{}) at {x:?} is not a morphism", group.name(g), group.name(h))
                });
                let inv = typed && cat.inverse(&src, &tgt, &e)?.is_some();
                report.coherence_maps.record(inv, || {
                    format!("ε_({},{}) at {x:?} is not invertible", group.name(g), group.name(h))
                });
                comps.push((src, tgt, e));
            }
            for (i, x) in objects.iter().enumerate() {
                for (j, y) in objects.iter().enumerate() {
                    for f in cat.hom_basis(x, y)? {
                        let hx = action.phi_obj(h, x)?;
                        let hy = action.phi_obj(h, y)?;
                        let hf = action.phi_mor(h, x, y, &f)?;
                        let ghf = action.phi_mor(g, &hx, &hy, &hf)?;
                        let lhs = cat.compose(&comps[j].2, &ghf);
                        let rhs = cat.compose(&action.phi_mor(hg, x, y, &f)?, &comps[i].2);
                        report.coherence_maps.record(lhs == rhs, || {
                            format!("ε_({},{}) not natural at {f:?}", group.name(g), group.name(h))
                        });
                    }
                }
            }
        }
    }
    for (idx, x) in objects.iter().enumerate() {
        for f in group.elements() {
            for g in group.elements() {
                for h in group.elements() {
                    let hg = group.mul(h, g);
                    let gf = group.mul(g, f);
                    let hx = action.phi_obj(h, x)?;
                    let ghx = action.phi_obj(g, &hx)?;
                    let hgx = action.phi_obj(hg, x)?;
                    let lhs = cat.compose(
                        &action.eps(f, hg, x)?,
                        &action.phi_mor(f, &ghx, &hgx, &action.eps(g, h, x)?)?,
                    );
                    let rhs = cat.compose(&action.eps(gf, h, x)?, &action.eps(f, g, &hx)?);
                    report.cocycle_checked += 1;
                    if lhs != rhs {
                        report.cocycle_failures.push(CocycleFailure {
                            triple: (f, g, h),
                            object: idx,
                        });
                    }
                }
            }
        }
    }
    Ok(report)
}

/// The unit isomorphism `u(x) : x → φ_e x`, characterised by `φ_e(u(x)⁻¹) = ε_{e,e}(x)`.
pub fn unit_iso(action: &dyn Action, x: &Obj) -> Result<Mor> {
    let cat = &**action.category();
    let e = action.group().identity();
    let ex = action.phi_obj(e, x)?;
    let basis = cat.hom_basis(&ex, x)?;
    if basis.is_empty() {
        return Ok(cat.zero_mor(x, &ex));
    }
    let target = action.eps(e, e, x)?;
    let images: Vec<Vec<_>> = basis
        .iter()
        .map(|b| action.phi_mor(e, &ex, x, b).map(|m| m.coords))
        .collect::<Result<_>>()?;
    let m = Matrix::from_columns(cat.field(), target.coords.len(), &images);
    let c = m
        .solve(&target.coords)
        .ok_or_else(|| Error::Structural(format!("ε_(e,e) at {x:?} is not in the image of φ_e")))?;
    let minv = combination(&c, &basis);
    cat.inverse(&ex, x, &minv)?
        .ok_or_else(|| Error::Structural(format!("unit at {x:?} is not invertible")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::lincat::presentation::Presentation;

    fn swap_action() -> Arc<dyn Action> {
        let env = Envelope::new(Arc::new(Presentation::discrete(Field::Rational, &["X1", "X2"])));
        Arc::new(PresentedAction::from_permutation(env, Group::cyclic(2), vec![vec![0, 1], vec![1, 0]]).unwrap())
    }

    #[test]
    fn swap_action_is_coherent() {
        let a = swap_action();
        let objs = vec![Obj::base(&[0]), Obj::base(&[1]), Obj::base(&[0, 1])];
        let r = check_action(&a, &objs).unwrap();
        assert!(r.passes(), "{r:?}");
        assert_eq!(r.cocycle_checked, 3 * 8);
    }

    #[test]
    fn strict_unit_is_identity() {
        let a = swap_action();
        let x = Obj::base(&[0, 1]);
        assert_eq!(unit_iso(&*a, &x).unwrap(), a.category().identity(&x));
    }

    #[test]
    fn order_must_be_invertible() {
        let env = Envelope::new(Arc::new(Presentation::ground_field(Field::Prime(2))));
        let r = PresentedAction::trivial(env, Group::cyclic(2));
        assert!(matches!(r, Err(Error::GroupOrderNotInvertible { .. })));
    }

    #[test]
    fn non_action_permutation_rejected() {
        let env = Envelope::new(Arc::new(Presentation::discrete(Field::Rational, &["A", "B", "C"])));
        let perm = vec![vec![0, 1, 2], vec![1, 0, 2], vec![0, 2, 1]];
        let table = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        let g = Group::from_table(table, None).unwrap();
        assert!(PresentedAction::from_permutation(env, g, perm).is_err());
    }
}
